use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use super::format::{parse_raw, FormatError};
use crate::catalg::{build_algebra, column_projective, is_isomorphic, regular_module, Algebra, Module};
use crate::exactla::Field;
use crate::fincat::{category_properties, FiniteCategory};
use crate::freeness::{check_ufp, is_free};
use crate::gmodules::{build_e, build_k, build_ses, build_trivial, find_section, smallest_object_section, GModuleError};
use crate::homalg::{
    certify_mcm_approximation, gorenstein_report, is_gorenstein_projective, is_projective, projective_over_k, ExtRange,
    GorensteinReport, GpCertificate, DEFAULT_BOUND,
};

/// A module named on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ModuleSpec {
    E,
    K,
    Trivial,
    Regular,
    /// `C_t`, 1-based in the object order.
    Column(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown module `{0}` (expected e, k, trivial, regular or column:<t>)")]
pub struct ModuleSpecError(pub String);

impl FromStr for ModuleSpec {
    type Err = ModuleSpecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        let col = lower.strip_prefix("column:").or_else(|| lower.strip_prefix('c').filter(|r| !r.is_empty()));
        match lower.as_str() {
            "e" => Ok(ModuleSpec::E),
            "k" => Ok(ModuleSpec::K),
            "trivial" => Ok(ModuleSpec::Trivial),
            "regular" | "a" => Ok(ModuleSpec::Regular),
            _ => col
                .and_then(|t| t.parse::<usize>().ok())
                .map(ModuleSpec::Column)
                .ok_or_else(|| ModuleSpecError(s.to_string())),
        }
    }
}

impl fmt::Display for ModuleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleSpec::E => write!(f, "E"),
            ModuleSpec::K => write!(f, "K"),
            ModuleSpec::Trivial => write!(f, "trivial"),
            ModuleSpec::Regular => write!(f, "regular"),
            ModuleSpec::Column(t) => write!(f, "C{t}"),
        }
    }
}

impl ModuleSpec {
    pub fn build(self, alg: &Algebra) -> Result<Module, GModuleError> {
        Ok(match self {
            ModuleSpec::E => build_e(alg)?.module,
            ModuleSpec::K => build_k(alg)?.0,
            ModuleSpec::Trivial => build_trivial(alg),
            ModuleSpec::Regular => regular_module(alg),
            ModuleSpec::Column(t) => column_projective(alg, t)?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Replaces the field named in the file.
    pub field: Option<Field>,
    pub bound: usize,
    pub seed: u64,
    pub probes: Vec<ModuleSpec>,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions { field: None, bound: DEFAULT_BOUND, seed: 0, probes: Vec::new() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn of(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn mark(self) -> &'static str {
        match self {
            Status::Pass => "✓",
            Status::Fail => "✗",
            Status::Skipped => "skipped",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Stage {
    pub name: &'static str,
    pub status: Status,
    pub summary: String,
    pub certificate: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub field: Field,
    pub objects: Vec<String>,
    pub morphisms: usize,
    pub bound: usize,
    pub stages: Vec<Stage>,
    /// Hypotheses of the main theorem that fail for this input.
    pub broken_hypotheses: Vec<String>,
    /// `k GP ⇔ splits`, checked whenever `E` was built and found GP.
    pub trivial_gp_matches_splitting: Option<bool>,
}

/// Stage names in pipeline order.
pub const STAGES: [&str; 13] = [
    "validate",
    "properties",
    "free",
    "projective_over_k",
    "gorenstein",
    "e_built",
    "k_built",
    "ses_exact",
    "k_projective",
    "e_gp",
    "mcm_special",
    "splitting",
    "trivial_gp",
];

impl Report {
    pub fn stage(&self, name: &str) -> Option<&Stage> {
        self.stages.iter().find(|s| s.name == name)
    }

    pub fn status(&self, name: &str) -> Option<Status> {
        self.stage(name).map(|s| s.status)
    }

    pub fn pattern(&self) -> Vec<(&'static str, Status)> {
        self.stages.iter().map(|s| (s.name, s.status)).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.stages.iter().all(|s| s.status == Status::Pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "category: {} objects ({}), {} morphisms over {}, bound {}",
            self.objects.len(),
            self.objects.join(", "),
            self.morphisms,
            self.field,
            self.bound
        );
        for s in &self.stages {
            let _ = writeln!(out, "{:<18} {:<8} {}", s.name, s.status.mark(), s.summary);
        }
        if self.broken_hypotheses.is_empty() {
            out.push_str("hypotheses: all hold\n");
        } else {
            let _ = writeln!(out, "hypotheses broken: {}", self.broken_hypotheses.join("; "));
        }
        if let Some(c) = self.trivial_gp_matches_splitting {
            let _ = writeln!(out, "trivial GP agrees with splitting: {c}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Format(#[from] FormatError),
}

struct Builder {
    stages: Vec<Stage>,
}

impl Builder {
    fn push(&mut self, name: &'static str, status: Status, summary: impl Into<String>, certificate: Value) {
        self.stages.push(Stage { name, status, summary: summary.into(), certificate });
    }

    fn skip(&mut self, name: &'static str, because: &[&str]) {
        let failed: Vec<&str> = because
            .iter()
            .copied()
            .filter(|b| self.stages.iter().any(|s| s.name == *b && s.status != Status::Pass))
            .collect();
        self.push(name, Status::Skipped, format!("requires {}", failed.join(", ")), json!({ "requires": failed }));
    }

    fn ok(&self, name: &str) -> bool {
        self.stages.iter().any(|s| s.name == name && s.status == Status::Pass)
    }
}

fn gp_json(cat: &FiniteCategory, cert: &GpCertificate) -> Value {
    json!({
        "verdict": cert.verdict,
        "range": cert.range,
        "ext": cert.ext,
        "ev_injective": cert.ev_injective,
        "ev_surjective": cert.ev_surjective,
        "embedding_objects": cert.embedding_objects.iter().map(|&x| cat.object_name(x)).collect::<Vec<_>>(),
        "embedding_injective": cert.embedding_injective,
        "embedding": cert.embedding.as_ref().map(|e| e.dump()),
        "failure": cert.failure,
    })
}

fn gp_summary(cert: &GpCertificate, what: &str) -> String {
    let ext1 = cert.ext.first().map_or(0, |r| r.module);
    match &cert.failure {
        None => format!("{what} {:?} (dim Ext^1(-, A) = {ext1})", cert.verdict),
        Some(f) => format!("{what} not GP: {f}"),
    }
}

/// Runs every stage on a category file.
pub fn run_pipeline(text: &str, options: &PipelineOptions) -> Result<Report, PipelineError> {
    let parsed = parse_raw(text)?;
    let field = options.field.unwrap_or(parsed.field);
    let bound = options.bound;
    let mut b = Builder { stages: Vec::new() };
    let mut broken = Vec::new();

    let cat = match parsed.validate() {
        Ok(file) => {
            let c = file.category;
            b.push(
                "validate",
                Status::Pass,
                format!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms()),
                json!({ "objects": c.num_objects(), "morphisms": c.num_morphisms() }),
            );
            c
        }
        Err(errors) => {
            let msgs: Vec<String> = errors.iter().map(ToString::to_string).collect();
            b.push("validate", Status::Fail, msgs[0].clone(), json!({ "errors": msgs }));
            for name in &STAGES[1..] {
                b.skip(name, &["validate"]);
            }
            return Ok(Report {
                field,
                objects: parsed.raw.objects.clone(),
                morphisms: parsed.raw.morphisms.len(),
                bound,
                stages: b.stages,
                broken_hypotheses: vec!["input is not a category".into()],
                trivial_gp_matches_splitting: None,
            });
        }
    };
    let alg = build_algebra(&cat, field);

    let props = category_properties(&cat);
    b.push(
        "properties",
        Status::of(props.is_ei && props.is_skeletal),
        format!("EI {} skeletal {} connected {}", props.is_ei, props.is_skeletal, props.is_connected),
        json!({ "ei": props.is_ei, "skeletal": props.is_skeletal, "connected": props.is_connected }),
    );
    if !b.ok("properties") {
        broken.push("category is not skeletal EI".to_string());
    }

    if b.ok("properties") {
        let verdict = is_free(&cat).expect("EI category");
        let ufp = check_ufp(&cat).expect("EI category");
        let agrees = verdict.is_free == ufp.is_none();
        let witness = verdict.witness.as_ref().map(|w| {
            json!({
                "morphism": cat.name(w.morphism),
                "first": [w.names[0].0, w.names[0].1],
                "second": [w.names[1].0, w.names[1].1],
                "through": [cat.object_name(w.first.through), cat.object_name(w.second.through)],
            })
        });
        let summary = match (&verdict.witness, agrees) {
            (_, false) => "UFP cross-check disagrees".to_string(),
            (None, true) => "free, UFP holds".to_string(),
            (Some(w), true) => format!("not free: {w}"),
        };
        b.push(
            "free",
            Status::of(verdict.is_free && agrees),
            summary,
            json!({ "is_free": verdict.is_free, "ufp_agrees": agrees, "witness": witness }),
        );
        if !verdict.is_free {
            broken.push("category is not free".into());
        }

        let pk = projective_over_k(&cat, field);
        let summary = match pk.first_failure() {
            None => "every kHom(x, y) is projective on both sides".to_string(),
            Some(p) => format!("kHom({}, {}) is not projective", p.source, p.target),
        };
        b.push(
            "projective_over_k",
            Status::of(pk.projective),
            summary,
            json!({ "projective": pk.projective, "first_failure": pk.first_failure(), "pairs": pk.pairs }),
        );
        if !pk.projective {
            broken.push(format!("hom-sets are not projective over {field}"));
        }
    } else {
        b.skip("free", &["properties"]);
        b.skip("projective_over_k", &["properties"]);
    }

    let report: GorensteinReport = gorenstein_report(&alg, bound);
    let one_gorenstein = report.d.is_some_and(|d| d <= 1);
    b.push(
        "gorenstein",
        Status::of(one_gorenstein),
        format!(
            "id left {} right {}{}",
            report.id_left,
            report.id_right,
            report.d.map_or(String::new(), |d| format!(", d = {d}"))
        ),
        serde_json::to_value(&report).expect("report serializes"),
    );
    if !one_gorenstein {
        broken.push("kC is not 1-Gorenstein".into());
    }
    let range = ExtRange::from_report(&report, bound);

    let e = if b.ok("free") {
        let e = build_e(&alg).expect("free category");
        b.push(
            "e_built",
            Status::Pass,
            format!("dims {:?}", e.module.graded_dims()),
            json!({ "module": e.module.describe() }),
        );
        Some(e)
    } else {
        b.skip("e_built", &["free"]);
        None
    };

    let k = if b.ok("properties") {
        match build_k(&alg) {
            Ok((k, _)) => {
                b.push("k_built", Status::Pass, format!("dims {:?}", k.graded_dims()), json!({ "module": k.describe() }));
                Some(k)
            }
            Err(err) => {
                b.push("k_built", Status::Fail, err.to_string(), json!({ "error": err.to_string() }));
                None
            }
        }
    } else {
        b.skip("k_built", &["properties"]);
        None
    };

    let ses = if e.is_some() {
        let ses = build_ses(&alg).expect("E is built");
        let (ker, _) = ses.projection.kernel();
        let kernel_is_k = is_isomorphic(&ker, &ses.k, options.seed).is_isomorphic();
        let exact = ses.exact() && kernel_is_k;
        b.push(
            "ses_exact",
            Status::of(exact),
            format!("0 -> K -> E -> k -> 0 exact {exact}"),
            json!({ "objects": ses.objects, "projection": ses.projection.dump(), "kernel_is_k": kernel_is_k }),
        );
        Some(ses)
    } else {
        b.skip("ses_exact", &["e_built"]);
        None
    };

    match &k {
        Some(k) => {
            let check = is_projective(k);
            let summary = if check.projective {
                "K is projective".to_string()
            } else {
                "K is not projective: its free cover does not split".to_string()
            };
            b.push(
                "k_projective",
                Status::of(check.projective),
                summary,
                json!({
                    "projective": check.projective,
                    "cover_objects": check.cover.free.objects.iter().map(|&x| cat.object_name(x)).collect::<Vec<_>>(),
                    "section": check.section.as_ref().map(|s| s.dump()),
                }),
            );
        }
        None => b.skip("k_projective", &["k_built"]),
    }

    let mut e_gp = false;
    match &e {
        Some(e) => {
            let cert = is_gorenstein_projective(&e.module, range);
            e_gp = cert.verdict.is_positive();
            b.push("e_gp", Status::of(e_gp), gp_summary(&cert, "E"), gp_json(&cat, &cert));
        }
        None => b.skip("e_gp", &["e_built"]),
    }

    let mut splits = None;
    match &ses {
        Some(ses) => {
            let mut probes: Vec<(String, Module)> = (1..=cat.num_objects())
                .map(|t| (format!("C{t}"), column_projective(&alg, t).expect("index in range")))
                .collect();
            probes.push(("E".into(), ses.e.module.clone()));
            for p in &options.probes {
                if let Ok(m) = p.build(&alg) {
                    probes.push((p.to_string(), m));
                }
            }
            match certify_mcm_approximation(&ses.projection, &probes, range, bound) {
                Ok(cert) => {
                    let ok = cert.special && cert.probes_factor();
                    let summary = format!(
                        "special {} (kernel dim {}, pd {}), probes factor {}",
                        cert.special,
                        cert.kernel_dim,
                        cert.kernel_pd,
                        cert.probes_factor()
                    );
                    b.push(
                        "mcm_special",
                        Status::of(ok),
                        summary,
                        json!({
                            "surjective": cert.surjective,
                            "special": cert.special,
                            "source_gp": cert.source_gp.verdict,
                            "kernel_dim": cert.kernel_dim,
                            "kernel_pd": cert.kernel_pd,
                            "probes": cert.probes,
                        }),
                    );
                }
                Err(err) => b.push("mcm_special", Status::Fail, err.to_string(), json!({ "error": err.to_string() })),
            }

            let solved = find_section(&ses.projection).expect("projection is onto");
            let explicit = smallest_object_section(&alg, ses, None);
            let (summary, explicit_json) = match &explicit {
                Ok(s) => (
                    format!(
                        "splits via smallest object {} (independent of choice {})",
                        cat.object_name(s.smallest),
                        s.independent_of_choice
                    ),
                    json!({
                        "smallest": cat.object_name(s.smallest),
                        "choices": s.choices.iter().map(|&c| cat.name(c)).collect::<Vec<_>>(),
                        "independent_of_choice": s.independent_of_choice,
                        "splits": s.splits,
                        "section": s.section.dump(),
                    }),
                ),
                Err(err) => (format!("no explicit section: {err}"), json!({ "error": err.to_string() })),
            };
            let summary = if solved.exists() { summary } else { format!("does not split; {summary}") };
            splits = Some(solved.exists());
            b.push(
                "splitting",
                Status::of(solved.exists()),
                summary,
                json!({
                    "section_exists": solved.exists(),
                    "solution_dim": solved.solution_dim,
                    "section": solved.map.as_ref().map(|s| s.dump()),
                    "explicit": explicit_json,
                }),
            );
        }
        None => {
            b.skip("mcm_special", &["ses_exact"]);
            b.skip("splitting", &["ses_exact"]);
        }
    }

    let cert = is_gorenstein_projective(&build_trivial(&alg), range);
    let trivial_gp = cert.verdict.is_positive();
    b.push("trivial_gp", Status::of(trivial_gp), gp_summary(&cert, "k"), gp_json(&cat, &cert));

    let consistency = match (e_gp, splits) {
        (true, Some(s)) => Some(s == trivial_gp),
        _ => None,
    };

    Ok(Report {
        field,
        objects: cat.objects().map(|x| cat.object_name(x).to_string()).collect(),
        morphisms: cat.num_morphisms(),
        bound,
        stages: b.stages,
        broken_hypotheses: broken,
        trivial_gp_matches_splitting: consistency,
    })
}
