//! Command-line front end: the category file format, the end-to-end
//! verification pipeline and the subcommands of the `eicat` binary.

mod format;
mod pipeline;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use format::{
    export_category, non_identity_entries, parse_category_file, parse_raw, CategoryFile, FormatError, RawCategoryFile,
    FORMAT_VERSION,
};
pub use pipeline::{
    run_pipeline, ModuleSpec, ModuleSpecError, PipelineError, PipelineOptions, Report, Stage, Status, STAGES,
};

use crate::catalg::build_algebra;
use crate::catgen::fixture_by_name;
use crate::exactla::Field;
use crate::fincat::category_properties;
use crate::freeness::{check_ufp, is_free};
use crate::homalg::{ext_from_resolution, free_resolution, full_resolution, gorenstein_report, projective_over_k};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "eicat", version, about = "Exact verification for finite EI categories and their modules")]
struct Cli {
    /// Ground field, overriding the file: q, f2, f3, f<p>
    #[arg(long, global = true, value_parser = parse_field)]
    field: Option<Field>,
    /// Search bound for projective and injective dimensions and resolutions
    #[arg(long, global = true, default_value_t = crate::homalg::DEFAULT_BOUND)]
    bound: usize,
    /// Seed for the randomized isomorphism search
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a category file and check every axiom
    Validate { file: PathBuf },
    /// Structural properties, freeness, projectivity over k and Gorenstein dimension
    Analyze { file: PathBuf },
    /// Print a module: e, k, trivial, regular or column (with an index)
    Build {
        file: PathBuf,
        which: String,
        /// Index for `column`
        t: Option<usize>,
    },
    /// Print a built-in fixture in canonical file form
    Export { fixture: String },
    /// Run the full verification pipeline
    Verify {
        file: PathBuf,
        /// Extra MCM probe module (repeatable)
        #[arg(long = "probe", value_parser = parse_module)]
        probes: Vec<ModuleSpec>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// dim Ext^i(M, N)
    Ext {
        file: PathBuf,
        #[arg(value_parser = parse_module)]
        m: ModuleSpec,
        #[arg(value_parser = parse_module)]
        n: ModuleSpec,
        i: usize,
    },
    /// Print a projective resolution
    Resolve {
        file: PathBuf,
        #[arg(value_parser = parse_module)]
        module: ModuleSpec,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse::<Field>().map_err(|e| e.to_string())
}

fn parse_module(s: &str) -> Result<ModuleSpec, String> {
    s.parse::<ModuleSpec>().map_err(|e| e.to_string())
}

/// Outcome of a subcommand before it is written out.
struct Outcome {
    text: String,
    code: i32,
}

fn ok(text: String, positive: bool) -> Result<Outcome, Outcome> {
    Ok(Outcome { text, code: if positive { EXIT_OK } else { EXIT_NEGATIVE } })
}

fn usage(msg: impl std::fmt::Display) -> Outcome {
    Outcome { text: format!("error: {msg}\n"), code: EXIT_USAGE }
}

fn read(path: &PathBuf) -> Result<String, Outcome> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load(path: &PathBuf, field: Option<Field>) -> Result<CategoryFile, Outcome> {
    let text = read(path)?;
    let mut file = parse_category_file(&text).map_err(usage)?;
    if let Some(f) = field {
        file.field = f;
    }
    Ok(file)
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = dispatch(&cli);
    let (text, code, to_err) = match result {
        Ok(o) => (o.text, o.code, false),
        Err(o) => (o.text, o.code, true),
    };
    let _ = if to_err { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
    code
}

fn dispatch(cli: &Cli) -> Result<Outcome, Outcome> {
    match &cli.command {
        Command::Validate { file } => {
            let text = read(file)?;
            let raw = parse_raw(&text).map_err(usage)?;
            match raw.validate() {
                Ok(f) => ok(
                    format!(
                        "valid: {} objects, {} morphisms, {} non-identity composites\n",
                        f.category.num_objects(),
                        f.category.num_morphisms(),
                        non_identity_entries(&f.category).len()
                    ),
                    true,
                ),
                Err(errors) => {
                    let mut s = String::from("invalid:\n");
                    for e in errors {
                        s.push_str(&format!("  {e}\n"));
                    }
                    ok(s, false)
                }
            }
        }
        Command::Analyze { file } => {
            let f = load(file, cli.field)?;
            let cat = &f.category;
            let props = category_properties(cat);
            let mut s = format!(
                "EI {} skeletal {} connected {}\n",
                props.is_ei, props.is_skeletal, props.is_connected
            );
            let mut positive = props.is_ei && props.is_skeletal;
            if props.is_ei {
                let v = is_free(cat).expect("EI category");
                let ufp = check_ufp(cat).expect("EI category");
                match &v.witness {
                    None => s.push_str("free: yes\n"),
                    Some(w) => s.push_str(&format!("free: no ({w})\n")),
                }
                s.push_str(&format!("UFP holds: {}\n", ufp.is_none()));
                let pk = projective_over_k(cat, f.field);
                match pk.first_failure() {
                    None => s.push_str(&format!("projective over {}: yes\n", f.field)),
                    Some(p) => s.push_str(&format!(
                        "projective over {}: no (kHom({}, {}))\n",
                        f.field, p.source, p.target
                    )),
                }
                positive &= v.is_free && pk.projective;
            }
            let r = gorenstein_report(&build_algebra(cat, f.field), cli.bound);
            s.push_str(&format!("injective dimension: left {} right {}\n", r.id_left, r.id_right));
            positive &= r.is_gorenstein;
            ok(s, positive)
        }
        Command::Build { file, which, t } => {
            let f = load(file, cli.field)?;
            let spec = match (which.to_ascii_lowercase().as_str(), t) {
                ("column", Some(t)) => ModuleSpec::Column(*t),
                ("column", None) => return Err(usage("column needs an index")),
                (w, _) => w.parse::<ModuleSpec>().map_err(usage)?,
            };
            let alg = build_algebra(&f.category, f.field);
            match spec.build(&alg) {
                Ok(m) => ok(format!("{spec} over {}\n{}", f.field, m.describe()), true),
                Err(e) => Err(Outcome { text: format!("error: {e}\n"), code: EXIT_NEGATIVE }),
            }
        }
        Command::Export { fixture } => {
            let cat = fixture_by_name(fixture).map_err(usage)?;
            ok(export_category(&cat, cli.field.unwrap_or(Field::Rationals)), true)
        }
        Command::Verify { file, probes, format } => {
            let text = read(file)?;
            let options = PipelineOptions { field: cli.field, bound: cli.bound, seed: cli.seed, probes: probes.clone() };
            let report = run_pipeline(&text, &options).map_err(usage)?;
            let body = match format {
                OutputFormat::Text => report.to_text(),
                OutputFormat::Json => report.to_json(),
            };
            ok(body, report.all_pass())
        }
        Command::Ext { file, m, n, i } => {
            if *i == 0 {
                return Err(usage("Ext degrees start at 1"));
            }
            let f = load(file, cli.field)?;
            let alg = build_algebra(&f.category, f.field);
            let build = |s: &ModuleSpec| s.build(&alg).map_err(|e| Outcome { text: format!("error: {e}\n"), code: EXIT_NEGATIVE });
            let (mm, nn) = (build(m)?, build(n)?);
            let res = full_resolution(&mm, i + 1);
            let e = ext_from_resolution(&res, &nn, *i);
            ok(format!("dim Ext^{i}({m}, {n}) = {} (rank count {})\n", e.dim, e.dim_by_ranks), e.dim == e.dim_by_ranks)
        }
        Command::Resolve { file, module } => {
            let f = load(file, cli.field)?;
            let alg = build_algebra(&f.category, f.field);
            let m = module.build(&alg).map_err(|e| Outcome { text: format!("error: {e}\n"), code: EXIT_NEGATIVE })?;
            let res = free_resolution(&m, cli.bound);
            let cat = &f.category;
            let mut s = format!("resolution of {module} (dims {:?}) over {}\n", m.graded_dims(), f.field);
            for (i, step) in res.steps.iter().enumerate() {
                let names: Vec<&str> = step.free.objects.iter().map(|&x| cat.object_name(x)).collect();
                s.push_str(&format!(
                    "F{i} = sum of P over [{}], syzygy dims {:?}\n",
                    names.join(", "),
                    step.syzygy.graded_dims()
                ));
            }
            match res.projective_syzygy {
                Some(d) => s.push_str(&format!("projective dimension {d}\n")),
                None => s.push_str(&format!("no projective syzygy up to degree {}\n", cli.bound)),
            }
            ok(s, res.is_exact())
        }
    }
}
