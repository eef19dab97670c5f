use serde::Serialize;

use super::resolve::{ext_from_resolution, full_resolution, greedy_generators, is_projective, projective_dimension};
use super::{HomAlgError, ProjDim};
use crate::catalg::{
    evaluation_map, hom_space, module_from_functor, regular_module, solve_lift, vector_dual, Algebra,
    Module, ModuleHom,
};
use crate::exactla::{Field, Mat};
use crate::fincat::{FiniteCategory, ObjId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// `id(A)` on one side, as the projective dimension of the vector dual of
/// the regular module on the other side.
pub fn injective_dimension(alg: &Algebra, side: Side, bound: usize) -> ProjDim {
    let dual = match side {
        Side::Left => vector_dual(&regular_module(alg)),
        Side::Right => vector_dual(&regular_module(&alg.opposite())),
    };
    projective_dimension(&dual, bound)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GorensteinReport {
    pub id_left: ProjDim,
    pub id_right: ProjDim,
    pub bound: usize,
    pub is_gorenstein: bool,
    /// The common value when both sides are finite and agree.
    pub d: Option<usize>,
}

pub fn gorenstein_report(alg: &Algebra, bound: usize) -> GorensteinReport {
    let id_left = injective_dimension(alg, Side::Left, bound);
    let id_right = injective_dimension(alg, Side::Right, bound);
    let (is_gorenstein, d) = match (id_left, id_right) {
        (ProjDim::Finite(a), ProjDim::Finite(b)) => (true, (a == b).then_some(a)),
        _ => (false, None),
    };
    GorensteinReport { id_left, id_right, bound, is_gorenstein, d }
}

/// Which Ext degrees the GP test inspects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExtRange {
    /// `A` is Gorenstein with `id = d`: degrees `1..=d` decide.
    Certified(usize),
    /// Degrees `1..=i_max` only; a positive outcome is not a proof.
    Bounded(usize),
}

impl ExtRange {
    pub fn from_report(report: &GorensteinReport, i_max: usize) -> ExtRange {
        match report.d {
            Some(d) => ExtRange::Certified(d),
            None => ExtRange::Bounded(i_max),
        }
    }

    fn top(self) -> usize {
        match self {
            ExtRange::Certified(d) => d.max(1),
            ExtRange::Bounded(i) => i.max(1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GpVerdict {
    GorensteinProjective,
    InconclusivePositive,
    NotGorensteinProjective,
}

impl GpVerdict {
    /// True for both the certified and the inconclusive positive outcome.
    pub fn is_positive(self) -> bool {
        !matches!(self, GpVerdict::NotGorensteinProjective)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtRow {
    pub degree: usize,
    /// `dim Ext^i(G, A)`.
    pub module: usize,
    /// `dim Ext^i(G*, A)` over the opposite algebra.
    pub dual: usize,
}

#[derive(Debug, Clone)]
pub struct GpCertificate {
    pub verdict: GpVerdict,
    pub range: ExtRange,
    pub ext: Vec<ExtRow>,
    pub ev_injective: bool,
    pub ev_surjective: bool,
    /// `G → ⊕_j P_{x_j}` built from generators `f_j` of `G*`, when `ev` is injective.
    pub embedding: Option<ModuleHom>,
    pub embedding_objects: Vec<ObjId>,
    pub embedding_injective: bool,
    pub failure: Option<String>,
}

/// Rows of `dim Ext^i(M, N)` for `i = 1..=top`, sharing one resolution.
fn ext_table(m: &Module, n: &Module, top: usize) -> Vec<usize> {
    let res = full_resolution(m, top + 1);
    (1..=top).map(|i| ext_from_resolution(&res, n, i).dim).collect()
}

pub fn is_gorenstein_projective(g: &Module, range: ExtRange) -> GpCertificate {
    let alg = g.algebra();
    let top = range.top();
    let a = regular_module(alg);
    let a_op = regular_module(&alg.opposite());
    let ev = evaluation_map(g);
    let module_ext = ext_table(g, &a, top);
    let dual_ext = ext_table(&ev.dual.module, &a_op, top);
    let ext: Vec<ExtRow> = (1..=top)
        .map(|i| ExtRow { degree: i, module: module_ext[i - 1], dual: dual_ext[i - 1] })
        .collect();

    let (embedding, embedding_objects, embedding_injective) = if ev.injective {
        let gens = greedy_generators(&ev.dual.module);
        let homs: Vec<ModuleHom> =
            gens.iter().map(|(x, coords)| ev.dual.spaces[x.0].combination(coords)).collect();
        let objects: Vec<ObjId> = gens.iter().map(|(x, _)| *x).collect();
        let target = super::resolve::ProjectiveSum::new(alg, objects.clone());
        let cat = g.category();
        let comps: Vec<Mat> = cat
            .objects()
            .map(|y| {
                let mut m = Mat::zeros(g.field(), target.module().dim(y), g.dim(y));
                for (j, h) in homs.iter().enumerate() {
                    m.set_block(target.sum.offsets[j][y.0], 0, h.component(y));
                }
                m
            })
            .collect();
        let map = ModuleHom::new(g.clone(), target.module().clone(), comps).expect("sum of natural maps");
        let inj = map.is_injective();
        (Some(map), objects, inj)
    } else {
        (None, Vec::new(), false)
    };

    let failure = if !ev.injective || !ev.surjective {
        Some(format!("evaluation map injective={} surjective={}", ev.injective, ev.surjective))
    } else if let Some(row) = ext.iter().find(|r| r.module != 0 || r.dual != 0) {
        Some(format!("Ext^{}: dim(G, A) = {}, dim(G*, A) = {}", row.degree, row.module, row.dual))
    } else if !embedding_injective {
        Some("no embedding into a projective".into())
    } else {
        None
    };
    let verdict = match (&failure, range) {
        (Some(_), _) => GpVerdict::NotGorensteinProjective,
        (None, ExtRange::Certified(_)) => GpVerdict::GorensteinProjective,
        (None, ExtRange::Bounded(_)) => GpVerdict::InconclusivePositive,
    };
    GpCertificate {
        verdict,
        range,
        ext,
        ev_injective: ev.injective,
        ev_surjective: ev.surjective,
        embedding,
        embedding_objects,
        embedding_injective,
        failure,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProbeResult {
    pub name: String,
    pub hom_dim: usize,
    /// Basis homs `G' → X` that lift through `θ`.
    pub lifted: usize,
}

impl ProbeResult {
    pub fn all_lift(&self) -> bool {
        self.lifted == self.hom_dim
    }
}

#[derive(Debug, Clone)]
pub struct McmCertificate {
    pub surjective: bool,
    pub source_gp: GpCertificate,
    pub kernel_dim: usize,
    pub kernel_pd: ProjDim,
    pub probes: Vec<ProbeResult>,
    /// Onto, GP source and kernel of finite projective dimension.
    pub special: bool,
}

impl McmCertificate {
    pub fn probes_factor(&self) -> bool {
        self.probes.iter().all(ProbeResult::all_lift)
    }
}

/// Certifies `θ: G → X` as a special MCM approximation and tests the
/// factorization property against each probe `G'`.
pub fn certify_mcm_approximation(
    theta: &ModuleHom,
    probes: &[(String, Module)],
    range: ExtRange,
    bound: usize,
) -> Result<McmCertificate, HomAlgError> {
    if !theta.is_surjective() {
        return Err(HomAlgError::NotSurjective);
    }
    let source_gp = is_gorenstein_projective(theta.source(), range);
    let (kernel, _) = theta.kernel();
    let kernel_pd = projective_dimension(&kernel, bound);
    let mut results = Vec::new();
    for (name, probe) in probes {
        let space = hom_space(probe, theta.target());
        let mut lifted = 0;
        for h in space.basis() {
            if solve_lift(theta, h).map_err(HomAlgError::Module)?.lift.is_some() {
                lifted += 1;
            }
        }
        results.push(ProbeResult { name: name.clone(), hom_dim: space.dim(), lifted });
    }
    let special = source_gp.verdict == GpVerdict::GorensteinProjective && kernel_pd.is_finite();
    Ok(McmCertificate {
        surjective: true,
        source_gp,
        kernel_dim: kernel.total_dim(),
        kernel_pd,
        probes: results,
        special,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SideVerdict {
    pub group_order: usize,
    pub projective: bool,
    /// Decided by invertibility of the group order, without a splitting solve.
    pub by_maschke: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairProjectivity {
    pub source: String,
    pub target: String,
    pub hom_size: usize,
    /// `kHom(x, y)` over `k Aut(y)` by postcomposition.
    pub left: SideVerdict,
    /// `kHom(x, y)` over `k Aut(x)` by precomposition.
    pub right: SideVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectiveOverK {
    pub pairs: Vec<PairProjectivity>,
    pub projective: bool,
}

impl ProjectiveOverK {
    pub fn first_failure(&self) -> Option<&PairProjectivity> {
        self.pairs.iter().find(|p| !p.left.projective || !p.right.projective)
    }
}

/// Whether every nonempty `kHom(x, y)` is projective over both automorphism groups.
pub fn projective_over_k(cat: &FiniteCategory, field: Field) -> ProjectiveOverK {
    let mut pairs = Vec::new();
    for x in cat.objects() {
        for y in cat.objects() {
            let hom = cat.hom(x, y);
            if hom.is_empty() {
                continue;
            }
            let left = side_verdict(cat, field, x, y, hom, Side::Left);
            let right = side_verdict(cat, field, x, y, hom, Side::Right);
            pairs.push(PairProjectivity {
                source: cat.object_name(x).to_string(),
                target: cat.object_name(y).to_string(),
                hom_size: hom.len(),
                left,
                right,
            });
        }
    }
    let projective = pairs.iter().all(|p| p.left.projective && p.right.projective);
    ProjectiveOverK { pairs, projective }
}

fn side_verdict(
    cat: &FiniteCategory,
    field: Field,
    x: ObjId,
    y: ObjId,
    hom: &[crate::fincat::MorId],
    side: Side,
) -> SideVerdict {
    let acting = match side {
        Side::Left => y,
        Side::Right => x,
    };
    let group = cat.endomorphisms(acting);
    let order = group.len();
    if field.is_unit(order as u64) {
        return SideVerdict { group_order: order, projective: true, by_maschke: true };
    }
    let local = cat.full_subcategory_on(acting);
    let alg = match side {
        Side::Left => Algebra::new(local.clone(), field),
        Side::Right => Algebra::new(local.clone(), field).opposite(),
    };
    let acting_cat = alg.category();
    let maps: Vec<Mat> = acting_cat
        .morphisms()
        .map(|lm| {
            let g = cat.find_morphism(local.name(lm)).expect("local morphism exists globally");
            let mut m = Mat::zeros(field, hom.len(), hom.len());
            for (j, &h) in hom.iter().enumerate() {
                let image = match side {
                    Side::Left => cat.comp(g, h),
                    Side::Right => cat.comp(h, g),
                };
                let i = hom.iter().position(|&k| k == image).expect("action stays in the hom-set");
                m.set(i, j, field.one());
            }
            m
        })
        .collect();
    let module = module_from_functor(&alg, vec![hom.len()], maps).expect("group action on a hom-set");
    SideVerdict { group_order: order, projective: is_projective(&module).projective, by_maschke: false }
}
