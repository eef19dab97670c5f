use serde::Serialize;

use super::ProjDim;
use crate::catalg::{direct_sum, hom_space, representable, solve_lift, Algebra, DirectSum, Module, ModuleHom};
use crate::exactla::{quotient_basis, Mat, Vector};
use crate::fincat::ObjId;

/// `⊕_j P_{x_j}`: a direct sum of representables, one per generator.
#[derive(Debug, Clone)]
pub struct ProjectiveSum {
    pub objects: Vec<ObjId>,
    pub sum: DirectSum,
}

impl ProjectiveSum {
    pub fn new(alg: &Algebra, objects: Vec<ObjId>) -> ProjectiveSum {
        let reps: Vec<Module> = objects.iter().map(|&x| representable(alg, x)).collect();
        let sum = direct_sum(alg, &reps);
        ProjectiveSum { objects, sum }
    }

    pub fn module(&self) -> &Module {
        &self.sum.module
    }

    /// The hom sending the `j`-th generator `Id_{x_j}` to `elements[j] ∈ target(x_j)`.
    pub fn hom_to(&self, target: &Module, elements: &[Vector]) -> ModuleHom {
        let cat = target.category();
        let field = target.field();
        let comps = cat
            .objects()
            .map(|y| {
                let mut cols = Vec::new();
                for (x, v) in self.objects.iter().zip(elements) {
                    for &g in cat.hom(*x, y) {
                        cols.push(target.map(g).mul_vec(v));
                    }
                }
                Mat::from_columns(field, target.dim(y), &cols)
            })
            .collect();
        ModuleHom::from_parts(self.module().clone(), target.clone(), comps).expect("Yoneda extension shapes")
    }
}

/// Greedy generating set: scan the basis in grading order and keep every
/// vector not already in the submodule generated so far.
pub fn greedy_generators(m: &Module) -> Vec<(ObjId, Vector)> {
    let cat = m.category();
    let field = m.field();
    let mut spans: Vec<Vec<Vector>> = vec![Vec::new(); cat.num_objects()];
    let mut ranks = vec![0usize; cat.num_objects()];
    let mut gens = Vec::new();
    for &x in cat.grading_order() {
        let d = m.dim(x);
        for i in 0..d {
            if ranks[x.0] == d {
                break;
            }
            let mut e = vec![field.zero(); d];
            e[i] = field.one();
            let mut trial = spans[x.0].clone();
            trial.push(e.clone());
            if Mat::from_columns(field, d, &trial).rank() == ranks[x.0] {
                continue;
            }
            for (y, vs) in m.orbit_spans(x, &e).into_iter().enumerate() {
                spans[y].extend(vs);
                ranks[y] = Mat::from_columns(field, m.dim(ObjId(y)), &spans[y]).rank();
            }
            gens.push((x, e));
        }
    }
    gens
}

/// A surjection from a sum of representables built from greedy generators.
#[derive(Debug, Clone)]
pub struct FreeCover {
    pub free: ProjectiveSum,
    pub generators: Vec<(ObjId, Vector)>,
    pub map: ModuleHom,
}

pub fn free_cover(m: &Module) -> FreeCover {
    let generators = greedy_generators(m);
    let free = ProjectiveSum::new(m.algebra(), generators.iter().map(|(x, _)| *x).collect());
    let elements: Vec<Vector> = generators.iter().map(|(_, v)| v.clone()).collect();
    let map = free.hom_to(m, &elements);
    FreeCover { free, generators, map }
}

/// Projectivity by splitting the free cover.
#[derive(Debug, Clone)]
pub struct ProjectivityCheck {
    pub projective: bool,
    pub cover: FreeCover,
    /// `s` with `cover ∘ s = id` when projective.
    pub section: Option<ModuleHom>,
}

pub fn is_projective(m: &Module) -> ProjectivityCheck {
    let cover = free_cover(m);
    let lift = solve_lift(&cover.map, &ModuleHom::identity(m)).expect("cover and identity share a target");
    ProjectivityCheck { projective: lift.lift.is_some(), section: lift.lift, cover }
}

/// One term `F_i` of a resolution with its differential.
#[derive(Debug, Clone)]
pub struct ResolutionStep {
    pub free: ProjectiveSum,
    /// Image of each generator of `F_i` in `F_{i-1}` (in `M` for `i = 0`).
    pub images: Vec<Vector>,
    /// `F_i → F_{i-1}`, or the augmentation `F_0 → M`.
    pub differential: ModuleHom,
    /// Kernel of the differential, the next syzygy.
    pub syzygy: Module,
}

#[derive(Debug, Clone)]
pub struct Resolution {
    pub module: Module,
    pub steps: Vec<ResolutionStep>,
    /// Least `i` whose syzygy `Ω^i` was found projective, when stopping early.
    pub projective_syzygy: Option<usize>,
}

impl Resolution {
    pub fn length(&self) -> usize {
        self.steps.len()
    }

    /// Syzygy dimensions `dim Ω^1, dim Ω^2, ...`.
    pub fn syzygy_dims(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.syzygy.total_dim()).collect()
    }

    /// Image equals kernel at every built degree, and the augmentation is onto.
    pub fn is_exact(&self) -> bool {
        let Some(first) = self.steps.first() else { return true };
        if !first.differential.is_surjective() {
            return false;
        }
        for w in self.steps.windows(2) {
            let (prev, next) = (&w[0].differential, &w[1].differential);
            if !prev.compose(next).is_zero() {
                return false;
            }
            let cat = self.module.category();
            for x in cat.objects() {
                let dim = prev.source().dim(x);
                if prev.component(x).rank() + next.component(x).rank() != dim {
                    return false;
                }
            }
        }
        true
    }
}

fn resolve(m: &Module, length: usize, stop_early: bool) -> Resolution {
    let mut steps: Vec<ResolutionStep> = Vec::new();
    let mut current = m.clone();
    let mut inclusion = ModuleHom::identity(m);
    for i in 0..=length {
        if stop_early && is_projective(&current).projective {
            return Resolution { module: m.clone(), steps, projective_syzygy: Some(i) };
        }
        if stop_early && i == length {
            break;
        }
        let cover = free_cover(&current);
        let images: Vec<Vector> = cover
            .generators
            .iter()
            .map(|(x, v)| inclusion.component(*x).mul_vec(v))
            .collect();
        let differential = inclusion.compose(&cover.map);
        let (syzygy, kernel_inclusion) = cover.map.kernel();
        steps.push(ResolutionStep { free: cover.free, images, differential, syzygy: syzygy.clone() });
        current = syzygy;
        inclusion = kernel_inclusion;
    }
    Resolution { module: m.clone(), steps, projective_syzygy: None }
}

/// Resolution by greedy covers, stopping at the first projective syzygy
/// (checked for `Ω^0 = M, ..., Ω^L`).
pub fn free_resolution(m: &Module, length: usize) -> Resolution {
    resolve(m, length, true)
}

/// Terms `F_0, ..., F_L` with no early stop.
pub fn full_resolution(m: &Module, length: usize) -> Resolution {
    resolve(m, length, false)
}

pub fn projective_dimension(m: &Module, bound: usize) -> ProjDim {
    match free_resolution(m, bound).projective_syzygy {
        Some(i) => ProjDim::Finite(i),
        None => ProjDim::Exceeds(bound),
    }
}

/// Matrix of `Hom(F_{i-1}, N) → Hom(F_i, N)`, `φ ↦ φ ∘ d_i`, in Yoneda coordinates
/// `Hom(⊕ P_{x_j}, N) = ⊕ N(x_j)`.
fn cochain_matrix(prev: &ProjectiveSum, step: &ResolutionStep, n: &Module) -> Mat {
    let cat = n.category();
    let field = n.field();
    let col_off: Vec<usize> = prefix(prev.objects.iter().map(|&x| n.dim(x)));
    let row_off: Vec<usize> = prefix(step.free.objects.iter().map(|&x| n.dim(x)));
    let cols = col_off.last().copied().unwrap_or(0);
    let rows = row_off.last().copied().unwrap_or(0);
    let mut d = Mat::zeros(field, rows, cols);
    for (k, (&xk, image)) in step.free.objects.iter().zip(&step.images).enumerate() {
        for (j, &xj) in prev.objects.iter().enumerate() {
            let base = prev.sum.offsets[j][xk.0];
            let mut block = Mat::zeros(field, n.dim(xk), n.dim(xj));
            for (idx, &g) in cat.hom(xj, xk).iter().enumerate() {
                let c = &image[base + idx];
                if !c.is_zero() {
                    block = block.add(&n.map(g).scale(c));
                }
            }
            d.set_block(row_off[k], col_off[j], &block);
        }
    }
    d
}

fn prefix(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut out = vec![0];
    for d in it {
        out.push(out.last().unwrap() + d);
    }
    out
}

/// `Ext^i(M, N)` computed two ways.
#[derive(Debug, Clone, Serialize)]
pub struct ExtComputation {
    pub degree: usize,
    /// Number of cocycle representatives modulo coboundaries.
    pub dim: usize,
    /// `dim Hom(F_i, N) − rank d_{i+1}^* − rank d_i^*`, with `dim Hom` from the naturality solve.
    pub dim_by_ranks: usize,
}

/// `Ext^i(M, N)` from a resolution with at least `i + 2` terms.
pub fn ext_from_resolution(res: &Resolution, n: &Module, i: usize) -> ExtComputation {
    assert!(i >= 1, "Ext degrees start at 1");
    assert!(res.steps.len() > i + 1, "resolution too short for Ext^{i}");
    let field = n.field();
    let d_in = cochain_matrix(&res.steps[i - 1].free, &res.steps[i], n);
    let d_out = cochain_matrix(&res.steps[i].free, &res.steps[i + 1], n);
    let c_i = d_in.rows();
    let cocycles: Vec<Vector> = if c_i == 0 {
        Vec::new()
    } else if d_out.rows() == 0 {
        (0..c_i)
            .map(|r| {
                let mut v = vec![field.zero(); c_i];
                v[r] = field.one();
                v
            })
            .collect()
    } else {
        d_out.kernel()
    };
    let coboundaries = d_in.columns();
    let reps = quotient_basis(field, &cocycles, &coboundaries).expect("coboundaries are cocycles");
    let hom_dim = hom_space(res.steps[i].free.module(), n).dim();
    let dim_by_ranks = hom_dim - d_out.rank() - d_in.rank();
    ExtComputation { degree: i, dim: reps.len(), dim_by_ranks }
}

pub fn ext(m: &Module, n: &Module, i: usize) -> ExtComputation {
    ext_from_resolution(&full_resolution(m, i + 1), n, i)
}

pub fn ext_dim(m: &Module, n: &Module, i: usize) -> usize {
    ext(m, n, i).dim
}
