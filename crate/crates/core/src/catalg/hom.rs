use serde::Serialize;

use super::{Module, ModuleError};
use crate::exactla::{solve_linear, Field, Mat, Scalar, Vector};
use crate::fincat::{MorId, ObjId};

/// A natural family of linear maps `f_x: M(x) → N(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleHom {
    source: Module,
    target: Module,
    comps: Vec<Mat>,
}

impl ModuleHom {
    /// Checks shapes only.
    pub fn from_parts(source: Module, target: Module, comps: Vec<Mat>) -> Result<ModuleHom, ModuleError> {
        if source.algebra() != target.algebra() {
            return Err(ModuleError::AlgebraMismatch);
        }
        let cat = source.category();
        if comps.len() != cat.num_objects() {
            return Err(ModuleError::WrongCount { what: "components", expected: cat.num_objects(), found: comps.len() });
        }
        for x in cat.objects() {
            let expected = (target.dim(x), source.dim(x));
            if comps[x.0].shape() != expected {
                return Err(ModuleError::Shape {
                    morphism: format!("component at {}", cat.object_name(x)),
                    expected,
                    found: comps[x.0].shape(),
                });
            }
        }
        Ok(ModuleHom { source, target, comps })
    }

    /// Checks shapes and naturality.
    pub fn new(source: Module, target: Module, comps: Vec<Mat>) -> Result<ModuleHom, ModuleError> {
        let h = ModuleHom::from_parts(source, target, comps)?;
        h.check_naturality()?;
        Ok(h)
    }

    pub fn identity(m: &Module) -> ModuleHom {
        let comps = m.category().objects().map(|x| Mat::identity(m.field(), m.dim(x))).collect();
        ModuleHom { source: m.clone(), target: m.clone(), comps }
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleHom {
        let comps = source
            .category()
            .objects()
            .map(|x| Mat::zeros(source.field(), target.dim(x), source.dim(x)))
            .collect();
        ModuleHom { source: source.clone(), target: target.clone(), comps }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn component(&self, x: ObjId) -> &Mat {
        &self.comps[x.0]
    }

    pub fn components(&self) -> &[Mat] {
        &self.comps
    }

    pub fn field(&self) -> Field {
        self.source.field()
    }

    /// `N(α)∘f_x = f_y∘M(α)` for every morphism α: x → y.
    pub fn check_naturality(&self) -> Result<(), ModuleError> {
        let cat = self.source.category();
        for a in cat.morphisms() {
            let (x, y) = (cat.source(a), cat.target(a));
            if self.target.map(a).mul(&self.comps[x.0]) != self.comps[y.0].mul(self.source.map(a)) {
                return Err(ModuleError::NotNatural { morphism: cat.name(a).to_string() });
            }
        }
        Ok(())
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleHom) -> ModuleHom {
        assert_eq!(other.target, self.source, "composing homs with mismatched modules");
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.mul(b)).collect();
        ModuleHom { source: other.source.clone(), target: self.target.clone(), comps }
    }

    pub fn add(&self, other: &ModuleHom) -> ModuleHom {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect();
        ModuleHom { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn scale(&self, s: &Scalar) -> ModuleHom {
        let comps = self.comps.iter().map(|a| a.scale(s)).collect();
        ModuleHom { source: self.source.clone(), target: self.target.clone(), comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Mat::is_zero)
    }

    /// Block-diagonal matrix on the total spaces.
    pub fn total_matrix(&self) -> Mat {
        let (so, to) = (self.source.offsets(), self.target.offsets());
        let mut m = Mat::zeros(self.field(), self.target.total_dim(), self.source.total_dim());
        for x in self.source.category().objects() {
            m.set_block(to[x.0], so[x.0], &self.comps[x.0]);
        }
        m
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn kernel(&self) -> (Module, ModuleHom) {
        let bases: Vec<Vec<Vector>> = self.comps.iter().map(Mat::kernel).collect();
        self.source.submodule(&bases).expect("kernels of natural maps are submodules")
    }

    pub fn image(&self) -> (Module, ModuleHom) {
        let bases: Vec<Vec<Vector>> = self.comps.iter().map(Mat::columns).collect();
        self.target.submodule(&bases).expect("images of natural maps are submodules")
    }

    /// Components flattened row-major, object by object.
    pub fn to_vector(&self) -> Vector {
        self.comps.iter().flat_map(|c| (0..c.rows()).flat_map(move |i| c.row(i).to_vec())).collect()
    }

    pub fn from_vector(source: &Module, target: &Module, v: &[Scalar]) -> ModuleHom {
        let mut comps = Vec::with_capacity(source.category().num_objects());
        let mut at = 0;
        for x in source.category().objects() {
            let (r, c) = (target.dim(x), source.dim(x));
            let rows: Vec<Vector> = (0..r).map(|i| v[at + i * c..at + (i + 1) * c].to_vec()).collect();
            comps.push(Mat::from_rows(source.field(), c, &rows));
            at += r * c;
        }
        ModuleHom { source: source.clone(), target: target.clone(), comps }
    }

    pub fn dump(&self) -> HomDump {
        let cat = self.source.category();
        HomDump {
            components: cat
                .grading_order()
                .iter()
                .map(|&x| (cat.object_name(x).to_string(), self.comps[x.0].clone()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HomDump {
    pub components: Vec<(String, Mat)>,
}

/// Offsets of each component block in [`ModuleHom::to_vector`] layout.
fn hom_layout(source: &Module, target: &Module) -> (Vec<usize>, usize) {
    let mut off = Vec::new();
    let mut acc = 0;
    for x in source.category().objects() {
        off.push(acc);
        acc += target.dim(x) * source.dim(x);
    }
    (off, acc)
}

/// Rows encoding `N(α) f_x − f_y M(α) = 0` for every generating morphism.
fn naturality_rows(source: &Module, target: &Module) -> (Vec<Vec<(usize, Scalar)>>, usize) {
    let cat = source.category();
    let (off, vars) = hom_layout(source, target);
    let mut rows = Vec::new();
    for &a in source.algebra().generators() {
        let (x, y) = (cat.source(a), cat.target(a));
        let (mx, ny) = (source.dim(x), target.dim(y));
        let (nx, my) = (target.dim(x), source.dim(y));
        let (na, ma) = (target.map(a), source.map(a));
        for i in 0..ny {
            for j in 0..mx {
                let mut row: Vec<(usize, Scalar)> = Vec::new();
                for k in 0..nx {
                    let c = na.get(i, k);
                    if !c.is_zero() {
                        push_coeff(&mut row, off[x.0] + k * mx + j, c.clone());
                    }
                }
                for l in 0..my {
                    let c = ma.get(l, j);
                    if !c.is_zero() {
                        push_coeff(&mut row, off[y.0] + i * my + l, c.neg());
                    }
                }
                row.retain(|(_, c)| !c.is_zero());
                if !row.is_empty() {
                    rows.push(row);
                }
            }
        }
    }
    (rows, vars)
}

fn push_coeff(row: &mut Vec<(usize, Scalar)>, var: usize, c: Scalar) {
    match row.iter_mut().find(|(v, _)| *v == var) {
        Some((_, s)) => *s = s.add(&c),
        None => row.push((var, c)),
    }
}

fn dense(field: Field, rows: &[Vec<(usize, Scalar)>], vars: usize) -> Mat {
    let mut m = Mat::zeros(field, rows.len(), vars);
    for (i, row) in rows.iter().enumerate() {
        for (j, c) in row {
            m.set(i, *j, c.clone());
        }
    }
    m
}

/// A basis of `Hom(M, N)`.
#[derive(Debug, Clone)]
pub struct HomSpace {
    source: Module,
    target: Module,
    basis: Vec<ModuleHom>,
    vectors: Vec<Vector>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ModuleHom] {
        &self.basis
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    /// Coordinates of a hom in this basis, if it lies in the space.
    pub fn coordinates(&self, h: &ModuleHom) -> Option<Vector> {
        let v = h.to_vector();
        if self.basis.is_empty() {
            return v.iter().all(Scalar::is_zero).then(Vec::new);
        }
        let b = Mat::from_columns(self.source.field(), v.len(), &self.vectors);
        let rhs = Mat::from_columns(self.source.field(), v.len(), &[v]);
        b.solve_matrix(&rhs).map(|x| x.column(0))
    }

    pub fn combination(&self, coeffs: &[Scalar]) -> ModuleHom {
        let mut h = ModuleHom::zero(&self.source, &self.target);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                h = h.add(&b.scale(c));
            }
        }
        h
    }
}

/// All natural families `M → N`, by solving the naturality constraints.
pub fn hom_space(source: &Module, target: &Module) -> HomSpace {
    assert_eq!(source.algebra(), target.algebra(), "hom space across different algebras");
    let (rows, vars) = naturality_rows(source, target);
    let vectors = if vars == 0 { Vec::new() } else { dense(source.field(), &rows, vars).kernel() };
    let basis = vectors.iter().map(|v| ModuleHom::from_vector(source, target, v)).collect();
    HomSpace { source: source.clone(), target: target.clone(), basis, vectors }
}

/// Result of solving `θ ∘ f = h` for a natural `f`.
#[derive(Debug, Clone)]
pub struct Lift {
    pub lift: Option<ModuleHom>,
    /// Dimension of the solution space (of the homogeneous system) when a lift exists.
    pub freedom: usize,
}

/// Solves for natural `f: G' → G` with `θ ∘ f = h`, where `θ: G → X` and `h: G' → X`.
pub fn solve_lift(theta: &ModuleHom, h: &ModuleHom) -> Result<Lift, ModuleError> {
    if theta.target() != h.target() {
        return Err(ModuleError::AlgebraMismatch);
    }
    let (g, gp, x) = (theta.source(), h.source(), theta.target());
    let cat = g.category();
    let field = g.field();
    let (mut rows, vars) = naturality_rows(gp, g);
    let (off, _) = hom_layout(gp, g);
    let mut rhs = vec![field.zero(); rows.len()];
    for y in cat.objects() {
        let (gd, gpd, xd) = (g.dim(y), gp.dim(y), x.dim(y));
        let t = theta.component(y);
        let hy = h.component(y);
        for i in 0..xd {
            for j in 0..gpd {
                let mut row = Vec::new();
                for k in 0..gd {
                    let c = t.get(i, k);
                    if !c.is_zero() {
                        row.push((off[y.0] + k * gpd + j, c.clone()));
                    }
                }
                let b = hy.get(i, j).clone();
                if row.is_empty() {
                    if !b.is_zero() {
                        return Ok(Lift { lift: None, freedom: 0 });
                    }
                    continue;
                }
                rows.push(row);
                rhs.push(b);
            }
        }
    }
    if vars == 0 {
        return Ok(Lift { lift: Some(ModuleHom::zero(gp, g)), freedom: 0 });
    }
    let sol = solve_linear(&dense(field, &rows, vars), &rhs).expect("consistent dimensions");
    Ok(match sol.particular {
        Some(v) => Lift { lift: Some(ModuleHom::from_vector(gp, g, &v)), freedom: sol.kernel.len() },
        None => Lift { lift: None, freedom: 0 },
    })
}

/// The hom out of a representable determined by the image of the identity (Yoneda).
pub fn yoneda_hom(representable: &Module, at: ObjId, target: &Module, element: &[Scalar]) -> ModuleHom {
    let cat = target.category();
    let comps = cat
        .objects()
        .map(|y| {
            let cols: Vec<Vector> = cat.hom(at, y).iter().map(|&g: &MorId| target.map(g).mul_vec(element)).collect();
            Mat::from_columns(target.field(), target.dim(y), &cols)
        })
        .collect();
    ModuleHom { source: representable.clone(), target: target.clone(), comps }
}
