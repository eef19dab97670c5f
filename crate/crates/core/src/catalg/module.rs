use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{Algebra, ModuleError, ModuleHom};
use crate::exactla::{Field, Mat, Vector};
use crate::fincat::{FiniteCategory, MorId, ObjId};

struct ModuleData {
    algebra: Algebra,
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

/// A finite-dimensional left module over an [`Algebra`], stored in functor
/// form: one space per object and one matrix per morphism.
///
/// The total space is the direct sum of the object spaces laid out in the
/// grading order of the acting category. Cloning is cheap.
#[derive(Clone)]
pub struct Module(Arc<ModuleData>);

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module(dims {:?} over {:?})", self.graded_dims(), self.0.algebra)
    }
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.algebra == other.0.algebra && self.0.dims == other.0.dims && self.0.maps == other.0.maps)
    }
}

impl Eq for Module {}

/// Builds a module from functor data and checks every module axiom.
///
/// `dims` and `maps` are indexed by object and morphism id of the acting
/// category; `maps[α]` has shape `dims[target] × dims[source]`.
pub fn module_from_functor(algebra: &Algebra, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Module, ModuleError> {
    let m = Module::from_parts(algebra.clone(), dims, maps)?;
    m.check_functoriality()?;
    Ok(m)
}

impl Module {
    /// Checks shapes only; functoriality is the caller's responsibility.
    pub fn from_parts(algebra: Algebra, dims: Vec<usize>, maps: Vec<Mat>) -> Result<Module, ModuleError> {
        let cat = algebra.category();
        if dims.len() != cat.num_objects() {
            return Err(ModuleError::WrongCount { what: "object spaces", expected: cat.num_objects(), found: dims.len() });
        }
        if maps.len() != cat.num_morphisms() {
            return Err(ModuleError::WrongCount { what: "matrices", expected: cat.num_morphisms(), found: maps.len() });
        }
        for f in cat.morphisms() {
            let expected = (dims[cat.target(f).0], dims[cat.source(f).0]);
            let m = &maps[f.0];
            if m.shape() != expected {
                return Err(ModuleError::Shape { morphism: cat.name(f).to_string(), expected, found: m.shape() });
            }
            if m.field() != algebra.field() {
                return Err(ModuleError::FieldMismatch);
            }
        }
        Ok(Module(Arc::new(ModuleData { algebra, dims, maps })))
    }

    pub fn zero(algebra: &Algebra) -> Module {
        let cat = algebra.category();
        let maps = cat.morphisms().map(|_| Mat::zeros(algebra.field(), 0, 0)).collect();
        Module(Arc::new(ModuleData { algebra: algebra.clone(), dims: vec![0; cat.num_objects()], maps }))
    }

    /// Identities act as identities and `X(β∘α) = X(β)·X(α)` for every composable pair.
    pub fn check_functoriality(&self) -> Result<(), ModuleError> {
        let cat = self.category();
        for x in cat.objects() {
            if !self.map(cat.identity(x)).is_identity() {
                return Err(ModuleError::IdentityAction { object: cat.object_name(x).to_string() });
            }
        }
        for g in cat.morphisms() {
            for f in cat.morphisms() {
                if let Some(h) = cat.compose(g, f) {
                    if self.map(h) != &self.map(g).mul(self.map(f)) {
                        return Err(ModuleError::Functoriality {
                            g: cat.name(g).to_string(),
                            f: cat.name(f).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Algebra {
        &self.0.algebra
    }

    /// The acting category.
    pub fn category(&self) -> &FiniteCategory {
        self.0.algebra.category()
    }

    pub fn field(&self) -> Field {
        self.0.algebra.field()
    }

    pub fn dim(&self, x: ObjId) -> usize {
        self.0.dims[x.0]
    }

    /// Dimensions by object id.
    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    /// Dimensions in grading order.
    pub fn graded_dims(&self) -> Vec<usize> {
        self.category().grading_order().iter().map(|x| self.dim(*x)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, f: MorId) -> &Mat {
        &self.0.maps[f.0]
    }

    pub fn maps(&self) -> &[Mat] {
        &self.0.maps
    }

    /// Offset of each object's block in the total space, by object id.
    pub fn offsets(&self) -> Vec<usize> {
        let mut off = vec![0; self.0.dims.len()];
        let mut acc = 0;
        for x in self.category().grading_order() {
            off[x.0] = acc;
            acc += self.dim(*x);
        }
        off
    }

    /// Action of a basis element on the total space.
    pub fn action_matrix(&self, f: MorId) -> Mat {
        let cat = self.category();
        let off = self.offsets();
        let n = self.total_dim();
        let mut m = Mat::zeros(self.field(), n, n);
        m.set_block(off[cat.target(f).0], off[cat.source(f).0], self.map(f));
        m
    }

    /// Action of an arbitrary algebra element on the total space.
    pub fn act(&self, element: &[crate::exactla::Scalar]) -> Mat {
        let n = self.total_dim();
        let mut m = Mat::zeros(self.field(), n, n);
        for (i, c) in element.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            m = m.add(&self.action_matrix(MorId(i)).scale(c));
        }
        m
    }

    /// The image of `v ∈ M(x)` under every morphism out of `x`, per object.
    pub fn orbit_spans(&self, x: ObjId, v: &[crate::exactla::Scalar]) -> Vec<Vec<Vector>> {
        let cat = self.category();
        let mut spans = vec![Vec::new(); cat.num_objects()];
        for f in cat.morphisms().filter(|&f| cat.source(f) == x) {
            spans[cat.target(f).0].push(self.map(f).mul_vec(v));
        }
        spans
    }

    /// Submodule spanned by the columns of `bases[x]` at each object, with its inclusion.
    ///
    /// The columns are reduced to a basis; fails if some morphism leaves the span.
    pub fn submodule(&self, bases: &[Vec<Vector>]) -> Result<(Module, ModuleHom), ModuleError> {
        let cat = self.category();
        let field = self.field();
        let reduced: Vec<Mat> = cat
            .objects()
            .map(|x| independent_columns(field, self.dim(x), &bases[x.0]))
            .collect();
        let mut maps = Vec::with_capacity(cat.num_morphisms());
        for f in cat.morphisms() {
            let (x, y) = (cat.source(f), cat.target(f));
            let image = self.map(f).mul(&reduced[x.0]);
            let coords = if reduced[y.0].cols() == 0 {
                if image.is_zero() {
                    Some(Mat::zeros(field, 0, image.cols()))
                } else {
                    None
                }
            } else {
                reduced[y.0].solve_matrix(&image)
            };
            match coords {
                Some(c) => maps.push(c),
                None => return Err(ModuleError::NotClosed { morphism: cat.name(f).to_string() }),
            }
        }
        let dims = reduced.iter().map(Mat::cols).collect();
        let sub = Module::from_parts(self.algebra().clone(), dims, maps)?;
        let inc = ModuleHom::from_parts(sub.clone(), self.clone(), reduced)?;
        Ok((sub, inc))
    }

    /// Quotient by the submodule spanned by `bases`, with the projection.
    ///
    /// Quotient basis vectors are the images of the standard basis vectors not
    /// already in the span, taken in order; [`Quotient::representatives`] lists them.
    pub fn quotient(&self, bases: &[Vec<Vector>]) -> Result<Quotient, ModuleError> {
        self.submodule(bases)?;
        let cat = self.category();
        let field = self.field();
        let mut reps = Vec::with_capacity(cat.num_objects());
        let mut projections = Vec::with_capacity(cat.num_objects());
        for x in cat.objects() {
            let d = self.dim(x);
            let sub = independent_columns(field, d, &bases[x.0]);
            let mut chosen = sub.clone();
            let mut r = sub.cols();
            let mut picked = Vec::new();
            for i in 0..d {
                let mut e = vec![field.zero(); d];
                e[i] = field.one();
                let trial = chosen.hstack(&Mat::from_columns(field, d, &[e]));
                if trial.rank() > r {
                    r += 1;
                    chosen = trial;
                    picked.push(i);
                }
            }
            // chosen = [sub | complement] is invertible; the projection reads off the last rows
            let inv = chosen.inverse().expect("basis completion is invertible");
            let k = sub.cols();
            projections.push(inv.block(k, 0, d - k, d));
            reps.push(picked);
        }
        let mut maps = Vec::with_capacity(cat.num_morphisms());
        for f in cat.morphisms() {
            let (x, y) = (cat.source(f), cat.target(f));
            let lift: Vec<Vector> = reps[x.0]
                .iter()
                .map(|&i| self.map(f).column(i))
                .collect();
            let lift = Mat::from_columns(field, self.dim(y), &lift);
            maps.push(projections[y.0].mul(&lift));
        }
        let dims = reps.iter().map(Vec::len).collect();
        let module = Module::from_parts(self.algebra().clone(), dims, maps)?;
        let projection = ModuleHom::from_parts(self.clone(), module.clone(), projections)?;
        Ok(Quotient { module, projection, representatives: reps })
    }

    /// Per-object spanning sets of the submodule generated by the given elements.
    pub fn generated_spans(&self, generators: &[(ObjId, Vector)]) -> Vec<Vec<Vector>> {
        let mut spans = vec![Vec::new(); self.category().num_objects()];
        for (x, v) in generators {
            for (y, vs) in self.orbit_spans(*x, v).into_iter().enumerate() {
                spans[y].extend(vs);
            }
        }
        spans
    }

    /// Functor-form dump for reports.
    pub fn describe(&self) -> ModuleDump {
        let cat = self.category();
        let order = cat.grading_order();
        ModuleDump {
            objects: order.iter().map(|x| cat.object_name(*x).to_string()).collect(),
            dims: self.graded_dims(),
            total_dim: self.total_dim(),
            maps: cat
                .morphisms()
                .filter(|&f| !cat.is_identity(f))
                .map(|f| MorphismAction {
                    morphism: cat.name(f).to_string(),
                    source: cat.object_name(cat.source(f)).to_string(),
                    target: cat.object_name(cat.target(f)).to_string(),
                    matrix: self.map(f).clone(),
                })
                .collect(),
        }
    }
}

/// A quotient module together with its projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub module: Module,
    pub projection: ModuleHom,
    /// Per object id, the standard basis indices whose images form the quotient basis.
    pub representatives: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MorphismAction {
    pub morphism: String,
    pub source: String,
    pub target: String,
    pub matrix: Mat,
}

#[derive(Debug, Clone, Serialize)]
pub struct ModuleDump {
    pub objects: Vec<String>,
    pub dims: Vec<usize>,
    pub total_dim: usize,
    pub maps: Vec<MorphismAction>,
}

impl fmt::Display for ModuleDump {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.objects.iter().zip(&self.dims).map(|(o, d)| format!("{o}:{d}")).collect();
        writeln!(f, "dims ({}) total {}", dims.join(", "), self.total_dim)?;
        for m in &self.maps {
            writeln!(f, "{}: {} -> {}", m.morphism, m.source, m.target)?;
            if m.matrix.rows() > 0 && m.matrix.cols() > 0 {
                writeln!(f, "{}", m.matrix)?;
            }
        }
        Ok(())
    }
}

/// Greedy choice of linearly independent columns, as a `dim × k` matrix.
pub(crate) fn independent_columns(field: Field, dim: usize, vectors: &[Vector]) -> Mat {
    let mut chosen: Vec<Vector> = Vec::new();
    let mut rank = 0;
    for v in vectors {
        if v.iter().all(|s| s.is_zero()) {
            continue;
        }
        let mut trial = chosen.clone();
        trial.push(v.clone());
        let r = Mat::from_columns(field, dim, &trial).rank();
        if r > rank {
            rank = r;
            chosen = trial;
        }
    }
    Mat::from_columns(field, dim, &chosen)
}
