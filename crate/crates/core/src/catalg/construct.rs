use super::{hom_space, Algebra, HomSpace, Module, ModuleError, ModuleHom};
use crate::exactla::{Mat, Vector};
use crate::fincat::{object_order, MorId, ObjId};

/// `P_x = kHom(x, −)` over the acting category, morphisms acting by postcomposition.
///
/// The basis of `P_x(y)` is `Hom(x, y)` in input order.
pub fn representable(algebra: &Algebra, x: ObjId) -> Module {
    let cat = algebra.category();
    let field = algebra.field();
    let dims: Vec<usize> = cat.objects().map(|y| cat.hom(x, y).len()).collect();
    let maps = cat
        .morphisms()
        .map(|a| {
            let (y, z) = (cat.source(a), cat.target(a));
            let (from, to) = (cat.hom(x, y), cat.hom(x, z));
            let mut m = Mat::zeros(field, to.len(), from.len());
            for (j, &g) in from.iter().enumerate() {
                let i = to.iter().position(|&h| h == cat.comp(a, g)).expect("composite lands in the hom-set");
                m.set(i, j, field.one());
            }
            m
        })
        .collect();
    Module::from_parts(algebra.clone(), dims, maps).expect("representable shapes")
}

/// `C_t`: the representable at the `t`-th object (1-based) of the object order.
pub fn column_projective(algebra: &Algebra, t: usize) -> Result<Module, ModuleError> {
    let order = object_order(algebra.category()).map_err(ModuleError::Category)?;
    let n = order.objects().len();
    let x = order.at(t).ok_or(ModuleError::IndexOutOfRange { index: t, count: n })?;
    Ok(representable(algebra, x))
}

/// The left regular module: `A(y)` has basis the morphisms ending at `y`, in input order.
pub fn regular_module(algebra: &Algebra) -> Module {
    let cat = algebra.category();
    let field = algebra.field();
    let ending: Vec<Vec<MorId>> = cat.objects().map(|y| cat.morphisms().filter(|&f| cat.target(f) == y).collect()).collect();
    let dims = ending.iter().map(Vec::len).collect();
    let maps = cat
        .morphisms()
        .map(|a| {
            let (y, z) = (cat.source(a), cat.target(a));
            let mut m = Mat::zeros(field, ending[z.0].len(), ending[y.0].len());
            for (j, &g) in ending[y.0].iter().enumerate() {
                let i = ending[z.0].iter().position(|&h| h == cat.comp(a, g)).expect("composite ends at z");
                m.set(i, j, field.one());
            }
            m
        })
        .collect();
    Module::from_parts(algebra.clone(), dims, maps).expect("regular module shapes")
}

/// A direct sum with its structure maps. Within each object the summands are
/// stacked in the given order.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: Module,
    pub injections: Vec<ModuleHom>,
    pub projections: Vec<ModuleHom>,
    /// `offsets[i][x]`: first coordinate of summand `i` inside the object space at `x`.
    pub offsets: Vec<Vec<usize>>,
}

pub fn direct_sum(algebra: &Algebra, summands: &[Module]) -> DirectSum {
    let cat = algebra.category();
    let field = algebra.field();
    let no = cat.num_objects();
    let mut offsets = vec![vec![0; no]; summands.len()];
    let mut dims = vec![0; no];
    for (i, s) in summands.iter().enumerate() {
        for x in cat.objects() {
            offsets[i][x.0] = dims[x.0];
            dims[x.0] += s.dim(x);
        }
    }
    let maps = cat
        .morphisms()
        .map(|a| {
            let (x, y) = (cat.source(a), cat.target(a));
            let mut m = Mat::zeros(field, dims[y.0], dims[x.0]);
            for (i, s) in summands.iter().enumerate() {
                m.set_block(offsets[i][y.0], offsets[i][x.0], s.map(a));
            }
            m
        })
        .collect();
    let module = Module::from_parts(algebra.clone(), dims.clone(), maps).expect("direct sum shapes");
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        let inj: Vec<Mat> = cat
            .objects()
            .map(|x| {
                let mut m = Mat::zeros(field, dims[x.0], s.dim(x));
                m.set_block(offsets[i][x.0], 0, &Mat::identity(field, s.dim(x)));
                m
            })
            .collect();
        let proj: Vec<Mat> = inj.iter().map(Mat::transpose).collect();
        injections.push(ModuleHom::from_parts(s.clone(), module.clone(), inj).expect("injection shapes"));
        projections.push(ModuleHom::from_parts(module.clone(), s.clone(), proj).expect("projection shapes"));
    }
    DirectSum { module, injections, projections, offsets }
}

/// `M* = Hom(M, A)` as a module over the opposite algebra, with the hom-space
/// bases that give its coordinates.
#[derive(Debug, Clone)]
pub struct DualModule {
    pub module: Module,
    /// `spaces[x]` is a basis of `Hom(M, P_x) = M*(x)`.
    pub spaces: Vec<HomSpace>,
}

/// The dual `Hom(M, A)`.
///
/// Since `A = ⊕_x P_x`, the space at `x` is `Hom(M, P_x)`; right multiplication
/// by `α: x → y` is postcomposition with `P_y → P_x, γ ↦ γ∘α`.
pub fn dual_module(m: &Module) -> DualModule {
    let alg = m.algebra();
    let cat = alg.category();
    let field = m.field();
    let reps: Vec<Module> = cat.objects().map(|x| representable(alg, x)).collect();
    let spaces: Vec<HomSpace> = cat.objects().map(|x| hom_space(m, &reps[x.0])).collect();
    let op = alg.opposite();
    let maps = cat
        .morphisms()
        .map(|a| {
            let (x, y) = (cat.source(a), cat.target(a));
            let rho = precomposition(alg, &reps, a);
            let cols: Vec<Vector> = spaces[y.0]
                .basis()
                .iter()
                .map(|h| spaces[x.0].coordinates(&rho.compose(h)).expect("postcomposite is natural"))
                .collect();
            Mat::from_columns(field, spaces[x.0].dim(), &cols)
        })
        .collect();
    let dims = spaces.iter().map(HomSpace::dim).collect();
    let module = Module::from_parts(op, dims, maps).expect("dual module shapes");
    DualModule { module, spaces }
}

/// `P_y → P_x, γ ↦ γ∘α` for `α: x → y`.
fn precomposition(alg: &Algebra, reps: &[Module], a: MorId) -> ModuleHom {
    let cat = alg.category();
    let field = alg.field();
    let (x, y) = (cat.source(a), cat.target(a));
    let comps = cat
        .objects()
        .map(|z| {
            let (from, to) = (cat.hom(y, z), cat.hom(x, z));
            let mut mat = Mat::zeros(field, to.len(), from.len());
            for (j, &g) in from.iter().enumerate() {
                let i = to.iter().position(|&h| h == cat.comp(g, a)).expect("precomposite lands in the hom-set");
                mat.set(i, j, field.one());
            }
            mat
        })
        .collect();
    ModuleHom::from_parts(reps[y.0].clone(), reps[x.0].clone(), comps).expect("precomposition shapes")
}

/// The canonical map `M → M**` and whether it is injective / surjective.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub map: ModuleHom,
    pub dual: DualModule,
    pub double_dual: DualModule,
    pub injective: bool,
    pub surjective: bool,
}

impl Evaluation {
    pub fn bijective(&self) -> bool {
        self.injective && self.surjective
    }
}

/// `ev(m)(f) = f(m)`.
///
/// For `m ∈ M(x)` the value `ev(m)` is the hom `M* → P^op_x` taking
/// `f ∈ M*(y) = Hom(M, P_y)` to `f_x(m) ∈ kHom(y, x)`.
pub fn evaluation_map(m: &Module) -> Evaluation {
    let dual = dual_module(m);
    let double_dual = dual_module(&dual.module);
    let cat = m.category();
    let field = m.field();
    let comps = cat
        .objects()
        .map(|x| {
            let space = &double_dual.spaces[x.0];
            let target_rep = space.target().clone();
            let cols: Vec<Vector> = (0..m.dim(x))
                .map(|j| {
                    let mut e = vec![field.zero(); m.dim(x)];
                    e[j] = field.one();
                    let comps: Vec<Mat> = cat
                        .objects()
                        .map(|y| {
                            let vals: Vec<Vector> =
                                dual.spaces[y.0].basis().iter().map(|f| f.component(x).mul_vec(&e)).collect();
                            Mat::from_columns(field, target_rep.dim(y), &vals)
                        })
                        .collect();
                    let h = ModuleHom::from_parts(dual.module.clone(), target_rep.clone(), comps)
                        .expect("evaluation component shapes");
                    space.coordinates(&h).expect("evaluation is natural")
                })
                .collect();
            Mat::from_columns(field, space.dim(), &cols)
        })
        .collect();
    let map = ModuleHom::from_parts(m.clone(), double_dual.module.clone(), comps).expect("evaluation shapes");
    let (injective, surjective) = (map.is_injective(), map.is_surjective());
    Evaluation { map, dual, double_dual, injective, surjective }
}

/// `D(M)`: pointwise linear duals with transposed actions, over the opposite algebra.
pub fn vector_dual(m: &Module) -> Module {
    let maps = m.maps().iter().map(Mat::transpose).collect();
    Module::from_parts(m.algebra().opposite(), m.dims().to_vec(), maps).expect("transposes have dual shapes")
}
