use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{Field, Scalar, Vector};
use crate::fincat::{is_ei, FiniteCategory, MorId};
use crate::freeness::is_unfactorizable;

/// The category algebra `kC` by structure constants, or its opposite.
///
/// Both the category and its opposite are kept so that flipping sides is free.
/// Modules over an algebra are covariant functors on [`Algebra::category`],
/// which is the opposite category when the algebra is the opposite algebra.
#[derive(Clone)]
pub struct Algebra {
    base: Arc<FiniteCategory>,
    opposite_cat: Arc<FiniteCategory>,
    field: Field,
    opposite: bool,
    // naturality generators of base / opposite (same ids)
    generators: Arc<Vec<MorId>>,
}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({}{}, {})", if self.opposite { "op " } else { "" }, self.base, self.field)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.opposite == other.opposite
            && (Arc::ptr_eq(&self.base, &other.base) || self.base == other.base)
    }
}

impl Eq for Algebra {}

/// Builds `kC` over `field`.
pub fn build_algebra(cat: &FiniteCategory, field: Field) -> Algebra {
    Algebra::new(cat.clone(), field)
}

impl Algebra {
    pub fn new(cat: FiniteCategory, field: Field) -> Self {
        let opposite_cat = Arc::new(cat.opposite());
        // Non-identity isomorphisms together with the unfactorizables generate
        // an EI category under composition.
        let generators: Vec<MorId> = if is_ei(&cat) {
            cat.morphisms()
                .filter(|&f| !cat.is_identity(f) && (cat.is_iso(f) || is_unfactorizable(&cat, f)))
                .collect()
        } else {
            cat.morphisms().filter(|&f| !cat.is_identity(f)).collect()
        };
        Algebra { base: Arc::new(cat), opposite_cat, field, opposite: false, generators: Arc::new(generators) }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    /// The category whose covariant functors are the modules over this algebra.
    pub fn category(&self) -> &FiniteCategory {
        if self.opposite {
            &self.opposite_cat
        } else {
            &self.base
        }
    }

    /// The category the algebra was built from, regardless of side.
    pub fn base_category(&self) -> &FiniteCategory {
        &self.base
    }

    pub fn opposite(&self) -> Algebra {
        Algebra { opposite: !self.opposite, ..self.clone() }
    }

    /// Morphisms whose naturality squares imply naturality for all morphisms.
    pub fn generators(&self) -> &[MorId] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.base.num_morphisms()
    }

    /// `a * b` on basis elements: the composite `a ∘ b` (in the acting category) or zero.
    pub fn basis_product(&self, a: MorId, b: MorId) -> Option<MorId> {
        self.category().compose(a, b)
    }

    pub fn basis_vector(&self, a: MorId) -> Vector {
        let mut v = vec![self.field.zero(); self.dim()];
        v[a.0] = self.field.one();
        v
    }

    pub fn multiply(&self, u: &[Scalar], v: &[Scalar]) -> Vector {
        let mut out = vec![self.field.zero(); self.dim()];
        for (a, ca) in u.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, cb) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if let Some(p) = self.basis_product(MorId(a), MorId(b)) {
                    out[p.0] = out[p.0].add(&ca.mul(cb));
                }
            }
        }
        out
    }

    /// `Σ_x Id_x`.
    pub fn unit(&self) -> Vector {
        let mut v = vec![self.field.zero(); self.dim()];
        for x in self.base.objects() {
            v[self.base.identity(x).0] = self.field.one();
        }
        v
    }

    pub fn check_unit(&self) -> bool {
        let one = self.unit();
        self.base.morphisms().all(|a| {
            let e = self.basis_vector(a);
            self.multiply(&one, &e) == e && self.multiply(&e, &one) == e
        })
    }

    /// Re-checks associativity on `samples` random basis triples; returns the first failure.
    pub fn check_associativity_sample(&self, samples: usize, seed: u64) -> Result<(), (MorId, MorId, MorId)> {
        let n = self.dim();
        if n == 0 {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (a, b, c) = (MorId(rng.gen_range(0..n)), MorId(rng.gen_range(0..n)), MorId(rng.gen_range(0..n)));
            let left = self.basis_product(a, b).and_then(|ab| self.basis_product(ab, c));
            let right = self.basis_product(b, c).and_then(|bc| self.basis_product(a, bc));
            if left != right {
                return Err((a, b, c));
            }
        }
        Ok(())
    }
}
