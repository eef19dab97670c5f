use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{hom_space, Module, ModuleHom};
use crate::exactla::{Field, Scalar};

/// Outcome of [`is_isomorphic`].
#[derive(Debug, Clone)]
pub enum IsoVerdict {
    Isomorphic(ModuleHom),
    /// A necessary condition failed; the string names it.
    NotIsomorphic(String),
    /// Exhaustive search ruled out every hom.
    NoInvertibleHom,
    /// Random search exhausted its budget without finding an invertible hom.
    Undetermined,
}

impl IsoVerdict {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoVerdict::Isomorphic(_))
    }
}

/// Random attempts over ℚ (and over `F_p` when enumeration is too large).
const RANDOM_TRIES: usize = 64;
/// Largest hom space size `q^dim` searched exhaustively.
const EXHAUSTIVE_LIMIT: u64 = 1 << 12;

/// Decides `M ≅ N` by necessary checks followed by a search for an invertible hom.
///
/// Over a small finite field every element of `Hom(M, N)` is tried; otherwise
/// random combinations with a seeded generator are tested. Over ℚ the
/// invertible homs form a nonempty Zariski-open set whenever `M ≅ N`, so
/// random coefficients find one with overwhelming probability.
pub fn is_isomorphic(m: &Module, n: &Module, seed: u64) -> IsoVerdict {
    if m.algebra() != n.algebra() {
        return IsoVerdict::NotIsomorphic("modules over different algebras".into());
    }
    if m.dims() != n.dims() {
        return IsoVerdict::NotIsomorphic(format!("graded dimensions {:?} and {:?} differ", m.graded_dims(), n.graded_dims()));
    }
    let forward = hom_space(m, n);
    let backward = hom_space(n, m);
    if forward.dim() != backward.dim() {
        return IsoVerdict::NotIsomorphic(format!("dim Hom(M,N) = {} but dim Hom(N,M) = {}", forward.dim(), backward.dim()));
    }
    if m.is_zero() {
        return IsoVerdict::Isomorphic(ModuleHom::zero(m, n));
    }
    let d = forward.dim();
    if d == 0 {
        return IsoVerdict::NotIsomorphic("Hom(M,N) = 0".into());
    }
    let field = m.field();
    if let Field::Prime(p) = field {
        if let Some(total) = p.checked_pow(d as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT) {
            for code in 1..total {
                let coeffs = digits(code, p, d, field);
                let h = forward.combination(&coeffs);
                if h.is_isomorphism() {
                    return IsoVerdict::Isomorphic(h);
                }
            }
            return IsoVerdict::NoInvertibleHom;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<Scalar> = (0..d)
            .map(|_| match field {
                Field::Rationals => field.from_i64(rng.gen_range(-9..=9)),
                Field::Prime(p) => field.from_i64(rng.gen_range(0..p) as i64),
            })
            .collect();
        let h = forward.combination(&coeffs);
        if h.is_isomorphism() {
            return IsoVerdict::Isomorphic(h);
        }
    }
    IsoVerdict::Undetermined
}

fn digits(mut code: u64, p: u64, len: usize, field: Field) -> Vec<Scalar> {
    (0..len)
        .map(|_| {
            let d = code % p;
            code /= p;
            field.from_i64(d as i64)
        })
        .collect()
}
