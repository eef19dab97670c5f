//! Exact scalar and matrix arithmetic over the rationals and prime fields.
//!
//! Every other module funnels its linear algebra through [`Mat`]: rank,
//! kernels, particular solutions and quotient bases. Rationals are arbitrary
//! precision; nothing in the crate touches floating point.

mod field;
mod mat;

use thiserror::Error;

pub use field::{Field, Scalar};
pub use mat::{quotient_basis, rank, solve_linear, LinearSolution, Mat, Vector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not a supported prime modulus")]
    NotPrime(u64),
    #[error("unrecognised field `{0}` (expected q, f2, f3, f<p>)")]
    BadField(String),
    #[error("scalar {0} does not lie in {1}")]
    FieldMismatch(String, Field),
    #[error("subspace is not contained in the ambient span")]
    NotContained,
}

/// Linear combination `sum coeffs[i] * vectors[i]`.
pub fn combine(field: Field, len: usize, coeffs: &[Scalar], vectors: &[Vector]) -> Vector {
    let mut out = vec![field.zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            if !x.is_zero() {
                *o = o.add(&c.mul(x));
            }
        }
    }
    out
}
