//! The category algebra `kC` by structure constants, modules in functor and
//! total-space form, homomorphism spaces, duals and evaluation maps.

mod algebra;
mod construct;
mod hom;
mod iso;
mod module;

use thiserror::Error;

pub use algebra::{build_algebra, Algebra};
pub use construct::{
    column_projective, direct_sum, dual_module, evaluation_map, regular_module, representable, vector_dual, DirectSum,
    DualModule, Evaluation,
};
pub use hom::{hom_space, solve_lift, yoneda_hom, HomDump, HomSpace, Lift, ModuleHom};
pub use iso::{is_isomorphic, IsoVerdict};
pub use module::{module_from_functor, Module, ModuleDump, MorphismAction, Quotient};

use crate::fincat::CategoryError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("expected {expected} {what}, found {found}")]
    WrongCount { what: &'static str, expected: usize, found: usize },
    #[error("matrix for `{morphism}` has shape {found:?}, expected {expected:?}")]
    Shape { morphism: String, expected: (usize, usize), found: (usize, usize) },
    #[error("matrix entries lie in the wrong field")]
    FieldMismatch,
    #[error("the identity of `{object}` does not act as the identity")]
    IdentityAction { object: String },
    #[error("functoriality fails for the composable pair ({g}, {f})")]
    Functoriality { g: String, f: String },
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("naturality fails at `{morphism}`")]
    NotNatural { morphism: String },
    #[error("subspace is not closed under `{morphism}`")]
    NotClosed { morphism: String },
    #[error("index {index} out of range 1..={count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error(transparent)]
    Category(CategoryError),
}
