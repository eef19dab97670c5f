//! Finite categories: data model, axiom validation, EI / skeletal /
//! connectedness checks, the object order and poset, and automorphism-group
//! actions on hom-sets.

mod category;
mod properties;

use thiserror::Error;

pub use category::{validate_category, FiniteCategory, MorId, Morphism, ObjId, RawCategory, RawMorphism};
pub use properties::{
    all_actions_free, category_properties, hom_action_report, is_connected, is_ei, is_skeletal,
    minimal_pair_with_upper_bound, object_order, smallest_object, CategoryProperties, HomActionReport,
    ObjectOrder, ObjectPoset,
};

/// A violated category axiom, with the offending names as witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("duplicate name `{0}`")]
    DuplicateName(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("missing identity for object `{0}`")]
    MissingIdentity(String),
    #[error("identity `{morphism}` of `{object}` is not an endomorphism of `{object}`")]
    IdentityEndpoints { object: String, morphism: String },
    #[error("object `{object}` has two identities `{first}` and `{second}`")]
    DuplicateIdentity { object: String, first: String, second: String },
    #[error("comp entry for non-composable pair ({g}, {f})")]
    NotComposable { g: String, f: String },
    #[error("endpoint mismatch: {g} ∘ {f} = {result} has the wrong source or target")]
    EndpointMismatch { g: String, f: String, result: String },
    #[error("conflicting entries for {g} ∘ {f}: `{first}` and `{second}`")]
    ConflictingEntry { g: String, f: String, first: String, second: String },
    #[error("incomplete table: no entry for composable pair ({g}, {f})")]
    IncompleteTable { g: String, f: String },
    #[error("unit law fails for identity `{identity}` and `{f}`")]
    UnitLaw { identity: String, f: String },
    #[error("associativity fails for ({h}, {g}, {f})")]
    Associativity { h: String, g: String, f: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("the object poset has a cycle through {0:?} (category is not skeletal EI)")]
    PosetCycle(Vec<String>),
    #[error("not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("invalid category: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<ValidationError>),
}
