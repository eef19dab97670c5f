//! Projectivity, resolutions, Ext, injective dimension of the regular module,
//! Gorenstein-projectivity certificates and MCM approximations.

mod gorenstein;
mod resolve;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use gorenstein::{
    certify_mcm_approximation, gorenstein_report, injective_dimension, is_gorenstein_projective, projective_over_k,
    ExtRange, ExtRow, GorensteinReport, GpCertificate, GpVerdict, McmCertificate, PairProjectivity, ProbeResult,
    ProjectiveOverK, Side, SideVerdict,
};
pub use resolve::{
    ext, ext_dim, ext_from_resolution, free_cover, free_resolution, full_resolution, greedy_generators,
    is_projective, projective_dimension, ExtComputation, FreeCover, ProjectiveSum, ProjectivityCheck, Resolution,
    ResolutionStep,
};

use crate::catalg::ModuleError;

/// Default search bound for projective and injective dimensions.
pub const DEFAULT_BOUND: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomAlgError {
    #[error("the approximation map is not surjective")]
    NotSurjective,
    #[error(transparent)]
    Module(ModuleError),
}

/// A projective dimension, or the bound the search gave up at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ProjDim {
    Finite(usize),
    Exceeds(usize),
}

impl ProjDim {
    pub fn is_finite(self) -> bool {
        matches!(self, ProjDim::Finite(_))
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            ProjDim::Finite(d) => Some(d),
            ProjDim::Exceeds(_) => None,
        }
    }
}

impl fmt::Display for ProjDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjDim::Finite(d) => write!(f, "{d}"),
            ProjDim::Exceeds(b) => write!(f, ">{b}"),
        }
    }
}
