//! Numerical companion to `kplane-core`: grid functions, the x-ray and
//! plate/plane maximal transforms, Littlewood–Paley decomposition and
//! homogeneous Sobolev norms, Grassmannian sampling, and the scaling
//! experiments that check the analytic identities at desk scale. Also owns
//! the grid-function file format and the report/config serialization used by
//! the `kplane` binary.

pub mod budgets;
pub mod experiments;
pub mod fit;
pub mod frame;
pub mod grassmann;
pub mod grid;
pub mod gridfile;
pub mod plates;
pub mod report;
pub mod spectral;
pub mod testfn;
pub mod xray;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("{0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Engine(#[from] kplane_core::EngineError),
}

impl LabError {
    pub fn domain(msg: impl Into<String>) -> Self {
        LabError::Domain(msg.into())
    }

    pub fn format(msg: impl Into<String>) -> Self {
        LabError::Format(msg.into())
    }
}

pub use frame::{Frame, HemisphereChart};
pub use grid::GridFunction;
