//! End-to-end checks: duality on closed manifolds, stability under
//! perturbation, the sub-surjection route to BM configurations, the
//! persistence oracle for exact forms, and window audits.

mod audit;
mod duality;
pub mod fixtures;
mod oracle;
pub mod random;
mod stability;
mod subsurj;

use serde::Serialize;
use thiserror::Error;

use crate::config::{ConfigError, Configuration1D};
use crate::covercomplex::{format_rational, CoverError};
use crate::diagcalc::DiagError;
use crate::fieldlin::LinAlgError;

pub use audit::{
    box_law_audit, dimension_audit, theta_comparison, window_audit, BoxFailure, BoxLawReport, DimensionAudit,
    ThetaComparison, ThetaLevel, WindowAudit, WindowTrial,
};
pub use duality::{check_duality, manifold_dim, DegreeDuality, DualityReport};
pub use oracle::{oracle_configurations, persistence_oracle, OracleConfigs, OracleReport};
pub use stability::{
    check_stability, exact_difference, random_perturbation, stable_delta_1d, PointSum, StabilityReport,
};
pub use subsurj::{bm_via_subsurjections, subsurjection_audit, SubsurjAudit, SubsurjReport};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("not a closed manifold: {0}")]
    NotAManifold(String),
    #[error("the perturbation changes the cohomology class (nonzero period {0})")]
    ClassMismatch(String),
    #[error("epsilon too large: {0}")]
    EpsilonTooLarge(String),
    #[error("{0}")]
    BadInput(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Diag(#[from] DiagError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

impl HarnessError {
    pub fn is_not_stabilized(&self) -> bool {
        matches!(
            self,
            HarnessError::Config(ConfigError::NotStabilized) | HarnessError::Cover(CoverError::NotStabilized)
        )
    }
}

/// A point `(t, multiplicity)` with `t` written as `num/den`.
pub type LinePoint = (String, usize);

/// A point `(a, b, multiplicity)`.
pub type PlanePoint = (String, String, usize);

pub(crate) fn line_points(c: &Configuration1D) -> Vec<LinePoint> {
    c.points.iter().map(|(t, m)| (format_rational(t), *m)).collect()
}

/// Reports share a pass flag so the command line can pick an exit code.
pub trait Verdict: Serialize {
    fn passed(&self) -> bool;
}
