//! Box modules over the cover and the configurations δ, γ, λ they define:
//! support scans, 1-D projections, Novikov ranks, class profiles and
//! splittings.

mod boxes;
mod engine;
mod novikov;
mod output;
mod profile;
mod run;
mod scan;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::covercomplex::CoverError;
use crate::diagcalc::DiagError;
use crate::fieldlin::LinAlgError;

pub use boxes::{
    f_box, f_corners, f_split, g_box, t_box, t_corners, t_split, theta_box, theta_map, BoxAboveDiagonal, BoxKind,
    BoxModule, CornerReport, PlaneBox, Split, ThetaReport,
};
pub use engine::{Engine, Level, Setting};
pub use novikov::novikov_betti;
pub use output::{ConfigDoc, MultisetDiff};
pub use profile::{
    build_splittings, class_profile, verify_splittings, ClassProfile, SplitEntry, SplittingFamily, SplittingReport,
};
pub use run::{configurations, stable_configurations, DegreeResult, Stabilized};
pub use scan::{
    configuration_1d, critical_grid, degree_configs, dimension_formula_check, interval_check, support_scan,
    Configuration1D, Configuration2D, DegreeConfigs, DimensionReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Variant {
    #[serde(rename = "standard")]
    Standard,
    #[serde(rename = "BM")]
    Bm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Delta,
    Gamma,
    Lambda,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("window has not stabilized")]
    NotStabilized,
    #[error("internal mismatch: {0}")]
    InternalMismatch(String),
    #[error("degree {r}: δ has total cardinality {total} but the Novikov–Betti number is {novikov}")]
    CardinalityMismatch { r: usize, total: usize, novikov: usize },
    #[error("bad box {0}")]
    BadBox(String),
    #[error("invalid request: {0}")]
    BadInput(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Diag(#[from] DiagError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

impl ConfigError {
    /// True for failures that a larger window may cure.
    pub fn is_window_related(&self) -> bool {
        matches!(
            self,
            ConfigError::NotStabilized
                | ConfigError::Cover(CoverError::OutOfSafeRange(_))
                | ConfigError::Cover(CoverError::WindowTooSmall)
        )
    }
}

#[cfg(test)]
mod tests;
