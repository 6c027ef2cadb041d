//! Diagram calculus: commutative squares, the ω̂/ω̲ constructions built
//! from a triple of composable maps, limits of finite towers, and limits of
//! chains of sub-surjections.

mod exact;
pub mod gen;
mod omega;
mod square;
mod subsurj;
mod tower;

use thiserror::Error;

use crate::fieldlin::LinAlgError;

pub use exact::{
    check_exact_row_equivalence, factorization_sequences, FactorAt, FactorizationReport, Ladder, LadderReport,
    SequenceReport,
};
pub use omega::{
    omega_hat, omega_hat_induced, omega_under, omega_under_induced, OmegaHat, OmegaUnder, TripleComposite,
};
pub use square::{
    check_dual_exchange, cokernel, diagram_coker, diagram_ker, pullback, pushout, DualExchangeReport, Pullback,
    Pushout, SquareDiagram,
};
pub use subsurj::{subsurjection_limit, SubSurjection, SubSurjectionLimit};
pub use tower::{tower_colim, tower_lim, tower_lim_derived, Colimit, Limit, Tower, Variance};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagError {
    #[error("maps do not share a domain")]
    DomainMismatch,
    #[error("maps do not share a codomain")]
    CodomainMismatch,
    #[error("maps are not composable")]
    NotComposable,
    #[error("square does not commute")]
    NonCommuting,
    #[error("ladder does not commute")]
    LadderNotCommuting,
    #[error("ladder columns are not exact")]
    ColumnsNotExact,
    #[error("the given maps do not factor the designated arrow")]
    NotAFactorization,
    #[error("tower has not stabilized; extend the slab")]
    NotStabilized,
    #[error("map is not surjective")]
    NotSurjective,
    #[error("tower is empty")]
    EmptyTower,
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}

#[cfg(test)]
mod props;
