//! The infinite cyclic cover defined by a simplicial 1-cocycle: validation,
//! finite windows of sheets, level subcomplexes, and homology of pairs.

mod complex;
mod form;
mod homology;
mod io;
mod window;

use thiserror::Error;

use crate::fieldlin::LinAlgError;

pub use complex::SimplicialComplex;
pub use form::{
    check_cocycle, critical_set, integrate, rational_gcd, reduce_mod, validate, CoverData, CriticalSet, OneForm, Q,
};
pub use homology::{translate_chain, PairHomology};
pub use io::{format_rational, parse_rational, ComplexDoc, EdgeValue, Flags, Input, InputDoc};
pub use window::{CellSet, Window};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("the complex has no vertices")]
    EmptyComplex,
    #[error("face {0:?} of a listed simplex is missing")]
    MissingFace(Vec<usize>),
    #[error("no form value on edge {0:?}")]
    MissingEdgeValue(Vec<usize>),
    #[error("form is not a cocycle on triangle {0:?}")]
    NotACocycle(Vec<usize>),
    #[error("window needs at least two sheets")]
    WindowTooSmall,
    #[error("level {0} is too close to the window frontier")]
    OutOfSafeRange(Q),
    #[error("window has not stabilized")]
    NotStabilized,
    #[error("source pair is not contained in the target pair")]
    NotASubpair,
    #[error("invalid input: {0}")]
    BadInput(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
}
