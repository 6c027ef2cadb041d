//! Configuration invariants δ, γ and λ of closed 1-forms on finite
//! simplicial complexes, computed exactly from sublevel and superlevel
//! homology of the infinite cyclic cover.

pub mod cli;
pub mod config;
pub mod covercomplex;
pub mod diagcalc;
pub mod fieldlin;
pub mod harness;
