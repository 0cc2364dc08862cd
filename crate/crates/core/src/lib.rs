//! Exact character theory for finite groups acting on complex tori.
//!
//! The crate enumerates finite matrix groups, computes their character
//! tables with the Dixon–Schneider algorithm over cyclotomic fields, and
//! derives the invariants of a torus quotient `T/G` from the analytic
//! representation alone: dimensions of invariant 1- and 2-forms, the
//! symplectic type, homogeneity, primitivity, the eigenvalue-1 obstruction
//! and Lagrangian splittings.

pub mod chartab;
pub mod cyclo;
pub mod error;
pub mod fixtures;
pub mod group;
pub mod groupfile;
pub mod linalg;
pub mod pipeline;
pub mod torusq;

pub use chartab::{Character, CharacterTable};
pub use cyclo::Cyclotomic;
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupElement};
pub use groupfile::{AnalyticChoice, GroupFile};
pub use linalg::Matrix;
pub use torusq::{AnalyticRep, LatticeSpec, QuotientReport, SymplecticClass, SymplecticForm};
