//! Exact combinatorics of numerical and multibranch value semigroups.
//!
//! The crate is organised bottom-up: [`numsgp`] holds the numerical semigroup
//! type, [`sgptree`] enumerates them, [`ramif`] computes ramification
//! invariants, [`gapseries`] extracts coefficient conditions from gaps,
//! [`valsgp`] and [`classify`] handle value semigroups with several branches,
//! and [`condcount`] does the condition bookkeeping and exact rank checks.

pub mod classify;
pub mod condcount;
pub mod gapseries;
pub mod linalg;
pub mod numsgp;
pub mod ramif;
pub mod sgptree;
pub mod valsgp;

pub use numsgp::{DyckDiagram, NumericalSemigroup, NumericalSemigroupError, Step};
