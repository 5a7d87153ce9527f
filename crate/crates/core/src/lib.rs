#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod arith;
pub mod charsums;
pub mod dossier;
pub mod error;
pub mod nonresidue;
pub mod primesums;
pub mod report;
pub mod shrinking;
pub mod summation;
pub mod verdict;
pub mod verify;

pub use error::{Error, Result};
