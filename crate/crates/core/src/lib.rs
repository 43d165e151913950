//! Kazhdan-Lusztig cells, asymptotic invariants and the generalised
//! Robinson-Schensted correspondence for Hecke algebras of type `B_n` with
//! asymptotic unequal parameters.

pub mod analysis;
pub mod asym;
pub mod cells;
pub mod conjectures;
pub mod coxeter;
pub mod error;
pub mod hecke;
pub mod kl;
pub mod laurent;
pub mod par;
pub mod perm;
pub mod report;
pub mod specialize;
pub mod structure;
pub mod tableau;
pub mod typeb;

pub use error::{Error, Result};
