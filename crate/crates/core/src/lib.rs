//! Finite commutative additively idempotent semirings, the free commutative
//! ai-semiring of terms, and decision procedures for the equational theories
//! of a handful of small algebras.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line and the reproduction harness live in the `aisr` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod algebra;
pub mod catalog;
pub mod certify;
pub mod characterize;
pub mod corpus;
pub mod enumerate;
pub mod families;
pub mod freeness;
pub mod graph;
pub mod iso;
pub mod parse;
pub mod proof;
pub mod subvariety;
pub mod term;

pub use algebra::{Assignment, Elem, FiniteAiSemiring, Partition};
pub use families::{Basis, BasisTag};
pub use term::{Context, Formula, Identity, Inequality, Substitution, Term, VarId, VarTable, Word};
