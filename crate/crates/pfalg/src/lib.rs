//! Algebras of unary partial functions.
//!
//! A partial function on a finite base set can be composed with others,
//! restricted to its domain or range, complemented on its domain, intersected,
//! preferentially unioned, and iterated. This crate implements:
//!
//! * concrete semantics for all of these operations over finite bases and
//!   term evaluation against them ([`pfn`], [`fnalg`]);
//! * finite abstract algebras given by operation tables, together with the
//!   axiom catalog that characterises which of them are isomorphic to
//!   algebras of genuine partial functions ([`table`], [`laws`],
//!   [`structure`]);
//! * a small-model decision procedure for equation validity over function
//!   algebras, with counterexample search and minimization ([`sigma`],
//!   [`decide`]), and a reduction from propositional validity ([`satred`]);
//! * a constructor for explicit finite functional representations of finite
//!   representable algebras, via equivalence classes of permissible
//!   sequences, plus an independent verifier ([`schein`], [`represent`],
//!   [`lift`], [`shrink`]).

pub mod decide;
pub mod fnalg;
pub mod gen;
pub mod laws;
pub mod lift;
pub mod parse;
pub mod pfn;
pub mod report;
pub mod represent;
pub mod rng;
pub mod satred;
pub mod schein;
pub mod shrink;
pub mod sig;
pub mod sigma;
pub mod structure;
pub mod table;
pub mod term;

#[cfg(test)]
pub(crate) mod testutil;

pub use fnalg::{Assignment, FunctionAlgebra};
pub use pfn::PartialFunction;
pub use sig::{Op, Signature};
pub use table::FiniteAlgebra;
pub use term::{Equation, Quasiequation, Term};
