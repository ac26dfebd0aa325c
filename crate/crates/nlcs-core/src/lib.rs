//! Satisfiability kernel for conjunctions of polynomial constraints over the
//! reals, with conflict-set extraction on unsatisfiable inputs.
//!
//! The kernel decides SAT/UNSAT with two complete decision procedures —
//! cylindrical algebraic decomposition ([`cad`]) and virtual substitution
//! ([`vs`]) — and, on UNSAT, records per-test-point constraint evaluations
//! from which a small conflict set is computed by 0-1 set covering
//! ([`conflict`]).

pub mod arith;

pub use arith::{Rational, RealAlgebraic, Sign};
