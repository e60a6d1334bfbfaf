//! Invariants behind the growth of higher topological complexity.
//!
//! Three families of exact computations live here:
//!
//! - [`graph`]: clique invariants of finite simple graphs. The clique number
//!   and the maximum total size of r cliques with empty common intersection
//!   give the category and the r-th topological complexity of the classifying
//!   space of the right-angled Artin group on the graph.
//! - [`algebra`] and [`sullivan`]: rational graded-commutative algebras and
//!   free differential models. Cohomology, cup-length, zero-divisor
//!   cup-lengths, the kernel ideal of the r-fold multiplication and its
//!   nilpotency certificates, and interval bounds for the module topological
//!   complexity, with exact values in the pure-odd case.
//! - [`genfunc`]: eventually-arithmetic TC sequences and the polynomial P
//!   with Σ TC_{r+1} x^r = P(x)/(1−x)², including the P(1) = cat check.
//!
//! All arithmetic is exact (arbitrary-precision rationals and integers);
//! there is no floating point anywhere. Every search or linear-algebra
//! routine takes an optional [`config::Budget`] and fails loudly instead of
//! exhausting resources.
//!
//! The `examples/` directory holds one runnable example per capability, and
//! the thin `htc` binary exposes the `graph`, `model` and `seq` commands with
//! deterministic text or JSON reports.

pub mod algebra;
pub mod cli;
pub mod config;
pub mod error;
pub mod genfunc;
pub mod graph;
pub mod linalg;
pub mod poly_text;
pub mod report;
pub mod sullivan;

pub use config::Budget;
pub use error::{Error, Result};
