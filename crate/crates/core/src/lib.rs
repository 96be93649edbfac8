//! Complex Hadamard promise problems.
//!
//! A promise problem is specified by a dephased complex Hadamard matrix `M`
//! of order `p` and `p` orderings `Π_j` of `N` unknown gates; the gates are
//! promised to satisfy `Π_j = M_{jk} · Π_0` for one hidden column `k`.
//!
//! - [`chm`]: construction, validation, dephasing and Butson classification.
//! - [`gate`]: generalized Pauli and Heisenberg-Weyl gate algebra.
//! - [`promise`]: gate-set synthesis and promise verification.
//! - [`switch`]: the `(N, p)`-switch protocol that reads out `k` with one query per gate.
//! - [`scs`]: exact fixed-order query costs via shortest common supersequences.

pub mod chm;
pub mod config;
pub mod cyclotomic;
pub mod error;
pub mod gate;
pub mod phase;
pub mod promise;
pub mod scs;
pub mod switch;

pub use error::{Error, Result};
