//! Exact arithmetic for the Kashiwara–Vergne equations in the free Lie
//! algebra on two generators, truncated at a finite degree.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: exact rational Gaussian elimination.
//! * [`lie`] and [`assoc`]: the free Lie and free associative algebras on
//!   `x, y`, with the Lyndon basis, exp/log and the BCH product.
//! * [`cyc`]: cyclic words and the trace map.
//! * [`tangential`]: tangential derivations and automorphisms, divergence and
//!   Jacobian.
//! * [`kv`]: the KV equation checkers, the Duflo solver and the
//!   degree-by-degree extension procedures.

pub mod assoc;
pub mod cyc;
mod error;
pub mod kv;
pub mod lie;
pub mod linalg;
mod series;
pub mod tangential;
pub mod word;

pub use error::Error;

/// Exact rational numbers.
pub type Rational = num_rational::BigRational;

pub use assoc::{assoc_exp, assoc_log, assoc_mul, bch, decompose, lie_to_assoc, AssocElt};
pub use cyc::{cyc_taut_act, cyc_tder_act, duflo_pattern, trace, CycElt, DufloTarget};
pub use kv::{
    check_krv, check_krv_lie, check_kv, check_sol_kv, extend_krv_step, extend_solkv_step,
    gr_leading_rank, krv_dim, psi_conjugate, solve_duflo, torsor_quotient, DufloSeries, KVReport,
    Variant,
};
pub use lie::{lie_bracket, lie_dim, lie_from_assoc, lyndon_words, LieElt};
pub use linalg::{kernel_basis, solve_linear, LinearSolution, QMatrix};
pub use tangential::{
    divergence, group_commutator, jacobian, taut_apply, taut_compose, taut_exp, taut_inverse,
    taut_log, tder_apply, tder_bracket, truncate, TAutElt, TDer, Valuation,
};
pub use word::{Letter, Word};
