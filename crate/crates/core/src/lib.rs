//! Generalized n-qubit Hardy paradoxes and their Bell inequalities.
//!
//! The crate is organised around the two sides of a Hardy-type argument:
//!
//! * [`quantum`] and [`paradox`] build the quantum side. A generalized GHZ
//!   state `h0|0…0⟩ + h1|1…1⟩` is measured with identical local bases on every
//!   site; the bases are solved so that every zero constraint of an
//!   `[n;|α|,|β|]` scenario vanishes while the success event `a_1 … a_n` keeps
//!   positive probability.
//! * [`lhv`] certifies the classical side by exhaustive enumeration of
//!   deterministic local strategies, including exact facet (tightness) checks.
//! * [`inequality`] evaluates the associated Bell inequalities on the GHZ state:
//!   maximal symmetric violation, threshold visibility under white noise and the
//!   tolerable experimental error.
//! * [`combinatorics`] holds the exact integer side: binomials and the
//!   classical coefficient `F`.
//!
//! Qubit `k` (1-based) is bit `k-1` of a state-vector index (little-endian).
//!
//! Runnable walkthroughs live in `examples/`; run one with
//! `cargo run --release --example <name>`. The `hardy` binary exposes the same
//! operations as subcommands; each prints human text, CSV or JSON.

pub mod cli;
pub mod combinatorics;
pub mod error;
pub mod inequality;
pub mod lhv;
pub mod optimize;
pub mod paradox;
pub mod quantum;
pub mod report;

pub use combinatorics::{binom, coefficient_f, coefficient_f_closed_qq, Rational, Scenario};
pub use error::{Error, Result};
pub use quantum::{Event, GhzState, LocalSettings, SingleQubitBasis, StateVector};
