//! Verification engine for Alder-Andrews / Kang-Park partition
//! inequalities.
//!
//! The crate provides four connected subsystems:
//!
//! - [`exact`]: exact big-integer counting of d-distinct partitions
//!   (`q_d^(a)`), congruence-restricted partitions (`Q_d^(a)`, with an
//!   optional excluded part `Q_d^(a,-)`), and their differences, together
//!   with an independent brute-force [`oracle`].
//! - [`constants`]: high-precision evaluation of the per-d transcendental
//!   constants feeding the asymptotic formulas.
//! - [`bounds`] and [`envelope`]: the eight weighted error summands, their
//!   thresholds N_1..N_8, the combined threshold N(d) past which the
//!   inequality chain certifies Delta >= 0, and the explicit error
//!   envelopes around both main terms.
//! - [`sweep`]: checkpointed verification sweeps that confirm the
//!   inequalities below the threshold by exact computation.
//!
//! The `alder` binary exposes the `count`, `bounds`, `asymptotics`, and
//! `verify` subcommands on top of these; see [`cli`].

pub mod bounds;
pub mod checkpoint;
pub mod cli;
pub mod config;
pub mod constants;
pub mod envelope;
pub mod error;
pub mod exact;
pub mod family;
pub mod hash;
pub mod oracle;
pub mod params;
pub mod real;
pub mod series;
pub mod sweep;

pub use error::{Error, Result};

/// Artifact version, echoed in reports and `--version`.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
