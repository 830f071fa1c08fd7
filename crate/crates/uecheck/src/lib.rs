//! Error-detection analysis of linear codes over GF(q).
//!
//! The crate computes exact weight distributions and undetected-error
//! probabilities for `[n,k;q]` linear codes on the q-ary symmetric channel,
//! evaluates the classical upper bound on the probability of undetected
//! error together with a sharper bound for codes of full support, builds the
//! extremal code families that meet those bounds, certifies the bounds by
//! exhaustive enumeration at small parameters, and validates the analytic
//! values by seeded Monte Carlo simulation.
//!
//! Modules follow the pipeline:
//!
//! * [`field`] — table-driven arithmetic in GF(q) for prime-power q ≤ 64
//! * [`code`] — generator matrices, duals, supports, minimum distance,
//!   codeword enumeration, monomial equivalence at tiny parameters
//! * [`weights`] — weight distributions, enumerator evaluation, the
//!   MacWilliams transform, partial-sum dominance
//! * [`bounds`] — the undetected-error probability and all bound formulas
//! * [`constructions`] — the extremal families and their closed-form
//!   weight data
//! * [`verifier`] — exhaustive certification with equality-case
//!   classification
//! * [`sim`] — q-ary symmetric channel Monte Carlo
//! * [`matrixfile`] — the plain-text generator matrix format used by the CLI

pub mod bounds;
pub mod code;
pub mod constructions;
pub mod field;
pub mod matrixfile;
pub mod sim;
pub mod util;
pub mod verifier;
pub mod weights;

pub use bounds::{BoundCurve, ChannelParameter};
pub use code::{Codeword, GeneratorMatrix, LinearCode};
pub use field::{Field, Symbol};
pub use verifier::VerificationCertificate;
pub use weights::WeightDistribution;

/// Default cap on exhaustive enumeration (messages, systematic blocks,
/// or permutation/scaling searches).
pub const DEFAULT_BUDGET: u64 = 1 << 24;
