//! Seeded Monte Carlo simulation of the q-ary symmetric channel.
//!
//! For a linear code the undetected-error event depends on the error
//! pattern alone: a transmission is undetected exactly when the error
//! vector is a nonzero codeword, so no transmitted codeword is sampled.
//! Detection uses the syndrome against the dual generator.
//!
//! Trials are split into fixed-size chunks of 2^16; chunk i draws from
//! ChaCha12 stream i of the given seed. Workers process whole chunks, so
//! the merged counts are identical for any worker count, and reports are
//! byte-reproducible per seed.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{BoundsError, ChannelParameter};
use crate::code::LinearCode;
use crate::field::Symbol;

/// Identifier of the generator scheme, stored in every report.
pub const RNG_ALGORITHM: &str = "chacha12-stream-per-chunk";

const CHUNK: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("trials must be at least 1")]
    NoTrials,
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

/// Result of one simulation run.
#[derive(Debug, Clone, PartialEq)]
pub struct SimulationReport {
    pub code_id: String,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub p: f64,
    pub trials: u64,
    pub undetected: u64,
    pub estimate: f64,
    pub std_error: f64,
    pub seed: u64,
    pub rng: &'static str,
}

impl SimulationReport {
    pub fn csv_header() -> &'static str {
        "code,q,n,k,p,trials,undetected,estimate,std_error,seed,rng"
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.code_id,
            self.q,
            self.n,
            self.k,
            crate::matrixfile::fmt_sig12(self.p),
            self.trials,
            self.undetected,
            crate::matrixfile::fmt_sig12(self.estimate),
            crate::matrixfile::fmt_sig12(self.std_error),
            self.seed,
            self.rng
        )
    }
}

/// Estimates P_ue(C, p) over `trials` independent channel uses.
///
/// Each position of the error vector independently stays 0 with probability
/// 1-p or becomes one of the q-1 nonzero symbols uniformly. A trial counts
/// as undetected when the error is nonzero and has zero syndrome.
pub fn simulate_ue(
    code: &LinearCode,
    code_id: &str,
    ch: ChannelParameter,
    trials: u64,
    seed: u64,
) -> Result<SimulationReport, SimError> {
    if trials == 0 {
        return Err(SimError::NoTrials);
    }
    if ch.q() != code.q() {
        return Err(BoundsError::AlphabetMismatch { channel: ch.q(), code: code.q() }.into());
    }
    let dual_rows = code.dual_generator().rows();
    let p = ch.p();
    let q = code.q() as u64;
    let n = code.n();

    let chunks = trials.div_ceil(CHUNK);
    let undetected: u64 = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            rng.set_stream(chunk);
            let chunk_trials = CHUNK.min(trials - chunk * CHUNK);
            let mut hits = 0u64;
            let mut error = vec![Symbol::ZERO; n];
            for _ in 0..chunk_trials {
                let mut nonzero = false;
                for slot in error.iter_mut() {
                    // 53-bit uniform in [0,1)
                    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
                    if u < p {
                        // uniform nonzero symbol via widening multiply
                        let r = rng.next_u64();
                        let sym = 1 + ((r as u128 * (q - 1) as u128) >> 64) as u64;
                        *slot = Symbol(sym as u8);
                        nonzero = true;
                    } else {
                        *slot = Symbol::ZERO;
                    }
                }
                if nonzero && zero_syndrome(code, dual_rows, &error) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();

    let estimate = undetected as f64 / trials as f64;
    let std_error = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    Ok(SimulationReport {
        code_id: code_id.to_string(),
        q: code.q(),
        n,
        k: code.k(),
        p,
        trials,
        undetected,
        estimate,
        std_error,
        seed,
        rng: RNG_ALGORITHM,
    })
}

fn zero_syndrome(code: &LinearCode, dual_rows: &[Vec<Symbol>], error: &[Symbol]) -> bool {
    let field = code.field();
    dual_rows.iter().all(|row| field.dot(row, error).is_zero())
}
