//! Weight distributions, the enumerator polynomial A_C(z), the MacWilliams
//! transform, and the partial-sum dominance order.
//!
//! The MacWilliams transform runs in exact integer arithmetic through the
//! Krawtchouk coefficient expansion of
//! `A_dual(z) = q^{-k} (1+(q-1)z)^n A((1-z)/(1+(q-1)z))`;
//! integrality of the output doubles as a correctness check on the input.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::code::{CodeError, LinearCode};
use crate::util::binom_big;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightError {
    #[error("transform produced a non-integer or negative count at weight {weight}")]
    NonIntegerResult { weight: usize },
    #[error("distributions have different (n, k, q) parameters")]
    DimensionMismatch,
    #[error("invalid weight distribution: {0}")]
    InvalidDistribution(String),
}

/// Exact codeword counts A_0..A_n of an [n,k;q] code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    q: u32,
    n: usize,
    k: usize,
    counts: Vec<u64>,
}

impl WeightDistribution {
    /// Validates A_0 = 1, nonnegativity (by type), length n + 1, and
    /// total q^k.
    pub fn from_counts(q: u32, n: usize, k: usize, counts: Vec<u64>) -> Result<Self, WeightError> {
        if counts.len() != n + 1 {
            return Err(WeightError::InvalidDistribution(format!(
                "expected {} counts, got {}",
                n + 1,
                counts.len()
            )));
        }
        if counts[0] != 1 {
            return Err(WeightError::InvalidDistribution("A_0 must be 1".into()));
        }
        let total: u128 = counts.iter().map(|&c| c as u128).sum();
        let expected = (q as u128).checked_pow(k as u32);
        if Some(total) != expected {
            return Err(WeightError::InvalidDistribution(format!(
                "counts sum to {total}, expected q^k = {q}^{k}"
            )));
        }
        Ok(WeightDistribution { q, n, k, counts })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn count(&self, weight: usize) -> u64 {
        self.counts[weight]
    }

    /// A_C(z) = sum A_i z^i, by Horner evaluation.
    pub fn evaluate(&self, z: f64) -> f64 {
        self.counts.iter().rev().fold(0.0, |acc, &c| acc * z + c as f64)
    }

    /// Cumulative nonzero-weight counts S_j = A_1 + ... + A_j for j = 1..n.
    pub fn partial_sums(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.n);
        let mut acc = 0u64;
        for &c in &self.counts[1..] {
            acc += c;
            out.push(acc);
        }
        out
    }
}

/// Exact weight distribution by exhaustive codeword enumeration.
pub fn weight_distribution(code: &LinearCode, budget: u64) -> Result<WeightDistribution, CodeError> {
    let mut counts = vec![0u64; code.n() + 1];
    for w in code.codewords(budget)? {
        counts[w.weight()] += 1;
    }
    Ok(WeightDistribution { q: code.q(), n: code.n(), k: code.k(), counts })
}

/// The dual code's weight distribution via the MacWilliams identity, in
/// exact integer arithmetic. Fails with `NonIntegerResult` when the input is
/// not the distribution of an actual [n,k;q] code.
pub fn macwilliams(w: &WeightDistribution) -> Result<WeightDistribution, WeightError> {
    let n = w.n as u64;
    let q = BigInt::from(w.q);
    let qk = (0..w.k).fold(BigInt::from(1), |acc, _| acc * &q);
    let mut dual_counts = Vec::with_capacity(w.n + 1);
    for j in 0..=w.n {
        // B_j * q^k = sum_i A_i K_j(i), with
        // K_j(i) = sum_s (-1)^s (q-1)^(j-s) C(i,s) C(n-i, j-s)
        let mut acc = BigInt::zero();
        for (i, &a) in w.counts.iter().enumerate() {
            if a == 0 {
                continue;
            }
            acc += BigInt::from(a) * krawtchouk(j as u64, i as u64, n, w.q);
        }
        if acc.is_negative() || (&acc % &qk) != BigInt::zero() {
            return Err(WeightError::NonIntegerResult { weight: j });
        }
        let b = (acc / &qk)
            .to_u64()
            .ok_or(WeightError::NonIntegerResult { weight: j })?;
        dual_counts.push(b);
    }
    WeightDistribution::from_counts(w.q, w.n, w.n - w.k, dual_counts)
}

fn krawtchouk(j: u64, i: u64, n: u64, q: u32) -> BigInt {
    let qm1 = BigInt::from(q - 1);
    let mut acc = BigInt::zero();
    for s in 0..=j.min(i) {
        let term = binom_big(i, s) * binom_big(n - i, j - s) * qm1.pow((j - s) as u32);
        if s % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// True when `a` dominates `b` in the partial-sum order: S_j(b) <= S_j(a)
/// for every j. Dominance implies A_b(z) <= A_a(z) on [0,1].
pub fn dominates(a: &WeightDistribution, b: &WeightDistribution) -> Result<bool, WeightError> {
    if (a.q, a.n, a.k) != (b.q, b.n, b.k) {
        return Err(WeightError::DimensionMismatch);
    }
    Ok(a.partial_sums().iter().zip(b.partial_sums()).all(|(&sa, sb)| sb <= sa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::util::tuples;
    use std::sync::Arc;

    fn code(q: u32, n: usize, rows: &[Vec<u32>]) -> LinearCode {
        LinearCode::from_codes(Arc::new(Field::new(q).unwrap()), n, rows).unwrap()
    }

    fn wd(q: u32, n: usize, k: usize, counts: &[u64]) -> WeightDistribution {
        WeightDistribution::from_counts(q, n, k, counts.to_vec()).unwrap()
    }

    #[test]
    fn distribution_examples() {
        let c32 = code(2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(weight_distribution(&c32, 1 << 10).unwrap().counts(), &[1, 2, 1, 0]);

        let e = code(2, 3, &[vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(weight_distribution(&e, 1 << 10).unwrap().counts(), &[1, 0, 3, 0]);

        let full = code(2, 2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(weight_distribution(&full, 1 << 10).unwrap().counts(), &[1, 2, 1]);
    }

    #[test]
    fn evaluation_examples() {
        let w = wd(2, 3, 2, &[1, 2, 1, 0]);
        assert_eq!(w.evaluate(1.0), 4.0);
        assert_eq!(w.evaluate(0.0), 1.0);
        let e = wd(2, 3, 2, &[1, 0, 3, 0]);
        assert!((e.evaluate(0.5) - 1.75).abs() < 1e-15);
    }

    #[test]
    fn from_counts_validates() {
        assert!(matches!(
            WeightDistribution::from_counts(2, 3, 2, vec![1, 1, 1]),
            Err(WeightError::InvalidDistribution(_))
        ));
        assert!(matches!(
            WeightDistribution::from_counts(2, 3, 2, vec![0, 2, 1, 1]),
            Err(WeightError::InvalidDistribution(_))
        ));
        assert!(matches!(
            WeightDistribution::from_counts(2, 3, 2, vec![1, 1, 1, 0]),
            Err(WeightError::InvalidDistribution(_))
        ));
    }

    #[test]
    fn macwilliams_examples() {
        // [3,2;2] coordinate plane -> dual spanned by e3
        let w = wd(2, 3, 2, &[1, 2, 1, 0]);
        assert_eq!(macwilliams(&w).unwrap().counts(), &[1, 1, 0, 0]);

        // repetition [3,1;2] -> even weight code
        let rep = wd(2, 3, 1, &[1, 0, 0, 1]);
        assert_eq!(macwilliams(&rep).unwrap().counts(), &[1, 0, 3, 0]);
    }

    #[test]
    fn macwilliams_rejects_non_code_distribution() {
        // sums to q^k but is not any code's distribution
        let bogus = wd(2, 3, 2, &[1, 3, 0, 0]);
        assert!(matches!(macwilliams(&bogus), Err(WeightError::NonIntegerResult { .. })));
    }

    #[test]
    fn macwilliams_matches_dual_enumeration() {
        for c in [
            code(2, 4, &[vec![1, 1, 0, 1], vec![0, 1, 1, 1]]),
            code(3, 4, &[vec![1, 0, 2, 1], vec![0, 1, 1, 2]]),
            code(4, 3, &[vec![1, 2, 3]]),
            code(2, 5, &[vec![1, 0, 1, 1, 0], vec![0, 1, 1, 0, 1], vec![0, 0, 1, 1, 1]]),
        ] {
            let w = weight_distribution(&c, 1 << 20).unwrap();
            let dual_w = weight_distribution(&c.dual(), 1 << 20).unwrap();
            assert_eq!(macwilliams(&w).unwrap(), dual_w);
            // biduality
            assert_eq!(macwilliams(&dual_w).unwrap(), w);
        }
    }

    #[test]
    fn partial_sums_examples() {
        assert_eq!(wd(2, 3, 2, &[1, 2, 1, 0]).partial_sums(), vec![2, 3, 3]);
        assert_eq!(wd(2, 3, 2, &[1, 0, 3, 0]).partial_sums(), vec![0, 3, 3]);
        assert_eq!(wd(2, 3, 0, &[1, 0, 0, 0]).partial_sums(), vec![0, 0, 0]);
    }

    #[test]
    fn dominance_examples() {
        let a = wd(2, 3, 2, &[1, 2, 1, 0]);
        let b = wd(2, 3, 2, &[1, 0, 3, 0]);
        assert!(dominates(&a, &a).unwrap());
        assert!(dominates(&a, &b).unwrap());
        assert!(!dominates(&b, &a).unwrap());
        let other = wd(2, 4, 2, &[1, 2, 1, 0, 0]);
        assert_eq!(dominates(&a, &other), Err(WeightError::DimensionMismatch));
    }

    /// The coordinate-subspace code's distribution dominates every code with
    /// the same parameters, exhaustively over systematic codes at q = 2.
    #[test]
    fn coordinate_code_dominates_everything_small() {
        let field = Arc::new(Field::new(2).unwrap());
        for n in 1..=5usize {
            for k in 1..=n {
                let mut top_rows = Vec::new();
                for r in 0..k {
                    let mut row = vec![0u32; n];
                    row[r] = 1;
                    top_rows.push(row);
                }
                let top = LinearCode::from_codes(Arc::clone(&field), n, &top_rows).unwrap();
                let top_w = weight_distribution(&top, 1 << 20).unwrap();
                for block in tuples(2, k * (n - k)) {
                    let mut rows = top_rows.clone();
                    for r in 0..k {
                        for c in 0..n - k {
                            rows[r][k + c] = block[r * (n - k) + c] as u32;
                        }
                    }
                    let c = LinearCode::from_codes(Arc::clone(&field), n, &rows).unwrap();
                    let w = weight_distribution(&c, 1 << 20).unwrap();
                    assert!(dominates(&top_w, &w).unwrap(), "n={n} k={k} rows={rows:?}");
                }
            }
        }
    }

    proptest::proptest! {
        /// The Abel-summation fact behind `dominates`, on raw count
        /// sequences: moving mass to lower weights never lowers the
        /// partial sums, and the resulting polynomial dominates on [0,1].
        #[test]
        fn moving_weight_earlier_raises_the_enumerator(
            base in proptest::collection::vec(0u64..8, 2..9),
            moves in proptest::collection::vec(
                (proptest::prelude::any::<proptest::sample::Index>(),
                 proptest::prelude::any::<proptest::sample::Index>(),
                 1u64..4),
                0..6,
            ),
        ) {
            let n = base.len();
            let mut moved = base.clone();
            for (i, j, amt) in moves {
                let (i, j) = (i.index(n), j.index(n));
                let (dst, src) = (i.min(j), i.max(j));
                if dst == src {
                    continue;
                }
                let t = amt.min(moved[src]);
                moved[src] -= t;
                moved[dst] += t;
            }
            let psum = |c: &[u64]| -> Vec<u64> {
                c.iter().scan(0, |acc, &x| { *acc += x; Some(*acc) }).collect()
            };
            for (sa, sb) in psum(&moved).into_iter().zip(psum(&base)) {
                proptest::prop_assert!(sa >= sb);
            }
            let eval = |c: &[u64], z: f64| -> f64 {
                c.iter().rev().fold(0.0, |acc, &x| acc * z + x as f64) * z + 1.0
            };
            for i in 0..=100 {
                let z = i as f64 / 100.0;
                proptest::prop_assert!(eval(&base, z) <= eval(&moved, z) + 1e-9);
            }
        }
    }

    /// Dominance implies enumerator ordering on [0,1]; when counts differ
    /// the ordering is strict on the interior.
    #[test]
    fn dominance_orders_enumerators_for_real_codes() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(11);
        let field = Arc::new(Field::new(2).unwrap());
        let mut checked = 0;
        while checked < 200 {
            let n = rng.gen_range(2..=6);
            let k = rng.gen_range(1..=n.min(3));
            let mut make = || loop {
                let cand: Vec<Vec<u32>> =
                    (0..k).map(|_| (0..n).map(|_| rng.gen_range(0..2)).collect()).collect();
                if let Ok(c) = LinearCode::from_codes(Arc::clone(&field), n, &cand) {
                    break c;
                }
            };
            let (a, b) = (make(), make());
            let (wa, wb) = (
                weight_distribution(&a, 1 << 20).unwrap(),
                weight_distribution(&b, 1 << 20).unwrap(),
            );
            if !dominates(&wa, &wb).unwrap() {
                continue;
            }
            checked += 1;
            for i in 0..=1000 {
                let z = i as f64 / 1000.0;
                assert!(wb.evaluate(z) <= wa.evaluate(z) + 1e-12);
            }
            if wa.counts() != wb.counts() {
                for i in 1..=9 {
                    let z = i as f64 / 10.0;
                    assert!(wb.evaluate(z) < wa.evaluate(z));
                }
            }
        }
    }
}
