//! Scalar formulas for undetected-error analysis on the q-ary symmetric
//! channel: P_ue itself, the general upper bound, the sharper bound for
//! codes of full support, the improvement between them, and the pair of
//! enumerator bounds f and g for minimum-distance-2 codes together with
//! the factored form of their difference.

use thiserror::Error;

use crate::util::binom_f64;
use crate::weights::WeightDistribution;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BoundsError {
    #[error("p = {p} outside [0, (q-1)/q] for q = {q}")]
    ProbabilityOutOfDomain { p: f64, q: u32 },
    #[error("z = {0} outside [0, 1]")]
    ArgumentOutOfDomain(f64),
    #[error("invalid parameters: {0}")]
    ParameterError(String),
    #[error("channel alphabet q = {channel} does not match code alphabet q = {code}")]
    AlphabetMismatch { channel: u32, code: u32 },
}

/// A symbol error probability p for the q-ary symmetric channel, restricted
/// to the meaningful domain [0, (q-1)/q].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParameter {
    p: f64,
    q: u32,
}

impl ChannelParameter {
    pub fn new(p: f64, q: u32) -> Result<Self, BoundsError> {
        if q < 2 {
            return Err(BoundsError::ParameterError(format!("q = {q} must be at least 2")));
        }
        if !p.is_finite() || p < 0.0 || p > Self::max_p(q) {
            return Err(BoundsError::ProbabilityOutOfDomain { p, q });
        }
        Ok(ChannelParameter { p, q })
    }

    pub fn p(self) -> f64 {
        self.p
    }

    pub fn q(self) -> u32 {
        self.q
    }

    /// Upper end of the domain, (q-1)/q.
    pub fn max_p(q: u32) -> f64 {
        (q - 1) as f64 / q as f64
    }

    /// The enumerator argument z = p / ((q-1)(1-p)). At the domain endpoint
    /// p = (q-1)/q the value is exactly 1, substituted symbolically so the
    /// division never amplifies rounding there.
    pub fn enumerator_argument(self) -> f64 {
        if self.p == Self::max_p(self.q) {
            1.0
        } else {
            self.p / ((self.q - 1) as f64 * (1.0 - self.p))
        }
    }
}

/// P_ue(C,p) = (1-p)^n { A_C(p/((q-1)(1-p))) - 1 }.
pub fn p_ue(w: &WeightDistribution, ch: ChannelParameter) -> Result<f64, BoundsError> {
    if w.q() != ch.q() {
        return Err(BoundsError::AlphabetMismatch { channel: ch.q(), code: w.q() });
    }
    let z = ch.enumerator_argument();
    Ok((1.0 - ch.p()).powi(w.n() as i32) * (w.evaluate(z) - 1.0))
}

fn check_nk(n: usize, k: usize) -> Result<(), BoundsError> {
    if k < 1 || k > n {
        return Err(BoundsError::ParameterError(format!("need 1 <= k <= n, got n = {n}, k = {k}")));
    }
    Ok(())
}

/// The upper bound (1-p)^(n-k) - (1-p)^n, valid for every [n,k;q] code and
/// met with equality by the code supported on the first k coordinates.
pub fn general_bound(n: usize, k: usize, q: u32, p: f64) -> Result<f64, BoundsError> {
    check_nk(n, k)?;
    let ch = ChannelParameter::new(p, q)?;
    let r = 1.0 - ch.p();
    Ok(r.powi((n - k) as i32) - r.powi(n as i32))
}

/// The sharper upper bound for codes of full support:
/// (1-p)^(n-k+1) + (q-1)^(k-n) p^(n-k+1) - (1-p)^n.
pub fn full_support_bound(n: usize, k: usize, q: u32, p: f64) -> Result<f64, BoundsError> {
    check_nk(n, k)?;
    let ch = ChannelParameter::new(p, q)?;
    let r = 1.0 - ch.p();
    let scale = ((q - 1) as f64).powi(k as i32 - n as i32);
    Ok(r.powi((n - k + 1) as i32) + scale * ch.p().powi((n - k + 1) as i32) - r.powi(n as i32))
}

/// The gap between the two bounds,
/// p (1-p)^(n-k) { 1 - (p/((q-1)(1-p)))^(n-k) }, which vanishes at both
/// endpoints of the domain and identically when k = n.
pub fn improvement(n: usize, k: usize, q: u32, p: f64) -> Result<f64, BoundsError> {
    check_nk(n, k)?;
    let ch = ChannelParameter::new(p, q)?;
    let r = 1.0 - ch.p();
    let z = ch.enumerator_argument();
    Ok(ch.p() * r.powi((n - k) as i32) * (1.0 - z.powi((n - k) as i32)))
}

fn check_z(z: f64) -> Result<(), BoundsError> {
    if !z.is_finite() || !(0.0..=1.0).contains(&z) {
        return Err(BoundsError::ArgumentOutOfDomain(z));
    }
    Ok(())
}

fn check_q(q: u32) -> Result<(), BoundsError> {
    if q < 2 {
        return Err(BoundsError::ParameterError(format!("q = {q} must be at least 2")));
    }
    Ok(())
}

/// Sharp enumerator bound for [n,k,2;q] codes:
/// f(z) = (1/q) { (1+(q-1)z)^(k+1) + (q-1)(1-z)^(k+1) }.
pub fn f_bound(k: usize, q: u32, z: f64) -> Result<f64, BoundsError> {
    check_q(q)?;
    check_z(z)?;
    let qm1 = (q - 1) as f64;
    Ok(((1.0 + qm1 * z).powi(k as i32 + 1) + qm1 * (1.0 - z).powi(k as i32 + 1)) / q as f64)
}

/// Older enumerator bound for [n,k,2;q] codes, obtained by correcting the
/// weight-1 messages: g(z) = (1+(q-1)z)^k + k(q-1)(z^2 - z).
pub fn g_bound(k: usize, q: u32, z: f64) -> Result<f64, BoundsError> {
    check_q(q)?;
    check_z(z)?;
    let qm1 = (q - 1) as f64;
    Ok((1.0 + qm1 * z).powi(k as i32) + k as f64 * qm1 * (z * z - z))
}

/// Factored form of g - f:
/// ((q-1)/q)(1-z) sum_{j=2}^k C(k,j) ((q-1)^j - (-1)^j) z^j.
/// Identically zero for k <= 1 and for (k,q) = (2,2); strictly positive on
/// (0,1) otherwise.
pub fn g_minus_f_closed(k: usize, q: u32, z: f64) -> Result<f64, BoundsError> {
    check_q(q)?;
    check_z(z)?;
    let qm1 = (q - 1) as f64;
    let mut sum = 0.0;
    let mut zj = z * z;
    for j in 2..=k {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        sum += binom_f64(k as u64, j as u64) * (qm1.powi(j as i32) - sign) * zj;
        zj *= z;
    }
    Ok(qm1 / q as f64 * (1.0 - z) * sum)
}

/// Sampled values of named quantities over a strictly increasing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundCurve {
    grid: Vec<f64>,
    columns: Vec<(String, Vec<f64>)>,
}

impl BoundCurve {
    /// The grid must be strictly increasing; every column must match its
    /// length.
    pub fn new(grid: Vec<f64>, columns: Vec<(String, Vec<f64>)>) -> Result<Self, BoundsError> {
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(BoundsError::ParameterError("grid must be strictly increasing".into()));
        }
        for (name, values) in &columns {
            if values.len() != grid.len() {
                return Err(BoundsError::ParameterError(format!(
                    "column {name} has {} values for {} grid points",
                    values.len(),
                    grid.len()
                )));
            }
        }
        Ok(BoundCurve { grid, columns })
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn columns(&self) -> &[(String, Vec<f64>)] {
        &self.columns
    }
}

/// Uniform grid of `points` values on [0, (q-1)/q], endpoint exact.
pub fn p_grid(q: u32, points: usize) -> Vec<f64> {
    let max = ChannelParameter::max_p(q);
    uniform_grid(points).into_iter().map(|t| t * max).collect()
}

/// Uniform grid of `points` values on [0, 1], endpoints exact.
pub fn z_grid(points: usize) -> Vec<f64> {
    uniform_grid(points)
}

fn uniform_grid(points: usize) -> Vec<f64> {
    assert!(points >= 2, "a grid needs at least two points");
    (0..points).map(|i| i as f64 / (points - 1) as f64).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::LinearCode;
    use crate::field::Field;
    use crate::weights::weight_distribution;
    use std::sync::Arc;

    const TOL: f64 = 1e-12;

    fn wd_of(q: u32, n: usize, rows: &[Vec<u32>]) -> WeightDistribution {
        let c = LinearCode::from_codes(Arc::new(Field::new(q).unwrap()), n, rows).unwrap();
        weight_distribution(&c, 1 << 20).unwrap()
    }

    #[test]
    fn channel_parameter_domain() {
        assert!(ChannelParameter::new(0.0, 2).is_ok());
        assert!(ChannelParameter::new(0.5, 2).is_ok());
        assert!(matches!(
            ChannelParameter::new(0.51, 2),
            Err(BoundsError::ProbabilityOutOfDomain { .. })
        ));
        assert!(matches!(
            ChannelParameter::new(-0.1, 3),
            Err(BoundsError::ProbabilityOutOfDomain { .. })
        ));
        // endpoint maps to z = 1 exactly
        let end = ChannelParameter::new(ChannelParameter::max_p(3), 3).unwrap();
        assert_eq!(end.enumerator_argument(), 1.0);
    }

    #[test]
    fn p_ue_examples() {
        let c32 = wd_of(2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let ch = ChannelParameter::new(0.1, 2).unwrap();
        assert!((p_ue(&c32, ch).unwrap() - 0.171).abs() < TOL);
        assert_eq!(p_ue(&c32, ChannelParameter::new(0.0, 2).unwrap()).unwrap(), 0.0);

        let d = wd_of(2, 3, &[vec![1, 0, 1], vec![0, 1, 0]]);
        assert!((p_ue(&d, ch).unwrap() - 0.091).abs() < TOL);

        assert!(matches!(
            p_ue(&d, ChannelParameter::new(0.1, 3).unwrap()),
            Err(BoundsError::AlphabetMismatch { .. })
        ));
    }

    #[test]
    fn general_bound_examples() {
        assert!((general_bound(3, 2, 2, 0.1).unwrap() - 0.171).abs() < TOL);
        assert_eq!(general_bound(5, 3, 2, 0.0).unwrap(), 0.0);
        assert!((general_bound(3, 3, 2, 0.1).unwrap() - 0.271).abs() < TOL);
        assert!(matches!(general_bound(3, 0, 2, 0.1), Err(BoundsError::ParameterError(_))));
        assert!(matches!(general_bound(3, 4, 2, 0.1), Err(BoundsError::ParameterError(_))));
    }

    #[test]
    fn full_support_bound_examples() {
        assert!((full_support_bound(3, 2, 2, 0.1).unwrap() - 0.091).abs() < TOL);
        assert_eq!(full_support_bound(4, 2, 3, 0.0).unwrap(), 0.0);
        // both routes: closed formula vs P_ue of the extremal code
        let d = wd_of(3, 4, &[vec![1, 0, 1, 1], vec![0, 1, 0, 0]]);
        let ch = ChannelParameter::new(0.2, 3).unwrap();
        let direct = full_support_bound(4, 2, 3, 0.2).unwrap();
        assert!((direct - 0.1044).abs() < TOL);
        assert!((p_ue(&d, ch).unwrap() - direct).abs() < TOL);
    }

    #[test]
    fn improvement_examples_and_identity() {
        assert_eq!(improvement(3, 2, 2, 0.0).unwrap(), 0.0);
        assert!((improvement(3, 2, 2, 0.1).unwrap() - 0.080).abs() < TOL);
        // k = n: the brace vanishes for every p
        for &p in &[0.0, 0.2, 0.5] {
            assert_eq!(improvement(4, 4, 2, p).unwrap(), 0.0);
        }
        for (n, k, q) in [(3usize, 2usize, 2u32), (5, 2, 3), (6, 4, 2), (4, 1, 4), (4, 4, 3)] {
            for p in p_grid(q, 101) {
                let gap = general_bound(n, k, q, p).unwrap() - full_support_bound(n, k, q, p).unwrap();
                assert!(
                    (improvement(n, k, q, p).unwrap() - gap).abs() < TOL,
                    "n={n} k={k} q={q} p={p}"
                );
            }
        }
    }

    #[test]
    fn full_support_bound_below_general_bound() {
        for (n, k, q) in [(5usize, 2usize, 2u32), (6, 3, 3), (4, 2, 4)] {
            let grid = p_grid(q, 101);
            for (i, &p) in grid.iter().enumerate() {
                let fs = full_support_bound(n, k, q, p).unwrap();
                let gb = general_bound(n, k, q, p).unwrap();
                assert!(fs <= gb + TOL);
                let interior = i != 0 && i != grid.len() - 1;
                if interior && k < n {
                    assert!(fs < gb, "expected strict gap at p={p}");
                }
            }
        }
    }

    #[test]
    fn f_and_g_examples() {
        for q in [2u32, 3, 5] {
            for z in z_grid(21) {
                assert!((f_bound(0, q, z).unwrap() - 1.0).abs() < TOL);
                assert!((g_bound(0, q, z).unwrap() - 1.0).abs() < TOL);
                let expect = 1.0 + (q - 1) as f64 * z * z;
                assert!((f_bound(1, q, z).unwrap() - expect).abs() < TOL);
                assert!((g_bound(1, q, z).unwrap() - expect).abs() < TOL);
            }
        }
        for z in z_grid(21) {
            let expect = 1.0 + 3.0 * z * z;
            assert!((f_bound(2, 2, z).unwrap() - expect).abs() < TOL);
            assert!((g_bound(2, 2, z).unwrap() - expect).abs() < TOL);
        }
        assert!((g_bound(2, 2, 0.5).unwrap() - 1.75).abs() < TOL);
        // z = 1: the correction term vanishes, g = q^k
        assert!((g_bound(3, 3, 1.0).unwrap() - 27.0).abs() < TOL);
        assert!(matches!(f_bound(2, 2, 1.5), Err(BoundsError::ArgumentOutOfDomain(_))));
        assert!(matches!(g_bound(2, 1, 0.5), Err(BoundsError::ParameterError(_))));
    }

    #[test]
    fn g_minus_f_closed_form() {
        // identically zero when k <= 1 or (k,q) = (2,2)
        for z in z_grid(101) {
            assert_eq!(g_minus_f_closed(1, 5, z).unwrap(), 0.0);
            assert_eq!(g_minus_f_closed(0, 3, z).unwrap(), 0.0);
            assert_eq!(g_minus_f_closed(2, 2, z).unwrap(), 0.0);
        }
        // matches direct subtraction; frozen spot value at q=3, k=2, z=0.5
        let spot = g_minus_f_closed(2, 3, 0.5).unwrap();
        assert!((spot - 0.25).abs() < TOL);
        for q in [2u32, 3, 4, 5] {
            for k in 0..=6usize {
                // strict 1e-12 absolute at desk scale; proportional above,
                // where the enumerator magnitudes exceed 1
                let tol = if q <= 4 && k <= 4 { TOL } else { TOL * (q as f64).powi(k as i32 + 1) };
                for z in z_grid(101) {
                    let direct = g_bound(k, q, z).unwrap() - f_bound(k, q, z).unwrap();
                    assert!(
                        (g_minus_f_closed(k, q, z).unwrap() - direct).abs() < tol,
                        "k={k} q={q} z={z}"
                    );
                }
            }
        }
    }

    #[test]
    fn g_strictly_above_f_in_other_cases() {
        for q in [2u32, 3, 4, 5] {
            for k in 2..=6usize {
                if k == 2 && q == 2 {
                    continue;
                }
                let grid = z_grid(101);
                for &z in &grid[1..grid.len() - 1] {
                    assert!(
                        g_minus_f_closed(k, q, z).unwrap() > 0.0,
                        "expected g > f at k={k} q={q} z={z}"
                    );
                }
            }
        }
    }

    #[test]
    fn grids_hit_endpoints_exactly() {
        let g = p_grid(3, 101);
        assert_eq!(g.len(), 101);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[100], ChannelParameter::max_p(3));
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        let z = z_grid(11);
        assert_eq!((z[0], z[10]), (0.0, 1.0));
    }

    #[test]
    fn curve_validates_grid() {
        assert!(BoundCurve::new(vec![0.0, 0.5, 0.5], vec![]).is_err());
        assert!(BoundCurve::new(vec![0.0, 0.5], vec![("x".into(), vec![1.0])]).is_err());
        assert!(BoundCurve::new(vec![0.0, 0.5], vec![("x".into(), vec![1.0, 2.0])]).is_ok());
    }
}
