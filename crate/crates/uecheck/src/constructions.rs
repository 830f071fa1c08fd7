//! The extremal code families and their closed-form weight data.
//!
//! Three constructions over GF(q):
//!
//! * `build_c`: `[I_k | 0]` — support of size k, meets the general bound
//!   with equality for every p.
//! * `build_d`: `[I_k | v-row-then-zeros]` — full support, meets the
//!   full-support bound with equality for every p.
//! * `build_e`: `[I_k | v^t | 0]` — minimum distance 2, meets the
//!   enumerator bound f(z) with equality for every z; the MacWilliams dual
//!   of the D family.
//!
//! Closed-form weight distributions are independent of the particular
//! full-support vector v; the builders still take an explicit v so that
//! equality-characterization checks can range over all of them.

use std::sync::Arc;

use thiserror::Error;

use crate::field::{Field, FieldError, Symbol};
use crate::weights::{WeightDistribution, WeightError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("invalid parameters: {0}")]
    ParameterError(String),
    #[error("vector has a zero entry at position {0}")]
    NotFullSupport(usize),
    #[error("count formula produced a non-integer value")]
    NonIntegerResult,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Weight(#[from] WeightError),
}

/// A vector over GF(q) without zero in any position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullSupportVector {
    field: Arc<Field>,
    symbols: Vec<Symbol>,
}

impl FullSupportVector {
    pub fn new(field: Arc<Field>, symbols: Vec<Symbol>) -> Result<Self, ConstructionError> {
        for (i, &s) in symbols.iter().enumerate() {
            if !field.contains(s) {
                return Err(FieldError::InvalidSymbol { code: s.code() as u32, q: field.q() }.into());
            }
            if s.is_zero() {
                return Err(ConstructionError::NotFullSupport(i));
            }
        }
        Ok(FullSupportVector { field, symbols })
    }

    pub fn from_codes(field: Arc<Field>, codes: &[u32]) -> Result<Self, ConstructionError> {
        let symbols = codes.iter().map(|&c| field.symbol(c)).collect::<Result<_, _>>()?;
        Self::new(field, symbols)
    }

    /// The all-ones vector, the default choice of v.
    pub fn ones(field: Arc<Field>, len: usize) -> Self {
        FullSupportVector { field, symbols: vec![Symbol::ONE; len] }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    /// All (q-1)^len full-support vectors of a given length, lexicographic.
    pub fn all(field: &Arc<Field>, len: usize) -> impl Iterator<Item = FullSupportVector> + '_ {
        crate::util::tuples(field.q() - 1, len).map(move |t| FullSupportVector {
            field: Arc::clone(field),
            symbols: t.iter().map(|&x| Symbol(x + 1)).collect(),
        })
    }
}

use crate::code::{CodeError, LinearCode};

fn identity_rows(n: usize, k: usize) -> Vec<Vec<Symbol>> {
    let mut rows = vec![vec![Symbol::ZERO; n]; k];
    for (r, row) in rows.iter_mut().enumerate() {
        row[r] = Symbol::ONE;
    }
    rows
}

fn finish(field: &Arc<Field>, n: usize, rows: Vec<Vec<Symbol>>) -> Result<LinearCode, ConstructionError> {
    crate::code::GeneratorMatrix::new(Arc::clone(field), n, rows)
        .map(LinearCode::new)
        .map_err(|e| match e {
            CodeError::Field(fe) => ConstructionError::Field(fe),
            other => ConstructionError::ParameterError(other.to_string()),
        })
}

/// The code generated by `[I_k | 0]`: support exactly the first k positions.
pub fn build_c(field: &Arc<Field>, n: usize, k: usize) -> Result<LinearCode, ConstructionError> {
    if k < 1 || k > n {
        return Err(ConstructionError::ParameterError(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    finish(field, n, identity_rows(n, k))
}

/// The full-support code generated by `[I_k | M]` where the first row of M
/// is v and the remaining rows are zero. Requires `|v| = n - k >= 1`.
pub fn build_d(field: &Arc<Field>, n: usize, k: usize, v: &FullSupportVector) -> Result<LinearCode, ConstructionError> {
    if k < 1 || k >= n {
        return Err(ConstructionError::ParameterError(format!(
            "need 1 <= k < n, got n = {n}, k = {k}"
        )));
    }
    if v.len() != n - k {
        return Err(ConstructionError::ParameterError(format!(
            "v has length {}, expected n - k = {}",
            v.len(),
            n - k
        )));
    }
    if v.field().as_ref() != field.as_ref() {
        return Err(ConstructionError::ParameterError("v belongs to a different field".into()));
    }
    let mut rows = identity_rows(n, k);
    rows[0][k..].copy_from_slice(v.symbols());
    finish(field, n, rows)
}

/// The minimum-distance-2 code generated by `[I_k | v^t | 0]`. Requires
/// `|v| = k` and `n >= k + 1`.
pub fn build_e(field: &Arc<Field>, n: usize, k: usize, v: &FullSupportVector) -> Result<LinearCode, ConstructionError> {
    if k < 1 || n < k + 1 {
        return Err(ConstructionError::ParameterError(format!(
            "need 1 <= k <= n - 1, got n = {n}, k = {k}"
        )));
    }
    if v.len() != k {
        return Err(ConstructionError::ParameterError(format!(
            "v has length {}, expected k = {}",
            v.len(),
            k
        )));
    }
    if v.field().as_ref() != field.as_ref() {
        return Err(ConstructionError::ParameterError("v belongs to a different field".into()));
    }
    let mut rows = identity_rows(n, k);
    for (r, row) in rows.iter_mut().enumerate() {
        row[k] = v.symbols()[r];
    }
    finish(field, n, rows)
}

fn check_pow(q: u32, k: usize) -> Result<u128, ConstructionError> {
    crate::util::checked_pow_u128(q as u64, k as u32)
        .filter(|&t| t <= u64::MAX as u128)
        .ok_or_else(|| ConstructionError::ParameterError(format!("q^k = {q}^{k} overflows")))
}

/// Closed-form weight distribution of the D family: the coefficients of
/// (1 + (q-1)z)^(k-1) (1 + (q-1) z^(n-k+1)), independent of v.
pub fn d_weight_distribution(n: usize, k: usize, q: u32) -> Result<WeightDistribution, ConstructionError> {
    if q < 2 || k < 1 || k >= n {
        return Err(ConstructionError::ParameterError(format!(
            "need q >= 2 and 1 <= k < n, got q = {q}, n = {n}, k = {k}"
        )));
    }
    check_pow(q, k)?;
    let qm1 = (q - 1) as u128;
    // (1 + (q-1)z)^(k-1)
    let mut poly = vec![0u128; n + 1];
    for i in 0..k {
        poly[i] = crate::util::binom_u128((k - 1) as u64, i as u64) * qm1.pow(i as u32);
    }
    // multiply by (1 + (q-1) z^(n-k+1))
    let shift = n - k + 1;
    let mut counts = poly.clone();
    for i in 0..k {
        counts[i + shift] += qm1 * poly[i];
    }
    let counts: Vec<u64> = counts.into_iter().map(|c| c as u64).collect();
    Ok(WeightDistribution::from_counts(q, n, k, counts)?)
}

fn e_count(k: usize, q: u32, i: usize) -> Result<u64, ConstructionError> {
    // (1/q) C(k+1, i) { (q-1)^i + (q-1)(-1)^i }
    let qm1 = (q - 1) as i128;
    let sign: i128 = if i % 2 == 0 { 1 } else { -1 };
    let num = crate::util::binom_u128((k + 1) as u64, i as u64) as i128 * (qm1.pow(i as u32) + sign * qm1);
    if num < 0 || num % q as i128 != 0 {
        return Err(ConstructionError::NonIntegerResult);
    }
    Ok((num / q as i128) as u64)
}

/// Closed-form weight distribution of the E family:
/// A_i = (1/q) C(k+1, i) { (q-1)^i + (q-1)(-1)^i } for i <= k + 1, zero
/// above, independent of v. Always integral for legal parameters.
pub fn e_weight_distribution(n: usize, k: usize, q: u32) -> Result<WeightDistribution, ConstructionError> {
    if q < 2 || k < 1 || n < k + 1 {
        return Err(ConstructionError::ParameterError(format!(
            "need q >= 2 and 1 <= k <= n - 1, got q = {q}, n = {n}, k = {k}"
        )));
    }
    check_pow(q, k)?;
    let mut counts = vec![0u64; n + 1];
    for (i, slot) in counts.iter_mut().enumerate().take(k + 2) {
        *slot = e_count(k, q, i)?;
    }
    Ok(WeightDistribution::from_counts(q, n, k, counts)?)
}

/// Closed form for the cumulative count sum_{i=2}^{j} A_i of the E family:
/// sum_{i=1}^{j-1} C(k,i)(q-1)^i + (1/q) C(k,j) { (q-1)^j + (-1)^j (q-1) }.
pub fn e_partial_sum(n: usize, k: usize, q: u32, j: usize) -> Result<u64, ConstructionError> {
    if q < 2 || k < 1 || n < k + 1 {
        return Err(ConstructionError::ParameterError(format!(
            "need q >= 2 and 1 <= k <= n - 1, got q = {q}, n = {n}, k = {k}"
        )));
    }
    if !(2..=n).contains(&j) {
        return Err(ConstructionError::ParameterError(format!("need 2 <= j <= n, got j = {j}")));
    }
    check_pow(q, k)?;
    let qm1 = (q - 1) as i128;
    let mut acc: i128 = 0;
    for i in 1..j {
        acc += crate::util::binom_u128(k as u64, i as u64) as i128 * qm1.pow(i as u32);
    }
    let sign: i128 = if j % 2 == 0 { 1 } else { -1 };
    let tail = crate::util::binom_u128(k as u64, j as u64) as i128 * (qm1.pow(j as u32) + sign * qm1);
    if tail % q as i128 != 0 {
        return Err(ConstructionError::NonIntegerResult);
    }
    acc += tail / q as i128;
    if acc < 0 {
        return Err(ConstructionError::NonIntegerResult);
    }
    Ok(acc as u64)
}

/// Number of length-j vectors with every entry nonzero satisfying
/// x_1 t_1 + ... + x_j t_j = 0, for nonzero coefficients t_i. The count is
/// (1/q) { (q-1)^j + (-1)^j (q-1) }, independent of t (substituting
/// y_i = x_i t_i maps the solution set bijectively onto the t = all-ones
/// case). `t` is still validated: all entries nonzero, length j.
pub fn rank1_solution_count(q: u32, j: usize, t: &[Symbol]) -> Result<u64, ConstructionError> {
    if q < 2 || j < 1 {
        return Err(ConstructionError::ParameterError(format!(
            "need q >= 2 and j >= 1, got q = {q}, j = {j}"
        )));
    }
    if t.len() != j {
        return Err(ConstructionError::ParameterError(format!(
            "t has length {}, expected j = {j}",
            t.len()
        )));
    }
    for (i, &s) in t.iter().enumerate() {
        if s.is_zero() {
            return Err(ConstructionError::NotFullSupport(i));
        }
        if s.code() as u32 >= q {
            return Err(FieldError::InvalidSymbol { code: s.code() as u32, q }.into());
        }
    }
    let qm1 = (q - 1) as i128;
    let sign: i128 = if j % 2 == 0 { 1 } else { -1 };
    let num = qm1.pow(j as u32) + sign * qm1;
    if num % q as i128 != 0 {
        return Err(ConstructionError::NonIntegerResult);
    }
    Ok((num / q as i128) as u64)
}
