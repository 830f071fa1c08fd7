//! Representation and structural analysis of [n,k;q] linear codes:
//! systematic form, dual, support, minimum distance, codeword enumeration,
//! and monomial equivalence at tiny parameters.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use itertools::Itertools;
use thiserror::Error;

use crate::field::{Field, FieldError, Symbol};
use crate::util::{checked_pow_u128, tuples};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CodeError {
    #[error("generator matrix has rank below its row count")]
    RankDeficient,
    #[error("row {row} has length {len}, expected {expected}")]
    RowLength { row: usize, len: usize, expected: usize },
    #[error("enumeration requires {required} steps, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A full-rank k×n matrix over GF(q).
#[derive(Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    field: Arc<Field>,
    n: usize,
    rows: Vec<Vec<Symbol>>,
}

impl fmt::Debug for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GeneratorMatrix[{},{};{}]{:?}", self.n, self.k(), self.field.q(), self.row_codes())
    }
}

impl GeneratorMatrix {
    /// Builds a generator matrix, checking row lengths, symbol ranges, and
    /// full rank. `k = rows.len()` may be zero (the zero code of length n).
    pub fn new(field: Arc<Field>, n: usize, rows: Vec<Vec<Symbol>>) -> Result<Self, CodeError> {
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(CodeError::RowLength { row: i, len: row.len(), expected: n });
            }
            for &s in row {
                if !field.contains(s) {
                    return Err(FieldError::InvalidSymbol { code: s.code() as u32, q: field.q() }.into());
                }
            }
        }
        let k = rows.len();
        let (_, pivots) = rref(&field, rows.clone());
        if pivots.len() != k {
            return Err(CodeError::RankDeficient);
        }
        Ok(GeneratorMatrix { field, n, rows })
    }

    /// Convenience constructor from raw integer symbol codes.
    pub fn from_codes(field: Arc<Field>, n: usize, rows: &[Vec<u32>]) -> Result<Self, CodeError> {
        let mut sym_rows = Vec::with_capacity(rows.len());
        for row in rows {
            let mut r = Vec::with_capacity(row.len());
            for &c in row {
                r.push(field.symbol(c)?);
            }
            sym_rows.push(r);
        }
        Self::new(field, n, sym_rows)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Symbol>] {
        &self.rows
    }

    pub fn row_codes(&self) -> Vec<Vec<u8>> {
        self.rows.iter().map(|r| r.iter().map(|s| s.code()).collect()).collect()
    }

    /// xG for a message x of length k.
    pub fn encode(&self, message: &[Symbol]) -> Vec<Symbol> {
        debug_assert_eq!(message.len(), self.k());
        let mut word = vec![Symbol::ZERO; self.n];
        for (&x, row) in message.iter().zip(&self.rows) {
            if !x.is_zero() {
                self.field.row_axpy(&mut word, x, row);
            }
        }
        word
    }

    /// Canonical basis of the row space (reduced echelon form), usable for
    /// row-space equality checks.
    pub fn canonical_rows(&self) -> Vec<Vec<u8>> {
        let (r, _) = rref(&self.field, self.rows.clone());
        r.iter().map(|row| row.iter().map(|s| s.code()).collect()).collect()
    }

    /// Row-reduces into `[I_k | Q]` form, pulling pivot columns to the front.
    ///
    /// Returns the systematic generator together with the column permutation
    /// `perm`, where the systematic column `j` is the input column `perm[j]`.
    /// The permuted code is monomially equivalent to the input; when the
    /// pivots already sit in the first k positions the permutation is the
    /// identity and only row reduction is applied.
    pub fn systematic_form(&self) -> (GeneratorMatrix, Vec<usize>) {
        let (reduced, pivots) = rref(&self.field, self.rows.clone());
        let k = self.k();
        debug_assert_eq!(pivots.len(), k);
        let mut perm: Vec<usize> = pivots.clone();
        perm.extend((0..self.n).filter(|c| !pivots.contains(c)));
        let rows: Vec<Vec<Symbol>> = reduced
            .iter()
            .map(|row| perm.iter().map(|&c| row[c]).collect())
            .collect();
        let sys = GeneratorMatrix { field: Arc::clone(&self.field), n: self.n, rows };
        (sys, perm)
    }
}

/// Reduced row echelon form over GF(q). Returns the nonzero rows and the
/// pivot columns (so `pivots.len()` is the rank).
pub(crate) fn rref(field: &Field, mut rows: Vec<Vec<Symbol>>) -> (Vec<Vec<Symbol>>, Vec<usize>) {
    let n = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = field.inv(rows[r][c]).expect("pivot is nonzero");
        field.row_scale(&mut rows[r], inv);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = field.neg(row[c]);
                field.row_axpy(row, factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    (rows, pivots)
}

/// One codeword: its symbols and Hamming weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    symbols: Vec<Symbol>,
    weight: usize,
}

impl Codeword {
    pub(crate) fn from_symbols(symbols: Vec<Symbol>) -> Self {
        let weight = hamming_weight(&symbols);
        Codeword { symbols, weight }
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn weight(&self) -> usize {
        self.weight
    }
}

pub(crate) fn hamming_weight(symbols: &[Symbol]) -> usize {
    symbols.iter().filter(|s| !s.is_zero()).count()
}

/// An [n,k;q] linear code with cached structural data.
///
/// Immutable after construction; the caches fill on first use and are safe
/// for concurrent reads.
#[derive(Debug, Clone)]
pub struct LinearCode {
    gen: GeneratorMatrix,
    support: BTreeSet<usize>,
    min_dist: OnceLock<usize>,
    dual_gen: OnceLock<GeneratorMatrix>,
}

impl PartialEq for LinearCode {
    fn eq(&self, other: &Self) -> bool {
        self.gen == other.gen
    }
}

impl LinearCode {
    pub fn new(gen: GeneratorMatrix) -> Self {
        let mut support = BTreeSet::new();
        for row in gen.rows() {
            for (i, s) in row.iter().enumerate() {
                if !s.is_zero() {
                    support.insert(i);
                }
            }
        }
        LinearCode { gen, support, min_dist: OnceLock::new(), dual_gen: OnceLock::new() }
    }

    pub fn from_codes(field: Arc<Field>, n: usize, rows: &[Vec<u32>]) -> Result<Self, CodeError> {
        Ok(Self::new(GeneratorMatrix::from_codes(field, n, rows)?))
    }

    pub fn generator(&self) -> &GeneratorMatrix {
        &self.gen
    }

    pub fn field(&self) -> &Arc<Field> {
        self.gen.field()
    }

    pub fn n(&self) -> usize {
        self.gen.n()
    }

    pub fn k(&self) -> usize {
        self.gen.k()
    }

    pub fn q(&self) -> u32 {
        self.gen.field().q()
    }

    /// Positions (0-based) where some codeword is nonzero; for a linear code
    /// this is the union of the generator row supports.
    pub fn support(&self) -> &BTreeSet<usize> {
        &self.support
    }

    pub fn has_full_support(&self) -> bool {
        self.support.len() == self.n()
    }

    /// Number of codewords q^k, if it fits a u128.
    pub fn codeword_count(&self) -> Option<u128> {
        checked_pow_u128(self.q() as u64, self.k() as u32)
    }

    fn check_enumeration_budget(&self, budget: u64) -> Result<u128, CodeError> {
        let count = self
            .codeword_count()
            .filter(|&c| c <= budget as u128)
            .ok_or(CodeError::BudgetExceeded {
                required: self.codeword_count().unwrap_or(u128::MAX),
                budget,
            })?;
        Ok(count)
    }

    /// All q^k codewords in lexicographic message order (first message
    /// symbol most significant), each exactly once.
    pub fn codewords(&self, budget: u64) -> Result<CodewordIter<'_>, CodeError> {
        self.check_enumeration_budget(budget)?;
        Ok(CodewordIter::new(self))
    }

    /// Minimum weight over all nonzero codewords, by exhaustive message
    /// enumeration. The zero code (k = 0) reports the sentinel n + 1,
    /// meaning "no nonzero codeword".
    pub fn min_distance(&self, budget: u64) -> Result<usize, CodeError> {
        if let Some(&d) = self.min_dist.get() {
            return Ok(d);
        }
        self.check_enumeration_budget(budget)?;
        let d = self
            .codewords(budget)?
            .filter(|w| w.weight() > 0)
            .map(|w| w.weight())
            .min()
            .unwrap_or(self.n() + 1);
        Ok(*self.min_dist.get_or_init(|| d))
    }

    /// Generator of the orthogonal complement, cached. The dual of the full
    /// space is the zero code (an empty generator).
    pub fn dual_generator(&self) -> &GeneratorMatrix {
        self.dual_gen.get_or_init(|| {
            let field = self.field();
            let (sys, perm) = self.gen.systematic_form();
            let (n, k) = (self.n(), self.k());
            let mut rows = vec![vec![Symbol::ZERO; n]; n - k];
            for (r, row) in rows.iter_mut().enumerate() {
                for j in 0..k {
                    row[perm[j]] = field.neg(sys.rows()[j][k + r]);
                }
                row[perm[k + r]] = Symbol::ONE;
            }
            GeneratorMatrix::new(Arc::clone(field), n, rows)
                .expect("dual construction yields full rank")
        })
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::new(self.dual_generator().clone())
    }

    /// Membership test by reduction against the canonical generator basis.
    pub fn contains_word(&self, word: &[Symbol]) -> bool {
        if word.len() != self.n() {
            return false;
        }
        let field = self.field();
        let (basis, pivots) = rref(field, self.gen.rows().to_vec());
        let mut w = word.to_vec();
        for (row, &p) in basis.iter().zip(&pivots) {
            if !w[p].is_zero() {
                let factor = field.neg(w[p]);
                field.row_axpy(&mut w, factor, row);
            }
        }
        w.iter().all(|s| s.is_zero())
    }
}

/// Depth-first codeword enumeration with cached prefix sums, so advancing
/// one message costs O(n) amortized rather than O(kn).
pub struct CodewordIter<'a> {
    code: &'a LinearCode,
    digits: Vec<u8>,
    /// prefix[i] = sum of digits[j] * row_j for j < i; prefix[k] is the word.
    prefix: Vec<Vec<Symbol>>,
    started: bool,
    done: bool,
}

impl<'a> CodewordIter<'a> {
    fn new(code: &'a LinearCode) -> Self {
        let k = code.k();
        let n = code.n();
        CodewordIter {
            code,
            digits: vec![0; k],
            prefix: vec![vec![Symbol::ZERO; n]; k + 1],
            started: false,
            done: false,
        }
    }

    fn refresh_from(&mut self, level: usize) {
        let field = self.code.field();
        let rows = self.code.gen.rows();
        for j in level..self.code.k() {
            let mut next = self.prefix[j].clone();
            let x = Symbol(self.digits[j]);
            if !x.is_zero() {
                field.row_axpy(&mut next, x, &rows[j]);
            }
            self.prefix[j + 1] = next;
        }
    }
}

impl Iterator for CodewordIter<'_> {
    type Item = Codeword;

    fn next(&mut self) -> Option<Codeword> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Codeword::from_symbols(self.prefix[self.code.k()].clone()));
        }
        let q = self.code.q();
        for i in (0..self.digits.len()).rev() {
            if (self.digits[i] as u32) + 1 < q {
                self.digits[i] += 1;
                for d in &mut self.digits[i + 1..] {
                    *d = 0;
                }
                self.refresh_from(i);
                return Some(Codeword::from_symbols(self.prefix[self.code.k()].clone()));
            }
        }
        self.done = true;
        None
    }
}

/// True when some column permutation plus nonzero column scalings maps the
/// row space of `a` onto the row space of `b`. Brute force over all
/// `n! * (q-1)^n` transforms; intended for tiny parameters only.
pub fn monomially_equivalent(a: &LinearCode, b: &LinearCode, budget: u64) -> Result<bool, CodeError> {
    equivalent_under(a, b, true, budget)
}

/// Monomial equivalence restricted to column permutations (no scalings).
pub fn permutation_equivalent(a: &LinearCode, b: &LinearCode, budget: u64) -> Result<bool, CodeError> {
    equivalent_under(a, b, false, budget)
}

fn equivalent_under(a: &LinearCode, b: &LinearCode, allow_scaling: bool, budget: u64) -> Result<bool, CodeError> {
    if a.n() != b.n() || a.k() != b.k() || a.field() != b.field() {
        return Ok(false);
    }
    let n = a.n();
    let q = a.field().q();
    let scaling_base = if allow_scaling { q - 1 } else { 1 };
    let mut cost: u128 = 1;
    for i in 1..=n {
        cost = cost
            .checked_mul(i as u128)
            .and_then(|c| c.checked_mul(scaling_base as u128))
            .ok_or(CodeError::BudgetExceeded { required: u128::MAX, budget })?;
    }
    if cost > budget as u128 {
        return Err(CodeError::BudgetExceeded { required: cost, budget });
    }

    // cheap reject: equivalence preserves the weight distribution
    if let (Ok(wa), Ok(wb)) = (weight_tally(a, budget), weight_tally(b, budget)) {
        if wa != wb {
            return Ok(false);
        }
    }

    let field = a.field();
    let target = b.generator().canonical_rows();
    let a_rows = a.generator().rows();
    for perm in (0..n).permutations(n) {
        for scaling in tuples(scaling_base, n) {
            let transformed: Vec<Vec<Symbol>> = a_rows
                .iter()
                .map(|row| {
                    perm.iter()
                        .zip(&scaling)
                        .map(|(&c, &s)| field.mul(Symbol(s + 1), row[c]))
                        .collect()
                })
                .collect();
            let (reduced, _) = rref(field, transformed);
            let reduced_codes: Vec<Vec<u8>> =
                reduced.iter().map(|r| r.iter().map(|s| s.code()).collect()).collect();
            if reduced_codes == target {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn weight_tally(c: &LinearCode, budget: u64) -> Result<Vec<u64>, CodeError> {
    let mut tally = vec![0u64; c.n() + 1];
    for w in c.codewords(budget)? {
        tally[w.weight()] += 1;
    }
    Ok(tally)
}
