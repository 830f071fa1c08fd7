//! Table-driven arithmetic in the finite field GF(q), q = p^m ≤ 64.
//!
//! Elements are integer codes in `[0, q)`; the base-p digits of a code are
//! the coefficients of the element viewed as a polynomial over GF(p), digit
//! i being the coefficient of x^i. Code 0 is the additive identity and
//! code 1 the multiplicative identity. The reduction modulus is the
//! lexicographically smallest monic irreducible polynomial of degree m
//! (coefficient tuples compared constant term first), so serialized symbol
//! codes mean the same field elements on every run.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("q = {0} is not a prime power in 2..=64")]
    NotAPrimePower(u32),
    #[error("division by zero in GF({0})")]
    DivisionByZero(u32),
    #[error("symbol code {code} out of range for GF({q})")]
    InvalidSymbol { code: u32, q: u32 },
}

/// An element of some GF(q), stored as its integer code.
///
/// A `Symbol` does not know which field it belongs to; all arithmetic goes
/// through the owning [`Field`], which validates codes at its boundary.
#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub(crate) u8);

impl Symbol {
    pub const ZERO: Symbol = Symbol(0);
    pub const ONE: Symbol = Symbol(1);

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// GF(q) with precomputed operation tables.
///
/// Immutable after construction; safe to share across threads.
#[derive(Clone)]
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    /// Modulus coefficients, constant term first, length m + 1, monic.
    modulus: Vec<u8>,
    add_t: Vec<u8>,
    mul_t: Vec<u8>,
    neg_t: Vec<u8>,
    inv_t: Vec<u8>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("q", &self.q)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl Field {
    /// Builds GF(q) for a prime power q in `2..=64`.
    pub fn new(q: u32) -> Result<Field, FieldError> {
        if !(2..=64).contains(&q) {
            return Err(FieldError::NotAPrimePower(q));
        }
        let p = (2..=q).find(|d| q % d == 0).expect("q >= 2 has a divisor");
        if !is_prime(p) {
            // smallest divisor > 1 is always prime; kept for clarity
            return Err(FieldError::NotAPrimePower(q));
        }
        let mut m = 0u32;
        let mut rest = q;
        while rest % p == 0 {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(FieldError::NotAPrimePower(q));
        }

        let modulus = smallest_irreducible(p, m);
        let mut field = Field {
            p,
            m,
            q,
            modulus,
            add_t: vec![0; (q * q) as usize],
            mul_t: vec![0; (q * q) as usize],
            neg_t: vec![0; q as usize],
            inv_t: vec![0; q as usize],
        };
        field.build_tables();
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Modulus coefficients, constant term first (length m + 1, monic).
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    /// Validated symbol constructor.
    pub fn symbol(&self, code: u32) -> Result<Symbol, FieldError> {
        if code < self.q {
            Ok(Symbol(code as u8))
        } else {
            Err(FieldError::InvalidSymbol { code, q: self.q })
        }
    }

    pub fn contains(&self, s: Symbol) -> bool {
        (s.0 as u32) < self.q
    }

    pub fn add(&self, a: Symbol, b: Symbol) -> Symbol {
        Symbol(self.add_t[(a.0 as u32 * self.q + b.0 as u32) as usize])
    }

    pub fn sub(&self, a: Symbol, b: Symbol) -> Symbol {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Symbol, b: Symbol) -> Symbol {
        Symbol(self.mul_t[(a.0 as u32 * self.q + b.0 as u32) as usize])
    }

    pub fn neg(&self, a: Symbol) -> Symbol {
        Symbol(self.neg_t[a.0 as usize])
    }

    pub fn inv(&self, a: Symbol) -> Result<Symbol, FieldError> {
        if a.is_zero() {
            Err(FieldError::DivisionByZero(self.q))
        } else {
            Ok(Symbol(self.inv_t[a.0 as usize]))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Symbol> {
        (0..self.q).map(|c| Symbol(c as u8))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Symbol> {
        (1..self.q).map(|c| Symbol(c as u8))
    }

    /// Standard inner product of two symbol slices of equal length.
    pub fn dot(&self, a: &[Symbol], b: &[Symbol]) -> Symbol {
        debug_assert_eq!(a.len(), b.len());
        let mut acc = Symbol::ZERO;
        for (&x, &y) in a.iter().zip(b) {
            acc = self.add(acc, self.mul(x, y));
        }
        acc
    }

    /// target += s * src, elementwise.
    pub(crate) fn row_axpy(&self, target: &mut [Symbol], s: Symbol, src: &[Symbol]) {
        for (t, &x) in target.iter_mut().zip(src) {
            *t = self.add(*t, self.mul(s, x));
        }
    }

    pub(crate) fn row_scale(&self, row: &mut [Symbol], s: Symbol) {
        for t in row.iter_mut() {
            *t = self.mul(*t, s);
        }
    }

    fn build_tables(&mut self) {
        let q = self.q;
        for a in 0..q {
            let da = self.digits(a);
            // negation: digit-wise p-complement
            let nd: Vec<u8> = da.iter().map(|&c| ((self.p - c as u32) % self.p) as u8).collect();
            self.neg_t[a as usize] = self.encode(&nd) as u8;
            for b in 0..q {
                let db = self.digits(b);
                let sum: Vec<u8> = da
                    .iter()
                    .zip(&db)
                    .map(|(&x, &y)| ((x as u32 + y as u32) % self.p) as u8)
                    .collect();
                self.add_t[(a * q + b) as usize] = self.encode(&sum) as u8;
                let prod = poly_mul_mod(&da, &db, &self.modulus, self.p);
                self.mul_t[(a * q + b) as usize] = self.encode(&prod) as u8;
            }
        }
        for a in 1..q {
            let b = (1..q)
                .find(|&b| self.mul_t[(a * q + b) as usize] == 1)
                .expect("every nonzero element has an inverse");
            self.inv_t[a as usize] = b as u8;
        }
    }

    /// Base-p digits of an element code, length m, coefficient of x^i at i.
    fn digits(&self, code: u32) -> Vec<u8> {
        let mut d = vec![0u8; self.m as usize];
        let mut c = code;
        for slot in d.iter_mut() {
            *slot = (c % self.p) as u8;
            c /= self.p;
        }
        d
    }

    fn encode(&self, digits: &[u8]) -> u32 {
        let mut code = 0u32;
        for &d in digits.iter().rev() {
            code = code * self.p + d as u32;
        }
        code
    }
}

fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Coefficients low-degree first; trailing zeros trimmed.
fn poly_trim(mut a: Vec<u8>) -> Vec<u8> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_mul(a: &[u8], b: &[u8], p: u32) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u32 * y as u32) % p;
        }
    }
    poly_trim(out.into_iter().map(|c| c as u8).collect())
}

/// Remainder of a modulo the monic polynomial m, coefficients mod p.
fn poly_rem(a: &[u8], m: &[u8], p: u32) -> Vec<u8> {
    let mut r: Vec<u32> = a.iter().map(|&c| c as u32).collect();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            // m is monic, so the quotient digit is exactly `lead`
            for (i, &mc) in m.iter().enumerate() {
                let idx = shift + i;
                let sub = (lead * mc as u32) % p;
                r[idx] = (r[idx] + p - sub) % p;
            }
        }
        r.pop();
    }
    poly_trim(r.into_iter().map(|c| c as u8).collect())
}

fn poly_mul_mod(a: &[u8], b: &[u8], m: &[u8], p: u32) -> Vec<u8> {
    let prod = poly_mul(&poly_trim(a.to_vec()), &poly_trim(b.to_vec()), p);
    poly_rem(&prod, m, p)
}

/// True when f (monic, degree ≥ 1, constant-first) has no monic divisor of
/// degree in `1..=deg(f)/2`.
fn is_irreducible(f: &[u8], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // all monic polynomials of degree d: p^d choices of lower coefficients
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut t = idx;
            for _ in 0..d {
                g.push((t % p as u64) as u8);
                t /= p as u64;
            }
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The monic irreducible of degree m over GF(p) with the lexicographically
/// smallest coefficient tuple (constant term compared first).
fn smallest_irreducible(p: u32, m: u32) -> Vec<u8> {
    let mut best: Option<Vec<u8>> = None;
    let count = (p as u64).pow(m);
    for idx in 0..count {
        let mut f = Vec::with_capacity(m as usize + 1);
        let mut t = idx;
        for _ in 0..m {
            f.push((t % p as u64) as u8);
            t /= p as u64;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            match &best {
                Some(b) if *b <= f => {}
                _ => best = Some(f),
            }
        }
    }
    best.expect("an irreducible polynomial of every degree exists over GF(p)")
}
