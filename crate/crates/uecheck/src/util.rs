//! Small shared helpers: tuple odometers, binomial coefficients, powers.

use num_bigint::BigInt;

/// Iterator over all length-`len` tuples with entries in `0..base`, in
/// lexicographic order (first entry most significant).
pub fn tuples(base: u32, len: usize) -> Tuples {
    Tuples {
        base,
        current: vec![0; len],
        done: base == 0 && len > 0,
        started: false,
    }
}

pub struct Tuples {
    base: u32,
    current: Vec<u8>,
    done: bool,
    started: bool,
}

impl Iterator for Tuples {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        // odometer increment, last position fastest
        for i in (0..self.current.len()).rev() {
            if (self.current[i] as u32) + 1 < self.base {
                self.current[i] += 1;
                for c in &mut self.current[i + 1..] {
                    *c = 0;
                }
                return Some(self.current.clone());
            }
        }
        self.done = true;
        None
    }
}

pub fn binom_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn binom_big(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binom_f64(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

/// base^exp in u128, None on overflow.
pub fn checked_pow_u128(base: u64, exp: u32) -> Option<u128> {
    (base as u128).checked_pow(exp)
}
