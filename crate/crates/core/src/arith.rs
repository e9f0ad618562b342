//! Modular and multiplicative number theory on machine integers.
//!
//! Group elements of `Z_n` are plain residues in `[0, n)`; the generator of the
//! cyclic group corresponds to residue `1`, so the multiplicative power `b^k`
//! is simply `k mod n` everywhere in this crate.

use std::fmt;
use std::ops;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: u64, modulus: u64 },
    #[error("n * phi(n) overflows for n = {0}")]
    Overflow(u64),
}

/// An element of `Z_modulus`, always stored in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Result<Self, ArithError> {
        if modulus == 0 {
            return Err(ArithError::ZeroModulus);
        }
        Ok(Self { value: value % modulus, modulus })
    }

    /// Reduces a signed integer into `[0, modulus)`.
    pub fn from_signed(value: i64, modulus: u64) -> Result<Self, ArithError> {
        if modulus == 0 {
            return Err(ArithError::ZeroModulus);
        }
        let m = modulus as i128;
        let v = (value as i128).rem_euclid(m) as u64;
        Ok(Self { value: v, modulus })
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    pub fn pow(self, exp: u64) -> Self {
        Self { value: pow_mod(self.value, exp, self.modulus), modulus: self.modulus }
    }

    pub fn inverse(self) -> Result<Self, ArithError> {
        inverse_mod(self.value, self.modulus).map(|value| Self { value, modulus: self.modulus })
    }
}

impl ops::Add for Residue {
    type Output = Self;

    fn add(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self { value: add_mod(self.value, other.value, self.modulus), modulus: self.modulus }
    }
}

impl ops::Neg for Residue {
    type Output = Self;

    fn neg(self) -> Self {
        Self { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
}

impl ops::Mul for Residue {
    type Output = Self;

    fn mul(self, other: Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Self { value: mul_mod(self.value, other.value, self.modulus), modulus: self.modulus }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// `lcm` that saturates at `u64::MAX` instead of overflowing.
pub fn lcm_saturating(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)).saturating_mul(b)
}

pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm.
pub fn inverse_mod(a: u64, m: u64) -> Result<u64, ArithError> {
    if m == 0 {
        return Err(ArithError::ZeroModulus);
    }
    if m == 1 {
        return Ok(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return Err(ArithError::NotAUnit { value: a, modulus: m });
    }
    Ok(old_s.rem_euclid(m as i128) as u64)
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> Result<u64, ArithError> {
    if n == 0 {
        return Err(ArithError::ZeroModulus);
    }
    let mut result = n;
    for (p, _) in factorize(n) {
        result = result / p * (p - 1);
    }
    Ok(result)
}

/// `n * euler_phi(n)`, the bound every skew morphism order of `C_n` divides.
pub fn order_bound(n: u64) -> Result<u64, ArithError> {
    let phi = euler_phi(n)?;
    n.checked_mul(phi).ok_or(ArithError::Overflow(n))
}

/// Prime factorization by trial division, ascending primes with multiplicity.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

pub fn largest_prime_divisor(n: u64) -> Option<u64> {
    factorize(n).last().map(|&(p, _)| p)
}

/// All divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Residues in `[1, m)` coprime to `m`; empty for `m = 1`.
pub fn units(m: u64) -> Vec<u64> {
    (1..m).filter(|&s| gcd(s, m) == 1).collect()
}

/// Least `t >= 1` with `s^t = 1 (mod m)`.
pub fn mult_order(s: u64, m: u64) -> Result<u64, ArithError> {
    if m == 0 {
        return Err(ArithError::ZeroModulus);
    }
    if m == 1 {
        return Ok(1);
    }
    if gcd(s % m, m) != 1 {
        return Err(ArithError::NotAUnit { value: s, modulus: m });
    }
    // the order divides phi(m); test divisors in ascending order
    let phi = euler_phi(m)?;
    Ok(divisors(phi)
        .into_iter()
        .find(|&t| pow_mod(s, t, m) == 1)
        .expect("s^phi(m) = 1 for units"))
}

/// Discrete logarithm in the additive group `Z_m` to base `d`: the unique
/// `x` with `x * d = y (mod m)`.
pub fn dlog_cyclic(d: u64, y: u64, m: u64) -> Result<u64, ArithError> {
    let inv = inverse_mod(d % m.max(1), m)?;
    Ok(mul_mod(y % m, inv, m))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        assert_eq!(euler_phi(1), Ok(1));
        assert_eq!(euler_phi(20), Ok(8));
        assert_eq!(euler_phi(42), Ok(12));
        assert_eq!(euler_phi(0), Err(ArithError::ZeroModulus));
    }

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(49), vec![1, 7, 49]);
    }

    #[test]
    fn unit_lists() {
        assert_eq!(units(12), vec![1, 5, 7, 11]);
        assert_eq!(units(7), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(units(2), vec![1]);
        assert!(units(1).is_empty());
    }

    #[test]
    fn multiplicative_orders() {
        assert_eq!(mult_order(1, 5), Ok(1));
        assert_eq!(mult_order(2, 3), Ok(2));
        assert_eq!(mult_order(2, 5), Ok(4));
        assert!(mult_order(2, 4).is_err());
    }

    #[test]
    fn discrete_logs() {
        assert_eq!(dlog_cyclic(1, 5, 7), Ok(5));
        assert_eq!(dlog_cyclic(3, 6, 7), Ok(2));
        assert_eq!(dlog_cyclic(5, 0, 10), Err(ArithError::NotAUnit { value: 5, modulus: 10 }));
    }

    #[test]
    fn largest_primes() {
        assert_eq!(largest_prime_divisor(1), None);
        assert_eq!(largest_prime_divisor(12), Some(3));
        assert_eq!(largest_prime_divisor(42), Some(7));
    }

    #[test]
    fn residue_ops() {
        let a = Residue::new(5, 12).unwrap();
        assert_eq!((a * a).value(), 1);
        assert_eq!(a.inverse().unwrap().value(), 5);
        assert_eq!((-a).value(), 7);
        assert_eq!(Residue::from_signed(-1, 7).unwrap().value(), 6);
        assert!(Residue::new(4, 12).unwrap().inverse().is_err());
    }

    #[test]
    fn phi_counts_units() {
        for n in 1..=200u64 {
            let expected = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
            assert_eq!(euler_phi(n).unwrap(), expected, "n = {n}");
            if n > 1 {
                assert_eq!(units(n).len() as u64, expected);
            }
        }
    }

    #[test]
    fn mult_order_is_minimal() {
        for m in 1..=200u64 {
            for s in units(m) {
                let t = mult_order(s, m).unwrap();
                assert_eq!(pow_mod(s, t, m), 1 % m);
                for smaller in 1..t {
                    assert_ne!(pow_mod(s, smaller, m), 1 % m, "s={s} m={m}");
                }
            }
        }
    }

    #[test]
    fn dlog_inverts_multiplication() {
        for m in 1..=100u64 {
            for d in units(m.max(2)).into_iter().filter(|_| m > 1) {
                for x in 0..m {
                    assert_eq!(dlog_cyclic(d, (x * d) % m, m).unwrap(), x);
                }
            }
        }
    }
}
