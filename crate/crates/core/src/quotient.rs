//! The quotient of a skew morphism: a skew morphism of `Z_m`, `m = ord(phi)`,
//! read off from the skew product group modulo the kernel.
//!
//! With respect to a generator `g` of `Z_n`, the quotient `Q` is given by the
//! partial sums `Q(k) = sum_{i<k} pi(phi^i(g)) mod m`, so no explicit
//! construction of the factor group is needed.

use thiserror::Error;

use crate::arith::{gcd, inverse_mod};
use crate::skew::{SkewError, SkewMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("{generator} does not generate Z_{n}")]
    NotAGenerator { generator: usize, n: usize },
    #[error("quotient is not a skew morphism: {0}")]
    QuotientNotSkew(SkewError),
    #[error("quotient law violated: {0}")]
    Law(String),
}

/// A quotient together with the generator it was taken with respect to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientData {
    generator: usize,
    quotient: SkewMorphism,
}

impl QuotientData {
    pub fn generator(&self) -> usize {
        self.generator
    }

    /// The modulus `m = ord(phi)`.
    pub fn m(&self) -> usize {
        self.quotient.n()
    }

    pub fn images_bar(&self) -> &[usize] {
        self.quotient.images()
    }

    pub fn pi_bar(&self) -> &[usize] {
        self.quotient.pi()
    }

    pub fn ord_bar(&self) -> usize {
        self.quotient.order()
    }

    pub fn skew(&self) -> &SkewMorphism {
        &self.quotient
    }

    pub fn into_skew(self) -> SkewMorphism {
        self.quotient
    }
}

/// Raw quotient image sequence, before verification.
pub fn quotient_images(phi: &SkewMorphism, g: usize) -> Vec<usize> {
    let m = phi.order();
    let pi = phi.pi();
    let mut images = Vec::with_capacity(m);
    let mut acc = 0usize;
    let mut x = g;
    for _ in 0..m {
        images.push(acc);
        acc = (acc + pi[x]) % m;
        x = phi.apply(x);
    }
    images
}

pub fn quotient_of(phi: &SkewMorphism, g: usize) -> Result<QuotientData, QuotientError> {
    let n = phi.n();
    if gcd(g as u64, n as u64) != 1 || (n > 1 && g >= n) {
        return Err(QuotientError::NotAGenerator { generator: g, n });
    }
    let images = quotient_images(phi, g % n);
    let quotient = SkewMorphism::verify(phi.order(), images).map_err(QuotientError::QuotientNotSkew)?;

    if quotient.order() * phi.kernel_order() != n {
        return Err(QuotientError::Law(format!(
            "ord(quotient) = {} but |B|/|ker| = {}",
            quotient.order(),
            n / phi.kernel_order()
        )));
    }
    let identity = quotient.order() == 1;
    if identity != phi.is_automorphism() {
        return Err(QuotientError::Law("quotient is the identity exactly for automorphisms".into()));
    }
    if phi.is_proper() && quotient.is_automorphism() != phi.is_coset_preserving() {
        return Err(QuotientError::Law(
            "quotient of a proper skew morphism is an automorphism exactly when it is coset-preserving".into(),
        ));
    }
    Ok(QuotientData { generator: g % n, quotient })
}

/// The coset index `t` with `phi^k(g)` in `K + t*g`, as a residue modulo `n / |K|`.
pub fn barpi_index(phi: &SkewMorphism, g: usize, k: usize) -> Result<usize, QuotientError> {
    let n = phi.n();
    let g_inv = inverse_mod(g as u64, n as u64).map_err(|_| QuotientError::NotAGenerator { generator: g, n })? as usize;
    let mut x = g % n;
    for _ in 0..k % phi.order() {
        x = phi.apply(x);
    }
    Ok((x * g_inv) % n % phi.kernel_index())
}

/// Outcome of [`check_quotient_laws`]: empty `violations` means every law held.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QuotientReport {
    pub violations: Vec<String>,
}

impl QuotientReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_quotient_laws(phi: &SkewMorphism) -> QuotientReport {
    check_quotient_laws_with(phi, 1 % phi.n().max(1))
}

/// Checks, for the quotient `Q` with respect to `g`:
/// - `pi(k*g) = Q^k(1) (mod m)` for every `k`;
/// - the periodicity of `phi` equals `m / |ker Q|`;
/// - the coset index of `phi^k(g)` equals the power function of `Q` at `k`
///   modulo `n / |K|`.
pub fn check_quotient_laws_with(phi: &SkewMorphism, g: usize) -> QuotientReport {
    let mut report = QuotientReport::default();
    let data = match quotient_of(phi, g) {
        Ok(data) => data,
        Err(e) => {
            report.violations.push(e.to_string());
            return report;
        }
    };
    let n = phi.n();
    let m = data.m();
    let q = data.skew();

    let mut power_of_one = 1 % m;
    for k in 0..n {
        let lhs = phi.pi()[(k * g) % n] % m;
        if lhs != power_of_one {
            report.violations.push(format!("pi({}) = {} but Q^{k}(1) = {power_of_one} (mod {m})", (k * g) % n, phi.pi()[(k * g) % n]));
        }
        power_of_one = q.apply(power_of_one);
    }

    let expected_period = m / q.kernel_order();
    if phi.periodicity() != expected_period {
        report.violations.push(format!(
            "periodicity {} differs from m/|ker Q| = {expected_period}",
            phi.periodicity()
        ));
    }

    let index = phi.kernel_index();
    let mut x = g % n;
    let g_inv = inverse_mod(g as u64, n as u64).unwrap_or(0) as usize;
    for k in 0..m {
        let coset = (x * g_inv) % n % index;
        let expected = q.pi()[k] % index;
        if coset != expected {
            report.violations.push(format!("coset index of phi^{k}(g) is {coset}, power function of Q gives {expected}"));
        }
        x = phi.apply(x);
    }
    report
}
