//! The closed-form proper skew morphisms of `Z_{4p}` and the predicate
//! "every skew morphism is coset-preserving".

use std::fmt;

use thiserror::Error;

use crate::arith::{factorize, is_prime};
use crate::census::CensusRecord;
use crate::skew::{SkewError, SkewMorphism};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(usize),
    #[error("shift {s} is not allowed for family {kind} with p = {p}")]
    BadShift { kind: FamilyKind, p: usize, s: usize },
    #[error("family z needs p = 1 (mod 4), got p = {0}")]
    NotOneModFour(usize),
    #[error("{omega} is not a square root of -1 modulo {p}")]
    BadOmega { p: usize, omega: usize },
    #[error(transparent)]
    Skew(#[from] SkewError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FamilyKind {
    X,
    Y,
    Z,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::X => "x",
            FamilyKind::Y => "y",
            FamilyKind::Z => "z",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyParams {
    pub p: usize,
    pub kind: FamilyKind,
    pub s: usize,
    /// Square root of `-1` modulo `p` in `[1, p)`, family `z` only.
    pub omega: Option<usize>,
}

fn check_odd_prime(p: usize) -> Result<(), FamilyError> {
    if p % 2 == 1 && is_prime(p as u64) {
        Ok(())
    } else {
        Err(FamilyError::NotOddPrime(p))
    }
}

/// Shifts residue class `a mod 4` by `shift[a mod 4]`.
fn shift_by_class(p: usize, shift: [usize; 4]) -> Result<SkewMorphism, SkewError> {
    let n = 4 * p;
    SkewMorphism::verify(n, (0..n).map(|a| (a + shift[a % 4]) % n).collect())
}

/// `x_s`: odd residues move by `s = 4i + 2` with `i` in `[0, p)`, `s != 2p`.
pub fn make_x(p: usize, s: usize) -> Result<SkewMorphism, FamilyError> {
    check_odd_prime(p)?;
    if s % 4 != 2 || s >= 4 * p || s == 2 * p {
        return Err(FamilyError::BadShift { kind: FamilyKind::X, p, s });
    }
    Ok(shift_by_class(p, [0, s, 0, s])?)
}

/// `y_s`: odd residues move by `s = 4i` with `i` in `[1, p)`.
pub fn make_y(p: usize, s: usize) -> Result<SkewMorphism, FamilyError> {
    check_odd_prime(p)?;
    if !s.is_multiple_of(4) || s == 0 || s >= 4 * p {
        return Err(FamilyError::BadShift { kind: FamilyKind::Y, p, s });
    }
    Ok(shift_by_class(p, [0, s, 0, s])?)
}

/// `z_{omega,s}`: residues `1, 2, 3 (mod 4)` move by `s`, `s(omega+1)` and
/// `s*omega` respectively, with `s = 4i`, `i` in `[1, p)`.
pub fn make_z(p: usize, omega: usize, s: usize) -> Result<SkewMorphism, FamilyError> {
    check_odd_prime(p)?;
    if p % 4 != 1 {
        return Err(FamilyError::NotOneModFour(p));
    }
    if omega == 0 || omega >= p || !(omega * omega + 1).is_multiple_of(p) {
        return Err(FamilyError::BadOmega { p, omega });
    }
    if !s.is_multiple_of(4) || s == 0 || s >= 4 * p {
        return Err(FamilyError::BadShift { kind: FamilyKind::Z, p, s });
    }
    let n = 4 * p;
    Ok(shift_by_class(p, [0, s % n, (s * (omega + 1)) % n, (s * omega) % n])?)
}

pub fn build(params: &FamilyParams) -> Result<SkewMorphism, FamilyError> {
    match params.kind {
        FamilyKind::X => make_x(params.p, params.s),
        FamilyKind::Y => make_y(params.p, params.s),
        FamilyKind::Z => make_z(params.p, params.omega.unwrap_or(0), params.s),
    }
}

/// Every admissible parameter set for `Z_{4p}`.
pub fn family_params(p: usize) -> Result<Vec<FamilyParams>, FamilyError> {
    check_odd_prime(p)?;
    let mut out = Vec::new();
    for i in (0..p).filter(|&i| 2 * i + 1 != p) {
        out.push(FamilyParams { p, kind: FamilyKind::X, s: 4 * i + 2, omega: None });
    }
    for i in 1..p {
        out.push(FamilyParams { p, kind: FamilyKind::Y, s: 4 * i, omega: None });
    }
    if p % 4 == 1 {
        for omega in (1..p).filter(|&w| (w * w + 1) % p == 0) {
            for i in 1..p {
                out.push(FamilyParams { p, kind: FamilyKind::Z, s: 4 * i, omega: Some(omega) });
            }
        }
    }
    Ok(out)
}

/// All members of the three families for `Z_{4p}`, sorted by image sequence.
pub fn family_4p(p: usize) -> Result<Vec<SkewMorphism>, FamilyError> {
    let mut out = family_params(p)?.iter().map(build).collect::<Result<Vec<_>, _>>()?;
    out.sort();
    Ok(out)
}

/// True iff every skew morphism in the census of `Z_n` is coset-preserving.
pub fn all_coset_preserving_predicate(n: usize, record: &CensusRecord) -> bool {
    record.n() == n && record.morphisms().all(|phi| phi.is_coset_preserving())
}

/// Whether `n` is `8p` or `16p` with `p` an odd prime, or a product of three
/// distinct primes.
pub fn is_coset_preserving_only_shape(n: usize) -> bool {
    let f = factorize(n as u64);
    match f.as_slice() {
        [(2, e), (_, 1)] => *e == 3 || *e == 4,
        [(_, 1), (_, 1), (_, 1)] => true,
        _ => false,
    }
}
