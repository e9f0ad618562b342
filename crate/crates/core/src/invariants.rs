//! Structural properties every census must satisfy, checked independently of
//! how the census was produced.

use std::fmt;

use rayon::prelude::*;

use crate::arith::{self, euler_phi, gcd, prime_divisors};
use crate::census::{Census, CensusError, CensusRecord};
use crate::families::is_coset_preserving_only_shape;
use crate::product::{check_group, core_of_base, induce_from_pair};
use crate::quotient::{check_quotient_laws_with, quotient_of};
use crate::skew::SkewMorphism;

/// The prime comparison for induced kernels is run for `n` up to this bound.
pub const PRIME_COMPARISON_MAX_N: usize = 30;
/// Skew product checks are run when `n * ord(phi)` is at most this.
pub const PRODUCT_MAX_ORDER: usize = 100_000;
/// Quotient laws are checked for every generator, not only `1`, up to this `n`.
pub const ALL_GENERATORS_MAX_N: usize = 30;
/// Groups `Z_{4p}` whose (kernel, order) pairs are checked.
pub const FOUR_P_GROUPS: [usize; 3] = [12, 20, 28];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub n: usize,
    /// Image sequence of the offending skew morphism, if the check is per map.
    pub subject: Option<String>,
    pub check: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.subject {
            Some(s) => write!(f, "Z_{} [{s}] {}: {}", self.n, self.check, self.detail),
            None => write!(f, "Z_{} {}: {}", self.n, self.check, self.detail),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InvariantReport {
    pub groups: usize,
    pub morphisms: usize,
    pub violations: Vec<Violation>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

struct Collector<'a> {
    phi: &'a SkewMorphism,
    out: Vec<Violation>,
}

impl Collector<'_> {
    fn require(&mut self, ok: bool, check: &'static str, detail: impl FnOnce() -> String) {
        if !ok {
            self.out.push(Violation { n: self.phi.n(), subject: Some(self.phi.to_string()), check, detail: detail() });
        }
    }
}

/// Checks on a single skew morphism.
pub fn check_morphism(phi: &SkewMorphism) -> Vec<Violation> {
    let mut c = Collector { phi, out: Vec::new() };
    let n = phi.n();
    let ord = phi.order();
    let k = phi.kernel_order();
    let pi = phi.pi();

    if n >= 2 {
        c.require(ord < n, "order below n", || format!("ord = {ord}"));
    }
    let bound = n as u64 * euler_phi(n as u64).unwrap_or(0);
    c.require(bound.is_multiple_of(ord as u64), "order divides n*phi(n)", || format!("ord = {ord}, n*phi(n) = {bound}"));
    if phi.is_proper() {
        c.require(gcd(ord as u64, n as u64) > 1, "proper order shares a factor with n", || format!("ord = {ord}"));
        c.require(gcd(ord as u64, k as u64) > 1, "proper order shares a factor with |K|", || format!("ord = {ord}, |K| = {k}"));
    }

    // kernel read directly off the power function
    let kernel: Vec<usize> = (0..n).filter(|&a| pi[a] == 1).collect();
    c.require(kernel.len() == k, "kernel size", || format!("{} elements with pi = 1, reported {k}", kernel.len()));
    if n >= 2 {
        c.require(kernel.len() >= 2, "kernel non-trivial", || format!("|K| = {}", kernel.len()));
    }
    let step = n / kernel.len().max(1);
    c.require(
        n.is_multiple_of(kernel.len().max(1)) && kernel.iter().copied().eq((0..n).step_by(step)),
        "kernel is a subgroup",
        || format!("kernel {kernel:?}"),
    );
    let same_coset_ok = (0..n).all(|a| (0..n).all(|b| (pi[a] == pi[b]) == ((a + n - b) % n).is_multiple_of(step)));
    c.require(same_coset_ok, "power function constant exactly on kernel cosets", String::new);
    if let Some(a) = (0..n).find(|&a| phi.apply(a) == a && pi[a] != 1) {
        c.require(false, "fixed points lie in the kernel", || format!("{a} is fixed with pi = {}", pi[a]));
    }
    if n >= 2 {
        let len = phi.orbit(1).len();
        c.require(len == ord, "orbit of a generator has size ord", || format!("orbit size {len}, ord {ord}"));
    }

    let p = phi.periodicity();
    match SkewMorphism::verify(n, phi.power(p as u64)) {
        Ok(psi) => c.require(psi.is_coset_preserving(), "phi^p is coset-preserving", || format!("p = {p}")),
        Err(e) => c.require(false, "phi^p is a skew morphism", || e.to_string()),
    }
    c.require(
        phi.is_coset_preserving() == (p == 1),
        "coset-preserving iff periodicity 1",
        || format!("p = {p}"),
    );

    // quotient laws and the three-way split
    let generators: Vec<usize> = if (2..=ALL_GENERATORS_MAX_N).contains(&n) {
        arith::units(n as u64).into_iter().map(|g| g as usize).collect()
    } else {
        vec![1 % n.max(1)]
    };
    for g in generators {
        let report = check_quotient_laws_with(phi, g);
        for v in report.violations {
            c.require(false, "quotient laws", || format!("generator {g}: {v}"));
        }
    }
    if let Ok(q) = quotient_of(phi, 1 % n.max(1)) {
        let q = q.skew();
        let class = (q.order() == 1, q.is_automorphism(), phi.is_automorphism(), phi.is_coset_preserving());
        let ok = matches!(class, (true, _, true, _) | (false, true, false, true) | (false, false, false, false));
        c.require(ok, "quotient trichotomy", || format!("quotient {q} of order {}", q.order()));
    }

    if n >= 4 {
        let largest = arith::largest_prime_divisor(n as u64).unwrap_or(1) as usize;
        let needed = if largest == 2 { 4 } else { largest };
        c.require(k.is_multiple_of(needed), "largest prime divides |K|", || format!("|K| = {k}, needs factor {needed}"));
    }

    if n <= PRIME_COMPARISON_MAX_N {
        for q in prime_divisors(k as u64).into_iter().map(|q| q as usize) {
            match phi.induced_on_quotient(q) {
                Ok(induced) => {
                    let l = q * induced.kernel_order();
                    for p in prime_divisors(l as u64).into_iter().map(|p| p as usize) {
                        c.require(k.is_multiple_of(p) || p < q, "induced kernel primes", || {
                            format!("q = {q}, |L| = {l}, prime {p} divides |L| but not |K|")
                        });
                    }
                }
                Err(e) => c.require(false, "induced skew morphism", || format!("q = {q}: {e}")),
            }
        }
    }

    if n * ord <= PRODUCT_MAX_ORDER {
        let report = check_group(phi);
        for v in report.violations {
            c.require(false, "skew product group", || v);
        }
        let core = core_of_base(phi);
        c.require(core == k, "core of B equals kernel", || format!("core {core}, kernel {k}"));
        if let Err(e) = induce_from_pair(n, phi) {
            c.require(false, "pair model round trip", || e.to_string());
        }
    }
    c.out
}

fn record_violation(out: &mut Vec<Violation>, n: usize, check: &'static str, detail: String) {
    out.push(Violation { n, subject: None, check, detail });
}

/// Checks on a whole census, including every member.
pub fn check_record(record: &CensusRecord) -> Vec<Violation> {
    let n = record.n();
    let list: Vec<&SkewMorphism> = record.morphisms().collect();
    let mut out: Vec<Violation> = list.par_iter().flat_map_iter(|phi| check_morphism(phi)).collect();

    let counts = record.counts();
    let phi_n = euler_phi(n as u64).unwrap_or(0) as usize;
    if counts.automorphisms != phi_n {
        record_violation(&mut out, n, "automorphism count", format!("{} automorphisms, phi(n) = {phi_n}", counts.automorphisms));
    }
    let expect_none = n == 4 || gcd(n as u64, phi_n as u64) == 1;
    if expect_none != (counts.proper == 0) {
        record_violation(&mut out, n, "existence of proper skew morphisms", format!("{} proper", counts.proper));
    }
    if is_coset_preserving_only_shape(n) {
        if let Some(phi) = list.iter().find(|phi| !phi.is_coset_preserving()) {
            record_violation(&mut out, n, "all skew morphisms coset-preserving", format!("{phi} is not"));
        }
    }
    if FOUR_P_GROUPS.contains(&n) {
        let p = n / 4;
        for phi in record.proper() {
            let pair = (phi.kernel_order(), phi.order());
            if ![(p, p), (2 * p, p), (2 * p, 2 * p)].contains(&pair) {
                record_violation(&mut out, n, "kernel and order of proper maps of Z_4p", format!("{phi}: {pair:?}"));
            }
        }
    }
    out
}

/// Runs every check on the censuses of `Z_1 .. Z_max`.
pub fn check_census(census: &mut Census, max: usize) -> Result<InvariantReport, CensusError> {
    let mut report = InvariantReport::default();
    for n in 1..=max {
        let record = census.get(n)?;
        report.groups += 1;
        report.morphisms += record.entries().len();
        report.violations.extend(check_record(&record));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_censuses_pass() {
        let report = check_census(&mut Census::new(), 24).unwrap();
        assert!(report.passed(), "{:?}", report.violations.first());
        assert_eq!(report.groups, 24);
    }

    #[test]
    fn fabricated_record_is_flagged() {
        // Z_7 with only its identity: wrong automorphism count
        let id = SkewMorphism::verify(7, (0..7).collect()).unwrap();
        let record = CensusRecord::from_list(7, vec![id]).unwrap();
        let v = check_record(&record);
        assert!(v.iter().any(|v| v.check == "automorphism count"));
    }
}
