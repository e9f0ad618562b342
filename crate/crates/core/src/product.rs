//! The skew product group `B<phi>` modelled as pairs `(a, j)` standing for
//! `a * c^j`, with `c * b = phi(b) * c^pi(b)`. This is an independent route to
//! kernels and to the defining identity.

use thiserror::Error;

use crate::skew::{SkewError, SkewMorphism};

/// Above this many triples associativity is only checked with the first two
/// factors drawn from the generators `(1, 0)` and `(0, 1)`.
const EXHAUSTIVE_TRIPLES: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProductError {
    #[error("pair model does not reproduce the skew morphism: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Skew(#[from] SkewError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewProductElement {
    /// The `B` part, a residue mod `n`.
    pub a: usize,
    /// The exponent of `c`, a residue mod `ord(phi)`.
    pub j: usize,
}

impl SkewProductElement {
    pub fn new(a: usize, j: usize) -> Self {
        Self { a, j }
    }
}

/// Multiplication tables for `B<phi>`: powers of `phi` and the prefix sums
/// `s_i(b) = sum_{t<i} pi(phi^t(b)) mod m` for `i` in `[0, m]`.
#[derive(Debug, Clone)]
pub struct SkewProduct {
    n: usize,
    m: usize,
    powers: Vec<usize>,
    prefix: Vec<usize>,
}

impl SkewProduct {
    pub fn new(phi: &SkewMorphism) -> Self {
        let n = phi.n();
        let m = phi.order();
        let mut powers = Vec::with_capacity(m * n);
        let mut prefix = Vec::with_capacity((m + 1) * n);
        let mut row: Vec<usize> = (0..n).collect();
        let mut sums = vec![0usize; n];
        for _ in 0..m {
            powers.extend_from_slice(&row);
            prefix.extend_from_slice(&sums);
            for b in 0..n {
                sums[b] = (sums[b] + phi.pi()[row[b]]) % m;
            }
            row = row.iter().map(|&x| phi.apply(x)).collect();
        }
        prefix.extend_from_slice(&sums);
        SkewProduct { n, m, powers, prefix }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> usize {
        self.n * self.m
    }

    pub fn identity(&self) -> SkewProductElement {
        SkewProductElement::new(0, 0)
    }

    /// `phi^i(b)`.
    pub fn power_at(&self, i: usize, b: usize) -> usize {
        self.powers[(i % self.m) * self.n + b]
    }

    /// `s_i(b)` for `i` in `[0, m]`.
    pub fn shift(&self, i: usize, b: usize) -> usize {
        self.prefix[i * self.n + b]
    }

    pub fn multiply(&self, x: SkewProductElement, y: SkewProductElement) -> SkewProductElement {
        SkewProductElement {
            a: (x.a + self.power_at(x.j, y.a)) % self.n,
            j: (self.shift(x.j, y.a) + y.j) % self.m,
        }
    }

    pub fn inverse(&self, x: SkewProductElement) -> SkewProductElement {
        let b = self.power_at((self.m - x.j % self.m) % self.m, (self.n - x.a) % self.n);
        let j = (self.m - self.shift(x.j, b)) % self.m;
        SkewProductElement { a: b, j }
    }

    pub fn elements(&self) -> impl Iterator<Item = SkewProductElement> + '_ {
        (0..self.n).flat_map(move |a| (0..self.m).map(move |j| SkewProductElement { a, j }))
    }

    /// Action on `B`: `(a, j)` sends `z` to `a + phi^j(z)`.
    pub fn act(&self, x: SkewProductElement, z: usize) -> usize {
        (x.a + self.power_at(x.j, z)) % self.n
    }
}

pub fn multiply(phi: &SkewMorphism, x: SkewProductElement, y: SkewProductElement) -> SkewProductElement {
    SkewProduct::new(phi).multiply(x, y)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupReport {
    pub order: usize,
    pub associativity_exhaustive: bool,
    pub violations: Vec<String>,
}

impl GroupReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Group axioms on the pair model.
///
/// Associativity is established by showing the multiplication agrees with
/// composition of the (faithful) action on `B`, i.e.
/// `phi^i(b + w) = phi^i(b) + phi^{s_i(b)}(w)` for all `i, b, w`, and in
/// addition checked directly on triples.
pub fn check_group(phi: &SkewMorphism) -> GroupReport {
    let g = SkewProduct::new(phi);
    let (n, m) = (g.n(), g.m());
    let mut report = GroupReport { order: g.order(), ..Default::default() };
    let e = g.identity();

    for x in g.elements() {
        if g.multiply(e, x) != x || g.multiply(x, e) != x {
            report.violations.push(format!("identity fails at {x:?}"));
        }
        let y = g.inverse(x);
        if g.multiply(x, y) != e || g.multiply(y, x) != e {
            report.violations.push(format!("inverse fails at {x:?}"));
        }
    }

    'action: for i in 0..m {
        for b in 0..n {
            let s = g.shift(i, b);
            for w in 0..n {
                let lhs = g.power_at(i, (b + w) % n);
                let rhs = (g.power_at(i, b) + g.power_at(s, w)) % n;
                if lhs != rhs {
                    report.violations.push(format!("action is not compatible at i={i}, b={b}, w={w}"));
                    break 'action;
                }
            }
        }
    }

    let total = g.order();
    report.associativity_exhaustive = total.saturating_mul(total).saturating_mul(total) <= EXHAUSTIVE_TRIPLES;
    let generators = [SkewProductElement::new(1 % n, 0), SkewProductElement::new(0, 1 % m)];
    let firsts: Vec<SkewProductElement> =
        if report.associativity_exhaustive { g.elements().collect() } else { generators.to_vec() };
    'assoc: for &x in &firsts {
        let seconds: Vec<SkewProductElement> =
            if report.associativity_exhaustive { g.elements().collect() } else { generators.to_vec() };
        for &y in &seconds {
            let xy = g.multiply(x, y);
            for z in g.elements() {
                if g.multiply(xy, z) != g.multiply(x, g.multiply(y, z)) {
                    report.violations.push(format!("associativity fails at {x:?}, {y:?}, {z:?}"));
                    break 'assoc;
                }
            }
        }
    }
    report
}

/// Order of the largest subgroup `H` of `B` with `c H c^-1` contained in `B`,
/// computed in the pair model.
pub fn core_of_base(phi: &SkewMorphism) -> usize {
    let g = SkewProduct::new(phi);
    let n = g.n();
    let c = SkewProductElement::new(0, 1 % g.m());
    let c_inv = g.inverse(c);
    let normalizes = |h: usize| g.multiply(g.multiply(c, SkewProductElement::new(h, 0)), c_inv).j == 0;
    crate::arith::divisors(n as u64)
        .into_iter()
        .rev()
        .map(|d| d as usize)
        .find(|&d| (0..n).step_by(n / d).all(normalizes))
        .unwrap_or(1)
}

/// Reads the skew morphism back off `c * (a, 0) = (phi(a), pi(a))` and checks
/// it reproduces `phi`, power function included.
pub fn induce_from_pair(n: usize, phi: &SkewMorphism) -> Result<SkewMorphism, ProductError> {
    if phi.n() != n {
        return Err(ProductError::Mismatch(format!("expected a skew morphism of Z_{n}, got Z_{}", phi.n())));
    }
    let g = SkewProduct::new(phi);
    let c = SkewProductElement::new(0, 1 % g.m());
    let mut images = Vec::with_capacity(n);
    let mut exponents = Vec::with_capacity(n);
    for a in 0..n {
        let prod = g.multiply(c, SkewProductElement::new(a, 0));
        images.push(prod.a);
        exponents.push(if prod.j == 0 { g.m() } else { prod.j });
    }
    let induced = SkewMorphism::verify(n, images)?;
    if induced != *phi {
        return Err(ProductError::Mismatch("images differ".into()));
    }
    if induced.order() > 1 && induced.pi() != exponents.as_slice() {
        return Err(ProductError::Mismatch("power function differs".into()));
    }
    Ok(induced)
}
