//! Skew morphisms of `Z_n`: verification of the defining identity and the
//! derived data (power function, kernel, order, periodicity).
//!
//! A permutation `phi` of `Z_n` fixing `0` is a skew morphism when for every
//! `a` there is an exponent `pi(a)` in `[1, ord(phi)]` such that
//! `phi(a + x) = phi(a) + phi^pi(a)(x)` for all `x`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

use crate::arith::{self, gcd, inverse_mod, lcm_saturating};

/// Power tables above this many entries are not materialized; witnesses are
/// then searched with per-cycle congruences instead.
const POWER_TABLE_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkewError {
    #[error("group order must be positive")]
    EmptyGroup,
    #[error("expected {expected} images, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("images do not form a permutation of Z_{0}")]
    NotPermutation(usize),
    #[error("identity is not fixed: phi(0) = {0}")]
    IdentityNotFixed(usize),
    #[error("no power of phi matches x -> phi({0} + x) - phi({0})")]
    NoPowerExponent(usize),
    #[error("{value} is not a unit modulo {modulus}")]
    NotAUnit { value: usize, modulus: usize },
    #[error("subgroup of order {0} is not contained in the kernel")]
    NNotInKernel(usize),
    #[error("subgroup of order {0} is not preserved by phi")]
    NNotPreserved(usize),
    #[error("{0} does not divide the group order")]
    BadSubgroupOrder(usize),
    #[error("cannot parse image list: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

/// A verified skew morphism of `Z_n`. All derived fields are computed once
/// by [`SkewMorphism::verify`] and never change.
#[derive(Debug, Clone)]
pub struct SkewMorphism {
    n: usize,
    images: Vec<usize>,
    pi: Vec<usize>,
    order: usize,
    kernel_order: usize,
    periodicity: usize,
    coset_preserving: bool,
    automorphism: bool,
}

impl PartialEq for SkewMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
    }
}

impl Eq for SkewMorphism {}

impl Hash for SkewMorphism {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl PartialOrd for SkewMorphism {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Census order: by group order, then lexicographically by image sequence.
impl Ord for SkewMorphism {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.n, &self.images).cmp(&(other.n, &other.images))
    }
}

impl fmt::Display for SkewMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_images(&self.images))
    }
}

/// Canonical textual form: comma-separated images, e.g. `0,3,2,5,4,1`.
pub fn format_images(images: &[usize]) -> String {
    let parts: Vec<String> = images.iter().map(|v| v.to_string()).collect();
    parts.join(",")
}

pub fn parse_images(text: &str) -> Result<Vec<usize>, SkewError> {
    text.split(',')
        .map(|part| part.trim().parse::<usize>().map_err(|e| SkewError::Parse(format!("{part:?}: {e}"))))
        .collect()
}

/// Cycle structure of a permutation: for each point its cycle id and
/// position within that cycle.
struct Cycles {
    id: Vec<usize>,
    pos: Vec<usize>,
    lengths: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl Cycles {
    fn of(images: &[usize]) -> Self {
        let n = images.len();
        let mut id = vec![usize::MAX; n];
        let mut pos = vec![0; n];
        let mut lengths = Vec::new();
        let mut members = Vec::new();
        for start in 0..n {
            if id[start] != usize::MAX {
                continue;
            }
            let cid = lengths.len();
            let mut cycle = Vec::new();
            let mut x = start;
            while id[x] == usize::MAX {
                id[x] = cid;
                pos[x] = cycle.len();
                cycle.push(x);
                x = images[x];
            }
            lengths.push(cycle.len());
            members.push(cycle);
        }
        Cycles { id, pos, lengths, members }
    }

    fn order(&self) -> u64 {
        self.lengths.iter().fold(1u64, |acc, &l| lcm_saturating(acc, l as u64))
    }
}

/// Permutation order: lcm of the cycle lengths (saturating at `u64::MAX`).
pub fn perm_order(images: &[usize]) -> u64 {
    Cycles::of(images).order()
}

pub fn is_permutation(images: &[usize]) -> bool {
    let n = images.len();
    let mut seen = vec![false; n];
    for &v in images {
        if v >= n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// `e`-fold composition of a raw permutation.
pub fn compose_power(images: &[usize], e: u64) -> Vec<usize> {
    let cycles = Cycles::of(images);
    (0..images.len())
        .map(|x| {
            let c = cycles.id[x];
            let len = cycles.lengths[c];
            let target = (cycles.pos[x] as u64 + e % len as u64) as usize % len;
            cycles.members[c][target]
        })
        .collect()
}

fn difference_map(images: &[usize], a: usize, out: &mut [usize]) {
    let n = images.len();
    let base = images[a];
    for (x, slot) in out.iter_mut().enumerate() {
        let ax = if a + x >= n { a + x - n } else { a + x };
        *slot = (images[ax] + n - base) % n;
    }
}

/// Decides whether the difference map at `a` is a power of `phi` by solving
/// one congruence per cycle. Used when the power table would be too large.
fn has_power_exponent(images: &[usize], cycles: &Cycles, a: usize, diff: &mut [usize]) -> bool {
    difference_map(images, a, diff);
    let mut offset = vec![usize::MAX; cycles.lengths.len()];
    for x in 0..images.len() {
        let c = cycles.id[x];
        let y = diff[x];
        if cycles.id[y] != c {
            return false;
        }
        let len = cycles.lengths[c];
        let k = (cycles.pos[y] + len - cycles.pos[x]) % len;
        if offset[c] == usize::MAX {
            offset[c] = k;
        } else if offset[c] != k {
            return false;
        }
    }
    // generalized CRT: pairwise compatibility of residues by cycle length
    let mut by_len: BTreeMap<usize, usize> = BTreeMap::new();
    for (c, &k) in offset.iter().enumerate() {
        let len = cycles.lengths[c];
        match by_len.get(&len) {
            Some(&prev) if prev != k => return false,
            _ => {
                by_len.insert(len, k);
            }
        }
    }
    let entries: Vec<(usize, usize)> = by_len.into_iter().collect();
    for (i, &(l1, k1)) in entries.iter().enumerate() {
        for &(l2, k2) in &entries[i + 1..] {
            let g = gcd(l1 as u64, l2 as u64) as usize;
            if k1 % g != k2 % g {
                return false;
            }
        }
    }
    true
}

impl SkewMorphism {
    /// Checks the defining identity and computes every derived field.
    ///
    /// The powers `phi^0 .. phi^(ord-1)` are tabulated and indexed by their
    /// full image sequence; for each `a` the difference map
    /// `x -> phi(a + x) - phi(a)` is looked up in that index.
    pub fn verify(n: usize, images: Vec<usize>) -> Result<Self, SkewError> {
        if n == 0 {
            return Err(SkewError::EmptyGroup);
        }
        if images.len() != n {
            return Err(SkewError::LengthMismatch { expected: n, actual: images.len() });
        }
        if !is_permutation(&images) {
            return Err(SkewError::NotPermutation(n));
        }
        if images[0] != 0 {
            return Err(SkewError::IdentityNotFixed(images[0]));
        }
        let cycles = Cycles::of(&images);
        let order64 = cycles.order();
        if order64.saturating_mul(n as u64) > POWER_TABLE_LIMIT {
            let mut diff = vec![0; n];
            for a in 1..n {
                if !has_power_exponent(&images, &cycles, a, &mut diff) {
                    return Err(SkewError::NoPowerExponent(a));
                }
            }
            return Err(SkewError::Invariant(format!(
                "permutation of order {order64} on Z_{n} satisfies the skew identity"
            )));
        }
        let order = order64 as usize;

        let mut table = Vec::with_capacity(order * n);
        let mut row: Vec<usize> = (0..n).collect();
        for _ in 0..order {
            table.extend_from_slice(&row);
            row = row.iter().map(|&x| images[x]).collect();
        }
        let mut index: HashMap<&[usize], usize> = HashMap::with_capacity(order);
        for (i, power) in table.chunks_exact(n).enumerate() {
            index.insert(power, i);
        }

        let mut pi = vec![0usize; n];
        let mut diff = vec![0usize; n];
        for a in 0..n {
            difference_map(&images, a, &mut diff);
            match index.get(diff.as_slice()) {
                Some(&0) => pi[a] = order,
                Some(&i) => pi[a] = i,
                None => return Err(SkewError::NoPowerExponent(a)),
            }
        }
        let kernel_order = pi.iter().filter(|&&v| v == 1).count();
        if !n.is_multiple_of(kernel_order) {
            return Err(SkewError::Invariant(format!("kernel of size {kernel_order} in Z_{n}")));
        }
        let step = n / kernel_order;
        if (0..n).any(|a| (pi[a] == 1) != (a % step == 0)) {
            return Err(SkewError::Invariant(format!("kernel of Z_{n} is not the subgroup of order {kernel_order}")));
        }

        let power_row = |p: usize| &table[(p % order) * n..(p % order + 1) * n];
        let periodicity = (1..=order)
            .find(|&p| {
                let row = power_row(p);
                (0..n).all(|a| pi[row[a]] == pi[a])
            })
            .expect("p = ord always works");
        if n >= 2 {
            let p_one = (1..=order).find(|&p| pi[power_row(p)[1]] == pi[1]).expect("p = ord always works");
            if p_one != periodicity {
                return Err(SkewError::Invariant(format!(
                    "periodicity {periodicity} differs from periodicity {p_one} of the generator"
                )));
            }
        }
        if order > 1 && periodicity >= order {
            return Err(SkewError::Invariant(format!("periodicity {periodicity} not below order {order}")));
        }

        let coset_preserving = (0..n).all(|a| pi[images[a]] == pi[a]);
        let automorphism = kernel_order == n;
        Ok(SkewMorphism { n, images, pi, order, kernel_order, periodicity, coset_preserving, automorphism })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn into_images(self) -> Vec<usize> {
        self.images
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    /// The power function, normalized into `[1, ord]`.
    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn kernel_order(&self) -> usize {
        self.kernel_order
    }

    /// Index of the kernel: members are exactly the multiples of this step.
    pub fn kernel_index(&self) -> usize {
        self.n / self.kernel_order
    }

    pub fn in_kernel(&self, a: usize) -> bool {
        a.is_multiple_of(self.kernel_index())
    }

    /// `(|K|, members of K)`.
    pub fn kernel(&self) -> (usize, Vec<usize>) {
        let members = (0..self.n).filter(|&a| self.pi[a] == 1).collect();
        (self.kernel_order, members)
    }

    pub fn periodicity(&self) -> usize {
        self.periodicity
    }

    pub fn is_coset_preserving(&self) -> bool {
        self.coset_preserving
    }

    pub fn is_automorphism(&self) -> bool {
        self.automorphism
    }

    pub fn is_proper(&self) -> bool {
        !self.automorphism
    }

    /// `phi^e` as a raw permutation.
    pub fn power(&self, e: u64) -> Vec<usize> {
        compose_power(&self.images, e % self.order as u64)
    }

    /// The `<phi>`-orbit of `x`, starting at `x`.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut out = vec![x];
        let mut y = self.images[x];
        while y != x {
            out.push(y);
            y = self.images[y];
        }
        out
    }

    /// The skew morphism `x + N -> phi(x) + N` of `Z_n / N`, where `N` is the
    /// subgroup of the given order.
    pub fn induced_on_quotient(&self, n_order: usize) -> Result<SkewMorphism, SkewError> {
        if n_order == 0 || !self.n.is_multiple_of(n_order) {
            return Err(SkewError::BadSubgroupOrder(n_order));
        }
        if !self.kernel_order.is_multiple_of(n_order) {
            return Err(SkewError::NNotInKernel(n_order));
        }
        let modulus = self.n / n_order;
        if (0..self.n).step_by(modulus).any(|a| !self.images[a].is_multiple_of(modulus)) {
            return Err(SkewError::NNotPreserved(n_order));
        }
        let mut images = vec![usize::MAX; modulus];
        for a in 0..self.n {
            let value = self.images[a] % modulus;
            let slot = &mut images[a % modulus];
            if *slot == usize::MAX {
                *slot = value;
            } else if *slot != value {
                return Err(SkewError::Invariant(format!("induced map on Z_{modulus} is not well defined")));
            }
        }
        SkewMorphism::verify(modulus, images)
    }

    /// The automorphism of `ker phi` (a cyclic group of order `|K|`) obtained
    /// by restricting `phi`.
    pub fn restrict_to_kernel(&self) -> Result<SkewMorphism, SkewError> {
        let step = self.kernel_index();
        let images = (0..self.kernel_order).map(|j| self.images[j * step] / step).collect();
        SkewMorphism::verify(self.kernel_order, images)
    }

    /// `a -> t * phi(t^-1 * a)`.
    pub fn conjugate(&self, t: usize) -> Result<SkewMorphism, SkewError> {
        let images = conjugate_images(&self.images, t)?;
        SkewMorphism::verify(self.n, images)
    }
}

/// The automorphism `a -> s * a` of `Z_n`.
pub fn automorphism_of(n: usize, s: usize) -> Result<SkewMorphism, SkewError> {
    if n == 0 {
        return Err(SkewError::EmptyGroup);
    }
    if gcd(s as u64, n as u64) != 1 {
        return Err(SkewError::NotAUnit { value: s, modulus: n });
    }
    SkewMorphism::verify(n, (0..n).map(|a| (a * s) % n).collect())
}

/// Conjugate image sequence `a -> t * phi(t^-1 * a) mod n` without verification.
pub fn conjugate_images(images: &[usize], t: usize) -> Result<Vec<usize>, SkewError> {
    let n = images.len();
    let t_inv = inverse_mod(t as u64, n as u64).map_err(|_| SkewError::NotAUnit { value: t, modulus: n })? as usize;
    Ok((0..n).map(|a| (t * images[(t_inv * a) % n]) % n).collect())
}

/// Lexicographically least image sequence in the conjugacy orbit under `Aut(Z_n)`.
pub fn canonical_representative(images: &[usize]) -> Vec<usize> {
    let n = images.len();
    let mut best = images.to_vec();
    for t in arith::units(n as u64) {
        let candidate = conjugate_images(images, t as usize).expect("t is a unit");
        if candidate < best {
            best = candidate;
        }
    }
    best
}

/// Partition of a list of skew morphisms into conjugacy classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classes {
    /// Class index of each input element.
    pub class_of: Vec<usize>,
    /// Canonical representative of each class, sorted ascending.
    pub representatives: Vec<Vec<usize>>,
}

impl Classes {
    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }
}

/// Orbits under conjugation by `Aut(Z_n)`; classes are numbered in ascending
/// order of their lexicographically least member image sequence.
pub fn equivalence_classes(list: &[SkewMorphism]) -> Classes {
    let reps: Vec<Vec<usize>> = list.iter().map(|phi| canonical_representative(phi.images())).collect();
    let distinct: BTreeMap<&Vec<usize>, usize> = reps.iter().map(|r| (r, 0)).collect();
    let numbering: BTreeMap<&Vec<usize>, usize> = distinct.keys().enumerate().map(|(i, r)| (*r, i)).collect();
    Classes {
        class_of: reps.iter().map(|r| numbering[r]).collect(),
        representatives: numbering.keys().map(|r| (*r).clone()).collect(),
    }
}
