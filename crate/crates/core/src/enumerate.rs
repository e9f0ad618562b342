//! Constructive enumeration of skew morphisms of `Z_n`.
//!
//! Every skew morphism satisfies `phi(k) = sum_{i<k} phi^{pi(i)}(1)` and its
//! power function is read off the quotient: `pi(k) = Q^k(1) (mod m)`. The
//! search therefore only has to guess the orbit of `1` at the few exponents
//! the quotient actually visits.
//!
//! Both searches also use the kernel `K` (of index `r`): since `pi = 1` on
//! `K`, `phi(a + y) = phi(a) + phi(y)` for `y` in `K`, and `phi` restricts to
//! an automorphism `y -> t*y` of `K`. Hence `phi(a + y) = phi(a) + t*y`, and
//! `phi` is determined by `t` and its values on `0..r`.

use rayon::prelude::*;
use thiserror::Error;

use crate::arith::{mult_order, pow_mod, units};
use crate::quotient::quotient_images;
use crate::skew::{automorphism_of, SkewMorphism};

/// Largest `n` accepted by [`brute_force`]; `(n-1)!` candidates are tried.
pub const BRUTE_FORCE_MAX: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("brute force is limited to n <= {BRUTE_FORCE_MAX}, got {0}")]
    TooLarge(usize),
    #[error("group order must be positive")]
    EmptyGroup,
}

pub fn automorphisms(n: usize) -> Vec<SkewMorphism> {
    if n == 1 {
        return vec![automorphism_of(1, 0).expect("identity of the trivial group")];
    }
    units(n as u64)
        .into_iter()
        .map(|s| automorphism_of(n, s as usize).expect("units give automorphisms"))
        .collect()
}

/// Cheap necessary conditions on a candidate image sequence built from
/// `t` and partial sums: `phi(r) = t*r` and bijectivity.
fn plausible(images: &[usize], r: usize, t: usize) -> bool {
    let n = images.len();
    if images[r % n] != (t * r) % n {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in images {
        if seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

/// All coset-preserving skew morphisms of `Z_n`, automorphisms included,
/// sorted by image sequence.
///
/// A proper coset-preserving `phi` with kernel of index `r` fixes every coset
/// of `K`, so the orbit of `1` stays in `1 + K` and is the orbit of `0` under
/// the affine map `y -> h + t*y` on `K`, where `h = phi(1) - 1`. Its quotient
/// is an automorphism `alpha_s` of `Z_m` with `mult_order(s, m) = r`, so
/// `phi(k+1) = phi(k) + phi^{s^k}(1)`. Each `(r, t, h, s)` gives at most one
/// candidate, which is then verified.
pub fn enumerate_coset_preserving(n: usize) -> Vec<SkewMorphism> {
    let mut out = automorphisms(n);
    if n < 4 {
        return out;
    }
    let mut tasks = Vec::new();
    for r in crate::arith::divisors(n as u64).into_iter().map(|d| d as usize) {
        if r < 2 || r >= n {
            continue;
        }
        let kord = n / r;
        for t in units(kord as u64) {
            for j in 0..kord {
                tasks.push((r, t as usize, j * r));
            }
        }
    }
    let mut proper: Vec<SkewMorphism> =
        tasks.into_par_iter().flat_map_iter(|(r, t, h)| cp_candidates(n, r, t, h)).collect();
    out.append(&mut proper);
    out.sort();
    out
}

fn cp_candidates(n: usize, r: usize, t: usize, h: usize) -> Vec<SkewMorphism> {
    let mut orbit = vec![1 % n];
    let mut y = 0usize;
    loop {
        y = (h + t * y) % n;
        if y == 0 {
            break;
        }
        orbit.push((1 + y) % n);
    }
    let m = orbit.len();
    if m < 2 {
        return Vec::new();
    }
    let mut found = Vec::new();
    for s in units(m as u64).into_iter().map(|s| s as usize) {
        if s == 1 || mult_order(s as u64, m as u64) != Ok(r as u64) {
            continue;
        }
        let mut images = vec![0usize; n];
        let mut power = 1usize;
        for k in 0..n - 1 {
            images[k + 1] = (images[k] + orbit[power]) % n;
            power = if (k + 1) % r == 0 { 1 } else { (power * s) % m };
        }
        if !plausible(&images, r, t) {
            continue;
        }
        let Ok(phi) = SkewMorphism::verify(n, images) else { continue };
        if phi.order() != m || !phi.is_coset_preserving() || phi.is_automorphism() {
            continue;
        }
        let expected: Vec<usize> = (0..m).map(|k| (k * s) % m).collect();
        if quotient_images(&phi, 1) != expected {
            continue;
        }
        if phi.orbit(1) != orbit {
            continue;
        }
        found.push(phi);
    }
    found
}

/// Orbit template of a lift: the orbit of `1` is
/// `x_1, .., x_p, psi(x_1), .., psi(x_p), psi^2(x_1), ..` with `x_1 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTemplate {
    pub m: usize,
    pub p: usize,
    pub psi: SkewMorphism,
    /// `x[i]` for `i` in `1..=p`; index `0` is unused.
    pub x: Vec<Option<usize>>,
    /// Exponents `e` at which the orbit value is needed.
    pub needed_positions: Vec<usize>,
}

impl OrbitTemplate {
    /// Orbit value at exponent `e`, if its slot is assigned.
    pub fn position(&self, e: usize) -> Option<usize> {
        let base = self.x[(e % self.p) + 1]?;
        let mut v = base;
        for _ in 0..(e / self.p) {
            v = self.psi.apply(v);
        }
        Some(v)
    }
}

/// Cycle lookup for `psi`, giving `psi^k(v)` in constant time.
struct CycleIndex {
    id: Vec<usize>,
    pos: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl CycleIndex {
    fn of(images: &[usize]) -> Self {
        let n = images.len();
        let mut id = vec![usize::MAX; n];
        let mut pos = vec![0; n];
        let mut members = Vec::new();
        for start in 0..n {
            if id[start] != usize::MAX {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while id[x] == usize::MAX {
                id[x] = members.len();
                pos[x] = cycle.len();
                cycle.push(x);
                x = images[x];
            }
            members.push(cycle);
        }
        CycleIndex { id, pos, members }
    }

    fn len_of(&self, v: usize) -> usize {
        self.members[self.id[v]].len()
    }

    /// `psi^k(v)` for signed `k`.
    fn shift(&self, v: usize, k: isize) -> usize {
        let cycle = &self.members[self.id[v]];
        let len = cycle.len() as isize;
        cycle[(self.pos[v] as isize + k).rem_euclid(len) as usize]
    }
}

/// Fixed data of one lift search for a given `(rho, psi, t)`.
struct LiftProblem<'a> {
    n: usize,
    m: usize,
    r: usize,
    p: usize,
    t: usize,
    rho: &'a SkewMorphism,
    psi: &'a SkewMorphism,
    cycles: CycleIndex,
    /// `L_k = rho^k(1)` for `k` in `0..r`.
    levels: Vec<usize>,
    /// Slot coset `x_j mod r`, indexed by `j` in `1..=p`.
    slot_coset: Vec<usize>,
    /// Slots that some `L_k` falls into.
    needed: Vec<bool>,
}

#[derive(Clone)]
struct LiftState {
    /// `x[j]` for `j` in `1..=p`.
    x: Vec<Option<usize>>,
    /// `u[c] = phi(c)` for `c` in `0..=r`.
    u: Vec<Option<usize>>,
    used: Vec<bool>,
}

impl<'a> LiftProblem<'a> {
    fn sub(&self, a: usize, b: usize) -> usize {
        (a + self.n - b % self.n) % self.n
    }

    /// Orbit value `phi^e(1)` if its slot is known.
    fn orbit_value(&self, st: &LiftState, e: usize) -> Option<usize> {
        let base = st.x[(e % self.p) + 1]?;
        Some(self.cycles.shift(base, (e / self.p) as isize))
    }

    /// `phi(v)` if the value on its coset representative is known.
    fn apply(&self, st: &LiftState, v: usize) -> Option<usize> {
        let c = v % self.r;
        let uc = st.u[c]?;
        Some((uc + self.t * (v - c)) % self.n)
    }

    fn assign_slot(&self, st: &mut LiftState, j: usize, v: usize) -> bool {
        if let Some(old) = st.x[j] {
            return old == v;
        }
        if v % self.r != self.slot_coset[j] || self.cycles.len_of(v) != self.m / self.p {
            return false;
        }
        let cycle = &self.cycles.members[self.cycles.id[v]];
        if cycle.iter().any(|&w| st.used[w]) {
            return false;
        }
        for &w in cycle {
            st.used[w] = true;
        }
        st.x[j] = Some(v);
        true
    }

    fn assign_u(&self, st: &mut LiftState, c: usize, v: usize) -> bool {
        match st.u[c] {
            Some(old) => old == v,
            None => {
                // distinct cosets must map to distinct cosets
                if c < self.r && (0..self.r).any(|d| st.u[d].is_some_and(|w| w % self.r == v % self.r)) {
                    return false;
                }
                st.u[c] = Some(v);
                true
            }
        }
    }

    /// Applies every forced deduction until nothing changes. Returns `false`
    /// on a contradiction.
    fn propagate(&self, st: &mut LiftState) -> bool {
        loop {
            let mut changed = false;
            // phi(x_j) = x_{j+1}, and phi(x_p) = psi(x_1)
            for j in 1..=self.p {
                let Some(xj) = st.x[j] else { continue };
                let next = if j < self.p { st.x[j + 1] } else { Some(self.psi.apply(1 % self.n)) };
                match (self.apply(st, xj), next) {
                    (Some(img), Some(nx)) => {
                        if img != nx {
                            return false;
                        }
                    }
                    (Some(img), None) => {
                        if !self.assign_slot(st, j + 1, img) {
                            return false;
                        }
                        changed = true;
                    }
                    (None, Some(nx)) => {
                        let c = xj % self.r;
                        let uc = self.sub(nx, self.t * (xj - c));
                        if !self.assign_u(st, c, uc) {
                            return false;
                        }
                        changed = true;
                    }
                    (None, None) => {}
                }
            }
            // u[k+1] = u[k] + phi^{L_k}(1)
            for k in 0..self.r {
                let step = self.orbit_value(st, self.levels[k]);
                match (st.u[k], st.u[k + 1], step) {
                    (Some(a), Some(b), Some(d)) => {
                        if (a + d) % self.n != b {
                            return false;
                        }
                    }
                    (Some(a), None, Some(d)) => {
                        if !self.assign_u(st, k + 1, (a + d) % self.n) {
                            return false;
                        }
                        changed = true;
                    }
                    (None, Some(b), Some(d)) => {
                        if !self.assign_u(st, k, self.sub(b, d)) {
                            return false;
                        }
                        changed = true;
                    }
                    (Some(a), Some(b), None) => {
                        let e = self.levels[k];
                        let d = self.sub(b, a);
                        if d % self.r != self.slot_coset[(e % self.p) + 1] || self.cycles.len_of(d) != self.m / self.p {
                            return false;
                        }
                        let base = self.cycles.shift(d, -((e / self.p) as isize));
                        if !self.assign_slot(st, (e % self.p) + 1, base) {
                            return false;
                        }
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn search(&self, mut st: LiftState, out: &mut Vec<SkewMorphism>) {
        if !self.propagate(&mut st) {
            return;
        }
        let open = (2..=self.p).find(|&j| self.needed[j] && st.x[j].is_none());
        match open {
            None => {
                if let Some(phi) = self.finish(&st) {
                    out.push(phi);
                }
            }
            Some(j) => {
                let kord = self.n / self.r;
                for q in 0..kord {
                    let v = self.slot_coset[j] + q * self.r;
                    if st.used[v] || self.cycles.len_of(v) != self.m / self.p {
                        continue;
                    }
                    let mut next = st.clone();
                    if self.assign_slot(&mut next, j, v) {
                        self.search(next, out);
                    }
                }
            }
        }
    }

    fn finish(&self, st: &LiftState) -> Option<SkewMorphism> {
        let (n, r) = (self.n, self.r);
        let mut u = vec![0usize; r + 1];
        for k in 0..r {
            u[k + 1] = (u[k] + self.orbit_value(st, self.levels[k])?) % n;
        }
        if st.u.iter().zip(&u).any(|(known, &v)| known.is_some_and(|w| w != v)) {
            return None;
        }
        let images: Vec<usize> = (0..n).map(|a| (u[a % r] + self.t * (a - a % r)) % n).collect();
        if !plausible(&images, r, self.t) {
            return None;
        }
        // orbit of 1 must follow the template wherever it is pinned down
        let mut v = 1 % n;
        for j in 1..=self.p {
            if st.x[j].is_some_and(|x| x != v) {
                return None;
            }
            v = images[v];
        }
        let phi = SkewMorphism::verify(n, images).ok()?;
        if phi.order() != self.m || phi.is_coset_preserving() {
            return None;
        }
        if phi.power(self.p as u64) != self.psi.images() {
            return None;
        }
        if quotient_images(&phi, 1) != self.rho.images() {
            return None;
        }
        Some(phi)
    }
}

/// All skew morphisms of `Z_n` that are not coset-preserving and whose
/// quotient with respect to `1` is `rho`. `cp_list` must contain every
/// coset-preserving skew morphism of `Z_n`.
///
/// The candidate `psi = phi^p` is filtered to maps fixing every coset of `K`
/// and acting on `K`-translates as `a + y -> psi(a) + t^p*y`: since `psi` is
/// coset-preserving with `psi(1)` in `1 + K`, and multiplying over
/// `ker psi`, which contains `K`, gives the translate rule.
pub fn lift(rho: &SkewMorphism, n: usize, cp_list: &[SkewMorphism]) -> Vec<SkewMorphism> {
    let m = rho.n();
    let r = rho.order();
    if rho.is_automorphism() || r < 2 || !n.is_multiple_of(r) || r >= n {
        return Vec::new();
    }
    let kord = n / r;
    let p = m / rho.kernel_order();
    let levels: Vec<usize> = {
        let mut v = 1 % m;
        (0..r)
            .map(|_| {
                let cur = v;
                v = rho.apply(v);
                cur
            })
            .collect()
    };

    // the cosets of phi(0), .., phi(r-1) must be all distinct and phi(r) in K
    let mut seen = vec![false; r];
    let mut acc = 0usize;
    for &e in &levels {
        if seen[acc] {
            return Vec::new();
        }
        seen[acc] = true;
        acc = (acc + rho.pi()[e]) % r;
    }
    if acc != 0 {
        return Vec::new();
    }

    let mut slot_coset = vec![0usize; p + 1];
    for (j, slot) in slot_coset.iter_mut().enumerate().skip(1) {
        *slot = rho.pi()[j - 1] % r;
    }
    let mut needed = vec![false; p + 1];
    for &e in &levels {
        needed[(e % p) + 1] = true;
    }

    let psi_order = m / p;
    let mut jobs = Vec::new();
    for psi in cp_list {
        if psi.n() != n || psi.order() != psi_order {
            continue;
        }
        if (0..n).any(|a| psi.apply(a) % r != a % r) {
            continue;
        }
        let t_psi = psi.apply(r) / r;
        if (0..n - r).any(|a| psi.apply(a + r) != (psi.apply(a) + t_psi * r) % n) {
            continue;
        }
        for t in units(kord as u64).into_iter().map(|t| t as usize) {
            if pow_mod(t as u64, p as u64, kord as u64) as usize == t_psi % kord {
                jobs.push((psi, t));
            }
        }
    }

    let mut out: Vec<SkewMorphism> = jobs
        .into_par_iter()
        .flat_map_iter(|(psi, t)| {
            let problem = LiftProblem {
                n,
                m,
                r,
                p,
                t,
                rho,
                psi,
                cycles: CycleIndex::of(psi.images()),
                levels: levels.clone(),
                slot_coset: slot_coset.clone(),
                needed: needed.clone(),
            };
            let mut found = Vec::new();
            let mut st = LiftState { x: vec![None; p + 1], u: vec![None; r + 1], used: vec![false; n] };
            st.u[0] = Some(0);
            st.u[r] = Some((t * r) % n);
            if problem.assign_slot(&mut st, 1, 1 % n) {
                problem.search(st, &mut found);
            }
            found
        })
        .collect();
    out.sort();
    out
}

/// Template describing how a lifted `phi` arises from `psi = phi^p`.
pub fn orbit_template(phi: &SkewMorphism, rho: &SkewMorphism) -> OrbitTemplate {
    let p = phi.periodicity();
    let psi = SkewMorphism::verify(phi.n(), phi.power(p as u64)).expect("phi^p is a skew morphism");
    let orbit = phi.orbit(1 % phi.n());
    let mut x = vec![None; p + 1];
    for (j, slot) in x.iter_mut().enumerate().skip(1) {
        *slot = Some(orbit[j - 1]);
    }
    let mut needed: Vec<usize> = rho.orbit(1 % rho.n());
    needed.sort_unstable();
    OrbitTemplate { m: phi.order(), p, psi, x, needed_positions: needed }
}

/// Every skew morphism of `Z_n`, by filtering all permutations fixing `0`.
pub fn brute_force(n: usize) -> Result<Vec<SkewMorphism>, EnumerateError> {
    if n == 0 {
        return Err(EnumerateError::EmptyGroup);
    }
    if n > BRUTE_FORCE_MAX {
        return Err(EnumerateError::TooLarge(n));
    }
    if n <= 2 {
        return Ok(vec![SkewMorphism::verify(n, (0..n).collect()).expect("identity is a skew morphism")]);
    }
    // split on phi(1) so workers share nothing
    let mut out: Vec<SkewMorphism> = (1..n)
        .into_par_iter()
        .flat_map_iter(|first| {
            let rest: Vec<usize> = (1..n).filter(|&v| v != first).collect();
            let mut found = Vec::new();
            let mut perm = rest;
            loop {
                let mut images = Vec::with_capacity(n);
                images.push(0);
                images.push(first);
                images.extend_from_slice(&perm);
                if let Ok(phi) = SkewMorphism::verify(n, images) {
                    found.push(phi);
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            found
        })
        .collect();
    out.sort();
    Ok(out)
}

fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let Some(i) = (0..v.len() - 1).rev().find(|&i| v[i] < v[i + 1]) else { return false };
    let j = (i + 1..v.len()).rev().find(|&j| v[j] > v[i]).expect("a larger element exists");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}
