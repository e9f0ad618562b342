//! Reference data and oracles shared by the integration tests. The oracles
//! here deliberately avoid the library's verification code.

#![allow(dead_code)]

/// Published census rows `(n, proper, automorphisms, classes)` for every
/// `n <= 160` admitting a proper skew morphism.
pub const TABLE_ONE: &[(usize, usize, usize, usize)] = &[
    (6, 2, 2, 1), (8, 2, 4, 1), (9, 4, 6, 2), (10, 4, 4, 1),
    (12, 4, 4, 2), (14, 6, 6, 1), (16, 12, 8, 4), (18, 24, 6, 6),
    (20, 16, 8, 3), (21, 12, 12, 1), (22, 10, 10, 1), (24, 16, 8, 7),
    (25, 48, 20, 12), (26, 12, 12, 1), (27, 64, 18, 20), (28, 12, 12, 2),
    (30, 24, 8, 7), (32, 60, 16, 14), (34, 16, 16, 1), (36, 48, 12, 12),
    (38, 18, 18, 1), (39, 24, 24, 1), (40, 44, 16, 9), (42, 52, 12, 7),
    (44, 20, 20, 2), (45, 16, 24, 8), (46, 22, 22, 1), (48, 64, 16, 20),
    (49, 180, 42, 30), (50, 152, 20, 18), (52, 48, 24, 3), (54, 246, 18, 33),
    (55, 40, 40, 1), (56, 48, 24, 11), (57, 36, 36, 1), (58, 28, 28, 1),
    (60, 80, 16, 17), (62, 30, 30, 1), (63, 44, 36, 7), (64, 268, 32, 42),
    (66, 60, 20, 13), (68, 64, 32, 3), (70, 72, 24, 11), (72, 156, 24, 36),
    (74, 36, 36, 1), (75, 96, 40, 24), (76, 36, 36, 2), (78, 104, 24, 9),
    (80, 152, 32, 26), (81, 676, 54, 110), (82, 40, 40, 1), (84, 104, 24, 14),
    (86, 42, 42, 1), (88, 80, 40, 15), (90, 216, 24, 36), (92, 44, 44, 2),
    (93, 60, 60, 1), (94, 46, 46, 1), (96, 272, 32, 58), (98, 480, 42, 38),
    (99, 40, 60, 20), (100, 512, 40, 42), (102, 96, 32, 19), (104, 132, 48, 13),
    (105, 48, 48, 4), (106, 52, 52, 1), (108, 492, 36, 66), (110, 168, 40, 9),
    (111, 72, 72, 1), (112, 192, 48, 36), (114, 148, 36, 7), (116, 112, 56, 3),
    (117, 88, 72, 11), (118, 58, 58, 1), (120, 208, 32, 43), (121, 900, 110, 90),
    (122, 60, 60, 1), (124, 60, 60, 2), (125, 1568, 100, 152), (126, 348, 36, 34),
    (128, 1132, 64, 114), (129, 84, 84, 1), (130, 144, 48, 17), (132, 120, 40, 26),
    (134, 66, 66, 1), (135, 256, 72, 80), (136, 228, 64, 10), (138, 132, 44, 25),
    (140, 240, 48, 29), (142, 70, 70, 1), (144, 552, 48, 96), (146, 72, 72, 1),
    (147, 960, 84, 68), (148, 144, 72, 3), (150, 648, 40, 74), (152, 144, 72, 23),
    (153, 64, 96, 32), (154, 180, 60, 17), (155, 120, 120, 1), (156, 352, 48, 22),
    (158, 78, 78, 1), (160, 616, 64, 84),
];

pub fn table_row(n: usize) -> Option<(usize, usize, usize)> {
    TABLE_ONE.iter().find(|r| r.0 == n).map(|&(_, p, a, c)| (p, a, c))
}

/// `e`-fold composition, by repeated application.
pub fn naive_power(images: &[usize], e: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..images.len()).collect();
    for _ in 0..e {
        out = out.iter().map(|&x| images[x]).collect();
    }
    out
}

pub fn naive_order(images: &[usize]) -> usize {
    let id: Vec<usize> = (0..images.len()).collect();
    let mut cur = images.to_vec();
    let mut k = 1;
    while cur != id {
        cur = cur.iter().map(|&x| images[x]).collect();
        k += 1;
    }
    k
}

/// Power function by direct search over `phi^1 .. phi^ord`, or the first `a`
/// for which no exponent works. `images` must be a permutation fixing 0.
pub fn naive_power_function(images: &[usize]) -> Result<Vec<usize>, usize> {
    let n = images.len();
    let ord = naive_order(images);
    let powers: Vec<Vec<usize>> = (0..=ord).map(|e| naive_power(images, e)).collect();
    let mut pi = Vec::with_capacity(n);
    for a in 0..n {
        let found = (1..=ord).find(|&i| (0..n).all(|x| images[(a + x) % n] == (images[a] + powers[i][x]) % n));
        match found {
            Some(i) => pi.push(i),
            None => return Err(a),
        }
    }
    Ok(pi)
}

pub fn naive_is_skew(images: &[usize]) -> bool {
    let n = images.len();
    let mut seen = vec![false; n];
    let perm = images.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true));
    perm && images[0] == 0 && naive_power_function(images).is_ok()
}

/// Every permutation of `Z_n` fixing 0 that satisfies the skew identity,
/// found by plain recursion over image choices.
pub fn naive_all_skew(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            if naive_is_skew(prefix) {
                out.push(prefix.clone());
            }
            return;
        }
        for v in 1..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(n, prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; n];
    used[0] = true;
    rec(n, &mut vec![0], &mut used, &mut out);
    out.sort();
    out
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Lexicographically least conjugate under `a -> t*a`, by direct search.
pub fn naive_canonical(images: &[usize]) -> Vec<usize> {
    let n = images.len();
    (1..n.max(2))
        .filter(|&t| gcd(t, n) == 1)
        .map(|t| {
            let t_inv = (1..n.max(2)).find(|&u| (t * u) % n == 1 % n).unwrap();
            (0..n).map(|a| (t * images[(t_inv * a) % n]) % n).collect::<Vec<usize>>()
        })
        .min()
        .unwrap_or_else(|| images.to_vec())
}
