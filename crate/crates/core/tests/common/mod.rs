//! Reference implementations for the test suites. Each works from `±1`
//! vectors and first principles and must not call into the code it checks.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

use ofg_core::MvAssignment;

/// Reference degree histograms of OFG(A_2n), n = 2..=6.
pub const DEGREE_TABLE: [(usize, &[(usize, u64)]); 5] = [
    (2, &[(4, 8)]),
    (3, &[(5, 12), (6, 18)]),
    (4, &[(6, 16), (7, 64), (8, 32)]),
    (5, &[(7, 20), (8, 150), (9, 200), (10, 50)]),
    (6, &[(8, 24), (9, 288), (10, 720), (11, 480), (12, 72)]),
];

pub const EDGE_SEQUENCE: &str =
    "2, 16, 84, 400, 1820, 8064, 35112, 151008, 643500, 2722720, 11454872, 47969376, 200107544";

pub const GOLDEN: &str = "45,15,60,85,75,80";

/// Binomial coefficient from Pascal's rule.
pub fn pascal(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut row = vec![BigUint::from(1u32)];
    for _ in 0..n {
        let mut next = vec![BigUint::from(1u32); row.len() + 1];
        for j in 1..row.len() {
            next[j] = &row[j - 1] + &row[j];
        }
        row = next;
    }
    row[k].clone()
}

/// `±1` vector for a bitmask, crease 1 at bit 0.
pub fn values_of(mask: u64, degree: usize) -> Vec<i8> {
    (0..degree)
        .map(|i| if mask >> i & 1 == 1 { 1 } else { -1 })
        .collect()
}

pub fn mv_of(values: &[i8]) -> MvAssignment {
    MvAssignment::from_values(values).unwrap()
}

/// Maekawa: mountains and valleys differ by exactly two.
pub fn maekawa(values: &[i8]) -> bool {
    let s: i32 = values.iter().map(|&v| v as i32).sum();
    s.abs() == 2
}

/// Flip 1-based face `f`, which lies between creases `f` and `f+1`.
pub fn flip(values: &[i8], f: usize) -> Vec<i8> {
    let d = values.len();
    let mut out = values.to_vec();
    out[f - 1] = -out[f - 1];
    out[f % d] = -out[f % d];
    out
}

/// Every valid assignment of A_2n by scanning all `2^(2n)` masks.
pub fn uniform_vertices(n: usize) -> Vec<Vec<i8>> {
    let d = 2 * n;
    (0..1u64 << d)
        .map(|m| values_of(m, d))
        .filter(|v| maekawa(v))
        .collect()
}

/// Edges `(lo, hi, face)` of OFG(A_2n): a face flip is an edge exactly when
/// the result still satisfies Maekawa.
pub fn uniform_edges(n: usize) -> BTreeSet<(Vec<i8>, Vec<i8>, usize)> {
    let mut edges = BTreeSet::new();
    for v in uniform_vertices(n) {
        for f in 1..=2 * n {
            let w = flip(&v, f);
            if maekawa(&w) {
                let (a, b) = if v < w { (v.clone(), w) } else { (w, v.clone()) };
                edges.insert((a, b, f));
            }
        }
    }
    edges
}

/// Breadth-first eccentricities over an adjacency map.
pub fn diameter_of(adj: &HashMap<Vec<i8>, Vec<Vec<i8>>>) -> (bool, usize) {
    let mut connected = true;
    let mut best = 0;
    for src in adj.keys() {
        let mut dist: HashMap<&Vec<i8>, usize> = HashMap::new();
        dist.insert(src, 0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            for w in &adj[u] {
                if !dist.contains_key(w) {
                    dist.insert(w, du + 1);
                    queue.push_back(w);
                }
            }
        }
        connected &= dist.len() == adj.len();
        best = best.max(*dist.values().max().unwrap());
    }
    (connected, best)
}

pub fn uniform_adjacency(n: usize) -> HashMap<Vec<i8>, Vec<Vec<i8>>> {
    let mut adj: HashMap<Vec<i8>, Vec<Vec<i8>>> = HashMap::new();
    for v in uniform_vertices(n) {
        adj.entry(v.clone()).or_default();
    }
    for (a, b, _) in uniform_edges(n) {
        adj.get_mut(&a).unwrap().push(b.clone());
        adj.get_mut(&b).unwrap().push(a);
    }
    adj
}

/// Degree histogram of OFG(A_2n) from the flip oracle, parallel edges
/// counted.
pub fn uniform_histogram(n: usize) -> BTreeMap<usize, u64> {
    let mut hist = BTreeMap::new();
    for v in uniform_vertices(n) {
        let k = (1..=2 * n).filter(|&f| maekawa(&flip(&v, f))).count();
        *hist.entry(k).or_insert(0) += 1;
    }
    hist
}

/// Flat-foldability by exhaustive crimp search.
///
/// A sector no larger than either neighbour may be crimped when its two
/// creases disagree; the two creases disappear and the three sectors merge.
/// Two creases remain at the end and must agree.
pub fn crimp_valid(angles: &[BigRational], creases: &[i8]) -> bool {
    let d = angles.len();
    if d == 2 {
        return angles[0] == angles[1] && creases[0] == creases[1];
    }
    for i in 0..d {
        let prev = (i + d - 1) % d;
        let next = (i + 1) % d;
        if angles[i] > angles[prev] || angles[i] > angles[next] {
            continue;
        }
        // Sector i spans creases i and i+1.
        if creases[i] == creases[next] {
            continue;
        }
        let merged = &angles[prev] - &angles[i] + &angles[next];
        let mut a = Vec::with_capacity(d - 2);
        let mut c = Vec::with_capacity(d - 2);
        for j in 0..d {
            if j == i || j == next {
                continue;
            }
            if j == prev {
                a.push(merged.clone());
            } else {
                a.push(angles[j].clone());
            }
            c.push(creases[j]);
        }
        // Kept sectors and creases stay in cyclic order; the merged sector
        // takes the place of `prev`, between the flanking kept creases.
        debug_assert!(a.iter().all(|x| x.is_positive()));
        if crimp_valid(&a, &c) {
            return true;
        }
    }
    false
}

/// Random flat-foldable angle list of the given even degree, in whole
/// degrees drawn from a coarse grid so that ties are common.
pub fn random_pattern(rng: &mut impl Rng, degree: usize) -> String {
    let n = degree / 2;
    let grid = if rng.gen_bool(0.5) { 5 } else { 15 };
    let total = 180 / grid;
    let mut halves = Vec::new();
    for _ in 0..2 {
        // Composition of `total` into n positive parts.
        let mut cuts: BTreeSet<usize> = BTreeSet::new();
        while cuts.len() < n - 1 {
            cuts.insert(rng.gen_range(1..total));
        }
        let mut parts = Vec::new();
        let mut last = 0;
        for c in cuts.into_iter().chain(std::iter::once(total)) {
            parts.push((c - last) * grid);
            last = c;
        }
        halves.push(parts);
    }
    let mut angles = Vec::new();
    for (odd, even) in halves[0].iter().zip(&halves[1]) {
        angles.push(*odd);
        angles.push(*even);
    }
    angles.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",")
}
