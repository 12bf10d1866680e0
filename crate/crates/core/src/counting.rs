//! Closed-form counts for `OFG(A_2n)` and the brute-force counts they are
//! checked against.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::enumerate::par_fold_class;
use crate::error::{OfgError, Result};
use crate::mv::{Majority, MvAssignment};

/// Exact `C(n, k)` by the multiplicative formula, reducing by the running
/// gcd before each multiplication.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        let factor = BigUint::from(n - k + i);
        let divisor = BigUint::from(i);
        let g = acc.gcd(&divisor);
        let acc_reduced = &acc / &g;
        let divisor = divisor / &g;
        // acc * factor is divisible by i; after removing g, divisor | factor.
        let (q, r) = factor.div_rem(&divisor);
        debug_assert!(r.is_zero());
        acc = acc_reduced * q;
    }
    acc
}

fn exact_div(num: BigUint, den: BigUint, what: &str) -> Result<BigUint> {
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(OfgError::Consistency(format!(
            "{what}: division by {den} leaves remainder {r}"
        )));
    }
    Ok(q)
}

/// `2 * C(2n, n-1)` vertices.
pub fn vertex_count_formula(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let n = n as u64;
    binomial(2 * n, n - 1) * 2u32
}

/// `(n+1)(3n-2) / (2n-1) * C(2n, n-1)` edges.
pub fn edge_count_formula(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(OfgError::UnsupportedDegree(0));
    }
    let n = n as u64;
    let num = BigUint::from(n + 1) * BigUint::from(3 * n - 2) * binomial(2 * n, n - 1);
    exact_div(num, BigUint::from(2 * n - 1), "edge count")
}

/// Number of vertices of degree `k`:
/// `4n / (n+1) * C(n+1, k-n-1) * C(n-2, k-n-2)` for `n+2 <= k <= 2n`, zero
/// elsewhere. Defined for `n >= 2`.
pub fn degree_count_formula(n: usize, k: usize) -> Result<BigUint> {
    if n < 2 {
        return Err(OfgError::UnsupportedDegree(2 * n));
    }
    if k < n + 2 || k > 2 * n {
        return Ok(BigUint::zero());
    }
    let (n, k) = (n as u64, k as u64);
    let num = BigUint::from(4 * n) * binomial(n + 1, k - n - 1) * binomial(n - 2, k - n - 2);
    exact_div(num, BigUint::from(n + 1), "degree count")
}

/// Degree histogram predicted by [`degree_count_formula`] (zero entries
/// omitted).
pub fn degree_histogram_formula(n: usize) -> Result<BTreeMap<usize, BigUint>> {
    let mut out = BTreeMap::new();
    for k in (n + 2)..=(2 * n) {
        let c = degree_count_formula(n, k)?;
        if !c.is_zero() {
            out.insert(k, c);
        }
    }
    Ok(out)
}

/// Degree of a valid assignment in `OFG(A_2n)`: `2n` minus the cyclically
/// adjacent pairs of minority creases.
#[inline]
pub fn uniform_degree(mv: &MvAssignment, majority: Majority) -> usize {
    mv.degree() - mv.blocked_faces_mask(majority).count_ones() as usize
}

fn degree_sum_class(n: usize, majority: Majority) -> Result<u128> {
    par_fold_class(
        n,
        majority,
        0u128,
        move |acc, mv| acc + uniform_degree(&mv, majority) as u128,
        |a, b| a + b,
    )
}

/// Edge count by summing every vertex degree and halving.
pub fn edge_count_brute(n: usize) -> Result<u128> {
    let sum = degree_sum_class(n, Majority::Mountain)? + degree_sum_class(n, Majority::Valley)?;
    if sum % 2 != 0 {
        return Err(OfgError::Consistency(format!(
            "degree sum {sum} is odd"
        )));
    }
    Ok(sum / 2)
}

/// Vertex-degree histogram of `OFG(A_2n)` by enumeration.
pub fn degree_histogram_brute(n: usize) -> Result<BTreeMap<usize, u64>> {
    let degree = 2 * n;
    let mut total = vec![0u64; degree + 1];
    for majority in [Majority::Mountain, Majority::Valley] {
        let counts = par_fold_class(
            n,
            majority,
            vec![0u64; degree + 1],
            move |mut acc, mv| {
                acc[uniform_degree(&mv, majority)] += 1;
                acc
            },
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )?;
        total.iter_mut().zip(counts).for_each(|(x, y)| *x += y);
    }
    Ok(total
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect())
}

/// The edge-count sequence for `n = 1..=max_n` from the closed form.
pub fn edge_sequence(max_n: usize) -> Result<Vec<BigUint>> {
    (1..=max_n).map(edge_count_formula).collect()
}
