//! Enumeration of valid assignments of `A_2n` by fixed-weight bit masks.
//!
//! A valid assignment of the equal-angle vertex has exactly `n+1` mountains
//! (majority mountain) or `n-1` mountains (majority valley), so each class is
//! the set of `2n`-bit masks of one popcount. Masks of a given weight are
//! walked in ascending numeric order with Gosper's next-permutation step;
//! parallel callers split the rank range and unrank each chunk start with the
//! combinatorial number system, whose order agrees with numeric order.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::mv::{check_degree, Majority, MvAssignment};

/// Which Maekawa classes to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MajorityFilter {
    Mountain,
    Valley,
    #[default]
    Both,
}

/// `C(n, k)` in 64 bits, saturating on overflow. Every binomial with
/// `n <= 64` fits.
pub fn binomial_u64(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k as u128 {
        acc = acc * (n as u128 - k as u128 + i) / i;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Mask of weight `k` whose rank among all `k`-subsets of `0..width` in
/// ascending numeric order is `rank`.
pub fn unrank_mask(width: u32, k: u32, mut rank: u64) -> u64 {
    debug_assert!(rank < binomial_u64(width as u64, k as u64));
    let mut mask = 0u64;
    let mut top = width;
    for i in (1..=k).rev() {
        // Largest c < top with C(c, i) <= rank.
        let mut c = top - 1;
        while binomial_u64(c as u64, i as u64) > rank {
            c -= 1;
        }
        mask |= 1 << c;
        rank -= binomial_u64(c as u64, i as u64);
        top = c;
    }
    mask
}

/// Inverse of [`unrank_mask`].
pub fn rank_mask(mask: u64) -> u64 {
    let mut rank = 0;
    let mut i = 0u64;
    let mut m = mask;
    while m != 0 {
        let c = m.trailing_zeros() as u64;
        i += 1;
        rank += binomial_u64(c, i);
        m &= m - 1;
    }
    rank
}

/// Next larger mask with the same popcount.
#[inline]
fn next_same_weight(x: u64) -> u64 {
    let x = x as u128;
    let lowest = x & x.wrapping_neg();
    let ripple = x + lowest;
    let ones = ((x ^ ripple) >> 2) / lowest;
    (ripple | ones) as u64
}

/// Ascending iterator over a contiguous rank range of weight-`k` masks.
#[derive(Debug, Clone)]
pub struct WeightMasks {
    next: u64,
    remaining: u64,
}

impl WeightMasks {
    pub fn all(width: u32, k: u32) -> Self {
        Self::range(width, k, 0, binomial_u64(width as u64, k as u64))
    }

    pub fn range(width: u32, k: u32, start: u64, len: u64) -> Self {
        let next = if len == 0 { 0 } else { unrank_mask(width, k, start) };
        Self {
            next,
            remaining: len,
        }
    }
}

impl Iterator for WeightMasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.remaining == 0 {
            return None;
        }
        let current = self.next;
        self.remaining -= 1;
        if self.remaining > 0 {
            self.next = next_same_weight(current);
        }
        Some(current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining as usize, Some(self.remaining as usize))
    }
}

impl ExactSizeIterator for WeightMasks {}

/// Number of mountains held by a valid assignment of the given class.
pub fn class_weight(n: usize, majority: Majority) -> usize {
    match majority {
        Majority::Mountain => n + 1,
        Majority::Valley => n - 1,
    }
}

fn classes(filter: MajorityFilter) -> &'static [Majority] {
    match filter {
        MajorityFilter::Mountain => &[Majority::Mountain],
        MajorityFilter::Valley => &[Majority::Valley],
        MajorityFilter::Both => &[Majority::Mountain, Majority::Valley],
    }
}

/// All valid assignments of `A_2n` in the requested classes, ascending by
/// bit-packed value.
pub fn enumerate_valid(n: usize, filter: MajorityFilter) -> Result<Vec<MvAssignment>> {
    let degree = 2 * n;
    check_degree(degree)?;
    let mut out = Vec::new();
    for &majority in classes(filter) {
        let k = class_weight(n, majority) as u32;
        out.extend(
            WeightMasks::all(degree as u32, k).map(|b| MvAssignment::from_bits_unchecked(b, degree)),
        );
    }
    if filter == MajorityFilter::Both {
        out.sort_unstable();
    }
    Ok(out)
}

const CHUNK: u64 = 1 << 15;

/// Parallel map-reduce over every valid assignment of `A_2n` in one class.
/// The reduction must be associative and commutative for the result to be
/// independent of scheduling.
pub fn par_fold_class<T, F, R>(n: usize, majority: Majority, identity: T, fold: F, reduce: R) -> Result<T>
where
    T: Send + Sync + Clone,
    F: Fn(T, MvAssignment) -> T + Send + Sync,
    R: Fn(T, T) -> T + Send + Sync,
{
    let degree = 2 * n;
    check_degree(degree)?;
    let k = class_weight(n, majority) as u32;
    let total = binomial_u64(degree as u64, k as u64);
    let chunks = total.div_ceil(CHUNK);
    let result = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = c * CHUNK;
            let len = CHUNK.min(total - start);
            WeightMasks::range(degree as u32, k, start, len)
                .map(|b| MvAssignment::from_bits_unchecked(b, degree))
                .fold(identity.clone(), &fold)
        })
        .reduce(|| identity.clone(), &reduce);
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial_u64(4, 1), 4);
        assert_eq!(binomial_u64(6, 2), 15);
        assert_eq!(binomial_u64(26, 12), 9_657_700);
        assert_eq!(binomial_u64(3, 5), 0);
        assert_eq!(binomial_u64(64, 32), 1_832_624_140_942_590_534);
    }

    #[test]
    fn gosper_walk_matches_filtered_masks() {
        for width in 0..=10u32 {
            for k in 0..=width {
                let walked: Vec<u64> = WeightMasks::all(width, k).collect();
                let filtered: Vec<u64> = (0..1u64 << width)
                    .filter(|m| m.count_ones() == k)
                    .collect();
                assert_eq!(walked, filtered, "width {width} k {k}");
            }
        }
    }

    #[test]
    fn rank_unrank_roundtrip() {
        for (rank, mask) in WeightMasks::all(12, 5).enumerate() {
            assert_eq!(unrank_mask(12, 5, rank as u64), mask);
            assert_eq!(rank_mask(mask), rank as u64);
        }
    }

    #[test]
    fn ranges_tile_the_full_walk() {
        let full: Vec<u64> = WeightMasks::all(14, 6).collect();
        let mut tiled = Vec::new();
        let mut start = 0;
        while start < full.len() as u64 {
            let len = 97.min(full.len() as u64 - start);
            tiled.extend(WeightMasks::range(14, 6, start, len));
            start += len;
        }
        assert_eq!(tiled, full);
    }

    #[test]
    fn enumerate_counts() {
        assert_eq!(enumerate_valid(2, MajorityFilter::Both).unwrap().len(), 8);
        assert_eq!(enumerate_valid(3, MajorityFilter::Valley).unwrap().len(), 15);
        assert_eq!(enumerate_valid(4, MajorityFilter::Both).unwrap().len(), 112);
        let one = enumerate_valid(1, MajorityFilter::Both).unwrap();
        let strings: Vec<String> = one.iter().map(|m| m.to_string()).collect();
        assert_eq!(strings, ["VV", "MM"]);
    }

    #[test]
    fn enumeration_is_ascending_and_valid() {
        let all = enumerate_valid(5, MajorityFilter::Both).unwrap();
        assert!(all.windows(2).all(|w| w[0].bits() < w[1].bits()));
        assert!(all.iter().all(|m| m.is_valid_uniform()));
        let valley = enumerate_valid(5, MajorityFilter::Valley).unwrap();
        assert!(valley.iter().all(|m| m.maekawa_sum() == -2));
    }

    #[test]
    fn parallel_fold_sees_every_assignment_once() {
        let count = par_fold_class(7, Majority::Mountain, 0u64, |a, _| a + 1, |a, b| a + b).unwrap();
        assert_eq!(count, binomial_u64(14, 8));
        let xor = par_fold_class(7, Majority::Valley, 0u64, |a, m| a ^ m.bits(), |a, b| a ^ b).unwrap();
        let serial = WeightMasks::all(14, 6).fold(0, |a, m| a ^ m);
        assert_eq!(xor, serial);
    }
}
