//! Mountain-valley assignments on a single vertex, plus the crease and face
//! subsets used to compare two assignments.
//!
//! Creases `e1..e2n` and faces `a1..a2n` are 1-based in every public
//! signature. Face `ak` lies between creases `ek` and `e(k+1)`, cyclically,
//! so the last face borders the last and the first crease. Internally an
//! assignment is a bit mask: bit `i` holds crease `e(i+1)`, set for mountain.

use std::fmt;
use std::marker::PhantomData;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{OfgError, Result};

/// Largest vertex degree representable by the bit-packed assignment.
pub const MAX_DEGREE: usize = 64;

/// Mask with the low `degree` bits set.
#[inline]
pub(crate) fn full_mask(degree: usize) -> u64 {
    if degree >= 64 {
        u64::MAX
    } else {
        (1u64 << degree) - 1
    }
}

/// Bits of the two creases bordering 0-based face `face`.
#[inline]
pub(crate) fn face_mask(degree: usize, face: usize) -> u64 {
    (1u64 << face) | (1u64 << ((face + 1) % degree))
}

pub(crate) fn check_degree(degree: usize) -> Result<()> {
    if degree < 2 || !degree.is_multiple_of(2) || degree > MAX_DEGREE {
        return Err(OfgError::UnsupportedDegree(degree));
    }
    Ok(())
}

/// Sign of the Maekawa sum of a valid assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Majority {
    Mountain,
    Valley,
}

impl Majority {
    /// The crease value (+1 or -1) held by the majority.
    pub fn value(self) -> i8 {
        match self {
            Majority::Mountain => 1,
            Majority::Valley => -1,
        }
    }
}

/// A complete mountain-valley assignment of a degree-`2n` vertex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MvAssignment {
    // Field order gives ordering by degree first, then bit-packed value.
    degree: u8,
    bits: u64,
}

impl MvAssignment {
    /// Build from a bit mask (bit 0 = crease e1, set = mountain).
    pub fn from_bits(bits: u64, degree: usize) -> Result<Self> {
        check_degree(degree)?;
        if bits & !full_mask(degree) != 0 {
            return Err(OfgError::InvalidMvString {
                input: format!("{bits:#x}"),
                reason: format!("bits set beyond degree {degree}"),
            });
        }
        Ok(Self::from_bits_unchecked(bits, degree))
    }

    #[inline]
    pub(crate) fn from_bits_unchecked(bits: u64, degree: usize) -> Self {
        debug_assert!((2..=MAX_DEGREE).contains(&degree) && degree.is_multiple_of(2));
        debug_assert_eq!(bits & !full_mask(degree), 0);
        Self {
            degree: degree as u8,
            bits,
        }
    }

    /// Build from crease values, each `+1` (mountain) or `-1` (valley).
    pub fn from_values(values: &[i8]) -> Result<Self> {
        check_degree(values.len())?;
        let mut bits = 0u64;
        for (i, &v) in values.iter().enumerate() {
            match v {
                1 => bits |= 1 << i,
                -1 => {}
                other => {
                    return Err(OfgError::InvalidMvString {
                        input: format!("{values:?}"),
                        reason: format!("entry {} is {other}, expected +1 or -1", i + 1),
                    })
                }
            }
        }
        Ok(Self::from_bits_unchecked(bits, values.len()))
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    /// Half the degree, the `n` of `A_2n`.
    pub fn n(&self) -> usize {
        self.degree() / 2
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Value of crease `e_index` (1-based): `+1` mountain, `-1` valley.
    pub fn value(&self, index: usize) -> Result<i8> {
        self.check_index(index)?;
        Ok(self.value0(index - 1))
    }

    #[inline]
    pub(crate) fn value0(&self, i: usize) -> i8 {
        if self.bits >> i & 1 == 1 {
            1
        } else {
            -1
        }
    }

    pub fn values(&self) -> Vec<i8> {
        (0..self.degree()).map(|i| self.value0(i)).collect()
    }

    pub fn mountains(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn valleys(&self) -> usize {
        self.degree() - self.mountains()
    }

    /// Mountains minus valleys.
    pub fn maekawa_sum(&self) -> i32 {
        2 * self.mountains() as i32 - self.degree() as i32
    }

    /// Validity on the equal-angle vertex: the Maekawa sum is exactly ±2.
    pub fn is_valid_uniform(&self) -> bool {
        self.maekawa_sum().abs() == 2
    }

    /// Majority orientation, or `None` unless the sum is ±2.
    pub fn majority(&self) -> Option<Majority> {
        match self.maekawa_sum() {
            2 => Some(Majority::Mountain),
            -2 => Some(Majority::Valley),
            _ => None,
        }
    }

    /// Negate the two creases bordering face `a_face` (1-based). Total:
    /// the result may be invalid.
    pub fn flip_face(&self, face: usize) -> Result<Self> {
        self.check_index(face)?;
        Ok(self.flip0(face - 1))
    }

    #[inline]
    pub(crate) fn flip0(&self, face: usize) -> Self {
        Self {
            degree: self.degree,
            bits: self.bits ^ face_mask(self.degree(), face),
        }
    }

    /// Flip every face of `faces` once. Order is irrelevant because flips
    /// commute.
    pub fn flip_faces(&self, faces: &FaceSet) -> Result<Self> {
        self.check_same_degree(faces.degree())?;
        let mut bits = self.bits;
        for f in faces.iter0() {
            bits ^= face_mask(self.degree(), f);
        }
        Ok(Self::from_bits_unchecked(bits, self.degree()))
    }

    /// Whether flipping face `a_face` keeps a valid assignment valid on the
    /// equal-angle vertex. A face is blocked exactly when its two creases
    /// agree with each other and disagree with the majority.
    pub fn is_flippable(&self, face: usize) -> Result<bool> {
        self.check_index(face)?;
        let majority = self
            .majority()
            .ok_or_else(|| OfgError::InvalidAssignment(self.to_string()))?;
        Ok(self.is_flippable0(face - 1, majority))
    }

    #[inline]
    pub(crate) fn is_flippable0(&self, face: usize, majority: Majority) -> bool {
        let a = self.value0(face);
        let b = self.value0((face + 1) % self.degree());
        !(a == b && a != majority.value())
    }

    /// Mask of faces blocked under a valid assignment.
    #[inline]
    pub(crate) fn blocked_faces_mask(&self, majority: Majority) -> u64 {
        let d = self.degree();
        let minority = match majority {
            Majority::Mountain => !self.bits & full_mask(d),
            Majority::Valley => self.bits,
        };
        // bit i of `next` is crease i+1 (cyclic).
        let next = (minority >> 1) | ((minority & 1) << (d - 1));
        minority & next
    }

    /// Mountain/valley swap of every crease.
    pub fn complement(&self) -> Self {
        Self {
            degree: self.degree,
            bits: !self.bits & full_mask(self.degree()),
        }
    }

    /// Relabel so crease `e_i` moves to `e_(i+r)`.
    pub fn rotate(&self, r: usize) -> Self {
        let d = self.degree();
        let r = r % d;
        if r == 0 {
            return *self;
        }
        let bits = ((self.bits << r) | (self.bits >> (d - r))) & full_mask(d);
        Self::from_bits_unchecked(bits, d)
    }

    /// Mirror the cyclic order: crease `e_i` moves to `e_(2n+2-i)`, so `e1`
    /// stays fixed.
    pub fn reflect(&self) -> Self {
        let d = self.degree();
        let mut bits = 0u64;
        for i in 0..d {
            if self.bits >> i & 1 == 1 {
                bits |= 1 << ((d - i) % d);
            }
        }
        Self::from_bits_unchecked(bits, d)
    }

    /// Creases where `self` and `other` disagree.
    pub fn diff_set(&self, other: &Self) -> Result<CreaseSet> {
        self.check_same_degree(other.degree())?;
        Ok(CreaseSet::from_mask_unchecked(
            self.bits ^ other.bits,
            self.degree(),
        ))
    }

    /// Faces lying between consecutive pairs of disagreeing creases.
    ///
    /// With disagreements at `e_i1 < e_i2 < ... < e_i2k`, returns the union of
    /// `a_i1..a_(i2-1)`, `a_i3..a_(i4-1)` and so on. Flipping these faces (or
    /// the complementary faces) turns `self` into `other`.
    pub fn between_faces(&self, other: &Self) -> Result<FaceSet> {
        let diff = self.diff_set(other)?;
        let creases: Vec<usize> = diff.iter0().collect();
        if !creases.len().is_multiple_of(2) {
            return Err(OfgError::OddDifference(creases.len()));
        }
        let mut mask = 0u64;
        for pair in creases.chunks_exact(2) {
            for face in pair[0]..pair[1] {
                mask |= 1 << face;
            }
        }
        Ok(FaceSet::from_mask_unchecked(mask, self.degree()))
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index == 0 || index > self.degree() {
            return Err(OfgError::IndexOutOfRange {
                index,
                degree: self.degree(),
            });
        }
        Ok(())
    }

    fn check_same_degree(&self, other: usize) -> Result<()> {
        if self.degree() != other {
            return Err(OfgError::LengthMismatch {
                left: self.degree(),
                right: other,
            });
        }
        Ok(())
    }
}

impl fmt::Display for MvAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.degree())
            .map(|i| if self.bits >> i & 1 == 1 { 'M' } else { 'V' })
            .collect();
        f.write_str(&s)
    }
}

impl fmt::Debug for MvAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MvAssignment({self})")
    }
}

impl FromStr for MvAssignment {
    type Err = OfgError;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: String| OfgError::InvalidMvString {
            input: s.to_string(),
            reason,
        };
        let len = s.chars().count();
        if len < 2 || !len.is_multiple_of(2) || len > MAX_DEGREE {
            return Err(bad(format!(
                "length {len} must be even and between 2 and {MAX_DEGREE}"
            )));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                'M' => bits |= 1 << i,
                'V' => {}
                other => return Err(bad(format!("unexpected character {other:?}"))),
            }
        }
        Ok(Self::from_bits_unchecked(bits, len))
    }
}

impl Serialize for MvAssignment {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MvAssignment {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Marker for what an [`IndexSet`] indexes.
pub trait SetKind {
    const PREFIX: &'static str;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Crease {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Face {}

impl SetKind for Crease {
    const PREFIX: &'static str = "e";
}

impl SetKind for Face {
    const PREFIX: &'static str = "a";
}

/// A subset of `{1, ..., degree}` of creases or faces.
pub struct IndexSet<K> {
    mask: u64,
    degree: u8,
    _kind: PhantomData<K>,
}

pub type CreaseSet = IndexSet<Crease>;
pub type FaceSet = IndexSet<Face>;

impl<K> Clone for IndexSet<K> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<K> Copy for IndexSet<K> {}

impl<K> PartialEq for IndexSet<K> {
    fn eq(&self, other: &Self) -> bool {
        self.mask == other.mask && self.degree == other.degree
    }
}

impl<K> Eq for IndexSet<K> {}

impl<K> std::hash::Hash for IndexSet<K> {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mask.hash(state);
        self.degree.hash(state);
    }
}

impl<K: SetKind> IndexSet<K> {
    pub fn empty(degree: usize) -> Result<Self> {
        check_degree(degree)?;
        Ok(Self::from_mask_unchecked(0, degree))
    }

    /// Build from 1-based member indices.
    pub fn from_indices(degree: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        check_degree(degree)?;
        let mut mask = 0u64;
        for i in indices {
            if i == 0 || i > degree {
                return Err(OfgError::IndexOutOfRange { index: i, degree });
            }
            mask |= 1 << (i - 1);
        }
        Ok(Self::from_mask_unchecked(mask, degree))
    }

    pub(crate) fn from_mask_unchecked(mask: u64, degree: usize) -> Self {
        Self {
            mask,
            degree: degree as u8,
            _kind: PhantomData,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree as usize
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, index: usize) -> bool {
        index >= 1 && index <= self.degree() && self.mask >> (index - 1) & 1 == 1
    }

    /// Members, 1-based, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.iter0().map(|i| i + 1)
    }

    pub(crate) fn iter0(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.degree()).filter(move |&i| self.mask >> i & 1 == 1)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn complement(&self) -> Self {
        Self::from_mask_unchecked(!self.mask & full_mask(self.degree()), self.degree())
    }

    pub fn remove(&mut self, index: usize) -> bool {
        let present = self.contains(index);
        if present {
            self.mask &= !(1 << (index - 1));
        }
        present
    }
}

impl<K: SetKind> fmt::Display for IndexSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}{}", K::PREFIX, i)?;
        }
        f.write_str("}")
    }
}

impl<K: SetKind> fmt::Debug for IndexSet<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexSet{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(s: &str) -> MvAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn maekawa_sums() {
        assert_eq!(mv("MMMV").maekawa_sum(), 2);
        assert_eq!(mv("MMVVMM").maekawa_sum(), 2);
        assert_eq!(mv("MMMM").maekawa_sum(), 4);
        assert_eq!(mv("MVMVVV").maekawa_sum(), -2);
    }

    #[test]
    fn uniform_validity() {
        assert!(mv("MMMV").is_valid_uniform());
        assert!(!mv("MMMM").is_valid_uniform());
        assert!(mv("MVMVVV").is_valid_uniform());
    }

    #[test]
    fn bit_packing_puts_first_crease_in_lsb() {
        let a = mv("MVVV");
        assert_eq!(a.bits(), 0b0001);
        assert_eq!(mv("VVVM").bits(), 0b1000);
        assert_eq!(a.to_string(), "MVVV");
        assert_eq!(MvAssignment::from_bits(0b1000, 4).unwrap(), mv("VVVM"));
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("MMV".parse::<MvAssignment>().is_err());
        assert!("".parse::<MvAssignment>().is_err());
        assert!("MMXV".parse::<MvAssignment>().is_err());
        assert!("mmmv".parse::<MvAssignment>().is_err());
        assert!(MvAssignment::from_bits(0b10000, 4).is_err());
        assert!(MvAssignment::from_values(&[1, 0]).is_err());
    }

    #[test]
    fn flippability_examples() {
        assert!(!mv("MMVVMM").is_flippable(3).unwrap());
        assert!(mv("MMVVMM").is_flippable(2).unwrap());
        assert!(mv("MMMV").is_flippable(2).unwrap());
        assert_eq!(mv("MMVVMM").flip_face(2).unwrap(), mv("MVMVMM"));
        assert_eq!(mv("MMVVMM").flip_face(3).unwrap(), mv("MMMMMM"));
    }

    #[test]
    fn flippable_rejects_invalid_and_out_of_range() {
        assert!(matches!(
            mv("MMMM").is_flippable(1),
            Err(OfgError::InvalidAssignment(_))
        ));
        assert!(matches!(
            mv("MMMV").is_flippable(5),
            Err(OfgError::IndexOutOfRange { .. })
        ));
        assert!(mv("MMMV").is_flippable(0).is_err());
    }

    #[test]
    fn flip_examples() {
        assert_eq!(mv("MMMV").flip_face(4).unwrap(), mv("VMMM"));
        assert_eq!(mv("MMVVMM").flip_face(4).unwrap(), mv("MMVMVM"));
        // Degree 2: both faces border both creases.
        assert_eq!(mv("MM").flip_face(1).unwrap(), mv("VV"));
        assert_eq!(mv("MM").flip_face(2).unwrap(), mv("VV"));
    }

    #[test]
    fn diff_and_between() {
        let a = mv("MMVVMM");
        assert!(a.diff_set(&a).unwrap().is_empty());
        assert_eq!(
            mv("MMMV").diff_set(&mv("VVVM")).unwrap().to_vec(),
            vec![1, 2, 3, 4]
        );
        assert_eq!(a.diff_set(&mv("MMMVVM")).unwrap().to_vec(), vec![3, 5]);

        assert!(a.between_faces(&a).unwrap().is_empty());
        assert_eq!(
            mv("MMMV").between_faces(&mv("VVVM")).unwrap().to_vec(),
            vec![1, 3]
        );
        let b = a.between_faces(&mv("MMMVVM")).unwrap();
        assert_eq!(b.to_vec(), vec![3, 4]);
        assert_eq!(b.complement().to_vec(), vec![1, 2, 5, 6]);
        assert_eq!(b.to_string(), "{a3, a4}");
    }

    #[test]
    fn between_rejects_odd_and_mismatch() {
        assert!(matches!(
            mv("MMMV").between_faces(&mv("MMMM")),
            Err(OfgError::OddDifference(1))
        ));
        assert!(matches!(
            mv("MMMV").diff_set(&mv("MMMVVM")),
            Err(OfgError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(mv("MMMV").complement(), mv("VVVM"));
        assert_eq!(mv("MMMV").complement().maekawa_sum(), -2);
    }

    #[test]
    fn rotation_and_reflection() {
        assert_eq!(mv("MMVV").rotate(1), mv("VMMV"));
        assert_eq!(mv("MMVV").rotate(4), mv("MMVV"));
        // e1 fixed, e2 <-> e4.
        assert_eq!(mv("MMVV").reflect(), mv("MVVM"));
    }

    #[test]
    fn blocked_mask_matches_predicate() {
        let a = mv("MMVVMM");
        let maj = a.majority().unwrap();
        let mask = a.blocked_faces_mask(maj);
        for f in 0..6 {
            assert_eq!(mask >> f & 1 == 1, !a.is_flippable0(f, maj));
        }
    }

    #[test]
    fn index_set_bounds() {
        assert!(FaceSet::from_indices(4, [0]).is_err());
        assert!(FaceSet::from_indices(4, [5]).is_err());
        let mut s = FaceSet::from_indices(4, [1, 4]).unwrap();
        assert!(s.contains(4) && !s.contains(2));
        assert!(s.remove(4));
        assert!(!s.remove(4));
        assert_eq!(s.to_vec(), vec![1]);
    }
}
