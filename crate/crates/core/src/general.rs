//! Validity and flip graphs for arbitrary flat-foldable single vertices, and
//! their embeddings into the equal-angle flip graph.
//!
//! Validity is decided by crimp reduction. While the sector angles are not
//! all equal, take the first maximal run of `k` equal minimal angles; its
//! flanking angles are strictly larger. The `k+1` creases of the run must
//! have mountains minus valleys equal to 0 when `k` is odd, or ±1 when `k` is
//! even. Crimping then removes the run: for odd `k` the flanks merge into
//! one sector of `left + right - min`, for even `k` the run collapses to one
//! crease carrying the sign of the run's sum. Once every remaining angle is
//! equal, the assignment is valid iff its Maekawa sum is ±2.
//!
//! Which runs get consumed depends only on the angles, so the reduction is
//! computed once per pattern as a [`ValidityPlan`] and replayed per
//! assignment on plain crease parities.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{OfgError, Result};
use crate::graph::FlipGraph;
use crate::limits::Limits;
use crate::mv::{face_mask, MvAssignment};
use crate::pattern::CreasePattern;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct CrimpStep {
    /// Left rotation applied to the current crease list so that the run's
    /// creases sit at positions `1..=run + 1`.
    rotate: usize,
    /// Number of equal minimal angles in the run.
    run: usize,
}

/// Angle-only reduction schedule of a crease pattern.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityPlan {
    degree: usize,
    steps: Vec<CrimpStep>,
    /// Creases left once all remaining angles are equal.
    final_degree: usize,
}

impl ValidityPlan {
    pub fn new(pattern: &CreasePattern) -> Self {
        let degree = pattern.degree();
        let mut angles: Vec<BigRational> = pattern.angles().to_vec();
        let mut steps = Vec::new();
        // Invariant: angles[i] lies between crease i and crease i+1.
        loop {
            let min = angles.iter().min().expect("non-empty").clone();
            if angles.iter().all(|a| *a == min) {
                break;
            }
            let m = angles.len();
            let start = (0..m)
                .find(|&i| angles[i] == min && angles[(i + m - 1) % m] != min)
                .expect("a run of minima has a left end when angles differ");
            let run = (0..m).take_while(|&t| angles[(start + t) % m] == min).count();
            // Put the left flank at index 0 and the run at 1..=run.
            let rotate = (start + m - 1) % m;
            angles.rotate_left(rotate);
            let left = angles[0].clone();
            let right = angles[run + 1].clone();
            debug_assert!(left > min && right > min);
            if run % 2 == 1 {
                // Creases 1..=run+1 disappear; sectors 0..=run+1 merge.
                let merged = left + right - &min;
                angles.splice(0..run + 2, [merged]);
            } else {
                // Creases 1..=run+1 become one crease between the flanks.
                angles.drain(1..=run);
            }
            steps.push(CrimpStep { rotate, run });
        }
        Self {
            degree,
            steps,
            final_degree: angles.len(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of crimp reductions before the equal-angle residue is reached.
    pub fn crimp_count(&self) -> usize {
        self.steps.len()
    }

    pub fn final_degree(&self) -> usize {
        self.final_degree
    }

    /// Replay the schedule on one assignment.
    pub fn is_valid(&self, mv: &MvAssignment) -> bool {
        debug_assert_eq!(mv.degree(), self.degree);
        let mut buf = [0i8; 64];
        let mut len = self.degree;
        for (i, slot) in buf.iter_mut().take(len).enumerate() {
            *slot = mv.value0(i);
        }
        for step in &self.steps {
            let creases = &mut buf[..len];
            creases.rotate_left(step.rotate);
            let sum: i32 = creases[1..=step.run + 1].iter().map(|&v| v as i32).sum();
            if step.run % 2 == 1 {
                if sum != 0 {
                    return false;
                }
                // Drop positions 1..=run+1.
                creases.copy_within(step.run + 2..len, 1);
                len -= step.run + 1;
            } else {
                if sum.abs() != 1 {
                    return false;
                }
                creases[1] = sum as i8;
                creases.copy_within(step.run + 2..len, 2);
                len -= step.run;
            }
        }
        let sum: i32 = buf[..len].iter().map(|&v| v as i32).sum();
        sum.abs() == 2
    }
}

/// Validity of `mv` on pattern `c` by crimp reduction.
pub fn is_valid_general(c: &CreasePattern, mv: &MvAssignment) -> Result<bool> {
    check_assignment_degree(c, mv)?;
    Ok(ValidityPlan::new(c).is_valid(mv))
}

/// Validity on the equal-angle vertex, refusing non-uniform patterns.
pub fn is_valid_uniform(c: &CreasePattern, mv: &MvAssignment) -> Result<bool> {
    c.check_uniform()?;
    check_assignment_degree(c, mv)?;
    Ok(mv.is_valid_uniform())
}

/// Every sector strictly smaller than both neighbors has creases of
/// opposite parity. Necessary for validity, not sufficient.
pub fn satisfies_big_little_big(c: &CreasePattern, mv: &MvAssignment) -> bool {
    let a = c.angles();
    let m = a.len();
    (0..m).all(|i| {
        let strict_min = a[i] < a[(i + m - 1) % m] && a[i] < a[(i + 1) % m];
        !strict_min || mv.value0(i) != mv.value0((i + 1) % m)
    })
}

fn check_assignment_degree(c: &CreasePattern, mv: &MvAssignment) -> Result<()> {
    if c.degree() != mv.degree() {
        return Err(OfgError::LengthMismatch {
            left: c.degree(),
            right: mv.degree(),
        });
    }
    Ok(())
}

/// All valid assignments of `c`, ascending by bit-packed value.
pub fn valid_assignments(c: &CreasePattern, limits: &Limits) -> Result<Vec<MvAssignment>> {
    let degree = c.degree();
    limits.check_general_degree(degree)?;
    let plan = ValidityPlan::new(c);
    let total = 1u64 << degree;
    Ok((0..total)
        .into_par_iter()
        .map(|bits| MvAssignment::from_bits_unchecked(bits, degree))
        .filter(|mv| plan.is_valid(mv))
        .collect())
}

/// `OFG(c)`: valid assignments joined by single face flips.
pub fn build_ofg_general(c: &CreasePattern, limits: &Limits) -> Result<FlipGraph> {
    let vertices = valid_assignments(c, limits)?;
    FlipGraph::assemble(c.degree(), vertices, |_, _| true)
}

/// `nu -> mu` with `mu(e_(i+r)) = nu(c_i)`, optionally after mirroring the
/// crease order of `c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingMap {
    pub rotation: usize,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub reflected: bool,
    /// `(assignment of c, image in A_2n)` for every vertex of `OFG(c)`.
    pub pairs: Vec<(MvAssignment, MvAssignment)>,
}

impl EmbeddingMap {
    fn image_of(rotation: usize, reflected: bool, mv: &MvAssignment) -> MvAssignment {
        let base = if reflected { mv.reflect() } else { *mv };
        base.rotate(rotation)
    }

    /// Face of `A_2n` that a flip of `c`'s face `face` (0-based) maps to.
    fn image_face0(&self, degree: usize, face: usize) -> usize {
        let f = if self.reflected {
            (2 * degree - face - 1) % degree
        } else {
            face
        };
        (f + self.rotation) % degree
    }

    pub fn apply(&self, mv: &MvAssignment) -> Option<MvAssignment> {
        self.pairs
            .binary_search_by(|(c, _)| c.cmp(mv))
            .ok()
            .map(|i| self.pairs[i].1)
    }

    /// Image vertex set, sorted.
    pub fn image(&self) -> Vec<MvAssignment> {
        let mut img: Vec<MvAssignment> = self.pairs.iter().map(|p| p.1).collect();
        img.sort_unstable();
        img
    }

    /// Check that every image is valid on `A_2n`, that the map is injective,
    /// and that every edge of `graph` (which must be `OFG(c)`) maps to a flip
    /// of an unblocked face of `A_2n`.
    pub fn preserves_edges(&self, graph: &FlipGraph) -> bool {
        let degree = graph.degree();
        let images_valid = self.pairs.iter().all(|(_, a)| a.is_valid_uniform());
        let injective = {
            let img = self.image();
            img.windows(2).all(|w| w[0] != w[1])
        };
        let edges_ok = graph.edges().iter().all(|e| {
            let (cu, cv) = (graph.vertices()[e.u], graph.vertices()[e.v]);
            match (self.apply(&cu), self.apply(&cv)) {
                (Some(au), Some(av)) => {
                    let face = self.image_face0(degree, e.face - 1);
                    au.bits() ^ av.bits() == face_mask(degree, face)
                        && au.majority().is_some_and(|m| au.is_flippable0(face, m))
                }
                _ => false,
            }
        });
        images_valid && injective && edges_ok
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("embedding serializes")
    }
}

fn check_embeddable(c: &CreasePattern) -> Result<()> {
    if c.is_uniform() {
        return Err(OfgError::UniformPattern);
    }
    Ok(())
}

fn make_embedding(graph: &FlipGraph, rotation: usize, reflected: bool) -> EmbeddingMap {
    EmbeddingMap {
        rotation,
        reflected,
        pairs: graph
            .vertices()
            .iter()
            .map(|v| (*v, EmbeddingMap::image_of(rotation, reflected, v)))
            .collect(),
    }
}

/// The rotation-`r` embedding of `OFG(c)` into `OFG(A_2n)`.
pub fn embed_into_uniform(c: &CreasePattern, rotation: usize, limits: &Limits) -> Result<EmbeddingMap> {
    check_embeddable(c)?;
    if rotation >= c.degree() {
        return Err(OfgError::IndexOutOfRange {
            index: rotation,
            degree: c.degree(),
        });
    }
    let graph = build_ofg_general(c, limits)?;
    Ok(make_embedding(&graph, rotation, false))
}

/// All `2n` rotational embeddings of an already built `OFG(c)`.
pub fn rotational_embeddings(c: &CreasePattern, graph: &FlipGraph) -> Result<Vec<EmbeddingMap>> {
    check_embeddable(c)?;
    Ok((0..c.degree()).map(|r| make_embedding(graph, r, false)).collect())
}

/// Copies of `OFG(c)` found among the embeddings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CopyCount {
    /// Distinct vertex-image sets over the `2n` rotations.
    pub rotational: usize,
    /// Distinct vertex-image sets over rotations and mirrored rotations.
    pub with_reflections: usize,
}

pub fn count_rotational_copies(c: &CreasePattern, limits: &Limits) -> Result<CopyCount> {
    check_embeddable(c)?;
    let graph = build_ofg_general(c, limits)?;
    Ok(count_copies_in(&graph))
}

pub(crate) fn count_copies_in(graph: &FlipGraph) -> CopyCount {
    let degree = graph.degree();
    let mut rotational = BTreeSet::new();
    let mut all = BTreeSet::new();
    for reflected in [false, true] {
        for r in 0..degree {
            let img = make_embedding(graph, r, reflected).image();
            if !reflected {
                rotational.insert(img.clone());
            }
            all.insert(img);
        }
    }
    CopyCount {
        rotational: rotational.len(),
        with_reflections: all.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pat(s: &str) -> CreasePattern {
        CreasePattern::from_angle_list(s).unwrap()
    }

    fn mv(s: &str) -> MvAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn uniform_plan_is_pure_maekawa() {
        let plan = ValidityPlan::new(&CreasePattern::uniform(3).unwrap());
        assert_eq!(plan.crimp_count(), 0);
        assert_eq!(plan.final_degree(), 6);
    }

    #[test]
    fn golden_degree_six() {
        let c = pat("45,15,60,85,75,80");
        let valid = valid_assignments(&c, &Limits::default()).unwrap();
        assert_eq!(valid.len(), 8);
        let g = build_ofg_general(&c, &Limits::default()).unwrap();
        assert_eq!(g.edge_count(), 8);
        assert_eq!(g.component_count(), 2);
        assert!(g.vertices().iter().all(|v| g.vertex_degree(g.index_of(v).unwrap()) == 2));
    }

    #[test]
    fn degree_four_unique_minimum() {
        for list in ["60,90,120,90", "30,90,150,90", "10,100,170,80"] {
            let c = pat(list);
            assert_eq!(valid_assignments(&c, &Limits::default()).unwrap().len(), 4, "{list}");
        }
    }

    #[test]
    fn degree_four_adjacent_equal_minima() {
        // Run of two minimal sectors: 3 creases with sum ±1, fourth forced.
        let c = pat("80,80,100,100");
        assert_eq!(valid_assignments(&c, &Limits::default()).unwrap().len(), 6);
    }

    #[test]
    fn blb_violation_is_invalid() {
        let c = pat("45,15,60,85,75,80");
        // e2 and e3 flank the 15 degree sector.
        let bad = mv("MMMVVV");
        assert!(!satisfies_big_little_big(&c, &bad));
        assert!(!is_valid_general(&c, &bad).unwrap());
    }

    #[test]
    fn uniform_check_rejects_general_pattern() {
        let c = pat("60,90,120,90");
        assert!(matches!(is_valid_uniform(&c, &mv("MMMV")), Err(OfgError::NotUniform)));
        let a = CreasePattern::uniform(2).unwrap();
        assert!(is_valid_uniform(&a, &mv("MMMV")).unwrap());
        assert!(is_valid_general(&a, &mv("MMMVVV")).is_err());
    }

    #[test]
    fn embedding_rules() {
        let c = pat("45,15,60,85,75,80");
        let limits = Limits::default();
        let e0 = embed_into_uniform(&c, 0, &limits).unwrap();
        assert!(e0.pairs.iter().all(|(a, b)| a == b));
        assert!(embed_into_uniform(&c, 6, &limits).is_err());
        assert!(matches!(
            embed_into_uniform(&CreasePattern::uniform(3).unwrap(), 0, &limits),
            Err(OfgError::UniformPattern)
        ));
        let g = build_ofg_general(&c, &limits).unwrap();
        for e in rotational_embeddings(&c, &g).unwrap() {
            assert!(e.preserves_edges(&g), "rotation {}", e.rotation);
        }
        // Valid set is e1 = e4, e2 != e3, e5 != e6: fixed by a half turn
        // and by the reflection, so only three images are distinct.
        let copies = count_rotational_copies(&c, &limits).unwrap();
        assert_eq!(copies.rotational, 3);
        assert_eq!(copies.with_reflections, 3);
    }

    #[test]
    fn reflected_embeddings_preserve_edges() {
        let c = pat("45,15,60,85,75,80");
        let g = build_ofg_general(&c, &Limits::default()).unwrap();
        for r in 0..6 {
            assert!(make_embedding(&g, r, true).preserves_edges(&g));
        }
    }

    #[test]
    fn embedding_json_shape() {
        let c = pat("60,90,120,90");
        let e = embed_into_uniform(&c, 1, &Limits::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&e.to_json()).unwrap();
        assert_eq!(v["rotation"], 1);
        assert_eq!(v["pairs"].as_array().unwrap().len(), 4);
        assert!(v["pairs"][0][0].is_string());
        assert!(v.get("reflected").is_none());
    }

    #[test]
    fn general_degree_limit() {
        let limits = Limits {
            max_general_degree: 4,
            ..Limits::default()
        };
        assert!(matches!(
            valid_assignments(&pat("45,15,60,85,75,80"), &limits),
            Err(OfgError::LimitExceeded { .. })
        ));
    }
}
