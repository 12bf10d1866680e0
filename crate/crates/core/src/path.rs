//! Face-flip paths between valid assignments of `A_2n`.
//!
//! Two constructions are provided. [`fea_shwoop`] fixes creases left to right,
//! unblocking a stuck face by flipping the first flippable face to its right
//! and cascading back; it never touches the last face. [`fea_halves`] flips
//! each face of the smaller of the two face sets that separate the inputs,
//! giving at most `n` flips.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{OfgError, Result};
use crate::mv::MvAssignment;

/// An ordered list of 1-based faces to flip, starting from `start`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipPath {
    pub start: MvAssignment,
    pub end: MvAssignment,
    pub faces: Vec<usize>,
}

/// First step at which replaying a path goes wrong.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathViolation {
    LengthMismatch { start: usize, end: usize },
    InvalidStart(MvAssignment),
    FaceOutOfRange { step: usize, face: usize },
    InvalidIntermediate { step: usize, face: usize, reached: MvAssignment },
    WrongEnd { reached: MvAssignment, expected: MvAssignment },
}

impl fmt::Display for PathViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PathViolation::LengthMismatch { start, end } => {
                write!(f, "start has {start} creases but end has {end}")
            }
            PathViolation::InvalidStart(mv) => write!(f, "start {mv} is not valid"),
            PathViolation::FaceOutOfRange { step, face } => {
                write!(f, "step {step}: face {face} is out of range")
            }
            PathViolation::InvalidIntermediate { step, face, reached } => {
                write!(f, "step {step}: flipping face {face} gives invalid {reached}")
            }
            PathViolation::WrongEnd { reached, expected } => {
                write!(f, "path ends at {reached}, expected {expected}")
            }
        }
    }
}

impl FlipPath {
    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Replay the flips, checking validity on the equal-angle vertex at
    /// every step and that the walk ends at `end`. Minimality is not
    /// checked.
    pub fn verify(&self) -> std::result::Result<(), PathViolation> {
        let degree = self.start.degree();
        if self.end.degree() != degree {
            return Err(PathViolation::LengthMismatch {
                start: degree,
                end: self.end.degree(),
            });
        }
        if !self.start.is_valid_uniform() {
            return Err(PathViolation::InvalidStart(self.start));
        }
        let mut current = self.start;
        for (i, &face) in self.faces.iter().enumerate() {
            let step = i + 1;
            current = current
                .flip_face(face)
                .map_err(|_| PathViolation::FaceOutOfRange { step, face })?;
            if !current.is_valid_uniform() {
                return Err(PathViolation::InvalidIntermediate {
                    step,
                    face,
                    reached: current,
                });
            }
        }
        if current != self.end {
            return Err(PathViolation::WrongEnd {
                reached: current,
                expected: self.end,
            });
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.verify().is_ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("path serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| OfgError::Format(e.to_string()))
    }
}

/// Which path construction to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathAlgorithm {
    Shwoop,
    Halves,
}

pub fn find_path(algo: PathAlgorithm, mu: &MvAssignment, nu: &MvAssignment) -> Result<FlipPath> {
    match algo {
        PathAlgorithm::Shwoop => fea_shwoop(mu, nu),
        PathAlgorithm::Halves => fea_halves(mu, nu),
    }
}

fn check_inputs(mu: &MvAssignment, nu: &MvAssignment) -> Result<()> {
    if mu.degree() != nu.degree() {
        return Err(OfgError::LengthMismatch {
            left: mu.degree(),
            right: nu.degree(),
        });
    }
    for mv in [mu, nu] {
        if !mv.is_valid_uniform() {
            return Err(OfgError::InvalidAssignment(mv.to_string()));
        }
    }
    Ok(())
}

/// Left-to-right repair with backward cascades ("shwoops").
///
/// For each crease `e_i`, `i < 2n`, that still disagrees with `nu`: flip
/// `a_i` if possible; otherwise scan right for the first flippable face
/// `a_j` and flip `a_j, a_(j-1), ..., a_i`. The scan never reaches `a_2n`.
pub fn fea_shwoop(mu: &MvAssignment, nu: &MvAssignment) -> Result<FlipPath> {
    check_inputs(mu, nu)?;
    let degree = mu.degree();
    let last_scannable = degree - 2; // 0-based index of a_(2n-1)
    let mut eta = *mu;
    let mut faces = Vec::new();

    let mut flip = |eta: &mut MvAssignment, face: usize| -> Result<()> {
        let next = eta.flip0(face);
        if !next.is_valid_uniform() {
            return Err(OfgError::Consistency(format!(
                "shwoop flip of face {} takes {} to invalid {}",
                face + 1,
                eta,
                next
            )));
        }
        *eta = next;
        faces.push(face + 1);
        Ok(())
    };

    for i in 0..degree - 1 {
        if eta.value0(i) == nu.value0(i) {
            continue;
        }
        let majority = eta.majority().expect("eta stays valid");
        let mut cursor = i;
        while !eta.is_flippable0(cursor, majority) {
            cursor += 1;
            if cursor > last_scannable {
                return Err(OfgError::Consistency(format!(
                    "shwoop scan from face {} passed face {} under {}",
                    i + 1,
                    degree - 1,
                    eta
                )));
            }
        }
        for face in (i..=cursor).rev() {
            flip(&mut eta, face)?;
        }
    }

    if eta != *nu {
        return Err(OfgError::Consistency(format!(
            "shwoop ended at {eta}, expected {nu}"
        )));
    }
    Ok(FlipPath {
        start: *mu,
        end: *nu,
        faces,
    })
}

/// Flip the faces of whichever separating face set is smaller.
///
/// The faces between paired disagreement creases, or their complement,
/// turn `mu` into `nu` when each is flipped once. The smaller set (ties go to
/// the first) has at most `n` faces; each round flips its lowest-index face
/// that is currently flippable.
pub fn fea_halves(mu: &MvAssignment, nu: &MvAssignment) -> Result<FlipPath> {
    check_inputs(mu, nu)?;
    let n = mu.n();
    let between = mu.between_faces(nu)?;
    let mut remaining = if between.len() > n {
        between.complement()
    } else {
        between
    };
    let mut eta = *mu;
    let mut faces = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let majority = eta.majority().expect("eta stays valid");
        let face = remaining
            .iter()
            .find(|&f| eta.is_flippable0(f - 1, majority))
            .ok_or_else(|| {
                OfgError::Consistency(format!(
                    "no flippable face among {remaining} under {eta} (target {nu})"
                ))
            })?;
        eta = eta.flip0(face - 1);
        remaining.remove(face);
        faces.push(face);
    }
    if eta != *nu {
        return Err(OfgError::Consistency(format!(
            "halves ended at {eta}, expected {nu}"
        )));
    }
    Ok(FlipPath {
        start: *mu,
        end: *nu,
        faces,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mv(s: &str) -> MvAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn shwoop_examples() {
        let a = mv("MMVVMM");
        assert!(fea_shwoop(&a, &a).unwrap().is_empty());
        let p = fea_shwoop(&a, &mv("MMMVVM")).unwrap();
        assert_eq!(p.faces, vec![4, 3]);
        assert!(p.is_valid());
        let p = fea_shwoop(&mv("VMMMMV"), &mv("MVMMMV")).unwrap();
        assert_eq!(p.faces, vec![1]);
        assert!(p.is_valid());
    }

    #[test]
    fn halves_examples() {
        let p = fea_halves(&mv("MMMV"), &mv("VVVM")).unwrap();
        assert_eq!(p.faces.len(), 2);
        let mut sorted = p.faces.clone();
        sorted.sort();
        assert_eq!(sorted, vec![1, 3]);
        assert!(p.is_valid());

        let a = mv("MMVVMM");
        assert!(fea_halves(&a, &a).unwrap().is_empty());
        let p = fea_halves(&a, &mv("MMMVVM")).unwrap();
        assert_eq!(p.faces, vec![4, 3]);
        assert!(p.is_valid());
    }

    #[test]
    fn rejects_invalid_inputs() {
        assert!(matches!(
            fea_shwoop(&mv("MMMM"), &mv("MMMV")),
            Err(OfgError::InvalidAssignment(_))
        ));
        assert!(matches!(
            fea_halves(&mv("MMMV"), &mv("MMMVVM")),
            Err(OfgError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn verify_catches_bad_paths() {
        let blocked = FlipPath {
            start: mv("MMVVMM"),
            end: mv("MMMMMM"),
            faces: vec![3],
        };
        assert!(matches!(
            blocked.verify(),
            Err(PathViolation::InvalidIntermediate { step: 1, face: 3, .. })
        ));
        let empty = FlipPath {
            start: mv("MMMV"),
            end: mv("VVVM"),
            faces: vec![],
        };
        assert!(matches!(empty.verify(), Err(PathViolation::WrongEnd { .. })));
        let oob = FlipPath {
            start: mv("MMMV"),
            end: mv("MMMV"),
            faces: vec![9],
        };
        assert!(matches!(oob.verify(), Err(PathViolation::FaceOutOfRange { step: 1, face: 9 })));
        let invalid_start = FlipPath {
            start: mv("MMMM"),
            end: mv("MMMM"),
            faces: vec![],
        };
        assert!(!invalid_start.is_valid());
    }

    #[test]
    fn json_document() {
        let p = fea_halves(&mv("MMMV"), &mv("VVVM")).unwrap();
        let text = p.to_json();
        assert!(text.contains("\"start\": \"MMMV\""));
        assert_eq!(FlipPath::from_json(&text).unwrap(), p);
        assert!(FlipPath::from_json(r#"{"start":"MMX","end":"MMMV","faces":[]}"#).is_err());
    }

    #[test]
    fn degree_two() {
        let p = fea_shwoop(&mv("MM"), &mv("VV")).unwrap();
        assert_eq!(p.faces, vec![1]);
        let h = fea_halves(&mv("MM"), &mv("VV")).unwrap();
        assert_eq!(h.faces.len(), 1);
        assert!(p.is_valid() && h.is_valid());
    }
}
