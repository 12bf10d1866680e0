//! Single-vertex crease patterns with exact rational sector angles.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{OfgError, Result};
use crate::mv::check_degree;

/// Parse one angle in degrees. Accepts integers (`45`), fractions
/// (`180/7`) and terminating decimals (`22.5`).
pub fn parse_angle(input: &str) -> Result<BigRational> {
    let s = input.trim();
    let bad = |reason: &str| OfgError::InvalidAngle {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    if s.is_empty() {
        return Err(bad("empty"));
    }
    let value = if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad("bad numerator"))?;
        let den: BigInt = den.trim().parse().map_err(|_| bad("bad denominator"))?;
        if den.is_zero() {
            return Err(bad("zero denominator"));
        }
        BigRational::new(num, den)
    } else if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad("bad decimal"));
        }
        let num: BigInt = digits.parse().map_err(|_| bad("bad decimal"))?;
        BigRational::new(num, BigInt::from(10u32).pow(frac.len() as u32))
    } else {
        BigRational::from_integer(s.parse().map_err(|_| bad("not a number"))?)
    };
    if !value.is_positive() {
        return Err(bad("sector angles must be positive"));
    }
    Ok(value)
}

/// Parse a comma-separated angle list, ignoring whitespace.
pub fn parse_angle_list(input: &str) -> Result<Vec<BigRational>> {
    input
        .split(',')
        .filter(|part| !part.trim().is_empty())
        .map(parse_angle)
        .collect()
}

fn format_angle(a: &BigRational) -> String {
    if a.denom() == &BigInt::from(1) {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

/// A flat-foldable single-vertex crease pattern.
///
/// `angles[i]` is the sector between creases `e(i+1)` and `e(i+2)`
/// (cyclically). Construction enforces an even degree, a total of 360
/// degrees and a vanishing alternating sum.
#[derive(Clone, PartialEq, Eq)]
pub struct CreasePattern {
    angles: Vec<BigRational>,
    uniform: bool,
}

impl CreasePattern {
    pub fn new(angles: Vec<BigRational>) -> Result<Self> {
        let degree = angles.len();
        check_degree(degree).map_err(|_| {
            OfgError::InvalidPattern(format!(
                "degree {degree} must be even and between 2 and 64"
            ))
        })?;
        if let Some(a) = angles.iter().find(|a| !a.is_positive()) {
            return Err(OfgError::InvalidPattern(format!(
                "sector angle {} is not positive",
                format_angle(a)
            )));
        }
        let total: BigRational = angles.iter().sum();
        if total != BigRational::from_integer(360.into()) {
            return Err(OfgError::InvalidPattern(format!(
                "sector angles sum to {}, expected 360",
                format_angle(&total)
            )));
        }
        let alternating = alternating_sum(&angles);
        if !alternating.is_zero() {
            return Err(OfgError::InvalidPattern(format!(
                "alternating angle sum is {}, a flat-foldable vertex needs 0",
                format_angle(&alternating)
            )));
        }
        let uniform = angles.windows(2).all(|w| w[0] == w[1]);
        Ok(Self { angles, uniform })
    }

    /// The equal-angle pattern `A_2n`.
    pub fn uniform(n: usize) -> Result<Self> {
        let degree = 2 * n;
        check_degree(degree)?;
        let a = BigRational::new(180.into(), BigInt::from(n));
        Self::new(vec![a; degree])
    }

    /// Parse a comma-separated angle list such as `45,15,60,85,75,80`.
    pub fn from_angle_list(input: &str) -> Result<Self> {
        Self::new(parse_angle_list(input)?)
    }

    /// Parse a pattern document (JSON, or TOML when the text does not start
    /// with `{`).
    pub fn from_document(text: &str) -> Result<Self> {
        let doc: PatternDocument = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| OfgError::Format(e.to_string()))?
        } else {
            toml::from_str(text).map_err(|e| OfgError::Format(e.to_string()))?
        };
        doc.into_pattern()
    }

    pub fn to_document(&self) -> PatternDocument {
        PatternDocument {
            degree: Some(self.degree()),
            angles: Some(
                self.angles
                    .iter()
                    .map(|a| AngleValue::Text(format_angle(a)))
                    .collect(),
            ),
            uniform: if self.uniform { Some(true) } else { None },
        }
    }

    pub fn degree(&self) -> usize {
        self.angles.len()
    }

    pub fn n(&self) -> usize {
        self.degree() / 2
    }

    pub fn angles(&self) -> &[BigRational] {
        &self.angles
    }

    /// Sector angle `a_face` (1-based).
    pub fn angle(&self, face: usize) -> Option<&BigRational> {
        face.checked_sub(1).and_then(|i| self.angles.get(i))
    }

    pub fn is_uniform(&self) -> bool {
        self.uniform
    }

    /// Precondition guard for operations defined only on `A_2n`.
    pub fn check_uniform(&self) -> Result<()> {
        if self.uniform {
            Ok(())
        } else {
            Err(OfgError::NotUniform)
        }
    }
}

pub(crate) fn alternating_sum(angles: &[BigRational]) -> BigRational {
    angles
        .iter()
        .enumerate()
        .fold(BigRational::zero(), |acc, (i, a)| {
            if i % 2 == 0 {
                acc + a
            } else {
                acc - a
            }
        })
}

impl fmt::Display for CreasePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.angles.iter().map(format_angle).collect();
        write!(f, "({})", list.join(", "))
    }
}

impl fmt::Debug for CreasePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CreasePattern{self}")
    }
}

/// An angle as it appears in a pattern document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AngleValue {
    Integer(i64),
    Text(String),
}

/// On-disk form of a crease pattern: `degree`, `angles`, and an optional
/// `uniform = true` shorthand that generates the equal-angle pattern.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angles: Option<Vec<AngleValue>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub uniform: Option<bool>,
}

impl PatternDocument {
    pub fn into_pattern(self) -> Result<CreasePattern> {
        let pattern = match (self.uniform, self.angles) {
            (Some(true), None) => {
                let degree = self.degree.ok_or_else(|| {
                    OfgError::Format("`uniform: true` requires `degree`".into())
                })?;
                if degree % 2 != 0 {
                    return Err(OfgError::InvalidPattern(format!(
                        "degree {degree} must be even"
                    )));
                }
                CreasePattern::uniform(degree / 2)?
            }
            (_, Some(angles)) => {
                let angles = angles
                    .iter()
                    .map(|a| match a {
                        AngleValue::Integer(i) => parse_angle(&i.to_string()),
                        AngleValue::Text(s) => parse_angle(s),
                    })
                    .collect::<Result<Vec<_>>>()?;
                CreasePattern::new(angles)?
            }
            (_, None) => return Err(OfgError::Format("missing `angles`".into())),
        };
        if let Some(degree) = self.degree {
            if degree != pattern.degree() {
                return Err(OfgError::InvalidPattern(format!(
                    "declared degree {degree} but {} angles given",
                    pattern.degree()
                )));
            }
        }
        if self.uniform == Some(true) && !pattern.is_uniform() {
            return Err(OfgError::InvalidPattern(
                "`uniform: true` but the angles are not all equal".into(),
            ));
        }
        Ok(pattern)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn angle_syntax() {
        assert_eq!(parse_angle("45").unwrap(), r(45, 1));
        assert_eq!(parse_angle(" 180 / 7 ").unwrap(), r(180, 7));
        assert_eq!(parse_angle("22.5").unwrap(), r(45, 2));
        assert!(parse_angle("0").is_err());
        assert!(parse_angle("-10").is_err());
        assert!(parse_angle("1/0").is_err());
        assert!(parse_angle("abc").is_err());
        assert!(parse_angle("1.").is_err());
    }

    #[test]
    fn golden_pattern_is_accepted() {
        let c = CreasePattern::from_angle_list("45, 15,60 ,85,75,80").unwrap();
        assert_eq!(c.degree(), 6);
        assert!(!c.is_uniform());
        assert_eq!(c.angle(2), Some(&r(15, 1)));
        assert_eq!(c.angle(0), None);
    }

    #[test]
    fn uniform_flag() {
        let a = CreasePattern::uniform(7).unwrap();
        assert!(a.is_uniform());
        assert_eq!(a.angles()[0], r(180, 7));
        let listed = CreasePattern::from_angle_list("90,90,90,90").unwrap();
        assert!(listed.is_uniform());
        assert_eq!(listed, CreasePattern::uniform(2).unwrap());
    }

    #[test]
    fn rejects_malformed_patterns() {
        // Odd degree.
        assert!(CreasePattern::from_angle_list("120,120,120").is_err());
        // Wrong total.
        assert!(CreasePattern::from_angle_list("90,90,90,80").is_err());
        // Not flat-foldable.
        let err = CreasePattern::from_angle_list("100,80,100,80").unwrap_err();
        assert!(matches!(err, OfgError::InvalidPattern(_)));
        assert!(CreasePattern::from_angle_list("").is_err());
    }

    #[test]
    fn documents() {
        let json = r#"{"degree": 6, "angles": ["45", 15, "60", "85", "75", "80"]}"#;
        let c = CreasePattern::from_document(json).unwrap();
        assert_eq!(c.degree(), 6);

        let toml = "degree = 8\nuniform = true\n";
        assert_eq!(
            CreasePattern::from_document(toml).unwrap(),
            CreasePattern::uniform(4).unwrap()
        );

        let sevenths = r#"{"angles": ["180/7","180/7","180/7","180/7","180/7","180/7","180/7","180/7","180/7","180/7","180/7","180/7","180/7","180/7"]}"#;
        assert!(CreasePattern::from_document(sevenths).unwrap().is_uniform());

        assert!(CreasePattern::from_document(r#"{"degree": 4, "angles": [90,90,90,90,90,90]}"#).is_err());
        assert!(CreasePattern::from_document(r#"{"uniform": true}"#).is_err());
        assert!(CreasePattern::from_document(r#"{"degree": 4, "angles": [60,90,120,90], "uniform": true}"#).is_err());

        let round = CreasePattern::from_document(&serde_json::to_string(&c.to_document()).unwrap()).unwrap();
        assert_eq!(round, c);
    }
}
