use crate::error::{OfgError, Result};

/// Environment variable that overrides [`Limits::max_n`].
pub const MAX_N_ENV: &str = "OFG_MAX_N";

/// Resource guards for exhaustive operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which `A_2n` is enumerated or materialized.
    pub max_n: usize,
    /// Largest degree for which all `2^degree` assignments of a general
    /// pattern are tested.
    pub max_general_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            max_n: 13,
            max_general_degree: 20,
        }
    }
}

impl Limits {
    /// Defaults, with `max_n` taken from `OFG_MAX_N` when it parses.
    pub fn from_env() -> Self {
        let mut limits = Self::default();
        if let Some(n) = std::env::var(MAX_N_ENV).ok().and_then(|v| v.trim().parse().ok()) {
            limits.max_n = n;
        }
        limits
    }

    pub fn with_max_n(self, max_n: usize) -> Self {
        Self { max_n, ..self }
    }

    pub fn check_n(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(OfgError::UnsupportedDegree(0));
        }
        if n > self.max_n {
            return Err(OfgError::LimitExceeded {
                what: "n",
                value: n,
                limit: self.max_n,
            });
        }
        Ok(())
    }

    pub fn check_general_degree(&self, degree: usize) -> Result<()> {
        if degree > self.max_general_degree {
            return Err(OfgError::LimitExceeded {
                what: "degree",
                value: degree,
                limit: self.max_general_degree,
            });
        }
        Ok(())
    }
}
