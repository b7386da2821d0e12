use std::fmt;

use serde::{Deserialize, Serialize};

use super::monomial::MAX_VARS;
use crate::error::{KhopfError, Result};

/// Largest supported total degree (exponents are stored in a byte).
pub const MAX_DEGREE: usize = 120;

/// Truncation data: `n` variables, x-degree at most `d`, beta-degree at most `b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TruncationContext {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "D")]
    pub d: usize,
    #[serde(rename = "B")]
    pub b: usize,
}

impl TruncationContext {
    /// Context with beta cap equal to the degree cap.
    pub fn new(n: usize, d: usize) -> Result<Self> {
        Self::with_beta_cap(n, d, d)
    }

    pub fn with_beta_cap(n: usize, d: usize, b: usize) -> Result<Self> {
        if n > MAX_VARS {
            return Err(KhopfError::InvalidContext(format!(
                "at most {MAX_VARS} variables supported, got {n}"
            )));
        }
        if d > MAX_DEGREE || b > MAX_DEGREE {
            return Err(KhopfError::InvalidContext(format!(
                "degree caps must not exceed {MAX_DEGREE}"
            )));
        }
        Ok(TruncationContext { n, d, b })
    }

    /// Shorthand used throughout tests; panics on an invalid context.
    pub fn nd(n: usize, d: usize) -> Self {
        Self::new(n, d).expect("valid truncation context")
    }

    pub fn ensure_same(&self, other: &TruncationContext) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(KhopfError::ContextMismatch(*self, *other))
        }
    }

    /// `n >= bound` and `d >= bound`.
    pub fn adequate_for(&self, bound: usize) -> bool {
        self.n >= bound && self.d >= bound
    }
}

impl fmt::Display for TruncationContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(N={}, D={}, B={})", self.n, self.d, self.b)
    }
}
