use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::coeff::{coeff_to_string, int, parse_coeff, Coeff};

/// Polynomial in beta with rational coefficients (dense, trailing zeros trimmed).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct BetaPoly(Vec<Coeff>);

impl BetaPoly {
    pub fn zero() -> Self {
        BetaPoly(Vec::new())
    }

    pub fn one() -> Self {
        BetaPoly(vec![Coeff::one()])
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    /// `c * beta^k`.
    pub fn monomial(c: Coeff, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Coeff::zero(); k + 1];
        v[k] = c;
        BetaPoly(v)
    }

    pub fn from_coeffs(v: Vec<Coeff>) -> Self {
        let mut p = BetaPoly(v);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, k: usize) -> Coeff {
        self.0.get(k).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.0
    }

    /// Highest beta power present, `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// Lowest beta power present.
    pub fn low_degree(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    /// Nonzero `(power, coefficient)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &Coeff)> {
        self.0.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    /// Single-term check: returns `(power, coeff)` when exactly one term is present.
    pub fn as_monomial(&self) -> Option<(usize, Coeff)> {
        let mut it = self.terms();
        let first = it.next()?;
        if it.next().is_some() {
            return None;
        }
        Some((first.0, first.1.clone()))
    }

    pub fn all_nonnegative(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn all_integer(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        BetaPoly(self.0.iter().map(|x| x * c).collect())
    }

    /// Multiply by `beta^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Coeff::zero(); k];
        v.extend(self.0.iter().cloned());
        BetaPoly(v)
    }

    /// Drop powers above `cap`.
    pub fn truncate(&self, cap: usize) -> Self {
        let mut v: Vec<Coeff> = self.0.iter().take(cap + 1).cloned().collect();
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        BetaPoly(v)
    }

    /// Product truncated at beta power `cap`.
    pub fn mul_trunc(&self, other: &Self, cap: usize) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let len = (self.0.len() + other.0.len() - 1).min(cap + 1);
        let mut v = vec![Coeff::zero(); len];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() || i >= len {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        BetaPoly::from_coeffs(v)
    }

    /// Substitute `beta -> -beta`.
    pub fn negate_beta(&self) -> Self {
        BetaPoly(
            self.0
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Text like `4 + 2b - b^2`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.terms() {
            let neg = c.is_negative();
            let a = c.abs();
            let body = term_text(&a, k);
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(coeff_to_string).collect()
    }

    pub fn from_strings(v: &[String]) -> crate::error::Result<Self> {
        let cs = v.iter().map(|s| parse_coeff(s)).collect::<crate::error::Result<Vec<_>>>()?;
        Ok(BetaPoly::from_coeffs(cs))
    }
}

fn term_text(a: &Coeff, k: usize) -> String {
    let b = match k {
        0 => String::new(),
        1 => "b".to_string(),
        _ => format!("b^{k}"),
    };
    if k == 0 {
        return coeff_to_string(a);
    }
    if a.is_one() {
        b
    } else if a.is_integer() {
        format!("{}{}", a.numer(), b)
    } else {
        format!("({}){}", coeff_to_string(a), b)
    }
}

impl fmt::Display for BetaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl AddAssign<&BetaPoly> for BetaPoly {
    fn add_assign(&mut self, rhs: &BetaPoly) {
        if self.0.len() < rhs.0.len() {
            self.0.resize(rhs.0.len(), Coeff::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a += b;
        }
        self.trim();
    }
}

impl SubAssign<&BetaPoly> for BetaPoly {
    fn sub_assign(&mut self, rhs: &BetaPoly) {
        if self.0.len() < rhs.0.len() {
            self.0.resize(rhs.0.len(), Coeff::zero());
        }
        for (a, b) in self.0.iter_mut().zip(&rhs.0) {
            *a -= b;
        }
        self.trim();
    }
}

impl Add<&BetaPoly> for &BetaPoly {
    type Output = BetaPoly;
    fn add(self, rhs: &BetaPoly) -> BetaPoly {
        let mut r = self.clone();
        r += rhs;
        r
    }
}

impl Sub<&BetaPoly> for &BetaPoly {
    type Output = BetaPoly;
    fn sub(self, rhs: &BetaPoly) -> BetaPoly {
        let mut r = self.clone();
        r -= rhs;
        r
    }
}

impl Neg for &BetaPoly {
    type Output = BetaPoly;
    fn neg(self) -> BetaPoly {
        BetaPoly(self.0.iter().map(|c| -c).collect())
    }
}

/// Untruncated product.
impl Mul<&BetaPoly> for &BetaPoly {
    type Output = BetaPoly;
    fn mul(self, rhs: &BetaPoly) -> BetaPoly {
        self.mul_trunc(rhs, usize::MAX / 2)
    }
}

impl Serialize for BetaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BetaPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        BetaPoly::from_strings(&v).map_err(serde::de::Error::custom)
    }
}
