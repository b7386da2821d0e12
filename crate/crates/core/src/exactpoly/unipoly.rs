use std::collections::BTreeMap;
use std::fmt;

use super::betapoly::BetaPoly;

/// Polynomial in a single variable `t` with coefficients in `Q[beta]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct UniPoly {
    coeffs: BTreeMap<u32, BetaPoly>,
}

impl UniPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c * t^k`.
    pub fn monomial(c: BetaPoly, k: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(k, &c);
        p
    }

    pub fn add_term(&mut self, k: u32, c: &BetaPoly) {
        let e = self.coeffs.entry(k).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn coeff(&self, k: u32) -> BetaPoly {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&u32, &BetaPoly)> {
        self.coeffs.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut r = self.clone();
        for (k, c) in &other.coeffs {
            r.add_term(*k, c);
        }
        r
    }

    pub fn scale(&self, c: &BetaPoly) -> Self {
        let mut r = Self::zero();
        for (k, x) in &self.coeffs {
            r.add_term(*k, &(x * c));
        }
        r
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut r = Self::zero();
        for (i, a) in &self.coeffs {
            for (j, b) in &other.coeffs {
                r.add_term(i + j, &(a * b));
            }
        }
        r
    }

    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, c)| {
                let t = match k {
                    0 => String::new(),
                    1 => "t".into(),
                    _ => format!("t^{k}"),
                };
                match (c.to_text().as_str(), t.is_empty()) {
                    (s, true) => s.to_string(),
                    ("1", false) => t,
                    (s, false) => format!("({s})*{t}"),
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}
