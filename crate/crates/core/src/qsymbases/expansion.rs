use std::collections::BTreeMap;
use std::fmt::{self, Display};
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{KhopfError, Result};
use crate::exactpoly::{coeff_to_string, BetaPoly, TruncationContext};

/// Coefficients of an element in a named (pseudo)basis.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisExpansion<I: Ord> {
    pub family: String,
    pub coeffs: BTreeMap<I, BetaPoly>,
    pub ctx: TruncationContext,
    /// False when the element could not be fully explained by the family.
    pub residual_zero: bool,
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    index: String,
    beta: Vec<String>,
}

#[derive(Deserialize)]
struct ExpansionIn {
    family: String,
    coeffs: Vec<EntryJson>,
    ctx: TruncationContext,
    residual_zero: bool,
}

#[derive(Serialize)]
struct ExpansionJson<'a> {
    family: &'a str,
    coeffs: Vec<EntryJson>,
    ctx: TruncationContext,
    residual_zero: bool,
}

impl<I: Ord + Clone + Display> BasisExpansion<I> {
    pub fn new(family: impl Into<String>, coeffs: BTreeMap<I, BetaPoly>, ctx: TruncationContext) -> Self {
        let mut coeffs = coeffs;
        coeffs.retain(|_, v| !v.is_zero());
        BasisExpansion { family: family.into(), coeffs, ctx, residual_zero: true }
    }

    pub fn coeff(&self, i: &I) -> BetaPoly {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// All coefficients have nonnegative rational coefficients in beta.
    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|v| v.all_nonnegative())
    }

    /// First index with a negative coefficient.
    pub fn negative_witness(&self) -> Option<(&I, &BetaPoly)> {
        self.coeffs.iter().find(|(_, v)| !v.all_nonnegative())
    }

    pub fn to_json(&self) -> String {
        let j = ExpansionJson {
            family: &self.family,
            coeffs: self
                .coeffs
                .iter()
                .map(|(i, v)| EntryJson { index: index_text(&i.to_string()), beta: v.to_strings() })
                .collect(),
            ctx: self.ctx,
            residual_zero: self.residual_zero,
        };
        serde_json::to_string(&j).expect("serializable")
    }

    /// Text such as `4*GP[3,2] + 2b*GP[4,2] - b^2*GP[4,3]`.
    pub fn to_text(&self) -> String {
        format_combination(&self.family, self.coeffs.iter().map(|(i, v)| (i.to_string(), v)))
    }
}

impl<I: Ord + Clone + Display + FromStr<Err = KhopfError>> BasisExpansion<I> {
    /// Inverse of [`BasisExpansion::to_json`].
    pub fn from_json(s: &str) -> Result<Self> {
        let j: ExpansionIn = serde_json::from_str(s)?;
        let coeffs = j
            .coeffs
            .iter()
            .map(|e| Ok((e.index.parse()?, BetaPoly::from_strings(&e.beta)?)))
            .collect::<Result<BTreeMap<I, BetaPoly>>>()?;
        let mut e = BasisExpansion::new(j.family, coeffs, j.ctx);
        e.residual_zero = j.residual_zero;
        Ok(e)
    }
}

impl<I: Ord + Clone + Display> Display for BasisExpansion<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

/// `"()"` becomes the empty string inside brackets.
pub(crate) fn index_text(s: &str) -> String {
    if s == "()" {
        String::new()
    } else {
        s.to_string()
    }
}

/// Render `sum c_i * FAM[i]`.
pub(crate) fn format_combination<'a>(family: &str, terms: impl Iterator<Item = (String, &'a BetaPoly)>) -> String {
    format_terms(terms.map(|(idx, c)| (format!("{family}[{}]", index_text(&idx)), c)))
}

/// Render `sum c_i * label_i` with the labels taken verbatim.
pub(crate) fn format_terms<'a>(terms: impl Iterator<Item = (String, &'a BetaPoly)>) -> String {
    let mut out = String::new();
    for (label, c) in terms {
        if c.is_zero() {
            continue;
        }
        let (neg, body) = match c.as_monomial() {
            Some((k, a)) => {
                let neg = a.is_negative();
                let a = a.abs();
                let coef = if k == 0 {
                    if a.is_one() {
                        String::new()
                    } else {
                        format!("{}*", coeff_to_string(&a))
                    }
                } else {
                    format!("{}*", BetaPoly::monomial(a, k).to_text())
                };
                (neg, format!("{coef}{label}"))
            }
            None => (false, format!("({})*{label}", c.to_text())),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}
