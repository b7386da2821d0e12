use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{KhopfError, Result};
use crate::exactpoly::{int, pow2, BetaPoly, Coeff};
use crate::qsymbases::format_combination;
use crate::shapes::PeakComposition;
use crate::wordalg::Combination;

/// The two multipeak bases: `Π_α` (`tpeak`, printed `P`) and `Θ̄_α` (`opeak`, printed `Q`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PeakBasis {
    Tpeak,
    Opeak,
}

impl PeakBasis {
    pub fn name(&self) -> &'static str {
        match self {
            PeakBasis::Tpeak => "tpeak",
            PeakBasis::Opeak => "opeak",
        }
    }

    pub fn prefix(&self) -> &'static str {
        match self {
            PeakBasis::Tpeak => "P",
            PeakBasis::Opeak => "Q",
        }
    }
}

impl fmt::Display for PeakBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PeakBasis {
    type Err = KhopfError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "tpeak" | "P" | "Pi" => Ok(PeakBasis::Tpeak),
            "opeak" | "Q" | "Theta" => Ok(PeakBasis::Opeak),
            other => Err(KhopfError::Parse(format!("unknown peak basis {other:?}"))),
        }
    }
}

/// The six ways of gluing two nonempty compositions `α` (length `m`) and `γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Glue {
    /// `αγ`.
    Concat,
    /// `(..., α_m + γ_1, γ_2, ...)`.
    Merge,
    /// `(..., α_m + γ_1 - 1, γ_2, ...)`.
    MergeDown,
    /// `(..., α_m + 1, γ_1 - 1, γ_2, ...)`.
    Shift,
    /// `(α_1, ..., α_m, γ_1 - 1, γ_2, ...)`.
    Lower,
    /// `(..., α_m + γ_1 - 2, γ_2, ...)`.
    MergeDown2,
}

/// Glue `α` and `γ`; `None` when the result has a zero part or is not a peak composition.
pub fn glue(kind: Glue, alpha: &[u32], gamma: &[u32]) -> Option<PeakComposition> {
    let (&am, ahead) = alpha.split_last()?;
    let (&g1, gtail) = gamma.split_first()?;
    let (am, g1) = (am as i64, g1 as i64);
    let mut v: Vec<i64> = ahead.iter().map(|&x| x as i64).collect();
    match kind {
        Glue::Concat => v.extend([am, g1]),
        Glue::Merge => v.push(am + g1),
        Glue::MergeDown => v.push(am + g1 - 1),
        Glue::Shift => v.extend([am + 1, g1 - 1]),
        Glue::Lower => v.extend([am, g1 - 1]),
        Glue::MergeDown2 => v.push(am + g1 - 2),
    }
    v.extend(gtail.iter().map(|&x| x as i64));
    if v.iter().any(|&x| x <= 0) {
        return None;
    }
    PeakComposition::new(v.into_iter().map(|x| x as u32).collect()).ok()
}

/// A finite `Q[β]`-combination of `Π_α` or of `Θ̄_α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeakElement {
    basis: PeakBasis,
    coeffs: Combination<PeakComposition>,
}

fn beta_pow(c: i64, k: usize) -> BetaPoly {
    BetaPoly::monomial(int(c), k)
}

impl PeakElement {
    pub fn zero(basis: PeakBasis) -> Self {
        PeakElement { basis, coeffs: Combination::new() }
    }

    pub fn one(basis: PeakBasis) -> Self {
        Self::basis_element(basis, PeakComposition::empty())
    }

    pub fn basis_element(basis: PeakBasis, alpha: PeakComposition) -> Self {
        PeakElement { basis, coeffs: Combination::single(alpha, BetaPoly::one()) }
    }

    /// The generator indexed by the one-part composition `(n)`; `n = 0` gives `1`.
    pub fn generator(basis: PeakBasis, n: u32) -> Self {
        let alpha = if n == 0 { PeakComposition::empty() } else { PeakComposition::from_slice(&[n]) };
        Self::basis_element(basis, alpha)
    }

    pub fn from_terms(basis: PeakBasis, terms: impl IntoIterator<Item = (PeakComposition, BetaPoly)>) -> Self {
        PeakElement { basis, coeffs: terms.into_iter().collect() }
    }

    pub fn basis(&self) -> PeakBasis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<PeakComposition, BetaPoly> {
        self.coeffs.as_map()
    }

    pub fn coeff(&self, alpha: &PeakComposition) -> BetaPoly {
        self.coeffs.coeff(alpha)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Largest `|α|` in the support.
    pub fn max_size(&self) -> u32 {
        self.coeffs.keys().map(|a| a.size()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, alpha: PeakComposition, c: &BetaPoly) {
        self.coeffs.add_term(alpha, c);
    }

    fn same_basis(&self, other: &Self) -> Result<()> {
        if self.basis != other.basis {
            return Err(KhopfError::InvalidIndex(format!(
                "cannot combine {} and {} elements; convert first",
                self.basis, other.basis
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_basis(other)?;
        let mut r = self.clone();
        r.coeffs.add_assign(&other.coeffs);
        Ok(r)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&BetaPoly::from_int(-1)))
    }

    pub fn scale(&self, c: &BetaPoly) -> Self {
        PeakElement { basis: self.basis, coeffs: self.coeffs.scale(c) }
    }

    /// Product in the element's own basis.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        match self.basis {
            PeakBasis::Tpeak => tpeak_mul(self, other),
            PeakBasis::Opeak => opeak_mul(self, other),
        }
    }

    pub fn to_text(&self) -> String {
        format_combination(self.basis.prefix(), self.coeffs.iter().map(|(a, c)| (a.to_string(), c)))
    }
}

impl fmt::Display for PeakElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Shared bilinear driver; `basic` multiplies two nonempty basis indices.
fn bilinear(
    x: &PeakElement,
    y: &PeakElement,
    basis: PeakBasis,
    basic: fn(&[u32], &[u32], &mut Combination<PeakComposition>, &BetaPoly),
) -> Result<PeakElement> {
    for e in [x, y] {
        if e.basis != basis {
            return Err(KhopfError::InvalidIndex(format!("expected a {basis} element, got {}; convert first", e.basis)));
        }
    }
    let mut out = Combination::new();
    for (a, ca) in x.coeffs.iter() {
        for (g, cg) in y.coeffs.iter() {
            let c = ca * cg;
            if a.is_empty() {
                out.add_term(g.clone(), &c);
            } else if g.is_empty() {
                out.add_term(a.clone(), &c);
            } else {
                basic(a.parts(), g.parts(), &mut out, &c);
            }
        }
    }
    Ok(PeakElement { basis, coeffs: out })
}

fn push(out: &mut Combination<PeakComposition>, kind: Glue, a: &[u32], g: &[u32], c: &BetaPoly, scalar: i64, k: usize) {
    if scalar == 0 {
        return;
    }
    if let Some(idx) = glue(kind, a, g) {
        out.add_term(idx, &(c * &beta_pow(scalar, k)));
    }
}

fn tpeak_basic(a: &[u32], g: &[u32], out: &mut Combination<PeakComposition>, c: &BetaPoly) {
    push(out, Glue::Shift, a, g, c, 1, 0);
    push(out, Glue::Merge, a, g, c, 1, 0);
    push(out, Glue::Concat, a, g, c, 1, 0);
    push(out, Glue::MergeDown, a, g, c, 1, 1);
    push(out, Glue::Lower, a, g, c, 1, 1);
}

fn opeak_basic(a: &[u32], g: &[u32], out: &mut Combination<PeakComposition>, c: &BetaPoly) {
    // r: α with its last part lowered is still a peak composition
    let r = (*a.last().expect("nonempty") > 1) as i64;
    // s: γ with its first part lowered is still a peak composition
    let s = (g[0] > 2 || g == [2]) as i64;
    push(out, Glue::Shift, a, g, c, 1, 0);
    push(out, Glue::Merge, a, g, c, 2, 0);
    push(out, Glue::Concat, a, g, c, 1, 0);
    push(out, Glue::MergeDown, a, g, c, 1 + r + s, 1);
    push(out, Glue::Lower, a, g, c, 1, 1);
    push(out, Glue::MergeDown2, a, g, c, r * s, 2);
}

/// Product in the `Π` basis.
pub fn tpeak_mul(x: &PeakElement, y: &PeakElement) -> Result<PeakElement> {
    bilinear(x, y, PeakBasis::Tpeak, tpeak_basic)
}

/// Product in the `Θ̄` basis.
pub fn opeak_mul(x: &PeakElement, y: &PeakElement) -> Result<PeakElement> {
    bilinear(x, y, PeakBasis::Opeak, opeak_basic)
}

/// Rewrite `x` in the basis `to`.
pub fn convert(x: &PeakElement, to: PeakBasis) -> PeakElement {
    if x.basis == to {
        return x.clone();
    }
    let mut out = Combination::new();
    for (alpha, c) in x.coeffs.iter() {
        let parts = alpha.parts();
        let l = parts.len();
        match to {
            // Θ̄_α = Σ_{δ ∈ {0,1}^ℓ} 2^{ℓ-|δ|} β^{|δ|} Π_{α-δ}
            PeakBasis::Tpeak => {
                for mask in 0u32..(1 << l) {
                    let d = mask.count_ones() as usize;
                    let v: Vec<u32> = (0..l).map(|i| parts[i] - (mask >> i & 1)).collect();
                    if let Some(idx) = peak_index(v) {
                        let w = BetaPoly::monomial(pow2((l - d) as i64), d);
                        out.add_term(idx, &(c * &w));
                    }
                }
            }
            // Π_α = Σ_{δ ≥ 0} 2^{-ℓ-|δ|} (-β)^{|δ|} Θ̄_{α-δ}, with δ_i < α_i
            PeakBasis::Opeak => {
                let mut delta = vec![0u32; l];
                loop {
                    let v: Vec<u32> = (0..l).map(|i| parts[i] - delta[i]).collect();
                    if let Some(idx) = peak_index(v) {
                        let d: u32 = delta.iter().sum();
                        let sign: Coeff = if d.is_multiple_of(2) { int(1) } else { int(-1) };
                        let w = BetaPoly::monomial(pow2(-(l as i64) - d as i64) * sign, d as usize);
                        out.add_term(idx, &(c * &w));
                    }
                    // odometer over δ_i in [0, α_i - 1]
                    let mut i = 0;
                    while i < l {
                        delta[i] += 1;
                        if delta[i] < parts[i] {
                            break;
                        }
                        delta[i] = 0;
                        i += 1;
                    }
                    if i == l {
                        break;
                    }
                }
            }
        }
    }
    PeakElement { basis: to, coeffs: out }
}

fn peak_index(v: Vec<u32>) -> Option<PeakComposition> {
    if v.contains(&0) {
        return None;
    }
    PeakComposition::new(v).ok()
}
