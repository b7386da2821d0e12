//! Coproduct and antipode: closed forms on generators, and the general maps
//! obtained by rewriting into the free odd generators `Π_1, Π_3, Π_5, ...`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{KhopfError, Result};
use crate::exactpoly::{binomial, int, BetaPoly, Coeff};
use crate::memo::Memo;
use crate::qsymbases::{format_terms, index_text};
use crate::shapes::{compositions, peak_compositions, Composition, PeakComposition};
use crate::wordalg::{Combination, Tensor};

use super::element::{convert, tpeak_mul, PeakBasis, PeakElement};

/// An element of a tensor square of multipeak algebras, with a basis chosen on each leg.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeakTensor {
    pub left: PeakBasis,
    pub right: PeakBasis,
    terms: Combination<Tensor<PeakComposition>>,
}

impl PeakTensor {
    pub fn zero(left: PeakBasis, right: PeakBasis) -> Self {
        PeakTensor { left, right, terms: Combination::new() }
    }

    pub fn terms(&self) -> &Combination<Tensor<PeakComposition>> {
        &self.terms
    }

    pub fn coeff(&self, a: &PeakComposition, b: &PeakComposition) -> BetaPoly {
        self.terms.coeff(&Tensor(a.clone(), b.clone()))
    }

    pub fn add_term(&mut self, a: PeakComposition, b: PeakComposition, c: &BetaPoly) {
        self.terms.add_term(Tensor(a, b), c);
    }

    /// `x ⊗ y`.
    pub fn outer(x: &PeakElement, y: &PeakElement) -> Self {
        let mut t = PeakTensor::zero(x.basis(), y.basis());
        for (a, ca) in x.coeffs() {
            for (b, cb) in y.coeffs() {
                t.add_term(a.clone(), b.clone(), &(ca * cb));
            }
        }
        t
    }

    pub fn add_assign(&mut self, other: &PeakTensor) -> Result<()> {
        if (self.left, self.right) != (other.left, other.right) {
            return Err(KhopfError::InvalidIndex("tensor legs use different bases".into()));
        }
        self.terms.add_assign(&other.terms);
        Ok(())
    }

    /// Change the basis on each leg.
    pub fn convert(&self, left: PeakBasis, right: PeakBasis) -> PeakTensor {
        let mut out = PeakTensor::zero(left, right);
        for (Tensor(a, b), c) in self.terms.iter() {
            let x = convert(&PeakElement::basis_element(self.left, a.clone()), left);
            let y = convert(&PeakElement::basis_element(self.right, b.clone()), right);
            out.terms.add_assign(&PeakTensor::outer(&x, &y).terms.scale(c));
        }
        out
    }

    /// `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`, legs multiplied in their own bases.
    pub fn try_mul(&self, other: &PeakTensor) -> Result<PeakTensor> {
        if (self.left, self.right) != (other.left, other.right) {
            return Err(KhopfError::InvalidIndex("tensor legs use different bases".into()));
        }
        let mut out = PeakTensor::zero(self.left, self.right);
        for (Tensor(a, b), c1) in self.terms.iter() {
            for (Tensor(c, d), c2) in other.terms.iter() {
                let l = PeakElement::basis_element(self.left, a.clone())
                    .try_mul(&PeakElement::basis_element(self.left, c.clone()))?;
                let r = PeakElement::basis_element(self.right, b.clone())
                    .try_mul(&PeakElement::basis_element(self.right, d.clone()))?;
                out.terms.add_assign(&PeakTensor::outer(&l, &r).terms.scale(&(c1 * c2)));
            }
        }
        Ok(out)
    }

    pub fn to_text(&self) -> String {
        let leg = |basis: PeakBasis, a: &PeakComposition| {
            if a.is_empty() {
                "1".to_string()
            } else {
                format!("{}[{}]", basis.prefix(), index_text(&a.to_string()))
            }
        };
        format_terms(
            self.terms.iter().map(|(Tensor(a, b), c)| (format!("{} ⊗ {}", leg(self.left, a), leg(self.right, b)), c)),
        )
    }
}

impl fmt::Display for PeakTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

fn gen_index(n: u32) -> PeakComposition {
    if n == 0 {
        PeakComposition::empty()
    } else {
        PeakComposition::from_slice(&[n])
    }
}

/// `Δ` of the generator `(n)` in `basis ⊗ basis`.
///
/// `Δ(Θ̄_n) = Σ_{i=0}^n Θ̄_i ⊗ Θ̄_{n-i}`; for `Π_n` the form
/// `1 ⊗ Π_n + Σ_{i=1}^n Π_i ⊗ Θ̄_{n-i}` is used, then converted.
pub fn coproduct_generator(n: u32, basis: PeakBasis) -> PeakTensor {
    match basis {
        PeakBasis::Opeak => {
            let mut t = PeakTensor::zero(PeakBasis::Opeak, PeakBasis::Opeak);
            for i in 0..=n {
                t.add_term(gen_index(i), gen_index(n - i), &BetaPoly::one());
            }
            t
        }
        PeakBasis::Tpeak => tpeak_coproduct_forms(n)[0].clone(),
    }
}

/// Three expressions for `Δ(Π_n)`, each rewritten in `tpeak ⊗ tpeak`:
/// `1 ⊗ Π_n + Σ_{i≥1} Π_i ⊗ Θ̄_{n-i}`, `Π_n ⊗ 1 + Σ_{i<n} Θ̄_i ⊗ Π_{n-i}`, and
/// the expanded `1 ⊗ Π_n + Π_n ⊗ 1 + 2 Σ Π_i ⊗ Π_{n-i} + β Σ Π_i ⊗ Π_{n-1-i}`.
pub fn tpeak_coproduct_forms(n: u32) -> [PeakTensor; 3] {
    use PeakBasis::{Opeak, Tpeak};
    let gen = |b, i| PeakElement::generator(b, i);
    let mut left = PeakTensor::outer(&gen(Tpeak, 0), &gen(Tpeak, n));
    for i in 1..=n {
        let t = PeakTensor::outer(&gen(Tpeak, i), &convert(&gen(Opeak, n - i), Tpeak));
        left.add_assign(&t).expect("same legs");
    }
    let mut right = PeakTensor::outer(&gen(Tpeak, n), &gen(Tpeak, 0));
    for i in 0..n {
        let t = PeakTensor::outer(&convert(&gen(Opeak, i), Tpeak), &gen(Tpeak, n - i));
        right.add_assign(&t).expect("same legs");
    }
    let mut expanded = PeakTensor::zero(Tpeak, Tpeak);
    if n == 0 {
        expanded.add_term(gen_index(0), gen_index(0), &BetaPoly::one());
    } else {
        expanded.add_term(gen_index(0), gen_index(n), &BetaPoly::one());
        expanded.add_term(gen_index(n), gen_index(0), &BetaPoly::one());
        for i in 1..n {
            expanded.add_term(gen_index(i), gen_index(n - i), &BetaPoly::from_int(2));
        }
        for i in 1..n.saturating_sub(1) {
            expanded.add_term(gen_index(i), gen_index(n - 1 - i), &BetaPoly::monomial(int(1), 1));
        }
    }
    [left, right, expanded]
}

/// Closed-form antipode of the generator `(n)`:
/// `S(Θ̄_n) = (-1)^n Σ_k C(n-1,k-1) β^{n-k} Θ̄_k`, `S(Π_n) = (-1)^n Σ_k C(n,k) β^{n-k} Π_k`.
pub fn antipode_generator(n: u32, basis: PeakBasis) -> PeakElement {
    if n == 0 {
        return PeakElement::one(basis);
    }
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let mut out = PeakElement::zero(basis);
    for k in 1..=n {
        let b = match basis {
            PeakBasis::Opeak => binomial(n as u64 - 1, k as u64 - 1),
            PeakBasis::Tpeak => binomial(n as u64, k as u64),
        };
        out.add_term(gen_index(k), &BetaPoly::monomial(int(sign * b), (n - k) as usize));
    }
    out
}

/// `Π_{α_1} Π_{α_2} ⋯ Π_{α_m}`.
pub fn generator_monomial(alpha: &Composition) -> PeakElement {
    static XI: Memo<Vec<u32>, PeakElement> = Memo::new();
    let v = XI.get_or(&alpha.parts().to_vec(), || {
        let mut x = PeakElement::one(PeakBasis::Tpeak);
        for &p in alpha.parts() {
            x = tpeak_mul(&x, &PeakElement::generator(PeakBasis::Tpeak, p)).expect("tpeak factors");
        }
        x
    });
    (*v).clone()
}

pub fn odd_compositions(n: u32) -> Vec<Composition> {
    compositions(n).into_iter().filter(|c| c.parts().iter().all(|p| p % 2 == 1)).collect()
}

/// Top-size block at size `n`, inverted: maps `Π` coordinates at size `n`
/// to coordinates in the odd generator monomials.
pub(crate) struct GeneratorBlock {
    pub peaks: Vec<PeakComposition>,
    pub odds: Vec<Composition>,
    inv: Vec<Vec<Coeff>>,
}

pub(crate) fn generator_block(n: u32) -> Result<std::sync::Arc<GeneratorBlock>> {
    static BLOCKS: Memo<u32, GeneratorBlock> = Memo::new();
    BLOCKS.get_or_try(&n, || {
        let peaks = peak_compositions(n);
        let odds = odd_compositions(n);
        if peaks.len() != odds.len() {
            return Err(KhopfError::IdentityViolation(format!(
                "{} peak compositions but {} odd compositions of {n}",
                peaks.len(),
                odds.len()
            )));
        }
        let mut m = vec![vec![Coeff::zero(); odds.len()]; peaks.len()];
        for (j, a) in odds.iter().enumerate() {
            let x = generator_monomial(a);
            for (i, p) in peaks.iter().enumerate() {
                let c = x.coeff(p);
                if c.degree().unwrap_or(0) > 0 {
                    return Err(KhopfError::IdentityViolation(format!(
                        "top-size coefficient of P[{p}] in the monomial {a} involves β"
                    )));
                }
                m[i][j] = c.coeff(0);
            }
        }
        let inv = invert(&m)
            .ok_or_else(|| KhopfError::IdentityViolation(format!("odd generator monomials are dependent in size {n}")))?;
        Ok(GeneratorBlock { peaks, odds, inv })
    })
}

/// Gauss-Jordan inverse over the rationals.
pub(crate) fn invert(m: &[Vec<Coeff>]) -> Option<Vec<Vec<Coeff>>> {
    let k = m.len();
    let mut a: Vec<Vec<Coeff>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..k).map(|j| if i == j { Coeff::one() } else { Coeff::zero() }));
            r
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..2 * k {
                    let d = &a[col][j] * &f;
                    a[r][j] -= d;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[k..].to_vec()).collect())
}

/// Coordinates of `x` in the monomials of the odd generators.
pub fn to_generators(x: &PeakElement) -> Result<Combination<Composition>> {
    let mut rest = convert(x, PeakBasis::Tpeak);
    let mut out = Combination::new();
    for n in (1..=rest.max_size()).rev() {
        let block = generator_block(n)?;
        let v: Vec<BetaPoly> = block.peaks.iter().map(|p| rest.coeff(p)).collect();
        for (j, a) in block.odds.iter().enumerate() {
            let mut c = BetaPoly::zero();
            for (i, vi) in v.iter().enumerate() {
                if !block.inv[j][i].is_zero() {
                    c += &vi.scale(&block.inv[j][i]);
                }
            }
            if !c.is_zero() {
                rest = rest.try_sub(&generator_monomial(a).scale(&c))?;
                out.add_term(a.clone(), &c);
            }
        }
    }
    let c0 = rest.coeff(&PeakComposition::empty());
    out.add_term(Composition::empty(), &c0);
    rest.add_term(PeakComposition::empty(), &c0.scale(&int(-1)));
    if !rest.is_zero() {
        return Err(KhopfError::IdentityViolation(format!("generator rewriting left {rest}")));
    }
    Ok(out)
}

/// `Σ c_α Π_{α_1} ⋯ Π_{α_m}` in the `Π` basis.
pub fn from_generators(c: &Combination<Composition>) -> PeakElement {
    let mut out = PeakElement::zero(PeakBasis::Tpeak);
    for (a, k) in c.iter() {
        out = out.try_add(&generator_monomial(a).scale(k)).expect("tpeak");
    }
    out
}

/// `ε(x)`: the coefficient of the unit.
pub fn counit(x: &PeakElement) -> BetaPoly {
    x.coeff(&PeakComposition::empty())
}

/// `Δ(x)` in `tpeak ⊗ tpeak`, extended multiplicatively from the generators.
pub fn coproduct(x: &PeakElement) -> Result<PeakTensor> {
    use PeakBasis::Tpeak;
    let mut out = PeakTensor::zero(Tpeak, Tpeak);
    for (a, c) in to_generators(x)?.iter() {
        let mut t = PeakTensor::outer(&PeakElement::one(Tpeak), &PeakElement::one(Tpeak));
        for &p in a.parts() {
            t = t.try_mul(&coproduct_generator(p, Tpeak))?;
        }
        out.terms.add_assign(&t.terms.scale(c));
    }
    Ok(out)
}

/// `S(x)` in the basis of `x`, as the anti-automorphism determined by the generators.
pub fn antipode(x: &PeakElement) -> Result<PeakElement> {
    use PeakBasis::Tpeak;
    let mut out = PeakElement::zero(Tpeak);
    for (a, c) in to_generators(x)?.iter() {
        let mut t = PeakElement::one(Tpeak);
        for &p in a.parts().iter().rev() {
            t = tpeak_mul(&t, &antipode_generator(p, Tpeak))?;
        }
        out = out.try_add(&t.scale(c))?;
    }
    Ok(convert(&out, x.basis()))
}
