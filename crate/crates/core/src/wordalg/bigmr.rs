//! The quotient `MMR = WQSym / I_M` with basis `[A]_M`, `A` a big multipermutation.

use std::collections::BTreeMap;

use crate::error::{KhopfError, Result};
use crate::exactpoly::{int, BetaPoly, TruncationContext};
use crate::qsymbases::BasisExpansion;
use crate::shapes::Composition;

use super::combination::{Combination, Tensor};
use super::setcomp::{big_multiperms, bullet_product, normal_form, require_enumerable, SetComposition};

pub type SetCompCombination = Combination<SetComposition>;
pub type SetCompTensor = Combination<Tensor<SetComposition>>;

fn beta_pow(k: u32) -> BetaPoly {
    BetaPoly::monomial(int(1), k as usize)
}

/// Rewrite any combination of set compositions in the basis `[A]_M`.
pub fn reduce(x: &SetCompCombination) -> SetCompCombination {
    let mut out = SetCompCombination::new();
    for (b, c) in x.iter() {
        let nf = normal_form(b);
        out.add_term(nf.rep, &(c * &beta_pow(nf.beta_power)));
    }
    out
}

/// Product in `MMR`: quasi-shuffle of blocks, then reduction.
pub fn bigmr_mul(x: &SetCompCombination, y: &SetCompCombination) -> SetCompCombination {
    let mut raw = SetCompCombination::new();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let c = ca * cb;
            for z in bullet_product(a, b) {
                raw.add_term(z, &c);
            }
        }
    }
    reduce(&raw)
}

/// Deconcatenation with both legs standardized and reduced.
pub fn bigmr_comul(x: &SetCompCombination) -> SetCompTensor {
    let mut out = SetCompTensor::new();
    for (a, c) in x.iter() {
        let bl = a.blocks();
        for i in 0..=bl.len() {
            let l = normal_form(&SetComposition::standardized(&bl[..i]));
            let r = normal_form(&SetComposition::standardized(&bl[i..]));
            out.add_term(Tensor(l.rep, r.rep), &(c * &beta_pow(l.beta_power + r.beta_power)));
        }
    }
    out
}

/// `R_alpha = sum of [A]_M over A in S^M_n with Des(A) = I(alpha)`.
pub fn r_element(alpha: &Composition) -> Result<SetCompCombination> {
    let n = alpha.size() as usize;
    let target = alpha.interval_set();
    Ok(big_multiperms(n)?.into_iter().filter(|a| a.descents() == target).map(|a| (a, BetaPoly::one())).collect())
}

/// Coordinates of an `MMR` element in the `R` basis.
///
/// Fails when the element is not constant on descent classes, i.e. does not
/// lie in `MNSym`.
pub fn expand_in_r(x: &SetCompCombination) -> Result<BTreeMap<Composition, BetaPoly>> {
    let mut out: BTreeMap<Composition, BetaPoly> = BTreeMap::new();
    let top = x.keys().map(|a| a.size() as usize).max().unwrap_or(0);
    require_enumerable(top)?;
    for n in 0..=top {
        for a in big_multiperms(n)? {
            let c = x.coeff(&a);
            let d = a.alpha_des();
            match out.get(&d) {
                Some(prev) if *prev != c => {
                    return Err(KhopfError::NotInvariant {
                        kind: "in MNSym",
                        left: format!("[{a}]"),
                        right: format!("another element of descent class {d}"),
                    });
                }
                Some(_) => {}
                None => {
                    out.insert(d, c);
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// `R_alpha R_gamma` in the `R` basis, computed inside `MMR`.
pub fn r_product(alpha: &Composition, gamma: &Composition) -> Result<BasisExpansion<Composition>> {
    let n = (alpha.size() + gamma.size()) as usize;
    require_enumerable(n)?;
    let p = bigmr_mul(&r_element(alpha)?, &r_element(gamma)?);
    let coeffs = expand_in_r(&p)?;
    Ok(BasisExpansion::new("R", coeffs, TruncationContext::nd(n.max(1), n)))
}
