//! Multipeak elements inside `MMR`, and the projection onto shifted symmetric functions.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{KhopfError, Result};
use crate::exactpoly::{int, pow2, BetaPoly, TruncationContext};
use crate::memo::Memo;
use crate::qsymbases::BasisExpansion;
use crate::shapes::{compositions, strict_partitions_upto, Partition, PeakComposition, StrictPartition};
use crate::shiftedsym::{change_of_basis_closed, kcoeff, ClosedChange, SymFamily};
use crate::wordalg::{big_multiperms, r_element, reduce, sbar_multiperms, SetCompCombination, SetComposition};

use super::element::{convert, PeakBasis, PeakElement};

type ByPeak = BTreeMap<PeakComposition, Vec<SetComposition>>;

fn group(v: Vec<SetComposition>) -> ByPeak {
    let mut m = ByPeak::new();
    for a in v {
        m.entry(a.alpha_peak()).or_default().push(a);
    }
    m
}

/// `S^M_n` grouped by peak composition.
fn big_by_peak(n: usize) -> Result<Arc<ByPeak>> {
    static T: Memo<usize, ByPeak> = Memo::new();
    T.get_or_try(&n, || Ok(group(big_multiperms(n)?)))
}

/// `S̄^M_n` grouped by peak composition.
fn sbar_by_peak(n: usize) -> Result<Arc<ByPeak>> {
    static T: Memo<usize, ByPeak> = Memo::new();
    T.get_or_try(&n, || Ok(group(sbar_multiperms(n)?)))
}

/// The image of `x` in `MMR`.
///
/// `Π_α` is the sum of `[A]_M` over big multipermutations with peak
/// composition `α`; `Θ̄_α` is the sum over `S̄^M` weighted by
/// `2^{ℓ(α) - o(A)}`, reduced to normal form.
pub fn realize(x: &PeakElement) -> Result<SetCompCombination> {
    let mut out = SetCompCombination::new();
    for (alpha, c) in x.coeffs() {
        let n = alpha.size() as usize;
        match x.basis() {
            PeakBasis::Tpeak => {
                for a in big_by_peak(n)?.get(alpha).into_iter().flatten() {
                    out.add_term(a.clone(), c);
                }
            }
            PeakBasis::Opeak => {
                let mut raw = SetCompCombination::new();
                for a in sbar_by_peak(n)?.get(alpha).into_iter().flatten() {
                    let w = pow2(alpha.len() as i64 - a.o() as i64);
                    raw.add_term(a.clone(), &c.scale(&w));
                }
                out.add_assign(&reduce(&raw));
            }
        }
    }
    Ok(out)
}

/// `Π_α` as `Σ R_γ` over compositions `γ` with `Λ(γ) = α`.
pub fn realize_tpeak_via_r(alpha: &PeakComposition) -> Result<SetCompCombination> {
    let mut out = SetCompCombination::new();
    for g in compositions(alpha.size()) {
        if &g.lambda_peak() == alpha {
            out.add_assign(&r_element(&g)?);
        }
    }
    Ok(out)
}

/// Recognize an `MMR` element as a combination of the `Π_α`.
///
/// Fails when `y` is not constant on peak classes.
pub fn recognize(y: &SetCompCombination) -> Result<PeakElement> {
    let top = y.keys().map(|a| a.size() as usize).max().unwrap_or(0);
    let mut out = PeakElement::zero(PeakBasis::Tpeak);
    for n in 0..=top {
        for (alpha, class) in big_by_peak(n)?.iter() {
            let c = y.coeff(&class[0]);
            if let Some(a) = class.iter().find(|a| y.coeff(a) != c) {
                return Err(KhopfError::NotInvariant {
                    kind: "in the multipeak subalgebra",
                    left: format!("[{}]", class[0]),
                    right: format!("[{a}]"),
                });
            }
            out.add_term(alpha.clone(), &c);
        }
    }
    Ok(out)
}

/// The image of `x` under the projection to `ΓK`, in `gp` or `gq`.
///
/// `Π_α ↦ Σ_λ k^α_λ β^{|α| - |λ|} gp_λ`; a `gq` target is reached by
/// inverting the triangular `gq → gp` formula from the top size down.
pub fn project_to_sym(x: &PeakElement, target: SymFamily) -> Result<BasisExpansion<Partition>> {
    if !matches!(target, SymFamily::SmallGP | SymFamily::SmallGQ) {
        return Err(KhopfError::InvalidIndex(format!("projection targets gp or gq, not {}", target.name())));
    }
    let x = convert(x, PeakBasis::Tpeak);
    let top = x.max_size();
    let mut gp: BTreeMap<StrictPartition, BetaPoly> = BTreeMap::new();
    for (alpha, c) in x.coeffs() {
        for lambda in strict_partitions_upto(alpha.size()) {
            let k = kcoeff(alpha, &lambda);
            if k > 0 {
                let w = BetaPoly::monomial(int(k as i64), (alpha.size() - lambda.size()) as usize);
                *gp.entry(lambda).or_default() += &(c * &w);
            }
        }
    }
    gp.retain(|_, c| !c.is_zero());
    let coeffs = match target {
        SymFamily::SmallGP => gp,
        _ => gp_to_gq(gp),
    };
    let ctx = TruncationContext::nd(top.max(1) as usize, top.max(1) as usize);
    Ok(BasisExpansion::new(
        target.name(),
        coeffs.into_iter().map(|(l, c)| (l.as_partition().clone(), c)).collect(),
        ctx,
    ))
}

fn gp_to_gq(mut rest: BTreeMap<StrictPartition, BetaPoly>) -> BTreeMap<StrictPartition, BetaPoly> {
    let mut out = BTreeMap::new();
    while let Some((lambda, c)) = rest.pop_last() {
        // gq_λ = 2^ℓ gp_λ + (strictly smaller terms)
        let a = c.scale(&pow2(-(lambda.len() as i64)));
        for (mu, w) in change_of_basis_closed(ClosedChange::SmallGqToGp, &lambda) {
            if mu != lambda {
                let e = rest.entry(mu.clone()).or_default();
                *e -= &(&a * &w);
                if e.is_zero() {
                    rest.remove(&mu);
                }
            }
        }
        out.insert(lambda, a);
    }
    out
}
