//! Identity checks for the peak families `K` and `Kbar`.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::exactpoly::{int, pow2, BetaPoly, TruncPoly, TruncationContext};
use crate::shapes::{peak_compositions_upto, Composition, PeakComposition};
use crate::shiftedsym::{first_difference, IdentityReport};
use crate::wordalg::poly_coproduct;

use super::basis::{qsym_basis_arc, QBasisTag};
use super::ops::{antipode_of_k, antipode_qsym, expand_in};

fn nonempty_peaks(bound: u32) -> Vec<PeakComposition> {
    peak_compositions_upto(bound).into_iter().filter(|a| !a.as_composition().is_empty()).collect()
}

/// The antipode axiom `Σ S(K_β) K_γ = ε(K_α)` over `Δ(K_α)`, and agreement of
/// `S(K_α)` with the involution `F_α ↦ (-1)^{|α|} F_{α^t}`, for nonempty peak
/// compositions of size at most `bound`. Exact up to degree `ctx.d`; needs `N >= D`.
pub fn k_antipode_check(bound: u32, ctx: TruncationContext) -> Result<IdentityReport> {
    let mut rep = IdentityReport::new(format!("antipode axiom on K, sizes <= {bound} at {ctx}"));
    for alpha in nonempty_peaks(bound) {
        let a = alpha.as_composition();
        let mut total = TruncPoly::zero(ctx);
        for ((l, r), c) in poly_coproduct(QBasisTag::K, a, ctx)?.iter() {
            let sl = antipode_of_k(&PeakComposition::new(l.parts().to_vec())?, ctx)?;
            let kr = qsym_basis_arc(QBasisTag::K, r, ctx)?;
            total = &total + &(&sl * &*kr).scale_beta(c);
        }
        rep.record(format!("m(S ⊗ id)Δ K[{a}]"), first_difference(&total, &TruncPoly::zero(ctx)));
        let via_f = antipode_qsym(&*qsym_basis_arc(QBasisTag::K, a, ctx)?)?;
        rep.record(format!("S(K[{a}]) via F"), first_difference(&antipode_of_k(&alpha, ctx)?, &via_f));
    }
    Ok(rep)
}

/// Every `α + δ` with `δ_i ∈ [0, cap_i]` and size at most `d`, paired with `δ`.
fn shifts(alpha: &[u32], unit: bool, d: u32) -> Vec<(Vec<u32>, u32)> {
    let mut out = vec![(Vec::new(), 0)];
    let mut room = d.saturating_sub(alpha.iter().sum());
    if unit {
        room = room.min(alpha.len() as u32);
    }
    for &p in alpha {
        let mut next = Vec::new();
        for (v, used) in out {
            let top = if unit { 1 } else { room - used };
            for k in 0..=top.min(room - used) {
                let mut w = v.clone();
                w.push(p + k);
                next.push((w, used + k));
            }
        }
        out = next;
    }
    out
}

fn compare(rep: &mut IdentityReport, label: String, got: &BTreeMap<Composition, BetaPoly>, want: &BTreeMap<Composition, BetaPoly>) {
    let mut keys: Vec<&Composition> = got.keys().chain(want.keys()).collect();
    keys.sort();
    keys.dedup();
    let bad = keys.into_iter().find_map(|k| {
        let (g, w) = (got.get(k).cloned().unwrap_or_default(), want.get(k).cloned().unwrap_or_default());
        (g != w).then(|| format!("at [{k}]: {g} vs {w}"))
    });
    rep.record(label, bad);
}

/// `K_α = Σ_{δ ∈ {0,1}^ℓ} 2^{ℓ-|δ|} β^{|δ|} Kbar_{α+δ}` and
/// `Kbar_α = Σ_{δ ≥ 0} 2^{-ℓ-|δ|} (-β)^{|δ|} K_{α+δ}`, each compared with
/// triangular elimination on every index of size at most `ctx.d`.
pub fn k_kbar_check(bound: u32, ctx: TruncationContext) -> Result<IdentityReport> {
    let d = ctx.d as u32;
    let mut rep = IdentityReport::new(format!("K <-> Kbar closed forms, sizes <= {bound} at {ctx}"));
    for alpha in nonempty_peaks(bound) {
        let a = alpha.as_composition();
        let l = a.len() as i64;
        let keep = |m: BTreeMap<Composition, BetaPoly>| -> BTreeMap<Composition, BetaPoly> {
            m.into_iter().filter(|(k, v)| k.size() <= d && !v.is_zero()).collect()
        };

        let mut want = BTreeMap::new();
        for (v, k) in shifts(a.parts(), true, d) {
            let w = BetaPoly::monomial(pow2(l - k as i64), k as usize);
            *want.entry(Composition::from_slice(&v)).or_insert_with(BetaPoly::zero) += &w;
        }
        let got = expand_in(&*qsym_basis_arc(QBasisTag::K, a, ctx)?, QBasisTag::Kbar)?.coeffs;
        compare(&mut rep, format!("K[{a}] in Kbar"), &keep(got), &keep(want));

        let mut want = BTreeMap::new();
        for (v, k) in shifts(a.parts(), false, d) {
            let sign = if k % 2 == 0 { int(1) } else { int(-1) };
            let w = BetaPoly::monomial(pow2(-l - k as i64) * sign, k as usize);
            *want.entry(Composition::from_slice(&v)).or_insert_with(BetaPoly::zero) += &w;
        }
        let got = expand_in(&*qsym_basis_arc(QBasisTag::Kbar, a, ctx)?, QBasisTag::K)?.coeffs;
        compare(&mut rep, format!("Kbar[{a}] in K"), &keep(got), &keep(want));
    }
    Ok(rep)
}
