use std::collections::BTreeMap;
use std::sync::Arc;

use crate::elim::{eliminate, eliminate_upto, Coords, Direction};
use crate::error::{KhopfError, Result};
use crate::exactpoly::{require_quasisymmetric, tensor_split, BetaPoly, SplitMode, TruncPoly, TruncationContext};
use crate::shapes::{Composition, PeakComposition};

use super::basis::{qsym_basis_arc, qsym_coords, QBasisTag};
use super::expansion::BasisExpansion;

fn family_elements(tag: QBasisTag, ctx: TruncationContext) -> impl Fn(u32) -> Result<Vec<(Composition, Arc<Coords>)>> {
    move |d| tag.indices(d).into_iter().map(|a| Ok((a.clone(), qsym_coords(tag, &a, ctx)?))).collect()
}

/// Expand monomial quasisymmetric coordinates in a family.
pub(crate) fn expand_coords(coords: &Coords, tag: QBasisTag, ctx: TruncationContext) -> Result<BasisExpansion<Composition>> {
    let e = eliminate(tag.name(), coords, ctx, Direction::Ascending, &family_elements(tag, ctx))?;
    if let Some(err) = e.failure {
        return Err(err);
    }
    Ok(BasisExpansion::new(tag.name(), e.coeffs, ctx))
}

/// Expand a quasisymmetric function in a (pseudo)basis by triangular elimination.
pub fn expand_in(f: &TruncPoly, tag: QBasisTag) -> Result<BasisExpansion<Composition>> {
    require_quasisymmetric(f)?;
    expand_coords(&f.packed_coords(), tag, f.ctx())
}

/// Like [`expand_in`] but reports an unexplained remainder instead of failing.
pub fn try_expand_in(f: &TruncPoly, tag: QBasisTag) -> Result<BasisExpansion<Composition>> {
    require_quasisymmetric(f)?;
    let ctx = f.ctx();
    let e = eliminate(tag.name(), &f.packed_coords(), ctx, Direction::Ascending, &family_elements(tag, ctx))?;
    let mut out = BasisExpansion::new(tag.name(), e.coeffs, ctx);
    out.residual_zero = e.failure.is_none();
    Ok(out)
}

/// `sum c_alpha tag_alpha` as a polynomial.
pub fn assemble(exp: &BasisExpansion<Composition>, tag: QBasisTag) -> Result<TruncPoly> {
    let mut r = TruncPoly::zero(exp.ctx);
    for (a, c) in &exp.coeffs {
        r = &r + &qsym_basis_arc(tag, a, exp.ctx)?.scale_beta(c);
    }
    Ok(r)
}

/// The map `L_alpha -> K_{Lambda(alpha)}`.
pub fn theta(f: &TruncPoly) -> Result<TruncPoly> {
    let e = expand_in(f, QBasisTag::L)?;
    let mut r = TruncPoly::zero(f.ctx());
    for (a, c) in &e.coeffs {
        let lam = a.lambda_peak().into_composition();
        r = &r + &qsym_basis_arc(QBasisTag::K, &lam, f.ctx())?.scale_beta(c);
    }
    Ok(r)
}

fn transpose_map(f: &TruncPoly, signed: bool) -> Result<TruncPoly> {
    let ctx = f.ctx();
    if ctx.n < ctx.d {
        return Err(KhopfError::Inadequate(format!("this involution needs N >= D, have {ctx}")));
    }
    let e = expand_in(f, QBasisTag::F)?;
    let mut r = TruncPoly::zero(ctx);
    for (a, c) in &e.coeffs {
        let c = if signed && a.size() % 2 == 1 { -c } else { c.clone() };
        r = &r + &qsym_basis_arc(QBasisTag::F, &a.transpose(), ctx)?.scale_beta(&c);
    }
    Ok(r)
}

/// The involution `F_alpha -> F_{alpha^t}`, extended `Q[beta]`-linearly.
pub fn omega(f: &TruncPoly) -> Result<TruncPoly> {
    transpose_map(f, false)
}

/// The antipode `F_alpha -> (-1)^{|alpha|} F_{alpha^t}`, extended `Q[beta]`-linearly.
pub fn antipode_qsym(f: &TruncPoly) -> Result<TruncPoly> {
    transpose_map(f, true)
}

/// `S(K_alpha) = (-1)^{|alpha|}` times the multiset series at the flattened index.
pub fn antipode_of_k(alpha: &PeakComposition, ctx: TruncationContext) -> Result<TruncPoly> {
    let series = qsym_basis_arc(QBasisTag::KAntipode, alpha.flat().as_composition(), ctx)?;
    let sign = if alpha.size().is_multiple_of(2) { 1 } else { -1 };
    Ok(series.scale(&crate::exactpoly::int(sign)))
}

/// Dual pairs handled by [`pair_dual`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualPair {
    /// `<R_alpha, L_gamma> = delta`.
    NSymQSym,
    /// `[Pi_alpha, K_gamma] = delta`.
    PeakQSym,
}

pub fn pair_dual(pair: DualPair, alpha: &Composition, g: &TruncPoly) -> Result<BetaPoly> {
    match pair {
        DualPair::NSymQSym => Ok(expand_in(g, QBasisTag::L)?.coeff(alpha)),
        DualPair::PeakQSym => {
            if !alpha.is_peak() {
                return Err(KhopfError::InvalidIndex(format!("{alpha} is not a peak composition")));
            }
            Ok(expand_in(g, QBasisTag::K)?.coeff(alpha))
        }
    }
}

/// `<Pi_alpha, g>` under the `NSym`/`QSym` form: sum of `L_delta` coefficients over `Lambda(delta) = alpha`.
pub fn pair_pi_nsym(alpha: &PeakComposition, g: &TruncPoly) -> Result<BetaPoly> {
    let e = expand_in(g, QBasisTag::L)?;
    let mut r = BetaPoly::zero();
    for (d, c) in &e.coeffs {
        if &d.lambda_peak() == alpha {
            r += c;
        }
    }
    Ok(r)
}

/// The deconcatenation coproduct of `f`, with both legs expanded in the given families.
///
/// Only pairs with total size at most `D` are reported.
pub fn coproduct_in(
    f: &TruncPoly,
    left: QBasisTag,
    right: QBasisTag,
) -> Result<BTreeMap<(Composition, Composition), BetaPoly>> {
    let ctx = f.ctx();
    let t = tensor_split(f, SplitMode::Ordered)?;
    let mut by_right: BTreeMap<Vec<u32>, Coords> = BTreeMap::new();
    for ((a, b), c) in t.coords() {
        by_right.entry(b.clone()).or_default().insert(a.clone(), c.clone());
    }
    let mut stage: BTreeMap<Composition, Coords> = BTreeMap::new();
    for (b, coords) in &by_right {
        let dmax = ctx.d as u32 - b.iter().sum::<u32>();
        let e = eliminate_upto(left.name(), coords, ctx, dmax, Direction::Ascending, &family_elements(left, ctx))?;
        if let Some(err) = e.failure {
            return Err(err);
        }
        for (ai, c) in e.coeffs {
            stage.entry(ai).or_default().insert(b.clone(), c);
        }
    }
    let mut out = BTreeMap::new();
    for (ai, coords) in &stage {
        let dmax = ctx.d as u32 - ai.size();
        let e = eliminate_upto(right.name(), coords, ctx, dmax, Direction::Ascending, &family_elements(right, ctx))?;
        if let Some(err) = e.failure {
            return Err(err);
        }
        for (bi, c) in e.coeffs {
            out.insert((ai.clone(), bi), c);
        }
    }
    Ok(out)
}
