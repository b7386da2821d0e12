use std::collections::BTreeMap;
use std::sync::Arc;

use crate::elim::{eliminate, Coords};
use crate::error::{KhopfError, Result};
use crate::exactpoly::{require_symmetric, BetaPoly, TruncPoly, TruncationContext};
use crate::qsymbases::BasisExpansion;
use crate::shapes::Partition;

use super::family::{sym_basis_arc, sym_coords, SymFamily};

fn family_elements(tag: SymFamily, ctx: TruncationContext) -> impl Fn(u32) -> Result<Vec<(Partition, Arc<Coords>)>> {
    move |d| {
        let mut out = Vec::new();
        for p in tag.indices(d) {
            let c = sym_coords(tag, &p, ctx)?;
            // Elements that vanish in N variables carry no information.
            if !c.is_empty() {
                out.push((p, c));
            }
        }
        Ok(out)
    }
}

fn run(f: &TruncPoly, tag: SymFamily, strict: bool) -> Result<BasisExpansion<Partition>> {
    require_symmetric(f)?;
    let ctx = f.ctx();
    let e = eliminate(tag.name(), &f.partition_coords(), ctx, tag.direction(), &family_elements(tag, ctx))?;
    let mut out = BasisExpansion::new(tag.name(), e.coeffs, ctx);
    match e.failure {
        Some(err) if strict => return Err(err),
        Some(_) => out.residual_zero = false,
        None => {}
    }
    Ok(out)
}

/// Expand a symmetric function in one of the symmetric families.
///
/// For pseudobases the result is a truncated expansion: coefficients of
/// indices of size at most `D` are exact.
pub fn expand_in_family(f: &TruncPoly, tag: SymFamily) -> Result<BasisExpansion<Partition>> {
    run(f, tag, true)
}

/// Like [`expand_in_family`] but reports an unexplained remainder through
/// `residual_zero` instead of failing.
pub fn try_expand_in_family(f: &TruncPoly, tag: SymFamily) -> Result<BasisExpansion<Partition>> {
    run(f, tag, false)
}

/// `sum c_lambda tag_lambda`.
pub fn assemble_sym(exp: &BasisExpansion<Partition>, tag: SymFamily) -> Result<TruncPoly> {
    let mut r = TruncPoly::zero(exp.ctx);
    for (p, c) in &exp.coeffs {
        r = &r + &sym_basis_arc(tag, p, &Partition::empty(), exp.ctx)?.scale_beta(c);
    }
    Ok(r)
}

/// The involution `s_lambda -> s_{lambda^T}`; needs `N >= D`.
pub fn omega_sym(f: &TruncPoly) -> Result<TruncPoly> {
    let ctx = f.ctx();
    if ctx.n < ctx.d {
        return Err(KhopfError::Inadequate(format!("omega needs N >= D, have {ctx}")));
    }
    let e = expand_in_family(f, SymFamily::S)?;
    let mut r = TruncPoly::zero(ctx);
    for (p, c) in &e.coeffs {
        r = &r + &sym_basis_arc(SymFamily::S, &p.conjugate(), &Partition::empty(), ctx)?.scale_beta(c);
    }
    Ok(r)
}

fn contract(a: &BTreeMap<Partition, BetaPoly>, b: &BTreeMap<Partition, BetaPoly>) -> BetaPoly {
    let mut r = BetaPoly::zero();
    for (p, x) in a {
        if let Some(y) = b.get(p) {
            r += &(x * y);
        }
    }
    r
}

/// The Hall form `<f, g>` with `<s_lambda, s_mu> = delta`.
pub fn hall_form(f: &TruncPoly, g: &TruncPoly) -> Result<BetaPoly> {
    let a = expand_in_family(f, SymFamily::S)?;
    let b = expand_in_family(g, SymFamily::S)?;
    Ok(contract(&a.coeffs, &b.coeffs))
}

/// Dual pair used to evaluate the shifted form `[f, g]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftedPair {
    /// `[gp_lambda, GQ_mu] = delta`.
    GpGQ,
    /// `[gq_lambda, GP_mu] = delta`.
    GqGP,
}

impl ShiftedPair {
    pub fn families(&self) -> (SymFamily, SymFamily) {
        match self {
            ShiftedPair::GpGQ => (SymFamily::SmallGP, SymFamily::GQ),
            ShiftedPair::GqGP => (SymFamily::SmallGQ, SymFamily::GP),
        }
    }
}

/// The shifted form `[f, g]`, computed by expanding `f` and `g` in the given dual pair.
pub fn shifted_form(f: &TruncPoly, g: &TruncPoly, pair: ShiftedPair) -> Result<BetaPoly> {
    let (left, right) = pair.families();
    let a = expand_in_family(f, left)?;
    let b = expand_in_family(g, right)?;
    Ok(contract(&a.coeffs, &b.coeffs))
}
