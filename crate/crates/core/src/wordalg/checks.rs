//! Bialgebra axioms, dualities and morphism theorems at bounded size.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{KhopfError, Result};
use crate::exactpoly::{BetaPoly, TruncPoly, TruncationContext};
use crate::memo::Memo;
use crate::qsymbases::{coproduct_in, expand_in, qsym_basis_arc, QBasisTag};
use crate::shapes::{compositions_upto, Composition};
use crate::shiftedsym::{first_difference, IdentityReport};

use super::bigmr::{bigmr_comul, bigmr_mul, SetCompCombination, SetCompTensor};
use super::combination::{first_mismatch, Tensor};
use super::mmr::{mmr_comul, mmr_coproduct, mmr_mul, mmr_product, zeta_alpha, WordCombination, WordTensor, Zeta};
use super::setcomp::{big_multiperms, SetComposition};
use super::word::{small_multiperms_of_length, PackedWord};

fn small_upto(max_len: usize) -> Vec<PackedWord> {
    (0..=max_len).flat_map(small_multiperms_of_length).collect()
}

/// `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`, keeping total length at most `cap`.
fn mmr_tensor_mul(x: &WordTensor, y: &WordTensor, cap: usize) -> Result<WordTensor> {
    let mut out = WordTensor::new();
    for (Tensor(a, b), c1) in x.iter() {
        for (Tensor(c, d), c2) in y.iter() {
            if a.len() + b.len() + c.len() + d.len() > cap {
                continue;
            }
            let left = mmr_product(a, c, cap)?;
            let right = mmr_product(b, d, cap)?;
            let k = c1 * c2;
            for (u, cu) in left.iter() {
                for (v, cv) in right.iter() {
                    if u.len() + v.len() <= cap {
                        out.add_term(Tensor(u.clone(), v.clone()), &(&(cu * cv) * &k));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `Δ([u][v]) = Δ[u] Δ[v]` in `mMR` for all small multipermutations of
/// length at most `max_len`, exact in total length at most `cap`.
pub fn mmr_bialgebra_check(max_len: usize, cap: usize) -> Result<IdentityReport> {
    let words = small_upto(max_len);
    let pairs: Vec<(&PackedWord, &PackedWord)> =
        words.iter().flat_map(|u| words.iter().map(move |v| (u, v))).filter(|(u, v)| u.len() + v.len() <= cap).collect();
    let lines: Vec<(String, Option<String>)> = pairs
        .par_iter()
        .map(|(u, v)| {
            let prod = mmr_product(u, v, cap)?;
            let lhs = mmr_comul(&prod)?.filter(|Tensor(a, b)| a.len() + b.len() <= cap);
            let rhs = mmr_tensor_mul(&mmr_coproduct(u)?, &mmr_coproduct(v)?, cap)?;
            Ok((format!("Δ([{u}][{v}])"), first_mismatch(&lhs, &rhs)))
        })
        .collect::<Result<_>>()?;
    let mut rep = IdentityReport::new(format!("mMR bialgebra axiom, lengths <= {max_len}, cap {cap}"));
    for (l, f) in lines {
        rep.record(l, f);
    }
    Ok(rep)
}

fn bigmr_tensor_mul(x: &SetCompTensor, y: &SetCompTensor) -> SetCompTensor {
    let mut out = SetCompTensor::new();
    for (Tensor(a, b), c1) in x.iter() {
        for (Tensor(c, d), c2) in y.iter() {
            let left = bigmr_mul(&SetCompCombination::single(a.clone(), BetaPoly::one()), &SetCompCombination::single(c.clone(), BetaPoly::one()));
            let right = bigmr_mul(&SetCompCombination::single(b.clone(), BetaPoly::one()), &SetCompCombination::single(d.clone(), BetaPoly::one()));
            let k = c1 * c2;
            for (u, cu) in left.iter() {
                for (v, cv) in right.iter() {
                    out.add_term(Tensor(u.clone(), v.clone()), &(&(cu * cv) * &k));
                }
            }
        }
    }
    out
}

fn one(a: &SetComposition) -> SetCompCombination {
    SetCompCombination::single(a.clone(), BetaPoly::one())
}

/// `Δ([A][B]) = Δ[A] Δ[B]` in `MMR` for big multipermutations with `|A| + |B| <= bound`.
pub fn bigmr_bialgebra_check(bound: usize) -> Result<IdentityReport> {
    let all: Vec<SetComposition> = (0..=bound).map(big_multiperms).collect::<Result<Vec<_>>>()?.concat();
    let pairs: Vec<(&SetComposition, &SetComposition)> = all
        .iter()
        .flat_map(|a| all.iter().map(move |b| (a, b)))
        .filter(|(a, b)| (a.size() + b.size()) as usize <= bound)
        .collect();
    let lines: Vec<(String, Option<String>)> = pairs
        .par_iter()
        .map(|(a, b)| {
            let lhs = bigmr_comul(&bigmr_mul(&one(a), &one(b)));
            let rhs = bigmr_tensor_mul(&bigmr_comul(&one(a)), &bigmr_comul(&one(b)));
            (format!("Δ([{a}][{b}])"), first_mismatch(&lhs, &rhs))
        })
        .collect();
    let mut rep = IdentityReport::new(format!("MMR bialgebra axiom, |A| + |B| <= {bound}"));
    for (l, f) in lines {
        rep.record(l, f);
    }
    Ok(rep)
}

/// `<[A]_M, [w]_m> = δ_{A, w*}` is a Hopf pairing: products on one side
/// match coproducts on the other, for `|C| <= bound`.
pub fn mr_duality_check(bound: usize) -> Result<IdentityReport> {
    let mut rep = IdentityReport::new(format!("MMR / mMR pairing, sizes <= {bound}"));
    for n in 0..=bound {
        for c in big_multiperms(n)? {
            let w = c.star();
            // coefficient of [C] in [A][B] versus coefficient of [A*] ⊗ [B*] in Δ[C*]
            let cop = mmr_coproduct(&w)?;
            let mut from_products = WordTensor::new();
            let mut from_coproduct = SetCompTensor::new();
            for t in 0..=n + 1 {
                for k in 0..=t {
                    for a in big_multiperms(k)? {
                        for b in big_multiperms(t - k)? {
                            if t >= n {
                                let p = bigmr_mul(&one(&a), &one(&b));
                                from_products.add_term(Tensor(a.star(), b.star()), &p.coeff(&c));
                            }
                            if t <= n {
                                let p = mmr_product(&a.star(), &b.star(), n)?;
                                from_coproduct.add_term(Tensor(a.clone(), b.clone()), &p.coeff(&w));
                            }
                        }
                    }
                }
            }
            rep.record(format!("Δ[{w}] vs products into [{c}]"), first_mismatch(&cop, &from_products));
            let delta = bigmr_comul(&one(&c));
            rep.record(format!("Δ[{c}] vs products into [{w}]"), first_mismatch(&delta, &from_coproduct));
        }
    }
    Ok(rep)
}

static L_OR_K: Memo<(QBasisTag, Vec<u32>, TruncationContext), BTreeMap<(Composition, Composition), BetaPoly>> =
    Memo::new();

pub(crate) fn poly_coproduct(tag: QBasisTag, a: &Composition, ctx: TruncationContext) -> Result<std::sync::Arc<BTreeMap<(Composition, Composition), BetaPoly>>> {
    L_OR_K.get_or_try(&(tag, a.parts().to_vec(), ctx), || {
        let f = qsym_basis_arc(tag, a, ctx)?;
        coproduct_in(&f, tag, tag)
    })
}

/// The morphism `[w]_m -> L_{α_des(w)}` (`Zeta::Lt`) or `[w]_m -> K_{α_peak(w)}`
/// (`Zeta::Peak`) checked against polynomial products and coproducts, and
/// against `Σ ζ_α([w]) M_α`, for small multipermutations of length at most
/// `max_len`. Exact up to degree `ctx.d`.
pub fn word_morphism_check(which: Zeta, max_len: usize, ctx: TruncationContext) -> Result<IdentityReport> {
    let (tag, label): (QBasisTag, fn(&PackedWord) -> Composition) = match which {
        Zeta::Lt => (QBasisTag::L, |w| w.alpha_des()),
        Zeta::Peak => (QBasisTag::K, |w| w.alpha_peak().into_composition()),
        Zeta::Gt => return Err(KhopfError::InvalidIndex("no polynomial model is attached to ζ_>".into())),
    };
    let d = ctx.d;
    let words = small_upto(max_len);
    let push = |x: &WordCombination| -> Result<TruncPoly> {
        let mut r = TruncPoly::zero(ctx);
        for (w, c) in x.iter() {
            if w.len() <= d {
                r = &r + &qsym_basis_arc(tag, &label(w), ctx)?.scale_beta(c);
            }
        }
        Ok(r)
    };
    let name = format!("[w] -> {}, lengths <= {max_len} at {ctx}", tag.name());
    // products
    let pairs: Vec<(&PackedWord, &PackedWord)> =
        words.iter().flat_map(|u| words.iter().map(move |v| (u, v))).filter(|(u, v)| u.len() + v.len() <= d).collect();
    let mut lines: Vec<(String, Option<String>)> = pairs
        .par_iter()
        .map(|(u, v)| {
            let word_side = push(&mmr_mul(&single(u), &single(v), d)?)?;
            let poly_side = &*qsym_basis_arc(tag, &label(u), ctx)? * &*qsym_basis_arc(tag, &label(v), ctx)?;
            Ok((format!("product [{u}][{v}]"), first_difference(&word_side, &poly_side)))
        })
        .collect::<Result<_>>()?;
    // coproducts and the zeta characterization
    let more: Vec<Vec<(String, Option<String>)>> = words
        .par_iter()
        .map(|w| {
            let mut word_side: BTreeMap<(Composition, Composition), BetaPoly> = BTreeMap::new();
            for (Tensor(a, b), c) in mmr_coproduct(w)?.iter() {
                if a.len() + b.len() <= d {
                    *word_side.entry((label(a), label(b))).or_default() += c;
                }
            }
            word_side.retain(|_, c| !c.is_zero());
            let poly = poly_coproduct(tag, &label(w), ctx)?;
            let mismatch = word_side
                .keys()
                .chain(poly.keys())
                .find(|k| word_side.get(*k) != poly.get(*k))
                .map(|(a, b)| format!("at {a} ⊗ {b}: {:?} vs {:?}", word_side.get(&(a.clone(), b.clone())).map(|c| c.to_text()), poly.get(&(a.clone(), b.clone())).map(|c| c.to_text())));
            let mut out = vec![(format!("coproduct [{w}]"), mismatch)];
            // Φ([w]) = Σ_α ζ_α([w]) M_α
            let target = expand_in(&*qsym_basis_arc(tag, &label(w), ctx)?, QBasisTag::M)?;
            let h = single(w);
            let mut bad = None;
            for alpha in compositions_upto(d as u32) {
                let z = zeta_alpha(&h, &alpha, which)?;
                if z != target.coeff(&alpha) {
                    bad = Some(format!("ζ_{alpha} = {} but the M-coefficient is {}", z, target.coeff(&alpha)));
                    break;
                }
            }
            out.push((format!("Σ ζ_α([{w}]) M_α"), bad));
            Ok(out)
        })
        .collect::<Result<_>>()?;
    lines.extend(more.into_iter().flatten());
    let mut rep = IdentityReport::new(name);
    for (l, f) in lines {
        rep.record(l, f);
    }
    Ok(rep)
}

fn single(w: &PackedWord) -> WordCombination {
    WordCombination::single(w.clone(), BetaPoly::one())
}
