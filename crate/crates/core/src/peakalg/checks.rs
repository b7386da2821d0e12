//! Bounded verification of the multipeak algebra structure.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{KhopfError, Result};
use num_traits::{One, Zero};

use crate::exactpoly::{BetaPoly, Coeff, TruncPoly, TruncationContext};
use crate::qsymbases::{pair_dual, pair_pi_nsym, qsym_basis_arc, theta as theta_map, BasisExpansion, DualPair, QBasisTag};
use crate::shapes::{compositions_upto, peak_compositions, peak_compositions_upto, Composition, Partition, PeakComposition};
use crate::shiftedsym::{assemble_sym, first_difference, IdentityReport, SymFamily};
use crate::wordalg::{bigmr_comul, bigmr_mul, first_mismatch, poly_coproduct, SetCompTensor, Tensor};

use super::element::{convert, opeak_mul, tpeak_mul, PeakBasis, PeakElement};
use super::hopf::{
    antipode, antipode_generator, coproduct, coproduct_generator, counit, generator_monomial, invert, odd_compositions,
    tpeak_coproduct_forms, PeakTensor,
};
use super::realize::{project_to_sym, realize, realize_tpeak_via_r, recognize};

use PeakBasis::{Opeak, Tpeak};

fn pi(a: &PeakComposition) -> PeakElement {
    PeakElement::basis_element(Tpeak, a.clone())
}

fn theta(a: &PeakComposition) -> PeakElement {
    PeakElement::basis_element(Opeak, a.clone())
}

fn diff(a: &PeakElement, b: &PeakElement) -> Option<String> {
    (a != b).then(|| format!("{a} vs {b}"))
}

fn tensor_diff(a: &PeakTensor, b: &PeakTensor) -> Option<String> {
    (a != b).then(|| format!("{a} vs {b}"))
}

fn nonempty_upto(bound: u32) -> Vec<PeakComposition> {
    peak_compositions_upto(bound).into_iter().filter(|a| !a.is_empty()).collect()
}

/// Pairs of nonempty peak compositions with `|α| + |γ| <= bound`.
fn pairs_upto(bound: u32) -> Vec<(PeakComposition, PeakComposition)> {
    let all = nonempty_upto(bound);
    let mut out = Vec::new();
    for a in &all {
        for g in &all {
            if a.size() + g.size() <= bound {
                out.push((a.clone(), g.clone()));
            }
        }
    }
    out
}

fn report(name: String, lines: Vec<(String, Option<String>)>) -> IdentityReport {
    let mut rep = IdentityReport::new(name);
    for (l, f) in lines {
        rep.record(l, f);
    }
    rep
}

fn require(ctx: TruncationContext, bound: u32) -> Result<()> {
    if !ctx.adequate_for(bound as usize) {
        return Err(KhopfError::Inadequate(format!("{ctx} is too small for bound {bound}")));
    }
    Ok(())
}

/// The `Π` product is dual to the polynomial coproduct of the `K_α`: the
/// coefficient of `Π_δ` in `Π_α Π_γ` equals that of `K_α ⊗ K_γ` in `Δ(K_δ)`,
/// for nonempty `α, γ` with `|α| + |γ| <= bound`.
pub fn product_duality_check(bound: u32, ctx: TruncationContext) -> Result<IdentityReport> {
    require(ctx, bound)?;
    let deltas = nonempty_upto(bound);
    let cops: Vec<_> = deltas
        .par_iter()
        .map(|d| poly_coproduct(QBasisTag::K, d.as_composition(), ctx).map(|c| (d.clone(), c)))
        .collect::<Result<_>>()?;
    let mut from_cop: BTreeMap<(Composition, Composition), BTreeMap<PeakComposition, BetaPoly>> = BTreeMap::new();
    for (d, cop) in &cops {
        for ((a, g), c) in cop.iter() {
            if !a.is_empty() && !g.is_empty() && a.size() + g.size() <= bound {
                from_cop.entry((a.clone(), g.clone())).or_default().insert(d.clone(), c.clone());
            }
        }
    }
    let lines = pairs_upto(bound)
        .into_iter()
        .map(|(a, g)| {
            let prod = tpeak_mul(&pi(&a), &pi(&g))?;
            let empty = BTreeMap::new();
            let other = from_cop.get(&(a.as_composition().clone(), g.as_composition().clone())).unwrap_or(&empty);
            let keys: BTreeSet<&PeakComposition> = prod.coeffs().keys().chain(other.keys()).collect();
            let bad = keys.into_iter().find(|d| prod.coeff(d) != other.get(*d).cloned().unwrap_or_default()).map(|d| {
                format!("at P[{d}]: product gives {} but Δ(K[{d}]) gives {}", prod.coeff(d), other.get(d).cloned().unwrap_or_default())
            });
            Ok((format!("P[{a}]·P[{g}]"), bad))
        })
        .collect::<Result<_>>()?;
    Ok(report(format!("Π products dual to Δ(K), |α| + |γ| <= {bound} at {ctx}"), lines))
}

/// `[Π_α, K_γ] = δ_{α,γ}` for peak compositions of size at most `bound`,
/// read off `K`-expansions; and `[Π_α, Θ(L_δ)] = <Π_α, L_δ>` for all
/// compositions `δ` of size at most `bound`.
pub fn pairing_check(bound: u32, ctx: TruncationContext) -> Result<IdentityReport> {
    require(ctx, bound)?;
    let peaks = peak_compositions_upto(bound);
    let mut lines: Vec<(String, Option<String>)> = peaks
        .par_iter()
        .map(|g| {
            let k = qsym_basis_arc(QBasisTag::K, g.as_composition(), ctx)?;
            let mut bad = None;
            for a in &peaks {
                let v = pair_dual(DualPair::PeakQSym, a.as_composition(), &k)?;
                let want = if a == g { BetaPoly::one() } else { BetaPoly::zero() };
                if v != want && bad.is_none() {
                    bad = Some(format!("[P[{a}], K[{g}]] = {v}"));
                }
            }
            Ok((format!("[Π, K[{g}]]"), bad))
        })
        .collect::<Result<_>>()?;
    let more: Vec<(String, Option<String>)> = compositions_upto(bound)
        .par_iter()
        .map(|d| {
            let l = qsym_basis_arc(QBasisTag::L, d, ctx)?;
            let th = theta_map(&l)?;
            let mut bad = None;
            for a in &peaks {
                let lhs = pair_dual(DualPair::PeakQSym, a.as_composition(), &th)?;
                let rhs = pair_pi_nsym(a, &l)?;
                if lhs != rhs && bad.is_none() {
                    bad = Some(format!("[P[{a}], Θ(L[{d}])] = {lhs} but <P[{a}], L[{d}]> = {rhs}"));
                }
            }
            Ok((format!("[Π, Θ(L[{d}])] = <Π, L[{d}]>"), bad))
        })
        .collect::<Result<_>>()?;
    lines.extend(more);
    Ok(report(format!("peak pairing, sizes <= {bound} at {ctx}"), lines))
}

/// Free generation by the odd `Π_n`, through two unitriangular steps at
/// each size `n <= bound`: the peak-indexed monomials `Ξ_α` have leading
/// term `Π_α` (other top-size terms lexicographically larger), and
/// `Ξ_{odd(α)}` has leading term `Ξ_α` (others lexicographically smaller).
/// The composite change of basis is then integral and invertible.
pub fn free_generation_check(bound: u32) -> Result<IdentityReport> {
    let mut lines = Vec::new();
    for n in 1..=bound {
        lines.push((format!("odd generators, size {n}"), free_generation_at(n)?));
    }
    Ok(report(format!("free generation by Π_1, Π_3, ..., sizes <= {bound}"), lines))
}

fn top_block(n: u32, peaks: &[PeakComposition], monomials: &[Composition]) -> std::result::Result<Vec<Vec<Coeff>>, String> {
    let mut m = vec![vec![Coeff::zero(); monomials.len()]; peaks.len()];
    for (j, a) in monomials.iter().enumerate() {
        let x = generator_monomial(a);
        for (i, p) in peaks.iter().enumerate() {
            let c = x.coeff(p);
            if c.degree().unwrap_or(0) > 0 {
                return Err(format!("size-{n} coefficient of P[{p}] in the monomial {a} involves β"));
            }
            m[i][j] = c.coeff(0);
        }
    }
    Ok(m)
}

fn free_generation_at(n: u32) -> Result<Option<String>> {
    let peaks = peak_compositions(n);
    let as_comp: Vec<Composition> = peaks.iter().map(|p| p.as_composition().clone()).collect();
    let odds: Vec<Composition> = peaks.iter().map(|p| p.odd()).collect();
    let image: BTreeSet<&Composition> = odds.iter().collect();
    let all_odd = odd_compositions(n);
    if image.len() != odds.len() || image != all_odd.iter().collect::<BTreeSet<_>>() {
        return Ok(Some("odd(·) is not a bijection onto odd compositions".into()));
    }
    let t1 = match top_block(n, &peaks, &as_comp) {
        Ok(m) => m,
        Err(e) => return Ok(Some(e)),
    };
    for (j, a) in peaks.iter().enumerate() {
        for (i, g) in peaks.iter().enumerate() {
            let c = &t1[i][j];
            let ok = if i == j { c.is_one() } else { c.is_zero() || g.parts() > a.parts() };
            if !ok {
                return Ok(Some(format!("coefficient {c} of P[{g}] in Ξ_{a}")));
            }
        }
    }
    let t2 = match top_block(n, &peaks, &odds) {
        Ok(m) => m,
        Err(e) => return Ok(Some(e)),
    };
    let inv = invert(&t1).ok_or_else(|| KhopfError::IdentityViolation(format!("Ξ block singular at {n}")))?;
    for (j, a) in peaks.iter().enumerate() {
        for (i, g) in peaks.iter().enumerate() {
            // coefficient of Ξ_g in Ξ_{odd(a)}
            let c: Coeff = (0..peaks.len()).map(|k| &inv[i][k] * &t2[k][j]).sum();
            let ok = if i == j { c.is_one() } else { c.is_zero() || (c.is_integer() && g.parts() < a.parts()) };
            if !ok {
                return Ok(Some(format!("coefficient {c} of Ξ_{g} in Ξ_odd({a})")));
            }
        }
    }
    Ok(None)
}

/// `Π_1 Π_{n-1} - Σ_{i=2}^{n-1} (-1)^i Π_i Π_{n-i} - [n even] Π_n` lives in sizes below `n`.
pub fn peak_free_lemma_check(bound: u32) -> Result<IdentityReport> {
    let gen = |i| PeakElement::generator(Tpeak, i);
    let mut lines = Vec::new();
    for n in 2..=bound {
        let mut x = tpeak_mul(&gen(1), &gen(n - 1))?;
        for i in 2..n {
            let t = tpeak_mul(&gen(i), &gen(n - i))?;
            let s = if i % 2 == 0 { 1 } else { -1 };
            x = x.try_sub(&t.scale(&BetaPoly::from_int(s)))?;
        }
        if n % 2 == 0 {
            x = x.try_sub(&gen(n))?;
        }
        let bad = x.coeffs().keys().find(|a| a.size() >= n).map(|a| format!("P[{a}] survives in {x}"));
        lines.push((format!("n = {n}"), bad));
    }
    Ok(report(format!("peak-free lemma, n <= {bound}"), lines))
}

/// `(xy)z = x(yz)` on triples of generators of total size at most
/// `gen_bound`, and on triples of basis elements of total size at most `basis_bound`.
pub fn associativity_check(gen_bound: u32, basis_bound: u32) -> Result<IdentityReport> {
    let mut triples: Vec<(PeakBasis, [PeakComposition; 3])> = Vec::new();
    for basis in [Tpeak, Opeak] {
        for a in 1..gen_bound {
            for b in 1..gen_bound {
                for c in 1..gen_bound {
                    if a + b + c <= gen_bound {
                        let g = |n| PeakComposition::from_slice(&[n]);
                        triples.push((basis, [g(a), g(b), g(c)]));
                    }
                }
            }
        }
        let all = nonempty_upto(basis_bound);
        for a in &all {
            for b in &all {
                for c in &all {
                    if a.size() + b.size() + c.size() <= basis_bound && [a, b, c].iter().any(|x| x.len() > 1) {
                        triples.push((basis, [a.clone(), b.clone(), c.clone()]));
                    }
                }
            }
        }
    }
    let lines = triples
        .par_iter()
        .map(|(basis, [a, b, c])| {
            let e = |x: &PeakComposition| PeakElement::basis_element(*basis, x.clone());
            let l = e(a).try_mul(&e(b))?.try_mul(&e(c))?;
            let r = e(a).try_mul(&e(b).try_mul(&e(c))?)?;
            Ok((format!("{}: [{a}][{b}][{c}]", basis.name()), diff(&l, &r)))
        })
        .collect::<Result<_>>()?;
    Ok(report(format!("associativity, generators <= {gen_bound}, basis triples <= {basis_bound}"), lines))
}

/// Round trips of the basis change, and `Θ̄` products against `Π` products
/// through conversion, for `|α| + |γ| <= bound`.
pub fn conversion_check(bound: u32) -> Result<IdentityReport> {
    let mut lines = Vec::new();
    for a in peak_compositions_upto(bound) {
        lines.push((format!("P[{a}] round trip"), diff(&convert(&convert(&pi(&a), Opeak), Tpeak), &pi(&a))));
        lines.push((format!("Q[{a}] round trip"), diff(&convert(&convert(&theta(&a), Tpeak), Opeak), &theta(&a))));
    }
    let more = pairs_upto(bound)
        .par_iter()
        .map(|(a, g)| {
            let direct = opeak_mul(&theta(a), &theta(g))?;
            let via = convert(&tpeak_mul(&convert(&theta(a), Tpeak), &convert(&theta(g), Tpeak))?, Opeak);
            Ok((format!("Q[{a}]·Q[{g}] through P"), diff(&direct, &via)))
        })
        .collect::<Result<Vec<_>>>()?;
    lines.extend(more);
    Ok(report(format!("tpeak / opeak conversion, sizes <= {bound}"), lines))
}

/// The stated forms of `Δ(Π_n)` and `Δ(Θ̄_n)` agree, and the multiplicative
/// extension satisfies the counit laws on every `Π_α` with `|α| <= bound`.
pub fn coproduct_check(bound: u32) -> Result<IdentityReport> {
    let mut lines = Vec::new();
    for n in 1..=bound {
        let [l, r, e] = tpeak_coproduct_forms(n);
        lines.push((format!("Δ(P[{n}]) two mixed forms"), tensor_diff(&l, &r)));
        lines.push((format!("Δ(P[{n}]) expanded form"), tensor_diff(&l, &e)));
        let th = coproduct_generator(n, Opeak).convert(Tpeak, Tpeak);
        let via = coproduct(&PeakElement::generator(Opeak, n))?;
        lines.push((format!("Δ(Q[{n}]) against the Π generators"), tensor_diff(&th, &via)));
    }
    for a in nonempty_upto(bound) {
        let t = coproduct(&pi(&a))?;
        let mut left = PeakElement::zero(Tpeak);
        let mut right = PeakElement::zero(Tpeak);
        for (Tensor(x, y), c) in t.terms().iter() {
            if x.is_empty() {
                left.add_term(y.clone(), c);
            }
            if y.is_empty() {
                right.add_term(x.clone(), c);
            }
        }
        let bad = diff(&left, &pi(&a)).or_else(|| diff(&right, &pi(&a)));
        lines.push((format!("counit on Δ(P[{a}])"), bad));
    }
    Ok(report(format!("multipeak coproduct, sizes <= {bound}"), lines))
}

fn contract(t: &PeakTensor, s_left: bool) -> Result<PeakElement> {
    let mut out = PeakElement::zero(Tpeak);
    for (Tensor(x, y), c) in t.terms().iter() {
        let (mut x, mut y) = (pi(x), pi(y));
        if s_left {
            x = antipode(&x)?;
        } else {
            y = antipode(&y)?;
        }
        out = out.try_add(&tpeak_mul(&x, &y)?.scale(c))?;
    }
    Ok(out)
}

/// Closed antipodes of the generators against their defining recurrences,
/// and `m(S ⊗ id)Δ = m(id ⊗ S)Δ = ηε` on every `Π_α` with `|α| <= bound`.
pub fn antipode_check(bound: u32) -> Result<IdentityReport> {
    let mut lines = Vec::new();
    for n in 1..=bound {
        // S(Θ̄_n) = -Θ̄_n - Σ_{m<n} S(Θ̄_m) Θ̄_{n-m}
        let mut rec = PeakElement::generator(Opeak, n).scale(&BetaPoly::from_int(-1));
        for m in 1..n {
            rec = rec.try_sub(&opeak_mul(&antipode_generator(m, Opeak), &PeakElement::generator(Opeak, n - m))?)?;
        }
        lines.push((format!("S(Q[{n}]) recurrence"), diff(&antipode_generator(n, Opeak), &rec)));
        // S(Π_n) = -Π_n - Σ_{i<n} S(Π_i) Θ̄_{n-i}
        let mut rec = PeakElement::generator(Tpeak, n).scale(&BetaPoly::from_int(-1));
        for i in 1..n {
            let th = convert(&PeakElement::generator(Opeak, n - i), Tpeak);
            rec = rec.try_sub(&tpeak_mul(&antipode_generator(i, Tpeak), &th)?)?;
        }
        lines.push((format!("S(P[{n}]) recurrence"), diff(&antipode_generator(n, Tpeak), &rec)));
        let mut conv = PeakElement::zero(Opeak);
        for i in 0..=n {
            conv = conv.try_add(&opeak_mul(&antipode_generator(i, Opeak), &PeakElement::generator(Opeak, n - i))?)?;
        }
        lines.push((format!("Σ S(Q[i]) Q[{n}-i] = 0"), (!conv.is_zero()).then(|| conv.to_text())));
        let via = antipode(&PeakElement::generator(Opeak, n))?;
        lines.push((format!("S(Q[{n}]) through the Π generators"), diff(&antipode_generator(n, Opeak), &via)));
    }
    let more = nonempty_upto(bound)
        .par_iter()
        .map(|a| {
            let t = coproduct(&pi(a))?;
            let want = PeakElement::one(Tpeak).scale(&counit(&pi(a)));
            let bad = diff(&contract(&t, true)?, &want).or(diff(&contract(&t, false)?, &want));
            Ok((format!("antipode axiom on P[{a}]"), bad))
        })
        .collect::<Result<Vec<_>>>()?;
    lines.extend(more);
    Ok(report(format!("multipeak antipode, sizes <= {bound}"), lines))
}

fn realize_tensor(t: &PeakTensor) -> Result<SetCompTensor> {
    let mut out = SetCompTensor::new();
    for (Tensor(a, b), c) in t.terms().iter() {
        let x = realize(&PeakElement::basis_element(t.left, a.clone()))?;
        let y = realize(&PeakElement::basis_element(t.right, b.clone()))?;
        for (u, cu) in x.iter() {
            for (v, cv) in y.iter() {
                out.add_term(Tensor(u.clone(), v.clone()), &(&(cu * cv) * c));
            }
        }
    }
    Ok(out)
}

/// The realization in `MMR` is a Hopf embedding compatible with both bases:
/// the two descriptions of `Π_α` agree, the `S̄^M` sum for `Θ̄_α` matches the
/// conversion formula, and products and coproducts are preserved.
pub fn realization_check(bound: u32) -> Result<IdentityReport> {
    let singles: Vec<(String, Option<String>)> = peak_compositions_upto(bound)
        .par_iter()
        .map(|a| {
            let mut v = Vec::new();
            let p = realize(&pi(a))?;
            v.push((format!("P[{a}] by peak sets vs Σ R"), first_mismatch(&p, &realize_tpeak_via_r(a)?)));
            let q = realize(&theta(a))?;
            v.push((format!("Q[{a}] by S̄ vs converted"), first_mismatch(&q, &realize(&convert(&theta(a), Tpeak))?)));
            v.push((format!("Q[{a}] recognized"), diff(&recognize(&q)?, &convert(&theta(a), Tpeak))));
            if !a.is_empty() {
                let lhs = bigmr_comul(&p);
                let rhs = realize_tensor(&coproduct(&pi(a))?)?;
                v.push((format!("Δ(P[{a}]) in MMR"), first_mismatch(&lhs, &rhs)));
            }
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let prods: Vec<(String, Option<String>)> = pairs_upto(bound)
        .par_iter()
        .map(|(a, g)| {
            let mut v = Vec::new();
            let pp = recognize(&bigmr_mul(&realize(&pi(a))?, &realize(&pi(g))?))?;
            v.push((format!("P[{a}]·P[{g}] in MMR"), diff(&pp, &tpeak_mul(&pi(a), &pi(g))?)));
            let qq = recognize(&bigmr_mul(&realize(&theta(a))?, &realize(&theta(g))?))?;
            v.push((format!("Q[{a}]·Q[{g}] in MMR"), diff(&qq, &convert(&opeak_mul(&theta(a), &theta(g))?, Tpeak))));
            Ok(v)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mut lines = singles;
    lines.extend(prods);
    Ok(report(format!("multipeak realization in MMR, sizes <= {bound}"), lines))
}

fn gp_poly(x: &PeakElement, family: SymFamily, ctx: TruncationContext) -> Result<TruncPoly> {
    let mut e = project_to_sym(x, family)?;
    e.ctx = ctx;
    assemble_sym(&e, family)
}

/// The projection onto `ΓK`: generators go to `gp_n` and `gq_n`, both
/// targets give the same function, and products are preserved, for sizes
/// at most `bound`.
pub fn projection_check(bound: u32, ctx: TruncationContext) -> Result<IdentityReport> {
    require(ctx, bound)?;
    let mut lines = Vec::new();
    for n in 1..=bound {
        let p = project_to_sym(&PeakElement::generator(Tpeak, n), SymFamily::SmallGP)?;
        let q = project_to_sym(&PeakElement::generator(Opeak, n), SymFamily::SmallGQ)?;
        let one = |e: &BasisExpansion<Partition>| {
            (e.coeffs.len() != 1 || e.coeff(&Partition::from_slice(&[n])) != BetaPoly::one())
                .then(|| e.to_text())
        };
        lines.push((format!("P[{n}] -> gp[{n}]"), one(&p)));
        lines.push((format!("Q[{n}] -> gq[{n}]"), one(&q)));
    }
    let more = nonempty_upto(bound)
        .par_iter()
        .map(|a| {
            let x = pi(a);
            let via_gp = gp_poly(&x, SymFamily::SmallGP, ctx)?;
            let via_gq = gp_poly(&x, SymFamily::SmallGQ, ctx)?;
            Ok((format!("P[{a}] in gp vs gq"), first_difference(&via_gp, &via_gq)))
        })
        .collect::<Result<Vec<_>>>()?;
    lines.extend(more);
    let prods = pairs_upto(bound)
        .par_iter()
        .map(|(a, g)| {
            let lhs = gp_poly(&tpeak_mul(&pi(a), &pi(g))?, SymFamily::SmallGP, ctx)?;
            let rhs = &gp_poly(&pi(a), SymFamily::SmallGP, ctx)? * &gp_poly(&pi(g), SymFamily::SmallGP, ctx)?;
            Ok((format!("project(P[{a}]·P[{g}])"), first_difference(&lhs, &rhs)))
        })
        .collect::<Result<Vec<_>>>()?;
    lines.extend(prods);
    Ok(report(format!("projection to gp / gq, sizes <= {bound} at {ctx}"), lines))
}


fn random_element(rng: &mut ChaCha8Rng, basis: PeakBasis, pool: &[PeakComposition]) -> PeakElement {
    let mut x = PeakElement::zero(basis);
    for _ in 0..rng.random_range(1..=3) {
        let alpha = pool[rng.random_range(0..pool.len())].clone();
        let c = BetaPoly::monomial(Coeff::from_integer(rng.random_range(-3i64..=3).into()), rng.random_range(0..=1));
        x.add_term(alpha, &c);
    }
    x
}

/// Seeded random elements: conversion is multiplicative, products are
/// associative, `Δ` is multiplicative and `S` is an anti-homomorphism.
///
/// Factors have terms of size at most `max(1, bound / 2)`.
pub fn random_element_check(bound: u32, trials: usize, seed: u64) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = peak_compositions_upto((bound / 2).max(1));
    let mut rep = IdentityReport::new(format!("random multipeak elements, seed {seed}, factor sizes <= {}", (bound / 2).max(1)));
    for t in 0..trials {
        let basis = if rng.random_bool(0.5) { Tpeak } else { Opeak };
        let other = if basis == Tpeak { Opeak } else { Tpeak };
        let (x, y, z) = (
            random_element(&mut rng, basis, &pool),
            random_element(&mut rng, basis, &pool),
            random_element(&mut rng, basis, &pool),
        );
        let xy = x.try_mul(&y)?;
        let lhs = convert(&xy, other);
        let rhs = convert(&x, other).try_mul(&convert(&y, other))?;
        rep.record(format!("trial {t}: conversion of x*y"), diff(&lhs, &rhs));
        rep.record(format!("trial {t}: (xy)z = x(yz)"), diff(&xy.try_mul(&z)?, &x.try_mul(&y.try_mul(&z)?)?));
        let dl = coproduct(&xy)?;
        let dr = coproduct(&x)?.try_mul(&coproduct(&y)?)?;
        rep.record(format!("trial {t}: Δ(xy) = Δ(x)Δ(y)"), tensor_diff(&dl, &dr));
        let sl = convert(&antipode(&xy)?, Tpeak);
        let sr = convert(&antipode(&y)?, Tpeak).try_mul(&convert(&antipode(&x)?, Tpeak))?;
        rep.record(format!("trial {t}: S(xy) = S(y)S(x)"), diff(&sl, &sr));
    }
    Ok(rep)
}
