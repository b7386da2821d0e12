//! Library results against independent brute-force computations.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use khopf::exactpoly::{int, pow2, BetaPoly, Monomial, TruncPoly, TruncationContext};
use khopf::peakalg::{convert, PeakBasis, PeakElement};
use khopf::qsymbases::{qsym_basis, QBasisTag};
use khopf::shapes::{
    compositions, compositions_upto, partitions, peak_compositions, peak_compositions_upto, strict_partitions,
    strict_partitions_upto, Partition, PeakComposition, StrictPartition,
};
use khopf::shiftedsym::{change_of_basis_closed, expand_in_family, sym_basis, ClosedChange, SymFamily};
use khopf::wordalg::{bullet_product, mmr_product, mmr_product_bruteforce, set_compositions, shuffle, small_multiperms, SetComposition};

fn ctx(n: usize, d: usize) -> TruncationContext {
    TruncationContext::new(n, d).unwrap()
}

/// All exponent vectors of length `n` with sum `k`.
fn weak_compositions(n: usize, k: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in weak_compositions(n - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn poly(c: TruncationContext, terms: impl IntoIterator<Item = (Vec<u32>, i64)>) -> TruncPoly {
    let mut map: HashMap<Monomial, i64> = HashMap::new();
    for (e, k) in terms {
        *map.entry(Monomial::new(&e, 0)).or_default() += k;
    }
    TruncPoly::from_int_terms(c, map)
}

fn h(c: TruncationContext, k: i64) -> TruncPoly {
    if k < 0 {
        return TruncPoly::zero(c);
    }
    poly(c, weak_compositions(c.n, k as u32).into_iter().map(|e| (e, 1)))
}

fn e(c: TruncationContext, k: u32) -> TruncPoly {
    poly(c, weak_compositions(c.n, k).into_iter().filter(|v| v.iter().all(|&x| x <= 1)).map(|v| (v, 1)))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn sign(p: &[usize]) -> i64 {
    let inv = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Schur function by the Jacobi-Trudi determinant.
fn schur_jt(c: TruncationContext, lambda: &[u32]) -> TruncPoly {
    let l = lambda.len();
    let mut acc = TruncPoly::zero(c);
    for p in permutations(l) {
        let mut term = TruncPoly::one(c);
        for i in 0..l {
            term = term.try_mul(&h(c, lambda[i] as i64 - i as i64 + p[i] as i64)).unwrap();
        }
        acc = acc.try_add(&term.scale(&int(sign(&p)))).unwrap();
    }
    acc
}

/// `q_n = sum_a e_a h_{n-a}`.
fn q_row(c: TruncationContext, n: u32) -> TruncPoly {
    let mut acc = TruncPoly::zero(c);
    for a in 0..=n {
        acc = acc.try_add(&e(c, a).try_mul(&h(c, (n - a) as i64)).unwrap()).unwrap();
    }
    acc
}

/// `Q_(a,b) = q_a q_b + 2 sum_{i>=1} (-1)^i q_{a+i} q_{b-i}`.
fn q_two_rows(c: TruncationContext, a: u32, b: u32) -> TruncPoly {
    let mut acc = q_row(c, a).try_mul(&q_row(c, b)).unwrap();
    for i in 1..=b {
        let t = q_row(c, a + i).try_mul(&q_row(c, b - i)).unwrap();
        acc = acc.try_add(&t.scale(&int(if i % 2 == 0 { 2 } else { -2 }))).unwrap();
    }
    acc
}

/// `M_alpha` from its definition as a sum over increasing index sequences.
fn monomial_qsym(c: TruncationContext, alpha: &[u32]) -> TruncPoly {
    let k = alpha.len();
    let mut terms = Vec::new();
    for mask in 0u32..(1 << c.n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let mut e = vec![0; c.n];
        let mut j = 0;
        for (i, slot) in e.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                *slot = alpha[j];
                j += 1;
            }
        }
        terms.push((e, 1));
    }
    poly(c, terms)
}

fn refinements(alpha: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &a in alpha {
        let mut next = Vec::new();
        for pre in &out {
            for tail in compositions(a) {
                let mut v = pre.clone();
                v.extend_from_slice(tail.parts());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[test]
fn shape_counts() {
    let fib = |n: u32| {
        let (mut a, mut b) = (1u64, 1u64);
        for _ in 0..n {
            (a, b) = (b, a + b);
        }
        a
    };
    for n in 1..=8 {
        assert_eq!(compositions(n).len(), 1 << (n - 1));
        // peak compositions of n are counted by Fibonacci numbers
        assert_eq!(peak_compositions(n).len() as u64, fib(n - 1), "n = {n}");
        let strict = partitions(n).into_iter().filter(|p| p.is_strict()).count();
        assert_eq!(strict_partitions(n).len(), strict);
        let odd = partitions(n).into_iter().filter(|p| p.parts().iter().all(|x| x % 2 == 1)).count();
        assert_eq!(strict, odd, "distinct vs odd parts at {n}");
    }
}

#[test]
fn schur_matches_jacobi_trudi() {
    let c = ctx(4, 5);
    for n in 1..=5 {
        for lambda in partitions(n) {
            if lambda.len() > 4 {
                continue;
            }
            let s = sym_basis(SymFamily::S, &lambda, c).unwrap();
            assert_eq!(s, schur_jt(c, lambda.parts()), "s{lambda}");
        }
    }
}

#[test]
fn grothendieck_families_specialize_at_beta_zero() {
    let c = ctx(4, 5);
    let zero = int(0);
    for n in 1..=4 {
        for lambda in partitions(n) {
            let g = sym_basis(SymFamily::G, &lambda, c).unwrap().eval_beta(&zero);
            assert_eq!(g, schur_jt(c, lambda.parts()), "G{lambda} at beta = 0");
        }
    }
    for n in 1..=5u32 {
        let q = q_row(c, n);
        let lam = Partition::new(vec![n]).unwrap();
        assert_eq!(sym_basis(SymFamily::Q, &lam, c).unwrap(), q);
        assert_eq!(sym_basis(SymFamily::GQ, &lam, c).unwrap().eval_beta(&zero), q);
        assert_eq!(sym_basis(SymFamily::P, &lam, c).unwrap().scale(&int(2)), q);
        assert_eq!(sym_basis(SymFamily::SmallGP, &lam, c).unwrap().eval_beta(&zero).scale(&int(2)), q);
    }
}

#[test]
fn two_row_schur_q() {
    let c = ctx(4, 5);
    for (a, b) in [(2, 1), (3, 1), (3, 2), (4, 1)] {
        let lam = Partition::new(vec![a, b]).unwrap();
        assert_eq!(sym_basis(SymFamily::Q, &lam, c).unwrap(), q_two_rows(c, a, b), "Q({a},{b})");
    }
}

#[test]
fn quasisymmetric_m_and_f() {
    let c = ctx(4, 4);
    for alpha in compositions_upto(4) {
        let m = monomial_qsym(c, alpha.parts());
        assert_eq!(qsym_basis(QBasisTag::M, &alpha, c).unwrap(), m, "M{alpha}");
        let mut f = TruncPoly::zero(c);
        for b in refinements(alpha.parts()) {
            f = f.try_add(&monomial_qsym(c, &b)).unwrap();
        }
        assert_eq!(qsym_basis(QBasisTag::F, &alpha, c).unwrap(), f, "F{alpha}");
    }
}

/// Interleavings counted by choosing the positions of the first word.
fn shuffle_oracle(v: &[u32], w: &[u32]) -> BTreeMap<Vec<u32>, u64> {
    let n = v.len() + w.len();
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != v.len() {
            continue;
        }
        let (mut i, mut j) = (0, 0);
        let word: Vec<u32> = (0..n)
            .map(|p| {
                if mask >> p & 1 == 1 {
                    i += 1;
                    v[i - 1]
                } else {
                    j += 1;
                    w[j - 1]
                }
            })
            .collect();
        *out.entry(word).or_insert(0) += 1;
    }
    out
}

#[test]
fn shuffle_against_positions() {
    let words: Vec<Vec<u32>> = vec![vec![], vec![1], vec![1, 1], vec![2, 1], vec![1, 2], vec![1, 2, 1], vec![3, 1, 2]];
    for v in &words {
        for w in &words {
            assert_eq!(shuffle(v, w), shuffle_oracle(v, w), "{v:?} ⧢ {w:?}");
        }
    }
}

fn standardize_blocks(blocks: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let all: BTreeSet<u32> = blocks.iter().flatten().copied().collect();
    let rank: BTreeMap<u32, u32> = all.into_iter().zip(1..).collect();
    blocks.iter().map(|b| b.iter().map(|x| rank[x]).collect()).collect()
}

/// `A • B` by scanning every set composition of the combined size.
fn bullet_oracle(a: &SetComposition, b: &SetComposition) -> BTreeSet<SetComposition> {
    let (m, n) = (a.size(), b.size());
    let mut out = BTreeSet::new();
    for c in set_compositions((m + n) as usize).unwrap() {
        let low: Vec<Vec<u32>> = c.restrict(0, m);
        let high: Vec<Vec<u32>> = c.restrict(m, m + n);
        if low == a.blocks() && standardize_blocks(&high) == b.blocks() {
            out.insert(c);
        }
    }
    out
}

#[test]
fn bullet_against_scan() {
    let small: Vec<SetComposition> = (0..=2).flat_map(|k| set_compositions(k).unwrap()).collect();
    for a in &small {
        for b in &small {
            let got: BTreeSet<SetComposition> = bullet_product(a, b).into_iter().collect();
            assert_eq!(got, bullet_oracle(a, b), "{a} • {b}");
        }
    }
}

#[test]
fn mmr_product_against_enumeration() {
    let words = small_multiperms(3, 2);
    for a in &words {
        for b in &words {
            let cap = a.len() + b.len() + 1;
            assert_eq!(mmr_product(a, b, cap).unwrap(), mmr_product_bruteforce(a, b, cap).unwrap(), "{a} * {b}");
        }
    }
}

fn closed_vs_elimination(kind: ClosedChange, source: SymFamily, target: SymFamily, lambda: &StrictPartition) {
    let d = lambda.size() as usize + lambda.len();
    let c = match kind {
        ClosedChange::GqToGp => ctx(d, d),
        ClosedChange::SmallGqToGp => ctx(lambda.size() as usize, lambda.size() as usize),
    };
    let f = sym_basis(source, lambda.as_partition(), c).unwrap();
    let elim = expand_in_family(&f, target).unwrap();
    let closed = change_of_basis_closed(kind, lambda);
    let cap = c.d as u32;
    let from_elim: BTreeMap<Partition, BetaPoly> =
        elim.coeffs.iter().filter(|(p, _)| p.size() <= cap).map(|(p, v)| (p.clone(), v.clone())).collect();
    let from_closed: BTreeMap<Partition, BetaPoly> =
        closed.into_iter().map(|(p, v)| (p.as_partition().clone(), v)).collect();
    assert_eq!(from_elim, from_closed, "{} -> {} at {lambda}", source.name(), target.name());
}

#[test]
fn change_of_basis_closed_forms() {
    for lambda in strict_partitions_upto(5) {
        closed_vs_elimination(ClosedChange::GqToGp, SymFamily::GQ, SymFamily::GP, &lambda);
        closed_vs_elimination(ClosedChange::SmallGqToGp, SymFamily::SmallGQ, SymFamily::SmallGP, &lambda);
    }
}

/// `Θ̄_α = Σ_δ 2^{ℓ-|δ|} β^{|δ|} Π_{α-δ}` over `δ ∈ {0,1}^ℓ`, dropping non-peak results.
fn opeak_oracle(alpha: &PeakComposition) -> PeakElement {
    let parts = alpha.as_composition().parts();
    let l = parts.len();
    let mut out = PeakElement::zero(PeakBasis::Tpeak);
    for mask in 0u32..(1 << l) {
        let k = mask.count_ones() as usize;
        let v: Vec<u32> = (0..l).map(|i| parts[i] - (mask >> i & 1)).collect();
        let Ok(p) = PeakComposition::new(v) else { continue };
        out.add_term(p, &BetaPoly::monomial(pow2((l - k) as i64), k));
    }
    out
}

#[test]
fn opeak_lemma() {
    for alpha in peak_compositions_upto(7) {
        let x = PeakElement::basis_element(PeakBasis::Opeak, alpha.clone());
        assert_eq!(convert(&x, PeakBasis::Tpeak), opeak_oracle(&alpha), "opeak{alpha}");
        let back = convert(&opeak_oracle(&alpha), PeakBasis::Opeak);
        assert_eq!(back, x, "round trip at {alpha}");
    }
}

#[test]
fn lambda_is_peak_and_size_preserving() {
    for alpha in compositions_upto(7) {
        let p = alpha.lambda_peak();
        assert_eq!(p.as_composition().size(), alpha.size());
        // Λ only depends on the peak-relevant descents, so is idempotent on peak compositions
        assert_eq!(p.as_composition().lambda_peak(), p);
    }
}
