//! Worked examples with known exact answers.

use std::collections::{BTreeMap, BTreeSet};

use khopf::exactpoly::{int, BetaPoly, TruncationContext};
use khopf::peakalg::{convert, opeak_mul, tpeak_mul, PeakBasis, PeakElement};
use khopf::shapes::{Composition, Partition, PeakComposition};
use khopf::shiftedsym::{expand_in_family, sym_basis, SymFamily};
use khopf::wordalg::{big_multiperms, bullet_product, sbar_multiperms, shuffle, SetComposition};

fn ctx(n: usize, d: usize) -> TruncationContext {
    TruncationContext::new(n, d).unwrap()
}

fn pc(parts: &[u32]) -> PeakComposition {
    PeakComposition::new(parts.to_vec()).unwrap()
}

fn comp(parts: &[u32]) -> Composition {
    Composition::new(parts.to_vec()).unwrap()
}

fn beta_term(c: i64, k: usize) -> BetaPoly {
    BetaPoly::monomial(int(c), k)
}

fn element(basis: PeakBasis, terms: &[(&[u32], i64, usize)]) -> PeakElement {
    PeakElement::from_terms(basis, terms.iter().map(|&(a, c, k)| (pc(a), beta_term(c, k))))
}

fn sc(blocks: &[&[u32]]) -> SetComposition {
    SetComposition::new(blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
}

#[test]
fn big_gq_32_in_gp() {
    // seven variables and degree seven hold every index the expansion touches
    let f = sym_basis(SymFamily::GQ, &Partition::new(vec![3, 2]).unwrap(), ctx(7, 7)).unwrap();
    let e = expand_in_family(&f, SymFamily::GP).unwrap();
    assert_eq!(e.to_text(), "4*GP[3,2] + 2b*GP[4,2] - b^2*GP[4,3]");
}

#[test]
fn small_gq_32_in_gp() {
    let f = sym_basis(SymFamily::SmallGQ, &Partition::new(vec![3, 2]).unwrap(), ctx(5, 5)).unwrap();
    let e = expand_in_family(&f, SymFamily::SmallGP).unwrap();
    assert_eq!(e.to_text(), "-b^2*gp[2,1] + 2b*gp[3,1] + 4*gp[3,2]");
}

#[test]
fn opeak_31_in_tpeak() {
    let x = PeakElement::basis_element(PeakBasis::Opeak, pc(&[3, 1]));
    let expected = element(PeakBasis::Tpeak, &[(&[3, 1], 4, 0), (&[2, 1], 2, 1)]);
    assert_eq!(convert(&x, PeakBasis::Tpeak), expected);
    assert_eq!(convert(&x, PeakBasis::Tpeak).to_text(), "2b*P[2,1] + 4*P[3,1]");
}

#[test]
fn opeak_generator_one() {
    let x = PeakElement::basis_element(PeakBasis::Opeak, pc(&[1]));
    assert_eq!(convert(&x, PeakBasis::Tpeak), element(PeakBasis::Tpeak, &[(&[1], 2, 0)]));
}

#[test]
fn tpeak_products() {
    let t = |a: &[u32]| PeakElement::basis_element(PeakBasis::Tpeak, pc(a));
    let five = tpeak_mul(&t(&[3, 2, 5, 2]), &t(&[4, 2])).unwrap();
    let expected = element(
        PeakBasis::Tpeak,
        &[
            (&[3, 2, 5, 3, 3, 2], 1, 0),
            (&[3, 2, 5, 6, 2], 1, 0),
            (&[3, 2, 5, 2, 4, 2], 1, 0),
            (&[3, 2, 5, 5, 2], 1, 1),
            (&[3, 2, 5, 2, 3, 2], 1, 1),
        ],
    );
    assert_eq!(five, expected);

    let three = tpeak_mul(&t(&[3, 2, 5, 1]), &t(&[4, 2])).unwrap();
    let expected = element(
        PeakBasis::Tpeak,
        &[(&[3, 2, 5, 2, 3, 2], 1, 0), (&[3, 2, 5, 5, 2], 1, 0), (&[3, 2, 5, 4, 2], 1, 1)],
    );
    assert_eq!(three, expected);
}

#[test]
fn opeak_products() {
    let o = |a: &[u32]| PeakElement::basis_element(PeakBasis::Opeak, pc(a));
    let six = opeak_mul(&o(&[3, 2, 5, 2]), &o(&[4, 2])).unwrap();
    let expected = element(
        PeakBasis::Opeak,
        &[
            (&[3, 2, 5, 3, 3, 2], 1, 0),
            (&[3, 2, 5, 6, 2], 2, 0),
            (&[3, 2, 5, 2, 4, 2], 1, 0),
            (&[3, 2, 5, 5, 2], 3, 1),
            (&[3, 2, 5, 2, 3, 2], 1, 1),
            (&[3, 2, 5, 4, 2], 1, 2),
        ],
    );
    assert_eq!(six, expected);

    let three = opeak_mul(&o(&[3, 2, 5, 1]), &o(&[4, 2])).unwrap();
    let expected = element(
        PeakBasis::Opeak,
        &[(&[3, 2, 5, 2, 3, 2], 1, 0), (&[3, 2, 5, 5, 2], 2, 0), (&[3, 2, 5, 4, 2], 2, 1)],
    );
    assert_eq!(three, expected);
}

#[test]
fn unit_is_neutral() {
    let x = element(PeakBasis::Tpeak, &[(&[2, 1], 3, 1), (&[3], -1, 0)]);
    assert_eq!(tpeak_mul(&PeakElement::one(PeakBasis::Tpeak), &x).unwrap(), x);
    assert_eq!(tpeak_mul(&x, &PeakElement::one(PeakBasis::Tpeak)).unwrap(), x);
}

#[test]
fn shuffle_21_11() {
    let expected: BTreeMap<Vec<u32>, u64> =
        [(vec![2, 1, 1, 1], 3), (vec![1, 2, 1, 1], 2), (vec![1, 1, 2, 1], 1)].into_iter().collect();
    assert_eq!(shuffle(&[2, 1], &[1, 1]), expected);
    assert_eq!(shuffle(&[1], &[1]), [(vec![1, 1], 2)].into_iter().collect());
}

#[test]
fn bullet_product_example() {
    let got: BTreeSet<SetComposition> = bullet_product(&sc(&[&[1], &[2]]), &sc(&[&[1, 2]])).into_iter().collect();
    let expected: BTreeSet<SetComposition> = [
        sc(&[&[1], &[2], &[3, 4]]),
        sc(&[&[1], &[2, 3, 4]]),
        sc(&[&[1], &[3, 4], &[2]]),
        sc(&[&[1, 3, 4], &[2]]),
        sc(&[&[3, 4], &[1], &[2]]),
    ]
    .into_iter()
    .collect();
    assert_eq!(got, expected);
    assert_eq!(bullet_product(&sc(&[&[1]]), &sc(&[&[1]])).len(), 3);
    assert_eq!(bullet_product(&SetComposition::empty(), &sc(&[&[1, 2]])), vec![sc(&[&[1, 2]])]);
}

#[test]
fn lambda_map() {
    assert_eq!(comp(&[1, 2, 1, 1, 1, 3, 1]).lambda_peak(), pc(&[3, 6, 1]));
    assert_eq!(comp(&[4]).lambda_peak(), pc(&[4]));
    assert_eq!(comp(&[1, 1, 1]).lambda_peak(), pc(&[3]));
}

#[test]
fn odd_refinement() {
    assert_eq!(comp(&[3, 6, 3, 4, 2]).odd(), comp(&[3, 1, 5, 3, 1, 3, 1, 1]));
}

#[test]
fn reverse_complement_transpose() {
    let a = comp(&[3, 2]);
    assert_eq!(a.reverse(), comp(&[2, 3]));
    assert_eq!(a.complement(), comp(&[1, 1, 2, 1]));
    assert_eq!(a.transpose(), comp(&[1, 2, 1, 1]));
}

#[test]
fn sbar_minus_big_with_peak_set_3() {
    let big: BTreeSet<SetComposition> = big_multiperms(4).unwrap().into_iter().collect();
    let got: BTreeSet<SetComposition> = sbar_multiperms(4)
        .unwrap()
        .into_iter()
        .filter(|a| !big.contains(a) && a.peaks() == BTreeSet::from([3]))
        .collect();
    let expected: BTreeSet<SetComposition> =
        [sc(&[&[1, 2, 4], &[3]]), sc(&[&[1, 2], &[4], &[3]]), sc(&[&[4], &[1, 2], &[3]])].into_iter().collect();
    assert_eq!(got, expected);
    assert_eq!(sc(&[&[1, 2, 4], &[3]]).o(), 1);
}
