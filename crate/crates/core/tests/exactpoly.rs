use std::collections::HashMap;

use khopf::exactpoly::{
    classify, frac, int, parse_coeff, tensor_split, zeta_q, BetaPoly, Homogeneity, Monomial, SplitMode, TruncPoly,
    TruncationContext,
};
use khopf::qsymbases::{qsym_basis, QBasisTag};
use khopf::shapes::{Composition, Partition};
use khopf::shiftedsym::{sym_basis, SymFamily};
use khopf::KhopfError;

fn ctx(n: usize, d: usize) -> TruncationContext {
    TruncationContext::new(n, d).unwrap()
}

fn x(c: TruncationContext, i: usize) -> TruncPoly {
    TruncPoly::var(c, i)
}

#[test]
fn truncation_drops_high_degrees() {
    let c = ctx(2, 3);
    let s = &x(c, 0) + &x(c, 1);
    let cube = s.pow(3);
    assert_eq!(cube.max_xdeg(), Some(3));
    assert!(s.pow(4).is_zero());
    assert_eq!(cube.coefficient(&Monomial::new(&[2, 1], 0)), int(3));
}

#[test]
fn beta_cap_is_separate() {
    let c = TruncationContext::with_beta_cap(2, 4, 1).unwrap();
    let b = TruncPoly::beta(c);
    assert!(!b.is_zero());
    assert!(b.pow(2).is_zero());
}

#[test]
fn context_mismatch_is_an_error() {
    let a = TruncPoly::one(ctx(2, 2));
    let b = TruncPoly::one(ctx(3, 2));
    assert!(matches!(a.try_mul(&b), Err(KhopfError::ContextMismatch(..))));
    assert!(a.try_add(&b).is_err());
}

#[test]
fn unit_inverse() {
    let c = ctx(2, 4);
    // 1 - beta*x1 is invertible in the truncated ring
    let u = &TruncPoly::one(c) - &(&TruncPoly::beta(c) * &x(c, 0));
    let inv = u.inverse_unit().unwrap();
    assert_eq!(u.try_mul(&inv).unwrap(), TruncPoly::one(c));
    assert!(x(c, 0).inverse_unit().is_err());
}

#[test]
fn json_round_trip() {
    let c = ctx(3, 4);
    let f = sym_basis(SymFamily::GQ, &Partition::new(vec![2, 1]).unwrap(), c).unwrap();
    let back = TruncPoly::from_json(&f.to_json()).unwrap();
    assert_eq!(back, f);
    assert!(TruncPoly::from_json("{\"ctx\":{\"N\":1}}").is_err());
}

#[test]
fn coefficients_parse_and_print() {
    for s in ["0", "3", "-7", "1/2", "-5/4"] {
        let c = parse_coeff(s).unwrap();
        assert_eq!(khopf::exactpoly::coeff_to_string(&c), s);
    }
    assert_eq!(parse_coeff("2/4").unwrap(), frac(1, 2));
    assert!(parse_coeff("x").is_err());
    assert!(parse_coeff("1/0").is_err());
}

#[test]
fn beta_polynomial_arithmetic() {
    let a = BetaPoly::from_coeffs(vec![int(1), int(2)]);
    let b = BetaPoly::from_coeffs(vec![int(-1), int(1)]);
    let p = a.mul_trunc(&b, 5);
    assert_eq!(p, BetaPoly::from_coeffs(vec![int(-1), int(-1), int(2)]));
    assert_eq!(p.truncate(1), BetaPoly::from_coeffs(vec![int(-1), int(-1)]));
    assert_eq!(a.negate_beta(), BetaPoly::from_coeffs(vec![int(1), int(-2)]));
    assert_eq!(BetaPoly::from_strings(&a.to_strings()).unwrap(), a);
}

#[test]
fn classification() {
    let c = ctx(3, 4);
    let gp = sym_basis(SymFamily::GP, &Partition::new(vec![2]).unwrap(), c).unwrap();
    let k = classify(&gp);
    assert!(k.symmetric && k.quasisymmetric);
    assert_eq!(k.beta_homogeneous, Homogeneity::Degree(2));
    assert_eq!(k.total_homogeneous, Homogeneity::Mixed);

    let m21 = qsym_basis(QBasisTag::M, &Composition::new(vec![2, 1]).unwrap(), c).unwrap();
    let k = classify(&m21);
    assert!(!k.symmetric && k.quasisymmetric);
    assert!(k.symmetric_witness.is_some());

    let x1 = x(c, 0);
    assert!(!classify(&x1).quasisymmetric);
}

#[test]
fn principal_specialization() {
    let c = ctx(3, 3);
    let e2 = qsym_basis(QBasisTag::M, &Composition::new(vec![1, 1]).unwrap(), c).unwrap();
    assert!(zeta_q(&e2).is_zero());
    let h2 = qsym_basis(QBasisTag::F, &Composition::new(vec![2]).unwrap(), c).unwrap();
    assert_eq!(zeta_q(&h2).coeff(2), BetaPoly::one());
}

#[test]
fn ordered_split_is_deconcatenation() {
    let c = ctx(4, 4);
    let m = qsym_basis(QBasisTag::M, &Composition::new(vec![2, 1, 1]).unwrap(), c).unwrap();
    let t = tensor_split(&m, SplitMode::Ordered).unwrap();
    let mut expected: HashMap<(Vec<u32>, Vec<u32>), BetaPoly> = HashMap::new();
    for cut in 0..=3 {
        let parts = [2u32, 1, 1];
        expected.insert((parts[..cut].to_vec(), parts[cut..].to_vec()), BetaPoly::one());
    }
    assert_eq!(t.coords().len(), expected.len());
    for ((l, r), v) in expected {
        assert_eq!(t.coefficient(&l, &r), v, "{l:?} | {r:?}");
    }
    // evaluating the tensor gives `f` on the joined alphabet `x_1..x_4, y_1..y_4`
    let joined = t.evaluate().unwrap();
    let wide = TruncationContext::with_beta_cap(8, 8, 4).unwrap();
    assert_eq!(joined, qsym_basis(QBasisTag::M, &Composition::new(vec![2, 1, 1]).unwrap(), wide).unwrap());
    assert!(tensor_split(&TruncPoly::one(ctx(2, 3)), SplitMode::Ordered).is_err());
}
