use proptest::prelude::*;

use khopf::exactpoly::{int, BetaPoly};
use khopf::peakalg::{antipode, convert, coproduct, counit, PeakBasis, PeakElement};
use khopf::shapes::{Composition, PeakComposition};
use khopf::wordalg::{shuffle, standardize};

fn composition() -> impl Strategy<Value = Composition> {
    prop::collection::vec(1u32..4, 0..5).prop_map(|v| Composition::new(v).unwrap())
}

fn peak_composition() -> impl Strategy<Value = PeakComposition> {
    (prop::collection::vec(2u32..4, 0..2), prop::option::of(1u32..3)).prop_map(|(mut v, last)| {
        v.extend(last);
        PeakComposition::new(v).unwrap()
    })
}

fn peak_element(basis: PeakBasis) -> impl Strategy<Value = PeakElement> {
    prop::collection::vec((peak_composition(), -3i64..=3, 0usize..2), 1..3).prop_map(move |terms| {
        PeakElement::from_terms(basis, terms.into_iter().map(|(a, c, k)| (a, BetaPoly::monomial(int(c), k))))
    })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn composition_involutions(a in composition()) {
        prop_assert_eq!(a.reverse().reverse(), a.clone());
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.transpose(), a.complement().reverse());
        prop_assert_eq!(a.complement().size(), a.size());
    }

    #[test]
    fn descent_set_round_trip(a in composition()) {
        prop_assume!(!a.is_empty());
        let set = a.interval_set();
        prop_assert_eq!(Composition::from_set(a.size(), &set).unwrap(), a);
    }

    #[test]
    fn odd_refinement_has_odd_parts(a in composition()) {
        let o = a.odd();
        prop_assert_eq!(o.size(), a.size());
        prop_assert!(o.parts().iter().all(|p| p % 2 == 1));
    }

    #[test]
    fn shuffle_counts(v in prop::collection::vec(1u32..3, 0..4), w in prop::collection::vec(1u32..3, 0..4)) {
        let total: u64 = shuffle(&v, &w).values().sum();
        prop_assert_eq!(total, binomial((v.len() + w.len()) as u64, v.len() as u64));
    }

    #[test]
    fn packing_is_idempotent(w in prop::collection::vec(1u32..6, 0..6)) {
        let s = standardize(&w);
        prop_assert_eq!(standardize(&s), s.clone());
        // the letters form an initial segment, in the same relative order as `w`
        let letters: std::collections::BTreeSet<u32> = s.iter().copied().collect();
        prop_assert_eq!(letters.into_iter().collect::<Vec<_>>(), (1..=s.iter().copied().max().unwrap_or(0)).collect::<Vec<_>>());
        for i in 0..w.len() {
            for j in 0..w.len() {
                prop_assert_eq!(w[i].cmp(&w[j]), s[i].cmp(&s[j]));
            }
        }
    }

    #[test]
    fn peak_bases_round_trip(x in peak_element(PeakBasis::Tpeak)) {
        prop_assert_eq!(convert(&convert(&x, PeakBasis::Opeak), PeakBasis::Tpeak), x);
    }

    #[test]
    fn peak_product_is_associative(
        x in peak_element(PeakBasis::Tpeak),
        y in peak_element(PeakBasis::Tpeak),
        z in peak_element(PeakBasis::Tpeak),
    ) {
        prop_assert_eq!(x.try_mul(&y).unwrap().try_mul(&z).unwrap(), x.try_mul(&y.try_mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn products_agree_across_bases(x in peak_element(PeakBasis::Opeak), y in peak_element(PeakBasis::Opeak)) {
        let direct = convert(&x.try_mul(&y).unwrap(), PeakBasis::Tpeak);
        let via = convert(&x, PeakBasis::Tpeak).try_mul(&convert(&y, PeakBasis::Tpeak)).unwrap();
        prop_assert_eq!(direct, via);
    }

    #[test]
    fn antipode_is_an_involution(x in peak_element(PeakBasis::Tpeak)) {
        prop_assert_eq!(antipode(&antipode(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn coproduct_is_multiplicative(x in peak_element(PeakBasis::Tpeak), y in peak_element(PeakBasis::Tpeak)) {
        let lhs = coproduct(&x.try_mul(&y).unwrap()).unwrap();
        let rhs = coproduct(&x).unwrap().try_mul(&coproduct(&y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(counit(&x.try_mul(&y).unwrap()), counit(&x).mul_trunc(&counit(&y), 8));
    }
}
