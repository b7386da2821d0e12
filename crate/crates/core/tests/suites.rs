use khopf::cli::{run_suite, transcript, Suite};
use khopf::exactpoly::TruncationContext;
use khopf::shapes::StrictPartition;
use khopf::shiftedsym::{antipode_identity_check, AntipodeFamily};

const ALL: [Suite; 6] = [Suite::Duality, Suite::Cauchy, Suite::Antipode, Suite::Theta, Suite::PeakProducts, Suite::WordHopf];

#[test]
fn every_suite_passes_at_bound_3() {
    let ctx = TruncationContext::new(3, 3).unwrap();
    for suite in ALL {
        let reports = run_suite(suite, 3, ctx, 0).unwrap();
        assert!(!reports.is_empty());
        for r in &reports {
            assert!(r.ok(), "{}: {:?}", r.name, r.failures);
            assert!(r.checked > 0, "{} checked nothing", r.name);
        }
        let t = transcript(suite, 3, ctx, &reports);
        assert!(t.ends_with(&format!("verify {}: ok ({} instances, 0 failures)\n", suite.name(), reports.iter().map(|r| r.checked).sum::<usize>())));
    }
}

#[test]
fn suite_names_round_trip() {
    for suite in ALL {
        assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
    }
    assert!("nope".parse::<Suite>().is_err());
}

#[test]
fn antipode_identity_for_21() {
    let nu = StrictPartition::new(vec![2, 1]).unwrap();
    let ctx = TruncationContext::new(4, 4).unwrap();
    for fam in AntipodeFamily::ALL {
        let r = antipode_identity_check(fam, &nu, ctx).unwrap();
        assert!(r.ok(), "{}: {:?}", fam.name(), r.failures);
    }
}

#[test]
fn seeds_change_nothing_but_the_sample() {
    let ctx = TruncationContext::new(3, 3).unwrap();
    for seed in [0, 1, 42] {
        let a = run_suite(Suite::PeakProducts, 3, ctx, seed).unwrap();
        let b = run_suite(Suite::PeakProducts, 3, ctx, seed).unwrap();
        assert_eq!(transcript(Suite::PeakProducts, 3, ctx, &a), transcript(Suite::PeakProducts, 3, ctx, &b));
        assert!(a.iter().all(|r| r.ok()));
    }
}
