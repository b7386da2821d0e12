//! Acceptance run: one PASS/FAIL line per criterion.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use khopf::cli::{run_captured, Suite};
use khopf::exactpoly::{int, pow2, BetaPoly, TruncationContext};
use khopf::peakalg::{self, convert, opeak_mul, tpeak_mul, PeakBasis, PeakElement};
use khopf::qsymbases::{k_antipode_check, k_kbar_check};
use khopf::shapes::{peak_compositions_upto, strict_partitions_upto, Composition, Partition, PeakComposition, StrictPartition};
use khopf::shiftedsym::{
    antipode_identity_check, cauchy_check, change_of_basis_closed, duality_check, expand_in_family, positivity_scan,
    structure_coeffs, sym_basis, ttheta_check, AntipodeFamily, ClosedChange, CoeffKind, Conjecture, DualityCheck,
    IdentityReport, SymFamily,
};
use khopf::wordalg::{big_multiperms, bullet_product, sbar_multiperms, shuffle, word_morphism_check, SetComposition, Zeta};
use khopf::Result;

type Outcome = std::result::Result<String, String>;

fn ctx(n: usize, d: usize) -> TruncationContext {
    TruncationContext::new(n, d).expect("valid context")
}

fn reports(rs: Vec<Result<IdentityReport>>) -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    for r in rs {
        let r = r.map_err(|e| e.to_string())?;
        checked += r.checked;
        failures.extend(r.failures.iter().map(|f| format!("{}: {f}", r.name)));
    }
    if failures.is_empty() {
        Ok(format!("{checked} instances"))
    } else {
        Err(format!("{} of {checked} instances failed; first: {}", failures.len(), failures[0]))
    }
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T, fails: &mut Vec<String>) {
    if got != want {
        fails.push(format!("{what}: got {got:?}, want {want:?}"));
    }
}

fn pc(v: &[u32]) -> PeakComposition {
    PeakComposition::from_slice(v)
}

fn peak(basis: PeakBasis, terms: &[(&[u32], i64, usize)]) -> PeakElement {
    PeakElement::from_terms(basis, terms.iter().map(|&(a, c, k)| (pc(a), BetaPoly::monomial(int(c), k))))
}

fn sc(blocks: &[&[u32]]) -> SetComposition {
    SetComposition::new(blocks.iter().map(|b| b.to_vec()).collect()).expect("valid set composition")
}

fn golden() -> Outcome {
    let mut f = Vec::new();
    let run = |fam, idx: &[u32], target, c| -> std::result::Result<String, String> {
        let p = sym_basis(fam, &Partition::from_slice(idx), c).map_err(|e| e.to_string())?;
        Ok(expand_in_family(&p, target).map_err(|e| e.to_string())?.to_text())
    };
    expect("GQ(3,2)", run(SymFamily::GQ, &[3, 2], SymFamily::GP, ctx(7, 7))?, "4*GP[3,2] + 2b*GP[4,2] - b^2*GP[4,3]".into(), &mut f);
    expect(
        "gq(3,2)",
        run(SymFamily::SmallGQ, &[3, 2], SymFamily::SmallGP, ctx(5, 5))?,
        "-b^2*gp[2,1] + 2b*gp[3,1] + 4*gp[3,2]".into(),
        &mut f,
    );
    expect(
        "opeak(3,1)",
        convert(&PeakElement::basis_element(PeakBasis::Opeak, pc(&[3, 1])), PeakBasis::Tpeak),
        peak(PeakBasis::Tpeak, &[(&[3, 1], 4, 0), (&[2, 1], 2, 1)]),
        &mut f,
    );
    let t = |a: &[u32]| PeakElement::basis_element(PeakBasis::Tpeak, pc(a));
    let o = |a: &[u32]| PeakElement::basis_element(PeakBasis::Opeak, pc(a));
    let m = |r: Result<PeakElement>| r.map_err(|e| e.to_string());
    expect(
        "tpeak five-term product",
        m(tpeak_mul(&t(&[3, 2, 5, 2]), &t(&[4, 2])))?,
        peak(
            PeakBasis::Tpeak,
            &[
                (&[3, 2, 5, 3, 3, 2], 1, 0),
                (&[3, 2, 5, 6, 2], 1, 0),
                (&[3, 2, 5, 2, 4, 2], 1, 0),
                (&[3, 2, 5, 5, 2], 1, 1),
                (&[3, 2, 5, 2, 3, 2], 1, 1),
            ],
        ),
        &mut f,
    );
    expect(
        "tpeak three-term product",
        m(tpeak_mul(&t(&[3, 2, 5, 1]), &t(&[4, 2])))?,
        peak(PeakBasis::Tpeak, &[(&[3, 2, 5, 2, 3, 2], 1, 0), (&[3, 2, 5, 5, 2], 1, 0), (&[3, 2, 5, 4, 2], 1, 1)]),
        &mut f,
    );
    expect(
        "opeak six-term product",
        m(opeak_mul(&o(&[3, 2, 5, 2]), &o(&[4, 2])))?,
        peak(
            PeakBasis::Opeak,
            &[
                (&[3, 2, 5, 3, 3, 2], 1, 0),
                (&[3, 2, 5, 6, 2], 2, 0),
                (&[3, 2, 5, 2, 4, 2], 1, 0),
                (&[3, 2, 5, 5, 2], 3, 1),
                (&[3, 2, 5, 2, 3, 2], 1, 1),
                (&[3, 2, 5, 4, 2], 1, 2),
            ],
        ),
        &mut f,
    );
    expect(
        "opeak three-term product",
        m(opeak_mul(&o(&[3, 2, 5, 1]), &o(&[4, 2])))?,
        peak(PeakBasis::Opeak, &[(&[3, 2, 5, 2, 3, 2], 1, 0), (&[3, 2, 5, 5, 2], 2, 0), (&[3, 2, 5, 4, 2], 2, 1)]),
        &mut f,
    );
    expect(
        "21 shuffle 11",
        shuffle(&[2, 1], &[1, 1]),
        [(vec![2, 1, 1, 1], 3), (vec![1, 2, 1, 1], 2), (vec![1, 1, 2, 1], 1)].into_iter().collect(),
        &mut f,
    );
    expect(
        "{1}{2} • {1,2}",
        bullet_product(&sc(&[&[1], &[2]]), &sc(&[&[1, 2]])).into_iter().collect::<BTreeSet<_>>(),
        [
            sc(&[&[1], &[2], &[3, 4]]),
            sc(&[&[1], &[2, 3, 4]]),
            sc(&[&[1], &[3, 4], &[2]]),
            sc(&[&[1, 3, 4], &[2]]),
            sc(&[&[3, 4], &[1], &[2]]),
        ]
        .into_iter()
        .collect(),
        &mut f,
    );
    let comp = Composition::from_slice;
    expect("Lambda", comp(&[1, 2, 1, 1, 1, 3, 1]).lambda_peak(), pc(&[3, 6, 1]), &mut f);
    expect("odd", comp(&[3, 6, 3, 4, 2]).odd(), comp(&[3, 1, 5, 3, 1, 3, 1, 1]), &mut f);
    let a = comp(&[3, 2]);
    expect("(3,2)^r,c,t", (a.reverse(), a.complement(), a.transpose()), (comp(&[2, 3]), comp(&[1, 1, 2, 1]), comp(&[1, 2, 1, 1])), &mut f);
    let big: BTreeSet<_> = big_multiperms(4).map_err(|e| e.to_string())?.into_iter().collect();
    let extra: BTreeSet<_> = sbar_multiperms(4)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|x| !big.contains(x) && x.peaks() == BTreeSet::from([3]))
        .collect();
    expect(
        "peak set {3}",
        extra,
        [sc(&[&[1, 2, 4], &[3]]), sc(&[&[1, 2], &[4], &[3]]), sc(&[&[4], &[1, 2], &[3]])].into_iter().collect(),
        &mut f,
    );
    if f.is_empty() {
        Ok("13 examples".into())
    } else {
        Err(f.join("; "))
    }
}

fn duality() -> Outcome {
    reports(vec![
        duality_check(DualityCheck::GpGQ, 5, ctx(6, 6)),
        duality_check(DualityCheck::GqGP, 5, ctx(6, 6)),
        duality_check(DualityCheck::SmallGG, 4, ctx(4, 4)),
        peakalg::pairing_check(5, ctx(5, 5)),
    ])
}

fn cauchy() -> Outcome {
    reports(vec![cauchy_check(4, 4, 4, 4)])
}

fn antipodes() -> Outcome {
    let mut rs = Vec::new();
    for fam in AntipodeFamily::ALL {
        for nu in strict_partitions_upto(4) {
            rs.push(antipode_identity_check(fam, &nu, ctx(4, 4)));
        }
    }
    rs.push(peakalg::antipode_check(6));
    rs.push(k_antipode_check(3, ctx(3, 3)));
    reports(rs)
}

fn morphisms() -> Outcome {
    reports(vec![
        word_morphism_check(Zeta::Lt, 4, ctx(4, 4)),
        word_morphism_check(Zeta::Peak, 4, ctx(4, 4)),
        ttheta_check(4, ctx(4, 4)),
    ])
}

fn structure_constants() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for kind in [CoeffKind::A, CoeffKind::B, CoeffKind::AHat, CoeffKind::BHat] {
        let t = structure_coeffs(kind, 5).map_err(|e| e.to_string())?;
        count += t.entries.len();
        if !t.is_integral() {
            bad.push(format!("{} has a non-integer entry", kind.name()));
        }
        if let Some(e) = t.asymmetric_entries().first() {
            bad.push(format!("{} is not symmetric at {e:?}", kind.name()));
        }
        if kind == CoeffKind::A && !t.is_nonnegative() {
            bad.push(format!("a has negative entries: {:?}", t.negative_entries().first()));
        }
    }
    if bad.is_empty() {
        Ok(format!("{count} entries"))
    } else {
        Err(bad.join("; "))
    }
}

fn conjectures() -> Outcome {
    let mut lines = Vec::new();
    let mut bad = Vec::new();
    for c in Conjecture::ALL {
        let r = positivity_scan(c, 5).map_err(|e| e.to_string())?;
        lines.push(c.name());
        if !r.verdict || !r.integral {
            bad.push(r.summary());
        }
    }
    if bad.is_empty() {
        Ok(format!("{} scans hold", lines.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn closed_forms() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for lambda in strict_partitions_upto(5) {
        for (kind, src, dst) in [
            (ClosedChange::GqToGp, SymFamily::GQ, SymFamily::GP),
            (ClosedChange::SmallGqToGp, SymFamily::SmallGQ, SymFamily::SmallGP),
        ] {
            count += 1;
            if let Some(m) = closed_mismatch(kind, src, dst, &lambda).map_err(|e| e.to_string())? {
                bad.push(m);
            }
        }
    }
    for alpha in peak_compositions_upto(5) {
        count += 1;
        let x = PeakElement::basis_element(PeakBasis::Opeak, alpha.clone());
        if convert(&x, PeakBasis::Tpeak) != opeak_lemma(&alpha) {
            bad.push(format!("opeak{alpha}"));
        }
    }
    let kk = reports(vec![k_kbar_check(5, ctx(5, 5))]);
    match (kk, bad.is_empty()) {
        (Ok(s), true) => Ok(format!("{count} indices, K/Kbar {s}")),
        (Ok(_), false) => Err(bad.join("; ")),
        (Err(e), _) => Err(e),
    }
}

/// Compare a closed form with elimination at a degree that makes every coefficient exact.
fn closed_mismatch(kind: ClosedChange, src: SymFamily, dst: SymFamily, lambda: &StrictPartition) -> Result<Option<String>> {
    let d = match kind {
        ClosedChange::GqToGp => lambda.size() as usize + lambda.len(),
        ClosedChange::SmallGqToGp => lambda.size() as usize,
    };
    let f = sym_basis(src, lambda.as_partition(), ctx(d, d))?;
    let elim: BTreeMap<Partition, BetaPoly> =
        expand_in_family(&f, dst)?.coeffs.into_iter().filter(|(p, _)| p.size() as usize <= d).collect();
    let closed: BTreeMap<Partition, BetaPoly> =
        change_of_basis_closed(kind, lambda).into_iter().map(|(p, v)| (p.as_partition().clone(), v)).collect();
    Ok((elim != closed).then(|| format!("{} -> {} at {lambda}", src.name(), dst.name())))
}

fn opeak_lemma(alpha: &PeakComposition) -> PeakElement {
    let parts = alpha.as_composition().parts();
    let l = parts.len();
    let mut out = PeakElement::zero(PeakBasis::Tpeak);
    for mask in 0u32..(1 << l) {
        let k = mask.count_ones() as usize;
        let v: Vec<u32> = (0..l).map(|i| parts[i] - (mask >> i & 1)).collect();
        if let Ok(p) = PeakComposition::new(v) {
            out.add_term(p, &BetaPoly::monomial(pow2((l - k) as i64), k));
        }
    }
    out
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = dir.path().to_str().ok_or("non-UTF-8 temp dir")?.to_string();
    let mut count = 0;
    for (suite, bound) in [(Suite::Duality, "3"), (Suite::Antipode, "3"), (Suite::PeakProducts, "4"), (Suite::Theta, "3")] {
        let base = run_captured(["khopf", "--no-cache", "--threads", "1", "verify", suite.name(), "--bound", bound]);
        if base.code != 0 {
            return Err(format!("{} exited {}: {}", suite.name(), base.code, base.stderr));
        }
        let variants: [&[&str]; 4] = [
            &["--no-cache", "--threads", "8"],
            &["--no-cache", "--threads", "3"],
            &["--cache-dir", &cache, "--threads", "2"],
            &["--cache-dir", &cache, "--threads", "5"],
        ];
        for v in variants {
            let args: Vec<&str> =
                ["khopf"].into_iter().chain(v.iter().copied()).chain(["verify", suite.name(), "--bound", bound]).collect();
            let o = run_captured(args);
            count += 1;
            if o.stdout != base.stdout {
                return Err(format!("{} transcript differs under {v:?}", suite.name()));
            }
        }
    }
    Ok(format!("{count} reruns identical"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("golden examples", golden),
        ("duality matrices", duality),
        ("Cauchy identity", cauchy),
        ("antipode identities", antipodes),
        ("morphism theorems", morphisms),
        ("structure-constant integrality and symmetry", structure_constants),
        ("conjecture scans", conjectures),
        ("change-of-basis closed forms", closed_forms),
        ("determinism and cache transparency", determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {}: {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name} ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
