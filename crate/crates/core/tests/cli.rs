use std::path::Path;
use std::process::Command;

use khopf::cli::{run_captured, Outcome, Store, CACHE_VERSION};
use khopf::exactpoly::TruncationContext;
use khopf::qsymbases::BasisExpansion;
use khopf::shapes::Partition;
use khopf::shiftedsym::{expand_in_family, structure_coeffs, sym_basis, CoeffKind, CoeffTable, SymFamily, CSV_COLUMNS};

fn run(args: &[&str]) -> Outcome {
    run_captured(std::iter::once("khopf").chain(args.iter().copied()))
}

fn run_in(dir: &Path, args: &[&str]) -> Outcome {
    let d = dir.to_str().unwrap();
    let mut v = vec!["--cache-dir", d];
    v.extend_from_slice(args);
    run(&v)
}

fn entry_files(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    let Ok(top) = std::fs::read_dir(dir) else { return out };
    for shard in top {
        let shard = shard.unwrap().path();
        if shard.is_dir() {
            for f in std::fs::read_dir(&shard).unwrap() {
                out.push(f.unwrap().path());
            }
        }
    }
    out.sort();
    out
}

#[test]
fn expand_gq_32() {
    let o = run(&["--no-cache", "expand", "--family", "GP", "--of", "GQ[3,2]"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout.trim(), "4*GP[3,2] + 2b*GP[4,2] - b^2*GP[4,3]");
}

#[test]
fn expand_products_and_peaks() {
    let o = run(&["--no-cache", "expand", "--family", "gp", "--of", "gq[3,2]"]);
    assert_eq!(o.stdout.trim(), "-b^2*gp[2,1] + 2b*gp[3,1] + 4*gp[3,2]");
    let o = run(&["--no-cache", "expand", "--family", "tpeak", "--of", "opeak[3,1]"]);
    assert_eq!(o.stdout.trim(), "2b*P[2,1] + 4*P[3,1]");
    let o = run(&["--no-cache", "expand", "--family", "s", "--of", "s[1]*s[1]"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.trim() == "s[1,1] + s[2]" || o.stdout.trim() == "s[2] + s[1,1]", "{}", o.stdout);
}

#[test]
fn basis_of_empty_peak_composition() {
    let o = run(&["--no-cache", "basis", "--family", "K", "--index", ""]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(o.stdout.trim(), "1");
}

#[test]
fn verify_duality_passes() {
    let o = run(&["--no-cache", "verify", "duality", "--bound", "4"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("verify duality: ok"), "{}", o.stdout);
}

#[test]
fn exit_codes() {
    let o = run(&["--no-cache", "--vars", "3", "verify", "duality", "--bound", "4"]);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("N >= 4"), "{}", o.stderr);

    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["verify", "nonsense", "--bound", "2"]).code, 2);
    assert_eq!(run(&["--no-cache", "expand", "--family", "XX", "--of", "GP[1]"]).code, 2);
    assert_eq!(run(&["--no-cache", "basis", "--family", "GP", "--index", "1,2"]).code, 2);

    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("verify"));
    let version = run(&["--version"]);
    assert_eq!(version.code, 0);
    assert!(version.stdout.contains(env!("CARGO_PKG_VERSION")));
}

#[test]
fn conjecture_scan_reports() {
    let o = run(&["--no-cache", "conjecture", "all", "--bound", "3"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.lines().count() >= 9);
    assert!(!o.stdout.contains("fails"), "{}", o.stdout);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["coeffs", "--kind", "a", "--bound", "4", "--format", "json"];
    let first = run_in(dir.path(), &args);
    assert_eq!(first.code, 0, "{}", first.stderr);
    let files = entry_files(dir.path());
    assert_eq!(files.len(), 1);
    let before = std::fs::read(&files[0]).unwrap();

    let second = run_in(dir.path(), &args);
    assert_eq!(second.stdout, first.stdout);
    assert_eq!(std::fs::read(&files[0]).unwrap(), before, "a hit must not rewrite the entry");

    let uncached = run(&["--no-cache", "coeffs", "--kind", "a", "--bound", "4", "--format", "json"]);
    assert_eq!(uncached.stdout, first.stdout);

    let table = CoeffTable::from_json(first.stdout.trim()).unwrap();
    let direct = structure_coeffs(CoeffKind::A, 4).unwrap();
    assert_eq!(table.entries, direct.entries);

    let list = run_in(dir.path(), &["cache", "list"]);
    assert_eq!(list.stdout.lines().count(), 1);
    assert!(list.stdout.contains("coeffs|a|"), "{}", list.stdout);
    let path = run_in(dir.path(), &["cache", "path"]);
    assert_eq!(path.stdout.trim(), dir.path().to_str().unwrap());
    let clear = run_in(dir.path(), &["cache", "clear"]);
    assert_eq!(clear.code, 0);
    assert!(entry_files(dir.path()).is_empty());
}

#[test]
fn store_is_byte_exact_and_versioned() {
    let dir = tempfile::tempdir().unwrap();
    let store = Store::new(dir.path());
    let table = structure_coeffs(CoeffKind::A, 4).unwrap();
    let payload = table.to_json().unwrap();
    store.store("table-a-4", payload.clone()).unwrap();
    let entry = store.load("table-a-4").unwrap().unwrap();
    assert_eq!(entry.payload, payload);
    assert_eq!(entry.version, CACHE_VERSION);
    assert_eq!(CoeffTable::from_json(&entry.payload).unwrap(), table);

    let other = Store::with_version(dir.path(), "khopf-0.0.0/0");
    assert_ne!(other.key("table-a-4"), store.key("table-a-4"));
    assert!(other.load("table-a-4").unwrap().is_none());

    let mut warnings = Vec::new();
    let mut computed = false;
    let v = other
        .get_or_compute(
            "table-a-4",
            &mut warnings,
            |s: &String| Ok(s.clone()),
            |s| Ok(s.to_string()),
            || {
                computed = true;
                Ok(payload.clone())
            },
        )
        .unwrap();
    assert!(computed, "a version change must miss");
    assert_eq!(v, payload);
    assert!(warnings.is_empty());
    assert_eq!(entry_files(dir.path()).len(), 2);
}

#[test]
fn corrupt_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["coeffs", "--kind", "b", "--bound", "3"];
    let good = run_in(dir.path(), &args);
    let files = entry_files(dir.path());
    assert_eq!(files.len(), 1);
    std::fs::write(&files[0], b"{ not json").unwrap();

    let again = run_in(dir.path(), &args);
    assert_eq!(again.code, 0);
    assert_eq!(again.stdout, good.stdout);
    assert!(again.stderr.contains("warning"), "{}", again.stderr);
    let text = std::fs::read_to_string(&files[0]).unwrap();
    assert!(serde_json::from_str::<serde_json::Value>(&text).is_ok(), "entry should be rewritten");

    let quiet = run_in(dir.path(), &args);
    assert!(quiet.stderr.is_empty(), "{}", quiet.stderr);
}

#[test]
fn concurrent_writers_leave_one_valid_entry() {
    let dir = tempfile::tempdir().unwrap();
    let exe = env!("CARGO_BIN_EXE_khopf");
    let handles: Vec<_> = (0..8)
        .map(|_| {
            let d = dir.path().to_path_buf();
            std::thread::spawn(move || {
                Command::new(exe)
                    .args(["--cache-dir", d.to_str().unwrap(), "coeffs", "--kind", "b_hat", "--bound", "4"])
                    .output()
                    .unwrap()
            })
        })
        .collect();
    let outs: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for o in &outs {
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(o.stdout, outs[0].stdout);
    }
    let files = entry_files(dir.path());
    assert_eq!(files.len(), 1, "{files:?}");
    for f in &files {
        assert_eq!(f.extension().unwrap(), "json");
        let text = std::fs::read_to_string(f).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert!(v["payload"].is_string());
    }
}

#[test]
fn threads_writing_one_key() {
    let dir = tempfile::tempdir().unwrap();
    let store = Store::new(dir.path());
    let payload = "x".repeat(1 << 16);
    std::thread::scope(|s| {
        for _ in 0..16 {
            s.spawn(|| store.store("same", payload.clone()).unwrap());
            s.spawn(|| {
                if let Ok(Some(e)) = store.load("same") {
                    assert_eq!(e.payload, payload);
                }
            });
        }
    });
    assert_eq!(entry_files(dir.path()).len(), 1);
    assert_eq!(store.load("same").unwrap().unwrap().payload, payload);
}

#[test]
fn csv_export() {
    let mut empty = structure_coeffs(CoeffKind::A, 3).unwrap();
    empty.entries.clear();
    assert_eq!(empty.to_csv().unwrap(), format!("{}\n", CSV_COLUMNS.join(",")));

    let table = structure_coeffs(CoeffKind::A, 3).unwrap();
    let text = table.to_csv().unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), CSV_COLUMNS);
    assert_eq!(rdr.records().count(), table.entries.len());
    let keys: Vec<_> = table.entries.iter().map(|e| (e.nu.clone(), e.lambda.clone(), e.mu.clone())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted, "rows are ordered by (nu, lambda, mu)");

    let o = run(&["--no-cache", "coeffs", "--kind", "a", "--bound", "3", "--format", "csv"]);
    assert_eq!(o.stdout, table.to_csv().unwrap());
}

#[test]
fn json_round_trips() {
    for kind in [CoeffKind::A, CoeffKind::B, CoeffKind::AHat, CoeffKind::BHat] {
        let t = structure_coeffs(kind, 4).unwrap();
        assert_eq!(CoeffTable::from_json(&t.to_json().unwrap()).unwrap(), t);
    }
    let ctx = TruncationContext::new(5, 5).unwrap();
    let f = sym_basis(SymFamily::SmallGQ, &Partition::new(vec![3, 1]).unwrap(), ctx).unwrap();
    let e = expand_in_family(&f, SymFamily::SmallGP).unwrap();
    let back: BasisExpansion<Partition> = BasisExpansion::from_json(&e.to_json()).unwrap();
    assert_eq!(back.coeffs, e.coeffs);
    assert_eq!(back.ctx, e.ctx);
}

#[test]
fn transcripts_do_not_depend_on_threads_or_cache() {
    let dir = tempfile::tempdir().unwrap();
    let base = run(&["--no-cache", "--threads", "1", "verify", "peak-products", "--bound", "4"]);
    assert_eq!(base.code, 0, "{}", base.stderr);
    for threads in ["2", "7"] {
        let o = run(&["--no-cache", "--threads", threads, "verify", "peak-products", "--bound", "4"]);
        assert_eq!(o.stdout, base.stdout);
    }
    for _ in 0..2 {
        let o = run_in(dir.path(), &["--threads", "3", "verify", "peak-products", "--bound", "4"]);
        assert_eq!(o.stdout, base.stdout);
    }
    let seeded = run(&["--no-cache", "--seed", "9", "verify", "peak-products", "--bound", "4"]);
    assert_eq!(seeded.code, 0);
}
