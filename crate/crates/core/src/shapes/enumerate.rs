use super::composition::{Composition, PeakComposition};
use super::partition::{Partition, StrictPartition};

/// Compositions of `n`, lexicographically with larger parts first.
pub fn compositions(n: u32) -> Vec<Composition> {
    let mut out = Vec::new();
    fn rec(rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if rem == 0 {
            out.push(Composition::new(cur.clone()).expect("positive parts"));
            return;
        }
        for p in (1..=rem).rev() {
            cur.push(p);
            rec(rem - p, cur, out);
            cur.pop();
        }
    }
    rec(n, &mut Vec::new(), &mut out);
    out
}

pub fn peak_compositions(n: u32) -> Vec<PeakComposition> {
    compositions(n)
        .into_iter()
        .filter(|c| c.is_peak())
        .map(|c| PeakComposition::try_from(c).expect("filtered"))
        .collect()
}

/// Partitions of `n`, lexicographically with larger parts first.
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    fn rec(rem: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition::new(cur.clone()).expect("decreasing"));
            return;
        }
        for p in (1..=rem.min(max)).rev() {
            cur.push(p);
            rec(rem - p, p, cur, out);
            cur.pop();
        }
    }
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn strict_partitions(n: u32) -> Vec<StrictPartition> {
    partitions(n)
        .into_iter()
        .filter(|p| p.is_strict())
        .map(|p| StrictPartition::try_from(p).expect("filtered"))
        .collect()
}

/// Shape families accepted by [`enumerate_shapes`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShapeKind {
    Composition,
    Peak,
    Partition,
    Strict,
}

/// Text forms of all shapes of the given kind with size at most `n`, in graded order.
pub fn enumerate_shapes(kind: ShapeKind, n: u32) -> Vec<String> {
    let mut out = Vec::new();
    for k in 0..=n {
        match kind {
            ShapeKind::Composition => out.extend(compositions(k).iter().map(|c| c.to_text())),
            ShapeKind::Peak => out.extend(peak_compositions(k).iter().map(|c| c.to_text())),
            ShapeKind::Partition => out.extend(partitions(k).iter().map(|c| c.to_text())),
            ShapeKind::Strict => out.extend(strict_partitions(k).iter().map(|c| c.to_text())),
        }
    }
    out
}

/// Strict partitions of every size up to `n`.
pub fn strict_partitions_upto(n: u32) -> Vec<StrictPartition> {
    (0..=n).flat_map(strict_partitions).collect()
}

pub fn partitions_upto(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions).collect()
}

pub fn peak_compositions_upto(n: u32) -> Vec<PeakComposition> {
    (0..=n).flat_map(peak_compositions).collect()
}

pub fn compositions_upto(n: u32) -> Vec<Composition> {
    (0..=n).flat_map(compositions).collect()
}
