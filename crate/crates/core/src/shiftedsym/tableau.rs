//! Explicit shifted tableaux and their statistics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{KhopfError, Result};
use crate::shapes::{ShiftedDiagram, StrictPartition};

/// A letter of the primed alphabet `1' < 1 < 2' < 2 < ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u32);

impl Letter {
    pub fn unprimed(i: u32) -> Self {
        Letter(2 * i)
    }

    pub fn primed(i: u32) -> Self {
        Letter(2 * i - 1)
    }

    pub fn value(&self) -> u32 {
        self.0.div_ceil(2)
    }

    pub fn is_primed(&self) -> bool {
        self.0 % 2 == 1
    }
}

impl FromStr for Letter {
    type Err = KhopfError;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (num, primed) = match t.strip_suffix('\'') {
            Some(n) => (n, true),
            None => (t, false),
        };
        let v: u32 = num.parse().map_err(|_| KhopfError::Parse(format!("bad letter {s:?}")))?;
        if v == 0 {
            return Err(KhopfError::Parse("letters start at 1".into()));
        }
        Ok(if primed { Letter::primed(v) } else { Letter::unprimed(v) })
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.value(), if self.is_primed() { "'" } else { "" })
    }
}

/// What each box may hold.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    /// Exactly one letter.
    Single,
    /// A nonempty set of letters.
    Set,
    /// A nonempty multiset of letters.
    Multiset,
}

/// A filling of `SD_{lambda/mu}` by (multi)sets of primed letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedTableau {
    lambda: StrictPartition,
    mu: StrictPartition,
    entries: BTreeMap<(u32, u32), Vec<Letter>>,
}

impl ShiftedTableau {
    /// Build from rows listed bottom-up (row 1 first), each giving its boxes
    /// left to right; a box is a comma-separated list such as `"2',3"`.
    pub fn from_rows(lambda: &StrictPartition, mu: &StrictPartition, rows: &[&[&str]]) -> Result<Self> {
        let d = ShiftedDiagram::skew(lambda, mu)?;
        let mut entries = BTreeMap::new();
        for (i, row) in rows.iter().enumerate() {
            let r = i as u32 + 1;
            let boxes: Vec<(u32, u32)> = d.boxes().iter().cloned().filter(|b| b.0 == r).collect();
            if boxes.len() != row.len() {
                return Err(KhopfError::InvalidIndex(format!("row {r} has {} boxes, got {}", boxes.len(), row.len())));
            }
            for (b, s) in boxes.into_iter().zip(row.iter()) {
                let mut v: Vec<Letter> = s.split(',').map(str::parse).collect::<Result<_>>()?;
                v.sort();
                entries.insert(b, v);
            }
        }
        if entries.len() != d.len() {
            return Err(KhopfError::InvalidIndex("not every box is filled".into()));
        }
        Ok(ShiftedTableau { lambda: lambda.clone(), mu: mu.clone(), entries })
    }

    pub fn entry(&self, b: (u32, u32)) -> Option<&[Letter]> {
        self.entries.get(&b).map(|v| v.as_slice())
    }

    pub fn boxes(&self) -> impl Iterator<Item = &(u32, u32)> {
        self.entries.keys()
    }

    /// `|T|`, the total number of letters.
    pub fn size(&self) -> usize {
        self.entries.values().map(|v| v.len()).sum()
    }

    /// Exponent vector of `x^T`.
    pub fn monomial(&self) -> Vec<u32> {
        let mut e: Vec<u32> = Vec::new();
        for v in self.entries.values() {
            for l in v {
                let i = l.value() as usize;
                if e.len() < i {
                    e.resize(i, 0);
                }
                e[i - 1] += 1;
            }
        }
        e
    }

    pub fn has_primed_diagonal(&self) -> bool {
        self.entries.iter().any(|((r, c), v)| r == c && v.iter().any(|l| l.is_primed()))
    }

    pub fn all_diagonal_primed(&self) -> bool {
        self.entries.iter().filter(|((r, c), _)| r == c).all(|(_, v)| v.iter().all(|l| l.is_primed()))
    }

    fn fits(&self, kind: EntryKind) -> bool {
        self.entries.values().all(|v| {
            !v.is_empty()
                && match kind {
                    EntryKind::Single => v.len() == 1,
                    EntryKind::Set => v.windows(2).all(|w| w[0] < w[1]),
                    EntryKind::Multiset => true,
                }
        })
    }

    fn neighbours(&self) -> impl Iterator<Item = (&Vec<Letter>, &Vec<Letter>, bool)> {
        // (earlier, later, same_row)
        self.entries.iter().flat_map(move |(&(r, c), v)| {
            let right = self.entries.get(&(r, c + 1)).map(|w| (v, w, true));
            let up = self.entries.get(&(r + 1, c)).map(|w| (v, w, false));
            right.into_iter().chain(up)
        })
    }

    /// Weakly increasing rows and columns (`max <= min` between neighbours).
    pub fn is_weakly_increasing(&self) -> bool {
        self.neighbours().all(|(a, b, _)| a.last() <= b.first())
    }

    /// Semistandard: weakly increasing, no primed letter twice in a row and no
    /// unprimed letter twice in a column.
    pub fn is_semistandard(&self, kind: EntryKind) -> bool {
        if !self.fits(kind) || !self.is_weakly_increasing() {
            return false;
        }
        let mut seen: BTreeSet<(bool, u32, Letter)> = BTreeSet::new();
        for (&(r, c), v) in &self.entries {
            let distinct: BTreeSet<&Letter> = v.iter().collect();
            for &&l in &distinct {
                let key = if l.is_primed() { (true, r, l) } else { (false, c, l) };
                if !seen.insert(key) {
                    return false;
                }
            }
        }
        true
    }

    /// Reverse plane partition: single letters, weakly increasing.
    pub fn is_rpp(&self) -> bool {
        self.fits(EntryKind::Single) && self.is_weakly_increasing()
    }

    /// `wt_RPP(T)`: unprimed `i` counted once per column, primed once per row.
    pub fn wt_rpp(&self) -> Vec<u32> {
        let mut seen: BTreeSet<(u32, bool, u32)> = BTreeSet::new();
        for (&(r, c), v) in &self.entries {
            for l in v {
                seen.insert((l.value(), l.is_primed(), if l.is_primed() { r } else { c }));
            }
        }
        let mut e: Vec<u32> = Vec::new();
        for (i, _, _) in seen {
            if e.len() < i as usize {
                e.resize(i as usize, 0);
            }
            e[i as usize - 1] += 1;
        }
        e
    }

    pub fn shape(&self) -> (&StrictPartition, &StrictPartition) {
        (&self.lambda, &self.mu)
    }
}

/// A semistandard shifted tableau with a partition of its boxes into blocks
/// of adjacent equal entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarTableau {
    tableau: ShiftedTableau,
    blocks: Vec<Vec<(u32, u32)>>,
}

impl BarTableau {
    pub fn new(tableau: ShiftedTableau, blocks: Vec<Vec<(u32, u32)>>) -> Result<Self> {
        if !tableau.is_semistandard(EntryKind::Single) {
            return Err(KhopfError::InvalidIndex("underlying tableau is not semistandard".into()));
        }
        let mut covered = BTreeSet::new();
        for b in &blocks {
            let first = b.first().ok_or_else(|| KhopfError::InvalidIndex("empty block".into()))?;
            let letter = tableau.entry(*first).ok_or_else(|| KhopfError::InvalidIndex(format!("{first:?} is not a box")))?[0];
            for &x in b {
                if tableau.entry(x).map(|v| v[0]) != Some(letter) || !covered.insert(x) {
                    return Err(KhopfError::InvalidIndex(format!("block {b:?} is not a set of equal entries")));
                }
            }
            if !connected(b) {
                return Err(KhopfError::InvalidIndex(format!("block {b:?} is not connected")));
            }
        }
        if covered.len() != tableau.entries.len() {
            return Err(KhopfError::InvalidIndex("blocks do not cover the shape".into()));
        }
        Ok(BarTableau { tableau, blocks })
    }

    /// `|T|`, the number of blocks.
    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    /// `x^T`: one factor `x_i` per block holding `i` or `i'`.
    pub fn monomial(&self) -> Vec<u32> {
        let mut e: Vec<u32> = Vec::new();
        for b in &self.blocks {
            let i = self.tableau.entry(b[0]).expect("validated")[0].value() as usize;
            if e.len() < i {
                e.resize(i, 0);
            }
            e[i - 1] += 1;
        }
        e
    }

    pub fn tableau(&self) -> &ShiftedTableau {
        &self.tableau
    }
}

fn connected(b: &[(u32, u32)]) -> bool {
    let set: BTreeSet<(u32, u32)> = b.iter().cloned().collect();
    let mut stack = vec![b[0]];
    let mut seen = BTreeSet::from([b[0]]);
    while let Some((r, c)) = stack.pop() {
        for n in [(r + 1, c), (r, c + 1), (r.wrapping_sub(1), c), (r, c.wrapping_sub(1))] {
            if set.contains(&n) && seen.insert(n) {
                stack.push(n);
            }
        }
    }
    seen.len() == set.len()
}
