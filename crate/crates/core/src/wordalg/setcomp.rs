use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{KhopfError, Result};
use crate::shapes::{Composition, PeakComposition};

use super::word::{packed_words, small_multiperms_of_length, PackedWord};

/// Largest size for which set compositions are enumerated.
pub const MAX_SETCOMP_SIZE: usize = 8;

/// A sequence of disjoint nonempty blocks whose union is `[n]`.
///
/// Blocks are stored sorted, so equality is equality of set sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SetComposition(Vec<Vec<u32>>);

impl SetComposition {
    pub fn new(blocks: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut sorted = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            if b.is_empty() {
                return Err(KhopfError::InvalidIndex("set compositions have nonempty blocks".into()));
            }
            b.sort_unstable();
            for &x in &b {
                if x == 0 || !seen.insert(x) {
                    return Err(KhopfError::InvalidIndex(format!("entry {x} is repeated or zero")));
                }
            }
            sorted.push(b);
        }
        let n = seen.len() as u32;
        if seen.last().is_some_and(|&m| m != n) {
            return Err(KhopfError::InvalidIndex(format!("blocks do not cover [{n}]")));
        }
        Ok(SetComposition(sorted))
    }

    pub(crate) fn new_unchecked(blocks: Vec<Vec<u32>>) -> Self {
        SetComposition(blocks)
    }

    pub fn empty() -> Self {
        SetComposition(Vec::new())
    }

    /// `st(B)` for any sequence of disjoint nonempty sets of positive integers.
    pub fn standardized(blocks: &[Vec<u32>]) -> Self {
        let mut all: Vec<u32> = blocks.iter().flatten().copied().collect();
        all.sort_unstable();
        let rank = |x: &u32| all.binary_search(x).expect("present") as u32 + 1;
        SetComposition(
            blocks
                .iter()
                .filter(|b| !b.is_empty())
                .map(|b| {
                    let mut v: Vec<u32> = b.iter().map(rank).collect();
                    v.sort_unstable();
                    v
                })
                .collect(),
        )
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.0
    }

    /// `|A|`.
    pub fn size(&self) -> u32 {
        self.0.iter().map(|b| b.len() as u32).sum()
    }

    /// `ℓ(A)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `block[i-1]` is the index of the block holding `i`.
    fn block_of(&self) -> Vec<usize> {
        let mut b = vec![0; self.size() as usize];
        for (j, blk) in self.0.iter().enumerate() {
            for &x in blk {
                b[x as usize - 1] = j;
            }
        }
        b
    }

    /// `A*`.
    pub fn star(&self) -> PackedWord {
        PackedWord::new_unchecked(self.block_of().into_iter().map(|j| j as u32 + 1).collect())
    }

    /// `i` such that `i + 1` sits in an earlier block than `i`.
    pub fn descents(&self) -> BTreeSet<u32> {
        let b = self.block_of();
        (1..b.len()).filter(|&i| b[i] < b[i - 1]).map(|i| i as u32).collect()
    }

    pub fn peaks(&self) -> BTreeSet<u32> {
        let des = self.descents();
        let n = self.size();
        des.iter().copied().filter(|&i| 1 < i && i < n && !des.contains(&(i - 1))).collect()
    }

    pub fn alpha_des(&self) -> Composition {
        Composition::from_set(self.size(), &self.descents()).expect("descents lie in [n-1]")
    }

    pub fn alpha_peak(&self) -> PeakComposition {
        PeakComposition::try_from(Composition::from_set(self.size(), &self.peaks()).expect("peaks lie in [n-1]"))
            .expect("peak sets give peak compositions")
    }

    /// `o(A)`: the number of `i` with `{i, i+1}` inside one block.
    pub fn o(&self) -> usize {
        let b = self.block_of();
        (1..b.len()).filter(|&i| b[i] == b[i - 1]).count()
    }

    /// No block contains two consecutive integers.
    pub fn is_big_multiperm(&self) -> bool {
        self.o() == 0
    }

    /// Membership in `S̄^M`: whenever `{i, i+1}` lies in block `j`, neither
    /// `i - 1` nor `i + 2` lies in blocks `1..=j`.
    pub fn is_sbar(&self) -> bool {
        let b = self.block_of();
        let n = b.len();
        (1..n).filter(|&i| b[i] == b[i - 1]).all(|i| {
            let j = b[i];
            // positions i-1 and i hold the pair (i, i+1) in 1-based letters
            let left = i >= 2 && b[i - 2] <= j;
            let right = i + 1 < n && b[i + 1] <= j;
            !left && !right
        })
    }

    /// `B ∩ {lo+1, ..., hi}` with empty blocks dropped, not standardized.
    pub fn restrict(&self, lo: u32, hi: u32) -> Vec<Vec<u32>> {
        self.0
            .iter()
            .map(|b| b.iter().copied().filter(|&x| lo < x && x <= hi).collect::<Vec<_>>())
            .filter(|b| !b.is_empty())
            .collect()
    }

    /// `k + B`.
    pub fn shifted(&self, k: u32) -> Vec<Vec<u32>> {
        self.0.iter().map(|b| b.iter().map(|x| x + k).collect()).collect()
    }

    pub fn to_text(&self) -> String {
        if self.0.is_empty() {
            return "∅".into();
        }
        self.0
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")))
            .collect()
    }
}

impl fmt::Display for SetComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for SetComposition {
    type Err = KhopfError;
    /// Parses `{1,3}{2}`; `∅` or the empty string is the empty set composition.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || KhopfError::Parse(format!("bad set composition {s:?}"));
        let mut rest = s.trim().trim_start_matches('∅');
        let mut blocks = Vec::new();
        while !rest.is_empty() {
            let inner = rest.strip_prefix('{').ok_or_else(bad)?;
            let end = inner.find('}').ok_or_else(bad)?;
            let b: Vec<u32> =
                inner[..end].split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
            blocks.push(b);
            rest = inner[end + 1..].trim_start();
        }
        SetComposition::new(blocks)
    }
}

/// Reject sizes beyond the enumeration cap.
pub(crate) fn require_enumerable(n: usize) -> Result<()> {
    if n > MAX_SETCOMP_SIZE {
        return Err(KhopfError::Inadequate(format!(
            "set compositions of size {n} exceed the enumeration bound {MAX_SETCOMP_SIZE}"
        )));
    }
    Ok(())
}

/// Every set composition of `[n]`.
pub fn set_compositions(n: usize) -> Result<Vec<SetComposition>> {
    require_enumerable(n)?;
    let mut v: Vec<SetComposition> = packed_words(n).iter().map(|w| w.star()).collect();
    v.sort();
    Ok(v)
}

/// `S^M_n`, the big multipermutations of `[n]`.
pub fn big_multiperms(n: usize) -> Result<Vec<SetComposition>> {
    require_enumerable(n)?;
    let mut v: Vec<SetComposition> = small_multiperms_of_length(n).iter().map(|w| w.star()).collect();
    v.sort();
    Ok(v)
}

/// `S̄^M_n`.
pub fn sbar_multiperms(n: usize) -> Result<Vec<SetComposition>> {
    Ok(set_compositions(n)?.into_iter().filter(|a| a.is_sbar()).collect())
}

/// `A • B`: all `C` with `C ∩ [m] = A` and `C ∩ (m + [n]) = m + B`.
pub fn bullet_product(a: &SetComposition, b: &SetComposition) -> Vec<SetComposition> {
    let m = a.size();
    let left = a.blocks().to_vec();
    let right = b.shifted(m);
    let mut out = Vec::new();
    let mut buf = Vec::new();
    fn go(l: &[Vec<u32>], r: &[Vec<u32>], buf: &mut Vec<Vec<u32>>, out: &mut Vec<SetComposition>) {
        if l.is_empty() && r.is_empty() {
            out.push(SetComposition(buf.clone()));
            return;
        }
        if let Some((x, lr)) = l.split_first() {
            buf.push(x.clone());
            go(lr, r, buf, out);
            buf.pop();
        }
        if let Some((y, rr)) = r.split_first() {
            buf.push(y.clone());
            go(l, rr, buf, out);
            buf.pop();
        }
        if let (Some((x, lr)), Some((y, rr))) = (l.split_first(), r.split_first()) {
            let mut z = x.clone();
            z.extend_from_slice(y);
            buf.push(z);
            go(lr, rr, buf, out);
            buf.pop();
        }
    }
    go(&left, &right, &mut buf, &mut out);
    out.sort();
    out
}

/// `[B]_M = beta^k [rep]_M` with `rep` a big multipermutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    pub rep: SetComposition,
    pub beta_power: u32,
}

/// Remove `i + 1` from its block (which also holds `i`) and standardize.
fn merge_step(b: &SetComposition, i: u32) -> SetComposition {
    let blocks: Vec<Vec<u32>> = b.0.iter().map(|blk| blk.iter().copied().filter(|&x| x != i + 1).collect()).collect();
    SetComposition::standardized(&blocks)
}

/// Positions `i` with `i, i + 1` in one block.
fn mergeable(b: &SetComposition) -> Vec<u32> {
    let bo = b.block_of();
    (1..bo.len()).filter(|&i| bo[i] == bo[i - 1]).map(|i| i as u32).collect()
}

/// The unique `<=_M`-minimal element below `B`, by collapsing the smallest
/// eligible pair each time.
pub fn normal_form(b: &SetComposition) -> NormalForm {
    let mut cur = b.clone();
    let mut k = 0;
    while let Some(&i) = mergeable(&cur).first() {
        cur = merge_step(&cur, i);
        k += 1;
    }
    NormalForm { rep: cur, beta_power: k }
}

/// Minimal elements reached by every possible reduction order.
pub fn normal_forms_all_orders(b: &SetComposition) -> BTreeSet<NormalForm> {
    let mut out = BTreeSet::new();
    let mut stack = vec![(b.clone(), 0u32)];
    let mut seen = BTreeSet::new();
    while let Some((cur, k)) = stack.pop() {
        if !seen.insert((cur.clone(), k)) {
            continue;
        }
        let m = mergeable(&cur);
        for &i in &m {
            stack.push((merge_step(&cur, i), k + 1));
        }
        if m.is_empty() {
            out.insert(NormalForm { rep: cur, beta_power: k });
        }
    }
    out
}
