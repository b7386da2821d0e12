use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{KhopfError, Result};
use crate::shapes::{Composition, PeakComposition};

use super::setcomp::SetComposition;

/// A word `w` with `st(w) = w`: its letters are exactly `1..=max(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PackedWord(Vec<u32>);

impl PackedWord {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        if standardize(&letters) != letters {
            return Err(KhopfError::InvalidIndex(format!("{} is not a packed word", word_text(&letters))));
        }
        Ok(PackedWord(letters))
    }

    pub(crate) fn new_unchecked(letters: Vec<u32>) -> Self {
        debug_assert_eq!(standardize(&letters), letters);
        PackedWord(letters)
    }

    pub fn empty() -> Self {
        PackedWord(Vec::new())
    }

    /// `st(w)` for an arbitrary word.
    pub fn standardized(letters: &[u32]) -> Self {
        PackedWord(standardize(letters))
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// `w ↑ k`.
    pub fn shifted(&self, k: u32) -> Vec<u32> {
        self.0.iter().map(|x| x + k).collect()
    }

    /// The `<=_m`-minimal word below `w`: adjacent repeats removed.
    pub fn collapse(&self) -> Self {
        PackedWord(collapse(&self.0))
    }

    /// No two adjacent letters are equal.
    pub fn is_small_multiperm(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1])
    }

    pub fn descents(&self) -> BTreeSet<u32> {
        descents(&self.0)
    }

    pub fn peaks(&self) -> BTreeSet<u32> {
        peaks(&self.0)
    }

    pub fn alpha_des(&self) -> Composition {
        Composition::from_set(self.len() as u32, &self.descents()).expect("descents lie in [n-1]")
    }

    pub fn alpha_peak(&self) -> PeakComposition {
        let c = Composition::from_set(self.len() as u32, &self.peaks()).expect("peaks lie in [n-1]");
        PeakComposition::try_from(c).expect("peak sets give peak compositions")
    }

    /// `w*`: block `i` lists the positions holding `i`.
    pub fn star(&self) -> SetComposition {
        let mut blocks = vec![Vec::new(); self.max() as usize];
        for (j, &x) in self.0.iter().enumerate() {
            blocks[x as usize - 1].push(j as u32 + 1);
        }
        SetComposition::new_unchecked(blocks)
    }

    /// `w ∩ {lo+1, ..., hi}`, not standardized.
    pub fn restrict(&self, lo: u32, hi: u32) -> Vec<u32> {
        self.0.iter().copied().filter(|&x| lo < x && x <= hi).collect()
    }

    pub fn to_text(&self) -> String {
        word_text(&self.0)
    }
}

impl fmt::Display for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for PackedWord {
    type Err = KhopfError;
    fn from_str(s: &str) -> Result<Self> {
        PackedWord::new(parse_word(s)?)
    }
}

/// Letters written as digits when all are below 10, comma separated
/// otherwise; the empty word is `∅`.
pub fn word_text(w: &[u32]) -> String {
    if w.is_empty() {
        "∅".into()
    } else if w.iter().all(|&x| x < 10) {
        w.iter().map(|x| x.to_string()).collect()
    } else {
        w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Inverse of [`word_text`]; `""` and `∅` are the empty word.
pub fn parse_word(s: &str) -> Result<Vec<u32>> {
    let s = s.trim().trim_start_matches('∅');
    let bad = || KhopfError::Parse(format!("bad word {s:?}"));
    let letters: Vec<u32> = if s.contains(',') {
        s.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
    } else {
        s.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<_>>()?
    };
    if letters.contains(&0) {
        return Err(bad());
    }
    Ok(letters)
}

/// Replace each letter by its rank among the distinct letters.
pub fn standardize(w: &[u32]) -> Vec<u32> {
    let vals: BTreeSet<u32> = w.iter().copied().collect();
    let rank: BTreeMap<u32, u32> = vals.into_iter().zip(1..).collect();
    w.iter().map(|x| rank[x]).collect()
}

pub fn collapse(w: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() != Some(&x) {
            out.push(x);
        }
    }
    out
}

/// `{i : w_i > w_{i+1}}`.
pub fn descents(w: &[u32]) -> BTreeSet<u32> {
    (1..w.len()).filter(|&i| w[i - 1] > w[i]).map(|i| i as u32).collect()
}

/// `{1 < i < n : w_{i-1} < w_i > w_{i+1}}`.
pub fn peaks(w: &[u32]) -> BTreeSet<u32> {
    (2..w.len()).filter(|&i| w[i - 2] < w[i - 1] && w[i - 1] > w[i]).map(|i| i as u32).collect()
}

/// The shuffle product as a multiset of words.
pub fn shuffle(v: &[u32], w: &[u32]) -> BTreeMap<Vec<u32>, u64> {
    let mut out = BTreeMap::new();
    let mut buf = Vec::with_capacity(v.len() + w.len());
    fn go(v: &[u32], w: &[u32], buf: &mut Vec<u32>, out: &mut BTreeMap<Vec<u32>, u64>) {
        if v.is_empty() && w.is_empty() {
            *out.entry(buf.clone()).or_insert(0) += 1;
            return;
        }
        if let Some((&x, rest)) = v.split_first() {
            buf.push(x);
            go(rest, w, buf, out);
            buf.pop();
        }
        if let Some((&x, rest)) = w.split_first() {
            buf.push(x);
            go(v, rest, buf, out);
            buf.pop();
        }
    }
    go(v, w, &mut buf, &mut out);
    out
}

/// Everything the word statistics expose at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordStats {
    pub standardized: PackedWord,
    pub collapsed: Vec<u32>,
    pub descents: BTreeSet<u32>,
    pub peaks: BTreeSet<u32>,
    pub alpha_des: Composition,
    pub alpha_peak: PeakComposition,
}

pub fn word_stats(w: &[u32]) -> WordStats {
    let n = w.len() as u32;
    let des = descents(w);
    let pk = peaks(w);
    WordStats {
        standardized: PackedWord::standardized(w),
        collapsed: collapse(w),
        alpha_des: Composition::from_set(n, &des).expect("descents lie in [n-1]"),
        alpha_peak: PeakComposition::try_from(Composition::from_set(n, &pk).expect("peaks lie in [n-1]"))
            .expect("peak sets give peak compositions"),
        descents: des,
        peaks: pk,
    }
}

/// Small multipermutations with maximum letter `n` and length at most `max_len`.
pub fn small_multiperms(n: u32, max_len: usize) -> Vec<PackedWord> {
    let mut out = Vec::new();
    let mut buf = Vec::new();
    let mut used = vec![0u32; n as usize + 1];
    fn go(n: u32, max_len: usize, buf: &mut Vec<u32>, used: &mut [u32], missing: usize, out: &mut Vec<PackedWord>) {
        if missing == 0 {
            out.push(PackedWord(buf.clone()));
        }
        if buf.len() + missing.max(1) > max_len {
            return;
        }
        for x in 1..=n {
            if buf.last() == Some(&x) {
                continue;
            }
            let fresh = used[x as usize] == 0;
            used[x as usize] += 1;
            buf.push(x);
            go(n, max_len, buf, used, missing - fresh as usize, out);
            buf.pop();
            used[x as usize] -= 1;
        }
    }
    if n == 0 {
        return vec![PackedWord::empty()];
    }
    go(n, max_len, &mut buf, &mut used, n as usize, &mut out);
    out.sort();
    out
}

/// Small multipermutations of length exactly `len`, any maximum.
pub fn small_multiperms_of_length(len: usize) -> Vec<PackedWord> {
    (0..=len as u32).flat_map(|n| small_multiperms(n, len)).filter(|w| w.len() == len).collect()
}

/// All packed words of length `len`: set partitions as restricted growth
/// strings, with block labels permuted.
pub fn packed_words(len: usize) -> Vec<PackedWord> {
    let mut rgs = Vec::new();
    let mut buf = Vec::new();
    fn grow(len: usize, buf: &mut Vec<u32>, max: u32, out: &mut Vec<(Vec<u32>, u32)>) {
        if buf.len() == len {
            out.push((buf.clone(), max));
            return;
        }
        for x in 1..=max + 1 {
            buf.push(x);
            grow(len, buf, max.max(x), out);
            buf.pop();
        }
    }
    grow(len, &mut buf, 0, &mut rgs);
    let mut out = Vec::new();
    for (w, k) in rgs {
        for sigma in permutations(k as usize) {
            out.push(PackedWord(w.iter().map(|&x| sigma[x as usize - 1]).collect()));
        }
    }
    out.sort();
    out
}

/// All permutations of `1..=k` in one-line notation.
fn permutations(k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, k as u32);
            out.push(q);
        }
    }
    out
}
