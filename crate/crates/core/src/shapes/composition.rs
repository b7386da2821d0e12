use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{KhopfError, Result};

/// A finite sequence of positive integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(KhopfError::InvalidIndex(format!("composition parts must be positive: {parts:?}")));
        }
        Ok(Composition(parts))
    }

    /// Panics on a zero part; for literals in tests and examples.
    pub fn from_slice(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("valid composition")
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Partial sums excluding the total: `I(alpha)`.
    pub fn interval_set(&self) -> BTreeSet<u32> {
        let mut s = BTreeSet::new();
        let mut acc = 0;
        for &p in self.0.iter().take(self.0.len().saturating_sub(1)) {
            acc += p;
            s.insert(acc);
        }
        s
    }

    /// The composition of `n` whose interval set is `set`.
    pub fn from_set(n: u32, set: &BTreeSet<u32>) -> Result<Self> {
        if n == 0 {
            if set.is_empty() {
                return Ok(Composition::empty());
            }
            return Err(KhopfError::InvalidIndex("nonempty set for n = 0".into()));
        }
        let mut parts = Vec::new();
        let mut prev = 0;
        for &i in set {
            if i == 0 || i >= n {
                return Err(KhopfError::InvalidIndex(format!("{i} is not in [1, {}]", n - 1)));
            }
            parts.push(i - prev);
            prev = i;
        }
        parts.push(n - prev);
        Ok(Composition(parts))
    }

    /// Every part except the last is at least two.
    pub fn is_peak(&self) -> bool {
        let l = self.0.len();
        self.0.iter().take(l.saturating_sub(1)).all(|&p| p >= 2)
    }

    pub fn reverse(&self) -> Self {
        Composition(self.0.iter().rev().cloned().collect())
    }

    /// `alpha^c`: interval set complemented in `[n-1]`.
    pub fn complement(&self) -> Self {
        let n = self.size();
        if n == 0 {
            return Composition::empty();
        }
        let i = self.interval_set();
        let c: BTreeSet<u32> = (1..n).filter(|x| !i.contains(x)).collect();
        Composition::from_set(n, &c).expect("complement is valid")
    }

    /// `alpha^t = (alpha^c)^r`.
    pub fn transpose(&self) -> Self {
        self.complement().reverse()
    }

    /// `(alpha_k + 1, alpha_{k-1}, ..., alpha_2, alpha_1 - 1)` for `k > 1`; identity otherwise.
    pub fn flat(&self) -> Result<Self> {
        let k = self.0.len();
        if k <= 1 {
            return Ok(self.clone());
        }
        let mut v: Vec<u32> = self.0.iter().rev().cloned().collect();
        v[0] += 1;
        v[k - 1] -= 1;
        Composition::new(v).map_err(|_| KhopfError::InvalidIndex(format!("flat of {self} has a zero part")))
    }

    /// Replace each even part `a` by `1, a-1`.
    pub fn odd(&self) -> Self {
        let mut v = Vec::new();
        for &p in &self.0 {
            if p % 2 == 0 {
                v.push(1);
                v.push(p - 1);
            } else {
                v.push(p);
            }
        }
        Composition(v)
    }

    /// The peak composition with `I = { i in I(alpha) : 0 < i-1 not in I(alpha) }`.
    pub fn lambda_peak(&self) -> PeakComposition {
        let n = self.size();
        let i = self.interval_set();
        let s: BTreeSet<u32> = i.iter().cloned().filter(|&x| x > 1 && !i.contains(&(x - 1))).collect();
        PeakComposition(Composition::from_set(n, &s).expect("subset of I(alpha)"))
    }

    pub fn to_text(&self) -> String {
        if self.0.is_empty() {
            "()".into()
        } else {
            self.0.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        }
    }
}

/// Parse `"3,2"`, `"(3,2)"`, `"[3,2]"`; `""` and `"()"` are empty.
pub(crate) fn parse_parts(s: &str) -> Result<Vec<u32>> {
    let t = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']).trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| KhopfError::Parse(format!("bad index {s:?}"))))
        .collect()
}

impl FromStr for Composition {
    type Err = KhopfError;
    fn from_str(s: &str) -> Result<Self> {
        Composition::new(parse_parts(s)?)
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded order: by size, then lexicographically with larger parts first.
impl Ord for Composition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.size().cmp(&other.size()).then_with(|| other.0.cmp(&self.0))
    }
}

/// A composition whose parts other than the last are all at least two.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PeakComposition(Composition);

impl PeakComposition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        let c = Composition::new(parts)?;
        Self::try_from(c)
    }

    pub fn from_slice(parts: &[u32]) -> Self {
        Self::new(parts.to_vec()).expect("valid peak composition")
    }

    pub fn empty() -> Self {
        PeakComposition(Composition::empty())
    }

    pub fn as_composition(&self) -> &Composition {
        &self.0
    }

    pub fn into_composition(self) -> Composition {
        self.0
    }

    /// Involution on peak compositions.
    pub fn flat(&self) -> PeakComposition {
        PeakComposition(self.0.flat().expect("flat of a peak composition is defined"))
    }
}

impl TryFrom<Composition> for PeakComposition {
    type Error = KhopfError;
    fn try_from(c: Composition) -> Result<Self> {
        if c.is_peak() {
            Ok(PeakComposition(c))
        } else {
            Err(KhopfError::InvalidIndex(format!("{c} is not a peak composition")))
        }
    }
}

impl Deref for PeakComposition {
    type Target = Composition;
    fn deref(&self) -> &Composition {
        &self.0
    }
}

impl FromStr for PeakComposition {
    type Err = KhopfError;
    fn from_str(s: &str) -> Result<Self> {
        PeakComposition::new(parse_parts(s)?)
    }
}

impl fmt::Display for PeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

macro_rules! serde_as_text {
    ($t:ty) => {
        impl serde::Serialize for $t {
            fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                s.serialize_str(&self.to_text())
            }
        }
        impl<'de> serde::Deserialize<'de> for $t {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let s = <String as serde::Deserialize>::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}
pub(crate) use serde_as_text;

serde_as_text!(Composition);
serde_as_text!(PeakComposition);
