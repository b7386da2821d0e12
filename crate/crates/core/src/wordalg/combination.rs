use std::collections::BTreeMap;
use std::fmt;

use crate::exactpoly::BetaPoly;
use crate::qsymbases::format_combination;

/// A finite `Q[beta]`-linear combination of basis labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combination<I: Ord>(BTreeMap<I, BetaPoly>);

impl<I: Ord> Default for Combination<I> {
    fn default() -> Self {
        Combination(BTreeMap::new())
    }
}

impl<I: Ord + Clone> Combination<I> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(i: I, c: BetaPoly) -> Self {
        let mut r = Self::new();
        r.add_term(i, &c);
        r
    }

    pub fn add_term(&mut self, i: I, c: &BetaPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.0.entry(i.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.0.remove(&i);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (i, c) in &other.0 {
            self.add_term(i.clone(), c);
        }
    }

    pub fn scale(&self, c: &BetaPoly) -> Self {
        let mut r = Self::new();
        for (i, x) in &self.0 {
            r.add_term(i.clone(), &(x * c));
        }
        r
    }

    pub fn coeff(&self, i: &I) -> BetaPoly {
        self.0.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&I, &BetaPoly)> {
        self.0.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &I> {
        self.0.keys()
    }

    pub fn as_map(&self) -> &BTreeMap<I, BetaPoly> {
        &self.0
    }

    pub fn into_map(self) -> BTreeMap<I, BetaPoly> {
        self.0
    }

    /// Keep only the labels satisfying `keep`.
    pub fn filter(&self, keep: impl Fn(&I) -> bool) -> Self {
        Combination(self.0.iter().filter(|(i, _)| keep(i)).map(|(i, c)| (i.clone(), c.clone())).collect())
    }

    /// Relabel through `f`, merging labels that collide.
    pub fn map_labels<J: Ord + Clone>(&self, f: impl Fn(&I) -> J) -> Combination<J> {
        let mut r = Combination::new();
        for (i, c) in &self.0 {
            r.add_term(f(i), c);
        }
        r
    }
}

impl<I: Ord + Clone> FromIterator<(I, BetaPoly)> for Combination<I> {
    fn from_iter<T: IntoIterator<Item = (I, BetaPoly)>>(iter: T) -> Self {
        let mut r = Self::new();
        for (i, c) in iter {
            r.add_term(i, &c);
        }
        r
    }
}

impl<I: Ord + Clone + fmt::Display> fmt::Display for Combination<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_combination("", self.0.iter().map(|(i, c)| (i.to_string(), c))))
    }
}

/// A pair of labels, printed `a ⊗ b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tensor<I>(pub I, pub I);

impl<I: fmt::Display> fmt::Display for Tensor<I> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊗ {}", self.0, self.1)
    }
}

/// First label at which two combinations differ.
pub fn first_mismatch<I: Ord + Clone + fmt::Display>(a: &Combination<I>, b: &Combination<I>) -> Option<String> {
    let labels: std::collections::BTreeSet<&I> = a.keys().chain(b.keys()).collect();
    labels
        .into_iter()
        .find(|i| a.coeff(i) != b.coeff(i))
        .map(|i| format!("at [{i}]: {} vs {}", a.coeff(i), b.coeff(i)))
}
