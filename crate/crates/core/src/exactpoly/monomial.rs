use std::cmp::Ordering;
use std::fmt;

/// Maximum number of variables a monomial can carry.
pub const MAX_VARS: usize = 16;

/// A monomial `x^a * beta^k`.
///
/// Ordered by total x-degree, then lexicographically with larger leading
/// exponents first, then by beta exponent.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: [u8; MAX_VARS],
    beta: u8,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], beta: 0 }
    }

    /// Panics if an exponent exceeds 255 or there are too many variables.
    pub fn new(exps: &[u32], beta: u32) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut e = [0u8; MAX_VARS];
        for (slot, &x) in e.iter_mut().zip(exps) {
            *slot = u8::try_from(x).expect("exponent too large");
        }
        Monomial { exps: e, beta: u8::try_from(beta).expect("beta exponent too large") }
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::one();
        m.exps[i] = 1;
        m
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    pub fn exps(&self, n: usize) -> Vec<u32> {
        self.exps[..n].iter().map(|&e| e as u32).collect()
    }

    pub fn raw_exps(&self) -> &[u8; MAX_VARS] {
        &self.exps
    }

    pub fn beta(&self) -> u32 {
        self.beta as u32
    }

    pub fn xdeg(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Index one past the last variable with nonzero exponent.
    pub fn support_len(&self) -> usize {
        self.exps.iter().rposition(|&e| e != 0).map_or(0, |p| p + 1)
    }

    pub fn with_beta(mut self, k: u32) -> Self {
        self.beta = u8::try_from(k).expect("beta exponent too large");
        self
    }

    pub fn with_exp(mut self, i: usize, e: u32) -> Self {
        self.exps[i] = u8::try_from(e).expect("exponent too large");
        self
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut r = *self;
        for i in 0..MAX_VARS {
            r.exps[i] = r.exps[i].checked_add(other.exps[i]).expect("exponent overflow");
        }
        r.beta = r.beta.checked_add(other.beta).expect("beta overflow");
        r
    }

    pub fn swap(&self, i: usize, j: usize) -> Monomial {
        let mut r = *self;
        r.exps.swap(i, j);
        r
    }

    /// Move the nonzero exponents to the front, keeping their order.
    pub fn packed(&self) -> Monomial {
        let mut r = Monomial { exps: [0; MAX_VARS], beta: self.beta };
        let mut k = 0;
        for &e in &self.exps {
            if e != 0 {
                r.exps[k] = e;
                k += 1;
            }
        }
        r
    }

    /// Nonzero exponents in order, as a composition.
    pub fn composition(&self) -> Vec<u32> {
        self.exps.iter().filter(|&&e| e != 0).map(|&e| e as u32).collect()
    }

    /// True when the nonzero exponents form a prefix.
    pub fn is_packed(&self) -> bool {
        let l = self.support_len();
        self.exps[..l].iter().all(|&e| e != 0)
    }

    /// True when exponents are weakly decreasing.
    pub fn is_partition(&self) -> bool {
        self.exps.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn to_text(&self, n: usize) -> String {
        let mut parts = Vec::new();
        for i in 0..n.max(self.support_len()) {
            match self.exps[i] {
                0 => {}
                1 => parts.push(format!("x{}", i + 1)),
                e => parts.push(format!("x{}^{}", i + 1, e)),
            }
        }
        match self.beta {
            0 => {}
            1 => parts.push("b".to_string()),
            k => parts.push(format!("b^{k}")),
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.xdeg()
            .cmp(&other.xdeg())
            .then_with(|| other.exps.cmp(&self.exps))
            .then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text(0))
    }
}
