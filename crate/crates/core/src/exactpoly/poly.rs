use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::betapoly::BetaPoly;
use super::coeff::{binomial, coeff_to_string, int, parse_coeff, Coeff};
use super::context::TruncationContext;
use super::monomial::Monomial;
use crate::error::{KhopfError, Result};

/// Truncated polynomial in `x_1..x_N` and `beta` with exact rational coefficients.
///
/// Terms of x-degree above `D` or beta-degree above `B` are discarded; zero
/// coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncPoly {
    ctx: TruncationContext,
    terms: BTreeMap<Monomial, Coeff>,
}

impl TruncPoly {
    pub fn zero(ctx: TruncationContext) -> Self {
        TruncPoly { ctx, terms: BTreeMap::new() }
    }

    pub fn one(ctx: TruncationContext) -> Self {
        Self::constant(ctx, Coeff::one())
    }

    pub fn constant(ctx: TruncationContext, c: Coeff) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(Monomial::one(), c);
        p
    }

    /// The variable `x_{i+1}` (zero-based index).
    pub fn var(ctx: TruncationContext, i: usize) -> Self {
        let mut p = Self::zero(ctx);
        if i < ctx.n {
            p.add_term(Monomial::var(i), Coeff::one());
        }
        p
    }

    pub fn beta(ctx: TruncationContext) -> Self {
        let mut p = Self::zero(ctx);
        p.add_term(Monomial::one().with_beta(1), Coeff::one());
        p
    }

    /// Build from terms, dropping anything outside the truncation.
    pub fn from_terms(ctx: TruncationContext, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = Self::zero(ctx);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Build from integer-weighted terms.
    pub fn from_int_terms(ctx: TruncationContext, terms: HashMap<Monomial, i64>) -> Self {
        let mut v: Vec<(Monomial, i64)> = terms.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort_by_key(|a| a.0);
        let mut p = Self::zero(ctx);
        for (m, c) in v {
            if p.admits(&m) {
                p.terms.insert(m, int(c));
            }
        }
        p
    }

    pub fn ctx(&self) -> TruncationContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    /// Whether a monomial survives truncation.
    pub fn admits(&self, m: &Monomial) -> bool {
        m.xdeg() as usize <= self.ctx.d && m.beta() as usize <= self.ctx.b && m.support_len() <= self.ctx.n
    }

    pub fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() || !self.admits(&m) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Coefficient of `x^exps` as a polynomial in beta.
    pub fn beta_coefficient(&self, exps: &[u32]) -> BetaPoly {
        let base = Monomial::new(exps, 0);
        let v: Vec<Coeff> = (0..=self.ctx.b).map(|k| self.coefficient(&base.with_beta(k as u32))).collect();
        BetaPoly::from_coeffs(v)
    }

    /// Reinterpret in another context (dropping terms outside it).
    pub fn recontext(&self, ctx: TruncationContext) -> Self {
        Self::from_terms(ctx, self.terms.iter().map(|(m, c)| (*m, c.clone())))
    }

    /// Move into `ctx`, renaming `x_i` to `x_{i+offset}`.
    pub fn embed(&self, ctx: TruncationContext, offset: usize) -> Result<Self> {
        if offset + self.ctx.n > ctx.n {
            return Err(KhopfError::InvalidContext(format!(
                "cannot place {} variables at offset {offset} inside {ctx}",
                self.ctx.n
            )));
        }
        let mut r = Self::zero(ctx);
        for (m, c) in &self.terms {
            let mut e = Monomial::one().with_beta(m.beta());
            for i in 0..self.ctx.n {
                e = e.with_exp(i + offset, m.exp(i));
            }
            if r.admits(&e) {
                r.add_term(e, c.clone());
            }
        }
        Ok(r)
    }

    /// Keep only terms satisfying a predicate.
    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        TruncPoly {
            ctx: self.ctx,
            terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, c.clone());
        }
        Ok(r)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(*m, -c);
        }
        Ok(r)
    }

    /// Truncated product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(self.mul_unchecked(other, &|_| true))
    }

    /// Truncated product keeping only monomials accepted by `keep`.
    pub fn mul_filtered(&self, other: &Self, keep: &dyn Fn(&Monomial) -> bool) -> Result<Self> {
        self.ctx.ensure_same(&other.ctx)?;
        Ok(self.mul_unchecked(other, keep))
    }

    fn mul_unchecked(&self, other: &Self, keep: &dyn Fn(&Monomial) -> bool) -> Self {
        let d = self.ctx.d as u32;
        let b = self.ctx.b as u32;
        let rhs: Vec<(Monomial, u32, &Coeff)> = other.terms.iter().map(|(m, c)| (*m, m.xdeg(), c)).collect();
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.xdeg();
            for (mb, db, cb) in &rhs {
                if da + db > d {
                    break;
                }
                if ma.beta() + mb.beta() > b {
                    continue;
                }
                let m = ma.mul(mb);
                if !keep(&m) {
                    continue;
                }
                let prod = ca * *cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        TruncPoly { ctx: self.ctx, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero(self.ctx);
        }
        TruncPoly { ctx: self.ctx, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    /// Multiply by a polynomial in beta.
    pub fn scale_beta(&self, p: &BetaPoly) -> Self {
        let mut r = Self::zero(self.ctx);
        for (k, c) in p.terms() {
            if k > self.ctx.b {
                break;
            }
            for (m, x) in &self.terms {
                if (m.beta() as usize) + k <= self.ctx.b {
                    r.add_term(m.with_beta(m.beta() + k as u32), x * c);
                }
            }
        }
        r
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one(self.ctx);
        for _ in 0..e {
            r = r.mul_unchecked(self, &|_| true);
        }
        r
    }

    /// Multiplicative inverse of a series with constant term 1 (within truncation).
    pub fn inverse_unit(&self) -> Result<Self> {
        let c0 = self.coefficient(&Monomial::one());
        if !c0.is_one() {
            return Err(KhopfError::InvalidIndex("series must have constant term 1".into()));
        }
        let mut t = self.clone();
        t.add_term(Monomial::one(), -Coeff::one());
        let neg_t = -&t;
        // 1/(1+t) = sum (-t)^k; terms of (-t)^k have total degree >= k in x or beta.
        let steps = self.ctx.d + self.ctx.b + 1;
        let mut r = Self::one(self.ctx);
        let mut pw = Self::one(self.ctx);
        for _ in 0..steps {
            pw = pw.mul_unchecked(&neg_t, &|_| true);
            if pw.is_zero() {
                break;
            }
            r = &r + &pw;
        }
        Ok(r)
    }

    /// Substitute `beta -> -beta`.
    pub fn negate_beta(&self) -> Self {
        TruncPoly {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, if m.beta() % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Substitute `x_i -> -x_i / (1 + beta x_i)` for every `i` in `vars` (zero-based).
    pub fn bar_substitute_vars(&self, vars: &[usize]) -> Self {
        let ctx = self.ctx;
        let mut r = Self::zero(ctx);
        for (m, c) in &self.terms {
            // Expand each substituted variable power separately and multiply out.
            let mut partial: Vec<(Monomial, Coeff)> = vec![(m.clone_without(vars), c.clone())];
            for &i in vars {
                let k = m.exp(i);
                if k == 0 {
                    continue;
                }
                // (-x)^k (1+bx)^(-k) = sum_j (-1)^(k+j) C(k+j-1, j) x^(k+j) b^j
                let mut next = Vec::new();
                for (pm, pc) in &partial {
                    for j in 0u32.. {
                        let xd = pm.xdeg() + k + j;
                        let bd = pm.beta() + j;
                        if xd as usize > ctx.d || bd as usize > ctx.b {
                            break;
                        }
                        let sign = if (k + j) % 2 == 0 { 1 } else { -1 };
                        let w = int(sign * binomial((k + j - 1) as u64, j as u64));
                        let nm = pm.with_exp(i, k + j).with_beta(bd);
                        next.push((nm, pc * &w));
                    }
                }
                partial = next;
            }
            for (pm, pc) in partial {
                r.add_term(pm, pc);
            }
        }
        r
    }

    /// Substitute `x_i -> -x_i / (1 + beta x_i)` for all variables.
    pub fn bar_substitute(&self) -> Self {
        let vars: Vec<usize> = (0..self.ctx.n).collect();
        self.bar_substitute_vars(&vars)
    }

    /// Coefficients of packed monomials `x_1^{a_1} ... x_k^{a_k}`, keyed by composition.
    pub fn packed_coords(&self) -> BTreeMap<Vec<u32>, BetaPoly> {
        let mut acc: BTreeMap<Vec<u32>, Vec<Coeff>> = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.is_packed() {
                let v = acc.entry(m.composition()).or_default();
                let k = m.beta() as usize;
                if v.len() <= k {
                    v.resize(k + 1, Coeff::zero());
                }
                v[k] += c;
            }
        }
        acc.into_iter()
            .map(|(k, v)| (k, BetaPoly::from_coeffs(v)))
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }

    /// Coefficients of partition-shaped monomials, keyed by partition.
    pub fn partition_coords(&self) -> BTreeMap<Vec<u32>, BetaPoly> {
        let mut acc: BTreeMap<Vec<u32>, Vec<Coeff>> = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.is_partition() {
                let v = acc.entry(m.composition()).or_default();
                let k = m.beta() as usize;
                if v.len() <= k {
                    v.resize(k + 1, Coeff::zero());
                }
                v[k] += c;
            }
        }
        acc.into_iter()
            .map(|(k, v)| (k, BetaPoly::from_coeffs(v)))
            .filter(|(_, p)| !p.is_zero())
            .collect()
    }

    /// Evaluate `beta` at a rational value (result has beta-degree 0).
    pub fn eval_beta(&self, v: &Coeff) -> Self {
        let mut r = Self::zero(self.ctx);
        for (m, c) in &self.terms {
            let w = num_traits::pow(v.clone(), m.beta() as usize);
            r.add_term(m.with_beta(0), c * &w);
        }
        r
    }

    pub fn max_xdeg(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.xdeg()).max()
    }

    pub fn min_xdeg(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.xdeg()).min()
    }

    /// Human-readable form, e.g. `2*x1 + b*x1^2`.
    pub fn to_text(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let a = c.abs();
            let mono = m.to_text(self.ctx.n);
            let body = if mono == "1" {
                coeff_to_string(&a)
            } else if a.is_one() {
                mono
            } else {
                format!("{}*{}", coeff_to_string(&a), mono)
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }

    pub fn to_json_value(&self) -> PolyJson {
        PolyJson {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson { x: m.exps(self.ctx.n), b: m.beta(), c: coeff_to_string(c) })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let v: PolyJson = serde_json::from_str(s)?;
        Self::from_json_value(&v)
    }

    pub fn from_json_value(v: &PolyJson) -> Result<Self> {
        let ctx = TruncationContext::with_beta_cap(v.ctx.n, v.ctx.d, v.ctx.b)?;
        let mut p = Self::zero(ctx);
        for t in &v.terms {
            if t.x.len() != ctx.n {
                return Err(KhopfError::Parse(format!(
                    "exponent vector of length {} in a context with N={}",
                    t.x.len(),
                    ctx.n
                )));
            }
            if t.x.iter().any(|&e| e > 255) || t.b > 255 {
                return Err(KhopfError::Parse("exponent out of range".into()));
            }
            let m = Monomial::new(&t.x, t.b);
            if !p.admits(&m) {
                return Err(KhopfError::Parse(format!("term {} lies outside the truncation", m.to_text(ctx.n))));
            }
            p.add_term(m, parse_coeff(&t.c)?);
        }
        Ok(p)
    }
}

impl Monomial {
    fn clone_without(&self, vars: &[usize]) -> Monomial {
        let mut m = *self;
        for &i in vars {
            m = m.with_exp(i, 0);
        }
        m
    }
}

/// Serialized form of a [`TruncPoly`].
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyJson {
    pub ctx: TruncationContext,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub x: Vec<u32>,
    pub b: u32,
    pub c: String,
}

impl fmt::Display for TruncPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

// Operator forms panic on context mismatch; use the `try_` methods to handle it.

impl Add<&TruncPoly> for &TruncPoly {
    type Output = TruncPoly;
    fn add(self, rhs: &TruncPoly) -> TruncPoly {
        self.try_add(rhs).expect("context mismatch in polynomial addition")
    }
}

impl Sub<&TruncPoly> for &TruncPoly {
    type Output = TruncPoly;
    fn sub(self, rhs: &TruncPoly) -> TruncPoly {
        self.try_sub(rhs).expect("context mismatch in polynomial subtraction")
    }
}

impl Mul<&TruncPoly> for &TruncPoly {
    type Output = TruncPoly;
    fn mul(self, rhs: &TruncPoly) -> TruncPoly {
        self.try_mul(rhs).expect("context mismatch in polynomial multiplication")
    }
}

impl Neg for &TruncPoly {
    type Output = TruncPoly;
    fn neg(self) -> TruncPoly {
        TruncPoly { ctx: self.ctx, terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}
