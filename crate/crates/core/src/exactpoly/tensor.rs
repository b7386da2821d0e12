use std::collections::BTreeMap;

use num_traits::One;

use super::betapoly::BetaPoly;
use super::classify::{for_each_placement, require_quasisymmetric, require_symmetric};
use super::coeff::Coeff;
use super::context::TruncationContext;
use super::monomial::Monomial;
use super::poly::TruncPoly;
use crate::error::{KhopfError, Result};

/// Which coproduct [`tensor_split`] realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SplitMode {
    /// `f(x, y)` for symmetric `f`, in monomial symmetric coordinates.
    Symmetric,
    /// Deconcatenation of monomial quasisymmetric functions, `x` before `y`.
    Ordered,
}

/// `sum_{(a, b)} c_{a,b} B_a (x) B_b`, with `B` the monomial (quasi)symmetric basis.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorExpansion {
    ctx: TruncationContext,
    mode: SplitMode,
    terms: BTreeMap<(Vec<u32>, Vec<u32>), BetaPoly>,
}

/// Split `f` into a sum of tensors.
///
/// Requires `N >= D` so that every coordinate of degree at most `D` is visible.
pub fn tensor_split(f: &TruncPoly, mode: SplitMode) -> Result<TensorExpansion> {
    let ctx = f.ctx();
    if ctx.n < ctx.d {
        return Err(KhopfError::Inadequate(format!(
            "tensor splitting needs N >= D, have {ctx}"
        )));
    }
    let mut terms: BTreeMap<(Vec<u32>, Vec<u32>), BetaPoly> = BTreeMap::new();
    match mode {
        SplitMode::Ordered => {
            require_quasisymmetric(f)?;
            for (alpha, c) in f.packed_coords() {
                for i in 0..=alpha.len() {
                    let key = (alpha[..i].to_vec(), alpha[i..].to_vec());
                    *terms.entry(key).or_default() += &c;
                }
            }
        }
        SplitMode::Symmetric => {
            require_symmetric(f)?;
            for (lambda, c) in f.partition_coords() {
                for (mu, nu) in multiset_splits(&lambda) {
                    *terms.entry((mu, nu)).or_default() += &c;
                }
            }
        }
    }
    terms.retain(|_, v| !v.is_zero());
    Ok(TensorExpansion { ctx, mode, terms })
}

/// All ways to split a partition (as a multiset of parts) into two sub-multisets.
pub(crate) fn multiset_splits(lambda: &[u32]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &p in lambda {
        match groups.last_mut() {
            Some((q, m)) if *q == p => *m += 1,
            _ => groups.push((p, 1)),
        }
    }
    let mut out = vec![(Vec::new(), Vec::new())];
    for (p, m) in groups {
        let mut next = Vec::new();
        for (a, b) in &out {
            for k in 0..=m {
                let mut a2: Vec<u32> = a.clone();
                let mut b2: Vec<u32> = b.clone();
                a2.extend(std::iter::repeat_n(p, k));
                b2.extend(std::iter::repeat_n(p, m - k));
                next.push((a2, b2));
            }
        }
        out = next;
    }
    out
}

impl TensorExpansion {
    pub fn ctx(&self) -> TruncationContext {
        self.ctx
    }

    pub fn mode(&self) -> SplitMode {
        self.mode
    }

    /// Coefficients keyed by `(left, right)` basis indices.
    pub fn coords(&self) -> &BTreeMap<(Vec<u32>, Vec<u32>), BetaPoly> {
        &self.terms
    }

    pub fn coefficient(&self, left: &[u32], right: &[u32]) -> BetaPoly {
        self.terms.get(&(left.to_vec(), right.to_vec())).cloned().unwrap_or_default()
    }

    fn basis_poly(&self, idx: &[u32], ctx: TruncationContext, offset: usize, nvars: usize) -> TruncPoly {
        match self.mode {
            SplitMode::Ordered => quasisym_monomial_in(idx, ctx, offset, nvars),
            SplitMode::Symmetric => sym_monomial_in(idx, ctx, offset, nvars),
        }
    }

    /// Pairs `(left, right, weight)`: right factors are basis elements, left
    /// factors collect all terms sharing that right factor.
    pub fn pairs(&self) -> Vec<(TruncPoly, TruncPoly, Coeff)> {
        let ctx = self.ctx;
        let mut grouped: BTreeMap<&Vec<u32>, TruncPoly> = BTreeMap::new();
        for ((a, b), c) in &self.terms {
            let left = self.basis_poly(a, ctx, 0, ctx.n).scale_beta(c);
            let e = grouped.entry(b).or_insert_with(|| TruncPoly::zero(ctx));
            *e = &*e + &left;
        }
        grouped
            .into_iter()
            .filter(|(_, l)| !l.is_zero())
            .map(|(b, l)| (l, self.basis_poly(b, ctx, 0, ctx.n), Coeff::one()))
            .collect()
    }

    /// Apply the counit to the right factor (recovers `f`).
    pub fn counit_right(&self) -> TruncPoly {
        let mut r = TruncPoly::zero(self.ctx);
        for ((a, b), c) in &self.terms {
            if b.is_empty() {
                r = &r + &self.basis_poly(a, self.ctx, 0, self.ctx.n).scale_beta(c);
            }
        }
        r
    }

    /// Apply the counit to the left factor (recovers `f`).
    pub fn counit_left(&self) -> TruncPoly {
        let mut r = TruncPoly::zero(self.ctx);
        for ((a, b), c) in &self.terms {
            if a.is_empty() {
                r = &r + &self.basis_poly(b, self.ctx, 0, self.ctx.n).scale_beta(c);
            }
        }
        r
    }

    /// Evaluate as a polynomial in `2N` variables, left factor in the first `N`.
    pub fn evaluate(&self) -> Result<TruncPoly> {
        let n = self.ctx.n;
        let big = TruncationContext::with_beta_cap(2 * n, 2 * self.ctx.d, self.ctx.b)?;
        let d = self.ctx.d as u32;
        let keep = move |m: &Monomial| {
            let l: u32 = (0..n).map(|i| m.exp(i)).sum();
            let r: u32 = (n..2 * n).map(|i| m.exp(i)).sum();
            l <= d && r <= d
        };
        let mut out = TruncPoly::zero(big);
        for ((a, b), c) in &self.terms {
            let l = self.basis_poly(a, big, 0, n).scale_beta(c);
            let r = self.basis_poly(b, big, n, n);
            out = &out + &l.mul_filtered(&r, &keep)?;
        }
        Ok(out)
    }
}

/// `M_alpha` in the variables `x_{offset+1} .. x_{offset+nvars}`.
pub(crate) fn quasisym_monomial_in(alpha: &[u32], ctx: TruncationContext, offset: usize, nvars: usize) -> TruncPoly {
    let mut p = TruncPoly::zero(ctx);
    for_each_placement(nvars, alpha.len(), &mut |pos| {
        let mut m = Monomial::one();
        for (k, &i) in pos.iter().enumerate() {
            m = m.with_exp(offset + i, alpha[k]);
        }
        p.add_term(m, Coeff::one());
    });
    p
}

/// `m_lambda` in the variables `x_{offset+1} .. x_{offset+nvars}`.
pub(crate) fn sym_monomial_in(lambda: &[u32], ctx: TruncationContext, offset: usize, nvars: usize) -> TruncPoly {
    let mut p = TruncPoly::zero(ctx);
    if lambda.len() > nvars {
        return p;
    }
    let mut exps: Vec<u32> = lambda.to_vec();
    exps.resize(nvars, 0);
    exps.sort_unstable();
    // Iterate over distinct permutations in lexicographic order.
    loop {
        let mut m = Monomial::one();
        for (i, &e) in exps.iter().enumerate() {
            m = m.with_exp(offset + i, e);
        }
        p.add_term(m, Coeff::one());
        if !next_permutation(&mut exps) {
            break;
        }
    }
    p
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Monomial quasisymmetric function `M_alpha`.
pub fn monomial_quasisymmetric(alpha: &[u32], ctx: TruncationContext) -> TruncPoly {
    quasisym_monomial_in(alpha, ctx, 0, ctx.n)
}

/// Monomial symmetric function `m_lambda`.
pub fn monomial_symmetric(lambda: &[u32], ctx: TruncationContext) -> TruncPoly {
    sym_monomial_in(lambda, ctx, 0, ctx.n)
}
