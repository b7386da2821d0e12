//! Degree-by-degree triangular elimination in monomial coordinates.
//!
//! A (pseudo)basis is described by the coordinates of its elements in the
//! monomial (quasi)symmetric basis. Elements of size `d` have a beta-free
//! component in degree `d`; the remaining components sit in higher degrees
//! (pseudobases, processed upward) or lower degrees (finite families,
//! processed downward).

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{KhopfError, Result};
use crate::exactpoly::{BetaPoly, Coeff, TruncationContext};

/// Coordinates in a monomial basis, keyed by composition or partition parts.
pub(crate) type Coords = BTreeMap<Vec<u32>, BetaPoly>;

pub(crate) fn key_degree(k: &[u32]) -> u32 {
    k.iter().sum()
}

pub(crate) fn key_text(k: &[u32]) -> String {
    if k.is_empty() {
        "()".into()
    } else {
        k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

/// Direction in which sizes are processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Direction {
    Ascending,
    Descending,
}

/// Outcome of an elimination: coefficients, and a failure when part of the target is unexplained.
pub(crate) struct Elimination<I> {
    pub coeffs: BTreeMap<I, BetaPoly>,
    pub failure: Option<KhopfError>,
}

/// Expand `target` in the family whose size-`d` elements are `elements(d)`.
pub(crate) fn eliminate<I: Ord + Clone>(
    family: &str,
    target: &Coords,
    ctx: TruncationContext,
    dir: Direction,
    elements: &dyn Fn(u32) -> Result<Vec<(I, Arc<Coords>)>>,
) -> Result<Elimination<I>> {
    eliminate_upto(family, target, ctx, ctx.d as u32, dir, elements)
}

/// As [`eliminate`], considering only degrees up to `dmax`.
pub(crate) fn eliminate_upto<I: Ord + Clone>(
    family: &str,
    target: &Coords,
    ctx: TruncationContext,
    dmax: u32,
    dir: Direction,
    elements: &dyn Fn(u32) -> Result<Vec<(I, Arc<Coords>)>>,
) -> Result<Elimination<I>> {
    let mut residual: Coords = target.iter().filter(|(_, v)| !v.is_zero()).map(|(k, v)| (k.clone(), v.truncate(ctx.b))).collect();
    residual.retain(|_, v| !v.is_zero());
    let mut coeffs: BTreeMap<I, BetaPoly> = BTreeMap::new();
    let degrees: Vec<u32> = match dir {
        Direction::Ascending => (0..=dmax).collect(),
        Direction::Descending => (0..=dmax).rev().collect(),
    };
    for d in degrees {
        let elems = elements(d)?;
        let res_keys: Vec<Vec<u32>> = residual.keys().filter(|k| key_degree(k) == d).cloned().collect();
        if res_keys.is_empty() {
            continue;
        }
        // Rows: every degree-d key seen in the residual or any element.
        let mut rows: Vec<Vec<u32>> = res_keys.clone();
        for (_, c) in &elems {
            for (k, v) in c.iter() {
                if key_degree(k) == d {
                    if v.degree().unwrap_or(0) > 0 {
                        return Err(KhopfError::InvalidIndex(format!(
                            "family {family} has beta terms in its leading degree at {}",
                            key_text(k)
                        )));
                    }
                    rows.push(k.clone());
                }
            }
        }
        rows.sort();
        rows.dedup();
        let row_of: BTreeMap<&Vec<u32>, usize> = rows.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let ncols = elems.len();
        let mut a = vec![vec![Coeff::zero(); ncols]; rows.len()];
        for (j, (_, c)) in elems.iter().enumerate() {
            for (k, v) in c.iter() {
                if key_degree(k) == d {
                    a[row_of[k]][j] = v.coeff(0);
                }
            }
        }
        let nb = ctx.b + 1;
        let mut rhs = vec![vec![Coeff::zero(); nb]; rows.len()];
        for k in &res_keys {
            let v = &residual[k];
            for (p, c) in v.terms() {
                rhs[row_of[k]][p] = c.clone();
            }
        }
        let sol = match solve(a, rhs) {
            Ok(s) => s,
            Err(SolveError::RankDeficient) => {
                return Err(KhopfError::Inadequate(format!(
                    "family {family} is not independent in degree {d} under {ctx}; more variables needed"
                )))
            }
            Err(SolveError::Inconsistent) => {
                let witness = res_keys.first().map(|k| key_text(k)).unwrap_or_default();
                return Ok(Elimination {
                    coeffs,
                    failure: Some(KhopfError::ExpansionFailed { family: family.to_string(), witness }),
                });
            }
        };
        for (j, (idx, c)) in elems.iter().enumerate() {
            let cj = BetaPoly::from_coeffs(sol[j].clone());
            if cj.is_zero() {
                continue;
            }
            for (k, v) in c.iter() {
                let delta = cj.mul_trunc(v, ctx.b);
                if delta.is_zero() {
                    continue;
                }
                let e = residual.entry(k.clone()).or_default();
                *e -= &delta;
                if e.is_zero() {
                    residual.remove(k);
                }
            }
            *coeffs.entry(idx.clone()).or_default() += &cj;
        }
        debug_assert!(residual.keys().all(|k| key_degree(k) != d));
    }
    coeffs.retain(|_, v| !v.is_zero());
    residual.retain(|k, _| key_degree(k) <= dmax);
    let failure = residual.keys().next().map(|k| KhopfError::ExpansionFailed {
        family: family.to_string(),
        witness: key_text(k),
    });
    Ok(Elimination { coeffs, failure })
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum SolveError {
    RankDeficient,
    Inconsistent,
}

/// Solve `A X = R` exactly; `A` must have full column rank.
pub(crate) fn solve(mut a: Vec<Vec<Coeff>>, mut r: Vec<Vec<Coeff>>) -> std::result::Result<Vec<Vec<Coeff>>, SolveError> {
    let m = a.len();
    let n = a.first().map_or(0, |row| row.len());
    let nr = r.first().map_or(0, |row| row.len());
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(n);
    for col in 0..n {
        let Some(p) = (pivot_row..m).find(|&i| !a[i][col].is_zero()) else {
            return Err(SolveError::RankDeficient);
        };
        a.swap(pivot_row, p);
        r.swap(pivot_row, p);
        let inv = Coeff::one() / &a[pivot_row][col];
        for x in a[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for x in r[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m {
            if i != pivot_row && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..n {
                    let t = &a[pivot_row][j] * &f;
                    a[i][j] -= t;
                }
                for j in 0..nr {
                    let t = &r[pivot_row][j] * &f;
                    r[i][j] -= t;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if r[pivot_row..].iter().any(|row| row.iter().any(|x| !x.is_zero())) {
        return Err(SolveError::Inconsistent);
    }
    Ok((0..n).map(|j| r[pivots[j]].clone()).collect())
}
