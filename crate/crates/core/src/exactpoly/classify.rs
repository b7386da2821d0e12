use super::betapoly::BetaPoly;
use super::monomial::Monomial;
use super::poly::TruncPoly;
use super::unipoly::UniPoly;
use crate::error::{KhopfError, Result};

/// Homogeneity of a polynomial under a grading of `beta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(i64),
    Mixed,
}

/// Result of [`classify`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub symmetric: bool,
    pub quasisymmetric: bool,
    /// Grading with `deg beta = -1` (x-degree minus beta-degree).
    pub beta_homogeneous: Homogeneity,
    /// Grading with `deg beta = +1` (x-degree plus beta-degree).
    pub total_homogeneous: Homogeneity,
    pub symmetric_witness: Option<(Monomial, Monomial)>,
    pub quasisymmetric_witness: Option<(Monomial, Monomial)>,
}

pub fn classify(f: &TruncPoly) -> Classification {
    let n = f.ctx().n;
    let sym_w = symmetric_witness(f, n);
    let qsym_w = quasisymmetric_witness(f, n);
    Classification {
        symmetric: sym_w.is_none(),
        quasisymmetric: qsym_w.is_none(),
        beta_homogeneous: homogeneity(f, -1),
        total_homogeneous: homogeneity(f, 1),
        symmetric_witness: sym_w,
        quasisymmetric_witness: qsym_w,
    }
}

fn homogeneity(f: &TruncPoly, sign: i64) -> Homogeneity {
    let mut deg = None;
    for (m, _) in f.terms() {
        let d = m.xdeg() as i64 + sign * m.beta() as i64;
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return Homogeneity::Mixed,
            _ => {}
        }
    }
    deg.map_or(Homogeneity::Zero, Homogeneity::Degree)
}

fn symmetric_witness(f: &TruncPoly, n: usize) -> Option<(Monomial, Monomial)> {
    for (m, c) in f.terms() {
        for i in 0..n.saturating_sub(1) {
            let s = m.swap(i, i + 1);
            if &f.coefficient(&s) != c {
                return Some((*m, s));
            }
        }
    }
    None
}

fn quasisymmetric_witness(f: &TruncPoly, n: usize) -> Option<(Monomial, Monomial)> {
    for (m, c) in f.terms() {
        let p = m.packed();
        if &f.coefficient(&p) != c {
            return Some((*m, p));
        }
        if m.is_packed() {
            // Every placement of the composition must carry the same coefficient.
            let comp = m.composition();
            let mut found = None;
            for_each_placement(n, comp.len(), &mut |pos| {
                if found.is_some() {
                    return;
                }
                let mut q = Monomial::one().with_beta(m.beta());
                for (k, &i) in pos.iter().enumerate() {
                    q = q.with_exp(i, comp[k]);
                }
                if &f.coefficient(&q) != c {
                    found = Some((*m, q));
                }
            });
            if found.is_some() {
                return found;
            }
        }
    }
    None
}

/// Visit all increasing sequences of `k` positions in `0..n`.
pub(crate) fn for_each_placement(n: usize, k: usize, visit: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        let need = k - cur.len();
        for i in start..=n.saturating_sub(need) {
            if i >= n {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, visit);
            cur.pop();
        }
    }
    if k > n {
        return;
    }
    rec(0, n, k, &mut Vec::new(), visit);
}

pub(crate) fn require_quasisymmetric(f: &TruncPoly) -> Result<()> {
    match quasisymmetric_witness(f, f.ctx().n) {
        None => Ok(()),
        Some((a, b)) => Err(KhopfError::NotInvariant {
            kind: "quasisymmetric",
            left: a.to_text(f.ctx().n),
            right: b.to_text(f.ctx().n),
        }),
    }
}

pub(crate) fn require_symmetric(f: &TruncPoly) -> Result<()> {
    match symmetric_witness(f, f.ctx().n) {
        None => Ok(()),
        Some((a, b)) => Err(KhopfError::NotInvariant {
            kind: "symmetric",
            left: a.to_text(f.ctx().n),
            right: b.to_text(f.ctx().n),
        }),
    }
}

/// Specialization targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    /// `x_1 = t`, all other variables zero.
    ZetaQ,
    /// Keep the first `k` variables, set the rest to zero.
    FirstVars(usize),
}

/// Result of [`specialize`].
#[derive(Clone, Debug, PartialEq)]
pub enum Specialized {
    Uni(UniPoly),
    Poly(TruncPoly),
}

pub fn specialize(f: &TruncPoly, target: Specialization) -> Result<Specialized> {
    match target {
        Specialization::ZetaQ => {
            let mut u = UniPoly::zero();
            for (m, c) in f.terms() {
                if m.support_len() <= 1 {
                    u.add_term(m.exp(0), &BetaPoly::monomial(c.clone(), m.beta() as usize));
                }
            }
            Ok(Specialized::Uni(u))
        }
        Specialization::FirstVars(k) => {
            let ctx = f.ctx();
            if k > ctx.n {
                return Err(KhopfError::InvalidContext(format!("cannot keep {k} of {} variables", ctx.n)));
            }
            let nctx = super::TruncationContext::with_beta_cap(k, ctx.d, ctx.b)?;
            let kept = f.filter(|m| m.support_len() <= k);
            Ok(Specialized::Poly(kept.recontext(nctx)))
        }
    }
}

/// `zeta_Q(f)`: the specialization `x_1 = t`, other variables zero.
pub fn zeta_q(f: &TruncPoly) -> UniPoly {
    match specialize(f, Specialization::ZetaQ) {
        Ok(Specialized::Uni(u)) => u,
        _ => unreachable!(),
    }
}
