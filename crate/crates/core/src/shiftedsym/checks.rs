//! Verification of identities among the symmetric families, and positivity scans.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{KhopfError, Result};
use crate::exactpoly::{coeff_to_string, int, BetaPoly, Monomial, TruncPoly, TruncationContext};
use crate::memo::Memo;
use crate::qsymbases::{qsym_basis, theta, QBasisTag};
use crate::shapes::{
    partitions_upto, peak_compositions, strict_partitions_upto, Partition, PeakComposition, StrictPartition,
};

use super::coeffs::{expansion_table, structure_coeffs, CoeffKind, CoeffTable};
use super::expand::{expand_in_family, hall_form};
use super::family::{slashslash, sym_basis_arc, SlashFamily, SymFamily};

/// Outcome of checking a family of identity instances.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub name: String,
    /// Number of instances checked.
    pub checked: usize,
    /// One line per instance, in a deterministic order.
    pub details: Vec<String>,
    /// Failing instances with a witness.
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn new(name: impl Into<String>) -> Self {
        IdentityReport { name: name.into(), ..Default::default() }
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, label: String, failure: Option<String>) {
        self.checked += 1;
        match failure {
            None => self.details.push(format!("{label}: ok")),
            Some(w) => {
                self.details.push(format!("{label}: FAIL {w}"));
                self.failures.push(format!("{label}: {w}"));
            }
        }
    }

    /// Append the instances of `other`.
    pub fn absorb(&mut self, other: IdentityReport) {
        self.checked += other.checked;
        self.details.extend(other.details);
        self.failures.extend(other.failures);
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} ({} instances, {} failures)",
            self.name,
            if self.ok() { "ok" } else { "FAIL" },
            self.checked,
            self.failures.len()
        )
    }
}

/// First monomial at which `a` and `b` differ.
pub fn first_difference(a: &TruncPoly, b: &TruncPoly) -> Option<String> {
    let d = a - b;
    let m = *d.terms().next()?.0;
    Some(format!("at {m}: {} vs {}", coeff_to_string(&a.coefficient(&m)), coeff_to_string(&b.coefficient(&m))))
}

fn beta_delta(c: &BetaPoly, expect_one: bool) -> bool {
    if expect_one {
        *c == BetaPoly::one()
    } else {
        c.is_zero()
    }
}

fn empty() -> Partition {
    Partition::empty()
}

fn basis(tag: SymFamily, l: &Partition, ctx: TruncationContext) -> Result<TruncPoly> {
    Ok((*sym_basis_arc(tag, l, &empty(), ctx)?).clone())
}

fn require(ctx: TruncationContext, bound: u32) -> Result<()> {
    if ctx.adequate_for(bound as usize) {
        Ok(())
    } else {
        Err(KhopfError::Inadequate(format!("bound {bound} needs N, D >= {bound}, have {ctx}")))
    }
}

/// Which cross-pairing to verify.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualityCheck {
    /// `[gp_lambda, GQ_mu] = delta`, evaluated through the `(gq, GP)` pair.
    GpGQ,
    /// `[gq_lambda, GP_mu] = delta`, evaluated through the `(gp, GQ)` pair.
    GqGP,
    /// `<g_lambda, G_mu> = delta` under the Hall form.
    SmallGG,
}

/// Verify a duality for all indices of size at most `bound`.
///
/// The shifted pairings are evaluated through the opposite dual pair, so the
/// check exercises both families' expansions rather than a tautology.
pub fn duality_check(which: DualityCheck, bound: u32, ctx: TruncationContext) -> Result<IdentityReport> {
    require(ctx, bound)?;
    let (left, right, via_left, via_right, name) = match which {
        DualityCheck::GpGQ => (SymFamily::SmallGP, SymFamily::GQ, SymFamily::SmallGQ, SymFamily::GP, "[gp,GQ]"),
        DualityCheck::GqGP => (SymFamily::SmallGQ, SymFamily::GP, SymFamily::SmallGP, SymFamily::GQ, "[gq,GP]"),
        DualityCheck::SmallGG => (SymFamily::SmallG, SymFamily::G, SymFamily::S, SymFamily::S, "<g,G>"),
    };
    let idx: Vec<Partition> = (0..=bound).flat_map(|n| left.indices(n)).collect();
    let lefts: Vec<BTreeMap<Partition, BetaPoly>> = idx
        .par_iter()
        .map(|l| Ok(expand_in_family(&basis(left, l, ctx)?, via_left)?.coeffs))
        .collect::<Result<_>>()?;
    let rights: Vec<BTreeMap<Partition, BetaPoly>> = idx
        .par_iter()
        .map(|m| Ok(expand_in_family(&basis(right, m, ctx)?, via_right)?.coeffs))
        .collect::<Result<_>>()?;
    let mut rep = IdentityReport::new(format!("{name} = delta, sizes <= {bound} at {ctx}"));
    for (l, a) in idx.iter().zip(&lefts) {
        for (m, b) in idx.iter().zip(&rights) {
            let mut v = BetaPoly::zero();
            for (k, x) in a {
                if let Some(y) = b.get(k) {
                    v += &(x * y);
                }
            }
            let fail = (!beta_delta(&v, l == m)).then(|| format!("got {v}"));
            rep.record(format!("{name}({l}, {m})"), fail);
        }
    }
    Ok(rep)
}

/// Compare `sum GP_lambda(x) gq_lambda(y)`, `sum GQ_lambda(x) gp_lambda(y)` and the
/// kernel `prod (1 - xbar_i y_j) / (1 - x_i y_j)` up to bidegree `(dx, dy)` in
/// `nx + ny` variables.
pub fn cauchy_check(dx: usize, dy: usize, nx: usize, ny: usize) -> Result<IdentityReport> {
    let n = nx + ny;
    let d = dx + dy;
    let ctx = TruncationContext::new(n, d)?;
    let cx = TruncationContext::new(nx, d)?;
    let cy = TruncationContext::new(ny, d)?;
    let keep = move |m: &Monomial| {
        let a: u32 = (0..nx).map(|i| m.exp(i)).sum();
        let b: u32 = (nx..n).map(|i| m.exp(i)).sum();
        a as usize <= dx && b as usize <= dy
    };
    let shapes: Vec<StrictPartition> =
        strict_partitions_upto(dx as u32).into_iter().filter(|l| l.len() <= nx).collect();
    let side = |fx: SymFamily, fy: SymFamily| -> Result<TruncPoly> {
        let terms: Vec<TruncPoly> = shapes
            .par_iter()
            .map(|l| {
                let a = basis(fx, l, cx)?.embed(ctx, 0)?;
                let b = basis(fy, l, cy)?.embed(ctx, nx)?;
                a.mul_filtered(&b, &keep)
            })
            .collect::<Result<_>>()?;
        Ok(terms.iter().fold(TruncPoly::zero(ctx), |acc, t| &acc + t))
    };
    let p_side = side(SymFamily::GP, SymFamily::SmallGQ)?;
    let q_side = side(SymFamily::GQ, SymFamily::SmallGP)?;

    let m = dx.min(dy) as u32;
    let mut kernel = TruncPoly::one(ctx);
    for i in 0..nx {
        for j in nx..n {
            let xy = &TruncPoly::var(ctx, i) * &TruncPoly::var(ctx, j);
            let num = (&TruncPoly::one(ctx) - &xy).bar_substitute_vars(&[i]);
            let mut geo = TruncPoly::zero(ctx);
            for k in 0..=m {
                geo = &geo + &xy.pow(k);
            }
            kernel = kernel.mul_filtered(&num.mul_filtered(&geo, &keep)?, &keep)?;
        }
    }
    let kernel = kernel.filter(keep);

    let mut rep = IdentityReport::new(format!("Cauchy identity up to bidegree ({dx},{dy}) in {nx}+{ny} variables"));
    rep.record("sum GP(x) gq(y) = kernel".into(), first_difference(&p_side, &kernel));
    rep.record("sum GQ(x) gp(y) = kernel".into(), first_difference(&q_side, &kernel));
    Ok(rep)
}

/// Families whose antipode identity can be checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AntipodeFamily {
    GP,
    GQ,
    SmallGP,
    SmallGQ,
}

impl AntipodeFamily {
    pub const ALL: [AntipodeFamily; 4] =
        [AntipodeFamily::GP, AntipodeFamily::GQ, AntipodeFamily::SmallGP, AntipodeFamily::SmallGQ];

    pub fn name(&self) -> &'static str {
        match self {
            AntipodeFamily::GP => "GP",
            AntipodeFamily::GQ => "GQ",
            AntipodeFamily::SmallGP => "gp",
            AntipodeFamily::SmallGQ => "gq",
        }
    }
}

/// `sum_lambda (-1)^{|lambda|} S-image_lambda * (nu // lambda or nu / lambda) = delta_{nu, empty}`,
/// the antipode axiom for the given family at index `nu`.
pub fn antipode_identity_check(which: AntipodeFamily, nu: &StrictPartition, ctx: TruncationContext) -> Result<IdentityReport> {
    require(ctx, nu.size())?;
    let mut total = TruncPoly::zero(ctx);
    let mut rep = IdentityReport::new(format!("antipode identity for {}_{nu}", which.name()));
    let subs: Vec<StrictPartition> = strict_partitions_upto(nu.size()).into_iter().filter(|l| nu.contains(l)).collect();
    for lam in &subs {
        let sign = if lam.size() % 2 == 0 { 1 } else { -1 };
        let (anti, rest) = match which {
            AntipodeFamily::GP => (basis(SymFamily::JP, lam, ctx)?, slashslash(SlashFamily::GP, nu, lam, ctx)?),
            AntipodeFamily::GQ => (basis(SymFamily::JQ, lam, ctx)?, slashslash(SlashFamily::GQ, nu, lam, ctx)?),
            AntipodeFamily::SmallGP => {
                (basis(SymFamily::SmallJP, lam, ctx)?, (*sym_basis_arc(SymFamily::SmallGP, nu, lam, ctx)?).clone())
            }
            AntipodeFamily::SmallGQ => {
                (basis(SymFamily::SmallJQ, lam, ctx)?, (*sym_basis_arc(SymFamily::SmallGQ, nu, lam, ctx)?).clone())
            }
        };
        let term = (&anti * &rest).scale(&int(sign));
        rep.details.push(format!("  term {lam}: {} monomials", term.len()));
        total = &total + &term;
    }
    let expect = if nu.is_empty() { TruncPoly::one(ctx) } else { TruncPoly::zero(ctx) };
    rep.record(format!("{}_{nu}", which.name()), first_difference(&total, &expect));
    Ok(rep)
}

type KTable = BTreeMap<BTreeSet<u32>, u64>;
static KCOUNTS: Memo<(Vec<u32>, u32), KTable> = Memo::new();

struct KSearch {
    boxes: Vec<(u32, u32)>,
    /// Per box: indices of the boxes to its left and below.
    preds: Vec<Vec<usize>>,
    succs: Vec<Vec<usize>>,
    contents: Vec<Vec<u32>>,
    /// Box holding each placed integer.
    placed: Vec<usize>,
    total: u32,
    counts: KTable,
}

impl KSearch {
    fn run(&mut self, k: u32) {
        if k > self.total {
            if self.contents.iter().all(|c| !c.is_empty()) {
                let peaks = self.peak_set();
                *self.counts.entry(peaks).or_default() += 1;
            }
            return;
        }
        let empties = self.contents.iter().filter(|c| c.is_empty()).count() as u32;
        if empties > self.total - k + 1 {
            return;
        }
        for b in 0..self.boxes.len() {
            let ok = self.preds[b].iter().all(|&p| !self.contents[p].is_empty())
                && self.succs[b].iter().all(|&s| self.contents[s].is_empty())
                && self.contents[b].last() != Some(&(k - 1));
            if ok {
                self.contents[b].push(k);
                self.placed.push(b);
                self.run(k + 1);
                self.placed.pop();
                self.contents[b].pop();
            }
        }
    }

    fn peak_set(&self) -> BTreeSet<u32> {
        let pos = |i: u32| self.boxes[self.placed[i as usize - 1]];
        (2..self.total).filter(|&i| pos(i).1 > pos(i - 1).1 && pos(i).0 < pos(i + 1).0).collect()
    }
}

/// `k^alpha_lambda`: standard shifted set-valued tableaux of shape `lambda`
/// with `|T| = |alpha|` and peak set `I(alpha)`.
pub fn kcoeff(alpha: &PeakComposition, lambda: &StrictPartition) -> u64 {
    let total = alpha.size();
    if total < lambda.size() {
        return 0;
    }
    let table = KCOUNTS.get_or(&(lambda.parts().to_vec(), total), || {
        let mut boxes = Vec::new();
        for (i, &p) in lambda.parts().iter().enumerate() {
            let r = i as u32 + 1;
            for c in r..r + p {
                boxes.push((r, c));
            }
        }
        let find = |b: (u32, u32)| boxes.iter().position(|&x| x == b);
        let preds = boxes
            .iter()
            .map(|&(r, c)| [find((r, c.wrapping_sub(1))), find((r.wrapping_sub(1), c))].into_iter().flatten().collect())
            .collect();
        let succs = boxes.iter().map(|&(r, c)| [find((r, c + 1)), find((r + 1, c))].into_iter().flatten().collect()).collect();
        let mut s = KSearch {
            contents: vec![Vec::new(); boxes.len()],
            boxes,
            preds,
            succs,
            placed: Vec::new(),
            total,
            counts: KTable::new(),
        };
        s.run(1);
        s.counts
    });
    table.get(&alpha.interval_set()).copied().unwrap_or(0)
}

/// `GQ_lambda = sum_alpha k^alpha_lambda beta^{|alpha|-|lambda|} K_alpha` within `ctx`.
pub fn kcoeff_expansion_check(lambda: &StrictPartition, ctx: TruncationContext) -> Result<IdentityReport> {
    let mut rhs = TruncPoly::zero(ctx);
    let beta = TruncPoly::beta(ctx);
    for n in lambda.size()..=ctx.d as u32 {
        for a in peak_compositions(n) {
            let k = kcoeff(&a, lambda);
            if k > 0 {
                let ka = qsym_basis(QBasisTag::K, a.as_composition(), ctx)?;
                rhs = &rhs + &(&ka * &beta.pow(n - lambda.size())).scale(&int(k as i64));
            }
        }
    }
    let lhs = basis(SymFamily::GQ, lambda, ctx)?;
    let mut rep = IdentityReport::new(format!("GQ_{lambda} in K via standard tableaux"));
    rep.record(format!("GQ_{lambda}"), first_difference(&lhs, &rhs));
    Ok(rep)
}

/// `Theta(G_lambda) = GQ_{(lambda+delta)/delta}` for partitions of size at most `bound`
/// with at most `max_len` parts.
pub fn theta_grothendieck_check(bound: u32, max_len: usize, ctx: TruncationContext) -> Result<IdentityReport> {
    require(ctx, bound)?;
    let shapes: Vec<Partition> = partitions_upto(bound).into_iter().filter(|l| l.len() <= max_len).collect();
    let lines: Vec<(String, Option<String>)> = shapes
        .par_iter()
        .map(|l| {
            let k = l.len() as u32;
            let top: Vec<u32> = (0..l.len()).map(|i| l.part(i) + k - i as u32).collect();
            let delta: Vec<u32> = (1..=k).rev().collect();
            let skew = sym_basis_arc(SymFamily::GQ, &Partition::new(top)?, &Partition::new(delta)?, ctx)?;
            let th = theta(&basis(SymFamily::G, l, ctx)?)?;
            Ok((format!("Theta(G_{l})"), first_difference(&th, &skew)))
        })
        .collect::<Result<_>>()?;
    let mut rep = IdentityReport::new(format!("Theta(G_lambda) = GQ_(lambda+delta)/delta, sizes <= {bound}"));
    for (label, f) in lines {
        rep.record(label, f);
    }
    Ok(rep)
}

/// `[gp_lambda, Theta(G_mu)] = <gp_lambda, G_mu>` for `|lambda|, |mu| <= bound`.
pub fn ttheta_check(bound: u32, ctx: TruncationContext) -> Result<IdentityReport> {
    require(ctx, bound)?;
    let lams = strict_partitions_upto(bound);
    let mus = partitions_upto(bound);
    let thetas: Vec<BTreeMap<Partition, BetaPoly>> = mus
        .par_iter()
        .map(|m| Ok(expand_in_family(&theta(&basis(SymFamily::G, m, ctx)?)?, SymFamily::GQ)?.coeffs))
        .collect::<Result<_>>()?;
    let mut rep = IdentityReport::new(format!("[gp, Theta(G)] = <gp, G>, sizes <= {bound}"));
    let rows: Vec<Vec<(String, Option<String>)>> = lams
        .par_iter()
        .map(|l| {
            let gp = basis(SymFamily::SmallGP, l, ctx)?;
            let mut out = Vec::new();
            for (m, th) in mus.iter().zip(&thetas) {
                // gp_lambda is its own gp-expansion, so the shifted form reads off a coefficient.
                let left = th.get(l.as_partition()).cloned().unwrap_or_default();
                let right = hall_form(&gp, &basis(SymFamily::G, m, ctx)?)?;
                out.push((format!("gp_{l} vs G_{m}"), (left != right).then(|| format!("{left} vs {right}"))));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    for (label, f) in rows.into_iter().flatten() {
        rep.record(label, f);
    }
    Ok(rep)
}

/// `gp_(n) = sum_{i=1}^n g_(i,1^{n-i})` for `1 <= n <= bound`.
pub fn gpn_check(bound: u32, ctx: TruncationContext) -> Result<IdentityReport> {
    let mut rep = IdentityReport::new(format!("gp_(n) as a sum of hook g's, n <= {bound}"));
    for n in 1..=bound {
        let mut rhs = TruncPoly::zero(ctx);
        for i in 1..=n {
            let mut parts = vec![i];
            parts.extend(std::iter::repeat_n(1, (n - i) as usize));
            rhs = &rhs + &basis(SymFamily::SmallG, &Partition::new(parts)?, ctx)?;
        }
        let lhs = basis(SymFamily::SmallGP, &Partition::from_slice(&[n]), ctx)?;
        rep.record(format!("gp_({n})"), first_difference(&lhs, &rhs));
    }
    Ok(rep)
}

/// Positivity properties that can be scanned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Conjecture {
    /// `b_hat >= 0`, i.e. `GP_{nu//lambda}` is `GP`-positive.
    CoGp,
    /// `a_hat >= 0`, i.e. `GQ_{nu//lambda}` is `GQ`-positive.
    CoGq,
    /// `jp` and `jq` are Schur positive.
    JpJqSchur,
    /// `GP` is a positive combination of `JP`.
    GpInJp,
    /// `GQ` is a positive combination of `JQ`.
    GqInJq,
    /// `jq` is a positive combination of `gq`.
    JqInGq,
    /// `jp` is a positive combination of `gp`.
    JpInGp,
    /// `GP` and `GQ` are Schur positive.
    SchurPosGpGq,
    /// Known positivity: `G`, `j` Schur positive; `s` positive in `g` and `J`; `a >= 0`.
    BothThm,
}

impl Conjecture {
    pub const ALL: [Conjecture; 9] = [
        Conjecture::CoGp,
        Conjecture::CoGq,
        Conjecture::JpJqSchur,
        Conjecture::GpInJp,
        Conjecture::GqInJq,
        Conjecture::JqInGq,
        Conjecture::JpInGp,
        Conjecture::SchurPosGpGq,
        Conjecture::BothThm,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Conjecture::CoGp => "co_gp",
            Conjecture::CoGq => "co_gq",
            Conjecture::JpJqSchur => "jp_jq_schur",
            Conjecture::GpInJp => "GP_in_JP",
            Conjecture::GqInJq => "GQ_in_JQ",
            Conjecture::JqInGq => "jq_in_gq",
            Conjecture::JpInGp => "jp_in_gp",
            Conjecture::SchurPosGpGq => "schur_pos_GP_GQ",
            Conjecture::BothThm => "both_thm",
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Conjecture {
    type Err = KhopfError;
    fn from_str(s: &str) -> Result<Self> {
        Conjecture::ALL
            .iter()
            .find(|c| c.name().eq_ignore_ascii_case(s) || c.name().replace('_', "-").eq_ignore_ascii_case(s))
            .copied()
            .ok_or_else(|| KhopfError::Parse(format!("unknown conjecture {s:?}")))
    }
}

/// Result of a positivity scan.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub conjecture: Conjecture,
    pub bound: u32,
    pub tables: Vec<CoeffTable>,
    /// Every coefficient is nonnegative.
    pub verdict: bool,
    /// Every coefficient is an integer.
    pub integral: bool,
    pub counterexamples: Vec<String>,
}

impl ScanReport {
    pub fn summary(&self) -> String {
        let n: usize = self.tables.iter().map(|t| t.entries.len()).sum();
        format!(
            "{} up to {}: {} ({} coefficients{}, {} counterexamples)",
            self.conjecture,
            self.bound,
            if self.verdict { "holds" } else { "FAILS" },
            n,
            if self.integral { "" } else { ", some non-integral" },
            self.counterexamples.len()
        )
    }
}

/// Compute every coefficient relevant to `conj` up to `bound` and report sign violations.
pub fn positivity_scan(conj: Conjecture, bound: u32) -> Result<ScanReport> {
    let ctx = TruncationContext::new(bound.max(1) as usize, bound.max(1) as usize)?;
    use SymFamily::*;
    let ex = |a, b| expansion_table(a, b, bound, ctx);
    let tables = match conj {
        Conjecture::CoGp => vec![structure_coeffs(CoeffKind::BHat, bound)?],
        Conjecture::CoGq => vec![structure_coeffs(CoeffKind::AHat, bound)?],
        Conjecture::JpJqSchur => vec![ex(SmallJP, S)?, ex(SmallJQ, S)?],
        Conjecture::GpInJp => vec![ex(GP, JP)?],
        Conjecture::GqInJq => vec![ex(GQ, JQ)?],
        Conjecture::JqInGq => vec![ex(SmallJQ, SmallGQ)?],
        Conjecture::JpInGp => vec![ex(SmallJP, SmallGP)?],
        Conjecture::SchurPosGpGq => vec![ex(GP, S)?, ex(GQ, S)?],
        Conjecture::BothThm => vec![
            ex(G, S)?,
            ex(SmallJ, S)?,
            ex(S, SmallG)?,
            ex(S, J)?,
            structure_coeffs(CoeffKind::A, bound)?,
        ],
    };
    let mut counterexamples = Vec::new();
    for t in &tables {
        let label = match t.families {
            Some((a, b)) => format!("{a} in {b}"),
            None => t.kind.to_string(),
        };
        for e in t.negative_entries() {
            let mu = e.mu.as_ref().map(|m| format!(", {m}")).unwrap_or_default();
            counterexamples.push(format!("{label}: ({}{mu}; {}) b^{} coefficient {}", e.lambda, e.nu, e.beta_exp, e.value));
        }
    }
    Ok(ScanReport {
        conjecture: conj,
        bound,
        verdict: counterexamples.is_empty(),
        integral: tables.iter().all(|t| t.is_integral()),
        tables,
        counterexamples,
    })
}
