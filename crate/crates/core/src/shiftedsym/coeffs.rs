//! Tables of structure constants and expansion coefficients.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{KhopfError, Result};
use crate::exactpoly::{coeff_to_string, parse_coeff, BetaPoly, Coeff, TruncPoly, TruncationContext};
use crate::shapes::{strict_partitions_upto, Composition, Partition, StrictPartition};

use super::expand::expand_in_family;
use super::family::{slashslash, sym_basis_arc, SlashFamily, SymFamily};

/// What a [`CoeffTable`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoeffKind {
    /// `GP_lambda GP_mu = sum a beta^{|nu|-|lambda|-|mu|} GP_nu`.
    A,
    /// `GQ_lambda GQ_mu = sum b beta^{|nu|-|lambda|-|mu|} GQ_nu`.
    B,
    /// `GQ_{nu//lambda} = sum a_hat beta^{|lambda|+|mu|-|nu|} GQ_mu`.
    AHat,
    /// `GP_{nu//lambda} = sum b_hat beta^{|lambda|+|mu|-|nu|} GP_mu`.
    BHat,
    /// Peak-to-shifted coefficients `k^alpha_lambda`.
    Kcoeff,
    /// Expansion into Schur functions.
    Schur,
    /// Expansion of one family into another.
    FamilyChange,
}

impl CoeffKind {
    pub fn name(&self) -> &'static str {
        match self {
            CoeffKind::A => "a",
            CoeffKind::B => "b",
            CoeffKind::AHat => "a_hat",
            CoeffKind::BHat => "b_hat",
            CoeffKind::Kcoeff => "kcoeff",
            CoeffKind::Schur => "schur",
            CoeffKind::FamilyChange => "family-change",
        }
    }

    fn is_structure(&self) -> bool {
        matches!(self, CoeffKind::A | CoeffKind::B | CoeffKind::AHat | CoeffKind::BHat)
    }
}

impl fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoeffKind {
    type Err = KhopfError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "a" => CoeffKind::A,
            "b" => CoeffKind::B,
            "a_hat" | "a-hat" => CoeffKind::AHat,
            "b_hat" | "b-hat" => CoeffKind::BHat,
            "kcoeff" => CoeffKind::Kcoeff,
            "schur" => CoeffKind::Schur,
            "family-change" => CoeffKind::FamilyChange,
            _ => return Err(KhopfError::Parse(format!("unknown coefficient kind {s:?}"))),
        })
    }
}

/// One coefficient: `value * beta^beta_exp` at the index triple.
///
/// For expansion tables `lambda` is the source index, `mu` is absent and
/// `nu` is the target index.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffEntry {
    pub lambda: Composition,
    pub mu: Option<Composition>,
    pub nu: Composition,
    pub beta_exp: usize,
    pub value: Coeff,
}

impl CoeffEntry {
    fn sort_key(&self) -> (&Composition, &Composition, Option<&Composition>, usize) {
        (&self.nu, &self.lambda, self.mu.as_ref(), self.beta_exp)
    }
}

/// Column order of [`CoeffTable::to_csv`].
pub const CSV_COLUMNS: [&str; 5] = ["lambda", "mu", "nu", "beta_exp", "value"];

#[derive(Serialize, Deserialize)]
struct RowOut {
    lambda: String,
    mu: String,
    nu: String,
    beta_exp: usize,
    value: String,
}

#[derive(Serialize)]
struct TableOut<'a> {
    kind: CoeffKind,
    bound: u32,
    ctx: TruncationContext,
    rows: Vec<RowOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    source: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    target: Option<&'a str>,
}

#[derive(Deserialize)]
struct TableIn {
    kind: CoeffKind,
    bound: u32,
    ctx: TruncationContext,
    rows: Vec<RowOut>,
    source: Option<String>,
    target: Option<String>,
}

/// A complete table of coefficients for all index tuples within `bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffTable {
    pub kind: CoeffKind,
    pub bound: u32,
    pub ctx: TruncationContext,
    /// Families for expansion tables.
    pub families: Option<(SymFamily, SymFamily)>,
    /// Sorted by `(nu, lambda, mu)`.
    pub entries: Vec<CoeffEntry>,
}

fn comp(p: &Partition) -> Composition {
    Composition::from_slice(p.parts())
}

fn push_poly(out: &mut Vec<CoeffEntry>, lambda: Composition, mu: Option<Composition>, nu: Composition, c: &BetaPoly) {
    for (k, v) in c.terms() {
        out.push(CoeffEntry { lambda: lambda.clone(), mu: mu.clone(), nu: nu.clone(), beta_exp: k, value: v.clone() });
    }
}

impl CoeffTable {
    fn new(kind: CoeffKind, bound: u32, ctx: TruncationContext, mut entries: Vec<CoeffEntry>) -> Self {
        entries.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        CoeffTable { kind, bound, ctx, families: None, entries }
    }

    /// Coefficient at a triple as a beta-polynomial (zero if absent).
    pub fn get(&self, lambda: &[u32], mu: Option<&[u32]>, nu: &[u32]) -> BetaPoly {
        let mut v = vec![Coeff::zero(); 1];
        for e in &self.entries {
            if e.lambda.parts() == lambda && e.nu.parts() == nu && e.mu.as_ref().map(|m| m.parts()) == mu {
                if v.len() <= e.beta_exp {
                    v.resize(e.beta_exp + 1, Coeff::zero());
                }
                v[e.beta_exp] += &e.value;
            }
        }
        BetaPoly::from_coeffs(v)
    }

    /// Integer value of a structure constant (ignoring the fixed beta power).
    pub fn value(&self, lambda: &[u32], mu: &[u32], nu: &[u32]) -> Coeff {
        self.entries
            .iter()
            .find(|e| e.lambda.parts() == lambda && e.mu.as_ref().map(|m| m.parts()) == Some(mu) && e.nu.parts() == nu)
            .map(|e| e.value.clone())
            .unwrap_or_else(Coeff::zero)
    }

    pub fn negative_entries(&self) -> Vec<&CoeffEntry> {
        self.entries.iter().filter(|e| e.value.is_negative()).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.entries.iter().all(|e| !e.value.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.value.is_integer())
    }

    /// Entries whose `(mu, lambda, nu)` partner differs.
    pub fn asymmetric_entries(&self) -> Vec<&CoeffEntry> {
        self.entries
            .iter()
            .filter(|e| {
                let Some(mu) = &e.mu else { return false };
                self.value(mu.parts(), e.lambda.parts(), e.nu.parts()) != e.value
            })
            .collect()
    }

    fn rows(&self) -> Vec<RowOut> {
        self.entries
            .iter()
            .map(|e| RowOut {
                lambda: e.lambda.to_string(),
                mu: e.mu.as_ref().map(|m| m.to_string()).unwrap_or_default(),
                nu: e.nu.to_string(),
                beta_exp: e.beta_exp,
                value: coeff_to_string(&e.value),
            })
            .collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        // the header is written even for an empty table
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.write_record(CSV_COLUMNS).map_err(|e| KhopfError::Io(std::io::Error::other(e)))?;
        for r in self.rows() {
            w.serialize(r).map_err(|e| KhopfError::Io(std::io::Error::other(e)))?;
        }
        let bytes = w.into_inner().map_err(|e| KhopfError::Io(std::io::Error::other(e.to_string())))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> Result<String> {
        let t = TableOut {
            kind: self.kind,
            bound: self.bound,
            ctx: self.ctx,
            rows: self.rows(),
            source: self.families.map(|f| f.0.name()),
            target: self.families.map(|f| f.1.name()),
        };
        Ok(serde_json::to_string(&t)?)
    }

    /// Inverse of [`CoeffTable::to_json`].
    pub fn from_json(s: &str) -> Result<Self> {
        let t: TableIn = serde_json::from_str(s)?;
        let families = match (t.source, t.target) {
            (Some(a), Some(b)) => Some((a.parse()?, b.parse()?)),
            (None, None) => None,
            _ => return Err(KhopfError::Parse("table names only one family".into())),
        };
        let entries = t
            .rows
            .into_iter()
            .map(|r| {
                Ok(CoeffEntry {
                    lambda: r.lambda.parse()?,
                    mu: if r.mu.is_empty() { None } else { Some(r.mu.parse()?) },
                    nu: r.nu.parse()?,
                    beta_exp: r.beta_exp,
                    value: parse_coeff(&r.value)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mut table = CoeffTable::new(t.kind, t.bound, t.ctx, entries);
        table.families = families;
        Ok(table)
    }

    /// One line per entry, `nu <- lambda, mu : value b^k`.
    pub fn to_text(&self) -> String {
        let mut s = format!("# {} (bound {}, {})\n", self.kind, self.bound, self.ctx);
        for r in self.rows() {
            let mid = if r.mu.is_empty() { r.lambda } else { format!("{}, {}", r.lambda, r.mu) };
            s.push_str(&format!("{} <- {} : {} b^{}\n", r.nu, mid, r.value, r.beta_exp));
        }
        s
    }
}

/// Convert expansion coefficients into a structure-constant entry, checking
/// the beta grading and integrality.
fn structure_entry(
    kind: CoeffKind,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    c: &BetaPoly,
) -> Result<Option<CoeffEntry>> {
    let (l, m, n) = (lambda.size() as i64, mu.size() as i64, nu.size() as i64);
    let expected = match kind {
        CoeffKind::A | CoeffKind::B => n - l - m,
        _ => l + m - n,
    };
    let Some((k, v)) = c.as_monomial() else {
        if c.is_zero() {
            return Ok(None);
        }
        return Err(KhopfError::IdentityViolation(format!(
            "{kind} coefficient at ({lambda}, {mu}; {nu}) is not a single power of beta: {c}"
        )));
    };
    if k as i64 != expected {
        return Err(KhopfError::IdentityViolation(format!(
            "{kind} coefficient at ({lambda}, {mu}; {nu}) has beta^{k}, expected beta^{expected}"
        )));
    }
    if !v.is_integer() {
        return Err(KhopfError::NonInteger(format!("{kind} at ({lambda}, {mu}; {nu}) = {}", coeff_to_string(&v))));
    }
    Ok(Some(CoeffEntry { lambda: comp(lambda), mu: Some(comp(mu)), nu: comp(nu), beta_exp: k, value: v }))
}

/// Structure constants `a`, `b`, `a_hat`, `b_hat` for all triples with `|nu| <= bound`,
/// computed in `N = D = bound` variables.
pub fn structure_coeffs(kind: CoeffKind, bound: u32) -> Result<CoeffTable> {
    if !kind.is_structure() {
        return Err(KhopfError::InvalidIndex(format!("{kind} is not a structure-constant kind")));
    }
    let ctx = TruncationContext::new(bound.max(1) as usize, bound.max(1) as usize)?;
    let shapes: Vec<StrictPartition> = strict_partitions_upto(bound);
    let fam = match kind {
        CoeffKind::A | CoeffKind::BHat => SymFamily::GP,
        _ => SymFamily::GQ,
    };
    let jobs: Vec<(StrictPartition, StrictPartition)> = match kind {
        CoeffKind::A | CoeffKind::B => shapes
            .iter()
            .flat_map(|l| shapes.iter().filter(move |m| l.size() + m.size() <= bound).map(move |m| (l.clone(), m.clone())))
            .collect(),
        _ => shapes
            .iter()
            .flat_map(|n| shapes.iter().filter(move |l| n.contains(l)).map(move |l| (n.clone(), l.clone())))
            .collect(),
    };
    let parts: Vec<Vec<CoeffEntry>> = jobs
        .par_iter()
        .map(|(x, y)| -> Result<Vec<CoeffEntry>> {
            let mut out = Vec::new();
            match kind {
                CoeffKind::A | CoeffKind::B => {
                    let e = Partition::empty();
                    let f = &*sym_basis_arc(fam, x, &e, ctx)? * &*sym_basis_arc(fam, y, &e, ctx)?;
                    for (nu, c) in expand_in_family(&f, fam)?.coeffs {
                        if let Some(entry) = structure_entry(kind, x, y, &nu, &c)? {
                            out.push(entry);
                        }
                    }
                }
                _ => {
                    let slash = if kind == CoeffKind::AHat { SlashFamily::GQ } else { SlashFamily::GP };
                    let f = slashslash(slash, x, y, ctx)?;
                    for (mu, c) in expand_in_family(&f, fam)?.coeffs {
                        if let Some(entry) = structure_entry(kind, y, &mu, x, &c)? {
                            out.push(entry);
                        }
                    }
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok(CoeffTable::new(kind, bound, ctx, parts.into_iter().flatten().collect()))
}

/// Expansion of every `source_lambda` with `|lambda| <= bound` in `target`, at `ctx`.
pub fn expansion_table(source: SymFamily, target: SymFamily, bound: u32, ctx: TruncationContext) -> Result<CoeffTable> {
    if !ctx.adequate_for(bound as usize) {
        return Err(KhopfError::Inadequate(format!("bound {bound} needs N, D >= {bound}, have {ctx}")));
    }
    let idx: Vec<Partition> = (0..=bound).flat_map(|n| source.indices(n)).collect();
    let parts: Vec<Vec<CoeffEntry>> = idx
        .par_iter()
        .map(|l| -> Result<Vec<CoeffEntry>> {
            let f: TruncPoly = (*sym_basis_arc(source, l, &Partition::empty(), ctx)?).clone();
            let mut out = Vec::new();
            for (p, c) in expand_in_family(&f, target)?.coeffs {
                push_poly(&mut out, comp(l), None, comp(&p), &c);
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let kind = if target == SymFamily::S { CoeffKind::Schur } else { CoeffKind::FamilyChange };
    let mut t = CoeffTable::new(kind, bound, ctx, parts.into_iter().flatten().collect());
    t.families = Some((source, target));
    Ok(t)
}

/// Table of `k^alpha_lambda` for all peak compositions with `|alpha| <= bound`.
pub fn kcoeff_table(bound: u32) -> Result<CoeffTable> {
    let ctx = TruncationContext::new(bound.max(1) as usize, bound.max(1) as usize)?;
    let alphas: Vec<_> = crate::shapes::peak_compositions_upto(bound);
    let lambdas = strict_partitions_upto(bound);
    let mut entries = Vec::new();
    for a in &alphas {
        for l in &lambdas {
            if l.size() > a.size() {
                continue;
            }
            let k = super::checks::kcoeff(a, l);
            if k > 0 {
                entries.push(CoeffEntry {
                    lambda: a.as_composition().clone(),
                    mu: None,
                    nu: comp(l),
                    beta_exp: (a.size() - l.size()) as usize,
                    value: Coeff::from_integer(k.into()),
                });
            }
        }
    }
    Ok(CoeffTable::new(CoeffKind::Kcoeff, bound, ctx, entries))
}
