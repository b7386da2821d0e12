//! Family names and the product expressions accepted by `expand`.
//!
//! An expression is a `*`-separated list of factors `NAME[parts]`, where a
//! symmetric factor may carry a skew part `/[mu]` or `//[mu]`.

use std::fmt;

use crate::error::{KhopfError, Result};
use crate::exactpoly::{TruncPoly, TruncationContext};
use crate::peakalg::{PeakBasis, PeakElement};
use crate::qsymbases::{qsym_basis, QBasisTag};
use crate::shapes::{Composition, Partition, PeakComposition, StrictPartition};
use crate::shiftedsym::{slashslash, sym_basis, sym_basis_skew, SlashFamily, SymFamily};

/// Any family the command line can name.
///
/// `P` and `Q` are Schur functions; the multipeak bases are `tpeak` and `opeak`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Sym(SymFamily),
    Qsym(QBasisTag),
    Peak(PeakBasis),
}

impl Family {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Ok(f) = s.parse::<SymFamily>() {
            return Ok(Family::Sym(f));
        }
        if let Ok(f) = s.parse::<QBasisTag>() {
            return Ok(Family::Qsym(f));
        }
        match s {
            "tpeak" => Ok(Family::Peak(PeakBasis::Tpeak)),
            "opeak" => Ok(Family::Peak(PeakBasis::Opeak)),
            _ => Err(KhopfError::Parse(format!("unknown family {s:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Sym(t) => f.write_str(t.name()),
            Family::Qsym(t) => f.write_str(t.name()),
            Family::Peak(t) => f.write_str(t.name()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Skew {
    /// `lambda/mu`.
    Single,
    /// `nu//lambda`.
    Double,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub family: Family,
    pub index: Vec<u32>,
    pub skew: Option<(Skew, Vec<u32>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    pub factors: Vec<Factor>,
}

/// The value of an expression: a truncated polynomial or a multipeak element.
#[derive(Clone, Debug)]
pub enum Value {
    Poly(TruncPoly),
    Peak(PeakElement),
}

fn bad(s: &str, why: &str) -> KhopfError {
    KhopfError::Parse(format!("bad expression {s:?}: {why}"))
}

/// Parse `1,2,3` (brackets optional); the empty string is the empty index.
pub fn parse_index(s: &str) -> Result<Vec<u32>> {
    let t = s.trim().trim_start_matches(['[', '(']).trim_end_matches([']', ')']).trim();
    if t.is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| KhopfError::Parse(format!("bad index {s:?}"))))
        .collect()
}

/// Split `[...]rest` into the bracket contents and the rest.
fn bracket<'a>(whole: &str, s: &'a str) -> Result<(&'a str, &'a str)> {
    let s = s.trim_start();
    let close = match s.chars().next() {
        Some('[') => ']',
        Some('(') => ')',
        _ => return Err(bad(whole, "expected '['")),
    };
    let end = s.find(close).ok_or_else(|| bad(whole, "unclosed bracket"))?;
    Ok((&s[1..end], &s[end + 1..]))
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let mut factors = Vec::new();
    for raw in s.split('*') {
        let raw = raw.trim();
        if raw.is_empty() {
            return Err(bad(s, "empty factor"));
        }
        let open = raw.find(['[', '(']).ok_or_else(|| bad(s, "a factor needs an index in brackets"))?;
        let family = Family::parse(&raw[..open])?;
        let (idx, rest) = bracket(s, &raw[open..])?;
        let index = parse_index(idx)?;
        let rest = rest.trim();
        let skew = if rest.is_empty() {
            None
        } else {
            let (kind, tail) = match rest.strip_prefix("//") {
                Some(t) => (Skew::Double, t),
                None => (Skew::Single, rest.strip_prefix('/').ok_or_else(|| bad(s, "unexpected text after index"))?),
            };
            let (mu, tail) = bracket(s, tail)?;
            if !tail.trim().is_empty() {
                return Err(bad(s, "unexpected text after skew index"));
            }
            Some((kind, parse_index(mu)?))
        };
        factors.push(Factor { family, index, skew });
    }
    Ok(Expr { factors })
}

impl Expr {
    /// Sum of the outer index sizes.
    pub fn size(&self) -> usize {
        self.factors.iter().map(|f| f.index.iter().sum::<u32>() as usize).sum()
    }

    /// Largest outer index length.
    pub fn max_len(&self) -> usize {
        self.factors.iter().map(|f| f.index.len()).max().unwrap_or(0)
    }

    pub fn is_peak(&self) -> bool {
        self.factors.iter().any(|f| matches!(f.family, Family::Peak(_)))
    }

    pub fn eval(&self, ctx: TruncationContext) -> Result<Value> {
        if self.is_peak() {
            let mut acc: Option<PeakElement> = None;
            for f in &self.factors {
                let Family::Peak(basis) = f.family else {
                    return Err(KhopfError::InvalidIndex("cannot mix multipeak and polynomial factors".into()));
                };
                if f.skew.is_some() {
                    return Err(KhopfError::InvalidIndex("multipeak factors take no skew index".into()));
                }
                let x = PeakElement::basis_element(basis, PeakComposition::new(f.index.clone())?);
                acc = Some(match acc {
                    None => x,
                    Some(a) => a.try_mul(&crate::peakalg::convert(&x, a.basis()))?,
                });
            }
            return Ok(Value::Peak(acc.expect("expressions are nonempty")));
        }
        let mut acc = TruncPoly::one(ctx);
        for f in &self.factors {
            acc = acc.try_mul(&factor_poly(f, ctx)?)?;
        }
        Ok(Value::Poly(acc))
    }
}

pub fn factor_poly(f: &Factor, ctx: TruncationContext) -> Result<TruncPoly> {
    match (f.family, &f.skew) {
        (Family::Sym(t), None) => sym_basis(t, &Partition::new(f.index.clone())?, ctx),
        (Family::Sym(t), Some((Skew::Single, mu))) => {
            sym_basis_skew(t, &Partition::new(f.index.clone())?, &Partition::new(mu.clone())?, ctx)
        }
        (Family::Sym(t), Some((Skew::Double, lam))) => {
            let slash = match t {
                SymFamily::GP => SlashFamily::GP,
                SymFamily::GQ => SlashFamily::GQ,
                _ => return Err(KhopfError::InvalidIndex(format!("'//' is defined for GP and GQ, not {}", t.name()))),
            };
            slashslash(slash, &StrictPartition::new(f.index.clone())?, &StrictPartition::new(lam.clone())?, ctx)
        }
        (Family::Qsym(t), None) => qsym_basis(t, &Composition::new(f.index.clone())?, ctx),
        (Family::Qsym(t), Some(_)) => Err(KhopfError::InvalidIndex(format!("{} takes no skew index", t.name()))),
        (Family::Peak(b), _) => Err(KhopfError::InvalidIndex(format!("{} is not a polynomial family", b.name()))),
    }
}
