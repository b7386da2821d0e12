use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::elim::Coords;
use crate::error::{KhopfError, Result};
use crate::exactpoly::{monomial_quasisymmetric, TruncPoly, TruncationContext};
use crate::memo::Memo;
use crate::shapes::{compositions, peak_compositions, Composition};
use crate::tableaux::{Content, Layout, Mask, Rel, Weight};

/// Quasisymmetric (pseudo)bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QBasisTag {
    /// Monomial quasisymmetric functions.
    M,
    /// Fundamental quasisymmetric functions (the `beta = 0` case of `L`).
    F,
    /// Multi-fundamental functions `L_alpha`.
    L,
    /// K-theoretic peak functions `K_alpha`.
    K,
    /// The companion family `Kbar_alpha`.
    Kbar,
    /// Multiset series; `(-1)^{|alpha|}` times it is the antipode of `K` at the flattened index.
    KAntipode,
}

impl QBasisTag {
    pub fn name(&self) -> &'static str {
        match self {
            QBasisTag::M => "M",
            QBasisTag::F => "F",
            QBasisTag::L => "L",
            QBasisTag::K => "K",
            QBasisTag::Kbar => "Kbar",
            QBasisTag::KAntipode => "K_antipode",
        }
    }

    /// Whether indices must be peak compositions.
    pub fn peak_indexed(&self) -> bool {
        matches!(self, QBasisTag::K | QBasisTag::Kbar | QBasisTag::KAntipode)
    }

    /// Indices of size `n`.
    pub fn indices(&self, n: u32) -> Vec<Composition> {
        if self.peak_indexed() {
            peak_compositions(n).into_iter().map(|p| p.into_composition()).collect()
        } else {
            compositions(n)
        }
    }
}

impl fmt::Display for QBasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for QBasisTag {
    type Err = KhopfError;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "M" => QBasisTag::M,
            "F" => QBasisTag::F,
            "L" => QBasisTag::L,
            "K" => QBasisTag::K,
            "Kbar" => QBasisTag::Kbar,
            "K_antipode" | "KAntipode" => QBasisTag::KAntipode,
            _ => return Err(KhopfError::Parse(format!("unknown quasisymmetric family {s:?}"))),
        })
    }
}

type Key = (QBasisTag, Vec<u32>, TruncationContext);
static POLYS: Memo<Key, TruncPoly> = Memo::new();
static COORDS: Memo<Key, Coords> = Memo::new();

/// The basis element `tag_alpha`, truncated to `ctx`.
pub fn qsym_basis(tag: QBasisTag, alpha: &Composition, ctx: TruncationContext) -> Result<TruncPoly> {
    Ok((*qsym_basis_arc(tag, alpha, ctx)?).clone())
}

pub(crate) fn qsym_basis_arc(tag: QBasisTag, alpha: &Composition, ctx: TruncationContext) -> Result<Arc<TruncPoly>> {
    if tag.peak_indexed() && !alpha.is_peak() {
        return Err(KhopfError::InvalidIndex(format!("{tag} requires a peak composition, got {alpha}")));
    }
    POLYS.get_or_try(&(tag, alpha.parts().to_vec(), ctx), || Ok(compute(tag, alpha, ctx)))
}

/// Monomial quasisymmetric coordinates of a basis element.
pub(crate) fn qsym_coords(tag: QBasisTag, alpha: &Composition, ctx: TruncationContext) -> Result<Arc<Coords>> {
    COORDS.get_or_try(&(tag, alpha.parts().to_vec(), ctx), || {
        if tag == QBasisTag::M {
            let mut c = Coords::new();
            if alpha.len() <= ctx.n && alpha.size() as usize <= ctx.d {
                c.insert(alpha.parts().to_vec(), crate::exactpoly::BetaPoly::one());
            }
            return Ok(c);
        }
        Ok(qsym_basis_arc(tag, alpha, ctx)?.packed_coords())
    })
}

fn compute(tag: QBasisTag, alpha: &Composition, ctx: TruncationContext) -> TruncPoly {
    let n = alpha.size() as usize;
    let iset = alpha.interval_set();
    // Relation between positions i and i+1 (1-based i).
    let rel = |i: usize, at: Rel, off: Rel| if iset.contains(&(i as u32)) { at } else { off };
    match tag {
        QBasisTag::M => monomial_quasisymmetric(alpha.parts(), ctx),
        QBasisTag::F | QBasisTag::L => {
            let rels: Vec<Rel> = (1..n).map(|i| rel(i, Rel::Strict, Rel::Row)).collect();
            let content = if tag == QBasisTag::F { Content::Single } else { Content::Set };
            Layout::chain(&rels, &vec![Mask::Unprimed; n], content, Weight::Letters { sign: 1 }).generate(ctx)
        }
        QBasisTag::K | QBasisTag::Kbar | QBasisTag::KAntipode => {
            let rels: Vec<Rel> = (1..n).map(|i| rel(i, Rel::Col, Rel::Row)).collect();
            let mut masks = vec![Mask::Any; n];
            if tag == QBasisTag::Kbar && n > 0 {
                masks[0] = Mask::Unprimed;
                for &p in &iset {
                    masks[p as usize] = Mask::Unprimed;
                }
            }
            let (content, sign) = if tag == QBasisTag::KAntipode { (Content::Multiset, -1) } else { (Content::Set, 1) };
            Layout::chain(&rels, &masks, content, Weight::Letters { sign }).generate(ctx)
        }
    }
}
