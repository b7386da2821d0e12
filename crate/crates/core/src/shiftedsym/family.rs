use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::elim::{Coords, Direction};
use crate::error::{KhopfError, Result};
use crate::exactpoly::{TruncPoly, TruncationContext};
use crate::memo::Memo;
use crate::shapes::{corner_removals, partitions, strict_partitions, Partition, StrictPartition};
use crate::tableaux::{Content, Layout, Mask, Rel, Weight, PRIMED_DIAGONAL};

/// Symmetric function families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymFamily {
    /// Schur functions `s`.
    S,
    /// Schur `P`-functions.
    P,
    /// Schur `Q`-functions.
    Q,
    /// Stable Grothendieck polynomials `G`.
    G,
    /// Dual stable Grothendieck polynomials `g`.
    SmallG,
    /// K-theoretic Schur `P`-functions `GP`.
    GP,
    /// K-theoretic Schur `Q`-functions `GQ`.
    GQ,
    /// Dual K-theoretic Schur `P`-functions `gp`.
    SmallGP,
    /// Dual K-theoretic Schur `Q`-functions `gq`.
    SmallGQ,
    /// Multiset-valued `P`-series `JP`.
    JP,
    /// Multiset-valued `Q`-series `JQ`.
    JQ,
    /// Bar tableau `P`-functions `jp`.
    SmallJP,
    /// Bar tableau `Q`-functions `jq`.
    SmallJQ,
    /// Conjugate stable Grothendieck polynomials `J`.
    J,
    /// Conjugate dual stable Grothendieck polynomials `j`.
    SmallJ,
}

impl SymFamily {
    pub const ALL: [SymFamily; 15] = [
        SymFamily::S,
        SymFamily::P,
        SymFamily::Q,
        SymFamily::G,
        SymFamily::SmallG,
        SymFamily::GP,
        SymFamily::GQ,
        SymFamily::SmallGP,
        SymFamily::SmallGQ,
        SymFamily::JP,
        SymFamily::JQ,
        SymFamily::SmallJP,
        SymFamily::SmallJQ,
        SymFamily::J,
        SymFamily::SmallJ,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SymFamily::S => "s",
            SymFamily::P => "P",
            SymFamily::Q => "Q",
            SymFamily::G => "G",
            SymFamily::SmallG => "g",
            SymFamily::GP => "GP",
            SymFamily::GQ => "GQ",
            SymFamily::SmallGP => "gp",
            SymFamily::SmallGQ => "gq",
            SymFamily::JP => "JP",
            SymFamily::JQ => "JQ",
            SymFamily::SmallJP => "jp",
            SymFamily::SmallJQ => "jq",
            SymFamily::J => "J",
            SymFamily::SmallJ => "j",
        }
    }

    /// Indexed by strict partitions.
    pub fn is_shifted(&self) -> bool {
        use SymFamily::*;
        matches!(self, P | Q | GP | GQ | SmallGP | SmallGQ | JP | JQ | SmallJP | SmallJQ)
    }

    /// Elements have unbounded degree (a pseudobasis).
    pub fn is_pseudobasis(&self) -> bool {
        use SymFamily::*;
        matches!(self, G | GP | GQ | JP | JQ | J)
    }

    pub(crate) fn direction(&self) -> Direction {
        use SymFamily::*;
        match self {
            SmallG | SmallGP | SmallGQ | SmallJP | SmallJQ | SmallJ => Direction::Descending,
            _ => Direction::Ascending,
        }
    }

    /// Indices of size `n`.
    pub fn indices(&self, n: u32) -> Vec<Partition> {
        if self.is_shifted() {
            strict_partitions(n).into_iter().map(|p| p.as_partition().clone()).collect()
        } else {
            partitions(n)
        }
    }

    pub fn check_index(&self, p: &Partition) -> Result<()> {
        if self.is_shifted() && !p.is_strict() {
            return Err(KhopfError::InvalidIndex(format!("{} requires a strict partition, got {p}", self.name())));
        }
        Ok(())
    }
}

impl fmt::Display for SymFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SymFamily {
    type Err = KhopfError;
    fn from_str(s: &str) -> Result<Self> {
        SymFamily::ALL
            .iter()
            .find(|t| t.name() == s)
            .copied()
            .ok_or_else(|| KhopfError::Parse(format!("unknown symmetric family {s:?}")))
    }
}

type Key = (SymFamily, Vec<u32>, Vec<u32>, TruncationContext);
static POLYS: Memo<Key, TruncPoly> = Memo::new();
static COORDS: Memo<(SymFamily, Vec<u32>, TruncationContext), Coords> = Memo::new();

/// The straight-shape element `tag_lambda`.
pub fn sym_basis(tag: SymFamily, lambda: &Partition, ctx: TruncationContext) -> Result<TruncPoly> {
    Ok((*sym_basis_arc(tag, lambda, &Partition::empty(), ctx)?).clone())
}

/// The skew element `tag_{lambda/mu}`; zero when `mu` is not contained in `lambda`.
pub fn sym_basis_skew(tag: SymFamily, lambda: &Partition, mu: &Partition, ctx: TruncationContext) -> Result<TruncPoly> {
    Ok((*sym_basis_arc(tag, lambda, mu, ctx)?).clone())
}

pub(crate) fn sym_basis_arc(
    tag: SymFamily,
    lambda: &Partition,
    mu: &Partition,
    ctx: TruncationContext,
) -> Result<Arc<TruncPoly>> {
    tag.check_index(lambda)?;
    tag.check_index(mu)?;
    POLYS.get_or_try(&(tag, lambda.parts().to_vec(), mu.parts().to_vec(), ctx), || {
        if !lambda.contains(mu) {
            return Ok(TruncPoly::zero(ctx));
        }
        compute(tag, lambda, mu, ctx)
    })
}

/// Monomial symmetric coordinates of `tag_lambda`.
pub(crate) fn sym_coords(tag: SymFamily, lambda: &Partition, ctx: TruncationContext) -> Result<Arc<Coords>> {
    COORDS.get_or_try(&(tag, lambda.parts().to_vec(), ctx), || {
        Ok(sym_basis_arc(tag, lambda, &Partition::empty(), ctx)?.partition_coords())
    })
}

fn strict(p: &Partition) -> StrictPartition {
    StrictPartition::try_from(p.clone()).expect("index checked")
}

fn compute(tag: SymFamily, lambda: &Partition, mu: &Partition, ctx: TruncationContext) -> Result<TruncPoly> {
    use SymFamily::*;
    let shifted = |row: Rel, col: Rel, diag: Option<Mask>, content: Content, weight: Weight| {
        Layout::shifted(&strict(lambda), &strict(mu), row, col, diag, content, weight).generate(ctx)
    };
    let young = |row: Rel, col: Rel, content: Content, weight: Weight| {
        Layout::young(lambda, mu, row, col, Mask::Unprimed, content, weight).generate(ctx)
    };
    let letters = Weight::Letters { sign: 1 };
    let no_prime_diag = Some(Mask::Unprimed);
    Ok(match tag {
        S => young(Rel::Row, Rel::Strict, Content::Single, letters),
        G => young(Rel::Row, Rel::Strict, Content::Set, letters),
        SmallG => young(Rel::Weak, Rel::Weak, Content::Single, Weight::Rpp),
        P | Q => {
            // Lowest-degree part of GP / GQ.
            let c0 = TruncationContext::with_beta_cap(ctx.n, ctx.d, 0)?;
            let diag = if tag == P { no_prime_diag } else { None };
            Layout::shifted(&strict(lambda), &strict(mu), Rel::Row, Rel::Col, diag, Content::Set, letters)
                .generate(c0)
                .recontext(ctx)
        }
        GP => shifted(Rel::Row, Rel::Col, no_prime_diag, Content::Set, letters),
        GQ => shifted(Rel::Row, Rel::Col, None, Content::Set, letters),
        SmallGP => shifted(Rel::Weak, Rel::Weak, PRIMED_DIAGONAL, Content::Single, Weight::Rpp),
        SmallGQ => shifted(Rel::Weak, Rel::Weak, None, Content::Single, Weight::Rpp),
        JP => shifted(Rel::Row, Rel::Col, no_prime_diag, Content::Multiset, Weight::Letters { sign: -1 }),
        JQ => shifted(Rel::Row, Rel::Col, None, Content::Multiset, Weight::Letters { sign: -1 }),
        SmallJP => shifted(Rel::Row, Rel::Col, no_prime_diag, Content::Single, Weight::Bar),
        SmallJQ => shifted(Rel::Row, Rel::Col, None, Content::Single, Weight::Bar),
        J | SmallJ => {
            let base = if tag == J { G } else { SmallG };
            // (-1)^{|lambda|} S(f^{(beta)}) = omega(f^{(-beta)}).
            let f = sym_basis_arc(base, lambda, mu, ctx)?.negate_beta();
            super::expand::omega_sym(&f)?
        }
    })
}

/// Which double-slash skew family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlashFamily {
    GP,
    GQ,
}

impl SlashFamily {
    pub fn family(&self) -> SymFamily {
        match self {
            SlashFamily::GP => SymFamily::GP,
            SlashFamily::GQ => SymFamily::GQ,
        }
    }
}

/// `tag_{nu//lambda} = sum beta^{|lambda|-|mu|} tag_{nu/mu}` over `mu` obtained by
/// deleting removable corners of `lambda`; zero unless `lambda ⊆ nu`.
pub fn slashslash(
    tag: SlashFamily,
    nu: &StrictPartition,
    lambda: &StrictPartition,
    ctx: TruncationContext,
) -> Result<TruncPoly> {
    let mut r = TruncPoly::zero(ctx);
    if !nu.contains(lambda) {
        return Ok(r);
    }
    let beta = TruncPoly::beta(ctx);
    for mu in corner_removals(lambda) {
        let k = lambda.size() - mu.size();
        let term = sym_basis_arc(tag.family(), nu, &mu, ctx)?;
        r = &r + &(&*term * &beta.pow(k));
    }
    Ok(r)
}
