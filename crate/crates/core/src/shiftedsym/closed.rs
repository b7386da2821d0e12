use std::collections::BTreeMap;

use crate::exactpoly::{frac, pow2, BetaPoly};
use crate::shapes::{cols, StrictPartition};

/// Closed-form changes of basis between the `Q` and `P` families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedChange {
    /// `GQ_mu` as a (finite) combination of `GP_lambda`, `lambda ⊇ mu`.
    GqToGp,
    /// `gq_lambda` as a combination of `gp_mu`, `mu ⊆ lambda`.
    SmallGqToGp,
}

/// `2^l (-1)^cols (-beta/2)^k` for a vertical strip of `k` boxes.
fn strip_weight(l: usize, ncols: usize, k: usize) -> BetaPoly {
    let sign: i64 = if (ncols + k).is_multiple_of(2) { 1 } else { -1 };
    let c = pow2(l as i64 - k as i64) * frac(sign, 1);
    BetaPoly::monomial(c, k)
}

/// Coefficients from the vertical-strip formulas; both sums range over
/// same-length pairs `mu ⊆ lambda` whose difference is a vertical strip.
pub fn change_of_basis_closed(kind: ClosedChange, index: &StrictPartition) -> BTreeMap<StrictPartition, BetaPoly> {
    let l = index.len();
    let mut out = BTreeMap::new();
    for mask in 0u32..(1 << l) {
        let step = |i: usize| (mask >> i) & 1;
        let parts: Vec<u32> = match kind {
            ClosedChange::GqToGp => (0..l).map(|i| index.part(i) + step(i)).collect(),
            ClosedChange::SmallGqToGp => {
                if (0..l).any(|i| index.part(i) == step(i)) {
                    continue;
                }
                (0..l).map(|i| index.part(i) - step(i)).collect()
            }
        };
        let Ok(other) = StrictPartition::new(parts) else { continue };
        let (big, small) = match kind {
            ClosedChange::GqToGp => (&other, index),
            ClosedChange::SmallGqToGp => (index, &other),
        };
        let k = (big.size() - small.size()) as usize;
        let ncols = cols(big, small).expect("containment by construction");
        out.insert(other.clone(), strip_weight(l, ncols, k));
    }
    out
}
