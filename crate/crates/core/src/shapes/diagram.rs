use std::collections::BTreeSet;

use super::partition::{Partition, StrictPartition};
use crate::error::{KhopfError, Result};

/// Boxes of a (possibly skew) diagram, as 1-based `(row, column)` pairs in
/// row-reading order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftedDiagram {
    boxes: Vec<(u32, u32)>,
}

impl ShiftedDiagram {
    /// `SD_{lambda/mu} = {(i, i+j-1) : mu_i < j <= lambda_i}`.
    pub fn skew(lambda: &StrictPartition, mu: &StrictPartition) -> Result<Self> {
        if !lambda.contains(mu) {
            return Err(KhopfError::InvalidIndex(format!("{mu} is not contained in {lambda}")));
        }
        let mut boxes = Vec::new();
        for i in 0..lambda.len() {
            let row = i as u32 + 1;
            for j in mu.part(i) + 1..=lambda.part(i) {
                boxes.push((row, row + j - 1));
            }
        }
        Ok(ShiftedDiagram { boxes })
    }

    pub fn straight(lambda: &StrictPartition) -> Self {
        Self::skew(lambda, &StrictPartition::empty()).expect("empty is contained")
    }

    pub fn boxes(&self) -> &[(u32, u32)] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains_box(&self, b: (u32, u32)) -> bool {
        self.boxes.contains(&b)
    }

    /// No two boxes in the same row.
    pub fn is_vertical_strip(&self) -> bool {
        let rows: BTreeSet<u32> = self.boxes.iter().map(|b| b.0).collect();
        rows.len() == self.boxes.len()
    }

    /// Number of distinct columns occupied.
    pub fn cols(&self) -> usize {
        self.boxes.iter().map(|b| b.1).collect::<BTreeSet<_>>().len()
    }
}

/// Boxes of an unshifted Young diagram `lambda/mu`, row-reading order.
pub fn young_diagram(lambda: &Partition, mu: &Partition) -> Result<Vec<(u32, u32)>> {
    if !lambda.contains(mu) {
        return Err(KhopfError::InvalidIndex(format!("{mu} is not contained in {lambda}")));
    }
    let mut boxes = Vec::new();
    for i in 0..lambda.len() {
        for j in mu.part(i) + 1..=lambda.part(i) {
            boxes.push((i as u32 + 1, j));
        }
    }
    Ok(boxes)
}

/// Boxes of `SD_lambda` with no box directly right of or above them.
pub fn removable_corners(lambda: &StrictPartition) -> Vec<(u32, u32)> {
    let d = ShiftedDiagram::straight(lambda);
    d.boxes()
        .iter()
        .cloned()
        .filter(|&(r, c)| !d.contains_box((r, c + 1)) && !d.contains_box((r + 1, c)))
        .collect()
}

/// All strict `mu ⊆ lambda` with `SD_{lambda/mu}` made of removable corners.
pub fn corner_removals(lambda: &StrictPartition) -> Vec<StrictPartition> {
    let corners = removable_corners(lambda);
    let mut out = Vec::new();
    for mask in 0u32..(1 << corners.len()) {
        let mut parts: Vec<u32> = lambda.parts().to_vec();
        for (k, &(r, _)) in corners.iter().enumerate() {
            if mask >> k & 1 == 1 {
                parts[r as usize - 1] -= 1;
            }
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        out.push(StrictPartition::new(parts).expect("removing corners keeps strictness"));
    }
    out.sort();
    out
}

/// `SD_{lambda/mu}` is a vertical strip and the lengths agree.
pub fn is_vertical_strip(lambda: &StrictPartition, mu: &StrictPartition) -> bool {
    lambda.len() == mu.len()
        && lambda.contains(mu)
        && ShiftedDiagram::skew(lambda, mu).is_ok_and(|d| d.is_vertical_strip())
}

/// Number of columns of `SD_{lambda/mu}`.
pub fn cols(lambda: &StrictPartition, mu: &StrictPartition) -> Result<usize> {
    Ok(ShiftedDiagram::skew(lambda, mu)?.cols())
}
