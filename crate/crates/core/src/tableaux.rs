//! Generic enumeration of fillings of a cell poset by letters of the primed
//! alphabet, with generating-function weights.
//!
//! Letters are coded as `i' -> 2i-1`, `i -> 2i`.

use std::collections::HashMap;

use crate::exactpoly::{binomial, Monomial, TruncPoly, TruncationContext, MAX_VARS};
use crate::shapes::{young_diagram, Partition, ShiftedDiagram, StrictPartition};

/// Constraint between a cell and a predecessor when `max(pred) == min(cell)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Rel {
    /// Shared letter must be unprimed.
    Row,
    /// Shared letter must be primed.
    Col,
    /// No shared letter.
    Strict,
    /// Any shared letter.
    Weak,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Mask {
    Any,
    Unprimed,
    Primed,
}

impl Mask {
    fn allows(self, code: u8) -> bool {
        match self {
            Mask::Any => true,
            Mask::Unprimed => code.is_multiple_of(2),
            Mask::Primed => code % 2 == 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Content {
    Single,
    Set,
    Multiset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Weight {
    /// `sign^(|T| - cells) beta^(|T| - cells) x^T`.
    Letters { sign: i64 },
    /// Reverse plane partition weight: `(-beta)^(cells - |wt|) x^wt`.
    Rpp,
    /// Bar tableau weight summed over block partitions of each run.
    Bar,
}

#[derive(Clone, Debug)]
pub(crate) struct Cell {
    pub left: Option<(usize, Rel)>,
    pub below: Option<(usize, Rel)>,
    pub mask: Mask,
}

#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub cells: Vec<Cell>,
    pub content: Content,
    pub weight: Weight,
}

pub(crate) const PRIMED_DIAGONAL: Option<Mask> = Some(Mask::Primed);

impl Layout {
    /// Shifted skew shape; `diag` restricts diagonal cells.
    pub fn shifted(
        lambda: &StrictPartition,
        mu: &StrictPartition,
        row_rel: Rel,
        col_rel: Rel,
        diag: Option<Mask>,
        content: Content,
        weight: Weight,
    ) -> Self {
        let d = ShiftedDiagram::skew(lambda, mu).expect("caller checks containment");
        Self::from_boxes(d.boxes(), row_rel, col_rel, Mask::Any, diag, content, weight)
    }

    /// Unshifted skew shape, letters restricted by `mask`.
    pub fn young(
        lambda: &Partition,
        mu: &Partition,
        row_rel: Rel,
        col_rel: Rel,
        mask: Mask,
        content: Content,
        weight: Weight,
    ) -> Self {
        let boxes = young_diagram(lambda, mu).expect("caller checks containment");
        Self::from_boxes(&boxes, row_rel, col_rel, mask, None, content, weight)
    }

    fn from_boxes(
        boxes: &[(u32, u32)],
        row_rel: Rel,
        col_rel: Rel,
        mask: Mask,
        diag: Option<Mask>,
        content: Content,
        weight: Weight,
    ) -> Self {
        let pos: HashMap<(u32, u32), usize> = boxes.iter().enumerate().map(|(i, b)| (*b, i)).collect();
        let cells = boxes
            .iter()
            .map(|&(r, c)| Cell {
                left: pos.get(&(r, c.wrapping_sub(1))).map(|&i| (i, row_rel)),
                below: pos.get(&(r.wrapping_sub(1), c)).map(|&i| (i, col_rel)),
                mask: if r == c { diag.unwrap_or(mask) } else { mask },
            })
            .collect();
        Layout { cells, content, weight }
    }

    /// A chain `S_1, S_2, ...` with relation `rels[i]` between `S_i` and `S_{i+1}`.
    pub fn chain(rels: &[Rel], masks: &[Mask], content: Content, weight: Weight) -> Self {
        let cells = masks
            .iter()
            .enumerate()
            .map(|(i, &m)| Cell { left: if i == 0 { None } else { Some((i - 1, rels[i - 1])) }, below: None, mask: m })
            .collect();
        Layout { cells, content, weight }
    }

    /// Generating function truncated to `ctx`.
    pub fn generate(&self, ctx: TruncationContext) -> TruncPoly {
        let mut acc: HashMap<Monomial, i64> = HashMap::new();
        let ncells = self.cells.len();
        let max_letters = match self.content {
            Content::Single => ncells,
            _ => ctx.d.min(ncells + ctx.b),
        };
        if ncells > max_letters || (self.content != Content::Single && ncells > ctx.d) {
            return TruncPoly::zero(ctx);
        }
        let mut st = State {
            layout: self,
            ctx,
            top: 2 * ctx.n as u8,
            max_letters,
            contents: vec![Vec::new(); ncells],
            used: 0,
            acc: &mut acc,
        };
        st.dfs(0);
        TruncPoly::from_int_terms(ctx, acc)
    }
}

struct State<'a> {
    layout: &'a Layout,
    ctx: TruncationContext,
    top: u8,
    max_letters: usize,
    contents: Vec<Vec<u8>>,
    used: usize,
    acc: &'a mut HashMap<Monomial, i64>,
}

impl State<'_> {
    fn dfs(&mut self, i: usize) {
        let ncells = self.layout.cells.len();
        if i == ncells {
            self.emit();
            return;
        }
        let cell = &self.layout.cells[i];
        let preds: Vec<(u8, Rel)> = [cell.left, cell.below]
            .iter()
            .flatten()
            .map(|&(p, r)| (*self.contents[p].last().expect("filled"), r))
            .collect();
        let lo = preds.iter().map(|p| p.0).max().unwrap_or(1).max(1);
        let budget = self.max_letters - self.used - (ncells - i - 1);
        let mask = cell.mask;
        for m in lo..=self.top {
            if !mask.allows(m) {
                continue;
            }
            let ok = preds.iter().all(|&(pm, r)| {
                pm != m
                    || match r {
                        Rel::Row => m % 2 == 0,
                        Rel::Col => m % 2 == 1,
                        Rel::Strict => false,
                        Rel::Weak => true,
                    }
            });
            if !ok {
                continue;
            }
            match self.layout.content {
                Content::Single => {
                    self.contents[i] = vec![m];
                    self.used += 1;
                    self.dfs(i + 1);
                    self.used -= 1;
                }
                Content::Set => {
                    let mut cur = vec![m];
                    self.extend_set(i, m + 1, budget, mask, &mut cur);
                }
                Content::Multiset => {
                    let mut cur = vec![m];
                    self.extend_multiset(i, m, budget, mask, &mut cur);
                }
            }
        }
    }

    fn place(&mut self, i: usize, cur: &[u8]) {
        self.contents[i] = cur.to_vec();
        self.used += cur.len();
        self.dfs(i + 1);
        self.used -= cur.len();
    }

    fn extend_set(&mut self, i: usize, from: u8, budget: usize, mask: Mask, cur: &mut Vec<u8>) {
        self.place(i, cur);
        if cur.len() >= budget {
            return;
        }
        for c in from..=self.top {
            if mask.allows(c) {
                cur.push(c);
                self.extend_set(i, c + 1, budget, mask, cur);
                cur.pop();
            }
        }
    }

    fn extend_multiset(&mut self, i: usize, from: u8, budget: usize, mask: Mask, cur: &mut Vec<u8>) {
        self.place(i, cur);
        if cur.len() >= budget {
            return;
        }
        for c in from..=self.top {
            if mask.allows(c) {
                cur.push(c);
                self.extend_multiset(i, c, budget, mask, cur);
                cur.pop();
            }
        }
    }

    fn emit(&mut self) {
        let ncells = self.layout.cells.len();
        let d = self.ctx.d as u32;
        let b = self.ctx.b as u32;
        let var = |c: u8| (c as usize).div_ceil(2) - 1;
        match self.layout.weight {
            Weight::Letters { sign } => {
                let mut e = [0u32; MAX_VARS];
                for cont in &self.contents {
                    for &c in cont {
                        e[var(c)] += 1;
                    }
                }
                let k = (self.used - ncells) as u32;
                if self.used as u32 > d || k > b {
                    return;
                }
                let w = if sign < 0 && k % 2 == 1 { -1 } else { 1 };
                *self.acc.entry(Monomial::new(&e, k)).or_insert(0) += w;
            }
            Weight::Rpp => {
                let mut e = [0u32; MAX_VARS];
                let mut total = 0u32;
                for (i, cell) in self.layout.cells.iter().enumerate() {
                    let c = self.contents[i][0];
                    let nb = if c.is_multiple_of(2) { cell.below } else { cell.left };
                    let repeat = nb.is_some_and(|(p, _)| self.contents[p][0] == c);
                    if !repeat {
                        e[var(c)] += 1;
                        total += 1;
                    }
                }
                let k = ncells as u32 - total;
                if total > d || k > b {
                    return;
                }
                let w = if k % 2 == 1 { -1 } else { 1 };
                *self.acc.entry(Monomial::new(&e, k)).or_insert(0) += w;
            }
            Weight::Bar => {
                // Runs: horizontal for unprimed letters, vertical for primed ones.
                let mut run_of = vec![usize::MAX; ncells];
                let mut runs: Vec<(usize, u32)> = Vec::new();
                for (i, cell) in self.layout.cells.iter().enumerate() {
                    let c = self.contents[i][0];
                    let nb = if c.is_multiple_of(2) { cell.left } else { cell.below };
                    match nb {
                        Some((p, _)) if self.contents[p][0] == c => {
                            run_of[i] = run_of[p];
                            runs[run_of[p]].1 += 1;
                        }
                        _ => {
                            run_of[i] = runs.len();
                            runs.push((var(c), 1));
                        }
                    }
                }
                // Each run of length r contributes sum_k C(r-1, k-1) beta^(r-k) x^k.
                let mut terms: Vec<(Monomial, i64)> = vec![(Monomial::one(), 1)];
                for &(v, r) in &runs {
                    let mut next = Vec::new();
                    for (m, w) in &terms {
                        for k in 1..=r {
                            let nm = m.with_exp(v, m.exp(v) + k).with_beta(m.beta() + r - k);
                            if nm.xdeg() > d || nm.beta() > b {
                                continue;
                            }
                            next.push((nm, w * binomial((r - 1) as u64, (k - 1) as u64)));
                        }
                    }
                    terms = next;
                }
                for (m, w) in terms {
                    *self.acc.entry(m).or_insert(0) += w;
                }
            }
        }
    }
}
