//! Pivot-halving decomposition of `K_{k,k}`-free sets of bounded
//! grid-complexity on 2-grids.
//!
//! Every basic set is first split into `{f_1(x) < f_2(y)}`. With `h` the
//! smallest value such that at least half of `B_1 ⊔ B_2` maps to `≤ h`, a set
//! `A = B ∩ X_1 ∩ ⋯ ∩ X_s` decomposes as
//!
//! ```text
//! A = (A ∩ B_1^{<h} × B_2^{<h}) ∪ (A ∩ B_1^{>h} × B_2^{>h})
//!   ∪ (A ∩ B_1^{<h} × B_2^{≥h}) ∪ (A ∩ B_1^{=h} × B_2^{>h})
//! ```
//!
//! where the last two pieces lie inside `X_s`, which can then be dropped.

use alloc::vec::Vec;

use crate::grid::{CellSet, GridComplexityCert};
use crate::incidence::is_grid_free;
use crate::split::{coordinate_split, SplitCertificate};
use crate::{Error, Result};

/// How a node was obtained from its parent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Root,
    HalvedLeft,
    HalvedRight,
    StrippedOff,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionNode {
    pub kind: NodeKind,
    /// Labels of `B_1` in this sub-grid.
    pub rows: Vec<usize>,
    /// Labels of `B_2` in this sub-grid.
    pub cols: Vec<usize>,
    /// Number of basic constraints still active (the first `active` of the
    /// certificate).
    pub active: usize,
    /// Pivot `h` (a position in the split order of basic `active − 1`);
    /// `None` at leaves.
    pub pivot: Option<usize>,
    pub children: Vec<usize>,
    /// `|A ∩ rows × cols|`.
    pub cells: usize,
    /// Halving steps on the path from the root.
    pub halvings: usize,
    /// Strip-off steps on the path from the root.
    pub strips: usize,
}

impl DecompositionNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// `n = |rows| + |cols|`.
    pub fn n(&self) -> usize {
        self.rows.len() + self.cols.len()
    }
}

/// The decomposition and its accounting.
#[derive(Clone, Debug)]
pub struct DecompositionTree {
    pub nodes: Vec<DecompositionNode>,
    pub k: usize,
    /// Certified grid-complexity.
    pub s: usize,
    /// `|A|`.
    pub total: usize,
    /// `max |A_v| / (n_v · ln^{s_v}(n_v + 1))` over all nodes `v`, where
    /// `s_v` is the number of constraints active at `v`.
    pub alpha_hat: f64,
    pub max_halvings: usize,
    pub max_strips: usize,
}

impl DecompositionTree {
    pub fn root(&self) -> &DecompositionNode {
        &self.nodes[0]
    }

    pub fn leaves(&self) -> impl Iterator<Item = &DecompositionNode> {
        self.nodes.iter().filter(|n| n.is_leaf())
    }

    /// Per-leaf `(|rows|, |cols|)`.
    pub fn leaf_sizes(&self) -> Vec<(usize, usize)> {
        self.leaves().map(|l| (l.rows.len(), l.cols.len())).collect()
    }

    /// `n = |B_1| + |B_2|` of the root grid.
    pub fn n(&self) -> usize {
        self.root().n()
    }

    /// `⌈log₂ n⌉ + 1`.
    pub fn halving_depth_bound(&self) -> usize {
        let n = self.n().max(1);
        (usize::BITS - (n - 1).leading_zeros()) as usize + 1
    }

    /// `α̂ · n · ln^s(n + 1)`.
    pub fn bound(&self) -> f64 {
        let n = self.n() as f64;
        self.alpha_hat * n * libm::pow(libm::log(n + 1.0), self.s as f64)
    }
}

struct Builder<'a> {
    set: &'a CellSet,
    cols_total: usize,
    splits: Vec<SplitCertificate>,
    k: usize,
    nodes: Vec<DecompositionNode>,
}

impl Builder<'_> {
    fn count(&self, rows: &[usize], cols: &[usize]) -> usize {
        rows.iter()
            .map(|&x| cols.iter().filter(|&&y| self.set.contains_index(x * self.cols_total + y)).count())
            .sum()
    }

    fn build(
        &mut self,
        kind: NodeKind,
        rows: Vec<usize>,
        cols: Vec<usize>,
        active: usize,
        halvings: usize,
        strips: usize,
    ) -> Result<usize> {
        let cells = self.count(&rows, &cols);
        let id = self.nodes.len();
        self.nodes.push(DecompositionNode {
            kind,
            rows,
            cols,
            active,
            pivot: None,
            children: Vec::new(),
            cells,
            halvings,
            strips,
        });
        if cells == 0 {
            return Ok(id);
        }
        if active == 0 {
            let node = &self.nodes[id];
            if node.cells != node.rows.len() * node.cols.len() {
                return Err(Error::Internal("leaf sub-grid is not contained in the set".into()));
            }
            if node.rows.len().min(node.cols.len()) >= self.k {
                return Err(Error::Internal("leaf sub-grid contains a full k × k block".into()));
            }
            return Ok(id);
        }

        let split = &self.splits[active - 1];
        let f1 = split.fr_map();
        let f2 = split.fr_last();
        let (rows, cols) = {
            let node = &self.nodes[id];
            (node.rows.clone(), node.cols.clone())
        };
        let mut values: Vec<usize> = rows.iter().map(|&x| f1[x]).chain(cols.iter().map(|&y| f2[y])).collect();
        values.sort_unstable();
        // smallest h with |{≤ h}| ≥ n/2
        let n = values.len();
        let h = values[n.div_ceil(2) - 1];

        let pick = |labels: &[usize], f: &[usize], keep: &dyn Fn(usize) -> bool| -> Vec<usize> {
            labels.iter().copied().filter(|&v| keep(f[v])).collect()
        };
        let pieces = [
            (NodeKind::HalvedLeft, pick(&rows, f1, &|v| v < h), pick(&cols, f2, &|v| v < h), active),
            (NodeKind::HalvedRight, pick(&rows, f1, &|v| v > h), pick(&cols, f2, &|v| v > h), active),
            (NodeKind::StrippedOff, pick(&rows, f1, &|v| v < h), pick(&cols, f2, &|v| v >= h), active - 1),
            (NodeKind::StrippedOff, pick(&rows, f1, &|v| v == h), pick(&cols, f2, &|v| v > h), active - 1),
        ];
        let mut children = Vec::new();
        for (kind, r, c, a) in pieces {
            if self.count(&r, &c) == 0 {
                continue;
            }
            let (dh, ds) = if a == active { (1, 0) } else { (0, 1) };
            children.push(self.build(kind, r, c, a, halvings + dh, strips + ds)?);
        }
        let node = &mut self.nodes[id];
        node.pivot = Some(h);
        node.children = children;
        Ok(id)
    }
}

/// Decomposes the set certified by `cert` (a 2-grid) down to complexity-0
/// leaves, each a full sub-grid with a side shorter than `k`. Pieces that
/// meet the set in no cell are not materialized.
///
/// The certified set must be `K_{k,k}`-free; otherwise the sub-grid found
/// is returned as [`Error::SubGrid`].
pub fn halving_decomposition_r2(cert: &GridComplexityCert, k: usize, max_cells: usize) -> Result<DecompositionTree> {
    if cert.grid().rank() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: cert.grid().rank() });
    }
    if k < 2 {
        return Err(Error::InvalidParameter { name: "k", detail: "k must be at least 2".into() });
    }
    let set = cert.denoted();
    if let Some(w) = is_grid_free(&set, k, max_cells)? {
        return Err(Error::SubGrid(w));
    }
    let splits = cert.basics().iter().map(coordinate_split).collect::<Result<Vec<_>>>()?;
    let sizes = cert.grid().sizes();
    let mut b = Builder { set: &set, cols_total: sizes[1], splits, k, nodes: Vec::new() };
    let s = cert.complexity();
    b.build(NodeKind::Root, (0..sizes[0]).collect(), (0..sizes[1]).collect(), s, 0, 0)?;
    let nodes = b.nodes;
    let alpha_hat = nodes
        .iter()
        .filter(|v| v.cells > 0)
        .map(|v| {
            let n = v.n() as f64;
            v.cells as f64 / (n * libm::pow(libm::log(n + 1.0), v.active as f64))
        })
        .fold(0.0, f64::max);
    Ok(DecompositionTree {
        k,
        s,
        total: set.len(),
        alpha_hat,
        max_halvings: nodes.iter().map(|v| v.halvings).max().unwrap_or(0),
        max_strips: nodes.iter().map(|v| v.strips).max().unwrap_or(0),
        nodes,
    })
}
