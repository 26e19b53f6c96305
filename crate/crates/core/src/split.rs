//! Coordinate splitting of basic sets.
//!
//! A basic set `X = {b : f(b) < l}` over an `r`-grid is rewritten as
//! `X = {b^r ⊕ b_r : f^r(b^r) < f_r(b_r)}` where `f^r` lives on the first
//! `r − 1` axes and `f_r` on the last one. Both maps land in a single linear
//! order `T`, obtained by topologically sorting the product order on the
//! (quotiented) first axes together with the closure of the relation `◁`.

use alloc::collections::BTreeMap;
use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

use fixedbitset::FixedBitSet;

use crate::grid::{axis_ranks, check_monotone, strides, BasicSetCert, MonotoneTable, Odometer};
use crate::{Error, Result};

/// A node of the split order `T = B^r ⊔ B_r` (after quotienting).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitNode {
    /// An equivalence class of `B^r` (tuples over the first `r − 1` axes).
    Prefix(usize),
    /// An equivalence class of the last axis `B_r`.
    Last(usize),
}

/// The relations built on the way to a split, exposed for inspection.
///
/// Nodes are numbered with prefix classes first (`0..prefix_classes`) and
/// last-axis classes after them.
#[derive(Clone, Debug)]
pub struct SplitRelations {
    /// Per prefix class, its tuple of per-axis ranks under `≤_j`.
    pub prefix_keys: Vec<Vec<usize>>,
    /// Per last-axis class, its rank under `≤_r`.
    pub last_keys: Vec<usize>,
    /// Class of every element of `B^r` (row-major over the first axes).
    pub prefix_class: Vec<usize>,
    /// Class of every label of `B_r`.
    pub last_class: Vec<usize>,
    /// `u ◁ v`.
    pub triangle: Vec<FixedBitSet>,
    /// `◁ ∪ ◁∘◁`.
    pub closure: Vec<FixedBitSet>,
    /// The strict product order `<^r` on prefix classes.
    pub product: Vec<FixedBitSet>,
}

impl SplitRelations {
    pub fn prefix_classes(&self) -> usize {
        self.prefix_keys.len()
    }

    pub fn node_count(&self) -> usize {
        self.prefix_keys.len() + self.last_keys.len()
    }

    pub fn node(&self, index: usize) -> SplitNode {
        let p = self.prefix_classes();
        if index < p {
            SplitNode::Prefix(index)
        } else {
            SplitNode::Last(index - p)
        }
    }

    /// Deterministic linear extension of `<^r ∪ ◁^t`; `None` on a cycle.
    pub fn linear_extension(&self) -> Option<Vec<SplitNode>> {
        let n = self.node_count();
        let mut indegree = vec![0usize; n];
        let succ = |u: usize| self.closure[u].ones().chain(self.product[u].ones());
        for u in 0..n {
            for v in succ(u) {
                indegree[v] += 1;
            }
        }
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&u| indegree[u] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(u)) = ready.pop() {
            order.push(self.node(u));
            for v in succ(u) {
                indegree[v] -= 1;
                if indegree[v] == 0 {
                    ready.push(Reverse(v));
                }
            }
        }
        (order.len() == n).then_some(order)
    }
}

/// Class ids by first appearance in label order.
fn classes_by_first_appearance<K: Ord + Clone>(keys: &[K]) -> (Vec<usize>, Vec<K>) {
    let mut ids = BTreeMap::new();
    let mut reps = Vec::new();
    let class = keys
        .iter()
        .map(|k| {
            *ids.entry(k.clone()).or_insert_with(|| {
                reps.push(k.clone());
                reps.len() - 1
            })
        })
        .collect();
    (class, reps)
}

/// Builds `≤_j`, `<^r`, `◁` and `◁ ∪ ◁∘◁` for a strict-form basic set.
pub fn split_relations(x: &BasicSetCert) -> Result<SplitRelations> {
    let grid = x.grid();
    let r = grid.rank();
    if r < 2 {
        return Err(Error::InvalidParameter { name: "grid", detail: "splitting needs rank ≥ 2".into() });
    }
    check_monotone(&x.table).map_err(Error::NotMonotone)?;
    let strict = x.to_strict()?;
    let table: &MonotoneTable = &strict.table;
    let l = strict.threshold;

    let ranks: Vec<Vec<usize>> = (0..r).map(|j| axis_ranks(table, j)).collect();
    let prefix_sizes = &grid.sizes()[..r - 1];
    let last_size = grid.sizes()[r - 1];

    let prefix_tuples: Vec<Vec<usize>> = Odometer::new(prefix_sizes.to_vec())
        .map(|a| a.iter().enumerate().map(|(j, &c)| ranks[j][c]).collect())
        .collect();
    let (prefix_class, prefix_keys) = classes_by_first_appearance(&prefix_tuples);
    let (last_class, last_keys) = classes_by_first_appearance(&ranks[r - 1]);

    // a representative label for every class
    let mut prefix_rep = vec![usize::MAX; prefix_keys.len()];
    for (a, &c) in prefix_class.iter().enumerate().rev() {
        prefix_rep[c] = a;
    }
    let mut last_rep = vec![usize::MAX; last_keys.len()];
    for (b, &c) in last_class.iter().enumerate().rev() {
        last_rep[c] = b;
    }

    let p = prefix_keys.len();
    let n = p + last_keys.len();
    let mut triangle = vec![FixedBitSet::with_capacity(n); n];
    // cell index of (a, b) is a·|B_r| + b because the last axis is fastest
    debug_assert_eq!(strides(grid.sizes())[r - 1], 1);
    for (pa, &a) in prefix_rep.iter().enumerate() {
        for (qb, &b) in last_rep.iter().enumerate() {
            if table.value_at(a * last_size + b) < l {
                triangle[pa].insert(p + qb);
            } else {
                triangle[p + qb].insert(pa);
            }
        }
    }

    let mut closure = triangle.clone();
    for u in 0..n {
        let mut extra = FixedBitSet::with_capacity(n);
        for w in triangle[u].ones() {
            extra.union_with(&triangle[w]);
        }
        closure[u].union_with(&extra);
    }

    let mut product = vec![FixedBitSet::with_capacity(n); n];
    for u in 0..p {
        for v in 0..p {
            if u != v && prefix_keys[u].iter().zip(&prefix_keys[v]).all(|(a, b)| a <= b) {
                product[u].insert(v);
            }
        }
    }

    Ok(SplitRelations { prefix_keys, last_keys, prefix_class, last_class, triangle, closure, product })
}

/// The output of [`coordinate_split`]: `f^r`, `f_r` and the linear order on
/// `T` they map into.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCertificate {
    prefix_sizes: Vec<usize>,
    last_size: usize,
    prefix_class: Vec<usize>,
    last_class: Vec<usize>,
    order: Vec<SplitNode>,
    prefix_rank: Vec<usize>,
    last_rank: Vec<usize>,
}

impl SplitCertificate {
    /// Assembles a certificate from class maps and an order on the classes.
    pub fn from_parts(
        prefix_sizes: Vec<usize>,
        last_size: usize,
        prefix_class: Vec<usize>,
        last_class: Vec<usize>,
        order: Vec<SplitNode>,
    ) -> Result<Self> {
        let bad = |detail: &str| Error::InvalidParameter { name: "certificate", detail: detail.into() };
        if prefix_class.len() != prefix_sizes.iter().product::<usize>() || last_class.len() != last_size {
            return Err(bad("class maps do not match the grid"));
        }
        let prefix_classes = prefix_class.iter().max().map_or(0, |m| m + 1);
        let last_classes = last_class.iter().max().map_or(0, |m| m + 1);
        let mut prefix_pos = vec![usize::MAX; prefix_classes];
        let mut last_pos = vec![usize::MAX; last_classes];
        for (pos, node) in order.iter().enumerate() {
            let slot = match *node {
                SplitNode::Prefix(c) => prefix_pos.get_mut(c),
                SplitNode::Last(c) => last_pos.get_mut(c),
            }
            .ok_or_else(|| bad("order names an unknown class"))?;
            if *slot != usize::MAX {
                return Err(bad("order repeats a class"));
            }
            *slot = pos;
        }
        if prefix_pos.contains(&usize::MAX) || last_pos.contains(&usize::MAX) {
            return Err(bad("order misses a class"));
        }
        let prefix_rank = prefix_class.iter().map(|&c| prefix_pos[c]).collect();
        let last_rank = last_class.iter().map(|&c| last_pos[c]).collect();
        Ok(Self { prefix_sizes, last_size, prefix_class, last_class, order, prefix_rank, last_rank })
    }

    /// `f^r`: position in [`Self::order`] of every element of `B^r`
    /// (row-major over the first `r − 1` axes).
    pub fn fr_map(&self) -> &[usize] {
        &self.prefix_rank
    }

    /// `f_r`: position in [`Self::order`] of every label of `B_r`.
    pub fn fr_last(&self) -> &[usize] {
        &self.last_rank
    }

    pub fn order(&self) -> &[SplitNode] {
        &self.order
    }

    pub fn prefix_sizes(&self) -> &[usize] {
        &self.prefix_sizes
    }

    pub fn last_size(&self) -> usize {
        self.last_size
    }

    pub fn prefix_class(&self) -> &[usize] {
        &self.prefix_class
    }

    pub fn last_class(&self) -> &[usize] {
        &self.last_class
    }
}

/// Splits a basic set along its last axis.
///
/// Non-strict and reversed comparisons are first rewritten in strict form.
/// Fails with [`Error::NotMonotone`] on a non-monotone table; a cycle in
/// `<^r ∪ ◁^t` is reported as [`Error::Internal`].
pub fn coordinate_split(x: &BasicSetCert) -> Result<SplitCertificate> {
    let rel = split_relations(x)?;
    let order = rel
        .linear_extension()
        .ok_or_else(|| Error::Internal("<^r ∪ ◁^t contains a cycle".into()))?;
    let sizes = x.grid().sizes();
    SplitCertificate::from_parts(
        sizes[..sizes.len() - 1].to_vec(),
        sizes[sizes.len() - 1],
        rel.prefix_class,
        rel.last_class,
        order,
    )
}

/// Checks the reconstruction identity cell by cell and that `f^r` strictly
/// extends the product preorder of the first `r − 1` axes.
pub fn verify_split(x: &BasicSetCert, cert: &SplitCertificate) -> bool {
    let grid = x.grid();
    let r = grid.rank();
    if r < 2 || grid.sizes()[..r - 1] != cert.prefix_sizes[..] || grid.sizes()[r - 1] != cert.last_size {
        return false;
    }
    if grid.is_empty() {
        return true;
    }
    if check_monotone(&x.table).is_err() {
        return false;
    }
    let last = cert.last_size;
    for a in 0..cert.prefix_rank.len() {
        for b in 0..last {
            let inside = x.contains_index(a * last + b);
            if inside != (cert.prefix_rank[a] < cert.last_rank[b]) {
                return false;
            }
        }
    }
    // the product preorder is that of the strict form, which reverses the
    // axes for `>` and `≥`
    let Ok(strict) = x.to_strict() else {
        return false;
    };
    let ranks: Vec<Vec<usize>> = (0..r - 1).map(|j| axis_ranks(&strict.table, j)).collect();
    let keys: Vec<Vec<usize>> = Odometer::new(cert.prefix_sizes.clone())
        .map(|a| a.iter().enumerate().map(|(j, &c)| ranks[j][c]).collect())
        .collect();
    for (a, ka) in keys.iter().enumerate() {
        for (b, kb) in keys.iter().enumerate() {
            if !ka.iter().zip(kb).all(|(u, v)| u <= v) {
                continue;
            }
            let (fa, fb) = (cert.prefix_rank[a], cert.prefix_rank[b]);
            let ok = if ka == kb { fa == fb } else { fa < fb };
            if !ok {
                return false;
            }
        }
    }
    true
}
