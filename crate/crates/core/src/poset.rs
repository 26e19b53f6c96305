//! Finite posets on `0..n`: covers, descendants, maximum antichains.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

/// Default cap on the size of a set whose maximum antichain is computed.
pub const DEFAULT_ANTICHAIN_CUTOFF: usize = 4096;

/// A strict partial order, stored as `below[x] = {y : y < x}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
}

impl Poset {
    /// Builds the order from a strict comparison `lt(a, b) ⇔ a < b`,
    /// asserting irreflexivity, antisymmetry and transitivity.
    pub fn from_fn(n: usize, mut lt: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) {
                    if a == b {
                        return Err(Error::Internal(alloc::format!("order is not irreflexive at {a}")));
                    }
                    below[b].insert(a);
                    above[a].insert(b);
                }
            }
        }
        let poset = Self { below, above };
        for a in 0..n {
            if poset.above[a].intersection(&poset.below[a]).next().is_some() {
                return Err(Error::Internal(alloc::format!("order is not antisymmetric at {a}")));
            }
            for b in poset.above[a].ones() {
                if !poset.above[a].is_superset(&poset.above[b]) {
                    return Err(Error::Internal(alloc::format!("order is not transitive at {a} < {b}")));
                }
            }
        }
        Ok(poset)
    }

    pub fn len(&self) -> usize {
        self.below.len()
    }

    pub fn is_empty(&self) -> bool {
        self.below.is_empty()
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn below(&self, x: usize) -> &FixedBitSet {
        &self.below[x]
    }

    pub fn above(&self, x: usize) -> &FixedBitSet {
        &self.above[x]
    }

    pub fn full_set(&self) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.len());
        s.insert_range(..);
        s
    }

    /// Children (lower covers) of every element of `within`, relative to the
    /// order restricted to `within`. Entries outside `within` are empty.
    pub fn children(&self, within: &FixedBitSet) -> Vec<FixedBitSet> {
        let n = self.len();
        let mut out = vec![FixedBitSet::with_capacity(n); n];
        for x in within.ones() {
            let mut under = self.below[x].clone();
            under.intersect_with(within);
            let mut kids = under.clone();
            for z in under.ones() {
                kids.difference_with(&self.below[z]);
            }
            out[x] = kids;
        }
        out
    }

    /// Parents (upper covers) relative to `within`.
    pub fn parents(&self, within: &FixedBitSet) -> Vec<FixedBitSet> {
        let children = self.children(within);
        let n = self.len();
        let mut out = vec![FixedBitSet::with_capacity(n); n];
        for (x, kids) in children.iter().enumerate() {
            for y in kids.ones() {
                out[y].insert(x);
            }
        }
        out
    }

    /// The `t`-descendants of `x` inside `within`: everything reachable by
    /// at most `t` child steps, including `x`.
    pub fn descendants(&self, x: usize, t: usize, within: &FixedBitSet) -> FixedBitSet {
        descendants_by(&self.children(within), x, t)
    }

    /// `[a, b] = {x : a ≤ x ≤ b}`.
    pub fn interval(&self, a: usize, b: usize) -> Vec<usize> {
        if !self.le(a, b) {
            return Vec::new();
        }
        if a == b {
            return vec![a];
        }
        let mut s = self.above[a].clone();
        s.intersect_with(&self.below[b]);
        let mut out: Vec<usize> = s.ones().collect();
        out.push(a);
        out.push(b);
        out.sort_unstable();
        out
    }

    /// A maximum antichain of `elements`, via a minimum chain cover
    /// (Dilworth) found by bipartite matching.
    pub fn max_antichain(&self, elements: &[usize], cutoff: usize) -> Result<Vec<usize>> {
        let n = elements.len();
        if n > cutoff {
            return Err(Error::BudgetExceeded { limit: cutoff as u128, requested: n as u128 });
        }
        // left copy u → right copy v whenever elements[u] < elements[v]
        let adj: Vec<Vec<usize>> =
            (0..n).map(|u| (0..n).filter(|&v| self.lt(elements[u], elements[v])).collect()).collect();
        let mut match_left = vec![usize::MAX; n];
        let mut match_right = vec![usize::MAX; n];
        for u in 0..n {
            let mut seen = vec![false; n];
            augment(u, &adj, &mut match_left, &mut match_right, &mut seen);
        }
        // König: Z = vertices reachable from free left vertices along
        // alternating paths
        let mut left_z = vec![false; n];
        let mut right_z = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&u| match_left[u] == usize::MAX).collect();
        for &u in &queue {
            left_z[u] = true;
        }
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                if !right_z[v] && match_left[u] != v {
                    right_z[v] = true;
                    let w = match_right[v];
                    if w != usize::MAX && !left_z[w] {
                        left_z[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let antichain: Vec<usize> = (0..n).filter(|&x| left_z[x] && !right_z[x]).map(|x| elements[x]).collect();
        let matched = match_left.iter().filter(|&&v| v != usize::MAX).count();
        if antichain.len() != n - matched {
            return Err(Error::Internal("Dilworth duality failed".into()));
        }
        Ok(antichain)
    }

    /// Checks that every interval `[a, b]` has no antichain larger than
    /// `d`; returns a larger antichain if one exists.
    ///
    /// Every interval lies inside one spanned by a minimal and a maximal
    /// element, so only those are examined.
    pub fn locally_linear_witness(&self, d: usize, cutoff: usize) -> Result<Option<Vec<usize>>> {
        let n = self.len();
        let minimal: Vec<usize> = (0..n).filter(|&x| self.below[x].is_clear()).collect();
        let maximal: Vec<usize> = (0..n).filter(|&x| self.above[x].is_clear()).collect();
        for &a in &minimal {
            for &b in &maximal {
                if !self.le(a, b) {
                    continue;
                }
                let iv = self.interval(a, b);
                if iv.len() <= d {
                    continue;
                }
                let antichain = self.max_antichain(&iv, cutoff)?;
                if antichain.len() > d {
                    return Ok(Some(antichain));
                }
            }
        }
        Ok(None)
    }

    pub fn is_locally_d_linear(&self, d: usize) -> Result<bool> {
        Ok(self.locally_linear_witness(d, DEFAULT_ANTICHAIN_CUTOFF)?.is_none())
    }

    /// Whether `set` has no antichain larger than `d`.
    pub fn is_d_linear(&self, set: &[usize], d: usize) -> Result<bool> {
        Ok(self.max_antichain(set, DEFAULT_ANTICHAIN_CUTOFF)?.len() <= d)
    }
}

pub(crate) fn descendants_by(children: &[FixedBitSet], x: usize, t: usize) -> FixedBitSet {
    let mut seen = FixedBitSet::with_capacity(children.len());
    seen.insert(x);
    let mut frontier = seen.clone();
    for _ in 0..t {
        let mut next = FixedBitSet::with_capacity(children.len());
        for y in frontier.ones() {
            next.union_with(&children[y]);
        }
        next.difference_with(&seen);
        if next.is_clear() {
            break;
        }
        seen.union_with(&next);
        frontier = next;
    }
    seen
}

fn augment(u: usize, adj: &[Vec<usize>], ml: &mut [usize], mr: &mut [usize], seen: &mut [bool]) -> bool {
    for &v in &adj[u] {
        if seen[v] {
            continue;
        }
        seen[v] = true;
        if mr[v] == usize::MAX || augment(mr[v], adj, ml, mr, seen) {
            ml[u] = v;
            mr[v] = u;
            return true;
        }
    }
    false
}
