//! Peeling for dyadic rectangles.
//!
//! Rectangles are ordered by `I × J ≤ I' × J'` iff `I ⊆ I'` and `J ⊇ J'`;
//! every point `p` contributes the line `ℓ_p` of rectangles containing it.
//! Peeling repeatedly keeps only the elements that have a
//! `(k − 1)`-descendant with more than `m` children, and every step is
//! checked against
//!
//! ```text
//! Σ|ℓ ∩ P_i| ≤ Σ|ℓ ∩ P_{i+1}| + d(k−1)|L| + (k−1)·m^{k−1}·(|P_i| − |P_{i+1}|).
//! ```

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::dyadic::DyadicBox;
use crate::incidence::{find_biclique, incidences_sweep, Configuration, IncidenceGraph};
use crate::poset::Poset;
use crate::{Error, Result};

/// Largest number of distinct rectangles [`build_rect_order`] accepts; the
/// order is stored as a dense bit matrix.
pub const MAX_RECTS: usize = 20_000;

/// Relative slack applied outward to floating-point right-hand sides.
const GUARD: f64 = 1e-12;

/// What preprocessing discarded.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Preprocessing {
    /// Incidences of the input, with multiplicity.
    pub original_incidences: u64,
    /// Copies dropped because they closed a nested chain of length `k`.
    pub chain_copies: u64,
    pub chain_incidences: u64,
    /// Surplus copies of repeated rectangles merged into one.
    pub duplicate_copies: u64,
    pub duplicate_incidences: u64,
}

/// The containment order on the preprocessed rectangles.
#[derive(Clone, Debug)]
pub struct RectOrder {
    rects: Vec<DyadicBox>,
    source: Vec<usize>,
    poset: Poset,
    pub preprocessing: Preprocessing,
}

impl RectOrder {
    pub fn rects(&self) -> &[DyadicBox] {
        &self.rects
    }

    /// Region index in the input configuration of every element.
    pub fn source(&self) -> &[usize] {
        &self.source
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.rects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rects.is_empty()
    }
}

fn area_exponent(b: &DyadicBox) -> i64 {
    b.intervals().iter().map(|i| i.t()).sum()
}

/// `I × J ≤ I' × J'`.
pub fn rect_le(a: &DyadicBox, b: &DyadicBox) -> bool {
    let (i, j) = (&a.intervals()[0], &a.intervals()[1]);
    let (i2, j2) = (&b.intervals()[0], &b.intervals()[1]);
    i.is_subset_of(i2) && j2.is_subset_of(j)
}

fn distinct_rects(cfg: &Configuration) -> Result<Vec<(DyadicBox, u32, Vec<usize>)>> {
    if cfg.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: cfg.dim() });
    }
    let mut entries: Vec<(DyadicBox, u32, Vec<usize>)> = Vec::new();
    let mut index = alloc::collections::BTreeMap::new();
    for (r, (region, &mult)) in cfg.regions().iter().zip(cfg.multiplicities()).enumerate() {
        let b = region.as_dyadic().ok_or(Error::NotDyadic { region: r })?;
        let key = (b.intervals()[0].t(), b.intervals()[0].s().clone(), b.intervals()[1].t(), b.intervals()[1].s().clone());
        match index.get(&key) {
            Some(&e) => {
                let entry: &mut (DyadicBox, u32, Vec<usize>) = &mut entries[e];
                entry.1 += mult;
                entry.2.push(r);
            }
            None => {
                index.insert(key, entries.len());
                entries.push((b.clone(), mult, vec![r]));
            }
        }
    }
    Ok(entries)
}

/// Drops every rectangle copy that closes a chain `D_1 ⊇ ⋯ ⊇ D_k`
/// (largest rectangles first), merges repetitions, and builds the order.
pub fn build_rect_order(cfg: &Configuration, k: usize) -> Result<RectOrder> {
    if k < 2 {
        return Err(Error::InvalidParameter { name: "k", detail: "k must be at least 2".into() });
    }
    let mut entries = distinct_rects(cfg)?;
    if entries.len() > MAX_RECTS {
        return Err(Error::BudgetExceeded { limit: MAX_RECTS as u128, requested: entries.len() as u128 });
    }
    entries.sort_by_key(|e| core::cmp::Reverse(area_exponent(&e.0)));

    let graph = incidences_sweep(cfg)?;
    let points_in = |e: &(DyadicBox, u32, Vec<usize>)| graph.region_neighbors(e.2[0]).len() as u64;
    let mut pre = Preprocessing { original_incidences: graph.edge_count(), ..Preprocessing::default() };

    // depth[e]: longest chain of kept copies ending at e
    let mut depth = vec![0usize; entries.len()];
    let mut kept = vec![0u32; entries.len()];
    for e in 0..entries.len() {
        let up = (0..e)
            .filter(|&f| {
                area_exponent(&entries[f].0) > area_exponent(&entries[e].0) && entries[e].0.is_subset_of(&entries[f].0)
            })
            .map(|f| depth[f])
            .max()
            .unwrap_or(0);
        let room = (k - 1).saturating_sub(up) as u32;
        kept[e] = entries[e].1.min(room);
        depth[e] = up + kept[e] as usize;
        let dropped = u64::from(entries[e].1 - kept[e]);
        pre.chain_copies += dropped;
        pre.chain_incidences += dropped * points_in(&entries[e]);
        if kept[e] > 1 {
            pre.duplicate_copies += u64::from(kept[e] - 1);
            pre.duplicate_incidences += u64::from(kept[e] - 1) * points_in(&entries[e]);
        }
    }

    let mut rects = Vec::new();
    let mut source = Vec::new();
    for (e, entry) in entries.into_iter().enumerate() {
        if kept[e] > 0 {
            rects.push(entry.0);
            source.push(entry.2[0]);
        }
    }
    // sort back into input order for stable indices
    let mut order: Vec<usize> = (0..rects.len()).collect();
    order.sort_by_key(|&i| source[i]);
    let rects: Vec<DyadicBox> = order.iter().map(|&i| rects[i].clone()).collect();
    let source: Vec<usize> = order.iter().map(|&i| source[i]).collect();

    let poset = Poset::from_fn(rects.len(), |a, b| a != b && rect_le(&rects[a], &rects[b]))?;
    Ok(RectOrder { rects, source, poset, preprocessing: pre })
}

/// Length of the longest chain `D_1 ⊇ D_2 ⊇ ⋯`, copies counted.
pub fn longest_nested_chain(rects: &[DyadicBox], multiplicities: &[u32]) -> usize {
    let mut idx: Vec<usize> = (0..rects.len()).collect();
    idx.sort_by_key(|&i| core::cmp::Reverse(area_exponent(&rects[i])));
    let mut depth = vec![0usize; rects.len()];
    for (pos, &e) in idx.iter().enumerate() {
        let up = idx[..pos]
            .iter()
            .filter(|&&f| rects[e].is_subset_of(&rects[f]))
            .map(|&f| depth[f])
            .max()
            .unwrap_or(0);
        depth[e] = up + multiplicities[e] as usize;
    }
    depth.into_iter().max().unwrap_or(0)
}

/// For every point `p`, the set `ℓ_p ⊆ P` of rectangles containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<FixedBitSet>,
}

impl Arrangement {
    pub fn new(cfg: &Configuration, order: &RectOrder) -> Result<Self> {
        let graph = incidences_sweep(&cfg.retain_regions(order.source()))?;
        let lines = (0..cfg.n1())
            .map(|p| {
                let mut s = FixedBitSet::with_capacity(order.len());
                s.extend(graph.point_neighbors(p).iter().copied());
                s
            })
            .collect();
        Ok(Self { lines })
    }

    pub fn from_lines(lines: Vec<FixedBitSet>) -> Self {
        Self { lines }
    }

    pub fn lines(&self) -> &[FixedBitSet] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// `Σ_ℓ |ℓ ∩ within|`.
    pub fn incidences(&self, within: &FixedBitSet) -> u64 {
        self.lines.iter().map(|l| l.intersection(within).count() as u64).sum()
    }

    /// No `k` distinct elements lie together in `k` lines.
    pub fn is_kk_free(&self, k: usize) -> bool {
        let n = self.lines.first().map_or(0, FixedBitSet::len);
        let g = IncidenceGraph::from_pairs(
            self.lines.len(),
            vec![1; n],
            self.lines.iter().enumerate().flat_map(|(p, l)| l.ones().map(move |r| (p, r))),
        );
        find_biclique(&g, k).is_none()
    }
}

/// One peeling step with its checked inequality.
#[derive(Clone, Debug, PartialEq)]
pub struct PeelStep {
    pub index: usize,
    /// `|P_i|`.
    pub size: usize,
    /// `|P_{i+1}|`.
    pub size_next: usize,
    /// `Σ|ℓ ∩ P_i|`.
    pub incidences: u64,
    /// `Σ|ℓ ∩ P_{i+1}|`.
    pub incidences_next: u64,
    /// `Σ|ℓ ∩ P_{i+1}| + d(k−1)|L| + (k−1)m^{k−1}(|P_i| − |P_{i+1}|)`.
    pub rhs: f64,
    /// Largest number of low points on a single line.
    pub max_low: usize,
    /// Low incidences in total (at most `d(k−1)|L|`).
    pub low_incidences: u64,
}

impl PeelStep {
    pub fn holds(&self) -> bool {
        self.incidences as f64 <= self.rhs * (1.0 + GUARD)
    }
}

/// Elements of `within` having a `(k−1)`-descendant with more than `m`
/// children, all relative to the order restricted to `within`.
pub fn peel_set(poset: &Poset, within: &FixedBitSet, k: usize, m: f64) -> FixedBitSet {
    let children = poset.children(within);
    let parents = {
        let mut p = vec![FixedBitSet::with_capacity(poset.len()); poset.len()];
        for (x, kids) in children.iter().enumerate() {
            for y in kids.ones() {
                p[y].insert(x);
            }
        }
        p
    };
    let mut reach = FixedBitSet::with_capacity(poset.len());
    for x in within.ones() {
        if children[x].count_ones(..) as f64 > m {
            reach.insert(x);
        }
    }
    let mut frontier = reach.clone();
    for _ in 0..k - 1 {
        let mut next = FixedBitSet::with_capacity(poset.len());
        for y in frontier.ones() {
            next.union_with(&parents[y]);
        }
        next.difference_with(&reach);
        reach.union_with(&next);
        frontier = next;
    }
    reach
}

/// Low points of `line ∩ within`: no chain of `k − 1` elements of the line
/// below them.
fn low_points(poset: &Poset, line: &FixedBitSet, within: &FixedBitSet, k: usize) -> usize {
    let mut elems: Vec<usize> = line.intersection(within).collect();
    elems.sort_by_key(|&x| poset.below(x).count_ones(..));
    let mut height = vec![0usize; elems.len()];
    for a in 0..elems.len() {
        height[a] = (0..a).filter(|&b| poset.lt(elems[b], elems[a])).map(|b| height[b] + 1).max().unwrap_or(0);
    }
    height.iter().filter(|&&h| h < k - 1).count()
}

/// `P_{i+1}` from `P_i`, together with the verified inequality.
pub fn peel_step(
    poset: &Poset,
    current: &FixedBitSet,
    lines: &Arrangement,
    k: usize,
    d: usize,
    m: f64,
    index: usize,
) -> Result<(FixedBitSet, PeelStep)> {
    let next = peel_set(poset, current, k, m);
    let (size, size_next) = (current.count_ones(..), next.count_ones(..));
    let mut max_low = 0;
    let mut low_incidences = 0u64;
    for line in lines.lines() {
        let low = low_points(poset, line, current, k);
        max_low = max_low.max(low);
        low_incidences += low as u64;
    }
    let incidences = lines.incidences(current);
    let incidences_next = lines.incidences(&next);
    let rhs = incidences_next as f64
        + (d * (k - 1) * lines.len()) as f64
        + (k - 1) as f64 * libm::pow(m, (k - 1) as f64) * (size - size_next) as f64;
    let step = PeelStep { index, size, size_next, incidences, incidences_next, rhs, max_low, low_incidences };
    if !step.holds() {
        return Err(Error::Internal(format!("peeling inequality fails at step {index}: {step:?}")));
    }
    if max_low > d * (k - 1) {
        return Err(Error::Internal(format!("a line has {max_low} low points at step {index}")));
    }
    Ok((next, step))
}

/// The whole run.
#[derive(Clone, Debug)]
pub struct PeelTrace {
    pub k: usize,
    pub d: usize,
    pub c: f64,
    pub m: f64,
    pub t: usize,
    /// `|P|` after preprocessing.
    pub n1: usize,
    /// `|L|` (number of points).
    pub lines: usize,
    /// `|P_0|, |P_1|, …` up to the last computed level.
    pub chain: Vec<usize>,
    pub steps: Vec<PeelStep>,
    /// `Σ|ℓ|` over the preprocessed family.
    pub total: u64,
    /// `d(k−1)t|L| + (k−1)m^{k−1}n_1`.
    pub bound: f64,
    /// `P_t = ∅`.
    pub terminated: bool,
    /// `(m/(k d^k))^t > n_1`.
    pub termination_guaranteed: bool,
    /// Smallest `|{z ≤ x}|` over `x ∈ P_i` against `m^i/(k d^k)^{i−1}`, per
    /// non-empty level `i ≥ 1`.
    pub descendant_checks: Vec<(usize, usize, f64)>,
    pub preprocessing: Preprocessing,
}

impl PeelTrace {
    pub fn bound_holds(&self) -> bool {
        self.total as f64 <= self.bound * (1.0 + GUARD)
    }

    pub fn steps_hold(&self) -> bool {
        self.steps.iter().all(PeelStep::holds)
    }

    pub fn descendant_claim_holds(&self) -> bool {
        self.descendant_checks.iter().all(|&(_, found, need)| found as f64 >= need * (1.0 - GUARD))
    }
}

/// `4·k·d^k`.
pub fn default_c(k: usize) -> f64 {
    let d = (k - 1) as f64;
    4.0 * k as f64 * libm::pow(d, k as f64)
}

/// `(m, t)` for a given `c` and `n_1`.
pub fn peel_parameters(c: f64, k: usize, n1: usize) -> (f64, usize) {
    let x = 100.0 + n1 as f64;
    let q = c * libm::log(x) / libm::log(libm::log(x));
    (libm::pow(q, 1.0 / (k - 1) as f64), libm::floor(q) as usize)
}

/// Preprocesses `cfg`, then peels with `m` and `t` derived from `c`.
pub fn peel_run(cfg: &Configuration, k: usize, c: Option<f64>) -> Result<PeelTrace> {
    let order = build_rect_order(cfg, k)?;
    let lines = Arrangement::new(cfg, &order)?;
    let d = k - 1;
    let c = c.unwrap_or_else(|| default_c(k));
    if c.is_nan() || c <= 0.0 {
        return Err(Error::InvalidParameter { name: "c", detail: format!("{c} is not positive") });
    }
    let n1 = order.len();
    let (m, t) = peel_parameters(c, k, n1);
    let poset = order.poset();
    let kd = k as f64 * libm::pow(d as f64, k as f64);

    let mut current = poset.full_set();
    let mut chain = vec![n1];
    let mut steps = Vec::new();
    let mut descendant_checks = Vec::new();
    let mut i = 0;
    while i < t && !current.is_clear() {
        let (next, step) = peel_step(poset, &current, &lines, k, d, m, i)?;
        steps.push(step);
        current = next;
        i += 1;
        chain.push(current.count_ones(..));
        if let Some(x) = current.ones().min_by_key(|&x| poset.below(x).count_ones(..)) {
            let found = poset.below(x).count_ones(..) + 1;
            let need = libm::pow(m, i as f64) / libm::pow(kd, (i - 1) as f64);
            descendant_checks.push((i, found, need));
        }
    }
    let total = lines.incidences(&poset.full_set());
    let bound = (d * (k - 1) * t * lines.len()) as f64
        + (k - 1) as f64 * libm::pow(m, (k - 1) as f64) * n1 as f64;
    let termination_guaranteed = libm::pow(m / kd, t as f64) > n1 as f64;
    Ok(PeelTrace {
        k,
        d,
        c,
        m,
        t,
        n1,
        lines: lines.len(),
        chain,
        steps,
        total,
        bound,
        terminated: current.is_clear(),
        termination_guaranteed,
        descendant_checks,
        preprocessing: order.preprocessing.clone(),
    })
}

/// Brute-force check of the relation between the preprocessed rectangles:
/// no nested chain of length `k`, no repetition.
pub fn nested_chain_free(order: &RectOrder, k: usize) -> bool {
    let mult = vec![1; order.len()];
    let distinct = order.rects.iter().enumerate().all(|(a, r)| order.rects[a + 1..].iter().all(|s| s != r));
    distinct && longest_nested_chain(&order.rects, &mult) < k
}
