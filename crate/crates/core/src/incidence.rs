//! Point–region incidences and `K_{k,k}`-freeness.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::dyadic::{BoxAxis, DyadicRational, GeneralBox, Region};
use crate::grid::{CellSet, FiniteGrid, Odometer};
use crate::{Error, Result};

/// Default cap on `Π|B_i|` for [`is_grid_free`].
pub const DEFAULT_MAX_CELLS: usize = 1_000_000;

/// Where a configuration came from.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub generator: String,
    pub params: Vec<(String, String)>,
    pub seed: Option<u64>,
}

/// Points and regions in `ℝ^dim`; regions carry a multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    dim: usize,
    points: Vec<Vec<DyadicRational>>,
    regions: Vec<Region>,
    multiplicities: Vec<u32>,
    pub meta: Provenance,
}

impl Configuration {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { dim, points: Vec::new(), regions: Vec::new(), multiplicities: Vec::new(), meta: Provenance::default() })
    }

    pub fn with_meta(mut self, meta: Provenance) -> Self {
        self.meta = meta;
        self
    }

    pub fn push_point(&mut self, point: Vec<DyadicRational>) -> Result<usize> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: point.len() });
        }
        self.points.push(point);
        Ok(self.points.len() - 1)
    }

    pub fn push_region(&mut self, region: impl Into<Region>) -> Result<usize> {
        self.push_region_with_multiplicity(region, 1)
    }

    pub fn push_region_with_multiplicity(&mut self, region: impl Into<Region>, multiplicity: u32) -> Result<usize> {
        let region = region.into();
        if region.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: region.dim() });
        }
        if multiplicity == 0 {
            return Err(Error::InvalidParameter { name: "multiplicity", detail: "must be positive".into() });
        }
        self.regions.push(region);
        self.multiplicities.push(multiplicity);
        Ok(self.regions.len() - 1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<DyadicRational>] {
        &self.points
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// `n_1`.
    pub fn n1(&self) -> usize {
        self.points.len()
    }

    /// `n_2`, counting repeated regions with multiplicity.
    pub fn n2(&self) -> u64 {
        self.multiplicities.iter().map(|&m| u64::from(m)).sum()
    }

    /// Keeps the listed points (in the given order).
    pub fn retain_points(&self, keep: &[usize]) -> Self {
        let mut out = self.clone();
        out.points = keep.iter().map(|&i| self.points[i].clone()).collect();
        out
    }

    /// Keeps the listed region entries (in the given order).
    pub fn retain_regions(&self, keep: &[usize]) -> Self {
        let mut out = self.clone();
        out.regions = keep.iter().map(|&i| self.regions[i].clone()).collect();
        out.multiplicities = keep.iter().map(|&i| self.multiplicities[i]).collect();
        out
    }
}

/// The bipartite incidence graph on points × regions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IncidenceGraph {
    point_adj: Vec<Vec<usize>>,
    region_adj: Vec<Vec<usize>>,
    multiplicities: Vec<u32>,
}

impl IncidenceGraph {
    /// Builds the graph from `(point, region)` pairs; duplicates collapse.
    pub fn from_pairs(
        n_points: usize,
        multiplicities: Vec<u32>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Self {
        let mut point_adj = vec![Vec::new(); n_points];
        let mut region_adj = vec![Vec::new(); multiplicities.len()];
        for (p, r) in pairs {
            point_adj[p].push(r);
            region_adj[r].push(p);
        }
        for list in point_adj.iter_mut().chain(region_adj.iter_mut()) {
            list.sort_unstable();
            list.dedup();
        }
        Self { point_adj, region_adj, multiplicities }
    }

    pub fn n1(&self) -> usize {
        self.point_adj.len()
    }

    /// Regions counted with multiplicity.
    pub fn n2(&self) -> u64 {
        self.multiplicities.iter().map(|&m| u64::from(m)).sum()
    }

    /// Distinct region entries.
    pub fn region_count(&self) -> usize {
        self.region_adj.len()
    }

    /// `|E|`, with region multiplicity.
    pub fn edge_count(&self) -> u64 {
        self.region_adj.iter().zip(&self.multiplicities).map(|(adj, &m)| adj.len() as u64 * u64::from(m)).sum()
    }

    pub fn point_neighbors(&self, p: usize) -> &[usize] {
        &self.point_adj[p]
    }

    pub fn region_neighbors(&self, r: usize) -> &[usize] {
        &self.region_adj[r]
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    pub fn contains(&self, p: usize, r: usize) -> bool {
        self.point_adj[p].binary_search(&r).is_ok()
    }

    /// Distinct adjacent pairs in `(point, region)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.point_adj.iter().enumerate().flat_map(|(p, adj)| adj.iter().map(move |&r| (p, r)))
    }
}

/// Reference engine: tests every point against every region.
pub fn incidences_bruteforce(cfg: &Configuration) -> Result<IncidenceGraph> {
    let mut pairs = Vec::new();
    for (p, point) in cfg.points.iter().enumerate() {
        for (r, region) in cfg.regions.iter().enumerate() {
            if region.contains(point)? {
                pairs.push((p, r));
            }
        }
    }
    Ok(IncidenceGraph::from_pairs(cfg.n1(), cfg.multiplicities.clone(), pairs))
}

/// Indices `[lo, hi)` of the sorted distinct `values` lying on `axis`.
fn rank_range(values: &[DyadicRational], axis: &BoxAxis) -> (usize, usize) {
    let lo = values.partition_point(|v| if axis.lower_closed { v < &axis.lower } else { v <= &axis.lower });
    let hi = values.partition_point(|v| if axis.upper_closed { v <= &axis.upper } else { v < &axis.upper });
    (lo, hi.max(lo))
}

/// Segment tree over y-ranks; every node keeps the boxes whose y-range
/// canonically covers it.
struct StabbingTree {
    size: usize,
    nodes: Vec<BTreeSet<usize>>,
}

impl StabbingTree {
    fn new(n: usize) -> Self {
        let size = n.next_power_of_two().max(1);
        Self { size, nodes: vec![BTreeSet::new(); 2 * size] }
    }

    fn update(&mut self, lo: usize, hi: usize, id: usize, insert: bool) {
        let (mut l, mut r) = (lo + self.size, hi + self.size);
        while l < r {
            if l & 1 == 1 {
                self.apply(l, id, insert);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                self.apply(r, id, insert);
            }
            l >>= 1;
            r >>= 1;
        }
    }

    fn apply(&mut self, node: usize, id: usize, insert: bool) {
        if insert {
            self.nodes[node].insert(id);
        } else {
            self.nodes[node].remove(&id);
        }
    }

    fn stab(&self, y: usize, out: &mut Vec<usize>) {
        let mut node = y + self.size;
        while node >= 1 {
            out.extend(self.nodes[node].iter().copied());
            node >>= 1;
        }
    }
}

/// Plane sweep over x with a stabbing structure over y. Two-dimensional
/// boxes only (dyadic or general).
pub fn incidences_sweep(cfg: &Configuration) -> Result<IncidenceGraph> {
    if cfg.dim != 2 {
        return Err(Error::DimensionMismatch { expected: 2, found: cfg.dim });
    }
    let boxes = cfg
        .regions
        .iter()
        .enumerate()
        .map(|(i, r)| match r {
            Region::Dyadic(b) => Ok(GeneralBox::from(b)),
            Region::General(b) => Ok(b.clone()),
            Region::Polytope(_) => Err(Error::UnsupportedRegion { region: i }),
        })
        .collect::<Result<Vec<_>>>()?;

    let mut xs: Vec<DyadicRational> = cfg.points.iter().map(|p| p[0].clone()).collect();
    let mut ys: Vec<DyadicRational> = cfg.points.iter().map(|p| p[1].clone()).collect();
    xs.sort();
    xs.dedup();
    ys.sort();
    ys.dedup();
    let rank = |values: &[DyadicRational], v: &DyadicRational| values.binary_search(v).expect("coordinate present");

    // points sorted by x-rank
    let mut points: Vec<(usize, usize, usize)> =
        cfg.points.iter().enumerate().map(|(i, p)| (rank(&xs, &p[0]), rank(&ys, &p[1]), i)).collect();
    points.sort_unstable();

    // (x-rank, is_insert, box): removals at a rank come before insertions
    let mut events = Vec::new();
    let mut yranges = Vec::with_capacity(boxes.len());
    for (id, b) in boxes.iter().enumerate() {
        let (x0, x1) = rank_range(&xs, &b.axes()[0]);
        let (y0, y1) = rank_range(&ys, &b.axes()[1]);
        yranges.push((y0, y1));
        if x0 < x1 && y0 < y1 {
            events.push((x0, true, id));
            events.push((x1, false, id));
        }
    }
    events.sort_unstable_by_key(|&(x, insert, id)| (x, insert, id));

    let mut tree = StabbingTree::new(ys.len());
    let mut pairs = Vec::new();
    let mut next_event = 0;
    let mut hits = Vec::new();
    for &(x, y, p) in &points {
        while next_event < events.len() && events[next_event].0 <= x {
            let (_, insert, id) = events[next_event];
            let (y0, y1) = yranges[id];
            tree.update(y0, y1, id, insert);
            next_event += 1;
        }
        hits.clear();
        tree.stab(y, &mut hits);
        pairs.extend(hits.iter().map(|&r| (p, r)));
    }
    Ok(IncidenceGraph::from_pairs(cfg.n1(), cfg.multiplicities.clone(), pairs))
}

/// `k` points and `k` region copies, all pairwise incident. A region index
/// may repeat when that region has multiplicity above one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biclique {
    pub points: Vec<usize>,
    pub regions: Vec<usize>,
}

/// Picks `k` copies from `set`, respecting multiplicities.
fn take_copies(set: impl Iterator<Item = usize>, mult: &[u32], k: usize) -> Option<Vec<usize>> {
    let mut out = Vec::with_capacity(k);
    for i in set {
        for _ in 0..mult[i] {
            if out.len() == k {
                return Some(out);
            }
            out.push(i);
        }
    }
    (out.len() >= k).then(|| {
        out.truncate(k);
        out
    })
}

/// Chooses `k` copies on the left whose common right neighbourhood has
/// total multiplicity `≥ k`. Returns `(left copies, right copies)`.
fn biclique_search(
    left_adj: &[Vec<usize>],
    left_mult: &[u32],
    right_len: usize,
    right_mult: &[u32],
    k: usize,
) -> Option<(Vec<usize>, Vec<usize>)> {
    let weight = |set: &FixedBitSet| set.ones().map(|i| u64::from(right_mult[i])).sum::<u64>();
    let copies: Vec<usize> = (0..left_adj.len())
        .filter(|&i| left_adj[i].iter().map(|&j| u64::from(right_mult[j])).sum::<u64>() >= k as u64)
        .flat_map(|i| core::iter::repeat_n(i, left_mult[i].min(k as u32) as usize))
        .collect();
    let sets: Vec<FixedBitSet> = copies
        .iter()
        .map(|&i| {
            let mut s = FixedBitSet::with_capacity(right_len);
            s.extend(left_adj[i].iter().copied());
            s
        })
        .collect();

    fn go(
        start: usize,
        common: &FixedBitSet,
        chosen: &mut Vec<usize>,
        sets: &[FixedBitSet],
        k: usize,
        weight: &dyn Fn(&FixedBitSet) -> u64,
    ) -> Option<FixedBitSet> {
        if chosen.len() == k {
            return Some(common.clone());
        }
        let need = k - chosen.len();
        for c in start..sets.len() {
            if sets.len() - c < need {
                break;
            }
            let mut next = common.clone();
            next.intersect_with(&sets[c]);
            if weight(&next) < k as u64 {
                continue;
            }
            chosen.push(c);
            if let Some(found) = go(c + 1, &next, chosen, sets, k, weight) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }

    let mut all = FixedBitSet::with_capacity(right_len);
    all.insert_range(..);
    let mut chosen = Vec::new();
    let common = go(0, &all, &mut chosen, &sets, k, &weight)?;
    let left = chosen.iter().map(|&c| copies[c]).collect();
    let right = take_copies(common.ones(), right_mult, k)?;
    Some((left, right))
}

/// Searches for a `K_{k,k}`.
///
/// For `k = 2` region pairs are counted through the points they share.
/// Otherwise a backtracking search runs over `k`-subsets of the smaller side,
/// pruned as soon as the common neighbourhood gets too small; this is
/// exponential in the worst case and meant for desk-scale inputs.
pub fn find_biclique(g: &IncidenceGraph, k: usize) -> Option<Biclique> {
    if k == 0 {
        return Some(Biclique { points: Vec::new(), regions: Vec::new() });
    }
    if g.n1() < k || g.n2() < k as u64 {
        return None;
    }
    if k == 1 {
        return g.edges().next().map(|(p, r)| Biclique { points: vec![p], regions: vec![r] });
    }
    if k == 2 {
        return find_k22(g);
    }
    let point_mult = vec![1u32; g.n1()];
    if (g.n1() as u64) <= g.n2() {
        biclique_search(&g.point_adj, &point_mult, g.region_count(), &g.multiplicities, k)
            .map(|(points, regions)| Biclique { points, regions })
    } else {
        biclique_search(&g.region_adj, &g.multiplicities, g.n1(), &point_mult, k)
            .map(|(regions, points)| Biclique { points, regions })
    }
}

fn find_k22(g: &IncidenceGraph) -> Option<Biclique> {
    for (r, adj) in g.region_adj.iter().enumerate() {
        if g.multiplicities[r] >= 2 && adj.len() >= 2 {
            return Some(Biclique { points: vec![adj[0], adj[1]], regions: vec![r, r] });
        }
    }
    let mut seen: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (p, adj) in g.point_adj.iter().enumerate() {
        for (i, &r1) in adj.iter().enumerate() {
            for &r2 in &adj[i + 1..] {
                if let Some(&q) = seen.get(&(r1, r2)) {
                    return Some(Biclique { points: vec![q, p], regions: vec![r1, r2] });
                }
                seen.insert((r1, r2), p);
            }
        }
    }
    None
}

pub fn is_kk_free(g: &IncidenceGraph, k: usize) -> bool {
    find_biclique(g, k).is_none()
}

/// Labels `C_1, …, C_r` of a full `k × ⋯ × k` sub-grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridWitness {
    pub parts: Vec<Vec<usize>>,
}

/// Decides whether `set` avoids every `k × ⋯ × k` sub-grid.
///
/// Returns the witness if one exists. Labels on the first axis are chosen
/// one at a time while intersecting their sections; a complete choice
/// recurses on the common section. Grids with more than `max_cells` cells
/// are rejected.
pub fn is_grid_free(set: &CellSet, k: usize, max_cells: usize) -> Result<Option<GridWitness>> {
    let grid = set.grid();
    if grid.rank() < 2 {
        return Err(Error::InvalidParameter { name: "grid", detail: "rank must be at least 2".into() });
    }
    let cells = grid.cell_count();
    if cells > max_cells {
        return Err(Error::BudgetExceeded { limit: max_cells as u128, requested: cells as u128 });
    }
    Ok(grid_search(set, k))
}

fn grid_search(set: &CellSet, k: usize) -> Option<GridWitness> {
    let grid = set.grid();
    let sizes = grid.sizes();
    if k == 0 {
        return Some(GridWitness { parts: vec![Vec::new(); sizes.len()] });
    }
    if sizes.iter().any(|&n| n < k) {
        return None;
    }
    if sizes.len() == 1 {
        return (set.len() >= k).then(|| GridWitness { parts: vec![set.cells().map(|c| c[0]).take(k).collect()] });
    }
    let co_len: usize = sizes[1..].iter().product();
    let need = k.pow(sizes.len() as u32 - 1);
    let sections: Vec<FixedBitSet> = (0..sizes[0])
        .map(|a| {
            let mut s = FixedBitSet::with_capacity(co_len);
            for j in 0..co_len {
                s.set(j, set.contains_index(a * co_len + j));
            }
            s
        })
        .collect();
    let candidates: Vec<usize> = (0..sizes[0]).filter(|&a| sections[a].count_ones(..) >= need).collect();
    let co_grid = FiniteGrid::new(sizes[1..].to_vec()).expect("valid sub-grid");

    fn go(
        start: usize,
        common: &FixedBitSet,
        chosen: &mut Vec<usize>,
        candidates: &[usize],
        sections: &[FixedBitSet],
        k: usize,
        need: usize,
        co_grid: &FiniteGrid,
    ) -> Option<GridWitness> {
        if chosen.len() == k {
            let mut sub = CellSet::empty(co_grid.clone());
            for j in common.ones() {
                sub.insert(&co_grid.coords(j)).expect("in range");
            }
            let mut w = grid_search(&sub, k)?;
            w.parts.insert(0, chosen.clone());
            return Some(w);
        }
        for c in start..candidates.len() {
            if candidates.len() - c < k - chosen.len() {
                break;
            }
            let mut next = common.clone();
            next.intersect_with(&sections[candidates[c]]);
            if next.count_ones(..) < need {
                continue;
            }
            chosen.push(candidates[c]);
            if let Some(w) = go(c + 1, &next, chosen, candidates, sections, k, need, co_grid) {
                return Some(w);
            }
            chosen.pop();
        }
        None
    }

    let mut all = FixedBitSet::with_capacity(co_len);
    all.insert_range(..);
    go(0, &all, &mut Vec::new(), &candidates, &sections, k, need, &co_grid)
}

/// Checks a sub-grid witness cell by cell.
pub fn witness_holds(set: &CellSet, w: &GridWitness) -> bool {
    let sizes: Vec<usize> = w.parts.iter().map(Vec::len).collect();
    w.parts.len() == set.grid().rank()
        && Odometer::new(sizes).all(|pick| {
            let cell: Vec<usize> = pick.iter().zip(&w.parts).map(|(&i, part)| part[i]).collect();
            set.contains(&cell)
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyadic::{dy, DyadicBox, DyadicInterval};

    fn unit_square() -> DyadicBox {
        DyadicBox::new(vec![DyadicInterval::new(0, 0), DyadicInterval::new(0, 0)]).unwrap()
    }

    #[test]
    fn one_point_one_box() {
        let mut cfg = Configuration::new(2).unwrap();
        cfg.push_point(vec![dy("1/2"), dy("1/2")]).unwrap();
        cfg.push_region(unit_square()).unwrap();
        assert_eq!(incidences_bruteforce(&cfg).unwrap().edge_count(), 1);
        assert_eq!(incidences_sweep(&cfg).unwrap().edge_count(), 1);
    }

    #[test]
    fn upper_face_is_excluded() {
        let mut cfg = Configuration::new(2).unwrap();
        cfg.push_point(vec![dy("1"), dy("1/2")]).unwrap();
        cfg.push_point(vec![dy("0"), dy("0")]).unwrap();
        cfg.push_region(unit_square()).unwrap();
        let g = incidences_bruteforce(&cfg).unwrap();
        assert!(!g.contains(0, 0));
        assert!(g.contains(1, 0));
        assert_eq!(incidences_sweep(&cfg).unwrap(), g);
    }

    #[test]
    fn sweep_rejects_polytopes() {
        use crate::dyadic::{Halfspace, TranslatePolytope};
        let mut cfg = Configuration::new(2).unwrap();
        let h = Halfspace { normal: vec![dy("1"), dy("0")], offset: dy("0"), strict: true };
        cfg.push_region(TranslatePolytope::new(2, vec![h], vec![vec![dy("0"), dy("0")]]).unwrap()).unwrap();
        assert_eq!(incidences_sweep(&cfg), Err(Error::UnsupportedRegion { region: 0 }));
    }

    #[test]
    fn empty_regions_have_no_edges() {
        let mut cfg = Configuration::new(2).unwrap();
        cfg.push_point(vec![dy("0"), dy("0")]).unwrap();
        assert_eq!(incidences_sweep(&cfg).unwrap().edge_count(), 0);
    }

    #[test]
    fn shared_pair_is_a_k22() {
        let g = IncidenceGraph::from_pairs(2, vec![1, 1], [(0, 0), (0, 1), (1, 0), (1, 1)]);
        let w = find_biclique(&g, 2).unwrap();
        assert_eq!(w.points, [0, 1]);
        assert_eq!(w.regions, [0, 1]);
        assert!(is_kk_free(&g, 3));
    }

    #[test]
    fn repeated_region_counts_twice() {
        let g = IncidenceGraph::from_pairs(2, vec![2], [(0, 0), (1, 0)]);
        assert_eq!(g.edge_count(), 4);
        assert_eq!(find_biclique(&g, 2).unwrap().regions, [0, 0]);
    }

    #[test]
    fn general_k_agrees_with_pair_counting() {
        let g = IncidenceGraph::from_pairs(3, vec![1, 1, 1], [(0, 0), (0, 1), (1, 1), (1, 2), (2, 2)]);
        assert!(is_kk_free(&g, 2));
        let point_mult = vec![1; 3];
        assert!(biclique_search(&g.point_adj, &point_mult, 3, &g.multiplicities, 2).is_none());
        let h = IncidenceGraph::from_pairs(3, vec![1, 1, 1], (0..3).flat_map(|p| (0..3).map(move |r| (p, r))));
        let w = find_biclique(&h, 3).unwrap();
        assert_eq!(w.points.len(), 3);
        assert_eq!(w.regions.len(), 3);
    }

    #[test]
    fn fewer_points_than_k_is_free() {
        let g = IncidenceGraph::from_pairs(1, vec![1, 1, 1], [(0, 0), (0, 1), (0, 2)]);
        assert!(is_kk_free(&g, 2));
    }

    #[test]
    fn full_cube_is_its_own_witness() {
        let set = CellSet::full(FiniteGrid::new(vec![2, 2, 2]).unwrap());
        let w = is_grid_free(&set, 2, DEFAULT_MAX_CELLS).unwrap().unwrap();
        assert_eq!(w.parts, vec![vec![0, 1]; 3]);
        assert!(witness_holds(&set, &w));
    }

    #[test]
    fn diagonal_is_free() {
        let g = FiniteGrid::new(vec![5, 5, 5]).unwrap();
        let set = CellSet::from_fn(g, |c| c[0] == c[1] && c[1] == c[2]);
        assert_eq!(is_grid_free(&set, 2, DEFAULT_MAX_CELLS).unwrap(), None);
    }

    #[test]
    fn cyclic_shift_is_free() {
        let g = FiniteGrid::new(vec![7, 7]).unwrap();
        let set = CellSet::from_fn(g, |c| c[1] == (c[0] + 1) % 7);
        assert_eq!(is_grid_free(&set, 2, DEFAULT_MAX_CELLS).unwrap(), None);
    }

    #[test]
    fn cell_cutoff() {
        let set = CellSet::empty(FiniteGrid::new(vec![10, 10]).unwrap());
        assert_eq!(is_grid_free(&set, 2, 99), Err(Error::BudgetExceeded { limit: 99, requested: 100 }));
    }
}
