//! Finite grids, coordinate-wise monotone tables and basic sets.
//!
//! Grid labels are opaque: axis `i` of a grid with sizes `(n_1, …, n_r)`
//! carries the labels `0..n_i`. Cells are stored row-major with the last axis
//! varying fastest. Linear orders `(S, <)` are represented by `i64`.

use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

use crate::{Error, Result};

/// The product `B_1 × ⋯ × B_r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGrid {
    sizes: Vec<usize>,
}

impl FiniteGrid {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::ZeroDimension);
        }
        sizes.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n)).ok_or(Error::Overflow)?;
        Ok(Self { sizes })
    }

    pub fn rank(&self) -> usize {
        self.sizes.len()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn cell_count(&self) -> usize {
        self.sizes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.contains(&0)
    }

    pub(crate) fn strides(&self) -> Vec<usize> {
        strides(&self.sizes)
    }

    pub fn index(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.rank());
        coords.iter().zip(self.strides()).map(|(c, s)| c * s).sum()
    }

    pub fn coords(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.rank()];
        for (slot, &n) in out.iter_mut().zip(&self.sizes).rev() {
            *slot = index % n;
            index /= n;
        }
        out
    }

    pub fn cells(&self) -> Odometer {
        Odometer::new(self.sizes.clone())
    }
}

pub(crate) fn strides(sizes: &[usize]) -> Vec<usize> {
    let mut out = vec![1; sizes.len()];
    for i in (0..sizes.len().saturating_sub(1)).rev() {
        out[i] = out[i + 1] * sizes[i + 1];
    }
    out
}

/// Row-major enumeration of all index tuples of a grid.
#[derive(Clone, Debug)]
pub struct Odometer {
    sizes: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Odometer {
    pub fn new(sizes: Vec<usize>) -> Self {
        let next = (!sizes.contains(&0)).then(|| vec![0; sizes.len()]);
        Self { sizes, next }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for i in (0..succ.len()).rev() {
            succ[i] += 1;
            if succ[i] < self.sizes[i] {
                self.next = Some(succ);
                return Some(current);
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

/// A total map from a grid into the integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonotoneTable {
    grid: FiniteGrid,
    values: Vec<i64>,
}

impl MonotoneTable {
    /// Wraps row-major values; monotonicity is checked separately by
    /// [`check_monotone`].
    pub fn new(grid: FiniteGrid, values: Vec<i64>) -> Result<Self> {
        if values.len() != grid.cell_count() {
            return Err(Error::DimensionMismatch {
                expected: grid.cell_count(),
                found: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: FiniteGrid, mut f: impl FnMut(&[usize]) -> i64) -> Self {
        let values = grid.cells().map(|c| f(&c)).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &FiniteGrid {
        &self.grid
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn value(&self, coords: &[usize]) -> i64 {
        self.values[self.grid.index(coords)]
    }

    pub(crate) fn value_at(&self, index: usize) -> i64 {
        self.values[index]
    }
}

/// A witness that `f(a ⊕_i b) ≤ f(a ⊕_i b')` and
/// `f(a' ⊕_i b) ≤ f(a' ⊕_i b')` disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonotonicityViolation {
    /// Zero-based axis `i`.
    pub axis: usize,
    /// `a`: labels of the remaining axes, in axis order.
    pub co: Vec<usize>,
    /// `a'`.
    pub co_prime: Vec<usize>,
    pub b: usize,
    pub b_prime: usize,
}

/// Dense ranks of a slice: equal values share a rank, ranks are `0..`.
pub(crate) fn dense_ranks(values: &[i64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by_key(|&i| values[i]);
    let mut ranks = vec![0; values.len()];
    let mut rank = 0;
    for w in 0..order.len() {
        if w > 0 && values[order[w]] != values[order[w - 1]] {
            rank += 1;
        }
        ranks[order[w]] = rank;
    }
    ranks
}

/// The fibre `b ↦ f(a ⊕_axis b)` for every co-coordinate `a`, as
/// `(a, values)` pairs in row-major order of `a`.
fn fibres(table: &MonotoneTable, axis: usize) -> impl Iterator<Item = (Vec<usize>, Vec<i64>)> + '_ {
    let sizes = table.grid.sizes();
    let stride = table.grid.strides();
    let co_sizes: Vec<usize> =
        sizes.iter().enumerate().filter(|&(j, _)| j != axis).map(|(_, &n)| n).collect();
    let co_strides: Vec<usize> =
        stride.iter().enumerate().filter(|&(j, _)| j != axis).map(|(_, &s)| s).collect();
    let n = sizes[axis];
    let step = stride[axis];
    Odometer::new(co_sizes).map(move |co| {
        let base: usize = co.iter().zip(&co_strides).map(|(c, s)| c * s).sum();
        let values = (0..n).map(|b| table.values[base + b * step]).collect();
        (co, values)
    })
}

/// The preorder `≤_i` induced on axis `i`, as dense ranks of its labels.
///
/// Only meaningful for monotone tables, where every fibre gives the same
/// ranks.
pub(crate) fn axis_ranks(table: &MonotoneTable, axis: usize) -> Vec<usize> {
    match fibres(table, axis).next() {
        Some((_, values)) => dense_ranks(&values),
        None => vec![0; table.grid.sizes()[axis]],
    }
}

/// Tests coordinate-wise monotonicity: along every axis the `≤`-pattern of
/// the fibres must not depend on the co-coordinate.
///
/// Axes are examined from the last to the first, so the reported violation
/// is on the highest failing axis.
pub fn check_monotone(table: &MonotoneTable) -> core::result::Result<(), MonotonicityViolation> {
    if table.grid.is_empty() {
        return Ok(());
    }
    for axis in (0..table.grid.rank()).rev() {
        if table.grid.sizes()[axis] < 2 {
            continue;
        }
        let mut fibres = fibres(table, axis);
        let (co0, ref_values) = fibres.next().expect("non-empty grid");
        let ref_ranks = dense_ranks(&ref_values);
        for (co, values) in fibres {
            if dense_ranks(&values) == ref_ranks {
                continue;
            }
            let n = values.len();
            for b in 0..n {
                for b_prime in 0..n {
                    let here = ref_values[b] <= ref_values[b_prime];
                    let there = values[b] <= values[b_prime];
                    if here != there {
                        return Err(MonotonicityViolation {
                            axis,
                            co: co0,
                            co_prime: co,
                            b,
                            b_prime,
                        });
                    }
                }
            }
            unreachable!("differing dense ranks imply a differing comparison");
        }
    }
    Ok(())
}

/// The comparison `□` in `{b : f(b) □ l}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparison {
    Lt,
    Le,
    Gt,
    Ge,
}

impl Comparison {
    pub fn holds(self, value: i64, threshold: i64) -> bool {
        match self {
            Comparison::Lt => value < threshold,
            Comparison::Le => value <= threshold,
            Comparison::Gt => value > threshold,
            Comparison::Ge => value >= threshold,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Lt => "<",
            Comparison::Le => "<=",
            Comparison::Gt => ">",
            Comparison::Ge => ">=",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "<" | "lt" => Comparison::Lt,
            "<=" | "le" => Comparison::Le,
            ">" | "gt" => Comparison::Gt,
            ">=" | "ge" => Comparison::Ge,
            _ => return None,
        })
    }
}

/// The basic set `{b ∈ B : f(b) □ l}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasicSetCert {
    pub table: MonotoneTable,
    pub threshold: i64,
    pub cmp: Comparison,
}

impl BasicSetCert {
    pub fn new(table: MonotoneTable, threshold: i64, cmp: Comparison) -> Self {
        Self { table, threshold, cmp }
    }

    pub fn grid(&self) -> &FiniteGrid {
        self.table.grid()
    }

    pub fn contains(&self, coords: &[usize]) -> bool {
        self.cmp.holds(self.table.value(coords), self.threshold)
    }

    pub(crate) fn contains_index(&self, index: usize) -> bool {
        self.cmp.holds(self.table.value_at(index), self.threshold)
    }

    /// Rewrites the set in strict form `{g(b) < l'}`.
    ///
    /// Values move to even integers (`±2f`) so that a successor of the
    /// threshold is available as an odd integer.
    pub fn to_strict(&self) -> Result<Self> {
        let sign = match self.cmp {
            Comparison::Lt | Comparison::Le => 2i64,
            Comparison::Gt | Comparison::Ge => -2i64,
        };
        let values = self
            .table
            .values
            .iter()
            .map(|v| v.checked_mul(sign).ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        let base = self.threshold.checked_mul(sign).ok_or(Error::Overflow)?;
        let threshold = match self.cmp {
            Comparison::Lt | Comparison::Gt => base,
            Comparison::Le | Comparison::Ge => base.checked_add(1).ok_or(Error::Overflow)?,
        };
        Ok(Self {
            table: MonotoneTable { grid: self.table.grid.clone(), values },
            threshold,
            cmp: Comparison::Lt,
        })
    }

    pub fn to_cell_set(&self) -> CellSet {
        let grid = self.grid().clone();
        let mut mask = FixedBitSet::with_capacity(grid.cell_count());
        for i in 0..grid.cell_count() {
            mask.set(i, self.contains_index(i));
        }
        CellSet { grid, mask }
    }
}

/// An intersection of at most `s` basic sets over one grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GridComplexityCert {
    grid: FiniteGrid,
    basics: Vec<BasicSetCert>,
}

impl GridComplexityCert {
    pub fn new(grid: FiniteGrid, basics: Vec<BasicSetCert>) -> Result<Self> {
        for b in &basics {
            if b.grid() != &grid {
                return Err(Error::InvalidParameter {
                    name: "basics",
                    detail: alloc::format!("basic set over {:?}, expected {:?}", b.grid().sizes(), grid.sizes()),
                });
            }
        }
        Ok(Self { grid, basics })
    }

    pub fn grid(&self) -> &FiniteGrid {
        &self.grid
    }

    pub fn basics(&self) -> &[BasicSetCert] {
        &self.basics
    }

    /// The certified grid-complexity `s`.
    pub fn complexity(&self) -> usize {
        self.basics.len()
    }

    /// `B ∩ X_1 ∩ ⋯ ∩ X_s`.
    pub fn denoted(&self) -> CellSet {
        let mut set = CellSet::full(self.grid.clone());
        for b in &self.basics {
            for i in 0..self.grid.cell_count() {
                if !b.contains_index(i) {
                    set.mask.set(i, false);
                }
            }
        }
        set
    }
}

/// An explicit subset of a grid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CellSet {
    grid: FiniteGrid,
    mask: FixedBitSet,
}

impl CellSet {
    pub fn empty(grid: FiniteGrid) -> Self {
        let mask = FixedBitSet::with_capacity(grid.cell_count());
        Self { grid, mask }
    }

    pub fn full(grid: FiniteGrid) -> Self {
        let mut set = Self::empty(grid);
        set.mask.insert_range(..);
        set
    }

    pub fn from_cells<I>(grid: FiniteGrid, cells: I) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: AsRef<[usize]>,
    {
        let mut set = Self::empty(grid);
        for c in cells {
            set.insert(c.as_ref())?;
        }
        Ok(set)
    }

    pub fn from_fn(grid: FiniteGrid, mut f: impl FnMut(&[usize]) -> bool) -> Self {
        let mut set = Self::empty(grid);
        for (i, c) in set.grid.cells().enumerate() {
            set.mask.set(i, f(&c));
        }
        set
    }

    pub fn insert(&mut self, coords: &[usize]) -> Result<()> {
        if coords.len() != self.grid.rank() {
            return Err(Error::DimensionMismatch { expected: self.grid.rank(), found: coords.len() });
        }
        if coords.iter().zip(self.grid.sizes()).any(|(c, n)| c >= n) {
            return Err(Error::InvalidParameter {
                name: "cell",
                detail: alloc::format!("{coords:?} outside grid {:?}", self.grid.sizes()),
            });
        }
        let i = self.grid.index(coords);
        self.mask.insert(i);
        Ok(())
    }

    pub fn grid(&self) -> &FiniteGrid {
        &self.grid
    }

    pub fn contains(&self, coords: &[usize]) -> bool {
        self.mask.contains(self.grid.index(coords))
    }

    pub fn contains_index(&self, index: usize) -> bool {
        self.mask.contains(index)
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.mask.is_clear()
    }

    pub fn cells(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.mask.ones().map(|i| self.grid.coords(i))
    }
}

/// `δ^r_j`: the elementary symmetric polynomial of degree `j` in the part
/// sizes.
pub fn delta(sizes: &[usize], j: usize) -> Result<u128> {
    if j > sizes.len() {
        return Err(Error::InvalidParameter {
            name: "j",
            detail: alloc::format!("{j} exceeds rank {}", sizes.len()),
        });
    }
    // e[i] = elementary symmetric sum of degree i over the sizes seen so far
    let mut e = vec![0u128; j + 1];
    e[0] = 1;
    for &n in sizes {
        for i in (1..=j).rev() {
            let term = e[i - 1].checked_mul(n as u128).ok_or(Error::Overflow)?;
            e[i] = e[i].checked_add(term).ok_or(Error::Overflow)?;
        }
    }
    Ok(e[j])
}

/// Whether `set` equals the intersection denoted by `cert`.
pub fn verify_grid_complexity(set: &CellSet, cert: &GridComplexityCert) -> bool {
    set.grid() == cert.grid() && set == &cert.denoted()
}
