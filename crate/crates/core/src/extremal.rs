//! The stepping-up construction and the extremal family of dyadic boxes.
//!
//! Coordinates are chosen explicitly:
//!
//! * every low point `p_i` gets the level-`g` dyadic cell `β_i` containing
//!   it, with `g` fine enough that every cell lies inside or outside each low
//!   box and distinct coordinates land in distinct cells;
//! * the high configuration, enclosed in one dyadic cell `D` of level `τ` on
//!   its first `d − 1` axes, is mapped onto the second quarter of `β_i` by a
//!   power-of-two dilation, so boxes stay dyadic;
//! * each high point `q_j` gets the level-`h` slab `I_j` around its last
//!   coordinate; its `i`-th copy sits at the odd position
//!   `I_j.lo + (2i + 1)·2^{−h−w}`, which keeps last coordinates distinct;
//! * slab boxes are `c_l × I_j`.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::dyadic::{DyadicBox, DyadicInterval, DyadicRational, Region};
use crate::incidence::{
    find_biclique, incidences_bruteforce, incidences_sweep, Configuration, IncidenceGraph, Provenance,
};
use crate::{Error, Result};

/// Default cap on `ℓ` for [`extremal_family`].
pub const DEFAULT_MAX_ELL: usize = 6;

/// Counts before and after one stepping-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SteppingParams {
    /// Low configuration: points, boxes, incidences.
    pub n1: u64,
    pub n2: u64,
    pub m: u64,
    /// High configuration: points, boxes, incidences.
    pub n1_high: u64,
    pub n2_high: u64,
    pub m_high: u64,
}

impl SteppingParams {
    /// `(n_1 n'_1, n_1 n'_2 + n'_1 n_2, n_1 m' + m n'_1)`.
    pub fn predicted(&self) -> (u64, u64, u64) {
        (
            self.n1 * self.n1_high,
            self.n1 * self.n2_high + self.n1_high * self.n2,
            self.n1 * self.m_high + self.m * self.n1_high,
        )
    }
}

/// Whether `p` and `q` have the same order-type over `r`: on every axis the
/// comparisons inside each tuple agree, and so do the comparisons against
/// every reference point.
pub fn same_order_type(p: &[Vec<DyadicRational>], q: &[Vec<DyadicRational>], r: &[Vec<DyadicRational>]) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch { expected: p.len(), found: q.len() });
    }
    let Some(d) = p.first().or(r.first()).map(Vec::len) else {
        return Ok(true);
    };
    for x in p.iter().chain(q).chain(r) {
        if x.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: x.len() });
        }
    }
    for axis in 0..d {
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                if p[a][axis].cmp(&p[b][axis]) != q[a][axis].cmp(&q[b][axis]) {
                    return Ok(false);
                }
            }
            for c in r {
                if p[a][axis].cmp(&c[axis]) != q[a][axis].cmp(&c[axis]) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn ceil_log2(n: usize) -> i64 {
    if n <= 1 {
        0
    } else {
        i64::from(usize::BITS - (n - 1).leading_zeros())
    }
}

/// `ℓ` points `(2i + 1) / 2^{⌈log₂ ℓ⌉ + 1}` inside `[0, 1)`.
pub fn base_interval_config(ell: usize) -> Result<Configuration> {
    if ell == 0 {
        return Err(Error::InvalidParameter { name: "ell", detail: "ell must be at least 1".into() });
    }
    let mut cfg = Configuration::new(1)?;
    let e = -(ceil_log2(ell) + 1);
    for i in 0..ell {
        cfg.push_point(vec![DyadicRational::new(2 * i as i64 + 1, e)])?;
    }
    cfg.push_region(DyadicBox::new(vec![DyadicInterval::new(0, 0)])?)?;
    cfg.meta = Provenance {
        generator: "base-interval".into(),
        params: vec![("ell".into(), ell.to_string())],
        seed: None,
    };
    Ok(cfg)
}

fn dyadic_boxes(cfg: &Configuration) -> Result<Vec<&DyadicBox>> {
    cfg.regions()
        .iter()
        .enumerate()
        .map(|(i, r)| r.as_dyadic().ok_or(Error::NotDyadic { region: i }))
        .collect()
}

fn incidence_graph(cfg: &Configuration) -> Result<IncidenceGraph> {
    if cfg.dim() == 2 {
        incidences_sweep(cfg)
    } else {
        incidences_bruteforce(cfg)
    }
}

fn require_k22_free(g: &IncidenceGraph) -> Result<()> {
    match find_biclique(g, 2) {
        Some(w) => Err(Error::Biclique(w)),
        None => Ok(()),
    }
}

fn require_distinct(values: &mut Vec<&DyadicRational>, what: &str) -> Result<()> {
    values.sort();
    if let Some(w) = values.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::CoordinateCollision { detail: format!("{what}: repeated coordinate {}", w[0]) });
    }
    Ok(())
}

/// Smallest level `g ≥ g0` whose cells separate all distinct `values`.
fn separating_level(values: &[&DyadicRational], g0: i64) -> i64 {
    let mut sorted: Vec<&DyadicRational> = values.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut g = g0;
    while sorted.windows(2).any(|w| w[0].floor_div_pow2(-g) == w[1].floor_div_pow2(-g)) {
        g += 1;
    }
    g
}

/// Replaces each low point by a shrunken copy of `high` and adds the slab
/// boxes `c_l × I_j`.
///
/// `low` lives in dimension `d − 1`, `high` in dimension `d`. Both must be
/// `K_{2,2}`-free with dyadic boxes only; low points need pairwise distinct
/// coordinates on every axis that avoid all low box endpoints, and high
/// points need distinct last coordinates.
pub fn step_up(low: &Configuration, high: &Configuration) -> Result<Configuration> {
    let d = high.dim();
    if low.dim() + 1 != d {
        return Err(Error::DimensionMismatch { expected: d - 1, found: low.dim() });
    }
    let low_boxes = dyadic_boxes(low)?;
    let high_boxes = dyadic_boxes(high)?;
    let low_graph = incidence_graph(low)?;
    let high_graph = incidence_graph(high)?;
    require_k22_free(&low_graph)?;
    require_k22_free(&high_graph)?;

    let params = SteppingParams {
        n1: low.n1() as u64,
        n2: low.n2(),
        m: low_graph.edge_count(),
        n1_high: high.n1() as u64,
        n2_high: high.n2(),
        m_high: high_graph.edge_count(),
    };

    // β_i: level-g cells around the low points
    let mut g = 0i64;
    for axis in 0..d - 1 {
        let mut coords: Vec<&DyadicRational> = low.points().iter().map(|p| &p[axis]).collect();
        require_distinct(&mut coords, "low points")?;
        for b in &low_boxes {
            let iv = &b.intervals()[axis];
            let (lo, hi) = (iv.lower(), iv.upper());
            if coords.binary_search(&&lo).is_ok() || coords.binary_search(&&hi).is_ok() {
                return Err(Error::CoordinateCollision {
                    detail: format!("low point on a box boundary at {lo} or {hi} (axis {axis})"),
                });
            }
            g = g.max(-iv.t());
        }
        g = g.max(separating_level(&coords, g));
    }

    // D: one level-τ cell holding the high configuration on the first d − 1 axes
    let mut tau = high_boxes.iter().flat_map(|b| b.intervals()[..d - 1].iter().map(DyadicInterval::t)).max().unwrap_or(0);
    let fits = |tau: i64| -> Option<Vec<BigInt>> {
        (0..d - 1)
            .map(|axis| {
                let mut cells = high
                    .points()
                    .iter()
                    .map(|p| p[axis].floor_div_pow2(tau))
                    .chain(high_boxes.iter().map(|b| b.intervals()[axis].lower().floor_div_pow2(tau)));
                let first = cells.next().unwrap_or_default();
                cells.all(|c| c == first).then_some(first)
            })
            .collect()
    };
    let tau_limit = tau + 512;
    let sigma = loop {
        if let Some(s) = fits(tau) {
            break s;
        }
        tau += 1;
        if tau > tau_limit {
            return Err(Error::InvalidParameter {
                name: "high",
                detail: "configuration does not fit in a single dyadic cell".into(),
            });
        }
    };

    // I_j: level-h slabs around the last coordinates of the high points
    let mut last: Vec<&DyadicRational> = high.points().iter().map(|q| &q[d - 1]).collect();
    require_distinct(&mut last, "high points (last axis)")?;
    let h0 = high_boxes.iter().map(|b| -b.intervals()[d - 1].t()).max().unwrap_or(0);
    let h = separating_level(&last, h0);
    let w = ceil_log2(low.n1()) + 1;
    let slabs: Vec<DyadicInterval> = high.points().iter().map(|q| DyadicInterval::containing(&q[d - 1], -h)).collect();

    let scale = -g - 2 - tau;
    let mut out = Configuration::new(d)?;
    let mut low_images: Vec<Vec<Vec<DyadicRational>>> = vec![Vec::new(); high.n1()];
    for p in low.points() {
        let shift: Vec<DyadicRational> = (0..d - 1)
            .map(|axis| {
                let gamma = p[axis].floor_div_pow2(-g);
                DyadicRational::new(gamma * 4 + 1 - &sigma[axis], -g - 2)
            })
            .collect();
        for (i_high, (q, slab)) in high.points().iter().zip(&slabs).enumerate() {
            let mut image: Vec<DyadicRational> =
                (0..d - 1).map(|axis| &q[axis].mul_pow2(scale) + &shift[axis]).collect();
            low_images[i_high].push(image.clone());
            let i = out.n1() / high.n1().max(1);
            let offset = DyadicRational::new(2 * i as i64 + 1, -h - w);
            image.push(&slab.lower() + &offset);
            out.push_point(image)?;
        }
        let mut pows = vec![scale; d - 1];
        pows.push(0);
        let mut shifts = shift.clone();
        shifts.push(DyadicRational::zero());
        for (b, &mult) in high_boxes.iter().zip(high.multiplicities()) {
            out.push_region_with_multiplicity(b.scale_translate(&shifts, &pows)?, mult)?;
        }
    }
    for (c, &mult) in low_boxes.iter().zip(low.multiplicities()) {
        for slab in &slabs {
            let mut intervals = c.intervals().to_vec();
            intervals.push(slab.clone());
            out.push_region_with_multiplicity(DyadicBox::new(intervals)?, mult)?;
        }
    }

    // order-type audit: for every j, the copies of q_j sit like the low points
    let corners: Vec<Vec<DyadicRational>> = low_boxes
        .iter()
        .flat_map(|b| {
            let lo = b.intervals().iter().map(DyadicInterval::lower).collect();
            let hi = b.intervals().iter().map(DyadicInterval::upper).collect();
            [lo, hi]
        })
        .collect();
    for images in &low_images {
        if !same_order_type(low.points(), images, &corners)? {
            return Err(Error::Internal("copies changed the order-type of the low points".into()));
        }
    }

    let graph = incidence_graph(&out)?;
    let found = (out.n1() as u64, out.n2(), graph.edge_count());
    if found != params.predicted() {
        return Err(Error::Internal(format!("step-up counts {found:?}, expected {:?}", params.predicted())));
    }
    if let Some(w) = find_biclique(&graph, 2) {
        return Err(Error::Internal(format!("step-up produced K_2,2 {w:?}")));
    }
    Ok(out)
}

/// `ℓ^ℓ` points and `ℓ^ℓ` dyadic rectangles with `ℓ·ℓ^ℓ` incidences and a
/// `K_{2,2}`-free incidence graph; `ℓ ≤ DEFAULT_MAX_ELL`.
pub fn extremal_family(ell: usize) -> Result<Configuration> {
    extremal_family_with_budget(ell, DEFAULT_MAX_ELL)
}

pub fn extremal_family_with_budget(ell: usize, max_ell: usize) -> Result<Configuration> {
    if ell < 2 {
        return Err(Error::InvalidParameter { name: "ell", detail: "ell must be at least 2".into() });
    }
    if ell > max_ell {
        let objects = |e: usize| (e as u128).checked_pow(e as u32).unwrap_or(u128::MAX);
        return Err(Error::BudgetExceeded { limit: objects(max_ell), requested: objects(ell) });
    }
    let base = base_interval_config(ell)?;
    let mut cfg = Configuration::new(2)?;
    cfg.push_point(vec![DyadicRational::new(1, -1), DyadicRational::new(1, -1)])?;
    for _ in 0..ell {
        cfg = step_up(&base, &cfg)?;
    }
    cfg.meta = Provenance {
        generator: "extremal".into(),
        params: vec![("ell".into(), ell.to_string())],
        seed: None,
    };
    debug_assert!(cfg.regions().iter().all(|r| matches!(r, Region::Dyadic(_))));
    Ok(cfg)
}
