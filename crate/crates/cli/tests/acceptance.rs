//! Acceptance run: seven criteria, one PASS/FAIL line each.
//!
//! Built with `harness = false`; exits non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zlab::fit::{fit, Model, SeriesPoint};
use zlab::format::read_config;
use zlab::random::{generate_random, random_instance};
use zlab_core::dyadic::{GeneralBox, Region};
use zlab_core::extremal::extremal_family;
use zlab_core::grid::{
    check_monotone, BasicSetCert, CellSet, Comparison, FiniteGrid, GridComplexityCert, MonotoneTable,
};
use zlab_core::halving::halving_decomposition_r2;
use zlab_core::incidence::{
    incidences_bruteforce, incidences_sweep, is_grid_free, is_kk_free, Configuration, IncidenceGraph,
    DEFAULT_MAX_CELLS,
};
use zlab_core::peel::{build_rect_order, peel_run};
use zlab_core::split::{coordinate_split, split_relations, verify_split};

// Tolerances and budgets, as pinned by the criteria.
const C1_RUNTIME: Duration = Duration::from_secs(5);
const C2_RUNTIME: Duration = Duration::from_secs(120);
const C2_BAND_WIDTH: f64 = 4.0;
const C3_INSTANCES: u64 = 100;
const C3_MAX_N: usize = 500;
const C4_RANDOM_TABLES: usize = 1000;
const C4_VALUE_RANGE: i64 = 6;
const C5_MAX_N: usize = 256;
const C5_ALPHA_SPREAD: f64 = 2.0;
const C6_RANDOM_CONFIGS: u64 = 50;
const C7_MAX_N: usize = 40;

type Verdict = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn zlab(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_zlab")).args(args).output().expect("zlab runs")
}

/// Criterion 1: `gen-extremal` output has exactly `(ℓ^ℓ, ℓ^ℓ, ℓ·ℓ^ℓ)` and passes
/// `check-kfree --k 2`.
fn criterion_1() -> Verdict {
    let started = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut seen = Vec::new();
    for ell in 2..=4usize {
        let path = dir.path().join(format!("extremal-{ell}.json"));
        let p = path.to_str().unwrap();
        let out = zlab(&["gen-extremal", "--ell", &ell.to_string(), "--out", p]);
        check(out.status.success(), || format!("gen-extremal --ell {ell} failed"))?;
        let cfg = read_config(&path).map_err(|e| e.to_string())?;
        let g = incidences_bruteforce(&cfg).map_err(|e| e.to_string())?;
        let n = ell.pow(ell as u32);
        let got = (cfg.n1(), cfg.n2() as usize, g.edge_count() as usize);
        check(got == (n, n, ell * n), || format!("ell = {ell}: counts {got:?}, expected {:?}", (n, n, ell * n)))?;
        check(cfg.regions().iter().all(|r| r.as_dyadic().is_some()), || format!("ell = {ell}: non-dyadic box"))?;
        let count = zlab(&["count", "--in", p]);
        let printed = String::from_utf8_lossy(&count.stdout).trim().to_string();
        check(printed == (ell * n).to_string(), || format!("ell = {ell}: count printed {printed:?}"))?;
        let free = zlab(&["check-kfree", "--in", p, "--k", "2"]);
        let verdict = String::from_utf8_lossy(&free.stdout).trim().to_string();
        check(free.status.code() == Some(0) && verdict == "free", || format!("ell = {ell}: check-kfree said {verdict:?}"))?;
        seen.push(format!("{got:?}"));
    }
    let elapsed = started.elapsed();
    check(elapsed < C1_RUNTIME, || format!("took {elapsed:.2?}, budget {C1_RUNTIME:?}"))?;
    Ok(format!("{} in {elapsed:.2?}", seen.join(" ")))
}

/// Criterion 2: on `ℓ = 2..5`, the loglog model has smaller residual than linear and
/// `n log n`, and `(|E|/n)·(log log n / log n)` stays within a band of
/// width at most 4.
fn criterion_2() -> Verdict {
    let started = Instant::now();
    let mut series = Vec::new();
    let mut ratios = Vec::new();
    for ell in 2..=5usize {
        let cfg = extremal_family(ell).map_err(|e| e.to_string())?;
        let g = incidences_sweep(&cfg).map_err(|e| e.to_string())?;
        let n = ell.pow(ell as u32);
        check(g.edge_count() as usize == ell * n, || format!("ell = {ell}: {} incidences", g.edge_count()))?;
        let p = SeriesPoint { n1: cfg.n1() as u64, n2: cfg.n2(), incidences: g.edge_count() };
        let nn = p.n();
        check(nn as usize == 2 * n, || "n differs from 2·ℓ^ℓ".into())?;
        ratios.push(p.incidences as f64 / nn * nn.ln().ln() / nn.ln());
        series.push(p);
    }
    let elapsed = started.elapsed();
    let linear = fit(&series, Model::Linear).map_err(|e| e.to_string())?;
    let nlogn = fit(&series, Model::Polylog { r: 2, s: 1 }).map_err(|e| e.to_string())?;
    let loglog = fit(&series, Model::Loglog).map_err(|e| e.to_string())?;
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    let width = hi / lo;
    let detail = format!(
        "residuals loglog {:.4}, linear {:.4}, nlogn {:.4}; ratio band [{lo:.4}, {hi:.4}] width {width:.3}; {elapsed:.2?}",
        loglog.residual, linear.residual, nlogn.residual
    );
    check(elapsed < C2_RUNTIME, || format!("{detail}; over the {C2_RUNTIME:?} budget"))?;
    check(width <= C2_BAND_WIDTH, || format!("{detail}; band too wide"))?;
    check(loglog.residual < linear.residual, || format!("{detail}; loglog does not beat linear"))?;
    check(loglog.residual < nlogn.residual, || format!("{detail}; loglog does not beat n log n"))?;
    Ok(detail)
}

fn adjacency(g: &IncidenceGraph) -> BTreeSet<(usize, usize)> {
    g.edges().collect()
}

/// Criterion 3: sweep and brute force agree on 100 seeded random planar instances.
fn criterion_3() -> Verdict {
    let mut edges = 0u64;
    let mut boundary_boxes = 0usize;
    for seed in 0..C3_INSTANCES {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + seed);
        let n1 = rng.gen_range(1..=C3_MAX_N);
        let n2 = rng.gen_range(1..=C3_MAX_N);
        let base = random_instance(n1, n2, 2, seed).map_err(|e| e.to_string())?;
        // every other box becomes a general box with random closed faces
        let mut cfg = Configuration::new(2).map_err(|e| e.to_string())?;
        for p in base.points() {
            cfg.push_point(p.clone()).map_err(|e| e.to_string())?;
        }
        for (i, r) in base.regions().iter().enumerate() {
            let b = r.as_dyadic().expect("random boxes are dyadic");
            let region: Region = if i % 2 == 0 {
                b.clone().into()
            } else {
                let mut axes = GeneralBox::from(b).axes().to_vec();
                for a in &mut axes {
                    a.lower_closed = rng.gen();
                    a.upper_closed = rng.gen();
                }
                boundary_boxes += 1;
                GeneralBox::new(axes).map_err(|e| e.to_string())?.into()
            };
            cfg.push_region_with_multiplicity(region, rng.gen_range(1..=2)).map_err(|e| e.to_string())?;
        }
        let brute = incidences_bruteforce(&cfg).map_err(|e| e.to_string())?;
        let sweep = incidences_sweep(&cfg).map_err(|e| e.to_string())?;
        check(adjacency(&brute) == adjacency(&sweep), || format!("seed {seed}: adjacency differs"))?;
        check(brute.edge_count() == sweep.edge_count(), || format!("seed {seed}: |E| differs"))?;
        edges += brute.edge_count();
    }
    Ok(format!("{C3_INSTANCES} instances, {edges} incidences in total, {boundary_boxes} general boxes"))
}

/// Warshall closure of a relation given as successor bitsets.
fn closure(rel: &[Vec<bool>]) -> Vec<Vec<bool>> {
    let n = rel.len();
    let mut m = rel.to_vec();
    for w in 0..n {
        for u in 0..n {
            if m[u][w] {
                for v in 0..n {
                    if m[w][v] {
                        m[u][v] = true;
                    }
                }
            }
        }
    }
    m
}

/// Every check of criterion 4 on one basic set.
fn check_split(x: &BasicSetCert) -> Result<(), String> {
    let cert = coordinate_split(x).map_err(|e| format!("split failed: {e}"))?;
    check(verify_split(x, &cert), || "verify_split rejected".into())?;
    let rel = split_relations(x).map_err(|e| e.to_string())?;
    let n = rel.node_count();
    let tri: Vec<Vec<bool>> = (0..n).map(|u| (0..n).map(|v| rel.triangle[u].contains(v)).collect()).collect();
    let full = closure(&tri);
    for u in 0..n {
        for v in 0..n {
            check(rel.closure[u].contains(v) == full[u][v], || format!("closure differs at ({u}, {v})"))?;
        }
    }
    let union: Vec<Vec<bool>> = (0..n)
        .map(|u| (0..n).map(|v| full[u][v] || rel.product[u].contains(v)).collect())
        .collect();
    let reach = closure(&union);
    check((0..n).all(|u| !reach[u][u]), || "<^r ∪ ◁^t has a cycle".into())?;
    Ok(())
}

fn split_all_thresholds(table: &MonotoneTable, lo: i64, hi: i64) -> Result<usize, String> {
    let mut count = 0;
    for l in lo..=hi {
        for cmp in [Comparison::Lt, Comparison::Le, Comparison::Gt, Comparison::Ge] {
            let x = BasicSetCert::new(table.clone(), l, cmp);
            check_split(&x).map_err(|e| format!("{e} on {:?} {} {l}", table.values(), cmp.symbol()))?;
            count += 1;
        }
    }
    Ok(count)
}

/// All value vectors of length `len` over `0..base`.
fn all_vectors(len: usize, base: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..base).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Criterion 4: coordinate splitting over an exhaustive small family and 1000 random
/// larger tables.
fn criterion_4() -> Verdict {
    let mut splits = 0usize;
    let mut tables = 0usize;
    // every g(x) + h(y) with g, h valued in 0..=3 on grids up to 4×4
    for a in 1..=4 {
        for b in 1..=4 {
            let grid = FiniteGrid::new(vec![a, b]).unwrap();
            for g in all_vectors(a, C4_VALUE_RANGE / 2 + 1) {
                for h in all_vectors(b, C4_VALUE_RANGE / 2 + 1) {
                    let t = MonotoneTable::from_fn(grid.clone(), |c| g[c[0]] + h[c[1]]);
                    check(check_monotone(&t).is_ok(), || format!("quasi-linear table rejected: {:?}", t.values()))?;
                    // thresholds -1..=7 cover every sublevel set of 0..=6
                    splits += split_all_thresholds(&t, -1, C4_VALUE_RANGE + 1)?;
                    tables += 1;
                }
            }
        }
    }
    // every monotone table with values in 0..=6 on grids of at most 4 cells
    let mut general = 0usize;
    for (a, b) in [(1, 1), (1, 2), (2, 1), (1, 3), (3, 1), (1, 4), (4, 1), (2, 2)] {
        let grid = FiniteGrid::new(vec![a, b]).unwrap();
        for values in all_vectors(a * b, C4_VALUE_RANGE + 1) {
            let t = MonotoneTable::new(grid.clone(), values).unwrap();
            if check_monotone(&t).is_err() {
                continue;
            }
            splits += split_all_thresholds(&t, -1, C4_VALUE_RANGE + 1)?;
            general += 1;
        }
    }
    // random larger tables: φ(Σ g_i) with φ strictly increasing, or Π g_i
    // with positive factors
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for i in 0..C4_RANDOM_TABLES {
        let rank = rng.gen_range(2..=3);
        let sizes: Vec<usize> = (0..rank).map(|_| rng.gen_range(2..=if rank == 2 { 9 } else { 5 })).collect();
        let grid = FiniteGrid::new(sizes.clone()).unwrap();
        let parts: Vec<Vec<i64>> = sizes.iter().map(|&n| (0..n).map(|_| rng.gen_range(1..=8)).collect()).collect();
        let multiplicative = i % 2 == 1;
        let steps: Vec<i64> = (0..=64).map(|_| rng.gen_range(1..=3)).collect();
        let t = MonotoneTable::from_fn(grid, |c| {
            if multiplicative {
                c.iter().zip(&parts).map(|(&x, g)| g[x]).product()
            } else {
                let s: i64 = c.iter().zip(&parts).map(|(&x, g)| g[x]).sum();
                steps[..s as usize].iter().sum()
            }
        });
        check(check_monotone(&t).is_ok(), || format!("random table {i} is not monotone"))?;
        let values = t.values();
        let l = values[rng.gen_range(0..values.len())] + rng.gen_range(0..=1);
        let cmp = *[Comparison::Lt, Comparison::Le, Comparison::Gt, Comparison::Ge].choose(&mut rng).unwrap();
        check_split(&BasicSetCert::new(t.clone(), l, cmp)).map_err(|e| format!("random table {i}: {e}"))?;
        splits += 1;
    }
    Ok(format!(
        "{tables} quasi-linear tables, {general} general small tables, {C4_RANDOM_TABLES} random tables; {splits} splits checked"
    ))
}

/// `{a(x) < b(y)}` where one row is long and every other row meets at most
/// the column with the largest `b`; labels scrambled by `rng`.
fn hook(n: usize, rng: &mut ChaCha8Rng) -> GridComplexityCert {
    let g = FiniteGrid::new(vec![n, n]).unwrap();
    let mut b: Vec<i64> = (1..=n as i64).collect();
    b.shuffle(rng);
    let top = b.iter().position(|&v| v == n as i64).unwrap();
    b[top] = n as i64 + 1;
    let long = rng.gen_range(0..n);
    let a: Vec<i64> = (0..n)
        .map(|x| if x == long { rng.gen_range(0..n as i64 / 2) } else { n as i64 + rng.gen_range(0..=1) })
        .collect();
    let f = MonotoneTable::from_fn(g.clone(), |c| a[c[0]] - b[c[1]]);
    GridComplexityCert::new(g, vec![BasicSetCert::new(f, 0, Comparison::Lt)]).unwrap()
}

/// `{a(x) < b(y) ≤ a(x) + w}` with `a`, `b` scrambled even and odd values:
/// each row holds about `(w + 1)/2` consecutive columns.
fn staircase(n: usize, w: i64, rng: &mut ChaCha8Rng) -> GridComplexityCert {
    let g = FiniteGrid::new(vec![n, n]).unwrap();
    let mut a: Vec<i64> = (0..n as i64).map(|i| 2 * i).collect();
    let mut b: Vec<i64> = (0..n as i64).map(|i| 2 * i + 1).collect();
    a.shuffle(rng);
    b.shuffle(rng);
    let f1 = MonotoneTable::from_fn(g.clone(), |c| a[c[0]] - b[c[1]]);
    let f2 = MonotoneTable::from_fn(g.clone(), |c| b[c[1]] - a[c[0]] - w);
    GridComplexityCert::new(g, vec![BasicSetCert::new(f1, 0, Comparison::Lt), BasicSetCert::new(f2, 0, Comparison::Le)])
        .unwrap()
}

/// Criterion 5: halving decomposition on certified `K_{2,2}`-free sets of
/// complexity 1 and 2, grids up to 256×256.
fn criterion_5() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut report = Vec::new();
    let families: [(&str, usize, fn(usize, &mut ChaCha8Rng) -> GridComplexityCert); 3] = [
        ("hook", 1, hook),
        ("staircase-1", 2, |n, r| staircase(n, 1, r)),
        ("staircase-3", 2, |n, r| staircase(n, 3, r)),
    ];
    for (name, s, make) in families {
        let mut alphas = Vec::new();
        let mut n = 8;
        while n <= C5_MAX_N {
            let cert = make(n, &mut rng);
            check(cert.complexity() == s, || format!("{name}: complexity {}", cert.complexity()))?;
            let set = cert.denoted();
            let witness = is_grid_free(&set, 2, DEFAULT_MAX_CELLS).map_err(|e| e.to_string())?;
            check(witness.is_none(), || format!("{name} n = {n}: not K22-free"))?;
            let tree = halving_decomposition_r2(&cert, 2, DEFAULT_MAX_CELLS).map_err(|e| e.to_string())?;
            let mut seen = CellSet::empty(set.grid().clone());
            let mut covered = 0usize;
            for leaf in tree.leaves() {
                for &x in &leaf.rows {
                    for &y in &leaf.cols {
                        check(set.contains(&[x, y]), || format!("{name} n = {n}: leaf cell outside A"))?;
                        check(!seen.contains(&[x, y]), || format!("{name} n = {n}: leaves overlap"))?;
                        seen.insert(&[x, y]).unwrap();
                        covered += 1;
                    }
                }
            }
            check(covered == set.len() && tree.total == set.len(), || format!("{name} n = {n}: leaves miss cells"))?;
            check(tree.max_halvings <= tree.halving_depth_bound(), || {
                format!("{name} n = {n}: depth {} > {}", tree.max_halvings, tree.halving_depth_bound())
            })?;
            check(tree.total as f64 <= tree.bound(), || format!("{name} n = {n}: |A| above α̂·n·ln^s(n+1)"))?;
            alphas.push(tree.alpha_hat);
            n *= 2;
        }
        let lo = alphas.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = alphas.iter().cloned().fold(0.0, f64::max);
        check(hi / lo <= C5_ALPHA_SPREAD, || format!("{name}: α̂ ranges over [{lo:.4}, {hi:.4}]"))?;
        report.push(format!("{name} (s={s}) α̂ in [{lo:.3}, {hi:.3}]"));
    }
    Ok(report.join("; "))
}

/// Criterion 6: peeling on extremal families (ℓ ≤ 4) and 50 random `K_{2,2}`-free
/// dyadic configurations with the default `c`.
fn criterion_6() -> Verdict {
    let mut inputs: Vec<(String, Configuration)> = Vec::new();
    for ell in 2..=4 {
        inputs.push((format!("extremal-{ell}"), extremal_family(ell).map_err(|e| e.to_string())?));
    }
    for seed in 0..C6_RANDOM_CONFIGS {
        let cfg = generate_random(200, 200, 2, 600 + seed, 2).map_err(|e| e.to_string())?.config;
        inputs.push((format!("random-{seed}"), cfg));
    }
    let mut steps = 0usize;
    let mut worst = 0.0f64;
    for (name, cfg) in &inputs {
        let g = incidences_sweep(cfg).map_err(|e| e.to_string())?;
        check(is_kk_free(&g, 2), || format!("{name}: input not K22-free"))?;
        let order = build_rect_order(cfg, 2).map_err(|e| format!("{name}: {e}"))?;
        let linear = order.poset().is_locally_d_linear(1).map_err(|e| e.to_string())?;
        check(linear, || format!("{name}: order not locally 1-linear"))?;
        // peel_run fails on any violated step inequality
        let t = peel_run(cfg, 2, None).map_err(|e| format!("{name}: {e}"))?;
        check(t.steps_hold(), || format!("{name}: a step inequality fails"))?;
        check(t.terminated, || format!("{name}: P_t is not empty (chain {:?})", t.chain))?;
        check(t.bound_holds(), || format!("{name}: Σ|ℓ| = {} > {}", t.total, t.bound))?;
        steps += t.steps.len();
        worst = worst.max(t.total as f64 / t.bound);
    }
    Ok(format!("{} configurations, {steps} peel steps, largest Σ|ℓ|/bound = {worst:.4}", inputs.len()))
}

/// Rows `k` at a time: a `k × k` sub-grid exists iff some `k` rows share
/// `k` columns.
fn has_kk_by_rows(rows: &[u32], k: usize) -> bool {
    fn rec(rows: &[u32], start: usize, left: usize, common: u32, k: usize) -> bool {
        if common.count_ones() < k as u32 {
            return false;
        }
        if left == 0 {
            return true;
        }
        (start..rows.len()).any(|i| rec(rows, i + 1, left - 1, common & rows[i], k))
    }
    rec(rows, 0, k, u32::MAX, k)
}

/// Criterion 7: `|A| ≤ k·n` for every `K_{k,k}`-free set among all full grids with
/// `n = |B_1| + |B_2| ≤ 40`, and all subsets of grids up to 4×4.
fn criterion_7() -> Verdict {
    let mut grids = 0usize;
    let mut tightest = 0.0f64;
    for k in 2..=3usize {
        for a in 1..C7_MAX_N {
            for b in 1..=C7_MAX_N - a {
                let set = CellSet::full(FiniteGrid::new(vec![a, b]).unwrap());
                let free = is_grid_free(&set, k, DEFAULT_MAX_CELLS).map_err(|e| e.to_string())?.is_none();
                check(free == (a.min(b) < k), || format!("{a}×{b}, k = {k}: freeness decided wrongly"))?;
                if free {
                    check(a * b <= k * (a + b), || format!("{a}×{b}, k = {k}: |A| = {} > k·n", a * b))?;
                    tightest = tightest.max((a * b) as f64 / (k * (a + b)) as f64);
                }
                grids += 1;
            }
        }
    }
    let mut subsets = 0usize;
    for k in 2..=3usize {
        for a in 1..=4usize {
            for b in 1..=4usize {
                let grid = FiniteGrid::new(vec![a, b]).unwrap();
                for mask in 0u32..1 << (a * b) {
                    let rows: Vec<u32> = (0..a).map(|x| (mask >> (x * b)) & ((1 << b) - 1)).collect();
                    let set = CellSet::from_fn(grid.clone(), |c| mask >> (c[0] * b + c[1]) & 1 == 1);
                    let free = is_grid_free(&set, k, DEFAULT_MAX_CELLS).map_err(|e| e.to_string())?.is_none();
                    check(free != has_kk_by_rows(&rows, k), || format!("{a}×{b} mask {mask:#x}, k = {k}: disagreement"))?;
                    if free {
                        let size = mask.count_ones() as usize;
                        check(size <= k * (a + b), || format!("{a}×{b} mask {mask:#x}: |A| = {size} > k·n"))?;
                        tightest = tightest.max(size as f64 / (k * (a + b)) as f64);
                    }
                    subsets += 1;
                }
            }
        }
    }
    Ok(format!("{grids} full grids and {subsets} subsets checked; largest |A|/(k·n) = {tightest:.3}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 7] = [
        ("extremal exactness", criterion_1),
        ("growth-shape reproduction", criterion_2),
        ("oracle equivalence", criterion_3),
        ("coordinate-split correctness", criterion_4),
        ("halving decomposition accounting", criterion_5),
        ("peeling soundness", criterion_6),
        ("base-case bound", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = started.elapsed();
        match verdict {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} [{took:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail} [{took:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
