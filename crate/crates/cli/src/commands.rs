//! Subcommands.

use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use zlab_core::extremal::{extremal_family_with_budget, DEFAULT_MAX_ELL};
use zlab_core::halving::halving_decomposition_r2;
use zlab_core::incidence::{find_biclique, incidences_bruteforce, incidences_sweep, is_grid_free, Configuration};
use zlab_core::peel::peel_run;
use zlab_core::split::{coordinate_split, verify_split, SplitNode};

use crate::fit::{fit_bounds, read_series, Model};
use crate::format::{digest, read_config, to_json, write_config};
use crate::grid_file::read_grid;
use crate::random::generate_random;
use crate::{incidence_graph, max_cells, Engine};

#[derive(Debug, Parser)]
#[command(name = "zlab", version, about = "Incidence configurations between points and boxes")]
pub struct Cli {
    /// Append a JSON run record to this file.
    #[arg(long, global = true)]
    pub record: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the ℓ-th extremal point/box family.
    GenExtremal {
        #[arg(long)]
        ell: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_ELL)]
        max_ell: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a seeded random K_{k,k}-free dyadic configuration.
    GenRandom {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the number of incidences (regions counted with multiplicity).
    Count {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Engine::Auto)]
        engine: Engine,
    },
    /// Decide whether the incidence graph contains K_{k,k}.
    CheckKfree {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Engine::Auto)]
        engine: Engine,
    },
    /// Decide whether a grid set contains a k × ⋯ × k sub-grid.
    CheckGridfree {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Split one basic set of a grid file along its last axis.
    Split {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        basic: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Halving decomposition of a certified 2-grid set.
    Decompose {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the peeling argument on a planar dyadic configuration.
    Peel {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Defaults to 4·k·(k−1)^k.
        #[arg(long)]
        c: Option<f64>,
        /// Per-step CSV trace.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Fit bound models to an incidence series (CSV with n1,n2,incidences).
    Fit {
        #[arg(long = "in")]
        input: PathBuf,
        /// Comma-separated: linear, kst, polylog, nlogn, loglog.
        #[arg(long, default_value = "linear,nlogn,loglog")]
        model: String,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, default_value_t = 1)]
        s: u32,
    },
    /// Time brute force against the sweep on extremal and random inputs.
    Bench {
        #[arg(long, default_value_t = 4)]
        ell_max: usize,
        /// Number of random instances.
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, default_value_t = 300)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// What a subcommand produced.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: String,
    pub exit: u8,
    pub record: Option<RunRecord>,
}

impl Outcome {
    fn ok(stdout: impl Into<String>) -> Self {
        Outcome { stdout: stdout.into(), exit: 0, record: None }
    }

    fn with_record(mut self, r: RunRecord) -> Self {
        self.record = Some(r);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunRecord {
    pub version: &'static str,
    pub operation: &'static str,
    pub digest: Option<String>,
    pub params: Value,
    pub n1: Option<u64>,
    pub n2: Option<u64>,
    pub incidences: Option<u64>,
    pub bound: Option<f64>,
    pub wall_ms: f64,
    pub seed: Option<u64>,
}

impl RunRecord {
    fn new(operation: &'static str, started: Instant, params: Value) -> Self {
        RunRecord {
            version: env!("CARGO_PKG_VERSION"),
            operation,
            digest: None,
            params,
            n1: None,
            n2: None,
            incidences: None,
            bound: None,
            wall_ms: started.elapsed().as_secs_f64() * 1e3,
            seed: None,
        }
    }

    fn config(mut self, cfg: &Configuration) -> Self {
        self.digest = Some(digest(cfg));
        self.n1 = Some(cfg.n1() as u64);
        self.n2 = Some(cfg.n2());
        self.seed = cfg.meta.seed;
        self
    }
}

fn emit(text: String, out: Option<&Path>) -> anyhow::Result<String> {
    match out {
        Some(path) => {
            std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
            Ok(String::new())
        }
        None => Ok(text + "\n"),
    }
}

fn emit_config(cfg: &Configuration, out: Option<&Path>) -> anyhow::Result<String> {
    match out {
        Some(path) => {
            write_config(path, cfg)?;
            Ok(String::new())
        }
        None => Ok(to_json(cfg) + "\n"),
    }
}

pub fn run(command: &Command) -> anyhow::Result<Outcome> {
    let started = Instant::now();
    match command {
        Command::GenExtremal { ell, max_ell, out } => {
            let cfg = extremal_family_with_budget(*ell, *max_ell)?;
            let text = emit_config(&cfg, out.as_deref())?;
            let record = RunRecord::new("gen-extremal", started, json!({ "ell": ell })).config(&cfg);
            Ok(Outcome::ok(text).with_record(record))
        }
        Command::GenRandom { n1, n2, dim, seed, k, out } => {
            let r = generate_random(*n1, *n2, *dim, *seed, *k)?;
            let text = emit_config(&r.config, out.as_deref())?;
            let params = json!({ "n1": n1, "n2": n2, "dim": dim, "k": k, "deleted": r.deleted.len() });
            let record = RunRecord::new("gen-random", started, params).config(&r.config);
            Ok(Outcome::ok(text).with_record(record))
        }
        Command::Count { input, engine } => {
            let cfg = read_config(input)?;
            let g = incidence_graph(&cfg, *engine)?;
            let mut record = RunRecord::new("count", started, json!({ "engine": format!("{engine:?}") })).config(&cfg);
            record.incidences = Some(g.edge_count());
            Ok(Outcome::ok(format!("{}\n", g.edge_count())).with_record(record))
        }
        Command::CheckKfree { input, k, engine } => {
            anyhow::ensure!(*k >= 1, "k must be positive");
            let cfg = read_config(input)?;
            let g = incidence_graph(&cfg, *engine)?;
            let witness = find_biclique(&g, *k);
            let mut record = RunRecord::new("check-kfree", started, json!({ "k": k })).config(&cfg);
            record.incidences = Some(g.edge_count());
            let out = match witness {
                None => Outcome::ok("free\n"),
                Some(w) => Outcome {
                    stdout: format!("not free\n{}\n", json!({ "points": w.points, "regions": w.regions })),
                    exit: 2,
                    record: None,
                },
            };
            Ok(out.with_record(record))
        }
        Command::CheckGridfree { input, k } => {
            let set = read_grid(input)?.cell_set()?;
            let witness = is_grid_free(&set, *k, max_cells()?)?;
            let record = RunRecord::new("check-gridfree", started, json!({ "k": k, "cells": set.len() }));
            let out = match witness {
                None => Outcome::ok("free\n"),
                Some(w) => Outcome {
                    stdout: format!("not free\n{}\n", json!({ "parts": w.parts })),
                    exit: 2,
                    record: None,
                },
            };
            Ok(out.with_record(record))
        }
        Command::Split { input, basic, out } => {
            let basics = read_grid(input)?.basic_certs()?;
            let x = basics.get(*basic).with_context(|| format!("no basic set {basic} (file has {})", basics.len()))?;
            let cert = coordinate_split(x)?;
            anyhow::ensure!(verify_split(x, &cert), "split certificate failed verification");
            let order: Vec<Value> = cert
                .order()
                .iter()
                .map(|n| match n {
                    SplitNode::Prefix(c) => json!(["prefix", c]),
                    SplitNode::Last(c) => json!(["last", c]),
                })
                .collect();
            let doc = json!({
                "prefix_sizes": cert.prefix_sizes(),
                "last_size": cert.last_size(),
                "prefix_class": cert.prefix_class(),
                "last_class": cert.last_class(),
                "order": order,
                "f_prefix": cert.fr_map(),
                "f_last": cert.fr_last(),
            });
            let text = emit(serde_json::to_string_pretty(&doc)?, out.as_deref())?;
            Ok(Outcome::ok(text).with_record(RunRecord::new("split", started, json!({ "basic": basic }))))
        }
        Command::Decompose { input, k, out } => {
            let cert = read_grid(input)?.certificate()?;
            let tree = halving_decomposition_r2(&cert, *k, max_cells()?)?;
            let doc = json!({
                "n": tree.n(),
                "k": tree.k,
                "s": tree.s,
                "total": tree.total,
                "alpha_hat": tree.alpha_hat,
                "bound": tree.bound(),
                "nodes": tree.nodes.len(),
                "leaves": tree.leaves().count(),
                "max_halvings": tree.max_halvings,
                "halving_depth_bound": tree.halving_depth_bound(),
                "max_strips": tree.max_strips,
                "leaf_sizes": tree.leaf_sizes(),
            });
            let text = emit(serde_json::to_string_pretty(&doc)?, out.as_deref())?;
            let mut record = RunRecord::new("decompose", started, json!({ "k": k }));
            record.bound = Some(tree.bound());
            Ok(Outcome::ok(text).with_record(record))
        }
        Command::Peel { input, k, c, trace } => {
            let cfg = read_config(input)?;
            let t = peel_run(&cfg, *k, *c)?;
            if let Some(path) = trace {
                write_trace(path, &t)?;
            }
            let doc = json!({
                "k": t.k, "d": t.d, "c": t.c, "m": t.m, "t": t.t,
                "rectangles": t.n1, "lines": t.lines,
                "chain": t.chain,
                "total": t.total, "bound": t.bound, "bound_holds": t.bound_holds(),
                "steps_hold": t.steps_hold(),
                "terminated": t.terminated,
                "termination_guaranteed": t.termination_guaranteed,
                "descendant_claim_holds": t.descendant_claim_holds(),
                "preprocessing": {
                    "original_incidences": t.preprocessing.original_incidences,
                    "chain_copies": t.preprocessing.chain_copies,
                    "chain_incidences": t.preprocessing.chain_incidences,
                    "duplicate_copies": t.preprocessing.duplicate_copies,
                    "duplicate_incidences": t.preprocessing.duplicate_incidences,
                },
            });
            let mut record = RunRecord::new("peel", started, json!({ "k": k, "c": t.c })).config(&cfg);
            record.incidences = Some(t.total);
            record.bound = Some(t.bound);
            Ok(Outcome::ok(serde_json::to_string_pretty(&doc)? + "\n").with_record(record))
        }
        Command::Fit { input, model, k, r, s } => {
            let series = read_series(input)?;
            let models =
                model.split(',').map(|m| Model::parse(m.trim(), *k, *r, *s)).collect::<anyhow::Result<Vec<_>>>()?;
            let fits = fit_bounds(&series, &models)?;
            let mut text = String::from("model,alpha,residual\n");
            for f in &fits {
                text += &format!("{},{:.6e},{:.6e}\n", f.name, f.alpha, f.residual);
            }
            text += &format!("best,{}\n", fits[0].name);
            Ok(Outcome::ok(text).with_record(RunRecord::new("fit", started, json!({ "models": model }))))
        }
        Command::Bench { ell_max, seeds, n, seed, out } => {
            let rows = bench(*ell_max, *seeds, *n, *seed)?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in &rows {
                w.serialize(row)?;
            }
            let text = String::from_utf8(w.into_inner()?)?;
            let text = match out {
                Some(path) => {
                    std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?;
                    String::new()
                }
                None => text,
            };
            Ok(Outcome::ok(text).with_record(RunRecord::new("bench", started, json!({ "ell_max": ell_max }))))
        }
    }
}

/// One line of a peel trace (schema version 1).
#[derive(Debug, Serialize)]
struct TraceRow {
    step: usize,
    size: usize,
    size_next: usize,
    incidences: u64,
    incidences_next: u64,
    rhs: f64,
    max_low: usize,
    low_incidences: u64,
    holds: bool,
}

fn write_trace(path: &Path, t: &zlab_core::peel::PeelTrace) -> anyhow::Result<()> {
    let mut w = csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    for s in &t.steps {
        w.serialize(TraceRow {
            step: s.index,
            size: s.size,
            size_next: s.size_next,
            incidences: s.incidences,
            incidences_next: s.incidences_next,
            rhs: s.rhs,
            max_low: s.max_low,
            low_incidences: s.low_incidences,
            holds: s.holds(),
        })?;
    }
    w.flush()?;
    Ok(())
}

/// One line of `bench` output; the first columns form a fit series.
#[derive(Debug, Serialize)]
pub struct BenchRow {
    pub n1: u64,
    pub n2: u64,
    pub incidences: u64,
    pub source: String,
    pub brute_ms: f64,
    pub sweep_ms: f64,
}

pub fn bench(ell_max: usize, seeds: u64, n: usize, seed: u64) -> anyhow::Result<Vec<BenchRow>> {
    let mut configs = Vec::new();
    for ell in 2..=ell_max {
        configs.push((format!("extremal-{ell}"), extremal_family_with_budget(ell, ell_max.max(DEFAULT_MAX_ELL))?));
    }
    for s in seed..seed + seeds {
        configs.push((format!("random-{s}"), generate_random(n, n, 2, s, 2)?.config));
    }
    let mut rows = Vec::new();
    for (source, cfg) in configs {
        let t0 = Instant::now();
        let brute = incidences_bruteforce(&cfg)?;
        let brute_ms = t0.elapsed().as_secs_f64() * 1e3;
        let t1 = Instant::now();
        let sweep = incidences_sweep(&cfg)?;
        let sweep_ms = t1.elapsed().as_secs_f64() * 1e3;
        anyhow::ensure!(brute.edge_count() == sweep.edge_count(), "engines disagree on {source}");
        rows.push(BenchRow { n1: cfg.n1() as u64, n2: cfg.n2(), incidences: brute.edge_count(), source, brute_ms, sweep_ms });
    }
    Ok(rows)
}

/// Machine-readable error line for standard error.
pub fn error_record(e: &anyhow::Error) -> Value {
    let kind = e
        .chain()
        .find_map(|c| c.downcast_ref::<zlab_core::Error>())
        .map(|z| {
            let dbg = format!("{z:?}");
            dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
        })
        .unwrap_or_else(|| "Error".into());
    json!({ "error": kind, "message": format!("{e:#}") })
}
