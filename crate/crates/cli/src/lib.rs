//! File formats, random generation, bound fitting and the command-line
//! driver around `zlab-core`.

pub mod commands;
pub mod fit;
pub mod format;
pub mod grid_file;
pub mod random;

use zlab_core::incidence::{incidences_bruteforce, incidences_sweep, Configuration, IncidenceGraph};
use zlab_core::dyadic::Region;

/// Exact-search cutoff: `ZLAB_MAX_CELLS` if set, else the library default.
pub fn max_cells() -> anyhow::Result<usize> {
    match std::env::var("ZLAB_MAX_CELLS") {
        Ok(v) => v.trim().parse().map_err(|_| anyhow::anyhow!("ZLAB_MAX_CELLS={v:?} is not a cell count")),
        Err(_) => Ok(zlab_core::incidence::DEFAULT_MAX_CELLS),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Engine {
    /// Sweep for planar boxes, brute force otherwise.
    Auto,
    Brute,
    Sweep,
}

pub fn sweep_applies(cfg: &Configuration) -> bool {
    cfg.dim() == 2 && cfg.regions().iter().all(|r| !matches!(r, Region::Polytope(_)))
}

pub fn incidence_graph(cfg: &Configuration, engine: Engine) -> zlab_core::Result<IncidenceGraph> {
    match engine {
        Engine::Brute => incidences_bruteforce(cfg),
        Engine::Sweep => incidences_sweep(cfg),
        Engine::Auto if sweep_applies(cfg) => incidences_sweep(cfg),
        Engine::Auto => incidences_bruteforce(cfg),
    }
}
