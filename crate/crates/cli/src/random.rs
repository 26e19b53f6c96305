//! Seeded random dyadic configurations with a `K_{k,k}`-free incidence graph.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zlab_core::dyadic::{DyadicBox, DyadicInterval, DyadicRational};
use zlab_core::incidence::{
    find_biclique, incidences_bruteforce, incidences_sweep, Configuration, IncidenceGraph, Provenance,
};

/// Coordinates are multiples of `2^-POINT_BITS` in `[0, 1)`.
pub const POINT_BITS: i64 = 12;
/// Box side lengths are `2^-t` with `t` in this range (per axis).
pub const BOX_LEVELS: std::ops::RangeInclusive<i64> = 2..=6;

#[derive(Clone, Debug)]
pub struct RandomConfig {
    pub config: Configuration,
    /// Regions removed to reach freeness, in input indices.
    pub deleted: Vec<usize>,
}

fn graph(cfg: &Configuration) -> zlab_core::Result<IncidenceGraph> {
    if cfg.dim() == 2 {
        incidences_sweep(cfg)
    } else {
        incidences_bruteforce(cfg)
    }
}

/// `n1` uniform lattice points and `n2` dyadic boxes in `[0, 1)^dim`, with
/// no freeness guarantee.
pub fn random_instance(n1: usize, n2: usize, dim: usize, seed: u64) -> anyhow::Result<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cfg = Configuration::new(dim)?;
    for _ in 0..n1 {
        let p = (0..dim).map(|_| DyadicRational::new(rng.gen_range(0..1i64 << POINT_BITS), -POINT_BITS)).collect();
        cfg.push_point(p)?;
    }
    for _ in 0..n2 {
        let axes = (0..dim)
            .map(|_| {
                let t = rng.gen_range(BOX_LEVELS);
                DyadicInterval::new(rng.gen_range(0..1i64 << t), -t)
            })
            .collect();
        cfg.push_region(DyadicBox::new(axes)?)?;
    }
    Ok(cfg)
}

/// [`random_instance`] followed by deleting boxes until the incidence
/// graph is `K_{k,k}`-free.
///
/// Each round finds a `K_{k,k}` and deletes its box of largest degree.
pub fn generate_random(n1: usize, n2: usize, dim: usize, seed: u64, k: usize) -> anyhow::Result<RandomConfig> {
    anyhow::ensure!(k >= 2, "k must be at least 2");
    let meta = Provenance {
        generator: "random".into(),
        params: vec![
            ("n1".into(), n1.to_string()),
            ("n2".into(), n2.to_string()),
            ("dim".into(), dim.to_string()),
            ("k".into(), k.to_string()),
        ],
        seed: Some(seed),
    };
    let cfg = random_instance(n1, n2, dim, seed)?.with_meta(meta);

    let g = graph(&cfg)?;
    let mut alive: Vec<bool> = vec![true; n2];
    let mut deleted = Vec::new();
    loop {
        let live = IncidenceGraph::from_pairs(
            g.n1(),
            g.multiplicities().to_vec(),
            g.edges().filter(|&(_, r)| alive[r]),
        );
        let Some(w) = find_biclique(&live, k) else { break };
        let worst = *w
            .regions
            .iter()
            .max_by_key(|&&r| (live.region_neighbors(r).len(), std::cmp::Reverse(r)))
            .expect("a biclique has regions");
        alive[worst] = false;
        deleted.push(worst);
    }
    let keep: Vec<usize> = (0..n2).filter(|&r| alive[r]).collect();
    let mut config = cfg.retain_regions(&keep);
    config.meta.params.push(("deleted".into(), deleted.len().to_string()));
    Ok(RandomConfig { config, deleted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use zlab_core::incidence::is_kk_free;

    #[test]
    fn empty_point_set_is_free() {
        let r = generate_random(0, 10, 2, 1, 2).unwrap();
        assert_eq!(r.config.n1(), 0);
        assert!(r.deleted.is_empty());
    }

    #[test]
    fn seeded_output_is_reproducible() {
        let a = generate_random(50, 50, 2, 7, 2).unwrap();
        let b = generate_random(50, 50, 2, 7, 2).unwrap();
        assert_eq!(crate::format::to_json(&a.config), crate::format::to_json(&b.config));
    }

    #[test]
    fn three_dimensional_output_is_free() {
        let r = generate_random(60, 60, 3, 3, 2).unwrap();
        assert!(is_kk_free(&incidences_bruteforce(&r.config).unwrap(), 2));
    }
}
