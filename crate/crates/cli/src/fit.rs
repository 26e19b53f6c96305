//! Least-squares fits of incidence counts against bound shapes.
//!
//! Each model is `|E| ≈ α·g(n)`. The fit minimises
//! `Σ (ln |E| − ln α − ln g(n))²`, so `ln α` is the mean log ratio and the
//! residual is the sum of squared deviations from it.

use anyhow::{bail, ensure};
use serde::{Deserialize, Serialize};

/// One observation; `n = n1 + n2`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeriesPoint {
    pub n1: u64,
    pub n2: u64,
    pub incidences: u64,
}

impl SeriesPoint {
    pub fn n(&self) -> f64 {
        (self.n1 + self.n2) as f64
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Model {
    /// `α·n`.
    Linear,
    /// `α·n^{2−1/k}`.
    Kst { k: u32 },
    /// `α·n·ln^β(n+1)` with `β = s(2^{r−1} − 1)`.
    Polylog { r: u32, s: u32 },
    /// `α·n·ln(100+n1)/ln ln(100+n1)`.
    Loglog,
}

impl Model {
    pub fn name(&self) -> String {
        match self {
            Model::Linear => "linear".into(),
            Model::Kst { k } => format!("kst(k={k})"),
            Model::Polylog { r, s } => format!("polylog(r={r},s={s},beta={})", beta(*r, *s)),
            Model::Loglog => "loglog".into(),
        }
    }

    /// Parses `linear`, `kst`, `polylog`, `loglog`, or `nlogn` (polylog with
    /// `r = 2, s = 1`), using `k`, `r`, `s` where needed.
    pub fn parse(name: &str, k: u32, r: u32, s: u32) -> anyhow::Result<Self> {
        Ok(match name {
            "linear" => Model::Linear,
            "kst" => Model::Kst { k },
            "polylog" => Model::Polylog { r, s },
            "nlogn" => Model::Polylog { r: 2, s: 1 },
            "loglog" => Model::Loglog,
            other => bail!("unknown model {other:?}"),
        })
    }

    /// `g(n)` for one observation.
    pub fn shape(&self, p: &SeriesPoint) -> f64 {
        let n = p.n();
        match *self {
            Model::Linear => n,
            Model::Kst { k } => n.powf(2.0 - 1.0 / f64::from(k)),
            Model::Polylog { r, s } => n * (n + 1.0).ln().powi(beta(r, s) as i32),
            Model::Loglog => {
                let x = 100.0 + p.n1 as f64;
                n * x.ln() / x.ln().ln()
            }
        }
    }
}

/// `β(r, s) = s(2^{r−1} − 1)`.
pub fn beta(r: u32, s: u32) -> u64 {
    u64::from(s) * ((1u64 << (r - 1)) - 1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundModel {
    pub model: Model,
    pub name: String,
    pub alpha: f64,
    /// Sum of squared log residuals.
    pub residual: f64,
    /// Per point `ln |E| − ln(α·g(n))`.
    pub residuals: Vec<f64>,
}

pub fn fit(series: &[SeriesPoint], model: Model) -> anyhow::Result<BoundModel> {
    ensure!(series.len() >= 3, "a fit needs at least 3 points, got {}", series.len());
    if let Model::Kst { k } = model {
        ensure!(k >= 1, "kst needs k ≥ 1");
    }
    if let Model::Polylog { r, .. } = model {
        ensure!((1..64).contains(&r), "polylog needs 1 ≤ r < 64");
    }
    let logs: Vec<f64> = series
        .iter()
        .map(|p| {
            ensure!(p.incidences > 0, "incidence counts must be positive");
            let g = model.shape(p);
            ensure!(g.is_finite() && g > 0.0, "model {} is not positive at n = {}", model.name(), p.n());
            Ok((p.incidences as f64).ln() - g.ln())
        })
        .collect::<anyhow::Result<_>>()?;
    let ln_alpha = logs.iter().sum::<f64>() / logs.len() as f64;
    let residuals: Vec<f64> = logs.iter().map(|l| l - ln_alpha).collect();
    let residual = residuals.iter().map(|r| r * r).sum();
    Ok(BoundModel { model, name: model.name(), alpha: ln_alpha.exp(), residual, residuals })
}

/// Fits every model; the best (smallest residual) comes first.
pub fn fit_bounds(series: &[SeriesPoint], models: &[Model]) -> anyhow::Result<Vec<BoundModel>> {
    let mut out = models.iter().map(|&m| fit(series, m)).collect::<anyhow::Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.residual.total_cmp(&b.residual));
    Ok(out)
}

pub fn read_series(path: &std::path::Path) -> anyhow::Result<Vec<SeriesPoint>> {
    let mut reader = csv::Reader::from_path(path)?;
    reader.deserialize().map(|r| r.map_err(Into::into)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series(points: &[(u64, u64, u64)]) -> Vec<SeriesPoint> {
        points.iter().map(|&(n1, n2, incidences)| SeriesPoint { n1, n2, incidences }).collect()
    }

    #[test]
    fn linear_series_gives_unit_alpha() {
        let s = series(&[(5, 5, 10), (50, 50, 100), (400, 600, 1000), (3, 4, 7)]);
        let m = fit(&s, Model::Linear).unwrap();
        assert!((m.alpha - 1.0).abs() < 1e-9);
        assert!(m.residual < 1e-20);
    }

    #[test]
    fn too_few_points() {
        assert!(fit(&series(&[(1, 1, 2), (2, 2, 4)]), Model::Linear).is_err());
    }

    #[test]
    fn non_monotone_series_still_fits() {
        let s = series(&[(100, 100, 50), (10, 10, 400), (50, 50, 7)]);
        let m = fit(&s, Model::Loglog).unwrap();
        assert!(m.residual > 0.0);
        assert_eq!(m.residuals.len(), 3);
    }

    #[test]
    fn beta_values() {
        assert_eq!(beta(2, 1), 1);
        assert_eq!(beta(3, 2), 6);
        assert_eq!(beta(1, 5), 0);
    }
}
