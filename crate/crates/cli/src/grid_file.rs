//! JSON files for grid sets.
//!
//! A grid file gives the part sizes and either explicit `cells` or a list
//! of `basics`, each a row-major value table with a threshold and a
//! comparison (`<`, `<=`, `>`, `>=`). Without `cells`, the set is the
//! intersection of the basic sets.

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use zlab_core::grid::{BasicSetCert, CellSet, Comparison, FiniteGrid, GridComplexityCert, MonotoneTable};

pub const GRID_FORMAT: &str = "zlab-grid";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasicRecord {
    pub values: Vec<i64>,
    pub threshold: i64,
    pub cmp: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridFile {
    pub format: String,
    pub version: u32,
    pub sizes: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basics: Vec<BasicRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<Vec<usize>>>,
}

impl GridFile {
    pub fn from_cert(cert: &GridComplexityCert) -> Self {
        GridFile {
            format: GRID_FORMAT.into(),
            version: 1,
            sizes: cert.grid().sizes().to_vec(),
            basics: cert
                .basics()
                .iter()
                .map(|b| BasicRecord {
                    values: b.table.values().to_vec(),
                    threshold: b.threshold,
                    cmp: b.cmp.symbol().into(),
                })
                .collect(),
            cells: None,
        }
    }

    pub fn from_cells(set: &CellSet) -> Self {
        GridFile {
            format: GRID_FORMAT.into(),
            version: 1,
            sizes: set.grid().sizes().to_vec(),
            basics: Vec::new(),
            cells: Some(set.cells().collect()),
        }
    }

    fn check_header(&self) -> anyhow::Result<FiniteGrid> {
        if self.format != GRID_FORMAT {
            bail!("not a {GRID_FORMAT} file (format = {:?})", self.format);
        }
        if self.version != 1 {
            bail!("unsupported grid format version {}", self.version);
        }
        Ok(FiniteGrid::new(self.sizes.clone())?)
    }

    pub fn basic_certs(&self) -> anyhow::Result<Vec<BasicSetCert>> {
        let grid = self.check_header()?;
        self.basics
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let cmp = Comparison::parse(&b.cmp).with_context(|| format!("basic {i}: bad comparison {:?}", b.cmp))?;
                let table = MonotoneTable::new(grid.clone(), b.values.clone()).with_context(|| format!("basic {i}"))?;
                Ok(BasicSetCert::new(table, b.threshold, cmp))
            })
            .collect()
    }

    pub fn certificate(&self) -> anyhow::Result<GridComplexityCert> {
        let grid = self.check_header()?;
        Ok(GridComplexityCert::new(grid, self.basic_certs()?)?)
    }

    /// The explicit cells if present, otherwise the set the basics denote.
    pub fn cell_set(&self) -> anyhow::Result<CellSet> {
        let grid = self.check_header()?;
        match &self.cells {
            Some(cells) => Ok(CellSet::from_cells(grid, cells.iter().map(Vec::as_slice))?),
            None => Ok(self.certificate()?.denoted()),
        }
    }
}

pub fn read_grid(path: &std::path::Path) -> anyhow::Result<GridFile> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
