//! Fixed sweeps behind the three published plots.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use qdiscord_core::OptimizerConfig;

use crate::error::{CliError, Result};
use crate::model::{Family, MethodSel, VariantSel};
use crate::sweep::{csv_io, write_csv, SweepRow, SweepSpec, SweptParam};

pub const FIGURE_POINTS: usize = 201;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    Fig1,
    Fig2,
    Fig3,
}

impl Figure {
    pub const ALL: [Figure; 3] = [Figure::Fig1, Figure::Fig2, Figure::Fig3];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig1 => "fig1",
            Figure::Fig2 => "fig2",
            Figure::Fig3 => "fig3",
        }
    }

    /// Werner and isotropic: lambda over [0, 1] at q = 1.2, both variants.
    /// Circulant: epsilon over [0.005, 1] at q = 1.75, g = 0.5, q-expectation variant.
    pub fn spec(self) -> SweepSpec {
        let lambda = |family| SweepSpec {
            family,
            lambda: None,
            epsilon: None,
            g: None,
            state: None,
            sweep: Some(SweptParam { name: "lambda".into(), start: 0.0, end: 1.0, steps: FIGURE_POINTS }),
            qs: vec![1.2],
            variant: VariantSel::Both,
            method: MethodSel::Closed,
            optimizer: OptimizerConfig::default(),
        };
        match self {
            Figure::Fig1 => lambda(Family::Werner),
            Figure::Fig2 => lambda(Family::Isotropic),
            Figure::Fig3 => SweepSpec {
                family: Family::Circulant,
                g: Some(0.5),
                sweep: Some(SweptParam { name: "epsilon".into(), start: 0.005, end: 1.0, steps: FIGURE_POINTS }),
                qs: vec![1.75],
                variant: VariantSel::Qexp,
                ..lambda(Family::Circulant)
            },
        }
    }

    pub fn rows(self) -> Result<Vec<SweepRow>> {
        self.spec().run()
    }
}

/// Writes `<dir>/<name>.csv` and returns its path.
pub fn write_figure(fig: Figure, dir: &Path) -> Result<PathBuf> {
    let rows = fig.rows()?;
    std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let path = dir.join(format!("{}.csv", fig.name()));
    let file = std::fs::File::create(&path).map_err(|e| CliError::io(&path, e))?;
    write_csv(std::io::BufWriter::new(file), &rows).map_err(|e| csv_io(&path, e))?;
    Ok(path)
}
