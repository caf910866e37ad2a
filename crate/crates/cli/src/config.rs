//! Run configuration files (TOML: `key = value` lines under section headers).

use std::path::{Path, PathBuf};

use serde::Deserialize;

use safestab::blend::{BlendConfig, LambdaKind};
use safestab::formulas::FormulaKind;
use safestab::plant::{builtin_paper_example, PaperExampleParams, SystemBundle, PAPER_EXAMPLE};
use safestab::priority::DEFAULT_C;
use safestab::scenario::{Axis, SearchConfig, SearchGrid};
use safestab::sim::{ControllerLaw, ControllerSpec, SimConfig};

use crate::CliError;

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemSection,
    pub controller: ControllerSection,
    pub simulation: SimulationSection,
    pub sweep: SweepSection,
    pub search: SearchSection,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemSection {
    pub name: String,
    pub k1: f64,
    pub k2: f64,
    pub q: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Default for SystemSection {
    fn default() -> Self {
        let p = PaperExampleParams::default();
        SystemSection {
            name: PAPER_EXAMPLE.to_string(),
            k1: p.k1,
            k2: p.k2,
            q: p.q,
            d1: p.d1,
            d2: p.d2,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ControllerSection {
    pub law: String,
    pub formula: String,
    pub lambda: String,
    pub eta: f64,
    pub c: f64,
}

impl Default for ControllerSection {
    fn default() -> Self {
        ControllerSection {
            law: ControllerLaw::KLSharp.name().to_string(),
            formula: FormulaKind::default().name().to_string(),
            lambda: LambdaKind::default().name().to_string(),
            eta: 0.5,
            c: DEFAULT_C,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationSection {
    pub x0: Vec<f64>,
    pub dt: f64,
    pub t_end: f64,
    pub stop_tol: f64,
    pub converge_tol: f64,
    pub h_abort: f64,
    pub abort_on_violation: bool,
    pub output: PathBuf,
}

impl Default for SimulationSection {
    fn default() -> Self {
        let s = SimConfig::default();
        SimulationSection {
            x0: Vec::new(),
            dt: s.dt,
            t_end: s.t_end,
            stop_tol: s.stop_tol,
            converge_tol: s.converge_tol,
            h_abort: s.h_abort,
            abort_on_violation: s.abort_on_violation,
            output: PathBuf::from("trajectory.csv"),
        }
    }
}

/// Inclusive grid axis `lo, ..., hi` with `n` points.
#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl AxisSpec {
    const fn new(lo: f64, hi: f64, n: usize) -> Self {
        AxisSpec { lo, hi, n }
    }

    pub fn to_axis(self, what: &str) -> Result<Axis, CliError> {
        Axis::new(self.lo, self.hi, self.n).map_err(|e| CliError::Usage(format!("{what}: {e}")))
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    pub x1: AxisSpec,
    pub x2: AxisSpec,
    pub output: PathBuf,
}

impl Default for SweepSection {
    fn default() -> Self {
        SweepSection {
            x1: AxisSpec::new(-3.0, 3.0, 101),
            x2: AxisSpec::new(-3.0, 3.0, 101),
            output: PathBuf::from("sweep.csv"),
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchSection {
    pub x1: AxisSpec,
    pub x2: AxisSpec,
    /// Echoed in the report; the grid scan itself draws no random numbers.
    pub seed: u64,
}

impl Default for SearchSection {
    fn default() -> Self {
        let g = SearchGrid::flagship();
        SearchSection {
            x1: AxisSpec::new(g.x1.lo, g.x1.hi, g.x1.n),
            x2: AxisSpec::new(g.x2.lo, g.x2.hi, g.x2.n),
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))
    }

    pub fn bundle(&self) -> Result<SystemBundle, CliError> {
        let s = &self.system;
        if s.name != PAPER_EXAMPLE {
            return Err(CliError::Usage(format!(
                "unknown system `{}` (available: {PAPER_EXAMPLE})",
                s.name
            )));
        }
        let p = PaperExampleParams {
            k1: s.k1,
            k2: s.k2,
            q: s.q,
            d1: s.d1,
            d2: s.d2,
        };
        builtin_paper_example(p).map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn controller(&self) -> Result<ControllerSpec, CliError> {
        let c = &self.controller;
        let law: ControllerLaw = c.law.parse().map_err(CliError::Usage)?;
        let formula: FormulaKind = c.formula.parse().map_err(CliError::Usage)?;
        let lambda: LambdaKind = c.lambda.parse().map_err(CliError::Usage)?;
        let blend =
            BlendConfig::new(formula, lambda, c.eta).map_err(|e| CliError::Usage(e.to_string()))?;
        ControllerSpec::new(law, blend, c.c).map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn sim(&self) -> SimConfig {
        let s = &self.simulation;
        SimConfig {
            dt: s.dt,
            t_end: s.t_end,
            stop_tol: s.stop_tol,
            converge_tol: s.converge_tol,
            h_abort: s.h_abort,
            abort_on_violation: s.abort_on_violation,
        }
    }

    pub fn search(&self) -> Result<SearchConfig, CliError> {
        let ctrl = self.controller()?;
        Ok(SearchConfig {
            grid: SearchGrid {
                x1: self.search.x1.to_axis("search.x1")?,
                x2: self.search.x2.to_axis("search.x2")?,
            },
            sim: self.sim(),
            blend: ctrl.blend,
            c: ctrl.c,
        })
    }
}
