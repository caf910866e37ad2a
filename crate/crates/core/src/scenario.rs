//! Deterministic search for an initial state that separates the baseline
//! CLF-only controller from the safety-aware sharp laws.
//!
//! Candidates are visited in lexicographic grid order (`x1` outer, `x2`
//! inner). The first safe candidate is selected for which
//!
//! * `clf_only_sontag` ends with `min_h < 0`,
//! * `kl_sharp` produces the mode pattern `1, 0, 1`.
//!
//! The `km_sharp` run from the selected state is reported alongside.

use crate::blend::BlendConfig;
use crate::error::{Error, Result};
use crate::plant::{State, SystemBundle};
use crate::priority::DEFAULT_C;
use crate::sim::{simulate, ControllerLaw, ControllerSpec, SimConfig, SimReport};

/// Initial state selected by [`find_x0`] on [`SearchGrid::flagship`] for the
/// builtin example with default controller and simulation settings.
pub const FLAGSHIP_X0: [f64; 2] = [1.0, -3.0];

/// Inclusive uniform axis `lo, ..., hi` with `n` points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
}

impl Axis {
    pub fn new(lo: f64, hi: f64, n: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || hi < lo {
            return Err(Error::Parameter(format!("bad axis [{lo}, {hi}]")));
        }
        if n == 1 && hi != lo {
            return Err(Error::Parameter("a one-point axis needs lo = hi".into()));
        }
        Ok(Axis { lo, hi, n })
    }

    pub fn point(&self, k: usize) -> f64 {
        if self.n <= 1 {
            self.lo
        } else {
            self.lo + (self.hi - self.lo) * (k as f64 / (self.n - 1) as f64)
        }
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |k| self.point(k))
    }
}

/// Two-dimensional candidate grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchGrid {
    pub x1: Axis,
    pub x2: Axis,
}

impl SearchGrid {
    /// `[-3, 3]²` at unit spacing.
    pub fn flagship() -> Self {
        let axis = Axis {
            lo: -3.0,
            hi: 3.0,
            n: 7,
        };
        SearchGrid { x1: axis, x2: axis }
    }

    pub fn len(&self) -> usize {
        self.x1.n * self.x2.n
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Candidates in lexicographic order.
    pub fn candidates(&self) -> impl Iterator<Item = [f64; 2]> + '_ {
        self.x1
            .points()
            .flat_map(move |a| self.x2.points().map(move |b| [a, b]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchConfig {
    pub grid: SearchGrid,
    pub sim: SimConfig,
    pub blend: BlendConfig,
    pub c: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            grid: SearchGrid::flagship(),
            sim: SimConfig::default(),
            blend: BlendConfig::default(),
            c: DEFAULT_C,
        }
    }
}

/// The selected state and the runs that qualified it.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub x0: [f64; 2],
    /// Position of `x0` in grid order, counting from zero.
    pub index: usize,
    pub h0: f64,
    pub baseline: SimReport,
    pub kl_sharp: SimReport,
    pub km_sharp: SimReport,
}

fn run(bundle: &SystemBundle, cfg: &SearchConfig, law: ControllerLaw, x0: &State) -> Result<SimReport> {
    let ctrl = ControllerSpec::new(law, cfg.blend, cfg.c)?;
    simulate(bundle, &ctrl, x0, &cfg.sim).map(|(_, report)| report)
}

/// Scans the grid and returns the first qualifying state, or `None`.
///
/// Candidates with `h(x0) <= 0` or `x0 = 0` are skipped. A controller error
/// on a candidate disqualifies it; configuration errors are returned.
pub fn find_x0(bundle: &SystemBundle, cfg: &SearchConfig) -> Result<Option<SearchOutcome>> {
    if bundle.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: bundle.dim(),
        });
    }
    for (index, x0) in cfg.grid.candidates().enumerate() {
        let h0 = bundle.cbf.value(&x0)?;
        if !(h0 > 0.0) || x0 == [0.0, 0.0] {
            continue;
        }
        let state = State::new(x0.to_vec())?;
        let attempt = |law| match run(bundle, cfg, law, &state) {
            Ok(r) => Ok(Some(r)),
            Err(Error::Controller { .. }) | Err(Error::Integration { .. }) => Ok(None),
            Err(e) => Err(e),
        };
        let Some(baseline) = attempt(ControllerLaw::ClfOnlySontag)? else {
            continue;
        };
        if !baseline.safety_violated {
            continue;
        }
        let Some(kl_sharp) = attempt(ControllerLaw::KLSharp)? else {
            continue;
        };
        if kl_sharp.mode_pattern() != [1, 0, 1] {
            continue;
        }
        let km_sharp = run(bundle, cfg, ControllerLaw::KMSharp, &state)?;
        return Ok(Some(SearchOutcome {
            x0,
            index,
            h0,
            baseline,
            kl_sharp,
            km_sharp,
        }));
    }
    Ok(None)
}
