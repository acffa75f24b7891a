//! Monte-Carlo survival curves for random subfamilies of the power set.
//!
//! Each of the `2^n` words (∅ included) gets one uniform draw per trial from a
//! ChaCha8 stream selected by `(seed, trial)`; the word's position in the
//! stream is its bitmask value. A word joins the sample at density `p` iff its
//! draw is below `p`. With coupled sampling the same draws serve every grid
//! point, so each trial's sample only grows with `p`, and since every freeness
//! predicate is inherited by subfamilies the survival curve is non-increasing.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::Family;
use crate::set::{GroundSize, SetWord};

/// Which freeness predicate a sampled family must satisfy to survive.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Definition {
    #[default]
    Pairwise,
    Quadruple,
    Union,
}

impl Definition {
    pub fn holds(self, f: &Family) -> bool {
        match self {
            Definition::Pairwise => f.is_delta_free(),
            Definition::Quadruple => f.is_quadruple_delta_free(),
            Definition::Union => f.is_union_free(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Definition::Pairwise => "pairwise",
            Definition::Quadruple => "quadruple",
            Definition::Union => "union",
        }
    }
}

impl fmt::Display for Definition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Definition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pairwise" => Ok(Definition::Pairwise),
            "quadruple" => Ok(Definition::Quadruple),
            "union" => Ok(Definition::Union),
            other => Err(Error::InvalidConfig(format!("unknown definition `{other}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n: GroundSize,
    pub p_grid: Vec<f64>,
    pub trials: u32,
    pub seed: u64,
    pub definition: Definition,
    /// Reuse each trial's draws at every grid point.
    pub coupled: bool,
}

impl ExperimentConfig {
    pub fn new(n: GroundSize, p_grid: Vec<f64>, trials: u32, seed: u64, definition: Definition) -> Self {
        ExperimentConfig { n, p_grid, trials, seed, definition, coupled: true }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be at least 1".into()));
        }
        if self.p_grid.is_empty() {
            return Err(Error::InvalidConfig("p grid is empty".into()));
        }
        if let Some(p) = self.p_grid.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(Error::InvalidConfig(format!("probability {p} outside [0, 1]")));
        }
        if self.p_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidConfig("p grid must be strictly increasing".into()));
        }
        Ok(())
    }
}

/// `steps` evenly spaced points from `lo` to `hi`, both endpoints exact.
pub fn linear_grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..steps)
            .map(|i| if i + 1 == steps { hi } else { lo + (hi - lo) * i as f64 / (steps - 1) as f64 })
            .collect(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurvivalPoint {
    pub p: f64,
    pub estimate: f64,
    pub stderr: f64,
    pub trials: u32,
    pub survivors: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurvivalCurve {
    pub definition: Definition,
    pub n: GroundSize,
    pub points: Vec<SurvivalPoint>,
    /// Where the curve first falls below 1/2, interpolated linearly; `None`
    /// when the grid does not bracket a crossing.
    pub crossing: Option<f64>,
}

impl SurvivalCurve {
    /// `p,estimate,stderr,trials` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("p,estimate,stderr,trials\n");
        for pt in &self.points {
            out.push_str(&format!("{},{},{},{}\n", pt.p, pt.estimate, pt.stderr, pt.trials));
        }
        out
    }
}

fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One uniform draw in `[0, 1)` per word, indexed by bitmask.
fn draws(n: GroundSize, seed: u64, stream: u64) -> Vec<f64> {
    let mut rng = trial_rng(seed, stream);
    (0..n.word_count()).map(|_| rng.random::<f64>()).collect()
}

fn threshold(n: GroundSize, u: &[f64], p: f64) -> Family {
    Family::from_predicate(n, |w: SetWord| u[w.bits() as usize] < p)
}

/// Includes each subset of `[n]`, ∅ too, independently with probability `p`.
///
/// The result depends only on `(n, p, seed, trial_index)`.
pub fn random_family(n: GroundSize, p: f64, seed: u64, trial_index: u64) -> Family {
    threshold(n, &draws(n, seed, trial_index), p)
}

/// Runs `trials` samples at each grid point and reports the surviving fraction.
pub fn estimate_survival(cfg: &ExperimentConfig) -> Result<SurvivalCurve> {
    cfg.validate()?;
    let grid = &cfg.p_grid;
    let survivors: Vec<u32> = if cfg.coupled {
        (0..cfg.trials as u64)
            .into_par_iter()
            .map(|trial| {
                let u = draws(cfg.n, cfg.seed, trial);
                grid.iter()
                    .map(|&p| cfg.definition.holds(&threshold(cfg.n, &u, p)) as u32)
                    .collect::<Vec<_>>()
            })
            .reduce(|| vec![0; grid.len()], |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect())
    } else {
        grid.par_iter()
            .enumerate()
            .map(|(i, &p)| {
                (0..cfg.trials as u64)
                    .filter(|&trial| {
                        let stream = (i as u64) << 32 | trial;
                        cfg.definition.holds(&random_family(cfg.n, p, cfg.seed, stream))
                    })
                    .count() as u32
            })
            .collect()
    };

    let points: Vec<SurvivalPoint> = grid
        .iter()
        .zip(survivors)
        .map(|(&p, survivors)| {
            let estimate = survivors as f64 / cfg.trials as f64;
            SurvivalPoint {
                p,
                estimate,
                stderr: (estimate * (1.0 - estimate) / cfg.trials as f64).sqrt(),
                trials: cfg.trials,
                survivors,
            }
        })
        .collect();
    let crossing = half_crossing(&points);
    Ok(SurvivalCurve { definition: cfg.definition, n: cfg.n, points, crossing })
}

fn half_crossing(points: &[SurvivalPoint]) -> Option<f64> {
    points.windows(2).find_map(|w| {
        let (a, b) = (&w[0], &w[1]);
        (a.estimate >= 0.5 && b.estimate < 0.5)
            .then(|| a.p + (a.estimate - 0.5) / (a.estimate - b.estimate) * (b.p - a.p))
    })
}
