//! Random trapezoidal samples, finite F-symmetry checks and Monte Carlo
//! oracles.
//!
//! Every generator is a [`ChaCha8Rng`] seeded through `seed_from_u64`, which
//! is specified by `rand_core` and portable across platforms. Normal deviates
//! use the Marsaglia polar method with `libm` logarithms, so the whole draw is
//! bit-reproducible; a chi-squared variable with `k` degrees of freedom is a
//! sum of `k` squared standard normals.

use rand::distributions::{Distribution, WeightedIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::depth::DiscreteFuzzyRV;
use crate::error::{DepthError, Result};
use crate::fuzzy::{Direction, FuzzyNumber, Sample, Trapezoid};

/// Parameters of the trapezoidal simulation model
/// `Tra(X1 - X2 - X3, X1 - X2, X1 + X2, X1 + X2 + X4)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: usize,
    pub seed: u64,
    /// Standard deviation of the location `X1`.
    pub sigma: f64,
    /// Degrees of freedom of the chi-squared spreads `X2`, `X3`, `X4`.
    pub dof: u32,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n: 100,
            seed: 0,
            sigma: 10.0,
            dof: 1,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(DepthError::Config(format!("n = {} must be at least 2", self.n)));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(DepthError::Config(format!("sigma = {} must be positive", self.sigma)));
        }
        if self.dof == 0 {
            return Err(DepthError::Config("dof must be positive".into()));
        }
        Ok(())
    }
}

/// Standard normal deviates from the Marsaglia polar method.
#[derive(Debug)]
pub struct NormalSource {
    rng: ChaCha8Rng,
    spare: Option<f64>,
}

impl NormalSource {
    pub fn new(seed: u64) -> Self {
        NormalSource {
            rng: ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    pub fn standard(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        loop {
            let x = 2.0 * self.rng.gen::<f64>() - 1.0;
            let y = 2.0 * self.rng.gen::<f64>() - 1.0;
            let s = x * x + y * y;
            if s > 0.0 && s < 1.0 {
                let k = (-2.0 * libm::log(s) / s).sqrt();
                self.spare = Some(y * k);
                return x * k;
            }
        }
    }

    pub fn chi_squared(&mut self, dof: u32) -> f64 {
        (0..dof).map(|_| self.standard().powi(2)).sum()
    }
}

/// Draws `cfg.n` trapezoids from the simulation model.
pub fn simulate_trapezoids(cfg: &SimConfig) -> Result<Vec<Trapezoid>> {
    cfg.validate()?;
    let mut src = NormalSource::new(cfg.seed);
    (0..cfg.n)
        .map(|_| {
            let x1 = cfg.sigma * src.standard();
            let x2 = src.chi_squared(cfg.dof);
            let x3 = src.chi_squared(cfg.dof);
            let x4 = src.chi_squared(cfg.dof);
            Trapezoid::new(x1 - x2 - x3, x1 - x2, x1 + x2, x1 + x2 + x4)
        })
        .collect()
}

/// As [`simulate_trapezoids`], wrapped as a [`Sample`].
pub fn simulate_sample(cfg: &SimConfig) -> Result<Sample> {
    Sample::from_trapezoids(&simulate_trapezoids(cfg)?)
}

fn weighted_multiset_symmetric(mut vals: Vec<(f64, f64)>) -> bool {
    const TOL: f64 = 1e-12;
    let mut mirrored: Vec<(f64, f64)> = vals.iter().map(|&(v, p)| (-v, p)).collect();
    let collapse = |v: &mut Vec<(f64, f64)>| {
        v.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut out: Vec<(f64, f64)> = Vec::with_capacity(v.len());
        for &(x, p) in v.iter() {
            match out.last_mut() {
                Some(last) if (x - last.0).abs() <= TOL => last.1 += p,
                _ => out.push((x, p)),
            }
        }
        out
    };
    let a = collapse(&mut vals);
    let b = collapse(&mut mirrored);
    a.len() == b.len()
        && a.iter()
            .zip(&b)
            .all(|(x, y)| (x.0 - y.0).abs() <= TOL && (x.1 - y.1).abs() <= TOL)
}

/// Checks `s_A(u, α) - s_X(u, α)` against its negation in distribution, for
/// both directions and every α in `alpha_grid`.
///
/// With `None` the grid is the merged breakpoints of all atoms and of the
/// centre, plus `{0, 1/2, 1}` and the midpoint of every cell. The check is
/// only as fine as the grid: a pairing of atoms that swaps inside a cell can
/// slip through.
pub fn f_symmetric(rv: &DiscreteFuzzyRV, center: &FuzzyNumber, alpha_grid: Option<&[f64]>) -> bool {
    let grid: Vec<f64> = match alpha_grid {
        Some(g) => g.to_vec(),
        None => {
            let mut g: Vec<f64> = rv
                .atoms()
                .iter()
                .chain(std::iter::once(center))
                .flat_map(|x| x.alpha_grid())
                .chain([0.0, 0.5, 1.0])
                .collect();
            g.sort_by(f64::total_cmp);
            g.dedup();
            // Midpoints catch weight swaps that agree at every breakpoint.
            let mids: Vec<f64> = g.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect();
            g.extend(mids);
            g
        }
    };
    grid.iter().all(|&alpha| {
        Direction::BOTH.iter().all(|&u| {
            let c = center.profile(u).eval_unchecked(alpha);
            let vals = rv
                .atoms()
                .iter()
                .zip(rv.probs())
                .map(|(x, &p)| (c - x.profile(u).eval_unchecked(alpha), p))
                .collect();
            weighted_multiset_symmetric(vals)
        })
    })
}

/// Monte Carlo estimate of `P(s_A(u, α) ∈ [min(s_X1, s_X2), max(s_X1, s_X2)])`
/// for two independent draws of `rv`.
pub fn mc_containment(
    rv: &DiscreteFuzzyRV,
    query: &FuzzyNumber,
    u: Direction,
    alpha: f64,
    trials: usize,
    seed: u64,
) -> Result<f64> {
    if trials == 0 {
        return Err(DepthError::Config("trials must be positive".into()));
    }
    let t = query.support(u, alpha)?;
    let values: Vec<f64> = rv.atoms().iter().map(|x| x.profile(u).eval_unchecked(alpha)).collect();
    let pick = WeightedIndex::new(rv.probs()).map_err(|e| DepthError::Probability(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hits = (0..trials)
        .filter(|_| {
            let a = values[pick.sample(&mut rng)];
            let b = values[pick.sample(&mut rng)];
            a.min(b) <= t && t <= a.max(b)
        })
        .count();
    Ok(hits as f64 / trials as f64)
}
