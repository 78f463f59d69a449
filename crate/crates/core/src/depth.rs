//! Simplicial-type depth functionals for fuzzy numbers.
//!
//! Three functionals share one kernel. For a pair of observations `(X_i, X_j)`
//! and a direction `u`, the pair envelope is `[min(s_i, s_j), max(s_i, s_j)]`
//! as a function of α. Then
//!
//! * the naive depth counts pairs whose envelopes contain the query profile
//!   at every `(u, α)`;
//! * the modified depth averages, over both directions, the Lebesgue measure
//!   of the α where the query profile sits inside the envelope;
//! * the simplicial depth takes the smaller of the two directional measures.
//!
//! Empirical depths are U-statistics over unordered pairs of observations.
//! Population depths of a finitely supported fuzzy random variable weight
//! atom pairs by their probabilities.

use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result};
use crate::fuzzy::{Direction, FuzzyNumber, Sample, Trapezoid};
use crate::pl::{self, PLFunction, TOL};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

macro_rules! maybe_par_iter {
    ($v:expr) => {{
        #[cfg(feature = "parallel")]
        {
            $v.par_iter()
        }
        #[cfg(not(feature = "parallel"))]
        {
            $v.iter()
        }
    }};
}

/// Which pairs of observations enter the empirical U-statistic.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairScheme {
    /// Pairs `i < j`, normalised by `C(n, 2)`.
    #[default]
    Strict,
    /// Pairs `i ≤ j` including each observation with itself, normalised by
    /// `C(n + 1, 2)`.
    WithDiagonal,
}

/// Values of the three depth functionals for one query.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Depths {
    pub naive: f64,
    pub modified: f64,
    pub simplicial: f64,
}

/// Selects one of the three functionals.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Functional {
    Naive,
    #[default]
    Modified,
    Simplicial,
}

impl Functional {
    pub const ALL: [Functional; 3] = [Functional::Naive, Functional::Modified, Functional::Simplicial];

    pub fn of(self, d: &Depths) -> f64 {
        match self {
            Functional::Naive => d.naive,
            Functional::Modified => d.modified,
            Functional::Simplicial => d.simplicial,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Functional::Naive => "d_nS",
            Functional::Modified => "d_mS",
            Functional::Simplicial => "d_FS",
        }
    }
}

impl std::str::FromStr for Functional {
    type Err = DepthError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "naive" | "ns" | "d_ns" => Ok(Functional::Naive),
            "modified" | "ms" | "d_ms" => Ok(Functional::Modified),
            "simplicial" | "fs" | "d_fs" => Ok(Functional::Simplicial),
            _ => Err(DepthError::Config(format!("unknown depth functional `{s}`"))),
        }
    }
}

/// `L_{i,j,u}`: measure of the α where the query's `u`-profile lies between
/// the `u`-profiles of two observations.
pub fn pair_measure(query: &FuzzyNumber, xi: &FuzzyNumber, xj: &FuzzyNumber, u: Direction) -> Result<f64> {
    let (lo, hi) = pl::pair_envelopes(xi.profile(u), xj.profile(u));
    pl::measure_between(query.profile(u), &lo, &hi)
}

#[derive(Clone, Debug)]
struct PairEnvelope {
    lo: [PLFunction; 2],
    hi: [PLFunction; 2],
    weight: f64,
}

impl PairEnvelope {
    fn new(xi: &FuzzyNumber, xj: &FuzzyNumber, weight: f64) -> Self {
        let (lo_n, hi_n) = pl::pair_envelopes(xi.lower_neg(), xj.lower_neg());
        let (lo_p, hi_p) = pl::pair_envelopes(xi.upper(), xj.upper());
        PairEnvelope {
            lo: [lo_n, lo_p],
            hi: [hi_n, hi_p],
            weight,
        }
    }
}

fn slot(u: Direction) -> usize {
    match u {
        Direction::Neg => 0,
        Direction::Pos => 1,
    }
}

/// Precomputed pair envelopes of a reference distribution.
///
/// Built once per sample (or random variable) and then queried any number of
/// times, possibly from several threads.
#[derive(Clone, Debug)]
pub struct DepthEngine {
    pairs: Vec<PairEnvelope>,
    total_weight: f64,
}

impl DepthEngine {
    /// Engine for the empirical depths of `sample`.
    ///
    /// Multiplicities expand to repeated observations. Two copies of the same
    /// row form a pair with a degenerate envelope.
    pub fn new(sample: &Sample, scheme: PairScheme) -> Result<Self> {
        let n = sample.expanded_len();
        if n < 2 {
            return Err(DepthError::SampleTooSmall(n));
        }
        let items = sample.items();
        let counts = sample.counts();
        let mut pairs = Vec::new();
        for k in 0..items.len() {
            let m = counts[k] as f64;
            let same = match scheme {
                PairScheme::Strict => m * (m - 1.0) / 2.0,
                PairScheme::WithDiagonal => m * (m + 1.0) / 2.0,
            };
            if same > 0.0 {
                pairs.push(PairEnvelope::new(&items[k], &items[k], same));
            }
            for l in k + 1..items.len() {
                pairs.push(PairEnvelope::new(&items[k], &items[l], m * counts[l] as f64));
            }
        }
        let n = n as f64;
        let total_weight = match scheme {
            PairScheme::Strict => n * (n - 1.0) / 2.0,
            PairScheme::WithDiagonal => n * (n + 1.0) / 2.0,
        };
        Ok(DepthEngine { pairs, total_weight })
    }

    /// Engine for the population depths of a discrete fuzzy random variable.
    pub fn population(rv: &DiscreteFuzzyRV, scheme: AtomPairs) -> Result<Self> {
        let atoms = rv.atoms();
        let p = rv.probs();
        let mut pairs = Vec::new();
        let mut total_weight = 0.0;
        for i in 0..atoms.len() {
            if scheme == AtomPairs::Iid && p[i] > 0.0 {
                pairs.push(PairEnvelope::new(&atoms[i], &atoms[i], p[i] * p[i]));
                total_weight += p[i] * p[i];
            }
            for j in i + 1..atoms.len() {
                let w = 2.0 * p[i] * p[j];
                if w > 0.0 {
                    pairs.push(PairEnvelope::new(&atoms[i], &atoms[j], w));
                    total_weight += w;
                }
            }
        }
        if total_weight <= 0.0 {
            return Err(DepthError::Probability(
                "no pair of distinct atoms has positive probability".into(),
            ));
        }
        Ok(DepthEngine { pairs, total_weight })
    }

    /// Sum of pair weights; `C(n, 2)` for the strict empirical scheme.
    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// `Σ w_ij L_{i,j,u}` for both directions, and `Σ w_ij I_{i,j}`.
    fn accumulate(&self, query: &FuzzyNumber) -> Result<([f64; 2], f64)> {
        let mut measures = [0.0; 2];
        let mut naive = 0.0;
        for pair in &self.pairs {
            let mut inside = true;
            for u in Direction::BOTH {
                let s = slot(u);
                let g = query.profile(u);
                let m = pl::measure_between(g, &pair.lo[s], &pair.hi[s])?;
                measures[s] += pair.weight * m;
                if inside {
                    inside = m > 0.5 && pl::contained_everywhere(g, &pair.lo[s], &pair.hi[s])?;
                }
            }
            if inside {
                naive += pair.weight;
            }
        }
        Ok((measures, naive))
    }

    /// Directional averages `F_A(u)` for `u = -1` and `u = +1`.
    pub fn directional(&self, query: &FuzzyNumber) -> Result<[f64; 2]> {
        let (m, _) = self.accumulate(query)?;
        Ok([m[0] / self.total_weight, m[1] / self.total_weight])
    }

    pub fn depths(&self, query: &FuzzyNumber) -> Result<Depths> {
        let (m, naive) = self.accumulate(query)?;
        let w = self.total_weight;
        let (neg, pos) = ((m[0] / w).min(1.0), (m[1] / w).min(1.0));
        Ok(Depths {
            naive: (naive / w).min(1.0),
            modified: 0.5 * (neg + pos),
            simplicial: neg.min(pos),
        })
    }

    /// Depths of many queries; evaluated in parallel with the `parallel`
    /// feature. Output order follows input order.
    pub fn depths_many(&self, queries: &[FuzzyNumber]) -> Result<Vec<Depths>> {
        maybe_par_iter!(queries).map(|q| self.depths(q)).collect()
    }
}

/// Empirical depths of `query` with respect to `sample`, strict pairs.
pub fn empirical_depths(sample: &Sample, query: &FuzzyNumber) -> Result<Depths> {
    DepthEngine::new(sample, PairScheme::Strict)?.depths(query)
}

/// Empirical depths under an explicit pair scheme.
pub fn empirical_depths_with(sample: &Sample, query: &FuzzyNumber, scheme: PairScheme) -> Result<Depths> {
    DepthEngine::new(sample, scheme)?.depths(query)
}

/// Fuzzy random variable with finitely many values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiscreteFuzzyRV {
    atoms: Vec<FuzzyNumber>,
    probs: Vec<f64>,
}

impl DiscreteFuzzyRV {
    pub fn new(atoms: Vec<FuzzyNumber>, probs: Vec<f64>) -> Result<Self> {
        if atoms.is_empty() {
            return Err(DepthError::Probability("no atoms".into()));
        }
        if atoms.len() != probs.len() {
            return Err(DepthError::Probability(format!(
                "{} atoms but {} probabilities",
                atoms.len(),
                probs.len()
            )));
        }
        if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(DepthError::Probability("negative or non-finite probability".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(DepthError::Probability(format!("probabilities sum to {total}")));
        }
        Ok(DiscreteFuzzyRV { atoms, probs })
    }

    /// Equal mass on every atom.
    pub fn uniform(atoms: Vec<FuzzyNumber>) -> Result<Self> {
        let p = 1.0 / atoms.len().max(1) as f64;
        let probs = vec![p; atoms.len()];
        Self::new(atoms, probs)
    }

    /// The empirical distribution of a sample.
    pub fn from_sample(sample: &Sample) -> Result<Self> {
        let n = sample.expanded_len() as f64;
        let probs = sample.counts().iter().map(|&c| c as f64 / n).collect();
        Self::new(sample.items().to_vec(), probs)
    }

    pub fn atoms(&self) -> &[FuzzyNumber] {
        &self.atoms
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// Distribution of the real random variable `s_X(u, α)` at a fixed `(u, α)`.
pub trait CdfOracle {
    /// `F_{u,α}(t) = P(s_X(u, α) ≤ t)`.
    fn cdf(&self, u: Direction, alpha: f64, t: f64) -> f64;

    /// `P(s_X(u, α) = t)`; zero for continuous support functionals.
    fn atom_mass(&self, _u: Direction, _alpha: f64, _t: f64) -> f64 {
        0.0
    }
}

fn ties(a: f64, b: f64) -> bool {
    (a - b).abs() <= TOL * a.abs().max(b.abs()).max(1.0)
}

impl CdfOracle for DiscreteFuzzyRV {
    fn cdf(&self, u: Direction, alpha: f64, t: f64) -> f64 {
        self.atoms
            .iter()
            .zip(&self.probs)
            .filter(|(x, _)| {
                let s = x.profile(u).eval_unchecked(alpha);
                s <= t || ties(s, t)
            })
            .map(|(_, p)| p)
            .sum::<f64>()
            .min(1.0)
    }

    fn atom_mass(&self, u: Direction, alpha: f64, t: f64) -> f64 {
        self.atoms
            .iter()
            .zip(&self.probs)
            .filter(|(x, _)| ties(x.profile(u).eval_unchecked(alpha), t))
            .map(|(_, p)| p)
            .sum()
    }
}

/// Standard normal CDF.
pub fn std_normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / std::f64::consts::SQRT_2)
}

/// Continuous fuzzy random variable `X = Y + σ·Z` where `Y` is discrete and
/// `Z` is an independent standard normal shift of the whole set.
///
/// Every support functional `s_X(u, α) = s_Y(u, α) + u σ Z` is continuous,
/// and `X` is F-symmetric about `A` whenever `Y` is.
#[derive(Clone, Debug)]
pub struct SmoothedDiscreteOracle {
    pub rv: DiscreteFuzzyRV,
    pub noise_sd: f64,
}

impl SmoothedDiscreteOracle {
    pub fn new(rv: DiscreteFuzzyRV, noise_sd: f64) -> Result<Self> {
        if !(noise_sd.is_finite() && noise_sd > 0.0) {
            return Err(DepthError::Config(format!("noise sd must be positive, got {noise_sd}")));
        }
        Ok(SmoothedDiscreteOracle { rv, noise_sd })
    }
}

impl CdfOracle for SmoothedDiscreteOracle {
    fn cdf(&self, u: Direction, alpha: f64, t: f64) -> f64 {
        // u·Z is again standard normal, so both directions share the formula.
        self.rv
            .atoms()
            .iter()
            .zip(self.rv.probs())
            .map(|(x, p)| p * std_normal_cdf((t - x.profile(u).eval_unchecked(alpha)) / self.noise_sd))
            .sum()
    }
}

/// `P(s_A(u, α) ∈ [m_X(u, α), M_X(u, α)])` for two independent draws:
/// `1 - (1 - F)^2 - (F - P(s_X = s_A))^2`.
pub fn containment_probability<O: CdfOracle + ?Sized>(
    oracle: &O,
    query: &FuzzyNumber,
    u: Direction,
    alpha: f64,
) -> Result<f64> {
    let t = query.support(u, alpha)?;
    let f = oracle.cdf(u, alpha, t);
    let mass = oracle.atom_mass(u, alpha, t);
    if !(0.0..=1.0 + TOL).contains(&f) || !(0.0..=f + TOL).contains(&mass) {
        return Err(DepthError::Oracle(format!("F = {f}, atom mass = {mass}")));
    }
    let f = f.min(1.0);
    let below = (f - mass).max(0.0);
    Ok((1.0 - (1.0 - f).powi(2) - below.powi(2)).clamp(0.0, 1.0))
}

/// How two independent draws of a discrete random variable are formed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum AtomPairs {
    /// Independent draws; a draw may repeat the same atom.
    #[default]
    Iid,
    /// Draws conditioned on hitting two different atoms, weights
    /// `p_i p_j / (1 - Σ p_k²)`. For two equiprobable atoms this is the pair
    /// of the two atoms.
    DistinctAtoms,
}

/// Population depth values.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PopulationDepths {
    pub modified: f64,
    pub simplicial: f64,
}

/// Exact population depths of a discrete random variable.
pub fn population_depths(rv: &DiscreteFuzzyRV, query: &FuzzyNumber, pairs: AtomPairs) -> Result<PopulationDepths> {
    let d = DepthEngine::population(rv, pairs)?.depths(query)?;
    Ok(PopulationDepths {
        modified: d.modified,
        simplicial: d.simplicial,
    })
}

/// Minimum number of α nodes for oracle quadrature.
pub const MIN_QUADRATURE_NODES: usize = 64;

/// Population depths from a CDF oracle, integrating the containment
/// probability over α with the composite midpoint rule on `nodes` cells.
pub fn population_depths_oracle<O: CdfOracle + ?Sized>(
    oracle: &O,
    query: &FuzzyNumber,
    nodes: usize,
) -> Result<PopulationDepths> {
    if nodes < MIN_QUADRATURE_NODES {
        return Err(DepthError::Quadrature(format!(
            "{nodes} nodes, need at least {MIN_QUADRATURE_NODES}"
        )));
    }
    let h = 1.0 / nodes as f64;
    let mut dir = [0.0; 2];
    for u in Direction::BOTH {
        dir[slot(u)] = (0..nodes)
            .map(|k| containment_probability(oracle, query, u, (k as f64 + 0.5) * h))
            .sum::<Result<f64>>()?
            * h;
    }
    Ok(PopulationDepths {
        modified: 0.5 * (dir[0] + dir[1]),
        simplicial: dir[0].min(dir[1]),
    })
}

fn median_of(v: &mut [f64]) -> f64 {
    v.sort_by(f64::total_cmp);
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

/// Coordinate-wise median trapezoid. Even sizes use the midpoint of the two
/// central order statistics.
pub fn median_trapezoid(ts: &[Trapezoid]) -> Result<Trapezoid> {
    if ts.is_empty() {
        return Err(DepthError::EmptySample);
    }
    let mut cols: [Vec<f64>; 4] = Default::default();
    for t in ts {
        for (col, v) in cols.iter_mut().zip(t.coords()) {
            col.push(v);
        }
    }
    let [a, b, c, d] = cols.map(|mut col| median_of(&mut col));
    Trapezoid::new(a, b, c, d)
}

/// Median trapezoid of a sample, multiplicities expanded.
pub fn sample_median(sample: &Sample) -> Result<Trapezoid> {
    let ts = sample.trapezoids()?;
    let expanded: Vec<Trapezoid> = ts
        .iter()
        .zip(sample.counts())
        .flat_map(|(t, &c)| std::iter::repeat_n(*t, c))
        .collect();
    median_trapezoid(&expanded)
}

/// Whether a report row belongs to the reference sample or was only
/// evaluated against it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    #[default]
    Sample,
    Query,
}

/// One row of a [`DepthReport`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub index: usize,
    pub role: Role,
    pub label: Option<String>,
    pub trapezoid: Option<Trapezoid>,
    pub count: usize,
    pub depths: Depths,
    pub rank_naive: usize,
    pub rank_modified: usize,
    pub rank_simplicial: usize,
}

/// Depths of every distinct item of a sample against the full sample.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthReport {
    pub scheme: PairScheme,
    pub rows: Vec<ReportRow>,
    pub median: Option<Trapezoid>,
    pub max_naive: Vec<usize>,
    pub max_modified: Vec<usize>,
    pub max_simplicial: Vec<usize>,
}

/// Dense ranks, 1 for the deepest; values within `TOL` share a rank.
pub fn dense_ranks(values: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[j].total_cmp(&values[i]).then(i.cmp(&j)));
    let mut ranks = vec![0; values.len()];
    let mut rank = 0;
    let mut prev = f64::NAN;
    for &i in &order {
        if rank == 0 || !ties(values[i], prev) {
            rank += 1;
            prev = values[i];
        }
        ranks[i] = rank;
    }
    ranks
}

impl DepthReport {
    /// Indices ordered by rank under `pick`, ties by index.
    pub fn order_by(&self, pick: fn(&Depths) -> f64) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.rows.len()).collect();
        idx.sort_by(|&i, &j| {
            pick(&self.rows[j].depths)
                .total_cmp(&pick(&self.rows[i].depths))
                .then(i.cmp(&j))
        });
        idx
    }
}

/// Computes all three depths of every distinct item (leave-in), dense ranks,
/// the median trapezoid (when every item is trapezoidal) and the maximisers.
pub fn rank_sample(sample: &Sample, scheme: PairScheme) -> Result<DepthReport> {
    rank_with_queries(sample, &[], scheme)
}

/// As [`rank_sample`], with extra query rows evaluated against the sample.
/// Ranks and maximisers run over sample and query rows together; the median
/// uses the sample only.
pub fn rank_with_queries(
    sample: &Sample,
    queries: &[(Option<String>, FuzzyNumber)],
    scheme: PairScheme,
) -> Result<DepthReport> {
    let engine = DepthEngine::new(sample, scheme)?;
    let mut targets: Vec<FuzzyNumber> = sample.items().to_vec();
    targets.extend(queries.iter().map(|(_, q)| q.clone()));
    let depths = engine.depths_many(&targets)?;

    let col = |f: fn(&Depths) -> f64| depths.iter().map(f).collect::<Vec<_>>();
    let rn = dense_ranks(&col(|d| d.naive));
    let rm = dense_ranks(&col(|d| d.modified));
    let rs = dense_ranks(&col(|d| d.simplicial));

    let n_items = sample.len();
    let rows = targets
        .iter()
        .enumerate()
        .map(|(i, x)| {
            let (role, label, count) = if i < n_items {
                (Role::Sample, sample.labels()[i].clone(), sample.counts()[i])
            } else {
                (Role::Query, queries[i - n_items].0.clone(), 0)
            };
            ReportRow {
                index: i,
                role,
                label,
                trapezoid: x.to_trapezoid(),
                count,
                depths: depths[i],
                rank_naive: rn[i],
                rank_modified: rm[i],
                rank_simplicial: rs[i],
            }
        })
        .collect();
    let top = |r: &[usize]| (0..r.len()).filter(|&i| r[i] == 1).collect::<Vec<_>>();

    Ok(DepthReport {
        scheme,
        rows,
        median: sample_median(sample).ok(),
        max_naive: top(&rn),
        max_modified: top(&rm),
        max_simplicial: top(&rs),
    })
}
