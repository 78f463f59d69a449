//! Self-check suite behind `fuzzydepth verify`.
//!
//! Each check compares the exact engine against an independent route: worked
//! examples with known values, the closed-form containment probability
//! against Monte Carlo, the U-statistic against a brute-force pair loop that
//! works on trapezoid coordinates, and structural invariants.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::datasets;
use crate::depth::{containment_probability, empirical_depths, population_depths, AtomPairs, Depths, DiscreteFuzzyRV};
use crate::error::Result;
use crate::fuzzy::{Direction, FuzzyNumber, Sample, Trapezoid};
use crate::pl::PLFunction;
use crate::stochastics::mc_containment;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn random_trapezoid(rng: &mut ChaCha8Rng, spread: f64) -> Trapezoid {
    let x: f64 = rng.gen_range(-spread..spread);
    let mut w = [0.0; 3];
    for v in &mut w {
        // occasionally degenerate sides
        *v = if rng.gen_bool(0.15) {
            0.0
        } else {
            rng.gen_range(0.0..2.0)
        };
    }
    Trapezoid {
        a: x - w[0],
        b: x,
        c: x + w[1],
        d: x + w[1] + w[2],
    }
}

/// `ν{α : (q(α) - x(α)) (q(α) - y(α)) ≤ 0}` for affine `q`, `x`, `y` given by
/// their values at α = 0 and α = 1. The product changes sign only at the
/// roots of its two factors, so the sign at cell midpoints decides each cell.
fn affine_between_measure(q: (f64, f64), x: (f64, f64), y: (f64, f64)) -> (f64, bool) {
    let at = |f: (f64, f64), t: f64| f.0 + t * (f.1 - f.0);
    let mut cuts = vec![0.0, 1.0];
    for f in [x, y] {
        let d0 = q.0 - f.0;
        let d1 = q.1 - f.1;
        if d0 != d1 {
            let r = d0 / (d0 - d1);
            if r > 0.0 && r < 1.0 {
                cuts.push(r);
            }
        }
    }
    cuts.sort_by(f64::total_cmp);
    let inside = |t: f64| {
        let v = at(q, t);
        let (lo, hi) = (at(x, t).min(at(y, t)), at(x, t).max(at(y, t)));
        let tol = 1e-12 * v.abs().max(lo.abs()).max(hi.abs()).max(1.0);
        lo - tol <= v && v <= hi + tol
    };
    let mut measure = 0.0;
    let mut everywhere = inside(0.0) && inside(1.0);
    for w in cuts.windows(2) {
        let mid = 0.5 * (w[0] + w[1]);
        if inside(mid) {
            measure += w[1] - w[0];
        } else {
            everywhere = false;
        }
        everywhere &= inside(w[1]);
    }
    (measure, everywhere)
}

fn profiles(t: &Trapezoid) -> [(f64, f64); 2] {
    // (u = -1, u = +1), each as (value at 0, value at 1)
    [(-t.a, -t.b), (t.d, t.c)]
}

/// Empirical depths by an explicit double loop over the expanded sample,
/// pairs `i < j`.
pub fn brute_force_depths(sample: &[Trapezoid], query: &Trapezoid) -> Depths {
    let n = sample.len();
    let q = profiles(query);
    let mut l = [0.0; 2];
    let mut naive = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let (pi, pj) = (profiles(&sample[i]), profiles(&sample[j]));
            let mut all = true;
            for k in 0..2 {
                let (m, e) = affine_between_measure(q[k], pi[k], pj[k]);
                l[k] += m;
                all &= e;
            }
            if all {
                naive += 1.0;
            }
        }
    }
    let pairs = (n * (n - 1) / 2) as f64;
    let (neg, pos) = (l[0] / pairs, l[1] / pairs);
    Depths {
        naive: naive / pairs,
        modified: 0.5 * (neg + pos),
        simplicial: neg.min(pos),
    }
}

/// Univariate simplicial depth of `x` among `values`: the share of pairs
/// `i < j` with `x ∈ [min, max]`.
pub fn univariate_simplicial_depth(values: &[f64], x: f64) -> f64 {
    let n = values.len();
    let mut hits = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            if values[i].min(values[j]) <= x && x <= values[i].max(values[j]) {
                hits += 1;
            }
        }
    }
    hits as f64 / (n * (n - 1) / 2) as f64
}

fn check(name: &'static str, passed: bool, detail: String) -> CheckResult {
    CheckResult { name, passed, detail }
}

fn worked_examples() -> Result<CheckResult> {
    let s = datasets::two_interval_sample()?;
    let qs = datasets::two_interval_queries()?;
    let want = [(0.625, 0.5), (0.625, 0.25), (0.125, 0.0), (0.25, 0.0)];
    let mut worst: f64 = 0.0;
    for ((_, t), (ms, fs)) in qs.iter().zip(want) {
        let d = empirical_depths(&s, &t.to_fuzzy())?;
        worst = worst.max((d.modified - ms).abs()).max((d.simplicial - fs).abs());
    }
    Ok(check(
        "two-interval worked example",
        worst <= 1e-12,
        format!("max error {worst:.3e}"),
    ))
}

fn vanishing_counterexample() -> Result<CheckResult> {
    let rv = DiscreteFuzzyRV::uniform(vec![FuzzyNumber::singleton(1.0)?, FuzzyNumber::singleton(-1.0)?])?;
    let b = FuzzyNumber::from_profiles(
        PLFunction::new(vec![0.0, 0.5, 1.0], vec![1.0, 0.0, 0.0])?,
        PLFunction::constant(0.0),
    )?;
    let mut ok = true;
    for n in [1.0, 10.0, 1e3, 1e6] {
        let q = FuzzyNumber::singleton(0.0)?.add(&b.scale(n)?);
        let d = population_depths(&rv, &q, AtomPairs::DistinctAtoms)?;
        ok &= d.simplicial >= 0.5 && d.modified >= 0.5;
        ok &= (d.simplicial - (0.5 + 0.5 / n)).abs() <= 1e-12;
        ok &= (d.modified - (0.75 + 0.25 / n)).abs() <= 1e-12;
    }
    Ok(check(
        "depth does not vanish along A + nB",
        ok,
        "n in {1, 10, 1e3, 1e6}".into(),
    ))
}

fn random_rv(rng: &mut ChaCha8Rng) -> Result<DiscreteFuzzyRV> {
    let k = rng.gen_range(2..=6);
    let atoms = (0..k).map(|_| random_trapezoid(rng, 3.0).to_fuzzy()).collect();
    let raw: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = raw.iter().sum();
    let mut probs: Vec<f64> = raw.iter().map(|p| p / total).collect();
    let head: f64 = probs[..k - 1].iter().sum();
    probs[k - 1] = 1.0 - head;
    DiscreteFuzzyRV::new(atoms, probs)
}

/// Closed-form containment probability against Monte Carlo on `cases`
/// random discrete variables; returns the number within 3 standard errors.
pub fn containment_vs_monte_carlo(cases: usize, trials: usize, seed: u64) -> Result<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut within = 0;
    for case in 0..cases {
        let rv = random_rv(&mut rng)?;
        let q = random_trapezoid(&mut rng, 3.0).to_fuzzy();
        let u = if rng.gen_bool(0.5) {
            Direction::Pos
        } else {
            Direction::Neg
        };
        let alpha: f64 = rng.gen_range(0.0..=1.0);
        let p = containment_probability(&rv, &q, u, alpha)?;
        let est = mc_containment(&rv, &q, u, alpha, trials, seed.wrapping_add(1 + case as u64))?;
        let band = 3.0 * (p * (1.0 - p) / trials as f64).sqrt();
        if (p - est).abs() <= band {
            within += 1;
        }
    }
    Ok((within, cases))
}

fn random_sample(rng: &mut ChaCha8Rng, max_n: usize) -> Vec<Trapezoid> {
    let n = rng.gen_range(2..=max_n);
    let mut ts: Vec<Trapezoid> = (0..n).map(|_| random_trapezoid(rng, 4.0)).collect();
    if n > 3 && rng.gen_bool(0.3) {
        ts[1] = ts[0];
    }
    ts
}

fn ustat_oracle(seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let ts = random_sample(&mut rng, 50);
        let q = if rng.gen_bool(0.2) {
            ts[0]
        } else {
            random_trapezoid(&mut rng, 4.0)
        };
        let fast = empirical_depths(&Sample::from_trapezoids(&ts)?, &q.to_fuzzy())?;
        let slow = brute_force_depths(&ts, &q);
        worst = worst
            .max((fast.naive - slow.naive).abs())
            .max((fast.modified - slow.modified).abs())
            .max((fast.simplicial - slow.simplicial).abs());
    }
    Ok(check(
        "U-statistic vs brute-force pair loop",
        worst <= 1e-12,
        format!("max error {worst:.3e}"),
    ))
}

fn ordering_invariant(seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    for _ in 0..200 {
        let ts = random_sample(&mut rng, 30);
        let q = random_trapezoid(&mut rng, 4.0);
        let d = empirical_depths(&Sample::from_trapezoids(&ts)?, &q.to_fuzzy())?;
        let in_range = [d.naive, d.modified, d.simplicial]
            .iter()
            .all(|v| (0.0..=1.0).contains(v));
        if !(in_range && d.naive <= d.simplicial + 1e-12 && d.simplicial <= d.modified + 1e-12) {
            violations += 1;
        }
    }
    Ok(check(
        "d_nS <= d_FS <= d_mS",
        violations == 0,
        format!("{violations} violations in 200"),
    ))
}

fn affine_invariance(seed: u64) -> Result<CheckResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let ts = random_sample(&mut rng, 20);
        let s = Sample::from_trapezoids(&ts)?;
        let q = random_trapezoid(&mut rng, 4.0).to_fuzzy();
        let mut gamma: f64 = rng.gen_range(0.2..3.0);
        if rng.gen_bool(0.5) {
            gamma = -gamma;
        }
        let shift = random_trapezoid(&mut rng, 10.0).to_fuzzy();
        let before = empirical_depths(&s, &q)?;
        let after = empirical_depths(&s.affine_map(gamma, &shift)?, &q.affine_map(gamma, &shift)?)?;
        worst = worst
            .max((before.naive - after.naive).abs())
            .max((before.modified - after.modified).abs())
            .max((before.simplicial - after.simplicial).abs());
    }
    Ok(check(
        "affine invariance",
        worst <= 1e-9,
        format!("max change {worst:.3e}"),
    ))
}

fn chain_coincidence() -> Result<CheckResult> {
    let s = datasets::synthetic_chain()?;
    let ts = datasets::synthetic_chain_trapezoids();
    let values: Vec<f64> = ts
        .iter()
        .zip(datasets::CHAIN_COUNTS)
        .flat_map(|(t, c)| std::iter::repeat_n(t.c, c))
        .collect();
    let engine = crate::depth::DepthEngine::new(&s, crate::depth::PairScheme::Strict)?;
    let mut worst: f64 = 0.0;
    for t in &ts {
        let d = engine.depths(&t.to_fuzzy())?;
        let sd = univariate_simplicial_depth(&values, t.c);
        worst = worst
            .max((d.naive - d.modified).abs())
            .max((d.modified - d.simplicial).abs())
            .max((d.naive - sd).abs());
    }
    Ok(check(
        "chain data: three depths coincide",
        worst <= 1e-12,
        format!("max gap {worst:.3e}"),
    ))
}

/// Runs every check. `trials` and `seed` drive the Monte Carlo comparison
/// and the random instances.
pub fn run_suite(trials: usize, seed: u64) -> Result<Vec<CheckResult>> {
    let (within, cases) = containment_vs_monte_carlo(50, trials, seed)?;
    Ok(vec![
        worked_examples()?,
        vanishing_counterexample()?,
        check(
            "containment probability vs Monte Carlo",
            within + 2 >= cases,
            format!("{within}/{cases} within 3 sigma, {trials} trials"),
        ),
        ordering_invariant(seed)?,
        affine_invariance(seed)?,
        chain_coincidence()?,
        ustat_oracle(seed)?,
    ])
}
