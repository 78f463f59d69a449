//! Exact calculus on continuous piecewise-linear functions of α ∈ [0, 1].
//!
//! Every support profile in this crate is a [`PLFunction`]. Envelopes,
//! containment tests and Lebesgue measures of sublevel sets are computed
//! cell by cell on merged breakpoint grids, where all operands are affine and
//! each question reduces to at most two linear inequalities.

use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result};

/// Absolute tolerance used to snap near-zero differences and to validate
/// envelope ordering. Scaled by the magnitude of the operands.
pub const TOL: f64 = 1e-12;

/// Continuous piecewise-linear function on `[0, 1]`.
///
/// Breakpoints are strictly increasing, start at `0` and end at `1`. The
/// representation is kept canonical: no interior breakpoint joins two
/// segments with equal slope.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PLFunction {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

#[inline]
fn snap(v: f64, scale: f64) -> f64 {
    if v.abs() <= TOL * scale.max(1.0) {
        0.0
    } else {
        v
    }
}

/// Sub-interval of `[x0, x1]` where the affine function with end values
/// `p0`, `p1` is nonnegative. `None` when empty.
fn nonneg_part(x0: f64, x1: f64, p0: f64, p1: f64) -> Option<(f64, f64)> {
    match (p0 >= 0.0, p1 >= 0.0) {
        (true, true) => Some((x0, x1)),
        (false, false) => None,
        (true, false) => Some((x0, x0 + (x1 - x0) * (p0 / (p0 - p1)))),
        (false, true) => Some((x0 + (x1 - x0) * (p0 / (p0 - p1)), x1)),
    }
}

fn merge_grids(fs: &[&PLFunction]) -> Vec<f64> {
    let mut xs: Vec<f64> = fs.iter().flat_map(|f| f.xs.iter().copied()).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    xs
}

impl PLFunction {
    /// Builds a function from breakpoints and values, validating and
    /// canonicalising the representation.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() || xs.len() < 2 {
            return Err(DepthError::InvalidProfile(
                "breakpoints and values must have equal length >= 2".into(),
            ));
        }
        if xs.iter().chain(ys.iter()).any(|v| !v.is_finite()) {
            return Err(DepthError::NonFinite);
        }
        if xs[0] != 0.0 || *xs.last().unwrap() != 1.0 {
            return Err(DepthError::InvalidProfile(
                "breakpoints must start at 0 and end at 1".into(),
            ));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DepthError::InvalidProfile(
                "breakpoints must be strictly increasing".into(),
            ));
        }
        Ok(Self::from_raw(xs, ys))
    }

    fn from_raw(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        let mut f = PLFunction { xs, ys };
        f.canonicalize();
        f
    }

    pub fn constant(c: f64) -> Self {
        PLFunction {
            xs: vec![0.0, 1.0],
            ys: vec![c, c],
        }
    }

    /// Affine function with `f(0) = at0` and `f(1) = at1`.
    pub fn affine(at0: f64, at1: f64) -> Self {
        PLFunction {
            xs: vec![0.0, 1.0],
            ys: vec![at0, at1],
        }
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.xs
    }

    pub fn values(&self) -> &[f64] {
        &self.ys
    }

    pub fn is_affine(&self) -> bool {
        self.xs.len() == 2
    }

    fn canonicalize(&mut self) {
        if self.xs.len() <= 2 {
            return;
        }
        let mut xs = Vec::with_capacity(self.xs.len());
        let mut ys = Vec::with_capacity(self.ys.len());
        xs.push(self.xs[0]);
        ys.push(self.ys[0]);
        for i in 1..self.xs.len() - 1 {
            let (xp, yp) = (*xs.last().unwrap(), *ys.last().unwrap());
            let (x, y) = (self.xs[i], self.ys[i]);
            let (xn, yn) = (self.xs[i + 1], self.ys[i + 1]);
            let s_left = (y - yp) / (x - xp);
            let s_right = (yn - y) / (xn - x);
            let scale = s_left.abs().max(s_right.abs()).max(1.0);
            if (s_left - s_right).abs() > TOL * scale {
                xs.push(x);
                ys.push(y);
            }
        }
        xs.push(*self.xs.last().unwrap());
        ys.push(*self.ys.last().unwrap());
        self.xs = xs;
        self.ys = ys;
    }

    /// Evaluates by linear interpolation; exact at breakpoints.
    pub fn eval(&self, alpha: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(DepthError::Domain(format!("alpha = {alpha} outside [0, 1]")));
        }
        Ok(self.eval_unchecked(alpha))
    }

    pub(crate) fn eval_unchecked(&self, alpha: f64) -> f64 {
        let i = self.xs.partition_point(|&x| x < alpha);
        if i < self.xs.len() && self.xs[i] == alpha {
            return self.ys[i];
        }
        if i == 0 {
            return self.ys[0];
        }
        if i == self.xs.len() {
            return *self.ys.last().unwrap();
        }
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.ys[i - 1], self.ys[i]);
        let t = (alpha - x0) / (x1 - x0);
        y0 + t * (y1 - y0)
    }

    fn sample_on(&self, grid: &[f64]) -> Vec<f64> {
        grid.iter().map(|&x| self.eval_unchecked(x)).collect()
    }

    /// `a·self + b·other`, pointwise.
    pub fn linear_combination(&self, a: f64, other: &PLFunction, b: f64) -> PLFunction {
        let grid = merge_grids(&[self, other]);
        let ys = grid
            .iter()
            .map(|&x| a * self.eval_unchecked(x) + b * other.eval_unchecked(x))
            .collect();
        PLFunction::from_raw(grid, ys)
    }

    pub fn add(&self, other: &PLFunction) -> PLFunction {
        self.linear_combination(1.0, other, 1.0)
    }

    pub fn sub(&self, other: &PLFunction) -> PLFunction {
        self.linear_combination(1.0, other, -1.0)
    }

    pub fn scale(&self, gamma: f64) -> PLFunction {
        PLFunction::from_raw(self.xs.clone(), self.ys.iter().map(|y| gamma * y).collect())
    }

    pub fn negate(&self) -> PLFunction {
        self.scale(-1.0)
    }

    /// Pointwise `|f|`, with zero crossings inserted as breakpoints.
    pub fn abs(&self) -> PLFunction {
        let zero = PLFunction::constant(0.0);
        let lo = pairwise_envelope(self, &zero, false);
        lo.linear_combination(-1.0, &pairwise_envelope(self, &zero, true), 1.0)
    }

    pub fn max_value(&self) -> f64 {
        self.ys.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_value(&self) -> f64 {
        self.ys.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `true` when `self(α) ≥ self(β)` whenever `α ≤ β`, up to [`TOL`].
    pub fn is_non_increasing(&self) -> bool {
        self.ys
            .windows(2)
            .all(|w| w[1] - w[0] <= TOL * w[0].abs().max(w[1].abs()).max(1.0))
    }

    /// `∫₀¹ |f(α)|^r dα`, integrated in closed form on each segment.
    pub fn integrate_abs_pow(&self, r: f64) -> f64 {
        let a = self.abs();
        a.xs.windows(2)
            .zip(a.ys.windows(2))
            .map(|(x, y)| segment_pow_integral(x[1] - x[0], y[0], y[1], r))
            .sum()
    }

    /// Structural comparison within `tol` on the merged grid.
    pub fn approx_eq(&self, other: &PLFunction, tol: f64) -> bool {
        let grid = merge_grids(&[self, other]);
        grid.iter()
            .all(|&x| (self.eval_unchecked(x) - other.eval_unchecked(x)).abs() <= tol)
    }

    /// `true` iff `self ≤ other` on `[0, 1]` (up to [`TOL`]).
    pub fn le_everywhere(&self, other: &PLFunction) -> bool {
        let grid = merge_grids(&[self, other]);
        grid.iter().all(|&x| {
            let (a, b) = (self.eval_unchecked(x), other.eval_unchecked(x));
            snap(b - a, a.abs().max(b.abs())) >= 0.0
        })
    }
}

/// `∫ |ℓ|^r` over a segment of width `w` on which the affine `ℓ` runs from
/// `v0` to `v1`, both nonnegative.
fn segment_pow_integral(w: f64, v0: f64, v1: f64, r: f64) -> f64 {
    let (v0, v1) = (v0.max(0.0), v1.max(0.0));
    if (v1 - v0).abs() <= TOL * v0.max(v1).max(1.0) {
        let v = 0.5 * (v0 + v1);
        return w * v.powf(r);
    }
    w * (v1.powf(r + 1.0) - v0.powf(r + 1.0)) / ((r + 1.0) * (v1 - v0))
}

fn pairwise_envelope(f: &PLFunction, g: &PLFunction, take_max: bool) -> PLFunction {
    let grid = merge_grids(&[f, g]);
    let fv = f.sample_on(&grid);
    let gv = g.sample_on(&grid);
    let pick = |a: f64, b: f64| if take_max { a.max(b) } else { a.min(b) };

    let mut xs = Vec::with_capacity(grid.len() * 2);
    let mut ys = Vec::with_capacity(grid.len() * 2);
    xs.push(grid[0]);
    ys.push(pick(fv[0], gv[0]));
    for i in 1..grid.len() {
        let d0 = snap(fv[i - 1] - gv[i - 1], fv[i - 1].abs().max(gv[i - 1].abs()));
        let d1 = snap(fv[i] - gv[i], fv[i].abs().max(gv[i].abs()));
        if (d0 > 0.0 && d1 < 0.0) || (d0 < 0.0 && d1 > 0.0) {
            let (x0, x1) = (grid[i - 1], grid[i]);
            let t = x0 + (x1 - x0) * (d0 / (d0 - d1));
            if t > x0 && t < x1 {
                let s = (t - x0) / (x1 - x0);
                xs.push(t);
                ys.push(fv[i - 1] + s * (fv[i] - fv[i - 1]));
            }
        }
        xs.push(grid[i]);
        ys.push(pick(fv[i], gv[i]));
    }
    PLFunction::from_raw(xs, ys)
}

fn envelope(fs: &[PLFunction], take_max: bool) -> Result<PLFunction> {
    let (first, rest) = fs
        .split_first()
        .ok_or_else(|| DepthError::Domain("envelope of an empty list".into()))?;
    Ok(rest
        .iter()
        .fold(first.clone(), |acc, f| pairwise_envelope(&acc, f, take_max)))
}

/// Pointwise minimum of a nonempty list of functions.
pub fn min_envelope(fs: &[PLFunction]) -> Result<PLFunction> {
    envelope(fs, false)
}

/// Pointwise maximum of a nonempty list of functions.
pub fn max_envelope(fs: &[PLFunction]) -> Result<PLFunction> {
    envelope(fs, true)
}

/// `(min(f, g), max(f, g))` without the slice allocation of the list forms.
pub fn pair_envelopes(f: &PLFunction, g: &PLFunction) -> (PLFunction, PLFunction) {
    (pairwise_envelope(f, g, false), pairwise_envelope(f, g, true))
}

fn check_envelope(grid: &[f64], lo: &[f64], hi: &[f64]) -> Result<()> {
    for ((&x, &l), &h) in grid.iter().zip(lo).zip(hi) {
        if l - h > TOL * l.abs().max(h.abs()).max(1.0) {
            return Err(DepthError::EnvelopeInverted { alpha: x });
        }
    }
    Ok(())
}

/// Lebesgue measure of `{α ∈ [0,1] : lo(α) ≤ g(α) ≤ hi(α)}`.
///
/// Boundaries are closed. Differences within [`TOL`] of zero at grid points
/// are treated as touching, so that a profile lying on its own envelope
/// counts as contained.
pub fn measure_between(g: &PLFunction, lo: &PLFunction, hi: &PLFunction) -> Result<f64> {
    let grid = merge_grids(&[g, lo, hi]);
    let gv = g.sample_on(&grid);
    let lv = lo.sample_on(&grid);
    let hv = hi.sample_on(&grid);
    check_envelope(&grid, &lv, &hv)?;

    let above = |i: usize| snap(gv[i] - lv[i], gv[i].abs().max(lv[i].abs()));
    let below = |i: usize| snap(hv[i] - gv[i], gv[i].abs().max(hv[i].abs()));

    let mut total = 0.0;
    for i in 1..grid.len() {
        let (x0, x1) = (grid[i - 1], grid[i]);
        let Some((a0, a1)) = nonneg_part(x0, x1, above(i - 1), above(i)) else {
            continue;
        };
        let Some((b0, b1)) = nonneg_part(x0, x1, below(i - 1), below(i)) else {
            continue;
        };
        total += (a1.min(b1) - a0.max(b0)).max(0.0);
    }
    Ok(total.clamp(0.0, 1.0))
}

/// `true` iff `lo ≤ g ≤ hi` on all of `[0, 1]`.
///
/// All three are affine between merged breakpoints, so checking the grid
/// points is exact.
pub fn contained_everywhere(g: &PLFunction, lo: &PLFunction, hi: &PLFunction) -> Result<bool> {
    let grid = merge_grids(&[g, lo, hi]);
    let gv = g.sample_on(&grid);
    let lv = lo.sample_on(&grid);
    let hv = hi.sample_on(&grid);
    check_envelope(&grid, &lv, &hv)?;
    Ok((0..grid.len()).all(|i| {
        snap(gv[i] - lv[i], gv[i].abs().max(lv[i].abs())) >= 0.0
            && snap(hv[i] - gv[i], gv[i].abs().max(hv[i].abs())) >= 0.0
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pl(xs: &[f64], ys: &[f64]) -> PLFunction {
        PLFunction::new(xs.to_vec(), ys.to_vec()).unwrap()
    }

    #[test]
    fn eval_examples() {
        let f = PLFunction::affine(3.5, 1.5);
        assert_eq!(f.eval(0.75).unwrap(), 2.0);
        assert_eq!(PLFunction::constant(5.0).eval(0.3).unwrap(), 5.0);
        let tent = pl(&[0.0, 0.5, 1.0], &[0.0, 1.0, 0.0]);
        assert_eq!(tent.eval(0.25).unwrap(), 0.5);
        assert!(matches!(f.eval(1.5), Err(DepthError::Domain(_))));
        assert!(matches!(f.eval(-0.1), Err(DepthError::Domain(_))));
    }

    #[test]
    fn construction_rejects_bad_grids() {
        assert!(PLFunction::new(vec![0.0, 0.5], vec![1.0, 2.0]).is_err());
        assert!(PLFunction::new(vec![0.0, 0.5, 0.5, 1.0], vec![0.0; 4]).is_err());
        assert!(PLFunction::new(vec![0.0, 1.0], vec![f64::NAN, 0.0]).is_err());
        assert!(PLFunction::new(vec![0.0, 1.0], vec![1.0]).is_err());
    }

    #[test]
    fn canonical_form_drops_collinear_points() {
        let f = pl(&[0.0, 0.25, 0.5, 1.0], &[0.0, 0.25, 0.5, 1.0]);
        assert_eq!(f.breakpoints(), &[0.0, 1.0]);
        let g = pl(&[0.0, 0.5, 1.0], &[0.0, 1.0, 0.0]);
        assert_eq!(g.breakpoints().len(), 3);
    }

    #[test]
    fn envelopes_of_constants() {
        let fs = [PLFunction::constant(-1.0), PLFunction::constant(-4.0)];
        assert_eq!(min_envelope(&fs).unwrap(), PLFunction::constant(-4.0));
        assert_eq!(max_envelope(&fs).unwrap(), PLFunction::constant(-1.0));
        let single = [PLFunction::affine(1.0, 2.0)];
        assert_eq!(min_envelope(&single).unwrap(), single[0]);
        assert!(min_envelope(&[]).is_err());
    }

    #[test]
    fn envelope_inserts_crossing() {
        let fs = [PLFunction::affine(0.0, 1.0), PLFunction::affine(1.0, 0.0)];
        let m = min_envelope(&fs).unwrap();
        assert_eq!(m.breakpoints(), &[0.0, 0.5, 1.0]);
        assert_eq!(m.values(), &[0.0, 0.5, 0.0]);
        let mx = max_envelope(&fs).unwrap();
        assert_eq!(mx.values(), &[1.0, 0.5, 1.0]);
    }

    #[test]
    fn measure_examples() {
        let lo = PLFunction::constant(2.0);
        let hi = PLFunction::constant(5.0);
        let m = measure_between(&PLFunction::affine(3.5, 1.5), &lo, &hi).unwrap();
        assert!((m - 0.75).abs() <= 1e-12);

        let lo = PLFunction::constant(-4.0);
        let hi = PLFunction::constant(-1.0);
        let m = measure_between(&PLFunction::affine(-0.5, -1.5), &lo, &hi).unwrap();
        assert!((m - 0.5).abs() <= 1e-12);
        let m = measure_between(&PLFunction::constant(-0.5), &lo, &hi).unwrap();
        assert_eq!(m, 0.0);
    }

    #[test]
    fn measure_rejects_inverted_envelope() {
        let err = measure_between(
            &PLFunction::constant(0.0),
            &PLFunction::constant(1.0),
            &PLFunction::constant(0.0),
        );
        assert!(matches!(err, Err(DepthError::EnvelopeInverted { .. })));
    }

    #[test]
    fn containment_examples() {
        let lo = PLFunction::constant(-1.0);
        let hi = PLFunction::constant(1.0);
        assert!(contained_everywhere(&PLFunction::constant(0.0), &lo, &hi).unwrap());
        // n(1 - 2α) with n = 2 starts at 2 > 1.
        let g = PLFunction::affine(2.0, -2.0);
        assert!(!contained_everywhere(&g, &lo, &hi).unwrap());
        assert!(measure_between(&g, &lo, &hi).unwrap() < 1.0);
        let f = PLFunction::affine(0.3, -0.7);
        assert!(contained_everywhere(&f, &f, &f).unwrap());
        assert_eq!(measure_between(&f, &f, &f).unwrap(), 1.0);
    }

    #[test]
    fn abs_and_integral() {
        let f = PLFunction::affine(-1.0, 1.0);
        let a = f.abs();
        assert_eq!(a.breakpoints(), &[0.0, 0.5, 1.0]);
        assert!((f.integrate_abs_pow(1.0) - 0.5).abs() < 1e-15);
        // ∫ (2α-1)^2 = 1/3
        assert!((f.integrate_abs_pow(2.0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((PLFunction::constant(-3.0).integrate_abs_pow(1.0) - 3.0).abs() < 1e-15);
    }
}
