//! Univariate fuzzy numbers stored through their support functions.
//!
//! For a fuzzy number `A` on the real line the α-level `A_α` is a closed
//! interval `[inf A_α, sup A_α]`, and the support function in the two unit
//! directions is `s_A(+1, α) = sup A_α` and `s_A(-1, α) = -inf A_α`. Both are
//! kept as [`PLFunction`]s, which makes Minkowski arithmetic exact.

use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result};
use crate::pl::{self, PLFunction};

/// Unit direction on the real line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// `u = -1`, reads the negated infimum of each level.
    Neg,
    /// `u = +1`, reads the supremum of each level.
    Pos,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::Neg, Direction::Pos];

    pub fn sign(self) -> f64 {
        match self {
            Direction::Neg => -1.0,
            Direction::Pos => 1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Direction::Neg => Direction::Pos,
            Direction::Pos => Direction::Neg,
        }
    }

    pub fn from_sign(u: i32) -> Result<Self> {
        match u {
            1 => Ok(Direction::Pos),
            -1 => Ok(Direction::Neg),
            _ => Err(DepthError::Domain(format!("direction must be -1 or +1, got {u}"))),
        }
    }
}

/// Trapezoidal fuzzy number `Tra(a, b, c, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trapezoid {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Trapezoid {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(DepthError::NonFinite);
        }
        if !(a <= b && b <= c && c <= d) {
            return Err(DepthError::OrderingViolation { a, b, c, d });
        }
        Ok(Trapezoid { a, b, c, d })
    }

    /// Crisp interval `[lo, hi]`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, lo, hi, hi)
    }

    /// Crisp singleton `{x}`.
    pub fn singleton(x: f64) -> Result<Self> {
        Self::new(x, x, x, x)
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn to_fuzzy(&self) -> FuzzyNumber {
        FuzzyNumber {
            upper: PLFunction::affine(self.d, self.c),
            lower_neg: PLFunction::affine(-self.a, -self.b),
        }
    }
}

impl From<Trapezoid> for FuzzyNumber {
    fn from(t: Trapezoid) -> Self {
        t.to_fuzzy()
    }
}

/// Fuzzy number with compact convex α-levels, held as its two support
/// profiles.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FuzzyNumber {
    upper: PLFunction,
    lower_neg: PLFunction,
}

impl FuzzyNumber {
    /// Builds from `α ↦ sup A_α` and `α ↦ -inf A_α`.
    ///
    /// Both profiles must be non-increasing (nested levels) and every level
    /// must be nonempty.
    pub fn from_profiles(upper: PLFunction, lower_neg: PLFunction) -> Result<Self> {
        if !upper.is_non_increasing() || !lower_neg.is_non_increasing() {
            return Err(DepthError::InvalidProfile(
                "support profiles must be non-increasing in alpha".into(),
            ));
        }
        if !lower_neg.negate().le_everywhere(&upper) {
            return Err(DepthError::InvalidProfile("empty alpha-level".into()));
        }
        Ok(FuzzyNumber { upper, lower_neg })
    }

    pub fn singleton(x: f64) -> Result<Self> {
        Ok(Trapezoid::singleton(x)?.to_fuzzy())
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        Ok(Trapezoid::interval(lo, hi)?.to_fuzzy())
    }

    pub fn upper(&self) -> &PLFunction {
        &self.upper
    }

    pub fn lower_neg(&self) -> &PLFunction {
        &self.lower_neg
    }

    /// Support profile `α ↦ s_A(u, α)`.
    pub fn profile(&self, u: Direction) -> &PLFunction {
        match u {
            Direction::Pos => &self.upper,
            Direction::Neg => &self.lower_neg,
        }
    }

    /// `s_A(u, α)`.
    pub fn support(&self, u: Direction, alpha: f64) -> Result<f64> {
        self.profile(u).eval(alpha)
    }

    /// The α-level as `(inf, sup)`.
    pub fn level(&self, alpha: f64) -> Result<(f64, f64)> {
        Ok((-self.lower_neg.eval(alpha)?, self.upper.eval(alpha)?))
    }

    /// Minkowski sum.
    pub fn add(&self, other: &FuzzyNumber) -> FuzzyNumber {
        FuzzyNumber {
            upper: self.upper.add(&other.upper),
            lower_neg: self.lower_neg.add(&other.lower_neg),
        }
    }

    /// Scalar multiple `γ·A`. Negative factors mirror the set, which swaps
    /// the two directions: `s_{γA}(u, α) = |γ| s_A(sign(γ) u, α)`.
    pub fn scale(&self, gamma: f64) -> Result<FuzzyNumber> {
        if !gamma.is_finite() {
            return Err(DepthError::NonFinite);
        }
        let g = gamma.abs();
        Ok(if gamma >= 0.0 {
            FuzzyNumber {
                upper: self.upper.scale(g),
                lower_neg: self.lower_neg.scale(g),
            }
        } else {
            FuzzyNumber {
                upper: self.lower_neg.scale(g),
                lower_neg: self.upper.scale(g),
            }
        })
    }

    /// `γ·A + B`.
    pub fn affine_map(&self, gamma: f64, shift: &FuzzyNumber) -> Result<FuzzyNumber> {
        Ok(self.scale(gamma)?.add(shift))
    }

    /// `(1 - λ)·A + λ·B`.
    pub fn convex_combination(&self, lambda: f64, other: &FuzzyNumber) -> Result<FuzzyNumber> {
        if !(0.0..=1.0).contains(&lambda) {
            return Err(DepthError::Domain(format!("lambda = {lambda} outside [0, 1]")));
        }
        Ok(FuzzyNumber {
            upper: self.upper.linear_combination(1.0 - lambda, &other.upper, lambda),
            lower_neg: self
                .lower_neg
                .linear_combination(1.0 - lambda, &other.lower_neg, lambda),
        })
    }

    /// Recovers `Tra(a, b, c, d)` when both profiles are affine.
    pub fn to_trapezoid(&self) -> Option<Trapezoid> {
        if !(self.upper.is_affine() && self.lower_neg.is_affine()) {
            return None;
        }
        let (ln, up) = (self.lower_neg.values(), self.upper.values());
        Some(Trapezoid {
            a: -ln[0],
            b: -ln[1],
            c: up[1],
            d: up[0],
        })
    }

    /// Merged breakpoint grid of both profiles.
    pub fn alpha_grid(&self) -> Vec<f64> {
        let mut xs: Vec<f64> = self
            .upper
            .breakpoints()
            .iter()
            .chain(self.lower_neg.breakpoints())
            .copied()
            .collect();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        xs
    }

    /// Vertices of the membership polygon as `(x, membership)` pairs, running
    /// up the left side and down the right side.
    pub fn membership_polygon(&self) -> Vec<(f64, f64)> {
        let grid = self.alpha_grid();
        let mut pts: Vec<(f64, f64)> = grid.iter().map(|&a| (-self.lower_neg.eval_unchecked(a), a)).collect();
        pts.extend(grid.iter().rev().map(|&a| (self.upper.eval_unchecked(a), a)));
        pts
    }

    pub fn approx_eq(&self, other: &FuzzyNumber, tol: f64) -> bool {
        self.upper.approx_eq(&other.upper, tol) && self.lower_neg.approx_eq(&other.lower_neg, tol)
    }
}

/// Ramík–Římanek order: `A ⪯ B` iff both level endpoints of `A` are at most
/// those of `B` at every α.
pub fn rr_leq(a: &FuzzyNumber, b: &FuzzyNumber) -> bool {
    // inf A_α ≤ inf B_α  ⇔  -lower_neg_A ≤ -lower_neg_B  ⇔  lower_neg_B ≤ lower_neg_A
    b.lower_neg.le_everywhere(&a.lower_neg) && a.upper.le_everywhere(&b.upper)
}

/// Metrics between fuzzy numbers.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Metric {
    /// `(∫ d_H(A_α, B_α)^r dα)^{1/r}`
    Dr(f64),
    /// `sup_α d_H(A_α, B_α)`
    DInf,
    /// `(∫ ½ Σ_u |s_A(u,α) - s_B(u,α)|^r dα)^{1/r}`
    Rho(f64),
}

/// Distance between two fuzzy numbers under `metric`.
pub fn distance(a: &FuzzyNumber, b: &FuzzyNumber, metric: Metric) -> Result<f64> {
    let du = a.upper.sub(&b.upper).abs();
    let dl = a.lower_neg.sub(&b.lower_neg).abs();
    match metric {
        Metric::DInf => Ok(du.max_value().max(dl.max_value())),
        Metric::Dr(r) => {
            check_order(r)?;
            let hausdorff = pl::max_envelope(&[du, dl])?;
            Ok(hausdorff.integrate_abs_pow(r).powf(1.0 / r))
        }
        Metric::Rho(r) => {
            check_order(r)?;
            let mean = 0.5 * (du.integrate_abs_pow(r) + dl.integrate_abs_pow(r));
            Ok(mean.powf(1.0 / r))
        }
    }
}

fn check_order(r: f64) -> Result<()> {
    if r.is_nan() || r < 1.0 {
        return Err(DepthError::Domain(format!("metric order r = {r} must be >= 1")));
    }
    if !r.is_finite() {
        return Err(DepthError::Domain("use Metric::DInf for r = infinity".into()));
    }
    Ok(())
}

/// Observed fuzzy data: distinct items with positive multiplicities.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    items: Vec<FuzzyNumber>,
    counts: Vec<usize>,
    labels: Vec<Option<String>>,
}

impl Sample {
    pub fn new(items: Vec<FuzzyNumber>) -> Result<Self> {
        let counts = vec![1; items.len()];
        Self::with_counts(items, counts)
    }

    pub fn with_counts(items: Vec<FuzzyNumber>, counts: Vec<usize>) -> Result<Self> {
        let labels = vec![None; items.len()];
        Self::with_labels(items, counts, labels)
    }

    pub fn with_labels(items: Vec<FuzzyNumber>, counts: Vec<usize>, labels: Vec<Option<String>>) -> Result<Self> {
        if items.is_empty() {
            return Err(DepthError::EmptySample);
        }
        if counts.len() != items.len() || labels.len() != items.len() {
            return Err(DepthError::Config(
                "items, counts and labels must have equal length".into(),
            ));
        }
        if counts.contains(&0) {
            return Err(DepthError::Config("multiplicities must be positive".into()));
        }
        Ok(Sample { items, counts, labels })
    }

    pub fn from_trapezoids(ts: &[Trapezoid]) -> Result<Self> {
        Self::new(ts.iter().map(Trapezoid::to_fuzzy).collect())
    }

    pub fn items(&self) -> &[FuzzyNumber] {
        &self.items
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// Number of distinct rows.
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Total size with multiplicities expanded.
    pub fn expanded_len(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Every observation repeated by its multiplicity.
    pub fn expanded(&self) -> Vec<FuzzyNumber> {
        self.items
            .iter()
            .zip(&self.counts)
            .flat_map(|(x, &c)| std::iter::repeat_n(x.clone(), c))
            .collect()
    }

    /// Trapezoid coordinates of every distinct item, if all are trapezoidal.
    pub fn trapezoids(&self) -> Result<Vec<Trapezoid>> {
        self.items
            .iter()
            .enumerate()
            .map(|(i, x)| x.to_trapezoid().ok_or(DepthError::NotTrapezoidal(i)))
            .collect()
    }

    /// Applies `x ↦ γ·x + shift` to every item.
    pub fn affine_map(&self, gamma: f64, shift: &FuzzyNumber) -> Result<Sample> {
        let items = self
            .items
            .iter()
            .map(|x| x.affine_map(gamma, shift))
            .collect::<Result<Vec<_>>>()?;
        Ok(Sample {
            items,
            counts: self.counts.clone(),
            labels: self.labels.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tra(a: f64, b: f64, c: f64, d: f64) -> FuzzyNumber {
        Trapezoid::new(a, b, c, d).unwrap().to_fuzzy()
    }

    #[test]
    fn trapezoid_construction() {
        let t = tra(1.0, 1.0, 2.0, 2.0);
        assert_eq!(t.upper(), &PLFunction::constant(2.0));
        assert_eq!(t.lower_neg(), &PLFunction::constant(-1.0));
        let z = tra(0.0, 0.0, 0.0, 0.0);
        assert_eq!(z.support(Direction::Pos, 0.4).unwrap(), 0.0);
        assert_eq!(z.support(Direction::Neg, 0.4).unwrap(), 0.0);
        assert!(matches!(
            Trapezoid::new(2.0, 1.0, 3.0, 4.0),
            Err(DepthError::OrderingViolation { .. })
        ));
        assert_eq!(Trapezoid::new(f64::NAN, 1.0, 3.0, 4.0), Err(DepthError::NonFinite));
        assert_eq!(Trapezoid::new(0.0, 1.0, 3.0, f64::INFINITY), Err(DepthError::NonFinite));
    }

    #[test]
    fn support_values() {
        let r = tra(0.5, 1.5, 1.5, 3.5);
        assert_eq!(r.support(Direction::Pos, 0.0).unwrap(), 3.5);
        assert_eq!(r.support(Direction::Neg, 1.0).unwrap(), -1.5);
        assert!(matches!(r.support(Direction::Pos, 1.01), Err(DepthError::Domain(_))));
        for k in 0..=10 {
            let a = k as f64 / 10.0;
            assert!(r.support(Direction::Pos, a).unwrap() >= -r.support(Direction::Neg, a).unwrap());
        }
    }

    #[test]
    fn arithmetic_examples() {
        let s = tra(0.0, 0.0, 1.0, 1.0).add(&tra(3.0, 3.0, 4.0, 4.0));
        assert_eq!(s.to_trapezoid().unwrap(), Trapezoid::new(3.0, 3.0, 5.0, 5.0).unwrap());

        let z = tra(1.0, 2.0, 5.0, 9.0).scale(0.0).unwrap();
        assert!(z.approx_eq(&FuzzyNumber::singleton(0.0).unwrap(), 0.0));

        let two = tra(0.0, 1.0, 1.0, 2.0).scale(2.0).unwrap();
        assert_eq!(two.to_trapezoid().unwrap(), Trapezoid::new(0.0, 2.0, 2.0, 4.0).unwrap());

        let neg = tra(0.0, 1.0, 2.0, 4.0).scale(-1.0).unwrap();
        assert_eq!(
            neg.to_trapezoid().unwrap(),
            Trapezoid::new(-4.0, -2.0, -1.0, 0.0).unwrap()
        );
        assert_eq!(tra(0.0, 1.0, 1.0, 2.0).scale(f64::NAN), Err(DepthError::NonFinite));
    }

    /// Brute-force extension principle on each α-level: the image of the
    /// interval [lo, hi] under x ↦ 2x is [2lo, 2hi].
    #[test]
    fn scale_matches_levelwise_image() {
        let a = tra(0.0, 1.0, 1.0, 2.0);
        let s = a.scale(2.0).unwrap();
        for k in 0..=100 {
            let alpha = k as f64 / 100.0;
            let (lo, hi) = a.level(alpha).unwrap();
            let img: Vec<f64> = (0..=50).map(|j| 2.0 * (lo + (hi - lo) * j as f64 / 50.0)).collect();
            let (slo, shi) = s.level(alpha).unwrap();
            let mn = img.iter().copied().fold(f64::INFINITY, f64::min);
            let mx = img.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            assert!((slo - mn).abs() < 1e-12 && (shi - mx).abs() < 1e-12);
        }
    }

    #[test]
    fn convex_combination_examples() {
        let a = tra(0.0, 1.0, 2.0, 3.0);
        let b = tra(5.0, 6.0, 6.0, 8.0);
        assert_eq!(a.convex_combination(0.0, &b).unwrap(), a);
        assert_eq!(a.convex_combination(1.0, &b).unwrap(), b);
        let m = FuzzyNumber::singleton(0.0)
            .unwrap()
            .convex_combination(0.5, &FuzzyNumber::singleton(2.0).unwrap())
            .unwrap();
        assert_eq!(m.to_trapezoid().unwrap(), Trapezoid::singleton(1.0).unwrap());
        assert!(a.convex_combination(1.5, &b).is_err());
    }

    #[test]
    fn distance_examples() {
        let z = FuzzyNumber::singleton(0.0).unwrap();
        let t = FuzzyNumber::singleton(3.0).unwrap();
        assert_eq!(distance(&z, &t, Metric::DInf).unwrap(), 3.0);
        assert_eq!(distance(&z, &t, Metric::Rho(1.0)).unwrap(), 3.0);
        let a = tra(0.0, 1.0, 2.0, 5.0);
        assert_eq!(distance(&a, &a, Metric::Dr(1.0)).unwrap(), 0.0);
        assert!(distance(&a, &z, Metric::Dr(0.5)).is_err());
    }

    /// ρ₁ against a midpoint-rule quadrature of the same integrand.
    #[test]
    fn rho_matches_quadrature() {
        let a = tra(-1.0, 0.5, 2.0, 6.0);
        let b = tra(0.0, 0.0, 3.0, 3.5);
        let n = 200_000;
        let mut acc = 0.0;
        for k in 0..n {
            let al = (k as f64 + 0.5) / n as f64;
            for u in Direction::BOTH {
                acc += 0.5 * (a.support(u, al).unwrap() - b.support(u, al).unwrap()).abs();
            }
        }
        let quad = acc / n as f64;
        assert!((distance(&a, &b, Metric::Rho(1.0)).unwrap() - quad).abs() < 1e-8);
    }

    #[test]
    fn rr_order_examples() {
        let a = FuzzyNumber::interval(0.0, 1.0).unwrap();
        let b = FuzzyNumber::interval(3.0, 4.0).unwrap();
        assert!(rr_leq(&a, &b));
        assert!(!rr_leq(&b, &a));
        assert!(rr_leq(&a, &a));
        let wide = FuzzyNumber::interval(0.0, 3.0).unwrap();
        let narrow = FuzzyNumber::interval(1.0, 2.0).unwrap();
        assert!(!rr_leq(&wide, &narrow));
        assert!(!rr_leq(&narrow, &wide));
    }

    #[test]
    fn profiles_validation() {
        let up = PLFunction::affine(1.0, 2.0);
        assert!(FuzzyNumber::from_profiles(up, PLFunction::constant(0.0)).is_err());
        // level [1, 0] is empty
        assert!(FuzzyNumber::from_profiles(PLFunction::constant(0.0), PLFunction::constant(-1.0)).is_err());
    }

    #[test]
    fn membership_polygon_of_trapezoid() {
        let p = tra(0.0, 1.0, 2.0, 4.0).membership_polygon();
        assert_eq!(p, vec![(0.0, 0.0), (1.0, 1.0), (2.0, 1.0), (4.0, 0.0)]);
    }

    #[test]
    fn sample_expansion() {
        let s = Sample::with_counts(vec![tra(0.0, 0.0, 1.0, 1.0), tra(2.0, 2.0, 3.0, 3.0)], vec![2, 3]).unwrap();
        assert_eq!(s.expanded_len(), 5);
        assert_eq!(s.expanded().len(), 5);
        assert!(Sample::new(vec![]).is_err());
        assert!(Sample::with_counts(vec![tra(0.0, 0.0, 1.0, 1.0)], vec![0]).is_err());
    }
}
