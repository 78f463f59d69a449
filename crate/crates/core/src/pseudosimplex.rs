//! Pseudosimplices of compact intervals and of fuzzy numbers.
//!
//! A set belongs to the pseudosimplex spanned by some generators when, in
//! every direction, its support value lies between the smallest and the
//! largest support value of the generators. For fuzzy numbers the test runs
//! at every α-level, which on piecewise-linear profiles is a finite check.

use crate::error::{DepthError, Result};
use crate::fuzzy::{rr_leq, Direction, FuzzyNumber};
use crate::pl::{self, PLFunction};

/// Nonempty compact interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(DepthError::NonFinite);
        }
        if lo > hi {
            return Err(DepthError::OrderingViolation {
                a: lo,
                b: lo,
                c: hi,
                d: hi,
            });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(x: f64) -> Result<Self> {
        Self::new(x, x)
    }

    /// `s_K(u)`.
    pub fn support(&self, u: Direction) -> f64 {
        match u {
            Direction::Pos => self.hi,
            Direction::Neg => -self.lo,
        }
    }
}

/// Membership in the interval pseudosimplex `S_c[K_1, ..., K_m]`.
pub fn sc_contains(generators: &[Interval], candidate: &Interval) -> Result<bool> {
    if generators.is_empty() {
        return Err(DepthError::Domain("pseudosimplex needs at least one generator".into()));
    }
    Ok(Direction::BOTH.iter().all(|&u| {
        let s = candidate.support(u);
        let (mn, mx) = generators
            .iter()
            .map(|g| g.support(u))
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
        mn <= s && s <= mx
    }))
}

/// Lower and upper support envelopes of the generators in direction `u`.
pub fn envelopes(generators: &[FuzzyNumber], u: Direction) -> Result<(PLFunction, PLFunction)> {
    let profiles: Vec<PLFunction> = generators.iter().map(|g| g.profile(u).clone()).collect();
    Ok((pl::min_envelope(&profiles)?, pl::max_envelope(&profiles)?))
}

/// Membership in the fuzzy pseudosimplex `S_F[A_1, ..., A_m]`.
pub fn sf_contains(generators: &[FuzzyNumber], candidate: &FuzzyNumber) -> Result<bool> {
    if generators.is_empty() {
        return Err(DepthError::Domain("pseudosimplex needs at least one generator".into()));
    }
    for u in Direction::BOTH {
        let (lo, hi) = envelopes(generators, u)?;
        if !pl::contained_everywhere(candidate.profile(u), &lo, &hi)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Σ λ_i · A_i` for nonnegative weights summing to one.
pub fn convex_hull_member(generators: &[FuzzyNumber], weights: &[f64]) -> Result<FuzzyNumber> {
    if generators.is_empty() || generators.len() != weights.len() {
        return Err(DepthError::Weight(format!(
            "{} generators but {} weights",
            generators.len(),
            weights.len()
        )));
    }
    if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
        return Err(DepthError::Weight("negative or non-finite weight".into()));
    }
    let total: f64 = weights.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(DepthError::Weight(format!("weights sum to {total}")));
    }
    let mut upper = generators[0].upper().scale(weights[0]);
    let mut lower_neg = generators[0].lower_neg().scale(weights[0]);
    for (g, &w) in generators.iter().zip(weights).skip(1) {
        upper = upper.linear_combination(1.0, g.upper(), w);
        lower_neg = lower_neg.linear_combination(1.0, g.lower_neg(), w);
    }
    FuzzyNumber::from_profiles(upper, lower_neg)
}

/// Betweenness `A1 ⪯ A ⪯ A2` in the Ramík–Římanek order. Requires
/// `A1 ⪯ A2`; for such pairs it coincides with `S_F[A1, A2]` membership.
pub fn between(first: &FuzzyNumber, candidate: &FuzzyNumber, second: &FuzzyNumber) -> Result<bool> {
    if !rr_leq(first, second) {
        return Err(DepthError::NotOrdered);
    }
    Ok(rr_leq(first, candidate) && rr_leq(candidate, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::Trapezoid;

    fn iv(lo: f64, hi: f64) -> Interval {
        Interval::new(lo, hi).unwrap()
    }

    fn fi(lo: f64, hi: f64) -> FuzzyNumber {
        FuzzyNumber::interval(lo, hi).unwrap()
    }

    fn pt(x: f64) -> FuzzyNumber {
        FuzzyNumber::singleton(x).unwrap()
    }

    #[test]
    fn interval_pseudosimplex() {
        let gens = [iv(0.0, 1.0), iv(3.0, 4.0)];
        assert!(sc_contains(&gens, &Interval::point(2.0).unwrap()).unwrap());
        assert!(sc_contains(&gens, &iv(0.0, 4.0)).unwrap());
        assert!(!sc_contains(&gens, &iv(-1.0, 4.0)).unwrap());
        // {[x, y] : x ∈ [0, 3], y ∈ [1, 4]}
        for &(x, y, inside) in &[(3.0, 3.0, true), (0.0, 1.0, true), (3.1, 4.0, false), (1.0, 4.1, false)] {
            assert_eq!(sc_contains(&gens, &iv(x, y)).unwrap(), inside);
        }
        let k = iv(1.0, 2.0);
        assert!(sc_contains(&[k], &k).unwrap());
        assert!(!sc_contains(&[k], &iv(1.0, 1.5)).unwrap());
        assert!(sc_contains(&[], &k).is_err());
    }

    #[test]
    fn fuzzy_pseudosimplex() {
        let gens = [pt(0.0), pt(3.0)];
        assert!(sf_contains(&gens, &fi(1.0, 2.0)).unwrap());
        assert!(sf_contains(&gens, &pt(1.5)).unwrap());
        assert!(!sf_contains(&gens, &pt(3.5)).unwrap());
        for g in &gens {
            assert!(sf_contains(&gens, g).unwrap());
        }
        let t = Trapezoid::new(0.0, 1.0, 2.0, 4.0).unwrap().to_fuzzy();
        assert!(sf_contains(&[t.clone(), pt(9.0)], &t).unwrap());
    }

    #[test]
    fn convex_combinations_of_interval_pair() {
        let gens = [fi(0.0, 1.0), fi(3.0, 4.0)];
        assert_eq!(convex_hull_member(&gens, &[1.0, 0.0]).unwrap(), gens[0]);
        for k in 0..=8 {
            let lambda = k as f64 / 8.0;
            let m = convex_hull_member(&gens, &[1.0 - lambda, lambda]).unwrap();
            let t = m.to_trapezoid().unwrap();
            assert_eq!(t, Trapezoid::interval(3.0 * lambda, 1.0 + 3.0 * lambda).unwrap());
            assert!(sf_contains(&gens, &m).unwrap());
        }
        // {2} lies in the pseudosimplex but is no convex combination.
        assert!(sf_contains(&gens, &pt(2.0)).unwrap());
        assert!(convex_hull_member(&gens, &[0.5, 0.6]).is_err());
        assert!(convex_hull_member(&gens, &[1.5, -0.5]).is_err());
        assert!(convex_hull_member(&gens, &[1.0]).is_err());
    }

    #[test]
    fn betweenness() {
        let a1 = fi(0.0, 1.0);
        let a2 = fi(3.0, 4.0);
        assert!(between(&a1, &pt(2.0), &a2).unwrap());
        assert!(between(&a1, &a1, &a1).unwrap());
        let left = fi(-1.0, 0.0);
        assert!(!between(&a1, &left, &a2).unwrap());
        assert!(!sf_contains(&[a1.clone(), a2.clone()], &left).unwrap());
        assert_eq!(between(&a2, &pt(2.0), &a1), Err(DepthError::NotOrdered));
    }
}
