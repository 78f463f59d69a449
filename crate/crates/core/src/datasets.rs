//! Small built-in datasets.

use crate::error::Result;
use crate::fuzzy::{FuzzyNumber, Sample, Trapezoid};

/// Frequencies of the nine distinct tree-quality assessments.
pub const CHAIN_COUNTS: [usize; 9] = [22, 16, 39, 36, 85, 22, 35, 12, 12];

/// Synthetic stand-in for the nine tree-quality trapezoids, on the 1 to 5
/// quality scale.
///
/// The items form a chain in the Ramík–Římanek order: level infima and
/// suprema increase from `T1` to `T9` at every α, strictly except that `T4`
/// and `T5` share their left 0-level endpoint and `T5` and `T6` share their
/// right 0-level endpoint.
pub fn synthetic_chain_trapezoids() -> [Trapezoid; 9] {
    let raw = [
        (1.0, 1.2, 1.5, 2.0),
        (1.2, 1.5, 1.8, 2.3),
        (1.5, 1.8, 2.2, 2.6),
        (1.8, 2.2, 2.6, 3.0),
        (1.8, 2.5, 2.9, 3.3),
        (2.2, 2.8, 3.2, 3.3),
        (2.6, 3.2, 3.6, 4.0),
        (3.0, 3.6, 4.0, 4.5),
        (3.5, 4.0, 4.5, 5.0),
    ];
    raw.map(|(a, b, c, d)| Trapezoid { a, b, c, d })
}

/// The synthetic chain with [`CHAIN_COUNTS`] multiplicities (n = 279).
pub fn synthetic_chain() -> Result<Sample> {
    let items = synthetic_chain_trapezoids().iter().map(Trapezoid::to_fuzzy).collect();
    let labels = (1..=9).map(|i| Some(format!("T{i}"))).collect();
    Sample::with_labels(items, CHAIN_COUNTS.to_vec(), labels)
}

/// Two crisp intervals `[1, 2]` and `[4, 5]`.
pub fn two_interval_sample() -> Result<Sample> {
    Sample::new(vec![FuzzyNumber::interval(1.0, 2.0)?, FuzzyNumber::interval(4.0, 5.0)?])
}

/// Query pairs `(R, G)` against [`two_interval_sample`]: the first pair has
/// equal modified depth and different simplicial depth, the second the
/// reverse.
pub fn two_interval_queries() -> Result<[(&'static str, Trapezoid); 4]> {
    Ok([
        ("R1", Trapezoid::new(0.5, 1.5, 1.5, 3.5)?),
        ("G1", Trapezoid::new(23.0 / 6.0, 4.5, 4.5, 4.5)?),
        ("R2", Trapezoid::new(0.5, 0.5, 0.5, 2.5)?),
        ("G2", Trapezoid::new(2.0, 6.0, 6.0, 6.0)?),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::rr_leq;

    #[test]
    fn chain_is_ordered() {
        let ts = synthetic_chain_trapezoids();
        for w in ts.windows(2) {
            assert!(rr_leq(&w[0].to_fuzzy(), &w[1].to_fuzzy()));
            assert!(!rr_leq(&w[1].to_fuzzy(), &w[0].to_fuzzy()));
            Trapezoid::new(w[0].a, w[0].b, w[0].c, w[0].d).unwrap();
        }
        assert_eq!(ts[3].a, ts[4].a);
        assert_eq!(ts[4].d, ts[5].d);
        assert_eq!(synthetic_chain().unwrap().expanded_len(), 279);
    }
}
