//! Population-depth properties on continuous surrogates: a symmetric
//! discrete variable blurred by Gaussian noise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fuzzydepth::{
    population_depths, population_depths_oracle, AtomPairs, DiscreteFuzzyRV, FuzzyNumber, SmoothedDiscreteOracle,
    Trapezoid,
};

const NODES: usize = 256;

fn tra(c: [f64; 4]) -> FuzzyNumber {
    Trapezoid::new(c[0], c[1], c[2], c[3]).unwrap().to_fuzzy()
}

/// Center `Tra(0, 2, 4, 6)` and atoms mirrored around it.
fn symmetric_oracle(rng: &mut ChaCha8Rng) -> (FuzzyNumber, Vec<FuzzyNumber>, SmoothedDiscreteOracle) {
    let center = [0.0, 2.0, 4.0, 6.0];
    let k = rng.gen_range(1..=4);
    let mut atoms = Vec::new();
    for _ in 0..k {
        let e: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-0.9..0.9));
        atoms.push(tra(std::array::from_fn(|i| center[i] + e[i])));
        atoms.push(tra(std::array::from_fn(|i| center[i] - e[i])));
    }
    let rv = DiscreteFuzzyRV::uniform(atoms.clone()).unwrap();
    let sd = rng.gen_range(0.2..1.0);
    (tra(center), atoms, SmoothedDiscreteOracle::new(rv, sd).unwrap())
}

#[test]
fn center_is_deepest() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..20 {
        let (center, atoms, oracle) = symmetric_oracle(&mut rng);
        let c = population_depths_oracle(&oracle, &center, NODES).unwrap();
        for a in &atoms {
            let d = population_depths_oracle(&oracle, a, NODES).unwrap();
            assert!(d.modified <= c.modified + 1e-12);
            assert!(d.simplicial <= c.simplicial + 1e-12);
        }
    }
}

#[test]
fn depth_decreases_along_rays_from_the_center() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let (center, _, oracle) = symmetric_oracle(&mut rng);
        let b = tra({
            let x = rng.gen_range(-8.0..8.0);
            let w: [f64; 3] = std::array::from_fn(|_| rng.gen_range(0.0..3.0));
            [x, x + w[0], x + w[0] + w[1], x + w[0] + w[1] + w[2]]
        });
        let mut prev = f64::INFINITY;
        for k in 0..=10 {
            let lam = k as f64 / 10.0;
            let q = center.convex_combination(lam, &b).unwrap();
            let d = population_depths_oracle(&oracle, &q, NODES).unwrap().modified;
            assert!(d <= prev + 1e-9, "lambda {lam}: {d} > {prev}");
            prev = d;
        }
    }
}

#[test]
fn depth_vanishes_for_profiles_nonzero_almost_everywhere() {
    let rv = DiscreteFuzzyRV::uniform(vec![
        FuzzyNumber::singleton(1.0).unwrap(),
        FuzzyNumber::singleton(-1.0).unwrap(),
    ])
    .unwrap();
    let oracle = SmoothedDiscreteOracle::new(rv.clone(), 0.5).unwrap();
    let a = FuzzyNumber::singleton(0.0).unwrap();
    let b = tra([-1.0, -0.5, 0.5, 1.0]);
    let mut prev = f64::INFINITY;
    for n in [1.0, 10.0, 100.0, 1000.0] {
        let q = a.add(&b.scale(n).unwrap());
        let d = population_depths_oracle(&oracle, &q, NODES).unwrap().simplicial;
        assert!(d < prev || (d == 0.0 && prev == 0.0), "n = {n}: {d} not below {prev}");
        prev = d;
        let exact = population_depths(&rv, &q, AtomPairs::Iid).unwrap().simplicial;
        if n >= 10.0 {
            assert_eq!(exact, 0.0);
        }
    }
    assert!(prev < 1e-6);
}

#[test]
fn oracle_population_depth_needs_enough_nodes() {
    let rv = DiscreteFuzzyRV::uniform(vec![FuzzyNumber::singleton(0.0).unwrap()]).unwrap();
    let oracle = SmoothedDiscreteOracle::new(rv, 1.0).unwrap();
    assert!(population_depths_oracle(&oracle, &FuzzyNumber::singleton(0.0).unwrap(), 8).is_err());
}
