//! Simplicial, modified simplicial and naive simplicial depth for fuzzy
//! numbers, computed exactly on piecewise-linear support profiles.

pub mod datasets;
pub mod depth;
pub mod error;
pub mod fuzzy;
pub mod io;
pub mod pl;
pub mod pseudosimplex;
pub mod stochastics;
pub mod svg;
pub mod verify;

pub use depth::{
    containment_probability, empirical_depths, empirical_depths_with, median_trapezoid, pair_measure,
    population_depths, population_depths_oracle, rank_sample, rank_with_queries, sample_median, AtomPairs, CdfOracle,
    DepthEngine, DepthReport, Depths, DiscreteFuzzyRV, Functional, PairScheme, PopulationDepths, ReportRow, Role,
    SmoothedDiscreteOracle,
};
pub use error::{DepthError, Result};
pub use fuzzy::{distance, rr_leq, Direction, FuzzyNumber, Metric, Sample, Trapezoid};
pub use io::{DataError, Dataset, ReportFormat};
pub use pl::PLFunction;
pub use stochastics::{simulate_sample, simulate_trapezoids, SimConfig};
pub use svg::{render_report, render_svg, PlotOptions};
