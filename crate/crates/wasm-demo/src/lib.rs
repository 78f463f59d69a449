//! Browser bindings. Each export returns an SVG or JSON string; the plain
//! `*_impl` functions carry the logic so they can be tested natively.

use serde_json::json;
use wasm_bindgen::prelude::*;

use fuzzydepth::{
    datasets, empirical_depths, rank_sample, render_report, DepthEngine, Functional, PairScheme, PlotOptions, Sample,
    SimConfig, Trapezoid,
};

fn functional(name: &str) -> Result<Functional, String> {
    name.parse::<Functional>().map_err(|e| e.to_string())
}

fn reference(name: &str) -> Result<Sample, String> {
    match name {
        "two-interval" => datasets::two_interval_sample(),
        "chain" => datasets::synthetic_chain(),
        other => return Err(format!("unknown reference sample `{other}`")),
    }
    .map_err(|e| e.to_string())
}

#[allow(clippy::too_many_arguments)]
pub fn simulate_plot_impl(
    n: usize,
    seed: u64,
    sigma: f64,
    dof: u32,
    functional_name: &str,
    top: usize,
    bottom: usize,
    median: bool,
) -> Result<String, String> {
    let cfg = SimConfig { n, seed, sigma, dof };
    let sample = fuzzydepth::simulate_sample(&cfg).map_err(|e| e.to_string())?;
    let report = rank_sample(&sample, PairScheme::Strict).map_err(|e| e.to_string())?;
    let f = functional(functional_name)?;
    let opts = PlotOptions {
        top_k: top,
        bottom_k: bottom,
        highlight_median: median,
        functional: f,
        title: Some(format!("n = {n}, seed = {seed}, coloured by {}", f.name())),
        ..PlotOptions::default()
    };
    render_report(&sample, &report, &opts).map_err(|e| e.to_string())
}

pub fn query_depth_impl(a: f64, b: f64, c: f64, d: f64, sample_name: &str) -> Result<String, String> {
    let q = Trapezoid::new(a, b, c, d).map_err(|e| e.to_string())?;
    let sample = reference(sample_name)?;
    let engine = DepthEngine::new(&sample, PairScheme::Strict).map_err(|e| e.to_string())?;
    let dq = engine.depths(&q.to_fuzzy()).map_err(|e| e.to_string())?;
    let items: Vec<_> = sample
        .items()
        .iter()
        .zip(sample.labels())
        .map(|(x, l)| -> Result<_, String> {
            let dx = engine.depths(x).map_err(|e| e.to_string())?;
            Ok(json!({ "label": l, "d_nS": dx.naive, "d_mS": dx.modified, "d_FS": dx.simplicial }))
        })
        .collect::<Result<_, _>>()?;
    Ok(json!({
        "query": [a, b, c, d],
        "d_nS": dq.naive,
        "d_mS": dq.modified,
        "d_FS": dq.simplicial,
        "sample": items,
    })
    .to_string())
}

pub fn worked_example_impl() -> Result<String, String> {
    let sample = datasets::two_interval_sample().map_err(|e| e.to_string())?;
    let rows: Vec<_> = datasets::two_interval_queries()
        .map_err(|e| e.to_string())?
        .iter()
        .map(|(label, t)| -> Result<_, String> {
            let d = empirical_depths(&sample, &t.to_fuzzy()).map_err(|e| e.to_string())?;
            Ok(json!({
                "label": label,
                "trapezoid": t.coords(),
                "d_nS": d.naive,
                "d_mS": d.modified,
                "d_FS": d.simplicial,
            }))
        })
        .collect::<Result<_, _>>()?;
    Ok(serde_json::Value::Array(rows).to_string())
}

/// Simulated sample plotted with its deepest (and optionally shallowest)
/// members highlighted.
#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn simulate_plot(
    n: usize,
    seed: u64,
    sigma: f64,
    dof: u32,
    functional: &str,
    top: usize,
    bottom: usize,
    median: bool,
) -> Result<String, JsValue> {
    simulate_plot_impl(n, seed, sigma, dof, functional, top, bottom, median).map_err(|e| JsValue::from_str(&e))
}

/// Depths of `Tra(a, b, c, d)` against a built-in sample (`two-interval` or
/// `chain`), as JSON.
#[wasm_bindgen]
pub fn query_depth(a: f64, b: f64, c: f64, d: f64, sample: &str) -> Result<String, JsValue> {
    query_depth_impl(a, b, c, d, sample).map_err(|e| JsValue::from_str(&e))
}

/// The four two-interval query numbers with their depths, as JSON.
#[wasm_bindgen]
pub fn worked_example() -> Result<String, JsValue> {
    worked_example_impl().map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plot_is_svg() {
        let svg = simulate_plot_impl(30, 4, 10.0, 1, "simplicial", 3, 2, true).unwrap();
        assert!(svg.contains("<svg") && svg.ends_with("</svg>\n"));
        assert!(svg.contains(r#"id="median""#));
        assert!(simulate_plot_impl(1, 4, 10.0, 1, "modified", 3, 0, false).is_err());
        assert!(simulate_plot_impl(30, 4, 10.0, 1, "tukey", 3, 0, false).is_err());
    }

    #[test]
    fn query_depth_json() {
        let v: serde_json::Value =
            serde_json::from_str(&query_depth_impl(0.5, 1.5, 1.5, 3.5, "two-interval").unwrap()).unwrap();
        assert_eq!(v["d_mS"], 0.625);
        assert_eq!(v["d_FS"], 0.5);
        assert_eq!(v["sample"].as_array().unwrap().len(), 2);
        assert!(query_depth_impl(2.0, 1.0, 3.0, 4.0, "chain").is_err());
        assert!(query_depth_impl(1.0, 2.0, 3.0, 4.0, "trees").is_err());
    }

    #[test]
    fn worked_example_rows() {
        let v: serde_json::Value = serde_json::from_str(&worked_example_impl().unwrap()).unwrap();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[3]["label"], "G2");
        assert_eq!(rows[3]["d_mS"], 0.25);
    }
}
