//! Deterministic SVG plots of depth-coloured fuzzy samples.
//!
//! Each fuzzy number is drawn as its membership polygon: data axis
//! horizontally, membership from 0 to 1 vertically. All items go down in grey
//! first; the deepest items are painted on a red to yellow ramp and the least
//! deep on an aquamarine to violet ramp. Colours come from the fixed tables
//! [`TOP_RAMP`] and [`BOTTOM_RAMP`], and coordinates are printed with three
//! decimals, so identical inputs give byte-identical documents.

use std::fmt::Write;

use crate::depth::{DepthReport, Functional};
use crate::error::{DepthError, Result};
use crate::fuzzy::{FuzzyNumber, Sample};

/// Deepest first: red to yellow.
pub const TOP_RAMP: [&str; 8] = [
    "#d7191c", "#e03b24", "#e85b2c", "#f07c35", "#f59d3e", "#f9bd48", "#fcdc52", "#ffff5c",
];

/// Least deep first: aquamarine to violet.
pub const BOTTOM_RAMP: [&str; 8] = [
    "#7fffd4", "#88e6d9", "#92ccdd", "#9cb2e1", "#a898e4", "#b57de7", "#c463e9", "#d44aeb",
];

pub const GREY: &str = "#b4b4b4";

#[derive(Clone, Debug, PartialEq)]
pub struct PlotOptions {
    pub top_k: usize,
    pub bottom_k: usize,
    pub highlight_median: bool,
    pub functional: Functional,
    pub width: u32,
    pub height: u32,
    /// Data-axis window; derived from the sample when `None`.
    pub x_range: Option<(f64, f64)>,
    pub title: Option<String>,
}

impl Default for PlotOptions {
    fn default() -> Self {
        PlotOptions {
            top_k: 5,
            bottom_k: 0,
            highlight_median: false,
            functional: Functional::Modified,
            width: 800,
            height: 400,
            x_range: None,
            title: None,
        }
    }
}

/// Colour for position `i` of `k` on a ramp.
pub fn ramp_color(ramp: &[&'static str; 8], i: usize, k: usize) -> &'static str {
    if k <= 1 {
        return ramp[0];
    }
    let pos = (i as f64 * (ramp.len() - 1) as f64 / (k - 1) as f64).round() as usize;
    ramp[pos.min(ramp.len() - 1)]
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

struct Frame {
    x0: f64,
    x1: f64,
    left: f64,
    right: f64,
    top: f64,
    bottom: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        self.left + (x - self.x0) / (self.x1 - self.x0) * (self.right - self.left)
    }

    fn py(&self, m: f64) -> f64 {
        self.bottom - m * (self.bottom - self.top)
    }

    fn points(&self, f: &FuzzyNumber) -> String {
        let mut s = String::new();
        for (i, (x, m)) in f.membership_polygon().into_iter().enumerate() {
            if i > 0 {
                s.push(' ');
            }
            let _ = write!(s, "{:.3},{:.3}", self.px(x), self.py(m));
        }
        s
    }
}

fn nice_step(span: f64) -> f64 {
    let raw = span / 8.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    step * mag
}

/// Renders `items` coloured by `depths` (one value per item).
pub fn render_svg(
    items: &[FuzzyNumber],
    depths: &[f64],
    median: Option<&FuzzyNumber>,
    opts: &PlotOptions,
) -> Result<String> {
    if items.len() != depths.len() {
        return Err(DepthError::Config(format!(
            "{} items but {} depth values",
            items.len(),
            depths.len()
        )));
    }
    let (x0, x1) = match opts.x_range {
        Some(r) => r,
        None => {
            let lo = items
                .iter()
                .map(|f| -f.lower_neg().max_value())
                .fold(f64::INFINITY, f64::min);
            let hi = items
                .iter()
                .map(|f| f.upper().max_value())
                .fold(f64::NEG_INFINITY, f64::max);
            if lo.is_finite() && hi.is_finite() {
                let pad = ((hi - lo) * 0.05).max(0.5);
                (lo - pad, hi + pad)
            } else {
                (-1.0, 1.0)
            }
        }
    };
    if !(x0.is_finite() && x1.is_finite() && x0 < x1) {
        return Err(DepthError::Config(format!("invalid plot range [{x0}, {x1}]")));
    }
    let (w, h) = (opts.width as f64, opts.height as f64);
    let fr = Frame {
        x0,
        x1,
        left: 50.0,
        right: w - 20.0,
        top: if opts.title.is_some() { 40.0 } else { 20.0 },
        bottom: h - 40.0,
    };

    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by(|&i, &j| depths[j].total_cmp(&depths[i]).then(i.cmp(&j)));
    let top_k = opts.top_k.min(items.len());
    let bottom_k = opts.bottom_k.min(items.len() - top_k);
    let top = &order[..top_k];
    let bottom: Vec<usize> = order[order.len() - bottom_k..].iter().rev().copied().collect();

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        opts.width, opts.height, opts.width, opts.height
    );
    let _ = writeln!(
        s,
        r##"<rect x="0" y="0" width="{}" height="{}" fill="#ffffff"/>"##,
        opts.width, opts.height
    );
    if let Some(t) = &opts.title {
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="24" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
            w / 2.0,
            escape(t)
        );
    }

    // axes
    let _ = writeln!(s, r##"<g stroke="#000000" stroke-width="1" fill="none">"##);
    let _ = writeln!(
        s,
        r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
        fr.left, fr.bottom, fr.right, fr.bottom
    );
    let _ = writeln!(
        s,
        r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}"/>"#,
        fr.left, fr.bottom, fr.left, fr.top
    );
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g font-family="sans-serif" font-size="10" fill="#000000">"##);
    let step = nice_step(x1 - x0);
    let mut tick = (x0 / step).ceil() * step;
    while tick <= x1 + 1e-9 * step {
        let v = if tick.abs() < 1e-9 * step { 0.0 } else { tick };
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="middle">{}</text>"#,
            fr.px(v),
            fr.bottom + 14.0,
            trim_float(v)
        );
        tick += step;
    }
    for m in [0.0, 0.5, 1.0] {
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" text-anchor="end">{}</text>"#,
            fr.left - 4.0,
            fr.py(m) + 3.0,
            trim_float(m)
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="sample" fill="none" stroke="{GREY}" stroke-width="1">"#);
    for (i, f) in items.iter().enumerate() {
        if top.contains(&i) || bottom.contains(&i) {
            continue;
        }
        let _ = writeln!(s, r#"<polygon data-index="{i}" points="{}"/>"#, fr.points(f));
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="bottom" fill="none" stroke-width="2">"#);
    for (pos, &i) in bottom.iter().enumerate().rev() {
        let _ = writeln!(
            s,
            r#"<polygon data-index="{i}" data-depth="{}" stroke="{}" points="{}"/>"#,
            crate::io::fmt_sig12(depths[i]),
            ramp_color(&BOTTOM_RAMP, pos, bottom.len()),
            fr.points(&items[i])
        );
    }
    let _ = writeln!(s, "</g>");

    let _ = writeln!(s, r#"<g id="top" fill="none" stroke-width="2">"#);
    for (pos, &i) in top.iter().enumerate().rev() {
        let _ = writeln!(
            s,
            r#"<polygon data-index="{i}" data-depth="{}" stroke="{}" points="{}"/>"#,
            crate::io::fmt_sig12(depths[i]),
            ramp_color(&TOP_RAMP, pos, top.len()),
            fr.points(&items[i])
        );
    }
    let _ = writeln!(s, "</g>");

    if opts.highlight_median {
        if let Some(m) = median {
            let _ = writeln!(
                s,
                r##"<polygon id="median" fill="none" stroke="#000000" stroke-width="2.5" points="{}"/>"##,
                fr.points(m)
            );
        }
    }
    let _ = writeln!(s, "</svg>");
    Ok(s)
}

fn trim_float(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.to_owned()
    }
}

/// Renders a sample with the depths of a computed report (sample rows only).
pub fn render_report(sample: &Sample, report: &DepthReport, opts: &PlotOptions) -> Result<String> {
    let depths: Vec<f64> = report
        .rows
        .iter()
        .take(sample.len())
        .map(|r| opts.functional.of(&r.depths))
        .collect();
    let median = report.median.map(|m| m.to_fuzzy());
    render_svg(sample.items(), &depths, median.as_ref(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::depth::{rank_sample, PairScheme};
    use crate::fuzzy::Trapezoid;

    fn sample(n: usize) -> Sample {
        let ts: Vec<Trapezoid> = (0..n)
            .map(|k| {
                let x = (k as f64 * 1.7).sin() * 5.0;
                Trapezoid::new(x - 1.0, x - 0.5, x + 0.25, x + 1.5).unwrap()
            })
            .collect();
        Sample::from_trapezoids(&ts).unwrap()
    }

    #[test]
    fn colours_exactly_top_k() {
        let s = sample(20);
        let rep = rank_sample(&s, PairScheme::Strict).unwrap();
        let svg = render_report(
            &s,
            &rep,
            &PlotOptions {
                top_k: 5,
                ..Default::default()
            },
        )
        .unwrap();
        let top = svg
            .split(r#"<g id="top""#)
            .nth(1)
            .unwrap()
            .split("</g>")
            .next()
            .unwrap();
        assert_eq!(top.matches("<polygon").count(), 5);
        assert_eq!(svg.matches("<polygon").count(), 20);
        assert!(top.contains(TOP_RAMP[0]) && top.contains(TOP_RAMP[7]));
    }

    #[test]
    fn all_grey_when_nothing_highlighted() {
        let s = sample(6);
        let rep = rank_sample(&s, PairScheme::Strict).unwrap();
        let opts = PlotOptions {
            top_k: 0,
            bottom_k: 0,
            ..Default::default()
        };
        let svg = render_report(&s, &rep, &opts).unwrap();
        assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
        assert!(!TOP_RAMP.iter().chain(BOTTOM_RAMP.iter()).any(|c| svg.contains(c)));
        assert_eq!(svg.matches(&format!(r#"stroke="{GREY}""#)).count(), 1);
    }

    #[test]
    fn deterministic_bytes_and_median() {
        let s = sample(15);
        let rep = rank_sample(&s, PairScheme::Strict).unwrap();
        let opts = PlotOptions {
            bottom_k: 5,
            highlight_median: true,
            ..Default::default()
        };
        let a = render_report(&s, &rep, &opts).unwrap();
        let b = render_report(&s, &rep, &opts).unwrap();
        assert_eq!(a, b);
        assert!(a.contains(r#"id="median""#));
        assert!(a.contains(BOTTOM_RAMP[0]));
    }

    #[test]
    fn ramp_endpoints() {
        assert_eq!(ramp_color(&TOP_RAMP, 0, 5), TOP_RAMP[0]);
        assert_eq!(ramp_color(&TOP_RAMP, 4, 5), TOP_RAMP[7]);
        assert_eq!(ramp_color(&TOP_RAMP, 0, 1), TOP_RAMP[0]);
    }

    #[test]
    fn mismatched_lengths() {
        let s = sample(3);
        assert!(render_svg(s.items(), &[0.5], None, &PlotOptions::default()).is_err());
    }
}
