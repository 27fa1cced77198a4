//! Minimal deterministic SVG line charts: fixed 800×500 frame, fixed
//! palette, fixed tick layout. Rendering the same series twice produces
//! byte-identical output.

use std::fmt::Write as _;
use std::path::Path;

use fdehat::Solution;

use crate::{io_error, CliError};

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 40.0;
const TICKS: usize = 6;
const COLORS: [&str; 6] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
];

/// One labeled curve.
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
}

/// Samples every component of a solution on an equispaced time grid,
/// labeling the curves `y1..ym`.
pub fn trajectory_series(sol: &Solution, samples: usize) -> Result<Vec<Series>, CliError> {
    (0..sol.problem().dim())
        .map(|i| component_series(sol, i, &format!("y{}", i + 1), samples))
        .collect()
}

/// Samples one component of a solution on an equispaced time grid.
pub fn component_series(
    sol: &Solution,
    component: usize,
    label: &str,
    samples: usize,
) -> Result<Series, CliError> {
    let count = samples.max(2);
    let tau = sol.grid().tau();
    let mut points = Vec::with_capacity(count);
    for s in 0..count {
        let t = tau * s as f64 / (count - 1) as f64;
        points.push((t, sol.eval(component, t)?));
    }
    Ok(Series {
        label: label.to_string(),
        points,
    })
}

/// Renders the series as an SVG line chart at `path`.
pub fn render_svg(series: &[Series], path: &Path) -> Result<(), CliError> {
    let doc = render_document(series)?;
    std::fs::write(path, doc).map_err(|e| io_error(path, e))
}

fn render_document(series: &[Series]) -> Result<String, CliError> {
    if series.is_empty() {
        return Err(CliError::Config("no series to plot".into()));
    }
    let offenders: Vec<&str> = series
        .iter()
        .filter(|s| {
            s.points.is_empty()
                || s.points
                    .iter()
                    .any(|&(x, y)| !x.is_finite() || !y.is_finite())
        })
        .map(|s| s.label.as_str())
        .collect();
    if !offenders.is_empty() {
        return Err(CliError::Numerical(format!(
            "cannot plot empty or non-finite series: {}",
            offenders.join(", ")
        )));
    }

    let mut xmin = f64::INFINITY;
    let mut xmax = f64::NEG_INFINITY;
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for s in series {
        for &(x, y) in &s.points {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
    }
    if xmax == xmin {
        xmin -= 0.5;
        xmax += 0.5;
    }
    // Pad the value range so curves do not sit on the frame; flat data gets
    // a fixed band instead.
    let spread = ymax - ymin;
    let pad = if spread == 0.0 {
        ymax.abs().max(1.0) * 0.05
    } else {
        spread * 0.05
    };
    ymin -= pad;
    ymax += pad;

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - xmin) / (xmax - xmin) * plot_w;
    let sy = |y: f64| HEIGHT - BOTTOM - (y - ymin) / (ymax - ymin) * plot_h;

    let mut doc = String::new();
    writeln!(
        doc,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="monospace" font-size="12">"#
    )
    .expect("writing to a String cannot fail");
    let mut put = |line: String| doc.push_str(&(line + "\n"));

    put(format!(
        r##"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#333333" stroke-width="1"/>"##
    ));
    for k in 0..TICKS {
        let frac = k as f64 / (TICKS - 1) as f64;
        let xv = xmin + frac * (xmax - xmin);
        let yv = ymin + frac * (ymax - ymin);
        let xp = sx(xv);
        let yp = sy(yv);
        put(format!(
            r##"<line x1="{xp:.3}" y1="{}" x2="{xp:.3}" y2="{}" stroke="#333333" stroke-width="1"/>"##,
            HEIGHT - BOTTOM,
            HEIGHT - BOTTOM + 5.0
        ));
        put(format!(
            r#"<text x="{xp:.3}" y="{}" text-anchor="middle">{}</text>"#,
            HEIGHT - BOTTOM + 18.0,
            fmt_tick(xv)
        ));
        put(format!(
            r##"<line x1="{}" y1="{yp:.3}" x2="{LEFT}" y2="{yp:.3}" stroke="#333333" stroke-width="1"/>"##,
            LEFT - 5.0
        ));
        put(format!(
            r#"<text x="{}" y="{:.3}" text-anchor="end">{}</text>"#,
            LEFT - 8.0,
            yp + 4.0,
            fmt_tick(yv)
        ));
    }
    for (idx, s) in series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let mut coords = String::new();
        for &(x, y) in &s.points {
            if !coords.is_empty() {
                coords.push(' ');
            }
            write!(coords, "{:.3},{:.3}", sx(x), sy(y)).expect("writing to a String cannot fail");
        }
        put(format!(
            r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>"#
        ));
    }
    for (idx, s) in series.iter().enumerate() {
        let color = COLORS[idx % COLORS.len()];
        let y = TOP + 16.0 + 18.0 * idx as f64;
        let x = WIDTH - RIGHT - 150.0;
        put(format!(
            r#"<line x1="{x}" y1="{y}" x2="{}" y2="{y}" stroke="{color}" stroke-width="1.5"/>"#,
            x + 22.0
        ));
        put(format!(
            r#"<text x="{}" y="{}">{}</text>"#,
            x + 28.0,
            y + 4.0,
            escape(&s.label)
        ));
    }
    doc.push_str("</svg>\n");
    Ok(doc)
}

/// Axis tick label: plain decimal in a comfortable range, scientific
/// notation outside it.
fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.abs() >= 1e4 || v.abs() < 1e-3 {
        format!("{v:.2e}")
    } else {
        format!("{v:.3}")
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(label: &str, ys: &[f64]) -> Series {
        Series {
            label: label.to_string(),
            points: ys
                .iter()
                .enumerate()
                .map(|(i, &y)| (i as f64, y))
                .collect(),
        }
    }

    #[test]
    fn renders_polyline_per_series_with_legend() {
        let doc =
            render_document(&[line("alpha", &[0.0, 1.0, 0.5]), line("beta", &[1.0, 0.0, 2.0])])
                .unwrap();
        assert_eq!(doc.matches("<polyline").count(), 2);
        assert!(doc.contains(">alpha</text>"));
        assert!(doc.contains(">beta</text>"));
        assert!(doc.contains(r#"viewBox="0 0 800 500""#));
    }

    #[test]
    fn identical_input_renders_identical_bytes() {
        let series = [line("y1", &[0.25, 0.5, 0.125, 0.75])];
        assert_eq!(render_document(&series).unwrap(), render_document(&series).unwrap());
    }

    #[test]
    fn flat_series_still_has_a_nonzero_value_band() {
        let doc = render_document(&[line("flat", &[2.0, 2.0, 2.0])]).unwrap();
        assert!(doc.contains("<polyline"));
    }

    #[test]
    fn empty_series_list_is_a_config_error() {
        assert!(matches!(render_document(&[]), Err(CliError::Config(_))));
    }

    #[test]
    fn non_finite_series_are_named_in_the_error() {
        let err = render_document(&[
            line("good", &[0.0, 1.0]),
            line("holey", &[0.0, f64::NAN]),
            Series {
                label: "hollow".to_string(),
                points: Vec::new(),
            },
        ])
        .unwrap_err();
        let CliError::Numerical(msg) = err else {
            panic!("expected a numerical error, got {err:?}");
        };
        assert!(msg.contains("holey") && msg.contains("hollow"), "got {msg}");
        assert!(!msg.contains("good"), "got {msg}");
    }
}
