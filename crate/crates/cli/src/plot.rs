//! SVG line plot of check ratios against dimension.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde_json::Value;
use shadowgeom::{GeomError, Result};

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 24.0;
const BOTTOM: f64 = 48.0;
const COLORS: [&str; 10] =
    ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"];

/// Largest ratio per (id, n) over the bodies of a report.
pub fn series(report: &Value, ids: &[String]) -> Result<BTreeMap<String, BTreeMap<u64, f64>>> {
    let results = report
        .get("results")
        .and_then(Value::as_array)
        .ok_or_else(|| GeomError::Parse("report has no results array".into()))?;
    let mut out: BTreeMap<String, BTreeMap<u64, f64>> = BTreeMap::new();
    for r in results {
        let (Some(id), Some(n), Some(ratio)) =
            (r["id"].as_str(), r["n"].as_u64(), r["ratio"].as_f64())
        else {
            continue;
        };
        if !(ids.is_empty() || ids.iter().any(|i| i == id)) || !(ratio.is_finite() && ratio > 0.0) {
            continue;
        }
        let e = out.entry(id.to_string()).or_default().entry(n).or_insert(ratio);
        *e = e.max(ratio);
    }
    Ok(out)
}

/// Log-scale plot of the largest ratio per check id against n.
pub fn ratio_plot(report: &Value, ids: &[String]) -> Result<String> {
    let data = series(report, ids)?;
    let points = data.values().flat_map(|m| m.iter().map(|(n, r)| (*n as f64, r.log10())));
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for (x, y) in points {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        return Err(GeomError::EmptyInput);
    }
    if x1 == x0 {
        x0 -= 1.0;
        x1 += 1.0;
    }
    let (y0, y1) = (y0.min(0.0).floor(), y1.max(0.0).ceil().max(y0.floor() + 1.0));
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (y1 - y) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for e in y0 as i32..=y1 as i32 {
        let y = sy(e as f64);
        let _ = writeln!(s, r##"<line x1="{LEFT}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#ddd"/>"##, LEFT + pw);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="end">1e{e}</text>"#, LEFT - 6.0, y + 4.0);
    }
    // ratio 1 is the bound itself
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="black" stroke-dasharray="4 3"/>"#,
        sy(0.0),
        LEFT + pw,
        sy(0.0)
    );
    for n in x0.ceil() as i64..=x1.floor() as i64 {
        let x = sx(n as f64);
        let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{n}</text>"#, TOP + ph + 16.0);
    }
    let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">n</text>"#, LEFT + pw / 2.0, HEIGHT - 10.0);
    let _ = writeln!(
        s,
        r#"<text x="14" y="{:.2}" text-anchor="middle" transform="rotate(-90 14 {:.2})">max lhs/rhs</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0
    );
    for (i, (id, pts)) in data.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let coords: Vec<String> = pts.iter().map(|(n, r)| format!("{:.2},{:.2}", sx(*n as f64), sy(r.log10()))).collect();
        let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, coords.join(" "));
        for c in &coords {
            let (x, y) = c.split_once(',').unwrap_or(("0", "0"));
            let _ = writeln!(s, r#"<circle cx="{x}" cy="{y}" r="2.5" fill="{color}"/>"#);
        }
        let ly = TOP + 12.0 + 14.0 * i as f64;
        let lx = LEFT + pw + 12.0;
        let _ = writeln!(s, r#"<line x1="{lx:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"/>"#, ly - 4.0, lx + 16.0, ly - 4.0);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{ly:.2}">{id}</text>"#, lx + 22.0);
    }
    s.push_str("</svg>\n");
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keeps_largest_ratio_per_dimension() {
        let report = serde_json::json!({ "results": [
            { "id": "A", "n": 3, "ratio": 0.5 },
            { "id": "A", "n": 3, "ratio": 0.7 },
            { "id": "A", "n": 4, "ratio": 0.6 },
            { "id": "B", "n": 3, "ratio": null },
        ]});
        let s = series(&report, &[]).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s["A"][&3], 0.7);
        let svg = ratio_plot(&report, &[]).unwrap();
        assert!(svg.starts_with("<svg") && svg.contains("polyline"));
    }
}
