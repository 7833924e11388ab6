//! Log-log SVG of a singular-value sequence with its least-squares decay line.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::operator::ZERO_SINGULAR;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 72.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 36.0;
const BOTTOM: f64 = 56.0;

/// Parses `index,value` rows; a leading header line is skipped.
pub fn parse_singular_values(text: &str) -> Result<Vec<(usize, f64)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || (lineno == 0 && line.starts_with("index")) {
            continue;
        }
        let (i, v) = line
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("line {}: expected `index,value`", lineno + 1)))?;
        let i: usize = i
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad index `{i}`", lineno + 1)))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("line {}: bad value `{v}`", lineno + 1)))?;
        if i == 0 || !v.is_finite() || v < 0.0 {
            return Err(Error::Parse(format!("line {}: index must be >= 1 and value finite, nonnegative", lineno + 1)));
        }
        out.push((i, v));
    }
    if out.is_empty() {
        return Err(Error::InvalidParameter("no singular values to plot".into()));
    }
    Ok(out)
}

/// `(intercept, slope)` of `log10 s` against `log10 nu` over values above the zero threshold.
fn fit(points: &[(usize, f64)]) -> Option<(f64, f64)> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(_, v)| *v > ZERO_SINGULAR)
        .map(|(i, v)| ((*i as f64).log10(), v.log10()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    Some((my - slope * mx, slope))
}

fn f(v: f64) -> String {
    format!("{v:.2}")
}

pub fn render_svg(points: &[(usize, f64)], title: &str) -> String {
    let max_i = points.iter().map(|p| p.0).max().unwrap_or(1).max(2) as f64;
    let x_hi = max_i.log10().ceil().max(1.0);
    let positive: Vec<f64> = points.iter().map(|p| p.1).filter(|v| *v > 0.0).collect();
    let (mut y_lo, mut y_hi) = match (
        positive.iter().cloned().fold(f64::INFINITY, f64::min),
        positive.iter().cloned().fold(f64::NEG_INFINITY, f64::max),
    ) {
        (lo, hi) if lo.is_finite() => (lo.log10().floor(), hi.log10().ceil()),
        _ => (-1.0, 0.0),
    };
    if y_hi <= y_lo {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    // zeros sit one decade below the smallest positive value
    let zero_level = y_lo - 1.0;
    y_lo = zero_level;
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |lx: f64| LEFT + lx / x_hi * pw;
    let sy = |ly: f64| TOP + (y_hi - ly) / (y_hi - y_lo) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}" font-family="sans-serif" font-size="12">"#,
        WIDTH, HEIGHT, WIDTH, HEIGHT
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="22" text-anchor="middle">{}</text>"#, f(WIDTH / 2.0), escape(title));
    let _ = writeln!(
        s,
        r##"<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#444"/>"##,
        f(LEFT),
        f(TOP),
        f(pw),
        f(ph)
    );
    for k in 0..=(x_hi as i64) {
        let x = sx(k as f64);
        let _ = writeln!(
            s,
            r##"<line x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="#ccc"/><text x="{x}" y="{}" text-anchor="middle">1e{k}</text>"##,
            f(TOP),
            f(TOP + ph),
            f(TOP + ph + 16.0),
            x = f(x)
        );
    }
    for k in (y_lo as i64)..=(y_hi as i64) {
        let y = sy(k as f64);
        let label = if k as f64 == zero_level { "0".to_string() } else { format!("1e{k}") };
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{y}" x2="{}" y2="{y}" stroke="#ccc"/><text x="{}" y="{}" text-anchor="end">{label}</text>"##,
            f(LEFT),
            f(LEFT + pw),
            f(LEFT - 6.0),
            f(y + 4.0),
            y = f(y)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" text-anchor="middle">index</text>"#,
        f(LEFT + pw / 2.0),
        f(HEIGHT - 14.0)
    );
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">singular value</text>"#,
        f(TOP + ph / 2.0),
        f(TOP + ph / 2.0)
    );
    for (i, v) in points {
        let x = sx((*i as f64).log10());
        if *v > 0.0 {
            let _ = writeln!(s, r##"<circle cx="{}" cy="{}" r="3" fill="#1f5fa8"/>"##, f(x), f(sy(v.log10())));
        } else {
            let _ = writeln!(
                s,
                r##"<circle cx="{}" cy="{}" r="3" fill="none" stroke="#1f5fa8"/>"##,
                f(x),
                f(sy(zero_level))
            );
        }
    }
    if let Some((c, slope)) = fit(points) {
        let used: Vec<f64> = points
            .iter()
            .filter(|(_, v)| *v > ZERO_SINGULAR)
            .map(|(i, _)| (*i as f64).log10())
            .collect();
        let x0 = used.iter().cloned().fold(f64::INFINITY, f64::min);
        let x1 = used.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let clamp = |ly: f64| ly.clamp(y_lo, y_hi);
        let _ = writeln!(
            s,
            r##"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c0392b" stroke-width="1.5"/>"##,
            f(sx(x0)),
            f(sy(clamp(c + slope * x0))),
            f(sx(x1)),
            f(sy(clamp(c + slope * x1)))
        );
        let _ = writeln!(
            s,
            r##"<text x="{}" y="{}" text-anchor="end" fill="#c0392b">fit: s ~ {:.3e} nu^-{:.3}</text>"##,
            f(LEFT + pw - 8.0),
            f(TOP + 16.0),
            10f64.powf(c),
            -slope + 0.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_one_is_a_single_marker() {
        let svg = render_svg(&parse_singular_values("index,value\n1,1e0\n").unwrap(), "t");
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(!svg.contains("fit:"));
    }

    #[test]
    fn identity_spectrum_fits_flat() {
        let pts: Vec<(usize, f64)> = (1..=10).map(|i| (i, 1.0)).collect();
        let (c, slope) = fit(&pts).unwrap();
        assert!(c.abs() < 1e-15 && slope.abs() < 1e-15);
        assert!(render_svg(&pts, "id").contains("nu^-0.000"));
    }

    #[test]
    fn power_law_slope() {
        let pts: Vec<(usize, f64)> = (1..=20).map(|i| (i, (i as f64).powf(-1.5))).collect();
        let (_, slope) = fit(&pts).unwrap();
        assert!((slope + 1.5).abs() < 1e-12);
    }

    #[test]
    fn bad_input() {
        assert!(parse_singular_values("").is_err());
        assert!(parse_singular_values("index,value\n").is_err());
        assert!(parse_singular_values("1,abc").is_err());
        assert!(parse_singular_values("0,1").is_err());
    }

    #[test]
    fn output_is_stable() {
        let pts = parse_singular_values("1,1\n2,1e-17\n3,0\n").unwrap();
        assert_eq!(render_svg(&pts, "x"), render_svg(&pts, "x"));
    }
}
