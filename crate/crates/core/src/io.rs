//! CSV formatting, atomic file writes and a small SVG line renderer.
//!
//! Every CSV uses `.` as the decimal separator, LF line endings and 12
//! significant digits (`%.12g`).

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};

/// Formats `v` like C's `%.12g`.
pub fn fmt_g12(v: f64) -> String {
    const PRECISION: i32 = 12;
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v.is_nan() {
            "nan".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    // Exponent after rounding to PRECISION significant digits.
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-4..PRECISION).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{mantissa}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (PRECISION - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, v)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Joins formatted values with commas.
pub fn csv_row(values: &[f64]) -> String {
    values.iter().map(|&v| fmt_g12(v)).collect::<Vec<_>>().join(",")
}

/// Writes `contents` to `path` via a temporary sibling file and a rename,
/// so a failed write never leaves a partial file at `path`.
pub fn write_atomic(path: &Path, contents: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let file_name = path
        .file_name()
        .ok_or_else(|| Error::io(path, std::io::Error::other("path has no file name")))?;
    let tmp = dir.join(format!(".{}.tmp{}", file_name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if let Err(e) = result {
        let _ = fs::remove_file(&tmp);
        return Err(Error::io(path, e));
    }
    Ok(())
}

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

/// One named series for [`line_chart_svg`].
pub struct Series<'a> {
    pub name: &'a str,
    pub color: &'a str,
    pub y: &'a [f64],
}

/// Renders series sharing the x axis `x` as a standalone SVG document.
pub fn line_chart_svg(title: &str, x_label: &str, y_label: &str, x: &[f64], series: &[Series<'_>]) -> String {
    const W: f64 = 720.0;
    const H: f64 = 480.0;
    const LEFT: f64 = 80.0;
    const RIGHT: f64 = 20.0;
    const TOP: f64 = 40.0;
    const BOTTOM: f64 = 60.0;

    let finite = |v: &&f64| v.is_finite();
    let (x_min, x_max) = bounds(x.iter().filter(finite).copied());
    let (y_min, y_max) = bounds(series.iter().flat_map(|s| s.y.iter().filter(finite).copied()));
    let y_min = y_min.min(0.0);
    let sx = |v: f64| LEFT + (v - x_min) / (x_max - x_min) * (W - LEFT - RIGHT);
    let sy = |v: f64| H - BOTTOM - (v - y_min) / (y_max - y_min) * (H - TOP - BOTTOM);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\" font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!("<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">{}</text>\n",
        W / 2.0,
        escape(title)
    ));
    // axes box
    svg.push_str(&format!(
        "<rect x=\"{LEFT}\" y=\"{TOP}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
        W - LEFT - RIGHT,
        H - TOP - BOTTOM
    ));
    for i in 0..=5 {
        let fx = x_min + (x_max - x_min) * i as f64 / 5.0;
        let fy = y_min + (y_max - y_min) * i as f64 / 5.0;
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">{}</text>\n",
            sx(fx),
            H - BOTTOM + 18.0,
            tick(fx)
        ));
        svg.push_str(&format!(
            "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"end\">{}</text>\n",
            LEFT - 6.0,
            sy(fy) + 4.0,
            tick(fy)
        ));
    }
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
        LEFT + (W - LEFT - RIGHT) / 2.0,
        H - 16.0,
        escape(x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {0})\">{1}</text>\n",
        TOP + (H - TOP - BOTTOM) / 2.0,
        escape(y_label)
    ));
    for (k, s) in series.iter().enumerate() {
        let points: Vec<String> = x
            .iter()
            .zip(s.y)
            .filter(|(a, b)| a.is_finite() && b.is_finite())
            .map(|(&a, &b)| format!("{:.2},{:.2}", sx(a), sy(b)))
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n",
            s.color,
            points.join(" ")
        ));
        let ly = TOP + 16.0 + 16.0 * k as f64;
        svg.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"{3}\" stroke-width=\"2\"/><text x=\"{4}\" y=\"{5}\">{6}</text>\n",
            W - RIGHT - 140.0,
            ly,
            W - RIGHT - 116.0,
            s.color,
            W - RIGHT - 110.0,
            ly + 4.0,
            escape(s.name)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn bounds(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if !lo.is_finite() || !hi.is_finite() {
        (0.0, 1.0)
    } else if lo == hi {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn tick(v: f64) -> String {
    let s = format!("{v:.3}");
    trim_zeros(&s).to_string()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g12_formatting() {
        assert_eq!(fmt_g12(0.0), "0");
        assert_eq!(fmt_g12(0.1), "0.1");
        assert_eq!(fmt_g12(25.0), "25");
        assert_eq!(fmt_g12(0.022), "0.022");
        assert_eq!(fmt_g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g12(-2.5), "-2.5");
        assert_eq!(fmt_g12(0.1 + 0.2), "0.3");
        assert_eq!(fmt_g12(1.5e-7), "1.5e-07");
        assert_eq!(fmt_g12(123456789012345.0), "1.23456789012e+14");
        assert_eq!(fmt_g12(999999999999.9), "1e+12");
        assert_eq!(fmt_g12(0.0001), "0.0001");
    }

    #[test]
    fn atomic_write_to_missing_dir_fails_cleanly() {
        let dir = tempfile::tempdir().unwrap();
        let target = dir.path().join("nope").join("out.csv");
        assert!(write_atomic(&target, b"x").is_err());
        assert!(!target.exists());
        let ok = dir.path().join("out.csv");
        write_atomic(&ok, b"a,b\n").unwrap();
        assert_eq!(std::fs::read_to_string(&ok).unwrap(), "a,b\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }

    #[test]
    fn svg_contains_labels() {
        let x = [0.5, 1.0, 1.5];
        let svg = line_chart_svg(
            "Cost Rate",
            "Inspection interval (year)",
            "Expectation of cost rate (per year)",
            &x,
            &[Series { name: "classical", color: "blue", y: &[1.0, 2.0, 3.0] }],
        );
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("Inspection interval (year)"));
        assert!(svg.contains("<polyline"));
    }
}
