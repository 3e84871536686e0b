//! Writers for the three artifact formats: curve CSV, tabular CSV and SVG.
//!
//! Every number is rendered with a fixed format so that identical inputs give
//! byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::curvegeom::PlanarCurve;
use crate::Result;

pub const CURVE_HEADER: &str = "s,x,y,theta,k";

/// Seventeen significant digits, which round-trips every `f64`.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// The curve as `s,x,y,theta,k` rows, keeping every `stride`-th grid point and
/// always the last one.
pub fn curve_csv(curve: &PlanarCurve, stride: usize) -> String {
    let stride = stride.max(1);
    let n = curve.intervals();
    let h = curve.spacing();
    let mut out = String::with_capacity(96 * (n / stride + 2));
    out.push_str(CURVE_HEADER);
    out.push('\n');
    let mut row = |i: usize| {
        let p = curve.points[i];
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            fmt_real(i as f64 * h),
            fmt_real(p.x),
            fmt_real(p.y),
            fmt_real(curve.thetas[i]),
            fmt_real(curve.curvatures[i])
        );
    };
    for i in (0..n).step_by(stride) {
        row(i);
    }
    row(n);
    out
}

/// Smallest stride that leaves at most `max_intervals` intervals.
pub fn stride_for(curve: &PlanarCurve, max_intervals: usize) -> usize {
    curve.intervals().div_ceil(max_intervals.max(1)).max(1)
}

/// A header row and rows of already formatted cells.
#[derive(Debug, Clone, Default)]
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        Self {
            header: header.iter().map(|h| h.as_ref().to_owned()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(csv_error)?;
        for row in &self.rows {
            w.write_record(row).map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| crate::Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn csv_error(e: csv::Error) -> crate::Error {
    crate::Error::Io(std::io::Error::other(e))
}

/// Pretty-printed JSON with a trailing newline.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

/// One curve in an SVG document.
#[derive(Debug, Clone, Copy)]
pub struct SvgCurve<'a> {
    pub id: &'a str,
    pub curve: &'a PlanarCurve,
    pub stroke: &'a str,
}

impl<'a> SvgCurve<'a> {
    pub fn new(id: &'a str, curve: &'a PlanarCurve) -> Self {
        Self {
            id,
            curve,
            stroke: "#1f4e9c",
        }
    }

    pub fn stroke(mut self, stroke: &'a str) -> Self {
        self.stroke = stroke;
        self
    }
}

const SVG_MARGIN: f64 = 0.05;

fn svg_num(x: f64) -> String {
    // avoid "-0.000000000"
    let s = format!("{x:.9}");
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.000000000".to_owned()
    } else {
        s
    }
}

/// An SVG document with one `<path>` per curve (a polyline through the grid
/// points, y pointing up) and the two coordinate axes as `<line>` elements.
/// The viewBox is the bounding box of all curves plus a 5% margin.
pub fn svg(curves: &[SvgCurve<'_>]) -> String {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for c in curves {
        for p in &c.curve.points {
            x0 = x0.min(p.x);
            x1 = x1.max(p.x);
            y0 = y0.min(p.y);
            y1 = y1.max(p.y);
        }
    }
    if !x0.is_finite() {
        (x0, y0, x1, y1) = (-1.0, -1.0, 1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let pad = SVG_MARGIN * span;
    let (vx, vy) = (x0 - pad, -y1 - pad);
    let (vw, vh) = (x1 - x0 + 2.0 * pad, y1 - y0 + 2.0 * pad);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{} {} {} {}\" width=\"640\" height=\"{}\">",
        svg_num(vx),
        svg_num(vy),
        svg_num(vw),
        svg_num(vh),
        (640.0 * vh / vw).round() as i64
    );
    let axis = "stroke=\"#999999\" stroke-width=\"1\" vector-effect=\"non-scaling-stroke\"";
    let _ = writeln!(
        out,
        "  <line class=\"axis\" x1=\"{}\" y1=\"0.000000000\" x2=\"{}\" y2=\"0.000000000\" {axis}/>",
        svg_num(vx),
        svg_num(vx + vw)
    );
    let _ = writeln!(
        out,
        "  <line class=\"axis\" x1=\"0.000000000\" y1=\"{}\" x2=\"0.000000000\" y2=\"{}\" {axis}/>",
        svg_num(vy),
        svg_num(vy + vh)
    );
    for c in curves {
        let mut d = String::with_capacity(24 * c.curve.points.len());
        for (i, p) in c.curve.points.iter().enumerate() {
            let _ = write!(
                d,
                "{}{} {}",
                if i == 0 { "M" } else { " L" },
                svg_num(p.x),
                svg_num(-p.y)
            );
        }
        if c.curve.closed {
            d.push_str(" Z");
        }
        let _ = writeln!(
            out,
            "  <path id=\"{}\" d=\"{d}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" vector-effect=\"non-scaling-stroke\"/>",
            xml_escape(c.id),
            xml_escape(c.stroke)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Creates `dir` if needed and writes `contents` to `dir/name`.
pub fn write_artifact(dir: &Path, name: &str, contents: &str) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(name);
    fs::write(&path, contents)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvegeom::disc;

    #[test]
    fn reals_round_trip() {
        for x in [0.1, -1.0 / 3.0, std::f64::consts::PI * 1e-300, 6.02214076e23, 0.0] {
            assert_eq!(fmt_real(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(fmt_real(1.0), "1.0000000000000000e0");
    }

    #[test]
    fn curve_rows_and_stride() {
        let c = disc(1.0, 64).unwrap();
        let full = curve_csv(&c, 1);
        assert_eq!(full.lines().count(), 66);
        assert_eq!(full.lines().next(), Some(CURVE_HEADER));
        let thin = curve_csv(&c, stride_for(&c, 16));
        assert_eq!(thin.lines().count(), 18);
        let last: Vec<f64> = thin
            .lines()
            .last()
            .unwrap()
            .split(',')
            .map(|v| v.parse().unwrap())
            .collect();
        assert!((last[0] - c.length).abs() < 1e-12);
    }

    #[test]
    fn table_quotes_nothing_for_numbers() {
        let mut t = Table::new(&["param", "E"]);
        t.push(vec!["1".into(), fmt_real(2.5)]);
        assert_eq!(t.to_csv().unwrap(), "param,E\n1,2.5000000000000000e0\n");
    }

    #[test]
    fn svg_has_one_path_per_curve() {
        let a = disc(1.0, 32).unwrap();
        let b = disc(0.5, 32).unwrap();
        let doc = svg(&[SvgCurve::new("a", &a), SvgCurve::new("b", &b).stroke("red")]);
        assert_eq!(doc.matches("<path").count(), 2);
        assert_eq!(doc.matches("<line").count(), 2);
        assert!(doc.contains("viewBox=\"-1.100000000 -1.100000000 2.200000000 2.200000000\""));
    }
}
