//! CSV and legacy VTK output of field samples.

use std::fmt::Write as _;
use std::path::Path;

use super::recovery::{FieldSample, Quantity};
use crate::{Error, Result};

pub const CSV_HEADER: &str = "elem,xi1,xi2,x,y,z,u1,u2,u3,sig,M,N,surface";

/// Output format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Vtk,
}

/// Physical tensor component `(i, j)` written to the scalar columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[derive(Default)]
pub struct ExportOptions {
    pub component: (usize, usize),
}


/// One parsed CSV line.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvRow {
    pub element: usize,
    pub xi: [f64; 2],
    pub x: [f64; 3],
    pub u: [f64; 3],
    pub sig: f64,
    pub m: f64,
    pub n: f64,
    pub surface: String,
}

fn scalars(s: &FieldSample, opts: &ExportOptions) -> [f64; 3] {
    let (i, j) = opts.component;
    [
        s.physical(Quantity::Sigma, i, j),
        s.physical(Quantity::Moment, i, j),
        s.physical(Quantity::Cauchy, i, j),
    ]
}

/// Renders samples as CSV with 17 significant digits.
pub fn to_csv(samples: &[FieldSample], opts: &ExportOptions) -> String {
    let mut out = String::with_capacity(256 * (samples.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for s in samples {
        let [sig, m, n] = scalars(s, opts);
        let _ = write!(out, "{}", s.element);
        for v in [s.xi[0], s.xi[1], s.x.x, s.x.y, s.x.z, s.u.x, s.u.y, s.u.z, sig, m, n] {
            let _ = write!(out, ",{v:.16e}");
        }
        let _ = writeln!(out, ",{}", s.surface.tag());
    }
    out
}

/// Parses CSV produced by [`to_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<CsvRow>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim() == CSV_HEADER => {}
        other => return Err(Error::Parse(format!("unexpected CSV header {other:?}"))),
    }
    let mut rows = Vec::new();
    for (k, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 13 {
            return Err(Error::Parse(format!("line {}: expected 13 fields, got {}", k + 2, f.len())));
        }
        let num = |i: usize| -> Result<f64> {
            f[i].trim()
                .parse()
                .map_err(|e| Error::Parse(format!("line {} field {}: {e}", k + 2, i + 1)))
        };
        rows.push(CsvRow {
            element: f[0]
                .trim()
                .parse()
                .map_err(|e| Error::Parse(format!("line {}: {e}", k + 2)))?,
            xi: [num(1)?, num(2)?],
            x: [num(3)?, num(4)?, num(5)?],
            u: [num(6)?, num(7)?, num(8)?],
            sig: num(9)?,
            m: num(10)?,
            n: num(11)?,
            surface: f[12].trim().to_string(),
        });
    }
    Ok(rows)
}

/// Renders samples as a legacy ASCII VTK unstructured grid of vertex cells.
pub fn to_vtk(samples: &[FieldSample], opts: &ExportOptions) -> String {
    let n = samples.len();
    let mut out = String::with_capacity(200 * (n + 1));
    out.push_str("# vtk DataFile Version 3.0\nshell field samples\nASCII\nDATASET UNSTRUCTURED_GRID\n");
    let _ = writeln!(out, "POINTS {n} double");
    for s in samples {
        let _ = writeln!(out, "{:.16e} {:.16e} {:.16e}", s.x.x, s.x.y, s.x.z);
    }
    let _ = writeln!(out, "CELLS {n} {}", 2 * n);
    for k in 0..n {
        let _ = writeln!(out, "1 {k}");
    }
    let _ = writeln!(out, "CELL_TYPES {n}");
    for _ in 0..n {
        out.push_str("1\n");
    }
    let _ = writeln!(out, "POINT_DATA {n}");
    let mut scalar = |name: &str, vals: &mut dyn Iterator<Item = String>| {
        let _ = writeln!(out, "SCALARS {name} double 1\nLOOKUP_TABLE default");
        for v in vals {
            out.push_str(&v);
            out.push('\n');
        }
    };
    scalar("elem", &mut samples.iter().map(|s| s.element.to_string()));
    scalar("xi1", &mut samples.iter().map(|s| format!("{:.16e}", s.xi[0])));
    scalar("xi2", &mut samples.iter().map(|s| format!("{:.16e}", s.xi[1])));
    for (k, name) in ["sig", "M", "N"].iter().enumerate() {
        scalar(name, &mut samples.iter().map(|s| format!("{:.16e}", scalars(s, opts)[k])));
    }
    scalar(
        "surface",
        &mut samples.iter().map(|s| (s.surface as u8).to_string()),
    );
    let _ = writeln!(out, "VECTORS u double");
    for s in samples {
        let _ = writeln!(out, "{:.16e} {:.16e} {:.16e}", s.u.x, s.u.y, s.u.z);
    }
    out
}

/// Writes samples to `path` in the requested format.
pub fn export(samples: &[FieldSample], path: &Path, format: Format, opts: &ExportOptions) -> Result<()> {
    let text = match format {
        Format::Csv => to_csv(samples, opts),
        Format::Vtk => to_vtk(samples, opts),
    };
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::postprocess::Surface;
    use crate::{Mat3, Vec3};

    fn sample(k: usize) -> FieldSample {
        let v = k as f64;
        FieldSample {
            element: k,
            xi: [0.1 * v, 1.0 / 3.0],
            x: Vec3::new(v, -v, std::f64::consts::PI),
            u: Vec3::new(1e-9 * v, 2.0, -1.0 / 7.0),
            sigma: Mat3::from_diagonal(&Vec3::new(1.0 / 3.0, 2.0, 0.0)),
            moment: Mat3::from_diagonal(&Vec3::new(-10.0, 0.0, 0.0)),
            cauchy: Mat3::from_diagonal(&Vec3::new(std::f64::consts::E, 0.0, 0.0)),
            surface: if k.is_multiple_of(2) { Surface::B2 } else { Surface::M1 },
            source: k + 1,
            frame: [Vec3::x(), Vec3::y()],
        }
    }

    #[test]
    fn empty_csv_has_header_only() {
        let text = to_csv(&[], &ExportOptions::default());
        assert_eq!(text, format!("{CSV_HEADER}\n"));
        assert!(parse_csv(&text).unwrap().is_empty());
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let samples: Vec<_> = (0..5).map(sample).collect();
        let rows = parse_csv(&to_csv(&samples, &ExportOptions::default())).unwrap();
        for (s, r) in samples.iter().zip(&rows) {
            assert_eq!(r.element, s.element);
            assert_eq!(r.xi, s.xi);
            assert_eq!(r.x, [s.x.x, s.x.y, s.x.z]);
            assert_eq!(r.u, [s.u.x, s.u.y, s.u.z]);
            assert_eq!(r.sig, 1.0 / 3.0);
            assert_eq!(r.m, -10.0);
            assert_eq!(r.n, std::f64::consts::E);
            assert_eq!(r.surface, s.surface.tag());
        }
    }

    #[test]
    fn vtk_sections_are_consistent() {
        let samples: Vec<_> = (0..3).map(sample).collect();
        let text = to_vtk(&samples, &ExportOptions::default());
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# vtk DataFile Version 3.0");
        assert_eq!(lines[2], "ASCII");
        assert_eq!(lines[3], "DATASET UNSTRUCTURED_GRID");
        assert_eq!(lines[4], "POINTS 3 double");
        assert!(lines.contains(&"CELLS 3 6"));
        assert!(lines.contains(&"POINT_DATA 3"));
    }
}
