//! Plain-text patch files.
//!
//! Layout, one record per line, `#` starting a comment line:
//!
//! ```text
//! degrees <p1> <p2>
//! knots <k1> <k2>
//! <k1 knot values>
//! <k2 knot values>
//! points <n>
//! <x> <y> <z> <w>        (n lines, first direction fastest)
//! m1 <n_elements>
//! <a> <b> <c> <d>        (bilinear connectivity)
//! ```
//!
//! Reals are written with 17 significant digits so a file reproduces the patch
//! bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use super::knots::KnotVector;
use super::m1::M1Mesh;
use super::nurbs::NurbsPatch;
use crate::{Error, Result, Vec3};

/// Renders `patch` and the bilinear mesh of its control net.
pub fn patch_to_string(patch: &NurbsPatch) -> String {
    let [k1, k2] = [patch.knots(0), patch.knots(1)];
    let mut out = String::new();
    let _ = writeln!(out, "# NURBS patch with bilinear control-net mesh");
    let _ = writeln!(out, "degrees {} {}", k1.degree(), k2.degree());
    let _ = writeln!(out, "knots {} {}", k1.knots().len(), k2.knots().len());
    for k in [k1, k2] {
        let line: Vec<String> = k.knots().iter().map(|v| format!("{v:.16e}")).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    let _ = writeln!(out, "points {}", patch.n_nodes());
    for (x, w) in patch.points().iter().zip(patch.weights()) {
        let _ = writeln!(out, "{:.16e} {:.16e} {:.16e} {:.16e}", x.x, x.y, x.z, w);
    }
    let m1 = M1Mesh::from_patch(patch);
    let _ = writeln!(out, "m1 {}", m1.n_elements());
    for e in m1.elements() {
        let _ = writeln!(out, "{} {} {} {}", e[0], e[1], e[2], e[3]);
    }
    out
}

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl<'a> Lines<'a> {
    fn next(&mut self) -> Result<(usize, Vec<&'a str>)> {
        for (k, line) in self.inner.by_ref() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            return Ok((k + 1, line.split_whitespace().collect()));
        }
        Err(Error::Parse("unexpected end of patch file".into()))
    }

    fn keyword(&mut self, key: &str, count: usize) -> Result<Vec<usize>> {
        let (k, f) = self.next()?;
        if f.first() != Some(&key) || f.len() != count + 1 {
            return Err(Error::Parse(format!("line {k}: expected `{key}` with {count} values")));
        }
        f[1..].iter().map(|s| parse(k, s)).collect()
    }

    fn reals(&mut self, count: usize) -> Result<Vec<f64>> {
        let (k, f) = self.next()?;
        if f.len() != count {
            return Err(Error::Parse(format!("line {k}: expected {count} values, got {}", f.len())));
        }
        f.iter().map(|s| parse(k, s)).collect()
    }
}

fn parse<T: std::str::FromStr>(line: usize, s: &str) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e| Error::Parse(format!("line {line}: `{s}`: {e}")))
}

/// Parses a patch file. The connectivity block must match the bilinear mesh
/// of the control net.
pub fn patch_from_str(text: &str) -> Result<(NurbsPatch, M1Mesh)> {
    let mut lines = Lines { inner: text.lines().enumerate() };
    let deg = lines.keyword("degrees", 2)?;
    let nk = lines.keyword("knots", 2)?;
    let k1 = KnotVector::new(deg[0], lines.reals(nk[0])?)?;
    let k2 = KnotVector::new(deg[1], lines.reals(nk[1])?)?;
    let n = lines.keyword("points", 1)?[0];
    let mut points = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for _ in 0..n {
        let r = lines.reals(4)?;
        points.push(Vec3::new(r[0], r[1], r[2]));
        weights.push(r[3]);
    }
    let patch = NurbsPatch::new(k1, k2, points, weights)?;
    let m1 = M1Mesh::from_patch(&patch);
    let ne = lines.keyword("m1", 1)?[0];
    if ne != m1.n_elements() {
        return Err(Error::Parse(format!(
            "connectivity lists {ne} elements, control net has {}",
            m1.n_elements()
        )));
    }
    for expected in m1.elements() {
        let (k, f) = lines.next()?;
        let got: Vec<usize> = f.iter().map(|s| parse(k, s)).collect::<Result<_>>()?;
        if got != expected {
            return Err(Error::Parse(format!("line {k}: connectivity {got:?} differs from {expected:?}")));
        }
    }
    Ok((patch, m1))
}

pub fn write_patch(patch: &NurbsPatch, path: &Path) -> Result<()> {
    std::fs::write(path, patch_to_string(patch)).map_err(|e| Error::io(path, e))
}

pub fn read_patch(path: &Path) -> Result<(NurbsPatch, M1Mesh)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    patch_from_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{apply_skew, make_hemisphere, make_scordelis};

    #[test]
    fn round_trip_is_bit_exact() {
        for patch in [
            make_hemisphere(3, 2).unwrap(),
            apply_skew(&make_scordelis(4, 3).unwrap()),
        ] {
            let (back, m1) = patch_from_str(&patch_to_string(&patch)).unwrap();
            assert_eq!(back, patch);
            assert_eq!(m1, M1Mesh::from_patch(&patch));
        }
    }

    #[test]
    fn file_round_trip() {
        let patch = make_scordelis(2, 2).unwrap();
        let path = std::env::temp_dir().join(format!("klshell-io-{}.txt", std::process::id()));
        write_patch(&patch, &path).unwrap();
        let (back, _) = read_patch(&path).unwrap();
        std::fs::remove_file(&path).unwrap();
        assert_eq!(back, patch);
    }

    #[test]
    fn rejects_malformed_input() {
        let good = patch_to_string(&make_scordelis(2, 2).unwrap());
        assert!(matches!(patch_from_str(&good.replace("degrees", "degree")), Err(Error::Parse(_))));
        let truncated: String = good.lines().take(8).collect::<Vec<_>>().join("\n");
        assert!(matches!(patch_from_str(&truncated), Err(Error::Parse(_))));
        let bad_conn = good.replacen("\n0 1 ", "\n1 0 ", 1);
        assert!(matches!(patch_from_str(&bad_conn), Err(Error::Parse(_))));
    }
}
