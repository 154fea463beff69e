//! Open knot vectors and B-spline basis evaluation.

use crate::{Error, Result};

/// Open (clamped) knot vector of degree `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct KnotVector {
    degree: usize,
    knots: Vec<f64>,
    /// Span index `k` (with `knots[k] < knots[k + 1]`) of every nonzero span.
    spans: Vec<usize>,
}

/// Values and parametric derivatives of the `p + 1` basis functions that are
/// nonzero on one knot span.
#[derive(Clone, Debug, PartialEq)]
pub struct BasisEval {
    pub span: usize,
    pub values: Vec<f64>,
    pub d1: Vec<f64>,
    pub d2: Vec<f64>,
}

impl BasisEval {
    /// Global index of the first nonzero function.
    pub fn first(&self) -> usize {
        self.span + 1 - self.values.len()
    }
}

impl KnotVector {
    pub fn new(degree: usize, knots: Vec<f64>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidKnots("degree must be at least 1".into()));
        }
        if knots.len() < 2 * (degree + 1) {
            return Err(Error::InvalidKnots(format!(
                "{} knots are too few for degree {degree}",
                knots.len()
            )));
        }
        if knots.iter().any(|k| !k.is_finite()) {
            return Err(Error::InvalidKnots("non-finite knot".into()));
        }
        if knots.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::InvalidKnots("knots must be nondecreasing".into()));
        }
        let n = knots.len();
        let (lo, hi) = (knots[0], knots[n - 1]);
        let first_mult = knots.iter().take_while(|&&k| k == lo).count();
        let last_mult = knots.iter().rev().take_while(|&&k| k == hi).count();
        if lo == hi || first_mult != degree + 1 || last_mult != degree + 1 {
            return Err(Error::InvalidKnots(format!(
                "end knots must be repeated exactly {} times",
                degree + 1
            )));
        }
        let mut run = 1;
        for w in knots[degree..n - degree].windows(2) {
            run = if w[1] == w[0] { run + 1 } else { 1 };
            if run > degree && w[0] != lo && w[0] != hi {
                return Err(Error::InvalidKnots(format!(
                    "interior knot {} has multiplicity above {degree}",
                    w[0]
                )));
            }
        }
        let spans = (degree..n - degree - 1)
            .filter(|&k| knots[k] < knots[k + 1])
            .collect();
        Ok(Self {
            degree,
            knots,
            spans,
        })
    }

    /// Uniform open knot vector on [0, 1] with `elements` spans.
    pub fn uniform(degree: usize, elements: usize) -> Result<Self> {
        if elements == 0 {
            return Err(Error::InvalidKnots("at least one element required".into()));
        }
        let mut knots = vec![0.0; degree + 1];
        knots.extend((1..elements).map(|i| i as f64 / elements as f64));
        knots.extend(std::iter::repeat_n(1.0, degree + 1));
        Self::new(degree, knots)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Number of basis functions (control points along this direction).
    pub fn n_basis(&self) -> usize {
        self.knots.len() - self.degree - 1
    }

    /// Number of nonzero knot spans.
    pub fn n_elements(&self) -> usize {
        self.spans.len()
    }

    pub fn span_of_element(&self, e: usize) -> usize {
        self.spans[e]
    }

    /// Parametric interval of element `e`.
    pub fn element_bounds(&self, e: usize) -> (f64, f64) {
        let k = self.spans[e];
        (self.knots[k], self.knots[k + 1])
    }

    pub fn domain(&self) -> (f64, f64) {
        (self.knots[0], self.knots[self.knots.len() - 1])
    }

    /// Element containing `xi`; the right end of the domain belongs to the last element.
    pub fn find_element(&self, xi: f64) -> Result<usize> {
        let (lo, hi) = self.domain();
        if !(lo..=hi).contains(&xi) {
            return Err(Error::Domain { xi, lo, hi });
        }
        let e = self
            .spans
            .partition_point(|&k| self.knots[k + 1] <= xi)
            .min(self.spans.len() - 1);
        Ok(e)
    }

    pub fn find_span(&self, xi: f64) -> Result<usize> {
        Ok(self.spans[self.find_element(xi)?])
    }

    /// Greville abscissae, one per basis function.
    pub fn greville(&self) -> Vec<f64> {
        let p = self.degree;
        (0..self.n_basis())
            .map(|i| self.knots[i + 1..i + p + 1].iter().sum::<f64>() / p as f64)
            .collect()
    }

    /// Distinct knot values and their multiplicities.
    pub fn breaks(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize)> = Vec::new();
        for &k in &self.knots {
            match out.last_mut() {
                Some((v, m)) if *v == k => *m += 1,
                _ => out.push((k, 1)),
            }
        }
        out
    }

    /// Basis values and derivatives at `xi`.
    pub fn eval_basis(&self, xi: f64) -> Result<BasisEval> {
        let span = self.find_span(xi)?;
        Ok(self.eval_in_span(span, xi))
    }

    /// Basis values and derivatives at `xi` using the polynomial pieces of span
    /// `span`; `xi` may lie on either end of the span.
    pub fn eval_in_span(&self, span: usize, xi: f64) -> BasisEval {
        let p = self.degree;
        let mut out = BasisEval {
            span,
            values: vec![0.0; p + 1],
            d1: vec![0.0; p + 1],
            d2: vec![0.0; p + 1],
        };
        ders_basis(&self.knots, p, span, xi, &mut out);
        out
    }
}

/// Basis functions and their first two derivatives on span `i`
/// (Piegl and Tiller, algorithm A2.3).
fn ders_basis(u: &[f64], p: usize, i: usize, xi: f64, out: &mut BasisEval) {
    let mut ndu = vec![vec![0.0; p + 1]; p + 1];
    let mut left = vec![0.0; p + 1];
    let mut right = vec![0.0; p + 1];
    ndu[0][0] = 1.0;
    for j in 1..=p {
        left[j] = xi - u[i + 1 - j];
        right[j] = u[i + j] - xi;
        let mut saved = 0.0;
        for r in 0..j {
            ndu[j][r] = right[r + 1] + left[j - r];
            let temp = ndu[r][j - 1] / ndu[j][r];
            ndu[r][j] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu[j][j] = saved;
    }
    let nd = 2.min(p);
    let mut ders = vec![vec![0.0; p + 1]; 3];
    for j in 0..=p {
        ders[0][j] = ndu[j][p];
    }
    let mut a = [vec![0.0; p + 1], vec![0.0; p + 1]];
    for r in 0..=p {
        let (mut s1, mut s2) = (0usize, 1usize);
        a[0][0] = 1.0;
        for k in 1..=nd {
            let mut d = 0.0;
            let rk = r as isize - k as isize;
            let pk = p - k;
            if r >= k {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk as usize];
                d = a[s2][0] * ndu[rk as usize][pk];
            }
            let j1 = if rk >= -1 { 1 } else { (-rk) as usize };
            let j2 = if r as isize - 1 <= pk as isize { k - 1 } else { p - r };
            for j in j1..=j2 {
                let idx = (rk + j as isize) as usize;
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][idx];
                d += a[s2][j] * ndu[idx][pk];
            }
            if r <= pk {
                a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
                d += a[s2][k] * ndu[r][pk];
            }
            ders[k][r] = d;
            std::mem::swap(&mut s1, &mut s2);
        }
    }
    let mut factor = p as f64;
    for k in 1..=nd {
        for v in ders[k].iter_mut() {
            *v *= factor;
        }
        factor *= (p - k) as f64;
    }
    out.values.copy_from_slice(&ders[0]);
    out.d1.copy_from_slice(&ders[1]);
    out.d2.copy_from_slice(&ders[2]);
}
