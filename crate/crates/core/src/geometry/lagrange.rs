//! Bilinear Lagrange shape functions on the reference square [-1, 1]^2.

/// Corner coordinates in local node order.
pub const CORNERS: [[f64; 2]; 4] = [[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BilinearEval {
    pub values: [f64; 4],
    /// Derivatives with respect to the two local coordinates.
    pub d1: [[f64; 2]; 4],
    /// Mixed second derivative; the pure second derivatives vanish.
    pub d12: [f64; 4],
}

pub fn eval_bilinear(s: f64, t: f64) -> BilinearEval {
    let mut out = BilinearEval {
        values: [0.0; 4],
        d1: [[0.0; 2]; 4],
        d12: [0.0; 4],
    };
    for (a, c) in CORNERS.iter().enumerate() {
        let fs = 0.5 * (1.0 + c[0] * s);
        let ft = 0.5 * (1.0 + c[1] * t);
        out.values[a] = fs * ft;
        out.d1[a] = [0.5 * c[0] * ft, 0.5 * c[1] * fs];
        out.d12[a] = 0.25 * c[0] * c[1];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn corner_and_centroid_values() {
        assert_eq!(eval_bilinear(-1.0, -1.0).values, [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(eval_bilinear(0.0, 0.0).values, [0.25; 4]);
        for (a, c) in CORNERS.iter().enumerate() {
            let v = eval_bilinear(c[0], c[1]).values;
            for b in 0..4 {
                assert_eq!(v[b], if a == b { 1.0 } else { 0.0 });
            }
        }
    }

    proptest! {
        #[test]
        fn partition_of_unity(s in -1.0f64..=1.0, t in -1.0f64..=1.0) {
            let e = eval_bilinear(s, t);
            prop_assert!((e.values.iter().sum::<f64>() - 1.0).abs() < 1e-15);
            prop_assert!(e.d1.iter().map(|d| d[0]).sum::<f64>().abs() < 1e-15);
            prop_assert!(e.d1.iter().map(|d| d[1]).sum::<f64>().abs() < 1e-15);
        }
    }
}
