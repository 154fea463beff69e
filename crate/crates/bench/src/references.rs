//! Published reference values for the benchmark problems.
//!
//! Values were obtained with fine quintic meshes unless noted. Stresses of
//! the roof and the hemisphere are in units where `E₀ = 10⁸` and `E₀ = 10⁷`,
//! the classical parameter sets; displacements do not depend on `E₀`.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Reference {
    pub key: &'static str,
    pub value: f64,
    pub note: &'static str,
}

pub const CANTILEVER_NL_U_A: Reference = Reference {
    key: "cantilever.nonlinear.u_a",
    value: -10.1288687743,
    note: "tip displacement, qR³/(ET³) = -1, R/T = 1000, q = -1, L = 1",
};
pub const CANTILEVER_NL_DELTA_SIGMA: Reference = Reference {
    key: "cantilever.nonlinear.delta_sigma",
    value: 4.57049,
    note: "range of the effective membrane stress",
};
pub const CANTILEVER_NL_DELTA_M: Reference = Reference {
    key: "cantilever.nonlinear.delta_m",
    value: 11.319864,
    note: "range of the bending moment",
};
pub const CANTILEVER_NL_DELTA_N: Reference = Reference {
    key: "cantilever.nonlinear.delta_n",
    value: 1.90083,
    note: "range of the Cauchy membrane stress",
};
pub const SCORDELIS_U_A_100: Reference = Reference {
    key: "scordelis.linear.rt100.u_a",
    value: 0.3005924566,
    note: "downward displacement at the free edge midpoint, R/T = 100",
};
pub const SCORDELIS_U_A_10K: Reference = Reference {
    key: "scordelis.linear.rt1e4.u_a",
    value: 0.32620099,
    note: "downward displacement at the free edge midpoint, R/T = 10^4",
};
pub const SCORDELIS_SIGMA11_MIN_100: Reference = Reference {
    key: "scordelis.linear.rt100.sigma11_min",
    value: -3488.3750,
    note: "minimum hoop membrane stress, R/T = 100, E0 = 1e8",
};
pub const SCORDELIS_SIGMA11_MIN_10K: Reference = Reference {
    key: "scordelis.linear.rt1e4.sigma11_min",
    value: -0.331359,
    note: "minimum hoop membrane stress, R/T = 10^4, E0 = 1e8",
};
pub const HEMISPHERE_U_A: Reference = Reference {
    key: "hemisphere.linear.u_a",
    value: 0.09352155,
    note: "radial displacement at A (u_B = -u_A), R/T = 250",
};
pub const HEMISPHERE_SIGMA22_MAX: Reference = Reference {
    key: "hemisphere.linear.sigma22_max",
    value: 3.3086,
    note: "maximum meridional membrane stress, R/T = 250, E0 = 1e7",
};
pub const HEMISPHERE_NL_U_A: Reference = Reference {
    key: "hemisphere.nonlinear.u_a",
    value: 3.407360,
    note: "radial displacement at A, load x100, R/T = 250",
};
pub const HEMISPHERE_NL_U_B: Reference = Reference {
    key: "hemisphere.nonlinear.u_b",
    value: -5.863051,
    note: "radial displacement at B, load x100, R/T = 250",
};

pub const ALL: [Reference; 12] = [
    CANTILEVER_NL_U_A,
    CANTILEVER_NL_DELTA_SIGMA,
    CANTILEVER_NL_DELTA_M,
    CANTILEVER_NL_DELTA_N,
    SCORDELIS_U_A_100,
    SCORDELIS_U_A_10K,
    SCORDELIS_SIGMA11_MIN_100,
    SCORDELIS_SIGMA11_MIN_10K,
    HEMISPHERE_U_A,
    HEMISPHERE_SIGMA22_MAX,
    HEMISPHERE_NL_U_A,
    HEMISPHERE_NL_U_B,
];

pub fn find(key: &str) -> Option<Reference> {
    ALL.iter().copied().find(|r| r.key == key)
}
