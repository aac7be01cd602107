//! Windows, integral transforms, Ramanujan sums, partial zeta values, Poisson
//! summation checks and sieve weights.

pub mod bessel;
pub mod poisson;
pub mod quad;
pub mod ramanujan;
pub mod sieve;
pub mod window;
pub mod zeta;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

pub use bessel::j0;
pub use poisson::{
    poisson_radial_check, poisson_twisted_check, PeriodicTable, PoissonOptions, PoissonReport,
};
pub use quad::{integrate, QuadSettings};
pub use ramanujan::{ramanujan_sum, ramanujan_sum_direct, tilde_c, RamanujanOracle};
pub use sieve::{sieve_weights, SieveFlavor, SieveWeights};
pub use window::{SmoothWindow, WindowKind};
pub use zeta::{dedekind_zeta_partial, ZetaValue};

/// Closed-form constants attached to the cubic Gauss sum asymptotics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    /// `(2 pi)^(2/3) / (3 Gamma(2/3))`
    pub c_smooth: f64,
    /// `2 (2 pi)^(2/3) / (5 Gamma(2/3))`
    pub c_sharp: f64,
    /// `3^(5/2) / 2`
    pub sigma: f64,
}

pub fn constants() -> Constants {
    let g = gamma(2.0 / 3.0);
    let t = TAU.powf(2.0 / 3.0);
    Constants { c_smooth: t / (3.0 * g), c_sharp: 2.0 * t / (5.0 * g), sigma: 3f64.powf(2.5) / 2.0 }
}
