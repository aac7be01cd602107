//! Compactly supported test functions and their Mellin and radial Bessel transforms.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bessel::j0;
use super::quad::{integrate, QuadSettings};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WindowKind {
    /// `exp(1 - 1/(1 - t^2))` with `t` the affine image of `(l, r)` on `(-1, 1)`.
    Bump { l: f64, r: f64 },
    /// Indicator of `[l, r]`.
    Sharp { l: f64, r: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothWindow {
    pub kind: WindowKind,
    pub quad: QuadSettings,
}

/// `4 pi / (3 sqrt 3)`, the Bessel frequency scale of the hexagonal lattice.
pub const KAPPA: f64 = 4.0 * PI / (3.0 * 1.732_050_807_568_877_2);

fn check_support(l: f64, r: f64) -> Result<()> {
    if !(l.is_finite() && r.is_finite() && 0.0 <= l && l < r) {
        return Err(Error::InvalidArgument(format!("window support ({l}, {r})")));
    }
    Ok(())
}

impl SmoothWindow {
    pub fn bump(l: f64, r: f64) -> Result<Self> {
        check_support(l, r)?;
        Ok(SmoothWindow { kind: WindowKind::Bump { l, r }, quad: QuadSettings { abs_tol: 1e-13, max_depth: 40 } })
    }

    pub fn sharp(l: f64, r: f64) -> Result<Self> {
        check_support(l, r)?;
        Ok(SmoothWindow { kind: WindowKind::Sharp { l, r }, quad: QuadSettings { abs_tol: 1e-13, max_depth: 40 } })
    }

    pub fn with_quad(mut self, quad: QuadSettings) -> Self {
        self.quad = quad;
        self
    }

    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            WindowKind::Bump { l, r } | WindowKind::Sharp { l, r } => (l, r),
        }
    }

    pub fn is_sharp(&self) -> bool {
        matches!(self.kind, WindowKind::Sharp { .. })
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        match self.kind {
            WindowKind::Bump { l, r } => {
                if x <= l || x >= r {
                    return 0.0;
                }
                let t = (2.0 * x - l - r) / (r - l);
                (1.0 - 1.0 / (1.0 - t * t)).exp()
            }
            WindowKind::Sharp { l, r } => {
                if (l..=r).contains(&x) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// `int_0^inf W(x) x^(s-1) dx` to absolute tolerance `1e-10`.
    pub fn mellin(&self, s: Complex64) -> Result<Complex64> {
        let (l, r) = self.support();
        if l == 0.0 && s.re <= 0.0 {
            return Err(Error::InvalidArgument(format!("Mellin transform diverges at s = {s}")));
        }
        if self.is_sharp() {
            let lhs = if l == 0.0 { Complex64::new(0.0, 0.0) } else { Complex64::new(l, 0.0).powc(s) };
            return Ok((Complex64::new(r, 0.0).powc(s) - lhs) / s);
        }
        let set = QuadSettings { abs_tol: 1e-10_f64.min(self.quad.abs_tol), ..self.quad };
        let sm1 = s - 1.0;
        let re = integrate(|x| self.eval(x) * Complex64::new(x, 0.0).powc(sm1).re, l, r, set)?.0;
        let im = integrate(|x| self.eval(x) * Complex64::new(x, 0.0).powc(sm1).im, l, r, set)?.0;
        Ok(Complex64::new(re, im))
    }

    pub fn integral(&self) -> Result<f64> {
        Ok(self.mellin(Complex64::new(1.0, 0.0))?.re)
    }

    /// `V''(u) = int_0^inf r V(r^2) J0(kappa r u) dr`.
    pub fn vddot(&self, u: f64) -> Result<f64> {
        let (l, r) = self.support();
        let (a, b) = (l.sqrt(), r.sqrt());
        let w = KAPPA * u.abs();
        Ok(integrate(|rho| rho * self.eval(rho * rho) * j0(w * rho), a, b, self.quad)?.0)
    }

    /// `max |V''(u)| (1 + u)^k` over `u = 0, step, 2 step, ..., u_max`.
    pub fn decay_constant(&self, k: i32, u_max: f64, step: f64) -> Result<f64> {
        let n = (u_max / step).ceil() as usize;
        let mut best = 0f64;
        for i in 0..=n {
            let u = i as f64 * step;
            best = best.max(self.vddot(u)?.abs() * (1.0 + u).powi(k));
        }
        Ok(best)
    }
}
