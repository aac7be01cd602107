use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{patterson_scale, ExperimentReport};
use crate::analytic::{constants, SmoothWindow};
use crate::arith::primes_up_to;
use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};
use crate::gauss::{gauss_sum_direct, prime_sweep, PrimeGauss};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "window", rename_all = "snake_case")]
pub enum PattersonWindow {
    /// `1_{p <= X}`
    Sharp,
    /// `W(p / X)`
    Smooth(SmoothWindow),
}

impl PattersonWindow {
    fn reach(&self) -> f64 {
        match self {
            PattersonWindow::Sharp => 1.0,
            PattersonWindow::Smooth(w) => w.support().1,
        }
    }

    fn weight(&self, t: f64) -> f64 {
        match self {
            PattersonWindow::Sharp => (t <= 1.0) as u8 as f64,
            PattersonWindow::Smooth(w) => w.eval(t),
        }
    }
}

/// `10^2, 10^3, ...` up to `x`, followed by `x` itself.
pub fn decade_checkpoints(x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 100u64;
    while d <= x {
        out.push(d);
        d = match d.checked_mul(10) {
            Some(v) => v,
            None => break,
        };
    }
    if out.last() != Some(&x) {
        out.push(x);
    }
    out
}

pub fn patterson_sum(x: u64, window: PattersonWindow) -> Result<ExperimentReport> {
    let reach = (window.reach() * x as f64).ceil() as u64;
    patterson_sum_from_sweep(x, window, &prime_sweep(reach)?)
}

/// `sum_p S_p / (2 sqrt p) W(p / X)` at each decade checkpoint, against the conjectured main term.
pub fn patterson_sum_from_sweep(x: u64, window: PattersonWindow, sweep: &[PrimeGauss]) -> Result<ExperimentReport> {
    let start = Instant::now();
    if x < 7 {
        return Err(Error::InvalidArgument(format!("Patterson sum needs X >= 7, got {x}")));
    }
    let c = constants();
    let reach = (window.reach() * x as f64).ceil() as u64;
    if sweep.last().is_none_or(|r| r.p < largest_split_prime(reach)) {
        return Err(Error::InvalidArgument(format!("sweep does not reach {reach}")));
    }
    let (factor, prov) = match window {
        PattersonWindow::Sharp => (c.c_sharp, "2 (2 pi)^(2/3) / (5 Gamma(2/3)) X^(5/6) / log X".to_string()),
        PattersonWindow::Smooth(w) => (
            c.c_smooth * w.mellin(Complex64::new(5.0 / 6.0, 0.0))?.re,
            "(2 pi)^(2/3) / (3 Gamma(2/3)) W~(5/6) X^(5/6) / log X".to_string(),
        ),
    };
    let mut report = ExperimentReport::new("patterson", json!({ "x": x, "window": window }), vec![prov]);
    let checkpoints = decade_checkpoints(x);
    match window {
        PattersonWindow::Sharp => {
            // one pass with running sums
            let mut acc = 0.0;
            let mut err = 0.0;
            let mut it = sweep.iter().peekable();
            for &cp in &checkpoints {
                while let Some(r) = it.next_if(|r| r.p <= cp) {
                    acc += r.value.re;
                    err += r.err;
                }
                report.push(cp as f64, Complex64::new(acc, 0.0), factor * patterson_scale(cp as f64), err);
            }
        }
        PattersonWindow::Smooth(_) => {
            for &cp in &checkpoints {
                let xf = cp as f64;
                let mut acc = 0.0;
                let mut err = 0.0;
                for r in sweep {
                    let w = window.weight(r.p as f64 / xf);
                    if w != 0.0 {
                        acc += r.value.re * w;
                        err += r.err * w;
                    }
                }
                report.push(xf, Complex64::new(acc, 0.0), factor * patterson_scale(xf), err);
            }
        }
    }
    Ok(report.finish(start))
}

fn largest_split_prime(x: u64) -> u64 {
    (7..=x).rev().find(|&p| p % 3 == 1 && crate::arith::is_prime(p)).unwrap_or(7)
}

/// `g^k` from `g` at a primary prime, reducing `k mod 3` through `g^3 = -pi/|pi|`.
fn prime_power(pi: EisensteinInt, g: Complex64, k: i64) -> Complex64 {
    let unit = -pi.to_complex() / pi.abs();
    let (l, base) = match k.rem_euclid(3) {
        1 => ((k - 1) / 3, g),
        2 => ((k + 1) / 3, g.conj()),
        _ => (k / 3, Complex64::new(1.0, 0.0)),
    };
    unit.powi(l as i32) * base
}

pub fn power_sum_k(k: i64, x: u64, window: &SmoothWindow) -> Result<ExperimentReport> {
    let reach = (window.support().1 * x as f64).ceil() as u64;
    power_sum_k_from_sweep(k, x, window, &prime_sweep(reach)?)
}

/// `sum_{pi primary prime} g(pi)^k W(N(pi)/X)` over split primes (both conjugates) and inert primes.
pub fn power_sum_k_from_sweep(k: i64, x: u64, window: &SmoothWindow, sweep: &[PrimeGauss]) -> Result<ExperimentReport> {
    let start = Instant::now();
    if k == 0 {
        return Err(Error::InvalidArgument("power sums need k != 0".into()));
    }
    let xf = x as f64;
    let reach = (window.support().1 * xf).ceil() as u64;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for r in sweep.iter().take_while(|r| r.p <= reach) {
        let w = window.eval(r.p as f64 / xf);
        if w != 0.0 {
            acc += (prime_power(r.pi, r.value, k) + prime_power(r.pi.conj(), r.value.conj(), k)) * w;
            err += 2.0 * (k.unsigned_abs() as f64 + 1.0) * r.err * w;
        }
    }
    for q in primes_up_to(reach.isqrt()).into_iter().filter(|q| q % 3 == 2) {
        let w = window.eval((q * q) as f64 / xf);
        if w != 0.0 {
            let pi = EisensteinInt::from_int(-(q as i128));
            let g = gauss_sum_direct(pi, EisensteinInt::ONE)?;
            acc += prime_power(pi, g.value, k) * w;
            err += (k.unsigned_abs() as f64 + 1.0) * g.err_bound * w;
        }
    }
    let scale = patterson_scale(xf);
    let mut report = ExperimentReport::new(
        "powersum",
        json!({ "k": k, "x": x, "window": window }),
        vec!["normalizer X^(5/6) / log X".into()],
    );
    report.checkpoints.push(xf);
    report.observed.push(acc);
    report.predicted.push(scale);
    report.ratio.push(Some(acc.norm() / scale));
    report.err_bounds.push(err);
    Ok(report.finish(start))
}
