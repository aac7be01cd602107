//! Bessel function of the first kind of order zero.

use std::f64::consts::{FRAC_PI_4, PI};

/// Below this argument the power series is used; above it the Hankel expansion.
pub const SWITCHOVER: f64 = 12.0;

fn series(x: f64) -> f64 {
    let q = -0.25 * x * x;
    let mut term = 1f64;
    let mut sum = 1f64;
    let mut k = 1.0;
    while term.abs() > 1e-18 * sum.abs().max(1e-3) || k < 3.0 {
        term *= q / (k * k);
        sum += term;
        k += 1.0;
    }
    sum
}

fn hankel(x: f64) -> f64 {
    let mut p = 1.0;
    let mut q = 0.0;
    let mut b = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..60 {
        let kf = k as f64;
        b *= (2.0 * kf - 1.0).powi(2) / (8.0 * kf * x);
        if b > prev || b < 1e-17 {
            break;
        }
        prev = b;
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * b;
        } else {
            q -= sign * b;
        }
    }
    let chi = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

pub fn j0(x: f64) -> f64 {
    let x = x.abs();
    if x < SWITCHOVER {
        series(x)
    } else {
        hankel(x)
    }
}
