use serde::{Deserialize, Serialize};

use crate::arith::primes_up_to;
use crate::eisenstein::{factor, EisensteinInt};
use crate::error::{Error, Result};

/// Primes of norm up to this bound enter the Euler product explicitly.
pub const EULER_CUTOFF: u64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZetaValue {
    pub value: f64,
    /// Bound on `|value - exact|` from the Euler product tail.
    pub err: f64,
}

/// `sum_{d = 1 mod 3, (d, r) = 1} N(d)^(-s)` as an Euler product over primary primes.
pub fn dedekind_zeta_partial(s: f64, r: EisensteinInt) -> Result<ZetaValue> {
    dedekind_zeta_partial_with_cutoff(s, r, EULER_CUTOFF)
}

pub fn dedekind_zeta_partial_with_cutoff(s: f64, r: EisensteinInt, cutoff: u64) -> Result<ZetaValue> {
    if s.is_nan() || s <= 1.0 {
        return Err(Error::InvalidArgument(format!("zeta needs s > 1, got {s}")));
    }
    if !r.is_primary() {
        return Err(Error::NotPrimary(r.to_string()));
    }
    if cutoff < 16 {
        return Err(Error::InvalidArgument(format!("Euler cutoff {cutoff} too small")));
    }
    let mut log = 0.0;
    for p in primes_up_to(cutoff) {
        if p % 3 == 1 {
            log -= 2.0 * (-(p as f64).powf(-s)).ln_1p();
        } else if p % 3 == 2 && p.saturating_mul(p) <= cutoff {
            log -= (-((p * p) as f64).powf(-s)).ln_1p();
        }
    }
    let mut value = log.exp();
    for pi in factor(r)?.primes() {
        let n = pi.norm_u64();
        if n <= cutoff {
            value *= 1.0 - (n as f64).powf(-s);
        }
    }
    // sum over prime ideals of norm > P of N^(-s) <= 2 int_P^inf t^(-s)/ln t dt, doubled for the
    // prime ideal count error and the higher Euler terms
    let p = cutoff as f64;
    let tail = 4.0 * p.powf(1.0 - s) / ((s - 1.0) * p.ln());
    Ok(ZetaValue { value, err: value * tail.exp_m1() + 64.0 * f64::EPSILON * value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eisenstein::{enumerate_primary, Predicate};

    #[test]
    fn euler_product_matches_direct_sum() {
        let z = dedekind_zeta_partial(2.0, EisensteinInt::ONE).unwrap();
        let t = 1_000_000u64;
        let direct: f64 = enumerate_primary(0, t, Predicate::All)
            .iter()
            .rev()
            .map(|d| (d.norm() as f64).powi(-2))
            .sum();
        // the primary lattice has density 2 pi / (9 sqrt 3) per unit of norm
        let tail = 2.0 * std::f64::consts::PI / (9.0 * 3f64.sqrt()) / t as f64;
        assert!((z.value - direct).abs() < 1e-6, "{} vs {}", z.value, direct);
        assert!((z.value - direct - tail).abs() < 3e-8);
        assert!(z.err < 1e-7);
    }

    #[test]
    fn monotone_and_euler_factor() {
        let one = EisensteinInt::ONE;
        let mut prev = f64::INFINITY;
        for s in [1.2, 1.5, 2.0, 3.0, 6.0] {
            let v = dedekind_zeta_partial_with_cutoff(s, one, 100_000).unwrap().value;
            assert!(v < prev && v > 1.0);
            prev = v;
        }
        let pi = EisensteinInt::new(1, 3);
        let a = dedekind_zeta_partial_with_cutoff(2.0, one, 100_000).unwrap().value;
        let b = dedekind_zeta_partial_with_cutoff(2.0, pi, 100_000).unwrap().value;
        assert!((b / (1.0 - 1.0 / 49.0) - a).abs() < 1e-15 * a);
        let c = dedekind_zeta_partial_with_cutoff(2.0, pi * pi * EisensteinInt::new(-2, 0), 100_000).unwrap().value;
        assert!((c / ((1.0 - 1.0 / 49.0) * (1.0 - 1.0 / 16.0)) - a).abs() < 1e-14 * a);
        assert!(dedekind_zeta_partial(1.0, one).is_err());
        assert!(dedekind_zeta_partial(0.5, one).is_err());
    }
}
