use num_complex::Complex64;

use super::phase::{Kahan, RootTable};
use crate::arith::{inv_mod, mul_mod, pow_mod, primitive_root, ShoupMul};
use crate::eisenstein::EisensteinInt;
use crate::error::{Error, Result};

const LANES: usize = 4;
const BLOCK: usize = 256;

/// `2 * sum_{k < m} cos(2 pi start h^k / p)`, the real sum over a coset of the cubic residues.
///
/// Four independent walks break the multiplication dependency chain; each lane sums
/// blocks naively and folds block totals into a compensated accumulator.
fn coset_sum(start: u64, h: u64, m: usize, p: u64, tab: &RootTable) -> f64 {
    let h4 = ShoupMul::new(pow_mod(h, LANES as u64, p), p);
    let mut y = [0u64; LANES];
    y[0] = start % p;
    for i in 1..LANES {
        y[i] = mul_mod(y[i - 1], h, p);
    }
    let mut acc = [Kahan::default(); LANES];
    let rounds = m / LANES;
    let mut done = 0;
    while done < rounds {
        let len = BLOCK.min(rounds - done);
        let mut part = [0f64; LANES];
        for _ in 0..len {
            for i in 0..LANES {
                part[i] += tab.cos(y[i]);
                y[i] = h4.mul(y[i]);
            }
        }
        for i in 0..LANES {
            acc[i].add(part[i]);
        }
        done += len;
    }
    for i in 0..m % LANES {
        acc[i].add(tab.cos(y[i]));
    }
    let mut total = Kahan::default();
    for a in acc {
        total.add(a.value());
    }
    2.0 * total.value()
}

/// Calibration data for the cubic character modulo a split prime.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Calibration {
    pub p: u64,
    /// `Tr(pi) mod p`
    pub t: u64,
    pub g: u64,
    /// `chi(g) = w^j0`
    pub j0: u8,
}

pub(crate) fn calibrate(pi: EisensteinInt) -> Result<Calibration> {
    let p = u64::try_from(pi.norm()).map_err(|_| Error::Overflow)?;
    if p % 3 != 1 || !crate::arith::is_prime(p) {
        return Err(Error::NotOneModThree(p));
    }
    let pm = p as i128;
    let a = pi.a.rem_euclid(pm) as u64;
    let b = pi.b.rem_euclid(pm) as u64;
    let t = pi.trace().rem_euclid(pm) as u64;
    // pi = 0 mod pi gives w = -a/b
    let binv = inv_mod(b, p).ok_or_else(|| Error::NotPrime(pi.to_string()))?;
    let w0 = (p - mul_mod(a, binv, p)) % p;
    let g = primitive_root(p)?;
    let cube = pow_mod(g, (p - 1) / 3, p);
    let j0 = if cube == w0 {
        1
    } else if cube == mul_mod(w0, w0, p) {
        2
    } else {
        return Err(Error::Numeric(format!("calibration failed for {pi}")));
    };
    Ok(Calibration { p, t, g, j0 })
}

/// Normalized Gauss sum at a split prime and its error bound, in `O(p)` time and `O(sqrt p)` memory.
pub(crate) fn gtilde_split(pi: EisensteinInt) -> Result<(Complex64, f64)> {
    let cal = calibrate(pi)?;
    let p = cal.p;
    let tab = RootTable::new(p);
    let h = pow_mod(cal.g, 3, p);
    let m = ((p - 1) / 6) as usize;
    let g0 = coset_sum(cal.t, h, m, p, &tab);
    let g1 = coset_sum(mul_mod(cal.t, cal.g, p), h, m, p, &tab);
    let g2 = -1.0 - g0 - g1;
    let w = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
    let (w1, w2) = if cal.j0 == 1 { (w, w.conj()) } else { (w.conj(), w) };
    let sp = (p as f64).sqrt();
    let value = (g0 + w1 * g1 + w2 * g2) / sp;
    let err = 3.0 * p as f64 * f64::EPSILON / sp;
    Ok((value, err))
}
