//! Ramanujan sums modulo squarefree primary `d`.

use num_complex::Complex64;

use crate::eisenstein::{factor, residue_system, EisensteinInt, LAMBDA, OMEGA};
use crate::error::{Error, Result};
use crate::gauss::{KahanComplex, RootTable};

pub(crate) fn squarefree_primes(d: EisensteinInt) -> Result<Vec<EisensteinInt>> {
    if !d.is_primary() {
        return Err(Error::NotPrimary(d.to_string()));
    }
    let f = factor(d)?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree(d.to_string()));
    }
    Ok(f.primes().collect())
}

/// `c_d(k) = mu(d/(d,k)) phi(d) / phi(d/(d,k))`.
pub fn ramanujan_sum(d: EisensteinInt, k: EisensteinInt) -> Result<i128> {
    Ok(ramanujan_from_primes(&squarefree_primes(d)?, k))
}

pub(crate) fn ramanujan_from_primes(primes: &[EisensteinInt], k: EisensteinInt) -> i128 {
    primes.iter().map(|p| if p.divides(k) { p.norm() - 1 } else { -1 }).product()
}

/// Reduced residues modulo a squarefree primary `d`, for direct evaluation of `c_d(k)`.
#[derive(Clone, Debug)]
pub struct RamanujanOracle {
    d: EisensteinInt,
    coprime: Vec<(i128, i128)>,
    table: RootTable,
}

impl RamanujanOracle {
    pub fn new(d: EisensteinInt) -> Result<Self> {
        let primes = squarefree_primes(d)?;
        let coprime = residue_system(d)?
            .into_iter()
            .filter(|&x| primes.iter().all(|p| !p.divides(x)))
            .map(|x| (x.a, x.b))
            .collect();
        Ok(RamanujanOracle { d, coprime, table: RootTable::new(d.norm_u64()) })
    }

    /// `sum_{x mod d, (x, d) = 1} e(Tr(k x / d))`.
    pub fn eval(&self, k: EisensteinInt) -> Complex64 {
        let w = k * self.d.conj();
        let (t1, t2) = (w.trace(), (w * OMEGA).trace());
        let mut acc = KahanComplex::default();
        for &(x, y) in &self.coprime {
            acc.add(self.table.get(x * t1 + y * t2));
        }
        acc.value()
    }
}

pub fn ramanujan_sum_direct(d: EisensteinInt, k: EisensteinInt) -> Result<Complex64> {
    Ok(RamanujanOracle::new(d)?.eval(k))
}

/// `e(Tr(-k / (3 lambda)))`, a ninth root of unity since `-1/(3 lambda) = lambda/9`.
pub fn cube_phase(k: EisensteinInt) -> Complex64 {
    let t = (k * LAMBDA).trace().rem_euclid(9);
    Complex64::from_polar(1.0, std::f64::consts::TAU * t as f64 / 9.0)
}

/// `e(-k/(3 lambda)) c_d(-k)`.
pub fn tilde_c(d: EisensteinInt, k: EisensteinInt) -> Result<Complex64> {
    Ok(cube_phase(k) * ramanujan_sum(d, -k)? as f64)
}
