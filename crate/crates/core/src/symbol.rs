//! The cubic residue symbol `(a/b)_3`.

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::arith::is_prime;
use crate::eisenstein::{primary_normalize, EisensteinInt, LAMBDA, OMEGA};
use crate::error::{Error, Result};

/// A value in `{0, 1, w, w^2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CubicValue {
    Zero,
    One,
    Omega,
    OmegaSq,
}

impl CubicValue {
    pub fn from_exponent(j: i64) -> CubicValue {
        match j.rem_euclid(3) {
            0 => CubicValue::One,
            1 => CubicValue::Omega,
            _ => CubicValue::OmegaSq,
        }
    }

    /// `j` with `self = w^j`, or `None` for zero.
    pub fn exponent(self) -> Option<u8> {
        match self {
            CubicValue::Zero => None,
            CubicValue::One => Some(0),
            CubicValue::Omega => Some(1),
            CubicValue::OmegaSq => Some(2),
        }
    }

    pub fn is_zero(self) -> bool {
        self == CubicValue::Zero
    }

    pub fn conj(self) -> CubicValue {
        match self.exponent() {
            None => CubicValue::Zero,
            Some(j) => CubicValue::from_exponent(-(j as i64)),
        }
    }

    pub fn pow(self, k: i64) -> CubicValue {
        match self.exponent() {
            None if k == 0 => CubicValue::One,
            None => CubicValue::Zero,
            Some(j) => CubicValue::from_exponent(j as i64 * k),
        }
    }

    pub fn to_eisenstein(self) -> EisensteinInt {
        match self.exponent() {
            None => EisensteinInt::ZERO,
            Some(j) => OMEGA.pow(j as u32),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        let h = 3f64.sqrt() / 2.0;
        match self {
            CubicValue::Zero => Complex64::new(0.0, 0.0),
            CubicValue::One => Complex64::new(1.0, 0.0),
            CubicValue::Omega => Complex64::new(-0.5, h),
            CubicValue::OmegaSq => Complex64::new(-0.5, -h),
        }
    }
}

impl Mul for CubicValue {
    type Output = CubicValue;
    fn mul(self, o: CubicValue) -> CubicValue {
        match (self.exponent(), o.exponent()) {
            (Some(i), Some(j)) => CubicValue::from_exponent((i + j) as i64),
            _ => CubicValue::Zero,
        }
    }
}

impl fmt::Display for CubicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CubicValue::Zero => "0",
            CubicValue::One => "1",
            CubicValue::Omega => "ω",
            CubicValue::OmegaSq => "ω²",
        })
    }
}

fn is_primary_prime(pi: EisensteinInt) -> bool {
    if !pi.is_primary() {
        return false;
    }
    let Ok(n) = u64::try_from(pi.norm()) else {
        return false;
    };
    if is_prime(n) {
        return n % 3 == 1;
    }
    // inert: pi = -q with q = 2 mod 3
    pi.b == 0 && pi.a < 0 && (-pi.a) % 3 == 2 && is_prime((-pi.a) as u64)
}

/// Euler's criterion: `(a/pi)_3 = a^((N(pi) - 1)/3) mod pi`.
pub fn symbol_euler_prime(a: EisensteinInt, pi: EisensteinInt) -> Result<CubicValue> {
    if !is_primary_prime(pi) {
        return Err(Error::NotPrime(pi.to_string()));
    }
    let x = a.rem(pi)?;
    if x.is_zero() {
        return Ok(CubicValue::Zero);
    }
    let mut e = (pi.norm() - 1) / 3;
    let mut base = x;
    let mut acc = EisensteinInt::ONE;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.try_mul(base)?.rem(pi)?;
        }
        base = base.try_mul(base)?.rem(pi)?;
        e >>= 1;
    }
    for j in 0..3 {
        if pi.divides(acc - OMEGA.pow(j)) {
            return Ok(CubicValue::from_exponent(j as i64));
        }
    }
    Err(Error::Numeric(format!("Euler power of {a} mod {pi} is not a cube root of unity")))
}

/// `(alpha2, alpha3)` with `d = 1 + alpha2 lambda^2 + alpha3 lambda^3 (mod 9)`.
pub fn supplement_exponents(d: EisensteinInt) -> Result<(i8, i8)> {
    if !d.is_primary() {
        return Err(Error::NotPrimary(d.to_string()));
    }
    let l2 = LAMBDA * LAMBDA;
    let l3 = l2 * LAMBDA;
    for a2 in -1i8..=1 {
        for a3 in -1i8..=1 {
            let t = d - (EisensteinInt::ONE + l2.scale(a2 as i128) + l3.scale(a3 as i128));
            if t.a % 9 == 0 && t.b % 9 == 0 {
                return Ok((a2, a3));
            }
        }
    }
    unreachable!("every primary class mod 9 has a representative")
}

/// `(a/b)_3` for primary `b` via reciprocity and the supplements; never factors `b`.
pub fn cubic_symbol(a: EisensteinInt, b: EisensteinInt) -> Result<CubicValue> {
    if !b.is_primary() {
        return Err(Error::NotPrimary(b.to_string()));
    }
    let (mut a, mut b) = (a, b);
    let mut exp: i64 = 0;
    loop {
        if b == EisensteinInt::ONE {
            return Ok(CubicValue::from_exponent(exp));
        }
        a = a.rem(b)?;
        if a.is_zero() {
            return Ok(CubicValue::Zero);
        }
        let (alpha2, alpha3) = supplement_exponents(b)?;
        while let Some(q) = a.div_lambda() {
            a = q;
            exp -= alpha3 as i64;
        }
        let (u, prim) = primary_normalize(a)?;
        // -1 is a cube, so only the power of w matters
        exp += u.omega_exponent() as i64 * alpha2 as i64;
        a = b;
        b = prim;
    }
}
