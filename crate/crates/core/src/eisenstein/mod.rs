//! Exact arithmetic in the Eisenstein integers `Z[w]`, `w^2 + w + 1 = 0`.

mod enumerate;
mod factor;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use enumerate::{enumerate_primary, primary_primes_up_to, Predicate};
pub use factor::{
    factor, multiplicative_functions, split_rational_prime, ArithmeticData, PrimaryFactorization,
};

/// `a + b w`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EisensteinInt {
    pub a: i128,
    pub b: i128,
}

/// The ramified prime `1 + 2w`, a square root of `-3`.
pub const LAMBDA: EisensteinInt = EisensteinInt { a: 1, b: 2 };
pub const OMEGA: EisensteinInt = EisensteinInt { a: 0, b: 1 };

impl EisensteinInt {
    pub const ZERO: Self = EisensteinInt { a: 0, b: 0 };
    pub const ONE: Self = EisensteinInt { a: 1, b: 0 };

    pub const fn new(a: i128, b: i128) -> Self {
        EisensteinInt { a, b }
    }

    pub const fn from_int(a: i128) -> Self {
        EisensteinInt { a, b: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn try_norm(&self) -> Result<i128> {
        let (a, b) = (self.a, self.b);
        a.checked_mul(a)
            .and_then(|aa| a.checked_mul(b).and_then(|ab| aa.checked_sub(ab)))
            .and_then(|t| b.checked_mul(b).and_then(|bb| t.checked_add(bb)))
            .ok_or(Error::Overflow)
    }

    /// `a^2 - ab + b^2`; panics on overflow.
    pub fn norm(&self) -> i128 {
        self.try_norm().expect("norm overflow")
    }

    /// Norm as `u64`, for the common case of norms below `2^64`.
    pub fn norm_u64(&self) -> u64 {
        u64::try_from(self.norm()).expect("norm exceeds u64")
    }

    pub fn conj(&self) -> Self {
        EisensteinInt::new(self.a - self.b, -self.b)
    }

    /// `x + conj(x) = 2a - b`.
    pub fn trace(&self) -> i128 {
        2 * self.a - self.b
    }

    pub fn to_complex(&self) -> Complex64 {
        let (a, b) = (self.a as f64, self.b as f64);
        Complex64::new(a - 0.5 * b, b * 3f64.sqrt() / 2.0)
    }

    pub fn abs(&self) -> f64 {
        (self.norm() as f64).sqrt()
    }

    pub fn try_add(self, o: Self) -> Result<Self> {
        Ok(EisensteinInt::new(
            self.a.checked_add(o.a).ok_or(Error::Overflow)?,
            self.b.checked_add(o.b).ok_or(Error::Overflow)?,
        ))
    }

    pub fn try_sub(self, o: Self) -> Result<Self> {
        Ok(EisensteinInt::new(
            self.a.checked_sub(o.a).ok_or(Error::Overflow)?,
            self.b.checked_sub(o.b).ok_or(Error::Overflow)?,
        ))
    }

    /// `(a + bw)(c + dw) = (ac - bd) + (ad + bc - bd) w`.
    pub fn try_mul(self, o: Self) -> Result<Self> {
        let ac = self.a.checked_mul(o.a).ok_or(Error::Overflow)?;
        let bd = self.b.checked_mul(o.b).ok_or(Error::Overflow)?;
        let ad = self.a.checked_mul(o.b).ok_or(Error::Overflow)?;
        let bc = self.b.checked_mul(o.a).ok_or(Error::Overflow)?;
        let re = ac.checked_sub(bd).ok_or(Error::Overflow)?;
        let im = ad
            .checked_add(bc)
            .and_then(|t| t.checked_sub(bd))
            .ok_or(Error::Overflow)?;
        Ok(EisensteinInt::new(re, im))
    }

    pub fn scale(self, k: i128) -> Self {
        EisensteinInt::new(
            self.a.checked_mul(k).expect("overflow"),
            self.b.checked_mul(k).expect("overflow"),
        )
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut acc = EisensteinInt::ONE;
        let mut base = self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        acc
    }

    /// Euclidean division with the quotient rounded coordinatewise, ties toward minus infinity.
    pub fn divrem(self, m: Self) -> Result<(Self, Self)> {
        if m.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        let n = m.try_norm()?;
        let t = self.try_mul(m.conj())?;
        let q = EisensteinInt::new(round_ties_down(t.a, n)?, round_ties_down(t.b, n)?);
        let r = self.try_sub(q.try_mul(m)?)?;
        Ok((q, r))
    }

    pub fn rem(self, m: Self) -> Result<Self> {
        Ok(self.divrem(m)?.1)
    }

    /// `self / m` if the division is exact.
    pub fn div_exact(self, m: Self) -> Option<Self> {
        if m.is_zero() {
            return None;
        }
        let n = m.try_norm().ok()?;
        let t = self.try_mul(m.conj()).ok()?;
        (t.a % n == 0 && t.b % n == 0).then(|| EisensteinInt::new(t.a / n, t.b / n))
    }

    pub fn divides(self, x: Self) -> bool {
        if self.is_zero() {
            return x.is_zero();
        }
        x.div_exact(self).is_some()
    }

    /// Divisible by `lambda` iff `a + b = 0 mod 3`.
    pub fn lambda_divides(&self) -> bool {
        (self.a + self.b).rem_euclid(3) == 0
    }

    /// Division by `lambda`; `x / lambda = -x lambda / 3` because `conj(lambda) = -lambda`.
    pub fn div_lambda(self) -> Option<Self> {
        if !self.lambda_divides() {
            return None;
        }
        let t = self * LAMBDA;
        Some(EisensteinInt::new(-t.a / 3, -t.b / 3))
    }

    /// `c = 1 mod 3`.
    pub fn is_primary(&self) -> bool {
        self.a.rem_euclid(3) == 1 && self.b.rem_euclid(3) == 0
    }

    pub fn is_unit(&self) -> bool {
        self.norm() == 1
    }

    /// Sort key used for every canonical ordering: norm, then coefficients.
    pub fn canonical_key(&self) -> (i128, i128, i128) {
        (self.norm(), self.a, self.b)
    }
}

fn floor_div(p: i128, n: i128) -> i128 {
    p.div_euclid(n)
}

/// Nearest integer to `p / n` (`n > 0`) with halves rounded down.
fn round_ties_down(p: i128, n: i128) -> Result<i128> {
    let num = p.checked_mul(2).and_then(|x| x.checked_sub(n)).ok_or(Error::Overflow)?;
    let den = n.checked_mul(2).ok_or(Error::Overflow)?;
    Ok(-floor_div(-num, den))
}

impl Add for EisensteinInt {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.try_add(o).expect("overflow in Z[w] addition")
    }
}

impl Sub for EisensteinInt {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.try_sub(o).expect("overflow in Z[w] subtraction")
    }
}

impl Mul for EisensteinInt {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.try_mul(o).expect("overflow in Z[w] multiplication")
    }
}

impl Neg for EisensteinInt {
    type Output = Self;
    fn neg(self) -> Self {
        EisensteinInt::new(-self.a, -self.b)
    }
}

impl From<i128> for EisensteinInt {
    fn from(a: i128) -> Self {
        EisensteinInt::from_int(a)
    }
}

impl From<i64> for EisensteinInt {
    fn from(a: i64) -> Self {
        EisensteinInt::from_int(a as i128)
    }
}

impl fmt::Display for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (a, 0) => write!(f, "{a}"),
            (0, b) => write!(f, "{}w", coef(b)),
            (a, b) if b < 0 => write!(f, "{a}-{}w", coef(-b)),
            (a, b) => write!(f, "{a}+{}w", coef(b)),
        }
    }
}

fn coef(b: i128) -> String {
    match b {
        1 => String::new(),
        -1 => "-".into(),
        _ => b.to_string(),
    }
}

impl fmt::Debug for EisensteinInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// Parses `a`, `bw`, `a+bw`, `a-bw` (also accepting `ω` for `w` and spaces).
impl FromStr for EisensteinInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse Eisenstein integer {s:?}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.replace('ω', "w");
        if t.is_empty() {
            return Err(bad());
        }
        let Some(body) = t.strip_suffix('w') else {
            return t.parse::<i128>().map(EisensteinInt::from_int).map_err(|_| bad());
        };
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (a_str, b_str) = match split {
            Some(i) => (&body[..i], &body[i..]),
            None => ("0", body),
        };
        let a = a_str.parse::<i128>().map_err(|_| bad())?;
        let b = match b_str {
            "" | "+" => 1,
            "-" => -1,
            s => s.parse::<i128>().map_err(|_| bad())?,
        };
        Ok(EisensteinInt::new(a, b))
    }
}

/// The six units, `(-w)^k` for `k = 0..6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Unit {
    One,
    NegOmega,
    OmegaSq,
    NegOne,
    Omega,
    NegOmegaSq,
}

impl Unit {
    pub const ALL: [Unit; 6] = [
        Unit::One,
        Unit::NegOmega,
        Unit::OmegaSq,
        Unit::NegOne,
        Unit::Omega,
        Unit::NegOmegaSq,
    ];

    /// Exponent `k` with `self = (-w)^k`.
    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_index(k: u8) -> Unit {
        Unit::ALL[(k % 6) as usize]
    }

    pub fn value(self) -> EisensteinInt {
        match self {
            Unit::One => EisensteinInt::new(1, 0),
            Unit::NegOmega => EisensteinInt::new(0, -1),
            Unit::OmegaSq => EisensteinInt::new(-1, -1),
            Unit::NegOne => EisensteinInt::new(-1, 0),
            Unit::Omega => EisensteinInt::new(0, 1),
            Unit::NegOmegaSq => EisensteinInt::new(1, 1),
        }
    }

    pub fn from_value(x: EisensteinInt) -> Option<Unit> {
        Unit::ALL.into_iter().find(|u| u.value() == x)
    }

    pub fn inverse(self) -> Unit {
        Unit::from_index((6 - self.index()) % 6)
    }

    /// `j` in `self = +-w^j`.
    pub fn omega_exponent(self) -> u8 {
        // (-w)^k = (-1)^k w^k
        self.index() % 3
    }

    pub fn is_negative(self) -> bool {
        self.index() % 2 == 1
    }
}

impl Mul for Unit {
    type Output = Unit;
    fn mul(self, o: Unit) -> Unit {
        Unit::from_index(self.index() + o.index())
    }
}

impl Mul<EisensteinInt> for Unit {
    type Output = EisensteinInt;
    fn mul(self, x: EisensteinInt) -> EisensteinInt {
        self.value() * x
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Unit::One => "1",
            Unit::NegOmega => "-w",
            Unit::OmegaSq => "w^2",
            Unit::NegOne => "-1",
            Unit::Omega => "w",
            Unit::NegOmegaSq => "-w^2",
        };
        f.write_str(s)
    }
}

/// Splits `c` (coprime to 3) as `u * c'` with `c'` primary.
pub fn primary_normalize(c: EisensteinInt) -> Result<(Unit, EisensteinInt)> {
    if c.is_zero() || c.lambda_divides() {
        return Err(Error::NotCoprimeToThree(c.to_string()));
    }
    for u in Unit::ALL {
        let cand = u.inverse() * c;
        if cand.is_primary() {
            return Ok((u, cand));
        }
    }
    unreachable!("an element coprime to 3 has a primary associate")
}

/// Strips the full power of `lambda`: `c = lambda^k * rest`.
pub fn strip_lambda(mut c: EisensteinInt) -> (u32, EisensteinInt) {
    let mut k = 0;
    if c.is_zero() {
        return (0, c);
    }
    while let Some(q) = c.div_lambda() {
        c = q;
        k += 1;
    }
    (k, c)
}

/// Greatest common divisor, normalized to `lambda^k * primary`.
pub fn gcd(x: EisensteinInt, y: EisensteinInt) -> Result<EisensteinInt> {
    if x.is_zero() && y.is_zero() {
        return Err(Error::GcdOfZeros);
    }
    let (mut r0, mut r1) = (x, y);
    while !r1.is_zero() {
        let r = r0.rem(r1)?;
        r0 = r1;
        r1 = r;
    }
    let (k, rest) = strip_lambda(r0);
    let (_, prim) = primary_normalize(rest)?;
    Ok(LAMBDA.pow(k) * prim)
}

/// `{x + y w : 0 <= x < N(c)/g, 0 <= y < g}` with `g = gcd(b, a - b)`, a complete residue system mod `c`.
pub fn residue_system(c: EisensteinInt) -> Result<Vec<EisensteinInt>> {
    let n = c.try_norm()?;
    if n == 0 {
        return Err(Error::ZeroDivisor);
    }
    let (mut g, mut h) = (c.b.abs(), (c.a - c.b).abs());
    while h != 0 {
        (g, h) = (h, g % h);
    }
    let d1 = n / g;
    Ok((0..g).flat_map(|y| (0..d1).map(move |x| EisensteinInt::new(x, y))).collect())
}
