use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::eisenstein::EisensteinInt;

/// `e(k/n)` for every residue `k mod n`, stored as two tables of size about `sqrt(n)`.
///
/// `e(k/n) = e(hi*B/n) e(lo/n)` with `k = hi*B + lo`.
#[derive(Clone, Debug)]
pub struct RootTable {
    n: u64,
    shift: u32,
    mask: u64,
    hi: Vec<[f64; 2]>,
    lo: Vec<[f64; 2]>,
}

impl RootTable {
    pub fn new(n: u64) -> Self {
        assert!(n > 0);
        let shift = (64 - n.leading_zeros()).div_ceil(2);
        let block = 1u64 << shift;
        let root = |k: u64| {
            let (s, c) = (TAU * (k % n) as f64 / n as f64).sin_cos();
            [c, s]
        };
        let lo = (0..block).map(root).collect();
        let hi = (0..=(n >> shift)).map(|h| root(h << shift)).collect();
        RootTable { n, shift, mask: block - 1, hi, lo }
    }

    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// `cos(2 pi k / n)` for `k < n`.
    #[inline(always)]
    pub fn cos(&self, k: u64) -> f64 {
        let h = &self.hi[(k >> self.shift) as usize];
        let l = &self.lo[(k & self.mask) as usize];
        h[0] * l[0] - h[1] * l[1]
    }

    /// `e(k/n)` for any integer `k`.
    #[inline]
    pub fn get(&self, k: i128) -> Complex64 {
        let k = k.rem_euclid(self.n as i128) as u64;
        let h = &self.hi[(k >> self.shift) as usize];
        let l = &self.lo[(k & self.mask) as usize];
        Complex64::new(h[0] * l[0] - h[1] * l[1], h[0] * l[1] + h[1] * l[0])
    }
}

/// `e(T/N)` with `T = Tr(x conj(c))`, `N = N(c)`, i.e. the character `e(Tr(x/c))`.
pub fn additive_character(x: EisensteinInt, c: EisensteinInt) -> Complex64 {
    let n = c.norm();
    assert!(n > 0, "additive character modulo zero");
    let t = (x * c.conj()).trace().rem_euclid(n);
    let (s, co) = (TAU * t as f64 / n as f64).sin_cos();
    Complex64::new(co, s)
}

/// Phase index `Tr(x conj(c)) mod N(c)`.
pub fn trace_phase(x: EisensteinInt, c: EisensteinInt) -> u64 {
    (x * c.conj()).trace().rem_euclid(c.norm()) as u64
}

/// Compensated complex accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanComplex {
    sum: Complex64,
    comp: Complex64,
}

impl KahanComplex {
    #[inline]
    pub fn add(&mut self, x: Complex64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> Complex64 {
        self.sum
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    #[inline(always)]
    pub fn add(&mut self, x: f64) {
        let y = x - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}
