//! Rational integer helpers: modular arithmetic, primality, factoring and sieves.

use std::sync::OnceLock;

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse for coprime arguments.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| primes_up_to(TRIAL_LIMIT))
}

/// Brent's variant of Pollard rho with a fixed polynomial schedule.
fn pollard_brent(n: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    for c in 1..64u64 {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut y, mut r, mut q) = (2u64, 1u64, 1u64);
        let (mut g, mut x, mut ys) = (1u64, 0u64, 0u64);
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd_u64(q, n);
                k += 128;
            }
            r *= 2;
            if r > 1 << 26 {
                break;
            }
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd_u64(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g > 1 && g < n {
            return Some(g);
        }
    }
    None
}

/// Prime factorization of `n >= 1` as sorted `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Result<Vec<(u64, u32)>> {
    let original = n;
    let mut out = Vec::new();
    if n == 0 {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        let mut stack = vec![n];
        let mut big = Vec::new();
        while let Some(m) = stack.pop() {
            if is_prime(m) {
                big.push(m);
            } else {
                let d = pollard_brent(m).ok_or(Error::FactorBudget(original))?;
                stack.push(d);
                stack.push(m / d);
            }
        }
        big.sort_unstable();
        for p in big {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    Ok(out)
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Smallest primitive root modulo a prime `p`.
pub fn primitive_root(p: u64) -> Result<u64> {
    if p == 2 {
        return Ok(1);
    }
    let phi = p - 1;
    let fs = factor_u64(phi)?;
    (2..p)
        .find(|&g| fs.iter().all(|&(q, _)| pow_mod(g, phi / q, p) != 1))
        .ok_or_else(|| Error::NotPrime(p.to_string()))
}

/// All primes `<= n` by an Eratosthenes sieve over odd numbers.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let half = (n - 1) / 2;
    let mut composite = vec![false; half + 1];
    let mut i = 1;
    while (2 * i + 1) * (2 * i + 1) <= n {
        if !composite[i] {
            let p = 2 * i + 1;
            let mut j = (p * p - 1) / 2;
            while j <= half {
                composite[j] = true;
                j += p;
            }
        }
        i += 1;
    }
    let mut out = vec![2u64];
    out.extend((1..=half).filter(|&i| !composite[i]).map(|i| (2 * i + 1) as u64));
    out
}

/// Primes in `(lo, hi]`, sieved in fixed-size segments.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    const SEGMENT: u64 = 1 << 18;
    if hi <= lo || hi < 2 {
        return Vec::new();
    }
    let base = primes_up_to(hi.isqrt());
    let mut out = Vec::new();
    let mut start = lo + 1;
    while start <= hi {
        let end = (start + SEGMENT - 1).min(hi);
        let mut mark = vec![true; (end - start + 1) as usize];
        for &p in &base {
            if p * p > end {
                break;
            }
            let first = (p * p).max(start.div_ceil(p) * p);
            let mut j = first;
            while j <= end {
                mark[(j - start) as usize] = false;
                j += p;
            }
        }
        for (i, &m) in mark.iter().enumerate() {
            let v = start + i as u64;
            if m && v >= 2 {
                out.push(v);
            }
        }
        start = end + 1;
    }
    out
}

/// Smallest-prime-factor table for fast factoring of many small integers.
#[derive(Debug, Clone)]
pub struct SpfTable {
    spf: Vec<u32>,
}

impl SpfTable {
    pub fn new(limit: u64) -> Self {
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        for i in 2..=n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        SpfTable { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    pub fn factor(&self, mut n: u64) -> Vec<(u64, u32)> {
        debug_assert!((n as usize) < self.spf.len());
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            n /= p;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

/// Multiplication by a fixed factor modulo `p < 2^63` using a precomputed quotient.
#[derive(Debug, Clone, Copy)]
pub struct ShoupMul {
    w: u64,
    w_shoup: u64,
    p: u64,
}

impl ShoupMul {
    pub fn new(w: u64, p: u64) -> Self {
        let w = w % p;
        let w_shoup = (((w as u128) << 64) / p as u128) as u64;
        ShoupMul { w, w_shoup, p }
    }

    #[inline(always)]
    pub fn mul(&self, x: u64) -> u64 {
        let q = ((x as u128 * self.w_shoup as u128) >> 64) as u64;
        let r = x.wrapping_mul(self.w).wrapping_sub(q.wrapping_mul(self.p));
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_is_prime(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..20_000 {
            assert_eq!(is_prime(n), trial_is_prime(n), "n = {n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751));
    }

    #[test]
    fn segmented_sieve_matches_plain() {
        let all = primes_up_to(2_000_000);
        let seg = primes_in_range(0, 2_000_000);
        assert_eq!(all, seg);
        let mid: Vec<u64> = all.iter().copied().filter(|&p| p > 777_777).collect();
        assert_eq!(primes_in_range(777_777, 2_000_000), mid);
    }

    #[test]
    fn factors_semiprimes_beyond_trial_limit() {
        let p = 1_000_003u64;
        let q = 998_244_353u64;
        assert_eq!(factor_u64(p * q).unwrap(), vec![(p, 1), (q, 1)]);
        assert_eq!(factor_u64(p * p * 12).unwrap(), vec![(2, 2), (3, 1), (p, 2)]);
        assert_eq!(factor_u64(1).unwrap(), vec![]);
    }

    #[test]
    fn tonelli_shanks_on_minus_three() {
        for p in primes_up_to(20_000).into_iter().filter(|p| p % 3 == 1) {
            let t = sqrt_mod(p - 3, p).unwrap();
            assert_eq!(mul_mod(t, t, p), p - 3);
        }
        assert_eq!(sqrt_mod(2, 5), None);
    }

    #[test]
    fn primitive_roots_have_full_order() {
        for p in primes_up_to(3_000).into_iter().skip(1) {
            let g = primitive_root(p).unwrap();
            let mut x = 1;
            let mut order = 0;
            loop {
                x = mul_mod(x, g, p);
                order += 1;
                if x == 1 {
                    break;
                }
            }
            assert_eq!(order, p - 1);
        }
    }

    #[test]
    fn spf_table_factors() {
        let t = SpfTable::new(10_000);
        for n in 1..=10_000u64 {
            assert_eq!(t.factor(n), factor_u64(n).unwrap());
        }
    }

    proptest! {
        #[test]
        fn shoup_matches_u128(w in 0u64..(1 << 40), x in 0u64..(1 << 40), p in 2u64..(1 << 40)) {
            let x = x % p;
            prop_assert_eq!(ShoupMul::new(w, p).mul(x), mul_mod(w, x, p));
        }

        #[test]
        fn inverse_is_inverse(a in 1u64..1_000_000, m in 2u64..1_000_000) {
            match inv_mod(a, m) {
                Some(i) => prop_assert_eq!(mul_mod(a, i, m), 1 % m),
                None => prop_assert!(gcd_u64(a, m) != 1),
            }
        }
    }
}
