use serde::{Deserialize, Serialize};

use super::{strip_lambda, EisensteinInt, Unit, LAMBDA};
use crate::arith::{factor_u64, is_prime, sqrt_mod};
use crate::error::{Error, Result};

/// `unit * lambda^lambda_exp * prod prime^exp` with primary primes in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimaryFactorization {
    pub unit: Unit,
    pub lambda_exp: u32,
    pub factors: Vec<(EisensteinInt, u32)>,
}

impl PrimaryFactorization {
    pub fn reassemble(&self) -> EisensteinInt {
        self.factors
            .iter()
            .fold(self.unit.value() * LAMBDA.pow(self.lambda_exp), |acc, &(p, e)| acc * p.pow(e))
    }

    pub fn is_squarefree(&self) -> bool {
        self.lambda_exp <= 1 && self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn primes(&self) -> impl Iterator<Item = EisensteinInt> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }
}

/// Mobius, Euler phi and distinct-prime count of an element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArithmeticData {
    pub mobius: i8,
    pub euler_phi: u128,
    pub omega: u32,
    pub is_squarefree: bool,
}

/// The two primary primes above `p = 1 mod 3`, the first with positive imaginary part.
pub fn split_rational_prime(p: u64) -> Result<(EisensteinInt, EisensteinInt)> {
    if p % 3 != 1 {
        return Err(Error::NotOneModThree(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let t = sqrt_mod(p - 3, p).expect("-3 is a square modulo p = 1 mod 3");
    // t = lambda mod some prime above p
    let cand = EisensteinInt::new(t as i128, 0) - LAMBDA;
    let g = super::gcd(EisensteinInt::from_int(p as i128), cand)?;
    Ok(orient(g))
}

fn orient(pi: EisensteinInt) -> (EisensteinInt, EisensteinInt) {
    if pi.b > 0 {
        (pi, pi.conj())
    } else {
        (pi.conj(), pi)
    }
}

/// Exhaustive search for `a^2 - ab + b^2 = p`; the small-prime oracle for splitting.
#[cfg(test)]
pub(crate) fn split_by_search(p: u64) -> Option<(EisensteinInt, EisensteinInt)> {
    let p = p as i128;
    let bound = 2 * (p as f64).sqrt() as i128 + 2;
    for b in 1..=bound {
        for a in -bound..=bound {
            let x = EisensteinInt::new(a, b);
            if x.norm() == p {
                let (_, prim) = super::primary_normalize(x).ok()?;
                return Some(orient(prim));
            }
        }
    }
    None
}

/// Factorization given the rational factorization of `N(c)`.
pub fn factor_with_norm(c: EisensteinInt, norm_factors: &[(u64, u32)]) -> Result<PrimaryFactorization> {
    let mut rest = c;
    let mut lambda_exp = 0;
    let mut factors = Vec::new();
    for &(p, e) in norm_factors {
        match p % 3 {
            0 => {
                let (k, r) = strip_lambda(rest);
                lambda_exp = k;
                rest = r;
            }
            2 => {
                let q = EisensteinInt::from_int(-(p as i128));
                for _ in 0..e / 2 {
                    rest = rest.div_exact(q).ok_or(Error::Numeric("inert prime division".into()))?;
                }
                factors.push((q, e / 2));
            }
            _ => {
                let (pi, pibar) = split_rational_prime(p)?;
                let mut used = 0;
                for prime in [pi, pibar] {
                    let mut k = 0;
                    while let Some(q) = rest.div_exact(prime) {
                        rest = q;
                        k += 1;
                    }
                    if k > 0 {
                        factors.push((prime, k));
                    }
                    used += k;
                }
                if used != e {
                    return Err(Error::Numeric(format!("lost a factor above {p} in {c}")));
                }
            }
        }
    }
    let unit = Unit::from_value(rest).ok_or_else(|| Error::Numeric(format!("non-unit cofactor {rest}")))?;
    factors.sort_by_key(|(p, _)| p.canonical_key());
    Ok(PrimaryFactorization { unit, lambda_exp, factors })
}

/// Factors `c != 0` through the rational factorization of its norm.
pub fn factor(c: EisensteinInt) -> Result<PrimaryFactorization> {
    if c.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let n = u64::try_from(c.try_norm()?).map_err(|_| Error::Overflow)?;
    factor_with_norm(c, &factor_u64(n)?)
}

/// Arithmetic data of a factored element.
pub fn arithmetic_data(f: &PrimaryFactorization) -> ArithmeticData {
    let mut phi: u128 = 1;
    let mut omega = 0;
    let mut sqf = true;
    let mut push = |n: u128, e: u32| {
        phi *= (n - 1) * n.pow(e - 1);
        omega += 1;
        sqf &= e == 1;
    };
    if f.lambda_exp > 0 {
        push(3, f.lambda_exp);
    }
    for &(p, e) in &f.factors {
        push(p.norm() as u128, e);
    }
    let mobius = if !sqf {
        0
    } else if omega % 2 == 0 {
        1
    } else {
        -1
    };
    ArithmeticData { mobius, euler_phi: phi, omega, is_squarefree: sqf }
}

pub fn multiplicative_functions(c: EisensteinInt) -> Result<ArithmeticData> {
    if !c.is_primary() {
        return Err(Error::NotPrimary(c.to_string()));
    }
    Ok(arithmetic_data(&factor(c)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;
    use proptest::prelude::*;

    fn e(a: i128, b: i128) -> EisensteinInt {
        EisensteinInt::new(a, b)
    }

    #[test]
    fn split_examples() {
        assert_eq!(split_rational_prime(7).unwrap(), (e(1, 3), e(-2, -3)));
        assert_eq!(split_rational_prime(13).unwrap(), (e(4, 3), e(1, -3)));
        assert_eq!(split_rational_prime(5), Err(Error::NotOneModThree(5)));
        assert!(matches!(split_rational_prime(91), Err(Error::NotPrime(_))));
    }

    #[test]
    fn split_matches_search_oracle() {
        for p in primes_up_to(10_000).into_iter().filter(|p| p % 3 == 1) {
            let fast = split_rational_prime(p).unwrap();
            assert_eq!(Some(fast), split_by_search(p), "p = {p}");
            assert_eq!(fast.0 * fast.1, EisensteinInt::from_int(p as i128));
            assert!(fast.0.is_primary() && fast.1.is_primary() && fast.0.b > 0);
        }
    }

    #[test]
    fn factor_examples() {
        let f = factor(e(7, 0)).unwrap();
        assert_eq!(f.unit, Unit::One);
        assert_eq!(f.factors, vec![(e(-2, -3), 1), (e(1, 3), 1)]);
        let f = factor(LAMBDA * LAMBDA).unwrap();
        assert_eq!((f.unit, f.lambda_exp, f.factors.len()), (Unit::One, 2, 0));
        let f = factor(e(-1, 0)).unwrap();
        assert_eq!((f.unit, f.lambda_exp, f.factors.len()), (Unit::NegOne, 0, 0));
        let f = factor(e(2, 0)).unwrap();
        assert_eq!((f.unit, f.factors.clone()), (Unit::NegOne, vec![(e(-2, 0), 1)]));
    }

    #[test]
    fn multiplicative_examples() {
        let pi = e(1, 3);
        let d = multiplicative_functions(pi).unwrap();
        assert_eq!((d.mobius, d.euler_phi), (-1, 6));
        let d = multiplicative_functions(pi * pi).unwrap();
        assert_eq!((d.mobius, d.is_squarefree), (0, false));
        let d = multiplicative_functions(e(1, 3) * e(4, 3)).unwrap();
        assert_eq!((d.mobius, d.euler_phi, d.omega), (1, 72, 2));
        assert!(multiplicative_functions(e(2, 0)).is_err());
    }

    fn units_mod(c: EisensteinInt) -> u128 {
        let n = c.norm();
        let mut seen = std::collections::HashSet::new();
        for x in 0..n {
            for y in 0..n {
                let r = e(x, y).rem(c).unwrap();
                if super::super::gcd(r, c).unwrap().is_unit() {
                    seen.insert(canonical_residue(r, c));
                }
            }
        }
        seen.len() as u128
    }

    fn canonical_residue(r: EisensteinInt, c: EisensteinInt) -> (i128, i128) {
        // residues are equal iff their difference is divisible by c
        let n = c.norm();
        let t = r * c.conj();
        (t.a.rem_euclid(n), t.b.rem_euclid(n))
    }

    #[test]
    fn phi_matches_unit_count_for_small_norms() {
        for a in -6i128..=6 {
            for b in -6i128..=6 {
                let c = e(a, b);
                if c.is_primary() && c.norm() <= 60 && c.norm() > 1 {
                    let d = multiplicative_functions(c).unwrap();
                    assert_eq!(d.euler_phi, units_mod(c), "c = {c}");
                }
            }
        }
    }

    fn mobius_oracle(c: EisensteinInt) -> i8 {
        // squarefree iff no prime square divides; prime count by trial division over small primes
        let n = c.norm();
        let mut rest = c;
        let mut count = 0;
        let bound = 2 * (n as f64).sqrt() as i128 + 2;
        for a in -bound..=bound {
            for b in -bound..=bound {
                let p = e(a, b);
                let np = p.norm();
                if np < 2 || np > n || !p.is_primary() && !(np == 3 && p == LAMBDA) {
                    continue;
                }
                let pf = factor_u64(np as u64).unwrap();
                let is_prime_elt = (pf.len() == 1 && pf[0].1 == 1) || (pf.len() == 1 && pf[0].1 == 2 && pf[0].0 % 3 == 2);
                if !is_prime_elt {
                    continue;
                }
                if let Some(q) = rest.div_exact(p) {
                    if q.div_exact(p).is_some() {
                        return 0;
                    }
                    rest = q;
                    count += 1;
                }
            }
        }
        if count % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn mobius_matches_divisor_search() {
        let mut checked = 0;
        for a in -40i128..=40 {
            for b in -40i128..=40 {
                let c = e(a, b);
                if c.is_primary() && c.norm() <= 400 {
                    assert_eq!(multiplicative_functions(c).unwrap().mobius, mobius_oracle(c), "c = {c}");
                    checked += 1;
                }
            }
        }
        assert!(checked > 100);
    }

    proptest! {
        #[test]
        fn factor_reassembles(a in -3_000i128..3_000, b in -3_000i128..3_000) {
            let c = e(a, b);
            prop_assume!(!c.is_zero());
            let f = factor(c).unwrap();
            prop_assert_eq!(f.reassemble(), c);
            let keys: Vec<_> = f.factors.iter().map(|(p, _)| p.canonical_key()).collect();
            let mut sorted = keys.clone();
            sorted.sort();
            sorted.dedup();
            prop_assert_eq!(keys, sorted);
            for (p, _) in &f.factors {
                prop_assert!(p.is_primary());
            }
        }
    }
}
