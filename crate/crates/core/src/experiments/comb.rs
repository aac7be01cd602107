use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::eisenstein::{enumerate_primary, factor, Predicate};
use crate::error::{Error, Result};

type Q = Ratio<i128>;

/// Outcome of the coefficient comparison in `log zeta_{>z} = log(1 + (zeta_{>z} - 1))`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CombReport {
    pub nmax: u64,
    pub w: u64,
    pub z: u64,
    pub checked: usize,
    pub max_discrepancy: Q,
    pub mismatches: usize,
    /// Mismatches when `c = 1` is dropped for every `k`, not only `k = 0`.
    pub literal_mismatches: usize,
}

impl CombReport {
    pub fn exact(&self) -> bool {
        self.max_discrepancy == Q::from_integer(0)
    }
}

/// Ordered factorizations of `prod p^e` into `j` factors, none trivial.
fn ordered_factorizations(exps: &[u32], j: u32) -> i128 {
    // inclusion-exclusion over the factors forced to be 1
    (0..=j)
        .map(|i| {
            let free = j - i;
            let ways: i128 = exps.iter().map(|&e| stars_and_bars(e, free)).product();
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * binom(j, i) * ways
        })
        .sum()
}

/// Ways to split `e` among `k` ordered slots.
fn stars_and_bars(e: u32, k: u32) -> i128 {
    if k == 0 {
        return (e == 0) as i128;
    }
    binom(e + k - 1, k - 1)
}

fn binom(n: u32, k: u32) -> i128 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k) as i128).fold(1, |acc, i| acc * (n as i128 - i) / (i + 1))
}

/// Compares both sides coefficient by coefficient for every primary `n` with `N(n) <= nmax`.
pub fn comb_identity_check(nmax: u64, w: u64, z: u64) -> Result<CombReport> {
    if !(2 <= w && w < z && z <= nmax) {
        return Err(Error::InvalidArgument(format!("need 2 <= w < z <= nmax, got w = {w}, z = {z}, nmax = {nmax}")));
    }
    let mut report = CombReport {
        nmax,
        w,
        z,
        checked: 0,
        max_discrepancy: Q::from_integer(0),
        mismatches: 0,
        literal_mismatches: 0,
    };
    for n in enumerate_primary(0, nmax, Predicate::All) {
        let f = factor(n)?;
        let norms: Vec<(u64, u32)> = f.factors.iter().map(|&(p, e)| (p.norm_u64(), e)).collect();
        let lhs = match norms.as_slice() {
            [(q, l)] if *q > z => Q::new(1, *l as i128),
            _ => Q::from_integer(0),
        };
        let (rhs, literal) = rhs_coefficient(&norms, w, z);
        let diff = lhs - rhs;
        let d = if diff < Q::from_integer(0) { -diff } else { diff };
        if d > report.max_discrepancy {
            report.max_discrepancy = d;
        }
        report.mismatches += (d != Q::from_integer(0)) as usize;
        report.literal_mismatches += (lhs != literal) as usize;
        report.checked += 1;
    }
    Ok(report)
}

/// Right-hand coefficient, and the same with `c = 1` excluded at every `k`.
fn rhs_coefficient(norms: &[(u64, u32)], w: u64, z: u64) -> (Q, Q) {
    let zero = Q::from_integer(0);
    if norms.is_empty() {
        return (zero, zero);
    }
    let mut first = zero;
    let mut literal = zero;
    if norms.iter().all(|&(q, _)| q > w) {
        let mid: Vec<u32> = norms.iter().filter(|&&(q, _)| q <= z).map(|&(_, e)| e).collect();
        // subsets S of the distinct mid primes; k = |S| with k! orderings cancelling 1/k!
        for mask in 0u32..(1 << mid.len()) {
            let k = mask.count_ones();
            let c_is_one = norms.iter().all(|&(q, _)| q <= z)
                && mid.iter().enumerate().all(|(i, &e)| mask & (1 << i) != 0 && e == 1);
            let term = Q::from_integer(if k % 2 == 0 { 1 } else { -1 });
            if !(c_is_one && k == 0) {
                first += term;
            }
            if !c_is_one {
                literal += term;
            }
        }
    }
    let mut tail = zero;
    if norms.iter().all(|&(q, _)| q > z) {
        let exps: Vec<u32> = norms.iter().map(|&(_, e)| e).collect();
        let omega: u32 = exps.iter().sum();
        for j in 2..=omega {
            let sign = if j % 2 == 1 { 1 } else { -1 };
            tail += Q::new(sign, j as i128) * Q::from_integer(ordered_factorizations(&exps, j));
        }
    }
    (first + tail, literal + tail)
}
