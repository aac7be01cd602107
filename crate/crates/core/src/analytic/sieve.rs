//! Upper-bound sieve weights supported on primary `d` with `N(d) <= y^2`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::eisenstein::{enumerate_primary, factor, EisensteinInt, Predicate};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "flavor", rename_all = "snake_case")]
pub enum SieveFlavor {
    /// Majorant of the indicator of `(n, P(w)) = 1`; requires `w >= y^2`.
    Rough { w: f64 },
    /// Majorant of `mu^2(n)` through `sum_{d^2 | n} lambda_d`.
    Squarefree,
}

#[derive(Clone, Debug)]
pub struct SieveWeights {
    pub y: f64,
    pub flavor: SieveFlavor,
    entries: Vec<(EisensteinInt, f64)>,
    index: HashMap<EisensteinInt, usize>,
}

/// `lambda_d = sum_{[e, f] = d} a(e) a(f)` over primary squarefree `e, f` with `N(e), N(f) <= y`, where
/// `a(e) = mu(e) (1 - log N(e) / log y)` (rough) or `a(e) = mu(e)` (squarefree).
pub fn sieve_weights(y: f64, flavor: SieveFlavor) -> Result<SieveWeights> {
    if !(y >= 2.0 && y.is_finite()) {
        return Err(Error::InvalidArgument(format!("sieve level y = {y} must be at least 2")));
    }
    if let SieveFlavor::Rough { w } = flavor {
        if w < y * y * (1.0 - 1e-12) {
            return Err(Error::InvalidArgument(format!("rough sieve needs w >= y^2, got w = {w}, y = {y}")));
        }
    }
    let ly = y.ln();
    let mut prime_ids: HashMap<EisensteinInt, u32> = HashMap::new();
    let mut primes: Vec<EisensteinInt> = Vec::new();
    let mut es: Vec<(Vec<u32>, f64)> = Vec::new();
    for e in enumerate_primary(0, y.floor() as u64, Predicate::Squarefree) {
        let mut ids: Vec<u32> = factor(e)?
            .primes()
            .map(|p| {
                *prime_ids.entry(p).or_insert_with(|| {
                    primes.push(p);
                    primes.len() as u32 - 1
                })
            })
            .collect();
        ids.sort_unstable();
        let mu = if ids.len() % 2 == 0 { 1.0 } else { -1.0 };
        let a = match flavor {
            SieveFlavor::Rough { .. } => mu * (1.0 - (e.norm() as f64).ln() / ly),
            SieveFlavor::Squarefree => mu,
        };
        if a != 0.0 {
            es.push((ids, a));
        }
    }
    let mut acc: HashMap<Vec<u32>, f64> = HashMap::new();
    for i in 0..es.len() {
        for j in i..es.len() {
            let (u, v) = (&es[i].0, &es[j].0);
            let mut lcm = Vec::with_capacity(u.len() + v.len());
            let (mut x, mut z) = (0, 0);
            while x < u.len() || z < v.len() {
                if z == v.len() || (x < u.len() && u[x] < v[z]) {
                    lcm.push(u[x]);
                    x += 1;
                } else if x == u.len() || v[z] < u[x] {
                    lcm.push(v[z]);
                    z += 1;
                } else {
                    lcm.push(u[x]);
                    x += 1;
                    z += 1;
                }
            }
            let mult = if i == j { 1.0 } else { 2.0 };
            *acc.entry(lcm).or_insert(0.0) += mult * es[i].1 * es[j].1;
        }
    }
    let mut entries: Vec<(EisensteinInt, f64)> = acc
        .into_iter()
        .filter(|(_, v)| *v != 0.0)
        .map(|(ids, v)| (ids.iter().fold(EisensteinInt::ONE, |d, &k| d * primes[k as usize]), v))
        .collect();
    entries.sort_by_key(|(d, _)| d.canonical_key());
    let index = entries.iter().enumerate().map(|(i, (d, _))| (*d, i)).collect();
    Ok(SieveWeights { y, flavor, entries, index })
}

impl SieveWeights {
    pub fn get(&self, d: EisensteinInt) -> f64 {
        self.index.get(&d).map_or(0.0, |&i| self.entries[i].1)
    }

    pub fn entries(&self) -> &[(EisensteinInt, f64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `sum_{d | n} lambda_d` (rough) or `sum_{d^2 | n} lambda_d` (squarefree).
    pub fn majorant(&self, n: EisensteinInt) -> f64 {
        self.entries
            .iter()
            .filter(|(d, _)| match self.flavor {
                SieveFlavor::Rough { .. } => d.divides(n),
                SieveFlavor::Squarefree => (*d * *d).divides(n),
            })
            .map(|(_, v)| v)
            .sum()
    }

    /// `sum lambda_d / N(d)^s` over `d` coprime to `exclude`.
    pub fn norm_sum(&self, s: f64, exclude: EisensteinInt) -> Result<f64> {
        let ps: Vec<EisensteinInt> = if exclude.is_unit() { Vec::new() } else { factor(exclude)?.primes().collect() };
        Ok(self
            .entries
            .iter()
            .filter(|(d, _)| ps.iter().all(|p| !p.divides(*d)))
            .map(|(d, v)| v / (d.norm() as f64).powf(s))
            .sum())
    }
}
