use super::{split_rational_prime, EisensteinInt};
use crate::arith::{factor_u64, primes_up_to, SpfTable};

/// Filter applied by [`enumerate_primary`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Predicate {
    All,
    Prime,
    Squarefree,
    /// Every prime factor has norm greater than `w`.
    Rough(u64),
}

const SPF_LIMIT: u64 = 50_000_000;

/// Every primary `c` with `lo < N(c) <= hi` satisfying `pred`, ordered by `(norm, a, b)`.
pub fn enumerate_primary(lo: u64, hi: u64, pred: Predicate) -> Vec<EisensteinInt> {
    if hi <= lo {
        return Vec::new();
    }
    if pred == Predicate::Prime {
        let mut out: Vec<_> = primary_primes_up_to(hi)
            .into_iter()
            .filter(|c| c.norm_u64() > lo)
            .collect();
        out.sort_by_key(|c| c.canonical_key());
        return out;
    }
    let spf = (pred != Predicate::All && hi <= SPF_LIMIT).then(|| SpfTable::new(hi));
    let mut out = Vec::new();
    for c in primaries_in_box(hi) {
        let n = c.norm_u64();
        if n <= lo || n > hi {
            continue;
        }
        let keep = match pred {
            Predicate::All => true,
            _ => {
                let fs = match &spf {
                    Some(t) => t.factor(n),
                    None => factor_u64(n).expect("norm factorization"),
                };
                match pred {
                    Predicate::Squarefree => squarefree_from_norm(c, &fs),
                    Predicate::Rough(w) => rough_from_norm(&fs, w),
                    _ => unreachable!(),
                }
            }
        };
        if keep {
            out.push(c);
        }
    }
    out.sort_by_key(|c| c.canonical_key());
    out
}

/// Primary elements `(1 + 3i) + 3j w` whose norm is at most `hi`.
fn primaries_in_box(hi: u64) -> impl Iterator<Item = EisensteinInt> {
    let hi = hi as i128;
    let bmax = ((4 * hi) as f64 / 3.0).sqrt() as i128 + 1;
    let jmax = bmax / 3 + 1;
    (-jmax..=jmax).flat_map(move |j| {
        let b = 3 * j;
        let disc = hi as f64 - 0.75 * (b * b) as f64;
        let (lo_a, hi_a) = if disc < 0.0 {
            (1, 0)
        } else {
            let r = disc.sqrt();
            ((b as f64 / 2.0 - r).floor() as i128 - 1, (b as f64 / 2.0 + r).ceil() as i128 + 1)
        };
        let i_lo = (lo_a - 1).div_euclid(3);
        let i_hi = (hi_a - 1).div_euclid(3) + 1;
        (i_lo..=i_hi)
            .map(move |i| EisensteinInt::new(1 + 3 * i, b))
            .filter(move |c| c.norm() <= hi)
    })
}

/// Squarefree test for a primary element from the factorization of its norm.
pub(crate) fn squarefree_from_norm(c: EisensteinInt, fs: &[(u64, u32)]) -> bool {
    fs.iter().all(|&(p, e)| match p % 3 {
        2 => e == 2,
        0 => e == 1,
        _ => e == 1 || (e == 2 && c.a % p as i128 == 0 && c.b % p as i128 == 0),
    })
}

pub(crate) fn rough_from_norm(fs: &[(u64, u32)], w: u64) -> bool {
    fs.iter().all(|&(p, _)| match p % 3 {
        2 => p as u128 * p as u128 > w as u128,
        _ => p > w,
    })
}

/// All primary primes of norm at most `x`: both primes above each `p = 1 mod 3`, and `-q` for inert `q`.
pub fn primary_primes_up_to(x: u64) -> Vec<EisensteinInt> {
    let mut out = Vec::new();
    for p in primes_up_to(x) {
        match p % 3 {
            1 => {
                let (pi, pibar) = split_rational_prime(p).expect("p = 1 mod 3 splits");
                out.push(pi);
                out.push(pibar);
            }
            2 if p.checked_mul(p).is_some_and(|q| q <= x) => {
                out.push(EisensteinInt::from_int(-(p as i128)));
            }
            _ => {}
        }
    }
    out.sort_by_key(|c| c.canonical_key());
    out
}
