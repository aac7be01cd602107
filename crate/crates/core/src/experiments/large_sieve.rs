use std::collections::HashSet;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{constants, SmoothWindow};
use crate::eisenstein::{enumerate_primary, factor, EisensteinInt, Predicate};
use crate::error::{Error, Result};
use crate::gauss::GaussTable;
use crate::symbol::cubic_symbol;

/// Largest number of rows or columns the symbol matrix may have.
pub const DIMENSION_BUDGET: usize = 4096;

/// Squarefree primary elements with `A < N(a) <= 2A`.
pub fn squarefree_dyadic(a: u64) -> Vec<EisensteinInt> {
    enumerate_primary(a, 2 * a, Predicate::Squarefree)
}

/// Coefficients `beta_b` on squarefree primary `b` with `lo B <= N(b) <= hi B`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SieveSequence {
    scale: u64,
    range: (f64, f64),
    entries: Vec<(EisensteinInt, Complex64)>,
}

impl SieveSequence {
    pub fn new(scale: u64, range: (f64, f64), entries: Vec<(EisensteinInt, Complex64)>) -> Result<Self> {
        let (lo, hi) = (range.0 * scale as f64, range.1 * scale as f64);
        let mut seen = HashSet::new();
        for &(b, v) in &entries {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::InvalidArgument(format!("coefficient at {b} is not finite")));
            }
            if !b.is_primary() {
                return Err(Error::NotPrimary(b.to_string()));
            }
            if !factor(b)?.is_squarefree() {
                return Err(Error::NotSquarefree(b.to_string()));
            }
            let n = b.norm() as f64;
            if n < lo || n > hi {
                return Err(Error::InvalidArgument(format!("N({b}) = {n} outside [{lo}, {hi}]")));
            }
            if !seen.insert(b) {
                return Err(Error::InvalidArgument(format!("duplicate support element {b}")));
            }
        }
        Ok(SieveSequence { scale, range, entries })
    }

    pub fn singleton(b: EisensteinInt, value: Complex64) -> Result<Self> {
        Self::new(b.norm_u64(), (1.0, 2.0), vec![(b, value)])
    }

    /// Deterministic pseudo-random coefficients on the dyadic range `(B, 2B]`.
    pub fn random(scale: u64, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries = squarefree_dyadic(scale)
            .into_iter()
            .map(|b| (b, Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))))
            .collect();
        Self::new(scale, (1.0, 2.0), entries)
    }

    /// `W(N(b)/B)` on squarefree primary `b`.
    pub fn smooth(scale: u64, window: &SmoothWindow) -> Result<Self> {
        Self::weighted(scale, window, |_| Ok(Complex64::new(1.0, 0.0)))
    }

    /// `conj(g(b)) W(N(b)/B)`, the witness sequence for the lower bound `(AB)^(2/3)`.
    pub fn witness(scale: u64, window: &SmoothWindow, table: &GaussTable) -> Result<Self> {
        Self::weighted(scale, window, |b| Ok(table.gtilde(b)?.conj()))
    }

    fn weighted<F>(scale: u64, window: &SmoothWindow, mut coef: F) -> Result<Self>
    where
        F: FnMut(EisensteinInt) -> Result<Complex64>,
    {
        let (l, r) = window.support();
        let s = scale as f64;
        let lo = (l * s).floor() as u64;
        let hi = (r * s).ceil() as u64;
        let mut entries = Vec::new();
        for b in enumerate_primary(lo.saturating_sub(1), hi, Predicate::Squarefree) {
            let w = window.eval(b.norm() as f64 / s);
            if w != 0.0 {
                entries.push((b, coef(b)? * w));
            }
        }
        Self::new(scale, (l, r), entries)
    }

    pub fn scale(&self) -> u64 {
        self.scale
    }

    pub fn range(&self) -> (f64, f64) {
        self.range
    }

    pub fn entries(&self) -> &[(EisensteinInt, Complex64)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn support(&self) -> Vec<EisensteinInt> {
        self.entries.iter().map(|e| e.0).collect()
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|e| e.1.norm_sqr()).sum()
    }
}

const ZERO_SYMBOL: u8 = 3;

/// Exponents of `(b/a)_3` with rows `a` and columns `b`; `ZERO_SYMBOL` marks a common factor.
struct SymbolMatrix {
    rows: usize,
    cols: usize,
    exps: Vec<u8>,
}

fn roots() -> [Complex64; 4] {
    let h = 3f64.sqrt() / 2.0;
    [Complex64::new(1.0, 0.0), Complex64::new(-0.5, h), Complex64::new(-0.5, -h), Complex64::new(0.0, 0.0)]
}

impl SymbolMatrix {
    fn build(a_list: &[EisensteinInt], b_list: &[EisensteinInt]) -> Result<Self> {
        for (what, n) in [("rows", a_list.len()), ("columns", b_list.len())] {
            if n > DIMENSION_BUDGET {
                return Err(Error::InvalidArgument(format!(
                    "symbol matrix has {n} {what}, budget is {DIMENSION_BUDGET}"
                )));
            }
        }
        let rows: Vec<Vec<u8>> = a_list
            .par_iter()
            .map(|&a| {
                b_list
                    .iter()
                    .map(|&b| cubic_symbol(b, a).map(|v| v.exponent().unwrap_or(ZERO_SYMBOL)))
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<_>>()?;
        Ok(SymbolMatrix { rows: a_list.len(), cols: b_list.len(), exps: rows.concat() })
    }

    fn row(&self, i: usize) -> &[u8] {
        &self.exps[i * self.cols..(i + 1) * self.cols]
    }

    /// `M x`
    fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let r = roots();
        (0..self.rows)
            .into_par_iter()
            .map(|i| self.row(i).iter().zip(x).map(|(&e, &v)| r[e as usize] * v).sum())
            .collect()
    }

    /// `M^* y`
    fn apply_adjoint(&self, y: &[Complex64]) -> Vec<Complex64> {
        let r = roots();
        let mut out = vec![Complex64::new(0.0, 0.0); self.cols];
        for (i, &yi) in y.iter().enumerate() {
            for (o, &e) in out.iter_mut().zip(self.row(i)) {
                *o += r[e as usize].conj() * yi;
            }
        }
        out
    }

    fn nonzero(&self) -> usize {
        self.exps.iter().filter(|&&e| e != ZERO_SYMBOL).count()
    }
}

/// `sum_a mu^2(a) |sum_b beta_b (b/a)_3|^2` over squarefree primary `A < N(a) <= 2A`.
pub fn large_sieve_form(a_scale: u64, beta: &SieveSequence) -> Result<f64> {
    let m = SymbolMatrix::build(&squarefree_dyadic(a_scale), &beta.support())?;
    let x: Vec<Complex64> = beta.entries.iter().map(|e| e.1).collect();
    Ok(m.apply(&x).iter().map(|v| v.norm_sqr()).sum())
}

/// `G[i][j] = sum_a conj((b_i/a)_3) (b_j/a)_3`, Hermitian and positive semidefinite.
pub fn gram_matrix(a_list: &[EisensteinInt], b_list: &[EisensteinInt]) -> Result<Vec<Vec<Complex64>>> {
    let m = SymbolMatrix::build(a_list, b_list)?;
    let r = roots();
    let n = b_list.len();
    let mut g = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for i in 0..m.rows {
        let row = m.row(i);
        for (j1, &e1) in row.iter().enumerate() {
            if e1 == ZERO_SYMBOL {
                continue;
            }
            let c1 = r[e1 as usize].conj();
            for (j2, &e2) in row.iter().enumerate() {
                g[j1][j2] += c1 * r[e2 as usize];
            }
        }
    }
    Ok(g)
}

/// The form evaluated as `beta^* G beta`.
pub fn large_sieve_form_gram(a_scale: u64, beta: &SieveSequence) -> Result<f64> {
    let g = gram_matrix(&squarefree_dyadic(a_scale), &beta.support())?;
    let x: Vec<Complex64> = beta.entries.iter().map(|e| e.1).collect();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, gi) in g.iter().enumerate() {
        for (j, &gij) in gi.iter().enumerate() {
            acc += x[i].conj() * gij * x[j];
        }
    }
    Ok(acc.re)
}

/// Power-iteration estimate of the largest eigenvalue of `M^* M`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormEstimate {
    pub value: f64,
    /// Rayleigh quotient after each step.
    pub rayleigh: Vec<f64>,
    pub iterations: usize,
    /// Trace of `M^* M`, an upper bound for the eigenvalue.
    pub upper: f64,
}

/// `B(A, B)` for squarefree primary rows in `(A, 2A]` and columns in `(B, 2B]`.
pub fn operator_norm(a_scale: u64, b_scale: u64, iters: usize, tol: f64) -> Result<NormEstimate> {
    operator_norm_of(&squarefree_dyadic(a_scale), &squarefree_dyadic(b_scale), iters, tol)
}

/// Stops once consecutive Rayleigh quotients differ by at most `tol` relative.
pub fn operator_norm_of(
    a_list: &[EisensteinInt],
    b_list: &[EisensteinInt],
    iters: usize,
    tol: f64,
) -> Result<NormEstimate> {
    let m = SymbolMatrix::build(a_list, b_list)?;
    let upper = m.nonzero() as f64;
    let n = b_list.len();
    if n == 0 || m.rows == 0 {
        return Ok(NormEstimate { value: 0.0, rayleigh: Vec::new(), iterations: 0, upper });
    }
    let mut v: Vec<Complex64> = (0..n).map(|j| Complex64::new(1.0 + j as f64 / n as f64, 0.0)).collect();
    normalize(&mut v);
    let mut rayleigh: Vec<f64> = Vec::new();
    for k in 1..=iters {
        let mut w = m.apply_adjoint(&m.apply(&v));
        let r: f64 = v.iter().zip(&w).map(|(a, b)| (a.conj() * b).re).sum();
        let prev = rayleigh.last().copied();
        rayleigh.push(r);
        if r == 0.0 {
            return Ok(NormEstimate { value: 0.0, rayleigh, iterations: k, upper });
        }
        if prev.is_some_and(|p| (r - p).abs() <= tol * r) {
            return Ok(NormEstimate { value: r, rayleigh, iterations: k, upper });
        }
        normalize(&mut w);
        v = w;
    }
    Err(Error::NoConvergence { iters, lo: rayleigh.last().copied().unwrap_or(0.0), hi: upper })
}

fn normalize(v: &mut [Complex64]) {
    let s = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if s > 0.0 {
        v.iter_mut().for_each(|z| *z /= s);
    }
}

/// `A + B + (AB)^(2/3)`
pub fn heath_brown_shape(a: f64, b: f64) -> f64 {
    a + b + (a * b).powf(2.0 / 3.0)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpnessPoint {
    pub n: u64,
    pub form: f64,
    pub norm_sq: f64,
    pub support: usize,
    /// `form / norm_sq`
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SharpnessReport {
    pub points: Vec<SharpnessPoint>,
    /// Least-squares slope of `log value` against `log N^2`.
    pub slope: f64,
}

/// The witness sequence at `A = B = N` for each `N`, with a fitted growth exponent.
pub fn sharpness_probe(ns: &[u64], window: &SmoothWindow) -> Result<SharpnessReport> {
    if ns.len() < 2 {
        return Err(Error::InvalidArgument("sharpness probe needs at least two scales".into()));
    }
    let reach = ns.iter().map(|&n| (window.support().1 * n as f64).ceil() as u64).max().unwrap_or(0);
    let table = GaussTable::build(reach)?;
    let mut points = Vec::new();
    for &n in ns {
        let beta = SieveSequence::witness(n, window, &table)?;
        let form = large_sieve_form(n, &beta)?;
        let norm_sq = beta.norm_sq();
        points.push(SharpnessPoint { n, form, norm_sq, support: beta.len(), value: form / norm_sq });
    }
    let xs: Vec<f64> = points.iter().map(|p| 2.0 * (p.n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.value.ln()).collect();
    Ok(SharpnessReport { slope: ls_slope(&xs, &ys), points })
}

fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CorrectedSieve {
    pub corrected: f64,
    pub uncorrected: f64,
}

/// `sum_a mu^2(a) V(N(a)/A) |sum_{(b,a)=1} beta_b g(b) conj((b/a)_3) - main(a)|^2`, with and without
/// `main(a) = c conj(g(a)) N(a)^(-1/6) sum_{(b,a)=1} beta_b N(b)^(-1/6)`.
pub fn corrected_sieve_sum(
    a_scale: u64,
    beta: &SieveSequence,
    v: &SmoothWindow,
    table: Option<&GaussTable>,
) -> Result<CorrectedSieve> {
    let (l, r) = v.support();
    let s = a_scale as f64;
    let lo = (l * s).floor() as u64;
    let hi = (r * s).ceil() as u64;
    let b_max = beta.entries.iter().map(|e| e.0.norm_u64()).max().unwrap_or(0);
    let need = hi.max(b_max);
    let built;
    let table = match table {
        Some(t) if t.limit() >= need => t,
        Some(t) => {
            return Err(Error::InvalidArgument(format!("Gauss table limit {} below {need}", t.limit())));
        }
        None => {
            built = GaussTable::build(need)?;
            &built
        }
    };
    let rows: Vec<(EisensteinInt, f64)> = enumerate_primary(lo.saturating_sub(1), hi, Predicate::Squarefree)
        .into_iter()
        .map(|a| (a, v.eval(a.norm() as f64 / s)))
        .filter(|x| x.1 != 0.0)
        .collect();
    let a_list: Vec<EisensteinInt> = rows.iter().map(|x| x.0).collect();
    let m = SymbolMatrix::build(&a_list, &beta.support())?;
    let gb: Vec<Complex64> = beta.entries.iter().map(|e| table.gtilde(e.0)).collect::<Result<_>>()?;
    let nb: Vec<f64> = beta.entries.iter().map(|e| (e.0.norm() as f64).powf(-1.0 / 6.0)).collect();
    let c = constants().c_smooth;
    let rt = roots();
    let mut out = CorrectedSieve { corrected: 0.0, uncorrected: 0.0 };
    for (i, &(a, w)) in rows.iter().enumerate() {
        let mut inner = Complex64::new(0.0, 0.0);
        let mut weight = Complex64::new(0.0, 0.0);
        for (j, &e) in m.row(i).iter().enumerate() {
            if e == ZERO_SYMBOL {
                continue;
            }
            let bj = beta.entries[j].1;
            inner += bj * gb[j] * rt[e as usize].conj();
            weight += bj * nb[j];
        }
        let main = c * table.gtilde(a)?.conj() * (a.norm() as f64).powf(-1.0 / 6.0) * weight;
        out.uncorrected += w * inner.norm_sqr();
        out.corrected += w * (inner - main).norm_sqr();
    }
    Ok(out)
}

/// `sum_b beta_b (b/|b|)^l N(b)^(it) (k/b)_3`
pub fn sequence_diagnostic(beta: &SieveSequence, k: EisensteinInt, ell: i32, t: f64) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for &(b, v) in &beta.entries {
        let chi = cubic_symbol(k, b)?;
        if chi.is_zero() {
            continue;
        }
        let unit = b.to_complex() / b.abs();
        let twist = Complex64::from_polar(1.0, t * (b.norm() as f64).ln());
        acc += v * unit.powi(ell) * twist * chi.to_complex();
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::gtilde;

    fn brute_form(a_scale: u64, beta: &SieveSequence) -> f64 {
        squarefree_dyadic(a_scale)
            .iter()
            .map(|&a| {
                beta.entries()
                    .iter()
                    .map(|&(b, v)| v * cubic_symbol(b, a).unwrap().to_complex())
                    .sum::<Complex64>()
                    .norm_sqr()
            })
            .sum()
    }

    #[test]
    fn singleton_counts_coprime_rows() {
        let b0 = EisensteinInt::new(1, 3);
        let beta = SieveSequence::singleton(b0, Complex64::from_polar(1.0, 0.7)).unwrap();
        let want = squarefree_dyadic(50).iter().filter(|a| !b0.divides(**a)).count() as f64;
        assert!((large_sieve_form(50, &beta).unwrap() - want).abs() < 1e-9);
    }

    #[test]
    fn validation() {
        let p = EisensteinInt::new(1, 3);
        let one = Complex64::new(1.0, 0.0);
        assert!(SieveSequence::new(7, (1.0, 2.0), vec![(p, one), (p, one)]).is_err());
        assert!(SieveSequence::new(49, (1.0, 2.0), vec![(p * p, one)]).is_err());
        assert!(SieveSequence::new(7, (1.0, 2.0), vec![(EisensteinInt::new(2, 3), one)]).is_err());
        assert!(SieveSequence::new(7, (1.0, 2.0), vec![(p, Complex64::new(f64::NAN, 0.0))]).is_err());
        assert!(SieveSequence::new(100, (1.0, 2.0), vec![(p, one)]).is_err());
    }

    #[test]
    fn form_evaluation_orders_agree() {
        let beta = SieveSequence::random(64, 7).unwrap();
        let a = large_sieve_form(64, &beta).unwrap();
        let g = large_sieve_form_gram(64, &beta).unwrap();
        assert!(a >= 0.0);
        assert!((a - g).abs() < 1e-8 * a.max(1.0), "{a} vs {g}");
        assert!((a - brute_form(64, &beta)).abs() < 1e-8 * a);
    }

    #[test]
    fn power_iteration_matches_dense_eigensolve() {
        let (al, bl) = (squarefree_dyadic(64), squarefree_dyadic(100));
        assert!(bl.len() <= 64);
        let g = gram_matrix(&al, &bl).unwrap();
        let n = bl.len();
        let dense = nalgebra::DMatrix::from_fn(n, n, |i, j| g[i][j]);
        let top = dense.symmetric_eigen().eigenvalues.iter().cloned().fold(f64::MIN, f64::max);
        let est = operator_norm_of(&al, &bl, 20_000, 1e-14).unwrap();
        assert!((est.value - top).abs() < 1e-6 * top, "{} vs {top}", est.value);
        assert!(est.value <= est.upper);
    }

    #[test]
    fn duality() {
        for (a, b) in [(16, 32), (32, 16), (16, 16), (32, 32)] {
            let x = operator_norm(a, b, 20_000, 1e-13).unwrap().value;
            let y = operator_norm(b, a, 20_000, 1e-13).unwrap().value;
            assert!((x - y).abs() < 1e-6 * x, "B({a},{b}) = {x}, B({b},{a}) = {y}");
        }
    }

    #[test]
    fn sup_property_and_shape() {
        let w = SmoothWindow::bump(1.0, 2.0).unwrap();
        let table = GaussTable::build(256).unwrap();
        // largest B(A,B) / shape seen over A, B in {16, ..., 256} was 0.258
        let kappa = 0.3;
        for (a, seed) in [(32u64, 1u64), (64, 2), (128, 3)] {
            let bn = operator_norm(a, a, 20_000, 1e-12).unwrap().value;
            for beta in [SieveSequence::random(a, seed).unwrap(), SieveSequence::witness(a, &w, &table).unwrap()] {
                let v = large_sieve_form(a, &beta).unwrap() / beta.norm_sq();
                assert!(v <= bn * (1.0 + 1e-9), "{v} > {bn}");
                assert!(v <= kappa * heath_brown_shape(a as f64, a as f64));
            }
        }
    }

    #[test]
    fn long_rows_regime() {
        let r1 = operator_norm(256, 4, 20_000, 1e-12).unwrap().value / 256.0;
        let r2 = operator_norm(512, 4, 20_000, 1e-12).unwrap().value / 512.0;
        for r in [r1, r2] {
            assert!((0.2..2.0).contains(&r), "{r1} {r2}");
        }
    }

    #[test]
    fn sharpness_witness_small() {
        let w = SmoothWindow::bump(1.0, 2.0).unwrap();
        let rep = sharpness_probe(&[16, 32], &w).unwrap();
        let p = &rep.points[0];
        let table = GaussTable::build(32).unwrap();
        let beta = SieveSequence::witness(16, &w, &table).unwrap();
        let unimodular: f64 = beta.entries().iter().map(|e| w.eval(e.0.norm() as f64 / 16.0).powi(2)).sum();
        assert!((p.norm_sq - unimodular).abs() < 1e-9);
        let mut brute = 0.0;
        for a in squarefree_dyadic(16) {
            for &(b1, v1) in beta.entries() {
                for &(b2, v2) in beta.entries() {
                    let s1 = cubic_symbol(b1, a).unwrap().to_complex();
                    let s2 = cubic_symbol(b2, a).unwrap().to_complex();
                    brute += (v1 * s1 * (v2 * s2).conj()).re;
                }
            }
        }
        assert!((p.form - brute).abs() < 1e-9 * brute.max(1.0));
    }

    #[test]
    fn corrected_sieve_singleton_brute_force() {
        let v = SmoothWindow::bump(1.0, 2.0).unwrap();
        let b0 = EisensteinInt::new(4, 3);
        let beta = SieveSequence::singleton(b0, Complex64::new(0.5, -0.25)).unwrap();
        let got = corrected_sieve_sum(40, &beta, &v, None).unwrap();
        let c = constants().c_smooth;
        let (mut corr, mut unc) = (0.0, 0.0);
        for a in enumerate_primary(39, 80, Predicate::Squarefree) {
            let w = v.eval(a.norm() as f64 / 40.0);
            let chi = cubic_symbol(b0, a).unwrap();
            if w == 0.0 || chi.is_zero() {
                continue;
            }
            let inner = beta.entries()[0].1 * gtilde(b0).unwrap().value * chi.to_complex().conj();
            let main = c * gtilde(a).unwrap().value.conj() * (a.norm() as f64).powf(-1.0 / 6.0)
                * beta.entries()[0].1
                * (b0.norm() as f64).powf(-1.0 / 6.0);
            unc += w * inner.norm_sqr();
            corr += w * (inner - main).norm_sqr();
        }
        assert!(got.uncorrected >= 0.0 && got.corrected >= 0.0);
        assert!((got.uncorrected - unc).abs() < 1e-9 && (got.corrected - corr).abs() < 1e-9);
    }

    #[test]
    fn correction_removes_main_term() {
        let w = SmoothWindow::bump(1.0, 2.0).unwrap();
        let beta = SieveSequence::smooth(512, &w).unwrap();
        let r = corrected_sieve_sum(512, &beta, &w, None).unwrap();
        assert!(r.corrected < 0.75 * r.uncorrected, "{r:?}");
    }

    #[test]
    fn diagnostic_trivial_cases() {
        let primes: Vec<_> = enumerate_primary(100, 200, Predicate::Prime);
        let one = Complex64::new(1.0, 0.0);
        let beta = SieveSequence::new(100, (1.0, 2.0), primes.iter().map(|&p| (p, one)).collect()).unwrap();
        let cube = EisensteinInt::from_int(8);
        let s = sequence_diagnostic(&beta, cube, 0, 0.0).unwrap();
        assert!((s.re - primes.len() as f64).abs() < 1e-9 && s.im.abs() < 1e-9);
        let k = EisensteinInt::new(5, 1);
        let s = sequence_diagnostic(&beta, k, 0, 0.0).unwrap();
        let sc = sequence_diagnostic(&beta, k.conj(), 0, 0.0).unwrap();
        assert!((s - sc.conj()).norm() < 1e-9);
        let s = sequence_diagnostic(&beta, k, 3, 1.5).unwrap();
        assert!(s.norm() <= primes.len() as f64 + 1e-9);
    }
}
