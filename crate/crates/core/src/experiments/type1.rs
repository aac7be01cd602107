use std::f64::consts::TAU;
use std::time::Instant;

use num_complex::Complex64;
use serde_json::json;
use statrs::function::gamma::gamma;

use super::ExperimentReport;
use crate::analytic::{constants, dedekind_zeta_partial, SmoothWindow};
use crate::eisenstein::{enumerate_primary, factor, EisensteinInt, Predicate};
use crate::error::{Error, Result};
use crate::gauss::GaussTable;

/// `sum_{u = 1 mod 3} g(u r) (u/|u|)^l W(N(u)/U)` against the squarefree main term, which only
/// exists for `l = 0`. Builds a Gauss table up to `N(r)` times the window reach unless one is supplied.
pub fn type1_sum(
    r: EisensteinInt,
    ell: i32,
    u_scale: u64,
    window: &SmoothWindow,
    table: Option<&GaussTable>,
) -> Result<ExperimentReport> {
    let start = Instant::now();
    if !r.is_primary() {
        return Err(Error::NotPrimary(r.to_string()));
    }
    let rf = factor(r)?;
    if !rf.is_squarefree() {
        return Err(Error::NotSquarefree(r.to_string()));
    }
    let (l, hi) = window.support();
    let uf = u_scale as f64;
    let lo_n = (l * uf).floor() as u64;
    let hi_n = (hi * uf).ceil() as u64;
    let nr = r.norm_u64();
    let need = hi_n.checked_mul(nr).ok_or(Error::Overflow)?;
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
    let r_primes: Vec<EisensteinInt> = rf.primes().collect();
    let mut observed = Complex64::new(0.0, 0.0);
    let mut altmain = 0.0;
    for u in enumerate_primary(lo_n.saturating_sub(1), hi_n, Predicate::All) {
        let w = window.eval(u.norm() as f64 / uf);
        if w == 0.0 {
            continue;
        }
        let uf_ = factor(u)?;
        if !uf_.is_squarefree() || r_primes.iter().any(|p| p.divides(u)) {
            continue;
        }
        let mut primes: Vec<EisensteinInt> = uf_.primes().collect();
        primes.extend(&r_primes);
        let g = table.gtilde_of_primes(&primes)?.0;
        let phase = if ell == 0 { Complex64::new(1.0, 0.0) } else { (u.to_complex() / u.abs()).powi(ell) };
        observed += g * phase * w;
        altmain += (u.norm() as f64).powf(-1.0 / 6.0) * w;
    }
    let c = constants();
    let nrf = nr as f64;
    let altmain = c.c_smooth * nrf.powf(-1.0 / 6.0) * altmain;
    let phi_r: f64 = r_primes.iter().map(|p| (p.norm() - 1) as f64).product();
    let zeta = dedekind_zeta_partial(2.0, r)?.value;
    let closed = window.mellin(Complex64::new(5.0 / 6.0, 0.0))?.re * TAU.powf(5.0 / 3.0) * uf.powf(5.0 / 6.0)
        / (3f64.powf(3.5) * gamma(2.0 / 3.0) * zeta)
        * phi_r
        / nrf.powf(7.0 / 6.0);
    let (pred_alt, pred_closed) = if ell == 0 { (altmain, closed) } else { (0.0, 0.0) };
    let mut report = ExperimentReport::new(
        "type1",
        json!({ "r": r.to_string(), "ell": ell, "u": u_scale, "window": window,
                "reference_main_term": altmain }),
        vec![
            "delta_{l=0} (2 pi)^(2/3) / (3 Gamma(2/3)) N(r)^(-1/6) sum_{(u,r)=1} mu^2(u) N(u)^(-1/6) W(N(u)/U)".into(),
            "delta_{l=0} W~(5/6) (2 pi)^(5/3) U^(5/6) phi(r) / (3^(7/2) Gamma(2/3) zeta(2; 1_r) N(r)^(7/6))".into(),
        ],
    );
    let err = 1e-12 * observed.norm().max(1.0);
    report.push(uf, observed, pred_alt, err);
    report.push(uf, observed, pred_closed, err);
    Ok(report.finish(start))
}
