//! Generating functions of the Mellin transforms: truncated power series against
//! hypergeometric right-hand sides.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mellin::{closed_value, QUAD_TOL};
use super::tanh_sinh::tanh_sinh;
use crate::construct::{mellin_closed, mellin_t_closed, MellinClosedForm};
use crate::error::{Error, Result};
use crate::exact::rat::{to_f64, Rat};
use crate::quad::gamma::{gamma, gamma_ratio_f64};
use crate::report::{ClaimResult, SuiteReport};

pub const T_MARGIN: f64 = 0.25;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenfunComparison {
    pub identity: String,
    pub lambda: f64,
    pub s: f64,
    pub t: f64,
    pub terms: usize,
    pub series: f64,
    pub closed: f64,
    pub difference: f64,
    /// Bound on the neglected part of both sides.
    pub truncation: f64,
    pub pass: bool,
}

fn check_margin(t: f64) -> Result<()> {
    if !(t.abs() < T_MARGIN) {
        return Err(Error::ConvergenceMarginViolated(t.abs()));
    }
    Ok(())
}

/// Σ_j Π(a)_j / Π(b)_j z^j / j!, summed until the terms are negligible.
/// Returns the sum and a geometric bound on the remainder from the last ratio.
pub fn hyp_series(upper: &[f64], lower: &[f64], z: f64) -> (f64, f64) {
    let mut term = 1.0;
    let mut sum = 1.0;
    for j in 0..100_000 {
        let jf = j as f64;
        let mut ratio = z / (jf + 1.0);
        for a in upper {
            ratio *= a + jf;
        }
        for b in lower {
            ratio /= b + jf;
        }
        let next = term * ratio;
        if next == 0.0 {
            return (sum, 0.0);
        }
        sum += next;
        term = next;
        let r = ratio.abs();
        if r < 1.0 && term.abs() * r / (1.0 - r) <= 1e-18 * sum.abs() {
            return (sum, term.abs() * r / (1.0 - r));
        }
    }
    (sum, f64::INFINITY)
}

fn forms(kmax: usize, lambda: &Rat) -> Result<Vec<MellinClosedForm>> {
    (0..=kmax).map(|k| mellin_closed(k, lambda)).collect()
}

/// Σ_{k≤K} M_k^λ(s) t^k with the envelope bound |M_k| ≤ C_k^λ(1) M_0(s) (λ > 0) on the tail.
fn power_series(forms: &[MellinClosedForm], lambda: f64, s: f64, t: f64) -> (f64, f64) {
    let k = forms.len() - 1;
    let sum: f64 = forms.iter().enumerate().map(|(j, f)| closed_value(f, s) * t.powi(j as i32)).sum();
    let m0 = closed_value(&forms[0], s).abs();
    // C_{K+1}(1) |t|^{K+1} and the ratio bound for later terms
    let mut c = 1.0;
    for j in 0..=k {
        c *= (2.0 * lambda + j as f64) / (j as f64 + 1.0);
    }
    let first = c * t.abs().powi(k as i32 + 1) * m0;
    let rho = t.abs() * ((2.0 * lambda + k as f64 + 1.0) / (k as f64 + 2.0)).max(1.0);
    let tail = if lambda > 0.0 && rho < 1.0 { first / (1.0 - rho) } else { f64::INFINITY };
    (sum, tail)
}

fn z_of(t: f64) -> f64 {
    let d = 1.0 + t * t;
    4.0 * t * t / (d * d)
}

fn finish(identity: &str, lambda: f64, s: f64, t: f64, k: usize, series: (f64, f64), closed: (f64, f64), tol: f64) -> GenfunComparison {
    let difference = (series.0 - closed.0).abs();
    let truncation = series.1 + closed.1;
    GenfunComparison {
        identity: identity.into(),
        lambda,
        s,
        t,
        terms: k,
        series: series.0,
        closed: closed.0,
        difference,
        truncation,
        pass: difference <= tol + truncation,
    }
}

/// λ = 1: 2F1 form of Σ M_k(s) t^k.
fn lemma4_rhs(s: f64, t: f64) -> (f64, f64) {
    let z = z_of(t);
    let d = 1.0 + t * t;
    let (f1, e1) = hyp_series(&[1.0, s / 2.0], &[(2.0 * s + 3.0) / 4.0], z);
    let (f2, e2) = hyp_series(&[1.0, (s + 1.0) / 2.0], &[(2.0 * s + 5.0) / 4.0], z);
    let pre = gamma(0.75) / 2.0 / d;
    let g1 = gamma_ratio_f64(s / 2.0, s / 2.0 + 0.75);
    let g2 = 2.0 * t / d * gamma_ratio_f64((s + 1.0) / 2.0, s / 2.0 + 1.25);
    (pre * (g1 * f1 + g2 * f2), pre * (g1.abs() * e1 + g2.abs() * e2))
}

/// The 3F2 form for general λ, with the factors 1 and λ in the two brackets.
fn thm2b_rhs(lambda: f64, s: f64, t: f64) -> (f64, f64) {
    let z = z_of(t);
    let d = 1.0 + t * t;
    let a = lambda / 2.0 + 0.25;
    let (f1, e1) = hyp_series(&[(lambda + 1.0) / 2.0, lambda / 2.0, s / 2.0], &[0.5, (s + lambda) / 2.0 + 0.25], z);
    let (f2, e2) =
        hyp_series(&[(lambda + 1.0) / 2.0, 1.0 + lambda / 2.0, (s + 1.0) / 2.0], &[1.5, (s + lambda) / 2.0 + 0.75], z);
    let pre = d.powf(-lambda) * gamma(a) / 2.0;
    let g1 = gamma_ratio_f64(s / 2.0, (s + lambda) / 2.0 + 0.25);
    let g2 = 2.0 * t * lambda / d * gamma_ratio_f64((s + 1.0) / 2.0, (s + lambda) / 2.0 + 0.75);
    (pre * (g1 * f1 + g2 * f2), pre * (g1.abs() * e1 + g2.abs() * e2))
}

/// First kind: M_0 + 2 Σ_{k≥1} M_k t^k.
fn lemma11_rhs(s: f64, t: f64) -> (f64, f64) {
    let z = z_of(t);
    let d = 1.0 + t * t;
    let (f1, e1) = hyp_series(&[1.0, s / 2.0], &[(s + 3.0) / 2.0], z);
    let (f2, e2) = hyp_series(&[1.0, (s + 1.0) / 2.0], &[(s + 4.0) / 2.0], z);
    let pre = std::f64::consts::PI.sqrt() / 4.0 * (1.0 - t * t);
    let g1 = gamma_ratio_f64(s / 2.0, s / 2.0 + 1.5) / d;
    let g2 = 2.0 * t / (d * d) * gamma_ratio_f64((s + 1.0) / 2.0, s / 2.0 + 2.0);
    (pre * (g1 * f1 + g2 * f2), pre * (g1.abs() * e1 + g2.abs() * e2))
}

/// Terminating 3F2 at large argument, summed directly.
fn terminating(upper: &[f64], lower: &[f64], z: f64) -> f64 {
    hyp_series(upper, lower, z).0
}

/// Σ_{k≤K} of the expansion in t^{2k} ₃F₂(…; 4/t²), with a geometric tail estimate.
fn cor3_series(s: f64, t: f64, kmax: usize) -> (f64, f64) {
    let w = 4.0 / (t * t);
    let m0 = gamma(0.75) / 2.0 * gamma_ratio_f64(s / 2.0, s / 2.0 + 0.75);
    let m0s = gamma(0.75) / 2.0 * gamma_ratio_f64((s + 1.0) / 2.0, s / 2.0 + 1.25);
    let terms: Vec<f64> = (0..=kmax)
        .map(|k| {
            let kf = k as f64;
            let a = terminating(&[(1.0 - kf) / 2.0, s / 2.0, -kf / 2.0], &[0.5, (2.0 * s + 3.0) / 4.0], w);
            let b = if k == 0 {
                0.0
            } else {
                terminating(&[(1.0 - kf) / 2.0, 1.0 - kf / 2.0, (s + 1.0) / 2.0], &[1.5, (2.0 * s + 5.0) / 4.0], w)
            };
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * t.powi(2 * k as i32) * (m0 * a - 2.0 * kf / t * m0s * b)
        })
        .collect();
    let sum = terms.iter().sum();
    let (last, prev) = (terms[kmax].abs(), terms[kmax - 1].abs());
    let r = if prev > 0.0 { last / prev } else { 1.0 };
    let tail = if r < 1.0 { last * r / (1.0 - r) } else { f64::INFINITY };
    (sum, tail)
}

/// ∫₀¹ (1-x²)^{λ/2-3/4} x^{s-1} (1-2tx+t²)^{-λ} dx
fn direct_integral(lambda: f64, s: f64, t: f64) -> Result<(f64, f64)> {
    let e = lambda / 2.0 - 0.75;
    let q = tanh_sinh(|x, xc| (xc * (1.0 + x)).powf(e) * x.powf(s - 1.0) * (1.0 - 2.0 * t * x + t * t).powf(-lambda), QUAD_TOL)?;
    Ok((q.value, q.error_estimate))
}

pub const GENFUN_IDENTITIES: [&str; 5] = [
    "2F1 form of sum M_k(s) t^k at lambda = 1",
    "3F2 form of sum M_k^lambda(s) t^k",
    "first-kind 2F1 form of M_0 + 2 sum M_k^T(s) t^k",
    "expansion in t^2k 3F2(...; 4/t^2) of the 2F1 form",
    "sum M_k^lambda(s) t^k against quadrature of the kernel",
];

/// Every identity that applies at (λ, s, t): the λ = 1 identities only at λ = 1.
pub fn genfun_check(lambda: &Rat, s: f64, t: f64, k: usize, tol: f64) -> Result<Vec<GenfunComparison>> {
    check_margin(t)?;
    if !(s > 0.0) {
        return Err(Error::InvalidParameters(format!("need s > 0, got {s}")));
    }
    if k < 1 {
        return Err(Error::InvalidParameters("need at least two terms".into()));
    }
    let lf = to_f64(lambda);
    let fs = forms(k, lambda)?;
    let series = power_series(&fs, lf, s, t);
    let mut out = Vec::new();
    let chebyshev = lf == 1.0;
    if chebyshev {
        out.push(finish(GENFUN_IDENTITIES[0], lf, s, t, k, series, lemma4_rhs(s, t), tol));
    }
    out.push(finish(GENFUN_IDENTITIES[1], lf, s, t, k, series, thm2b_rhs(lf, s, t), tol));
    {
        let tf: Vec<MellinClosedForm> = (0..=k).map(mellin_t_closed).collect();
        let lhs: f64 =
            tf.iter().enumerate().map(|(j, f)| if j == 0 { 1.0 } else { 2.0 } * closed_value(f, s) * t.powi(j as i32)).sum();
        // |T_k| ≤ 1: tail ≤ 2 M_0^T |t|^{K+1} / (1 - |t|)
        let tail = 2.0 * closed_value(&tf[0], s).abs() * t.abs().powi(k as i32 + 1) / (1.0 - t.abs());
        out.push(finish(GENFUN_IDENTITIES[2], 1.0, s, t, k, (lhs, tail), lemma11_rhs(s, t), tol));
    }
    if chebyshev && t != 0.0 {
        out.push(finish(GENFUN_IDENTITIES[3], lf, s, t, k, cor3_series(s, t, k), lemma4_rhs(s, t), tol));
    }
    out.push(finish(GENFUN_IDENTITIES[4], lf, s, t, k, series, direct_integral(lf, s, t)?, tol));
    Ok(out)
}

pub const GENFUN_T: [f64; 2] = [0.05, 0.1];
pub const GENFUN_S: [f64; 3] = [1.0, 2.0, 3.0];
pub const GENFUN_K: usize = 40;
pub const GENFUN_TOL: f64 = 1e-9;

/// Grid of comparisons; λ = 1 carries all identities, the other λ the general-λ ones.
pub fn genfun_grid(lambdas: &[Rat]) -> Vec<(Rat, f64, f64)> {
    let mut out = Vec::new();
    for l in lambdas {
        for &s in &GENFUN_S {
            for &t in &GENFUN_T {
                out.push((l.clone(), s, t));
            }
        }
    }
    out
}

pub fn genfun_suite(lambdas: &[Rat]) -> SuiteReport {
    let mut claims: Vec<ClaimResult> = GENFUN_IDENTITIES.iter().map(|c| ClaimResult::new(*c)).collect();
    let grid = genfun_grid(lambdas);
    let results: Vec<_> = grid.par_iter().map(|(l, s, t)| genfun_check(l, *s, *t, GENFUN_K, GENFUN_TOL)).collect();
    for ((l, s, t), r) in grid.iter().zip(results) {
        match r {
            Ok(cs) => {
                for c in cs {
                    let slot = claims.iter_mut().find(|x| x.claim == c.identity).expect("known identity");
                    slot.record(c.pass, c.difference, || format!("{c:?}"));
                }
            }
            Err(e) => claims[0].error(format!("lambda={l} s={s} t={t}: {e}")),
        }
    }
    let claims = claims
        .into_iter()
        .enumerate()
        .map(|(i, c)| match i {
            1 => c.with_note("the two brackets carry the factors 1 and lambda"),
            4 => c.with_note("right side by tanh-sinh quadrature of the generating kernel"),
            _ => c,
        })
        .collect();
    SuiteReport::new("genfun", claims)
}
