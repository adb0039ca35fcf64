//! Eigenvalues and eigenfunctions of `T_{α,β;q}`.
//!
//! Seeds come from a truncated tridiagonal matrix; each seed is refined by
//! Newton on `F(μ)` and certified by `|F|` and by presence in a matrix twice
//! the size. Eigenfunction coefficients are built from the minimal solution of
//! the `b`-recurrence (backward ratios), which at an eigenvalue coincides with
//! `b_n(μ)` but stays accurate where the forward recurrence would not.

use super::{a_recurrence_scale, f_eval, lambda_of_mu, monic_b, monic_c, mu_of_lambda, recurrence_a_coeffs};
use crate::awop::{t_quadrature, CoeffVector, QuadOptions, DEFAULT_KERNEL_TERMS};
use crate::error::{QError, QResult};
use crate::qcore::{c, qpow, QContext};
use crate::qpolys::{norm_h, JacobiLevel};
use nalgebra::DMatrix;
use num_complex::Complex64 as C64;

/// Eigenvalues `λ` of the `N × N` truncation of the `a_k` recurrence
/// (rows `k = 1 … N`, `a_{N+1} := 0`).
pub fn matrix_oracle(n: usize, level: &JacobiLevel, ctx: &QContext) -> QResult<Vec<C64>> {
    if n == 0 {
        return Err(QError::InvalidParameter("matrix size must be positive".into()));
    }
    let q = ctx.q();
    let s = a_recurrence_scale(level, q);
    let rows: Vec<(C64, C64, C64)> = (1..=n).map(|k| recurrence_a_coeffs(k, level, q)).collect();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = -rows[i].1 / s;
        if i + 1 < n {
            // diagonal similarity: both off-diagonals become sqrt(upper · lower)
            let prod = (-rows[i].0 / s) * (-rows[i + 1].2 / s);
            let off = prod.sqrt();
            m[(i, i + 1)] = off;
            m[(i + 1, i)] = off;
        }
    }
    let schur = m
        .try_schur(1e-15, 100_000)
        .ok_or_else(|| QError::Eigen(format!("Schur iteration did not converge (N = {n})")))?;
    let ev = schur.eigenvalues().ok_or_else(|| QError::Eigen("eigenvalue extraction failed".into()))?;
    Ok(sorted_spectrum(ev.iter().copied().collect()))
}

/// Order by `|λ|` descending, then `arg λ`.
pub fn sorted_spectrum(mut v: Vec<C64>) -> Vec<C64> {
    v.sort_by(|a, b| {
        let ka = (a.norm() * 1e10).round();
        let kb = (b.norm() * 1e10).round();
        kb.total_cmp(&ka).then(a.arg().total_cmp(&b.arg()))
    });
    v
}

/// One certified eigenpair.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenResult {
    pub lambda: C64,
    pub mu: C64,
    pub residual_f: f64,
    /// `max |T g − λ g|` over the sample points; `None` if not requested.
    pub residual_operator: Option<f64>,
    /// `|F'(μ)|`; a simple zero has this well away from 0.
    pub f_derivative: f64,
    pub newton_iterations: usize,
    pub coeffs: CoeffVector,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenOptions {
    pub count: usize,
    pub truncation: usize,
    pub max_truncation: usize,
    pub drift_tol: f64,
    pub f_tol: f64,
    pub oracle_tol: f64,
    pub eigenfunction_terms: usize,
    /// Sample points for the operator residual; empty skips the check.
    pub operator_samples: Vec<f64>,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            count: 5,
            truncation: 80,
            max_truncation: 640,
            drift_tol: 1e-8,
            f_tol: 1e-9,
            oracle_tol: 1e-6,
            eigenfunction_terms: 40,
            operator_samples: Vec::new(),
        }
    }
}

/// Results plus everything that did not certify.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenReport {
    pub results: Vec<EigenResult>,
    pub failures: Vec<String>,
    pub truncation: usize,
    /// Top-mode drift between the last two truncations.
    pub drift: f64,
}

fn f_of_mu(mu: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    f_eval(mu, level, ctx)
}

/// Newton on `F` from `mu0` with a central-difference derivative.
pub fn refine_root(mu0: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<(C64, usize, f64)> {
    let mut mu = mu0;
    let mut dnorm = 0.0;
    for it in 1..=60 {
        let h = 1e-5 * mu.norm().max(1e-3);
        let f = f_of_mu(mu, level, ctx)?;
        let d = (f_of_mu(mu + h, level, ctx)? - f_of_mu(mu - h, level, ctx)?) / (2.0 * h);
        dnorm = d.norm();
        if dnorm == 0.0 {
            return Err(QError::NoConvergence(format!("zero derivative at μ = {mu}")));
        }
        let step = f / d;
        mu -= step;
        if step.norm() <= 1e-15 * mu.norm() {
            return Ok((mu, it, dnorm));
        }
    }
    let f = f_of_mu(mu, level, ctx)?;
    if f.norm() < 1e-12 {
        Ok((mu, 60, dnorm))
    } else {
        Err(QError::NoConvergence(format!("Newton from μ = {mu0} stalled at μ = {mu}, |F| = {}", f.norm())))
    }
}

fn nearest(v: &[C64], z: C64) -> f64 {
    v.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min)
}

/// Top eigenvalues, refined and certified. Any seed that fails to certify is
/// listed in `failures`, never dropped silently.
pub fn eigenvalues(level: &JacobiLevel, ctx: &QContext, opts: &EigenOptions) -> QResult<EigenReport> {
    level.validate_orthogonal()?;
    let mut n = opts.truncation.max(2);
    let mut small = matrix_oracle(n, level, ctx)?;
    let (big, drift) = loop {
        let big = matrix_oracle(2 * n, level, ctx)?;
        let drift = small.iter().take(opts.count).map(|z| nearest(&big, *z)).fold(0.0, f64::max);
        if drift < opts.drift_tol || 2 * n >= opts.max_truncation {
            break (big, drift);
        }
        n *= 2;
        small = big;
    };
    let mut results = Vec::new();
    let mut failures = Vec::new();
    let certify = |seed: C64, results: &mut Vec<EigenResult>, failures: &mut Vec<String>| {
        match certify_seed(seed, level, ctx, opts, &big) {
            Ok(r) => {
                if results.iter().any(|e: &EigenResult| (e.lambda - r.lambda).norm() < 1e-10 * r.lambda.norm()) {
                    failures.push(format!("seed λ = {seed} converged to an already found eigenvalue {}", r.lambda));
                } else {
                    results.push(r);
                }
            }
            Err(e) => failures.push(format!("seed λ = {seed}: {e}")),
        }
    };
    for &seed in small.iter().take(opts.count) {
        certify(seed, &mut results, &mut failures);
    }
    if level.is_real() {
        // the recurrence is real: close the set under conjugation
        let found: Vec<C64> = results.iter().map(|r| r.lambda).collect();
        for l in found {
            if l.im.abs() > 1e-12 * l.norm() && !results.iter().any(|r| (r.lambda - l.conj()).norm() < 1e-8 * l.norm()) {
                certify(l.conj(), &mut results, &mut failures);
            }
        }
    }
    let order = sorted_spectrum(results.iter().map(|r| r.lambda).collect());
    results.sort_by_key(|r| order.iter().position(|l| *l == r.lambda));
    Ok(EigenReport { results, failures, truncation: 2 * n, drift })
}

fn certify_seed(seed: C64, level: &JacobiLevel, ctx: &QContext, opts: &EigenOptions, oracle: &[C64]) -> QResult<EigenResult> {
    let q = ctx.q();
    let (mu, its, dnorm) = refine_root(mu_of_lambda(seed, q), level, ctx)?;
    let lambda = lambda_of_mu(mu, q);
    if lambda.norm() == 0.0 {
        return Err(QError::Eigen("refinement reached λ = 0, which is never an eigenvalue".into()));
    }
    let residual_f = f_of_mu(mu, level, ctx)?.norm();
    if residual_f >= opts.f_tol {
        return Err(QError::Eigen(format!("|F(μ)| = {residual_f:e} above tolerance")));
    }
    let dist = nearest(oracle, lambda);
    if dist > opts.oracle_tol {
        return Err(QError::Eigen(format!("λ = {lambda} is {dist:e} away from the matrix spectrum")));
    }
    let ef = eigenfunction(lambda, level, opts.eigenfunction_terms, ctx)?;
    let residual_operator = if opts.operator_samples.is_empty() {
        None
    } else {
        Some(operator_residual(lambda, &ef.coeffs, &opts.operator_samples, ctx)?)
    };
    Ok(EigenResult { lambda, mu, residual_f, residual_operator, f_derivative: dnorm, newton_iterations: its, coeffs: ef.coeffs })
}

/// `max_x |T g(x) − λ g(x)|` with `T g` by quadrature.
pub fn operator_residual(lambda: C64, g: &CoeffVector, xs: &[f64], ctx: &QContext) -> QResult<f64> {
    let level = g.level;
    let opts = QuadOptions::default();
    let mut worst: f64 = 0.0;
    for &x in xs {
        let (tg, _) = t_quadrature(|y| Ok(g.eval(c(y), ctx)), c(x), &level, DEFAULT_KERNEL_TERMS, ctx, &opts)?;
        let r = (tg - lambda * g.eval(c(x), ctx)).norm();
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Ratios `r_k = y_k/y_{k−1}`, `k = 1 … n`, of the minimal solution of the
/// `b`-recurrence at `μ`, from a backward sweep starting at `start`.
pub fn minimal_ratios(n: usize, mu: C64, level: &JacobiLevel, q: f64, start: usize) -> Vec<C64> {
    let start = start.max(n + 1);
    let mut r_next = c(0.0);
    let mut out = vec![c(0.0); n + 1];
    for k in (1..=start).rev() {
        let r = monic_c(k, level, q) / ((mu - monic_b(k, level, q)) - r_next);
        if k <= n {
            out[k] = r;
        }
        r_next = r;
    }
    out
}

/// `ln π_k` for the prefactor in `a_{k+1} = π_k b_k`.
fn ln_an_prefactor(k: usize, level: &JacobiLevel, q: f64) -> C64 {
    let (al, be) = (level.alpha, level.beta);
    let s = level.s();
    let kf = k as f64;
    let mut acc = c(0.0);
    for j in 0..k {
        let qj = q.powi(j as i32);
        acc += (1.0 - qpow(q, s + 2.0) * qj).ln() + (1.0 - qpow(q, (s + 4.0) / 2.0) * qj).ln()
            + (1.0 - qpow(q, (s + 5.0) / 2.0) * qj).ln()
            - (1.0 - qpow(q, al + 2.0) * qj).ln()
            - (1.0 - qpow(q, be + 2.0) * qj).ln();
    }
    let sign = if k % 2 == 1 { C64::new(0.0, std::f64::consts::PI) } else { c(0.0) };
    acc + sign - (kf * kf / 4.0 + (al + be / 2.0 + 1.0) * kf) * q.ln()
}

/// Eigenfunction coefficients with diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Eigenfunction {
    pub coeffs: CoeffVector,
    /// `h_{n}|a_{n}|²` for `n = 1 … N`.
    pub weighted: Vec<f64>,
    /// Whether the weighted terms decrease over the last quarter of the range.
    pub tail_decreasing: bool,
    /// `|r_1 − (μ − B_0)|/|μ − B_0|`: zero exactly at an eigenvalue.
    pub start_mismatch: f64,
}

/// `g = Σ_{n=1}^{N} a_n P_n^{(α,β)}` with `a_1 = 1`.
pub fn eigenfunction(lambda: C64, level: &JacobiLevel, n_terms: usize, ctx: &QContext) -> QResult<Eigenfunction> {
    let q = ctx.q();
    let mu = mu_of_lambda(lambda, q);
    let ratios = minimal_ratios(n_terms, mu, level, q, n_terms + 120);
    let mut coeffs = vec![c(0.0); n_terms + 1];
    let mut ln_b = c(0.0);
    for k in 0..n_terms {
        if k > 0 {
            ln_b += ratios[k].ln();
        }
        coeffs[k + 1] = (ln_an_prefactor(k, level, q) + ln_b).exp();
    }
    let mut weighted = Vec::with_capacity(n_terms);
    for (n, a) in coeffs.iter().enumerate().skip(1) {
        weighted.push(norm_h(n, level, ctx)?.norm() * a.norm_sqr());
    }
    let from = weighted.len() * 3 / 4;
    let tail_decreasing = weighted[from..].windows(2).all(|w| w[1] <= w[0] || w[1] == 0.0);
    let b0 = mu - monic_b(0, level, q);
    let start_mismatch = (ratios[1] - b0).norm() / b0.norm();
    Ok(Eigenfunction { coeffs: CoeffVector::new(*level, coeffs), weighted, tail_decreasing, start_mismatch })
}

/// `h_n|a_n|²` from the forward recurrence at arbitrary `λ` (no minimality).
pub fn weighted_forward(lambda: C64, level: &JacobiLevel, n_terms: usize, ctx: &QContext) -> QResult<Vec<f64>> {
    let q = ctx.q();
    let b = super::bn_recurrence_scaled_seq(n_terms, mu_of_lambda(lambda, q), level, ctx);
    let mut out = Vec::with_capacity(n_terms);
    for (k, bk) in b.iter().enumerate().take(n_terms) {
        let ln_a = ln_an_prefactor(k, level, q) + bk.ln();
        out.push(norm_h(k + 1, level, ctx)?.norm() * (2.0 * ln_a.re).exp());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> QContext {
        QContext::new(0.5).unwrap()
    }

    #[test]
    fn one_by_one_oracle() {
        let cx = ctx();
        let lv = JacobiLevel::real(0.3, -0.2);
        let ev = matrix_oracle(1, &lv, &cx).unwrap();
        let (_, c0, _) = recurrence_a_coeffs(1, &lv, 0.5);
        assert!((ev[0] - c0 / (-a_recurrence_scale(&lv, 0.5))).norm() < 1e-15);
    }

    #[test]
    fn equal_parameters_give_imaginary_pairs() {
        let cx = ctx();
        let lv = JacobiLevel::real(0.4, 0.4);
        let ev = matrix_oracle(30, &lv, &cx).unwrap();
        for l in &ev {
            assert!(l.re.abs() < 1e-9 * l.norm().max(1e-12), "{l}");
            assert!(ev.iter().any(|m| (m + l).norm() < 1e-9 * l.norm().max(1e-12)));
        }
    }

    #[test]
    fn prefactor_log_matches_direct() {
        let lv = JacobiLevel::real(0.3, -0.2);
        for k in 0..8 {
            let a = ln_an_prefactor(k, &lv, 0.5).exp();
            let b = super::super::an_prefactor(k, &lv, 0.5);
            assert!((a - b).norm() < 1e-12 * b.norm());
        }
    }

    #[test]
    fn miller_matches_forward_for_small_degree() {
        let cx = ctx();
        let lv = JacobiLevel::real(0.3, -0.2);
        let rep = eigenvalues(&lv, &cx, &EigenOptions { count: 1, truncation: 40, ..Default::default() }).unwrap();
        let l = rep.results[0].lambda;
        let ef = eigenfunction(l, &lv, 30, &cx).unwrap();
        assert!(ef.start_mismatch < 1e-8);
        for k in 0..5 {
            let fw = super::super::an_from_bn(k, l, &lv, &cx);
            assert!((ef.coeffs.coeffs[k + 1] - fw).norm() < 1e-6 * fw.norm());
        }
    }
}
