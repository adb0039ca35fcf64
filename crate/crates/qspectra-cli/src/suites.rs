//! Named verification suites, one per documented invariant.
//!
//! Every suite reduces to a single worst-case deviation compared against a
//! fixed tolerance. Parameter draws come from a Weyl sequence, so reruns see
//! the same points.

use crate::config::RunConfig;
use crate::output::{Cell, Table};
use num_complex::Complex64 as C64;
use qspectra::awop::{
    dual_projections, ladder_residual, orthogonality_deviation, right_inverse_coeff_residual, right_inverse_residual,
    t_coeffs, t_quadrature_kernel, CoeffVector,
};
use qspectra::framework::{
    eigen_recurrence, monicize, qjacobi_monic_deviation, qjacobi_u, shift_invariance_deviation, dual_coefficients,
    LadderFamily, QJacobiFamily, UltrasphericalFamily,
};
use qspectra::qcore::identities::{
    heine_iterated_residual, heine_residual, qpoch_split_residual, saalschutz_residual, sears_residual,
    terminating_interpolation_residual,
};
use qspectra::qcore::{c, HypergeometricSpec};
use qspectra::qexp::{
    am_coeff, am_from_jm, eq_dq_residual, jm_closed, level_free_closed, level_free_series, level_shift_residual,
};
use qspectra::qpolys::{
    contiguous_residual, cqjacobi_literal, cqjacobi_seq, connection_down, duality_deviation, weight_w, JacobiLevel,
};
use qspectra::spectral::{
    bn_explicit, bn_recurrence, zero_point_constants, zero_point_normalized, eigenvalues, x_nu_identity_residual, off_spectrum_ratio,
    root_growth_constant, root_growth_normalized, x_nu_normalized, EigenOptions,
};
use qspectra::{QContext, QError, QResult};
use std::sync::Arc;

/// Deterministic points in `[0,1)^d` from `frac(k·√p_d)`.
#[derive(Debug, Clone)]
pub struct Weyl {
    k: u64,
}

const WEYL_PRIMES: [f64; 8] = [2.0, 3.0, 5.0, 7.0, 11.0, 13.0, 17.0, 19.0];

impl Weyl {
    pub fn new() -> Self {
        Weyl { k: 0 }
    }

    /// Next point; `dim ≤ 8`.
    pub fn next(&mut self, dim: usize) -> Vec<f64> {
        self.k += 1;
        WEYL_PRIMES[..dim].iter().map(|p| (self.k as f64 * p.sqrt()).fract()).collect()
    }

    /// Complex number with modulus in `[r0, r1)` and arbitrary argument.
    pub fn disk(&mut self, r0: f64, r1: f64) -> C64 {
        let u = self.next(2);
        C64::from_polar(r0 + (r1 - r0) * u[0], std::f64::consts::TAU * u[1])
    }
}

impl Default for Weyl {
    fn default() -> Self {
        Self::new()
    }
}

/// What a suite measured.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub deviation: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Check {
    fn new(deviation: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Check { deviation, tolerance, detail: detail.into() }
    }

    pub fn passed(&self) -> bool {
        self.deviation.is_finite() && self.deviation <= self.tolerance
    }
}

#[derive(Debug)]
pub enum SuiteError {
    /// The configuration is outside the suite's domain.
    Skip(String),
    Numeric(QError),
}

impl From<QError> for SuiteError {
    fn from(e: QError) -> Self {
        SuiteError::Numeric(e)
    }
}

type SuiteResult = Result<Check, SuiteError>;

pub struct Suite {
    pub name: &'static str,
    pub invariant: &'static str,
    pub run: fn(&RunConfig) -> SuiteResult,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Error,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub name: &'static str,
    pub status: Status,
    pub deviation: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl Outcome {
    /// A skipped suite is not a failure.
    pub fn ok(&self) -> bool {
        matches!(self.status, Status::Pass | Status::Skip)
    }
}

pub fn run_suite(s: &Suite, cfg: &RunConfig) -> Outcome {
    match (s.run)(cfg) {
        Ok(ch) => Outcome {
            name: s.name,
            status: if ch.passed() { Status::Pass } else { Status::Fail },
            deviation: ch.deviation,
            tolerance: ch.tolerance,
            detail: ch.detail,
        },
        Err(SuiteError::Skip(why)) => Outcome { name: s.name, status: Status::Skip, deviation: 0.0, tolerance: 0.0, detail: why },
        Err(SuiteError::Numeric(e)) => Outcome {
            name: s.name,
            status: Status::Error,
            deviation: f64::NAN,
            tolerance: 0.0,
            detail: e.to_string(),
        },
    }
}

pub fn outcomes_table(outcomes: &[Outcome]) -> Table {
    let mut t = Table::new(&["suite", "status", "deviation", "tolerance", "detail"]);
    for o in outcomes {
        t.push(vec![o.name.into(), o.status.label().into(), o.deviation.into(), o.tolerance.into(), Cell::Text(o.detail.clone())]);
    }
    t
}

pub fn find(name: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.name == name)
}

fn ctx(cfg: &RunConfig) -> Result<QContext, SuiteError> {
    cfg.ctx().map_err(|e| SuiteError::Numeric(QError::InvalidParameter(e)))
}

fn orthogonal_level(cfg: &RunConfig) -> Result<JacobiLevel, SuiteError> {
    let lv = cfg.level();
    lv.validate_orthogonal().map_err(|e| SuiteError::Skip(format!("level not admissible: {e}")))?;
    Ok(lv)
}

fn rel(a: C64, b: C64) -> f64 {
    let d = (a - b).norm();
    if d == 0.0 {
        0.0
    } else {
        d / a.norm().max(b.norm())
    }
}

// --- qcore ------------------------------------------------------------------

fn heine(cfg: &RunConfig) -> SuiteResult {
    let cx = ctx(cfg)?;
    let mut w = Weyl::new();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (a, b, cc, z) = (w.disk(0.1, 1.5), w.disk(0.05, 0.9), w.disk(0.2, 1.2), w.disk(0.05, 0.9));
        worst = worst.max(heine_residual(a, b, cc, z, cfg.q, &cx)?);
    }
    Ok(Check::new(worst, 1e-10, "100 draws, |b|, |z| < 0.9"))
}

fn heine_iterated(cfg: &RunConfig) -> SuiteResult {
    let cx = ctx(cfg)?;
    let mut w = Weyl::new();
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (a, b, cc, z) = (w.disk(0.1, 0.9), w.disk(0.1, 0.9), w.disk(0.5, 0.9), w.disk(0.05, 0.5));
        worst = worst.max(heine_iterated_residual(a, b, cc, z, cfg.q, &cx)?);
    }
    Ok(Check::new(worst, 1e-10, "100 draws, |z| < 0.5, |abz/c| < 0.81"))
}

fn sears(cfg: &RunConfig) -> SuiteResult {
    let cx = ctx(cfg)?;
    let mut w = Weyl::new();
    let mut worst = 0.0f64;
    for n in 0..=8 {
        for _ in 0..5 {
            let (a, b, cc, d, e) = (w.disk(0.2, 1.2), w.disk(0.2, 1.2), w.disk(0.2, 1.2), w.disk(0.3, 1.3), w.disk(0.3, 1.3));
            worst = worst.max(sears_residual(n, a, b, cc, d, e, cfg.q, &cx)?);
        }
    }
    Ok(Check::new(worst, 1e-10, "n ≤ 8, 5 draws each"))
}

fn saalschutz(cfg: &RunConfig) -> SuiteResult {
    let cx = ctx(cfg)?;
    let mut w = Weyl::new();
    let mut worst = 0.0f64;
    for n in 0..=8 {
        for _ in 0..5 {
            let (a, b, cc) = (w.disk(0.2, 1.2), w.disk(0.2, 1.2), w.disk(0.3, 1.3));
            worst = worst.max(saalschutz_residual(n, a, b, cc, cfg.q, &cx)?);
        }
    }
    Ok(Check::new(worst, 1e-10, "n ≤ 8, 5 draws each"))
}

fn qpoch_split(cfg: &RunConfig) -> SuiteResult {
    let mut w = Weyl::new();
    let mut worst = 0.0f64;
    for n in 0..=10 {
        for m in 0..=10 {
            worst = worst.max(qpoch_split_residual(w.disk(0.1, 1.5), cfg.q, n, m));
        }
    }
    Ok(Check::new(worst, 1e-14, "0 ≤ n, m ≤ 10"))
}

fn interpolation(cfg: &RunConfig) -> SuiteResult {
    let cx = ctx(cfg)?;
    let mut w = Weyl::new();
    let mut worst = 0.0f64;
    for d in 0..=6i32 {
        let spec = HypergeometricSpec::new(vec![c(cfg.q.powi(-d)), w.disk(0.2, 1.0), w.disk(0.2, 1.0)], vec![w.disk(0.3, 1.0), w.disk(0.3, 1.0)], cfg.q, w.disk(0.1, 0.9));
        worst = worst.max(terminating_interpolation_residual(&spec, 1.0, &cx)?);
    }
    Ok(Check::new(worst, 1e-10, "terminating ₃φ₂ of degree ≤ 6"))
}

// --- qpolys -----------------------------------------------------------------

fn orthogonality(cfg: &RunConfig) -> SuiteResult {
    let lv = orthogonal_level(cfg)?;
    let (off, diag) = orthogonality_deviation(8, &lv, &ctx(cfg)?, &cfg.quad())?;
    Ok(Check::new(off.max(diag), 1e-8, format!("n, m ≤ 8; off-diagonal {off:.3e}, diagonal {diag:.3e}")))
}

fn duality(cfg: &RunConfig) -> SuiteResult {
    let lv = cfg.level();
    let mut worst = 0.0f64;
    for n in 1..=6 {
        worst = worst.max(duality_deviation(n, &lv, cfg.q)?);
    }
    Ok(Check::new(worst, 1e-10, "c_{m,n} h_n(A+1)/h_m(A) vs closed-form expansion, n ≤ 6, base q²"))
}

fn contiguous(cfg: &RunConfig) -> SuiteResult {
    let lv = cfg.level();
    let cx = ctx(cfg)?;
    let mut worst = 0.0f64;
    for n in 1..=8 {
        worst = worst.max(contiguous_residual(n, &lv, &cx)?);
    }
    Ok(Check::new(worst, 1e-10, "1 ≤ n ≤ 8"))
}

fn three_term(cfg: &RunConfig) -> SuiteResult {
    let lv = cfg.level();
    let cx = ctx(cfg)?;
    let up = lv.shifted(1.0);
    let mut worst = 0.0f64;
    for &x in &[-0.8, -0.3, 0.2, 0.7] {
        for n in 0..=6usize {
            let lhs = cqjacobi_literal(n, &lv, c(x), &cx)?;
            let t = connection_down(n, &lv, &cx);
            let mut rhs = t.c_nn * cqjacobi_literal(n, &up, c(x), &cx)?;
            if n >= 1 {
                rhs += t.c_nn1 * cqjacobi_literal(n - 1, &up, c(x), &cx)?;
            }
            if n >= 2 {
                rhs += t.c_nn2 * cqjacobi_literal(n - 2, &up, c(x), &cx)?;
            }
            worst = worst.max(rel(lhs, rhs));
        }
    }
    Ok(Check::new(worst, 1e-10, "literal ₄φ₃ values against the connection chain, n ≤ 6"))
}

// --- awop -------------------------------------------------------------------

fn ladder(cfg: &RunConfig) -> SuiteResult {
    let lv = cfg.level();
    let cx = ctx(cfg)?;
    let mut w = Weyl::new();
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let x = 1.9 * w.next(1)[0] - 0.95;
        for n in 1..=8 {
            worst = worst.max(ladder_residual(n, &lv, x, &cx)?);
        }
    }
    Ok(Check::new(worst, 1e-10, "n ≤ 8, 20 points"))
}

fn test_polynomial(level: JacobiLevel) -> CoeffVector {
    CoeffVector::new(level, vec![c(0.4), C64::new(-1.0, 0.2), c(2.5), c(0.01), c(-0.3), c(0.2)])
}

fn right_inverse(cfg: &RunConfig) -> SuiteResult {
    let lv = orthogonal_level(cfg)?;
    let cx = ctx(cfg)?;
    let g = test_polynomial(lv.shifted(1.0));
    let quad = right_inverse_residual(&g, &[-0.7, -0.2, 0.1, 0.55, 0.9], &cx, &cfg.quad())?;
    let coeff = right_inverse_coeff_residual(&g, &cx);
    Ok(Check::new(quad.max(coeff), 1e-7, format!("degree 5; quadrature {quad:.3e}, coefficients {coeff:.3e}")))
}

fn kernel_coefficient(cfg: &RunConfig) -> SuiteResult {
    let lv = orthogonal_level(cfg)?;
    let cx = ctx(cfg)?;
    let up = lv.shifted(1.0);
    let mut worst = 0.0f64;
    for k in 0..=4 {
        let g = CoeffVector::unit(up, k);
        let want = t_coeffs(&g, &cx);
        for &x in &[-0.6, 0.15, 0.8] {
            let got = t_quadrature_kernel(|y| Ok(g.eval(c(y), &cx)), c(x), &lv, 60, &cx, &cfg.quad())?.value();
            worst = worst.max(rel(got, want.eval(c(x), &cx)));
        }
    }
    Ok(Check::new(worst, 1e-10, "T P_k^{(α+1,β+1)} by kernel quadrature vs coefficients, k ≤ 4"))
}

// --- spectral ---------------------------------------------------------------

fn closed_form(cfg: &RunConfig) -> SuiteResult {
    let lv = cfg.level();
    let cx = ctx(cfg)?;
    let mut w = Weyl::new();
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let mu = w.disk(0.0, 3.0);
        for n in 0..=20 {
            let a = bn_explicit(n, mu, &lv, &cx)?;
            let b = bn_recurrence(n, mu, &lv, &cx);
            worst = worst.max((a - b).norm() / b.norm().max(1.0));
        }
    }
    Ok(Check::new(worst, 1e-10, "n ≤ 20, 50 points |μ| ≤ 3"))
}

fn off_spectrum_limit(cfg: &RunConfig) -> SuiteResult {
    let lv = cfg.level();
    let cx = ctx(cfg)?;
    let mut worst = 0.0f64;
    for x in [c(0.5), C64::new(1.0, 1.0), c(-2.0)] {
        worst = worst.max((off_spectrum_ratio(80, x, &lv, &cx)? - 1.0).norm());
    }
    Ok(Check::new(worst, 1e-5, "x ∈ {0.5, 1+i, −2}, n = 80"))
}

fn zero_point_growth(cfg: &RunConfig) -> SuiteResult {
    let lv = cfg.level();
    if !lv.is_real() || lv.alpha == lv.beta {
        return Err(SuiteError::Skip("needs real α ≠ β".into()));
    }
    let cx = ctx(cfg)?;
    let mut worst = 0.0f64;
    let mut detail = Vec::new();
    for l in [lv, JacobiLevel::new(lv.beta, lv.alpha)] {
        let (_, cc) = zero_point_constants(&l, &cx)?;
        let v60 = zero_point_normalized(60, &l, &cx)?;
        let v59 = zero_point_normalized(59, &l, &cx)?;
        let ratio = (v60 / v59 - 1.0).norm();
        let lim = rel(v60, cc);
        // ratio test at 1e−4 folded onto the 1e−3 scale
        worst = worst.max(lim).max(ratio * 10.0);
        detail.push(format!("({}, {}): ratio {ratio:.2e}, limit {lim:.2e}", l.alpha.re, l.beta.re));
    }
    Ok(Check::new(worst, 1e-3, detail.join("; ")))
}

fn first_root(cfg: &RunConfig, cx: &QContext) -> Result<C64, SuiteError> {
    let lv = orthogonal_level(cfg)?;
    let rep = eigenvalues(&lv, cx, &EigenOptions { count: 1, truncation: cfg.trunc, ..Default::default() })?;
    rep.results.first().map(|r| r.mu).ok_or_else(|| SuiteError::Numeric(QError::Eigen("no certified eigenvalue".into())))
}

fn root_growth(cfg: &RunConfig) -> SuiteResult {
    let cx = ctx(cfg)?;
    let xi = first_root(cfg, &cx)?;
    let lv = cfg.level();
    let dev = rel(root_growth_normalized(50, xi, &lv, &cx)?, root_growth_constant(xi, &lv, &cx)?);
    Ok(Check::new(dev, 1e-3, format!("certified root ξ = {xi:.6}, n = 50")))
}

fn x_nu_identity(cfg: &RunConfig) -> SuiteResult {
    let lv = cfg.level();
    let cx = ctx(cfg)?;
    let mut w = Weyl::new();
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let x = w.disk(0.5, 2.5);
        for n in 1..=10 {
            worst = worst.max(x_nu_identity_residual(n, 0, x, &lv, &cx)?);
        }
    }
    Ok(Check::new(worst, 1e-10, "n ≤ 10, ν = 0, 5 points; relative to the term scale"))
}

fn x_nu_normalization(cfg: &RunConfig) -> SuiteResult {
    let cx = ctx(cfg)?;
    let xi = first_root(cfg, &cx)?;
    let dev = (x_nu_normalized(60, xi, &cfg.level(), &cx)? - 1.0).norm();
    Ok(Check::new(dev, 1e-6, format!("X_n(ξ)(−ξ)^n at n = 60, ξ = {xi:.6}")))
}

fn eigen_certification(cfg: &RunConfig) -> SuiteResult {
    let lv = orthogonal_level(cfg)?;
    let cx = ctx(cfg)?;
    let rep = eigenvalues(&lv, &cx, &EigenOptions { count: 5, truncation: cfg.trunc, ..Default::default() })?;
    if rep.results.len() < 5 {
        return Ok(Check::new(f64::INFINITY, 1e-9, format!("only {} certified: {}", rep.results.len(), rep.failures.join("; "))));
    }
    let worst = rep.results.iter().map(|r| r.residual_f).fold(0.0, f64::max);
    Ok(Check::new(worst, 1e-9, format!("{} eigenvalues, truncation {}", rep.results.len(), rep.truncation)))
}

// --- qexp -------------------------------------------------------------------

fn expansion_routes(cfg: &RunConfig) -> SuiteResult {
    let lv = cfg.level();
    let cx = ctx(cfg)?;
    let mut worst = 0.0f64;
    for r in [c(0.3), C64::new(0.0, 0.5)] {
        for m in 0..=10 {
            let a = am_from_jm(m, jm_closed(m, r, &lv, &cx)?, &lv, &cx)?;
            worst = worst.max(rel(a, am_coeff(m, r, &lv, &cx)?));
        }
    }
    Ok(Check::new(worst, 1e-10, "m ≤ 10, r ∈ {0.3, 0.5i}"))
}

fn eq_eigenrelation(cfg: &RunConfig) -> SuiteResult {
    let cx = ctx(cfg)?;
    let mut w = Weyl::new();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let (a, b) = (w.disk(0.1, 0.9), w.disk(0.1, 0.9));
        let x = 1.8 * w.next(1)[0] - 0.9;
        worst = worst.max(eq_dq_residual(x, a, b, &cx)?);
    }
    Ok(Check::new(worst, 1e-10, "10 draws |a|, |b| < 0.9"))
}

fn sample_points() -> [(C64, C64); 4] {
    [(c(0.3), c(2.5)), (c(-0.6), C64::new(1.5, 0.7)), (c(0.1), c(-3.0)), (c(0.75), C64::new(0.0, 2.0))]
}

fn level_independence(cfg: &RunConfig) -> SuiteResult {
    let lv = cfg.level();
    let cx = ctx(cfg)?;
    let mut worst = 0.0f64;
    for (x, lam) in sample_points() {
        worst = worst.max(level_shift_residual(x, lam, &lv, 2.0, &cx)?);
    }
    Ok(Check::new(worst, 1e-8, "level (α, β) vs (α+2, β+2), 4 points"))
}

fn level_free(cfg: &RunConfig) -> SuiteResult {
    let lv = cfg.level();
    let cx = ctx(cfg)?;
    let mut worst = 0.0f64;
    for (x, lam) in sample_points() {
        worst = worst.max(rel(level_free_series(x, lam, &lv, &cx)?, level_free_closed(x, lam, &cx)?));
    }
    Ok(Check::new(worst, 1e-8, "series vs q-exponential closed form, 4 points"))
}

// --- framework --------------------------------------------------------------

fn instance_equality(cfg: &RunConfig) -> SuiteResult {
    let lv = cfg.level();
    let cx = ctx(cfg)?;
    let sys = monicize(Arc::new(QJacobiFamily::new(lv, cx)), qjacobi_u(cfg.q));
    Ok(Check::new(qjacobi_monic_deviation(&sys, &lv, cfg.q, 20), 1e-14, "n ≤ 20"))
}

fn ultraspherical(_cfg: &RunConfig) -> SuiteResult {
    let mut worst = 0.0f64;
    for nu in [0.25, 0.7, 2.0] {
        let fam = UltrasphericalFamily::new(nu)?;
        for n in 1..=12 {
            let g = eigen_recurrence(&fam, n);
            let k = fam.classical_recurrence(n);
            for (a, b) in g.iter().zip(&k) {
                worst = worst.max((a / nu - b).norm());
            }
        }
        let sys = monicize(Arc::new(fam), c(1.0));
        worst = worst.max(shift_invariance_deviation(&sys, 10));
    }
    Ok(Check::new(worst, 1e-14, "ν ∈ {0.25, 0.7, 2}, n ≤ 12, with shift invariance"))
}

fn dual_consistency(cfg: &RunConfig) -> SuiteResult {
    let lv = orthogonal_level(cfg)?;
    let cx = ctx(cfg)?;
    let fam = QJacobiFamily::new(lv, cx);
    let up = lv.shifted(1.0);
    let mut worst = 0.0f64;
    for n in 0..=6usize {
        let d = dual_coefficients(&fam as &dyn LadderFamily, n)?;
        for &x in &[-0.6, 0.3, 0.85] {
            let lhs = cqjacobi_seq(n, &up, c(x), &cx)[n] * weight_w(&up, x, &cx)?;
            let p = cqjacobi_seq(n + 2, &lv, c(x), &cx);
            let rhs = (d[0] * p[n] + d[1] * p[n + 1] + d[2] * p[n + 2]) * weight_w(&lv, x, &cx)?;
            worst = worst.max(rel(lhs, rhs));
        }
    }
    // the same weighting reproduces the base-q² closed-form coefficients
    for n in 1..=6 {
        worst = worst.max(duality_deviation(n, &lv, cfg.q)?);
    }
    // and a direct projection confirms the lower coefficients vanish
    let proj = dual_projections(5, &lv, cfg.q, &cfg.quad())?;
    let low = proj[..4].iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(Check::new(worst.max(low), 1e-10, format!("n ≤ 6; pointwise/closed-form {worst:.2e}, vanishing projections {low:.2e}")))
}

fn level_shift(cfg: &RunConfig) -> SuiteResult {
    let lv = cfg.level();
    let cx = ctx(cfg)?;
    let mut worst = 0.0f64;
    for (x, lam) in sample_points() {
        worst = worst.max(level_shift_residual(x, lam, &lv, 1.0, &cx)?);
    }
    Ok(Check::new(worst, 1e-8, "level (α, β) vs (α+1, β+1), 4 points"))
}

// --- cli --------------------------------------------------------------------

fn determinism(cfg: &RunConfig) -> SuiteResult {
    let a = crate::commands::poly(cfg, 6, 9).map_err(|_| QError::InvalidParameter("poly table failed".into()))?;
    let b = crate::commands::poly(cfg, 6, 9).map_err(|_| QError::InvalidParameter("poly table failed".into()))?;
    let same = a.to_csv() == b.to_csv() && a.to_json(&cfg.describe()) == b.to_json(&cfg.describe());
    Ok(Check::new(if same { 0.0 } else { 1.0 }, 0.0, "poly table rendered twice, CSV and JSON"))
}

pub static SUITES: &[Suite] = &[
    Suite { name: "qcore.heine", invariant: "Heine transformation", run: heine },
    Suite { name: "qcore.heine-iterated", invariant: "iterated Heine transformation", run: heine_iterated },
    Suite { name: "qcore.sears", invariant: "Sears transformation of a balanced terminating 4phi3", run: sears },
    Suite { name: "qcore.saalschutz", invariant: "q-Pfaff-Saalschutz sum", run: saalschutz },
    Suite { name: "qcore.qpoch-split", invariant: "(a)_{n+m} = (a)_n (aq^n)_m", run: qpoch_split },
    Suite { name: "qcore.interpolation", invariant: "terminating series is a polynomial in z", run: interpolation },
    Suite { name: "qpolys.orthogonality", invariant: "orthogonality with the corrected norm", run: orthogonality },
    Suite { name: "qpolys.duality", invariant: "connection/dual-expansion pairing", run: duality },
    Suite { name: "qpolys.contiguous", invariant: "contiguous relation for the 4phi3", run: contiguous },
    Suite { name: "qpolys.three-term", invariant: "literal polynomials obey the connection chain", run: three_term },
    Suite { name: "awop.ladder", invariant: "D_q lowers degree with factor xi_n", run: ladder },
    Suite { name: "awop.right-inverse", invariant: "D_q T g = g", run: right_inverse },
    Suite { name: "awop.kernel-coefficient", invariant: "kernel form of T equals coefficient form", run: kernel_coefficient },
    Suite { name: "spectral.closed-form", invariant: "explicit b_n equals the recurrence", run: closed_form },
    Suite { name: "spectral.off-spectrum-limit", invariant: "x^n b_n(1/x) tends to F(1/x)", run: off_spectrum_limit },
    Suite { name: "spectral.zero-point-growth", invariant: "b_n(0) growth constant, both orderings", run: zero_point_growth },
    Suite { name: "spectral.root-growth", invariant: "b_n at a zero of F", run: root_growth },
    Suite { name: "spectral.x-nu-identity", invariant: "X_nu telescoping identity", run: x_nu_identity },
    Suite { name: "spectral.x-nu-normalization", invariant: "X_n(xi)(-xi)^n tends to 1", run: x_nu_normalization },
    Suite { name: "spectral.eigen-certification", invariant: "certified eigenvalues", run: eigen_certification },
    Suite { name: "qexp.expansion-routes", invariant: "coefficient route equals closed form", run: expansion_routes },
    Suite { name: "qexp.eq-eigenrelation", invariant: "D_q eigenrelation of the q-exponential", run: eq_eigenrelation },
    Suite { name: "qexp.level-independence", invariant: "level shift by two", run: level_independence },
    Suite { name: "qexp.level-free", invariant: "level-free function in closed form", run: level_free },
    Suite { name: "framework.instance-equality", invariant: "q-Jacobi family gives the direct coefficients", run: instance_equality },
    Suite { name: "framework.ultraspherical", invariant: "generic recurrence reduces to the ultraspherical one", run: ultraspherical },
    Suite { name: "framework.dual-consistency", invariant: "dual coefficients through h-ratios", run: dual_consistency },
    Suite { name: "framework.level-shift", invariant: "level shift by one", run: level_shift },
    Suite { name: "cli.determinism", invariant: "identical config gives identical bytes", run: determinism },
];

/// Sanity helper used by tests: unit-test access to a suite's raw check.
pub fn check(name: &str, cfg: &RunConfig) -> QResult<Outcome> {
    find(name).map(|s| run_suite(s, cfg)).ok_or_else(|| QError::InvalidParameter(format!("unknown suite {name}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique() {
        for (i, a) in SUITES.iter().enumerate() {
            assert!(SUITES[i + 1..].iter().all(|b| b.name != a.name), "{}", a.name);
        }
    }

    #[test]
    fn weyl_is_deterministic_and_in_range() {
        let mut a = Weyl::new();
        let mut b = Weyl::new();
        for _ in 0..50 {
            let (u, v) = (a.next(3), b.next(3));
            assert_eq!(u, v);
            assert!(u.iter().all(|t| (0.0..1.0).contains(t)));
        }
        let z = Weyl::new().disk(0.5, 0.6);
        assert!((0.5..0.6).contains(&z.norm()));
    }

    #[test]
    fn skip_outside_domain() {
        let cfg = RunConfig { beta: crate::config::BetaSpec::Value(c(0.3)), ..Default::default() };
        assert_eq!(check("spectral.zero-point-growth", &cfg).unwrap().status, Status::Skip);
    }
}
