//! The Askey–Wilson operator `D_q`, the kernel `K_{α,β;q}` and the integral
//! operator `T_{α,β;q}` — pointwise, in coefficient space and by quadrature.
//!
//! Integrals over `[−1, 1]` against `w(x) dx` are done in θ (`x = cos θ`), where
//! the `(1 − x²)^{−1/2}` factor of the weight cancels the Jacobian and the
//! integrand becomes smooth and periodic.

use crate::error::{QError, QResult};
use crate::qcore::{c, e_of_x, qpoch, qpow, QContext};
use crate::qpolys::{cqjacobi_aw_seq, norm_h, weight_theta, JacobiLevel};
use num_complex::Complex64 as C64;

/// Ladder factor `ξ_n(α,β)` with `D_q P_n^{(α,β)} = ξ_n P_{n−1}^{(α+1,β+1)}`.
pub fn ladder_xi(n: i64, level: &JacobiLevel, q: f64) -> C64 {
    let s = level.s();
    let nf = n as f64;
    2.0 * qpow(q, -nf + (2.0 * level.alpha + 5.0) / 4.0) * (1.0 - qpow(q, s + nf + 1.0))
        / ((1.0 + qpow(q, (s + 1.0) / 2.0)) * (1.0 + qpow(q, (s + 2.0) / 2.0)) * (1.0 - q))
}

/// Coefficient of `g_n P_{n+1}^{(α,β)}` in `T g`; equals `1/ξ_{n+1}`.
pub fn t_factor(n: usize, level: &JacobiLevel, q: f64) -> C64 {
    let s = level.s();
    let nf = n as f64;
    (1.0 - q) * qpoch(-qpow(q, (s + 1.0) / 2.0), q.sqrt(), 2) * qpow(q, nf - (2.0 * level.alpha + 1.0) / 4.0)
        / (2.0 * (1.0 - qpow(q, s + nf + 2.0)))
}

/// `D_q f` at `x ∈ (−1, 1)`; `f` is evaluated at the two complex shifted points.
pub fn dq_pointwise<F>(f: F, x: f64, ctx: &QContext) -> QResult<C64>
where
    F: Fn(C64) -> QResult<C64>,
{
    if !(x > -1.0 && x < 1.0) {
        return Err(QError::Domain(format!("D_q needs x in (−1,1), got {x}")));
    }
    let s = ctx.p();
    let e = e_of_x(c(x));
    let up = s * e;
    let dn = e / s;
    let fp = f((up + 1.0 / up) / 2.0)?;
    let fm = f((dn + 1.0 / dn) / 2.0)?;
    let sin_t = (e - 1.0 / e) / C64::new(0.0, 2.0);
    Ok((fp - fm) / (C64::new(0.0, 1.0) * (s - 1.0 / s) * sin_t))
}

/// Finite expansion `Σ f_n P_n^{(α,β)}(x|q)` tagged with its level.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector {
    pub level: JacobiLevel,
    pub coeffs: Vec<C64>,
}

impl CoeffVector {
    pub fn new(level: JacobiLevel, coeffs: Vec<C64>) -> Self {
        CoeffVector { level, coeffs }
    }

    pub fn zeros(level: JacobiLevel, len: usize) -> Self {
        CoeffVector { level, coeffs: vec![c(0.0); len] }
    }

    /// Unit vector at degree `n`.
    pub fn unit(level: JacobiLevel, n: usize) -> Self {
        let mut v = Self::zeros(level, n + 1);
        v.coeffs[n] = c(1.0);
        v
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Evaluate the expansion at (possibly complex) `x`.
    pub fn eval(&self, x: C64, ctx: &QContext) -> C64 {
        if self.coeffs.is_empty() {
            return c(0.0);
        }
        let p = cqjacobi_aw_seq(self.coeffs.len() - 1, &self.level, x, ctx.q());
        self.coeffs.iter().zip(&p).map(|(a, b)| a * b).sum()
    }

    /// Same-level sum; different levels are rejected.
    pub fn add(&self, other: &CoeffVector) -> QResult<CoeffVector> {
        if self.level != other.level {
            return Err(QError::InvalidParameter("cannot combine coefficient vectors at different levels".into()));
        }
        let n = self.len().max(other.len());
        let get = |v: &Vec<C64>, i: usize| v.get(i).copied().unwrap_or(c(0.0));
        let coeffs = (0..n).map(|i| get(&self.coeffs, i) + get(&other.coeffs, i)).collect();
        Ok(CoeffVector::new(self.level, coeffs))
    }

    pub fn scale(&self, s: C64) -> CoeffVector {
        CoeffVector::new(self.level, self.coeffs.iter().map(|a| a * s).collect())
    }
}

/// `D_q` in coefficient space: level `(α,β)` → `(α+1,β+1)`, degree drops by one.
pub fn dq_coeffs(f: &CoeffVector, ctx: &QContext) -> CoeffVector {
    let q = ctx.q();
    let coeffs = (1..f.len()).map(|n| ladder_xi(n as i64, &f.level, q) * f.coeffs[n]).collect();
    CoeffVector::new(f.level.shifted(1.0), coeffs)
}

/// `T` in coefficient space: `g` at level `(α+1,β+1)` → level `(α,β)`.
pub fn t_coeffs(g: &CoeffVector, ctx: &QContext) -> CoeffVector {
    let q = ctx.q();
    let level = g.level.shifted(-1.0);
    let mut coeffs = vec![c(0.0)];
    coeffs.extend(g.coeffs.iter().enumerate().map(|(n, gn)| t_factor(n, &level, q) * gn));
    CoeffVector::new(level, coeffs)
}

/// Gauss–Legendre rule mapped to `θ ∈ (0, π)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn gauss_legendre_theta(n: usize) -> Self {
        let (x, w) = gauss_legendre(n);
        let h = std::f64::consts::FRAC_PI_2;
        QuadratureRule {
            nodes: x.iter().map(|t| h * (t + 1.0)).collect(),
            weights: w.iter().map(|t| h * t).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Nodes and weights on `[−1, 1]` (Newton on `P_n`, Tricomi initial guesses).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p0 = 1.0;
                p1 = z;
            }
            dp = nf * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Controls for the doubling quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub initial_nodes: usize,
    pub max_nodes: usize,
    pub tol: f64,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { initial_nodes: 32, max_nodes: 2048, tol: 1e-13 }
    }
}

/// Outcome of a doubling quadrature: values, `|I_N − I_{2N}|` estimate and
/// whether that estimate met the tolerance.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadResult {
    pub values: Vec<C64>,
    pub error_estimate: f64,
    pub nodes: usize,
    pub converged: bool,
}

impl QuadResult {
    pub fn value(&self) -> C64 {
        self.values[0]
    }
}

fn apply_rule<F>(f: &F, rule: &QuadratureRule, dim: usize) -> QResult<Vec<C64>>
where
    F: Fn(f64) -> QResult<Vec<C64>>,
{
    let mut acc = vec![c(0.0); dim];
    for (t, w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(*t)?;
        for (a, b) in acc.iter_mut().zip(&v) {
            *a += b * w;
        }
    }
    Ok(acc)
}

/// `∫_0^π f(θ) dθ` for vector-valued `f` of length `dim`, doubling the node
/// count until the largest component change is below `tol · max |I|`.
pub fn integrate_theta<F>(f: F, dim: usize, opts: &QuadOptions) -> QResult<QuadResult>
where
    F: Fn(f64) -> QResult<Vec<C64>>,
{
    let mut n = opts.initial_nodes.max(2);
    let mut prev = apply_rule(&f, &QuadratureRule::gauss_legendre_theta(n), dim)?;
    loop {
        let n2 = 2 * n;
        let cur = apply_rule(&f, &QuadratureRule::gauss_legendre_theta(n2), dim)?;
        let err = prev.iter().zip(&cur).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        let scale = cur.iter().map(|a| a.norm()).fold(0.0, f64::max);
        let converged = err <= opts.tol * scale.max(f64::MIN_POSITIVE) || err == 0.0;
        if converged || n2 >= opts.max_nodes {
            return Ok(QuadResult { values: cur, error_estimate: err, nodes: n2, converged });
        }
        prev = cur;
        n = n2;
    }
}

/// `∫_{−1}^{1} f(x) w_{α,β}(x|q) dx` via θ.
pub fn integrate_weighted<F>(f: F, dim: usize, level: &JacobiLevel, ctx: &QContext, opts: &QuadOptions) -> QResult<QuadResult>
where
    F: Fn(f64) -> QResult<Vec<C64>>,
{
    integrate_theta(
        |t| {
            let w = weight_theta(level, t, ctx)?;
            Ok(f(t.cos())?.into_iter().map(|v| v * w).collect())
        },
        dim,
        opts,
    )
}

/// One term of the kernel sum, without the `P` factors.
fn kernel_coefficient(n: usize, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    Ok(t_factor(n, level, ctx.q()) / norm_h(n, &level.shifted(1.0), ctx)?)
}

/// Partial sum of the kernel `K_{α,β;q}(x, y)` with `n_terms` terms.
pub fn kernel_eval(x: C64, y: C64, level: &JacobiLevel, n_terms: usize, ctx: &QContext) -> QResult<C64> {
    Ok(kernel_terms(x, y, level, n_terms, ctx)?.iter().sum())
}

/// The individual kernel terms `n = 0 … n_terms−1`.
pub fn kernel_terms(x: C64, y: C64, level: &JacobiLevel, n_terms: usize, ctx: &QContext) -> QResult<Vec<C64>> {
    let q = ctx.q();
    let px = cqjacobi_aw_seq(n_terms, level, x, q);
    let py = cqjacobi_aw_seq(n_terms, &level.shifted(1.0), y, q);
    (0..n_terms).map(|n| Ok(kernel_coefficient(n, level, ctx)? * px[n + 1] * py[n])).collect()
}

/// Kernel with automatic truncation: stop once `|term| ρ/(1−ρ) < tol · |K|`,
/// `ρ` the larger of `q` and the observed term ratio.
pub fn kernel_auto(x: C64, y: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<(C64, usize)> {
    let q = ctx.q();
    let mut n_terms = 32;
    loop {
        let t = kernel_terms(x, y, level, n_terms, ctx)?;
        let mut sum = c(0.0);
        for (n, term) in t.iter().enumerate() {
            sum += term;
            if n >= 2 {
                let prev = t[n - 1].norm();
                let rho = if prev > 0.0 { (term.norm() / prev).max(q) } else { q };
                if rho < 1.0 && term.norm() * rho / (1.0 - rho) < ctx.tol * sum.norm().max(1e-300) {
                    return Ok((sum, n + 1));
                }
            }
        }
        if n_terms >= ctx.max_terms {
            return Err(QError::Divergence { terms: n_terms });
        }
        n_terms *= 2;
    }
}

/// Projection coefficients `g_n = ∫ g P_n^{(α+1,β+1)} w_{α+1,β+1} dx / h_n` for
/// `n < n_max`, by doubling quadrature.
pub fn project<G>(g: G, level_up: &JacobiLevel, n_max: usize, ctx: &QContext, opts: &QuadOptions) -> QResult<(CoeffVector, QuadResult)>
where
    G: Fn(f64) -> QResult<C64>,
{
    let q = ctx.q();
    let res = integrate_weighted(
        |x| {
            let gx = g(x)?;
            Ok(cqjacobi_aw_seq(n_max - 1, level_up, c(x), q).into_iter().map(|p| p * gx).collect())
        },
        n_max,
        level_up,
        ctx,
        opts,
    )?;
    let mut coeffs = Vec::with_capacity(n_max);
    for (n, v) in res.values.iter().enumerate() {
        coeffs.push(v / norm_h(n, level_up, ctx)?);
    }
    Ok((CoeffVector::new(*level_up, coeffs), res))
}

/// Number of kernel terms used by [`t_quadrature`].
pub const DEFAULT_KERNEL_TERMS: usize = 60;

/// `(T g)(x) = ∫ K(x, y) g(y) w_{α+1,β+1}(y) dy` with the kernel truncated at
/// `kernel_terms`; the finite kernel sum is taken outside the integral.
pub fn t_quadrature<G>(g: G, x: C64, level: &JacobiLevel, kernel_terms: usize, ctx: &QContext, opts: &QuadOptions) -> QResult<(C64, QuadResult)>
where
    G: Fn(f64) -> QResult<C64>,
{
    let (proj, res) = project(g, &level.shifted(1.0), kernel_terms, ctx, opts)?;
    Ok((t_coeffs(&proj, ctx).eval(x, ctx), res))
}

/// Same operator with the kernel evaluated at every node (literal form).
pub fn t_quadrature_kernel<G>(g: G, x: C64, level: &JacobiLevel, kernel_terms: usize, ctx: &QContext, opts: &QuadOptions) -> QResult<QuadResult>
where
    G: Fn(f64) -> QResult<C64>,
{
    let up = level.shifted(1.0);
    integrate_weighted(|y| Ok(vec![kernel_eval(x, c(y), level, kernel_terms, ctx)? * g(y)?]), 1, &up, ctx, opts)
}

/// Relative residual of `D_q P_n^{(α,β)}(x) = ξ_n P_{n−1}^{(α+1,β+1)}(x)`, `n ≥ 1`.
pub fn ladder_residual(n: usize, level: &JacobiLevel, x: f64, ctx: &QContext) -> QResult<f64> {
    if n == 0 {
        return Err(QError::InvalidParameter("n must be at least 1".into()));
    }
    let q = ctx.q();
    let lhs = dq_pointwise(|z| Ok(cqjacobi_aw_seq(n, level, z, q)[n]), x, ctx)?;
    let rhs = ladder_xi(n as i64, level, q) * cqjacobi_aw_seq(n - 1, &level.shifted(1.0), c(x), q)[n - 1];
    Ok((lhs - rhs).norm() / rhs.norm().max(lhs.norm()).max(f64::MIN_POSITIVE))
}

/// `G_{nm} = ∫ P_n P_m w dx` for `n, m ≤ n_max`, row-major.
pub fn gram_matrix(n_max: usize, level: &JacobiLevel, ctx: &QContext, opts: &QuadOptions) -> QResult<(Vec<C64>, QuadResult)> {
    let q = ctx.q();
    let dim = n_max + 1;
    let res = integrate_weighted(
        |x| {
            let p = cqjacobi_aw_seq(n_max, level, c(x), q);
            Ok((0..dim * dim).map(|k| p[k / dim] * p[k % dim]).collect())
        },
        dim * dim,
        level,
        ctx,
        opts,
    )?;
    Ok((res.values.clone(), res))
}

/// Worst orthogonality defects for `n, m ≤ n_max`:
/// `(max_{n≠m} |G_{nm}|/h_n, max_n |G_{nn} − h_n|/|h_n|)`.
pub fn orthogonality_deviation(n_max: usize, level: &JacobiLevel, ctx: &QContext, opts: &QuadOptions) -> QResult<(f64, f64)> {
    let (g, _) = gram_matrix(n_max, level, ctx, opts)?;
    let dim = n_max + 1;
    let (mut off, mut diag) = (0.0f64, 0.0f64);
    for n in 0..dim {
        let h = norm_h(n, level, ctx)?;
        for m in 0..dim {
            let v = g[n * dim + m];
            if n == m {
                diag = diag.max((v - h).norm() / h.norm());
            } else {
                off = off.max(v.norm() / h.norm());
            }
        }
    }
    Ok((off, diag))
}

/// Projections `A_k = ∫ Q(x) P_{n−1}^{(α+1,β+1)}(x|q²) P_k^{(α,β)}(x|q²) w dx / h_k`
/// for `k ≤ n+1`, `Q` the quadratic of the base-`q²` expansion; the entries
/// with `k ≤ n−2` vanish.
pub fn dual_projections(n: usize, level: &JacobiLevel, q: f64, opts: &QuadOptions) -> QResult<Vec<C64>> {
    if n == 0 {
        return Err(QError::InvalidParameter("n must be at least 1".into()));
    }
    let cx2 = QContext::new(q * q)?;
    let up = level.shifted(1.0);
    let res = integrate_weighted(
        |x| {
            let lhs = crate::qpolys::dual_quadratic(level, c(x), q) * cqjacobi_aw_seq(n - 1, &up, c(x), q * q)[n - 1];
            Ok(cqjacobi_aw_seq(n + 1, level, c(x), q * q).into_iter().map(|p| p * lhs).collect())
        },
        n + 2,
        level,
        &cx2,
        opts,
    )?;
    let mut out = Vec::with_capacity(n + 2);
    for (k, v) in res.values.iter().enumerate() {
        out.push(v / norm_h(k, level, &cx2)?);
    }
    Ok(out)
}

/// `max_x |D_q(T g)(x) − g(x)| / max_x |g(x)|` with `T g` built from
/// quadrature projections of `g` onto level `(α+1, β+1)`.
pub fn right_inverse_residual(g: &CoeffVector, xs: &[f64], ctx: &QContext, opts: &QuadOptions) -> QResult<f64> {
    let up = g.level;
    let (proj, _) = project(|y| Ok(g.eval(c(y), ctx)), &up, g.len() + 2, ctx, opts)?;
    let tg = t_coeffs(&proj, ctx);
    let (mut worst, mut scale) = (0.0f64, 0.0f64);
    for &x in xs {
        let d = dq_pointwise(|z| Ok(tg.eval(z, ctx)), x, ctx)?;
        let gx = g.eval(c(x), ctx);
        worst = worst.max((d - gx).norm());
        scale = scale.max(gx.norm());
    }
    Ok(worst / scale.max(f64::MIN_POSITIVE))
}

/// Coefficient-space version: `max_n |(D_q T g)_n − g_n| / max_n |g_n|`.
pub fn right_inverse_coeff_residual(g: &CoeffVector, ctx: &QContext) -> f64 {
    let back = dq_coeffs(&t_coeffs(g, ctx), ctx);
    let scale = g.coeffs.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let diff = back.coeffs.iter().zip(&g.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
    diff / scale.max(f64::MIN_POSITIVE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpolys::cqjacobi;

    fn ctx() -> QContext {
        QContext::new(0.5).unwrap()
    }

    #[test]
    fn dq_of_constant_and_identity() {
        let cx = ctx();
        assert!(dq_pointwise(|_| Ok(c(1.0)), 0.3, &cx).unwrap().norm() < 1e-15);
        assert!((dq_pointwise(|x| Ok(x), 0.3, &cx).unwrap() - 1.0).norm() < 1e-14);
        assert!(dq_pointwise(|x| Ok(x), 1.0, &cx).is_err());
    }

    #[test]
    fn dq_of_chebyshev_t2() {
        let cx = ctx();
        let q: f64 = 0.5;
        let x = 0.3;
        let v = dq_pointwise(|z| Ok(2.0 * z * z - 1.0), x, &cx).unwrap();
        let expect = (q.sqrt() + 1.0 / q.sqrt()) * 2.0 * x;
        assert!((v - expect).norm() < 1e-14);
    }

    #[test]
    fn unit_vector_ladder_and_zero() {
        let cx = ctx();
        let lv = JacobiLevel::real(0.3, -0.2);
        let d = dq_coeffs(&CoeffVector::unit(lv, 1), &cx);
        assert_eq!(d.len(), 1);
        assert!((d.coeffs[0] - ladder_xi(1, &lv, 0.5)).norm() < 1e-15);
        let z = dq_coeffs(&CoeffVector::zeros(lv, 4), &cx);
        assert!(z.coeffs.iter().all(|v| *v == c(0.0)));
    }

    #[test]
    fn t_factor_degree_zero_literal() {
        let q: f64 = 0.5;
        let lv = JacobiLevel::real(0.3, -0.2);
        let s: f64 = 0.1;
        let lit = (1.0 - q) * (1.0 + q.powf((s + 1.0) / 2.0)) * (1.0 + q.powf((s + 2.0) / 2.0)) * q.powf(-(0.6 + 1.0) / 4.0)
            / (2.0 * (1.0 - q.powf(s + 2.0)));
        assert!((t_factor(0, &lv, q) - lit).norm() < 1e-15);
    }

    #[test]
    fn dq_inverts_t_in_coefficients() {
        let cx = ctx();
        let up = JacobiLevel::real(1.3, 0.8);
        let g = CoeffVector::new(up, vec![c(0.4), C64::new(-1.0, 0.2), c(2.5), c(0.01)]);
        let back = dq_coeffs(&t_coeffs(&g, &cx), &cx);
        assert_eq!(back.level, g.level);
        for (a, b) in back.coeffs.iter().zip(&g.coeffs) {
            assert!((a - b).norm() < 1e-14 * b.norm().max(1.0));
        }
    }

    #[test]
    fn ladder_pointwise() {
        let cx = ctx();
        let lv = JacobiLevel::real(0.3, -0.2);
        for &x in &[-0.83, -0.2, 0.05, 0.61] {
            let v = dq_pointwise(|z| cqjacobi(3, &lv, z, &cx), x, &cx).unwrap();
            let rhs = ladder_xi(3, &lv, 0.5) * cqjacobi(2, &lv.shifted(1.0), c(x), &cx).unwrap();
            assert!((v - rhs).norm() < 1e-10 * rhs.norm());
        }
    }

    #[test]
    fn residual_helpers() {
        let cx = ctx();
        let lv = JacobiLevel::real(0.3, -0.2);
        for n in 1..=8 {
            assert!(ladder_residual(n, &lv, 0.37, &cx).unwrap() < 1e-10);
        }
        let (off, diag) = orthogonality_deviation(8, &lv, &cx, &QuadOptions::default()).unwrap();
        assert!(off < 1e-8 && diag < 1e-8, "{off} {diag}");
        let a = dual_projections(5, &JacobiLevel::real(0.5, -0.25), 0.6, &QuadOptions::default()).unwrap();
        let lit = crate::qpolys::dual_quadratic_coefficients(5, &JacobiLevel::real(0.5, -0.25), 0.6);
        for k in 0..=3 {
            assert!(a[k].norm() < 1e-9, "k={k}: {}", a[k]);
        }
        for k in 0..3 {
            assert!((a[4 + k] - lit[k]).norm() < 1e-8 * lit[k].norm());
        }
        let g = CoeffVector::new(lv.shifted(1.0), vec![c(0.4), C64::new(-1.0, 0.2), c(2.5), c(0.01), c(-0.3), c(0.2)]);
        assert!(right_inverse_residual(&g, &[-0.7, 0.1, 0.55], &cx, &QuadOptions::default()).unwrap() < 1e-7);
        assert!(right_inverse_coeff_residual(&g, &cx) < 1e-14);
    }

    #[test]
    fn gauss_legendre_exactness() {
        let (x, w) = gauss_legendre(10);
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
        let r = QuadratureRule::gauss_legendre_theta(40);
        let s: f64 = r.nodes.iter().zip(&r.weights).map(|(t, w)| w * t.sin()).sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn mixing_levels_is_rejected() {
        let a = CoeffVector::unit(JacobiLevel::real(0.3, -0.2), 1);
        let b = CoeffVector::unit(JacobiLevel::real(1.3, 0.8), 1);
        assert!(a.add(&b).is_err());
        assert!(a.add(&a).is_ok());
    }
}
