//! Large-`n` behaviour of `b_n`: away from the spectrum, at `μ = 0`, and at a
//! zero of `F`.

use super::{bn_recurrence_scaled, eigen::minimal_ratios, f_eval, monic_c, x_nu};
use crate::error::{QError, QResult};
use crate::qcore::{c, qpow, QContext};
use crate::qpolys::JacobiLevel;
use num_complex::Complex64 as C64;

/// `x^n b_n(1/x) / F(1/x)`; tends to 1.
pub fn off_spectrum_ratio(n: usize, x: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let b = bn_recurrence_scaled(n, 1.0 / x, level, ctx);
    let lim = f_eval(1.0 / x, level, ctx)?;
    Ok((b.ln() + n as f64 * x.ln() - lim.ln()).exp())
}

/// `(u, C)` with `b_n(0) ≈ C p^{n²/2} u^n`, for real `α ≠ β`.
///
/// `u = −p^{β+1}` if `α > β`, `u = p^{α+1}` if `β > α`: the `(−1)^n` from the
/// explicit form of `b_n(0)` belongs in `u`. See [`zero_point_u_literal`].
pub fn zero_point_constants(level: &JacobiLevel, ctx: &QContext) -> QResult<(C64, C64)> {
    if !level.is_real() || level.alpha == level.beta {
        return Err(QError::InvalidParameter("needs real α ≠ β".into()));
    }
    let p = ctx.p();
    let (al, be) = (level.alpha, level.beta);
    let den_inf = ctx.pinf(qpow(p, al + be + 2.0), p)?;
    if al.re > be.re {
        let cc = ctx.pinf(-qpow(p, al + 1.0), p)? * ctx.pinf(qpow(p, al + 1.0), p)? / ((1.0 + qpow(p, al - be)) * den_inf);
        Ok((-qpow(p, be + 1.0), cc))
    } else {
        let cc = ctx.pinf(-qpow(p, be + 1.0), p)? * ctx.pinf(qpow(p, be + 1.0), p)? / ((1.0 + qpow(p, be - al)) * den_inf);
        Ok((qpow(p, al + 1.0), cc))
    }
}

/// The sign-dropped `u` (`p^{β+1}` / `−p^{α+1}`); with it the normalized
/// sequence alternates `±C` instead of converging.
pub fn zero_point_u_literal(level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    Ok(-zero_point_constants(level, ctx)?.0)
}

/// `b_n(0) / (p^{n²/2} u^n)`.
pub fn zero_point_normalized(n: usize, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let (u, _) = zero_point_constants(level, ctx)?;
    let b = bn_recurrence_scaled(n, c(0.0), level, ctx);
    let nf = n as f64;
    Ok((b.ln() - nf * nf / 2.0 * ctx.p().ln() - nf * u.ln()).exp())
}

/// `K = (q^{α+2}, q^{β+2})_∞ / [(q^{(α+β+3)/2}, q^{(α+β+5)/2})_∞ (q^{(α+β+4)/2})_∞²] / X_0(ξ)`.
pub fn root_growth_constant(xi: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let (al, be) = (level.alpha, level.beta);
    let s = level.s();
    let num = ctx.pinf(qpow(q, al + 2.0), q)? * ctx.pinf(qpow(q, be + 2.0), q)?;
    let mid = ctx.pinf(qpow(q, (s + 4.0) / 2.0), q)?;
    let den = ctx.pinf(qpow(q, (s + 3.0) / 2.0), q)? * ctx.pinf(qpow(q, (s + 5.0) / 2.0), q)? * mid * mid;
    Ok(num / den / x_nu(0.0, xi, level, ctx)?)
}

/// `b_n(ξ) ξ^n q^{−n(n+α+β+3)/2} (−1)^n` at a zero `ξ` of `F`, with `b_n(ξ)`
/// taken from the minimal solution (backward ratios) normalized to `b_0 = 1`.
/// Tends to [`root_growth_constant`].
pub fn root_growth_normalized(n: usize, xi: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let r = minimal_ratios(n, xi, level, q, n + 150);
    let ln_b: C64 = r.iter().skip(1).take(n).map(|v| v.ln()).sum();
    let nf = n as f64;
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * (ln_b + nf * xi.ln() - nf * (nf + level.s() + 3.0) / 2.0 * q.ln()).exp())
}

/// `X_n(ξ) (−ξ)^n`; tends to 1.
pub fn x_nu_normalized(n: usize, xi: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    Ok(x_nu(n as f64, xi, level, ctx)? * (-xi).powi(n as i32))
}

/// Residual of
/// `c_ν ⋯ c_{ν+n−1} X_{ν+n} = b_n^{(α+ν,β+ν)} X_ν + b_{n−1}^{(α+ν+1,β+ν+1)} X_{ν−1}`
/// with `c_k = −C_{k+1}` the upper coefficient of the `X` recurrence, relative
/// to `|b_n X_ν| + |b_{n−1} X_{ν−1}|`. The left side is minimal, so the two
/// right-hand terms cancel almost completely; their size is the scale at which
/// the identity can be checked in floating point.
pub fn x_nu_identity_residual(n: usize, nu: usize, x: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<f64> {
    let q = ctx.q();
    let nf = nu as f64;
    let mut prod = c(1.0);
    for k in nu..nu + n {
        prod *= -monic_c(k + 1, level, q);
    }
    let lhs = prod * x_nu(nf + n as f64, x, level, ctx)?;
    let sh = level.shifted(nf);
    let b1 = bn_recurrence_scaled(n, x, &sh, ctx).to_c64();
    let b2 = if n == 0 { c(0.0) } else { bn_recurrence_scaled(n - 1, x, &sh.shifted(1.0), ctx).to_c64() };
    let t1 = b1 * x_nu(nf, x, level, ctx)?;
    let t2 = b2 * x_nu(nf - 1.0, x, level, ctx)?;
    Ok((lhs - t1 - t2).norm() / (t1.norm() + t2.norm()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn off_spectrum_ratio_converges() {
        let cx = QContext::new(0.5).unwrap();
        let lv = JacobiLevel::real(0.5, -0.25);
        for x in [c(0.5), C64::new(1.0, 1.0), c(-2.0)] {
            let r = off_spectrum_ratio(80, x, &lv, &cx).unwrap();
            assert!((r - 1.0).norm() < 1e-5, "{x}: {r}");
        }
    }

    #[test]
    fn zero_point_both_orderings() {
        let cx = QContext::new(0.5).unwrap();
        for lv in [JacobiLevel::real(0.5, -0.25), JacobiLevel::real(-0.25, 0.5)] {
            let (_, cc) = zero_point_constants(&lv, &cx).unwrap();
            let v = zero_point_normalized(60, &lv, &cx).unwrap();
            assert!((v / cc - 1.0).norm() < 1e-3, "{v} vs {cc}");
            let w = zero_point_normalized(59, &lv, &cx).unwrap();
            assert!((v / w - 1.0).norm() < 1e-4, "{v} vs {w}");
            // the sign-dropped u leaves (−1)^n behind
            let (u, _) = zero_point_constants(&lv, &cx).unwrap();
            let ul = zero_point_u_literal(&lv, &cx).unwrap();
            assert!(((u / ul).powi(59) * w / cc + 1.0).norm() < 1e-3);
        }
    }

    #[test]
    fn x_nu_identity_small_n() {
        let cx = QContext::new(0.5).unwrap();
        let lv = JacobiLevel::real(0.3, -0.2);
        for n in 1..=10 {
            assert!(x_nu_identity_residual(n, 0, C64::new(1.3, 0.4), &lv, &cx).unwrap() < 1e-10);
        }
    }
}
