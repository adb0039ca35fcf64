//! Minimal solutions `X_ν(x)` of the monic recurrence and the entire function
//! `F(x) = −X_{−1}(x)/x` whose zeros are the eigenvalues in the `μ` variable.

use super::{lambda_of_mu, monic_b, monic_c};
use crate::error::{QError, QResult};
use crate::qcore::{c, phi, phi21_poch, qpow, QContext};
use crate::qpolys::JacobiLevel;
use num_complex::Complex64 as C64;

fn neg_pow(x: C64, nu: f64) -> C64 {
    if nu == 0.0 {
        c(1.0)
    } else if nu.fract() == 0.0 && nu.abs() < 64.0 {
        (-x).powi(-(nu as i32))
    } else {
        (-x).powf(-nu)
    }
}

fn nonzero(x: C64) -> QResult<()> {
    if x.norm() == 0.0 {
        Err(QError::Domain("x must be nonzero".into()))
    } else {
        Ok(())
    }
}

/// `X_ν` from the `₂φ₁` in `p^{1/2}/x`; needs `|x| > p^{1/2}`.
pub fn x_nu_series(nu: f64, x: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    nonzero(x)?;
    let p = ctx.p();
    let z = p.sqrt() / x;
    let (al, be) = (level.alpha, level.beta);
    let f = phi(&[-qpow(p, al + 2.0 + nu), qpow(p, be + 2.0 + nu)], &[qpow(p, al + be + 2.0 * nu + 4.0)], p, z, ctx)?;
    Ok(neg_pow(x, nu) * ctx.pinf(z, p)? * f)
}

/// `X_ν` in Heine-transformed form, convergent for every `x ≠ 0`.
pub fn x_nu_heine(nu: f64, x: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    nonzero(x)?;
    let p = ctx.p();
    let (al, be) = (level.alpha, level.beta);
    let zb = qpow(p, be + nu + 2.0);
    let w = -qpow(p, al + nu + 2.5) / x;
    let pre = ctx.pinf(zb, p)? / ctx.pinf(qpow(p, al + be + 2.0 * nu + 4.0), p)?;
    let f = phi21_poch(qpow(p, al + nu + 2.0), p.sqrt() / x, w, p, zb, ctx)?;
    Ok(neg_pow(x, nu) * pre * f)
}

/// `X_ν(x)`; the Heine form is used everywhere (it never needs `|x|` large).
pub fn x_nu(nu: f64, x: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    x_nu_heine(nu, x, level, ctx)
}

/// Coefficient of `X_{ν+1}` in `c_ν X_{ν+1} = (x − B_ν) X_ν + X_{ν−1}`.
pub fn x_nu_upper(nu: usize, level: &JacobiLevel, q: f64) -> C64 {
    -monic_c(nu + 1, level, q)
}

/// Residual of that recurrence at `x`.
pub fn x_nu_recurrence_residual(nu: usize, x: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let n = nu as f64;
    let lhs = x_nu_upper(nu, level, q) * x_nu(n + 1.0, x, level, ctx)?;
    let rhs = (x - monic_b(nu, level, q)) * x_nu(n, x, level, ctx)? + x_nu(n - 1.0, x, level, ctx)?;
    Ok(lhs - rhs)
}

/// `F(x) = (p^{β+1}, −p^{α+3/2}/x)_∞/(p^{α+β+2})_∞ · ₂φ₁(p^{α+1}, p^{1/2}/x; −p^{α+3/2}/x; p, p^{β+1})`.
pub fn f_eval(x: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    nonzero(x)?;
    let p = ctx.p();
    let (al, be) = (level.alpha, level.beta);
    let w = -qpow(p, al + 1.5) / x;
    let zb = qpow(p, be + 1.0);
    let pre = ctx.pinf(zb, p)? / ctx.pinf(qpow(p, al + be + 2.0), p)?;
    Ok(pre * phi21_poch(qpow(p, al + 1.0), p.sqrt() / x, w, p, zb, ctx)?)
}

/// `lim_{x→∞} F(x) = (p^{β+1})_∞/(p^{α+β+2})_∞ · ₁φ₀(p^{α+1};; p, p^{β+1})`
/// `= (p^{β+1}, p^{α+β+2})_∞ / ((p^{α+β+2})_∞ (p^{β+1})_∞) = 1`.
pub fn f_limit_at_infinity(level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let p = ctx.p();
    let (al, be) = (level.alpha, level.beta);
    let zb = qpow(p, be + 1.0);
    // q-binomial theorem: ₁φ₀(a;;p,z) = (az)_∞/(z)_∞
    let one_phi_zero = ctx.pinf(qpow(p, al + 1.0) * zb, p)? / ctx.pinf(zb, p)?;
    Ok(ctx.pinf(zb, p)? / ctx.pinf(qpow(p, al + be + 2.0), p)? * one_phi_zero)
}

/// Left side of the transcendental eigenvalue equation as printed, in the
/// variable `y`:
/// `(−p^{α+3/2}(1−q)y/2; p)_∞ ₂φ₁(p^{α+1}, (1−q)y p^{1/2}/2; −p^{α+3/2}(1−q)y/2; p, p^{β+1})`.
pub fn eigen_equation_y(y: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let p = ctx.p();
    let q = ctx.q();
    let (al, be) = (level.alpha, level.beta);
    let t = (1.0 - q) * y / 2.0;
    let w = -qpow(p, al + 1.5) * t;
    phi21_poch(qpow(p, al + 1.0), t * p.sqrt(), w, p, qpow(p, be + 1.0), ctx)
}

/// Root `y` of [`eigen_equation_y`] ↔ root `μ = 2/((1−q)y)` of `F`.
pub fn mu_from_y_root(y: C64, q: f64) -> C64 {
    2.0 / ((1.0 - q) * y)
}

/// Eigenvalue from a root `y` via `μ = 2λq^{1/2}/(1−q)`: `λ = 1/(q^{1/2} y)`.
pub fn lambda_from_y_root(y: C64, q: f64) -> C64 {
    lambda_of_mu(mu_from_y_root(y, q), q)
}

/// The printed map `λ = (1−q)/(2y)`; off by `q^{1/2}` from the `F` route.
pub fn lambda_from_y_root_literal(y: C64, q: f64) -> C64 {
    (1.0 - q) / (2.0 * y)
}
