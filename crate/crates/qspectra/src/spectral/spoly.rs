//! The polynomials `s_n(x) = i^{−n} b_n(ix)` in the conjugate-pair regime,
//! their Markov ratio, and the q-Coulomb function.

use super::{bn_recurrence, f_eval, monic_b, monic_c};
use crate::error::{QError, QResult};
use crate::qcore::{c, phi, phi21_poch, qpow, QContext};
use crate::qpolys::JacobiLevel;
use num_complex::Complex64 as C64;

const I: C64 = C64 { re: 0.0, im: 1.0 };

/// `α = β̄`, `Im α ≠ 0`, `Re α > −1`.
pub fn check_s_regime(level: &JacobiLevel) -> QResult<()> {
    if level.is_conjugate_pair() && level.alpha.re > -1.0 {
        Ok(())
    } else {
        Err(QError::InvalidParameter(format!(
            "s_n needs β = conj(α) with Im α ≠ 0 and Re α > −1; got α = {}, β = {}",
            level.alpha, level.beta
        )))
    }
}

/// `s_n(x) = i^{−n} b_n(ix)`.
pub fn s_poly(n: usize, x: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    check_s_regime(level)?;
    Ok(I.powi(-(n as i32)) * bn_recurrence(n, I * x, level, ctx))
}

/// `(d_n, e_n)` in `s_{n+1} = (x + d_n) s_n + e_n s_{n−1}`, derived from the
/// monic `b`-recurrence: `d_n = i B_n`, `e_n = C_n`.
pub fn s_rec_coeffs(n: usize, level: &JacobiLevel, q: f64) -> (C64, C64) {
    (I * monic_b(n, level, q), monic_c(n, level, q))
}

/// Associated polynomial `s_n^*(x) = s_{n−1}^{(α+1,β+1)}(x)`, with `s_0^* = 0`.
pub fn s_star(n: usize, x: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    check_s_regime(level)?;
    if n == 0 {
        return Ok(c(0.0));
    }
    s_poly(n - 1, x, &level.shifted(1.0), ctx)
}

/// `s_n^*(x)/s_n(x)`.
pub fn markov_ratio(n: usize, x: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    if x.im == 0.0 {
        return Err(QError::Domain("Markov ratio needs Im x ≠ 0".into()));
    }
    let d = s_poly(n, x, level, ctx)?;
    if d.norm() == 0.0 {
        return Err(QError::Pole(format!("s_{n} vanishes at x = {x}; perturb x")));
    }
    Ok(s_star(n, x, level, ctx)? / d)
}

/// `lim_n s_n^*/s_n = F^{(α+1,β+1)}(ix) / (x F^{(α,β)}(ix))`.
pub fn markov_limit(x: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    check_s_regime(level)?;
    Ok(f_eval(I * x, &level.shifted(1.0), ctx)? / (x * f_eval(I * x, level, ctx)?))
}

/// The same limit written as a ratio of two `₂φ₁`'s.
pub fn markov_limit_phi(x: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    check_s_regime(level)?;
    let p = ctx.p();
    let (al, be) = (level.alpha, level.beta);
    let sp = p.sqrt();
    let pre = (1.0 - qpow(p, al + be + 2.0)) * (1.0 - qpow(p, al + be + 3.0))
        / ((1.0 - qpow(p, be + 1.0)) * (1.0 - I * qpow(p, al + 1.5) / x));
    let num = phi(&[qpow(p, al + 2.0), -I * sp / x], &[I * qpow(p, al + 2.5) / x], p, qpow(p, be + 2.0), ctx)?;
    let den = phi(&[qpow(p, al + 1.0), -I * sp / x], &[I * qpow(p, al + 1.5) / x], p, qpow(p, be + 1.0), ctx)?;
    Ok(pre * num / den / x)
}

/// q-Coulomb function `F_L(η, ρ; q)`, evaluated through Heine's transformation
/// so that it converges for every `ρ`.
pub fn q_coulomb(l: f64, eta: f64, rho: f64, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let z = I * q.sqrt() * rho;
    let a = -qpow(q, C64::new(l + 1.0, eta));
    let b = qpow(q, C64::new(l + 1.0, -eta));
    let cc = qpow(q, c(2.0 * l + 2.0));
    if z.norm() == 0.0 {
        return Ok(c(1.0));
    }
    let pre = ctx.pinf(b, q)? / ctx.pinf(cc, q)?;
    Ok(pre * phi21_poch(cc / b, z, a * z, q, b, ctx)?)
}

/// `F_L` straight from its defining series; needs `q^{1/2}|ρ| < 1`.
pub fn q_coulomb_series(l: f64, eta: f64, rho: f64, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let z = I * q.sqrt() * rho;
    let a = -qpow(q, C64::new(l + 1.0, eta));
    let b = qpow(q, C64::new(l + 1.0, -eta));
    let cc = qpow(q, c(2.0 * l + 2.0));
    Ok(ctx.pinf(z, q)? * phi(&[a, b], &[cc], q, z, ctx)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (QContext, JacobiLevel) {
        (QContext::new(0.5).unwrap(), JacobiLevel::conjugate_pair(C64::new(0.3, 0.5)))
    }

    #[test]
    fn regime_is_enforced() {
        let cx = QContext::new(0.5).unwrap();
        assert!(s_poly(2, c(0.3), &JacobiLevel::real(0.3, -0.2), &cx).is_err());
    }

    #[test]
    fn coefficients_real_and_negative() {
        let (_, lv) = setup();
        for n in 0..=10 {
            let (d, e) = s_rec_coeffs(n, &lv, 0.5);
            assert!(d.im.abs() < 1e-15 * d.norm().max(1e-300));
            if n > 0 {
                assert!(e.re < 0.0 && e.im.abs() < 1e-15 * e.norm());
            }
        }
    }

    #[test]
    fn s_real_on_real_axis() {
        let (cx, lv) = setup();
        for n in 0..=10 {
            let v = s_poly(n, c(0.8), &lv, &cx).unwrap();
            assert!(v.im.abs() < 1e-12 * v.norm().max(1.0));
        }
    }

    #[test]
    fn starred_start() {
        let (cx, lv) = setup();
        assert_eq!(s_star(0, c(0.4), &lv, &cx).unwrap(), c(0.0));
        assert_eq!(s_star(1, c(0.4), &lv, &cx).unwrap(), c(1.0));
    }

    #[test]
    fn both_limit_forms_agree() {
        let (cx, lv) = setup();
        let x = C64::new(0.0, 2.0);
        let a = markov_limit(x, &lv, &cx).unwrap();
        let b = markov_limit_phi(x, &lv, &cx).unwrap();
        assert!((a - b).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn coulomb_basics() {
        let cx = QContext::new(0.5).unwrap();
        assert!((q_coulomb(0.5, 0.3, 0.0, &cx).unwrap() - 1.0).norm() < 1e-15);
        let v = q_coulomb(0.5, 0.3, 1.2, &cx).unwrap();
        assert!(v.im.abs() < 1e-12);
        let s = q_coulomb_series(0.5, 0.3, 1.2, &cx).unwrap();
        assert!((v - s).norm() < 1e-12 * v.norm());
    }
}
