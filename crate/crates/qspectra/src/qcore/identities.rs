//! Classical transformation and summation formulas, as residuals.
//!
//! Each function evaluates both sides independently and returns
//! `|lhs − rhs| / max(|lhs|, |rhs|)`; they are checks on the series
//! machinery, not evaluation routes.

use super::{c, phi, qpoch, rphis, HypergeometricSpec, QContext};
use crate::error::{QError, QResult};
use num_complex::Complex64 as C64;

fn rel(lhs: C64, rhs: C64) -> f64 {
    let d = (lhs - rhs).norm();
    if d == 0.0 {
        0.0
    } else {
        d / lhs.norm().max(rhs.norm())
    }
}

/// `₂φ₁(a, b; c; z) = (b, az)_∞/(c, z)_∞ · ₂φ₁(c/b, z; az; b)`; needs `|z|, |b| < 1`.
pub fn heine_residual(a: C64, b: C64, cc: C64, z: C64, base: f64, ctx: &QContext) -> QResult<f64> {
    let lhs = phi(&[a, b], &[cc], base, z, ctx)?;
    let pre = ctx.pinf(b, base)? * ctx.pinf(a * z, base)? / (ctx.pinf(cc, base)? * ctx.pinf(z, base)?);
    Ok(rel(lhs, pre * phi(&[cc / b, z], &[a * z], base, b, ctx)?))
}

/// `₂φ₁(a, b; c; z) = (abz/c)_∞/(z)_∞ · ₂φ₁(c/a, c/b; c; abz/c)`; needs `|z|, |abz/c| < 1`.
pub fn heine_iterated_residual(a: C64, b: C64, cc: C64, z: C64, base: f64, ctx: &QContext) -> QResult<f64> {
    let w = a * b * z / cc;
    let lhs = phi(&[a, b], &[cc], base, z, ctx)?;
    let rhs = ctx.pinf(w, base)? / ctx.pinf(z, base)? * phi(&[cc / a, cc / b], &[cc], base, w, ctx)?;
    Ok(rel(lhs, rhs))
}

/// Sears' transformation of a balanced terminating `₄φ₃`; `f` is fixed by
/// `def = abc·base^{1−n}`.
#[allow(clippy::too_many_arguments)]
pub fn sears_residual(n: usize, a: C64, b: C64, cc: C64, d: C64, e: C64, base: f64, ctx: &QContext) -> QResult<f64> {
    let qn = c(base.powi(-(n as i32)));
    let f = a * b * cc * base.powi(1 - n as i32) / (d * e);
    let lhs = phi(&[qn, a, b, cc], &[d, e, f], base, c(base), ctx)?;
    let pre = qpoch(e / a, base, n) * qpoch(f / a, base, n) / (qpoch(e, base, n) * qpoch(f, base, n)) * a.powi(n as i32);
    let s = a * base.powi(1 - n as i32);
    let rhs = pre * phi(&[qn, a, d / b, d / cc], &[d, s / e, s / f], base, c(base), ctx)?;
    Ok(rel(lhs, rhs))
}

/// `₃φ₂(base^{−n}, a, b; c, ab·base^{1−n}/c; base) = (c/a, c/b)_n / (c, c/(ab))_n`.
pub fn saalschutz_residual(n: usize, a: C64, b: C64, cc: C64, base: f64, ctx: &QContext) -> QResult<f64> {
    let qn = c(base.powi(-(n as i32)));
    let lhs = phi(&[qn, a, b], &[cc, a * b * base.powi(1 - n as i32) / cc], base, c(base), ctx)?;
    let rhs = qpoch(cc / a, base, n) * qpoch(cc / b, base, n) / (qpoch(cc, base, n) * qpoch(cc / (a * b), base, n));
    Ok(rel(lhs, rhs))
}

/// `(a)_{n+m} = (a)_n (a·base^n)_m`.
pub fn qpoch_split_residual(a: C64, base: f64, n: usize, m: usize) -> f64 {
    rel(qpoch(a, base, n + m), qpoch(a, base, n) * qpoch(a * base.powi(n as i32), base, m))
}

/// A terminating series of degree `d` in `z`, sampled at `d+1` Chebyshev
/// points of `[−r, r]` and interpolated back at `spec.z`.
pub fn terminating_interpolation_residual(spec: &HypergeometricSpec, radius: f64, ctx: &QContext) -> QResult<f64> {
    let (_, d) = spec
        .termination()
        .ok_or_else(|| QError::InvalidParameter("series does not terminate".into()))?;
    let nodes: Vec<f64> = (0..=d)
        .map(|k| radius * (std::f64::consts::PI * (k as f64 + 0.5) / (d as f64 + 1.0)).cos())
        .collect();
    let mut samples = Vec::with_capacity(nodes.len());
    for &t in &nodes {
        let s = HypergeometricSpec { z: c(t), ..spec.clone() };
        samples.push(rphis(&s, ctx)?);
    }
    let z = spec.z;
    let mut interp = c(0.0);
    for (i, &ti) in nodes.iter().enumerate() {
        let mut l = c(1.0);
        for (j, &tj) in nodes.iter().enumerate() {
            if i != j {
                l *= (z - tj) / (ti - tj);
            }
        }
        interp += samples[i] * l;
    }
    Ok(rel(rphis(spec, ctx)?, interp))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> QContext {
        QContext::new(0.5).unwrap()
    }

    #[test]
    fn heine_both_forms() {
        let cx = ctx();
        let (a, b, cc, z) = (C64::new(0.3, 0.2), C64::new(-0.4, 0.1), C64::new(0.7, -0.3), C64::new(0.2, 0.5));
        assert!(heine_residual(a, b, cc, z, 0.5, &cx).unwrap() < 1e-12);
        assert!(heine_iterated_residual(a, b, cc, z, 0.5, &cx).unwrap() < 1e-12);
        // a wrong prefactor is caught
        let bad = phi(&[a, b], &[cc], 0.5, z, &cx).unwrap() - phi(&[cc / a, cc / b], &[cc], 0.5, a * b * z / cc, &cx).unwrap();
        assert!(bad.norm() > 1e-3);
    }

    #[test]
    fn sears_and_saalschutz() {
        let cx = ctx();
        for n in 0..=8 {
            let r = sears_residual(n, C64::new(0.3, 0.1), c(-0.6), C64::new(0.2, -0.4), c(0.45), C64::new(-0.3, 0.25), 0.5, &cx)
                .unwrap();
            assert!(r < 1e-10, "n = {n}: {r}");
            let s = saalschutz_residual(n, C64::new(0.3, 0.1), c(-0.6), C64::new(0.7, 0.2), 0.5, &cx).unwrap();
            assert!(s < 1e-10, "n = {n}: {s}");
        }
    }

    #[test]
    fn split_and_interpolation() {
        for n in 0..=10 {
            for m in 0..=10 {
                assert!(qpoch_split_residual(C64::new(0.7, -0.2), 0.5, n, m) < 1e-14);
            }
        }
        let cx = ctx();
        let spec = HypergeometricSpec::new(vec![c(0.5f64.powi(-5)), c(0.3)], vec![c(0.6)], 0.5, C64::new(0.2, 0.1));
        assert!(terminating_interpolation_residual(&spec, 1.0, &cx).unwrap() < 1e-10);
        let open = HypergeometricSpec::new(vec![c(0.2), c(0.3)], vec![c(0.6)], 0.5, c(0.2));
        assert!(terminating_interpolation_residual(&open, 1.0, &cx).is_err());
    }
}
