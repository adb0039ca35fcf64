//! The q-exponential `𝓔_q(x; a, b)`, its expansion in continuous q-Jacobi
//! polynomials and the q-Hermite form of the level-free eigenfunction.
//!
//! `𝓔_q` is summed as written; the only rewriting is the pairing of the two
//! finite products so that no factor grows like `q^{−n²/4}` before it meets
//! the `q^{n²/4}` in front of it.

use crate::awop::{dq_pointwise, integrate_theta, ladder_xi, QuadOptions, QuadResult};
use crate::error::{QError, QResult};
use crate::qcore::{c, phi, qpoch, qpow, QContext};
use crate::qpolys::{aw_poly_seq, aw_weight_theta, conn_nn, cqjacobi_seq, hermite_seq, kappa, AwParams, JacobiLevel};
use crate::spectral::{mu_of_lambda, x_nu};
use num_complex::Complex64 as C64;

/// Hard cap on `𝓔_q` terms; the series is only geometric when `|a| = 1`.
const EQ_MAX_TERMS: usize = 4000;

/// One term of the `𝓔_q` series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EqSeriesTerm {
    pub index: usize,
    pub value: C64,
}

/// `q^{n²/4}/(q;q)_n · (a q^{(1−n)/2} e^{iθ}, a q^{(1−n)/2} e^{−iθ}; q)_n · b^n`
/// with `x = cos θ` (complex `x` allowed).
pub fn eq_term(n: usize, x: C64, a: C64, b: C64, q: f64) -> C64 {
    let mut prod = c(1.0);
    let mut expo = n as f64 * n as f64 / 4.0;
    for j in 0..n {
        let k = (1.0 - n as f64) / 2.0 + j as f64;
        // (1 − a e q^k)(1 − a q^k/e) = 1 − 2 a x q^k + a² q^{2k}
        if k < 0.0 {
            let qk = q.powf(-k);
            prod *= qk * qk - 2.0 * a * x * qk + a * a;
            expo += 2.0 * k;
        } else {
            let qk = q.powf(k);
            prod *= 1.0 - 2.0 * a * x * qk + a * a * qk * qk;
        }
    }
    q.powf(expo) * prod * b.powu(n as u32) / qpoch(c(q), q, n)
}

/// The first `n_terms` terms.
pub fn eq_terms(x: C64, a: C64, b: C64, n_terms: usize, q: f64) -> Vec<EqSeriesTerm> {
    (0..n_terms).map(|n| EqSeriesTerm { index: n, value: eq_term(n, x, a, b, q) }).collect()
}

/// Partial sum with exactly `n_terms` terms.
pub fn eq_exp_truncated(x: C64, a: C64, b: C64, n_terms: usize, q: f64) -> C64 {
    eq_terms(x, a, b, n_terms, q).iter().map(|t| t.value).sum()
}

/// `𝓔_q(x; a, b)` at complex `x`, summed until the geometric tail estimate
/// drops below `tol·|sum|`.
pub fn eq_exp_at(x: C64, a: C64, b: C64, ctx: &QContext) -> QResult<C64> {
    if b == c(0.0) {
        return Ok(c(1.0));
    }
    let q = ctx.q();
    let cap = ctx.max_terms.min(EQ_MAX_TERMS);
    let mut sum = c(0.0);
    let mut prev = 0.0f64;
    let mut quiet = 0;
    for n in 0..cap {
        let t = eq_term(n, x, a, b, q);
        sum += t;
        let mag = t.norm();
        if n >= 2 {
            let rho = if prev > 0.0 { mag / prev } else { 0.0 };
            let tail = if rho < 1.0 { mag * rho / (1.0 - rho) } else { f64::INFINITY };
            if mag.max(tail) <= ctx.tol * sum.norm().max(f64::MIN_POSITIVE) || mag == 0.0 {
                quiet += 1;
                if quiet >= 3 {
                    return Ok(sum);
                }
            } else {
                quiet = 0;
            }
        }
        prev = mag;
    }
    Err(QError::Divergence { terms: cap })
}

/// `𝓔_q(x; a, b)` for real `x ∈ [−1, 1]`.
pub fn eq_exp(x: f64, a: C64, b: C64, ctx: &QContext) -> QResult<C64> {
    if !(-1.0..=1.0).contains(&x) {
        return Err(QError::Domain(format!("x must lie in [−1,1], got {x}")));
    }
    eq_exp_at(c(x), a, b, ctx)
}

/// Eigenvalue of `D_q` on `𝓔_q(·; a, b)`: `−2ab q^{1/4}/(1−q)`.
pub fn eq_dq_eigenvalue(a: C64, b: C64, q: f64) -> C64 {
    -2.0 * a * b * q.powf(0.25) / (1.0 - q)
}

/// Relative residual of `D_q 𝓔_q = eigenvalue · 𝓔_q` at `x ∈ (−1, 1)`.
pub fn eq_dq_residual(x: f64, a: C64, b: C64, ctx: &QContext) -> QResult<f64> {
    let lhs = dq_pointwise(|y| eq_exp_at(y, a, b, ctx), x, ctx)?;
    let rhs = eq_dq_eigenvalue(a, b, ctx.q()) * eq_exp(x, a, b, ctx)?;
    Ok((lhs - rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE))
}

// ---------------------------------------------------------------------------
// Expansion in q-Jacobi polynomials

/// `(b, c) = (q^{(2α+1)/4}, q^{(2β+1)/4})`.
pub fn bc_of_level(level: &JacobiLevel, q: f64) -> (C64, C64) {
    (qpow(q, (2.0 * level.alpha + 1.0) / 4.0), qpow(q, (2.0 * level.beta + 1.0) / 4.0))
}

/// Askey–Wilson parameters `(b, b q^{1/2}, −c, −c q^{1/2})` of the expansion.
pub fn expansion_params(level: &JacobiLevel, q: f64) -> AwParams {
    AwParams::from_level(level, q)
}

/// `κ(b, c)`: the total mass of the weight `w(x; b, b√q, −c, −c√q)` in θ.
pub fn kappa_bc(level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    kappa(&expansion_params(level, ctx.q()), ctx)
}

/// Factor turning `p_m` into the bare `₄φ₃`: `b^m / (b²√q, −bc, −bc√q; q)_m`.
fn bare_factor(m: usize, level: &JacobiLevel, q: f64) -> C64 {
    let pr = expansion_params(level, q);
    pr.a.powu(m as u32) / (qpoch(pr.a * pr.b, q, m) * qpoch(pr.a * pr.c, q, m) * qpoch(pr.a * pr.d, q, m))
}

/// `φ_0 … φ_{mmax}`: the bare `₄φ₃` of `p_m(x; b, b√q, −c, −c√q)`, i.e.
/// `p_m` without its `b^{−m}(b²√q, −bc, −bc√q)_m` prefactor.
pub fn bare_basis_seq(mmax: usize, level: &JacobiLevel, x: C64, q: f64) -> Vec<C64> {
    let mut v = aw_poly_seq(mmax, &expansion_params(level, q), x, q);
    for (m, val) in v.iter_mut().enumerate() {
        *val *= bare_factor(m, level, q);
    }
    v
}

/// `(i r q^{1/2}; q)_∞ / (−i r; q)_∞`.
fn ir_ratio(r: C64, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let ir = C64::i() * r;
    Ok(ctx.pinf(ir * q.sqrt(), q)? / ctx.pinf(-ir, q)?)
}

/// `₂φ₁(c q^{m/2+1/4}, −b q^{m/2+1/4}; bc q^{m+1/2}; q^{1/2}, ir)`.
fn am_phi(m: usize, r: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let (b, cc) = bc_of_level(level, q);
    let mf = m as f64;
    let t = q.powf(mf / 2.0 + 0.25);
    phi(&[cc * t, -b * t], &[b * cc * q.powf(mf + 0.5)], q.sqrt(), C64::i() * r, ctx)
}

/// Expansion coefficient `a_m` of `𝓔_q(x; −i, r)` in the bare basis
/// [`bare_basis_seq`]:
/// `(b²c², b²√q)_m (ir√q)_∞ / ((q, bc√q, bc)_m (−ir)_∞) · (ir/b)^m q^{m²/4} · ₂φ₁(…)`.
pub fn am_coeff(m: usize, r: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let (b, cc) = bc_of_level(level, q);
    let bc = b * cc;
    let num = qpoch(bc * bc, q, m) * qpoch(b * b * q.sqrt(), q, m);
    let den = qpoch(c(q), q, m) * qpoch(bc * q.sqrt(), q, m) * qpoch(bc, q, m);
    let mf = m as f64;
    let pw = (C64::i() * r / b).powu(m as u32) * q.powf(mf * mf / 4.0);
    Ok(num / den * ir_ratio(r, ctx)? * pw * am_phi(m, r, level, ctx)?)
}

/// The same coefficient on the standard Askey–Wilson `p_m(x; b, b√q, −c, −c√q)`.
pub fn am_coeff_standard(m: usize, r: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    Ok(am_coeff(m, r, level, ctx)? * bare_factor(m, level, ctx.q()))
}

/// `Σ_{m≤M} a_m φ_m(x)`.
pub fn expansion_sum(x: f64, r: C64, level: &JacobiLevel, m_max: usize, ctx: &QContext) -> QResult<C64> {
    let basis = bare_basis_seq(m_max, level, c(x), ctx.q());
    let mut s = c(0.0);
    for (m, phi_m) in basis.iter().enumerate() {
        s += am_coeff(m, r, level, ctx)? * phi_m;
    }
    Ok(s)
}

/// `|𝓔_q(x; −i, r) − Σ_{m≤M} a_m φ_m(x)|`.
pub fn expansion_residual(x: f64, r: C64, level: &JacobiLevel, m_max: usize, ctx: &QContext) -> QResult<f64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(QError::Domain(format!("x must lie in (−1,1), got {x}")));
    }
    let e = eq_exp(x, -C64::i(), r, ctx)?;
    Ok((e - expansion_sum(x, r, level, m_max, ctx)?).norm())
}

/// Closed single-sum form of `J_m(−i; r) = ∫ w φ_m 𝓔_q(x; −i, r) dθ`, with
/// `φ_m` the bare basis (the standard `p_m` does not reproduce it).
pub fn jm_closed(m: usize, r: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let (b, cc) = bc_of_level(level, q);
    let bc = b * cc;
    let mf = m as f64;
    let pre = kappa_bc(level, ctx)? * qpoch(cc * cc * q.sqrt(), q, m) / (qpoch(bc * q.sqrt(), q, m) * qpoch(bc * q, q, m));
    let pw = (C64::i() * b * r).powu(m as u32) * q.powf(mf * mf / 4.0);
    Ok(pre * ir_ratio(r, ctx)? * pw * am_phi(m, r, level, ctx)?)
}

/// `a_m` recovered from `J_m(−i; r)` through orthogonality:
/// `a_m = J_m (1 − b²c²q^{2m})(b²c², b²√q, −bc)_m / ((1 − b²c²)(q, c²√q, −bcq)_m) · b^{−2m} / κ(b, c)`.
pub fn am_from_jm(m: usize, jm: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let (b, cc) = bc_of_level(level, q);
    let bc = b * cc;
    let num = (1.0 - bc * bc * q.powi(2 * m as i32)) * qpoch(bc * bc, q, m) * qpoch(b * b * q.sqrt(), q, m) * qpoch(-bc, q, m);
    let den = (1.0 - bc * bc) * qpoch(c(q), q, m) * qpoch(cc * cc * q.sqrt(), q, m) * qpoch(-bc * q, q, m);
    Ok(jm * num / den * b.powi(-2 * m as i32) / kappa_bc(level, ctx)?)
}

/// Which polynomial normalization multiplies the weight in an integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpansionBasis {
    /// Standard Askey–Wilson `p_m`.
    Standard,
    /// The bare `₄φ₃` (`a_m`'s basis).
    Bare,
}

fn basis_value(m: usize, basis: ExpansionBasis, level: &JacobiLevel, x: C64, q: f64) -> C64 {
    match basis {
        ExpansionBasis::Standard => aw_poly_seq(m, &expansion_params(level, q), x, q)[m],
        ExpansionBasis::Bare => bare_basis_seq(m, level, x, q)[m],
    }
}

/// `J_m(a; r) = ∫_0^π w(cos θ) p_m(cos θ) 𝓔_q(cos θ; a, r) dθ` by doubling
/// Gauss–Legendre quadrature.
pub fn jm_quadrature(m: usize, a: C64, r: C64, basis: ExpansionBasis, level: &JacobiLevel, ctx: &QContext, opts: &QuadOptions) -> QResult<QuadResult> {
    let q = ctx.q();
    let pr = expansion_params(level, q);
    integrate_theta(
        |t| {
            let x = c(t.cos());
            Ok(vec![aw_weight_theta(&pr, t, ctx)? * basis_value(m, basis, level, x, q) * eq_exp_at(x, a, r, ctx)?])
        },
        1,
        opts,
    )
}

/// General-`a` double series for `J_m(a; r)`:
/// `κ (c²√q)_m (−abr)^m q^{m²/4}/(bc√q, bcq)_m · Σ_n (−aq^{1/4}, −q^{1/4}/a; s)_n/(s, −s; s)_n (ar)^n · ₄φ₃(…; s, s)`
/// with `s = q^{1/2}`, truncated at `n_terms`.
pub fn jm_double_sum(m: usize, a: C64, r: C64, level: &JacobiLevel, n_terms: usize, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let s = q.sqrt();
    let (b, cc) = bc_of_level(level, q);
    let bc = b * cc;
    let mf = m as f64;
    let pre = kappa_bc(level, ctx)? * qpoch(cc * cc * s, q, m) * (-a * b * r).powu(m as u32) * q.powf(mf * mf / 4.0)
        / (qpoch(bc * s, q, m) * qpoch(bc * q, q, m));
    let q4 = q.powf(0.25);
    let mh = q.powf((mf + 0.5) / 2.0);
    let mut sum = c(0.0);
    for n in 0..n_terms {
        let nf = n as f64;
        let outer = qpoch(-a * q4, s, n) * qpoch(-q4 / a, s, n) / (qpoch(c(s), s, n) * qpoch(c(-s), s, n))
            * (a * r).powu(n as u32);
        let sn = s.powf(-nf);
        let lo = q.powf((-nf + 0.5) / 2.0);
        let inner = phi(
            &[c(sn), c(-sn), cc * mh, -b * mh],
            &[bc * q.powf(mf + 0.5), -a * lo, -lo / a],
            s,
            c(s),
            ctx,
        )?;
        sum += outer * inner;
    }
    Ok(pre * sum)
}

/// `I_{m,n}(a) = ∫ w p_m (a q^{(1−n)/2} e^{±iθ}; q)_n dθ`; zero for `n < m`.
pub fn i_mn_quadrature(m: usize, n: usize, a: C64, basis: ExpansionBasis, level: &JacobiLevel, ctx: &QContext, opts: &QuadOptions) -> QResult<QuadResult> {
    let q = ctx.q();
    let pr = expansion_params(level, q);
    integrate_theta(
        |t| {
            let e = C64::from_polar(1.0, t);
            let x = c(t.cos());
            let sh = a * q.powf((1.0 - n as f64) / 2.0);
            let h = qpoch(sh * e, q, n) * qpoch(sh / e, q, n);
            Ok(vec![aw_weight_theta(&pr, t, ctx)? * basis_value(m, basis, level, x, q) * h])
        },
        1,
        opts,
    )
}

/// Closed form of `I_{m,n}(a)` for `n ≥ m` (terminating `₄φ₃`), zero for `n < m`.
pub fn i_mn_closed(m: usize, n: usize, a: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    if n < m {
        return Ok(c(0.0));
    }
    let q = ctx.q();
    let (b, cc) = bc_of_level(level, q);
    let bc = b * cc;
    let nf = n as f64;
    let mf = m as f64;
    let qn = c(q.powf(-nf));
    let lead = qpoch(qn, q, m) * qpoch(-q.powf(-mf + 0.5) / bc, q, m)
        / (qpoch(-bc * q.sqrt(), q, m) * qpoch(q.powf(-mf - nf) / (bc * bc), q, m));
    let mid = kappa_bc(level, ctx)? * qpoch(cc * cc * q.sqrt(), q, n) * qpoch(-bc * q.sqrt(), q, n) * qpoch(-bc * q, q, n)
        / qpoch(q * bc * bc, q, n)
        * (-a / cc).powu(n as u32)
        * q.powf(-nf * nf / 2.0);
    let hn = q.powf(-nf / 2.0);
    let f = phi(
        &[c(q.powf(mf - nf)), q.powf(-mf - nf) / (bc * bc), -a * hn / cc, -hn / (a * cc)],
        &[-q.powf(-nf) / bc, -q.powf(-nf + 0.5) / bc, q.powf(-nf + 0.5) / (cc * cc)],
        q,
        c(q),
        ctx,
    )?;
    Ok(lead * mid * f)
}

// ---------------------------------------------------------------------------
// Level-free eigenfunction and the q-Hermite identity

/// `Σ_n q^{n²/4} (−λ)^{−n} H_n(x|q) / (q;q)_n`.
pub fn hermite_series(lambda: C64, x: C64, ctx: &QContext) -> QResult<C64> {
    if lambda == c(0.0) {
        return Err(QError::Domain("λ must be nonzero".into()));
    }
    let q = ctx.q();
    let mut nmax = 64;
    loop {
        let h = hermite_seq(nmax, x, q);
        let mut sum = c(0.0);
        let mut quiet = 0;
        let mut qp = c(1.0);
        let inv = -1.0 / lambda;
        for (n, hn) in h.iter().enumerate() {
            if n > 0 {
                qp *= inv / (1.0 - q.powi(n as i32));
            }
            let t = q.powf(n as f64 * n as f64 / 4.0) * qp * hn;
            sum += t;
            if n >= 2 && t.norm() <= ctx.tol * sum.norm().max(f64::MIN_POSITIVE) {
                quiet += 1;
                if quiet >= 3 {
                    return Ok(sum);
                }
            } else {
                quiet = 0;
            }
        }
        if nmax >= ctx.max_terms.min(EQ_MAX_TERMS) {
            return Err(QError::Divergence { terms: nmax });
        }
        nmax *= 2;
    }
}

/// `(λ^{−2}; q²)_∞ 𝓔_q(x; −i, i/λ)`.
pub fn hermite_closed(lambda: C64, x: C64, ctx: &QContext) -> QResult<C64> {
    if lambda == c(0.0) {
        return Err(QError::Domain("λ must be nonzero".into()));
    }
    let q = ctx.q();
    let pre = ctx.pinf(1.0 / (lambda * lambda), q * q)?;
    if pre == c(0.0) {
        return Ok(pre);
    }
    Ok(pre * eq_exp_at(x, -C64::i(), C64::i() / lambda, ctx)?)
}

/// `|Σ q^{n²/4}(−λ)^{−n}H_n/(q)_n − (λ^{−2}; q²)_∞ 𝓔_q(x; −i, i/λ)|`.
pub fn hermite_identity_residual(lambda: C64, x: f64, ctx: &QContext) -> QResult<f64> {
    Ok((hermite_series(lambda, c(x), ctx)? - hermite_closed(lambda, c(x), ctx)?).norm())
}

/// `λ* = −2 q^{1/4} λ/(1−q)`: the argument at which the level-free
/// eigenfunction meets the q-Hermite series.
pub fn lambda_star(lambda: C64, q: f64) -> C64 {
    -2.0 * q.powf(0.25) * lambda / (1.0 - q)
}

/// `Π_{j<n} c_{j,j}/ξ_{j+1}` from the connection and ladder data.
pub fn e_coefficient(n: usize, level: &JacobiLevel, q: f64) -> C64 {
    (0..n).map(|j| conn_nn(j as i64, level, q) / ladder_xi(j as i64 + 1, level, q)).product()
}

/// `q^{n(n−2α)/4} (q^{α+β+1}; q)_n / (q^{(α+β+1)/2}; q^{1/2})_{2n}`; this is
/// `u^n` times [`e_coefficient`], `u = 2q^{1/2}/(1−q)`.
pub fn e_coefficient_closed(n: usize, level: &JacobiLevel, q: f64) -> C64 {
    let nf = n as f64;
    let s = level.s();
    qpow(q, nf * (nf - 2.0 * level.alpha) / 4.0) * qpoch(qpow(q, s + 1.0), q, n) / qpoch(qpow(q, (s + 1.0) / 2.0), q.sqrt(), 2 * n)
}

/// Maximum number of terms in the level-free series.
const LEVEL_FREE_MAX_TERMS: usize = 400;

/// The level-free eigenfunction of `D_q` with eigenvalue `1/λ`:
/// `S(x; λ) = Σ_n Π_{j<n} c_{j,j}/ξ_{j+1} · u^{n−1} (−1)^{n−1} X_{n−1}(λu) P_n^{(α,β)}(x|q)`,
/// `u = 2q^{1/2}/(1−q)`. Its value does not depend on `(α, β)`.
pub fn level_free_series(x: C64, lambda: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    if lambda == c(0.0) {
        return Err(QError::Domain("λ must be nonzero".into()));
    }
    let q = ctx.q();
    let u = 2.0 * q.sqrt() / (1.0 - q);
    let mu = mu_of_lambda(lambda, q);
    let p = cqjacobi_seq(LEVEL_FREE_MAX_TERMS, level, x, ctx);
    let mut sum = c(0.0);
    let mut coef = c(1.0);
    let mut quiet = 0;
    for (n, pn) in p.iter().enumerate() {
        if n > 0 {
            coef *= conn_nn(n as i64 - 1, level, q) / ladder_xi(n as i64, level, q);
        }
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let t = coef * sign * u.powi(n as i32 - 1) * x_nu(n as f64 - 1.0, mu, level, ctx)? * pn;
        sum += t;
        if n >= 2 && t.norm() <= ctx.tol * sum.norm().max(f64::MIN_POSITIVE) {
            quiet += 1;
            if quiet >= 3 {
                return Ok(sum);
            }
        } else {
            quiet = 0;
        }
    }
    Err(QError::Divergence { terms: LEVEL_FREE_MAX_TERMS })
}

/// `λ (λ*^{−2}; q²)_∞ 𝓔_q(x; −i, i/λ*)`, closed form of [`level_free_series`].
pub fn level_free_closed(x: C64, lambda: C64, ctx: &QContext) -> QResult<C64> {
    Ok(lambda * hermite_closed(lambda_star(lambda, ctx.q()), x, ctx)?)
}

/// `λ Σ q^{n²/4}(−λ*)^{−n} H_n/(q)_n`, the q-Hermite form of the same function.
pub fn level_free_hermite(x: C64, lambda: C64, ctx: &QContext) -> QResult<C64> {
    Ok(lambda * hermite_series(lambda_star(lambda, ctx.q()), x, ctx)?)
}

/// `E_{α,β}(x; λ) = (−λu)^{−(α+β)/2} S(x; λ)`.
pub fn e_alpha_beta(x: C64, lambda: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let mu = mu_of_lambda(lambda, ctx.q());
    Ok((-mu).powc(-level.s() / 2.0) * level_free_series(x, lambda, level, ctx)?)
}

/// `|[−λu]^{(α+β)/2} E_{α,β} − [−λu]^{(α+β+2k)/2} E_{α+k,β+k}|`, relative.
pub fn level_shift_residual(x: C64, lambda: C64, level: &JacobiLevel, k: f64, ctx: &QContext) -> QResult<f64> {
    let mu = mu_of_lambda(lambda, ctx.q());
    let up = level.shifted(k);
    let a = (-mu).powc(level.s() / 2.0) * e_alpha_beta(x, lambda, level, ctx)?;
    let b = (-mu).powc(up.s() / 2.0) * e_alpha_beta(x, lambda, &up, ctx)?;
    Ok((a - b).norm() / a.norm().max(f64::MIN_POSITIVE))
}

/// Relative residual of `D_q S = S/λ` at `x ∈ (−1, 1)`.
pub fn level_free_dq_residual(x: f64, lambda: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<f64> {
    let lhs = dq_pointwise(|y| level_free_series(y, lambda, level, ctx), x, ctx)?;
    let rhs = level_free_series(c(x), lambda, level, ctx)? / lambda;
    Ok((lhs - rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> QContext {
        QContext::new(0.5).unwrap()
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn eq_frozen_values() {
        let cx = ctx();
        let v = eq_exp(0.3, -C64::i(), c(0.4), &cx).unwrap();
        assert!(close(v, C64::new(0.841555880039443026, 0.348211843670256208), 1e-14), "{v}");
        let v = eq_exp(-0.7, c(0.6), C64::new(0.2, 0.5), &cx).unwrap();
        assert!(close(v, C64::new(-0.543104979201043817, 1.95071439353136753), 1e-14), "{v}");
    }

    #[test]
    fn eq_trivial_and_truncation() {
        let cx = ctx();
        assert_eq!(eq_exp(0.1, c(2.0), c(0.0), &cx).unwrap(), c(1.0));
        let a = eq_exp_truncated(c(0.3), -C64::i(), c(0.4), 60, 0.5);
        let b = eq_exp_truncated(c(0.3), -C64::i(), c(0.4), 70, 0.5);
        assert!((a - b).norm() < 1e-13);
        assert!(eq_exp(1.2, c(1.0), c(0.1), &cx).is_err());
    }

    #[test]
    fn eq_diverges_outside_disc() {
        let cx = ctx();
        assert!(matches!(eq_exp(0.3, -C64::i(), c(1.5), &cx), Err(QError::Divergence { .. })));
    }

    #[test]
    fn dq_eigenrelation() {
        let r = eq_dq_residual(0.3, -C64::i(), c(0.4), &ctx()).unwrap();
        assert!(r < 1e-10, "{r}");
    }

    #[test]
    fn am_frozen_values() {
        let cx = ctx();
        let lv = JacobiLevel::real(0.3, -0.2);
        let want = [
            C64::new(0.792332002951631084, -0.202456672164004103),
            C64::new(0.129097396714064471, 1.09819590891945555),
            C64::new(-0.431805625419411311, 0.0305868015961891788),
        ];
        for (m, w) in want.iter().enumerate() {
            let v = am_coeff(m, c(0.3), &lv, &cx).unwrap();
            assert!(close(v, *w, 1e-13), "m = {m}: {v}");
        }
    }

    #[test]
    fn am_at_zero_r() {
        let cx = ctx();
        let lv = JacobiLevel::real(0.3, -0.2);
        assert!(close(am_coeff(0, c(0.0), &lv, &cx).unwrap(), c(1.0), 1e-15));
        for m in 1..5 {
            assert_eq!(am_coeff(m, c(0.0), &lv, &cx).unwrap(), c(0.0));
        }
        assert!(expansion_residual(0.4, c(0.0), &lv, 10, &cx).unwrap() < 1e-15);
    }

    #[test]
    fn expansion_converges() {
        let cx = ctx();
        let lv = JacobiLevel::real(0.3, -0.2);
        let r = expansion_residual(0.2, c(0.3), &lv, 25, &cx).unwrap();
        assert!(r < 1e-8, "{r}");
        let coarse = expansion_residual(0.2, c(0.3), &lv, 5, &cx).unwrap();
        assert!(coarse > r);
    }

    #[test]
    fn jm_closed_matches_quadrature_in_bare_basis() {
        let cx = ctx();
        let lv = JacobiLevel::real(0.3, -0.2);
        let opts = QuadOptions::default();
        for m in 0..3 {
            let jq = jm_quadrature(m, -C64::i(), c(0.3), ExpansionBasis::Bare, &lv, &cx, &opts).unwrap();
            assert!(jq.converged);
            let jc = jm_closed(m, c(0.3), &lv, &cx).unwrap();
            assert!((jq.value() - jc).norm() < 1e-7 * jc.norm(), "m = {m}");
            let a = am_from_jm(m, jc, &lv, &cx).unwrap();
            assert!(close(a, am_coeff(m, c(0.3), &lv, &cx).unwrap(), 1e-12));
        }
        // in the standard normalization the first index already disagrees
        let js = jm_quadrature(1, -C64::i(), c(0.3), ExpansionBasis::Standard, &lv, &cx, &opts).unwrap();
        let jc = jm_closed(1, c(0.3), &lv, &cx).unwrap();
        assert!((js.value() / jc - 1.0).norm() > 0.5);
    }

    #[test]
    fn i_mn_vanishes_below_diagonal() {
        let cx = ctx();
        let lv = JacobiLevel::real(0.3, -0.2);
        let opts = QuadOptions::default();
        let a = C64::new(0.0, 0.5);
        let v = i_mn_quadrature(3, 1, a, ExpansionBasis::Bare, &lv, &cx, &opts).unwrap().value();
        assert!(v.norm() < 1e-9);
        for &(m, n) in &[(0, 0), (1, 2), (2, 3)] {
            let qd = i_mn_quadrature(m, n, a, ExpansionBasis::Bare, &lv, &cx, &opts).unwrap().value();
            let cl = i_mn_closed(m, n, a, &lv, &cx).unwrap();
            assert!((qd - cl).norm() < 1e-10 * cl.norm(), "({m},{n})");
        }
    }

    #[test]
    fn double_sum_general_a() {
        let cx = ctx();
        let lv = JacobiLevel::real(0.3, -0.2);
        let a = C64::new(0.0, 0.5);
        let d = jm_double_sum(1, a, c(0.3), &lv, 60, &cx).unwrap();
        let qd = jm_quadrature(1, a, c(0.3), ExpansionBasis::Bare, &lv, &cx, &QuadOptions::default()).unwrap().value();
        assert!((d - qd).norm() < 1e-6 * qd.norm());
    }

    #[test]
    fn hermite_identity() {
        let cx = ctx();
        let v = hermite_series(c(2.5), c(0.3), &cx).unwrap();
        assert!(close(v, c(0.587208893100997919), 1e-14));
        assert!(hermite_identity_residual(c(2.5), 0.3, &cx).unwrap() < 1e-10);
        let far = hermite_series(c(1e12), c(0.3), &cx).unwrap();
        assert!((far - 1.0).norm() < 1e-11);
        assert!((hermite_closed(c(1e12), c(0.3), &cx).unwrap() - 1.0).norm() < 1e-11);
    }

    #[test]
    fn hermite_series_does_not_vanish_at_lambda_q() {
        // (λ^{−2}; q²)_∞ vanishes at λ = q, but 𝓔_q(x; −i, i/q) lies outside
        // its disc of convergence, so the product is not zero.
        let v = hermite_series(c(0.5), c(0.3), &ctx()).unwrap();
        assert!((v.re + 0.0258161365883).abs() < 1e-12, "{v}");
    }

    #[test]
    fn e_coefficient_forms() {
        let q: f64 = 0.36;
        let lv = JacobiLevel::real(1.5, 0.7);
        let u = 2.0 * q.sqrt() / (1.0 - q);
        for n in 0..8 {
            let a = e_coefficient(n, &lv, q) * u.powi(n as i32);
            let b = e_coefficient_closed(n, &lv, q);
            assert!((a - b).norm() <= 1e-13 * b.norm(), "n = {n}");
        }
    }

    #[test]
    fn level_free_function() {
        let cx = ctx();
        let lv = JacobiLevel::real(0.3, -0.2);
        let lam = c(2.5);
        for &x in &[0.3, -0.6] {
            let s = level_free_series(c(x), lam, &lv, &cx).unwrap();
            assert!(close(s, level_free_closed(c(x), lam, &cx).unwrap(), 1e-12));
            assert!(close(s, level_free_hermite(c(x), lam, &cx).unwrap(), 1e-12));
            assert!(level_shift_residual(c(x), lam, &lv, 1.0, &cx).unwrap() < 1e-12);
            assert!(level_free_dq_residual(x, lam, &lv, &cx).unwrap() < 1e-10);
        }
    }
}
