//! The eigenvalue problem `T g = λ g`: recurrences for the expansion
//! coefficients, the monic polynomials `b_n(μ)`, minimal solutions `X_ν`,
//! eigenvalues and eigenfunctions, `s_n` polynomials, the q-Coulomb function
//! and the large-`n` asymptotics of `b_n`.
//!
//! `μ = 2λq^{1/2}/(1−q)` throughout; `p = q^{1/2}`.

pub mod asymptotics;
pub mod eigen;
pub mod minimal;
pub mod spoly;

pub use asymptotics::*;
pub use eigen::*;
pub use minimal::*;
pub use spoly::*;

use crate::error::{QError, QResult};
use crate::qcore::dd::{Dd, DdC};
use crate::qcore::{c, qpoch, qpow, QContext};
use crate::qpolys::JacobiLevel;
use num_complex::Complex64 as C64;

/// `μ = 2λq^{1/2}/(1−q)`.
pub fn mu_of_lambda(lambda: C64, q: f64) -> C64 {
    lambda * 2.0 * q.sqrt() / (1.0 - q)
}

pub fn lambda_of_mu(mu: C64, q: f64) -> C64 {
    mu * (1.0 - q) / (2.0 * q.sqrt())
}

/// Coefficients `(c₊, c₀, c₋)` of `a_{k+1}, a_k, a_{k−1}` in
/// `−λ q^{α/2+1/4} a_k = c₊ a_{k+1} + c₀ a_k + c₋ a_{k−1}`, `k ≥ 1`.
pub fn recurrence_a_coeffs(k: usize, level: &JacobiLevel, q: f64) -> (C64, C64, C64) {
    let (al, be) = (level.alpha, level.beta);
    let s = level.s();
    let kf = k as f64;
    let qp = |z: C64| qpow(q, z);
    let cp = (1.0 - q) * (1.0 - qp(al + kf + 1.0)) * (1.0 - qp(be + kf + 1.0)) * qp((3.0 * al + be + kf + 1.0) / 2.0)
        / (2.0 * (1.0 - qp(s + 1.0 + kf)) * (1.0 - qp((s + 2.0) / 2.0 + kf)) * (1.0 - qp((s + 3.0) / 2.0 + kf)));
    let c0 = -(1.0 - q) * (1.0 - qp((al - be) / 2.0)) * (1.0 + qp((s + 1.0) / 2.0 + kf)) * qp((s + kf) / 2.0)
        / (2.0 * (1.0 - qp(s / 2.0 + kf)) * (1.0 - qp((s + 2.0) / 2.0 + kf)));
    let cm = -(1.0 - q) * (1.0 - qp(s + kf)) * qp(c((kf - 1.0) / 2.0))
        / (2.0 * (1.0 - qp(s / 2.0 + kf)) * (1.0 - qp((s - 1.0) / 2.0 + kf)));
    (cp, c0, cm)
}

/// The `q → 1` limit of [`recurrence_a_coeffs`] (with `−λ a_k` on the left).
pub fn recurrence_a_coeffs_classical(k: usize, level: &JacobiLevel) -> (C64, C64, C64) {
    let (al, be) = (level.alpha, level.beta);
    let s = level.s();
    let kf = k as f64;
    let cp = 2.0 * (al + 1.0 + kf) * (be + 1.0 + kf) / ((s + 1.0 + kf) * (s + 2.0 + 2.0 * kf) * (s + 3.0 + 2.0 * kf));
    let c0 = 2.0 * (be - al) / ((s + 2.0 * kf) * (s + 2.0 + 2.0 * kf));
    let cm = -2.0 * (s + kf) / ((s + 2.0 * kf - 1.0) * (s + 2.0 * kf));
    (cp, c0, cm)
}

/// `q^{α/2+1/4}`, the factor multiplying `−λ a_k`.
pub fn a_recurrence_scale(level: &JacobiLevel, q: f64) -> C64 {
    qpow(q, level.alpha / 2.0 + 0.25)
}

/// Diagonal coefficient `B_k` of `b_{k+1} = (μ − B_k) b_k − C_k b_{k−1}`.
pub fn monic_b(k: usize, level: &JacobiLevel, q: f64) -> C64 {
    let (al, be) = (level.alpha, level.beta);
    let s = level.s();
    let kf = k as f64;
    let qp = |z: C64| qpow(q, z);
    -(1.0 - qp((be - al) / 2.0)) * (1.0 + qp((s + 3.0) / 2.0 + kf)) * qp(al / 2.0 + 0.75 + kf / 2.0)
        / ((1.0 - qp((s + 2.0) / 2.0 + kf)) * (1.0 - qp((s + 4.0) / 2.0 + kf)))
}

/// Off-diagonal coefficient `C_k` (see [`monic_b`]).
pub fn monic_c(k: usize, level: &JacobiLevel, q: f64) -> C64 {
    let (al, be) = (level.alpha, level.beta);
    let s = level.s();
    let kf = k as f64;
    let qp = |z: C64| qpow(q, z);
    let d = 1.0 - qp((s + 2.0) / 2.0 + kf);
    -(1.0 - qp(al + 1.0 + kf)) * (1.0 - qp(be + 1.0 + kf)) * qp(kf + s / 2.0 + 1.0)
        / ((1.0 - qp((s + 1.0) / 2.0 + kf)) * d * d * (1.0 - qp((s + 3.0) / 2.0 + kf)))
}

/// Monic three-term system `y_{k+1} = (μ − B_k) y_k − C_k y_{k−1}` with the
/// spectral scale `u` (`μ = λ u`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TridiagonalSystem {
    pub level: JacobiLevel,
    pub q: f64,
    pub u: C64,
}

impl TridiagonalSystem {
    pub fn qjacobi(level: &JacobiLevel, q: f64) -> Self {
        TridiagonalSystem { level: *level, q, u: c(2.0 * q.sqrt() / (1.0 - q)) }
    }

    pub fn b(&self, k: usize) -> C64 {
        monic_b(k, &self.level, self.q)
    }

    pub fn c(&self, k: usize) -> C64 {
        monic_c(k, &self.level, self.q)
    }
}

/// Complex number stored as `m · e^{s}`, for values that over/underflow.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaled {
    pub mantissa: C64,
    pub log_scale: f64,
}

impl Scaled {
    pub fn to_c64(self) -> C64 {
        self.mantissa * self.log_scale.exp()
    }

    /// `ln` of the value (principal branch on the mantissa).
    pub fn ln(self) -> C64 {
        self.mantissa.ln() + self.log_scale
    }
}

/// `b_n(μ)` by forward recurrence.
pub fn bn_recurrence(n: usize, mu: C64, level: &JacobiLevel, ctx: &QContext) -> C64 {
    bn_sequence(n, mu, level, ctx)[n]
}

/// `b_0(μ), …, b_n(μ)` by forward recurrence.
pub fn bn_sequence(n: usize, mu: C64, level: &JacobiLevel, ctx: &QContext) -> Vec<C64> {
    let q = ctx.q();
    let mut out = Vec::with_capacity(n + 1);
    let (mut prev, mut cur) = (c(0.0), c(1.0));
    out.push(cur);
    for k in 0..n {
        let next = (mu - monic_b(k, level, q)) * cur - monic_c(k, level, q) * prev;
        prev = cur;
        cur = next;
        out.push(cur);
    }
    out
}

/// `b_n(μ)` by forward recurrence with running rescaling.
pub fn bn_recurrence_scaled(n: usize, mu: C64, level: &JacobiLevel, ctx: &QContext) -> Scaled {
    let q = ctx.q();
    let (mut prev, mut cur) = (c(0.0), c(1.0));
    let mut log_scale = 0.0;
    for k in 0..n {
        let next = (mu - monic_b(k, level, q)) * cur - monic_c(k, level, q) * prev;
        prev = cur;
        cur = next;
        let m = cur.norm();
        if m > 0.0 && !(1e-100..=1e100).contains(&m) {
            prev /= m;
            cur /= m;
            log_scale += m.ln();
        }
    }
    Scaled { mantissa: cur, log_scale }
}

/// `b_0, …, b_{len−1}` as [`Scaled`] values (forward recurrence).
pub fn bn_recurrence_scaled_seq(len: usize, mu: C64, level: &JacobiLevel, ctx: &QContext) -> Vec<Scaled> {
    let q = ctx.q();
    let (mut prev, mut cur) = (c(0.0), c(1.0));
    let mut log_scale = 0.0;
    let mut out = Vec::with_capacity(len);
    for k in 0..len {
        out.push(Scaled { mantissa: cur, log_scale });
        let next = (mu - monic_b(k, level, q)) * cur - monic_c(k, level, q) * prev;
        prev = cur;
        cur = next;
        let m = cur.norm();
        if m > 0.0 && !(1e-100..=1e100).contains(&m) {
            prev /= m;
            cur /= m;
            log_scale += m.ln();
        }
    }
    out
}

/// Terminating `Σ_{k≤n} ∏(1 − a_i base^k)/∏(1 − b_j base^k)/(1 − base^{k+1}) · z^k`
/// with the first numerator `base^{−n}`, all in double-double.
fn terminating_dd(n: usize, nums: &[DdC], dens: &[DdC], base: Dd, z: DdC) -> DdC {
    let inv_n = base.powi(-(n as i64));
    let mut term = DdC::ONE;
    let mut sum = DdC::ONE;
    let mut bk = Dd::ONE;
    for _ in 0..n {
        let mut ratio = DdC::real(Dd::ONE - inv_n * bk);
        for a in nums {
            ratio = ratio * (DdC::ONE - a.scale(bk));
        }
        let mut den = DdC::real(Dd::ONE - base * bk);
        for b in dens {
            den = den * (DdC::ONE - b.scale(bk));
        }
        term = term * ratio / den * z;
        sum = sum + term;
        bk = bk * base;
    }
    sum
}

fn ddc_poch(a: DdC, base: Dd, n: usize) -> DdC {
    let mut acc = DdC::ONE;
    let mut bk = Dd::ONE;
    for _ in 0..n {
        acc = acc * (DdC::ONE - a.scale(bk));
        bk = bk * base;
    }
    acc
}

/// `b_n(μ)` from the explicit double sum (outer `j`-sum, inner terminating
/// `₄φ₃` in base `p`). Parameters are rounded to doubles once; every integer
/// power of `p` and every product after that is carried in double-double, so
/// the heavy cancellation of the alternating sums is absorbed.
pub fn bn_explicit(n: usize, mu: C64, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let p = ctx.p();
    let pd = Dd::new(p);
    let pk = |k: i64| DdC::real(pd.powi(k));
    let pa = DdC::from(qpow(p, level.alpha));
    let pb = DdC::from(qpow(p, level.beta));
    let sqrt_p = Dd::new(p).sqrt();
    let ni = n as i64;
    let mud = DdC::from(mu);
    let mut total = DdC::ZERO;
    for j in 0..=n {
        let ji = j as i64;
        let nums = [pk(2 * ni + 3 - ji) * pa * pb, pk(1) * pb, -(pk(1) * pa)];
        let dens = [pk(2) * pa * pb, pk(ni + 2 - ji) * pb, -(pk(ni + 2 - ji) * pa)];
        for (k, d) in dens.iter().enumerate() {
            for r in 0..j {
                if (DdC::ONE - d.scale(pd.powi(r as i64))).norm_f64() < 1e-15 {
                    return Err(QError::Pole(format!("denominator {k} of the inner sum vanishes (j = {j})")));
                }
            }
        }
        let inner = terminating_dd(j, &nums, &dens, pd, DdC::real(pd));
        let pre_num = ddc_poch(pk(-ni - 1) / pb, pd, j) * ddc_poch(-(pk(-ni - 1) / pa), pd, j);
        let pre_den = ddc_poch(DdC::real(pd), pd, j) * ddc_poch(pk(-2 * ni - 2) / (pa * pb), pd, j);
        if pre_den.norm_f64() == 0.0 {
            return Err(QError::Pole(format!("outer denominator vanishes at j = {j}")));
        }
        let sign = if j % 2 == 0 { Dd::ONE } else { -Dd::ONE };
        let pj2 = sqrt_p.powi(ji);
        let term = (pre_num / pre_den).scale(sign * pj2) * mud.powi((n - j) as i64) * inner;
        total = total + term;
    }
    Ok(total.to_c64())
}

/// Prefactor `π_k` in `a_{k+1}(λ) = π_k · b_k(μ)`.
pub fn an_prefactor(k: usize, level: &JacobiLevel, q: f64) -> C64 {
    let (al, be) = (level.alpha, level.beta);
    let s = level.s();
    let kf = k as f64;
    let num = qpoch(qpow(q, s + 2.0), q, k) * qpoch(qpow(q, (s + 4.0) / 2.0), q, k) * qpoch(qpow(q, (s + 5.0) / 2.0), q, k);
    let den = qpoch(qpow(q, al + 2.0), q, k) * qpoch(qpow(q, be + 2.0), q, k);
    let sign = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
    sign * num / den * qpow(q, -(kf * kf / 4.0 + (al + be / 2.0 + 1.0) * kf))
}

/// `a_{k+1}(λ|q)` from `b_k`; `a_1 = 1`. Use [`a_zero`] for `a_0`.
pub fn an_from_bn(k: usize, lambda: C64, level: &JacobiLevel, ctx: &QContext) -> C64 {
    an_prefactor(k, level, ctx.q()) * bn_recurrence(k, mu_of_lambda(lambda, ctx.q()), level, ctx)
}

/// `a_0(λ|q) = 0`.
pub fn a_zero() -> C64 {
    c(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(q: f64) -> QContext {
        QContext::new(q).unwrap()
    }

    #[test]
    fn classical_limit_of_a_recurrence() {
        let lv = JacobiLevel::real(0.5, -0.25);
        let q = 1.0 - 1e-5;
        let (a, b, cc) = recurrence_a_coeffs(2, &lv, q);
        let s = a_recurrence_scale(&lv, q);
        let (ea, eb, ec) = recurrence_a_coeffs_classical(2, &lv);
        for (x, e) in [(a / s, ea), (b / s, eb), (cc / s, ec)] {
            assert!((x - e).norm() < 1e-3 * e.norm(), "{x} vs {e}");
        }
    }

    #[test]
    fn equal_parameters_kill_self_coupling() {
        let lv = JacobiLevel::real(0.4, 0.4);
        for k in 1..6 {
            assert_eq!(recurrence_a_coeffs(k, &lv, 0.5).1, c(0.0));
            assert_eq!(monic_b(k, &lv, 0.5), c(0.0));
        }
    }

    #[test]
    fn monic_form_from_a_recurrence() {
        let q = 0.5;
        let lv = JacobiLevel::real(0.3, -0.2);
        let s = a_recurrence_scale(&lv, q);
        let u = 2.0 * q.sqrt() / (1.0 - q);
        for k in 0..=10 {
            // substitute a_{j+1} = π_j b_j into the a-recurrence at index k+1
            let (cp, c0, cm) = recurrence_a_coeffs(k + 1, &lv, q);
            let r = an_prefactor(k + 1, &lv, q) / an_prefactor(k, &lv, q);
            assert!((-s / (cp * r) - u).norm() < 1e-12 * u);
            let b = c0 / (cp * r) / u * u;
            assert!((b - monic_b(k, &lv, q)).norm() < 1e-12 * b.norm().max(1e-300));
            if k > 0 {
                let rm = an_prefactor(k, &lv, q) / an_prefactor(k - 1, &lv, q);
                let cc = cm / (cp * r * rm);
                assert!((cc - monic_c(k, &lv, q)).norm() < 1e-12 * cc.norm());
            }
        }
    }

    #[test]
    fn first_monic_values() {
        let cx = ctx(0.36);
        let lv = JacobiLevel::real(0.5, -0.25);
        let mu = C64::new(0.7, 0.1);
        assert_eq!(bn_recurrence(0, mu, &lv, &cx), c(1.0));
        assert!((bn_recurrence(1, mu, &lv, &cx) - (mu - monic_b(0, &lv, 0.36))).norm() < 1e-15);
        let e = bn_explicit(5, mu, &lv, &cx).unwrap();
        let r = bn_recurrence(5, mu, &lv, &cx);
        assert!((e - r).norm() < 1e-10 * r.norm());
        assert_eq!(bn_explicit(0, mu, &lv, &cx).unwrap(), c(1.0));
    }

    #[test]
    fn explicit_is_monic() {
        let cx = ctx(0.5);
        let lv = JacobiLevel::real(0.3, -0.2);
        for n in 1..=10 {
            // n-th divided difference over n+1 points equals the leading coefficient
            let pts: Vec<C64> = (0..=n).map(|i| c(1.0 + i as f64)).collect();
            let mut dd: Vec<C64> = pts.iter().map(|&x| bn_explicit(n, x, &lv, &cx).unwrap()).collect();
            for lvl in 1..=n {
                for i in 0..=(n - lvl) {
                    dd[i] = (dd[i + 1] - dd[i]) / (pts[i + lvl] - pts[i]);
                }
            }
            assert!((dd[0] - 1.0).norm() < 1e-7, "n = {n}: {}", dd[0]);
        }
    }

    #[test]
    fn scaled_matches_plain() {
        let cx = ctx(0.5);
        let lv = JacobiLevel::real(0.3, -0.2);
        let mu = C64::new(1.1, -0.4);
        let a = bn_recurrence(30, mu, &lv, &cx);
        let b = bn_recurrence_scaled(30, mu, &lv, &cx).to_c64();
        assert!((a - b).norm() < 1e-13 * a.norm());
    }

    #[test]
    fn a_coefficients_start_and_degree() {
        let cx = ctx(0.5);
        let lv = JacobiLevel::real(0.3, -0.2);
        assert_eq!(a_zero(), c(0.0));
        assert!((an_from_bn(0, C64::new(0.3, 0.2), &lv, &cx) - 1.0).norm() < 1e-15);
        // a_4/a_1 has degree 3 in λ: fourth differences on a uniform grid vanish
        let f = |l: f64| an_from_bn(3, c(l), &lv, &cx);
        let h = 0.25;
        let d4 = f(0.0) - 4.0 * f(h) + 6.0 * f(2.0 * h) - 4.0 * f(3.0 * h) + f(4.0 * h);
        let d3 = -f(0.0) + 3.0 * f(h) - 3.0 * f(2.0 * h) + f(3.0 * h);
        assert!(d4.norm() < 1e-9 * d3.norm());
        assert!(d3.norm() > 0.0);
    }
}
