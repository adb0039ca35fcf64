//! Ladder families and the recurrences they induce.
//!
//! A family supplies the ladder factor `ξ_n(A)` of `D p_n(·; A) = ξ_n p_{n−1}(·; A+1)`,
//! the three connection coefficients `c_{n,n}, c_{n,n−1}, c_{n,n−2}` of
//! `p_n(·; A) = Σ_j c_{n,j} p_j(·; A+1)`, and the norms `h_n(A)`. Everything
//! else here — the eigen-recurrence, its monic form, shift invariance,
//! continued fractions — is generic over that interface.

use std::fmt;
use std::sync::Arc;

use crate::error::{QError, QResult};
use crate::qcore::{c, qpoch, qpow, QContext};
use crate::qpolys::{norm_h, JacobiLevel};
use crate::spectral::{monic_b, monic_c, x_nu, x_nu_upper};
use num_complex::Complex64 as C64;

/// Parameter family `A ↦ {p_n(·; A)}` with a lowering operator.
pub trait LadderFamily: Send + Sync {
    /// `ξ_n(A)`.
    fn xi(&self, n: i64) -> C64;
    /// `c_{n,n}` as a closed-form expression in `n` (no truncation at `n < 0`).
    fn c_nn(&self, n: i64) -> C64;
    /// `c_{n,n−1}`, closed form.
    fn c_nn1(&self, n: i64) -> C64;
    /// `c_{n,n−2}`, closed form.
    fn c_nn2(&self, n: i64) -> C64;
    /// `h_n(A)`.
    fn norm(&self, n: usize) -> QResult<C64>;
    /// The family at `A + k`.
    fn shifted(&self, k: usize) -> Arc<dyn LadderFamily>;
    fn label(&self) -> String;

    /// `c_{n,j}` with the index range enforced: zero unless `0 ≤ j` and
    /// `n−2 ≤ j ≤ n`.
    fn connection(&self, n: i64, j: i64) -> C64 {
        if j < 0 || j > n {
            return c(0.0);
        }
        match n - j {
            0 => self.c_nn(n),
            1 => self.c_nn1(n),
            2 => self.c_nn2(n),
            _ => c(0.0),
        }
    }
}

/// Coefficients of the eigen-recurrence
/// `λ ξ_n a_n = c_{n−1,n−1} a_{n−1} + c_{n,n−1} a_n + c_{n+1,n−1} a_{n+1}`,
/// returned as `(ξ_n, c_{n−1,n−1}, c_{n,n−1}, c_{n+1,n−1})`.
pub fn eigen_recurrence(family: &dyn LadderFamily, n: i64) -> [C64; 4] {
    [family.xi(n), family.connection(n - 1, n - 1), family.connection(n, n - 1), family.connection(n + 1, n - 1)]
}

/// `h_n(A+1)/h_m(A) · c_{m,n}` for `m = n, n+1, n+2`: the coefficients of
/// `p_n(·; A+1) w(·; A+1) = Σ_m (…) p_m(·; A) w(·; A)`.
pub fn dual_coefficients(family: &dyn LadderFamily, n: usize) -> QResult<[C64; 3]> {
    let up = family.shifted(1);
    let hn = up.norm(n)?;
    let mut out = [c(0.0); 3];
    for (k, slot) in out.iter_mut().enumerate() {
        let m = n + k;
        *slot = hn / family.norm(m)? * family.connection(m as i64, n as i64);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Instances

/// Continuous q-Jacobi polynomials `P_n^{(α,β)}(x|q)`, `A = (α, β)`, `D = D_q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QJacobiFamily {
    pub level: JacobiLevel,
    pub ctx: QContext,
}

impl QJacobiFamily {
    pub fn new(level: JacobiLevel, ctx: QContext) -> Self {
        QJacobiFamily { level, ctx }
    }

    fn q(&self) -> f64 {
        self.ctx.q()
    }

    /// `(−q^{(α+β+1)/2}; q^{1/2})_2`.
    fn den2(&self) -> C64 {
        qpoch(-qpow(self.q(), (self.level.s() + 1.0) / 2.0), self.q().sqrt(), 2)
    }
}

impl LadderFamily for QJacobiFamily {
    fn xi(&self, n: i64) -> C64 {
        let q = self.q();
        let nf = n as f64;
        2.0 * qpow(q, -nf + (self.level.alpha + 2.5) / 2.0) * (1.0 - qpow(q, nf + self.level.s() + 1.0))
            / ((1.0 - q) * self.den2())
    }

    fn c_nn(&self, n: i64) -> C64 {
        let q = self.q();
        let s = self.level.s();
        let nf = n as f64;
        q.powf(-nf / 2.0) * (1.0 - qpow(q, s + nf + 1.0)) * (1.0 - qpow(q, s + nf + 2.0))
            / (self.den2() * (1.0 - qpow(q, nf + (s + 1.0) / 2.0)) * (1.0 - qpow(q, nf + (s + 2.0) / 2.0)))
    }

    fn c_nn1(&self, n: i64) -> C64 {
        let q = self.q();
        let (al, be) = (self.level.alpha, self.level.beta);
        let s = al + be;
        let nf = n as f64;
        qpow(q, (s + 2.0 - nf) / 2.0) * (1.0 - qpow(q, s + nf + 1.0)) * (1.0 + qpow(q, nf + (s + 1.0) / 2.0))
            * (1.0 - qpow(q, (al - be) / 2.0))
            / (self.den2() * (1.0 - qpow(q, nf + s / 2.0)) * (1.0 - qpow(q, nf + (s + 2.0) / 2.0)))
    }

    fn c_nn2(&self, n: i64) -> C64 {
        let q = self.q();
        let (al, be) = (self.level.alpha, self.level.beta);
        let s = al + be;
        let nf = n as f64;
        -qpow(q, (3.0 * al + be + 4.0 - nf) / 2.0) * (1.0 - qpow(q, al + nf)) * (1.0 - qpow(q, be + nf))
            / (self.den2() * (1.0 - qpow(q, nf + s / 2.0)) * (1.0 - qpow(q, nf + (s + 1.0) / 2.0)))
    }

    fn norm(&self, n: usize) -> QResult<C64> {
        norm_h(n, &self.level, &self.ctx)
    }

    fn shifted(&self, k: usize) -> Arc<dyn LadderFamily> {
        Arc::new(QJacobiFamily { level: self.level.shifted(k as f64), ctx: self.ctx })
    }

    fn label(&self) -> String {
        format!("q-Jacobi(α={}, β={}, q={})", self.level.alpha, self.level.beta, self.q())
    }
}

/// Ultraspherical `C_n^ν(x)` with `D = d/dx`, `A = ν > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UltrasphericalFamily {
    pub nu: f64,
}

impl UltrasphericalFamily {
    pub fn new(nu: f64) -> QResult<Self> {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(QError::InvalidParameter(format!("ν must be positive, got {nu}")));
        }
        Ok(UltrasphericalFamily { nu })
    }

    /// The recurrence as written classically:
    /// `2λ a_n = a_{n−1}/(ν+n−1) − a_{n+1}/(ν+n+1)`, as `(2, 1/(ν+n−1), 0, −1/(ν+n+1))`.
    pub fn classical_recurrence(&self, n: i64) -> [C64; 4] {
        let nu = self.nu;
        let nf = n as f64;
        let lower = if n >= 1 { 1.0 / (nu + nf - 1.0) } else { 0.0 };
        [c(2.0), c(lower), c(0.0), c(-1.0 / (nu + nf + 1.0))]
    }
}

impl LadderFamily for UltrasphericalFamily {
    fn xi(&self, _n: i64) -> C64 {
        c(2.0 * self.nu)
    }

    fn c_nn(&self, n: i64) -> C64 {
        c(self.nu / (self.nu + n as f64))
    }

    fn c_nn1(&self, _n: i64) -> C64 {
        c(0.0)
    }

    fn c_nn2(&self, n: i64) -> C64 {
        c(-self.nu / (self.nu + n as f64))
    }

    /// `π 2^{1−2ν} Γ(n+2ν) / (n! (n+ν) Γ(ν)²)`.
    fn norm(&self, n: usize) -> QResult<C64> {
        let nu = self.nu;
        let nf = n as f64;
        let ln = std::f64::consts::PI.ln() + (1.0 - 2.0 * nu) * std::f64::consts::LN_2 + libm::lgamma(nf + 2.0 * nu)
            - libm::lgamma(nf + 1.0)
            - (nf + nu).ln()
            - 2.0 * libm::lgamma(nu);
        Ok(c(ln.exp()))
    }

    fn shifted(&self, k: usize) -> Arc<dyn LadderFamily> {
        Arc::new(UltrasphericalFamily { nu: self.nu + k as f64 })
    }

    fn label(&self) -> String {
        format!("ultraspherical(ν={})", self.nu)
    }
}

// ---------------------------------------------------------------------------
// Monic form

/// `μ b_n = b_{n+1} + B_n b_n + C_n b_{n−1}` and its companion
/// `μ G_n = C_{n+1} G_{n+1} + B_n G_n + G_{n−1}`, with
/// `B_n = u c_{n+1,n}/ξ_{n+1}`, `C_n = u² c_{n,n} c_{n+1,n−1}/(ξ_n ξ_{n+1})`.
#[derive(Clone)]
pub struct MonicSystem {
    family: Arc<dyn LadderFamily>,
    pub u: C64,
    c_factors: Vec<(usize, C64)>,
}

impl fmt::Debug for MonicSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonicSystem")
            .field("family", &self.family.label())
            .field("u", &self.u)
            .field("c_factors", &self.c_factors)
            .finish()
    }
}

/// Monic normalization of a family with scale `u`.
pub fn monicize(family: Arc<dyn LadderFamily>, u: C64) -> MonicSystem {
    MonicSystem { family, u, c_factors: Vec::new() }
}

impl MonicSystem {
    pub fn family(&self) -> &Arc<dyn LadderFamily> {
        &self.family
    }

    pub fn b(&self, n: usize) -> C64 {
        let n = n as i64;
        self.u * self.family.c_nn1(n + 1) / self.family.xi(n + 1)
    }

    pub fn c(&self, n: usize) -> C64 {
        let ni = n as i64;
        let f = &self.family;
        // two bounded ratios; the raw factors grow like q^{−n} individually
        let base = (self.u * f.c_nn(ni) / f.xi(ni)) * (self.u * f.c_nn2(ni + 1) / f.xi(ni + 1));
        self.c_factors.iter().filter(|(k, _)| *k == n).fold(base, |acc, (_, s)| acc * s)
    }

    /// Same system with `C_n` multiplied by `factor` (a controlled defect).
    pub fn perturb_c(&self, n: usize, factor: C64) -> MonicSystem {
        let mut out = self.clone();
        out.c_factors.push((n, factor));
        out
    }

    /// `b_0 … b_{len−1}` at `μ` by forward recurrence.
    pub fn b_polys(&self, len: usize, mu: C64) -> Vec<C64> {
        let mut out = Vec::with_capacity(len);
        let (mut prev, mut cur) = (c(0.0), c(1.0));
        for n in 0..len {
            out.push(cur);
            let next = (mu - self.b(n)) * cur - self.c(n) * prev;
            prev = cur;
            cur = next;
        }
        out
    }
}

/// Largest relative deviation of `B_n(A)`, `C_n(A)` from `B_0(A+n)`, `C_0(A+n)`, `n ≤ n_max`.
pub fn shift_invariance_deviation(system: &MonicSystem, n_max: usize) -> f64 {
    let rel = |a: C64, b: C64| {
        let d = (a - b).norm();
        if d == 0.0 {
            0.0
        } else {
            d / a.norm().max(b.norm())
        }
    };
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let moved = monicize(system.family.shifted(n), system.u);
        worst = worst.max(rel(system.b(n), moved.b(0))).max(rel(system.c(n), moved.c(0)));
    }
    worst
}

/// `B_n(A) = B_0(A+n)` and `C_n(A) = C_0(A+n)` to `1e−12` for `n ≤ n_max`.
pub fn shift_invariance_check(system: &MonicSystem, n_max: usize) -> bool {
    shift_invariance_deviation(system, n_max) <= 1e-12
}

/// Largest relative deviation between a monic system and the direct
/// q-Jacobi coefficients of [`monic_b`] / [`monic_c`], `n ≤ n_max`
/// (`C_0` is excluded: it never enters the recurrence).
pub fn qjacobi_monic_deviation(system: &MonicSystem, level: &JacobiLevel, q: f64, n_max: usize) -> f64 {
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let (b0, b1) = (system.b(n), monic_b(n, level, q));
        let db = (b0 - b1).norm() / b1.norm().max(f64::MIN_POSITIVE);
        worst = worst.max(if b0 == b1 { 0.0 } else { db });
        if n >= 1 {
            let (c0, c1) = (system.c(n), monic_c(n, level, q));
            worst = worst.max((c0 - c1).norm() / c1.norm());
        }
    }
    worst
}

/// `u = 2q^{1/2}/(1−q)`, the scale that makes the q-Jacobi system shift invariant.
pub fn qjacobi_u(q: f64) -> C64 {
    c(2.0 * q.sqrt() / (1.0 - q))
}

// ---------------------------------------------------------------------------
// Continued fractions

/// Value of the continued J-fraction `G_0/G_{−1}` and how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CfValue {
    pub value: C64,
    /// `G_{−1}/G_0`, finite even at a pole of `value`.
    pub reciprocal: C64,
    pub depth: usize,
    pub converged: bool,
    /// `μ` is (numerically) a zero of `G_{−1}`.
    pub near_pole: bool,
}

const CF_START_DEPTH: usize = 16;
const CF_MAX_DEPTH: usize = 1 << 14;

/// `G_{−1}/G_0` from the tail `G_{d+1}/G_d = 0`, evaluated bottom-up, plus the
/// magnitude of the two terms that form it.
fn cf_reciprocal(system: &MonicSystem, mu: C64, depth: usize) -> (C64, f64) {
    let mut t = c(0.0);
    let mut r = c(1.0);
    let mut scale = 1.0;
    for n in (0..=depth).rev() {
        let a = mu - system.b(n);
        let d = system.c(n + 1) * t;
        r = a - d;
        scale = a.norm() + d.norm();
        t = 1.0 / r;
    }
    (r, scale)
}

/// `G_0/G_{−1}` truncated at `depth`.
pub fn cf_at_depth(system: &MonicSystem, mu: C64, depth: usize) -> C64 {
    1.0 / cf_reciprocal(system, mu, depth).0
}

/// Pincherle ratio `G_0/G_{−1}` with depth doubling until two depths agree
/// to `tol` in the reciprocal.
pub fn cf_minimal_ratio(system: &MonicSystem, mu: C64, ctx: &QContext) -> CfValue {
    let mut depth = CF_START_DEPTH;
    let (mut prev, _) = cf_reciprocal(system, mu, depth);
    loop {
        let d2 = 2 * depth;
        let (cur, scale) = cf_reciprocal(system, mu, d2);
        let converged = (cur - prev).norm() <= ctx.tol * scale.max(f64::MIN_POSITIVE);
        if converged || d2 >= CF_MAX_DEPTH {
            return CfValue {
                value: 1.0 / cur,
                reciprocal: cur,
                depth: d2,
                converged,
                near_pole: cur.norm() < 1e-8 * scale,
            };
        }
        prev = cur;
        depth = d2;
    }
}

/// `(G_0/G_{−1}) / (X_0/X_{−1})` for the q-Jacobi system; the minimal
/// solutions differ by `G_n ∝ (−1)^n X_n`, so this is `−1` for every `μ`.
pub fn qjacobi_pincherle_constant(system: &MonicSystem, level: &JacobiLevel, mu: C64, ctx: &QContext) -> QResult<C64> {
    let cf = cf_minimal_ratio(system, mu, ctx);
    if !cf.converged {
        return Err(QError::NoConvergence(format!("continued fraction at μ = {mu}")));
    }
    let ratio = x_nu(0.0, mu, level, ctx)? / x_nu(-1.0, mu, level, ctx)?;
    Ok(cf.value / ratio)
}

// ---------------------------------------------------------------------------
// Telescoping identity

/// Sign in `C_ν f(ν+1) = (A_ν x + B_ν) f(ν) ± f(ν−1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TelescopeSign {
    Plus,
    Minus,
}

impl TelescopeSign {
    fn value(self) -> f64 {
        match self {
            TelescopeSign::Plus => 1.0,
            TelescopeSign::Minus => -1.0,
        }
    }
}

/// Coefficients of a contiguous family `C_ν f(ν+1) = (A_ν x + B_ν) f(ν) ± f(ν−1)`.
pub struct ThreeTerm<'a> {
    pub a: &'a dyn Fn(i64) -> C64,
    pub b: &'a dyn Fn(i64) -> C64,
    pub c: &'a dyn Fn(i64) -> C64,
    pub sign: TelescopeSign,
}

impl ThreeTerm<'_> {
    /// `f_{0,ν} … f_{n,ν}`: `f_0 = 1`, `f_1 = A_ν x + B_ν`,
    /// `f_{k+1} = (A_{k+ν} x + B_{k+ν}) f_k ± C_{k+ν−1} f_{k−1}`.
    pub fn polys(&self, nu: i64, n: usize, x: C64) -> Vec<C64> {
        let s = self.sign.value();
        let mut out = vec![c(1.0)];
        if n == 0 {
            return out;
        }
        out.push((self.a)(nu) * x + (self.b)(nu));
        for k in 1..n {
            let kk = k as i64;
            let next = ((self.a)(kk + nu) * x + (self.b)(kk + nu)) * out[k] + s * (self.c)(kk + nu - 1) * out[k - 1];
            out.push(next);
        }
        out
    }

    /// Residual of `C_ν ⋯ C_{ν+n−1} f(ν+n) = f_{n,ν} f(ν) ± f_{n−1,ν+1} f(ν−1)`,
    /// divided by `|f_{n,ν} f(ν)| + |f_{n−1,ν+1} f(ν−1)|`.
    pub fn residual(&self, f: &dyn Fn(i64) -> QResult<C64>, nu: i64, n: usize, x: C64) -> QResult<f64> {
        if n == 0 {
            return Err(QError::InvalidParameter("n must be at least 1".into()));
        }
        let prod: C64 = (0..n as i64).map(|k| (self.c)(nu + k)).product();
        let lhs = prod * f(nu + n as i64)?;
        let t1 = self.polys(nu, n, x)[n] * f(nu)?;
        let t2 = self.sign.value() * self.polys(nu + 1, n - 1, x)[n - 1] * f(nu - 1)?;
        Ok((lhs - t1 - t2).norm() / (t1.norm() + t2.norm()).max(f64::MIN_POSITIVE))
    }
}

/// Telescoping residual for the minimal solutions `X_ν` at `x`, built on
/// `c_ν X_{ν+1} = (x − B_ν) X_ν + X_{ν−1}`, optionally with `C_k` scaled.
pub fn x_nu_telescope_residual(level: &JacobiLevel, nu: i64, n: usize, x: C64, c_defect: Option<(i64, f64)>, ctx: &QContext) -> QResult<f64> {
    if nu < 0 {
        return Err(QError::InvalidParameter("ν must be nonnegative".into()));
    }
    let q = ctx.q();
    let a = |_k: i64| c(1.0);
    let b = |k: i64| -monic_b(k as usize, level, q);
    let cc = |k: i64| {
        let v = x_nu_upper(k as usize, level, q);
        match c_defect {
            Some((at, s)) if at == k => v * s,
            _ => v,
        }
    };
    let fam = ThreeTerm { a: &a, b: &b, c: &cc, sign: TelescopeSign::Plus };
    fam.residual(&|k| x_nu(k as f64, x, level, ctx), nu, n, x)
}

// ---------------------------------------------------------------------------
// A limit of a more general recurrence

/// `a'_n` of `Z_{n+1} = (x + a'_n) Z_n − b'_n Z_{n−1}` (the `A → ∞` limit).
pub fn limit_a_prime(n: usize, level: &JacobiLevel, q: f64) -> C64 {
    let (al, be) = (level.alpha, level.beta);
    let s = al + be;
    let nf = n as f64;
    -q.powf((nf - 1.0) / 2.0) * (1.0 + qpow(q, nf + (s + 3.0) / 2.0)) * (1.0 - qpow(q, (be - al) / 2.0))
        / ((1.0 - qpow(q, nf + 1.0 + s / 2.0)) * (1.0 - qpow(q, nf + 2.0 + s / 2.0)))
}

/// `b'_n` (see [`limit_a_prime`]).
pub fn limit_b_prime(n: usize, level: &JacobiLevel, q: f64) -> C64 {
    let (al, be) = (level.alpha, level.beta);
    let s = al + be;
    let nf = n as f64;
    let d = 1.0 - qpow(q, nf + 1.0 + s / 2.0);
    qpow(q, nf + (be - al - 3.0) / 2.0) * (1.0 - qpow(q, nf + al + 1.0)) * (1.0 - qpow(q, nf + be + 1.0))
        / ((1.0 - qpow(q, nf + (s + 1.0) / 2.0)) * d * d * (1.0 - qpow(q, nf + (s + 3.0) / 2.0)))
}

/// `s = q^{(2α+5)/4}` in `Y_n(x) = s^n Z_n(x/s)`.
pub fn limit_scale(level: &JacobiLevel, q: f64) -> C64 {
    qpow(q, (2.0 * level.alpha + 5.0) / 4.0)
}

/// Rescaled coefficients `(s a'_n, s² b'_n)`: with `Y_n = s^n Z_n(x/s)`,
/// `Y_{n+1} = (x + s a'_n) Y_n − s² b'_n Y_{n−1}`.
pub fn limit_rescaled(n: usize, level: &JacobiLevel, q: f64) -> (C64, C64) {
    let s = limit_scale(level, q);
    (s * limit_a_prime(n, level, q), s * s * limit_b_prime(n, level, q))
}

/// Largest relative deviation over `n ≤ n_max` between the rescaled limit
/// coefficients and the monic q-Jacobi ones, under the identification
/// `s a'_n = B_n`, `s² b'_n = −C_n`.
pub fn limit_map_deviation(level: &JacobiLevel, n_max: usize, ctx: &QContext) -> f64 {
    let q = ctx.q();
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let (a, b) = limit_rescaled(n, level, q);
        let (bb, cc) = (monic_b(n, level, q), monic_c(n, level, q));
        if bb != c(0.0) || a != c(0.0) {
            worst = worst.max((a - bb).norm() / bb.norm().max(a.norm()));
        }
        worst = worst.max((b + cc).norm() / cc.norm());
    }
    worst
}

/// Same comparison under the identification read off the printed recurrence
/// `Z_{n+1} = (x + a'_n) Z_n − b'_n Z_{n−1}` literally: `s a'_n = −B_n`,
/// `s² b'_n = C_n`. Returned for contrast; it is not small.
pub fn limit_literal_sign_deviation(level: &JacobiLevel, n_max: usize, ctx: &QContext) -> f64 {
    let q = ctx.q();
    let mut worst = 0.0f64;
    for n in 0..=n_max {
        let (a, b) = limit_rescaled(n, level, q);
        let (bb, cc) = (monic_b(n, level, q), monic_c(n, level, q));
        if bb != c(0.0) || a != c(0.0) {
            worst = worst.max((a + bb).norm() / bb.norm().max(a.norm()));
        }
        worst = worst.max((b - cc).norm() / cc.norm());
    }
    worst
}

/// Parameters `(A, B, C, D)` and base of the general recurrence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralRecurrence {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
    pub base: f64,
}

impl GeneralRecurrence {
    /// `B = q^{1+α/2} = −C`, `D = q^{2+(α+β)/2}`, base `q^{1/2}`, with `A` given.
    pub fn for_level(level: &JacobiLevel, big_a: f64, q: f64) -> Self {
        let b = qpow(q, 1.0 + level.alpha / 2.0);
        GeneralRecurrence { a: c(big_a), b, c: -b, d: qpow(q, 2.0 + level.s() / 2.0), base: q.sqrt() }
    }
}

/// `a_n` of `Z_{n+1} = (x − a_n) Z_n − b_n Z_{n−1}`, as a function of `(A, B, C, D)`.
pub fn general_an(n: usize, p: &GeneralRecurrence) -> C64 {
    let q = p.base;
    let qn = q.powi(n as i32);
    let GeneralRecurrence { a, b, c: cc, d, .. } = *p;
    let r = d / (a * b * cc);
    -r - qn / q * (1.0 - d * qn / a) * (1.0 - d * qn / b) * (1.0 - d * qn / cc)
        / ((1.0 - d * qn * qn / q) * (1.0 - d * qn * qn / (q * q)))
        + r * (1.0 - a * qn / q) * (1.0 - b * qn / q) * (1.0 - cc * qn / q) / ((1.0 - d * qn * qn / q) * (1.0 - d * qn * qn))
}

/// `b_n` of the same recurrence.
pub fn general_bn(n: usize, p: &GeneralRecurrence) -> C64 {
    let q = p.base;
    let qn = q.powi(n as i32);
    let GeneralRecurrence { a, b, c: cc, d, .. } = *p;
    let q1 = qn / q;
    let d2 = 1.0 - d * qn * qn / (q * q);
    -d / (a * b * cc) * qn / (q * q) * (1.0 - a * q1) * (1.0 - b * q1) * (1.0 - cc * q1)
        * (1.0 - d * q1 / a)
        * (1.0 - d * q1 / b)
        * (1.0 - d * q1 / cc)
        / ((1.0 - d * qn * qn / q) * d2 * d2 * (1.0 - d * qn * qn / (q * q * q)))
}

/// The displayed `A → ∞` limits `(a_n, b_n)` for `C = −B`.
pub fn general_limits_displayed(n: usize, p: &GeneralRecurrence) -> (C64, C64) {
    let q = p.base;
    let qn = q.powi(n as i32);
    let (b, d) = (p.b, p.d);
    let q2 = qn * qn;
    let a_lim = -(qn / q) * (1.0 + d * q2 / q) * (1.0 - d / (b * b)) / ((1.0 - d * q2 / (q * q)) * (1.0 - d * q2));
    let dd = 1.0 - d * q2 / (q * q);
    let b_lim = d * q2 / (q * q * q) * (1.0 - b * b * q2 / (q * q)) * (1.0 - d * d * q2 / (q * q * b * b))
        / (b * b * (1.0 - d * q2 / q) * dd * dd * (1.0 - d * q2 / (q * q * q)));
    (a_lim, b_lim)
}

/// Relative deviations `(δa, δb)` at index `n` between the general
/// coefficients at finite `A` and the displayed `A → ∞` limits.
pub fn general_large_a_deviation(n: usize, level: &JacobiLevel, big_a: f64, q: f64) -> (f64, f64) {
    let p = GeneralRecurrence::for_level(level, big_a, q);
    let (la, lb) = general_limits_displayed(n, &p);
    ((general_an(n, &p) - la).norm() / la.norm(), (general_bn(n, &p) - lb).norm() / lb.norm())
}
