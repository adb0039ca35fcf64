//! Askey–Wilson and continuous q-Jacobi polynomials, weights, norms and
//! connection coefficients.
//!
//! Two normalizations of the q-Jacobi family are supported:
//!
//! * Askey–Wilson, `P_n^{(α,β)}(x|q)` — the working normalization everywhere
//!   downstream;
//! * Rahman, `P_n^{(α,β)}(x;q) = (−q^{α+β+1};q)_n/(−q;q)_n · q^{−αn} P_n^{(α,β)}(x|q²)`.
//!
//! Literal `₄φ₃` evaluations are exact terminating sums in double-double;
//! they are fine for moderate degree. Anything that needs a long sequence of
//! degrees uses the three-term recurrence instead (the `₄φ₃` route loses
//! roughly `q^{-n²/2}` worth of digits to cancellation).

use crate::error::{QError, QResult};
use crate::qcore::{c, e_of_x, h_product_e, phi, qpoch, qpow, QContext};
use num_complex::Complex64 as C64;

/// Which normalization a q-Jacobi value is reported in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    Rahman,
    #[default]
    AskeyWilson,
}

/// Parameter level `(α, β)` of the q-Jacobi family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiLevel {
    pub alpha: C64,
    pub beta: C64,
    pub normalization: Normalization,
}

impl JacobiLevel {
    pub fn new(alpha: C64, beta: C64) -> Self {
        JacobiLevel { alpha, beta, normalization: Normalization::AskeyWilson }
    }

    pub fn real(alpha: f64, beta: f64) -> Self {
        Self::new(c(alpha), c(beta))
    }

    /// The complex-conjugate pair `β = ᾱ`.
    pub fn conjugate_pair(alpha: C64) -> Self {
        Self::new(alpha, alpha.conj())
    }

    pub fn with_normalization(mut self, normalization: Normalization) -> Self {
        self.normalization = normalization;
        self
    }

    /// `(α + k, β + k)`.
    pub fn shifted(&self, k: f64) -> Self {
        JacobiLevel { alpha: self.alpha + k, beta: self.beta + k, normalization: self.normalization }
    }

    pub fn is_real(&self) -> bool {
        self.alpha.im == 0.0 && self.beta.im == 0.0
    }

    pub fn is_conjugate_pair(&self) -> bool {
        self.alpha.im != 0.0 && (self.alpha - self.beta.conj()).norm() <= 1e-14 * self.alpha.norm().max(1.0)
    }

    /// Checks `Re α, Re β > −1` and the real / conjugate-pair restriction.
    pub fn validate_orthogonal(&self) -> QResult<()> {
        if !(self.alpha.re > -1.0 && self.beta.re > -1.0) {
            return Err(QError::InvalidParameter(format!(
                "need Re α > −1 and Re β > −1, got α = {}, β = {}",
                self.alpha, self.beta
            )));
        }
        if !self.is_real() && !self.is_conjugate_pair() {
            return Err(QError::InvalidParameter("complex α, β must be a conjugate pair".into()));
        }
        Ok(())
    }

    /// `α + β`.
    pub fn s(&self) -> C64 {
        self.alpha + self.beta
    }
}

/// Askey–Wilson parameters `(a, b, c, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AwParams {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl AwParams {
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        AwParams { a, b, c, d }
    }

    /// q-Jacobi specialization `(q^{(2α+1)/4}, q^{(2α+3)/4}, −q^{(2β+1)/4}, −q^{(2β+3)/4})`.
    pub fn from_level(level: &JacobiLevel, q: f64) -> Self {
        let (al, be) = (level.alpha, level.beta);
        AwParams {
            a: qpow(q, (2.0 * al + 1.0) / 4.0),
            b: qpow(q, (2.0 * al + 3.0) / 4.0),
            c: -qpow(q, (2.0 * be + 1.0) / 4.0),
            d: -qpow(q, (2.0 * be + 3.0) / 4.0),
        }
    }

    pub fn as_array(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    /// Same polynomial family, with the largest-modulus parameter first.
    fn pivoted(&self) -> AwParams {
        let mut v = self.as_array();
        let k = (0..4).max_by(|&i, &j| v[i].norm().total_cmp(&v[j].norm())).unwrap_or(0);
        v.swap(0, k);
        AwParams::new(v[0], v[1], v[2], v[3])
    }
}

/// `p_n(x; a,b,c,d | q)` from its terminating `₄φ₃`, summed in double-double.
pub fn aw_poly(n: usize, params: &AwParams, x: C64, ctx: &QContext) -> QResult<C64> {
    if n == 0 {
        return Ok(c(1.0));
    }
    let pr = params.pivoted();
    if pr.a == c(0.0) {
        return Ok(hermite_seq(n, x, ctx.q())[n]);
    }
    let q = ctx.q();
    let AwParams { a, b, c: cc, d } = pr;
    let e = e_of_x(x);
    let abcd = a * b * cc * d;
    let pre = qpoch(a * b, q, n) * qpoch(a * cc, q, n) * qpoch(a * d, q, n) * a.powi(-(n as i32));
    let s = phi(
        &[c(q.powi(-(n as i32))), abcd * q.powi(n as i32 - 1), a * e, a / e],
        &[a * b, a * cc, a * d],
        q,
        c(q),
        ctx,
    )?;
    Ok(pre * s)
}

/// `p_0 … p_{nmax}` (standard Askey–Wilson normalization) by the three-term
/// recurrence, valid for complex `x`.
pub fn aw_poly_seq(nmax: usize, params: &AwParams, x: C64, q: f64) -> Vec<C64> {
    let pr = params.pivoted();
    if pr.a == c(0.0) {
        return hermite_seq(nmax, x, q);
    }
    let AwParams { a, b, c: cc, d } = pr;
    let abcd = a * b * cc * d;
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(c(1.0));
    let mut prev = c(0.0);
    let mut qn = 1.0;
    for n in 0..nmax {
        let qm1 = qn / q;
        let big_a = (1.0 - a * b * qn) * (1.0 - a * cc * qn) * (1.0 - a * d * qn) * (1.0 - abcd * qm1)
            / (a * (1.0 - abcd * qn * qm1) * (1.0 - abcd * qn * qn));
        let big_c = if n == 0 {
            c(0.0)
        } else {
            a * (1.0 - qn) * (1.0 - b * cc * qm1) * (1.0 - b * d * qm1) * (1.0 - cc * d * qm1)
                / ((1.0 - abcd * qm1 * qm1) * (1.0 - abcd * qn * qm1))
        };
        // p_n = κ_n p̃_n with κ_{n+1}/κ_n = (1−abq^n)(1−acq^n)(1−adq^n)/a
        let a_prime = (1.0 - abcd * qm1) / ((1.0 - abcd * qn * qm1) * (1.0 - abcd * qn * qn));
        let c_prime = if n == 0 {
            c(0.0)
        } else {
            (1.0 - qn)
                * (1.0 - a * b * qm1)
                * (1.0 - a * cc * qm1)
                * (1.0 - a * d * qm1)
                * (1.0 - b * cc * qm1)
                * (1.0 - b * d * qm1)
                * (1.0 - cc * d * qm1)
                / ((1.0 - abcd * qm1 * qm1) * (1.0 - abcd * qn * qm1))
        };
        let diag = a + 1.0 / a - big_a - big_c;
        let cur = out[n];
        let next = ((2.0 * x - diag) * cur - c_prime * prev) / a_prime;
        prev = cur;
        out.push(next);
        qn *= q;
    }
    out
}

/// Continuous q-Hermite `H_0 … H_{nmax}`: `H_{n+1} = 2x H_n − (1−q^n) H_{n−1}`.
pub fn hermite_seq(nmax: usize, x: C64, q: f64) -> Vec<C64> {
    let mut out = Vec::with_capacity(nmax + 1);
    out.push(c(1.0));
    if nmax == 0 {
        return out;
    }
    out.push(2.0 * x);
    let mut qn = q;
    for n in 1..nmax {
        let next = 2.0 * x * out[n] - (1.0 - qn) * out[n - 1];
        out.push(next);
        qn *= q;
    }
    out
}

/// `P_n(x|q) = p_n(x; a,b,c,d) · a^n / ((q;q)_n (ac, ad; q)_n)` factor.
fn aw_to_jacobi_factor(n: usize, level: &JacobiLevel, q: f64) -> C64 {
    let pr = AwParams::from_level(level, q);
    pr.a.powi(n as i32) / (qpoch(c(q), q, n) * qpoch(pr.a * pr.c, q, n) * qpoch(pr.a * pr.d, q, n))
}

/// `P_n(x;q) / P_n(x|q²)` Rahman-to-Askey–Wilson factor.
fn rahman_factor(n: usize, level: &JacobiLevel, q: f64) -> C64 {
    qpoch(-qpow(q, level.s() + 1.0), q, n) / qpoch(c(-q), q, n) * qpow(q, -level.alpha * n as f64)
}

/// `P_0 … P_{nmax}` at `x` in the Askey–Wilson normalization with base `q`.
pub fn cqjacobi_aw_seq(nmax: usize, level: &JacobiLevel, x: C64, q: f64) -> Vec<C64> {
    let params = AwParams::from_level(level, q);
    let mut v = aw_poly_seq(nmax, &params, x, q);
    // accumulate the normalization factor incrementally
    let mut f = c(1.0);
    let mut qk = 1.0;
    for (k, val) in v.iter_mut().enumerate() {
        if k > 0 {
            let km1 = qk / q;
            f *= params.a / ((1.0 - km1 * q) * (1.0 - params.a * params.c * km1) * (1.0 - params.a * params.d * km1));
        }
        *val *= f;
        qk *= q;
    }
    v
}

/// `P_0 … P_{nmax}` at `x` in the level's normalization.
pub fn cqjacobi_seq(nmax: usize, level: &JacobiLevel, x: C64, ctx: &QContext) -> Vec<C64> {
    let q = ctx.q();
    match level.normalization {
        Normalization::AskeyWilson => cqjacobi_aw_seq(nmax, level, x, q),
        Normalization::Rahman => {
            let mut v = cqjacobi_aw_seq(nmax, level, x, q * q);
            for (n, val) in v.iter_mut().enumerate() {
                *val *= rahman_factor(n, level, q);
            }
            v
        }
    }
}

/// Single continuous q-Jacobi value (recurrence route).
pub fn cqjacobi(n: usize, level: &JacobiLevel, x: C64, ctx: &QContext) -> QResult<C64> {
    Ok(cqjacobi_seq(n, level, x, ctx)[n])
}

/// Literal `₄φ₃` representation of either normalization.
pub fn cqjacobi_literal(n: usize, level: &JacobiLevel, x: C64, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let e = e_of_x(x);
    let (al, be) = (level.alpha, level.beta);
    let qn = c(q.powi(-(n as i32)));
    match level.normalization {
        Normalization::AskeyWilson => {
            let a = qpow(q, (2.0 * al + 1.0) / 4.0);
            let pre = qpoch(qpow(q, al + 1.0), q, n) / qpoch(c(q), q, n);
            let s = phi(
                &[qn, qpow(q, al + be + 1.0) * q.powi(n as i32), a * e, a / e],
                &[qpow(q, al + 1.0), -qpow(q, (al + be + 1.0) / 2.0), -qpow(q, (al + be + 2.0) / 2.0)],
                q,
                c(q),
                ctx,
            )?;
            Ok(pre * s)
        }
        Normalization::Rahman => {
            let pre = qpoch(qpow(q, al + 1.0), q, n) * qpoch(-qpow(q, be + 1.0), q, n)
                / (qpoch(c(q), q, n) * qpoch(c(-q), q, n));
            let sq = q.sqrt();
            let s = phi(
                &[qn, qpow(q, al + be + 1.0) * q.powi(n as i32), sq * e, sq / e],
                &[qpow(q, al + 1.0), -qpow(q, be + 1.0), c(-q)],
                q,
                c(q),
                ctx,
            )?;
            Ok(pre * s)
        }
    }
}

/// Askey–Wilson weight density in θ: `h(x;1,−1,√q,−√q)/h(x;a,b,c,d)` at
/// `x = cos θ` (so that `∫_{-1}^{1} … dx/sqrt(1−x²) = ∫_0^π … dθ`).
pub fn aw_weight_theta(params: &AwParams, theta: f64, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let e = C64::from_polar(1.0, theta);
    let sq = q.sqrt();
    let num = h_product_e(e, &[c(1.0), c(-1.0), c(sq), c(-sq)], q, ctx)?;
    let den = h_product_e(e, &params.as_array(), q, ctx)?;
    Ok(num / den)
}

/// q-Jacobi weight density in θ for `P_n(x|q)` orthogonality.
pub fn weight_theta(level: &JacobiLevel, theta: f64, ctx: &QContext) -> QResult<C64> {
    aw_weight_theta(&AwParams::from_level(level, ctx.q()), theta, ctx)
}

/// `w_{α,β}(x|q)` via h-products (divided by `sqrt(1−x²)`).
pub fn weight_w(level: &JacobiLevel, x: f64, ctx: &QContext) -> QResult<C64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(QError::Domain(format!("weight needs x in (−1,1), got {x}")));
    }
    Ok(weight_theta(level, x.acos(), ctx)? / (1.0 - x * x).sqrt())
}

/// Literal product form of the weight, written at base `q²` and evaluated
/// here with `q → q^{1/2}`.
pub fn weight_w_literal(level: &JacobiLevel, x: f64, ctx: &QContext) -> QResult<C64> {
    if !(x > -1.0 && x < 1.0) {
        return Err(QError::Domain(format!("weight needs x in (−1,1), got {x}")));
    }
    let q = ctx.q();
    let r = q.sqrt();
    let e = e_of_x(c(x));
    let num = ctx.pinf(e * e, q)? * ctx.pinf(1.0 / (e * e), q)?;
    let a = qpow(r, level.alpha + 0.5);
    let b = -qpow(r, level.beta + 0.5);
    let den = ctx.pinf(a * e, r)? * ctx.pinf(a / e, r)? * ctx.pinf(b * e, r)? * ctx.pinf(b / e, r)?;
    Ok(num / den / (1.0 - x * x).sqrt())
}

/// `κ(a,b,c,d|q) = 2π (abcd)_∞ / (q, ab, ac, ad, bc, bd, cd)_∞`.
pub fn kappa(params: &AwParams, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let AwParams { a, b, c: cc, d } = *params;
    let num = ctx.pinf(a * b * cc * d, q)?;
    let den = ctx.pinf_multi(&[c(q), a * b, a * cc, a * d, b * cc, b * d, cc * d], q)?;
    Ok(2.0 * std::f64::consts::PI * num / den)
}

/// Askey–Wilson norm `∫ p_n² h(…)/h(…) dx/sqrt(1−x²)`.
pub fn aw_norm(n: usize, params: &AwParams, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let AwParams { a, b, c: cc, d } = *params;
    let abcd = a * b * cc * d;
    let mut prod = c(1.0);
    for t in [c(q), a * b, a * cc, a * d, b * cc, b * d, cc * d] {
        prod *= qpoch(t, q, n);
    }
    Ok(kappa(params, ctx)? * (1.0 - abcd / q) * prod
        / ((1.0 - abcd * q.powi(2 * n as i32 - 1)) * qpoch(abcd / q, q, n)))
}

/// `h_n^{(α,β)}(q)` in closed form with the exponent `q^{n(2α+1)/2}`.
pub fn norm_h(n: usize, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let (al, be) = (level.alpha, level.beta);
    let s = al + be;
    let num0 = ctx.pinf_multi(&[qpow(q, (s + 2.0) / 2.0), qpow(q, (s + 3.0) / 2.0)], q)?;
    let den0 = ctx.pinf_multi(
        &[c(q), qpow(q, al + 1.0), qpow(q, be + 1.0), -qpow(q, (s + 1.0) / 2.0), -qpow(q, (s + 2.0) / 2.0)],
        q,
    )?;
    let lead = 2.0 * std::f64::consts::PI * (1.0 - qpow(q, s + 1.0)) * num0 / den0;
    let numn = qpoch(qpow(q, al + 1.0), q, n) * qpoch(qpow(q, be + 1.0), q, n) * qpoch(-qpow(q, (s + 3.0) / 2.0), q, n);
    let denn = (1.0 - qpow(q, s + 1.0 + 2.0 * n as f64))
        * qpoch(c(q), q, n)
        * qpoch(qpow(q, s + 1.0), q, n)
        * qpoch(-qpow(q, (s + 1.0) / 2.0), q, n);
    Ok(lead * numn * qpow(q, n as f64 * (2.0 * al + 1.0) / 2.0) / denn)
}

/// `h_n` via the Askey–Wilson norm and the normalization conversion.
pub fn norm_h_aw_route(n: usize, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let params = AwParams::from_level(level, ctx.q());
    let f = aw_to_jacobi_factor(n, level, ctx.q());
    Ok(aw_norm(n, &params, ctx)? * f * f)
}

/// Coefficients of `P_n^{(α,β)}(x|q)` on `P_n, P_{n−1}, P_{n−2}` at level `(α+1, β+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionTriple {
    pub c_nn: C64,
    pub c_nn1: C64,
    pub c_nn2: C64,
}

fn conn_denominator(level: &JacobiLevel, q: f64) -> C64 {
    // (−q^{(α+β+1)/2}; q^{1/2})_2
    qpoch(-qpow(q, (level.s() + 1.0) / 2.0), q.sqrt(), 2)
}

/// `c_{n,n}`; zero for `n < 0`.
pub fn conn_nn(n: i64, level: &JacobiLevel, q: f64) -> C64 {
    if n < 0 {
        return c(0.0);
    }
    let s = level.s();
    let nf = n as f64;
    q.powf(-nf / 2.0) * (1.0 - qpow(q, s + nf + 1.0)) * (1.0 - qpow(q, s + nf + 2.0))
        / (conn_denominator(level, q) * (1.0 - qpow(q, nf + (s + 1.0) / 2.0)) * (1.0 - qpow(q, nf + (s + 2.0) / 2.0)))
}

/// `c_{n,n−1}`; exactly zero when `α = β` or `n < 1`.
pub fn conn_nn1(n: i64, level: &JacobiLevel, q: f64) -> C64 {
    if n < 1 || level.alpha == level.beta {
        return c(0.0);
    }
    let (al, be) = (level.alpha, level.beta);
    let s = al + be;
    let nf = n as f64;
    qpow(q, (s + 2.0 - nf) / 2.0) * (1.0 - qpow(q, s + nf + 1.0)) * (1.0 + qpow(q, nf + (s + 1.0) / 2.0))
        * (1.0 - qpow(q, (al - be) / 2.0))
        / (conn_denominator(level, q) * (1.0 - qpow(q, nf + s / 2.0)) * (1.0 - qpow(q, nf + (s + 2.0) / 2.0)))
}

/// `c_{n,n−2}`; zero for `n < 2`.
pub fn conn_nn2(n: i64, level: &JacobiLevel, q: f64) -> C64 {
    if n < 2 {
        return c(0.0);
    }
    let (al, be) = (level.alpha, level.beta);
    let s = al + be;
    let nf = n as f64;
    -qpow(q, (3.0 * al + be + 4.0 - nf) / 2.0) * (1.0 - qpow(q, al + nf)) * (1.0 - qpow(q, be + nf))
        / (conn_denominator(level, q) * (1.0 - qpow(q, nf + s / 2.0)) * (1.0 - qpow(q, nf + (s + 1.0) / 2.0)))
}

pub fn connection_down(n: usize, level: &JacobiLevel, ctx: &QContext) -> ConnectionTriple {
    let q = ctx.q();
    let n = n as i64;
    ConnectionTriple { c_nn: conn_nn(n, level, q), c_nn1: conn_nn1(n, level, q), c_nn2: conn_nn2(n, level, q) }
}

/// `φ_k(x; b, c) = ₄φ₃(q^{−k}, bcq^k, q^{1/2}e^{iθ}, q^{1/2}e^{−iθ}; bq^{1/2}, −cq^{1/2}, −q; q, q)`.
pub fn phi_dual(k: usize, b: C64, cc: C64, x: C64, ctx: &QContext) -> QResult<C64> {
    let q = ctx.q();
    let sq = q.sqrt();
    let e = e_of_x(x);
    phi(
        &[c(q.powi(-(k as i32))), b * cc * q.powi(k as i32), sq * e, sq / e],
        &[b * sq, -cc * sq, c(-q)],
        q,
        c(q),
        ctx,
    )
}

/// `(A_{n−1}, A_n, A_{n+1})`: with `b = q^{α+1/2}`, `c = q^{β+1/2}`,
/// `(1−2bx+b²)(1+2cx+c²) φ_{n−1}(x; bq, cq) = Σ_k A_k φ_k(x; b, c)`.
pub fn dual_expansion(n: usize, level: &JacobiLevel, ctx: &QContext) -> [C64; 3] {
    let q = ctx.q();
    let b = qpow(q, level.alpha + 0.5);
    let cc = qpow(q, level.beta + 0.5);
    let s = q.sqrt();
    let qi = |k: f64| q.powf(k);
    let nf = n as f64;
    let common = (1.0 - b * s) * (1.0 + cc * s);
    let bc = b * cc;
    let a_n = common * (1.0 + bc * qi(2.0 * nf)) * (1.0 + bc * qi(nf)) * (1.0 + qi(nf)) * (1.0 - b / cc)
        / ((1.0 - bc * qi(2.0 * nf - 1.0)) * (1.0 - bc * qi(2.0 * nf + 1.0)))
        * cc
        / s;
    let a_n1 = -common * (1.0 - b * qi(nf + 0.5)) * (1.0 + cc * qi(nf + 0.5)) * (1.0 + qi(nf)) * (1.0 + qi(nf + 1.0))
        / ((1.0 - bc * qi(2.0 * nf)) * (1.0 - bc * qi(2.0 * nf + 1.0)))
        * (bc / q);
    let a_nm = common * (1.0 + b * qi(nf - 0.5)) * (1.0 - cc * qi(nf - 0.5)) * (1.0 + bc * qi(nf - 1.0)) * (1.0 + bc * qi(nf))
        / ((1.0 - bc * qi(2.0 * nf - 1.0)) * (1.0 - bc * qi(2.0 * nf)));
    [a_nm, a_n, a_n1]
}

/// Left-hand quadratic `(1 − 2xq^{α+1/2} + q^{2α+1})(1 + 2xq^{β+1/2} + q^{2β+1})`.
pub fn dual_quadratic(level: &JacobiLevel, x: C64, q: f64) -> C64 {
    let b = qpow(q, level.alpha + 0.5);
    let cc = qpow(q, level.beta + 0.5);
    (1.0 - 2.0 * b * x + b * b) * (1.0 + 2.0 * cc * x + cc * cc)
}

/// Coefficients `(d_{n−1}, d_n, d_{n+1})` of the expansion, at base `q²`,
/// `dual_quadratic(x; q) · P_{n−1}^{(α+1,β+1)}(x|q²) = Σ d_m P_m^{(α,β)}(x|q²)`.
pub fn dual_quadratic_coefficients(n: usize, level: &JacobiLevel, q: f64) -> [C64; 3] {
    let (al, be) = (level.alpha, level.beta);
    let s = al + be;
    let nf = n as f64;
    let pre = qpoch(-qpow(q, s + 1.0), q, 2);
    let d_m = (1.0 - qpow(q, 2.0 * al + 2.0 * nf)) * (1.0 - qpow(q, 2.0 * be + 2.0 * nf)) * pre
        / qpoch(qpow(q, 2.0 * nf + s), q, 2)
        * q.powf(nf - 1.0);
    let d_0 = pre * (1.0 + qpow(q, s + 2.0 * nf + 1.0)) * (1.0 - q.powf(2.0 * nf)) * (1.0 - qpow(q, al - be))
        / qpoch(qpow(q, 2.0 * nf + s), q * q, 2)
        * qpow(q, be - al + nf - 1.0);
    let d_p = -pre * (1.0 - q.powf(2.0 * nf)) * (1.0 - q.powf(2.0 * nf + 2.0)) / qpoch(qpow(q, 2.0 * nf + s + 1.0), q, 2)
        * qpow(q, be - al + nf - 1.0);
    [d_m, d_0, d_p]
}

/// Duality: the same expansion derived from `connection_down` and the norms,
/// for the Askey–Wilson normalization at base `q`
/// (`quadratic = (1 − 2ax + a²)(1 − 2cx + c²)` with `a = q^{(2α+1)/4}`, `c = −q^{(2β+1)/4}`).
pub fn dual_expansion_aw(n: usize, level: &JacobiLevel, ctx: &QContext) -> QResult<[C64; 3]> {
    if n == 0 {
        return Err(QError::InvalidParameter("dual expansion needs n ≥ 1".into()));
    }
    let q = ctx.q();
    let up = level.shifted(1.0);
    let h_up = norm_h(n - 1, &up, ctx)?;
    let mut out = [c(0.0); 3];
    for (slot, m) in [n - 1, n, n + 1].into_iter().enumerate() {
        let cm = match m as i64 - (n as i64 - 1) {
            0 => conn_nn(m as i64, level, q),
            1 => conn_nn1(m as i64, level, q),
            _ => conn_nn2(m as i64, level, q),
        };
        out[slot] = cm * h_up / norm_h(m, level, ctx)?;
    }
    Ok(out)
}

/// `(1 − 2ax + a²)(1 − 2cx + c²)` for the Askey–Wilson duality at base `q`.
pub fn aw_dual_quadratic(level: &JacobiLevel, x: C64, q: f64) -> C64 {
    let a = qpow(q, (2.0 * level.alpha + 1.0) / 4.0);
    let cc = -qpow(q, (2.0 * level.beta + 1.0) / 4.0);
    (1.0 - 2.0 * a * x + a * a) * (1.0 - 2.0 * cc * x + cc * cc)
}

fn rel_dev(lhs: C64, rhs: C64) -> f64 {
    let d = (lhs - rhs).norm();
    if d == 0.0 {
        0.0
    } else {
        d / lhs.norm().max(rhs.norm())
    }
}

/// Relative residual of `P_n^{(α,β)} = c_{n,n}P_n + c_{n,n−1}P_{n−1} + c_{n,n−2}P_{n−2}` at level `(α+1, β+1)`.
pub fn connection_residual(n: usize, level: &JacobiLevel, x: C64, ctx: &QContext) -> f64 {
    let lhs = cqjacobi_seq(n, level, x, ctx)[n];
    let up = cqjacobi_seq(n, &level.shifted(1.0), x, ctx);
    let t = connection_down(n, level, ctx);
    let at = |k: usize| if k <= n { up[k] } else { c(0.0) };
    let rhs = t.c_nn * up[n] + t.c_nn1 * at(n.wrapping_sub(1)) + t.c_nn2 * at(n.wrapping_sub(2));
    rel_dev(lhs, rhs)
}

/// Relative residual of the base-`q²` expansion with [`dual_quadratic_coefficients`], `n ≥ 1`.
pub fn dual_quadratic_residual(n: usize, level: &JacobiLevel, x: C64, q: f64) -> QResult<f64> {
    if n == 0 {
        return Err(QError::InvalidParameter("n must be at least 1".into()));
    }
    let cx2 = QContext::new(q * q)?;
    let lhs = dual_quadratic(level, x, q) * cqjacobi_seq(n - 1, &level.shifted(1.0), x, &cx2)[n - 1];
    let p = cqjacobi_seq(n + 1, level, x, &cx2);
    let d = dual_quadratic_coefficients(n, level, q);
    Ok(rel_dev(lhs, d[0] * p[n - 1] + d[1] * p[n] + d[2] * p[n + 1]))
}

/// Largest relative gap between [`dual_quadratic_coefficients`] and the coefficients
/// obtained from `c_{m,n}·h_n(A+1)/h_m(A)` at base `q²`.
pub fn duality_deviation(n: usize, level: &JacobiLevel, q: f64) -> QResult<f64> {
    let lit = dual_quadratic_coefficients(n, level, q);
    let dual = dual_expansion_aw(n, level, &QContext::new(q * q)?)?;
    Ok(lit.iter().zip(dual.iter()).map(|(a, b)| rel_dev(*a, *b)).fold(0.0, f64::max))
}

/// `φ_n = ₄φ₃(p^{−n}, p^{n+α+β+3}, p^{β+1}, −p^{α+1}; p^{α+β+2}, p^{β+2}, −p^{α+2}; p, p)`, `p = q^{1/2}`.
pub fn contiguous_phi(n: usize, level: &JacobiLevel, ctx: &QContext) -> QResult<C64> {
    let p = ctx.p();
    let (al, be) = (level.alpha, level.beta);
    let s = al + be;
    let nf = n as f64;
    phi(
        &[c(p.powi(-(n as i32))), qpow(p, nf + s + 3.0), qpow(p, be + 1.0), -qpow(p, al + 1.0)],
        &[qpow(p, s + 2.0), qpow(p, be + 2.0), -qpow(p, al + 2.0)],
        p,
        c(p),
        ctx,
    )
}

/// Coefficients `(A, B, C)` of `A φ_{n+1} + B φ_n + C φ_{n−1} = 0`.
pub fn contiguous_coefficients(n: usize, level: &JacobiLevel, p: f64) -> (C64, C64, C64) {
    let (al, be) = (level.alpha, level.beta);
    let s = al + be;
    let nf = n as f64;
    let pp = |e: C64| qpow(p, e);
    let a = pp(s - 3.0 * nf + 4.0)
        * (1.0 - pp(nf + s + 3.0))
        * (1.0 - pp(2.0 * nf + s + 2.0))
        * (1.0 - pp(nf + s + 2.0))
        * (1.0 - pp(nf + be + 2.0))
        * (1.0 + pp(nf + al + 2.0));
    let cc = -pp(2.0 * s + 6.0 - 3.0 * nf)
        * (1.0 - p.powf(nf))
        * (1.0 - pp(2.0 * nf + s + 4.0))
        * (1.0 - p.powf(nf + 1.0))
        * (1.0 - pp(nf + al + 1.0))
        * (1.0 + pp(nf + be + 1.0));
    let b = -cc - a + pp(s - 3.0 * nf + 4.0) * qpoch(pp(2.0 * nf + s + 2.0), p, 3) * (1.0 - pp(be + 1.0)) * (1.0 + pp(al + 1.0));
    (a, b, cc)
}

/// `|A φ_{n+1} + B φ_n + C φ_{n−1}| / (|A φ_{n+1}| + |B φ_n| + |C φ_{n−1}|)`, `n ≥ 1`.
pub fn contiguous_residual(n: usize, level: &JacobiLevel, ctx: &QContext) -> QResult<f64> {
    if n == 0 {
        return Err(QError::InvalidParameter("n must be at least 1".into()));
    }
    let (a, b, cc) = contiguous_coefficients(n, level, ctx.p());
    let t = [a * contiguous_phi(n + 1, level, ctx)?, b * contiguous_phi(n, level, ctx)?, cc * contiguous_phi(n - 1, level, ctx)?];
    Ok((t[0] + t[1] + t[2]).norm() / t.iter().map(|v| v.norm()).sum::<f64>())
}
