//! q-shifted factorials, basic hypergeometric series and h-products.
//!
//! Every routine takes its base explicitly; nothing here knows whether the
//! caller works in `q`, `q²` or `p = q^{1/2}`.

pub mod dd;
pub mod identities;

use crate::error::{QError, QResult};
use dd::{Dd, DdC};
use num_complex::Complex64 as C64;

pub const DEFAULT_TOL: f64 = 1e-14;
pub const DEFAULT_MAX_TERMS: usize = 10_000;

/// Relative tolerance used to recognise a numerator parameter as `base^{-n}`.
const TERMINATION_TOL: f64 = 1e-10;

/// Base `q`, truncation tolerance and term cap. `p = q^{1/2}` is derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QContext {
    q: f64,
    pub tol: f64,
    pub max_terms: usize,
}

impl QContext {
    pub fn new(q: f64) -> QResult<Self> {
        Self::with_tolerance(q, DEFAULT_TOL, DEFAULT_MAX_TERMS)
    }

    pub fn with_tolerance(q: f64, tol: f64, max_terms: usize) -> QResult<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(QError::InvalidParameter(format!("q must lie in (0,1), got {q}")));
        }
        if !(tol.is_finite() && tol > 0.0) {
            return Err(QError::InvalidParameter(format!("tol must be positive, got {tol}")));
        }
        if max_terms == 0 {
            return Err(QError::InvalidParameter("max_terms must be at least 1".into()));
        }
        Ok(QContext { q, tol, max_terms })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn p(&self) -> f64 {
        self.q.sqrt()
    }

    /// Same tolerances, different base (e.g. `q²` for the Rahman normalization).
    pub fn rebased(&self, q: f64) -> QResult<Self> {
        Self::with_tolerance(q, self.tol, self.max_terms)
    }

    /// `(a; base)_∞` with this context's tolerance.
    pub fn pinf(&self, a: C64, base: f64) -> QResult<C64> {
        qpoch_inf(a, base, self.tol, self.max_terms)
    }

    /// `(a_1, …, a_m; base)_∞`.
    pub fn pinf_multi(&self, params: &[C64], base: f64) -> QResult<C64> {
        let mut acc = C64::new(1.0, 0.0);
        for &a in params {
            acc *= self.pinf(a, base)?;
        }
        Ok(acc)
    }
}

/// `base^z` for complex exponent, `exp(z ln base)`.
pub fn qpow(base: f64, z: C64) -> C64 {
    (z * base.ln()).exp()
}

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// `e^{iθ}` for `x = cos θ`: `x + sqrt(x²−1)` with the branch `sqrt(x²−1) ≈ x`
/// at infinity. For real `x ∈ (−1,1)` this is `x + i sqrt(1−x²)`.
pub fn e_of_x(x: C64) -> C64 {
    x + (x - 1.0).sqrt() * (x + 1.0).sqrt()
}

/// `(a; base)_n = ∏_{j=0}^{n−1} (1 − a base^j)`.
pub fn qpoch(a: C64, base: f64, n: usize) -> C64 {
    let mut acc = C64::new(1.0, 0.0);
    let mut bj = 1.0;
    for _ in 0..n {
        acc *= 1.0 - a * bj;
        bj *= base;
    }
    acc
}

/// `(a; base)_∞`, stopped once the log-product tail `2|a|base^j/(1−base)`
/// drops below `tol`.
pub fn qpoch_inf(a: C64, base: f64, tol: f64, max_terms: usize) -> QResult<C64> {
    if !(base > 0.0 && base < 1.0) {
        return Err(QError::InvalidParameter(format!("base must lie in (0,1), got {base}")));
    }
    let mut acc = C64::new(1.0, 0.0);
    let mut ab = a;
    let amag = a.norm();
    if amag == 0.0 {
        return Ok(acc);
    }
    let mut bj = 1.0;
    for _ in 0..max_terms {
        acc *= 1.0 - ab;
        ab *= base;
        bj *= base;
        let t = amag * bj;
        if t < 0.5 && 2.0 * t / (1.0 - base) < tol {
            return Ok(acc);
        }
    }
    Err(QError::Divergence { terms: max_terms })
}

/// Length of a q-shifted factorial: finite or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PochLen {
    Finite(usize),
    Infinite,
}

/// `(a_1, …, a_m; base)_n`.
pub fn qpoch_multi(params: &[C64], base: f64, n: PochLen, ctx: &QContext) -> QResult<C64> {
    let mut acc = C64::new(1.0, 0.0);
    for &a in params {
        acc *= match n {
            PochLen::Finite(n) => qpoch(a, base, n),
            PochLen::Infinite => ctx.pinf(a, base)?,
        };
    }
    Ok(acc)
}

/// Numerator/denominator parameters, base and argument of an `rφs`.
#[derive(Debug, Clone, PartialEq)]
pub struct HypergeometricSpec {
    pub num: Vec<C64>,
    pub den: Vec<C64>,
    pub base: f64,
    pub z: C64,
}

impl HypergeometricSpec {
    pub fn new(num: Vec<C64>, den: Vec<C64>, base: f64, z: C64) -> Self {
        HypergeometricSpec { num, den, base, z }
    }

    /// `Some((i, n))` when numerator `i` equals `base^{-n}`; the smallest such `n`.
    pub fn termination(&self) -> Option<(usize, usize)> {
        let lb = self.base.ln();
        let mut best: Option<(usize, usize)> = None;
        for (i, a) in self.num.iter().enumerate() {
            if a.re <= 0.0 || a.im.abs() > TERMINATION_TOL * a.re {
                continue;
            }
            let nf = -a.re.ln() / lb;
            if nf < -0.5 {
                continue;
            }
            let n = nf.round();
            let target = self.base.powf(-n);
            if (a - target).norm() <= TERMINATION_TOL * target && best.is_none_or(|(_, m)| (n as usize) < m) {
                best = Some((i, n as usize));
            }
        }
        best
    }
}

/// Result of a series summation with bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: C64,
    /// Number of terms added (including the `n = 0` term).
    pub terms: usize,
    /// `Some(n)` if the series was recognised as terminating at degree `n`.
    pub terminating: Option<usize>,
}

/// Basic hypergeometric series `rφs` with the `[(−1)^k base^{k(k−1)/2}]^{1+s−r}`
/// factor. Terminating series are summed exactly (n+1 terms, double-double);
/// others until two consecutive relative terms and a geometric tail bound fall
/// below `ctx.tol`.
pub fn rphis(spec: &HypergeometricSpec, ctx: &QContext) -> QResult<C64> {
    rphis_detailed(spec, ctx).map(|s| s.value)
}

pub fn rphis_detailed(spec: &HypergeometricSpec, ctx: &QContext) -> QResult<SeriesValue> {
    let base = spec.base;
    if !(base > 0.0 && base < 1.0) {
        return Err(QError::InvalidParameter(format!("base must lie in (0,1), got {base}")));
    }
    if spec.z == C64::new(0.0, 0.0) {
        return Ok(SeriesValue { value: c(1.0), terms: 1, terminating: Some(0) });
    }
    match spec.termination() {
        Some((idx, n)) => terminating_sum(spec, idx, n),
        None => nonterminating_sum(spec, ctx),
    }
}

fn check_den_pole(b: C64, bk: f64, k: usize) -> QResult<()> {
    if (1.0 - b * bk).norm() < 1e-15 {
        Err(QError::Pole(format!("denominator parameter {b} vanishes at index {k}")))
    } else {
        Ok(())
    }
}

fn terminating_sum(spec: &HypergeometricSpec, idx: usize, n: usize) -> QResult<SeriesValue> {
    let base = Dd::new(spec.base);
    let extra = 1 + spec.den.len() as i64 - spec.num.len() as i64;
    let inv_n = base.powi(-(n as i64));
    let nums: Vec<DdC> = spec.num.iter().map(|&a| DdC::from(a)).collect();
    let dens: Vec<DdC> = spec.den.iter().map(|&b| DdC::from(b)).collect();
    let z = DdC::from(spec.z);
    let mut term = DdC::ONE;
    let mut sum = DdC::ONE;
    let mut bk = Dd::ONE;
    let mut bkf = 1.0;
    for k in 0..n {
        let mut num = DdC::ONE;
        for (i, a) in nums.iter().enumerate() {
            let f = if i == idx {
                DdC::real(Dd::ONE - inv_n * bk)
            } else {
                DdC::ONE - a.scale(bk)
            };
            num = num * f;
        }
        let mut den = DdC::real(Dd::ONE - base * bk);
        for (j, b) in dens.iter().enumerate() {
            check_den_pole(spec.den[j], bkf, k)?;
            den = den * (DdC::ONE - b.scale(bk));
        }
        let mut ratio = num / den * z;
        if extra != 0 {
            let f = DdC::real(-bk).powi(extra);
            ratio = ratio * f;
        }
        term = term * ratio;
        sum = sum + term;
        bk = bk * base;
        bkf *= spec.base;
    }
    Ok(SeriesValue { value: sum.to_c64(), terms: n + 1, terminating: Some(n) })
}

fn nonterminating_sum(spec: &HypergeometricSpec, ctx: &QContext) -> QResult<SeriesValue> {
    let r = spec.num.len();
    let s = spec.den.len();
    if r > s + 1 {
        return Err(QError::Domain(format!("non-terminating {r}φ{s} diverges for z ≠ 0")));
    }
    if r == s + 1 && spec.z.norm() > 1.0 {
        return Err(QError::Domain(format!("|z| = {} outside the unit disc", spec.z.norm())));
    }
    let extra = 1 + s as i32 - r as i32;
    let base = spec.base;
    let mut term = c(1.0);
    let mut sum = c(1.0);
    let mut bk = 1.0;
    let mut prev_small = false;
    let mut prev_mag = 1.0;
    for k in 0..ctx.max_terms {
        let mut ratio = spec.z / (1.0 - base * bk);
        for &a in &spec.num {
            ratio *= 1.0 - a * bk;
        }
        for &b in &spec.den {
            check_den_pole(b, bk, k)?;
            ratio /= 1.0 - b * bk;
        }
        if extra != 0 {
            ratio *= (-bk).powi(extra);
        }
        term *= ratio;
        sum += term;
        bk *= base;
        let mag = term.norm();
        let scale = sum.norm().max(f64::MIN_POSITIVE);
        let small = mag <= ctx.tol * scale;
        if small && prev_small {
            let rho = if prev_mag > 0.0 { mag / prev_mag } else { 0.0 };
            if rho < 1.0 && mag * rho / (1.0 - rho) <= ctx.tol * scale {
                return Ok(SeriesValue { value: sum, terms: k + 2, terminating: None });
            }
        }
        if mag == 0.0 {
            return Ok(SeriesValue { value: sum, terms: k + 2, terminating: None });
        }
        prev_small = small;
        prev_mag = mag;
    }
    Err(QError::Divergence { terms: ctx.max_terms })
}

/// Convenience: `rφs(num; den; base, z)`.
pub fn phi(num: &[C64], den: &[C64], base: f64, z: C64, ctx: &QContext) -> QResult<C64> {
    rphis(&HypergeometricSpec::new(num.to_vec(), den.to_vec(), base, z), ctx)
}

/// `(w; base)_∞ · ₂φ₁(a, b; w; base, z)` for `|z| < 1`, summed as
/// `Σ_k (a, b)_k/(base)_k z^k (w base^k; base)_∞`. The product absorbs the
/// denominator, so the value stays finite where `w base^k = 1`.
pub fn phi21_poch(a: C64, b: C64, w: C64, base: f64, z: C64, ctx: &QContext) -> QResult<C64> {
    if !(base > 0.0 && base < 1.0) {
        return Err(QError::InvalidParameter(format!("base must lie in (0,1), got {base}")));
    }
    if z.norm() >= 1.0 {
        return Err(QError::Domain(format!("|z| = {} outside the unit disc", z.norm())));
    }
    let mut terms = vec![c(1.0)];
    let mut t = c(1.0);
    let mut abs_sum = 1.0;
    let mut bk = 1.0;
    let mut small_run = 0;
    for k in 0..ctx.max_terms {
        t *= (1.0 - a * bk) * (1.0 - b * bk) / (1.0 - base * bk) * z;
        bk *= base;
        terms.push(t);
        abs_sum += t.norm();
        if t.norm() <= ctx.tol * abs_sum * (1.0 - z.norm()) {
            small_run += 1;
            if small_run >= 2 {
                break;
            }
        } else {
            small_run = 0;
        }
        if k + 1 == ctx.max_terms {
            return Err(QError::Divergence { terms: ctx.max_terms });
        }
    }
    let n = terms.len();
    let mut tail = ctx.pinf(w * base.powi(n as i32), base)?;
    let mut sum = c(0.0);
    for k in (0..n).rev() {
        tail *= 1.0 - w * base.powi(k as i32);
        sum += terms[k] * tail;
    }
    Ok(sum)
}

/// Very-well-poised `₈W₇(a; b, c, d, e, f; base, z)`.
#[allow(clippy::too_many_arguments)]
pub fn w8w7(a: C64, b: C64, c_: C64, d: C64, e: C64, f: C64, base: f64, z: C64, ctx: &QContext) -> QResult<C64> {
    let sa = a.sqrt();
    let num = vec![a, base * sa, -base * sa, b, c_, d, e, f];
    let den = vec![sa, -sa, a * base / b, a * base / c_, a * base / d, a * base / e, a * base / f];
    rphis(&HypergeometricSpec::new(num, den, base, z), ctx)
}

/// `h(x; a_1, …, a_m) = ∏_j (a_j e^{iθ}, a_j e^{−iθ}; base)_∞`, `x = cos θ`.
pub fn h_product(x: C64, params: &[C64], base: f64, ctx: &QContext) -> QResult<C64> {
    let e = e_of_x(x);
    h_product_e(e, params, base, ctx)
}

/// h-product in terms of `e = e^{iθ}` directly.
pub fn h_product_e(e: C64, params: &[C64], base: f64, ctx: &QContext) -> QResult<C64> {
    let mut acc = c(1.0);
    for &a in params {
        acc *= ctx.pinf(a * e, base)? * ctx.pinf(a / e, base)?;
    }
    Ok(acc)
}
