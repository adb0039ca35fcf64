//! Double-double ("dd") real and complex arithmetic.
//!
//! Terminating series such as the `₄φ₃` in the Askey–Wilson polynomials sum
//! terms of alternating sign whose magnitudes can exceed the result by many
//! orders. Carrying ~32 significant digits through the partial sums absorbs
//! that cancellation for the degrees used here.

use num_complex::Complex64;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    /// `self^n` by binary powering; negative `n` inverts.
    pub fn powi(self, n: i64) -> Self {
        let mut base = if n < 0 { Dd::ONE / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Dd::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Square root, one Newton correction on the double estimate.
    pub fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::new(self.hi.sqrt());
        }
        let x = self.hi.sqrt();
        let (p, e) = two_prod(x, x);
        let r = (self - Dd { hi: p, lo: e }).to_f64();
        let (s, t) = quick_two_sum(x, r / (2.0 * x));
        Dd { hi: s, lo: t }
    }
}

impl From<f64> for Dd {
    fn from(x: f64) -> Self {
        Dd::new(x)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Dd { hi, lo }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self + (-o)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self - o * Dd::new(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * Dd::new(q2);
        let q3 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e } + Dd::new(q3)
    }
}

/// Complex number with double-double parts.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DdC {
    pub re: Dd,
    pub im: Dd,
}

impl DdC {
    pub const ZERO: DdC = DdC { re: Dd::ZERO, im: Dd::ZERO };
    pub const ONE: DdC = DdC { re: Dd::ONE, im: Dd::ZERO };

    pub fn new(re: Dd, im: Dd) -> Self {
        DdC { re, im }
    }

    pub fn real(x: Dd) -> Self {
        DdC { re: x, im: Dd::ZERO }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm_sqr_f64(self) -> f64 {
        let c = self.to_c64();
        c.norm_sqr()
    }

    pub fn norm_f64(self) -> f64 {
        self.to_c64().norm()
    }

    pub fn scale(self, s: Dd) -> Self {
        DdC { re: self.re * s, im: self.im * s }
    }

    pub fn conj(self) -> Self {
        DdC { re: self.re, im: -self.im }
    }

    pub fn powi(self, n: i64) -> Self {
        let mut base = if n < 0 { DdC::ONE / self } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = DdC::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

impl From<Complex64> for DdC {
    fn from(z: Complex64) -> Self {
        DdC { re: Dd::new(z.re), im: Dd::new(z.im) }
    }
}

impl From<Dd> for DdC {
    fn from(x: Dd) -> Self {
        DdC::real(x)
    }
}

impl Neg for DdC {
    type Output = DdC;
    fn neg(self) -> DdC {
        DdC { re: -self.re, im: -self.im }
    }
}

impl Add for DdC {
    type Output = DdC;
    fn add(self, o: DdC) -> DdC {
        DdC { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Sub for DdC {
    type Output = DdC;
    fn sub(self, o: DdC) -> DdC {
        DdC { re: self.re - o.re, im: self.im - o.im }
    }
}

impl Mul for DdC {
    type Output = DdC;
    fn mul(self, o: DdC) -> DdC {
        DdC {
            re: self.re * o.re - self.im * o.im,
            im: self.re * o.im + self.im * o.re,
        }
    }
}

impl Div for DdC {
    type Output = DdC;
    fn div(self, o: DdC) -> DdC {
        let den = o.re * o.re + o.im * o.im;
        let num = self * o.conj();
        DdC { re: num.re / den, im: num.im / den }
    }
}
