//! Closed-form oracles and frozen reference values.
//!
//! The analytic cases come from classical summation theorems and small-degree
//! expansions worked by hand; the frozen spectral values were cross-checked
//! between the matrix truncation and the Newton refinement when recorded.

use num_complex::Complex64 as C64;
use qspectra::awop::dq_pointwise;
use qspectra::qcore::{c, phi, qpoch};
use qspectra::qpolys::{cqjacobi, hermite_seq, norm_h};
use qspectra::spectral::{eigenvalues, f_eval, q_coulomb, EigenOptions};
use qspectra::{JacobiLevel, QContext};

fn ctx() -> QContext {
    QContext::new(0.5).unwrap()
}

fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[test]
fn finite_qpochhammer_by_hand() {
    // (1/2; 1/2)_3 = 1/2 · 3/4 · 7/8
    assert_eq!(qpoch(c(0.5), 0.5, 3), c(0.328125));
    assert_eq!(qpoch(C64::new(0.2, 0.1), 0.5, 0), c(1.0));
}

#[test]
fn q_binomial_theorem() {
    let cx = ctx();
    for (a, z) in [(c(0.3), c(0.4)), (C64::new(-0.5, 0.2), C64::new(0.1, -0.6))] {
        let lhs = phi(&[a], &[], 0.5, z, &cx).unwrap();
        let rhs = cx.pinf(a * z, 0.5).unwrap() / cx.pinf(z, 0.5).unwrap();
        assert!(close(lhs, rhs, 1e-13), "{lhs} vs {rhs}");
    }
}

#[test]
fn q_gauss_sum() {
    let cx = ctx();
    let (a, b, cc) = (C64::new(0.4, 0.1), c(-0.3), C64::new(0.05, 0.02));
    let lhs = phi(&[a, b], &[cc], 0.5, cc / (a * b), &cx).unwrap();
    let rhs = cx.pinf_multi(&[cc / a, cc / b], 0.5).unwrap() / cx.pinf_multi(&[cc, cc / (a * b)], 0.5).unwrap();
    assert!(close(lhs, rhs, 1e-12), "{lhs} vs {rhs}");
}

#[test]
fn continuous_q_hermite_low_degrees() {
    let (x, q) = (0.35, 0.5);
    let h = hermite_seq(3, c(x), q);
    assert!(close(h[1], c(2.0 * x), 1e-15));
    assert!(close(h[2], c(4.0 * x * x - (1.0 - q)), 1e-15));
    assert!(close(h[3], c(8.0 * x.powi(3) - 2.0 * x * (2.0 - q - q * q)), 1e-14));
}

#[test]
fn divided_difference_of_monomials() {
    let cx = ctx();
    let q: f64 = 0.5;
    for x in [-0.7, 0.1, 0.6] {
        assert!(close(dq_pointwise(|_| Ok(c(1.0)), x, &cx).unwrap(), c(0.0), 1e-15));
        assert!(close(dq_pointwise(Ok, x, &cx).unwrap(), c(1.0), 1e-14));
        // D_q x² = q^{−1/2}(1+q)x
        let got = dq_pointwise(|y| Ok(y * y), x, &cx).unwrap();
        assert!(close(got, c((1.0 + q) / q.sqrt() * x), 1e-14), "x = {x}: {got}");
    }
}

#[test]
fn frozen_polynomial_values() {
    let cx = ctx();
    let lv = JacobiLevel::real(0.3, -0.2);
    assert!(close(cqjacobi(3, &lv, c(0.4), &cx).unwrap(), c(-0.32113823762756655), 1e-13));
    assert!(close(norm_h(2, &lv, &cx).unwrap(), c(0.5750754416792238), 1e-13));
    assert!(close(f_eval(c(1.0), &lv, &cx).unwrap(), c(1.041897536132326), 1e-13));
}

#[test]
fn frozen_leading_eigenvalues() {
    let cx = ctx();
    let rep = eigenvalues(&JacobiLevel::real(0.3, -0.2), &cx, &EigenOptions { count: 2, ..Default::default() }).unwrap();
    let want = [C64::new(0.06716918242331821, -0.2718218061385735), C64::new(0.06716918242331821, 0.2718218061385735)];
    for (r, w) in rep.results.iter().zip(want) {
        assert!(close(r.lambda, w, 1e-12), "{} vs {w}", r.lambda);
    }
    // conjugate-pair parameters: a purely imaginary spectrum
    let rep = eigenvalues(&JacobiLevel::conjugate_pair(C64::new(0.3, 0.5)), &cx, &EigenOptions { count: 3, ..Default::default() })
        .unwrap();
    let want = [0.36205762443432526, -0.15846945376126803, 0.1400156251076528];
    for (r, w) in rep.results.iter().zip(want) {
        assert!(close(r.lambda, C64::new(0.0, w), 1e-12), "{} vs {w}i", r.lambda);
    }
}

#[test]
fn coulomb_reference_values() {
    let cx = ctx();
    assert!(close(q_coulomb(0.5, 0.3, 0.0, &cx).unwrap(), c(1.0), 1e-15));
    let v = q_coulomb(0.5, 0.3, 1.2, &cx).unwrap();
    assert!(close(v, c(1.2389206394466317), 1e-12), "{v}");
}
