//! Randomized invariants.

use num_complex::Complex64 as C64;
use proptest::prelude::*;
use qspectra::awop::{dq_coeffs, t_coeffs, CoeffVector};
use qspectra::framework::{monicize, shift_invariance_deviation, UltrasphericalFamily};
use qspectra::qcore::identities::{heine_residual, qpoch_split_residual, saalschutz_residual};
use qspectra::qexp::eq_dq_residual;
use qspectra::spectral::bn_recurrence;
use qspectra::{JacobiLevel, QContext};
use std::sync::Arc;

fn disk(r0: f64, r1: f64) -> impl Strategy<Value = C64> {
    sector(r0, r1, 0.0, std::f64::consts::TAU)
}

/// Arguments restricted to `[t0, t1)`, which keeps denominators away from the
/// poles at `q^{−k}` on the positive axis.
fn sector(r0: f64, r1: f64, t0: f64, t1: f64) -> impl Strategy<Value = C64> {
    (r0..r1, t0..t1).prop_map(|(r, t)| C64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn qpoch_splits(a in disk(0.05, 1.8), q in 0.1f64..0.9, n in 0usize..12, m in 0usize..12) {
        prop_assert!(qpoch_split_residual(a, q, n, m) < 1e-13);
    }

    #[test]
    fn heine_holds_inside_the_disk(a in disk(0.1, 0.9), b in disk(0.05, 0.85), cc in sector(0.2, 1.2, 0.5, 5.7), z in disk(0.05, 0.85)) {
        let cx = QContext::new(0.5).unwrap();
        prop_assert!(heine_residual(a, b, cc, z, 0.5, &cx).unwrap() < 1e-10);
    }

    #[test]
    fn saalschutz_sums(n in 0usize..9, a in sector(0.2, 1.2, 0.2, 0.6), b in sector(0.2, 1.2, 0.2, 0.6), cc in sector(0.3, 1.3, 2.0, 2.6)) {
        let cx = QContext::new(0.5).unwrap();
        let r = saalschutz_residual(n, a, b, cc, 0.5, &cx).unwrap();
        prop_assert!(r < 1e-9, "n = {}: {}", n, r);
    }

    #[test]
    fn real_parameters_commute_with_conjugation(al in -0.9f64..2.0, be in -0.9f64..2.0, mu in disk(0.0, 3.0), n in 0usize..25) {
        let cx = QContext::new(0.5).unwrap();
        let lv = JacobiLevel::real(al, be);
        let (b, bc) = (bn_recurrence(n, mu, &lv, &cx), bn_recurrence(n, mu.conj(), &lv, &cx));
        prop_assert!((b.conj() - bc).norm() <= 1e-12 * b.norm().max(1.0));
    }

    #[test]
    fn right_inverse_on_coefficients(re in prop::collection::vec(-2.0f64..2.0, 1..8), im in prop::collection::vec(-2.0f64..2.0, 8)) {
        let cx = QContext::new(0.5).unwrap();
        let up = JacobiLevel::real(0.3, -0.2).shifted(1.0);
        let coeffs: Vec<C64> = re.iter().zip(&im).map(|(r, i)| C64::new(*r, *i)).collect();
        let g = CoeffVector::new(up, coeffs.clone());
        let back = dq_coeffs(&t_coeffs(&g, &cx), &cx);
        for (k, want) in coeffs.iter().enumerate() {
            prop_assert!((back.coeffs[k] - want).norm() < 1e-13 * want.norm().max(1.0));
        }
    }

    #[test]
    fn ultraspherical_monic_system_is_shift_invariant(nu in 0.1f64..5.0) {
        let sys = monicize(Arc::new(UltrasphericalFamily::new(nu).unwrap()), C64::new(1.0, 0.0));
        prop_assert!(shift_invariance_deviation(&sys, 10) < 1e-12);
    }

    #[test]
    fn q_exponential_eigenrelation(a in disk(0.05, 0.9), b in disk(0.05, 0.9), x in -0.95f64..0.95) {
        let cx = QContext::new(0.5).unwrap();
        prop_assert!(eq_dq_residual(x, a, b, &cx).unwrap() < 1e-10);
    }
}
