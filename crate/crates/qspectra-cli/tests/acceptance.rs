//! Acceptance run: one PASS/FAIL line per criterion, at the documented
//! tolerances. Runs without the test harness so the lines always print.

use num_complex::Complex64 as C64;
use qspectra::awop::{
    dual_projections, ladder_residual, orthogonality_deviation, right_inverse_coeff_residual, right_inverse_residual,
    CoeffVector, QuadOptions,
};
use qspectra::framework::{
    cf_minimal_ratio, eigen_recurrence, limit_map_deviation, monicize, qjacobi_monic_deviation, qjacobi_pincherle_constant,
    qjacobi_u, QJacobiFamily, UltrasphericalFamily,
};
use qspectra::qcore::c;
use qspectra::qexp::{
    am_coeff, am_from_jm, eq_dq_residual, expansion_residual, hermite_identity_residual, jm_quadrature,
    level_shift_residual, ExpansionBasis,
};
use qspectra::qpolys::{connection_residual, dual_quadratic_residual};
use qspectra::spectral::{
    bn_explicit, bn_recurrence, zero_point_constants, zero_point_normalized, eigenvalues, markov_limit, markov_ratio,
    matrix_oracle, q_coulomb, sorted_spectrum, off_spectrum_ratio, root_growth_constant, root_growth_normalized, EigenOptions,
};
use qspectra::{JacobiLevel, QContext, QResult};
use qspectra_cli::suites::Weyl;
use std::process::Command;
use std::sync::Arc;

type Criterion = (&'static str, fn() -> QResult<Verdict>);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> QResult<Verdict> {
    Ok(Verdict { passed, detail: detail.into() })
}

fn levels() -> [JacobiLevel; 3] {
    [JacobiLevel::real(0.3, -0.2), JacobiLevel::real(0.5, 0.5), JacobiLevel::conjugate_pair(C64::new(0.3, 0.5))]
}

fn ctx(q: f64) -> QContext {
    QContext::new(q).expect("valid base")
}

fn rel(a: C64, b: C64) -> f64 {
    let d = (a - b).norm();
    if d == 0.0 {
        0.0
    } else {
        d / a.norm().max(b.norm())
    }
}

fn closed_form_vs_recurrence() -> QResult<Verdict> {
    let mut worst = 0.0f64;
    for q in [0.36, 0.5, 0.8] {
        let cx = ctx(q);
        for lv in levels() {
            let mut w = Weyl::new();
            for _ in 0..50 {
                let mu = w.disk(0.0, 3.0);
                for n in 0..=20 {
                    let b = bn_recurrence(n, mu, &lv, &cx);
                    worst = worst.max((bn_explicit(n, mu, &lv, &cx)? - b).norm() / b.norm().max(1.0));
                }
            }
        }
    }
    verdict(worst <= 1e-10, format!("max deviation {worst:.2e} (tol 1e-10)"))
}

fn ladder_identity() -> QResult<Verdict> {
    let cx = ctx(0.5);
    let mut worst = 0.0f64;
    for lv in levels() {
        let mut w = Weyl::new();
        for _ in 0..20 {
            let x = 1.98 * w.next(1)[0] - 0.99;
            for n in 1..=8 {
                worst = worst.max(ladder_residual(n, &lv, x, &cx)?);
            }
        }
    }
    verdict(worst <= 1e-10, format!("max relative error {worst:.2e} (tol 1e-10)"))
}

fn orthogonality() -> QResult<Verdict> {
    let cx = ctx(0.5);
    let (mut off, mut diag) = (0.0f64, 0.0f64);
    for lv in levels() {
        let (o, d) = orthogonality_deviation(8, &lv, &cx, &QuadOptions::default())?;
        off = off.max(o);
        diag = diag.max(d);
    }
    verdict(off <= 1e-8 && diag <= 1e-8, format!("off-diagonal {off:.2e}, diagonal {diag:.2e} (tol 1e-8)"))
}

fn connection_identities() -> QResult<Verdict> {
    let cx = ctx(0.5);
    let (mut dual, mut down, mut proj) = (0.0f64, 0.0f64, 0.0f64);
    let xs = [c(-0.7), c(0.1), c(0.65), C64::new(0.3, 0.4)];
    for lv in levels() {
        for n in 0..=6 {
            for &x in &xs {
                down = down.max(connection_residual(n, &lv, x, &cx));
                if n >= 1 {
                    dual = dual.max(dual_quadratic_residual(n, &lv, x, 0.5)?);
                }
            }
            if n >= 2 {
                let p = dual_projections(n, &lv, 0.5, &QuadOptions::default())?;
                proj = proj.max(p[..n - 1].iter().map(|v| v.norm()).fold(0.0, f64::max));
            }
        }
    }
    verdict(
        dual <= 1e-10 && down <= 1e-10 && proj <= 1e-9,
        format!("dual expansion {dual:.2e}, connection {down:.2e} (tol 1e-10); vanishing projections {proj:.2e} (tol 1e-9)"),
    )
}

fn right_inverse() -> QResult<Verdict> {
    let cx = ctx(0.5);
    let (mut quad, mut coeff) = (0.0f64, 0.0f64);
    let xs = [-0.8, -0.25, 0.05, 0.5, 0.9];
    for lv in levels() {
        let up = lv.shifted(1.0);
        for deg in 0..=5usize {
            let coeffs: Vec<C64> = (0..=deg).map(|k| C64::new(1.0 / (k as f64 + 1.0), 0.3 * k as f64 - 0.5)).collect();
            let g = CoeffVector::new(up, coeffs);
            quad = quad.max(right_inverse_residual(&g, &xs, &cx, &QuadOptions::default())?);
            coeff = coeff.max(right_inverse_coeff_residual(&g, &cx));
        }
    }
    verdict(quad <= 1e-7 && coeff <= 1e-14, format!("quadrature {quad:.2e} (tol 1e-7), coefficients {coeff:.2e} (tol 1e-14)"))
}

fn eigen_pipeline() -> QResult<Verdict> {
    let cx = ctx(0.5);
    let mut notes = Vec::new();
    let mut ok = true;
    let (mut drift, mut fres, mut opres, mut conj, mut imag) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for lv in levels() {
        let a = sorted_spectrum(matrix_oracle(40, &lv, &cx)?);
        let b = sorted_spectrum(matrix_oracle(80, &lv, &cx)?);
        for z in a.iter().take(5) {
            drift = drift.max(b.iter().map(|w| (w - z).norm()).fold(f64::INFINITY, f64::min));
        }
        let opts = EigenOptions { count: 5, operator_samples: vec![-0.6, 0.0, 0.45, 0.8], ..Default::default() };
        let rep = eigenvalues(&lv, &cx, &opts)?;
        if rep.results.len() < 5 {
            ok = false;
            notes.push(format!("only {} certified: {}", rep.results.len(), rep.failures.join("; ")));
        }
        for r in &rep.results {
            ok &= r.lambda.norm() > 0.0;
            fres = fres.max(r.residual_f);
            opres = opres.max(r.residual_operator.unwrap_or(f64::INFINITY));
            if lv.is_real() {
                let d = rep.results.iter().map(|s| (s.lambda - r.lambda.conj()).norm()).fold(f64::INFINITY, f64::min);
                conj = conj.max(d / r.lambda.norm());
            }
            if lv.alpha == lv.beta || lv.is_conjugate_pair() {
                imag = imag.max(r.lambda.re.abs() / r.lambda.norm());
            }
        }
    }
    ok &= drift <= 1e-8 && fres <= 1e-9 && opres <= 1e-6 && conj <= 1e-8 && imag <= 1e-9;
    notes.insert(
        0,
        format!(
            "drift 40→80 {drift:.2e} (1e-8), |F| {fres:.2e} (1e-9), |Tg−λg| {opres:.2e} (1e-6), conjugate pairing {conj:.2e}, |Re λ|/|λ| {imag:.2e} (1e-9)"
        ),
    );
    verdict(ok, notes.join("; "))
}

fn asymptotics() -> QResult<Verdict> {
    let cx = ctx(0.5);
    let mut t51 = 0.0f64;
    for lv in levels() {
        for x in [c(0.5), C64::new(1.0, 1.0), c(-2.0)] {
            t51 = t51.max((off_spectrum_ratio(80, x, &lv, &cx)? - 1.0).norm());
        }
    }
    let mut c53 = 0.0f64;
    for lv in [JacobiLevel::real(0.3, -0.2), JacobiLevel::real(-0.2, 0.3)] {
        let (_, cc) = zero_point_constants(&lv, &cx)?;
        c53 = c53.max(rel(zero_point_normalized(60, &lv, &cx)?, cc));
        c53 = c53.max(rel(zero_point_normalized(61, &lv, &cx)?, cc));
    }
    let mut t55 = 0.0f64;
    for lv in levels() {
        let rep = eigenvalues(&lv, &cx, &EigenOptions { count: 1, ..Default::default() })?;
        let xi = rep.results[0].mu;
        t55 = t55.max(rel(root_growth_normalized(50, xi, &lv, &cx)?, root_growth_constant(xi, &lv, &cx)?));
    }
    verdict(
        t51 <= 1e-5 && c53 <= 1e-3 && t55 <= 1e-3,
        format!("ratio at n=80 {t51:.2e} (1e-5), b_n(0) constant at n=60,61 {c53:.2e} (1e-3), root constant at n=50 {t55:.2e} (1e-3)"),
    )
}

fn expansion_identity() -> QResult<Verdict> {
    let cx = ctx(0.5);
    let mut res = 0.0f64;
    for lv in levels() {
        for r in [c(0.1), c(0.3), C64::new(0.0, 0.5)] {
            for x in [-0.7, 0.2, 0.85] {
                res = res.max(expansion_residual(x, r, &lv, 25, &cx)?);
            }
        }
    }
    let mut route = 0.0f64;
    let lv = JacobiLevel::real(0.3, -0.2);
    for m in 0..=3 {
        let jq = jm_quadrature(m, -C64::i(), c(0.3), ExpansionBasis::Bare, &lv, &cx, &QuadOptions::default())?;
        route = route.max(rel(am_from_jm(m, jq.value(), &lv, &cx)?, am_coeff(m, c(0.3), &lv, &cx)?));
    }
    verdict(res <= 1e-8 && route <= 1e-7, format!("residual at M=25 {res:.2e} (1e-8), quadrature vs closed form {route:.2e} (1e-7)"))
}

fn section_seven_identities() -> QResult<Verdict> {
    let cx = ctx(0.5);
    let mut w = Weyl::new();
    let (mut eig, mut lvl, mut herm) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..10 {
        let (a, b) = (w.disk(0.1, 0.9), w.disk(0.1, 0.9));
        let x = 1.8 * w.next(1)[0] - 0.9;
        eig = eig.max(eq_dq_residual(x, a, b, &cx)?);
        let lam = w.disk(1.2, 4.0);
        herm = herm.max(hermite_identity_residual(lam, x, &cx)?);
        for lv in levels() {
            lvl = lvl.max(level_shift_residual(c(x), lam, &lv, 1.0, &cx)?);
        }
    }
    verdict(
        eig <= 1e-10 && lvl <= 1e-8 && herm <= 1e-10,
        format!("eigenrelation {eig:.2e} (1e-10), level independence {lvl:.2e} (1e-8), Hermite identity {herm:.2e} (1e-10)"),
    )
}

fn framework_consistency() -> QResult<Verdict> {
    let cx = ctx(0.5);
    let (mut inst, mut limit) = (0.0f64, 0.0f64);
    let (mut pinch, mut diverge, mut ok) = (0.0f64, f64::INFINITY, true);
    for lv in levels() {
        let sys = monicize(Arc::new(QJacobiFamily::new(lv, cx)), qjacobi_u(0.5));
        inst = inst.max(qjacobi_monic_deviation(&sys, &lv, 0.5, 20));
        limit = limit.max(limit_map_deviation(&lv, 10, &cx));
        for mu in [c(1.5), c(-2.5), C64::new(0.4, 1.3)] {
            pinch = pinch.max((qjacobi_pincherle_constant(&sys, &lv, mu, &cx)? + 1.0).norm());
        }
        for r in eigenvalues(&lv, &cx, &EigenOptions { count: 3, ..Default::default() })?.results {
            let v = cf_minimal_ratio(&sys, r.mu, &cx);
            diverge = diverge.min(v.value.norm());
            ok &= v.near_pole;
        }
    }
    let mut ultra = 0.0f64;
    for nu in [0.25, 0.7, 2.0] {
        let fam = UltrasphericalFamily::new(nu)?;
        for n in 1..=12 {
            for (a, b) in eigen_recurrence(&fam, n).iter().zip(&fam.classical_recurrence(n)) {
                ultra = ultra.max((a / nu - b).norm());
            }
        }
    }
    ok &= inst <= 1e-14 && ultra <= 1e-14 && limit <= 1e-12 && pinch <= 1e-8 && diverge > 1e6;
    verdict(
        ok,
        format!(
            "instance {inst:.2e} (1e-14), ultraspherical {ultra:.2e} (1e-14), limit map {limit:.2e} (1e-12), CF vs −X_0/X_−1 {pinch:.2e} (1e-8), min |CF| at eigenvalues {diverge:.2e} (> 1e6)"
        ),
    )
}

fn q_coulomb_and_markov() -> QResult<Verdict> {
    let cx = ctx(0.5);
    let mut im = 0.0f64;
    for (l, eta) in [(0.5, 0.3), (1.0, -0.7), (2.0, 1.5)] {
        for k in 1..=50 {
            im = im.max(q_coulomb(l, eta, 0.2 * k as f64, &cx)?.im.abs());
        }
    }
    let lv = JacobiLevel::conjugate_pair(C64::new(0.3, 0.5));
    let mut mk = 0.0f64;
    for x in [C64::new(0.0, 2.0), C64::new(0.7, 1.1), C64::new(-1.5, 0.4)] {
        mk = mk.max(rel(markov_ratio(60, x, &lv, &cx)?, markov_limit(x, &lv, &cx)?));
    }
    verdict(im <= 1e-12 && mk <= 1e-5, format!("|Im F_L| {im:.2e} (1e-12), Markov ratio at n=60 {mk:.2e} (1e-5)"))
}

fn cli_run(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_qspectra")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_contract() -> QResult<Verdict> {
    let (code, first) = cli_run(&["verify", "all"]);
    let (_, second) = cli_run(&["verify", "all"]);
    let (pc, p1) = cli_run(&["poly", "--degree", "4", "--grid", "5"]);
    let (_, p2) = cli_run(&["poly", "--degree", "4", "--grid", "5"]);
    let golden = include_bytes!("golden/poly_default.csv");
    let stable = first == second && p1 == p2;
    let failing: Vec<String> = String::from_utf8_lossy(&first)
        .lines()
        .filter(|l| l.split(',').nth(1).is_some_and(|s| s != "pass" && s != "skip" && s != "status"))
        .map(|l| l.split(',').next().unwrap_or("").to_string())
        .collect();
    verdict(
        code == 0 && pc == 0 && stable && p1 == golden,
        format!(
            "verify all exit {code}{}; byte-stable {stable}; poly matches golden {}",
            if failing.is_empty() { String::new() } else { format!(" (failing: {})", failing.join(", ")) },
            p1 == golden
        ),
    )
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("closed form vs recurrence", closed_form_vs_recurrence),
        ("ladder identity", ladder_identity),
        ("orthogonality", orthogonality),
        ("connection identities", connection_identities),
        ("right inverse", right_inverse),
        ("eigenvalue pipeline", eigen_pipeline),
        ("asymptotics", asymptotics),
        ("expansion identity", expansion_identity),
        ("q-exponential identities", section_seven_identities),
        ("framework consistency", framework_consistency),
        ("q-Coulomb and Markov ratio", q_coulomb_and_markov),
        ("command line", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let v = f().unwrap_or_else(|e| Verdict { passed: false, detail: format!("error: {e}") });
        failed += usize::from(!v.passed);
        println!("criterion {:>2} {}: {} — {}", i + 1, if v.passed { "PASS" } else { "FAIL" }, name, v.detail);
    }
    println!("acceptance: {} of 12 passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
