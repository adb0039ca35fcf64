//! The table-producing subcommands.

use crate::config::RunConfig;
use crate::output::{Cell, Table};
use num_complex::Complex64 as C64;
use qspectra::awop::kernel_auto;
use qspectra::qcore::c;
use qspectra::qexp::{am_coeff, expansion_residual};
use qspectra::qpolys::cqjacobi_seq;
use qspectra::spectral::{eigenfunction, eigenvalues, q_coulomb, EigenOptions};
use qspectra::QError;

/// Why a command produced no table.
#[derive(Debug)]
pub enum CommandError {
    Usage(String),
    Numeric(QError),
}

impl From<QError> for CommandError {
    fn from(e: QError) -> Self {
        CommandError::Numeric(e)
    }
}

pub type CmdResult = Result<Table, CommandError>;

/// `n` midpoints of `(−1, 1)`.
pub fn interior_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| -1.0 + (2 * k + 1) as f64 / n as f64).collect()
}

fn ctx(cfg: &RunConfig) -> Result<qspectra::QContext, CommandError> {
    cfg.ctx().map_err(CommandError::Usage)
}

fn re_im(z: C64) -> [Cell; 2] {
    [z.re.into(), z.im.into()]
}

pub fn eigen(cfg: &RunConfig, count: usize) -> CmdResult {
    let cx = ctx(cfg)?;
    let opts = EigenOptions { count, truncation: cfg.trunc, ..Default::default() };
    let rep = eigenvalues(&cfg.level(), &cx, &opts)?;
    let mut t = Table::new(&["index", "lambda_re", "lambda_im", "mu_re", "mu_im", "residual_f", "f_derivative", "newton_iterations"]);
    for (i, r) in rep.results.iter().take(count).enumerate() {
        let [lr, li] = re_im(r.lambda);
        let [mr, mi] = re_im(r.mu);
        t.push(vec![i.into(), lr, li, mr, mi, r.residual_f.into(), r.f_derivative.into(), r.newton_iterations.into()]);
    }
    t.diagnostics.push(format!("truncation {} drift {:e}", rep.truncation, rep.drift));
    t.diagnostics.extend(rep.failures.iter().cloned());
    if t.rows.len() < count {
        t.diagnostics.push(format!("only {} of {} eigenvalues certified", t.rows.len(), count));
    }
    Ok(t)
}

pub fn eigfun(cfg: &RunConfig, index: usize, terms: usize, grid: usize) -> CmdResult {
    let cx = ctx(cfg)?;
    let level = cfg.level();
    let opts = EigenOptions { count: index + 1, truncation: cfg.trunc, ..Default::default() };
    let rep = eigenvalues(&level, &cx, &opts)?;
    let Some(r) = rep.results.get(index) else {
        return Err(CommandError::Numeric(QError::Eigen(format!("eigenvalue {index} was not certified"))));
    };
    let ef = eigenfunction(r.lambda, &level, terms, &cx)?;
    let mut t = Table::new(&["series", "n", "x", "re", "im"]);
    for (n, a) in ef.coeffs.coeffs.iter().enumerate() {
        let [re, im] = re_im(*a);
        t.push(vec!["coeff".into(), n.into(), "".into(), re, im]);
    }
    for x in interior_grid(grid) {
        let [re, im] = re_im(ef.coeffs.eval(c(x), &cx));
        t.push(vec!["value".into(), "".into(), x.into(), re, im]);
    }
    t.diagnostics.push(format!("lambda {}", crate::output::fmt_complex(r.lambda)));
    t.diagnostics.push(format!("tail decreasing {}", ef.tail_decreasing));
    Ok(t)
}

pub fn poly(cfg: &RunConfig, degree: usize, grid: usize) -> CmdResult {
    let cx = ctx(cfg)?;
    let level = cfg.level();
    let mut t = Table::new(&["x", "n", "re", "im"]);
    for x in interior_grid(grid) {
        for (n, v) in cqjacobi_seq(degree, &level, c(x), &cx).into_iter().enumerate() {
            let [re, im] = re_im(v);
            t.push(vec![x.into(), n.into(), re, im]);
        }
    }
    Ok(t)
}

pub fn kernel(cfg: &RunConfig, grid: usize) -> CmdResult {
    let cx = ctx(cfg)?;
    let level = cfg.level();
    let xs = interior_grid(grid);
    let mut t = Table::new(&["x", "y", "re", "im", "terms"]);
    for &x in &xs {
        for &y in &xs {
            let (k, n) = kernel_auto(c(x), c(y), &level, &cx)?;
            let [re, im] = re_im(k);
            t.push(vec![x.into(), y.into(), re, im, n.into()]);
        }
    }
    Ok(t)
}

pub fn expand(cfg: &RunConfig, r: C64, terms: usize, grid: usize) -> CmdResult {
    let cx = ctx(cfg)?;
    let level = cfg.level();
    let mut t = Table::new(&["series", "key", "re", "im"]);
    for m in 0..terms {
        let [re, im] = re_im(am_coeff(m, r, &level, &cx)?);
        t.push(vec!["coeff".into(), Cell::Float(m as f64), re, im]);
    }
    for x in interior_grid(grid) {
        let res = expansion_residual(x, r, &level, terms.saturating_sub(1), &cx)?;
        t.push(vec!["residual".into(), x.into(), res.into(), 0.0.into()]);
    }
    Ok(t)
}

pub fn coulomb(cfg: &RunConfig, l: f64, eta: f64, rho_max: f64, grid: usize) -> CmdResult {
    if !(rho_max > 0.0 && rho_max.is_finite()) {
        return Err(CommandError::Usage(format!("--rho-max must be positive, got {rho_max}")));
    }
    let cx = ctx(cfg)?;
    let mut t = Table::new(&["rho", "re", "im"]);
    for k in 0..grid {
        let rho = rho_max * (k + 1) as f64 / grid as f64;
        let [re, im] = re_im(q_coulomb(l, eta, rho, &cx)?);
        t.push(vec![rho.into(), re, im]);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_interior_and_symmetric() {
        let g = interior_grid(4);
        assert_eq!(g, vec![-0.75, -0.25, 0.25, 0.75]);
    }

    #[test]
    fn coulomb_rejects_bad_range() {
        assert!(matches!(coulomb(&RunConfig::default(), 0.5, 0.3, -1.0, 5), Err(CommandError::Usage(_))));
    }

    #[test]
    fn poly_table_shape() {
        let t = poly(&RunConfig::default(), 3, 5).unwrap();
        assert_eq!(t.rows.len(), 20);
        assert_eq!(t.rows[0][2], Cell::Float(1.0));
    }
}
