//! Validated run configuration shared by every subcommand.

use num_complex::Complex64 as C64;
use qspectra::awop::QuadOptions;
use qspectra::{JacobiLevel, QContext};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format '{other}' (csv|json)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// `β` as given on the command line: a number or `conj` (β = ᾱ).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BetaSpec {
    Value(C64),
    Conj,
}

impl FromStr for BetaSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "conj" {
            Ok(BetaSpec::Conj)
        } else {
            parse_complex(s).map(BetaSpec::Value)
        }
    }
}

/// Accepts `0.3`, `-0.2`, `0.3+0.5i`, `0.5i`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let v = C64::from_str(s.trim()).map_err(|_| format!("cannot parse '{s}' as a complex number"))?;
    if !v.re.is_finite() || !v.im.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(v)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub q: f64,
    pub alpha: C64,
    pub beta: BetaSpec,
    pub tol: f64,
    pub trunc: usize,
    pub nodes: usize,
    pub format: Format,
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q: 0.5,
            alpha: C64::new(0.3, 0.0),
            beta: BetaSpec::Value(C64::new(-0.2, 0.0)),
            tol: 1e-14,
            trunc: 80,
            nodes: 32,
            format: Format::Csv,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.q > 0.0 && self.q < 1.0) {
            return Err(format!("--q must lie in (0, 1), got {}", self.q));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return Err(format!("--tol must lie in (0, 1), got {}", self.tol));
        }
        if self.trunc < 2 {
            return Err("--trunc must be at least 2".into());
        }
        if !(4..=1 << 16).contains(&self.nodes) {
            return Err("--nodes must lie in [4, 65536]".into());
        }
        Ok(())
    }

    pub fn beta_value(&self) -> C64 {
        match self.beta {
            BetaSpec::Value(b) => b,
            BetaSpec::Conj => self.alpha.conj(),
        }
    }

    pub fn level(&self) -> JacobiLevel {
        JacobiLevel::new(self.alpha, self.beta_value())
    }

    pub fn ctx(&self) -> Result<QContext, String> {
        QContext::with_tolerance(self.q, self.tol, qspectra::qcore::DEFAULT_MAX_TERMS).map_err(|e| e.to_string())
    }

    pub fn quad(&self) -> QuadOptions {
        QuadOptions { initial_nodes: self.nodes, ..QuadOptions::default() }
    }

    /// `(key, value)` pairs echoed into JSON output.
    pub fn describe(&self) -> Vec<(&'static str, String)> {
        let beta = match self.beta {
            BetaSpec::Conj => "conj".to_string(),
            BetaSpec::Value(b) => crate::output::fmt_complex(b),
        };
        vec![
            ("q", crate::output::fmt_f64(self.q)),
            ("alpha", crate::output::fmt_complex(self.alpha)),
            ("beta", beta),
            ("tol", crate::output::fmt_f64(self.tol)),
            ("trunc", self.trunc.to_string()),
            ("nodes", self.nodes.to_string()),
            ("format", self.format.to_string()),
        ]
    }
}
