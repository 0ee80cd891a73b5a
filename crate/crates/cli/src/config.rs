//! Run configuration: a TOML file of `key = value` pairs grouped under
//! `[section]` headers. Every key has a default and unknown keys are errors.

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Mc,
    Pde,
    Theory,
    All,
}

impl Method {
    pub fn mc(self) -> bool {
        matches!(self, Method::Mc | Method::All)
    }

    pub fn pde(self) -> bool {
        matches!(self, Method::Pde | Method::All)
    }

    pub fn theory(self) -> bool {
        matches!(self, Method::Theory | Method::All)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Mc => "mc",
            Method::Pde => "pde",
            Method::Theory => "theory",
            Method::All => "all",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Fig1,
    Fig2,
    Fig3,
    Pointer,
    Validate,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Fig1 => "fig1",
            Scenario::Fig2 => "fig2",
            Scenario::Fig3 => "fig3",
            Scenario::Pointer => "pointer",
            Scenario::Validate => "validate",
        }
    }

    pub fn default_nu(self) -> Vec<f64> {
        match self {
            Scenario::Fig1 => vec![0.01, 0.1, 1.0, 10.0],
            Scenario::Fig2 => vec![0.01, 0.001],
            Scenario::Fig3 => vec![0.01, 0.001, 0.0001],
            Scenario::Pointer => vec![0.001],
            Scenario::Validate => vec![0.1, 1.0],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// When set, must match the subcommand.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scenario: Option<Scenario>,
    pub seed: u64,
    pub out: PathBuf,
    pub method: Method,
    pub params: Params,
    pub mc: McSection,
    pub pde: PdeSection,
    pub time: TimeSection,
    pub pointer: PointerSection,
    pub validate: ValidateSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Params {
    /// `nu/Omega0` values; the scenario default when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<Vec<f64>>,
    /// Detuning in units of `Omega0`; only the Monte Carlo method supports it.
    pub delta0: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct McSection {
    pub n_traj: usize,
    /// Step in `1/Omega0`; `min(0.02, 0.02/nu)` when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    /// Recorded points per curve.
    pub records: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PdeSection {
    pub dt: f64,
    pub grid_points: usize,
    pub omega_max: f64,
    /// Coarse time-step factor used once the fast phases have dephased;
    /// 1 disables it.
    pub coarse_factor: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TimeSection {
    /// Last time in `1/Omega0`; the scenario default when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    /// Points per curve for the deterministic methods.
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PointerSection {
    pub phi_prime: f64,
    /// Initial population difference.
    pub n0: f64,
    /// Initial `|rho_21|`; its phase is `phi_prime`.
    pub coherence: f64,
    pub t_lo: f64,
    pub t_hi: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ValidateSection {
    /// Multiplies every Monte Carlo step used by the checks.
    pub dt_scale: f64,
    pub fwd_bwd_traj: usize,
    pub bins: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            scenario: None,
            seed: 1,
            out: PathBuf::from("out"),
            method: Method::All,
            params: Params::default(),
            mc: McSection::default(),
            pde: PdeSection::default(),
            time: TimeSection::default(),
            pointer: PointerSection::default(),
            validate: ValidateSection::default(),
        }
    }
}

impl Default for Params {
    fn default() -> Self {
        Self {
            nu: None,
            delta0: 0.0,
        }
    }
}

impl Default for McSection {
    fn default() -> Self {
        Self {
            n_traj: 20_000,
            dt: None,
            records: 40,
        }
    }
}

impl Default for PdeSection {
    fn default() -> Self {
        Self {
            dt: tlsrelax::pde::DEFAULT_DT,
            grid_points: 2048,
            omega_max: 6.0,
            coarse_factor: 20,
        }
    }
}

impl Default for TimeSection {
    fn default() -> Self {
        Self {
            t_max: None,
            points: 300,
        }
    }
}

impl Default for PointerSection {
    fn default() -> Self {
        Self {
            phi_prime: 0.6,
            n0: 0.1,
            coherence: 0.49,
            t_lo: 50.0,
            t_hi: 200.0,
        }
    }
}

impl Default for ValidateSection {
    fn default() -> Self {
        Self {
            dt_scale: 1.0,
            fwd_bwd_traj: 50_000,
            bins: 8,
        }
    }
}

impl FromStr for RunConfig {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(s).context("invalid configuration")?;
        cfg.check()?;
        Ok(cfg)
    }
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        text.parse()
            .with_context(|| format!("in configuration file {}", path.display()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("configuration serialises")
    }

    /// `nu/Omega0` list in effect for `scenario`.
    pub fn nu_list(&self, scenario: Scenario) -> Vec<f64> {
        self.params
            .nu
            .clone()
            .unwrap_or_else(|| scenario.default_nu())
    }

    pub fn check(&self) -> Result<()> {
        if let Some(nu) = &self.params.nu {
            if nu.is_empty() {
                bail!("params.nu must not be empty");
            }
            if let Some(bad) = nu.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
                bail!("params.nu values must be finite and non-negative, got {bad}");
            }
        }
        if self.seed > i64::MAX as u64 {
            bail!("seed must not exceed {}", i64::MAX);
        }
        if !self.params.delta0.is_finite() {
            bail!("params.delta0 must be finite");
        }
        if self.mc.n_traj < 2 {
            bail!("mc.n_traj must be at least 2");
        }
        if let Some(dt) = self.mc.dt {
            if !(dt.is_finite() && dt > 0.0) {
                bail!("mc.dt must be positive");
            }
        }
        if self.mc.records < 2 || self.time.points < 2 {
            bail!("mc.records and time.points must be at least 2");
        }
        if !(self.pde.dt.is_finite() && self.pde.dt > 0.0) {
            bail!("pde.dt must be positive");
        }
        if self.pde.coarse_factor == 0 {
            bail!("pde.coarse_factor must be at least 1");
        }
        if let Some(t) = self.time.t_max {
            if !(t.is_finite() && t > 0.0) {
                bail!("time.t_max must be positive");
            }
        }
        let p = &self.pointer;
        if !(p.t_lo >= 0.0 && p.t_hi > p.t_lo && p.t_hi.is_finite()) {
            bail!("pointer window needs 0 <= t_lo < t_hi");
        }
        if !(self.validate.dt_scale.is_finite() && self.validate.dt_scale > 0.0) {
            bail!("validate.dt_scale must be positive");
        }
        if self.validate.bins < 2 {
            bail!("validate.bins must be at least 2");
        }
        Ok(())
    }
}

/// Parse a comma-separated list such as `0.1,1,10`.
pub fn parse_nu_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad value {x:?}: {e}"))
        })
        .collect()
}
