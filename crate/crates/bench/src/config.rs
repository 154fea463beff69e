//! Run configuration: benchmark case, discretization, mesh and load regime.
//!
//! Configurations are read from `key = value` text and can be overridden
//! key by key, which is how the command line flags are applied.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use klshell::hybrid::{Discretization, RedistributionMode};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Cantilever,
    Scordelis,
    Hemisphere,
}

impl Case {
    /// Slenderness used when none is given.
    pub fn default_slenderness(self) -> f64 {
        match self {
            Case::Cantilever => 1000.0,
            Case::Scordelis => 100.0,
            Case::Hemisphere => 250.0,
        }
    }
}

impl FromStr for Case {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "cantilever" => Case::Cantilever,
            "scordelis" | "scordelis-lo" => Case::Scordelis,
            "hemisphere" => Case::Hemisphere,
            other => bail!("unknown case `{other}`"),
        })
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Cantilever => "cantilever",
            Case::Scordelis => "scordelis",
            Case::Hemisphere => "hemisphere",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Linear,
    Nonlinear,
}

/// Full description of one benchmark run.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseConfig {
    pub case: Case,
    pub discretization: Discretization,
    /// Polynomial degree; B2M1 requires 2.
    pub degree: usize,
    /// Elements along the first direction; the second follows from the case.
    pub m: usize,
    /// Slenderness `R / T`.
    pub slenderness: f64,
    pub regime: Regime,
    pub redistribution: RedistributionMode,
    /// Distorted control net (Scordelis-Lo only).
    pub skew: bool,
    /// Extra factor on the case load.
    pub load_scale: f64,
    pub load_steps: usize,
    /// Raw recovery samples per element and direction.
    pub grid: usize,
    pub out: Option<PathBuf>,
}

impl CaseConfig {
    pub fn new(case: Case) -> Self {
        Self {
            case,
            discretization: Discretization::B2M1,
            degree: 2,
            m: 16,
            slenderness: case.default_slenderness(),
            regime: Regime::Linear,
            redistribution: RedistributionMode::Full,
            skew: false,
            load_scale: 1.0,
            load_steps: 10,
            grid: 8,
            out: None,
        }
    }

    /// Short label such as `B2M1` or `B3M3`.
    pub fn label(&self) -> String {
        match self.discretization {
            Discretization::B2M1 => "B2M1".into(),
            Discretization::BpMp => format!("B{0}M{0}", self.degree),
        }
    }

    pub fn with_m(&self, m: usize) -> Self {
        Self { m, ..self.clone() }
    }

    /// Sets one option from its textual form.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "case" => {
                let case: Case = value.parse()?;
                if case != self.case {
                    self.slenderness = case.default_slenderness();
                }
                self.case = case;
            }
            "disc" | "discretization" => self.set_discretization(value)?,
            "p" | "degree" => self.degree = parse(key, value)?,
            "m" => self.m = parse(key, value)?,
            "rt" | "slenderness" => self.slenderness = parse(key, value)?,
            "regime" => {
                self.regime = match value {
                    "linear" => Regime::Linear,
                    "nonlinear" => Regime::Nonlinear,
                    other => bail!("unknown regime `{other}`"),
                }
            }
            "nonlinear" => {
                self.regime = if parse_bool(key, value)? {
                    Regime::Nonlinear
                } else {
                    Regime::Linear
                }
            }
            "redistribute" | "redistribution" => self.redistribution = parse_redistribution(value)?,
            "skew" => self.skew = parse_bool(key, value)?,
            "load_scale" => self.load_scale = parse(key, value)?,
            "load_steps" => self.load_steps = parse(key, value)?,
            "grid" => self.grid = parse(key, value)?,
            "out" => self.out = Some(PathBuf::from(value)),
            other => bail!("unknown option `{other}`"),
        }
        Ok(())
    }

    fn set_discretization(&mut self, value: &str) -> Result<()> {
        let v = value.to_ascii_lowercase();
        match v.as_str() {
            "b2m1" => {
                self.discretization = Discretization::B2M1;
                self.degree = 2;
            }
            "bpmp" => self.discretization = Discretization::BpMp,
            _ => {
                let digits: Vec<&str> = v.strip_prefix('b').map(|r| r.split('m').collect()).unwrap_or_default();
                match digits.as_slice() {
                    [a, b] if a == b && !a.is_empty() => {
                        self.discretization = Discretization::BpMp;
                        self.degree = parse("disc", a)?;
                    }
                    _ => bail!("unknown discretization `{value}`"),
                }
            }
        }
        Ok(())
    }

    /// Parses `key = value` lines on top of the defaults. The `case` key is
    /// applied first so that case defaults never override explicit values.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for (k, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .with_context(|| format!("line {}: expected `key = value`", k + 1))?;
            pairs.push((k + 1, key.trim().to_string(), value.trim().to_string()));
        }
        let case = match pairs.iter().find(|(_, k, _)| k == "case") {
            Some((_, _, v)) => v.parse()?,
            None => Case::Cantilever,
        };
        let mut cfg = Self::new(case);
        for (line, key, value) in pairs.iter().filter(|(_, k, _)| k != "case") {
            cfg.set(key, value).with_context(|| format!("line {line}"))?;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if !(2..=5).contains(&self.degree) {
            bail!("degree {} outside 2..=5", self.degree);
        }
        if self.discretization == Discretization::B2M1 && self.degree != 2 {
            bail!("B2M1 requires degree 2, got {}", self.degree);
        }
        if self.m == 0 {
            bail!("m must be positive");
        }
        if self.case == Case::Scordelis && !self.m.is_multiple_of(2) {
            bail!("Scordelis-Lo needs an even m, got {}", self.m);
        }
        if self.skew && self.case != Case::Scordelis {
            bail!("skewed meshes are defined for the Scordelis-Lo roof only");
        }
        if !(self.slenderness.is_finite() && self.slenderness > 0.0) {
            bail!("slenderness must be positive");
        }
        if !self.load_scale.is_finite() {
            bail!("load scale must be finite");
        }
        if self.load_steps == 0 {
            bail!("at least one load step required");
        }
        if self.grid < 2 {
            bail!("recovery grid needs at least 2 points per direction");
        }
        Ok(())
    }

    /// Text form accepted by [`CaseConfig::from_text`].
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "case = {}\ndisc = {}\nm = {}\nrt = {}\nregime = {}\nredistribute = {}\nskew = {}\nload_scale = {}\nload_steps = {}\ngrid = {}\n",
            self.case,
            self.label().to_ascii_lowercase(),
            self.m,
            self.slenderness,
            match self.regime {
                Regime::Linear => "linear",
                Regime::Nonlinear => "nonlinear",
            },
            redistribution_name(self.redistribution),
            self.skew,
            self.load_scale,
            self.load_steps,
            self.grid,
        );
        if let Some(out) = &self.out {
            s.push_str(&format!("out = {}\n", out.display()));
        }
        s
    }
}

pub fn redistribution_name(mode: RedistributionMode) -> &'static str {
    match mode {
        RedistributionMode::None => "none",
        RedistributionMode::Lateral => "lateral",
        RedistributionMode::Full => "full",
    }
}

fn parse_redistribution(v: &str) -> Result<RedistributionMode> {
    Ok(match v.to_ascii_lowercase().as_str() {
        "none" | "off" => RedistributionMode::None,
        "lateral" => RedistributionMode::Lateral,
        "full" | "on" => RedistributionMode::Full,
        other => bail!("unknown redistribution mode `{other}`"),
    })
}

fn parse<T: FromStr>(key: &str, v: &str) -> Result<T>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    v.parse().with_context(|| format!("invalid value `{v}` for `{key}`"))
}

fn parse_bool(key: &str, v: &str) -> Result<bool> {
    match v.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => bail!("invalid boolean `{v}` for `{key}`"),
    }
}

/// Parses a comma separated list of mesh sizes.
pub fn parse_m_list(s: &str) -> Result<Vec<usize>> {
    s.split(',')
        .map(|t| t.trim().parse().with_context(|| format!("invalid mesh size `{t}`")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let mut cfg = CaseConfig::new(Case::Scordelis);
        cfg.set("disc", "b3m3").unwrap();
        cfg.set("m", "8").unwrap();
        cfg.set("skew", "true").unwrap();
        cfg.set("nonlinear", "yes").unwrap();
        cfg.set("out", "/tmp/x").unwrap();
        let back = CaseConfig::from_text(&cfg.to_text()).unwrap();
        assert_eq!(back, cfg);
    }

    #[test]
    fn case_is_applied_before_other_keys() {
        let cfg = CaseConfig::from_text("rt = 1e4\ncase = scordelis\n").unwrap();
        assert_eq!(cfg.case, Case::Scordelis);
        assert_eq!(cfg.slenderness, 1e4);
    }

    #[test]
    fn invalid_combinations_are_rejected() {
        assert!(CaseConfig::from_text("disc = b2m1\np = 3").is_err());
        assert!(CaseConfig::from_text("case = hemisphere\nskew = true").is_err());
        assert!(CaseConfig::from_text("case = scordelis\nm = 5").is_err());
        assert!(CaseConfig::from_text("colour = red").is_err());
        assert!(CaseConfig::from_text("m 4").is_err());
    }

    #[test]
    fn mesh_lists() {
        assert_eq!(parse_m_list("2, 4,8").unwrap(), vec![2, 4, 8]);
        assert!(parse_m_list("2,x").is_err());
    }
}
