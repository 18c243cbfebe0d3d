use std::fmt;
use std::path::PathBuf;

use serde::Serialize;
use weakval::pointer::GaussianPointer;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Hardy,
    Twoslit,
    Identities,
    Povm,
    Sweep,
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Scenario::Hardy => "hardy",
            Scenario::Twoslit => "twoslit",
            Scenario::Identities => "identities",
            Scenario::Povm => "povm",
            Scenario::Sweep => "sweep",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub x0: f64,
    pub sigma: f64,
    pub kappa: f64,
    pub dim: usize,
    pub trials: usize,
    pub seed: u64,
    pub out: PathBuf,
    pub format: Format,
    pub planes: usize,
    pub starts: usize,
    pub bins: usize,
}

impl RunConfig {
    pub fn new(scenario: Scenario) -> Self {
        RunConfig {
            scenario,
            x0: 2.0,
            sigma: 1.0,
            kappa: 0.01,
            dim: 4,
            trials: 100,
            seed: 7,
            out: PathBuf::from("out"),
            format: Format::Csv,
            planes: 41,
            starts: 80,
            bins: 4,
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let bad = |field: &'static str, reason: &str| {
            Err(CliError::Config {
                field,
                reason: reason.to_string(),
            })
        };
        if !self.x0.is_finite() || self.x0 == 0.0 {
            return bad("x0", "must be finite and nonzero");
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return bad("sigma", "must be positive");
        }
        if !(self.kappa.is_finite() && self.kappa > 0.0) {
            return bad("kappa", "must be positive");
        }
        if self.kappa > self.sigma / 10.0 {
            return bad("kappa", "must not exceed sigma/10 (weak regime)");
        }
        if !(2..=32).contains(&self.dim) {
            return bad("dim", "must lie in 2..=32");
        }
        if self.trials == 0 {
            return bad("trials", "must be at least 1");
        }
        if self.planes < 2 {
            return bad("planes", "need at least 2 planes");
        }
        if self.starts == 0 {
            return bad("starts", "need at least 1 start point");
        }
        if !(2..=64).contains(&self.bins) {
            return bad("bins", "must lie in 2..=64");
        }
        Ok(())
    }

    pub fn pointer(&self) -> Result<GaussianPointer, CliError> {
        Ok(GaussianPointer::new(self.x0, self.sigma)?)
    }

    /// `key=value` pairs echoed into every output header.
    pub fn echo(&self) -> Vec<(&'static str, String)> {
        vec![
            ("scenario", self.scenario.to_string()),
            ("x0", self.x0.to_string()),
            ("sigma", self.sigma.to_string()),
            ("kappa", self.kappa.to_string()),
            ("dim", self.dim.to_string()),
            ("trials", self.trials.to_string()),
            ("seed", self.seed.to_string()),
            ("planes", self.planes.to_string()),
            ("starts", self.starts.to_string()),
            ("bins", self.bins.to_string()),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        for s in [Scenario::Hardy, Scenario::Twoslit, Scenario::Identities, Scenario::Povm, Scenario::Sweep] {
            RunConfig::new(s).validate().unwrap();
        }
    }

    #[test]
    fn rejects_strong_coupling() {
        let mut cfg = RunConfig::new(Scenario::Hardy);
        cfg.kappa = 0.2;
        match cfg.validate() {
            Err(CliError::Config { field, .. }) => assert_eq!(field, "kappa"),
            other => panic!("{other:?}"),
        }
        cfg.kappa = 0.1;
        cfg.validate().unwrap();
    }
}
