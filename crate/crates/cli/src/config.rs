//! JSON run configuration. Every field is optional; rationals are `[num, den]`.

use std::path::Path;

use kdp_core::currents::ModeSpec;
use kdp_core::fields::{make_field, FieldConfig, FieldKind, Gauge};
use kdp_core::scalar::{q, rational_pair};
use kdp_core::spectra::LandauParams;
use kdp_core::suite::{default_modes, SuiteOptions};
use kdp_core::Rational;
use serde::Deserialize;

use crate::CliError;

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FieldSpec {
    Zero,
    #[serde(rename = "uniform-B")]
    UniformB {
        #[serde(with = "rational_pair")]
        b: Rational,
        #[serde(default = "landau")]
        gauge: Gauge,
    },
    #[serde(rename = "uniform-E")]
    UniformE {
        #[serde(with = "rational_pair")]
        e: Rational,
    },
    NullWave {
        n: u32,
        #[serde(with = "rational_pair", default = "one")]
        amplitude: Rational,
    },
}

fn landau() -> Gauge {
    Gauge::Landau
}

fn one() -> Rational {
    q(1, 1)
}

impl FieldSpec {
    fn kind(&self) -> FieldKind {
        match *self {
            FieldSpec::Zero => FieldKind::Zero,
            FieldSpec::UniformB { b, gauge } => FieldKind::UniformB { b, gauge },
            FieldSpec::UniformE { e } => FieldKind::UniformE { e },
            FieldSpec::NullWave { n, amplitude } => FieldKind::NullWave { n, amplitude },
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Tolerances {
    pub spin0: f64,
    pub spin1: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { spin0: 1e-6, spin1: 1e-5 }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub spins: Vec<u8>,
    #[serde(with = "rational_pair")]
    pub m: Rational,
    #[serde(with = "rational_pair")]
    pub charge: Rational,
    /// `None` means the shipped sweep.
    pub fields: Option<Vec<FieldSpec>>,
    pub degree: u32,
    pub word_length: usize,
    pub modes: Vec<ModeSpec>,
    pub samples: usize,
    pub seed: u64,
    pub spin0: LandauParams,
    pub spin1: LandauParams,
    pub tolerance: Tolerances,
}

impl Default for Config {
    fn default() -> Self {
        let suite = SuiteOptions::default();
        Self {
            spins: suite.spins,
            m: suite.m,
            charge: q(1, 1),
            fields: None,
            degree: suite.degree,
            word_length: suite.word_length,
            modes: default_modes(),
            samples: suite.samples,
            seed: suite.seed,
            spin0: LandauParams::default(),
            spin1: LandauParams::spin1_default(),
            tolerance: Tolerances::default(),
        }
    }
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let cfg: Config = match path {
            None => Config::default(),
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?;
                serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", p.display())))?
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.spins.is_empty() || self.spins.iter().any(|s| *s > 1) {
            return Err(CliError::Config(format!("spins must be a non-empty subset of [0, 1], got {:?}", self.spins)));
        }
        if self.m <= q(0, 1) {
            return Err(CliError::Config("m must be positive".into()));
        }
        if self.modes.is_empty() {
            return Err(CliError::Config("modes must not be empty".into()));
        }
        for t in [self.tolerance.spin0, self.tolerance.spin1] {
            if !(t > 0.0 && t.is_finite()) {
                return Err(CliError::Config(format!("tolerance {t} must be positive")));
            }
        }
        Ok(())
    }

    pub fn field_configs(&self) -> Result<Vec<FieldConfig>, CliError> {
        match &self.fields {
            None => Ok(FieldConfig::shipped(self.charge)),
            Some(specs) => specs.iter().map(|s| Ok(make_field(s.kind(), self.charge)?)).collect(),
        }
    }

    pub fn suite_options(&self) -> Result<SuiteOptions, CliError> {
        Ok(SuiteOptions {
            spins: self.spins.clone(),
            fields: self.field_configs()?,
            m: self.m,
            degree: self.degree,
            word_length: self.word_length,
            modes: self.modes.clone(),
            samples: self.samples,
            seed: self.seed,
        })
    }

    pub fn landau(&self, spin: u8) -> &LandauParams {
        if spin == 0 { &self.spin0 } else { &self.spin1 }
    }

    pub fn tolerance(&self, spin: u8) -> f64 {
        if spin == 0 { self.tolerance.spin0 } else { self.tolerance.spin1 }
    }
}
