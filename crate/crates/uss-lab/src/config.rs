//! Experiment and scheme configuration.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schemes::{
    Bb84Scheme, ChainedScheme, CollusionScheme, PadScheme, QromScheme, QuantumEncoded, UssScheme,
};

/// The scheme configuration file shape: `{scheme, n, t, message_bits, k,
/// seed}` plus the security parameter.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeConfig {
    pub scheme: String,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default)]
    pub t: Option<usize>,
    #[serde(default = "default_message_bits")]
    pub message_bits: usize,
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_lambda")]
    pub lambda: usize,
    /// T-gate count for the attack test-bed scheme.
    #[serde(default)]
    pub kappa: usize,
}

fn default_n() -> usize {
    2
}
fn default_message_bits() -> usize {
    1
}
fn default_k() -> usize {
    8
}
fn default_lambda() -> usize {
    8
}

impl SchemeConfig {
    pub fn new(scheme: &str) -> Self {
        Self {
            scheme: scheme.into(),
            n: default_n(),
            t: None,
            message_bits: default_message_bits(),
            k: default_k(),
            seed: 0,
            lambda: default_lambda(),
            kappa: 0,
        }
    }

    /// Build the configured scheme. `bb84`'s `n` counts its quantum parties.
    pub fn build(&self) -> Result<Box<dyn UssScheme>> {
        match self.scheme.as_str() {
            "bb84" => Ok(Box::new(Bb84Scheme::new(self.n)?)),
            "chained" => Ok(Box::new(ChainedScheme::new(self.n, self.message_bits)?)),
            "qrom" => Ok(Box::new(QromScheme::new(
                self.n,
                self.k,
                self.message_bits,
                self.seed,
            )?)),
            "pad" => Ok(Box::new(PadScheme::new(self.n, self.kappa)?)),
            "pad-encoded" => Ok(Box::new(QuantumEncoded(PadScheme::new(self.n, self.kappa)?))),
            "collusion" => {
                let t = self.t.unwrap_or(self.n.saturating_sub(1));
                Ok(Box::new(CollusionScheme::new(Bb84Scheme::new(1)?, self.n, t)?))
            }
            other => Err(Error::Config(format!("unknown scheme {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_with_defaults() {
        let cfg: SchemeConfig =
            serde_json::from_str(r#"{"scheme": "bb84", "n": 3, "seed": 9}"#).unwrap();
        assert_eq!(cfg.k, 8);
        assert_eq!(cfg.lambda, 8);
        assert_eq!(cfg.message_bits, 1);
        assert!(cfg.build().is_ok());
    }

    #[test]
    fn unknown_scheme_is_config_error() {
        let cfg = SchemeConfig::new("nope");
        assert!(matches!(cfg.build(), Err(Error::Config(_))));
    }
}
