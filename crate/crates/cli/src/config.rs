use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use mvfunc_core::Metric;
use serde::{Deserialize, Serialize};

use crate::HarnessError;

pub const MIN_DIM: usize = 2;
pub const MAX_DIM: usize = 6;

/// Which part of the identity catalog to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Paper,
    Properties,
    Bridge,
    All,
}

impl Suite {
    pub fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(Suite::Paper),
            "properties" => Ok(Suite::Properties),
            "bridge" => Ok(Suite::Bridge),
            "all" => Ok(Suite::All),
            _ => Err(HarnessError::Config(format!(
                "unknown suite {s:?} (expected paper, properties, bridge or all)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Paper => "paper",
            Suite::Properties => "properties",
            Suite::Bridge => "bridge",
            Suite::All => "all",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnessConfig {
    pub dim: usize,
    /// `"euclidean"` or `"diag:+,+,-"`; numeric entries such as `"diag:1,-1,2"` are also accepted.
    pub metric: String,
    pub trials: usize,
    pub seed: u64,
    pub tol_exact: f64,
    pub tol_fd: f64,
    pub fd_step: f64,
    pub suite: Suite,
}

impl Default for HarnessConfig {
    fn default() -> Self {
        HarnessConfig {
            dim: 3,
            metric: "euclidean".into(),
            trials: 64,
            seed: 1,
            tol_exact: 1e-9,
            tol_fd: 1e-5,
            fd_step: 1e-5,
            suite: Suite::All,
        }
    }
}

impl HarnessConfig {
    /// Checks every field and builds the metric.
    pub fn validate(&self) -> Result<Arc<Metric>, HarnessError> {
        if !(MIN_DIM..=MAX_DIM).contains(&self.dim) {
            return Err(HarnessError::Config(format!(
                "dim must be in {MIN_DIM}..={MAX_DIM}, got {}",
                self.dim
            )));
        }
        if self.trials == 0 {
            return Err(HarnessError::Config("trials must be at least 1".into()));
        }
        for (name, v) in [
            ("tol-exact", self.tol_exact),
            ("tol-fd", self.tol_fd),
            ("fd-step", self.fd_step),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(HarnessError::Config(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        parse_metric(&self.metric, self.dim)
    }
}

/// Parses `"euclidean"` or `"diag:<entries>"` where each entry is `+`, `-` or a nonzero real.
pub fn parse_metric(spec: &str, dim: usize) -> Result<Arc<Metric>, HarnessError> {
    let spec = spec.trim();
    let diag = if spec.eq_ignore_ascii_case("euclidean") {
        vec![1.0; dim]
    } else if let Some(rest) = spec.strip_prefix("diag:") {
        rest.split(',')
            .map(|tok| match tok.trim() {
                "+" => Ok(1.0),
                "-" => Ok(-1.0),
                t => t
                    .parse::<f64>()
                    .map_err(|_| HarnessError::Config(format!("bad metric entry {t:?} in {spec:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?
    } else {
        return Err(HarnessError::Config(format!(
            "metric must be \"euclidean\" or \"diag:+,-,...\", got {spec:?}"
        )));
    };
    if diag.len() != dim {
        return Err(HarnessError::Config(format!(
            "metric {spec:?} has {} entries but dim is {dim}",
            diag.len()
        )));
    }
    Metric::new(diag)
        .map(Arc::new)
        .map_err(|e| HarnessError::Config(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_strings() {
        assert_eq!(parse_metric("euclidean", 3).unwrap().diag(), &[1.0, 1.0, 1.0]);
        assert_eq!(parse_metric("diag:+,+,-", 3).unwrap().diag(), &[1.0, 1.0, -1.0]);
        assert_eq!(parse_metric("diag:2, -0.5", 2).unwrap().diag(), &[2.0, -0.5]);
        assert!(parse_metric("diag:+,+", 3).is_err());
        assert!(parse_metric("diag:+,0", 2).is_err());
        assert!(parse_metric("minkowski", 4).is_err());
    }

    #[test]
    fn config_bounds() {
        assert!(HarnessConfig::default().validate().is_ok());
        for bad in [
            HarnessConfig {
                dim: 7,
                ..Default::default()
            },
            HarnessConfig {
                dim: 1,
                ..Default::default()
            },
            HarnessConfig {
                trials: 0,
                ..Default::default()
            },
            HarnessConfig {
                tol_exact: 0.0,
                ..Default::default()
            },
            HarnessConfig {
                fd_step: f64::NAN,
                ..Default::default()
            },
        ] {
            assert!(matches!(bad.validate(), Err(HarnessError::Config(_))));
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::Paper, Suite::Properties, Suite::Bridge, Suite::All] {
            assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
        }
        assert!("everything".parse::<Suite>().is_err());
    }
}
