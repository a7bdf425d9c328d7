//! Run configuration.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub const DEFAULT_MAX_ORDER: usize = 24;

/// Order limit for exhaustive subgroup work; `SPANMACK_MAX_ORDER` overrides the default.
pub fn max_order() -> usize {
    static LIMIT: OnceLock<usize> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("SPANMACK_MAX_ORDER").ok().and_then(|v| v.trim().parse().ok()).filter(|&v| v > 0).unwrap_or(DEFAULT_MAX_ORDER)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientMode {
    Integer,
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub max_group_order: usize,
    pub window_max_group_order: usize,
    pub window_max_set_size: usize,
    pub window_max_depth: usize,
    pub samples: usize,
    pub seed: u64,
    pub coefficients: CoefficientMode,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_group_order: max_order(),
            window_max_group_order: 6,
            window_max_set_size: 6,
            window_max_depth: 1,
            samples: 1,
            seed: 0,
            coefficients: CoefficientMode::Rational,
        }
    }
}
