//! `key = value` override files for search and training settings.
//!
//! Blank lines and lines starting with `#` are ignored. Recognised keys:
//! `k1 k2 max_h msd iterations time_ms evaluator weighted_sum_w seed` for
//! search and `alpha gamma games epsilon train_seed` for training.

use crate::adp::TdConfig;
use crate::search::SearchConfig;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected key = value")]
    Syntax { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: bad value for {key}: {value:?}")]
    BadValue {
        line: usize,
        key: String,
        value: String,
    },
}

/// Applies every `key = value` line of `text` to the two configs.
pub fn apply_overrides(text: &str, search: &mut SearchConfig, td: &mut TdConfig) -> Result<(), ConfigError> {
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (key, value) = l.split_once('=').ok_or(ConfigError::Syntax { line })?;
        let (key, value) = (key.trim(), value.trim());
        let bad = || ConfigError::BadValue {
            line,
            key: key.to_string(),
            value: value.to_string(),
        };
        let f = || value.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(bad);
        let u = || value.parse::<u64>().map_err(|_| bad());
        // "none" or 0 clears a budget
        let budget = || -> Result<Option<u64>, ConfigError> {
            if value.eq_ignore_ascii_case("none") {
                return Ok(None);
            }
            Ok(Some(u()?).filter(|&v| v > 0))
        };
        match key {
            "k1" => search.k1 = f()?,
            "k2" => search.k2 = f()?,
            "max_h" => search.max_h = f()?,
            "msd" => search.msd = u()? as usize,
            "iterations" => search.iteration_budget = budget()?,
            "time_ms" => search.time_budget_ms = budget()?,
            "evaluator" => search.evaluator = value.parse().map_err(|_| bad())?,
            "weighted_sum_w" => search.weighted_sum_w = f()?,
            "seed" => search.seed = u()?,
            "alpha" => td.alpha = f()?,
            "gamma" => td.gamma = f()?,
            "games" => td.games = u()? as usize,
            "epsilon" => td.epsilon = f()?,
            "train_seed" => td.seed = u()?,
            _ => {
                return Err(ConfigError::UnknownKey {
                    line,
                    key: key.to_string(),
                })
            }
        }
    }
    Ok(())
}
