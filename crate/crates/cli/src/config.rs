use thresholds_core::Budget;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct Config {
    pub e_max: Option<u32>,
    pub m_max: Option<u64>,
    pub budget: Budget,
    pub grid: Option<u64>,
    pub format: Format,
    pub strict: bool,
    pub seed: u64,
}

/// `THRESHOLDS_BUDGET` is either one integer applied to every cap or a
/// comma list such as `terms=100000,pairs=5000,products=20000`.
pub fn parse_budget(text: &str) -> Result<Budget, CliError> {
    let bad = |m: String| CliError::Input(format!("THRESHOLDS_BUDGET: {m}"));
    let positive = |s: &str| -> Result<u64, CliError> {
        match s.trim().parse::<u64>() {
            Ok(0) => Err(bad("caps must be positive".into())),
            Ok(v) => Ok(v),
            Err(_) => Err(bad(format!("`{}` is not a positive integer", s.trim()))),
        }
    };
    let text = text.trim();
    if !text.contains('=') {
        return Ok(Budget::uniform(positive(text)?));
    }
    let mut budget = Budget::default();
    for item in text.split(',') {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, found `{item}`")))?;
        let value = positive(value)?;
        match key.trim() {
            "terms" => budget.max_terms = value,
            "pairs" => budget.max_pairs = value,
            "products" => budget.max_products = value,
            other => return Err(bad(format!("unknown cap `{other}`"))),
        }
    }
    Ok(budget)
}
