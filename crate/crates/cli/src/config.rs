//! Flat key = value scenario configuration.
//!
//! One pair per line, `#` starts a comment, unknown keys are rejected with
//! their line number. Relative `series_file` paths resolve against the
//! config file's directory.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use memkick_core::{Closure, InitialState, MapParams, MemoryOrder, Scenario, SumStrategy};

#[derive(Debug)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "config error at line {line}: {}", self.message),
            None => write!(f, "config error: {}", self.message),
        }
    }
}

fn err(line: Option<usize>, message: impl Into<String>) -> ConfigError {
    ConfigError {
        line,
        message: message.into(),
    }
}

const KNOWN_KEYS: &[&str] = &[
    "alpha", "T", "s", "v", "closure", "a", "b", "horizon", "y0", "k0", "i0", "series_file",
    "strategy", "out",
];

/// Raw parsed pairs with their line numbers.
struct RawConfig {
    pairs: BTreeMap<&'static str, (String, usize)>,
}

impl RawConfig {
    fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut pairs: BTreeMap<&'static str, (String, usize)> = BTreeMap::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(Some(line_no), format!("expected key = value, got {line:?}")))?;
            let key = key.trim();
            let value = value.trim().to_string();
            let known = KNOWN_KEYS
                .iter()
                .find(|&&k| k == key)
                .ok_or_else(|| err(Some(line_no), format!("unknown key {key:?}")))?;
            if pairs.insert(known, (value, line_no)).is_some() {
                return Err(err(Some(line_no), format!("duplicate key {key:?}")));
            }
        }
        Ok(Self { pairs })
    }

    fn required(&self, key: &str) -> Result<(&str, usize), ConfigError> {
        self.pairs
            .get(key)
            .map(|(v, l)| (v.as_str(), *l))
            .ok_or_else(|| err(None, format!("missing required key {key:?}")))
    }

    fn optional(&self, key: &str) -> Option<(&str, usize)> {
        self.pairs.get(key).map(|(v, l)| (v.as_str(), *l))
    }

    fn number(&self, key: &str) -> Result<f64, ConfigError> {
        let (v, l) = self.required(key)?;
        v.parse()
            .map_err(|_| err(Some(l), format!("key {key:?}: not a number: {v:?}")))
    }
}

/// A fully validated simulation request.
#[derive(Debug)]
pub struct SimulationConfig {
    pub scenario: Scenario,
    pub out: PathBuf,
}

pub fn load(config_path: &Path, max_horizon: usize) -> Result<SimulationConfig, ConfigError> {
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| err(None, format!("cannot read {}: {e}", config_path.display())))?;
    from_text(&text, config_path.parent().unwrap_or(Path::new(".")), max_horizon)
}

pub fn from_text(
    text: &str,
    base_dir: &Path,
    max_horizon: usize,
) -> Result<SimulationConfig, ConfigError> {
    let raw = RawConfig::parse(text)?;

    let alpha = raw.number("alpha")?;
    let order = MemoryOrder::new(alpha)
        .map_err(|e| err(raw.optional("alpha").map(|(_, l)| l), e.to_string()))?;
    let step = raw.number("T")?;
    let s = raw.number("s")?;
    let v = raw.number("v")?;
    let params = MapParams::new(order, s, v, step).map_err(|e| err(None, e.to_string()))?;

    let (horizon_str, horizon_line) = raw.required("horizon")?;
    let horizon: usize = horizon_str
        .parse()
        .map_err(|_| err(Some(horizon_line), format!("horizon: not a non-negative integer: {horizon_str:?}")))?;

    let y0 = raw.number("y0")?;
    let (k0_str, k0_line) = raw.required("k0")?;
    let k0_values: Vec<f64> = k0_str
        .split(',')
        .map(|p| p.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| err(Some(k0_line), format!("k0: not a comma-separated number list: {k0_str:?}")))?;
    let k0 = InitialState::new(k0_values, order).map_err(|e| err(Some(k0_line), e.to_string()))?;

    let (closure_str, closure_line) = raw.required("closure")?;
    let series = |raw: &RawConfig| -> Result<Vec<f64>, ConfigError> {
        let (path_str, line) = raw.required("series_file").map_err(|_| {
            err(
                Some(closure_line),
                format!("closure {closure_str:?} requires series_file"),
            )
        })?;
        let path = base_dir.join(path_str);
        let text = std::fs::read_to_string(&path)
            .map_err(|e| err(Some(line), format!("cannot read series file {}: {e}", path.display())))?;
        let mut values = Vec::new();
        for (idx, l) in text.lines().enumerate() {
            let l = l.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            values.push(l.parse::<f64>().map_err(|_| {
                err(Some(line), format!("series file {}: bad value {l:?} at line {}", path.display(), idx + 1))
            })?);
        }
        Ok(values)
    };
    let closure = match closure_str {
        "harrod_domar" => Closure::HarrodDomar,
        "matthews" => {
            let a = raw
                .number("a")
                .map_err(|_| err(Some(closure_line), "closure \"matthews\" requires numeric keys a and b"))?;
            let b = raw
                .number("b")
                .map_err(|_| err(Some(closure_line), "closure \"matthews\" requires numeric keys a and b"))?;
            Closure::Matthews { a, b }
        }
        "exogenous_investment" => Closure::ExogenousInvestment(series(&raw)?),
        "exogenous_output" => Closure::ExogenousOutput(series(&raw)?),
        other => {
            return Err(err(
                Some(closure_line),
                format!("unknown closure {other:?} (expected exogenous_investment | exogenous_output | harrod_domar | matthews)"),
            ))
        }
    };

    let i0 = match raw.optional("i0") {
        Some((v, l)) => v
            .parse()
            .map_err(|_| err(Some(l), format!("i0: not a number: {v:?}")))?,
        None => 0.0,
    };

    let strategy = match raw.optional("strategy") {
        Some((v, l)) => v
            .parse::<SumStrategy>()
            .map_err(|e| err(Some(l), format!("strategy: {e}")))?,
        None => SumStrategy::DirectCompensated,
    };

    let (out, _) = raw.required("out")?;
    let out = base_dir.join(out);

    let mut scenario = Scenario::new(params, closure, horizon, y0, k0);
    scenario.i0 = i0;
    scenario.strategy = strategy;
    scenario.max_horizon = max_horizon;

    Ok(SimulationConfig { scenario, out })
}
