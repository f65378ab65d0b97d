//! The exact discrete maps with power-law memory and the classical
//! memoryless maps they generalize.
//!
//! Index convention: a value at index k is the left limit just before the
//! k-th kick, i.e. at t = kT − 0. Delta functions never appear at runtime;
//! only their exact discrete consequences do.

use crate::error::{Error, Result};
use crate::fastsum::{memory_sum, SumStrategy, WeightChannel};
use crate::special_fn::{gamma, KernelTable, MemoryOrder};

/// Caputo initial data K₀^(k) for k = 0..N−1.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialState {
    values: Vec<f64>,
}

impl InitialState {
    pub fn new(values: Vec<f64>, order: MemoryOrder) -> Result<Self> {
        if values.len() != order.initial_value_count() {
            return Err(Error::HistoryLength {
                got: values.len(),
                expected: order.initial_value_count(),
            });
        }
        Ok(Self { values })
    }

    /// Shorthand for the N = 1 case (plain capital stock at t = 0).
    pub fn scalar(k0: f64) -> Self {
        Self { values: vec![k0] }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn capital(&self) -> f64 {
        self.values[0]
    }
}

/// Map parameters: order α, propensity to save s, investment coefficient v,
/// time scale T.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    pub order: MemoryOrder,
    pub saving_rate: f64,
    pub investment_coeff: f64,
    pub step: f64,
}

impl MapParams {
    pub fn new(order: MemoryOrder, saving_rate: f64, investment_coeff: f64, step: f64) -> Result<Self> {
        if !(saving_rate > 0.0 && saving_rate.is_finite()) {
            return Err(Error::Domain(format!("saving rate s={saving_rate} must be > 0")));
        }
        if !(investment_coeff > 0.0 && investment_coeff.is_finite()) {
            return Err(Error::Domain(format!(
                "investment coefficient v={investment_coeff} must be > 0"
            )));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::Domain(format!("step T={step} must be > 0")));
        }
        Ok(Self {
            order,
            saving_rate,
            investment_coeff,
            step,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.order.alpha()
    }

    /// s·T^α/Γ(α), the capital map's forcing coefficient.
    pub fn capital_coeff(&self) -> Result<f64> {
        Ok(self.saving_rate * self.step.powf(self.alpha()) / gamma(self.alpha())?)
    }

    /// T^α/(v·Γ(α)), the output map's forcing coefficient.
    pub fn output_coeff(&self) -> Result<f64> {
        Ok(self.step.powf(self.alpha()) / (self.investment_coeff * gamma(self.alpha())?))
    }

    fn require_first_order(&self) -> Result<()> {
        let alpha = self.alpha();
        if alpha > 1.0 {
            return Err(Error::InvalidOrder {
                alpha,
                reason: "first-order maps require 0 < alpha <= 1",
            });
        }
        Ok(())
    }
}

/// Aligned discrete time series with step T. Values at index k are left
/// limits at t = kT.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub step: f64,
    pub output: Vec<f64>,
    pub investment: Vec<f64>,
    pub capital: Vec<f64>,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.output.len()
    }

    pub fn is_empty(&self) -> bool {
        self.output.is_empty()
    }
}

/// General-order map: the m-th derivative channel of the capital stock after
/// n kicks, for non-integer α with N−1 < α < N.
///
/// K_{n+1}^(m) = Σ_{k=0}^{N−m−1} (T^k/k!)·K₀^(k+m)·(n+1)^k
///            + (s·T^(α−m)/Γ(α−m))·Σ_{k=1}^{n} (n+1−k)^(α−1−m)·Y_k
pub fn general_map_step(
    params: &MapParams,
    init: &InitialState,
    y_history: &[f64],
    m: usize,
    n: usize,
) -> Result<f64> {
    params.order.require_non_integer()?;
    let n_bracket = params.order.n_bracket();
    if m >= n_bracket {
        return Err(Error::ChannelOutOfRange { m, n_bracket });
    }
    if init.values().len() != n_bracket {
        return Err(Error::HistoryLength {
            got: init.values().len(),
            expected: n_bracket,
        });
    }
    if y_history.len() != n {
        return Err(Error::HistoryLength {
            got: y_history.len(),
            expected: n,
        });
    }
    let alpha = params.alpha();
    let t = params.step;

    let mut poly = 0.0;
    let mut factorial = 1.0;
    let np1 = (n + 1) as f64;
    for k in 0..n_bracket - m {
        if k > 0 {
            factorial *= k as f64;
        }
        poly += t.powi(k as i32) / factorial * init.values()[k + m] * np1.powi(k as i32);
    }

    let exponent = alpha - 1.0 - m as f64;
    let mut memory = 0.0f64;
    let mut comp = 0.0f64;
    for k in 1..=n {
        let lag = (n + 1 - k) as f64;
        let term = lag.powf(exponent) * y_history[k - 1];
        let s = memory + term;
        if memory.abs() >= term.abs() {
            comp += (memory - s) + term;
        } else {
            comp += (term - s) + memory;
        }
        memory = s;
    }
    memory += comp;

    let coeff = params.saving_rate * t.powf(alpha - m as f64) / gamma(alpha - m as f64)?;
    Ok(poly + coeff * memory)
}

/// Cumulative first-order capital map (0 < α ≤ 1):
/// K_{n+1} = K₀ + (s·T^α/Γ(α))·Σ_{k=1}^{n} (n+1−k)^(α−1)·Y_k.
pub fn capital_map_cumulative(
    params: &MapParams,
    k0: f64,
    y_history: &[f64],
    table: &KernelTable,
    strategy: SumStrategy,
) -> Result<f64> {
    params.require_first_order()?;
    let n = y_history.len();
    let sum = memory_sum(table, WeightChannel::Power, y_history, n, strategy)?;
    Ok(k0 + params.capital_coeff()? * sum.value)
}

/// Incremental first-order capital map (0 < α ≤ 1):
/// K_{n+1} = K_n + (s·T^α/Γ(α))·(Y_n + Σ_{k=1}^{n−1} V_α(n−k)·Y_k).
pub fn capital_map_incremental(
    params: &MapParams,
    k_n: f64,
    y_history: &[f64],
    table: &KernelTable,
    strategy: SumStrategy,
) -> Result<f64> {
    params.require_first_order()?;
    let n = y_history.len();
    if n < 1 {
        return Err(Error::HistoryLength { got: 0, expected: 1 });
    }
    let v_sum = memory_sum(table, WeightChannel::KernelV, y_history, n - 1, strategy)?;
    Ok(k_n + params.capital_coeff()? * (y_history[n - 1] + v_sum.value))
}

/// Incremental first-order output map (0 < α ≤ 1):
/// Y_{n+1} = Y_n + (T^α/(v·Γ(α)))·(I_n + Σ_{k=1}^{n−1} V_α(n−k)·I_k).
pub fn output_map_incremental(
    params: &MapParams,
    y_n: f64,
    i_history: &[f64],
    table: &KernelTable,
    strategy: SumStrategy,
) -> Result<f64> {
    params.require_first_order()?;
    let n = i_history.len();
    if n < 1 {
        return Err(Error::HistoryLength { got: 0, expected: 1 });
    }
    let v_sum = memory_sum(table, WeightChannel::KernelV, i_history, n - 1, strategy)?;
    Ok(y_n + params.output_coeff()? * (i_history[n - 1] + v_sum.value))
}

/// Classical memoryless saving step: K_{n+1} = K_n + s·T·Y_n.
pub fn classical_capital_step(params: &MapParams, k_n: f64, y_n: f64) -> f64 {
    k_n + params.saving_rate * params.step * y_n
}

/// Classical memoryless capacity step: Y_{n+1} = Y_n + (T/v)·I_n.
pub fn classical_output_step(params: &MapParams, y_n: f64, i_n: f64) -> f64 {
    y_n + params.step / params.investment_coeff * i_n
}

/// The α = 0 multiplier limit: I = v·Y.
pub fn multiplier_limit(v: f64, y: f64) -> f64 {
    v * y
}
