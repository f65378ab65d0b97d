//! Scenario closures that turn the open-loop maps into simulable models.
//!
//! Per-period update order (fixed contract): (1) determine I_n from the
//! closure using values dated n; (2) advance Y_{n+1} through the incremental
//! output map; (3) advance K_{n+1} through the incremental capital map. The
//! scenario's forcing starts at period 0, so the memory sums at period n run
//! over k = 0..n−1.
//!
//! Capital accumulation per closure:
//! * exogenous and Harrod-Domar closures drive capital with s·Y (the
//!   saving equation);
//! * the Matthews closure drives capital with the investment itself,
//!   K_{n+1} = K_n + (T^α/Γ(α))·(I_n + Σ V·I_k), which at α = 1, T = 1
//!   reduces to K_{t+1} = K_t + I_t and hence to the acceleration equation
//!   I_t = a·(Y_t − Y_{t−1}) in the a = v, b = 1 particular case. The
//!   memory-endowed Matthews closure (α < 1) is an extension beyond the
//!   classical model.

use crate::error::{Error, Result};
use crate::fastsum::{memory_sum, SumStrategy, WeightChannel};
use crate::memory_maps::{InitialState, MapParams, Trajectory};
use crate::special_fn::{gamma, KernelTable, DEFAULT_MAX_HORIZON};

/// Default channel magnitude bound; unstable parameterizations fail loudly.
pub const DEFAULT_DIVERGENCE_BOUND: f64 = 1e12;

#[derive(Debug, Clone, PartialEq)]
pub enum Closure {
    /// Investment series given exogenously (needs horizon + 1 values).
    ExogenousInvestment(Vec<f64>),
    /// Output series given exogenously (needs horizon + 1 values);
    /// investment follows the saving identity I_n = s·Y_n.
    ExogenousOutput(Vec<f64>),
    /// Saving-investment identity I_n = s·Y_n.
    HarrodDomar,
    /// Capital stock adjustment I_n = a·Y_n − b·K_n.
    Matthews { a: f64, b: f64 },
}

impl Closure {
    pub fn name(&self) -> &'static str {
        match self {
            Closure::ExogenousInvestment(_) => "exogenous_investment",
            Closure::ExogenousOutput(_) => "exogenous_output",
            Closure::HarrodDomar => "harrod_domar",
            Closure::Matthews { .. } => "matthews",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub params: MapParams,
    pub closure: Closure,
    /// Number of periods to advance; channels get horizon + 1 entries.
    pub horizon: usize,
    pub y0: f64,
    pub k0: InitialState,
    /// Initial investment, used where the closure needs a period-0 value
    /// (the lagged timing variant).
    pub i0: f64,
    pub strategy: SumStrategy,
    /// Alternative timing: the closure reads values dated n−1 instead of n.
    pub lagged_closure: bool,
    pub divergence_bound: f64,
    pub max_horizon: usize,
}

impl Scenario {
    pub fn new(params: MapParams, closure: Closure, horizon: usize, y0: f64, k0: InitialState) -> Self {
        Self {
            params,
            closure,
            horizon,
            y0,
            k0,
            i0: 0.0,
            strategy: SumStrategy::DirectCompensated,
            lagged_closure: false,
            divergence_bound: DEFAULT_DIVERGENCE_BOUND,
            max_horizon: DEFAULT_MAX_HORIZON,
        }
    }

    fn validate(&self) -> Result<()> {
        let alpha = self.params.alpha();
        if alpha > 1.0 {
            return Err(Error::InvalidScenario(format!(
                "scenario maps require 0 < alpha <= 1, got {alpha}"
            )));
        }
        if self.horizon + 1 > self.max_horizon {
            return Err(Error::HorizonExceeded {
                requested: self.horizon,
                cap: self.max_horizon,
            });
        }
        match &self.closure {
            Closure::Matthews { a, b } => {
                if !(*a > 0.0 && *b > 0.0) {
                    return Err(Error::InvalidScenario(format!(
                        "matthews closure requires a > 0 and b > 0, got a={a}, b={b}"
                    )));
                }
            }
            Closure::ExogenousInvestment(series) | Closure::ExogenousOutput(series) => {
                if series.len() < self.horizon + 1 {
                    return Err(Error::InvalidScenario(format!(
                        "exogenous series has {} values, need horizon + 1 = {}",
                        series.len(),
                        self.horizon + 1
                    )));
                }
            }
            Closure::HarrodDomar => {}
        }
        Ok(())
    }
}

/// Classical warranted growth rate s·T/v (the per-period growth factor
/// minus one).
pub fn warranted_growth_rate(s: f64, v: f64, t: f64) -> f64 {
    s * t / v
}

fn check_bound(value: f64, channel: &'static str, period: usize, bound: f64) -> Result<()> {
    if !value.is_finite() || value.abs() > bound {
        return Err(Error::Divergence {
            period,
            channel,
            value,
            bound,
        });
    }
    Ok(())
}

/// Run a scenario, producing Y, I, K channels of length horizon + 1.
pub fn run_scenario(scenario: &Scenario) -> Result<Trajectory> {
    scenario.validate()?;
    let params = &scenario.params;
    let alpha = params.alpha();
    let horizon = scenario.horizon;
    let table = KernelTable::with_cap(params.order, horizon + 1, scenario.max_horizon)?;

    let output_coeff = params.output_coeff()?;
    let (capital_coeff, capital_forcing_is_investment) = match &scenario.closure {
        Closure::Matthews { .. } => (params.step.powf(alpha) / gamma(alpha)?, true),
        _ => (params.capital_coeff()?, false),
    };

    let mut output = Vec::with_capacity(horizon + 1);
    let mut investment = Vec::with_capacity(horizon + 1);
    let mut capital = Vec::with_capacity(horizon + 1);
    output.push(scenario.y0);
    capital.push(scenario.k0.capital());

    let closure_value = |n: usize, y: &[f64], k: &[f64], i0: f64| -> f64 {
        let (yd, kd) = if scenario.lagged_closure && n >= 1 {
            (y[n - 1], k[n - 1])
        } else {
            (y[n], k[n])
        };
        match &scenario.closure {
            Closure::ExogenousInvestment(series) => series[n],
            Closure::ExogenousOutput(series) => params.saving_rate * series[n],
            Closure::HarrodDomar => params.saving_rate * yd,
            Closure::Matthews { a, b } => {
                if scenario.lagged_closure && n == 0 {
                    i0
                } else {
                    a * yd - b * kd
                }
            }
        }
    };

    for n in 0..=horizon {
        let i_n = closure_value(n, &output, &capital, scenario.i0);
        check_bound(i_n, "I", n, scenario.divergence_bound)?;
        investment.push(i_n);
        if n == horizon {
            break;
        }

        // advance output: exogenous output copies the series, otherwise the
        // incremental map driven by I_0..I_n
        let y_next = match &scenario.closure {
            Closure::ExogenousOutput(series) => series[n + 1],
            _ => {
                let v_sum =
                    memory_sum(&table, WeightChannel::KernelV, &investment, n, scenario.strategy)?;
                output[n] + output_coeff * (investment[n] + v_sum.value)
            }
        };
        check_bound(y_next, "Y", n + 1, scenario.divergence_bound)?;
        output.push(y_next);

        // advance capital: forcing is s·Y (saving) or I (Matthews)
        let k_next = if capital_forcing_is_investment {
            let v_sum =
                memory_sum(&table, WeightChannel::KernelV, &investment, n, scenario.strategy)?;
            capital[n] + capital_coeff * (investment[n] + v_sum.value)
        } else {
            let v_sum =
                memory_sum(&table, WeightChannel::KernelV, &output, n, scenario.strategy)?;
            capital[n] + capital_coeff * (output[n] + v_sum.value)
        };
        check_bound(k_next, "K", n + 1, scenario.divergence_bound)?;
        capital.push(k_next);
    }

    Ok(Trajectory {
        step: params.step,
        output,
        investment,
        capital,
    })
}

/// Run the α = 1 Matthews closure with b = 1, T = 1 against an exogenous
/// output series and return max_t |I_t − a·(Y_t − Y_{t−1})| over t >= 1.
pub fn classical_matthews_check(a: f64, horizon: usize, y_series: &[f64]) -> Result<f64> {
    if y_series.len() < horizon + 1 {
        return Err(Error::HistoryLength {
            got: y_series.len(),
            expected: horizon + 1,
        });
    }
    // Capital accumulates investment (b = 1 capital stock adjustment):
    // I_t = a·Y_t − K_t, K_{t+1} = K_t + I_t.
    let mut k = 0.0;
    let mut max_residual = 0.0f64;
    for t in 0..=horizon {
        let i_t = a * y_series[t] - k;
        if t >= 1 {
            let residual = (i_t - a * (y_series[t] - y_series[t - 1])).abs();
            max_residual = max_residual.max(residual);
        }
        k += i_t;
    }
    Ok(max_residual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special_fn::MemoryOrder;

    fn params(alpha: f64, s: f64, v: f64, t: f64) -> MapParams {
        MapParams::new(MemoryOrder::new(alpha).unwrap(), s, v, t).unwrap()
    }

    #[test]
    fn harrod_domar_classical_geometric() {
        let p = params(1.0, 0.2, 2.0, 1.0);
        let scenario = Scenario::new(p, Closure::HarrodDomar, 100, 100.0, InitialState::scalar(10.0));
        let traj = run_scenario(&scenario).unwrap();
        let ratio = 1.0 + warranted_growth_rate(0.2, 2.0, 1.0);
        assert!((ratio - 1.1).abs() < 1e-15);
        assert!((traj.output[5] - 161.051).abs() <= 1e-9);
        for n in 0..100 {
            let r = traj.output[n + 1] / traj.output[n];
            assert!((r - ratio).abs() <= 1e-9);
        }
    }

    #[test]
    fn zero_exogenous_investment_keeps_output_constant() {
        let p = params(0.5, 0.2, 2.0, 1.0);
        let scenario = Scenario::new(
            p,
            Closure::ExogenousInvestment(vec![0.0; 21]),
            20,
            42.0,
            InitialState::scalar(0.0),
        );
        let traj = run_scenario(&scenario).unwrap();
        assert!(traj.output.iter().all(|&y| y == 42.0));
        assert!(traj.investment.iter().all(|&i| i == 0.0));
    }

    #[test]
    fn matthews_particular_case_acceleration() {
        // a = v, b = 1, T = 1, alpha = 1: I_t = a·(Y_t − Y_{t−1}).
        let a = 2.0;
        let p = params(1.0, 0.2, a, 1.0);
        let scenario = Scenario::new(
            p,
            Closure::Matthews { a, b: 1.0 },
            200,
            100.0,
            InitialState::scalar(50.0),
        );
        let traj = run_scenario(&scenario).unwrap();
        for t in 1..=200 {
            let residual =
                (traj.investment[t] - a * (traj.output[t] - traj.output[t - 1])).abs();
            assert!(residual <= 1e-9, "t={t}: residual {residual:e}");
        }
    }

    #[test]
    fn classical_matthews_check_examples() {
        // constant series: no output change, no induced investment drift
        let r = classical_matthews_check(1.5, 50, &[7.0; 51]).unwrap();
        assert!(r <= 1e-12);
        // ramp with a=2: I_t = 2 for all t >= 1
        let ramp: Vec<f64> = (1..=101).map(|i| i as f64).collect();
        let r = classical_matthews_check(2.0, 100, &ramp).unwrap();
        assert!(r <= 1e-9);
        // pseudo random walk
        let mut y = vec![10.0];
        let mut state = 12345u64;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let step = ((state >> 33) as f64 / (1u64 << 31) as f64) - 0.5;
            y.push(y.last().unwrap() + step);
        }
        let r = classical_matthews_check(0.5, 100, &y).unwrap();
        assert!(r <= 1e-9);
    }

    #[test]
    fn memory_slows_accumulation() {
        for alpha in [0.3, 0.5, 0.9] {
            for t in [1.0, 2.0] {
                let pm = params(alpha, 0.2, 2.0, t);
                let p1 = params(1.0, 0.2, 2.0, t);
                let sm = Scenario::new(pm, Closure::HarrodDomar, 50, 100.0, InitialState::scalar(10.0));
                let s1 = Scenario::new(p1, Closure::HarrodDomar, 50, 100.0, InitialState::scalar(10.0));
                let tm = run_scenario(&sm).unwrap();
                let t1 = run_scenario(&s1).unwrap();
                for n in 0..=50 {
                    assert!(
                        tm.capital[n] <= t1.capital[n] + 1e-12,
                        "alpha={alpha} T={t} n={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn divergence_fails_loudly() {
        let p = params(1.0, 0.9, 0.001, 1.0); // huge sT/v
        let mut scenario =
            Scenario::new(p, Closure::HarrodDomar, 100, 100.0, InitialState::scalar(0.0));
        scenario.divergence_bound = 1e6;
        let err = run_scenario(&scenario).unwrap_err();
        assert!(matches!(err, Error::Divergence { .. }));
    }

    #[test]
    fn horizon_zero_yields_single_period() {
        let p = params(0.5, 0.2, 2.0, 1.0);
        let scenario = Scenario::new(p, Closure::HarrodDomar, 0, 9.0, InitialState::scalar(1.0));
        let traj = run_scenario(&scenario).unwrap();
        assert_eq!(traj.len(), 1);
        assert_eq!(traj.output[0], 9.0);
        assert_eq!(traj.investment[0], 0.2 * 9.0);
    }

    #[test]
    fn exogenous_series_too_short() {
        let p = params(0.5, 0.2, 2.0, 1.0);
        let scenario = Scenario::new(
            p,
            Closure::ExogenousInvestment(vec![1.0; 5]),
            10,
            1.0,
            InitialState::scalar(0.0),
        );
        assert!(matches!(run_scenario(&scenario), Err(Error::InvalidScenario(_))));
    }

    #[test]
    fn alpha_above_one_rejected() {
        let p = params(1.5, 0.2, 2.0, 1.0);
        let k0 = InitialState::new(vec![0.0, 0.0], p.order).unwrap();
        let scenario = Scenario::new(p, Closure::HarrodDomar, 10, 1.0, k0);
        assert!(matches!(run_scenario(&scenario), Err(Error::InvalidScenario(_))));
    }

    #[test]
    fn scale_invariance() {
        let p = params(0.7, 0.25, 2.0, 1.0);
        let lambda = 3.25;
        let base = Scenario::new(
            p,
            Closure::Matthews { a: 1.5, b: 0.4 },
            60,
            100.0,
            InitialState::scalar(40.0),
        );
        let mut scaled = base.clone();
        scaled.y0 *= lambda;
        scaled.k0 = InitialState::scalar(40.0 * lambda);
        let tb = run_scenario(&base).unwrap();
        let ts = run_scenario(&scaled).unwrap();
        for n in 0..=60 {
            for (b, s) in [
                (tb.output[n], ts.output[n]),
                (tb.investment[n], ts.investment[n]),
                (tb.capital[n], ts.capital[n]),
            ] {
                assert!((s - lambda * b).abs() <= 1e-9 * (lambda * b).abs().max(1.0));
            }
        }
    }

    #[test]
    fn warranted_growth_values() {
        assert_eq!(warranted_growth_rate(0.2, 2.0, 1.0), 0.1);
        assert_eq!(warranted_growth_rate(0.0, 5.0, 1.0), 0.0);
        assert!((warranted_growth_rate(0.3, 3.0, 1.0) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn lagged_timing_variant() {
        let p = params(1.0, 0.2, 2.0, 1.0);
        let mut scenario = Scenario::new(
            p,
            Closure::Matthews { a: 2.0, b: 1.0 },
            10,
            100.0,
            InitialState::scalar(50.0),
        );
        scenario.lagged_closure = true;
        scenario.i0 = 5.0;
        let traj = run_scenario(&scenario).unwrap();
        assert_eq!(traj.investment[0], 5.0);
        // I_1 reads period-0 values
        assert_eq!(traj.investment[1], 2.0 * traj.output[0] - traj.capital[0]);
    }
}
