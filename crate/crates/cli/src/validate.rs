//! Cross-module validation suites: α = 1 reductions, cumulative vs
//! incremental map equivalence, oracle identities, and strategy agreement.
//! Every check reports its measured residual against a pinned tolerance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use memkick_core::economy::classical_matthews_check;
use memkick_core::fastsum::{self, SumStrategy, WeightChannel};
use memkick_core::fractional_oracle::{caputo_derivative, inverse_property_check, rl_integral};
use memkick_core::memory_maps::{
    capital_map_cumulative, capital_map_incremental, classical_capital_step,
    classical_output_step, output_map_incremental,
};
use memkick_core::special_fn::{gamma, kernel_v, power_weight, KernelTable, MemoryOrder};
use memkick_core::{Closure, InitialState, MapParams, SampledFunction, Scenario};

const SEED: u64 = 0x76616c6964;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    Quick,
    Full,
}

pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.residual.is_finite() && self.residual <= self.tolerance
    }
}

fn params(alpha: f64, s: f64, v: f64, t: f64) -> MapParams {
    MapParams::new(MemoryOrder::new(alpha).unwrap(), s, v, t).unwrap()
}

fn gamma_recurrence() -> Check {
    let mut worst = 0.0f64;
    let mut x = 0.5;
    while x <= 20.0 {
        let lhs = gamma(x + 1.0).unwrap();
        let rhs = x * gamma(x).unwrap();
        worst = worst.max(((lhs - rhs) / rhs).abs());
        x += 0.37;
    }
    Check {
        name: "gamma recurrence Gamma(x+1) = x*Gamma(x)",
        residual: worst,
        tolerance: 1e-12,
    }
}

fn kernel_telescoping() -> Check {
    let mut worst = 0.0f64;
    for alpha in [0.2, 0.5, 0.8] {
        let m = 1000usize;
        let sum: f64 = (1..=m).map(|z| kernel_v(alpha, z).abs()).sum();
        let closed = 1.0 - power_weight(alpha, m + 1);
        worst = worst.max(((sum - closed) / closed).abs());
    }
    Check {
        name: "kernel telescoping sum |V(z)| = 1 - (M+1)^(a-1)",
        residual: worst,
        tolerance: 1e-12,
    }
}

fn classical_reduction(level: Level) -> Check {
    let steps = match level {
        Level::Quick => 200,
        Level::Full => 1000,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..5 {
        let p = params(
            1.0,
            rng.gen_range(0.05..0.95),
            rng.gen_range(0.5..5.0),
            rng.gen_range(0.5..2.0),
        );
        let table = KernelTable::new(p.order, steps + 1).unwrap();
        let series: Vec<f64> = (0..steps).map(|_| rng.gen_range(-10.0..10.0)).collect();
        let mut k = rng.gen_range(-5.0..5.0);
        let mut y = rng.gen_range(-5.0..5.0);
        for n in 1..=steps {
            let k_mem = capital_map_incremental(&p, k, &series[..n], &table, SumStrategy::DirectCompensated).unwrap();
            let k_cls = classical_capital_step(&p, k, series[n - 1]);
            let y_mem = output_map_incremental(&p, y, &series[..n], &table, SumStrategy::DirectCompensated).unwrap();
            let y_cls = classical_output_step(&p, y, series[n - 1]);
            worst = worst.max((k_mem - k_cls).abs() / k_cls.abs().max(1.0));
            worst = worst.max((y_mem - y_cls).abs() / y_cls.abs().max(1.0));
            k = k_mem;
            y = y_mem;
        }
    }
    Check {
        name: "alpha=1 reduction of memory maps to classical steps",
        residual: worst,
        tolerance: 1e-12,
    }
}

fn cumulative_incremental(level: Level) -> Check {
    let (steps, alphas): (usize, &[f64]) = match level {
        Level::Quick => (2000, &[0.5]),
        Level::Full => (10_000, &[0.1, 0.5, 0.9]),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 1);
    let mut worst = 0.0f64;
    for &alpha in alphas {
        let p = params(alpha, 0.2, 2.0, 1.0);
        let table = KernelTable::new(p.order, steps + 1).unwrap();
        let series: Vec<f64> = (0..steps).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let k0 = 1.0;
        let mut k_inc = k0;
        let prefix = fastsum::trajectory_sums(
            &table,
            WeightChannel::Power,
            &series,
            steps,
            SumStrategy::DirectCompensated,
        )
        .unwrap();
        let coeff = p.capital_coeff().unwrap();
        for n in 1..=steps {
            k_inc = capital_map_incremental(&p, k_inc, &series[..n], &table, SumStrategy::DirectCompensated).unwrap();
            let k_cum = k0 + coeff * prefix[n - 1];
            worst = worst.max((k_inc - k_cum).abs() / k_cum.abs().max(1.0));
        }
    }
    Check {
        name: "cumulative vs incremental capital map trajectories",
        residual: worst,
        tolerance: 1e-10,
    }
}

fn general_map_consistency() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut worst = 0.0f64;
    for &alpha in &[0.3, 0.7] {
        let p = params(alpha, 0.25, 2.0, 0.8);
        let table = KernelTable::new(p.order, 128).unwrap();
        let k0 = rng.gen_range(-2.0..2.0);
        let init = InitialState::scalar(k0);
        let series: Vec<f64> = (0..100).map(|_| rng.gen_range(-3.0..3.0)).collect();
        for n in 0..=100 {
            let g = memkick_core::memory_maps::general_map_step(&p, &init, &series[..n], 0, n).unwrap();
            let c = capital_map_cumulative(&p, k0, &series[..n], &table, SumStrategy::DirectCompensated).unwrap();
            worst = worst.max((g - c).abs() / c.abs().max(1.0));
        }
    }
    Check {
        name: "general-order map (m=0, N=1) vs cumulative map",
        residual: worst,
        tolerance: 1e-12,
    }
}

fn caputo_power_law(level: Level) -> Check {
    let alphas: &[f64] = match level {
        Level::Quick => &[0.5],
        Level::Full => &[0.3, 0.5, 0.8],
    };
    let mut worst = 0.0f64;
    for beta in [1usize, 2, 3] {
        let f = SampledFunction::power(beta).unwrap();
        for &alpha in alphas {
            let order = MemoryOrder::new(alpha).unwrap();
            for t in [1.0, 2.0] {
                let got = caputo_derivative(&f, &order, t).unwrap();
                let b = beta as f64;
                let want = gamma(b + 1.0).unwrap() / gamma(b - alpha + 1.0).unwrap() * t.powf(b - alpha);
                worst = worst.max(((got - want) / want).abs());
            }
        }
    }
    Check {
        name: "Caputo derivative of t^beta vs closed form",
        residual: worst,
        tolerance: 1e-6,
    }
}

fn rl_constant() -> Check {
    let one = SampledFunction::constant(1.0);
    let got = rl_integral(&one, 0.5, 1.0).unwrap();
    let want = 1.1283791670955125739;
    Check {
        name: "RL integral of 1 at alpha=0.5 vs 2/sqrt(pi)",
        residual: ((got - want) / want).abs(),
        tolerance: 1e-6,
    }
}

fn lemma_inverse_property() -> Check {
    let mut worst = 0.0f64;
    let quad = SampledFunction::power(2).unwrap();
    worst = worst.max(
        inverse_property_check(&quad, &MemoryOrder::new(0.5).unwrap(), 1.0)
            .unwrap()
            .abs(),
    );
    let lin = SampledFunction::power(1).unwrap();
    worst = worst.max(
        inverse_property_check(&lin, &MemoryOrder::new(0.9).unwrap(), 2.0)
            .unwrap()
            .abs(),
    );
    Check {
        name: "Lemma-2.22 inverse-property residual",
        residual: worst,
        tolerance: 1e-5,
    }
}

fn strategy_agreement(level: Level) -> Check {
    let n = match level {
        Level::Quick => 1024,
        Level::Full => 8192,
    };
    let series = fastsum::bench_series(n);
    let mut worst = 0.0f64;
    for alpha in [0.3, 0.7, 1.0] {
        let table = KernelTable::new(MemoryOrder::new(alpha).unwrap(), n).unwrap();
        let direct = fastsum::trajectory_sums(&table, WeightChannel::Power, &series, n, SumStrategy::DirectCompensated).unwrap();
        let chunked = fastsum::trajectory_sums(&table, WeightChannel::Power, &series, n, SumStrategy::ChunkedConvolution).unwrap();
        let scale = direct.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
        for (c, d) in chunked.iter().zip(&direct) {
            worst = worst.max((c - d).abs() / scale);
        }
    }
    Check {
        name: "chunked convolution vs compensated direct sums",
        residual: worst,
        tolerance: 1e-10,
    }
}

fn matthews_acceleration() -> Check {
    let a = 2.0;
    let p = params(1.0, 0.2, a, 1.0);
    let scenario = Scenario::new(
        p,
        Closure::Matthews { a, b: 1.0 },
        1000,
        100.0,
        InitialState::scalar(50.0),
    );
    let traj = memkick_core::run_scenario(&scenario).unwrap();
    let mut worst = 0.0f64;
    for t in 1..=1000 {
        worst = worst.max((traj.investment[t] - a * (traj.output[t] - traj.output[t - 1])).abs());
    }
    Check {
        name: "Matthews particular case I_t = a*(Y_t - Y_{t-1})",
        residual: worst,
        tolerance: 1e-9,
    }
}

fn harrod_domar_geometric() -> Check {
    let p = params(1.0, 0.2, 2.0, 1.0);
    let scenario = Scenario::new(p, Closure::HarrodDomar, 100, 100.0, InitialState::scalar(10.0));
    let traj = memkick_core::run_scenario(&scenario).unwrap();
    let ratio = 1.0 + memkick_core::warranted_growth_rate(0.2, 2.0, 1.0);
    let mut worst = 0.0f64;
    for n in 0..100 {
        worst = worst.max((traj.output[n + 1] / traj.output[n] - ratio).abs());
    }
    Check {
        name: "classical Harrod-Domar geometric growth",
        residual: worst,
        tolerance: 1e-9,
    }
}

fn classical_matthews_residual() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut y = vec![10.0];
    for _ in 0..500 {
        y.push(y.last().unwrap() + rng.gen_range(-0.5..0.5));
    }
    let r = classical_matthews_check(0.5, 500, &y).unwrap();
    Check {
        name: "capital stock adjustment on exogenous output",
        residual: r,
        tolerance: 1e-9,
    }
}

fn constant_forcing_asymptotics() -> Check {
    let n = 10_000usize;
    let alpha = 0.5;
    let p = params(alpha, 0.2, 2.0, 1.0);
    let table = KernelTable::new(p.order, n + 1).unwrap();
    let series = vec![1.0; n];
    let k = capital_map_cumulative(&p, 0.0, &series, &table, SumStrategy::DirectCompensated).unwrap();
    let limit = 0.2 * (n as f64).powf(alpha) / gamma(alpha + 1.0).unwrap();
    Check {
        name: "constant-forcing growth asymptotics K_n ~ s*n^a/Gamma(a+1)",
        residual: (k / limit - 1.0).abs(),
        tolerance: 0.01,
    }
}

/// Run the suite, printing one line per check; returns the failed names.
pub fn run(level: Level) -> Vec<&'static str> {
    let mut checks = vec![
        gamma_recurrence(),
        kernel_telescoping(),
        classical_reduction(level),
        cumulative_incremental(level),
        general_map_consistency(),
        caputo_power_law(level),
        rl_constant(),
        strategy_agreement(level),
        matthews_acceleration(),
        harrod_domar_geometric(),
        classical_matthews_residual(),
    ];
    if level == Level::Full {
        checks.push(lemma_inverse_property());
        checks.push(constant_forcing_asymptotics());
    }

    let mut failed = Vec::new();
    for check in &checks {
        let status = if check.passed() { "PASS" } else { "FAIL" };
        println!(
            "[{status}] {}: residual={:.6e} tolerance={:.6e}",
            check.name, check.residual, check.tolerance
        );
        if !check.passed() {
            failed.push(check.name);
        }
    }
    failed
}
