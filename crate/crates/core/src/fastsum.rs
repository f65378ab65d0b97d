//! Evaluation strategies for the power-law memory sums.
//!
//! Every map reduces to sums of the form `Σ_{k=1}^{n} w(n+1−k)·series_k`
//! where the weight depends only on the lag. The compensated direct path is
//! the defining semantics; the blocked-convolution path exploits the lag
//! structure to evaluate all prefix sums with FFTs.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::{num_complex::Complex, FftPlanner};

use crate::error::{Error, Result};
use crate::special_fn::KernelTable;

/// Seed for the deterministic benchmark inputs (uniform in [-1, 1]).
pub const BENCH_SEED: u64 = 0x6d656d6b69636b;

/// Series blocks of this size are convolved per FFT pass.
const CONV_BLOCK: usize = 1 << 13;

/// Below this length the convolution path falls back to the direct loop.
const CONV_DIRECT_CUTOFF: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumStrategy {
    /// Plain left-to-right summation.
    Direct,
    /// Neumaier-compensated summation; the defining semantics.
    DirectCompensated,
    /// Blocked FFT linear convolution of the weight sequence against the
    /// series. Accuracy contract: 1e-10 relative against the direct path.
    ChunkedConvolution,
    /// Only the most recent `window` lags; reports a truncation residual
    /// bound instead of an accuracy contract.
    Truncated { window: usize },
}

impl fmt::Display for SumStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SumStrategy::Direct => write!(f, "direct"),
            SumStrategy::DirectCompensated => write!(f, "compensated"),
            SumStrategy::ChunkedConvolution => write!(f, "chunked"),
            SumStrategy::Truncated { window } => write!(f, "truncated:{window}"),
        }
    }
}

impl FromStr for SumStrategy {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "direct" => Ok(SumStrategy::Direct),
            "compensated" => Ok(SumStrategy::DirectCompensated),
            "chunked" => Ok(SumStrategy::ChunkedConvolution),
            _ => {
                if let Some(w) = s.strip_prefix("truncated:") {
                    let window: usize = w
                        .parse()
                        .map_err(|_| format!("bad truncation window {w:?}"))?;
                    if window == 0 {
                        return Err("truncation window must be >= 1".into());
                    }
                    Ok(SumStrategy::Truncated { window })
                } else {
                    Err(format!(
                        "unknown strategy {s:?} (expected direct | compensated | chunked | truncated:<window>)"
                    ))
                }
            }
        }
    }
}

/// Which weight channel of the kernel table drives the sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightChannel {
    /// Raw weights j^(α−1): the cumulative-map sums.
    Power,
    /// Differenced weights V_α(j): the incremental-map sums.
    KernelV,
}

/// Result of a memory sum; `truncation_bound` is zero for the exact
/// strategies and a sound residual bound for the truncated one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemorySum {
    pub value: f64,
    pub truncation_bound: f64,
}

fn channel_weights<'a>(table: &'a KernelTable, channel: WeightChannel) -> &'a [f64] {
    match channel {
        WeightChannel::Power => table.power_weights(),
        WeightChannel::KernelV => table.v_weights(),
    }
}

/// Σ_{k=1}^{n} w(n+1−k)·series_k with the selected channel and strategy.
pub fn memory_sum(
    table: &KernelTable,
    channel: WeightChannel,
    series: &[f64],
    n: usize,
    strategy: SumStrategy,
) -> Result<MemorySum> {
    let weights = channel_weights(table, channel);
    if n == 0 {
        return Ok(MemorySum {
            value: 0.0,
            truncation_bound: 0.0,
        });
    }
    if series.len() < n {
        return Err(Error::HistoryLength {
            got: series.len(),
            expected: n,
        });
    }
    if weights.len() < n {
        return Err(Error::LagOutOfRange {
            needed: n,
            horizon: weights.len(),
        });
    }
    let value = match strategy {
        SumStrategy::Direct => direct_sum(weights, series, n),
        SumStrategy::DirectCompensated => compensated_sum(weights, series, n),
        SumStrategy::ChunkedConvolution => {
            let sums = convolution_prefix_sums(weights, series, n);
            sums[n - 1]
        }
        SumStrategy::Truncated { window } => {
            // A window wider than the history degrades to the direct path.
            if window >= n {
                direct_sum(weights, series, n)
            } else {
                let max_abs = series[..n].iter().fold(0.0f64, |m, &x| m.max(x.abs()));
                let mut bound = 0.0;
                for k in 0..n - window {
                    bound += weights[n - k - 1].abs() * max_abs;
                }
                let mut acc = 0.0;
                for k in n - window..n {
                    acc += weights[n - k - 1] * series[k];
                }
                return Ok(MemorySum {
                    value: acc,
                    truncation_bound: bound,
                });
            }
        }
    };
    Ok(MemorySum {
        value,
        truncation_bound: 0.0,
    })
}

/// All prefix memory sums for n = 1..n_max in one pass.
pub fn trajectory_sums(
    table: &KernelTable,
    channel: WeightChannel,
    series: &[f64],
    n_max: usize,
    strategy: SumStrategy,
) -> Result<Vec<f64>> {
    let weights = channel_weights(table, channel);
    if series.len() < n_max {
        return Err(Error::HistoryLength {
            got: series.len(),
            expected: n_max,
        });
    }
    if weights.len() < n_max {
        return Err(Error::LagOutOfRange {
            needed: n_max,
            horizon: weights.len(),
        });
    }
    match strategy {
        SumStrategy::ChunkedConvolution => Ok(convolution_prefix_sums(weights, series, n_max)),
        _ => (1..=n_max)
            .map(|n| memory_sum(table, channel, series, n, strategy).map(|s| s.value))
            .collect(),
    }
}

fn direct_sum(weights: &[f64], series: &[f64], n: usize) -> f64 {
    let mut acc = 0.0;
    for k in 0..n {
        acc += weights[n - k - 1] * series[k];
    }
    acc
}

fn compensated_sum(weights: &[f64], series: &[f64], n: usize) -> f64 {
    // Neumaier variant of Kahan summation.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for k in 0..n {
        let term = weights[n - k - 1] * series[k];
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Prefix sums via blocked FFT linear convolution. The result's entry n−1
/// equals `Σ_{k=1}^{n} w(n+1−k)·series_k`; with 0-based arrays that is the
/// plain linear convolution (weights * series)[n−1].
fn convolution_prefix_sums(weights: &[f64], series: &[f64], n_max: usize) -> Vec<f64> {
    if n_max <= CONV_DIRECT_CUTOFF {
        return (1..=n_max).map(|n| direct_sum(weights, series, n)).collect();
    }
    let w = &weights[..n_max];
    let s = &series[..n_max];
    let mut out = vec![0.0f64; n_max];
    let mut planner = FftPlanner::<f64>::new();
    let mut lo = 0usize;
    while lo < n_max {
        let hi = (lo + CONV_BLOCK).min(n_max);
        // The block s[lo..hi] contributes to outputs lo..n_max through lags
        // 1..=n_max-lo, so convolve it with the weight prefix of that length.
        let wl = n_max - lo;
        let conv = fft_linear_convolution(&mut planner, &w[..wl], &s[lo..hi]);
        for (i, c) in conv.iter().enumerate() {
            let m = lo + i;
            if m < n_max {
                out[m] += c;
            }
        }
        lo = hi;
    }
    out
}

fn fft_linear_convolution(planner: &mut FftPlanner<f64>, a: &[f64], b: &[f64]) -> Vec<f64> {
    let out_len = a.len() + b.len() - 1;
    let size = out_len.next_power_of_two();
    let fft = planner.plan_fft_forward(size);
    let ifft = planner.plan_fft_inverse(size);

    let mut fa: Vec<Complex<f64>> = a
        .iter()
        .map(|&x| Complex::new(x, 0.0))
        .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
        .take(size)
        .collect();
    let mut fb: Vec<Complex<f64>> = b
        .iter()
        .map(|&x| Complex::new(x, 0.0))
        .chain(std::iter::repeat(Complex::new(0.0, 0.0)))
        .take(size)
        .collect();
    fft.process(&mut fa);
    fft.process(&mut fb);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    ifft.process(&mut fa);
    let scale = 1.0 / size as f64;
    fa[..out_len].iter().map(|c| c.re * scale).collect()
}

/// One row of the strategy benchmark report.
#[derive(Debug, Clone)]
pub struct BenchRow {
    pub strategy: String,
    pub n_max: usize,
    pub alpha: f64,
    pub seconds: f64,
    pub max_rel_dev: f64,
}

impl BenchRow {
    pub const CSV_HEADER: &'static str = "strategy,n_max,alpha,seconds,max_rel_dev";

    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{:.6e},{:.6e}",
            self.strategy, self.n_max, self.alpha, self.seconds, self.max_rel_dev
        )
    }
}

/// Deterministic benchmark input: `n` uniform draws in [-1, 1] from a
/// fixed-seed ChaCha8 stream.
pub fn bench_series(n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(BENCH_SEED);
    (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

/// Time every registered strategy on the same deterministic input and
/// report wall time plus the maximum relative deviation from the
/// compensated direct path. Rows are sorted by wall time.
pub fn bench_strategies(alpha: f64, n_max: usize, trials: usize) -> Result<Vec<BenchRow>> {
    if n_max < 2 {
        return Err(Error::Domain("bench requires n_max >= 2".into()));
    }
    if trials < 1 {
        return Err(Error::Domain("bench requires trials >= 1".into()));
    }
    let order = crate::special_fn::MemoryOrder::new(alpha)?;
    let table = KernelTable::new(order, n_max)?;
    let series = bench_series(n_max);

    let baseline = trajectory_sums(
        &table,
        WeightChannel::Power,
        &series,
        n_max,
        SumStrategy::DirectCompensated,
    )?;
    let scale = baseline.iter().fold(0.0f64, |m, &x| m.max(x.abs())).max(1e-300);

    let strategies = [
        SumStrategy::Direct,
        SumStrategy::DirectCompensated,
        SumStrategy::ChunkedConvolution,
        SumStrategy::Truncated {
            window: (n_max / 8).max(1),
        },
    ];

    let mut rows = Vec::new();
    for strategy in strategies {
        let mut best = f64::INFINITY;
        let mut result = Vec::new();
        for _ in 0..trials {
            let start = Instant::now();
            result = trajectory_sums(&table, WeightChannel::Power, &series, n_max, strategy)?;
            best = best.min(start.elapsed().as_secs_f64());
        }
        let max_rel_dev = result
            .iter()
            .zip(&baseline)
            .fold(0.0f64, |m, (&x, &b)| m.max((x - b).abs() / scale));
        rows.push(BenchRow {
            strategy: strategy.to_string(),
            n_max,
            alpha,
            seconds: best,
            max_rel_dev,
        });
    }
    rows.sort_by(|a, b| a.seconds.total_cmp(&b.seconds));
    Ok(rows)
}
