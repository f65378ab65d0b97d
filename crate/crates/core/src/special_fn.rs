//! Gamma function and power-law kernel weights.

use crate::error::{Error, Result};

/// Default cap on kernel table horizons; the table is the only unbounded
/// allocation in the core.
pub const DEFAULT_MAX_HORIZON: usize = 1 << 22;

/// Largest argument for which Γ(x) fits in an f64.
const GAMMA_OVERFLOW_X: f64 = 171.624;

/// Lanczos coefficients (g = 7, n = 9), as used by the GNU Scientific Library.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_P: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

/// n! for n = 0..=20; exact in f64 up to 18!.
const FACTORIAL: [f64; 21] = [
    1.0,
    1.0,
    2.0,
    6.0,
    24.0,
    120.0,
    720.0,
    5040.0,
    40320.0,
    362880.0,
    3628800.0,
    39916800.0,
    479001600.0,
    6227020800.0,
    87178291200.0,
    1307674368000.0,
    20922789888000.0,
    355687428096000.0,
    6402373705728000.0,
    121645100408832000.0,
    2432902008176640000.0,
];

/// Gamma function Γ(x) via the Lanczos approximation, with reflection for
/// x < 0.5 and exact factorial values at positive integer arguments.
pub fn gamma(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("gamma of non-finite argument {x}")));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::GammaPole(x));
    }
    if x > GAMMA_OVERFLOW_X {
        return Err(Error::GammaOverflow(x));
    }
    if x == x.floor() && x >= 1.0 && x <= 21.0 {
        return Ok(FACTORIAL[x as usize - 1]);
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    use std::f64::consts::PI;
    if x < 0.5 {
        // Reflection: Γ(x)·Γ(1−x) = π / sin(πx)
        PI / ((PI * x).sin() * lanczos(1.0 - x))
    } else {
        let z = x - 1.0;
        let mut acc = LANCZOS_P[0];
        for (i, p) in LANCZOS_P.iter().enumerate().skip(1) {
            acc += p / (z + i as f64);
        }
        let t = z + LANCZOS_G + 0.5;
        (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * acc
    }
}

/// Fractional order α > 0 together with its integer bracket N = ⌊α⌋ + 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MemoryOrder {
    alpha: f64,
    n_bracket: usize,
}

impl MemoryOrder {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidOrder {
                alpha,
                reason: "alpha must be a finite positive real",
            });
        }
        Ok(Self {
            alpha,
            n_bracket: alpha.floor() as usize + 1,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// N = ⌊α⌋ + 1, the number of Caputo initial values.
    pub fn n_bracket(&self) -> usize {
        self.n_bracket
    }

    pub fn is_integer(&self) -> bool {
        self.alpha == self.alpha.floor()
    }

    /// Number of initial values the order calls for: N for non-integer α,
    /// plain α for integer orders (the classical first-order maps need only
    /// K₀ at α = 1).
    pub fn initial_value_count(&self) -> usize {
        if self.is_integer() {
            self.alpha as usize
        } else {
            self.n_bracket
        }
    }

    /// The general-order map path requires N − 1 < α < N.
    pub fn require_non_integer(&self) -> Result<()> {
        if self.is_integer() {
            Err(Error::IntegerOrder(self.alpha))
        } else {
            Ok(())
        }
    }
}

/// j^(α−1), the raw power-law weight. Exactly 1 for j = 1; computed in log
/// space for j > 1.
pub fn power_weight(alpha: f64, j: usize) -> f64 {
    debug_assert!(j >= 1);
    if j == 1 {
        1.0
    } else {
        ((alpha - 1.0) * (j as f64).ln()).exp()
    }
}

/// V_α(z) = (z+1)^(α−1) − z^(α−1); exactly 0 for α = 1.
pub fn kernel_v(alpha: f64, z: usize) -> f64 {
    debug_assert!(z >= 1);
    if alpha == 1.0 {
        0.0
    } else {
        power_weight(alpha, z + 1) - power_weight(alpha, z)
    }
}

/// Precomputed power weights j^(α−1) and their differences V_α(z) for a
/// fixed horizon. Immutable after construction.
#[derive(Debug, Clone)]
pub struct KernelTable {
    order: MemoryOrder,
    power_weights: Vec<f64>,
    v_weights: Vec<f64>,
}

impl KernelTable {
    pub fn new(order: MemoryOrder, horizon: usize) -> Result<Self> {
        Self::with_cap(order, horizon, DEFAULT_MAX_HORIZON)
    }

    pub fn with_cap(order: MemoryOrder, horizon: usize, cap: usize) -> Result<Self> {
        if horizon < 1 {
            return Err(Error::Domain("kernel table horizon must be >= 1".into()));
        }
        if horizon > cap {
            return Err(Error::HorizonExceeded {
                requested: horizon,
                cap,
            });
        }
        let alpha = order.alpha();
        let mut power_weights = Vec::with_capacity(horizon);
        for j in 1..=horizon {
            power_weights.push(power_weight(alpha, j));
        }
        let mut v_weights = Vec::with_capacity(horizon.saturating_sub(1));
        for z in 1..horizon {
            v_weights.push(if alpha == 1.0 {
                0.0
            } else {
                power_weights[z] - power_weights[z - 1]
            });
        }
        Ok(Self {
            order,
            power_weights,
            v_weights,
        })
    }

    pub fn order(&self) -> MemoryOrder {
        self.order
    }

    pub fn horizon(&self) -> usize {
        self.power_weights.len()
    }

    /// j^(α−1) for lag j, 1-based; j must be within the horizon.
    pub fn power(&self, j: usize) -> f64 {
        self.power_weights[j - 1]
    }

    /// V_α(z) for 1-based z up to horizon − 1.
    pub fn v(&self, z: usize) -> f64 {
        self.v_weights[z - 1]
    }

    pub fn power_weights(&self) -> &[f64] {
        &self.power_weights
    }

    pub fn v_weights(&self) -> &[f64] {
        &self.v_weights
    }
}
