//! Discrete accelerator maps with power-law memory.
//!
//! The core pieces:
//!
//! * [`special_fn`] — gamma function and the power-law kernel weights every
//!   map is built from;
//! * [`fractional_oracle`] — independent product-integration evaluation of
//!   the Caputo derivative and Riemann-Liouville integral, used to validate
//!   the maps' continuous-time ancestry;
//! * [`memory_maps`] — the exact discrete maps with memory and their
//!   memoryless classical counterparts;
//! * [`fastsum`] — evaluation strategies for the memory sums (direct,
//!   compensated, blocked convolution, truncated window);
//! * [`economy`] — scenario closures (exogenous forcing, Harrod-Domar,
//!   Matthews capital stock adjustment) that turn the open-loop maps into
//!   simulable models.

pub mod economy;
pub mod error;
pub mod fastsum;
pub mod fractional_oracle;
pub mod memory_maps;
pub mod special_fn;

pub use economy::{run_scenario, warranted_growth_rate, Closure, Scenario};
pub use error::Error;
pub use fastsum::{memory_sum, trajectory_sums, BenchRow, MemorySum, SumStrategy, WeightChannel};
pub use fractional_oracle::SampledFunction;
pub use memory_maps::{InitialState, MapParams, Trajectory};
pub use special_fn::{KernelTable, MemoryOrder, DEFAULT_MAX_HORIZON};
