//! Shared helpers for the strategy benchmarks.

use memkick_core::{fastsum, KernelTable, MemoryOrder};

pub fn setup(alpha: f64, n: usize) -> (KernelTable, Vec<f64>) {
    let order = MemoryOrder::new(alpha).expect("valid order");
    let table = KernelTable::new(order, n).expect("table fits");
    (table, fastsum::bench_series(n))
}
