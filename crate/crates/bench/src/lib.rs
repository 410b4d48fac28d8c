//! Shared instance builders for the benchmarks.

use vflame_core::generate::random_digraph_density;
use vflame_core::RootedDigraph;

/// Seeded benchmark instances, one per (size, density) cell.
pub fn bench_instances() -> Vec<(String, RootedDigraph)> {
    let mut out = Vec::new();
    for (n, density) in [(12usize, 0.25), (24, 0.15), (40, 0.1)] {
        let d = random_digraph_density(n, density, 0x5eed ^ n as u64)
            .expect("valid benchmark instance");
        out.push((format!("n{n}_d{density}"), d));
    }
    out
}
