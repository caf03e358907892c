//! Prints the covering LP value against the greedy cover size for `A∘Aᵀ`.
//!
//! Usage: cargo run --release --example cover_gap -- <n>

use combichannel::lp::{fractional_packing, integer_covering, IntConfig, LpConfig};
use combichannel::rational::floor;
use combichannel::zoo::{deletion_channel, grain_channel};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    for (name, a) in [("deletion", deletion_channel(n).unwrap()), ("grain", grain_channel(n).unwrap())] {
        let b = a.compose(&a.transpose()).unwrap();
        let lp = fractional_packing(&b, &LpConfig::default()).unwrap();
        let quick = integer_covering(
            &b,
            &IntConfig {
                node_limit: 1,
                heuristic_rounds: std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(2000),
                ..IntConfig::default()
            },
        )
        .unwrap();
        println!("{name}:{n} kappa*={} (~{}) greedy={}", lp.value, floor(&lp.value), quick.value);
    }
}
