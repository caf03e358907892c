//! Times the integer programs used by the inequality lattice on deletion and
//! grain channels.
//!
//! Usage: cargo run --release --example ilp_bench -- <n> [deletion|grain] [node-limit]

use std::time::Instant;

use combichannel::lp::{integer_covering, integer_packing, IntConfig};
use combichannel::zoo::{deletion_channel, grain_channel};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let only = std::env::args().nth(2);
    let mut cfg = IntConfig::default();
    if let Some(limit) = std::env::args().nth(3).and_then(|s| s.parse().ok()) {
        cfg.node_limit = limit;
    }
    for (name, a) in [("deletion", deletion_channel(n).unwrap()), ("grain", grain_channel(n).unwrap())] {
        if only.as_deref().is_some_and(|o| o != name) {
            continue;
        }
        let b = a.compose(&a.transpose()).unwrap();
        let t = Instant::now();
        let p = integer_packing(&a, &cfg).unwrap();
        println!("{name}:{n} alpha={} proved={} nodes={} {:.2?}", p.value, p.optimality_proved, p.nodes, t.elapsed());
        let t = Instant::now();
        let g = integer_covering(&b, &cfg).unwrap();
        println!("{name}:{n} gamma={} proved={} nodes={} {:.2?}", g.value, g.optimality_proved, g.nodes, t.elapsed());
        let t = Instant::now();
        let q = integer_packing(&b, &cfg).unwrap();
        println!("{name}:{n} alpha2={} proved={} nodes={} {:.2?}", q.value, q.optimality_proved, q.nodes, t.elapsed());
    }
}
