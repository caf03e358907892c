//! Times the exact fractional packing LP on deletion channels.
//!
//! Usage: cargo run --release --example lp_bench -- <n_min> <n_max> [bland]

use std::time::Instant;

use combichannel::lp::{fractional_packing, LpConfig, PivotRule};
use combichannel::rational::floor;
use combichannel::zoo::deletion_channel;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let lo: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let hi: usize = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(lo);
    let mut config = LpConfig::default();
    if args.get(3).map(String::as_str) == Some("bland") {
        config.pivot_rule = PivotRule::Bland;
    }
    for n in lo..=hi {
        let a = deletion_channel(n).expect("channel");
        let start = Instant::now();
        let r = fractional_packing(&a, &config).expect("lp");
        println!("n={n} p*={} floor={} pivots={} time={:.2?}", r.value, floor(&r.value), r.pivots, start.elapsed());
    }
}
