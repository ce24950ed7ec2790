//! Prints oracle class counts and timings for n = 1..=10.
use std::time::Instant;

fn main() {
    for n in 1..=treeverify::enumerate::MAX_ORACLE_ORDER {
        let t = Instant::now();
        let trees = treeverify::enumerate::oracle_enumerate(n).unwrap();
        println!("n={n} classes={} seconds={:.2}", trees.len(), t.elapsed().as_secs_f64());
    }
}
