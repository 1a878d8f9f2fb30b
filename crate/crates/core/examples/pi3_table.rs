//! The path count `⌊3n/2⌋ - 3` next to the degree-based upper bound.

use bubblestar::{pi3_formula, upper_bound, BoundMode, CayleyGraph};

fn main() {
    println!("n  formula  bound  cmax");
    for n in 3..=8 {
        let g = CayleyGraph::build(n).unwrap();
        let mode = if n <= 4 {
            BoundMode::Exhaustive
        } else {
            BoundMode::Sampled { seed: 0, samples: 500 }
        };
        let b = upper_bound(&g, mode).unwrap();
        println!("{}  {:>7}  {:>5}  {:>4}", n, pi3_formula(n), b.bound, b.cmax);
    }
}
