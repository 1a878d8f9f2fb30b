//! Witness construction time on random triples, n = 5..8.

use std::time::Instant;

use bubblestar::tpath::random_triple;
use bubblestar::{build_witness, CayleyGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    for (n, samples) in [(5, 200), (6, 100), (7, 40), (8, 10)] {
        let g = CayleyGraph::build(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let start = Instant::now();
        for _ in 0..samples {
            let w = build_witness(&g, random_triple(&g, &mut rng)).unwrap();
            assert!(w.verified);
        }
        let per = start.elapsed().as_secs_f64() * 1e3 / samples as f64;
        println!("BS_{}: {} witnesses, {:.2} ms each", n, samples, per);
    }
}
