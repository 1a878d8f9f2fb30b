//! Builds BS_n for small n, prints its basic counts and the dot export of BS_3.

use bubblestar::CayleyGraph;

fn main() {
    for n in 3..=6 {
        let g = CayleyGraph::build(n).unwrap();
        let edges = g.vertex_count() as usize * g.degree() / 2;
        println!("BS_{}: {} vertices, degree {}, {} edges", n, g.vertex_count(), g.degree(), edges);
    }
    let g = CayleyGraph::build(3).unwrap();
    print!("{}", g.to_dot());
}
