//! The verifiers work from scratch: a correct witness passes and small edits are
//! reported by the first predicate they break.

use bubblestar::{build_witness, verify_witness, CayleyGraph};

fn main() {
    let g = CayleyGraph::build(5).unwrap();
    let w = build_witness(&g, ["12345", "31524", "52431"].map(|s| s.parse().unwrap())).unwrap();
    println!("original: {:?}", verify_witness(&g, &w).map(|_| "ok"));

    let mut dropped = w.clone();
    dropped.t_paths.pop();
    println!("one path removed: {}", verify_witness(&g, &dropped).unwrap_err());

    let mut crossed = w.clone();
    let stolen = crossed.t_paths[0][1];
    let mid = crossed.t_paths[1].len() / 2;
    crossed.t_paths[1][mid] = stolen;
    println!("inner vertex reused: {}", verify_witness(&g, &crossed).unwrap_err());

    let mut reversed = w.clone();
    reversed.t_paths[2].swap(0, 1);
    println!("endpoints swapped: {}", verify_witness(&g, &reversed).unwrap_err());
}
