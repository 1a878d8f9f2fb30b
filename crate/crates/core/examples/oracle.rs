//! Brute-force maximum number of T-paths on a few triples of BS_3 and BS_4. The
//! formula is a minimum over triples, so single triples can exceed it.

use bubblestar::{brute_force_pi3, pi3_formula, CayleyGraph, TerminalTriple};

fn main() {
    for (n, vs) in [
        (3, ["123", "231", "312"]),
        (3, ["123", "213", "132"]),
        (4, ["1234", "2134", "1324"]),
        (4, ["1234", "4321", "2413"]),
    ] {
        let g = CayleyGraph::build(n).unwrap();
        let t = TerminalTriple::assign(&g, vs.map(|s| s.parse().unwrap())).unwrap();
        let r = brute_force_pi3(&g, &t, 10_000_000).unwrap();
        println!(
            "BS_{} {:?}: {} T-paths (exact: {}, formula {}, {} T-paths placed during the search)",
            n,
            vs,
            r.value,
            r.exact,
            pi3_formula(n),
            r.candidates
        );
    }
}
