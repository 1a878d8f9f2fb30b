//! Shows how the web builder splits a frame: one triple per copy pattern, with the
//! recursion trace of each build.

use bubblestar::{verify_web, CayleyGraph, TerminalTriple, WebBuilder};

fn main() {
    let g = CayleyGraph::build(7).unwrap();
    for vs in [
        ["1234567", "2134567", "3214567"],
        ["1234567", "7654321", "2134567"],
        ["1234567", "7654312", "2143756"],
    ] {
        let t = TerminalTriple::assign(&g, vs.map(|s| s.parse().unwrap())).unwrap();
        let mut builder = WebBuilder::default();
        let web = builder.build(&g, &t).unwrap();
        verify_web(&g, &t, &web).unwrap();
        println!("a={} b={} c={}", t.a, t.b, t.c);
        for event in builder.trace().iter().rev() {
            println!("  {}", event);
        }
    }
}
