//! Structural audit of BS_4 and BS_5.

use bubblestar::{structural_audit, CayleyGraph};

fn main() {
    for n in [4, 5] {
        print!("{}", structural_audit(&CayleyGraph::build(n).unwrap()));
    }
}
