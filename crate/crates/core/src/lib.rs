//! Internally disjoint T-paths in bubble-sort star graphs.
//!
//! `BS_n` is the Cayley graph on the permutations of `1..=n` generated by the
//! transpositions `(1 i)` for `2 <= i <= n` and `(i i+1)` for `2 <= i < n`. For any
//! three vertices the crate builds `⌊3n/2⌋ - 3` paths, each joining two of them
//! through the third, that pairwise meet only in those three vertices and share
//! no edge.
//!
//! ```
//! use bubblestar::{build_witness, CayleyGraph};
//!
//! let g = CayleyGraph::build(5).unwrap();
//! let t = ["12345", "54321", "21435"].map(|s| s.parse().unwrap());
//! let witness = build_witness(&g, t).unwrap();
//! assert_eq!(witness.t_paths.len(), 4);
//! assert!(witness.verified);
//! ```

pub mod cayley;
pub mod cli;
pub mod menger;
pub mod permutation;
pub mod tpath;
pub mod webbuilder;

pub use cayley::{CayleyGraph, CopyView};
pub use menger::{disjoint_set_paths, fan, kappa, pair_paths, Path};
pub use permutation::Permutation;
pub use tpath::{
    assemble, brute_force_pi3, build_witness, pi3_formula, structural_audit, upper_bound, verify_web,
    verify_witness, BoundMode, TPathWitness,
};
pub use webbuilder::{build_web, select_border_sets, PairwiseWeb, TerminalTriple, WebBuilder};
