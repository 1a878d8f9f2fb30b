//! Disjoint path families on copies of BS_5: a fan, a set-to-set linkage and the
//! connectivity of unions of copies.

use bubblestar::{disjoint_set_paths, fan, kappa, CayleyGraph, Permutation};

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn main() {
    let g = CayleyGraph::build(5).unwrap();
    let copy5 = g.full_view().with_copies(&[5]);
    let v = p("12345");
    let targets: Vec<Permutation> = ["43215", "32145", "24135", "41325", "34215"].iter().map(|s| p(s)).collect();
    let f = fan(&copy5, &v, &targets).unwrap();
    println!("fan from {} inside copy 5:", v);
    for path in &f.paths {
        println!("  {}", path.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
    }

    let rest = g.full_view().with_copies(&[1, 2, 3, 4]);
    let xs = [p("23451"), p("34512")];
    let ys = [p("51234"), p("45123")];
    let links = disjoint_set_paths(&rest, &xs, &ys, 2).unwrap();
    println!("two disjoint links outside copy 5, lengths {:?}", links.paths.iter().map(|p| p.len() - 1).collect::<Vec<_>>());

    for copies in [vec![5], vec![4, 5], vec![2, 3, 4, 5]] {
        let k = kappa(&g.full_view().with_copies(&copies));
        println!("kappa of copies {:?}: {}", copies, k.value);
    }
}
