//! The bubble-sort star graph `BS_n` as a Cayley graph on `S_n`.
//!
//! Adjacency is never stored. Neighbours are produced by applying the generator
//! transpositions `(1,j)` for `2 <= j <= n` and `(j,j+1)` for `2 <= j <= n-1` to
//! a vertex, always in that order.
//!
//! Copies are keyed by the literal symbol in the last position. A [`CopyView`]
//! restricts the graph to a union of copies minus explicit vertices, and can also
//! describe a sub-cube: the copy of `BS_m` (for `m < n`) made of all vertices that
//! agree with an anchor vertex on positions `m+1..n`.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::permutation::{factorial, Permutation, PermutationError, MAX_DIM, MIN_DIM};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error(transparent)]
    Permutation(#[from] PermutationError),
    #[error("vertex {vertex} has dimension {got}, graph has dimension {expected}")]
    DimensionMismatch {
        vertex: Permutation,
        got: usize,
        expected: usize,
    },
    #[error("copy index {0} outside 1..={1}")]
    CopyOutOfRange(u8, usize),
    #[error("cross edges need two different copies, got {0} twice")]
    SameCopy(u8),
    #[error("common neighbours are defined here for 2 or 3 vertices, got {0}")]
    Arity(usize),
    #[error("vertex {0} listed twice")]
    Duplicate(Permutation),
    #[error("a view needs at least one copy")]
    EmptyCopySet,
    #[error("sub-cube dimension {0} outside 2..={1}")]
    SubDimension(usize, usize),
}

/// Generator transpositions of `BS_m`, in the fixed order used everywhere.
pub fn generators(m: usize) -> impl Iterator<Item = (usize, usize)> + Clone {
    (2..=m).map(|j| (1, j)).chain((2..m).map(|j| (j, j + 1)))
}

/// `BS_n` with `n!` vertices and degree `2n-3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGraph {
    n: usize,
    generators: Vec<(usize, usize)>,
}

impl CayleyGraph {
    pub fn build(n: usize) -> Result<Self, CayleyError> {
        if !(MIN_DIM..=MAX_DIM).contains(&n) {
            return Err(PermutationError::DimensionOutOfRange(n).into());
        }
        Ok(Self {
            n,
            generators: generators(n).collect(),
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[(usize, usize)] {
        &self.generators
    }

    pub fn degree(&self) -> usize {
        2 * self.n - 3
    }

    pub fn vertex_count(&self) -> u64 {
        factorial(self.n)
    }

    /// All vertices in rank order.
    pub fn vertices(&self) -> impl Iterator<Item = Permutation> {
        Permutation::all(self.n).expect("dimension validated at build")
    }

    pub fn check(&self, v: &Permutation) -> Result<(), CayleyError> {
        if v.dim() == self.n {
            Ok(())
        } else {
            Err(CayleyError::DimensionMismatch {
                vertex: *v,
                got: v.dim(),
                expected: self.n,
            })
        }
    }

    /// Neighbours of `v` in generator order.
    pub fn neighbors(&self, v: &Permutation) -> Result<Vec<Permutation>, CayleyError> {
        self.check(v)?;
        Ok(self.neighbors_unchecked(v).collect())
    }

    pub(crate) fn neighbors_unchecked<'a>(
        &'a self,
        v: &'a Permutation,
    ) -> impl Iterator<Item = Permutation> + 'a {
        self.generators.iter().map(move |&(i, j)| v.swapped(i, j))
    }

    pub fn is_edge(&self, u: &Permutation, v: &Permutation) -> bool {
        u.dim() == self.n && v.dim() == self.n && self.neighbors_unchecked(u).any(|w| w == *v)
    }

    /// Copy index of `v`: its last symbol.
    pub fn copy_of(v: &Permutation) -> u8 {
        v.last()
    }

    /// `v ∘ (1, n)`.
    pub fn out_plus(v: &Permutation) -> Permutation {
        v.swapped(1, v.dim())
    }

    /// `v ∘ (n-1, n)`.
    pub fn out_minus(v: &Permutation) -> Permutation {
        let n = v.dim();
        v.swapped(n - 1, n)
    }

    fn check_copy(&self, i: u8) -> Result<(), CayleyError> {
        if i >= 1 && (i as usize) <= self.n {
            Ok(())
        } else {
            Err(CayleyError::CopyOutOfRange(i, self.n))
        }
    }

    /// Vertices of copy `i` in rank order.
    pub fn copy_vertices(&self, i: u8) -> Result<Vec<Permutation>, CayleyError> {
        self.check_copy(i)?;
        Ok(self.induced(&[i], HashSet::new())?.vertices())
    }

    /// The edges between copy `i` and copy `j`, as `(vertex in i, vertex in j)`,
    /// sorted by the first endpoint.
    pub fn cross_edges(
        &self,
        i: u8,
        j: u8,
    ) -> Result<Vec<(Permutation, Permutation)>, CayleyError> {
        self.check_copy(i)?;
        self.check_copy(j)?;
        if i == j {
            return Err(CayleyError::SameCopy(i));
        }
        let mut edges = Vec::new();
        for u in self.copy_vertices(i)? {
            for w in [Self::out_plus(&u), Self::out_minus(&u)] {
                if Self::copy_of(&w) == j {
                    edges.push((u, w));
                }
            }
        }
        Ok(edges)
    }

    /// Intersection of the neighbourhoods of two or three distinct vertices.
    pub fn common_neighbors(
        &self,
        vs: &[Permutation],
    ) -> Result<BTreeSet<Permutation>, CayleyError> {
        if !(2..=3).contains(&vs.len()) {
            return Err(CayleyError::Arity(vs.len()));
        }
        for (k, v) in vs.iter().enumerate() {
            self.check(v)?;
            if vs[..k].contains(v) {
                return Err(CayleyError::Duplicate(*v));
            }
        }
        let mut common: BTreeSet<Permutation> = self.neighbors_unchecked(&vs[0]).collect();
        for v in &vs[1..] {
            let nb: BTreeSet<Permutation> = self.neighbors_unchecked(v).collect();
            common = common.intersection(&nb).copied().collect();
        }
        Ok(common)
    }

    /// Induced subgraph on the given copies, minus `removed`.
    pub fn induced(
        &self,
        copies: &[u8],
        removed: HashSet<Permutation>,
    ) -> Result<CopyView, CayleyError> {
        if copies.is_empty() {
            return Err(CayleyError::EmptyCopySet);
        }
        let mut mask = 0u16;
        for &c in copies {
            self.check_copy(c)?;
            mask |= 1 << c;
        }
        let anchor = Permutation::identity(self.n)?;
        Ok(CopyView {
            dim: self.n,
            anchor,
            allowed: mask,
            removed,
        })
    }

    /// The whole graph as a view.
    pub fn full_view(&self) -> CopyView {
        let copies: Vec<u8> = (1..=self.n as u8).collect();
        self.induced(&copies, HashSet::new()).expect("all copies valid")
    }

    /// DOT rendering, vertices labelled by their label strings.
    pub fn to_dot(&self) -> String {
        let mut out = format!("graph BS{} {{\n", self.n);
        for v in self.vertices() {
            let _ = writeln!(out, "  \"{}\";", v);
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", u, v);
        }
        out.push_str("}\n");
        out
    }

    /// Edge list, one `u v` pair per line with `rank(u) < rank(v)`, sorted.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{} {}", u, v);
        }
        out
    }

    fn edges(&self) -> impl Iterator<Item = (Permutation, Permutation)> + '_ {
        self.vertices().flat_map(move |u| {
            let mut higher: Vec<Permutation> =
                self.neighbors_unchecked(&u).filter(|w| *w > u).collect();
            higher.sort();
            higher.into_iter().map(move |w| (u, w))
        })
    }
}

/// A restriction of `BS_n` (or of a sub-cube `BS_m` inside it) to some copies,
/// minus a set of removed vertices. Queries never materialise the subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CopyView {
    dim: usize,
    anchor: Permutation,
    allowed: u16,
    removed: HashSet<Permutation>,
}

impl CopyView {
    /// The sub-cube of dimension `m` containing `anchor`: every vertex agreeing with
    /// `anchor` on positions `m+1..n`. Copies inside it are keyed by the symbol at
    /// position `m`.
    pub fn subcube(anchor: Permutation, m: usize) -> Result<Self, CayleyError> {
        if !(2..=anchor.dim()).contains(&m) {
            return Err(CayleyError::SubDimension(m, anchor.dim()));
        }
        let allowed = anchor.symbols()[..m].iter().fold(0u16, |acc, &s| acc | 1 << s);
        Ok(Self {
            dim: m,
            anchor,
            allowed,
            removed: HashSet::new(),
        })
    }

    /// Active dimension: generators only touch positions `1..=dim`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn anchor(&self) -> &Permutation {
        &self.anchor
    }

    /// Copy symbols (position `dim`) this view keeps.
    pub fn copies(&self) -> Vec<u8> {
        (1..=MAX_DIM as u8)
            .filter(|c| self.allowed & (1 << c) != 0)
            .collect()
    }

    pub fn removed(&self) -> &HashSet<Permutation> {
        &self.removed
    }

    /// Same view restricted to `copies` (which must be symbols free in this frame).
    pub fn with_copies(&self, copies: &[u8]) -> Self {
        let mut mask = 0u16;
        for &c in copies {
            mask |= 1 << c;
        }
        Self {
            allowed: mask & self.frame_mask(),
            ..self.clone()
        }
    }

    /// Same view with extra vertices removed.
    pub fn without<I: IntoIterator<Item = Permutation>>(&self, extra: I) -> Self {
        let mut view = self.clone();
        view.removed.extend(extra);
        view
    }

    fn frame_mask(&self) -> u16 {
        self.anchor.symbols()[..self.dim]
            .iter()
            .fold(0u16, |acc, &s| acc | 1 << s)
    }

    /// Copy key of `v` inside this frame.
    #[inline]
    pub fn copy_of(&self, v: &Permutation) -> u8 {
        v.at(self.dim)
    }

    pub fn contains(&self, v: &Permutation) -> bool {
        v.dim() == self.anchor.dim()
            && self.allowed & (1 << v.at(self.dim)) != 0
            && v.symbols()[self.dim..] == self.anchor.symbols()[self.dim..]
            && !self.removed.contains(v)
    }

    /// Members adjacent to `v` (in generator order).
    pub fn neighbors<'a>(&'a self, v: &'a Permutation) -> impl Iterator<Item = Permutation> + 'a {
        generators(self.dim)
            .map(move |(i, j)| v.swapped(i, j))
            .filter(move |w| self.contains(w))
    }

    pub fn degree(&self, v: &Permutation) -> usize {
        self.neighbors(v).count()
    }

    pub fn is_edge(&self, u: &Permutation, v: &Permutation) -> bool {
        self.contains(u) && self.neighbors(u).any(|w| w == *v)
    }

    /// `v ∘ (1, dim)`: the outgoing neighbour that changes the position-`dim` symbol
    /// to the first symbol.
    pub fn out_plus(&self, v: &Permutation) -> Permutation {
        v.swapped(1, self.dim)
    }

    /// `v ∘ (dim-1, dim)`.
    pub fn out_minus(&self, v: &Permutation) -> Permutation {
        v.swapped(self.dim - 1, self.dim)
    }

    /// All members in rank order.
    pub fn vertices(&self) -> Vec<Permutation> {
        let m = self.dim;
        let frame: Vec<u8> = self.anchor.symbols()[..m].to_vec();
        let mut out = Vec::new();
        for &c in &frame {
            if self.allowed & (1 << c) == 0 {
                continue;
            }
            let mut rest: Vec<u8> = frame.iter().copied().filter(|&s| s != c).collect();
            rest.sort_unstable();
            loop {
                let mut symbols = self.anchor.symbols().to_vec();
                symbols[..m - 1].copy_from_slice(&rest);
                symbols[m - 1] = c;
                let v = Permutation::from_symbols(&symbols).expect("valid rearrangement");
                if !self.removed.contains(&v) {
                    out.push(v);
                }
                if !next_permutation(&mut rest) {
                    break;
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn len(&self) -> usize {
        self.vertices().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Lexicographic successor in place; `false` once the last arrangement is passed.
fn next_permutation(xs: &mut [u8]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn sizes_and_degrees() {
        for n in 3..=5 {
            let g = CayleyGraph::build(n).unwrap();
            assert_eq!(g.generators().len(), 2 * n - 3);
            let uniq: HashSet<_> = g.generators().iter().collect();
            assert_eq!(uniq.len(), 2 * n - 3);
            assert_eq!(g.vertices().count() as u64, factorial(n));
            for v in g.vertices() {
                let nb = g.neighbors(&v).unwrap();
                let distinct: HashSet<_> = nb.iter().collect();
                assert_eq!(distinct.len(), 2 * n - 3);
                for w in &nb {
                    assert_ne!(w.is_odd(), v.is_odd());
                    assert!(g.is_edge(w, &v), "adjacency must be symmetric");
                }
            }
        }
        assert!(CayleyGraph::build(2).is_err());
        assert!(CayleyGraph::build(10).is_err());
    }

    #[test]
    fn bs3_is_k33() {
        // brute force: every even vertex adjacent to every odd vertex, no other edges
        let g = CayleyGraph::build(3).unwrap();
        let vs: Vec<_> = g.vertices().collect();
        for u in &vs {
            for v in &vs {
                assert_eq!(g.is_edge(u, v), u.is_odd() != v.is_odd());
            }
        }
    }

    #[test]
    fn neighbor_order() {
        let g = CayleyGraph::build(3).unwrap();
        assert_eq!(
            g.neighbors(&p("123")).unwrap(),
            vec![p("213"), p("321"), p("132")]
        );
        let g4 = CayleyGraph::build(4).unwrap();
        assert_eq!(g4.neighbors(&p("1234")).unwrap().len(), 5);
        assert!(matches!(
            g4.neighbors(&p("123")),
            Err(CayleyError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn copies_and_outgoing() {
        assert_eq!(CayleyGraph::copy_of(&p("2413")), 3);
        assert_eq!(CayleyGraph::copy_of(&p("1234")), 4);
        assert_eq!(CayleyGraph::out_minus(&p("2413")), p("2431"));
        assert_eq!(CayleyGraph::out_plus(&p("1432")), p("2431"));
        for n in 3..=5 {
            let g = CayleyGraph::build(n).unwrap();
            for v in g.vertices() {
                let (plus, minus) = (CayleyGraph::out_plus(&v), CayleyGraph::out_minus(&v));
                let c = CayleyGraph::copy_of(&v);
                assert_ne!(CayleyGraph::copy_of(&plus), c);
                assert_ne!(CayleyGraph::copy_of(&minus), c);
                assert_ne!(CayleyGraph::copy_of(&plus), CayleyGraph::copy_of(&minus));
                let in_copy = g
                    .neighbors(&v)
                    .unwrap()
                    .into_iter()
                    .filter(|w| CayleyGraph::copy_of(w) == c)
                    .count();
                assert_eq!(in_copy, 2 * n - 5);
            }
        }
    }

    #[test]
    fn outgoing_neighbours_disjoint_within_copy() {
        for n in 3..=5 {
            let g = CayleyGraph::build(n).unwrap();
            for c in 1..=n as u8 {
                let mut seen = HashSet::new();
                let vs = g.copy_vertices(c).unwrap();
                assert_eq!(vs.len() as u64, factorial(n - 1));
                for v in vs {
                    assert!(seen.insert(CayleyGraph::out_plus(&v)));
                    assert!(seen.insert(CayleyGraph::out_minus(&v)));
                }
            }
        }
    }

    #[test]
    fn cross_edge_counts() {
        let g4 = CayleyGraph::build(4).unwrap();
        assert_eq!(g4.cross_edges(1, 2).unwrap().len(), 4);
        let g5 = CayleyGraph::build(5).unwrap();
        for i in 1..=5u8 {
            for j in 1..=5u8 {
                if i != j {
                    let edges = g5.cross_edges(i, j).unwrap();
                    assert_eq!(edges.len(), 12);
                    for (u, w) in edges {
                        assert_eq!(CayleyGraph::copy_of(&u), i);
                        assert_eq!(CayleyGraph::copy_of(&w), j);
                        assert!(g5.is_edge(&u, &w));
                    }
                }
            }
        }
        assert_eq!(g4.cross_edges(2, 2), Err(CayleyError::SameCopy(2)));
    }

    #[test]
    fn common_neighbour_examples() {
        let g3 = CayleyGraph::build(3).unwrap();
        let evens: Vec<_> = g3.vertices().filter(|v| !v.is_odd()).collect();
        assert_eq!(g3.common_neighbors(&evens).unwrap().len(), 3);
        for u in g3.vertices() {
            for w in g3.neighbors(&u).unwrap() {
                assert!(g3.common_neighbors(&[u, w]).unwrap().is_empty());
            }
        }
        let g4 = CayleyGraph::build(4).unwrap();
        let vs: Vec<_> = g4.vertices().collect();
        for (i, u) in vs.iter().enumerate() {
            for w in &vs[i + 1..] {
                assert!(g4.common_neighbors(&[*u, *w]).unwrap().len() <= 3);
            }
        }
        assert_eq!(g3.common_neighbors(&[p("123")]), Err(CayleyError::Arity(1)));
        assert_eq!(
            g3.common_neighbors(&[p("123"), p("123")]),
            Err(CayleyError::Duplicate(p("123")))
        );
    }

    #[test]
    fn views() {
        let g4 = CayleyGraph::build(4).unwrap();
        let one = g4.induced(&[2], HashSet::new()).unwrap();
        let vs = one.vertices();
        assert_eq!(vs.len(), 6);
        for v in &vs {
            assert_eq!(one.degree(v), 3);
        }
        let full = g4.full_view();
        for v in g4.vertices() {
            let mut a: Vec<_> = full.neighbors(&v).collect();
            let mut b = g4.neighbors(&v).unwrap();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
        let g5 = CayleyGraph::build(5).unwrap();
        let two = g5.induced(&[1, 2], HashSet::new()).unwrap();
        let min_deg = two.vertices().iter().map(|v| two.degree(v)).min().unwrap();
        assert_eq!(min_deg, 5);
        assert_eq!(g4.induced(&[], HashSet::new()), Err(CayleyError::EmptyCopySet));
        let holed = one.without([vs[0]]);
        assert_eq!(holed.len(), 5);
        assert!(!holed.contains(&vs[0]));
    }

    #[test]
    fn subcube_is_lower_dimension_copy() {
        let anchor = p("31524");
        let sub = CopyView::subcube(anchor, 4).unwrap();
        assert_eq!(sub.len(), 24);
        assert!(sub.vertices().iter().all(|v| v.last() == 4));
        let sub3 = CopyView::subcube(anchor, 3).unwrap();
        let vs = sub3.vertices();
        assert_eq!(vs.len(), 6);
        for v in &vs {
            assert_eq!(&v.symbols()[3..], &[2, 4]);
            assert_eq!(sub3.degree(v), 3);
        }
    }

    #[test]
    fn exports() {
        let g = CayleyGraph::build(3).unwrap();
        let edges = g.to_edge_list();
        assert_eq!(edges.lines().count(), 9);
        assert!(edges.starts_with("123 132\n"));
        for line in edges.lines() {
            let (u, v) = line.split_once(' ').unwrap();
            assert!(p(u).rank() < p(v).rank());
        }
        let dot = g.to_dot();
        assert!(dot.starts_with("graph BS3 {"));
        assert_eq!(dot.matches(" -- ").count(), 9);
    }
}
