//! Vertex-disjoint path families by unit-capacity max-flow.
//!
//! Every routine builds a node-split network over the members of a [`CopyView`]:
//! each vertex `v` becomes `v_in -> v_out` with capacity one, and each edge `uw`
//! becomes the arcs `u_out -> w_in` and `w_out -> u_in`. Augmenting paths are found
//! breadth-first, scanning neighbours in generator order, so results are
//! reproducible.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::cayley::CopyView;
use crate::permutation::Permutation;

pub type Path = Vec<Permutation>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MengerError {
    #[error("vertex {0} is not in the view")]
    NotInView(Permutation),
    #[error("fan source {0} is also a target")]
    SourceInTargets(Permutation),
    #[error("need {needed} endpoints on each side, have {have}")]
    TooFewEndpoints { needed: usize, have: usize },
    #[error("only {found} of {requested} disjoint paths exist; separator of size {}", cut.len())]
    Infeasible {
        requested: usize,
        found: usize,
        cut: Vec<Permutation>,
    },
    #[error("u and v must differ")]
    SameVertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathKind {
    /// Pairwise fully vertex-disjoint paths from a set `X` to a set `Y`.
    SetToSet,
    /// Paths sharing only their first vertex, ending at distinct targets.
    Fan,
    /// Internally disjoint paths between two fixed vertices.
    Pair,
}

#[derive(Debug, Clone)]
pub struct DisjointPathSet {
    pub paths: Vec<Path>,
    pub kind: PathKind,
    pub context: CopyView,
}

impl DisjointPathSet {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Re-checks simplicity, adjacency in the context view and the disjointness
    /// pattern for [`kind`](Self::kind), using only set arithmetic.
    pub fn check(&self) -> Result<(), String> {
        for path in &self.paths {
            let distinct: HashSet<_> = path.iter().collect();
            if distinct.len() != path.len() {
                return Err(format!("path {:?} repeats a vertex", path));
            }
            for v in path {
                if !self.context.contains(v) {
                    return Err(format!("{} lies outside the view", v));
                }
            }
            for w in path.windows(2) {
                if !self.context.is_edge(&w[0], &w[1]) {
                    return Err(format!("{} and {} are not adjacent", w[0], w[1]));
                }
            }
        }
        let shared: HashSet<Permutation> = match self.kind {
            PathKind::SetToSet => HashSet::new(),
            PathKind::Fan => self.paths.first().map(|p| p[0]).into_iter().collect(),
            PathKind::Pair => self
                .paths
                .first()
                .map(|p| [p[0], *p.last().unwrap()])
                .into_iter()
                .flatten()
                .collect(),
        };
        if self.kind != PathKind::SetToSet {
            for path in &self.paths {
                if !shared.contains(&path[0]) {
                    return Err("paths do not share their source".into());
                }
            }
        }
        let mut owner: HashMap<Permutation, usize> = HashMap::new();
        for (i, path) in self.paths.iter().enumerate() {
            for v in path {
                if shared.contains(v) {
                    continue;
                }
                if let Some(j) = owner.insert(*v, i) {
                    return Err(format!("paths {} and {} share {}", j, i, v));
                }
            }
        }
        if self.kind == PathKind::Pair {
            let mut seen_direct = false;
            for path in &self.paths {
                if path.len() == 2 {
                    if seen_direct {
                        return Err("the direct edge is used twice".into());
                    }
                    seen_direct = true;
                }
            }
        }
        Ok(())
    }
}

const INF: i32 = i32::MAX / 4;

/// Node-split flow network over the members of a view.
pub(crate) struct Network {
    verts: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i32>,
    orig: Vec<i32>,
    vertex_arc: Vec<usize>,
}

impl Network {
    /// Builds the network; with `shuffle` the neighbour scan order is permuted by a
    /// seeded generator (used by randomized restarts), otherwise generator order.
    pub(crate) fn new(view: &CopyView, shuffle: Option<u64>) -> Self {
        let verts = view.vertices();
        let index: HashMap<Permutation, usize> =
            verts.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let nodes = 2 * verts.len() + 2;
        let mut net = Self {
            verts,
            index,
            head: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
            orig: Vec::new(),
            vertex_arc: Vec::new(),
        };
        let mut rng = shuffle.map(ChaCha8Rng::seed_from_u64);
        for i in 0..net.verts.len() {
            let e = net.add_arc(2 * i, 2 * i + 1, 1);
            net.vertex_arc.push(e);
        }
        for i in 0..net.verts.len() {
            let v = net.verts[i];
            let mut nbrs: Vec<usize> = view.neighbors(&v).map(|w| net.index[&w]).collect();
            if let Some(rng) = rng.as_mut() {
                nbrs.shuffle(rng);
            }
            for j in nbrs {
                net.add_arc(2 * i + 1, 2 * j, 1);
            }
        }
        net
    }

    fn source(&self) -> usize {
        2 * self.verts.len()
    }

    fn sink(&self) -> usize {
        2 * self.verts.len() + 1
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: i32) -> usize {
        let e = self.to.len();
        self.to.push(to);
        self.cap.push(cap);
        self.orig.push(cap);
        self.head[from].push(e);
        self.to.push(from);
        self.cap.push(0);
        self.orig.push(0);
        self.head[to].push(e + 1);
        e
    }

    pub(crate) fn id(&self, v: &Permutation) -> Result<usize, MengerError> {
        self.index.get(v).copied().ok_or(MengerError::NotInView(*v))
    }

    /// Disallows passing through `v` (its in/out arc gets capacity zero).
    fn close(&mut self, v: usize) {
        let e = self.vertex_arc[v];
        self.cap[e] = 0;
        self.orig[e] = 0;
    }

    fn max_flow(&mut self, limit: usize) -> usize {
        let (s, t) = (self.source(), self.sink());
        let mut flow = 0usize;
        let mut parent = vec![usize::MAX; self.head.len()];
        while flow < limit {
            parent.iter_mut().for_each(|p| *p = usize::MAX);
            parent[s] = usize::MAX - 1;
            let mut queue = VecDeque::from([s]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.head[u] {
                    let w = self.to[e];
                    if self.cap[e] > 0 && parent[w] == usize::MAX {
                        parent[w] = e;
                        if w == t {
                            break 'bfs;
                        }
                        queue.push_back(w);
                    }
                }
            }
            if parent[t] == usize::MAX {
                break;
            }
            let mut w = t;
            while w != s {
                let e = parent[w];
                self.cap[e] -= 1;
                self.cap[e ^ 1] += 1;
                w = self.to[e ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// Splits the flow into vertex sequences, each from a node fed by the super
    /// source to the super sink.
    fn decompose(&self) -> Vec<Path> {
        let (s, t) = (self.source(), self.sink());
        let mut used: Vec<i32> = (0..self.cap.len())
            .map(|e| if e % 2 == 0 { self.orig[e] - self.cap[e] } else { 0 })
            .collect();
        let mut paths = Vec::new();
        while let Some(&first) = self.head[s].iter().find(|&&e| used[e] > 0) {
            used[first] -= 1;
            let mut node = self.to[first];
            let mut path: Path = Vec::new();
            while node != t {
                let vertex = self.verts[node / 2];
                if path.last() != Some(&vertex) {
                    path.push(vertex);
                }
                let e = *self.head[node]
                    .iter()
                    .find(|&&e| used[e] > 0)
                    .expect("flow conservation");
                used[e] -= 1;
                node = self.to[e];
            }
            paths.push(path);
        }
        paths
    }

    /// Vertices whose removal separates source from sink, read off the residual
    /// graph after a maximum flow.
    fn min_cut(&self) -> Vec<Permutation> {
        let s = self.source();
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.head[u] {
                let w = self.to[e];
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let mut cut = HashSet::new();
        for (u, arcs) in self.head.iter().enumerate() {
            if !seen[u] {
                continue;
            }
            for &e in arcs {
                let w = self.to[e];
                if e % 2 == 1 || seen[w] || self.orig[e] == 0 {
                    continue;
                }
                // s -> x_in names x; every other crossing arc leaves a node of its vertex
                let vertex_node = if u == s { w } else { u };
                if vertex_node < 2 * self.verts.len() {
                    cut.insert(self.verts[vertex_node / 2]);
                }
            }
        }
        let mut cut: Vec<_> = cut.into_iter().collect();
        cut.sort();
        cut
    }
}

fn require_in(view: &CopyView, vs: &[Permutation]) -> Result<(), MengerError> {
    match vs.iter().find(|v| !view.contains(v)) {
        Some(v) => Err(MengerError::NotInView(*v)),
        None => Ok(()),
    }
}

fn dedup(vs: &[Permutation]) -> Vec<Permutation> {
    let mut seen = HashSet::new();
    vs.iter().copied().filter(|v| seen.insert(*v)).collect()
}

/// `k` pairwise vertex-disjoint paths from `xs` to `ys` with no inner vertex in
/// `xs ∪ ys`. A vertex in both sets yields a zero-length path.
pub fn disjoint_set_paths(
    view: &CopyView,
    xs: &[Permutation],
    ys: &[Permutation],
    k: usize,
) -> Result<DisjointPathSet, MengerError> {
    let (xs, ys) = (dedup(xs), dedup(ys));
    require_in(view, &xs)?;
    require_in(view, &ys)?;
    let have = xs.len().min(ys.len());
    if have < k {
        return Err(MengerError::TooFewEndpoints { needed: k, have });
    }
    let mut net = Network::new(view, None);
    let (s, t) = (net.source(), net.sink());
    for x in &xs {
        let id = net.id(x)?;
        net.add_arc(s, 2 * id, 1);
    }
    for y in &ys {
        let id = net.id(y)?;
        net.add_arc(2 * id + 1, t, 1);
    }
    let found = net.max_flow(k);
    if found < k {
        net.max_flow(usize::MAX);
        let cut = net.min_cut();
        return Err(MengerError::Infeasible {
            requested: k,
            found,
            cut,
        });
    }
    let xset: HashSet<_> = xs.iter().collect();
    let yset: HashSet<_> = ys.iter().collect();
    let paths = net
        .decompose()
        .into_iter()
        .map(|p| {
            let end = p.iter().position(|v| yset.contains(v)).expect("ends in Y");
            let start = p[..=end].iter().rposition(|v| xset.contains(v)).expect("starts in X");
            p[start..=end].to_vec()
        })
        .collect();
    Ok(DisjointPathSet {
        paths,
        kind: PathKind::SetToSet,
        context: view.clone(),
    })
}

/// A fan from `v` to every vertex of `targets`: paths share only `v`, end at
/// distinct targets and meet `targets` only at their last vertex.
pub fn fan(
    view: &CopyView,
    v: &Permutation,
    targets: &[Permutation],
) -> Result<DisjointPathSet, MengerError> {
    let targets = dedup(targets);
    if targets.contains(v) {
        return Err(MengerError::SourceInTargets(*v));
    }
    let caps: Vec<(Permutation, usize)> = targets.iter().map(|x| (*x, 1)).collect();
    let paths = hub_flow(view, v, &caps, None)?;
    Ok(DisjointPathSet {
        paths,
        kind: PathKind::Fan,
        context: view.clone(),
    })
}

/// Internally disjoint paths from `hub` where sink `x` receives `cap` of them.
/// Sinks are never passed through. Fails unless every sink is saturated.
pub(crate) fn hub_flow(
    view: &CopyView,
    hub: &Permutation,
    sinks: &[(Permutation, usize)],
    shuffle: Option<u64>,
) -> Result<Vec<Path>, MengerError> {
    require_in(view, &[*hub])?;
    let sink_vs: Vec<_> = sinks.iter().map(|(x, _)| *x).collect();
    require_in(view, &sink_vs)?;
    let mut net = Network::new(view, shuffle);
    let (s, t) = (net.source(), net.sink());
    let h = net.id(hub)?;
    net.close(h);
    let total: usize = sinks.iter().map(|(_, c)| c).sum();
    net.add_arc(s, 2 * h + 1, total as i32);
    for (x, c) in sinks {
        let id = net.id(x)?;
        net.close(id);
        net.add_arc(2 * id, t, *c as i32);
    }
    let found = net.max_flow(total);
    if found < total {
        let cut = net.min_cut();
        return Err(MengerError::Infeasible {
            requested: total,
            found,
            cut,
        });
    }
    Ok(net.decompose())
}

/// Up to `limit` internally disjoint `u`–`v` paths (all of them if `limit` is
/// `usize::MAX`). The direct edge, when present, is one of the paths.
pub fn pair_paths(
    view: &CopyView,
    u: &Permutation,
    v: &Permutation,
    limit: usize,
) -> Result<DisjointPathSet, MengerError> {
    pair_paths_seeded(view, u, v, limit, None)
}

pub(crate) fn pair_paths_seeded(
    view: &CopyView,
    u: &Permutation,
    v: &Permutation,
    limit: usize,
    shuffle: Option<u64>,
) -> Result<DisjointPathSet, MengerError> {
    if u == v {
        return Err(MengerError::SameVertex);
    }
    require_in(view, &[*u, *v])?;
    let mut net = Network::new(view, shuffle);
    let (s, t) = (net.source(), net.sink());
    let (a, b) = (net.id(u)?, net.id(v)?);
    net.close(a);
    net.close(b);
    net.add_arc(s, 2 * a + 1, INF);
    net.add_arc(2 * b, t, INF);
    net.max_flow(limit);
    Ok(DisjointPathSet {
        paths: net.decompose(),
        kind: PathKind::Pair,
        context: view.clone(),
    })
}

/// Maximum number of internally disjoint `u`–`v` paths in the view.
pub fn local_connectivity(
    view: &CopyView,
    u: &Permutation,
    v: &Permutation,
) -> Result<usize, MengerError> {
    Ok(pair_paths(view, u, v, usize::MAX)?.len())
}

/// Vertex connectivity of a view.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Kappa {
    pub value: usize,
    pub connected: bool,
}

/// Exact vertex connectivity. Fixes the first vertex `v` and takes the minimum of
/// its local connectivity to every non-neighbour and of the local connectivity of
/// every non-adjacent pair of its neighbours.
pub fn kappa(view: &CopyView) -> Kappa {
    let vs = view.vertices();
    if vs.len() < 2 || !is_connected(view, &vs) {
        return Kappa {
            value: 0,
            connected: vs.len() == 1,
        };
    }
    let n = vs.len();
    if vs.iter().all(|v| view.degree(v) == n - 1) {
        return Kappa {
            value: n - 1,
            connected: true,
        };
    }
    let pivot = vs[0];
    let nbrs: Vec<_> = view.neighbors(&pivot).collect();
    let mut best = vs.iter().map(|v| view.degree(v)).min().unwrap_or(0);
    let lc = |a: &Permutation, b: &Permutation| {
        local_connectivity(view, a, b).expect("both vertices are members")
    };
    for w in &vs[1..] {
        if !nbrs.contains(w) {
            best = best.min(lc(&pivot, w));
        }
    }
    for (i, x) in nbrs.iter().enumerate() {
        for y in &nbrs[i + 1..] {
            if !view.is_edge(x, y) {
                best = best.min(lc(x, y));
            }
        }
    }
    Kappa {
        value: best,
        connected: true,
    }
}

fn is_connected(view: &CopyView, vs: &[Permutation]) -> bool {
    let mut seen = HashSet::from([vs[0]]);
    let mut queue = VecDeque::from([vs[0]]);
    while let Some(u) = queue.pop_front() {
        for w in view.neighbors(&u) {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == vs.len()
}

/// `true` if removing `cut` leaves no path from `xs` to `ys` (vertices of the cut
/// itself excluded from both sides).
pub fn separates(view: &CopyView, cut: &[Permutation], xs: &[Permutation], ys: &[Permutation]) -> bool {
    let rest = view.without(cut.iter().copied());
    let targets: HashSet<_> = ys.iter().filter(|y| rest.contains(y)).collect();
    let mut seen: HashSet<Permutation> = xs.iter().copied().filter(|x| rest.contains(x)).collect();
    let mut queue: VecDeque<_> = seen.iter().copied().collect();
    while let Some(u) = queue.pop_front() {
        if targets.contains(&u) {
            return false;
        }
        for w in rest.neighbors(&u) {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::CayleyGraph;
    use std::collections::HashSet;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn set_to_set_outside_a_copy() {
        let g = CayleyGraph::build(4).unwrap();
        let rest = g.induced(&[2, 3, 4], HashSet::new()).unwrap();
        let a = p("2341");
        let b = p("3421");
        let xs = [CayleyGraph::out_plus(&a), CayleyGraph::out_minus(&a), p("2134"), p("3124")];
        let ys = [CayleyGraph::out_plus(&b), CayleyGraph::out_minus(&b), p("4132"), p("4213")];
        let set = disjoint_set_paths(&rest, &xs, &ys, 4).unwrap();
        assert_eq!(set.len(), 4);
        set.check().unwrap();
        for path in &set.paths {
            assert!(xs.contains(&path[0]));
            assert!(ys.contains(path.last().unwrap()));
        }
    }

    #[test]
    fn identical_sets_give_zero_length_paths() {
        let g = CayleyGraph::build(4).unwrap();
        let view = g.full_view();
        let xs = [p("1234"), p("2143"), p("4321")];
        let set = disjoint_set_paths(&view, &xs, &xs, 3).unwrap();
        assert!(set.paths.iter().all(|q| q.len() == 1));
        set.check().unwrap();
    }

    #[test]
    fn single_path_between_two_vertices() {
        let g = CayleyGraph::build(4).unwrap();
        let view = g.full_view();
        let set = disjoint_set_paths(&view, &[p("1234")], &[p("4321")], 1).unwrap();
        assert_eq!(set.len(), 1);
        set.check().unwrap();
    }

    #[test]
    fn too_few_endpoints() {
        let g = CayleyGraph::build(4).unwrap();
        let view = g.full_view();
        let err = disjoint_set_paths(&view, &[p("1234")], &[p("4321"), p("4312")], 2).unwrap_err();
        assert_eq!(err, MengerError::TooFewEndpoints { needed: 2, have: 1 });
    }

    #[test]
    fn cut_is_verified_separator() {
        // Path-like bottleneck: in one copy of BS4 (= K33) remove two odd vertices so
        // that all evens hang off a single odd vertex.
        let g = CayleyGraph::build(3).unwrap();
        let view = g.full_view();
        let odds: Vec<_> = g.vertices().filter(|v| v.is_odd()).collect();
        let evens: Vec<_> = g.vertices().filter(|v| !v.is_odd()).collect();
        let thin = view.without([odds[0], odds[1]]);
        let err = disjoint_set_paths(&thin, &evens[..2], &[evens[2], odds[2]], 2).unwrap_err();
        let MengerError::Infeasible { cut, requested, found } = err else {
            panic!("expected infeasible");
        };
        assert_eq!((requested, found), (2, 1));
        assert!(cut.len() < 2);
        assert!(separates(&thin, &cut, &evens[..2], &[evens[2], odds[2]]));
    }

    #[test]
    fn fans() {
        let g3 = CayleyGraph::build(3).unwrap();
        let v = p("123");
        let nb = g3.neighbors(&v).unwrap();
        let f = fan(&g3.full_view(), &v, &nb).unwrap();
        assert!(f.paths.iter().all(|q| q.len() == 2));
        f.check().unwrap();

        let g4 = CayleyGraph::build(4).unwrap();
        for c in 1..=4u8 {
            let copy = g4.induced(&[c], HashSet::new()).unwrap();
            let vs = copy.vertices();
            for v in &vs {
                let others: Vec<_> = vs.iter().filter(|w| *w != v).copied().collect();
                for a in 0..others.len() {
                    for b in a + 1..others.len() {
                        for d in b + 1..others.len() {
                            let xs = [others[a], others[b], others[d]];
                            let f = fan(&copy, v, &xs).unwrap();
                            assert_eq!(f.len(), 3);
                            f.check().unwrap();
                            let ends: HashSet<_> = f.paths.iter().map(|q| *q.last().unwrap()).collect();
                            assert_eq!(ends.len(), 3);
                            for q in &f.paths {
                                assert!(q[1..q.len() - 1].iter().all(|w| !xs.contains(w)));
                            }
                        }
                    }
                }
            }
        }
        assert!(matches!(
            fan(&g3.full_view(), &v, &[v]),
            Err(MengerError::SourceInTargets(_))
        ));
    }

    #[test]
    fn oversized_fan_in_bs3_copy_is_infeasible() {
        // Exhaustive-cut oracle: in K33 every vertex has degree 3, so its neighbourhood
        // is a 3-separator; a 4-fan cannot exist.
        let g4 = CayleyGraph::build(4).unwrap();
        let copy = g4.induced(&[1], HashSet::new()).unwrap();
        let vs = copy.vertices();
        let v = vs[0];
        let xs: Vec<_> = vs[1..5].to_vec();
        let nb: Vec<_> = copy.neighbors(&v).collect();
        assert!(separates(&copy, &nb, &[v], &xs.iter().copied().filter(|x| !nb.contains(x)).collect::<Vec<_>>()));
        match fan(&copy, &v, &xs) {
            Err(MengerError::Infeasible { requested: 4, found: 3, cut }) => assert!(cut.len() <= 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn local_connectivities() {
        let g3 = CayleyGraph::build(3).unwrap();
        let v = p("123");
        let w = p("213");
        assert_eq!(local_connectivity(&g3.full_view(), &v, &w).unwrap(), 3);
        let g4 = CayleyGraph::build(4).unwrap();
        let full = g4.full_view();
        let vs: Vec<_> = g4.vertices().collect();
        let mut min = usize::MAX;
        for u in &vs[1..] {
            let l = local_connectivity(&full, &vs[0], u).unwrap();
            assert!(l >= 5);
            min = min.min(l);
        }
        assert_eq!(min, 5);
        let two = g4.induced(&[1, 2], HashSet::new()).unwrap();
        let tv = two.vertices();
        for u in &tv[1..] {
            assert!(local_connectivity(&two, &tv[0], u).unwrap() >= 3);
        }
        assert_eq!(local_connectivity(&full, &v_4(), &v_4()), Err(MengerError::SameVertex));
    }

    fn v_4() -> Permutation {
        p("1234")
    }

    #[test]
    fn kappa_values() {
        let g3 = CayleyGraph::build(3).unwrap();
        assert_eq!(kappa(&g3.full_view()).value, 3);
        let g4 = CayleyGraph::build(4).unwrap();
        assert_eq!(kappa(&g4.full_view()).value, 5);
        assert_eq!(kappa(&g4.induced(&[1, 2, 3], HashSet::new()).unwrap()).value, 4);
        assert_eq!(kappa(&g4.induced(&[2, 4], HashSet::new()).unwrap()).value, 3);
        let g5 = CayleyGraph::build(5).unwrap();
        assert_eq!(kappa(&g5.induced(&[3], HashSet::new()).unwrap()).value, 5);
        // disconnected: a copy of BS4 with a vertex neighbourhood removed
        let copy = g4.induced(&[1], HashSet::new()).unwrap();
        let v = copy.vertices()[0];
        let cut: Vec<_> = copy.neighbors(&v).collect();
        let k = kappa(&copy.without(cut));
        assert_eq!(k, Kappa { value: 0, connected: false });
    }

    #[test]
    fn pair_paths_use_direct_edge_once() {
        let g3 = CayleyGraph::build(3).unwrap();
        let set = pair_paths(&g3.full_view(), &p("123"), &p("213"), usize::MAX).unwrap();
        assert_eq!(set.len(), 3);
        set.check().unwrap();
        assert_eq!(set.paths.iter().filter(|q| q.len() == 2).count(), 1);
    }
}
