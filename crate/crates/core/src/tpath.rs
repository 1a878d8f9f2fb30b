//! T-paths: assembly from a web, independent verification, the upper bound, a
//! brute-force oracle for small graphs and a structural audit.
//!
//! A T-path for terminals `T = {a, b, c}` is a path whose ends are two terminals
//! and which passes through the third. Two T-paths are internally disjoint when
//! they share no vertex outside `T` and no edge.

use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{CayleyError, CayleyGraph, CopyView};
use crate::menger::{self, Path};
use crate::permutation::{factorial, Permutation, PermutationError};
use crate::webbuilder::{build_web, PairwiseWeb, TerminalTriple, WebError, WebShape};

/// `⌊3n/2⌋ - 3`.
pub fn pi3_formula(n: usize) -> usize {
    (3 * n / 2).saturating_sub(3)
}

#[derive(Debug, Error)]
pub enum TPathError {
    #[error(transparent)]
    Web(#[from] WebError),
    #[error(transparent)]
    Graph(#[from] CayleyError),
    #[error(transparent)]
    Permutation(#[from] PermutationError),
    #[error("web sizes {ab}, {bc}, {ac} cannot be paired into T-paths")]
    Unpairable { ab: usize, bc: usize, ac: usize },
    #[error("no T-path exists for these terminals")]
    NoTPath,
    #[error("{0} is only supported for n <= {1}")]
    TooLarge(&'static str, usize),
    #[error("assembled witness failed verification: {0}")]
    Rejected(Violation),
}

/// The first predicate a verifier found violated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub predicate: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.predicate, self.detail)
    }
}

impl std::error::Error for Violation {}

fn violation<T>(predicate: &'static str, detail: impl Into<String>) -> Result<T, Violation> {
    Err(Violation {
        predicate,
        detail: detail.into(),
    })
}

/// Which web paths a T-path was joined from, as `(family, index)` pairs.
/// `middle` is the terminal the T-path passes through.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub middle: char,
    pub parts: Vec<(&'static str, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    pub a: Permutation,
    pub b: Permutation,
    pub c: Permutation,
}

/// A verified family of T-paths with the web it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TPathWitness {
    pub n: usize,
    pub terminals: [Permutation; 3],
    pub roles: Roles,
    pub web: PairwiseWeb,
    pub t_paths: Vec<Path>,
    pub formula: usize,
    pub verified: bool,
    #[serde(skip)]
    pub provenance: Vec<Provenance>,
}

impl TPathWitness {
    pub fn triple(&self) -> TerminalTriple {
        TerminalTriple {
            a: self.roles.a,
            b: self.roles.b,
            c: self.roles.c,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness serializes")
    }
}

/// Joins the web families into T-paths: `x` through `b`, `y` through `a` and `z`
/// through `c`, where `x + y = |ab|`, `x + z = |bc|`, `y + z = |ac|`.
pub fn assemble(web: &PairwiseWeb) -> Result<(Vec<Path>, Vec<Provenance>), TPathError> {
    let (ab, bc, ac) = (web.ab.len() as i64, web.bc.len() as i64, web.ac.len() as i64);
    let unpairable = TPathError::Unpairable {
        ab: web.ab.len(),
        bc: web.bc.len(),
        ac: web.ac.len(),
    };
    let (x2, y2, z2) = (ab + bc - ac, ab + ac - bc, bc + ac - ab);
    if [x2, y2, z2].iter().any(|v| *v < 0 || v % 2 != 0) {
        return Err(unpairable);
    }
    let (x, y) = ((x2 / 2) as usize, (y2 / 2) as usize);
    let mut paths = Vec::new();
    let mut prov = Vec::new();
    for i in 0..x {
        let mut p = web.ab[i].clone();
        p.extend_from_slice(&web.bc[i][1..]);
        paths.push(p);
        prov.push(Provenance {
            middle: 'b',
            parts: vec![("ab", i), ("bc", i)],
        });
    }
    for i in 0..y {
        let mut p: Path = web.ab[x + i].iter().rev().copied().collect();
        p.extend_from_slice(&web.ac[i][1..]);
        paths.push(p);
        prov.push(Provenance {
            middle: 'a',
            parts: vec![("ab", x + i), ("ac", i)],
        });
    }
    for (i, j) in (y..web.ac.len()).zip(x..web.bc.len()) {
        let mut p = web.ac[i].clone();
        p.extend(web.bc[j].iter().rev().skip(1));
        paths.push(p);
        prov.push(Provenance {
            middle: 'c',
            parts: vec![("ac", i), ("bc", j)],
        });
    }
    Ok((paths, prov))
}

/// One T-path found by search, for graphs too small to carry a web.
fn direct_tpath(g: &CayleyGraph, t: &TerminalTriple) -> Option<Path> {
    let view = g.full_view();
    let ts = t.as_array();
    for mid in 0..3 {
        let (x, z) = (ts[(mid + 1) % 3], ts[(mid + 2) % 3]);
        let first = menger::pair_paths(&view.without([z]), &x, &ts[mid], usize::MAX).ok()?;
        for p in first.paths {
            let rest = view.without(p[..p.len() - 1].iter().copied());
            if let Ok(second) = menger::pair_paths(&rest, &ts[mid], &z, 1) {
                if let Some(q) = second.paths.first() {
                    let mut full = p.clone();
                    full.extend_from_slice(&q[1..]);
                    return Some(full);
                }
            }
        }
    }
    None
}

/// Builds and verifies a witness for three distinct vertices of `g`.
pub fn build_witness(g: &CayleyGraph, terminals: [Permutation; 3]) -> Result<TPathWitness, TPathError> {
    let t = TerminalTriple::assign(g, terminals)?;
    let (web, t_paths, provenance) = if g.dim() == 3 {
        let p = direct_tpath(g, &t).ok_or(TPathError::NoTPath)?;
        let prov = Provenance {
            middle: '-',
            parts: Vec::new(),
        };
        (PairwiseWeb::default(), vec![p], vec![prov])
    } else {
        let web = build_web(g, &t)?;
        let (paths, prov) = assemble(&web)?;
        (web, paths, prov)
    };
    let mut witness = TPathWitness {
        n: g.dim(),
        terminals,
        roles: Roles {
            a: t.a,
            b: t.b,
            c: t.c,
        },
        web,
        t_paths,
        formula: pi3_formula(g.dim()),
        verified: false,
        provenance,
    };
    verify_witness(g, &witness).map_err(TPathError::Rejected)?;
    witness.verified = true;
    Ok(witness)
}

/// Checks that a path is simple, non-trivial and follows edges of `view`.
fn check_path(view: &CopyView, p: &Path) -> Result<(), Violation> {
    if p.len() < 2 {
        return violation("path too short", format!("{} vertices", p.len()));
    }
    let mut seen = HashSet::new();
    for v in p {
        if !view.contains(v) {
            return violation("vertex outside graph", v.to_string());
        }
        if !seen.insert(*v) {
            return violation("repeated vertex", v.to_string());
        }
    }
    for w in p.windows(2) {
        if !view.is_edge(&w[0], &w[1]) {
            return violation("non-adjacent consecutive vertices", format!("{} {}", w[0], w[1]));
        }
    }
    Ok(())
}

fn edge_key(u: &Permutation, v: &Permutation) -> (Permutation, Permutation) {
    if u < v {
        (*u, *v)
    } else {
        (*v, *u)
    }
}

/// Verifies a witness from scratch: terminals and roles agree, the path count
/// matches the formula, every path is a T-path of `g`, and any two paths meet in
/// exactly `T` and share no edge.
pub fn verify_witness(g: &CayleyGraph, w: &TPathWitness) -> Result<(), Violation> {
    if w.n != g.dim() {
        return violation("dimension", format!("witness for n={}, graph BS_{}", w.n, g.dim()));
    }
    let mut given = w.terminals;
    let mut roles = [w.roles.a, w.roles.b, w.roles.c];
    given.sort();
    roles.sort();
    if given != roles || given[0] == given[1] || given[1] == given[2] {
        return violation("terminals", "roles are not the three distinct terminals");
    }
    if w.formula != pi3_formula(g.dim()) {
        return violation("formula", format!("{} recorded, {} expected", w.formula, pi3_formula(g.dim())));
    }
    if w.t_paths.len() != w.formula {
        return violation("path count", format!("{} paths, {} expected", w.t_paths.len(), w.formula));
    }
    verify_tpaths(g, &w.terminals, &w.t_paths)
}

/// T-path checks on a bare family of paths.
pub fn verify_tpaths(g: &CayleyGraph, terminals: &[Permutation; 3], paths: &[Path]) -> Result<(), Violation> {
    let view = g.full_view();
    let tset: HashSet<Permutation> = terminals.iter().copied().collect();
    let mut owner: HashMap<Permutation, usize> = HashMap::new();
    let mut edges: HashMap<(Permutation, Permutation), usize> = HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        check_path(&view, p)?;
        let (first, last) = (p[0], p[p.len() - 1]);
        if !tset.contains(&first) || !tset.contains(&last) {
            return violation("endpoints are not terminals", format!("path {}", i));
        }
        if let Some(missing) = terminals.iter().find(|x| !p.contains(x)) {
            return violation("path misses a terminal", format!("path {} misses {}", i, missing));
        }
        for v in p {
            if tset.contains(v) {
                continue;
            }
            if let Some(j) = owner.insert(*v, i) {
                return violation("vertex intersection exceeds T", format!("paths {} and {} share {}", j, i, v));
            }
        }
        for e in p.windows(2) {
            if let Some(j) = edges.insert(edge_key(&e[0], &e[1]), i) {
                return violation("shared edge", format!("paths {} and {} share {} {}", j, i, e[0], e[1]));
            }
        }
    }
    Ok(())
}

/// Verifies a web against the shape required in dimension `g.dim()`.
pub fn verify_web(g: &CayleyGraph, t: &TerminalTriple, web: &PairwiseWeb) -> Result<(), Violation> {
    check_web_in(&g.full_view(), t, web)
}

/// Web checks inside a frame: family sizes, endpoints and orientation, simple
/// paths along frame edges, no terminal inside a path, no inner vertex shared by
/// two paths, no repeated direct edge, and spares that are unused neighbours of `b`.
pub(crate) fn check_web_in(view: &CopyView, t: &TerminalTriple, web: &PairwiseWeb) -> Result<(), Violation> {
    let shape = WebShape::for_dim(view.dim());
    let have = web.shape();
    if (have.ab, have.bc, have.ac) != (shape.ab, shape.bc, shape.ac) {
        return violation(
            "path count",
            format!(
                "({}, {}, {}) paths, ({}, {}, {}) expected",
                have.ab, have.bc, have.ac, shape.ab, shape.bc, shape.ac
            ),
        );
    }
    let tset: HashSet<Permutation> = t.as_array().into();
    let mut owner: HashMap<Permutation, String> = HashMap::new();
    for (name, family, from, to) in [
        ("ab", &web.ab, t.a, t.b),
        ("bc", &web.bc, t.b, t.c),
        ("ac", &web.ac, t.a, t.c),
    ] {
        let mut direct = false;
        for (i, p) in family.iter().enumerate() {
            check_path(view, p)?;
            if p[0] != from || p[p.len() - 1] != to {
                return violation("wrong endpoints", format!("{} path {}", name, i));
            }
            if p.len() == 2 {
                if direct {
                    return violation("direct edge repeated", name.to_string());
                }
                direct = true;
            }
            for v in &p[1..p.len() - 1] {
                if tset.contains(v) {
                    return violation("terminal inside path", format!("{} path {} passes {}", name, i, v));
                }
                if let Some(other) = owner.insert(*v, format!("{} path {}", name, i)) {
                    return violation("inner vertex shared", format!("{} and {} {} share {}", other, name, i, v));
                }
            }
        }
    }
    if web.spares.len() != shape.spares {
        return violation("spare count", format!("{} spares, {} expected", web.spares.len(), shape.spares));
    }
    for (i, s) in web.spares.iter().enumerate() {
        if web.spares[..i].contains(s) {
            return violation("repeated spare", s.to_string());
        }
        if tset.contains(s) {
            return violation("spare is a terminal", s.to_string());
        }
        if !view.is_edge(&t.b, s) {
            return violation("spare not adjacent to b", s.to_string());
        }
        if owner.contains_key(s) {
            return violation("spare appears on path", s.to_string());
        }
    }
    Ok(())
}

/// How [`upper_bound`] finds the largest common neighbourhood of three vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundMode {
    /// Every triple; `n <= 4` only.
    Exhaustive,
    /// Random triples plus triples known to share neighbours inside a `BS_3`.
    Sampled { seed: u64, samples: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub r: usize,
    pub cmax: usize,
    pub bound: usize,
    pub triples: u64,
    pub exhaustive: bool,
}

fn common_of(g: &CayleyGraph, vs: [Permutation; 3]) -> usize {
    let n0: HashSet<Permutation> = g.neighbors_unchecked(&vs[0]).collect();
    let n1: HashSet<Permutation> = g.neighbors_unchecked(&vs[1]).collect();
    g.neighbors_unchecked(&vs[2])
        .filter(|w| n0.contains(w) && n1.contains(w))
        .count()
}

/// `⌊(3r - cmax) / 4⌋`: every T-path uses four terminal-edge incidences, and a
/// vertex adjacent to all three terminals can serve only one path.
pub fn upper_bound(g: &CayleyGraph, mode: BoundMode) -> Result<BoundReport, TPathError> {
    let n = g.dim();
    let r = g.degree();
    let (cmax, triples, exhaustive) = match mode {
        BoundMode::Exhaustive => {
            if n > 4 {
                return Err(TPathError::TooLarge("exhaustive bound", 4));
            }
            let vs: Vec<_> = g.vertices().collect();
            let (mut best, mut count) = (0, 0u64);
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    for k in j + 1..vs.len() {
                        best = best.max(common_of(g, [vs[i], vs[j], vs[k]]));
                        count += 1;
                    }
                }
            }
            (best, count, true)
        }
        BoundMode::Sampled { seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best = 0;
            let mut count = 0u64;
            for _ in 0..samples {
                let t = random_triple(g, &mut rng);
                best = best.max(common_of(g, t));
                count += 1;
            }
            for anchor in [Permutation::identity(n)?, Permutation::unrank(n, factorial(n) - 1)?] {
                let sub = CopyView::subcube(anchor, 3)?;
                let even: Vec<_> = sub.vertices().into_iter().filter(|v| v.is_odd() == anchor.is_odd()).collect();
                best = best.max(common_of(g, [even[0], even[1], even[2]]));
                count += 1;
            }
            (best, count, false)
        }
    };
    Ok(BoundReport {
        n,
        r,
        cmax,
        bound: (3 * r - cmax) / 4,
        triples,
        exhaustive,
    })
}

/// Three distinct vertices drawn uniformly by rank.
pub fn random_triple<R: rand::Rng>(g: &CayleyGraph, rng: &mut R) -> [Permutation; 3] {
    let total = g.vertex_count() as usize;
    let idx = sample(rng, total, 3);
    let v = |i: usize| Permutation::unrank(g.dim(), idx.index(i) as u64).expect("rank in range");
    [v(0), v(1), v(2)]
}

/// Exact (when `exact`) maximum number of internally disjoint T-paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub value: usize,
    pub exact: bool,
    /// `⌊3r/4⌋`, the incidence bound the search stops at.
    pub degree_bound: usize,
    /// Complete T-paths placed during the search.
    pub candidates: usize,
    pub nodes: u64,
}

/// Brute-force maximum for `n <= 4`. Places T-paths one at a time, each in the
/// graph left by the earlier ones, and decides whether one more fits by a
/// two-unit flow. The value is exact unless `budget` search nodes ran out first,
/// in which case it is a lower bound.
pub fn brute_force_pi3(g: &CayleyGraph, t: &TerminalTriple, budget: u64) -> Result<OracleResult, TPathError> {
    let n = g.dim();
    if n > 4 {
        return Err(TPathError::TooLarge("brute-force oracle", 4));
    }
    let total = g.vertex_count() as usize;
    let mut ids: HashMap<(usize, usize), u32> = HashMap::new();
    let mut adj: Vec<Vec<(usize, u32)>> = vec![Vec::new(); total];
    for (u, row) in adj.iter_mut().enumerate() {
        let v = Permutation::unrank(n, u as u64)?;
        for w in g.neighbors_unchecked(&v) {
            let w = w.rank() as usize;
            let next = ids.len() as u32;
            let e = *ids.entry((u.min(w), u.max(w))).or_insert(next);
            row.push((w, e));
        }
    }
    let t = t.as_array().map(|v| v.rank() as usize);
    let degree_bound = 3 * g.degree() / 4;
    let mut oracle = Oracle {
        t0_edges: adj[t[0]].iter().fold(0, |m, &(_, e)| m | 1 << e),
        tmask: t.iter().fold(0, |m, &v| m | 1 << v),
        adj,
        t,
        target: degree_bound,
        best: 0,
        nodes: 0,
        budget,
        placed: 0,
    };
    oracle.grow(0, 0, 0, None);
    Ok(OracleResult {
        value: oracle.best,
        exact: oracle.best >= degree_bound || oracle.nodes < budget,
        degree_bound,
        candidates: oracle.placed,
        nodes: oracle.nodes,
    })
}

/// Search state. Vertices are ranks, `blocked` holds inner vertices of placed
/// paths and `used` their edges.
struct Oracle {
    adj: Vec<Vec<(usize, u32)>>,
    t: [usize; 3],
    tmask: u32,
    t0_edges: u64,
    target: usize,
    best: usize,
    nodes: u64,
    budget: u64,
    placed: usize,
}

/// One T-path being walked `x → mid → z`.
struct Walk {
    depth: usize,
    blocked: u32,
    used: u64,
    key_min: Option<u32>,
    mid: usize,
    z: usize,
    dist: [Vec<u32>; 3],
}

impl Oracle {
    fn done(&self) -> bool {
        self.best >= self.target || self.nodes >= self.budget
    }

    fn open(&self, blocked: u32, used: u64, w: usize, e: u32) -> bool {
        blocked & 1 << w == 0 && used & 1 << e == 0
    }

    /// Largest `k` such that `k` more T-paths fit the free terminal edges: each
    /// path takes one or two edges at every terminal and four in total.
    fn room(&self, blocked: u32, used: u64) -> usize {
        let free = self.t.map(|v| self.adj[v].iter().filter(|&&(w, e)| self.open(blocked, used, w, e)).count());
        let mut k = *free.iter().min().expect("three terminals");
        while k > 0 && free.iter().map(|&f| f.min(2 * k)).sum::<usize>() < 4 * k {
            k -= 1;
        }
        k
    }

    fn grow(&mut self, depth: usize, blocked: u32, used: u64, key_min: Option<u32>) {
        self.nodes += 1;
        self.best = self.best.max(depth);
        if self.done() || depth + self.room(blocked, used) <= self.best {
            return;
        }
        if depth + 1 == self.target {
            if self.closes(blocked, used) {
                self.best = self.target;
            }
            return;
        }
        let dist = self.t.map(|v| self.distances(v, blocked, used));
        for mid in 0..3 {
            let (x, z) = {
                let (p, q) = (self.t[(mid + 1) % 3], self.t[(mid + 2) % 3]);
                (p.min(q), p.max(q))
            };
            let walk = Walk {
                depth,
                blocked,
                used,
                key_min,
                mid,
                z,
                dist: dist.clone(),
            };
            self.step(&walk, x, false, 1 << x, 0);
            if self.done() {
                return;
            }
        }
    }

    fn distances(&self, from: usize, blocked: u32, used: u64) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.adj.len()];
        dist[from] = 0;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &self.adj[u] {
                if self.open(blocked, used, w, e) && dist[w] == u32::MAX {
                    dist[w] = dist[u] + 1;
                    if self.tmask & 1 << w == 0 {
                        queue.push_back(w);
                    }
                }
            }
        }
        dist
    }

    /// Extends the walk from `cur`; `second` once the middle terminal is reached.
    fn step(&mut self, walk: &Walk, cur: usize, second: bool, seen: u32, edges: u64) {
        let goal = if second { walk.z } else { self.t[walk.mid] };
        if cur == goal {
            if second {
                let key = (edges & self.t0_edges).trailing_zeros();
                self.placed += 1;
                self.grow(walk.depth + 1, walk.blocked | (seen & !self.tmask), walk.used | edges, Some(key));
            } else {
                self.step(walk, cur, true, seen, edges);
            }
            return;
        }
        let goal_dist = &walk.dist[self.t.iter().position(|&v| v == goal).expect("goal is a terminal")];
        let mut next: Vec<(usize, u32)> = self.adj[cur]
            .iter()
            .copied()
            .filter(|&(w, e)| {
                self.open(walk.blocked, walk.used, w, e)
                    && seen & 1 << w == 0
                    && (w == goal || self.tmask & 1 << w == 0)
                    && goal_dist[w] != u32::MAX
                    && !matches!(walk.key_min, Some(k) if self.t0_edges & 1 << e != 0 && e <= k)
            })
            .collect();
        next.sort_by_key(|&(w, _)| goal_dist[w]);
        for (w, e) in next {
            self.step(walk, w, second, seen | 1 << w, edges | 1 << e);
            if self.done() {
                return;
            }
        }
    }

    /// Whether one more T-path fits: for some middle terminal, two paths to the
    /// other terminals that share only their start.
    fn closes(&self, blocked: u32, used: u64) -> bool {
        let total = self.adj.len();
        let sink = 2 * total;
        (0..3).any(|mid| {
            let m = self.t[mid];
            let ends = [self.t[(mid + 1) % 3], self.t[(mid + 2) % 3]];
            // Vertex v splits into 2v (in) and 2v + 1 (out).
            let mut cap = vec![vec![0i8; sink + 1]; sink + 1];
            for v in 0..total {
                if blocked & 1 << v != 0 || v == m {
                    continue;
                }
                cap[2 * v][2 * v + 1] = 1;
                for &(w, e) in &self.adj[v] {
                    if self.open(blocked, used, w, e) && w != m && !ends.contains(&v) {
                        cap[2 * v + 1][2 * w] = 1;
                    }
                }
            }
            for &(w, e) in &self.adj[m] {
                if self.open(blocked, used, w, e) {
                    cap[2 * m + 1][2 * w] = 1;
                }
            }
            for &x in &ends {
                cap[2 * x + 1][sink] = 1;
            }
            (0..2).all(|_| augment(&mut cap, 2 * m + 1, sink))
        })
    }
}

/// One BFS augmenting path of unit capacity.
fn augment(cap: &mut [Vec<i8>], s: usize, t: usize) -> bool {
    let mut prev = vec![usize::MAX; cap.len()];
    prev[s] = s;
    let mut queue = std::collections::VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for w in 0..cap.len() {
            if cap[u][w] > 0 && prev[w] == usize::MAX {
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    if prev[t] == usize::MAX {
        return false;
    }
    let mut w = t;
    while w != s {
        let u = prev[w];
        cap[u][w] -= 1;
        cap[w][u] += 1;
        w = u;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ClauseStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditClause {
    pub name: &'static str,
    pub status: ClauseStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub n: usize,
    pub clauses: Vec<AuditClause>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.status != ClauseStatus::Fail)
    }
}

impl fmt::Display for AuditReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "structural audit of BS_{}", self.n)?;
        for c in &self.clauses {
            let tag = match c.status {
                ClauseStatus::Pass => "PASS",
                ClauseStatus::Fail => "FAIL",
                ClauseStatus::Skipped => "SKIP",
            };
            writeln!(f, "{} {}: {}", tag, c.name, c.detail)?;
        }
        Ok(())
    }
}

fn clause(name: &'static str, ok: bool, detail: String) -> AuditClause {
    AuditClause {
        name,
        status: if ok { ClauseStatus::Pass } else { ClauseStatus::Fail },
        detail,
    }
}

fn skipped(name: &'static str, why: &str) -> AuditClause {
    AuditClause {
        name,
        status: ClauseStatus::Skipped,
        detail: why.to_string(),
    }
}

/// Checks the copy decomposition facts the construction relies on. Connectivity
/// clauses run up to `n = 5`, the three-vertex clause up to `n = 6`.
pub fn structural_audit(g: &CayleyGraph) -> AuditReport {
    let n = g.dim();
    let mut clauses = Vec::new();
    let vs: Vec<Permutation> = g.vertices().collect();
    let copies: Vec<u8> = (1..=n as u8).collect();

    if n >= 4 {
        let want = 2 * factorial(n - 2) as usize;
        let mut bad = Vec::new();
        for &i in &copies {
            for &j in &copies {
                if i < j {
                    let e = g.cross_edges(i, j).map(|e| e.len()).unwrap_or(0);
                    if e != want {
                        bad.push(format!("E({},{})={}", i, j, e));
                    }
                }
            }
        }
        clauses.push(clause(
            "cross edges per copy pair",
            bad.is_empty(),
            if bad.is_empty() { format!("all {} pairs have {}", copies.len() * (copies.len() - 1) / 2, want) } else { bad.join(", ") },
        ));
    } else {
        clauses.push(skipped("cross edges per copy pair", "needs n >= 4"));
    }

    let mut repeated = 0usize;
    for &i in &copies {
        let mut seen = HashSet::new();
        for v in vs.iter().filter(|v| v.last() == i) {
            for w in [CayleyGraph::out_plus(v), CayleyGraph::out_minus(v)] {
                if !seen.insert(w) {
                    repeated += 1;
                }
            }
        }
    }
    clauses.push(clause(
        "out-neighbours of a copy are distinct",
        repeated == 0,
        format!("{} repeats", repeated),
    ));

    let misplaced = vs
        .iter()
        .filter(|v| {
            let (p, m) = (CayleyGraph::out_plus(v).last(), CayleyGraph::out_minus(v).last());
            p == m || p == v.last() || m == v.last()
        })
        .count();
    clauses.push(clause(
        "out-neighbours lie in two other copies",
        misplaced == 0,
        format!("{} vertices violate", misplaced),
    ));

    let mut pair_max = 0usize;
    for v in &vs {
        let mut walks: HashMap<Permutation, usize> = HashMap::new();
        for w in g.neighbors_unchecked(v) {
            for x in g.neighbors_unchecked(&w) {
                if x != *v {
                    *walks.entry(x).or_default() += 1;
                }
            }
        }
        pair_max = pair_max.max(walks.values().copied().max().unwrap_or(0));
    }
    clauses.push(clause(
        "two vertices share at most three neighbours",
        pair_max <= 3,
        format!("largest common neighbourhood {}", pair_max),
    ));

    if n <= 6 {
        let mut best = 0usize;
        for x in &vs {
            let nb: Vec<Permutation> = g.neighbors_unchecked(x).collect();
            for i in 0..nb.len() {
                for j in i + 1..nb.len() {
                    for k in j + 1..nb.len() {
                        best = best.max(common_of(g, [nb[i], nb[j], nb[k]]));
                    }
                }
            }
        }
        clauses.push(clause(
            "three vertices share at most three neighbours",
            best == 3,
            format!("cmax = {}", best),
        ));
    } else {
        clauses.push(skipped("three vertices share at most three neighbours", "runs for n <= 6"));
    }

    if n <= 5 {
        let k = menger::kappa(&g.full_view());
        clauses.push(clause(
            "connectivity is 2n-3",
            k.connected && k.value == 2 * n - 3,
            format!("kappa = {}", k.value),
        ));
        if n >= 4 {
            let mut bad = Vec::new();
            let mut checked = 0;
            for mask in 1u32..(1 << n) - 1 {
                let chosen: Vec<u8> = copies.iter().copied().filter(|c| mask & 1 << (c - 1) != 0).collect();
                let want = if chosen.len() == n - 1 { 2 * n - 4 } else { 2 * n - 5 };
                let k = menger::kappa(&g.full_view().with_copies(&chosen));
                checked += 1;
                if k.value != want {
                    bad.push(format!("{:?}: {}", chosen, k.value));
                }
            }
            clauses.push(clause(
                "connectivity of copy unions",
                bad.is_empty(),
                if bad.is_empty() { format!("{} unions checked", checked) } else { bad.join(", ") },
            ));
        } else {
            clauses.push(skipped("connectivity of copy unions", "needs n >= 4"));
        }
    } else {
        clauses.push(skipped("connectivity is 2n-3", "runs for n <= 5"));
        clauses.push(skipped("connectivity of copy unions", "runs for n <= 5"));
    }
    AuditReport { n, clauses }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn formula_values() {
        let got: Vec<_> = (3..=9).map(pi3_formula).collect();
        assert_eq!(got, vec![1, 3, 4, 6, 7, 9, 10]);
    }

    #[test]
    fn witness_for_bs3() {
        let g = CayleyGraph::build(3).unwrap();
        let w = build_witness(&g, [p("123"), p("213"), p("321")]).unwrap();
        assert!(w.verified);
        assert_eq!(w.t_paths.len(), 1);
        assert!(w.web.is_empty());
    }

    #[test]
    fn witness_for_bs5_joins_web_paths() {
        let g = CayleyGraph::build(5).unwrap();
        let w = build_witness(&g, [p("12345"), p("54321"), p("21435")]).unwrap();
        assert_eq!(w.t_paths.len(), 4);
        assert_eq!(w.provenance.len(), 4);
        // |ab| = |bc| = 2, |ac| = 4: nothing passes through b, two each through a and c
        let middles: Vec<char> = w.provenance.iter().map(|p| p.middle).collect();
        assert_eq!(middles, vec!['a', 'a', 'c', 'c']);
    }

    #[test]
    fn pairing_counts() {
        let path = |x: &str, y: &str| vec![p(x), p(y)];
        let web = PairwiseWeb {
            ab: vec![path("1234", "2134"); 2],
            bc: vec![path("2134", "3214"); 2],
            ac: vec![path("1234", "3214"); 4],
            spares: vec![],
        };
        let (paths, prov) = assemble(&web).unwrap();
        assert_eq!(paths.len(), 4);
        let middles: Vec<char> = prov.iter().map(|p| p.middle).collect();
        assert_eq!(middles, vec!['a', 'a', 'c', 'c']);
        let bad = PairwiseWeb {
            ab: vec![path("1234", "2134")],
            ..web
        };
        assert!(matches!(assemble(&bad), Err(TPathError::Unpairable { .. })));
    }

    #[test]
    fn tampering_is_caught() {
        let g = CayleyGraph::build(4).unwrap();
        let w = build_witness(&g, [p("1234"), p("4321"), p("2143")]).unwrap();
        let mut broken = w.clone();
        broken.t_paths[0].swap(0, 1);
        assert!(verify_witness(&g, &broken).is_err());
        let mut short = w.clone();
        short.t_paths.pop();
        assert_eq!(verify_witness(&g, &short).unwrap_err().predicate, "path count");
        let mut shared = w.clone();
        let inner = shared.t_paths[0][1];
        let k = shared.t_paths[1].len() / 2;
        if !shared.t_paths[1].contains(&inner) {
            shared.t_paths[1][k] = inner;
        }
        let err = verify_witness(&g, &shared).unwrap_err();
        assert!(
            ["vertex intersection exceeds T", "non-adjacent consecutive vertices", "repeated vertex"]
                .contains(&err.predicate),
            "{}",
            err
        );
    }

    #[test]
    fn web_verifier_names_the_spare_problem() {
        let g = CayleyGraph::build(5).unwrap();
        let t = TerminalTriple::assign(&g, [p("12345"), p("21345"), p("13245")]).unwrap();
        let web = build_web(&g, &t).unwrap();
        verify_web(&g, &t, &web).unwrap();
        let mut missing = web.clone();
        missing.spares.pop();
        assert_eq!(verify_web(&g, &t, &missing).unwrap_err().predicate, "spare count");
        let mut on_path = web.clone();
        let inner = web.paths().find(|p| p.len() > 2).unwrap()[1];
        on_path.spares[0] = inner;
        let err = verify_web(&g, &t, &on_path).unwrap_err();
        assert!(["spare appears on path", "spare not adjacent to b"].contains(&err.predicate));
    }

    #[test]
    fn exhaustive_bound_for_small_n() {
        for (n, bound) in [(3, 1), (4, 3)] {
            let g = CayleyGraph::build(n).unwrap();
            let r = upper_bound(&g, BoundMode::Exhaustive).unwrap();
            assert_eq!((r.cmax, r.bound), (3, bound));
        }
        let g = CayleyGraph::build(5).unwrap();
        assert!(upper_bound(&g, BoundMode::Exhaustive).is_err());
        let r = upper_bound(&g, BoundMode::Sampled { seed: 1, samples: 100 }).unwrap();
        assert_eq!(r.bound, 4);
    }

    #[test]
    fn oracle_matches_formula_on_examples() {
        let g = CayleyGraph::build(3).unwrap();
        let t = TerminalTriple::assign(&g, [p("123"), p("231"), p("312")]).unwrap();
        let r = brute_force_pi3(&g, &t, 1_000_000).unwrap();
        assert_eq!((r.value, r.exact), (1, true));
        let g = CayleyGraph::build(4).unwrap();
        let t = TerminalTriple::assign(&g, [p("1234"), p("2134"), p("1324")]).unwrap();
        let r = brute_force_pi3(&g, &t, 1_000_000).unwrap();
        assert_eq!((r.value, r.exact), (3, true));
    }

    #[test]
    fn oracle_reports_budget_overrun() {
        let g = CayleyGraph::build(3).unwrap();
        let t = TerminalTriple::assign(&g, [p("123"), p("231"), p("312")]).unwrap();
        let r = brute_force_pi3(&g, &t, 1).unwrap();
        assert!(!r.exact);
    }

    #[test]
    fn audit_passes_for_small_graphs() {
        for n in 3..=5 {
            let report = structural_audit(&CayleyGraph::build(n).unwrap());
            assert!(report.passed(), "{}", report);
        }
    }
}
