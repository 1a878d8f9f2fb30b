//! Pairwise path webs between three terminals.
//!
//! A web for terminals `a, b, c` in `BS_m` is three families of internally
//! disjoint paths (between `a,b`, `b,c` and `a,c`) in which no two paths share an
//! inner vertex and no path passes through a terminal. Even `m = 2k+2` asks for
//! `2k` paths per pair; odd `m = 2k+1` asks for `2k-2, 2k-2, 2k` and two spare
//! neighbours of `b` that no path touches.
//!
//! The builder recurses on the copy structure: terminals in one copy are handled
//! inside that copy and patched from outside, terminals in two or three copies are
//! linked through fans and border vertices. Whenever a step cannot be completed the
//! current frame is solved by a seeded flow search instead.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::{CayleyError, CayleyGraph, CopyView};
use crate::menger::{self, MengerError, Path};
use crate::permutation::Permutation;
use crate::tpath::check_web_in;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WebError {
    #[error("terminal {0} is given twice")]
    RepeatedTerminal(Permutation),
    #[error("terminal {0} is not a vertex of BS_{1}")]
    WrongDimension(Permutation, usize),
    #[error("no web of the required shape exists for {0}, {1}, {2}")]
    Infeasible(Permutation, Permutation, Permutation),
    #[error("search budget exhausted for {fingerprint}")]
    SearchExhausted { fingerprint: String },
    #[error("terminals must lie in three different copies")]
    NotThreeCopies,
    #[error("border set {set} has {available} usable vertices, {needed} needed")]
    BorderSetTooSmall {
        set: &'static str,
        needed: usize,
        available: usize,
    },
    #[error(transparent)]
    Graph(#[from] CayleyError),
}

/// Terminals with their roles. `b` is the vertex that owns the spares of an odd web.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalTriple {
    pub a: Permutation,
    pub b: Permutation,
    pub c: Permutation,
}

impl TerminalTriple {
    pub fn new(a: Permutation, b: Permutation, c: Permutation) -> Result<Self, WebError> {
        for v in [b, c] {
            if v.dim() != a.dim() {
                return Err(WebError::WrongDimension(v, a.dim()));
            }
        }
        if a == b || a == c {
            return Err(WebError::RepeatedTerminal(a));
        }
        if b == c {
            return Err(WebError::RepeatedTerminal(b));
        }
        Ok(Self { a, b, c })
    }

    /// Validates `vs` against `g` and assigns roles with [`assign_roles`].
    pub fn assign(g: &CayleyGraph, vs: [Permutation; 3]) -> Result<Self, WebError> {
        for v in &vs {
            if v.dim() != g.dim() {
                return Err(WebError::WrongDimension(*v, g.dim()));
            }
        }
        Self::new(vs[0], vs[1], vs[2])?;
        Ok(assign_roles(&g.full_view(), vs))
    }

    pub fn as_array(&self) -> [Permutation; 3] {
        [self.a, self.b, self.c]
    }

    pub fn contains(&self, v: &Permutation) -> bool {
        self.a == *v || self.b == *v || self.c == *v
    }
}

/// Orders the terminals by rank, except that when exactly two of them share a copy
/// of `frame` the remaining one becomes `b`.
pub fn assign_roles(frame: &CopyView, vs: [Permutation; 3]) -> TerminalTriple {
    let mut vs = vs;
    vs.sort();
    let c: Vec<u8> = vs.iter().map(|v| frame.copy_of(v)).collect();
    let [x, y, z] = vs;
    let (a, b, c) = if c[0] == c[1] && c[1] != c[2] {
        (x, z, y)
    } else if c[0] == c[2] && c[0] != c[1] {
        (x, y, z)
    } else if c[1] == c[2] && c[0] != c[1] {
        (y, x, z)
    } else {
        (x, y, z)
    };
    TerminalTriple { a, b, c }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pair {
    Ab,
    Bc,
    Ac,
}

/// Required family sizes and spare count in dimension `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WebShape {
    pub ab: usize,
    pub bc: usize,
    pub ac: usize,
    pub spares: usize,
}

impl WebShape {
    pub fn for_dim(m: usize) -> Self {
        if m.is_multiple_of(2) {
            let k = (m - 2) / 2;
            Self {
                ab: 2 * k,
                bc: 2 * k,
                ac: 2 * k,
                spares: 0,
            }
        } else {
            let k = (m - 1) / 2;
            Self {
                ab: 2 * k - 2,
                bc: 2 * k - 2,
                ac: 2 * k,
                spares: 2,
            }
        }
    }

    pub fn count(&self, pair: Pair) -> usize {
        match pair {
            Pair::Ab => self.ab,
            Pair::Bc => self.bc,
            Pair::Ac => self.ac,
        }
    }
}

/// Paths are oriented `a→b`, `b→c` and `a→c`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PairwiseWeb {
    pub ab: Vec<Path>,
    pub bc: Vec<Path>,
    pub ac: Vec<Path>,
    pub spares: Vec<Permutation>,
}

impl PairwiseWeb {
    pub fn family(&self, pair: Pair) -> &[Path] {
        match pair {
            Pair::Ab => &self.ab,
            Pair::Bc => &self.bc,
            Pair::Ac => &self.ac,
        }
    }

    pub fn shape(&self) -> WebShape {
        WebShape {
            ab: self.ab.len(),
            bc: self.bc.len(),
            ac: self.ac.len(),
            spares: self.spares.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.ab.is_empty() && self.bc.is_empty() && self.ac.is_empty() && self.spares.is_empty()
    }

    pub fn paths(&self) -> impl Iterator<Item = &Path> {
        self.ab.iter().chain(&self.bc).chain(&self.ac)
    }
}

/// One solved frame, recorded after its web passed verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub depth: usize,
    pub dim: usize,
    pub case: &'static str,
    /// Link plan used by three-copy frames.
    pub plan: Option<&'static str>,
    /// Lengths (in edges) of in-copy paths chosen to carry border links.
    pub selected_lengths: Vec<usize>,
    /// Why the structured step was abandoned, when the search had to take over.
    pub fallback: Option<String>,
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:indent$}BS_{} {}", "", self.dim, self.case, indent = 2 * self.depth)?;
        if let Some(plan) = self.plan {
            write!(f, " [{}]", plan)?;
        }
        if let Some(why) = &self.fallback {
            write!(f, " (search: {})", why)?;
        }
        Ok(())
    }
}

/// A step that could not be completed; the caller falls back to search.
#[derive(Debug)]
struct Stuck(String);

impl From<MengerError> for Stuck {
    fn from(e: MengerError) -> Self {
        Stuck(e.to_string())
    }
}

impl From<WebError> for Stuck {
    fn from(e: WebError) -> Self {
        Stuck(e.to_string())
    }
}

fn stuck<T>(msg: impl Into<String>) -> Result<T, Stuck> {
    Err(Stuck(msg.into()))
}

pub const DEFAULT_BUDGET: usize = 400;

/// Builds webs and keeps a trace of every frame it solved.
#[derive(Debug, Clone)]
pub struct WebBuilder {
    budget: usize,
    depth: usize,
    lengths: Vec<usize>,
    plan: Option<&'static str>,
    trace: Vec<TraceEvent>,
}

impl Default for WebBuilder {
    fn default() -> Self {
        Self::with_budget(DEFAULT_BUDGET)
    }
}

/// Builds a web for `t` in `g` with the default search budget.
pub fn build_web(g: &CayleyGraph, t: &TerminalTriple) -> Result<PairwiseWeb, WebError> {
    WebBuilder::default().build(g, t)
}

impl WebBuilder {
    /// `budget` caps the restarts of the fallback search per frame.
    pub fn with_budget(budget: usize) -> Self {
        Self {
            budget,
            depth: 0,
            lengths: Vec::new(),
            plan: None,
            trace: Vec::new(),
        }
    }

    pub fn trace(&self) -> &[TraceEvent] {
        &self.trace
    }

    pub fn build(&mut self, g: &CayleyGraph, t: &TerminalTriple) -> Result<PairwiseWeb, WebError> {
        for v in t.as_array() {
            g.check(&v)?;
        }
        TerminalTriple::new(t.a, t.b, t.c)?;
        self.trace.clear();
        self.depth = 0;
        self.build_in(&g.full_view(), t)
    }

    fn build_in(&mut self, frame: &CopyView, t: &TerminalTriple) -> Result<PairwiseWeb, WebError> {
        let m = frame.dim();
        let copies = t.as_array().map(|v| frame.copy_of(&v));
        let distinct = 1 + (copies[1] != copies[0]) as usize
            + (copies[2] != copies[0] && copies[2] != copies[1]) as usize;
        self.depth += 1;
        self.lengths.clear();
        let (case, attempt) = if m == 3 {
            ("base", self.search(frame, t).map_err(|e| Stuck(e.to_string())))
        } else if distinct == 1 {
            ("same-copy", self.same_copy(frame, t))
        } else if distinct == 2 {
            ("two-copies", self.two_copies(frame, t))
        } else if m == 4 {
            ("three-copies-base", three_copies_base(frame, t))
        } else {
            ("three-copies", three_copies(frame, t).map(|(web, plan)| {
                self.plan = Some(plan);
                web
            }))
        };
        let lengths = std::mem::take(&mut self.lengths);
        let plan = self.plan.take();
        let checked = attempt.and_then(|w| match check_web_in(frame, t, &w) {
            Ok(()) => Ok(w),
            Err(e) => stuck(format!("verifier rejected the web: {}", e)),
        });
        let result = match checked {
            Ok(web) => {
                self.record(m, case, plan, lengths, None);
                Ok(web)
            }
            Err(Stuck(why)) if m == 3 => {
                log::debug!("BS_3 frame {:?}: {}", t.as_array(), why);
                Err(WebError::Infeasible(t.a, t.b, t.c))
            }
            Err(Stuck(why)) => {
                log::warn!("BS_{} {} step for {:?} failed ({}), searching", m, case, t.as_array(), why);
                let web = self.search(frame, t)?;
                self.record(m, case, None, Vec::new(), Some(why));
                Ok(web)
            }
        };
        self.depth -= 1;
        result
    }

    fn record(
        &mut self,
        dim: usize,
        case: &'static str,
        plan: Option<&'static str>,
        lengths: Vec<usize>,
        fallback: Option<String>,
    ) {
        self.trace.push(TraceEvent {
            depth: self.depth - 1,
            dim,
            case,
            plan,
            selected_lengths: lengths,
            fallback,
        });
    }

    /// All three terminals in one copy: solve inside it and add the missing paths
    /// through the rest of the frame.
    fn same_copy(&mut self, frame: &CopyView, t: &TerminalTriple) -> Result<PairwiseWeb, Stuck> {
        let m = frame.dim();
        let home = frame.copy_of(&t.a);
        let sub = CopyView::subcube(t.a, m - 1).map_err(|e| Stuck(e.to_string()))?;
        let outside = frame.with_copies(&other_copies(frame, &[home]));
        if m.is_multiple_of(2) {
            // the inner web is odd and the outer one symmetric, so roles can be redrawn
            let s = assign_roles(&sub, t.as_array());
            let inner = self.build_in(&sub, &s).map_err(|e| Stuck(e.to_string()))?;
            let (b1, b2) = (inner.spares[0], inner.spares[1]);
            let xs = [frame.out_plus(&s.a), frame.out_minus(&s.a), frame.out_plus(&s.c), frame.out_minus(&s.c)];
            let ys = [frame.out_plus(&s.b), frame.out_minus(&s.b), frame.out_plus(&b1), frame.out_plus(&b2)];
            let links = menger::disjoint_set_paths(&outside, &xs, &ys, 4)?;
            let mut paths: Vec<Path> = inner.paths().cloned().collect();
            for p in links.paths {
                let start = if xs[..2].contains(&p[0]) { s.a } else { s.c };
                let end = *p.last().expect("non-empty");
                let mut full = vec![start];
                full.extend(p);
                if end == ys[2] {
                    full.push(b1);
                } else if end == ys[3] {
                    full.push(b2);
                }
                full.push(s.b);
                paths.push(full);
            }
            classify(t, paths, Vec::new())
        } else {
            let inner = self.build_in(&sub, t).map_err(|e| Stuck(e.to_string()))?;
            let spares = vec![frame.out_plus(&t.b), frame.out_minus(&t.b)];
            let region = outside.without(spares.iter().copied());
            let xs = [frame.out_plus(&t.a), frame.out_minus(&t.a)];
            let ys = [frame.out_plus(&t.c), frame.out_minus(&t.c)];
            let links = menger::disjoint_set_paths(&region, &xs, &ys, 2)?;
            let mut paths: Vec<Path> = inner.paths().cloned().collect();
            for p in links.paths {
                let mut full = vec![t.a];
                full.extend(p);
                full.push(t.c);
                paths.push(full);
            }
            classify(t, paths, spares)
        }
    }

    /// Two terminals `p, q` in one copy, `r` in another.
    fn two_copies(&mut self, frame: &CopyView, t: &TerminalTriple) -> Result<PairwiseWeb, Stuck> {
        let m = frame.dim();
        let [x, y, z] = t.as_array();
        let (p, q, r) = if frame.copy_of(&x) == frame.copy_of(&y) {
            (x, y, z)
        } else if frame.copy_of(&x) == frame.copy_of(&z) {
            (x, z, y)
        } else {
            (y, z, x)
        };
        let home = frame.copy_of(&p);
        let inside = frame.with_copies(&[home]);
        let outside = frame.with_copies(&other_copies(frame, &[home]));
        let odd = m % 2 == 1;
        if odd && r != t.b {
            return stuck("the lone terminal does not own the spares");
        }
        if !odd && m == 4 {
            let pq = menger::pair_paths(&inside, &p, &q, 2)?;
            if pq.len() < 2 {
                return stuck("fewer than two paths inside the copy");
            }
            let ports = [frame.out_plus(&p), frame.out_minus(&p), frame.out_plus(&q), frame.out_minus(&q)];
            let fan = fan_map(&outside, &r, &ports)?;
            let mut paths = pq.paths;
            for (i, port) in ports.iter().enumerate() {
                let owner = if i < 2 { p } else { q };
                paths.push(prepend(&[owner], &fan[port]));
            }
            return classify(t, paths, Vec::new());
        }
        // m = 2k+2 needs 2k-1 border paths, m = 2k+3 as well
        let k = if odd { (m - 3) / 2 } else { (m - 2) / 2 };
        let all = menger::pair_paths(&inside, &p, &q, usize::MAX)?.paths;
        let (chosen, kept) = select_long(all, 2 * k - 1)?;
        self.lengths = chosen.iter().map(|p| p.len() - 1).collect();
        let pp = pick_out(frame, &p, &r);
        let qp = pick_out(frame, &q, &r);
        let mut ports: Vec<Permutation> = Vec::new();
        for path in &chosen {
            ports.push(frame.out_plus(&path[1]));
            ports.push(frame.out_plus(&path[path.len() - 2]));
        }
        ports.push(pp);
        ports.push(qp);
        let spares = if odd {
            choose_spares(frame, t, home, &ports)?
        } else {
            Vec::new()
        };
        let fan = fan_map(&outside.without(spares.iter().copied()), &r, &ports)?;
        let mut paths = kept;
        for path in &chosen {
            let (u, v) = (path[1], path[path.len() - 2]);
            paths.push(prepend(&[p, u], &fan[&frame.out_plus(&u)]));
            paths.push(prepend(&[q, v], &fan[&frame.out_plus(&v)]));
        }
        paths.push(prepend(&[p], &fan[&pp]));
        paths.push(prepend(&[q], &fan[&qp]));
        classify(t, paths, spares)
    }

    /// Seeded multi-start flow search: one terminal is a hub routing both of its
    /// families at once, then the remaining pair is linked in what is left.
    fn search(&mut self, frame: &CopyView, t: &TerminalTriple) -> Result<PairwiseWeb, WebError> {
        let shape = WebShape::for_dim(frame.dim());
        let spare_sets = spare_candidates(frame, t, shape.spares);
        let ts = t.as_array();
        let count = |i: usize, j: usize| match (i.min(j), i.max(j)) {
            (0, 1) => shape.ab,
            (1, 2) => shape.bc,
            _ => shape.ac,
        };
        if frame.len() <= 32 {
            for spares in &spare_sets {
                if let Some(paths) = exact_search(frame, t, shape, spares) {
                    if let Ok(web) = classify(t, paths, spares.clone()) {
                        if check_web_in(frame, t, &web).is_ok() {
                            return Ok(web);
                        }
                    }
                }
            }
            if frame.dim() == 3 {
                return Err(WebError::Infeasible(t.a, t.b, t.c));
            }
        }
        let rounds = spare_sets.len() * 3;
        for attempt in 0..self.budget.max(rounds) {
            let spares = &spare_sets[attempt % spare_sets.len()];
            let hub = (attempt / spare_sets.len()) % 3;
            let shuffle = (attempt >= rounds).then_some(attempt as u64);
            let (x, y) = ((hub + 1) % 3, (hub + 2) % 3);
            let base = frame.without(spares.iter().copied());
            let Ok(first) = menger::hub_flow(&base, &ts[hub], &[(ts[x], count(hub, x)), (ts[y], count(hub, y))], shuffle)
            else {
                continue;
            };
            let used = first.iter().flat_map(|p| p[1..p.len() - 1].iter().copied());
            let rest = base.without(used.chain([ts[hub]]));
            let need = count(x, y);
            let Ok(second) = menger::pair_paths_seeded(&rest, &ts[x], &ts[y], need, shuffle) else {
                continue;
            };
            if second.len() < need {
                continue;
            }
            let paths: Vec<Path> = first.into_iter().chain(second.paths).collect();
            if let Ok(web) = classify(t, paths, spares.clone()) {
                if check_web_in(frame, t, &web).is_ok() {
                    return Ok(web);
                }
            }
        }
        if frame.dim() == 3 {
            return Err(WebError::Infeasible(t.a, t.b, t.c));
        }
        Err(WebError::SearchExhausted {
            fingerprint: fingerprint(frame, t),
        })
    }
}

const EXACT_NODES: u64 = 2_000_000;

/// Complete search for frames of at most 32 vertices: candidate paths per pair as
/// bitmasks of inner vertices, grown by length, then a backtracking choice of
/// pairwise disjoint families.
fn exact_search(frame: &CopyView, t: &TerminalTriple, shape: WebShape, spares: &[Permutation]) -> Option<Vec<Path>> {
    let view = frame.without(spares.iter().copied());
    let vs = view.vertices();
    let index: HashMap<Permutation, usize> = vs.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let adj: Vec<Vec<usize>> = vs.iter().map(|v| view.neighbors(v).map(|w| index[&w]).collect()).collect();
    let ts = t.as_array().map(|v| index[&v]);
    let pairs = [(0, 1, shape.ab), (1, 2, shape.bc), (0, 2, shape.ac)];
    let tmask: u32 = ts.iter().fold(0, |m, &i| m | 1 << i);
    let mut nodes = 0u64;
    for cap in 3..=vs.len().min(12) {
        let cands: Vec<Vec<(u32, Vec<usize>)>> = pairs
            .iter()
            .map(|&(x, y, _)| {
                let mut out = Vec::new();
                let mut cur = vec![ts[x]];
                inner_paths(&adj, ts[y], tmask, cap, &mut cur, &mut out);
                out.sort_by_key(|(m, _)| m.count_ones());
                out
            })
            .collect();
        let mut chosen: Vec<(usize, usize)> = Vec::new();
        if pick_families(&cands, &pairs, 0, 0, 0, &mut chosen, &mut nodes) {
            let paths = chosen
                .iter()
                .map(|&(p, c)| cands[p][c].1.iter().map(|&i| vs[i]).collect())
                .collect();
            return Some(paths);
        }
        if nodes >= EXACT_NODES {
            break;
        }
    }
    None
}

/// Simple paths from the end of `cur` to `to` that avoid terminals inside.
fn inner_paths(adj: &[Vec<usize>], to: usize, tmask: u32, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<(u32, Vec<usize>)>) {
    let last = *cur.last().expect("non-empty");
    for &w in &adj[last] {
        if w == to {
            let inner = cur[1..].iter().fold(0u32, |m, &i| m | 1 << i);
            let mut p = cur.clone();
            p.push(w);
            out.push((inner, p));
        } else if cur.len() + 1 < cap && tmask & 1 << w == 0 && !cur.contains(&w) {
            cur.push(w);
            inner_paths(adj, to, tmask, cap, cur, out);
            cur.pop();
        }
    }
}

/// Chooses `need` candidates for each pair in turn, in increasing index order,
/// with disjoint inner vertices and at most one direct edge per pair.
fn pick_families(
    cands: &[Vec<(u32, Vec<usize>)>],
    pairs: &[(usize, usize, usize); 3],
    pair: usize,
    from: usize,
    used: u32,
    chosen: &mut Vec<(usize, usize)>,
    nodes: &mut u64,
) -> bool {
    *nodes += 1;
    if *nodes >= EXACT_NODES {
        return false;
    }
    if pair == 3 {
        return true;
    }
    let have = chosen.iter().filter(|(p, _)| *p == pair).count();
    if have == pairs[pair].2 {
        return pick_families(cands, pairs, pair + 1, 0, used, chosen, nodes);
    }
    for c in from..cands[pair].len() {
        let (mask, path) = &cands[pair][c];
        if mask & used != 0 {
            continue;
        }
        if path.len() == 2 && chosen.iter().any(|&(p, d)| p == pair && cands[p][d].1.len() == 2) {
            continue;
        }
        chosen.push((pair, c));
        if pick_families(cands, pairs, pair, c + 1, used | mask, chosen, nodes) {
            return true;
        }
        chosen.pop();
        if *nodes >= EXACT_NODES {
            return false;
        }
    }
    false
}

/// Copy pattern and terminals of a frame, for error reports.
fn fingerprint(frame: &CopyView, t: &TerminalTriple) -> String {
    let cs = t.as_array().map(|v| frame.copy_of(&v));
    format!(
        "BS_{} a={} b={} c={} copies=({},{},{})",
        frame.dim(),
        t.a,
        t.b,
        t.c,
        cs[0],
        cs[1],
        cs[2]
    )
}

/// Spare pairs to try: out-neighbours of `b` first, then the other neighbours.
fn spare_candidates(frame: &CopyView, t: &TerminalTriple, want: usize) -> Vec<Vec<Permutation>> {
    if want == 0 {
        return vec![Vec::new()];
    }
    let mut nbrs: Vec<Permutation> = [frame.out_plus(&t.b), frame.out_minus(&t.b)].into();
    let mut rest: Vec<_> = frame.neighbors(&t.b).filter(|w| !nbrs.contains(w)).collect();
    rest.sort();
    nbrs.extend(rest);
    nbrs.retain(|w| !t.contains(w));
    let mut sets = Vec::new();
    for i in 0..nbrs.len() {
        for j in i + 1..nbrs.len() {
            sets.push(vec![nbrs[i], nbrs[j]]);
        }
    }
    if sets.is_empty() {
        sets.push(Vec::new());
    }
    sets
}

fn other_copies(frame: &CopyView, used: &[u8]) -> Vec<u8> {
    frame.copies().into_iter().filter(|c| !used.contains(c)).collect()
}

/// `head` followed by `tail` reversed.
fn prepend(head: &[Permutation], tail: &Path) -> Path {
    let mut p = head.to_vec();
    p.extend(tail.iter().rev());
    p
}

/// Out-neighbour of `v` other than `avoid`, `v⁺` if possible.
fn pick_out(frame: &CopyView, v: &Permutation, avoid: &Permutation) -> Permutation {
    let plus = frame.out_plus(v);
    if plus != *avoid {
        plus
    } else {
        frame.out_minus(v)
    }
}

/// Fan from `src`, keyed by target. A target equal to `src` gets a one-vertex path.
fn fan_map(
    view: &CopyView,
    src: &Permutation,
    targets: &[Permutation],
) -> Result<HashMap<Permutation, Path>, Stuck> {
    let mut map = HashMap::new();
    let rest: Vec<_> = targets.iter().copied().filter(|x| x != src).collect();
    if rest.len() < targets.len() {
        map.insert(*src, vec![*src]);
    }
    if !rest.is_empty() {
        for p in menger::fan(view, src, &rest)?.paths {
            map.insert(*p.last().expect("non-empty"), p);
        }
    }
    Ok(map)
}

/// First `need` paths with at least three edges, and everything else.
fn select_long(all: Vec<Path>, need: usize) -> Result<(Vec<Path>, Vec<Path>), Stuck> {
    let (mut chosen, mut kept) = (Vec::new(), Vec::new());
    for p in all {
        if chosen.len() < need && p.len() >= 4 {
            chosen.push(p);
        } else {
            kept.push(p);
        }
    }
    if chosen.len() < need {
        return stuck(format!("only {} long paths, {} needed", chosen.len(), need));
    }
    Ok((chosen, kept))
}

/// Two neighbours of `b` outside `home`, avoiding terminals and `ports`;
/// `b⁺`, `b⁻` preferred.
fn choose_spares(
    frame: &CopyView,
    t: &TerminalTriple,
    home: u8,
    ports: &[Permutation],
) -> Result<Vec<Permutation>, Stuck> {
    let sets = spare_candidates(frame, t, 2);
    let mut pool: Vec<Permutation> = Vec::new();
    for s in sets {
        for w in s {
            if !pool.contains(&w) {
                pool.push(w);
            }
        }
    }
    let picked: Vec<_> = pool
        .into_iter()
        .filter(|w| frame.copy_of(w) != home && !ports.contains(w))
        .take(2)
        .collect();
    if picked.len() < 2 {
        return stuck("no free spares");
    }
    Ok(picked)
}

/// Sorts paths into families by their endpoints and orients them.
fn classify(t: &TerminalTriple, paths: Vec<Path>, spares: Vec<Permutation>) -> Result<PairwiseWeb, Stuck> {
    let mut web = PairwiseWeb {
        spares,
        ..Default::default()
    };
    for mut p in paths {
        let (first, last) = (p[0], *p.last().expect("non-empty"));
        let (from, family) = if (first, last) == (t.a, t.b) || (last, first) == (t.a, t.b) {
            (t.a, &mut web.ab)
        } else if (first, last) == (t.b, t.c) || (last, first) == (t.b, t.c) {
            (t.b, &mut web.bc)
        } else if (first, last) == (t.a, t.c) || (last, first) == (t.a, t.c) {
            (t.a, &mut web.ac)
        } else {
            return stuck(format!("path {} .. {} does not join two terminals", first, last));
        };
        if p[0] != from {
            p.reverse();
        }
        family.push(p);
    }
    Ok(web)
}

/// Where an out-neighbour of a terminal lands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Lands {
    Terminal(usize),
    Copy(usize),
    Rest,
}

/// Terminals in three copies, under one labelling `t = [a, b, c]`.
struct Layout<'f> {
    frame: &'f CopyView,
    t: [Permutation; 3],
    cp: [u8; 3],
    outs: [[(Permutation, Lands); 2]; 3],
    rest: Vec<u8>,
    odd: bool,
}

impl<'f> Layout<'f> {
    fn new(frame: &'f CopyView, t: [Permutation; 3]) -> Self {
        let cp = t.map(|v| frame.copy_of(&v));
        let lands = |v: &Permutation| {
            if let Some(i) = t.iter().position(|x| x == v) {
                Lands::Terminal(i)
            } else if let Some(i) = cp.iter().position(|&c| c == frame.copy_of(v)) {
                Lands::Copy(i)
            } else {
                Lands::Rest
            }
        };
        let outs = t.map(|v| {
            let (p, m) = (frame.out_plus(&v), frame.out_minus(&v));
            [(p, lands(&p)), (m, lands(&m))]
        });
        Self {
            frame,
            t,
            cp,
            outs,
            rest: other_copies(frame, &cp),
            odd: frame.dim() % 2 == 1,
        }
    }

    fn lands(&self, v: &Permutation) -> Lands {
        if let Some(i) = self.t.iter().position(|x| x == v) {
            Lands::Terminal(i)
        } else if let Some(i) = self.cp.iter().position(|&c| c == self.frame.copy_of(v)) {
            Lands::Copy(i)
        } else {
            Lands::Rest
        }
    }

    fn copy(&self, i: usize) -> CopyView {
        self.frame.with_copies(&[self.cp[i]])
    }

    fn rest_outs(&self, i: usize) -> Vec<Permutation> {
        self.outs[i]
            .iter()
            .filter(|(_, l)| *l == Lands::Rest)
            .map(|(v, _)| *v)
            .collect()
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        self.outs[i].iter().any(|(_, l)| *l == Lands::Terminal(j))
    }
}

/// Index of a pair in `[ab, ac, bc]` order.
fn pair_ix(i: usize, j: usize) -> usize {
    match (i.min(j), i.max(j)) {
        (0, 1) => 0,
        (0, 2) => 1,
        (1, 2) => 2,
        _ => unreachable!("distinct terminal indices"),
    }
}

/// Owner terminals of the two border copies each `M` set joins.
const M_ENDS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];
const M_NAMES: [&str; 3] = ["M1", "M2", "M3"];

/// An end of a path through the non-terminal copies: either a terminal's own
/// out-neighbour, or a port `g` in the owner's copy entered through `g⁺`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum REnd {
    Out(usize, Permutation),
    Port(usize),
}

impl REnd {
    fn owner(&self) -> usize {
        match self {
            REnd::Out(o, _) | REnd::Port(o) => *o,
        }
    }
}

#[derive(Debug, Clone, Default)]
struct Plan {
    label: &'static str,
    direct: Vec<(usize, usize)>,
    /// `(x, o, y)`: `x` steps to its out-neighbour `o` in the copy of `y`.
    outs: Vec<(usize, Permutation, usize)>,
    sources: Vec<REnd>,
    sinks: Vec<REnd>,
    m: [usize; 3],
    spare_out: Vec<Permutation>,
    spare_in: usize,
}

impl Plan {
    fn new(label: &'static str) -> Self {
        Self {
            label,
            ..Default::default()
        }
    }

    fn r_links(&self) -> usize {
        self.sources.len()
    }

    fn specials(&self) -> usize {
        self.direct.len() + self.outs.len() + self.sources.len()
    }
}

/// Completes a plan: border set sizes from the targets, spares for odd frames, and
/// a load check of every fan against the connectivity of its copy.
fn finish(l: &Layout, mut plan: Plan) -> Option<Plan> {
    let m = l.frame.dim();
    let shape = WebShape::for_dim(m);
    let target = [shape.ab, shape.ac, shape.bc];
    if plan.sources.len() != plan.sinks.len() {
        return None;
    }
    let mut special = [0usize; 3];
    for &(i, j) in &plan.direct {
        special[pair_ix(i, j)] += 1;
    }
    for &(i, _, j) in &plan.outs {
        special[pair_ix(i, j)] += 1;
    }
    for (s, k) in plan.sources.iter().zip(&plan.sinks) {
        if s.owner() == k.owner() {
            return None;
        }
        special[pair_ix(s.owner(), k.owner())] += 1;
    }
    for p in 0..3 {
        plan.m[p] = target[p].checked_sub(special[p])?;
    }
    let mut used: Vec<Permutation> = plan.outs.iter().map(|(_, o, _)| *o).collect();
    for side in [&plan.sources, &plan.sinks] {
        let mut seen = Vec::new();
        for e in side {
            if let REnd::Out(_, v) = e {
                if seen.contains(v) || used.contains(v) {
                    return None;
                }
                seen.push(*v);
            }
        }
    }
    let mut distinct_outs = used.clone();
    distinct_outs.sort();
    distinct_outs.dedup();
    if distinct_outs.len() != used.len() {
        return None;
    }
    for e in plan.sources.iter().chain(&plan.sinks) {
        if let REnd::Out(_, v) = e {
            used.push(*v);
        }
    }
    let mut load = [0usize; 3];
    for &(_, _, y) in &plan.outs {
        load[y] += 1;
    }
    for e in plan.sources.iter().chain(&plan.sinks) {
        if let REnd::Port(o) = e {
            load[*o] += 1;
        }
    }
    for (p, &(x, y)) in M_ENDS.iter().enumerate() {
        load[x] += plan.m[p];
        load[y] += plan.m[p];
    }
    let kappa = 2 * m - 5;
    let fits = |spare_out: &[Permutation], spare_in: usize| {
        (0..3).all(|x| {
            let lost = spare_out.iter().filter(|v| l.lands(v) == Lands::Copy(x)).count()
                + if x == 1 { spare_in } else { 0 };
            load[x] + lost <= kappa
        })
    };
    if !l.odd {
        return fits(&[], 0).then_some(plan);
    }
    let free: Vec<Permutation> = l.outs[1]
        .iter()
        .filter(|(v, lands)| !matches!(lands, Lands::Terminal(_)) && !used.contains(v))
        .map(|(v, _)| *v)
        .collect();
    let mut options: Vec<Vec<Permutation>> = Vec::new();
    if free.len() == 2 {
        options.push(free.clone());
    }
    for v in &free {
        options.push(vec![*v]);
    }
    options.push(Vec::new());
    for opt in options {
        let spare_in = 2 - opt.len();
        if fits(&opt, spare_in) {
            plan.spare_out = opt;
            plan.spare_in = spare_in;
            return Some(plan);
        }
    }
    None
}

/// Plans following the fixed recipes for three-copy frames under this labelling.
fn recipes(l: &Layout) -> Vec<Plan> {
    let mut out = Vec::new();
    let rest_terms: Vec<usize> = (0..3).filter(|&i| !l.rest_outs(i).is_empty()).collect();
    let any_adjacent = (0..3).any(|i| (0..3).any(|j| i != j && l.adjacent(i, j)));
    let all_outs = |plan: &mut Plan, who: &[usize]| {
        for &i in who {
            for (v, lands) in l.outs[i] {
                if let Lands::Copy(j) = lands {
                    plan.outs.push((i, v, j));
                }
            }
        }
    };
    if !l.odd {
        if l.adjacent(0, 1) {
            // a and b adjacent; c reaches b's side or the rest
            for (cv, lands) in l.outs[2] {
                let mut plan = Plan::new("adjacent-pair");
                plan.direct.push((0, 1));
                match lands {
                    Lands::Terminal(1) => plan.direct.push((1, 2)),
                    Lands::Copy(1) => plan.outs.push((2, cv, 1)),
                    Lands::Rest => {
                        plan.sources.push(REnd::Out(2, cv));
                        plan.sinks.push(REnd::Port(1));
                    }
                    _ => continue,
                }
                out.push(plan);
            }
        } else if !any_adjacent {
            match rest_terms.as_slice() {
                [] => {
                    let mut plan = Plan::new("outs-in-terminal-copies");
                    all_outs(&mut plan, &[0, 1, 2]);
                    out.push(plan);
                }
                [0] => {
                    let mut plan = Plan::new("one-rest-out");
                    all_outs(&mut plan, &[1, 2]);
                    plan.sources.push(REnd::Out(0, l.rest_outs(0)[0]));
                    plan.sinks.push(REnd::Port(1));
                    out.push(plan);
                }
                [0, 1] => {
                    let mut plan = Plan::new("two-rest-outs");
                    all_outs(&mut plan, &[2]);
                    plan.sources.push(REnd::Out(0, l.rest_outs(0)[0]));
                    plan.sinks.push(REnd::Out(1, l.rest_outs(1)[0]));
                    out.push(plan);
                }
                [0, 1, 2] => {
                    let mut plan = Plan::new("three-rest-outs");
                    plan.sources.push(REnd::Port(1));
                    plan.sources.push(REnd::Out(1, l.rest_outs(1)[0]));
                    plan.sinks.push(REnd::Out(0, l.rest_outs(0)[0]));
                    plan.sinks.push(REnd::Out(2, l.rest_outs(2)[0]));
                    out.push(plan);
                }
                _ => {}
            }
        }
    } else if l.adjacent(0, 2) {
        let into_a: Vec<_> = l.outs[1]
            .iter()
            .filter(|(_, lands)| matches!(lands, Lands::Copy(0) | Lands::Terminal(0)))
            .collect();
        let into_ac = l.outs[1]
            .iter()
            .any(|(_, lands)| matches!(lands, Lands::Copy(0 | 2) | Lands::Terminal(0 | 2)));
        if let Some((bv, lands)) = into_a.first() {
            let mut plan = Plan::new("adjacent-ac-b-reaches-a");
            plan.direct.push((0, 2));
            if *lands == Lands::Terminal(0) {
                plan.direct.push((0, 1));
            } else {
                plan.outs.push((1, *bv, 0));
            }
            out.push(plan);
        } else if !into_ac {
            let mut plan = Plan::new("adjacent-ac-b-in-rest");
            plan.direct.push((0, 2));
            out.push(plan);
        }
    } else if !any_adjacent {
        match rest_terms.as_slice() {
            [] => {
                let mut plan = Plan::new("outs-in-terminal-copies");
                all_outs(&mut plan, &[0, 1, 2]);
                out.push(plan);
            }
            [1] => {
                let mut plan = Plan::new("one-rest-out");
                all_outs(&mut plan, &[0, 2]);
                out.push(plan);
            }
            [1, 2] => {
                let mut plan = Plan::new("two-rest-outs");
                all_outs(&mut plan, &[0]);
                plan.sources.push(REnd::Out(1, l.rest_outs(1)[0]));
                plan.sinks.push(REnd::Out(2, l.rest_outs(2)[0]));
                out.push(plan);
            }
            [0, 1, 2] => {
                for av in l.rest_outs(0) {
                    for cv in l.rest_outs(2) {
                        if l.rest_outs(1).iter().any(|bv| *bv != av && *bv != cv) {
                            let mut plan = Plan::new("three-rest-outs");
                            plan.sources.push(REnd::Out(0, av));
                            plan.sinks.push(REnd::Out(2, cv));
                            out.push(plan);
                        }
                    }
                }
            }
            _ => {}
        }
    }
    out.into_iter().filter_map(|p| finish(l, p)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Use {
    Unused,
    Direct,
    Out,
    Port(usize),
    Pair,
}

/// Every plan with at most one link through the rest of the frame, cheapest first.
fn enumerate_plans(l: &Layout) -> Vec<Plan> {
    let slots: Vec<(usize, Permutation, Lands)> = (0..3)
        .flat_map(|i| l.outs[i].iter().map(move |(v, lands)| (i, *v, *lands)))
        .collect();
    let options: Vec<Vec<Use>> = slots
        .iter()
        .map(|&(i, _, lands)| match lands {
            Lands::Terminal(j) if i < j => vec![Use::Unused, Use::Direct],
            Lands::Terminal(_) => vec![Use::Unused],
            Lands::Copy(_) => vec![Use::Unused, Use::Out],
            Lands::Rest => {
                let mut o = vec![Use::Unused, Use::Pair];
                o.extend((0..3).filter(|&j| j != i).map(Use::Port));
                o
            }
        })
        .collect();
    let mut plans = Vec::new();
    let mut choice = vec![0usize; slots.len()];
    loop {
        let uses: Vec<Use> = choice.iter().zip(&options).map(|(&c, o)| o[c]).collect();
        if let Some(plan) = plan_from(l, &slots, &uses) {
            plans.push(plan);
        }
        let mut k = 0;
        while k < choice.len() {
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
        if k == choice.len() {
            break;
        }
    }
    plans.sort_by_key(|p| (p.r_links(), std::cmp::Reverse(p.specials())));
    plans
}

fn plan_from(l: &Layout, slots: &[(usize, Permutation, Lands)], uses: &[Use]) -> Option<Plan> {
    let mut plan = Plan::new("enumerated");
    let mut pairs = Vec::new();
    for (&(i, v, lands), &u) in slots.iter().zip(uses) {
        match (u, lands) {
            (Use::Unused, _) => {}
            (Use::Direct, Lands::Terminal(j)) => plan.direct.push((i, j)),
            (Use::Out, Lands::Copy(j)) => plan.outs.push((i, v, j)),
            (Use::Port(j), _) => {
                plan.sources.push(REnd::Out(i, v));
                plan.sinks.push(REnd::Port(j));
            }
            (Use::Pair, _) => pairs.push(REnd::Out(i, v)),
            _ => return None,
        }
    }
    match pairs.as_slice() {
        [] => {}
        [x, y] if x.owner() != y.owner() => {
            plan.sources.push(*x);
            plan.sinks.push(*y);
        }
        _ => return None,
    }
    if plan.sources.len() > 1 {
        return None;
    }
    finish(l, plan)
}

/// Border sets of a three-copy frame: `H_i` candidates and the chosen `M_i`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BorderSets {
    /// `H1 ⊂ C_a` towards `C_b`, `H2 ⊂ C_a` towards `C_c`, `H3 ⊂ C_b` towards `C_c`.
    pub h: [Vec<Permutation>; 3],
    pub m: [Vec<Permutation>; 3],
    /// `v⁺` for every `v` in the matching `m` set.
    pub m_plus: [Vec<Permutation>; 3],
}

/// Chooses `M_i ⊆ H_i` of the given sizes for terminals in three distinct copies of
/// `g`, skipping vertices whose use would collide with a terminal.
pub fn select_border_sets(
    g: &CayleyGraph,
    t: &TerminalTriple,
    sizes: [usize; 3],
) -> Result<BorderSets, WebError> {
    let frame = g.full_view();
    let l = Layout::new(&frame, t.as_array());
    if l.cp[0] == l.cp[1] || l.cp[0] == l.cp[2] || l.cp[1] == l.cp[2] {
        return Err(WebError::NotThreeCopies);
    }
    let mut reserved: HashSet<Permutation> = t.as_array().into();
    select_m(&l, sizes, &mut reserved)
}

fn border_candidates(l: &Layout, set: usize) -> Vec<Permutation> {
    let (x, y) = M_ENDS[set];
    l.copy(x)
        .vertices()
        .into_iter()
        .filter(|v| {
            let (plus, minus) = (l.frame.out_plus(v), l.frame.out_minus(v));
            *v != l.t[x] && l.lands(&plus) == Lands::Copy(y) && minus != l.t[y]
        })
        .collect()
}

fn select_m(l: &Layout, sizes: [usize; 3], reserved: &mut HashSet<Permutation>) -> Result<BorderSets, WebError> {
    let mut sets = BorderSets::default();
    for set in 0..3 {
        sets.h[set] = border_candidates(l, set);
        let mut picked = Vec::new();
        for v in &sets.h[set] {
            if picked.len() == sizes[set] {
                break;
            }
            let plus = l.frame.out_plus(v);
            if reserved.contains(v) || reserved.contains(&plus) {
                continue;
            }
            reserved.insert(*v);
            reserved.insert(plus);
            picked.push(*v);
        }
        if picked.len() < sizes[set] {
            return Err(WebError::BorderSetTooSmall {
                set: M_NAMES[set],
                needed: sizes[set],
                available: picked.len(),
            });
        }
        sets.m_plus[set] = picked.iter().map(|v| l.frame.out_plus(v)).collect();
        sets.m[set] = picked;
    }
    Ok(sets)
}

/// Carries out a plan: reserve special vertices, pick spares, ports and border
/// sets, fan out inside each terminal copy and link through the rest.
fn execute(l: &Layout, plan: &Plan) -> Result<(Vec<Path>, Vec<Permutation>), Stuck> {
    let frame = l.frame;
    let t = l.t;
    let mut reserved: HashSet<Permutation> = t.into();
    let mut forbidden: Vec<Permutation> = plan.spare_out.clone();
    reserved.extend(plan.outs.iter().map(|(_, o, _)| *o));
    for e in plan.sources.iter().chain(&plan.sinks) {
        if let REnd::Out(_, v) = e {
            reserved.insert(*v);
        }
    }
    for v in &plan.spare_out {
        if !reserved.insert(*v) {
            return stuck("spare collides with a link");
        }
    }
    let mut in_spares: Vec<Permutation> = l.copy(1).neighbors(&t[1]).filter(|w| !reserved.contains(w)).collect();
    in_spares.sort();
    in_spares.truncate(plan.spare_in);
    if in_spares.len() < plan.spare_in {
        return stuck("no free spare inside the copy of b");
    }
    reserved.extend(in_spares.iter().copied());
    forbidden.extend(in_spares.iter().copied());

    let mut ports: HashMap<usize, Permutation> = HashMap::new();
    let ends: Vec<REnd> = plan.sources.iter().chain(&plan.sinks).copied().collect();
    for (idx, e) in ends.iter().enumerate() {
        if let REnd::Port(o) = e {
            let g = l
                .copy(*o)
                .vertices()
                .into_iter()
                .find(|g| {
                    let plus = frame.out_plus(g);
                    !reserved.contains(g) && !reserved.contains(&plus) && l.lands(&plus) == Lands::Rest
                })
                .ok_or_else(|| Stuck("no free port".into()))?;
            reserved.insert(g);
            reserved.insert(frame.out_plus(&g));
            ports.insert(idx, g);
        }
    }
    let border = select_m(l, plan.m, &mut reserved)?;

    let mut targets: [Vec<Permutation>; 3] = Default::default();
    for &(_, o, y) in &plan.outs {
        targets[y].push(o);
    }
    for (idx, g) in &ports {
        targets[ends[*idx].owner()].push(*g);
    }
    for (set, &(x, y)) in M_ENDS.iter().enumerate() {
        targets[x].extend(border.m[set].iter().copied());
        targets[y].extend(border.m_plus[set].iter().copied());
    }
    let mut fans = Vec::new();
    for i in 0..3 {
        let view = l.copy(i).without(forbidden.iter().copied());
        fans.push(fan_map(&view, &t[i], &targets[i])?);
    }

    let mut paths: Vec<Path> = plan.direct.iter().map(|&(i, j)| vec![t[i], t[j]]).collect();
    for &(x, o, y) in &plan.outs {
        paths.push(prepend(&[t[x]], &fans[y][&o]));
    }
    for (set, &(x, y)) in M_ENDS.iter().enumerate() {
        for (v, plus) in border.m[set].iter().zip(&border.m_plus[set]) {
            let mut p = fans[x][v].clone();
            p.extend(fans[y][plus].iter().rev());
            paths.push(p);
        }
    }
    if !plan.sources.is_empty() {
        let endpoint = |idx: usize| match ends[idx] {
            REnd::Out(_, v) => v,
            REnd::Port(_) => frame.out_plus(&ports[&idx]),
        };
        let lead = |idx: usize| match ends[idx] {
            REnd::Out(o, _) => vec![t[o]],
            REnd::Port(o) => fans[o][&ports[&idx]].clone(),
        };
        let ns = plan.sources.len();
        let xs: Vec<Permutation> = (0..ns).map(endpoint).collect();
        let ys: Vec<Permutation> = (ns..ends.len()).map(endpoint).collect();
        let region = frame.with_copies(&l.rest).without(forbidden.iter().copied());
        let links = menger::disjoint_set_paths(&region, &xs, &ys, ns)?;
        for p in links.paths {
            let si = xs.iter().position(|x| *x == p[0]).expect("starts in X");
            let last = p.last().expect("non-empty");
            let ki = ns + ys.iter().position(|y| y == last).expect("ends in Y");
            if ends[si].owner() == ends[ki].owner() {
                return stuck("rest link joins a terminal to itself");
            }
            let mut full = lead(si);
            full.extend(p);
            full.extend(lead(ki).into_iter().rev());
            paths.push(full);
        }
    }
    let mut spares = plan.spare_out.clone();
    spares.extend(in_spares);
    Ok((paths, spares))
}

/// Terminals in three copies of a frame of dimension at least five.
fn three_copies(frame: &CopyView, t: &TerminalTriple) -> Result<(PairwiseWeb, &'static str), Stuck> {
    let [a, b, c] = t.as_array();
    let labellings: Vec<[Permutation; 3]> = if frame.dim() % 2 == 1 {
        vec![[a, b, c], [c, b, a]]
    } else {
        vec![[a, b, c], [c, b, a], [b, a, c], [a, c, b], [b, c, a], [c, a, b]]
    };
    let layouts: Vec<Layout> = labellings.iter().map(|ts| Layout::new(frame, *ts)).collect();
    let mut queue: Vec<(usize, Plan)> = Vec::new();
    for (i, l) in layouts.iter().enumerate() {
        queue.extend(recipes(l).into_iter().map(|p| (i, p)));
    }
    queue.extend(enumerate_plans(&layouts[0]).into_iter().take(24).map(|p| (0, p)));
    let mut last = Stuck("no plan applies".into());
    for (i, plan) in queue {
        match execute(&layouts[i], &plan) {
            Ok((paths, spares)) => {
                let web = classify(t, paths, spares)?;
                match check_web_in(frame, t, &web) {
                    Ok(()) => return Ok((web, plan.label)),
                    Err(e) => last = Stuck(format!("{}: {}", plan.label, e)),
                }
            }
            Err(Stuck(why)) => {
                log::debug!("plan {} failed: {}", plan.label, why);
                last = Stuck(format!("{}: {}", plan.label, why))
            }
        }
    }
    Err(last)
}

/// Terminals in three copies of `BS_4`: each terminal steps to a neighbouring copy
/// and the fourth copy carries one extra link.
fn three_copies_base(frame: &CopyView, t: &TerminalTriple) -> Result<PairwiseWeb, Stuck> {
    let ts = t.as_array();
    let cp = ts.map(|v| frame.copy_of(&v));
    let fourth = other_copies(frame, &cp)[0];
    let where_in = |v: &Permutation| cp.iter().position(|&c| c == frame.copy_of(v));
    let options: Vec<Vec<Permutation>> = ts
        .iter()
        .map(|v| {
            [frame.out_plus(v), frame.out_minus(v)]
                .into_iter()
                .filter(|w| frame.copy_of(w) != fourth)
                .collect()
        })
        .collect();
    for p0 in &options[0] {
        for p1 in &options[1] {
            for p2 in &options[2] {
                let primes = [*p0, *p1, *p2];
                // two terminals stepping onto each other would use one edge twice
                if (0..3).any(|x| (0..3).any(|y| x != y && primes[x] == ts[y] && primes[y] == ts[x])) {
                    continue;
                }
                let w = primes.map(|p| where_in(&p).expect("lands in a terminal copy"));
                let attempt = if w[0] != w[1] && w[1] != w[2] && w[0] != w[2] {
                    // a 3-cycle: A' in C_C, B' in C_A, C' in C_B with A = 0
                    let (ai, ci) = (0, w[0]);
                    let bi = w[ci];
                    base_cycle(frame, fourth, [ts[ai], ts[bi], ts[ci]], [primes[ai], primes[bi], primes[ci]])
                } else {
                    // two primes share the copy of the third terminal
                    let ai = (0..3)
                        .find(|&x| (0..3).filter(|&y| y != x).all(|y| w[y] == x))
                        .expect("two primes share a copy");
                    let ci = w[ai];
                    let bi = 3 - ai - ci;
                    if primes[bi] == primes[ci] {
                        log::debug!("shared out-neighbour pattern");
                        continue;
                    }
                    base_shared(frame, fourth, [ts[ai], ts[bi], ts[ci]], [primes[ai], primes[bi], primes[ci]])
                };
                if let Some(paths) = attempt {
                    return classify(t, paths, Vec::new());
                }
                log::debug!("pattern {:?} did not complete", w);
            }
        }
    }
    stuck("no out-neighbour pattern completes")
}

/// Neighbours of `v` across copies that land in copy `target`.
fn outs_to(frame: &CopyView, v: &Permutation, target: u8) -> Vec<Permutation> {
    [frame.out_plus(v), frame.out_minus(v)]
        .into_iter()
        .filter(|w| frame.copy_of(w) == target)
        .collect()
}

/// Helper vertices of one copy, rank order, with their out-neighbour in `target`.
fn crossings(frame: &CopyView, copy: u8, target: u8, skip: &[Permutation]) -> Vec<(Permutation, Permutation)> {
    frame
        .with_copies(&[copy])
        .vertices()
        .into_iter()
        .filter(|v| !skip.contains(v))
        .flat_map(|v| outs_to(frame, &v, target).into_iter().map(move |w| (v, w)))
        .filter(|(_, w)| !skip.contains(w))
        .collect()
}

const BASE_TRIES: usize = 48;

/// `A' ∈ C_C, B' ∈ C_A, C' ∈ C_B`. Helpers: `g ∈ C_B` with `g' ∈ C_A`,
/// `h ∈ C_C` with `h' ∈ C_A`, and `v ∈ C_B`, `u ∈ C_C` meeting in the fourth copy.
fn base_cycle(frame: &CopyView, fourth: u8, ts: [Permutation; 3], pr: [Permutation; 3]) -> Option<Vec<Path>> {
    let [a, b, c] = ts;
    let [pa, pb, pc] = pr;
    let cp = ts.map(|v| frame.copy_of(&v));
    let mut tries = 0;
    for (g, gp) in crossings(frame, cp[1], cp[0], &[b, pc, pb, a]) {
        for (h, hp) in crossings(frame, cp[2], cp[0], &[c, pa, pb, gp, a]) {
            for (v, vp) in crossings(frame, cp[1], fourth, &[b, pc, g]) {
                for (u, up) in crossings(frame, cp[2], fourth, &[c, pa, h]) {
                    tries += 1;
                    if tries > BASE_TRIES {
                        return None;
                    }
                    let fa = fan_map(&frame.with_copies(&[cp[0]]), &a, &[gp, pb, hp]).ok()?;
                    let Ok(fb) = fan_map(&frame.with_copies(&[cp[1]]), &b, &[g, pc, v]) else { continue };
                    let Ok(fc) = fan_map(&frame.with_copies(&[cp[2]]), &c, &[pa, h, u]) else { continue };
                    let Ok(link) = menger::disjoint_set_paths(&frame.with_copies(&[fourth]), &[vp], &[up], 1) else {
                        continue;
                    };
                    let mut bc_long = fb[&v].clone();
                    bc_long.extend(&link.paths[0]);
                    bc_long.extend(fc[&u].iter().rev());
                    let mut ab_g = fa[&gp].clone();
                    ab_g.extend(fb[&g].iter().rev());
                    let mut ac_h = fa[&hp].clone();
                    ac_h.extend(fc[&h].iter().rev());
                    let mut ab_direct = fa[&pb].clone();
                    ab_direct.push(b);
                    let mut bc_direct = fb[&pc].clone();
                    bc_direct.push(c);
                    return Some(vec![
                        ab_direct,
                        ab_g,
                        ac_h,
                        prepend(&[a], &fc[&pa]),
                        bc_direct,
                        bc_long,
                    ]);
                }
            }
        }
    }
    None
}

/// `A' ∈ C_C` and `B' ≠ C'` both in `C_A`. Helpers: `g ∈ C_A` with `g' ∈ C_B`,
/// `h ∈ C_C` with `h' ∈ C_B`, and `v ∈ C_B`, `u ∈ C_C` meeting in the fourth copy.
fn base_shared(frame: &CopyView, fourth: u8, ts: [Permutation; 3], pr: [Permutation; 3]) -> Option<Vec<Path>> {
    let [a, b, c] = ts;
    let [pa, pb, pc] = pr;
    let cp = ts.map(|v| frame.copy_of(&v));
    let mut tries = 0;
    for (g, gp) in crossings(frame, cp[0], cp[1], &[a, pb, pc, b]) {
        for (h, hp) in crossings(frame, cp[2], cp[1], &[c, pa, gp, b]) {
            for (v, vp) in crossings(frame, cp[1], fourth, &[b, hp, gp]) {
                for (u, up) in crossings(frame, cp[2], fourth, &[c, pa, h]) {
                    tries += 1;
                    if tries > BASE_TRIES {
                        return None;
                    }
                    let fa = fan_map(&frame.with_copies(&[cp[0]]), &a, &[pb, pc, g]).ok()?;
                    let Ok(fb) = fan_map(&frame.with_copies(&[cp[1]]), &b, &[gp, hp, v]) else { continue };
                    let Ok(fc) = fan_map(&frame.with_copies(&[cp[2]]), &c, &[pa, h, u]) else { continue };
                    let Ok(link) = menger::disjoint_set_paths(&frame.with_copies(&[fourth]), &[vp], &[up], 1) else {
                        continue;
                    };
                    let mut ab_g = fa[&g].clone();
                    ab_g.extend(fb[&gp].iter().rev());
                    let mut bc_h = fb[&hp].clone();
                    bc_h.extend(fc[&h].iter().rev());
                    let mut bc_long = fb[&v].clone();
                    bc_long.extend(&link.paths[0]);
                    bc_long.extend(fc[&u].iter().rev());
                    return Some(vec![
                        prepend(&[b], &fa[&pb]),
                        prepend(&[c], &fa[&pc]),
                        ab_g,
                        bc_h,
                        bc_long,
                        prepend(&[a], &fc[&pa]),
                    ]);
                }
            }
        }
    }
    None
}
