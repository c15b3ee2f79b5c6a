//! Exact subgraph-copy counting and the bounded path / tripod probes.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::canon;
use crate::cycles::{self, ForbiddenFamily};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountingError {
    #[error("pattern must have at least one vertex")]
    EmptyPattern,
    #[error("pattern automorphism group of order {0} does not fit in 64 bits")]
    GroupTooLarge(BigUint),
    #[error("endpoints coincide at vertex {0}; a cycle is not a path")]
    SameEndpoints(usize),
    #[error("vertex {id} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { id: usize, vertex_count: usize },
    #[error("tripod endpoints must be distinct")]
    TripodEndpointsNotDistinct,
    #[error("path length must be at least 1")]
    ZeroLength,
    #[error("probe instance `{instance}` has an even cycle of length {cycle} <= {bound}")]
    EvenCyclePresent {
        instance: String,
        cycle: usize,
        bound: usize,
    },
}

/// A pattern graph with its automorphism group order cached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pattern {
    graph: Graph,
    automorphisms: u64,
}

impl Pattern {
    pub fn new(graph: Graph) -> Result<Self, CountingError> {
        if graph.vertex_count() == 0 {
            return Err(CountingError::EmptyPattern);
        }
        let size = canon::automorphism_count(&graph);
        let automorphisms = u64::try_from(&size).map_err(|_| CountingError::GroupTooLarge(size))?;
        Ok(Pattern { graph, automorphisms })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn automorphisms(&self) -> u64 {
        self.automorphisms
    }
}

/// Number of subgraphs of `g` isomorphic to `h`.
pub fn count_copies(h: &Pattern, g: &Graph) -> u64 {
    let embeddings = Embedder::new(h.graph(), g).count();
    debug_assert_eq!(embeddings % h.automorphisms, 0);
    embeddings / h.automorphisms
}

/// Whether `g` contains `h` as a (not necessarily induced) subgraph.
pub fn contains_subgraph(h: &Graph, g: &Graph) -> bool {
    h.vertex_count() == 0 || Embedder::new(h, g).exists()
}

/// Injective edge-preserving maps `V(h) -> V(g)`, by plain backtracking in
/// pattern id order.
pub fn count_injective_homs(h: &Graph, g: &Graph) -> u64 {
    fn go(h: &Graph, g: &Graph, image: &mut Vec<usize>, used: &mut VertexSet) -> u64 {
        let i = image.len();
        if i == h.vertex_count() {
            return 1;
        }
        let mut total = 0;
        for x in 0..g.vertex_count() {
            if used.contains(x) {
                continue;
            }
            let fits = h
                .neighbors(i)
                .iter()
                .filter(|&&j| j < i)
                .all(|&j| g.has_edge(image[j], x));
            if !fits {
                continue;
            }
            image.push(x);
            used.insert(x);
            total += go(h, g, image, used);
            used.remove(x);
            image.pop();
        }
        total
    }
    if h.vertex_count() > g.vertex_count() {
        return 0;
    }
    go(h, g, &mut Vec::new(), &mut VertexSet::new(g.vertex_count()))
}

/// Backtracking embedder over a connectivity-first pattern order with
/// degree filtering and neighbourhood-intersection candidate sets.
struct Embedder<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    /// For each step, earlier steps whose pattern vertices are adjacent.
    anchors: Vec<Vec<usize>>,
    min_degree: Vec<usize>,
    by_degree: Vec<VertexSet>,
}

impl<'a> Embedder<'a> {
    fn new(h: &Graph, g: &'a Graph) -> Self {
        let k = h.vertex_count();
        let mut order: Vec<usize> = Vec::with_capacity(k);
        let mut placed = vec![false; k];
        while order.len() < k {
            let next = (0..k)
                .filter(|&v| !placed[v])
                .max_by_key(|&v| {
                    let links = h.neighbors(v).iter().filter(|&&w| placed[w]).count();
                    (links, h.degree(v), std::cmp::Reverse(v))
                })
                .expect("unplaced vertex exists");
            placed[next] = true;
            order.push(next);
        }
        let position: Vec<usize> = {
            let mut p = vec![0; k];
            for (i, &v) in order.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        let anchors = order
            .iter()
            .enumerate()
            .map(|(i, &v)| h.neighbors(v).iter().map(|&w| position[w]).filter(|&j| j < i).collect())
            .collect();
        let min_degree = order.iter().map(|&v| h.degree(v)).collect();
        let n = g.vertex_count();
        let max_deg = h.max_degree().unwrap_or(0);
        let by_degree = (0..=max_deg)
            .map(|d| VertexSet::from_iter_with_capacity(n, (0..n).filter(|&x| g.degree(x) >= d)))
            .collect();
        Embedder {
            g,
            order,
            anchors,
            min_degree,
            by_degree,
        }
    }

    fn candidates(&self, step: usize, image: &[usize], used: &VertexSet) -> VertexSet {
        let mut set = self.by_degree[self.min_degree[step]].clone();
        for &j in &self.anchors[step] {
            set.intersect_with(self.g.neighbor_set(image[j]));
        }
        set.difference_with(used);
        set
    }

    fn count(&self) -> u64 {
        if self.order.len() > self.g.vertex_count() {
            return 0;
        }
        let mut image = Vec::with_capacity(self.order.len());
        let mut used = VertexSet::new(self.g.vertex_count());
        self.count_from(0, &mut image, &mut used)
    }

    fn count_from(&self, step: usize, image: &mut Vec<usize>, used: &mut VertexSet) -> u64 {
        let cands = self.candidates(step, image, used);
        if step + 1 == self.order.len() {
            return cands.len() as u64;
        }
        let mut total = 0;
        for x in cands.iter() {
            image.push(x);
            used.insert(x);
            total += self.count_from(step + 1, image, used);
            used.remove(x);
            image.pop();
        }
        total
    }

    fn exists(&self) -> bool {
        if self.order.len() > self.g.vertex_count() {
            return false;
        }
        let mut image = Vec::with_capacity(self.order.len());
        let mut used = VertexSet::new(self.g.vertex_count());
        self.exists_from(0, &mut image, &mut used)
    }

    fn exists_from(&self, step: usize, image: &mut Vec<usize>, used: &mut VertexSet) -> bool {
        let cands = self.candidates(step, image, used);
        if step + 1 == self.order.len() {
            return !cands.is_empty();
        }
        for x in cands.iter() {
            image.push(x);
            used.insert(x);
            let found = self.exists_from(step + 1, image, used);
            used.remove(x);
            image.pop();
            if found {
                return true;
            }
        }
        false
    }
}

fn check_vertex(g: &Graph, id: usize) -> Result<(), CountingError> {
    if id >= g.vertex_count() {
        return Err(CountingError::VertexOutOfRange {
            id,
            vertex_count: g.vertex_count(),
        });
    }
    Ok(())
}

/// Paths with exactly `length` edges and distinct vertices from `u` to `v`.
pub fn count_paths_between(g: &Graph, u: usize, v: usize, length: usize) -> Result<u64, CountingError> {
    check_vertex(g, u)?;
    check_vertex(g, v)?;
    if u == v {
        return Err(CountingError::SameEndpoints(u));
    }
    if length == 0 {
        return Err(CountingError::ZeroLength);
    }
    let mut on_path = VertexSet::new(g.vertex_count());
    on_path.insert(u);
    Ok(paths_to(g, u, v, length, &mut on_path))
}

fn paths_to(g: &Graph, from: usize, to: usize, left: usize, on_path: &mut VertexSet) -> u64 {
    if left == 1 {
        return g.has_edge(from, to) as u64;
    }
    let mut total = 0;
    for &w in g.neighbors(from) {
        if w == to || on_path.contains(w) {
            continue;
        }
        on_path.insert(w);
        total += paths_to(g, w, to, left - 1, on_path);
        on_path.remove(w);
    }
    total
}

/// Tally of endpoints of all paths of `length` edges leaving `u`.
fn path_endpoint_tally(g: &Graph, u: usize, length: usize) -> Vec<u64> {
    fn go(g: &Graph, v: usize, left: usize, on_path: &mut VertexSet, tally: &mut [u64]) {
        if left == 0 {
            tally[v] += 1;
            return;
        }
        for &w in g.neighbors(v) {
            if on_path.contains(w) {
                continue;
            }
            on_path.insert(w);
            go(g, w, left - 1, on_path, tally);
            on_path.remove(w);
        }
    }
    let mut tally = vec![0; g.vertex_count()];
    let mut on_path = VertexSet::new(g.vertex_count());
    on_path.insert(u);
    go(g, u, length, &mut on_path, &mut tally);
    tally
}

/// Largest number of `length`-edge paths joining any pair of distinct
/// vertices, with a pair attaining it.
pub fn max_pairwise_paths(g: &Graph, length: usize) -> (u64, Option<(usize, usize)>) {
    let mut best = (0, None);
    for u in 0..g.vertex_count() {
        let tally = path_endpoint_tally(g, u, length);
        for (v, &c) in tally.iter().enumerate().skip(u + 1) {
            if c > best.0 {
                best = (c, Some((u, v)));
            }
        }
    }
    best
}

/// Vertices `x` with internally disjoint paths of lengths `n1`, `n2`, `n3`
/// to `v`, `u`, `w`. The three paths share only `x`, so together they form a
/// subdivided star centred at `x`.
pub fn count_tripod_vertices(
    g: &Graph,
    v: usize,
    u: usize,
    w: usize,
    n1: usize,
    n2: usize,
    n3: usize,
) -> Result<u64, CountingError> {
    for id in [v, u, w] {
        check_vertex(g, id)?;
    }
    if v == u || u == w || v == w {
        return Err(CountingError::TripodEndpointsNotDistinct);
    }
    let legs = [(v, n1), (u, n2), (w, n3)];
    let mut endpoints = VertexSet::new(g.vertex_count());
    for id in [v, u, w] {
        endpoints.insert(id);
    }
    let mut count = 0;
    for x in 0..g.vertex_count() {
        let mut used = VertexSet::new(g.vertex_count());
        used.insert(x);
        if legs_fit(g, x, &legs, &endpoints, &mut used) {
            count += 1;
        }
    }
    Ok(count)
}

fn legs_fit(g: &Graph, x: usize, legs: &[(usize, usize)], endpoints: &VertexSet, used: &mut VertexSet) -> bool {
    let Some((&(target, len), rest)) = legs.split_first() else {
        return true;
    };
    if len == 0 {
        return x == target && legs_fit(g, x, rest, endpoints, used);
    }
    if x == target || used.contains(target) {
        return false;
    }
    // enumerate x -> target paths of `len` edges avoiding used vertices and
    // other legs' endpoints, then recurse on the remaining legs
    fn walk(
        g: &Graph,
        at: usize,
        left: usize,
        ctx: (usize, usize, &[(usize, usize)], &VertexSet),
        used: &mut VertexSet,
    ) -> bool {
        let (x, target, rest, endpoints) = ctx;
        if left == 1 {
            if !g.has_edge(at, target) {
                return false;
            }
            used.insert(target);
            let ok = legs_fit(g, x, rest, endpoints, used);
            used.remove(target);
            return ok;
        }
        for &next in g.neighbors(at) {
            if used.contains(next) || endpoints.contains(next) {
                continue;
            }
            used.insert(next);
            let ok = walk(g, next, left - 1, ctx, used);
            used.remove(next);
            if ok {
                return true;
            }
        }
        false
    }
    walk(g, x, len, (x, target, rest, endpoints), used)
}

/// An observed maximum over a set of probe instances. Never a proven
/// constant: the value is whatever the probed instances attained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmpiricalBound {
    pub quantity_name: String,
    pub observed_max: u64,
    pub parameters: BTreeMap<String, i64>,
    /// Instance label and vertex pair achieving the maximum.
    pub attained_by: Option<(String, usize, usize)>,
}

/// Maximum of `count_paths_between(., ., k)` over all vertex pairs of every
/// instance, for each `k` in `lengths`. Every instance must be free of even
/// cycles of length at most `2l`.
pub fn probe_bounded_paths<I>(instances: I, l: usize, lengths: &[usize]) -> Result<EmpiricalBound, CountingError>
where
    I: IntoIterator<Item = (String, Graph)>,
{
    let family = ForbiddenFamily::even_cycles_up_to(l);
    let mut bound = EmpiricalBound {
        quantity_name: "observed max pairwise path count".to_string(),
        observed_max: 0,
        parameters: BTreeMap::new(),
        attained_by: None,
    };
    let (mut n_min, mut n_max) = (i64::MAX, i64::MIN);
    for (label, g) in instances {
        if !cycles::is_family_free(&g, &family) {
            let cycle = cycles::shortest_even_cycle(&g).unwrap_or(0);
            return Err(CountingError::EvenCyclePresent {
                instance: label,
                cycle,
                bound: 2 * l,
            });
        }
        n_min = n_min.min(g.vertex_count() as i64);
        n_max = n_max.max(g.vertex_count() as i64);
        for &k in lengths {
            if k == 0 {
                return Err(CountingError::ZeroLength);
            }
            let (count, pair) = max_pairwise_paths(&g, k);
            if count > bound.observed_max {
                bound.observed_max = count;
                bound.attained_by = pair.map(|(a, b)| (label.clone(), a, b));
            }
        }
    }
    bound.parameters.insert("l".into(), l as i64);
    bound
        .parameters
        .insert("k_max".into(), lengths.iter().copied().max().unwrap_or(0) as i64);
    if n_min <= n_max {
        bound.parameters.insert("n_min".into(), n_min);
        bound.parameters.insert("n_max".into(), n_max);
    }
    Ok(bound)
}
