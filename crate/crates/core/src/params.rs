//! Structural parameters: independence number, the `beta_i` component
//! packing number, degeneracy, minimum edge degree-sum and the tree
//! partition used for even-cycle-free tree counting.
//!
//! `beta_i(H)` is the largest number of components of an induced subgraph of
//! `H` whose components are either a single vertex of degree at most one in
//! `H`, or a path on exactly `i` vertices all of degree two in `H`. Degree-0
//! vertices count as the first kind, so a single-vertex path has `beta = 1`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Largest graph accepted by the exhaustive `beta` search.
pub const BETA_VERTEX_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamsError {
    #[error("beta index must be at least 1")]
    ZeroIndex,
    #[error("exhaustive beta search is capped at {BETA_VERTEX_CAP} vertices, got {0}")]
    TooLarge(usize),
    #[error("input is not a tree")]
    NotATree,
    #[error("partition distance parameter must be at least 1")]
    ZeroDistance,
}

/// Maximum independent set, found by branch and bound.
pub fn maximum_independent_set(g: &Graph) -> Vec<usize> {
    fn go(g: &Graph, remaining: VertexSet, chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
        if chosen.len() + remaining.len() <= best.len() {
            return;
        }
        let Some(first) = remaining.first() else {
            if chosen.len() > best.len() {
                *best = chosen.clone();
            }
            return;
        };
        // a vertex of degree <= 1 in the remaining graph is always safe to take
        let mut pick = first;
        let mut pick_deg = usize::MAX;
        let mut branch = first;
        let mut branch_deg = 0;
        for v in remaining.iter() {
            let d = g.neighbor_set(v).intersection_len(&remaining);
            if d < pick_deg {
                pick = v;
                pick_deg = d;
            }
            if d > branch_deg {
                branch = v;
                branch_deg = d;
            }
        }
        if pick_deg <= 1 {
            let mut rest = remaining;
            rest.remove(pick);
            rest.difference_with(g.neighbor_set(pick));
            chosen.push(pick);
            go(g, rest, chosen, best);
            chosen.pop();
            return;
        }
        let mut with = remaining.clone();
        with.remove(branch);
        with.difference_with(g.neighbor_set(branch));
        chosen.push(branch);
        go(g, with, chosen, best);
        chosen.pop();
        let mut without = remaining;
        without.remove(branch);
        go(g, without, chosen, best);
    }
    let mut best = Vec::new();
    go(g, VertexSet::full(g.vertex_count()), &mut Vec::new(), &mut best);
    best.sort_unstable();
    best
}

pub fn independence_number(g: &Graph) -> usize {
    maximum_independent_set(g).len()
}

/// A `beta_i` value with components realising it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BetaWitness {
    pub value: usize,
    /// Sorted vertex lists, ordered by smallest member.
    pub components: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Leaf,
    Inner,
    Excluded,
}

fn kind(g: &Graph, v: usize) -> Kind {
    match g.degree(v) {
        0 | 1 => Kind::Leaf,
        2 => Kind::Inner,
        _ => Kind::Excluded,
    }
}

/// Exact `beta_i(h)` by exhaustive search over vertex subsets of degree at
/// most two.
pub fn beta(h: &Graph, i: usize) -> Result<BetaWitness, ParamsError> {
    if i == 0 {
        return Err(ParamsError::ZeroIndex);
    }
    if h.vertex_count() > BETA_VERTEX_CAP {
        return Err(ParamsError::TooLarge(h.vertex_count()));
    }
    let candidates: Vec<usize> = (0..h.vertex_count())
        .filter(|&v| kind(h, v) != Kind::Excluded)
        .collect();
    let mut search = BetaSearch {
        h,
        i,
        candidates,
        chosen: VertexSet::new(h.vertex_count()),
        best: None,
    };
    search.go(0);
    let chosen = search.best.unwrap_or_else(|| VertexSet::new(h.vertex_count()));
    let members: Vec<usize> = chosen.iter().collect();
    let sub = h.induced_subgraph(&members).expect("members are vertices of h");
    let components: Vec<Vec<usize>> = sub
        .connected_components()
        .into_iter()
        .map(|c| c.into_iter().map(|j| members[j]).collect())
        .collect();
    Ok(BetaWitness {
        value: components.len(),
        components,
    })
}

struct BetaSearch<'a> {
    h: &'a Graph,
    i: usize,
    candidates: Vec<usize>,
    chosen: VertexSet,
    best: Option<VertexSet>,
}

impl BetaSearch<'_> {
    fn best_value(&self) -> usize {
        self.best.as_ref().map_or(0, |b| component_count(self.h, b))
    }

    fn go(&mut self, index: usize) {
        if index == self.candidates.len() {
            if let Some(value) = valid_packing(self.h, &self.chosen, self.i) {
                if self.best.is_none() || value > self.best_value() {
                    self.best = Some(self.chosen.clone());
                }
            }
            return;
        }
        // every remaining candidate contributes at most one component
        let upper = component_count(self.h, &self.chosen) + (self.candidates.len() - index);
        if self.best.is_some() && upper <= self.best_value() {
            return;
        }
        let v = self.candidates[index];
        if self.can_add(v) {
            self.chosen.insert(v);
            self.go(index + 1);
            self.chosen.remove(v);
        }
        self.go(index + 1);
    }

    /// Local feasibility: a leaf-type vertex stays isolated and a path
    /// component never exceeds `i` vertices.
    fn can_add(&self, v: usize) -> bool {
        let touching: Vec<usize> = self
            .h
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.chosen.contains(w))
            .collect();
        if kind(self.h, v) == Kind::Leaf {
            return touching.is_empty();
        }
        if touching.iter().any(|&w| kind(self.h, w) == Kind::Leaf) {
            return false;
        }
        let mut grown = self.chosen.clone();
        grown.insert(v);
        component_of(self.h, &grown, v).len() <= self.i
    }
}

fn component_of(h: &Graph, set: &VertexSet, start: usize) -> Vec<usize> {
    let mut seen = VertexSet::new(h.vertex_count());
    seen.insert(start);
    let mut queue = vec![start];
    let mut out = Vec::new();
    while let Some(v) = queue.pop() {
        out.push(v);
        for &w in h.neighbors(v) {
            if set.contains(w) && !seen.contains(w) {
                seen.insert(w);
                queue.push(w);
            }
        }
    }
    out
}

fn component_count(h: &Graph, set: &VertexSet) -> usize {
    let mut seen = VertexSet::new(h.vertex_count());
    let mut count = 0;
    for v in set.iter() {
        if !seen.contains(v) {
            count += 1;
            for w in component_of(h, set, v) {
                seen.insert(w);
            }
        }
    }
    count
}

/// Number of components if `set` is a valid packing, else `None`.
fn valid_packing(h: &Graph, set: &VertexSet, i: usize) -> Option<usize> {
    let mut seen = VertexSet::new(h.vertex_count());
    let mut count = 0;
    for v in set.iter() {
        if seen.contains(v) {
            continue;
        }
        let comp = component_of(h, set, v);
        for &w in &comp {
            seen.insert(w);
        }
        count += 1;
        if comp.len() == 1 && kind(h, v) == Kind::Leaf {
            continue;
        }
        if comp.len() != i || comp.iter().any(|&w| kind(h, w) != Kind::Inner) {
            return None;
        }
        let internal_edges: usize = comp
            .iter()
            .map(|&w| h.neighbors(w).iter().filter(|&&x| set.contains(x)).count())
            .sum::<usize>()
            / 2;
        if internal_edges + 1 != comp.len() {
            return None;
        }
    }
    Some(count)
}

/// Vertex partition of a tree into leaves, degree-2 classes and branch
/// vertices, with the path forest induced on `a1 ∪ a2 ∪ a2_prime`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePartition {
    pub l: usize,
    /// Degree at most one (a single-vertex tree lands here).
    pub a1: Vec<usize>,
    /// Degree two with no branch vertex at distance less than `l`.
    pub a2: Vec<usize>,
    /// Chosen middle vertices of short branch-to-branch paths.
    pub a2_prime: Vec<usize>,
    /// Remaining degree-two vertices.
    pub a2_doubleprime: Vec<usize>,
    /// Degree at least three.
    pub a_ge3: Vec<usize>,
    pub path_forest: Graph,
    /// `forest_vertices[j]` is the tree vertex behind forest vertex `j`.
    pub forest_vertices: Vec<usize>,
}

/// Computes the five-set partition for distance parameter `l`.
///
/// For every path whose ends have degree at least three, whose interior has
/// degree two and whose length lies in `[l+1, 2l-1]`, its middle vertex joins
/// `a2_prime`; for odd lengths the middle vertex nearer the smaller endpoint
/// id is taken.
pub fn tree_partition(t: &Graph, l: usize) -> Result<TreePartition, ParamsError> {
    if l == 0 {
        return Err(ParamsError::ZeroDistance);
    }
    if !t.is_tree() {
        return Err(ParamsError::NotATree);
    }
    let n = t.vertex_count();
    let a_ge3: Vec<usize> = (0..n).filter(|&v| t.degree(v) >= 3).collect();
    let a1: Vec<usize> = (0..n).filter(|&v| t.degree(v) <= 1).collect();

    let mut dist = vec![usize::MAX; n];
    let mut queue: VecDeque<usize> = a_ge3.iter().copied().collect();
    for &v in &a_ge3 {
        dist[v] = 0;
    }
    while let Some(v) = queue.pop_front() {
        for &w in t.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let a2: Vec<usize> = (0..n).filter(|&v| t.degree(v) == 2 && dist[v] >= l).collect();

    let mut a2_prime = Vec::new();
    for &a in &a_ge3 {
        for &first in t.neighbors(a) {
            let mut walk = vec![a, first];
            while t.degree(*walk.last().unwrap()) == 2 {
                let (prev, cur) = (walk[walk.len() - 2], walk[walk.len() - 1]);
                let next = *t.neighbors(cur).iter().find(|&&x| x != prev).unwrap();
                walk.push(next);
            }
            let b = *walk.last().unwrap();
            let length = walk.len() - 1;
            if t.degree(b) < 3 || b < a || length < l + 1 || length > 2 * l - 1 {
                continue;
            }
            // walk starts at the smaller endpoint a, so floor(L/2) is the
            // exact middle for even L and the one nearer a for odd L
            a2_prime.push(walk[length / 2]);
        }
    }
    a2_prime.sort_unstable();
    a2_prime.dedup();

    let a2_doubleprime: Vec<usize> = (0..n)
        .filter(|&v| t.degree(v) == 2 && !a2.contains(&v) && a2_prime.binary_search(&v).is_err())
        .collect();

    let mut forest_vertices: Vec<usize> = a1.iter().chain(&a2).chain(&a2_prime).copied().collect();
    forest_vertices.sort_unstable();
    let path_forest = t
        .induced_subgraph(&forest_vertices)
        .expect("forest vertices are tree vertices");
    Ok(TreePartition {
        l,
        a1,
        a2,
        a2_prime,
        a2_doubleprime,
        a_ge3,
        path_forest,
        forest_vertices,
    })
}

/// Least `c` such that every subgraph has a vertex of degree at most `c`,
/// with the peeling order that certifies it.
pub fn degeneracy_ordering(g: &Graph) -> (usize, Vec<usize>) {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut degeneracy = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (degree[v], v))
            .expect("a vertex remains");
        degeneracy = degeneracy.max(degree[v]);
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
            }
        }
    }
    (degeneracy, order)
}

pub fn degeneracy(g: &Graph) -> usize {
    degeneracy_ordering(g).0
}

/// `min d(x) + d(y)` over edges `xy`.
pub fn min_edge_degree_sum(g: &Graph) -> Option<usize> {
    g.edges().into_iter().map(|(x, y)| g.degree(x) + g.degree(y)).min()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn independence() {
        assert_eq!(independence_number(&Graph::cycle(5)), 2);
        assert_eq!(independence_number(&Graph::complete(4)), 1);
        assert_eq!(independence_number(&Graph::path(3)), 2);
        assert_eq!(independence_number(&Graph::empty(0)), 0);
        assert_eq!(independence_number(&Graph::complete_bipartite(3, 7)), 7);
    }

    #[test]
    fn beta_closed_form_examples() {
        assert_eq!(beta(&Graph::cycle(7), 2).unwrap().value, 2);
        assert_eq!(beta(&Graph::path(5), 2).unwrap().value, 3);
        let star = beta(&Graph::star(3), 1).unwrap();
        assert_eq!(star.value, 3);
        assert_eq!(star.components, vec![vec![1], vec![2], vec![3]]);
        assert_eq!(beta(&Graph::empty(1), 3).unwrap().value, 1);
        assert_eq!(beta(&Graph::complete(4), 1).unwrap().value, 0);
        assert_eq!(beta(&Graph::path(1), 2).unwrap().value, 1);
        assert_eq!(beta(&Graph::cycle(6), 1).unwrap().value, 3);
        assert_eq!(beta(&Graph::cycle(3), 3).unwrap().value, 0);
    }

    #[test]
    fn beta_errors() {
        assert_eq!(beta(&Graph::path(3), 0), Err(ParamsError::ZeroIndex));
        assert_eq!(beta(&Graph::path(30), 1), Err(ParamsError::TooLarge(31)));
    }

    #[test]
    fn beta_witness_components_are_valid() {
        let t = Graph::spider(&[4, 3, 1]);
        let w = beta(&t, 2).unwrap();
        for comp in &w.components {
            if comp.len() == 1 && t.degree(comp[0]) <= 1 {
                continue;
            }
            assert_eq!(comp.len(), 2);
            assert!(comp.iter().all(|&v| t.degree(v) == 2));
        }
    }

    #[test]
    fn partition_of_star_and_path() {
        let p = tree_partition(&Graph::star(3), 1).unwrap();
        assert_eq!(p.a1, vec![1, 2, 3]);
        assert_eq!(p.a_ge3, vec![0]);
        assert!(p.a2.is_empty() && p.a2_prime.is_empty() && p.a2_doubleprime.is_empty());

        let path = tree_partition(&Graph::path(6), 2).unwrap();
        assert!(path.a_ge3.is_empty());
        assert_eq!(path.path_forest.connected_components().len(), 1);
        assert_eq!(path.path_forest, Graph::path(6));
    }

    #[test]
    fn partition_of_spider() {
        for l in 1..=4 {
            let t = Graph::spider(&[l + 1, l + 1, l + 1]);
            let p = tree_partition(&t, l).unwrap();
            assert_eq!(p.a_ge3, vec![0]);
            assert_eq!(p.a2.len(), 3);
            assert_eq!(p.path_forest.connected_components().len(), 3);
            for v in &p.a2 {
                assert_eq!(t.degree(*v), 2);
            }
        }
    }

    #[test]
    fn middle_vertex_rule() {
        // two branch vertices joined by a path of length 3; l = 2 puts the
        // interior vertex next to the smaller endpoint into a2_prime
        let t = Graph::new(9, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5), (5, 6), (5, 7), (2, 8)]).unwrap();
        let p = tree_partition(&t, 2).unwrap();
        assert_eq!(p.a_ge3, vec![0, 5]);
        assert_eq!(p.a2_prime, vec![3]);
        assert_eq!(p.a2_doubleprime, vec![2, 4]);
        assert!(p.a2.is_empty());
        assert_eq!(p.forest_vertices, vec![1, 3, 6, 7, 8]);
    }

    #[test]
    fn partition_errors() {
        assert_eq!(tree_partition(&Graph::cycle(4), 1), Err(ParamsError::NotATree));
        assert_eq!(tree_partition(&Graph::path(3), 0), Err(ParamsError::ZeroDistance));
    }

    #[test]
    fn degeneracy_values() {
        assert_eq!(degeneracy(&Graph::spider(&[3, 2, 2])), 1);
        assert_eq!(degeneracy(&Graph::complete(4)), 3);
        assert_eq!(degeneracy(&Graph::cycle(9)), 2);
        assert_eq!(degeneracy(&Graph::empty(3)), 0);
    }

    #[test]
    fn edge_degree_sums() {
        assert_eq!(min_edge_degree_sum(&Graph::cycle(5)), Some(4));
        assert_eq!(min_edge_degree_sum(&Graph::complete(4)), Some(6));
        assert_eq!(min_edge_degree_sum(&Graph::empty(4)), None);
    }
}
