//! Immutable simple undirected graphs.
//!
//! Vertex ids are dense (`0..vertex_count`). A [`Graph`] is validated once at
//! construction and never mutated afterwards; every edit returns a new value.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex id {id} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { id: usize, vertex_count: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

/// Edge-list form used for (de)serialization.
#[derive(Serialize, Deserialize)]
struct EdgeListForm {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "EdgeListForm", try_from = "EdgeListForm")]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    rows: Vec<VertexSet>,
    edge_count: usize,
}

impl From<Graph> for EdgeListForm {
    fn from(g: Graph) -> Self {
        EdgeListForm {
            vertex_count: g.vertex_count(),
            edges: g.edges(),
        }
    }
}

impl TryFrom<EdgeListForm> for Graph {
    type Error = GraphError;
    fn try_from(f: EdgeListForm) -> Result<Self, GraphError> {
        Graph::new(f.vertex_count, &f.edges)
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph({}; {:?})", self.vertex_count(), self.edges())
    }
}

impl Graph {
    /// Validates and builds a simple graph. Duplicate pairs (in either
    /// orientation) collapse to a single edge.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut rows = vec![VertexSet::new(vertex_count); vertex_count];
        for &(u, v) in edges {
            for id in [u, v] {
                if id >= vertex_count {
                    return Err(GraphError::VertexOutOfRange { id, vertex_count });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            rows[u].insert(v);
            rows[v].insert(u);
        }
        Ok(Self::from_rows(rows))
    }

    pub(crate) fn from_rows(rows: Vec<VertexSet>) -> Self {
        let adjacency: Vec<Vec<usize>> = rows.iter().map(|r| r.iter().collect()).collect();
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Graph {
            adjacency,
            rows,
            edge_count,
        }
    }

    /// Graph with no edges.
    pub fn empty(vertex_count: usize) -> Self {
        Self::from_rows(vec![VertexSet::new(vertex_count); vertex_count])
    }

    /// Cycle `C_k` on `0..k` in cyclic order.
    pub fn cycle(k: usize) -> Self {
        assert!(k >= 3, "a cycle needs at least 3 vertices");
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Graph::new(k, &edges).expect("cycle edges are valid")
    }

    /// Path with `length` edges (`length + 1` vertices).
    pub fn path(length: usize) -> Self {
        let edges: Vec<_> = (0..length).map(|i| (i, i + 1)).collect();
        Graph::new(length + 1, &edges).expect("path edges are valid")
    }

    pub fn complete(r: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..r {
            for v in u + 1..r {
                edges.push((u, v));
            }
        }
        Graph::new(r, &edges).expect("clique edges are valid")
    }

    /// `K_{a,b}` with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::new(a + b, &edges).expect("bipartite edges are valid")
    }

    /// Star `K_{1,leaves}` with centre 0.
    pub fn star(leaves: usize) -> Self {
        Self::complete_bipartite(1, leaves)
    }

    /// Subdivided star: centre 0 with one pendant path per entry of `legs`.
    pub fn spider(legs: &[usize]) -> Self {
        let mut edges = Vec::new();
        let mut next = 1;
        for &len in legs {
            let mut prev = 0;
            for _ in 0..len {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
        }
        Graph::new(next, &edges).expect("spider edges are valid")
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn neighbor_set(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count() && self.rows[u].contains(v)
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adjacency.iter().map(Vec::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.adjacency.iter().map(Vec::len).max()
    }

    /// Subgraph induced on `vertices`, relabelled `0..` in increasing id order.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let n = self.vertex_count();
        if let Some(&id) = keep.iter().find(|&&v| v >= n) {
            return Err(GraphError::VertexOutOfRange { id, vertex_count: n });
        }
        let mut new_id = vec![usize::MAX; n];
        for (i, &v) in keep.iter().enumerate() {
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adjacency[v] {
                let j = new_id[w];
                if j != usize::MAX && i < j {
                    edges.push((i, j));
                }
            }
        }
        Graph::new(keep.len(), &edges)
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_tree(&self) -> bool {
        self.vertex_count() >= 1 && self.edge_count + 1 == self.vertex_count() && self.is_connected()
    }

    /// Copy with vertex `v` deleted; higher ids shift down by one.
    pub fn without_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.vertex_count()).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep).expect("ids are in range")
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut rows = self.rows.clone();
        rows[u].remove(v);
        rows[v].remove(u);
        Graph::from_rows(rows)
    }

    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        let mut edges = self.edges();
        edges.push((u, v));
        Graph::new(self.vertex_count(), &edges)
    }

    /// Appends one vertex adjacent to `neighbors`.
    pub fn with_new_vertex(&self, neighbors: &VertexSet) -> Graph {
        let n = self.vertex_count();
        let mut rows: Vec<VertexSet> = self
            .rows
            .iter()
            .enumerate()
            .map(|(u, r)| {
                let mut r2 = VertexSet::from_iter_with_capacity(n + 1, r.iter());
                if neighbors.contains(u) {
                    r2.insert(n);
                }
                r2
            })
            .collect();
        rows.push(VertexSet::from_iter_with_capacity(
            n + 1,
            neighbors.iter().filter(|&u| u < n),
        ));
        Graph::from_rows(rows)
    }

    /// Relabels vertex `v` as `perm[v]`. `perm` must be a permutation.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let n = self.vertex_count();
        assert_eq!(perm.len(), n, "permutation length mismatch");
        let mut rows = vec![VertexSet::new(n); n];
        for (u, v) in self.edges() {
            rows[perm[u]].insert(perm[v]);
            rows[perm[v]].insert(perm[u]);
        }
        Graph::from_rows(rows)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.vertex_count();
        let mut edges = self.edges();
        edges.extend(other.edges().into_iter().map(|(u, v)| (u + shift, v + shift)));
        Graph::new(shift + other.vertex_count(), &edges).expect("shifted ids are valid")
    }

    /// Vertices adjacent to at least one member of `set`, excluding `set`.
    pub fn boundary(&self, set: &[usize]) -> Vec<usize> {
        let mut mark = VertexSet::new(self.vertex_count());
        for &v in set {
            mark.union_with(&self.rows[v]);
        }
        for &v in set {
            mark.remove(v);
        }
        mark.iter().collect()
    }
}
