//! Canonical labelling and automorphism groups.
//!
//! Individualisation–refinement search: the ordered partition is refined to
//! an equitable one, a vertex of the first non-singleton cell is
//! individualised, and the process recurses until the partition is discrete.
//! Each discrete partition is a labelling; the canonical form is the labelled
//! graph with the lexicographically least edge list over all leaves.
//! Automorphisms found by comparing leaves prune the tree (orbit pruning and
//! jump-back) and their stabiliser chain along the first path yields |Aut|.

use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::bitset::VertexSet;
use crate::graph::Graph;
use crate::graph6;

/// Relabelling-invariant representative of an isomorphism class.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    hash: String,
}

impl CanonicalForm {
    fn from_graph(g: &Graph) -> Self {
        let edges = g.edges();
        let mut hasher = Sha256::new();
        hasher.update((g.vertex_count() as u64).to_le_bytes());
        for &(u, v) in &edges {
            hasher.update((u as u32).to_le_bytes());
            hasher.update((v as u32).to_le_bytes());
        }
        let digest = hasher.finalize();
        let hash = digest[..8].iter().map(|b| format!("{b:02x}")).collect();
        CanonicalForm {
            vertex_count: g.vertex_count(),
            edges,
            hash,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Edge list of the canonically labelled graph, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// 64-bit SHA-256 prefix of the canonical edge list, as hex.
    pub fn hash(&self) -> &str {
        &self.hash
    }

    pub fn to_graph(&self) -> Graph {
        Graph::new(self.vertex_count, &self.edges).expect("canonical edges are valid")
    }

    pub fn to_graph6(&self) -> String {
        graph6::to_graph6(&self.to_graph())
    }
}

impl fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalForm({} {})", self.to_graph6(), self.hash)
    }
}

/// Full output of the canonical search.
#[derive(Debug, Clone)]
pub struct CanonicalLabeling {
    /// `labeling[v]` is the canonical position of vertex `v`.
    pub labeling: Vec<usize>,
    pub form: CanonicalForm,
    /// Automorphisms discovered during the search; they generate Aut(g).
    pub generators: Vec<Vec<usize>>,
    pub group_size: BigUint,
}

impl CanonicalLabeling {
    /// Vertex placed last by the canonical labelling.
    pub fn last_vertex(&self) -> Option<usize> {
        let n = self.labeling.len();
        self.labeling.iter().position(|&p| p + 1 == n)
    }

    /// Orbit representative (smallest member) of every vertex under Aut(g).
    pub fn orbits(&self) -> Vec<usize> {
        orbit_reps(self.labeling.len(), self.generators.iter())
    }
}

pub fn canonical_labeling(g: &Graph) -> CanonicalLabeling {
    let mut search = Search::new(g);
    let mut root = vec![(0..g.vertex_count()).collect::<Vec<_>>()];
    if g.vertex_count() == 0 {
        root.clear();
    }
    search.refine(&mut root);
    let mut path = Vec::new();
    search.explore(root, &mut path);
    let best = search.best.expect("search reaches at least one leaf");
    let form = CanonicalForm::from_graph(&g.permuted(&best.perm));
    CanonicalLabeling {
        labeling: best.perm,
        form,
        generators: search.generators,
        group_size: search.group_size,
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    canonical_labeling(g).form
}

/// |Aut(g)|.
pub fn automorphism_count(g: &Graph) -> BigUint {
    canonical_labeling(g).group_size
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

fn orbit_reps<'a>(n: usize, gens: impl Iterator<Item = &'a Vec<usize>>) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for gen in gens {
        for (v, &w) in gen.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..n).map(|v| find(&mut parent, v)).collect()
}

struct Leaf {
    path: Vec<usize>,
    perm: Vec<usize>,
    key: Vec<u64>,
}

struct Search<'a> {
    g: &'a Graph,
    words_per_row: usize,
    first: Option<Leaf>,
    best: Option<Leaf>,
    generators: Vec<Vec<usize>>,
    group_size: BigUint,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        Search {
            g,
            words_per_row: g.vertex_count().div_ceil(64),
            first: None,
            best: None,
            generators: Vec::new(),
            group_size: BigUint::from(1u32),
        }
    }

    /// Refines `cells` to the coarsest equitable partition finer than it.
    /// Fragments of a split cell are ordered by neighbour count, so the
    /// result commutes with relabelling.
    fn refine(&self, cells: &mut Vec<Vec<usize>>) {
        let n = self.g.vertex_count();
        let mut splitter_index = 0;
        while splitter_index < cells.len() {
            let splitter = VertexSet::from_iter_with_capacity(n, cells[splitter_index].iter().copied());
            let mut next: Vec<Vec<usize>> = Vec::with_capacity(cells.len() + 1);
            let mut split = false;
            for cell in cells.iter() {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(usize, usize)> = cell
                    .iter()
                    .map(|&v| (self.g.neighbor_set(v).intersection_len(&splitter), v))
                    .collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
                if keyed[0].0 != keyed[keyed.len() - 1].0 {
                    split = true;
                }
            }
            *cells = next;
            if split {
                splitter_index = 0;
            } else {
                splitter_index += 1;
            }
        }
    }

    fn orbits_fixing(&self, prefix: &[usize]) -> Vec<usize> {
        let fixing = self.generators.iter().filter(|gen| prefix.iter().all(|&v| gen[v] == v));
        orbit_reps(self.g.vertex_count(), fixing)
    }

    /// Returns `Some(depth)` to abandon the subtree below the node at `depth`.
    fn explore(&mut self, cells: Vec<Vec<usize>>, path: &mut Vec<usize>) -> Option<usize> {
        let Some(target_index) = cells.iter().position(|c| c.len() > 1) else {
            return self.leaf(&cells, path);
        };
        let depth = path.len();
        let target = cells[target_index].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &target {
            if !explored.is_empty() {
                let orbits = self.orbits_fixing(path);
                if explored.iter().any(|&u| orbits[u] == orbits[v]) {
                    continue;
                }
            }
            explored.push(v);
            let mut child = cells.clone();
            child[target_index].retain(|&u| u != v);
            child.insert(target_index, vec![v]);
            self.refine(&mut child);
            path.push(v);
            let jump = self.explore(child, path);
            path.pop();
            if let Some(j) = jump {
                if j < depth {
                    return Some(j);
                }
            }
        }
        let first = self.first.as_ref().expect("first leaf exists after exploring");
        if first.path[..depth] == path[..] {
            let anchor = first.path[depth];
            let orbits = self.orbits_fixing(path);
            let size = orbits.iter().filter(|&&o| o == orbits[anchor]).count();
            self.group_size *= BigUint::from(size);
        }
        None
    }

    fn leaf(&mut self, cells: &[Vec<usize>], path: &[usize]) -> Option<usize> {
        let n = self.g.vertex_count();
        let mut perm = vec![0; n];
        for (position, cell) in cells.iter().enumerate() {
            perm[cell[0]] = position;
        }
        let key = self.key(&perm);
        let leaf = Leaf {
            path: path.to_vec(),
            perm,
            key,
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                path: leaf.path.clone(),
                perm: leaf.perm.clone(),
                key: leaf.key.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        for reference in [first, self.best.as_ref().expect("best set with first")] {
            if reference.key == leaf.key {
                let mut inverse = vec![0; n];
                for (v, &p) in reference.perm.iter().enumerate() {
                    inverse[p] = v;
                }
                let automorphism: Vec<usize> = leaf.perm.iter().map(|&p| inverse[p]).collect();
                let diverge = leaf
                    .path
                    .iter()
                    .zip(&reference.path)
                    .position(|(a, b)| a != b)
                    .expect("distinct leaves have diverging paths");
                self.generators.push(automorphism);
                return Some(diverge);
            }
        }
        if leaf.key > self.best.as_ref().expect("best set").key {
            self.best = Some(leaf);
        }
        None
    }

    /// Rows of the relabelled adjacency matrix with the bit for a smaller
    /// column more significant; the maximum key has the least edge list.
    fn key(&self, perm: &[usize]) -> Vec<u64> {
        let n = self.g.vertex_count();
        let w = self.words_per_row;
        let mut key = vec![0u64; n * w];
        for v in 0..n {
            let row = perm[v];
            for &u in self.g.neighbors(v) {
                let col = perm[u];
                key[row * w + col / 64] |= 1u64 << (63 - col % 64);
            }
        }
        key
    }
}
