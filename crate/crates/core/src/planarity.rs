//! Planarity testing with the left-right criterion.
//!
//! The decision procedure follows Brandes' formulation of the
//! de Fraysseix–Rosenstiehl left-right test: a DFS orientation pass computes
//! lowpoints and nesting depths, and a second DFS maintains a stack of
//! conflict pairs of return-edge intervals. No embedding is produced.
//! Kuratowski witnesses are extracted separately by greedy edge deletion.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KuratowskiKind {
    K5,
    K33,
}

/// A subdivision of K5 or K3,3 contained in the tested graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KuratowskiWitness {
    pub kind: KuratowskiKind,
    /// Branch vertices (degree 4 for K5, degree 3 for K3,3).
    pub branch_vertices: Vec<usize>,
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarityVerdict {
    pub is_planar: bool,
    pub witness: Option<KuratowskiWitness>,
}

/// Decides planarity and, for non-planar input, extracts a Kuratowski
/// subdivision.
pub fn is_planar(g: &Graph) -> PlanarityVerdict {
    if planar(g) {
        return PlanarityVerdict {
            is_planar: true,
            witness: None,
        };
    }
    PlanarityVerdict {
        is_planar: false,
        witness: kuratowski_witness(g),
    }
}

/// `false` only when `e > 3v - 6`, which rules planarity out. Always `true`
/// below three vertices.
pub fn edge_bound_prefilter(g: &Graph) -> bool {
    let n = g.vertex_count();
    n < 3 || g.edge_count() <= 3 * n - 6
}

/// Boolean planarity test.
pub fn planar(g: &Graph) -> bool {
    if !edge_bound_prefilter(g) {
        return false;
    }
    LrState::new(g).run()
}

fn kuratowski_witness(g: &Graph) -> Option<KuratowskiWitness> {
    let mut h = g.clone();
    for (u, v) in g.edges() {
        let candidate = h.without_edge(u, v);
        if !planar(&candidate) {
            h = candidate;
        }
    }
    let edges = h.edges();
    let mut vertices: Vec<usize> = (0..h.vertex_count()).filter(|&v| h.degree(v) > 0).collect();
    vertices.sort_unstable();
    let branch: Vec<usize> = vertices.iter().copied().filter(|&v| h.degree(v) >= 3).collect();
    let kind = match (branch.len(), branch.first().map(|&v| h.degree(v))) {
        (5, Some(4)) => KuratowskiKind::K5,
        (6, Some(3)) => KuratowskiKind::K33,
        _ => return None,
    };
    Some(KuratowskiWitness {
        kind,
        branch_vertices: branch,
        vertices,
        edges,
    })
}

type Edge = (usize, usize);

#[derive(Clone, Copy, Default, PartialEq, Eq, Debug)]
struct Interval {
    low: Option<Edge>,
    high: Option<Edge>,
}

impl Interval {
    fn is_empty(&self) -> bool {
        self.low.is_none() && self.high.is_none()
    }
}

#[derive(Clone, Copy, Debug)]
struct ConflictPair {
    id: usize,
    left: Interval,
    right: Interval,
}

impl ConflictPair {
    fn swap(&mut self) {
        std::mem::swap(&mut self.left, &mut self.right);
    }
}

struct LrState<'a> {
    g: &'a Graph,
    height: Vec<Option<usize>>,
    parent_edge: Vec<Option<Edge>>,
    oriented: HashSet<Edge>,
    out_edges: Vec<Vec<usize>>,
    lowpt: HashMap<Edge, usize>,
    lowpt2: HashMap<Edge, usize>,
    nesting_depth: HashMap<Edge, usize>,
    reference: HashMap<Edge, Edge>,
    lowpt_edge: HashMap<Edge, Edge>,
    stack_bottom: HashMap<Edge, Option<usize>>,
    stack: Vec<ConflictPair>,
    next_pair_id: usize,
}

impl<'a> LrState<'a> {
    fn new(g: &'a Graph) -> Self {
        let n = g.vertex_count();
        LrState {
            g,
            height: vec![None; n],
            parent_edge: vec![None; n],
            oriented: HashSet::new(),
            out_edges: vec![Vec::new(); n],
            lowpt: HashMap::new(),
            lowpt2: HashMap::new(),
            nesting_depth: HashMap::new(),
            reference: HashMap::new(),
            lowpt_edge: HashMap::new(),
            stack_bottom: HashMap::new(),
            stack: Vec::new(),
            next_pair_id: 0,
        }
    }

    fn run(mut self) -> bool {
        let n = self.g.vertex_count();
        let mut roots = Vec::new();
        for v in 0..n {
            if self.height[v].is_none() {
                self.height[v] = Some(0);
                roots.push(v);
                self.orient(v);
            }
        }
        for v in 0..n {
            let mut outs = std::mem::take(&mut self.out_edges[v]);
            outs.sort_by_key(|&w| self.nesting_depth[&(v, w)]);
            self.out_edges[v] = outs;
        }
        roots.into_iter().all(|r| self.test(r))
    }

    fn h(&self, v: usize) -> usize {
        self.height[v].expect("visited vertex has a height")
    }

    fn orient(&mut self, v: usize) {
        let parent = self.parent_edge[v];
        for &w in self.g.neighbors(v) {
            if self.oriented.contains(&(v, w)) || self.oriented.contains(&(w, v)) {
                continue;
            }
            let vw = (v, w);
            self.oriented.insert(vw);
            self.out_edges[v].push(w);
            let hv = self.h(v);
            self.lowpt.insert(vw, hv);
            self.lowpt2.insert(vw, hv);
            match self.height[w] {
                None => {
                    self.parent_edge[w] = Some(vw);
                    self.height[w] = Some(hv + 1);
                    self.orient(w);
                }
                Some(hw) => {
                    self.lowpt.insert(vw, hw);
                }
            }
            let low = self.lowpt[&vw];
            let low2 = self.lowpt2[&vw];
            let mut depth = 2 * low;
            if low2 < hv {
                depth += 1;
            }
            self.nesting_depth.insert(vw, depth);
            if let Some(e) = parent {
                let (le, le2) = (self.lowpt[&e], self.lowpt2[&e]);
                if low < le {
                    self.lowpt2.insert(e, le.min(low2));
                    self.lowpt.insert(e, low);
                } else if low > le {
                    self.lowpt2.insert(e, le2.min(low));
                } else {
                    self.lowpt2.insert(e, le2.min(low2));
                }
            }
        }
    }

    fn set_reference(&mut self, key: Option<Edge>, value: Option<Edge>) {
        if let Some(key) = key {
            match value {
                Some(v) => self.reference.insert(key, v),
                None => self.reference.remove(&key),
            };
        }
    }

    fn top_id(&self) -> Option<usize> {
        self.stack.last().map(|p| p.id)
    }

    fn new_pair(&mut self, left: Interval, right: Interval) -> ConflictPair {
        self.next_pair_id += 1;
        ConflictPair {
            id: self.next_pair_id,
            left,
            right,
        }
    }

    fn conflicting(&self, interval: &Interval, b: Edge) -> bool {
        !interval.is_empty() && self.lowpt[&interval.high.expect("non-empty interval")] > self.lowpt[&b]
    }

    fn lowest(&self, p: &ConflictPair) -> usize {
        if p.left.is_empty() {
            return self.lowpt[&p.right.low.expect("pair is non-empty")];
        }
        if p.right.is_empty() {
            return self.lowpt[&p.left.low.expect("pair is non-empty")];
        }
        self.lowpt[&p.left.low.unwrap()].min(self.lowpt[&p.right.low.unwrap()])
    }

    fn test(&mut self, v: usize) -> bool {
        let e = self.parent_edge[v];
        let outs = self.out_edges[v].clone();
        for (i, &w) in outs.iter().enumerate() {
            let ei = (v, w);
            self.stack_bottom.insert(ei, self.top_id());
            if self.parent_edge[w] == Some(ei) {
                if !self.test(w) {
                    return false;
                }
            } else {
                self.lowpt_edge.insert(ei, ei);
                let pair = self.new_pair(
                    Interval::default(),
                    Interval {
                        low: Some(ei),
                        high: Some(ei),
                    },
                );
                self.stack.push(pair);
            }
            if self.lowpt[&ei] < self.h(v) {
                let e = e.expect("a return edge below the root needs a parent edge");
                if i == 0 {
                    let l = self.lowpt_edge[&ei];
                    self.lowpt_edge.insert(e, l);
                } else if !self.add_constraints(ei, e) {
                    return false;
                }
            }
        }
        if let Some(e) = e {
            self.remove_back_edges(e);
        }
        true
    }

    fn add_constraints(&mut self, ei: Edge, e: Edge) -> bool {
        let mut p = self.new_pair(Interval::default(), Interval::default());
        loop {
            let mut q = self.stack.pop().expect("return edges of e_i are on the stack");
            if !q.left.is_empty() {
                q.swap();
            }
            if !q.left.is_empty() {
                return false;
            }
            let q_low = q.right.low.expect("right interval is non-empty");
            if self.lowpt[&q_low] > self.lowpt[&e] {
                if p.right.is_empty() {
                    p.right = q.right;
                } else {
                    self.set_reference(p.right.low, q.right.high);
                }
                p.right.low = q.right.low;
            } else {
                self.reference.insert(q_low, self.lowpt_edge[&e]);
            }
            if self.top_id() == self.stack_bottom[&ei] {
                break;
            }
        }
        while let Some(top) = self.stack.last() {
            if !(self.conflicting(&top.left, ei) || self.conflicting(&top.right, ei)) {
                break;
            }
            let mut q = self.stack.pop().expect("checked non-empty");
            if self.conflicting(&q.right, ei) {
                q.swap();
            }
            if self.conflicting(&q.right, ei) {
                return false;
            }
            self.set_reference(p.right.low, q.right.high);
            if q.right.low.is_some() {
                p.right.low = q.right.low;
            }
            if p.left.is_empty() {
                p.left = q.left;
            } else {
                self.set_reference(p.left.low, q.left.high);
            }
            p.left.low = q.left.low;
        }
        if !(p.left.is_empty() && p.right.is_empty()) {
            self.stack.push(p);
        }
        true
    }

    fn remove_back_edges(&mut self, e: Edge) {
        let u = e.0;
        let hu = self.h(u);
        while let Some(top) = self.stack.last() {
            if self.lowest(top) != hu {
                break;
            }
            self.stack.pop();
        }
        if let Some(mut p) = self.stack.pop() {
            while let Some(high) = p.left.high {
                if high.1 != u {
                    break;
                }
                p.left.high = self.reference.get(&high).copied();
            }
            if p.left.high.is_none() && p.left.low.is_some() {
                let low = p.left.low.unwrap();
                if let Some(rl) = p.right.low {
                    self.reference.insert(low, rl);
                } else {
                    self.reference.remove(&low);
                }
                p.left.low = None;
            }
            while let Some(high) = p.right.high {
                if high.1 != u {
                    break;
                }
                p.right.high = self.reference.get(&high).copied();
            }
            if p.right.high.is_none() && p.right.low.is_some() {
                let low = p.right.low.unwrap();
                if let Some(ll) = p.left.low {
                    self.reference.insert(low, ll);
                } else {
                    self.reference.remove(&low);
                }
                p.right.low = None;
            }
            self.stack.push(p);
        }
        if self.lowpt[&e] < hu {
            if let Some(top) = self.stack.last() {
                let hl = top.left.high;
                let hr = top.right.high;
                let pick = match (hl, hr) {
                    (Some(l), None) => Some(l),
                    (Some(l), Some(r)) if self.lowpt[&l] > self.lowpt[&r] => Some(l),
                    _ => hr,
                };
                if let Some(edge) = pick {
                    self.reference.insert(e, edge);
                } else {
                    self.reference.remove(&e);
                }
            }
        }
    }
}
