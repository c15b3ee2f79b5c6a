//! Lower-bound constructions, each returned with a recomputed certificate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::{self, Pattern};
use crate::cycles::{self, ForbiddenFamily};
use crate::graph::Graph;
use crate::params::{self, ParamsError};
use crate::planarity;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("vertex set is not independent: {0} and {1} are adjacent")]
    NotIndependent(usize, usize),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("input graph is not a tree")]
    NotATree,
    #[error("{0}")]
    Params(#[from] ParamsError),
    #[error("n = {n} is too small: {reason}")]
    TooSmall { n: usize, reason: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(&'static str),
    #[error("family `{0}` needs an input graph")]
    MissingGraph(FamilyName),
    #[error("unknown construction family `{0}`")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyName {
    IndependentBlowup,
    CycleBlowup,
    TreeBetaBlowup,
    EvenTreeParallelPaths,
    PentagonExtremal,
    CkC4freeParallel,
    ConjectureFamily,
}

impl FamilyName {
    pub const ALL: [FamilyName; 7] = [
        FamilyName::IndependentBlowup,
        FamilyName::CycleBlowup,
        FamilyName::TreeBetaBlowup,
        FamilyName::EvenTreeParallelPaths,
        FamilyName::PentagonExtremal,
        FamilyName::CkC4freeParallel,
        FamilyName::ConjectureFamily,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FamilyName::IndependentBlowup => "independent-blowup",
            FamilyName::CycleBlowup => "cycle-blowup",
            FamilyName::TreeBetaBlowup => "tree-beta-blowup",
            FamilyName::EvenTreeParallelPaths => "even-tree-parallel-paths",
            FamilyName::PentagonExtremal => "pentagon-extremal",
            FamilyName::CkC4freeParallel => "ck-c4free-parallel",
            FamilyName::ConjectureFamily => "conjecture-family",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FamilyName {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let wanted = s.trim().to_ascii_lowercase().replace('_', "-");
        FamilyName::ALL
            .into_iter()
            .find(|f| f.as_str() == wanted)
            .ok_or_else(|| ConstructionError::UnknownFamily(s.to_string()))
    }
}

/// A family plus its size knobs (`n`, `k`, `l`, `t`, `s`, `m`). When `m` is
/// present it overrides the multiplicity that would be derived from `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub family: FamilyName,
    pub parameters: BTreeMap<String, usize>,
    /// Input tree or graph for the tree and independent-set families.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<Graph>,
}

impl ConstructionSpec {
    pub fn new(family: FamilyName) -> Self {
        ConstructionSpec {
            family,
            parameters: BTreeMap::new(),
            graph: None,
        }
    }

    pub fn with(mut self, key: &str, value: usize) -> Self {
        self.parameters.insert(key.to_string(), value);
        self
    }

    pub fn with_graph(mut self, g: Graph) -> Self {
        self.graph = Some(g);
        self
    }

    /// Parses `k=5,l=2,n=20` into the parameter map.
    pub fn parse_parameters(mut self, text: &str) -> Result<Self, ConstructionError> {
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| ConstructionError::InvalidParameters(item.to_string()))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| ConstructionError::InvalidParameters(item.to_string()))?;
            let key = match key.trim() {
                "ℓ" | "ell" => "l",
                other => other,
            };
            self.parameters.insert(key.to_string(), value);
        }
        Ok(self)
    }

    fn get(&self, key: &'static str) -> Option<usize> {
        self.parameters.get(key).copied()
    }

    fn require(&self, key: &'static str) -> Result<usize, ConstructionError> {
        self.get(key).ok_or(ConstructionError::MissingParameter(key))
    }

    fn input_graph(&self) -> Result<&Graph, ConstructionError> {
        self.graph.as_ref().ok_or(ConstructionError::MissingGraph(self.family))
    }

    pub fn build(&self) -> Result<ConstructionOutput, ConstructionError> {
        match self.family {
            FamilyName::IndependentBlowup => {
                independent_blowup_with_multiplicity(self.input_graph()?, self.require("m")?)
            }
            FamilyName::CycleBlowup => {
                let k = self.require("k")?;
                match self.get("m") {
                    Some(m) => cycle_blowup_with_multiplicity(k, m),
                    None => cycle_blowup(k, self.require("n")?),
                }
            }
            FamilyName::TreeBetaBlowup => {
                let t = self.input_graph()?;
                match self.get("m") {
                    Some(m) => tree_beta_blowup_with_multiplicity(t, m),
                    None => tree_beta_blowup(t, self.require("n")?),
                }
            }
            FamilyName::EvenTreeParallelPaths => {
                let t = self.input_graph()?;
                let l = self.require("l")?;
                match self.get("m") {
                    Some(m) => even_tree_parallel_paths_with_multiplicity(t, l, m),
                    None => even_tree_parallel_paths(t, l, self.require("n")?),
                }
            }
            FamilyName::PentagonExtremal => match (self.get("t"), self.get("s")) {
                (Some(t), Some(s)) => Ok(pentagon_extremal(t, s)),
                _ => pentagon_extremal_on(self.require("n")?),
            },
            FamilyName::CkC4freeParallel => {
                let k = self.require("k")?;
                match self.get("m") {
                    Some(m) => ck_c4free_parallel_with_multiplicity(k, m),
                    None => ck_c4free_parallel(k, self.require("n")?),
                }
            }
            FamilyName::ConjectureFamily => {
                let k = self.require("k")?;
                let l = self.require("l")?;
                match self.get("m") {
                    Some(m) => conjecture_family_with_multiplicity(k, l, m),
                    None => conjecture_family(k, l, self.require("n")?),
                }
            }
        }
    }
}

/// What the construction promises about its pattern count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind", content = "value")]
pub enum DeclaredCount {
    Exact(u64),
    AtLeast(u64),
}

impl DeclaredCount {
    pub fn value(self) -> u64 {
        match self {
            DeclaredCount::Exact(v) | DeclaredCount::AtLeast(v) => v,
        }
    }

    pub fn accepts(self, observed: u64) -> bool {
        match self {
            DeclaredCount::Exact(v) => observed == v,
            DeclaredCount::AtLeast(v) => observed >= v,
        }
    }
}

/// Facts recomputed from the built graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub planar: bool,
    pub family: ForbiddenFamily,
    pub family_free: bool,
    pub pattern: Graph,
    pub copies: u64,
    pub declared: DeclaredCount,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.planar && self.family_free && self.declared.accepts(self.copies)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionOutput {
    pub family: FamilyName,
    pub graph: Graph,
    /// Vertex id to name, e.g. `x1`, `y4^2`, `z3`.
    pub label_table: BTreeMap<usize, String>,
    /// Multiplicity used, where the family has one.
    pub multiplicity: Option<usize>,
    pub certified: Certificate,
}

impl ConstructionOutput {
    pub fn label_of(&self, v: usize) -> Option<&str> {
        self.label_table.get(&v).map(String::as_str)
    }

    pub fn vertex_named(&self, name: &str) -> Option<usize> {
        self.label_table.iter().find(|(_, n)| *n == name).map(|(&v, _)| v)
    }
}

fn certify(g: &Graph, family: ForbiddenFamily, pattern: Graph, declared: DeclaredCount) -> Certificate {
    let planar = planarity::planar(g);
    let family_free = cycles::is_family_free(g, &family);
    let copies = match cycle_length(&pattern) {
        Some(k) => cycles::count_cycles(g, k),
        None => counting::count_copies(
            &Pattern::new(pattern.clone()).expect("construction patterns are small"),
            g,
        ),
    };
    Certificate {
        planar,
        family,
        family_free,
        pattern,
        copies,
        declared,
    }
}

/// `Some(k)` when `g` is the cycle `C_k`.
fn cycle_length(g: &Graph) -> Option<usize> {
    let k = g.vertex_count();
    (k >= 3 && g.edge_count() == k && g.is_connected() && (0..k).all(|v| g.degree(v) == 2)).then_some(k)
}

fn pow(base: usize, exp: usize) -> u64 {
    (base as u64).saturating_pow(exp as u32)
}

fn choose2(m: usize) -> u64 {
    (m as u64) * (m as u64).saturating_sub(1) / 2
}

/// Named vertices and edges, assembled into a graph at the end.
#[derive(Default)]
struct Builder {
    labels: BTreeMap<usize, String>,
    edges: Vec<(usize, usize)>,
    count: usize,
}

impl Builder {
    fn vertex(&mut self, name: impl Into<String>) -> usize {
        let v = self.count;
        self.count += 1;
        self.labels.insert(v, name.into());
        v
    }

    fn edge(&mut self, u: usize, v: usize) {
        self.edges.push((u, v));
    }

    fn path(&mut self, vertices: &[usize]) {
        for w in vertices.windows(2) {
            self.edge(w[0], w[1]);
        }
    }

    fn finish(self) -> (Graph, BTreeMap<usize, String>) {
        let g = Graph::new(self.count, &self.edges).expect("builder edges are in range");
        (g, self.labels)
    }
}

/// Replaces each vertex of `s` by `m` clones sharing its neighbourhood. The
/// original keeps its id; clones are appended in the order of `s`.
pub fn blowup_independent_set(g: &Graph, s: &[usize], m: usize) -> Result<Graph, ConstructionError> {
    let (graph, _) = blowup_with_origin(g, s, m)?;
    Ok(graph)
}

/// Blow-up together with the original vertex behind every vertex.
fn blowup_with_origin(g: &Graph, s: &[usize], m: usize) -> Result<(Graph, Vec<usize>), ConstructionError> {
    if m == 0 {
        return Err(ConstructionError::ZeroMultiplicity);
    }
    let mut set: Vec<usize> = s.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&v) = set.iter().find(|&&v| v >= g.vertex_count()) {
        return Err(ConstructionError::VertexOutOfRange(v));
    }
    for (i, &u) in set.iter().enumerate() {
        if let Some(&v) = set[i + 1..].iter().find(|&&v| g.has_edge(u, v)) {
            return Err(ConstructionError::NotIndependent(u, v));
        }
    }
    let mut origin: Vec<usize> = (0..g.vertex_count()).collect();
    let mut edges = g.edges();
    for &v in &set {
        for _ in 1..m {
            let clone = origin.len();
            origin.push(v);
            edges.extend(g.neighbors(v).iter().map(|&w| (w, clone)));
        }
    }
    let graph = Graph::new(origin.len(), &edges).expect("clone edges are in range");
    Ok((graph, origin))
}

fn clone_labels(origin: &[usize], base: impl Fn(usize) -> String) -> BTreeMap<usize, String> {
    let mut seen = vec![0usize; origin.len()];
    origin
        .iter()
        .enumerate()
        .map(|(v, &o)| {
            seen[o] += 1;
            let name = if seen[o] == 1 {
                base(o)
            } else {
                format!("{}^{}", base(o), seen[o])
            };
            (v, name)
        })
        .collect()
}

/// Blows up a maximum independent set of `h` by `m`; at least
/// `m^alpha(h)` copies of `h`. Planarity is not promised for every `h`.
pub fn independent_blowup_with_multiplicity(h: &Graph, m: usize) -> Result<ConstructionOutput, ConstructionError> {
    let s = params::maximum_independent_set(h);
    let (graph, origin) = blowup_with_origin(h, &s, m)?;
    let certified = certify(
        &graph,
        ForbiddenFamily::empty(),
        h.clone(),
        DeclaredCount::AtLeast(pow(m, s.len())),
    );
    Ok(ConstructionOutput {
        family: FamilyName::IndependentBlowup,
        label_table: clone_labels(&origin, |o| format!("v{o}")),
        graph,
        multiplicity: Some(m),
        certified,
    })
}

/// Blows up a `beta_1` witness of the tree `t` by `floor(n / 2 beta)`.
pub fn tree_beta_blowup(t: &Graph, n: usize) -> Result<ConstructionOutput, ConstructionError> {
    if !t.is_tree() {
        return Err(ConstructionError::NotATree);
    }
    if n < 2 * t.vertex_count() {
        return Err(ConstructionError::TooSmall {
            n,
            reason: format!("need n >= 2 v(T) = {}", 2 * t.vertex_count()),
        });
    }
    let beta = params::beta(t, 1)?.value;
    tree_beta_blowup_with_multiplicity(t, n / (2 * beta))
}

pub fn tree_beta_blowup_with_multiplicity(t: &Graph, m: usize) -> Result<ConstructionOutput, ConstructionError> {
    if !t.is_tree() {
        return Err(ConstructionError::NotATree);
    }
    let witness = params::beta(t, 1)?;
    let s: Vec<usize> = witness.components.iter().map(|c| c[0]).collect();
    let (graph, origin) = blowup_with_origin(t, &s, m)?;
    let certified = certify(
        &graph,
        ForbiddenFamily::empty(),
        t.clone(),
        DeclaredCount::AtLeast(pow(m, s.len())),
    );
    Ok(ConstructionOutput {
        family: FamilyName::TreeBetaBlowup,
        label_table: clone_labels(&origin, |o| format!("t{o}")),
        graph,
        multiplicity: Some(m),
        certified,
    })
}

/// `C_k` with its `floor(k/2)` odd-position vertices blown up by
/// `floor(2n/k) - 1`.
pub fn cycle_blowup(k: usize, n: usize) -> Result<ConstructionOutput, ConstructionError> {
    if k < 3 {
        return Err(ConstructionError::InvalidParameters(format!("k = {k} is below 3")));
    }
    if n < k {
        return Err(ConstructionError::TooSmall {
            n,
            reason: format!("need n >= k = {k}"),
        });
    }
    cycle_blowup_with_multiplicity(k, 2 * n / k - 1)
}

pub fn cycle_blowup_with_multiplicity(k: usize, m: usize) -> Result<ConstructionOutput, ConstructionError> {
    if k < 3 {
        return Err(ConstructionError::InvalidParameters(format!("k = {k} is below 3")));
    }
    let s: Vec<usize> = (0..k / 2).map(|i| 2 * i + 1).collect();
    let (graph, origin) = blowup_with_origin(&Graph::cycle(k), &s, m)?;
    // for k = 4 the result is K_{2,2m} and every pair of clones closes a C4
    let declared = if k == 4 { choose2(2 * m) } else { pow(m, k / 2) };
    let certified = certify(
        &graph,
        ForbiddenFamily::empty(),
        Graph::cycle(k),
        DeclaredCount::Exact(declared),
    );
    Ok(ConstructionOutput {
        family: FamilyName::CycleBlowup,
        label_table: clone_labels(&origin, |o| format!("c{}", o + 1)),
        graph,
        multiplicity: Some(m),
        certified,
    })
}

/// Replaces each component of a `beta_l` witness of `t` by `m` copies
/// joined to the same neighbours. Multiplicity is the largest `m` fitting in
/// `n` vertices.
pub fn even_tree_parallel_paths(t: &Graph, l: usize, n: usize) -> Result<ConstructionOutput, ConstructionError> {
    if !t.is_tree() {
        return Err(ConstructionError::NotATree);
    }
    let witness = params::beta(t, l)?;
    let size: usize = witness.components.iter().map(Vec::len).sum();
    if n < t.vertex_count() {
        return Err(ConstructionError::TooSmall {
            n,
            reason: format!("need n >= v(T) = {}", t.vertex_count()),
        });
    }
    even_tree_parallel_paths_with_multiplicity(t, l, (n - t.vertex_count()) / size + 1)
}

pub fn even_tree_parallel_paths_with_multiplicity(
    t: &Graph,
    l: usize,
    m: usize,
) -> Result<ConstructionOutput, ConstructionError> {
    if !t.is_tree() {
        return Err(ConstructionError::NotATree);
    }
    if m == 0 {
        return Err(ConstructionError::ZeroMultiplicity);
    }
    let witness = params::beta(t, l)?;
    let mut b = Builder::default();
    for v in 0..t.vertex_count() {
        b.vertex(format!("t{v}"));
    }
    for (u, v) in t.edges() {
        b.edge(u, v);
    }
    for component in &witness.components {
        let ordered = path_order(t, component);
        for copy in 2..=m {
            let ids: Vec<usize> = ordered.iter().map(|&v| b.vertex(format!("t{v}^{copy}"))).collect();
            b.path(&ids);
            for (&orig, &id) in ordered.iter().zip(&ids) {
                for &w in t.neighbors(orig) {
                    if !component.contains(&w) {
                        b.edge(w, id);
                    }
                }
            }
        }
    }
    let (graph, label_table) = b.finish();
    let certified = certify(
        &graph,
        ForbiddenFamily::even_cycles_up_to(l),
        t.clone(),
        DeclaredCount::AtLeast(pow(m, witness.value)),
    );
    Ok(ConstructionOutput {
        family: FamilyName::EvenTreeParallelPaths,
        graph,
        label_table,
        multiplicity: Some(m),
        certified,
    })
}

/// Orders the vertices of an induced path from one end to the other.
fn path_order(t: &Graph, component: &[usize]) -> Vec<usize> {
    let inside = |v: usize| component.contains(&v);
    let start = component
        .iter()
        .copied()
        .find(|&v| t.neighbors(v).iter().filter(|&&w| inside(w)).count() <= 1)
        .expect("component is a path");
    let mut order = vec![start];
    while order.len() < component.len() {
        let last = *order.last().unwrap();
        let next = t
            .neighbors(last)
            .iter()
            .copied()
            .find(|&w| inside(w) && !order.contains(&w))
            .expect("component is a path");
        order.push(next);
    }
    order
}

/// Pentagon `x1..x5` with `t` paths `x1 y3^i y4^i y5^i x2`, the path
/// `x4 y4^1 .. y4^t`, and the path `z1 .. z_{2s}` where `z1 ~ x1`, `z_i ~ x5`
/// for `i mod 4` in {0,1} and `z_i ~ x3` for `i mod 4` in {2,3}.
/// `n = 5 + 3t + 2s` vertices and exactly `n - 4` pentagons.
pub fn pentagon_extremal(t: usize, s: usize) -> ConstructionOutput {
    let mut b = Builder::default();
    let x: Vec<usize> = (1..=5).map(|i| b.vertex(format!("x{i}"))).collect();
    b.path(&x);
    b.edge(x[4], x[0]);
    let mut spine = vec![x[3]];
    for i in 1..=t {
        let y3 = b.vertex(format!("y3^{i}"));
        let y4 = b.vertex(format!("y4^{i}"));
        let y5 = b.vertex(format!("y5^{i}"));
        b.path(&[x[0], y3, y4, y5, x[1]]);
        spine.push(y4);
    }
    b.path(&spine);
    let z: Vec<usize> = (1..=2 * s).map(|i| b.vertex(format!("z{i}"))).collect();
    b.path(&z);
    for (idx, &zi) in z.iter().enumerate() {
        let i = idx + 1;
        if i == 1 {
            b.edge(zi, x[0]);
        }
        b.edge(zi, if i % 4 <= 1 { x[4] } else { x[2] });
    }
    let (graph, label_table) = b.finish();
    let n = graph.vertex_count() as u64;
    let certified = certify(
        &graph,
        ForbiddenFamily::cycles([4]).expect("4 >= 3"),
        Graph::cycle(5),
        DeclaredCount::Exact(n - 4),
    );
    ConstructionOutput {
        family: FamilyName::PentagonExtremal,
        graph,
        label_table,
        multiplicity: None,
        certified,
    }
}

/// The pentagon construction on exactly `n` vertices, using as few `z`
/// vertices as possible. Exists for `n = 5` and every `n >= 7`.
pub fn pentagon_extremal_on(n: usize) -> Result<ConstructionOutput, ConstructionError> {
    if n < 5 || n == 6 {
        return Err(ConstructionError::TooSmall {
            n,
            reason: "5 + 3t + 2s takes every value >= 5 except 6".into(),
        });
    }
    let rest = n - 5;
    let t = (0..=rest / 3)
        .rev()
        .find(|t| (rest - 3 * t).is_multiple_of(2))
        .expect("rest != 1");
    Ok(pentagon_extremal(t, (rest - 3 * t) / 2))
}

/// `C_k` cut into `q = floor(k/(l+1))` blocks of `l` consecutive vertices
/// separated by gaps of at least one vertex; each block is replaced by `m`
/// parallel paths on `l` vertices joined to the same gap ends.
struct ParallelCycle {
    graph: Graph,
    labels: BTreeMap<usize, String>,
    blocks: usize,
}

fn parallel_cycle(k: usize, l: usize, m: usize) -> ParallelCycle {
    let q = k / (l + 1);
    let extra = k - q * (l + 1);
    let mut b = Builder::default();
    let mut gaps: Vec<Vec<usize>> = Vec::with_capacity(q);
    for i in 0..q {
        let len = 1 + extra / q + usize::from(i < extra % q);
        gaps.push((1..=len).map(|j| b.vertex(format!("g{}_{j}", i + 1))).collect());
    }
    for gap in &gaps {
        b.path(gap);
    }
    for i in 0..q {
        let from = *gaps[i].last().unwrap();
        let to = gaps[(i + 1) % q][0];
        for c in 1..=m {
            let ids: Vec<usize> = (1..=l).map(|j| b.vertex(format!("p{}_{j}^{c}", i + 1))).collect();
            b.path(&ids);
            b.edge(from, ids[0]);
            b.edge(ids[l - 1], to);
        }
    }
    let (graph, labels) = b.finish();
    ParallelCycle {
        graph,
        labels,
        blocks: q,
    }
}

/// Exact `C_k` count of [`parallel_cycle`]: one path per block around the
/// cycle, plus pairs of parallel paths when they close a `C_k` themselves.
fn parallel_cycle_count(k: usize, l: usize, q: usize, m: usize) -> u64 {
    let around = pow(m, q);
    if k == 2 * (l + 1) {
        around.saturating_add((q as u64).saturating_mul(choose2(m)))
    } else {
        around
    }
}

/// Simple C4-free planar host with many `C_k`: `floor(k/3)` blocks of `m`
/// parallel length-3 paths. The remainder `k mod 3` is absorbed by
/// connector edges between blocks.
pub fn ck_c4free_parallel(k: usize, n: usize) -> Result<ConstructionOutput, ConstructionError> {
    if k < 5 {
        return Err(ConstructionError::InvalidParameters(format!("k = {k} is below 5")));
    }
    let q = k / 3;
    if n < k + 2 * q {
        return Err(ConstructionError::TooSmall {
            n,
            reason: format!("multiplicity 2 needs n >= {}", k + 2 * q),
        });
    }
    ck_c4free_parallel_with_multiplicity(k, (n - k) / (2 * q) + 1)
}

pub fn ck_c4free_parallel_with_multiplicity(k: usize, m: usize) -> Result<ConstructionOutput, ConstructionError> {
    if k < 5 {
        return Err(ConstructionError::InvalidParameters(format!("k = {k} is below 5")));
    }
    if m == 0 {
        return Err(ConstructionError::ZeroMultiplicity);
    }
    let built = parallel_cycle(k, 2, m);
    let certified = certify(
        &built.graph,
        ForbiddenFamily::cycles([4]).expect("4 >= 3"),
        Graph::cycle(k),
        DeclaredCount::Exact(parallel_cycle_count(k, 2, built.blocks, m)),
    );
    Ok(ConstructionOutput {
        family: FamilyName::CkC4freeParallel,
        graph: built.graph,
        label_table: built.labels,
        multiplicity: Some(m),
        certified,
    })
}

fn check_conjecture_parameters(k: usize, l: usize) -> Result<(), ConstructionError> {
    if l == 0 {
        return Err(ConstructionError::InvalidParameters("l must be at least 1".into()));
    }
    if k < 3 || k < l + 1 {
        return Err(ConstructionError::InvalidParameters(format!(
            "k = {k} must be at least max(3, l + 1)"
        )));
    }
    if k.is_multiple_of(2) && k <= 2 * l {
        return Err(ConstructionError::InvalidParameters(format!(
            "C{k} is itself in the forbidden family for l = {l}"
        )));
    }
    Ok(())
}

/// `C_k` with each of its `floor(k/(l+1))` witness paths on `l` vertices
/// replaced by parallel copies; free of `{C4, .., C_2l}`.
pub fn conjecture_family(k: usize, l: usize, n: usize) -> Result<ConstructionOutput, ConstructionError> {
    check_conjecture_parameters(k, l)?;
    let step = l * (k / (l + 1));
    if n < k + step {
        return Err(ConstructionError::TooSmall {
            n,
            reason: format!("multiplicity 2 needs n >= {}", k + step),
        });
    }
    conjecture_family_with_multiplicity(k, l, (n - k) / step + 1)
}

pub fn conjecture_family_with_multiplicity(
    k: usize,
    l: usize,
    m: usize,
) -> Result<ConstructionOutput, ConstructionError> {
    check_conjecture_parameters(k, l)?;
    if m == 0 {
        return Err(ConstructionError::ZeroMultiplicity);
    }
    let built = parallel_cycle(k, l, m);
    let certified = certify(
        &built.graph,
        ForbiddenFamily::even_cycles_up_to(l),
        Graph::cycle(k),
        DeclaredCount::Exact(parallel_cycle_count(k, l, built.blocks, m)),
    );
    Ok(ConstructionOutput {
        family: FamilyName::ConjectureFamily,
        graph: built.graph,
        label_table: built.labels,
        multiplicity: Some(m),
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    #[test]
    fn blowup_basics() {
        let edge = Graph::path(1);
        assert!(are_isomorphic(
            &blowup_independent_set(&edge, &[0], 3).unwrap(),
            &Graph::star(3)
        ));
        let c4 = Graph::cycle(4);
        assert_eq!(blowup_independent_set(&c4, &[0, 2], 1).unwrap(), c4);
        assert!(are_isomorphic(
            &blowup_independent_set(&c4, &[0, 2], 2).unwrap(),
            &Graph::complete_bipartite(2, 4)
        ));
        assert_eq!(
            blowup_independent_set(&c4, &[0, 1], 2),
            Err(ConstructionError::NotIndependent(0, 1))
        );
        assert_eq!(
            blowup_independent_set(&c4, &[0], 0),
            Err(ConstructionError::ZeroMultiplicity)
        );
    }

    #[test]
    fn pentagon_small_cases() {
        for (t, s, n) in [(0, 0, 5), (0, 1, 7), (2, 2, 15), (1, 0, 8)] {
            let out = pentagon_extremal(t, s);
            assert_eq!(out.graph.vertex_count(), n);
            assert_eq!(out.certified.copies, n as u64 - 4);
            assert!(out.certified.holds(), "t={t} s={s}");
        }
        assert_eq!(pentagon_extremal(1, 1).vertex_named("y4^1"), Some(6));
        assert!(pentagon_extremal_on(6).is_err());
        assert_eq!(pentagon_extremal_on(11).unwrap().graph.vertex_count(), 11);
    }

    #[test]
    fn cycle_blowup_counts() {
        let c5 = cycle_blowup(5, 5).unwrap();
        assert_eq!(c5.graph, Graph::cycle(5));
        assert_eq!(c5.certified.copies, 1);
        let c4 = cycle_blowup(4, 8).unwrap();
        assert_eq!(c4.multiplicity, Some(3));
        assert_eq!(c4.certified.copies, 15);
        assert!(c4.certified.holds());
        let c7 = cycle_blowup_with_multiplicity(7, 3).unwrap();
        assert_eq!(c7.certified.copies, 27);
        assert!(c7.certified.holds());
        assert!(cycle_blowup(5, 4).is_err());
    }

    #[test]
    fn parallel_counts() {
        let k9 = ck_c4free_parallel_with_multiplicity(9, 2).unwrap();
        assert_eq!(k9.certified.copies, 8);
        assert!(k9.certified.holds());
        let k6 = ck_c4free_parallel_with_multiplicity(6, 2).unwrap();
        assert_eq!(k6.certified.copies, 6);
        assert!(k6.certified.holds());
        for k in 5..=11 {
            for m in 1..=3 {
                let out = ck_c4free_parallel_with_multiplicity(k, m).unwrap();
                assert!(out.certified.holds(), "k={k} m={m}");
                assert_eq!(out.graph.vertex_count(), k + 2 * (k / 3) * (m - 1));
            }
        }
        assert!(ck_c4free_parallel(4, 20).is_err());
    }

    #[test]
    fn conjecture_cases() {
        let plain = conjecture_family_with_multiplicity(9, 2, 1).unwrap();
        assert!(are_isomorphic(&plain.graph, &Graph::cycle(9)));
        let k8 = conjecture_family_with_multiplicity(8, 3, 2).unwrap();
        assert!(k8.certified.holds());
        assert!(k8.certified.copies >= 4);
        for l in 1..=3 {
            for k in 2 * (l + 1)..=10 {
                let out = conjecture_family_with_multiplicity(k, l, 2).unwrap();
                assert!(out.certified.holds(), "k={k} l={l}");
            }
        }
        assert!(conjecture_family_with_multiplicity(6, 3, 2).is_err());
    }

    #[test]
    fn trees() {
        let p2 = Graph::path(2);
        let out = tree_beta_blowup(&p2, 8).unwrap();
        assert_eq!(out.multiplicity, Some(2));
        assert!(out.certified.copies >= 4);
        assert!(out.certified.holds());
        assert_eq!(tree_beta_blowup(&Graph::cycle(3), 10), Err(ConstructionError::NotATree));

        let spider = Graph::spider(&[2, 2, 2]);
        let out = even_tree_parallel_paths_with_multiplicity(&spider, 2, 2).unwrap();
        assert!(out.certified.family_free);
        assert!(out.certified.holds());
    }

    #[test]
    fn spec_round_trip() {
        let spec = ConstructionSpec::new("ck-c4free-parallel".parse().unwrap())
            .parse_parameters("k=9,m=2")
            .unwrap();
        assert_eq!(spec.build().unwrap().certified.copies, 8);
        let spec = ConstructionSpec::new(FamilyName::PentagonExtremal).with("n", 9);
        assert_eq!(spec.build().unwrap().certified.copies, 5);
        assert!(matches!(
            ConstructionSpec::new(FamilyName::TreeBetaBlowup).with("n", 9).build(),
            Err(ConstructionError::MissingGraph(_))
        ));
        assert!("nope".parse::<FamilyName>().is_err());
    }
}
