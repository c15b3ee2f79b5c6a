//! Exhaustive search over small planar family-free graphs.
//!
//! Graphs are generated up to isomorphism by canonical augmentation: a child
//! `G = P + v` is kept when `v` lies in the automorphism orbit of the vertex
//! that the canonical labelling of `G` places last, and isomorphic children
//! of one parent are merged. Planarity and family-freeness are inherited by
//! induced subgraphs, so violating children are pruned on the spot.

use std::collections::HashSet;
use std::fs::{self, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::canon::{self, CanonicalForm};
use crate::constructions::{ConstructionError, ConstructionSpec};
use crate::counting::{self, Pattern};
use crate::cycles::{self, ForbiddenFamily};
use crate::graph::Graph;
use crate::graph6;
use crate::planarity;

/// Default largest `n` accepted by a search.
pub const DEFAULT_VERTEX_CAP: usize = 8;
/// Largest `n` accepted with explicit opt-in.
pub const EXTENDED_VERTEX_CAP: usize = 9;
/// Environment variable naming the result cache directory.
pub const CACHE_DIR_ENV: &str = "PLANAR_TURAN_CACHE";
const CACHE_FILE: &str = "extremal.jsonl";
/// Level at which the augmentation tree is split into parallel subtrees.
const SPLIT_LEVEL: usize = 5;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("n = {n} exceeds the vertex cap {cap}; raise the vertex cap to opt in (n = 9 takes hours)")]
    OverCap { n: usize, cap: usize },
    #[error("invalid budget: {0}")]
    InvalidBudget(String),
    #[error("growth probe needs at least 3 usable points, got {0}")]
    TooFewPoints(usize),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error("cache file {path}: {source}")]
    Cache {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchStatus {
    Complete,
    /// The time limit ran out; counts are lower bounds only.
    Incomplete,
}

impl std::fmt::Display for SearchStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SearchStatus::Complete => "complete",
            SearchStatus::Incomplete => "incomplete",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub time_limit: Option<Duration>,
    pub parallel_width: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_vertices: DEFAULT_VERTEX_CAP,
            time_limit: None,
            parallel_width: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl SearchBudget {
    pub fn extended() -> Self {
        SearchBudget {
            max_vertices: EXTENDED_VERTEX_CAP,
            ..Self::default()
        }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }

    pub fn with_parallel_width(mut self, width: usize) -> Self {
        self.parallel_width = width;
        self
    }

    fn check(&self, n: usize) -> Result<(), SearchError> {
        if self.max_vertices == 0 || self.parallel_width == 0 {
            return Err(SearchError::InvalidBudget(
                "max_vertices and parallel_width must be positive".into(),
            ));
        }
        if self.time_limit == Some(Duration::ZERO) {
            return Err(SearchError::InvalidBudget("time limit must be positive".into()));
        }
        if n > self.max_vertices {
            return Err(SearchError::OverCap {
                n,
                cap: self.max_vertices,
            });
        }
        Ok(())
    }
}

/// Which graphs a search ranges over.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraints {
    pub family: ForbiddenFamily,
    pub require_planar: bool,
    /// Keep only connected graphs at the target order.
    pub connected: bool,
}

impl Constraints {
    pub fn planar(family: ForbiddenFamily) -> Self {
        Constraints {
            family,
            require_planar: true,
            connected: false,
        }
    }

    pub fn connected(mut self, connected: bool) -> Self {
        self.connected = connected;
        self
    }
}

struct Generator<'a> {
    constraints: &'a Constraints,
    deadline: Option<Instant>,
    timed_out: AtomicBool,
    explored: AtomicU64,
}

impl Generator<'_> {
    fn admissible(&self, child: &Graph, new_vertex: usize) -> bool {
        if self.constraints.require_planar && !planarity::edge_bound_prefilter(child) {
            return false;
        }
        if !cycles::is_family_free_through(child, new_vertex, &self.constraints.family) {
            return false;
        }
        !self.constraints.require_planar || planarity::planar(child)
    }

    /// Canonical children of `parent`, in neighbour-mask order.
    fn children(&self, parent: &Graph) -> Vec<(Graph, CanonicalForm)> {
        let n = parent.vertex_count();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for mask in 0u64..(1u64 << n) {
            let neighbours = VertexSet::from_iter_with_capacity(n + 1, (0..n).filter(|&i| mask >> i & 1 == 1));
            let child = parent.with_new_vertex(&neighbours);
            if !self.admissible(&child, n) {
                continue;
            }
            let labeling = canon::canonical_labeling(&child);
            let last = labeling.last_vertex().expect("child is nonempty");
            let orbits = labeling.orbits();
            if orbits[last] != orbits[n] {
                continue;
            }
            if seen.insert(labeling.form.clone()) {
                out.push((child, labeling.form));
            }
        }
        out
    }

    fn out_of_time(&self) -> bool {
        if self.timed_out.load(Ordering::Relaxed) {
            return true;
        }
        if self.deadline.is_some_and(|d| Instant::now() >= d) {
            self.timed_out.store(true, Ordering::Relaxed);
            return true;
        }
        false
    }

    fn descend<F: FnMut(&Graph, &CanonicalForm)>(&self, g: &Graph, form: &CanonicalForm, target: usize, visit: &mut F) {
        if self.out_of_time() {
            return;
        }
        self.explored.fetch_add(1, Ordering::Relaxed);
        if g.vertex_count() == target {
            if !self.constraints.connected || g.is_connected() {
                visit(g, form);
            }
            return;
        }
        for (child, child_form) in self.children(g) {
            self.descend(&child, &child_form, target, visit);
        }
    }
}

/// Outcome of a fold over all constrained graphs of one order.
#[derive(Debug, Clone)]
pub struct FoldOutcome<T> {
    pub value: T,
    /// Search-tree nodes visited, over all orders up to `n`.
    pub graphs_explored: u64,
    pub status: SearchStatus,
    pub elapsed: Duration,
}

/// Visits one representative of every isomorphism class of `n`-vertex
/// graphs meeting `constraints`. Each parallel subtree folds into its own
/// accumulator; accumulators are merged in a fixed order.
pub fn fold_constrained<T, I, V, M>(
    n: usize,
    constraints: &Constraints,
    budget: &SearchBudget,
    init: I,
    visit: V,
    merge: M,
) -> Result<FoldOutcome<T>, SearchError>
where
    T: Send,
    I: Fn() -> T + Sync,
    V: Fn(&mut T, &Graph, &CanonicalForm) + Sync,
    M: Fn(T, T) -> T,
{
    budget.check(n)?;
    let start = Instant::now();
    let generator = Generator {
        constraints,
        deadline: budget.time_limit.map(|d| start + d),
        timed_out: AtomicBool::new(false),
        explored: AtomicU64::new(0),
    };

    // breadth-first down to the split level, counting the visited nodes
    let empty = Graph::empty(0);
    let mut frontier = vec![(empty.clone(), canon::canonical_form(&empty))];
    let split = n.min(SPLIT_LEVEL);
    for _ in 0..split {
        generator.explored.fetch_add(frontier.len() as u64, Ordering::Relaxed);
        frontier = frontier.iter().flat_map(|(g, _)| generator.children(g)).collect();
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(budget.parallel_width)
        .build()
        .map_err(|e| SearchError::InvalidBudget(e.to_string()))?;
    let partials: Vec<T> = pool.install(|| {
        frontier
            .par_iter()
            .map(|(g, form)| {
                let mut acc = init();
                generator.descend(g, form, n, &mut |g, f| visit(&mut acc, g, f));
                acc
            })
            .collect()
    });
    let value = partials.into_iter().fold(init(), &merge);
    let status = if generator.timed_out.load(Ordering::Relaxed) {
        SearchStatus::Incomplete
    } else {
        SearchStatus::Complete
    };
    Ok(FoldOutcome {
        value,
        graphs_explored: generator.explored.load(Ordering::Relaxed),
        status,
        elapsed: start.elapsed(),
    })
}

/// All classes of `n`-vertex graphs meeting the constraints, sorted by
/// canonical form.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub classes: Vec<CanonicalForm>,
    pub graphs_explored: u64,
    pub status: SearchStatus,
}

pub fn enumerate(n: usize, constraints: &Constraints, budget: &SearchBudget) -> Result<Enumeration, SearchError> {
    let outcome = fold_constrained(
        n,
        constraints,
        budget,
        Vec::new,
        |acc, _, form| acc.push(form.clone()),
        |mut a, b| {
            a.extend(b);
            a
        },
    )?;
    let mut classes = outcome.value;
    classes.sort();
    Ok(Enumeration {
        classes,
        graphs_explored: outcome.graphs_explored,
        status: outcome.status,
    })
}

/// Canonical representatives of all `n`-vertex graphs that are
/// family-free and, if asked, planar. Uses the default budget.
pub fn enumerate_constrained(
    n: usize,
    family: &ForbiddenFamily,
    require_planar: bool,
) -> Result<Vec<Graph>, SearchError> {
    let constraints = Constraints {
        family: family.clone(),
        require_planar,
        connected: false,
    };
    let budget = SearchBudget::default();
    Ok(enumerate(n, &constraints, &budget)?
        .classes
        .iter()
        .map(CanonicalForm::to_graph)
        .collect())
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub n: usize,
    pub pattern: Pattern,
    pub constraints: Constraints,
    pub max_count: u64,
    /// Every class attaining `max_count`, sorted.
    pub witnesses: Vec<CanonicalForm>,
    /// Whether each witness was re-checked for planarity, family-freeness
    /// and its count.
    pub witnesses_certified: bool,
    pub graphs_explored: u64,
    pub elapsed: Duration,
    pub status: SearchStatus,
}

impl ExtremalRecord {
    /// Equality ignoring wall-clock time.
    pub fn same_result(&self, other: &ExtremalRecord) -> bool {
        self.n == other.n
            && self.pattern == other.pattern
            && self.constraints == other.constraints
            && self.max_count == other.max_count
            && self.witnesses == other.witnesses
            && self.witnesses_certified == other.witnesses_certified
            && self.graphs_explored == other.graphs_explored
            && self.status == other.status
    }
}

#[derive(Default)]
struct Best {
    count: Option<u64>,
    witnesses: Vec<CanonicalForm>,
}

impl Best {
    fn offer(&mut self, count: u64, witnesses: impl IntoIterator<Item = CanonicalForm>) {
        match self.count {
            Some(c) if c > count => {}
            Some(c) if c == count => self.witnesses.extend(witnesses),
            _ => {
                self.count = Some(count);
                self.witnesses = witnesses.into_iter().collect();
            }
        }
    }
}

/// `ex(n, H, F)` over the constrained graphs, with every maximising class.
pub fn extremal_number(
    n: usize,
    pattern: &Pattern,
    constraints: &Constraints,
    budget: &SearchBudget,
) -> Result<ExtremalRecord, SearchError> {
    let outcome = fold_constrained(
        n,
        constraints,
        budget,
        Best::default,
        |best, g, form| best.offer(counting::count_copies(pattern, g), [form.clone()]),
        |mut a, b| {
            if let Some(c) = b.count {
                a.offer(c, b.witnesses);
            }
            a
        },
    )?;
    let mut witnesses = outcome.value.witnesses;
    witnesses.sort();
    witnesses.dedup();
    let max_count = outcome.value.count.unwrap_or(0);
    let witnesses_certified = witnesses.iter().all(|w| {
        let g = w.to_graph();
        (!constraints.require_planar || planarity::planar(&g))
            && cycles::is_family_free(&g, &constraints.family)
            && counting::count_copies(pattern, &g) == max_count
    });
    Ok(ExtremalRecord {
        n,
        pattern: pattern.clone(),
        constraints: constraints.clone(),
        max_count,
        witnesses,
        witnesses_certified,
        graphs_explored: outcome.graphs_explored,
        elapsed: outcome.elapsed,
        status: outcome.status,
    })
}

/// Identifies a search in the result cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheKey {
    pub n: usize,
    /// graph6 of the pattern's canonical form.
    pub pattern: String,
    /// Family as printed, e.g. `C4,C6` or `none`.
    pub family: String,
    pub planar: bool,
    pub connected: bool,
}

impl CacheKey {
    pub fn new(n: usize, pattern: &Pattern, constraints: &Constraints) -> Self {
        CacheKey {
            n,
            pattern: canon::canonical_form(pattern.graph()).to_graph6(),
            family: constraints.family.to_string(),
            planar: constraints.require_planar,
            connected: constraints.connected,
        }
    }
}

/// One line of the JSON-lines cache.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheLine {
    pub key: CacheKey,
    pub max_count: u64,
    /// graph6 strings of the canonical witnesses.
    pub witnesses: Vec<String>,
    pub graphs_explored: u64,
    pub elapsed_ms: u64,
}

impl CacheLine {
    pub fn from_record(record: &ExtremalRecord) -> Self {
        CacheLine {
            key: CacheKey::new(record.n, &record.pattern, &record.constraints),
            max_count: record.max_count,
            witnesses: record.witnesses.iter().map(CanonicalForm::to_graph6).collect(),
            graphs_explored: record.graphs_explored,
            elapsed_ms: record.elapsed.as_millis() as u64,
        }
    }

    /// Rebuilds the record; `None` if a stored witness fails to decode.
    pub fn to_record(&self, pattern: &Pattern, constraints: &Constraints) -> Option<ExtremalRecord> {
        let mut witnesses = Vec::with_capacity(self.witnesses.len());
        for w in &self.witnesses {
            witnesses.push(canon::canonical_form(&graph6::from_graph6(w).ok()?));
        }
        witnesses.sort();
        Some(ExtremalRecord {
            n: self.key.n,
            pattern: pattern.clone(),
            constraints: constraints.clone(),
            max_count: self.max_count,
            witnesses,
            witnesses_certified: true,
            graphs_explored: self.graphs_explored,
            elapsed: Duration::from_millis(self.elapsed_ms),
            status: SearchStatus::Complete,
        })
    }
}

/// Append-only JSON-lines store of complete extremal records.
#[derive(Debug, Clone)]
pub struct ResultCache {
    path: PathBuf,
}

impl ResultCache {
    pub fn in_dir(dir: impl AsRef<Path>) -> Self {
        ResultCache {
            path: dir.as_ref().join(CACHE_FILE),
        }
    }

    /// The cache named by `PLANAR_TURAN_CACHE`, if set.
    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_DIR_ENV)
            .filter(|v| !v.is_empty())
            .map(Self::in_dir)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn io_error(&self, source: std::io::Error) -> SearchError {
        SearchError::Cache {
            path: self.path.clone(),
            source,
        }
    }

    /// Latest line with this key. Unparsable lines are skipped.
    pub fn lookup(&self, key: &CacheKey) -> Result<Option<CacheLine>, SearchError> {
        let file = match fs::File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(self.io_error(e)),
        };
        let mut found = None;
        for line in BufReader::new(file).lines() {
            let line = line.map_err(|e| self.io_error(e))?;
            if let Ok(entry) = serde_json::from_str::<CacheLine>(&line) {
                if &entry.key == key {
                    found = Some(entry);
                }
            }
        }
        Ok(found)
    }

    /// Appends a record; incomplete records are not stored.
    pub fn store(&self, record: &ExtremalRecord) -> Result<bool, SearchError> {
        if record.status != SearchStatus::Complete {
            return Ok(false);
        }
        if let Some(dir) = self.path.parent() {
            fs::create_dir_all(dir).map_err(|e| self.io_error(e))?;
        }
        let mut file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| self.io_error(e))?;
        let line = serde_json::to_string(&CacheLine::from_record(record)).expect("cache lines serialize");
        writeln!(file, "{line}").map_err(|e| self.io_error(e))?;
        Ok(true)
    }
}

/// `extremal_number` behind an optional cache.
pub fn extremal_number_cached(
    n: usize,
    pattern: &Pattern,
    constraints: &Constraints,
    budget: &SearchBudget,
    cache: Option<&ResultCache>,
) -> Result<ExtremalRecord, SearchError> {
    if let Some(cache) = cache {
        if let Some(line) = cache.lookup(&CacheKey::new(n, pattern, constraints))? {
            if let Some(record) = line.to_record(pattern, constraints) {
                return Ok(record);
            }
        }
    }
    let record = extremal_number(n, pattern, constraints, budget)?;
    if let Some(cache) = cache {
        cache.store(&record)?;
    }
    Ok(record)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthPoint {
    pub n: usize,
    pub vertices: usize,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub points: Vec<GrowthPoint>,
    pub slope: f64,
    pub intercept: f64,
    /// `log(count) - (intercept + slope log(n))` for each point.
    pub residuals: Vec<f64>,
}

/// Least-squares line through `(x, y)` points: `(slope, intercept, residuals)`.
pub fn least_squares(points: &[(f64, f64)]) -> (f64, f64, Vec<f64>) {
    let len = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / len;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / len;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let intercept = mean_y - slope * mean_x;
    let residuals = points.iter().map(|p| p.1 - (intercept + slope * p.0)).collect();
    (slope, intercept, residuals)
}

/// Fits `log(count)` against `log(n)` for a construction family, where
/// `count` is the certified pattern count at each `n`. Points with a zero
/// count are dropped.
pub fn growth_probe(spec: &ConstructionSpec, n_values: &[usize]) -> Result<GrowthFit, SearchError> {
    let mut points = Vec::new();
    for &n in n_values {
        let mut at_n = spec.clone();
        at_n.parameters.remove("m");
        at_n.parameters.insert("n".into(), n);
        let out = at_n.build()?;
        if n > 0 && out.certified.copies > 0 {
            points.push(GrowthPoint {
                n,
                vertices: out.graph.vertex_count(),
                count: out.certified.copies,
            });
        }
    }
    fit_points(points)
}

/// Fits already-computed points; used for families given as fixed graphs.
pub fn fit_points(points: Vec<GrowthPoint>) -> Result<GrowthFit, SearchError> {
    if points.len() < 3 {
        return Err(SearchError::TooFewPoints(points.len()));
    }
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|p| ((p.n as f64).ln(), (p.count as f64).ln()))
        .collect();
    let (slope, intercept, residuals) = least_squares(&logs);
    Ok(GrowthFit {
        points,
        slope,
        intercept,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget() -> SearchBudget {
        SearchBudget::default().with_parallel_width(2)
    }

    #[test]
    fn small_class_counts() {
        let none = ForbiddenFamily::empty();
        let counts: Vec<usize> = (0..=5)
            .map(|n| enumerate_constrained(n, &none, false).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 4, 11, 34]);
        assert_eq!(enumerate_constrained(5, &none, true).unwrap().len(), 33);
    }

    #[test]
    fn c4_free_order_four() {
        let c4 = ForbiddenFamily::cycles([4]).unwrap();
        let graphs = enumerate_constrained(4, &c4, true).unwrap();
        assert!(graphs.iter().all(|g| !cycles::has_cycle(g, 4)));
        assert_eq!(graphs.len(), 8);
    }

    #[test]
    fn pentagon_base_cases() {
        let c5 = Pattern::new(Graph::cycle(5)).unwrap();
        let constraints = Constraints::planar(ForbiddenFamily::cycles([4]).unwrap());
        let values: Vec<u64> = (4..=7)
            .map(|n| extremal_number(n, &c5, &constraints, &budget()).unwrap().max_count)
            .collect();
        assert_eq!(values, vec![0, 1, 1, 3]);
    }

    #[test]
    fn over_cap_and_budget_errors() {
        let c5 = Pattern::new(Graph::cycle(5)).unwrap();
        let constraints = Constraints::planar(ForbiddenFamily::empty());
        assert!(matches!(
            extremal_number(9, &c5, &constraints, &budget()),
            Err(SearchError::OverCap { n: 9, cap: 8 })
        ));
        assert!(matches!(
            extremal_number(5, &c5, &constraints, &budget().with_parallel_width(0)),
            Err(SearchError::InvalidBudget(_))
        ));
    }

    #[test]
    fn connected_filter() {
        let constraints = Constraints::planar(ForbiddenFamily::empty()).connected(true);
        let e = enumerate(4, &constraints, &budget()).unwrap();
        assert_eq!(e.classes.len(), 6);
    }

    #[test]
    fn fit_recovers_exponent() {
        let points = (1..=4)
            .map(|i| GrowthPoint {
                n: 10 * i,
                vertices: 10 * i,
                count: (10 * i as u64).pow(3),
            })
            .collect();
        let fit = fit_points(points).unwrap();
        assert!((fit.slope - 3.0).abs() < 1e-9);
        assert!(fit.residuals.iter().all(|r| r.abs() < 1e-9));
        assert!(matches!(fit_points(Vec::new()), Err(SearchError::TooFewPoints(0))));
    }
}
