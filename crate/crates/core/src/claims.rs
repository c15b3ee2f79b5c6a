//! Registry of checkable claims, each a full sweep of instance checks.

use std::fmt;
use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::constructions::{self, ConstructionSpec, FamilyName};
use crate::counting::{self, Pattern};
use crate::cycles::ForbiddenFamily;
use crate::graph::Graph;
use crate::graph6;
use crate::names;
use crate::params;
use crate::search::{self, Constraints, SearchBudget, SearchStatus};

/// Largest allowed distance between a fitted and a predicted exponent.
pub const GROWTH_TOLERANCE: f64 = 0.15;

pub const CLAIM_IDS: [&str; 8] = [
    "c5-c4free-exact",
    "beta-closed-forms",
    "path-forest-beta",
    "growth-exponents",
    "construction-certificates",
    "planar-degeneracy",
    "c4free-edge-degree-sum",
    "bounded-paths-probe",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown claim `{0}`; known claims: {known}", known = CLAIM_IDS.join(", "))]
pub struct UnknownClaim(pub String);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Pass,
    Fail,
    Incomplete,
}

impl fmt::Display for ClaimStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClaimStatus::Pass => "pass",
            ClaimStatus::Fail => "fail",
            ClaimStatus::Incomplete => "incomplete",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceCheck {
    pub instance: String,
    pub expected: String,
    pub observed: String,
    pub passed: bool,
}

impl InstanceCheck {
    fn new(
        instance: impl Into<String>,
        expected: impl fmt::Display,
        observed: impl fmt::Display,
        passed: bool,
    ) -> Self {
        InstanceCheck {
            instance: instance.into(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            passed,
        }
    }

    fn equal<T: PartialEq + fmt::Display>(instance: impl Into<String>, expected: T, observed: T) -> Self {
        let passed = expected == observed;
        Self::new(instance, expected, observed, passed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim_id: String,
    pub status: ClaimStatus,
    pub details: Vec<InstanceCheck>,
    pub runtime: Duration,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &InstanceCheck> {
        self.details.iter().filter(|c| !c.passed)
    }
}

#[derive(Default)]
struct Sweep {
    checks: Vec<InstanceCheck>,
    incomplete: bool,
}

impl Sweep {
    fn push(&mut self, check: InstanceCheck) {
        self.checks.push(check);
    }

    fn note_status(&mut self, status: SearchStatus) {
        self.incomplete |= status == SearchStatus::Incomplete;
    }
}

/// Runs every instance of `claim_id`. The status is `pass` only if every
/// instance passed and no search ran out of time.
pub fn verify(claim_id: &str, budget: &SearchBudget) -> Result<VerificationReport, UnknownClaim> {
    let start = Instant::now();
    let sweep = match claim_id {
        "c5-c4free-exact" => c5_c4free_exact(budget),
        "beta-closed-forms" => beta_closed_forms(),
        "path-forest-beta" => Sweep {
            checks: path_forest_beta(100, 0x5eed),
            incomplete: false,
        },
        "growth-exponents" => growth_exponents(),
        "construction-certificates" => construction_certificates(budget),
        "planar-degeneracy" => planar_degeneracy(budget),
        "c4free-edge-degree-sum" => c4free_edge_degree_sum(budget),
        "bounded-paths-probe" => bounded_paths_probe(),
        other => return Err(UnknownClaim(other.to_string())),
    };
    let status = if sweep.checks.iter().any(|c| !c.passed) {
        ClaimStatus::Fail
    } else if sweep.incomplete {
        ClaimStatus::Incomplete
    } else {
        ClaimStatus::Pass
    };
    Ok(VerificationReport {
        claim_id: claim_id.to_string(),
        status,
        details: sweep.checks,
        runtime: start.elapsed(),
    })
}

fn c5_c4free_exact(budget: &SearchBudget) -> Sweep {
    let mut sweep = Sweep::default();
    let c5 = Pattern::new(Graph::cycle(5)).expect("C5 is a valid pattern");
    let constraints = Constraints::planar(ForbiddenFamily::cycles([4]).expect("4 >= 3"));
    for (n, expected) in [(4, 0u64), (5, 1), (6, 1), (7, 3), (8, 4)]
        .into_iter()
        .filter(|&(n, _)| n <= 7 || n <= budget.max_vertices)
    {
        match search::extremal_number(n, &c5, &constraints, budget) {
            Ok(record) => {
                sweep.note_status(record.status);
                let passed = record.max_count == expected && record.witnesses_certified;
                sweep.push(InstanceCheck::new(
                    format!("exhaustive n={n}"),
                    expected,
                    record.max_count,
                    passed,
                ));
            }
            Err(e) => sweep.push(InstanceCheck::new(format!("exhaustive n={n}"), expected, e, false)),
        }
    }
    for t in 0..=10 {
        for s in 0..=10 {
            let out = constructions::pentagon_extremal(t, s);
            let n = out.graph.vertex_count() as u64;
            sweep.push(InstanceCheck::new(
                format!("pentagon t={t} s={s}"),
                n - 4,
                out.certified.copies,
                out.certified.holds() && out.certified.copies == n - 4,
            ));
        }
    }
    sweep
}

/// `beta_l(P_k)` for the path with `k` edges.
pub fn beta_path_closed_form(k: usize, l: usize) -> usize {
    1 + (k + l - 1) / (l + 1)
}

pub fn beta_cycle_closed_form(k: usize, l: usize) -> usize {
    k / (l + 1)
}

fn beta_closed_forms() -> Sweep {
    let mut sweep = Sweep::default();
    for l in 1..=4 {
        for k in 1..=15 {
            let observed = params::beta(&Graph::path(k), l).map(|w| w.value).unwrap_or(usize::MAX);
            sweep.push(InstanceCheck::equal(
                format!("P{k} l={l}"),
                beta_path_closed_form(k, l),
                observed,
            ));
        }
        for k in 3..=15 {
            let observed = params::beta(&Graph::cycle(k), l).map(|w| w.value).unwrap_or(usize::MAX);
            sweep.push(InstanceCheck::equal(
                format!("C{k} l={l}"),
                beta_cycle_closed_form(k, l),
                observed,
            ));
        }
    }
    sweep
}

/// Uniform random labelled tree on `n` vertices from a Prüfer sequence.
pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    if n <= 1 {
        return Graph::empty(n);
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, &edges).expect("Prüfer edges are in range")
}

/// `beta_l(F) = beta_l(T)` for random trees `T` on at most 16 vertices.
pub fn path_forest_beta(trees: usize, seed: u64) -> Vec<InstanceCheck> {
    let mut sweep = Sweep::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..trees {
        let n = rng.gen_range(1..=16);
        let t = random_tree(&mut rng, n);
        for l in 1..=3 {
            let instance = format!("tree#{i} {} l={l}", graph6::to_graph6(&t));
            let check = params::tree_partition(&t, l)
                .and_then(|p| Ok((params::beta(&t, l)?.value, params::beta(&p.path_forest, l)?.value)));
            sweep.push(match check {
                Ok((bt, bf)) => InstanceCheck::equal(instance, bt, bf),
                Err(e) => InstanceCheck::new(instance, "partition", e, false),
            });
        }
    }
    sweep.checks
}

/// One growth-exponent check: the family, its `n` sweep and the predicted
/// exponent.
#[derive(Debug, Clone)]
pub struct GrowthCase {
    pub label: String,
    pub spec: ConstructionSpec,
    pub n_values: Vec<usize>,
    pub exponent: f64,
}

fn tree_spec(family: FamilyName, tree: &str) -> ConstructionSpec {
    ConstructionSpec::new(family).with_graph(names::parse_graph(tree).expect("built-in tree name"))
}

/// The sweeps behind the growth claim. Sweeps start where the additive
/// offsets of the multiplicity formulas are already small.
pub fn growth_cases() -> Vec<GrowthCase> {
    let mut cases = Vec::new();
    for (tree, n_values) in [
        ("P2", vec![40, 80, 160, 320]),
        ("K1_3", vec![60, 120, 240]),
        ("P4", vec![60, 120, 240]),
    ] {
        let spec = tree_spec(FamilyName::TreeBetaBlowup, tree);
        let beta = params::beta(spec.graph.as_ref().unwrap(), 1).unwrap().value;
        cases.push(GrowthCase {
            label: format!("tree-beta-blowup T={tree}"),
            spec,
            n_values,
            exponent: beta as f64,
        });
    }
    for (k, n_values) in [
        (4, vec![50, 100, 200, 400]),
        (5, vec![50, 100, 200, 400]),
        (6, vec![60, 120, 240, 480]),
        (8, vec![100, 200, 400]),
    ] {
        cases.push(GrowthCase {
            label: format!("cycle-blowup k={k}"),
            spec: ConstructionSpec::new(FamilyName::CycleBlowup).with("k", k),
            n_values,
            exponent: (k / 2) as f64,
        });
    }
    for (tree, l, n_values) in [
        ("K1_3", 2, vec![120, 240, 480]),
        ("P5", 2, vec![120, 240, 480]),
        ("P7", 3, vec![100, 200, 400]),
    ] {
        let spec = tree_spec(FamilyName::EvenTreeParallelPaths, tree).with("l", l);
        let beta = params::beta(spec.graph.as_ref().unwrap(), l).unwrap().value;
        cases.push(GrowthCase {
            label: format!("even-tree-parallel-paths T={tree} l={l}"),
            spec,
            n_values,
            exponent: beta as f64,
        });
    }
    for (k, n_values) in [
        (5, vec![100, 200, 400, 800]),
        (6, vec![100, 200, 400, 800]),
        (7, vec![100, 200, 400, 800]),
        (9, vec![100, 200, 400]),
    ] {
        cases.push(GrowthCase {
            label: format!("ck-c4free-parallel k={k}"),
            spec: ConstructionSpec::new(FamilyName::CkC4freeParallel).with("k", k),
            n_values,
            exponent: (k / 3) as f64,
        });
    }
    cases
}

pub fn growth_check(case: &GrowthCase) -> InstanceCheck {
    let expected = format!("{:.2} +- {GROWTH_TOLERANCE}", case.exponent);
    match search::growth_probe(&case.spec, &case.n_values) {
        Ok(fit) => {
            let passed = (fit.slope - case.exponent).abs() <= GROWTH_TOLERANCE;
            InstanceCheck::new(case.label.clone(), expected, format!("{:.4}", fit.slope), passed)
        }
        Err(e) => InstanceCheck::new(case.label.clone(), expected, e, false),
    }
}

fn growth_exponents() -> Sweep {
    let mut sweep = Sweep::default();
    for case in growth_cases() {
        sweep.push(growth_check(&case));
    }
    sweep
}

/// All trees on `1..=max_order` vertices, one per isomorphism class.
pub fn small_trees(max_order: usize, budget: &SearchBudget) -> Result<Vec<Graph>, search::SearchError> {
    let mut trees = Vec::new();
    let constraints = Constraints::planar(ForbiddenFamily::empty()).connected(true);
    for n in 1..=max_order {
        let classes = search::enumerate(n, &constraints, budget)?.classes;
        trees.extend(classes.iter().map(|c| c.to_graph()).filter(Graph::is_tree));
    }
    Ok(trees)
}

/// The parameter matrix over which every construction is certified.
pub fn certification_matrix(budget: &SearchBudget) -> Result<Vec<ConstructionSpec>, search::SearchError> {
    let mut specs = Vec::new();
    for t in 0..=10 {
        for s in 0..=10 {
            specs.push(
                ConstructionSpec::new(FamilyName::PentagonExtremal)
                    .with("t", t)
                    .with("s", s),
            );
        }
    }
    for k in 3..=8 {
        for m in 1..=4 {
            specs.push(ConstructionSpec::new(FamilyName::CycleBlowup).with("k", k).with("m", m));
        }
    }
    for k in 5..=12 {
        for m in 1..=4 {
            specs.push(
                ConstructionSpec::new(FamilyName::CkC4freeParallel)
                    .with("k", k)
                    .with("m", m),
            );
        }
    }
    for l in 1..=4 {
        for k in (l + 1).max(3)..=12 {
            if k % 2 == 0 && k <= 2 * l {
                continue;
            }
            for m in 1..=3 {
                specs.push(
                    ConstructionSpec::new(FamilyName::ConjectureFamily)
                        .with("k", k)
                        .with("l", l)
                        .with("m", m),
                );
            }
        }
    }
    for tree in small_trees(7, budget)? {
        for m in 1..=3 {
            specs.push(
                ConstructionSpec::new(FamilyName::TreeBetaBlowup)
                    .with_graph(tree.clone())
                    .with("m", m),
            );
            for l in 1..=3 {
                specs.push(
                    ConstructionSpec::new(FamilyName::EvenTreeParallelPaths)
                        .with_graph(tree.clone())
                        .with("l", l)
                        .with("m", m),
                );
            }
        }
    }
    Ok(specs)
}

pub fn describe_spec(spec: &ConstructionSpec) -> String {
    let mut text = spec.family.to_string();
    for (k, v) in &spec.parameters {
        text.push_str(&format!(" {k}={v}"));
    }
    if let Some(g) = &spec.graph {
        text.push_str(&format!(" T={}", graph6::to_graph6(g)));
    }
    text
}

fn construction_certificates(budget: &SearchBudget) -> Sweep {
    let mut sweep = Sweep::default();
    let specs = match certification_matrix(budget) {
        Ok(specs) => specs,
        Err(e) => {
            sweep.push(InstanceCheck::new("tree enumeration", "ok", e, false));
            return sweep;
        }
    };
    for spec in specs {
        let label = describe_spec(&spec);
        sweep.push(match spec.build() {
            Ok(out) => {
                let c = &out.certified;
                let observed = format!("planar={} free={} copies={}", c.planar, c.family_free, c.copies);
                InstanceCheck::new(label, format!("planar, free, {:?}", c.declared), observed, c.holds())
            }
            Err(e) => InstanceCheck::new(label, "built", e, false),
        });
    }
    sweep
}

fn planar_degeneracy(budget: &SearchBudget) -> Sweep {
    let mut sweep = Sweep::default();
    let constraints = Constraints::planar(ForbiddenFamily::empty());
    for n in 1..=7 {
        let outcome = search::fold_constrained(
            n,
            &constraints,
            budget,
            || (0usize, 0usize),
            |acc, g, _| {
                acc.0 = acc.0.max(params::degeneracy(g));
                acc.1 += 1;
            },
            |a, b| (a.0.max(b.0), a.1 + b.1),
        );
        let check = match outcome {
            Ok(o) => {
                sweep.note_status(o.status);
                let (max, graphs) = o.value;
                InstanceCheck::new(format!("planar n={n} ({graphs} classes)"), "<= 5", max, max <= 5)
            }
            Err(e) => InstanceCheck::new(format!("planar n={n}"), "<= 5", e, false),
        };
        sweep.push(check);
    }
    sweep
}

fn c4free_edge_degree_sum(budget: &SearchBudget) -> Sweep {
    let mut sweep = Sweep::default();
    let constraints = Constraints::planar(ForbiddenFamily::cycles([4]).expect("4 >= 3"));
    for n in 3..=8 {
        let outcome = search::fold_constrained(
            n,
            &constraints,
            budget,
            || (0usize, 0usize),
            |acc, g, _| {
                if g.min_degree().is_some_and(|d| d >= 2) {
                    acc.0 = acc.0.max(params::min_edge_degree_sum(g).unwrap_or(0));
                    acc.1 += 1;
                }
            },
            |a, b| (a.0.max(b.0), a.1 + b.1),
        );
        let check = match outcome {
            Ok(o) => {
                sweep.note_status(o.status);
                let (max, graphs) = o.value;
                InstanceCheck::new(
                    format!("C4-free planar min degree >= 2, n={n} ({graphs} classes)"),
                    "<= 7",
                    max,
                    max <= 7,
                )
            }
            Err(e) => InstanceCheck::new(format!("n={n}"), "<= 7", e, false),
        };
        sweep.push(check);
    }
    sweep
}

/// Fixed `(T, l)` streams for the bounded-path probe, with the two orders
/// `n` and `4n` compared.
pub fn bounded_path_cases() -> Vec<(String, Graph, usize, usize)> {
    [
        ("S2_2_2", 2, 30),
        ("P5", 2, 24),
        ("P7", 3, 40),
        ("S3_3_1", 3, 30),
        ("K1_3", 1, 12),
    ]
    .into_iter()
    .map(|(name, l, n)| (name.to_string(), names::parse_graph(name).expect("built-in tree"), l, n))
    .collect()
}

pub fn bounded_path_check(name: &str, tree: &Graph, l: usize, n: usize) -> InstanceCheck {
    let probe = |order: usize| -> Result<u64, String> {
        let out = constructions::even_tree_parallel_paths(tree, l, order).map_err(|e| e.to_string())?;
        let lengths: Vec<usize> = (1..=l).collect();
        counting::probe_bounded_paths([(format!("n={order}"), out.graph)], l, &lengths)
            .map(|b| b.observed_max)
            .map_err(|e| e.to_string())
    };
    let instance = format!("T={name} l={l} n={n} vs n={}", 4 * n);
    match (probe(n), probe(4 * n)) {
        (Ok(a), Ok(b)) => InstanceCheck::equal(instance, a, b),
        (Err(e), _) | (_, Err(e)) => InstanceCheck::new(instance, "probe", e, false),
    }
}

fn bounded_paths_probe() -> Sweep {
    let mut sweep = Sweep::default();
    for (name, tree, l, n) in bounded_path_cases() {
        sweep.push(bounded_path_check(&name, &tree, l, n));
    }
    sweep
}
