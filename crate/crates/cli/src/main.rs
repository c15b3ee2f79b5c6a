//! `planar-turan`: construct, count, search and verify from the shell.
//!
//! Exit codes: 0 pass, 1 fail, 2 incomplete, 64 usage.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use planar_turan::claims::{self, ClaimStatus};
use planar_turan::constructions::{ConstructionSpec, FamilyName};
use planar_turan::counting::{self, Pattern};
use planar_turan::cycles::{self, ForbiddenFamily};
use planar_turan::graph::Graph;
use planar_turan::search::{self, Constraints, ResultCache, SearchBudget, SearchStatus};
use planar_turan::{graph6, names, params, planarity, table};

const EXIT_FAIL: u8 = 1;
const EXIT_INCOMPLETE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "planar-turan", version, about = "Generalized Turán counts on planar hosts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Graph6,
}

#[derive(clap::Args)]
struct BudgetArgs {
    /// Wall-clock limit; an exhausted budget reports `incomplete`.
    #[arg(long)]
    budget_seconds: Option<f64>,
    /// Worker threads.
    #[arg(long)]
    jobs: Option<usize>,
    /// Raise the vertex cap from 8 to 9 (expect hours).
    #[arg(long)]
    allow_nine: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget, Usage> {
        let mut budget = if self.allow_nine {
            SearchBudget::extended()
        } else {
            SearchBudget::default()
        };
        if let Some(s) = self.budget_seconds {
            if !(s.is_finite() && s > 0.0) {
                return Err(Usage("--budget-seconds must be positive".into()));
            }
            budget = budget.with_time_limit(Duration::from_secs_f64(s));
        }
        if let Some(j) = self.jobs {
            if j == 0 {
                return Err(Usage("--jobs must be positive".into()));
            }
            budget = budget.with_parallel_width(j);
        }
        Ok(budget)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a construction and print graph6 plus its certificate.
    Construct {
        /// independent-blowup, cycle-blowup, tree-beta-blowup,
        /// even-tree-parallel-paths, pentagon-extremal, ck-c4free-parallel,
        /// conjecture-family
        #[arg(long)]
        family: String,
        /// Comma-separated knobs, e.g. `k=6,n=40` or `t=2,s=1`.
        #[arg(long, default_value = "")]
        params: String,
        /// Input tree or graph (name or graph6) for the tree families.
        #[arg(long)]
        tree: Option<String>,
        /// `json` (default) prints the full record, `graph6` only the graph.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Count copies of a pattern in a host graph.
    Count {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        graph: String,
    },
    /// Count k-cycles in a graph.
    CountCycles {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        k: usize,
    },
    /// Planarity verdict with a Kuratowski witness when non-planar.
    IsPlanar {
        #[arg(long)]
        graph: String,
    },
    /// Structural parameters of a graph.
    Params {
        #[arg(long)]
        graph: String,
        /// Index for beta_l and the tree partition.
        #[arg(long, default_value_t = 1)]
        l: usize,
    },
    /// Exhaustive extremal number ex(n, H, F) over planar F-free graphs.
    Search {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        pattern: String,
        /// Forbidden family such as `C4,C6`; `none` for no restriction.
        #[arg(long, default_value = "none")]
        forbid: String,
        /// Only connected hosts.
        #[arg(long)]
        connected: bool,
        /// Search planar hosts (the default).
        #[arg(long, overrides_with = "no_planar")]
        planar: bool,
        /// Search all hosts, planar or not.
        #[arg(long)]
        no_planar: bool,
        /// Skip the result cache even if PLANAR_TURAN_CACHE is set.
        #[arg(long)]
        no_cache: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Run a registered claim and report pass, fail or incomplete.
    Verify {
        /// One of the ids printed by `verify --list`.
        claim: Option<String>,
        #[arg(long)]
        list: bool,
        /// `json` prints the full report.
        #[arg(long, value_enum)]
        format: Option<Format>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Write a sweep as `<output>.csv` and `<output>.json`.
    ///
    /// Sweeps and CSV columns:
    ///   extremal:pattern=C5,forbid=C4,n=4..7[,connected=1][,planar=0]
    ///     n,pattern,family,max_count,witnesses,status
    ///   beta-path:k=1..6,l=1..3 and beta-cycle:k=3..9,l=1..3
    ///     k,l,beta,closed_form
    ///   construction:family=pentagon-extremal,n=5..20[,k=..,l=..,tree=..]
    ///     n,vertices,copies,declared,planar,family_free,graph6
    #[command(verbatim_doc_comment)]
    Table {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        output: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

/// Bad input from the command line; maps to exit code 64.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(e: impl std::fmt::Display) -> anyhow::Error {
    Usage(e.to_string()).into()
}

fn graph_arg(text: &str) -> Result<Graph> {
    names::parse_graph(text).map_err(usage)
}

fn pattern_arg(text: &str) -> Result<Pattern> {
    Pattern::new(graph_arg(text)?).map_err(usage)
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string(value).expect("values serialize"));
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Construct {
            family,
            params,
            tree,
            format,
        } => {
            let family: FamilyName = family.parse().map_err(usage)?;
            let mut spec = ConstructionSpec::new(family).parse_parameters(&params).map_err(usage)?;
            if let Some(t) = tree {
                spec = spec.with_graph(graph_arg(&t)?);
            }
            let out = spec.build().map_err(usage)?;
            match format {
                Format::Graph6 => println!("{}", graph6::to_graph6(&out.graph)),
                _ => {
                    let c = &out.certified;
                    print_json(&json!({
                        "family": out.family,
                        "graph6": graph6::to_graph6(&out.graph),
                        "vertices": out.graph.vertex_count(),
                        "edges": out.graph.edge_count(),
                        "multiplicity": out.multiplicity,
                        "labels": out.label_table,
                        "certificate": {
                            "planar": c.planar,
                            "family": c.family.to_string(),
                            "family_free": c.family_free,
                            "pattern": graph6::to_graph6(&c.pattern),
                            "copies": c.copies,
                            "declared": c.declared,
                            "holds": c.holds(),
                        },
                    }));
                }
            }
            Ok(if out.certified.holds() { 0 } else { EXIT_FAIL })
        }
        Command::Count { pattern, graph } => {
            let h = pattern_arg(&pattern)?;
            let g = graph_arg(&graph)?;
            print_json(&json!({
                "copies": counting::count_copies(&h, &g),
                "injective_homomorphisms": counting::count_injective_homs(h.graph(), &g),
                "automorphisms": h.automorphisms(),
            }));
            Ok(0)
        }
        Command::CountCycles { graph, k } => {
            if k < 3 {
                return Err(usage("--k must be at least 3"));
            }
            println!("{}", cycles::count_cycles(&graph_arg(&graph)?, k));
            Ok(0)
        }
        Command::IsPlanar { graph } => {
            let verdict = planarity::is_planar(&graph_arg(&graph)?);
            print_json(&serde_json::to_value(&verdict)?);
            Ok(0)
        }
        Command::Params { graph, l } => {
            let g = graph_arg(&graph)?;
            let beta = params::beta(&g, l).ok();
            let partition = if g.is_tree() {
                params::tree_partition(&g, l).ok()
            } else {
                None
            };
            print_json(&json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "independence_number": params::independence_number(&g),
                "degeneracy": params::degeneracy(&g),
                "min_edge_degree_sum": params::min_edge_degree_sum(&g),
                "l": l,
                "beta": beta,
                "tree_partition": partition.map(|p| json!({
                    "a1": p.a1,
                    "a2": p.a2,
                    "a2_prime": p.a2_prime,
                    "a2_doubleprime": p.a2_doubleprime,
                    "a_ge3": p.a_ge3,
                    "path_forest": graph6::to_graph6(&p.path_forest),
                    "forest_vertices": p.forest_vertices,
                })),
            }));
            Ok(0)
        }
        Command::Search {
            n,
            pattern,
            forbid,
            connected,
            planar: _,
            no_planar,
            no_cache,
            budget,
        } => {
            let budget = budget.budget()?;
            let pattern = pattern_arg(&pattern)?;
            let constraints = Constraints {
                family: ForbiddenFamily::parse(&forbid).map_err(usage)?,
                require_planar: !no_planar,
                connected,
            };
            let cache = if no_cache { None } else { ResultCache::from_env() };
            let record = match search::extremal_number_cached(n, &pattern, &constraints, &budget, cache.as_ref()) {
                Err(e @ search::SearchError::OverCap { .. }) => return Err(usage(e)),
                other => other?,
            };
            let mut line = serde_json::to_value(search::CacheLine::from_record(&record))?;
            let object = line.as_object_mut().expect("cache lines are objects");
            object.remove("elapsed_ms");
            object.insert("status".into(), json!(record.status));
            print_json(&line);
            eprintln!("elapsed {:.3}s", record.elapsed.as_secs_f64());
            Ok(match record.status {
                SearchStatus::Complete => 0,
                SearchStatus::Incomplete => EXIT_INCOMPLETE,
            })
        }
        Command::Verify {
            claim,
            list,
            format,
            budget,
        } => {
            if list {
                for id in claims::CLAIM_IDS {
                    println!("{id}");
                }
                return Ok(0);
            }
            let claim = claim.ok_or_else(|| usage("missing claim id (see --list)"))?;
            let report = claims::verify(&claim, &budget.budget()?).map_err(usage)?;
            if format == Some(Format::Json) {
                let mut value = serde_json::to_value(&report)?;
                value.as_object_mut().expect("reports are objects").remove("runtime");
                print_json(&value);
            } else {
                for check in report.failures() {
                    println!(
                        "FAIL {}: expected {}, observed {}",
                        check.instance, check.expected, check.observed
                    );
                }
                println!(
                    "{} {} ({} checks)",
                    report.claim_id,
                    report.status,
                    report.details.len()
                );
            }
            eprintln!("elapsed {:.3}s", report.runtime.as_secs_f64());
            Ok(match report.status {
                ClaimStatus::Pass => 0,
                ClaimStatus::Fail => EXIT_FAIL,
                ClaimStatus::Incomplete => EXIT_INCOMPLETE,
            })
        }
        Command::Table { spec, output, budget } => {
            let cache = ResultCache::from_env();
            let t = match table::build_table(&spec, &budget.budget()?, cache.as_ref()) {
                Err(e @ table::TableError::Io { .. }) => return Err(e.into()),
                Err(e) => return Err(usage(e)),
                Ok(t) => t,
            };
            let (csv, json) = t
                .write(&output)
                .with_context(|| format!("writing table {}", output.display()))?;
            println!("{}", csv.display());
            println!("{}", json.display());
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::from(EXIT_FAIL)
            }
        }
    }
}
