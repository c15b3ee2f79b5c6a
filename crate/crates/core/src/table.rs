//! Parameter sweeps rendered as CSV and JSON tables.
//!
//! A sweep is written `kind:key=value,..` where ranges use `a..b`
//! (inclusive). Kinds and their columns:
//!
//! * `extremal:pattern=C5,forbid=C4,n=4..7[,connected=1][,planar=0]` -
//!   `n,pattern,family,max_count,witnesses,status`
//! * `beta-path:k=1..6,l=1..3` - `k,l,beta,closed_form`
//! * `beta-cycle:k=3..10,l=1..3` - `k,l,beta,closed_form`
//! * `construction:family=pentagon-extremal,n=5..20[,k=..,l=..]` -
//!   `n,vertices,copies,declared,planar,family_free`

use std::collections::BTreeMap;
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use serde::Serialize;
use thiserror::Error;

use crate::claims;
use crate::constructions::{ConstructionSpec, FamilyName};
use crate::counting::Pattern;
use crate::cycles::ForbiddenFamily;
use crate::graph::Graph;
use crate::graph6;
use crate::names;
use crate::params;
use crate::search::{self, Constraints, ResultCache, SearchBudget};

#[derive(Debug, Error)]
pub enum TableError {
    #[error("malformed sweep `{0}`")]
    Malformed(String),
    #[error("unknown sweep kind `{0}` (extremal, beta-path, beta-cycle, construction)")]
    UnknownKind(String),
    #[error("sweep needs `{0}`")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Search(#[from] search::SearchError),
    #[error("writing {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            writer.write_record(row).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("tables serialize");
        text.push('\n');
        text
    }

    /// Writes `<stem>.csv` and `<stem>.json`, returning both paths.
    pub fn write(&self, stem: &Path) -> Result<(PathBuf, PathBuf), TableError> {
        let csv_path = stem.with_extension("csv");
        let json_path = stem.with_extension("json");
        for (path, body) in [(&csv_path, self.to_csv()), (&json_path, self.to_json())] {
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir).map_err(|source| TableError::Io {
                    path: dir.to_path_buf(),
                    source,
                })?;
            }
            fs::write(path, body).map_err(|source| TableError::Io {
                path: path.clone(),
                source,
            })?;
        }
        Ok((csv_path, json_path))
    }
}

struct SweepSpec {
    kind: String,
    fields: BTreeMap<String, String>,
}

impl SweepSpec {
    fn parse(text: &str) -> Result<Self, TableError> {
        let (kind, rest) = text.split_once(':').unwrap_or((text, ""));
        let mut fields = BTreeMap::new();
        // values such as `forbid=C4,C6` contain commas, so a piece without
        // `=` continues the previous value
        let mut last: Option<String> = None;
        for piece in rest.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match piece.split_once('=') {
                Some((k, v)) => {
                    fields.insert(k.trim().to_string(), v.trim().to_string());
                    last = Some(k.trim().to_string());
                }
                None => {
                    let key = last.as_ref().ok_or_else(|| TableError::Malformed(text.to_string()))?;
                    let value = fields.get_mut(key).expect("key was inserted");
                    value.push(',');
                    value.push_str(piece);
                }
            }
        }
        Ok(SweepSpec {
            kind: kind.trim().to_string(),
            fields,
        })
    }

    fn field(&self, key: &'static str) -> Result<&str, TableError> {
        self.fields.get(key).map(String::as_str).ok_or(TableError::Missing(key))
    }

    fn range(&self, key: &'static str) -> Result<RangeInclusive<usize>, TableError> {
        let text = self.field(key)?;
        let bad = || TableError::Invalid(format!("{key}={text} is not a number or a..b range"));
        match text.split_once("..") {
            Some((a, b)) => Ok(a.trim().parse().map_err(|_| bad())?..=b.trim().parse().map_err(|_| bad())?),
            None => {
                let v = text.parse().map_err(|_| bad())?;
                Ok(v..=v)
            }
        }
    }

    fn flag(&self, key: &str, default: bool) -> Result<bool, TableError> {
        match self.fields.get(key).map(String::as_str) {
            None => Ok(default),
            Some("1" | "true" | "yes") => Ok(true),
            Some("0" | "false" | "no") => Ok(false),
            Some(other) => Err(TableError::Invalid(format!("{key}={other} is not a boolean"))),
        }
    }
}

/// Builds the table for a sweep. Extremal rows go through `cache` when
/// given.
pub fn build_table(spec: &str, budget: &SearchBudget, cache: Option<&ResultCache>) -> Result<Table, TableError> {
    let sweep = SweepSpec::parse(spec)?;
    match sweep.kind.as_str() {
        "extremal" => extremal_table(&sweep, budget, cache),
        "beta-path" => beta_table(&sweep, Graph::path, claims::beta_path_closed_form, 0),
        "beta-cycle" => beta_table(&sweep, Graph::cycle, claims::beta_cycle_closed_form, 3),
        "construction" => construction_table(&sweep),
        other => Err(TableError::UnknownKind(other.to_string())),
    }
}

fn extremal_table(sweep: &SweepSpec, budget: &SearchBudget, cache: Option<&ResultCache>) -> Result<Table, TableError> {
    let pattern_text = sweep.field("pattern")?;
    let pattern_graph = names::parse_graph(pattern_text).map_err(|e| TableError::Invalid(e.to_string()))?;
    let pattern = Pattern::new(pattern_graph).map_err(|e| TableError::Invalid(e.to_string()))?;
    let family = ForbiddenFamily::parse(sweep.fields.get("forbid").map_or("none", String::as_str))
        .map_err(|e| TableError::Invalid(e.to_string()))?;
    let constraints = Constraints {
        family,
        require_planar: sweep.flag("planar", true)?,
        connected: sweep.flag("connected", false)?,
    };
    let mut table = Table::new(&["n", "pattern", "family", "max_count", "witnesses", "status"]);
    for n in sweep.range("n")? {
        let record = search::extremal_number_cached(n, &pattern, &constraints, budget, cache)?;
        table.push(vec![
            n.to_string(),
            pattern_text.to_string(),
            constraints.family.to_string(),
            record.max_count.to_string(),
            record.witnesses.len().to_string(),
            record.status.to_string(),
        ]);
    }
    Ok(table)
}

fn beta_table(
    sweep: &SweepSpec,
    host: fn(usize) -> Graph,
    closed_form: fn(usize, usize) -> usize,
    min_k: usize,
) -> Result<Table, TableError> {
    let mut table = Table::new(&["k", "l", "beta", "closed_form"]);
    for k in sweep.range("k")?.filter(|&k| k >= min_k) {
        for l in sweep.range("l")? {
            let beta = params::beta(&host(k), l).map_err(|e| TableError::Invalid(e.to_string()))?;
            table.push(vec![
                k.to_string(),
                l.to_string(),
                beta.value.to_string(),
                closed_form(k, l).to_string(),
            ]);
        }
    }
    Ok(table)
}

fn construction_table(sweep: &SweepSpec) -> Result<Table, TableError> {
    let family: FamilyName = sweep
        .field("family")?
        .parse()
        .map_err(|e: crate::constructions::ConstructionError| TableError::Invalid(e.to_string()))?;
    let mut base = ConstructionSpec::new(family);
    for (key, value) in &sweep.fields {
        match key.as_str() {
            "family" | "n" => {}
            "tree" | "graph" => {
                base.graph = Some(names::parse_graph(value).map_err(|e| TableError::Invalid(e.to_string()))?);
            }
            _ => {
                let v = value
                    .parse()
                    .map_err(|_| TableError::Invalid(format!("{key}={value} is not a number")))?;
                base.parameters.insert(key.clone(), v);
            }
        }
    }
    let mut table = Table::new(&["n", "vertices", "copies", "declared", "planar", "family_free", "graph6"]);
    for n in sweep.range("n")? {
        let out = match base.clone().with("n", n).build() {
            Ok(out) => out,
            Err(crate::constructions::ConstructionError::TooSmall { .. }) => continue,
            Err(e) => return Err(TableError::Invalid(e.to_string())),
        };
        let c = &out.certified;
        table.push(vec![
            n.to_string(),
            out.graph.vertex_count().to_string(),
            c.copies.to_string(),
            c.declared.value().to_string(),
            c.planar.to_string(),
            c.family_free.to_string(),
            graph6::to_graph6(&out.graph),
        ]);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn beta_path_table_matches_closed_form() {
        let t = build_table("beta-path:k=1..6,l=1..3", &SearchBudget::default(), None).unwrap();
        assert_eq!(t.rows.len(), 18);
        assert!(t.rows.iter().all(|r| r[2] == r[3]));
    }

    #[test]
    fn empty_sweep_is_header_only() {
        let t = build_table("beta-cycle:k=9..4,l=1", &SearchBudget::default(), None).unwrap();
        assert!(t.rows.is_empty());
        assert_eq!(t.to_csv(), "k,l,beta,closed_form\n");
    }

    #[test]
    fn extremal_rows() {
        let t = build_table("extremal:pattern=C5,forbid=C4,n=4..6", &SearchBudget::default(), None).unwrap();
        let values: Vec<&str> = t.rows.iter().map(|r| r[3].as_str()).collect();
        assert_eq!(values, vec!["0", "1", "1"]);
    }

    #[test]
    fn multi_cycle_family_parses() {
        let sweep = SweepSpec::parse("extremal:pattern=C5,forbid=C4,C6,n=5").unwrap();
        assert_eq!(sweep.fields["forbid"], "C4,C6");
        assert!(build_table("nope:x=1", &SearchBudget::default(), None).is_err());
    }
}
