//! Pattern shorthand: `C5`, `K4`, `P3`, `K1_3`, `S2_2_1`, or graph6.
//!
//! `P<t>` is the path with `t` edges. `S<a>_<b>_..` is the spider whose
//! legs have `a`, `b`, .. edges.

use thiserror::Error;

use crate::graph::Graph;
use crate::graph6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("`{0}` is neither a named pattern (C<k>, K<r>, K<a>_<b>, P<t>, S<a>_<b>..) nor graph6")]
pub struct UnknownPattern(pub String);

pub fn parse_graph(text: &str) -> Result<Graph, UnknownPattern> {
    let text = text.trim();
    if let Some(g) = named(text) {
        return Ok(g);
    }
    graph6::from_graph6(text).map_err(|_| UnknownPattern(text.to_string()))
}

fn numbers(rest: &str) -> Option<Vec<usize>> {
    rest.split('_').map(|p| p.parse().ok()).collect()
}

fn named(text: &str) -> Option<Graph> {
    let mut chars = text.chars();
    let head = chars.next()?.to_ascii_uppercase();
    let nums = numbers(chars.as_str())?;
    match (head, nums.as_slice()) {
        ('C', &[k]) if k >= 3 => Some(Graph::cycle(k)),
        ('K', &[r]) if r >= 1 => Some(Graph::complete(r)),
        ('K', &[a, b]) if a >= 1 && b >= 1 => Some(Graph::complete_bipartite(a, b)),
        ('P', &[t]) => Some(Graph::path(t)),
        ('S', legs) if !legs.is_empty() && legs.iter().all(|&l| l >= 1) => Some(Graph::spider(legs)),
        _ => None,
    }
}
