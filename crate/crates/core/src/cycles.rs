//! Cycle counting and forbidden-family predicates.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::counting;
use crate::graph::Graph;
use crate::graph6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("cycle length {0} is below 3")]
    CycleTooShort(usize),
    #[error("cannot parse forbidden family entry `{0}`")]
    Unparsable(String),
}

/// A forbidden family: cycle lengths plus arbitrary extra patterns.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForbiddenFamily {
    cycle_lengths: BTreeSet<usize>,
    extra_patterns: Vec<Graph>,
}

impl ForbiddenFamily {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn cycles<I: IntoIterator<Item = usize>>(lengths: I) -> Result<Self, FamilyError> {
        let cycle_lengths: BTreeSet<usize> = lengths.into_iter().collect();
        if let Some(&k) = cycle_lengths.iter().find(|&&k| k < 3) {
            return Err(FamilyError::CycleTooShort(k));
        }
        Ok(ForbiddenFamily {
            cycle_lengths,
            extra_patterns: Vec::new(),
        })
    }

    /// `{C_4, C_6, .., C_{2l}}`; empty for `l <= 1`.
    pub fn even_cycles_up_to(l: usize) -> Self {
        ForbiddenFamily {
            cycle_lengths: (2..=l).map(|i| 2 * i).collect(),
            extra_patterns: Vec::new(),
        }
    }

    pub fn with_pattern(mut self, pattern: Graph) -> Self {
        self.extra_patterns.push(pattern);
        self
    }

    pub fn cycle_lengths(&self) -> impl Iterator<Item = usize> + '_ {
        self.cycle_lengths.iter().copied()
    }

    pub fn extra_patterns(&self) -> &[Graph] {
        &self.extra_patterns
    }

    pub fn is_empty(&self) -> bool {
        self.cycle_lengths.is_empty() && self.extra_patterns.is_empty()
    }

    /// Parses a comma-separated list such as `C4,C6`; entries that are not
    /// `C<k>` are read as graph6 patterns. `none` or `` is the empty family.
    pub fn parse(text: &str) -> Result<Self, FamilyError> {
        let mut family = ForbiddenFamily::empty();
        let text = text.trim();
        if text.is_empty() || text.eq_ignore_ascii_case("none") {
            return Ok(family);
        }
        for entry in text.split(',').map(str::trim) {
            let cycle = entry
                .strip_prefix('C')
                .or_else(|| entry.strip_prefix('c'))
                .and_then(|k| k.parse::<usize>().ok());
            match cycle {
                Some(k) if k >= 3 => {
                    family.cycle_lengths.insert(k);
                }
                Some(k) => return Err(FamilyError::CycleTooShort(k)),
                None => {
                    let g = graph6::from_graph6(entry).map_err(|_| FamilyError::Unparsable(entry.to_string()))?;
                    family.extra_patterns.push(g);
                }
            }
        }
        Ok(family)
    }
}

impl fmt::Display for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("none");
        }
        let mut parts: Vec<String> = self.cycle_lengths.iter().map(|k| format!("C{k}")).collect();
        parts.extend(self.extra_patterns.iter().map(graph6::to_graph6));
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for ForbiddenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ForbiddenFamily({self})")
    }
}

/// Walks simple paths `start = p_0, p_1, ..` over vertices greater than
/// `start`, closing a cycle when `p_{k-1}` is adjacent to `start`. Each cycle
/// is seen once: anchored at its minimum vertex with `p_1 < p_{k-1}`.
struct CycleWalk<'a> {
    g: &'a Graph,
    k: usize,
    start: usize,
    second: usize,
    on_path: VertexSet,
}

impl CycleWalk<'_> {
    fn extend(&mut self, v: usize, depth: usize, stop_early: bool) -> u64 {
        if depth + 1 == self.k {
            let closes = v > self.second && self.g.has_edge(v, self.start);
            return closes as u64;
        }
        let mut total = 0;
        for &w in self.g.neighbors(v) {
            if w <= self.start || self.on_path.contains(w) {
                continue;
            }
            if depth == 0 {
                self.second = w;
            }
            self.on_path.insert(w);
            total += self.extend(w, depth + 1, stop_early);
            self.on_path.remove(w);
            if stop_early && total > 0 {
                return total;
            }
        }
        total
    }
}

fn walk_cycles(g: &Graph, k: usize, anchors: impl Iterator<Item = usize>, stop_early: bool) -> u64 {
    assert!(k >= 3, "cycle length must be at least 3");
    let n = g.vertex_count();
    if k > n {
        return 0;
    }
    let mut total = 0;
    for start in anchors {
        let mut walk = CycleWalk {
            g,
            k,
            start,
            second: usize::MAX,
            on_path: VertexSet::new(n),
        };
        walk.on_path.insert(start);
        total += walk.extend(start, 0, stop_early);
        if stop_early && total > 0 {
            return total;
        }
    }
    total
}

/// Number of distinct `k`-cycles (as subgraphs) in `g`.
pub fn count_cycles(g: &Graph, k: usize) -> u64 {
    walk_cycles(g, k, 0..g.vertex_count(), false)
}

pub fn has_cycle(g: &Graph, k: usize) -> bool {
    walk_cycles(g, k, 0..g.vertex_count(), true) > 0
}

/// Whether some `k`-cycle passes through `v`.
pub fn has_cycle_through(g: &Graph, v: usize, k: usize) -> bool {
    assert!(k >= 3, "cycle length must be at least 3");
    if k > g.vertex_count() {
        return false;
    }
    // walk k-1 edges from v and close back to it
    fn go(g: &Graph, v: usize, target: usize, left: usize, on_path: &mut VertexSet) -> bool {
        if left == 0 {
            return g.has_edge(v, target);
        }
        for &w in g.neighbors(v) {
            if on_path.contains(w) {
                continue;
            }
            on_path.insert(w);
            let found = go(g, w, target, left - 1, on_path);
            on_path.remove(w);
            if found {
                return true;
            }
        }
        false
    }
    let mut on_path = VertexSet::new(g.vertex_count());
    on_path.insert(v);
    go(g, v, v, k - 1, &mut on_path)
}

/// No cycle of a listed length and no listed pattern as a subgraph.
/// Lengths are checked shortest first.
pub fn is_family_free(g: &Graph, family: &ForbiddenFamily) -> bool {
    family.cycle_lengths().all(|k| !has_cycle(g, k))
        && family
            .extra_patterns()
            .iter()
            .all(|h| !counting::contains_subgraph(h, g))
}

/// Family-freeness of `g` given that `g - v` is already known to be free.
pub fn is_family_free_through(g: &Graph, v: usize, family: &ForbiddenFamily) -> bool {
    family.cycle_lengths().all(|k| !has_cycle_through(g, v, k))
        && family
            .extra_patterns()
            .iter()
            .all(|h| !counting::contains_subgraph(h, g))
}

/// Least even `k` such that `g` has a `k`-cycle.
pub fn shortest_even_cycle(g: &Graph) -> Option<usize> {
    (4..=g.vertex_count()).step_by(2).find(|&k| has_cycle(g, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(count_cycles(&Graph::complete(4), 3), 4);
        assert_eq!(count_cycles(&Graph::cycle(5), 5), 1);
        assert_eq!(count_cycles(&Graph::complete_bipartite(2, 3), 4), 3);
        assert_eq!(count_cycles(&Graph::complete(4), 4), 3);
        assert_eq!(count_cycles(&Graph::complete(5), 5), 12);
        assert_eq!(count_cycles(&Graph::path(6), 3), 0);
        assert_eq!(count_cycles(&Graph::cycle(4), 7), 0);
    }

    #[test]
    fn detection() {
        assert!(!has_cycle(&Graph::cycle(5), 4));
        assert!(has_cycle(&Graph::complete(4), 4));
        assert!(has_cycle_through(&Graph::complete(4), 2, 3));
        let pendant = Graph::new(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert!(!has_cycle_through(&pendant, 3, 3));
        assert!(has_cycle_through(&pendant, 0, 3));
    }

    #[test]
    fn families() {
        let c46 = ForbiddenFamily::cycles([4, 6]).unwrap();
        assert!(is_family_free(&Graph::cycle(5), &c46));
        assert!(!is_family_free(&Graph::cycle(6), &c46));
        assert!(is_family_free(&Graph::complete(7), &ForbiddenFamily::empty()));
        let no_triangle = ForbiddenFamily::empty().with_pattern(Graph::complete(3));
        assert!(!is_family_free(&Graph::complete(4), &no_triangle));
        assert!(is_family_free(&Graph::cycle(4), &no_triangle));
        assert_eq!(ForbiddenFamily::even_cycles_up_to(3), c46);
        assert!(ForbiddenFamily::even_cycles_up_to(1).is_empty());
        assert_eq!(ForbiddenFamily::cycles([2]), Err(FamilyError::CycleTooShort(2)));
    }

    #[test]
    fn parse_and_display() {
        let f = ForbiddenFamily::parse("C6, C4").unwrap();
        assert_eq!(f.to_string(), "C4,C6");
        assert!(ForbiddenFamily::parse("none").unwrap().is_empty());
        let with_k4 = ForbiddenFamily::parse("C4,C~").unwrap();
        assert_eq!(with_k4.extra_patterns(), &[Graph::complete(4)]);
        assert!(ForbiddenFamily::parse("C2").is_err());
        assert!(ForbiddenFamily::parse("C4,!!").is_err());
    }

    #[test]
    fn even_girth() {
        assert_eq!(shortest_even_cycle(&Graph::cycle(6)), Some(6));
        assert_eq!(shortest_even_cycle(&Graph::spider(&[2, 3, 1])), None);
        assert_eq!(shortest_even_cycle(&Graph::complete(4)), Some(4));
        assert_eq!(shortest_even_cycle(&Graph::cycle(7)), None);
    }
}
