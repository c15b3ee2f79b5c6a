//! Brute-force oracles shared by the integration tests. Each one is written
//! from the definition, without reusing the library's algorithms.

#![allow(dead_code)]

use std::collections::HashSet;

use planar_turan::graph::Graph;
use rand::Rng;

/// Every labelled graph on `n` vertices, as edge lists.
pub fn all_labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::new(n, &edges).unwrap()
    })
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut a = vec![vec![false; n]; n];
    for (u, v) in g.edges() {
        a[u][v] = true;
        a[v][u] = true;
    }
    a
}

/// Calls `f` on every permutation of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// |Aut(g)| by checking all `n!` permutations.
pub fn brute_automorphisms(g: &Graph) -> u64 {
    let a = adjacency(g);
    let edges = g.edges();
    let mut count = 0;
    for_each_permutation(g.vertex_count(), |p| {
        if edges.iter().all(|&(u, v)| a[p[u]][p[v]]) {
            count += 1;
        }
    });
    count
}

pub fn brute_isomorphic(x: &Graph, y: &Graph) -> bool {
    if x.vertex_count() != y.vertex_count() || x.edge_count() != y.edge_count() {
        return false;
    }
    let a = adjacency(y);
    let edges = x.edges();
    let mut found = false;
    for_each_permutation(x.vertex_count(), |p| {
        if !found && edges.iter().all(|&(u, v)| a[p[u]][p[v]]) {
            found = true;
        }
    });
    found
}

/// Copies of `h` in `g`: distinct (vertex set, edge set) images over all
/// injective maps of `V(h)` into `V(g)` that send edges to edges.
pub fn brute_copies(h: &Graph, g: &Graph) -> u64 {
    let k = h.vertex_count();
    let n = g.vertex_count();
    if k > n {
        return 0;
    }
    let a = adjacency(g);
    let h_edges = h.edges();
    let mut images: HashSet<(Vec<usize>, Vec<(usize, usize)>)> = HashSet::new();
    let mut map = vec![0usize; k];
    fn choose(
        start: usize,
        depth: usize,
        n: usize,
        chosen: &mut Vec<usize>,
        k: usize,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        if depth == k {
            visit(chosen);
            return;
        }
        for x in start..n {
            chosen.push(x);
            choose(x + 1, depth + 1, n, chosen, k, visit);
            chosen.pop();
        }
    }
    choose(0, 0, n, &mut Vec::new(), k, &mut |subset: &[usize]| {
        for_each_permutation(k, |p| {
            for i in 0..k {
                map[i] = subset[p[i]];
            }
            if h_edges.iter().all(|&(u, v)| a[map[u]][map[v]]) {
                let mut es: Vec<(usize, usize)> = h_edges
                    .iter()
                    .map(|&(u, v)| (map[u].min(map[v]), map[u].max(map[v])))
                    .collect();
                es.sort_unstable();
                images.insert((subset.to_vec(), es));
            }
        });
    });
    images.len() as u64
}

/// `k`-cycles: ordered tuples of distinct vertices closing into a cycle,
/// divided by the `2k` rotations and reflections.
pub fn brute_cycles(g: &Graph, k: usize) -> u64 {
    let a = adjacency(g);
    let n = g.vertex_count();
    fn extend(a: &[Vec<bool>], seq: &mut Vec<usize>, used: &mut Vec<bool>, k: usize) -> u64 {
        let n = a.len();
        if seq.len() == k {
            return a[seq[k - 1]][seq[0]] as u64;
        }
        let mut total = 0;
        for x in 0..n {
            if !used[x] && a[*seq.last().unwrap()][x] {
                used[x] = true;
                seq.push(x);
                total += extend(a, seq, used, k);
                seq.pop();
                used[x] = false;
            }
        }
        total
    }
    let mut total = 0;
    for s in 0..n {
        let mut used = vec![false; n];
        used[s] = true;
        total += extend(&a, &mut vec![s], &mut used, k);
    }
    total / (2 * k as u64)
}

/// Whether `g` contains a subdivision of K5 or K3,3, found by choosing
/// branch vertices and routing internally disjoint paths through the rest.
pub fn brute_nonplanar(g: &Graph) -> bool {
    let n = g.vertex_count();
    let a = adjacency(g);
    let deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();

    fn route(a: &[Vec<bool>], pairs: &[(usize, usize)], blocked: &mut Vec<bool>) -> bool {
        let Some((&(s, t), rest)) = pairs.split_first() else {
            return true;
        };
        fn walk(a: &[Vec<bool>], at: usize, t: usize, rest: &[(usize, usize)], blocked: &mut Vec<bool>) -> bool {
            if a[at][t] && route(a, rest, blocked) {
                return true;
            }
            for x in 0..a.len() {
                if !blocked[x] && a[at][x] {
                    blocked[x] = true;
                    let ok = walk(a, x, t, rest, blocked);
                    blocked[x] = false;
                    if ok {
                        return true;
                    }
                }
            }
            false
        }
        walk(a, s, t, rest, blocked)
    }

    let subsets = |size: usize, min_deg: usize| -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize == size {
                let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
                if s.iter().all(|&v| deg[v] >= min_deg) {
                    out.push(s);
                }
            }
        }
        out
    };

    for branch in subsets(5, 4) {
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| (i + 1..5).map(move |j| (i, j)))
            .map(|(i, j)| (branch[i], branch[j]))
            .collect();
        let mut blocked = vec![false; n];
        for &b in &branch {
            blocked[b] = true;
        }
        if route(&a, &pairs, &mut blocked) {
            return true;
        }
    }
    for six in subsets(6, 3) {
        // sides {six[0], x, y} and the other three
        for i in 1..6 {
            for j in i + 1..6 {
                let left = [six[0], six[i], six[j]];
                let right: Vec<usize> = six.iter().copied().filter(|v| !left.contains(v)).collect();
                let pairs: Vec<(usize, usize)> =
                    left.iter().flat_map(|&l| right.iter().map(move |&r| (l, r))).collect();
                let mut blocked = vec![false; n];
                for &b in &six {
                    blocked[b] = true;
                }
                if route(&a, &pairs, &mut blocked) {
                    return true;
                }
            }
        }
    }
    false
}

/// `beta_i(h)` by checking every subset of vertices of degree at most two.
pub fn brute_beta(h: &Graph, i: usize) -> usize {
    let n = h.vertex_count();
    assert!(n <= 24);
    let nbr: Vec<u32> = (0..n)
        .map(|v| h.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let deg: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let candidates: Vec<usize> = (0..n).filter(|&v| deg[v] <= 2).collect();
    let mut best = 0;
    for pick in 0u32..(1 << candidates.len()) {
        let set: u32 = candidates
            .iter()
            .enumerate()
            .filter(|(j, _)| pick >> j & 1 == 1)
            .fold(0, |m, (_, &v)| m | 1 << v);
        if let Some(c) = packing_components(set, &nbr, &deg, i) {
            best = best.max(c);
        }
    }
    best
}

fn packing_components(set: u32, nbr: &[u32], deg: &[usize], i: usize) -> Option<usize> {
    let mut left = set;
    let mut count = 0;
    while left != 0 {
        let start = left.trailing_zeros() as usize;
        let mut comp = 1u32 << start;
        loop {
            let mut grown = comp;
            for v in 0..nbr.len() {
                if comp >> v & 1 == 1 {
                    grown |= nbr[v] & set;
                }
            }
            if grown == comp {
                break;
            }
            comp = grown;
        }
        left &= !comp;
        count += 1;
        let size = comp.count_ones() as usize;
        let members: Vec<usize> = (0..nbr.len()).filter(|&v| comp >> v & 1 == 1).collect();
        if size == 1 && deg[start] <= 1 {
            continue;
        }
        if size != i || members.iter().any(|&v| deg[v] != 2) {
            return None;
        }
        let inner: u32 = members.iter().map(|&v| (nbr[v] & comp).count_ones()).sum();
        if inner as usize / 2 != size - 1 {
            return None;
        }
    }
    Some(count)
}

/// Unlabelled graphs on `n` vertices by Burnside's lemma: the average over
/// all vertex permutations of `2^(orbits on unordered pairs)`.
pub fn burnside_graph_count(n: usize) -> u64 {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut total: u128 = 0;
    let mut perms: u128 = 0;
    for_each_permutation(n, |p| {
        let mut seen = vec![false; pairs.len()];
        let mut orbits = 0;
        for start in 0..pairs.len() {
            if seen[start] {
                continue;
            }
            orbits += 1;
            let mut at = start;
            while !seen[at] {
                seen[at] = true;
                let (u, v) = pairs[at];
                let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                at = pairs.iter().position(|&e| e == (a, b)).unwrap();
            }
        }
        total += 1u128 << orbits;
        perms += 1;
    });
    (total / perms) as u64
}
