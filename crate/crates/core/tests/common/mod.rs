//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library's linear algebra; it works straight from bit scans.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use adinkra::codes::GeneratorMatrix;
use adinkra::dashing::Edge;
use adinkra::graph::QuotientGraph;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn testdata(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("testdata")
        .join(name)
}

pub fn code(len: usize, rows: &[u32]) -> GeneratorMatrix {
    if rows.is_empty() {
        GeneratorMatrix::empty(len).unwrap()
    } else {
        GeneratorMatrix::new(len, rows.to_vec()).unwrap()
    }
}

pub fn masks(c: &GeneratorMatrix) -> Vec<u32> {
    c.rows().iter().map(|r| r.bits()).collect()
}

/// Every word of the span, by subset enumeration.
pub fn span(rows: &[u32]) -> Vec<u32> {
    let mut out: Vec<u32> = (0u32..1 << rows.len())
        .map(|s| {
            rows.iter()
                .enumerate()
                .filter(|&(i, _)| s >> i & 1 == 1)
                .fold(0, |acc, (_, &r)| acc ^ r)
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Reduced echelon form, used only to canonicalize subspaces for dedup.
fn echelon(rows: &[u32]) -> Vec<u32> {
    let mut basis: Vec<u32> = Vec::new();
    for &r in rows {
        let mut w = r;
        for &b in &basis {
            w = w.min(w ^ b);
        }
        if w != 0 {
            for b in basis.iter_mut() {
                *b = (*b).min(*b ^ w);
            }
            basis.push(w);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis
}

/// All doubly even subspaces of GF(2)^len except {0}, each given by a
/// canonical basis. Grown one word at a time from the zero code.
pub fn doubly_even_codes(len: usize) -> Vec<Vec<u32>> {
    let candidates: Vec<u32> = (1u32..1 << len)
        .filter(|w| w.count_ones() % 4 == 0)
        .collect();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut frontier: Vec<Vec<u32>> = vec![Vec::new()];
    let mut all = Vec::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for basis in &frontier {
            let words: HashSet<u32> = span(basis).into_iter().collect();
            for &c in &candidates {
                if words.contains(&c) || basis.iter().any(|b| (b & c).count_ones() % 2 == 1) {
                    continue;
                }
                let mut rows = basis.clone();
                rows.push(c);
                let canon = echelon(&rows);
                if seen.insert(canon.clone()) {
                    next.push(canon);
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all
}

/// Largest dimension of a doubly even code of this length, by exhaustion.
pub fn brute_kmax(len: usize) -> usize {
    doubly_even_codes(len)
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
}

/// Laplacian spectrum from a scan of all 2^len words for the dual.
pub fn brute_spectrum(len: usize, rows: &[u32]) -> BTreeMap<u32, u64> {
    let mut out = BTreeMap::new();
    for u in 0u32..1 << len {
        if rows.iter().all(|r| (r & u).count_ones() % 2 == 0) {
            *out.entry(2 * u.count_ones()).or_insert(0) += 1;
        }
    }
    out
}

/// Coset minimum by scanning the whole code.
pub fn direct_rep(word: u32, rows: &[u32]) -> u32 {
    span(rows).into_iter().map(|c| word ^ c).min().unwrap()
}

/// A random doubly even code: draw doubly even words, keep those that are
/// orthogonal to and independent of what is already kept.
pub fn random_code<R: Rng>(rng: &mut R, len: usize, want: usize) -> Vec<u32> {
    let mut rows: Vec<u32> = Vec::new();
    for _ in 0..2000 {
        if rows.len() == want {
            break;
        }
        let w: u32 = rng.random_range(1..1u32 << len);
        if !w.count_ones().is_multiple_of(4) || rows.iter().any(|r| (r & w).count_ones() % 2 == 1) {
            continue;
        }
        let mut extended = rows.clone();
        extended.push(w);
        if echelon(&extended).len() == extended.len() {
            rows = extended;
        }
    }
    rows
}

pub fn graph_edges(g: &QuotientGraph) -> Vec<Edge> {
    g.edges().map(|(u, v, c)| Edge::new(u, v, c)).collect()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

/// Whether the edges form a spanning tree on `vertices` vertices.
pub fn is_spanning_tree(vertices: usize, edges: &[Edge]) -> bool {
    if edges.len() + 1 != vertices {
        return false;
    }
    let mut parent: Vec<usize> = (0..vertices).collect();
    for e in edges {
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// Kruskal over a shuffled edge list.
pub fn random_spanning_tree<R: Rng>(g: &QuotientGraph, rng: &mut R) -> Vec<Edge> {
    let mut edges = graph_edges(g);
    edges.shuffle(rng);
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    let mut tree = Vec::new();
    for e in edges {
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a != b {
            parent[a] = b;
            tree.push(e);
        }
    }
    tree
}

/// Every spanning tree, by checking all edge subsets of the right size.
pub fn all_spanning_trees(g: &QuotientGraph) -> Vec<Vec<Edge>> {
    let edges = graph_edges(g);
    assert!(
        edges.len() <= 20,
        "exhaustive tree listing is for tiny graphs"
    );
    (0u32..1 << edges.len())
        .filter(|s| s.count_ones() as usize + 1 == g.vertex_count())
        .map(|s| {
            edges
                .iter()
                .enumerate()
                .filter(|&(i, _)| s >> i & 1 == 1)
                .map(|(_, e)| *e)
                .collect::<Vec<_>>()
        })
        .filter(|t| is_spanning_tree(g.vertex_count(), t))
        .collect()
}

pub fn binomial(n: u64, m: u64) -> u64 {
    (0..m).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
