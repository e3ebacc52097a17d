//! Coset Cayley graph of Z2^N / C with the N unit vectors as edge colors.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::codes::{Codeword, GeneratorMatrix};
use crate::error::{Error, Result};
use crate::gf2;

pub const MAX_N: usize = 20;
/// Vertex limit of [`is_isomorphic_small`].
pub const ISOMORPHISM_LIMIT: usize = 64;

/// A coset, identified by its lexicographically smallest member and its
/// position in the sorted list of such representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub rep: Codeword,
    pub index: usize,
}

#[derive(Clone, Debug)]
pub struct QuotientGraph {
    code: GeneratorMatrix,
    basis: Vec<u32>,
    pivots: Vec<u32>,
    reps: Vec<u32>,
    neighbors: Vec<u32>,
}

impl QuotientGraph {
    pub fn build(code: &GeneratorMatrix) -> Result<Self> {
        let report = code.validate_doubly_even();
        if !report.is_ok() {
            let reason = if !report.dependencies.is_empty() {
                "generator rows are linearly dependent".to_string()
            } else {
                "span contains words of weight not divisible by 4".to_string()
            };
            return Err(Error::CodeInvalid(reason));
        }
        if code.n() > MAX_N {
            return Err(Error::NTooLarge {
                n: code.n(),
                limit: MAX_N,
            });
        }
        let len = code.len();
        let (basis, pivots) = gf2::rref(&code.masks());
        let pivot_mask = pivots.iter().fold(0u32, |m, &p| m | 1 << p);
        let free: Vec<u32> = (0..len as u32)
            .filter(|b| pivot_mask >> b & 1 == 0)
            .collect();
        // Depositing a counter into the free positions is monotone, so reps
        // come out sorted and the counter is the dense index.
        let reps: Vec<u32> = (0u32..1 << free.len())
            .map(|i| {
                free.iter()
                    .enumerate()
                    .filter(|(j, _)| i >> j & 1 == 1)
                    .fold(0, |acc, (_, &b)| acc | 1 << b)
            })
            .collect();
        let mut graph = QuotientGraph {
            code: code.clone(),
            basis,
            pivots,
            reps,
            neighbors: Vec::new(),
        };
        let mut neighbors = Vec::with_capacity(graph.reps.len() * len);
        for &rep in &graph.reps {
            for color in 0..len {
                let word = rep ^ 1 << (len - 1 - color);
                neighbors.push(graph.index_of_rep(graph.reduce(word)) as u32);
            }
        }
        graph.neighbors = neighbors;
        Ok(graph)
    }

    fn reduce(&self, word: u32) -> u32 {
        gf2::reduce(word, &self.basis, &self.pivots)
    }

    fn index_of_rep(&self, rep: u32) -> usize {
        self.reps
            .binary_search(&rep)
            .expect("reduced word is a representative")
    }

    pub fn code(&self) -> &GeneratorMatrix {
        &self.code
    }

    /// Number of colors, N = n + k; also the degree.
    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn k(&self) -> usize {
        self.code.k()
    }

    pub fn vertex_count(&self) -> usize {
        self.reps.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count() * self.len() / 2
    }

    pub fn rep(&self, index: usize) -> Codeword {
        Codeword::new(self.reps[index], self.len())
    }

    pub fn vertex_id(&self, word: Codeword) -> VertexId {
        let rep = self.reduce(word.bits());
        VertexId {
            rep: Codeword::new(rep, self.len()),
            index: self.index_of_rep(rep),
        }
    }

    pub fn neighbor(&self, vertex: usize, color: usize) -> usize {
        self.neighbors[vertex * self.len() + color] as usize
    }

    pub fn neighbors(&self, vertex: usize) -> impl Iterator<Item = usize> + '_ {
        let len = self.len();
        self.neighbors[vertex * len..(vertex + 1) * len]
            .iter()
            .map(|&v| v as usize)
    }

    /// Bipartition class: parity of the representative's weight.
    pub fn is_odd(&self, vertex: usize) -> bool {
        self.reps[vertex].count_ones() % 2 == 1
    }

    pub fn has_edge(&self, u: usize, v: usize, color: usize) -> bool {
        u < self.vertex_count() && color < self.len() && self.neighbor(u, color) == v
    }

    /// Every edge once as `(u, v, color)` with `u < v`, ordered by `u` then
    /// color.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            (0..self.len()).filter_map(move |c| {
                let v = self.neighbor(u, c);
                (u < v).then_some((u, v, c))
            })
        })
    }

    pub fn laplacian(&self) -> LaplacianMatrix {
        let dim = self.vertex_count();
        let degree = self.len() as i64;
        let mut data = vec![0i64; dim * dim];
        for u in 0..dim {
            data[u * dim + u] = degree;
            for v in self.neighbors(u) {
                data[u * dim + v] -= 1;
            }
        }
        LaplacianMatrix { dim, data }
    }

    /// Edge-list export: a JSON header line, then `u v color` per edge.
    pub fn to_edge_list(&self) -> String {
        #[derive(Serialize)]
        struct Header {
            n: usize,
            k: usize,
            vertices: usize,
            edges: usize,
        }
        let header = Header {
            n: self.n(),
            k: self.k(),
            vertices: self.vertex_count(),
            edges: self.edge_count(),
        };
        let mut out = serde_json::to_string(&header).expect("header serializes");
        out.push('\n');
        for (u, v, c) in self.edges() {
            out.push_str(&format!("{u} {v} {c}\n"));
        }
        out
    }

    fn adjacency_bits(&self) -> Vec<u64> {
        (0..self.vertex_count())
            .map(|u| self.neighbors(u).fold(0u64, |m, v| m | 1 << v))
            .collect()
    }
}

/// `L = N·I - A` over the dense vertex index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaplacianMatrix {
    dim: usize,
    data: Vec<i64>,
}

impl LaplacianMatrix {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[i64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_dmatrix(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.dim, self.dim, |i, j| self.get(i, j) as f64)
    }
}

/// Uncolored graph isomorphism for graphs of at most 64 vertices, by joint
/// color refinement with individualization and backtracking.
pub fn is_isomorphic_small(a: &QuotientGraph, b: &QuotientGraph) -> Result<bool> {
    for g in [a, b] {
        if g.vertex_count() > ISOMORPHISM_LIMIT {
            return Err(Error::TooLarge {
                vertices: g.vertex_count(),
                limit: ISOMORPHISM_LIMIT,
            });
        }
    }
    Ok(isomorphic(&a.adjacency_bits(), &b.adjacency_bits()))
}

/// Isomorphism test on adjacency bitsets (`adj[u]` bit `v` set iff `uv` is
/// an edge), at most 64 vertices.
pub fn isomorphic(a: &[u64], b: &[u64]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    match refine(a, b, vec![0; n], vec![0; n]) {
        Some((ca, cb)) => search(a, b, ca, cb),
        None => false,
    }
}

/// Refine both colorings in lockstep so equal colors mean the same thing in
/// both graphs. `None` once the color histograms diverge.
fn refine(
    a: &[u64],
    b: &[u64],
    mut ca: Vec<u32>,
    mut cb: Vec<u32>,
) -> Option<(Vec<u32>, Vec<u32>)> {
    let signature = |adj: &[u64], colors: &[u32], v: usize| {
        let mut around: Vec<u32> = (0..adj.len())
            .filter(|&w| adj[v] >> w & 1 == 1)
            .map(|w| colors[w])
            .collect();
        around.sort_unstable();
        (colors[v], around)
    };
    let mut classes = count_classes(&ca);
    loop {
        let sa: Vec<_> = (0..a.len()).map(|v| signature(a, &ca, v)).collect();
        let sb: Vec<_> = (0..b.len()).map(|v| signature(b, &cb, v)).collect();
        let mut all: Vec<_> = sa.iter().chain(&sb).cloned().collect();
        all.sort();
        all.dedup();
        let id = |s: &(u32, Vec<u32>)| all.binary_search(s).unwrap() as u32;
        ca = sa.iter().map(id).collect();
        cb = sb.iter().map(id).collect();
        let mut ha = ca.clone();
        let mut hb = cb.clone();
        ha.sort_unstable();
        hb.sort_unstable();
        if ha != hb {
            return None;
        }
        let next = count_classes(&ca);
        if next == classes {
            return Some((ca, cb));
        }
        classes = next;
    }
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn search(a: &[u64], b: &[u64], ca: Vec<u32>, cb: Vec<u32>) -> bool {
    let n = a.len();
    // Smallest color class with more than one member.
    let mut sizes = std::collections::BTreeMap::new();
    for &c in &ca {
        *sizes.entry(c).or_insert(0usize) += 1;
    }
    let Some((&cell, _)) = sizes
        .iter()
        .filter(|(_, &s)| s > 1)
        .min_by_key(|(&c, &s)| (s, c))
    else {
        // Discrete: the coloring is the bijection.
        let mut image = vec![0usize; n];
        for v in 0..n {
            image[v] = cb.iter().position(|&c| c == ca[v]).unwrap();
        }
        return (0..n).all(|v| {
            let mapped = (0..n)
                .filter(|&w| a[v] >> w & 1 == 1)
                .fold(0u64, |m, w| m | 1 << image[w]);
            mapped == b[image[v]]
        });
    };
    let fresh = ca.iter().copied().max().unwrap_or(0) + 1;
    let v = ca.iter().position(|&c| c == cell).unwrap();
    for w in (0..n).filter(|&w| cb[w] == cell) {
        let mut na = ca.clone();
        let mut nb = cb.clone();
        na[v] = fresh;
        nb[w] = fresh;
        if let Some((ra, rb)) = refine(a, b, na, nb) {
            if search(a, b, ra, rb) {
                return true;
            }
        }
    }
    false
}
