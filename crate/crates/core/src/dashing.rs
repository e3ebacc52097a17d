//! Edge dashings on quotient hypercubes.
//!
//! A dashing is well formed when every 2-color quadrilateral carries an odd
//! number of dashed edges. Given three edges of a quadrilateral, the NDXOR
//! gate fixes the fourth; [`complete_dashing`] fires it to a fixpoint.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::QuotientGraph;

/// Undirected colored edge, stored with `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub color: usize,
}

impl Edge {
    pub fn new(a: usize, b: usize, color: usize) -> Edge {
        Edge {
            u: a.min(b),
            v: a.max(b),
            color,
        }
    }

    pub fn other(&self, end: usize) -> Option<usize> {
        if end == self.u {
            Some(self.v)
        } else if end == self.v {
            Some(self.u)
        } else {
            None
        }
    }

    pub fn in_graph(&self, g: &QuotientGraph) -> bool {
        self.u != self.v && g.has_edge(self.u, self.v, self.color)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.u, self.v, self.color)
    }
}

/// `¬(x ⊕ y ⊕ z)`.
pub fn ndxor(x: bool, y: bool, z: bool) -> bool {
    !(x ^ y ^ z)
}

/// The 4-cycle `v0 -I- v1 -J- v2 -I- v3 -J- v0`, with `v0` its smallest
/// vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Quadrilateral {
    pub colors: (usize, usize),
    pub vertices: [usize; 4],
}

impl Quadrilateral {
    pub fn edges(&self) -> [Edge; 4] {
        let [a, b, c, d] = self.vertices;
        let (i, j) = self.colors;
        [
            Edge::new(a, b, i),
            Edge::new(b, c, j),
            Edge::new(c, d, i),
            Edge::new(d, a, j),
        ]
    }
}

/// Quadrilaterals spanned by colors `ci` and `cj`, each once, sorted.
pub fn quadrilaterals(g: &QuotientGraph, ci: usize, cj: usize) -> Result<Vec<Quadrilateral>> {
    if ci == cj {
        return Err(Error::SameColor(ci));
    }
    for c in [ci, cj] {
        if c >= g.len() {
            return Err(Error::ColorOutOfRange {
                color: c,
                len: g.len(),
            });
        }
    }
    let (ci, cj) = (ci.min(cj), ci.max(cj));
    let mut quads = Vec::with_capacity(g.vertex_count() / 4);
    for v0 in 0..g.vertex_count() {
        let v1 = g.neighbor(v0, ci);
        let v2 = g.neighbor(v1, cj);
        let v3 = g.neighbor(v0, cj);
        if v0 < v1 && v0 < v2 && v0 < v3 {
            quads.push(Quadrilateral {
                colors: (ci, cj),
                vertices: [v0, v1, v2, v3],
            });
        }
    }
    Ok(quads)
}

/// Every 2-color quadrilateral, ordered by color pair then smallest vertex.
pub fn all_quadrilaterals(g: &QuotientGraph) -> Vec<Quadrilateral> {
    let len = g.len();
    (0..len)
        .flat_map(|i| (i + 1..len).map(move |j| (i, j)))
        .flat_map(|(i, j)| quadrilaterals(g, i, j).expect("distinct in-range colors"))
        .collect()
}

/// Partial map from edges to dash bits (`true` = dashed).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DashingAssignment {
    bits: BTreeMap<Edge, bool>,
}

impl DashingAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, e: &Edge) -> Option<bool> {
        self.bits.get(e).copied()
    }

    pub fn set(&mut self, e: Edge, dashed: bool) {
        self.bits.insert(e, dashed);
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, bool)> + '_ {
        self.bits.iter().map(|(&e, &b)| (e, b))
    }

    pub fn is_complete(&self, g: &QuotientGraph) -> bool {
        self.bits.len() == g.edge_count() && self.bits.keys().all(|e| e.in_graph(g))
    }

    /// Copy with the bit of `e` inverted (unassigned edges become dashed).
    pub fn flipped(&self, e: Edge) -> Self {
        let mut out = self.clone();
        let bit = out.get(&e).unwrap_or(false);
        out.set(e, !bit);
        out
    }

    /// Dashing file format: `u v color bit` per line, '#' comments.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = DashingAssignment::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let bad = |message: String| Error::Parse {
                line: idx + 1,
                message,
            };
            if fields.len() != 4 {
                return Err(bad(format!("expected `u v color bit`, got {line:?}")));
            }
            let num = |s: &str| {
                s.parse::<usize>()
                    .map_err(|e| bad(format!("bad number {s:?}: {e}")))
            };
            let bit = match fields[3] {
                "0" => false,
                "1" => true,
                other => return Err(bad(format!("bit must be 0 or 1, got {other:?}"))),
            };
            out.set(
                Edge::new(num(fields[0])?, num(fields[1])?, num(fields[2])?),
                bit,
            );
        }
        Ok(out)
    }
}

impl fmt::Display for DashingAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (e, bit) in self.iter() {
            writeln!(f, "{e} {}", u8::from(bit))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DashingFailure {
    /// An input edge is not an edge of the graph.
    NotAnEdge(Edge),
    /// No quadrilateral has exactly three known edges, yet some edges are
    /// still unknown.
    Stuck {
        unknown: Vec<Edge>,
        partial: DashingAssignment,
    },
    /// A fully known quadrilateral has an even dashed count.
    Inconsistent {
        quadrilateral: Quadrilateral,
        partial: DashingAssignment,
    },
}

impl fmt::Display for DashingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DashingFailure::NotAnEdge(e) => write!(f, "({e}) is not an edge of the graph"),
            DashingFailure::Stuck { unknown, .. } => {
                write!(f, "propagation stuck with {} unknown edges", unknown.len())
            }
            DashingFailure::Inconsistent { quadrilateral, .. } => write!(
                f,
                "quadrilateral {:?} with colors {:?} has an even dashed count",
                quadrilateral.vertices, quadrilateral.colors
            ),
        }
    }
}

impl std::error::Error for DashingFailure {}

/// Fire NDXOR on quadrilaterals with three known edges, in sorted order,
/// until nothing changes.
pub fn complete_dashing(
    g: &QuotientGraph,
    partial: &DashingAssignment,
) -> std::result::Result<DashingAssignment, DashingFailure> {
    if let Some((e, _)) = partial.iter().find(|(e, _)| !e.in_graph(g)) {
        return Err(DashingFailure::NotAnEdge(e));
    }
    let quads = all_quadrilaterals(g);
    let mut d = partial.clone();
    loop {
        let mut changed = false;
        for q in &quads {
            let edges = q.edges();
            let known: Vec<Option<bool>> = edges.iter().map(|e| d.get(e)).collect();
            let missing: Vec<usize> = (0..4).filter(|&i| known[i].is_none()).collect();
            match missing.as_slice() {
                [] => {
                    let dashed = known.iter().filter(|b| **b == Some(true)).count();
                    if dashed % 2 == 0 {
                        return Err(DashingFailure::Inconsistent {
                            quadrilateral: *q,
                            partial: d,
                        });
                    }
                }
                &[gap] => {
                    let mut rest = (0..4).filter(|&i| i != gap).map(|i| known[i].unwrap());
                    let (x, y, z) = (
                        rest.next().unwrap(),
                        rest.next().unwrap(),
                        rest.next().unwrap(),
                    );
                    d.set(edges[gap], ndxor(x, y, z));
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    if d.len() < g.edge_count() {
        let unknown = g
            .edges()
            .map(|(u, v, c)| Edge::new(u, v, c))
            .filter(|e| d.get(e).is_none())
            .collect();
        return Err(DashingFailure::Stuck {
            unknown,
            partial: d,
        });
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DashingReport {
    pub even_quadrilaterals: Vec<Quadrilateral>,
}

impl DashingReport {
    pub fn is_ok(&self) -> bool {
        self.even_quadrilaterals.is_empty()
    }
}

pub fn validate_dashing(g: &QuotientGraph, d: &DashingAssignment) -> Result<DashingReport> {
    if let Some((e, _)) = d.iter().find(|(e, _)| !e.in_graph(g)) {
        return Err(Error::NotAnEdge {
            u: e.u,
            v: e.v,
            color: e.color,
        });
    }
    if d.len() != g.edge_count() {
        return Err(Error::IncompleteAssignment {
            missing: g.edge_count() - d.len(),
        });
    }
    let even_quadrilaterals = all_quadrilaterals(g)
        .into_iter()
        .filter(|q| q.edges().iter().filter(|e| d.get(e) == Some(true)).count() % 2 == 0)
        .collect();
    Ok(DashingReport {
        even_quadrilaterals,
    })
}

/// A spanning tree plus designated cycles (as edge sequences).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CandidateBaobab {
    pub tree: Vec<Edge>,
    pub cycles: Vec<Vec<Edge>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaobabViolation {
    ForeignEdge(Edge),
    TreeEdgeCount { expected: usize, found: usize },
    TreeHasCycle,
    CycleCount { expected: usize, found: usize },
    NotClosedWalk { cycle: usize },
    TooFewOddColors { cycle: usize, odd_colors: usize },
    NoPrivateColor { cycle: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaobabReport {
    pub violations: Vec<BaobabViolation>,
}

impl BaobabReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check the baobab conditions: a spanning tree, exactly k cycles, each a
/// closed walk with at least four colors used an odd number of times, and
/// each owning a color absent from every other cycle.
pub fn check_baobab(g: &QuotientGraph, b: &CandidateBaobab) -> BaobabReport {
    let mut violations = Vec::new();
    for e in b.tree.iter().chain(b.cycles.iter().flatten()) {
        if !e.in_graph(g) {
            violations.push(BaobabViolation::ForeignEdge(*e));
        }
    }
    let expected = g.vertex_count() - 1;
    if b.tree.len() != expected {
        violations.push(BaobabViolation::TreeEdgeCount {
            expected,
            found: b.tree.len(),
        });
    }
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in &b.tree {
        if e.u >= parent.len() || e.v >= parent.len() {
            continue;
        }
        let (ru, rv) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if ru == rv {
            violations.push(BaobabViolation::TreeHasCycle);
            break;
        }
        parent[ru] = rv;
    }
    if b.cycles.len() != g.k() {
        violations.push(BaobabViolation::CycleCount {
            expected: g.k(),
            found: b.cycles.len(),
        });
    }
    let color_sets: Vec<BTreeSet<usize>> = b
        .cycles
        .iter()
        .map(|c| c.iter().map(|e| e.color).collect())
        .collect();
    for (i, cycle) in b.cycles.iter().enumerate() {
        if !is_closed_walk(cycle) {
            violations.push(BaobabViolation::NotClosedWalk { cycle: i });
        }
        let mut counts = BTreeMap::new();
        for e in cycle {
            *counts.entry(e.color).or_insert(0usize) += 1;
        }
        let odd_colors = counts.values().filter(|&&c| c % 2 == 1).count();
        if odd_colors < 4 {
            violations.push(BaobabViolation::TooFewOddColors {
                cycle: i,
                odd_colors,
            });
        }
        let private = color_sets[i].iter().any(|c| {
            color_sets
                .iter()
                .enumerate()
                .all(|(j, s)| j == i || !s.contains(c))
        });
        if !private {
            violations.push(BaobabViolation::NoPrivateColor { cycle: i });
        }
    }
    BaobabReport { violations }
}

fn is_closed_walk(cycle: &[Edge]) -> bool {
    let Some(first) = cycle.first() else {
        return false;
    };
    [first.u, first.v].into_iter().any(|start| {
        let mut at = start;
        for e in cycle {
            match e.other(at) {
                Some(next) => at = next,
                None => return false,
            }
        }
        at == start
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::GeneratorMatrix;

    fn cube(n: usize) -> QuotientGraph {
        QuotientGraph::build(&GeneratorMatrix::empty(n).unwrap()).unwrap()
    }

    fn k44() -> QuotientGraph {
        QuotientGraph::build(&GeneratorMatrix::from_strs(&["1111"]).unwrap()).unwrap()
    }

    fn walk(g: &QuotientGraph, start: usize, colors: &[usize]) -> Vec<Edge> {
        let mut at = start;
        colors
            .iter()
            .map(|&c| {
                let next = g.neighbor(at, c);
                let e = Edge::new(at, next, c);
                at = next;
                e
            })
            .collect()
    }

    fn bfs_tree(g: &QuotientGraph) -> Vec<Edge> {
        let mut seen = vec![false; g.vertex_count()];
        let mut queue = std::collections::VecDeque::from([0]);
        seen[0] = true;
        let mut tree = Vec::new();
        while let Some(u) = queue.pop_front() {
            for c in 0..g.len() {
                let v = g.neighbor(u, c);
                if !seen[v] {
                    seen[v] = true;
                    tree.push(Edge::new(u, v, c));
                    queue.push_back(v);
                }
            }
        }
        tree
    }

    #[test]
    fn ndxor_truth_table() {
        assert!(ndxor(false, false, false));
        assert!(!ndxor(true, false, false));
        assert!(!ndxor(true, true, true));
        for bits in 0..8u8 {
            let (x, y, z) = (bits & 1 == 1, bits & 2 == 2, bits & 4 == 4);
            let w = ndxor(x, y, z);
            assert_eq!((x as u8 + y as u8 + z as u8 + w as u8) % 2, 1);
        }
    }

    #[test]
    fn quadrilateral_counts() {
        assert_eq!(quadrilaterals(&cube(2), 0, 1).unwrap().len(), 1);
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            assert_eq!(quadrilaterals(&cube(3), i, j).unwrap().len(), 2);
        }
        assert_eq!(quadrilaterals(&k44(), 0, 1).unwrap().len(), 2);
        assert_eq!(quadrilaterals(&cube(2), 1, 1), Err(Error::SameColor(1)));
        assert!(matches!(
            quadrilaterals(&cube(2), 0, 2),
            Err(Error::ColorOutOfRange { .. })
        ));
    }

    #[test]
    fn square_completion() {
        let g = cube(2);
        let mut d = DashingAssignment::new();
        let missing = Edge::new(2, 3, 1);
        for (u, v, c) in g.edges() {
            let e = Edge::new(u, v, c);
            if e != missing {
                d.set(e, false);
            }
        }
        let done = complete_dashing(&g, &d).unwrap();
        assert_eq!(done.get(&missing), Some(true));
        assert!(validate_dashing(&g, &done).unwrap().is_ok());
    }

    #[test]
    fn even_square_is_inconsistent() {
        let g = cube(2);
        let mut d = DashingAssignment::new();
        for (u, v, c) in g.edges() {
            d.set(Edge::new(u, v, c), false);
        }
        assert!(matches!(
            complete_dashing(&g, &d),
            Err(DashingFailure::Inconsistent { .. })
        ));
        let report = validate_dashing(&g, &d).unwrap();
        assert_eq!(report.even_quadrilaterals.len(), 1);
    }

    #[test]
    fn single_edge_is_stuck() {
        let g = cube(3);
        let mut d = DashingAssignment::new();
        d.set(Edge::new(0, 1, 2), true);
        match complete_dashing(&g, &d) {
            Err(DashingFailure::Stuck { unknown, .. }) => assert_eq!(unknown.len(), 11),
            other => panic!("expected Stuck, got {other:?}"),
        }
    }

    #[test]
    fn foreign_edges_rejected() {
        let g = cube(2);
        let mut d = DashingAssignment::new();
        d.set(Edge::new(0, 3, 0), false);
        assert!(matches!(
            complete_dashing(&g, &d),
            Err(DashingFailure::NotAnEdge(_))
        ));
        assert!(matches!(
            validate_dashing(&g, &d),
            Err(Error::NotAnEdge { .. })
        ));
    }

    #[test]
    fn cube_tree_completion() {
        let g = cube(3);
        let mut d = DashingAssignment::new();
        for e in bfs_tree(&g) {
            d.set(e, false);
        }
        let done = complete_dashing(&g, &d).unwrap();
        assert_eq!(done.len(), 12);
        let report = validate_dashing(&g, &done).unwrap();
        assert!(report.is_ok());
        assert_eq!(all_quadrilaterals(&g).len(), 6);
        for (e, _) in done.iter() {
            assert!(!validate_dashing(&g, &done.flipped(e)).unwrap().is_ok());
        }
    }

    #[test]
    fn validate_requires_complete() {
        let g = cube(2);
        assert_eq!(
            validate_dashing(&g, &DashingAssignment::new()),
            Err(Error::IncompleteAssignment { missing: 4 })
        );
    }

    #[test]
    fn dashing_file_round_trip() {
        let text = "# partial\n0 1 1 0\n2 0 0 1\n";
        let d = DashingAssignment::parse(text).unwrap();
        assert_eq!(d.get(&Edge::new(0, 2, 0)), Some(true));
        assert_eq!(d.to_string(), "0 1 1 0\n0 2 0 1\n");
        assert!(DashingAssignment::parse("0 1 1").is_err());
        assert!(DashingAssignment::parse("0 1 1 2").is_err());
    }

    #[test]
    fn cube_baobab_is_a_tree() {
        let g = cube(3);
        let b = CandidateBaobab {
            tree: bfs_tree(&g),
            cycles: vec![],
        };
        assert!(check_baobab(&g, &b).is_ok());
    }

    #[test]
    fn k44_baobab_with_four_color_cycle() {
        let g = k44();
        let good = CandidateBaobab {
            tree: bfs_tree(&g),
            cycles: vec![walk(&g, 0, &[0, 1, 2, 3])],
        };
        assert_eq!(check_baobab(&g, &good).violations, vec![]);

        let square = CandidateBaobab {
            tree: bfs_tree(&g),
            cycles: vec![walk(&g, 0, &[0, 1, 0, 1])],
        };
        assert_eq!(
            check_baobab(&g, &square).violations,
            vec![BaobabViolation::TooFewOddColors {
                cycle: 0,
                odd_colors: 0
            }]
        );

        let missing_cycle = CandidateBaobab {
            tree: bfs_tree(&g),
            cycles: vec![],
        };
        assert_eq!(
            check_baobab(&g, &missing_cycle).violations,
            vec![BaobabViolation::CycleCount {
                expected: 1,
                found: 0
            }]
        );
    }

    #[test]
    fn baobab_tree_defects() {
        let g = cube(2);
        let all: Vec<Edge> = g.edges().map(|(u, v, c)| Edge::new(u, v, c)).collect();
        let b = CandidateBaobab {
            tree: all.clone(),
            cycles: vec![],
        };
        let v = check_baobab(&g, &b).violations;
        assert!(v.contains(&BaobabViolation::TreeHasCycle));
        assert!(v.contains(&BaobabViolation::TreeEdgeCount {
            expected: 3,
            found: 4
        }));

        let open = CandidateBaobab {
            tree: all[..3].to_vec(),
            cycles: vec![vec![all[0]]],
        };
        let v = check_baobab(&cube(2), &open).violations;
        assert!(v.contains(&BaobabViolation::NotClosedWalk { cycle: 0 }));
    }
}
