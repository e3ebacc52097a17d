//! Laplacian spectra of quotient hypercubes.
//!
//! The character `f_u(v) = (-1)^{u·v}` is well defined on cosets exactly
//! when `u` lies in the dual code, and then `L f_u = 2·wt(u)·f_u`. The
//! spectrum is therefore `{2w : A_w(C⊥)}`. Two further routes check it: the
//! (m, p) split of the dual words by private columns, and a dense
//! eigensolver.

use std::collections::BTreeMap;

use nalgebra::SymmetricEigen;
use serde::Serialize;

use crate::codes::{column_permutation_equivalent, Codeword, GeneratorMatrix, ENUMERATION_LIMIT};
use crate::error::{Error, Result};
use crate::gf2;
use crate::graph::QuotientGraph;

/// Vertex limit of the dense eigensolver.
pub const NUMERIC_LIMIT: usize = 4096;
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

/// Exact eigenvalue → multiplicity table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpectrumTable(BTreeMap<u32, u64>);

#[derive(Serialize)]
pub struct EigenvalueRow {
    pub lambda: u32,
    pub multiplicity: u64,
}

impl SpectrumTable {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u64)>) -> Self {
        let mut table = BTreeMap::new();
        for (lambda, mult) in pairs {
            if mult > 0 {
                *table.entry(lambda).or_insert(0) += mult;
            }
        }
        SpectrumTable(table)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.0.iter().map(|(&l, &m)| (l, m))
    }

    pub fn multiplicity(&self, lambda: u32) -> u64 {
        self.0.get(&lambda).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Σ multiplicities, the vertex count.
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// Σ λ·multiplicity, the trace of L.
    pub fn trace(&self) -> u64 {
        self.iter().map(|(l, m)| u64::from(l) * m).sum()
    }

    pub fn max_eigenvalue(&self) -> Option<u32> {
        self.0.keys().next_back().copied()
    }

    /// Check the table against a connected `degree`-regular graph on
    /// `vertices` vertices.
    pub fn check_invariants(&self, vertices: u64, degree: u32) -> Result<()> {
        let fail = |msg: String| Err(Error::InvalidSpectrum(msg));
        if self.total() != vertices {
            return fail(format!(
                "multiplicities sum to {}, expected {vertices}",
                self.total()
            ));
        }
        if self.trace() != u64::from(degree) * vertices {
            return fail(format!("trace {} != {degree}·{vertices}", self.trace()));
        }
        if self.multiplicity(0) != 1 {
            return fail(format!(
                "eigenvalue 0 has multiplicity {}",
                self.multiplicity(0)
            ));
        }
        if self.iter().any(|(l, _)| l % 2 == 1) {
            return fail("odd eigenvalue".into());
        }
        if self.max_eigenvalue().unwrap_or(0) > 2 * degree {
            return fail(format!("eigenvalue above 2·{degree}"));
        }
        Ok(())
    }

    pub fn rows(&self) -> Vec<EigenvalueRow> {
        self.iter()
            .map(|(lambda, multiplicity)| EigenvalueRow {
                lambda,
                multiplicity,
            })
            .collect()
    }

    /// `lambda,multiplicity` rows under a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda,multiplicity\n");
        for (l, m) in self.iter() {
            out.push_str(&format!("{l},{m}\n"));
        }
        out
    }
}

/// `M(m, p)`: dual words with `p` ones on the private columns and `m` ones
/// elsewhere; they carry eigenvalue `2(m + p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityTable(BTreeMap<(u32, u32), u64>);

impl MultiplicityTable {
    pub fn get(&self, m: u32, p: u32) -> u64 {
        self.0.get(&(m, p)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// Sum along each anti-diagonal `m + p = w`, giving eigenvalue `2w`.
    pub fn anti_diagonal(&self) -> SpectrumTable {
        SpectrumTable::from_pairs(self.iter().map(|((m, p), c)| (2 * (m + p), c)))
    }
}

fn check_n(code: &GeneratorMatrix) -> Result<()> {
    if code.n() > ENUMERATION_LIMIT {
        return Err(Error::NTooLarge {
            n: code.n(),
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Eigenvalues `2·wt(u)` over the dual code, multiplicities from its weight
/// distribution.
pub fn spectrum_closed_form(code: &GeneratorMatrix) -> Result<SpectrumTable> {
    check_n(code)?;
    let dist = code.dual().weight_distribution()?;
    Ok(SpectrumTable::from_pairs(
        dist.into_iter()
            .enumerate()
            .map(|(w, count)| (2 * w as u32, count)),
    ))
}

pub fn multiplicity_table(code: &GeneratorMatrix) -> Result<MultiplicityTable> {
    check_n(code)?;
    let (normalized, private) = code.normalize_private_columns()?;
    let len = code.len();
    let k = code.k();
    let private_mask = private.mask(len);
    let dual = normalized.dual();
    let stride = k + 1;
    let counts = gf2::tally_span(&dual.masks(), (len + 1) * stride, |u| {
        let p = (u & private_mask).count_ones() as usize;
        let m = u.count_ones() as usize - p;
        m * stride + p
    });
    Ok(MultiplicityTable(
        counts
            .into_iter()
            .enumerate()
            .filter(|&(_, c)| c > 0)
            .map(|(i, c)| (((i / stride) as u32, (i % stride) as u32), c))
            .collect(),
    ))
}

/// Dense symmetric eigensolve of L, each eigenvalue snapped to the nearest
/// even integer (failing if it is farther than `tol`).
pub fn spectrum_numeric(g: &QuotientGraph, tol: f64) -> Result<SpectrumTable> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidTolerance(tol));
    }
    if g.vertex_count() > NUMERIC_LIMIT {
        return Err(Error::TooLarge {
            vertices: g.vertex_count(),
            limit: NUMERIC_LIMIT,
        });
    }
    let eigen = SymmetricEigen::new(g.laplacian().to_dmatrix());
    let mut tally = BTreeMap::new();
    for &value in eigen.eigenvalues.iter() {
        let half = (value / 2.0).round();
        if (value - 2.0 * half).abs() > tol || half < 0.0 {
            return Err(Error::ResidualTooLarge { value, tol });
        }
        *tally.entry(2 * half as u32).or_insert(0u64) += 1;
    }
    Ok(SpectrumTable(tally))
}

/// `max_v |(L f_u)(v) - 2·wt(u)·f_u(v)|` for the character of a dual word.
pub fn eigenvector_residual(g: &QuotientGraph, u: Codeword) -> Result<f64> {
    if g.code().rows().iter().any(|c| c.dot(u)) {
        return Err(Error::NotInDual(u.to_string()));
    }
    let f: Vec<f64> = (0..g.vertex_count())
        .map(|v| if g.rep(v).dot(u) { -1.0 } else { 1.0 })
        .collect();
    let degree = g.len() as f64;
    let lambda = 2.0 * f64::from(u.weight());
    Ok((0..g.vertex_count())
        .map(|v| {
            let lf = degree * f[v] - g.neighbors(v).map(|w| f[w]).sum::<f64>();
            (lf - lambda * f[v]).abs()
        })
        .fold(0.0, f64::max))
}

/// Adjacency eigenvalues `N - λ` of an N-regular graph.
pub fn adjacency_spectrum(s: &SpectrumTable, len: usize) -> BTreeMap<i64, u64> {
    s.iter()
        .map(|(l, m)| (len as i64 - i64::from(l), m))
        .collect()
}

/// Eigenvalue of largest multiplicity; ties go to the smaller eigenvalue.
pub fn spectral_mode(s: &SpectrumTable) -> Option<u32> {
    s.iter()
        .max_by(|(la, ma), (lb, mb)| ma.cmp(mb).then(lb.cmp(la)))
        .map(|(l, _)| l)
}

pub fn cospectral(a: &GeneratorMatrix, b: &GeneratorMatrix) -> Result<bool> {
    Ok(spectrum_closed_form(a)? == spectrum_closed_form(b)?)
}

/// Codes sharing one spectrum, split further into column-permutation
/// classes. More than one class marks a meta-equivalence witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectralGroup {
    pub spectrum: SpectrumTable,
    pub members: Vec<usize>,
    pub permutation_classes: Vec<Vec<usize>>,
}

impl SpectralGroup {
    pub fn is_meta_equivalent(&self) -> bool {
        self.permutation_classes.len() > 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetaEquivalenceReport {
    /// Groups in order of first appearance in the input.
    pub groups: Vec<SpectralGroup>,
}

impl MetaEquivalenceReport {
    pub fn witnesses(&self) -> impl Iterator<Item = &SpectralGroup> {
        self.groups.iter().filter(|g| g.is_meta_equivalent())
    }
}

pub fn meta_equivalence_scan(codes: &[GeneratorMatrix]) -> Result<MetaEquivalenceReport> {
    if let Some(first) = codes.first() {
        if let Some(other) = codes.iter().find(|c| c.len() != first.len()) {
            return Err(Error::LengthMismatch {
                left: first.len(),
                right: other.len(),
            });
        }
    }
    let mut groups: Vec<SpectralGroup> = Vec::new();
    for (i, code) in codes.iter().enumerate() {
        let spectrum = spectrum_closed_form(code)?;
        match groups.iter_mut().find(|g| g.spectrum == spectrum) {
            Some(group) => group.members.push(i),
            None => groups.push(SpectralGroup {
                spectrum,
                members: vec![i],
                permutation_classes: Vec::new(),
            }),
        }
    }
    for group in &mut groups {
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &i in &group.members {
            let mut placed = false;
            for class in &mut classes {
                if column_permutation_equivalent(&codes[class[0]], &codes[i])? {
                    class.push(i);
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(vec![i]);
            }
        }
        group.permutation_classes = classes;
    }
    Ok(MetaEquivalenceReport { groups })
}
