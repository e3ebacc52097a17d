//! Exact spanning-tree counts and baobab multiplicity bounds.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::codes::{GeneratorMatrix, SPAN_LIMIT};
use crate::error::{Error, Result};
use crate::graph::QuotientGraph;
use crate::spectrum::SpectrumTable;

pub type BigCount = BigUint;

/// Vertex limit of [`tree_count_determinant`].
pub const DETERMINANT_LIMIT: usize = 512;

/// Matrix-Tree theorem: product of the nonzero eigenvalues over the vertex
/// count.
pub fn tree_count_from_spectrum(s: &SpectrumTable) -> Result<BigCount> {
    if s.multiplicity(0) != 1 {
        return Err(Error::InvalidSpectrum(format!(
            "eigenvalue 0 has multiplicity {}",
            s.multiplicity(0)
        )));
    }
    let product = s
        .iter()
        .filter(|&(l, _)| l > 0)
        .fold(BigUint::one(), |acc, (l, m)| {
            acc * BigUint::from(l).pow(m as u32)
        });
    let (trees, rem) = product.div_rem(&BigUint::from(s.total()));
    if !rem.is_zero() {
        return Err(Error::InexactDivision);
    }
    Ok(trees)
}

/// Spanning trees of the n-cube: `2^-n · Π_{j=1..n} (2j)^C(n,j)`.
pub fn tree_count_hypercube(n: usize) -> Result<BigCount> {
    if !(1..=20).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 1,
            max: 20,
        });
    }
    let mut binom = 1u64;
    let mut product = BigUint::one();
    for j in 1..=n as u64 {
        binom = binom * (n as u64 + 1 - j) / j;
        product *= BigUint::from(2 * j).pow(binom as u32);
    }
    Ok(product >> n)
}

/// Kirchhoff: determinant of L with row and column 0 removed.
pub fn tree_count_determinant(g: &QuotientGraph) -> Result<BigCount> {
    let dim = g.vertex_count();
    if dim > DETERMINANT_LIMIT {
        return Err(Error::TooLarge {
            vertices: dim,
            limit: DETERMINANT_LIMIT,
        });
    }
    let l = g.laplacian();
    let minor: Vec<Vec<BigInt>> = (1..dim)
        .map(|i| (1..dim).map(|j| BigInt::from(l.get(i, j))).collect())
        .collect();
    let det = bareiss_determinant(minor);
    det.to_biguint()
        .ok_or_else(|| Error::InvalidSpectrum(format!("negative Kirchhoff minor {det}")))
}

/// Fraction-free Gaussian elimination; every division is exact. The empty
/// matrix has determinant 1.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, swap);
            sign = -sign;
        }
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let mut v = pivot * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v -= &factor * &pivot_row[j];
                }
                row[j] = v / &prev;
            }
            row[k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a.last().map_or(BigInt::one(), |row| row[n - 1].clone());
    if sign.is_negative() {
        -det
    } else {
        det
    }
}

/// Baobab multiplicity bounds, kept as exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaobabBounds {
    pub trees: BigCount,
    /// `T · 2^((n-1)k)`.
    pub naive: BigCount,
    pub lower: BigRational,
    pub upper: BigRational,
    /// Generator subsets whose AND is zero and so were left out of the
    /// upper-bound product.
    pub zero_wedge_terms_skipped: Vec<Vec<usize>>,
}

impl BaobabBounds {
    pub fn lower_floor(&self) -> BigInt {
        self.lower.floor().to_integer()
    }

    pub fn upper_integral(&self) -> Option<BigInt> {
        self.upper.is_integer().then(|| self.upper.to_integer())
    }

    /// `naive / upper`, the alternating wedge-weight product.
    pub fn wedge_product(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.naive.clone())) / &self.upper
    }

    pub fn to_json(&self) -> Value {
        let ratio =
            |r: &BigRational| json!({"num": r.numer().to_string(), "den": r.denom().to_string()});
        json!({
            "trees": self.trees.to_string(),
            "naive": self.naive.to_string(),
            "lower": ratio(&self.lower),
            "upper": ratio(&self.upper),
            "skipped_wedges": self.zero_wedge_terms_skipped,
        })
    }
}

/// `lower = naive / ⌈(2^n + k - 1)/k⌉^k` (just `naive` when k = 0) and
/// `upper = naive / Π_S ‖∧_{i∈S} C_i‖^((-1)^(|S|-1))` over nonempty subsets
/// S, skipping zero wedges.
pub fn baobab_bounds(code: &GeneratorMatrix, s: &SpectrumTable) -> Result<BaobabBounds> {
    let (n, k) = (code.n(), code.k());
    if k > SPAN_LIMIT {
        return Err(Error::KTooLarge {
            k,
            limit: SPAN_LIMIT,
        });
    }
    let vertices = BigUint::one() << n;
    if BigUint::from(s.total()) != vertices {
        return Err(Error::InvalidSpectrum(format!(
            "spectrum has {} eigenvalues, code has 2^{n} vertices",
            s.total()
        )));
    }
    let trees = tree_count_from_spectrum(s)?;
    let naive = &trees << (n.saturating_sub(1) * k);
    let naive_q = BigRational::from_integer(BigInt::from(naive.clone()));

    let lower = if k == 0 {
        naive_q.clone()
    } else {
        let cycles = (&vertices + BigUint::from(k - 1)).div_ceil(&BigUint::from(k));
        naive_q.clone() / BigRational::from_integer(BigInt::from(cycles.pow(k as u32)))
    };

    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut skipped = Vec::new();
    let masks: Vec<u32> = code.rows().iter().map(|r| r.bits()).collect();
    for sel in 1u32..1 << k {
        let subset: Vec<usize> = (0..k).filter(|i| sel >> i & 1 == 1).collect();
        let weight = subset
            .iter()
            .fold(u32::MAX, |a, &i| a & masks[i])
            .count_ones();
        if weight == 0 {
            skipped.push(subset);
        } else if subset.len() % 2 == 1 {
            den *= weight;
        } else {
            num *= weight;
        }
    }
    let upper = naive_q * BigRational::new(num, den);
    Ok(BaobabBounds {
        trees,
        naive,
        lower,
        upper,
        zero_wedge_terms_skipped: skipped,
    })
}
