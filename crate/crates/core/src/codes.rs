//! Binary linear codes over GF(2): parsing, doubly even validation, duals,
//! weight distributions, wedge weights, private-column normalization, the
//! maximal doubly even dimension, and column-permutation equivalence.
//!
//! Column `c` (0-based, leftmost first in the text form) of a length-`N`
//! word is stored at bit `N - 1 - c`, so integer order on the raw bits is
//! lexicographic order on the printed strings.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{BitAnd, BitXor};

use crate::error::{Error, Result};
use crate::gf2;

/// Longest supported code length (one machine word per codeword).
pub const MAX_LEN: usize = 32;
/// Largest dimension [`GeneratorMatrix::span`] will materialize.
pub const SPAN_LIMIT: usize = 20;
/// Largest dimension [`GeneratorMatrix::weight_distribution`] will enumerate.
pub const ENUMERATION_LIMIT: usize = 24;
/// Longest length accepted by [`column_permutation_equivalent`].
pub const PERMUTATION_SEARCH_LIMIT: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    bits: u32,
    len: u8,
}

impl Codeword {
    pub fn new(bits: u32, len: usize) -> Self {
        debug_assert!(len <= MAX_LEN);
        debug_assert!(len == 32 || bits >> len == 0, "bits exceed length");
        Codeword {
            bits,
            len: len as u8,
        }
    }

    pub fn zero(len: usize) -> Self {
        Codeword::new(0, len)
    }

    /// The standard basis vector with a single 1 in column `col`.
    pub fn unit(col: usize, len: usize) -> Self {
        Codeword::new(1 << (len - 1 - col), len)
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn len(self) -> usize {
        self.len as usize
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    pub fn bit(self, col: usize) -> bool {
        self.bits >> (self.len() - 1 - col) & 1 == 1
    }

    /// Inner product mod 2.
    pub fn dot(self, other: Codeword) -> bool {
        (self.bits & other.bits).count_ones() % 2 == 1
    }

    /// Columns holding a 1, ascending.
    pub fn support(self) -> Vec<usize> {
        (0..self.len()).filter(|&c| self.bit(c)).collect()
    }

    pub fn permute_columns(self, perm: &[usize]) -> Codeword {
        let len = self.len();
        let bits = (0..len)
            .filter(|&c| self.bit(c))
            .fold(0u32, |acc, c| acc | 1 << (len - 1 - perm[c]));
        Codeword::new(bits, len)
    }
}

impl BitXor for Codeword {
    type Output = Codeword;
    fn bitxor(self, rhs: Codeword) -> Codeword {
        debug_assert_eq!(self.len, rhs.len);
        Codeword::new(self.bits ^ rhs.bits, self.len())
    }
}

impl BitAnd for Codeword {
    type Output = Codeword;
    fn bitand(self, rhs: Codeword) -> Codeword {
        debug_assert_eq!(self.len, rhs.len);
        Codeword::new(self.bits & rhs.bits, self.len())
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in 0..self.len() {
            f.write_str(if self.bit(c) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Codeword({self})")
    }
}

/// `k` generator rows of common length `N = n + k`. Construction only
/// checks shape; use [`GeneratorMatrix::validate_doubly_even`] for the code
/// conditions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GeneratorMatrix {
    len: usize,
    rows: Vec<Codeword>,
}

impl GeneratorMatrix {
    pub fn new(len: usize, rows: Vec<u32>) -> Result<Self> {
        if len > MAX_LEN {
            return Err(Error::LengthTooLarge(len));
        }
        let rows = rows
            .into_iter()
            .enumerate()
            .map(|(i, bits)| {
                if len < 32 && bits >> len != 0 {
                    Err(Error::RaggedRows {
                        line: i + 1,
                        expected: len,
                        found: 32 - bits.leading_zeros() as usize,
                    })
                } else {
                    Ok(Codeword::new(bits, len))
                }
            })
            .collect::<Result<_>>()?;
        Ok(GeneratorMatrix { len, rows })
    }

    /// The zero code of length `len` (k = 0).
    pub fn empty(len: usize) -> Result<Self> {
        GeneratorMatrix::new(len, Vec::new())
    }

    /// Build from '0'/'1' strings, e.g. `["11110000", "00111100"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        parse_code(&rows.join("\n"))
    }

    /// Ambient length N.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    /// Unquotiented dimensions, N - k.
    pub fn n(&self) -> usize {
        self.len.saturating_sub(self.rows.len())
    }

    pub fn rows(&self) -> &[Codeword] {
        &self.rows
    }

    pub(crate) fn masks(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.bits()).collect()
    }

    /// All 2^k XOR combinations of the rows, sorted ascending.
    pub fn span(&self) -> Result<Vec<Codeword>> {
        if self.k() > SPAN_LIMIT {
            return Err(Error::KTooLarge {
                k: self.k(),
                limit: SPAN_LIMIT,
            });
        }
        let mut words = Vec::with_capacity(1 << self.k());
        gf2::for_each_combination(&self.masks(), 0, |w| words.push(w));
        words.sort_unstable();
        words.dedup();
        Ok(words
            .into_iter()
            .map(|w| Codeword::new(w, self.len))
            .collect())
    }

    pub fn rank(&self) -> usize {
        gf2::rank(&self.masks())
    }

    /// Same row space, compared through reduced echelon forms.
    pub fn same_span(&self, other: &GeneratorMatrix) -> bool {
        self.len == other.len && gf2::rref(&self.masks()).0 == gf2::rref(&other.masks()).0
    }

    /// Generator matrix of the dual code, `N - rank` rows.
    pub fn dual(&self) -> GeneratorMatrix {
        let rows = gf2::nullspace(&self.masks(), self.len);
        GeneratorMatrix {
            len: self.len,
            rows: rows
                .into_iter()
                .map(|w| Codeword::new(w, self.len))
                .collect(),
        }
    }

    /// `A_w` for `w = 0..=N`: how many span elements have weight `w`.
    pub fn weight_distribution(&self) -> Result<Vec<u64>> {
        if self.k() > ENUMERATION_LIMIT {
            return Err(Error::KTooLarge {
                k: self.k(),
                limit: ENUMERATION_LIMIT,
            });
        }
        Ok(gf2::tally_span(&self.masks(), self.len + 1, |w| {
            w.count_ones() as usize
        }))
    }

    /// Weight of the bitwise AND of the selected generators (0-based indices).
    pub fn wedge_weight(&self, indices: &[usize]) -> Result<u32> {
        if indices.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut acc = u32::MAX;
        for &i in indices {
            let row = self.rows.get(i).ok_or(Error::IndexOutOfRange {
                index: i,
                k: self.k(),
            })?;
            acc &= row.bits();
        }
        Ok(acc.count_ones())
    }

    pub fn wedge_profile(&self) -> Result<WedgeProfile> {
        if self.k() > SPAN_LIMIT {
            return Err(Error::KTooLarge {
                k: self.k(),
                limit: SPAN_LIMIT,
            });
        }
        let masks = self.masks();
        let mut weights = BTreeMap::new();
        for sel in 1u32..1 << self.k() {
            let subset: Vec<usize> = (0..self.k()).filter(|i| sel >> i & 1 == 1).collect();
            let and = subset.iter().fold(u32::MAX, |a, &i| a & masks[i]);
            weights.insert(subset, and.count_ones());
        }
        Ok(WedgeProfile { weights })
    }

    /// Doubly even check computed two ways: a scan of every span element
    /// (when k <= [`SPAN_LIMIT`]) and the generator criterion (each row
    /// weight = 0 mod 4, every pairwise AND weight even).
    pub fn validate_doubly_even(&self) -> ValidationReport {
        let masks = self.masks();
        let dependencies = gf2::dependencies(&masks);
        let generator_criterion = masks.iter().all(|r| r.count_ones() % 4 == 0)
            && masks
                .iter()
                .enumerate()
                .all(|(i, a)| masks[i + 1..].iter().all(|b| (a & b).count_ones() % 2 == 0));
        let (violations, span_scan) = if self.k() <= SPAN_LIMIT {
            let mut bad = Vec::new();
            gf2::for_each_combination(&masks, 0, |w| {
                if w.count_ones() % 4 != 0 {
                    bad.push(w);
                }
            });
            bad.sort_unstable();
            bad.dedup();
            let scan_ok = bad.is_empty();
            let words = bad
                .into_iter()
                .map(|w| Codeword::new(w, self.len))
                .collect();
            (words, Some(scan_ok))
        } else {
            (Vec::new(), None)
        };
        ValidationReport {
            violations,
            dependencies,
            generator_criterion,
            span_scan,
        }
    }

    /// Smallest private column of each generator, if every generator has one.
    pub fn private_columns(&self) -> Option<PrivateColumns> {
        let masks = self.masks();
        let cols = (0..masks.len())
            .map(|i| {
                let others = masks
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(0u32, |acc, (_, &m)| acc | m);
                let private = masks[i] & !others;
                (private != 0).then(|| self.len - 1 - (31 - private.leading_zeros() as usize))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(PrivateColumns(cols))
    }

    /// Row-operate until each generator owns a column where it carries the
    /// only 1. A generator without one picks its first set column `x` and is
    /// XORed into every other row that has `x` set. Rows that already own a
    /// private column keep it, so each step fixes one generator for good.
    pub fn normalize_private_columns(&self) -> Result<(GeneratorMatrix, PrivateColumns)> {
        if !gf2::dependencies(&self.masks()).is_empty() {
            return Err(Error::DependentRows);
        }
        let cap = 4u64.saturating_pow(self.k() as u32);
        let mut masks = self.masks();
        let mut steps = 0u64;
        loop {
            let stuck = (0..masks.len()).find(|&i| {
                let others = masks
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .fold(0u32, |acc, (_, &m)| acc | m);
                masks[i] & !others == 0
            });
            let Some(i) = stuck else { break };
            if steps >= cap {
                return Err(Error::NormalizationDiverged { cap });
            }
            steps += 1;
            let pivot_row = masks[i];
            let x = 31 - pivot_row.leading_zeros();
            for (j, row) in masks.iter_mut().enumerate() {
                if j != i && *row >> x & 1 == 1 {
                    *row ^= pivot_row;
                }
            }
        }
        let normalized = GeneratorMatrix::new(self.len, masks)?;
        let private = normalized
            .private_columns()
            .expect("every generator has a private column after normalization");
        Ok((normalized, private))
    }

    pub fn permute_columns(&self, perm: &[usize]) -> GeneratorMatrix {
        GeneratorMatrix {
            len: self.len,
            rows: self.rows.iter().map(|r| r.permute_columns(perm)).collect(),
        }
    }
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rows.is_empty() {
            return writeln!(f, "# length: {}", self.len);
        }
        for row in &self.rows {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Parse the code file format: one generator per line as a '0'/'1' string,
/// blank lines and '#' comment lines ignored. A comment of the form
/// `# length: N` declares the length, which is how a k = 0 code is written.
pub fn parse_code(text: &str) -> Result<GeneratorMatrix> {
    let mut declared: Option<(usize, usize)> = None;
    let mut rows: Vec<(usize, &str)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(len) = length_pragma(comment) {
                let len = len.map_err(|message| Error::Parse {
                    line: line_no,
                    message,
                })?;
                declared = Some((line_no, len));
            }
            continue;
        }
        if let Some(ch) = line.chars().find(|&c| c != '0' && c != '1') {
            return Err(Error::NonBinaryCharacter { line: line_no, ch });
        }
        rows.push((line_no, line));
    }
    let len = match (rows.first(), declared) {
        (Some(&(_, first)), _) => first.len(),
        (None, Some((_, len))) => len,
        (None, None) => return Err(Error::EmptyInput),
    };
    if let Some((line, expected)) = declared {
        if expected != len {
            return Err(Error::RaggedRows {
                line,
                expected: len,
                found: expected,
            });
        }
    }
    if len > MAX_LEN {
        return Err(Error::LengthTooLarge(len));
    }
    let mut masks = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        if row.len() != len {
            return Err(Error::RaggedRows {
                line,
                expected: len,
                found: row.len(),
            });
        }
        masks.push(
            row.bytes()
                .fold(0u32, |acc, b| acc << 1 | u32::from(b == b'1')),
        );
    }
    GeneratorMatrix::new(len, masks)
}

fn length_pragma(comment: &str) -> Option<std::result::Result<usize, String>> {
    let rest = comment.trim().strip_prefix("length")?;
    let value = rest.trim_start().strip_prefix([':', '='])?.trim();
    Some(
        value
            .parse::<usize>()
            .map_err(|e| format!("bad length {value:?}: {e}")),
    )
}

/// Outcome of the doubly even check. `is_ok` requires an empty violation
/// list, independent rows and a passing generator criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// Span elements whose weight is not a multiple of 4.
    pub violations: Vec<Codeword>,
    /// Row index sets that XOR to zero.
    pub dependencies: Vec<Vec<usize>>,
    pub generator_criterion: bool,
    /// Verdict of the full span scan; `None` when k was too large to scan.
    pub span_scan: Option<bool>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty() && self.dependencies.is_empty() && self.generator_criterion
    }

    pub fn methods_agree(&self) -> bool {
        self.span_scan
            .is_none_or(|scan| scan == self.generator_criterion)
    }
}

/// `‖C_i1 ∧ … ∧ C_iq‖` for every nonempty subset of generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeProfile {
    weights: BTreeMap<Vec<usize>, u32>,
}

impl WedgeProfile {
    pub fn get(&self, subset: &[usize]) -> Option<u32> {
        self.weights.get(subset).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[usize], u32)> {
        self.weights.iter().map(|(s, &w)| (s.as_slice(), w))
    }
}

/// One private column per generator (0-based column indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrivateColumns(pub Vec<usize>);

impl PrivateColumns {
    pub fn column(&self, generator: usize) -> usize {
        self.0[generator]
    }

    /// Bit mask of the chosen columns in a code of length `len`.
    pub fn mask(&self, len: usize) -> u32 {
        self.0.iter().fold(0, |m, &c| m | 1 << (len - 1 - c))
    }
}

/// Maximal dimension of a doubly even code of length `len`, with
/// `len = 8m + s`: `4m` for s in 0..=3, `4m+1` for s in {4,5}, `4m+2` for
/// s = 6 and `4m+3` for s = 7.
pub fn kmax(len: usize) -> Result<usize> {
    if len == 0 {
        return Err(Error::NonPositiveN);
    }
    let (m, s) = (len / 8, len % 8);
    Ok(4 * m
        + match s {
            0..=3 => 0,
            4 | 5 => 1,
            6 => 2,
            _ => 3,
        })
}

/// Whether some column permutation carries span(a) onto span(b).
///
/// Candidate images are pruned by a per-column signature (weight profile of
/// the span words through that column); the search then extends a partial
/// map one column at a time, requiring the projections of both spans onto
/// the mapped columns to agree as multisets.
pub fn column_permutation_equivalent(a: &GeneratorMatrix, b: &GeneratorMatrix) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let len = a.len();
    if len > PERMUTATION_SEARCH_LIMIT {
        return Err(Error::NTooLargeForExactSearch {
            len,
            limit: PERMUTATION_SEARCH_LIMIT,
        });
    }
    let span_a = a.span()?;
    let span_b = b.span()?;
    if span_a.len() != span_b.len() {
        return Ok(false);
    }
    let sig_a = column_signatures(&span_a, len);
    let sig_b = column_signatures(&span_b, len);
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return Ok(false);
    }
    let mut search = PermutationSearch {
        len,
        span_a: &span_a,
        span_b: &span_b,
        sig_a: &sig_a,
        sig_b: &sig_b,
        used: vec![false; len],
    };
    let keys = vec![0u32; span_a.len()];
    Ok(search.extend(0, &keys, &keys))
}

fn column_signatures(span: &[Codeword], len: usize) -> Vec<Vec<u32>> {
    (0..len)
        .map(|c| {
            let mut counts = vec![0u32; len + 1];
            for w in span.iter().filter(|w| w.bit(c)) {
                counts[w.weight() as usize] += 1;
            }
            counts
        })
        .collect()
}

struct PermutationSearch<'a> {
    len: usize,
    span_a: &'a [Codeword],
    span_b: &'a [Codeword],
    sig_a: &'a [Vec<u32>],
    sig_b: &'a [Vec<u32>],
    used: Vec<bool>,
}

impl PermutationSearch<'_> {
    fn extend(&mut self, col: usize, keys_a: &[u32], keys_b: &[u32]) -> bool {
        if col == self.len {
            return true;
        }
        let next_a: Vec<u32> = self
            .span_a
            .iter()
            .zip(keys_a)
            .map(|(w, &k)| k << 1 | u32::from(w.bit(col)))
            .collect();
        let mut sorted_a = next_a.clone();
        sorted_a.sort_unstable();
        for target in 0..self.len {
            if self.used[target] || self.sig_a[col] != self.sig_b[target] {
                continue;
            }
            let next_b: Vec<u32> = self
                .span_b
                .iter()
                .zip(keys_b)
                .map(|(w, &k)| k << 1 | u32::from(w.bit(target)))
                .collect();
            let mut sorted_b = next_b.clone();
            sorted_b.sort_unstable();
            if sorted_a != sorted_b {
                continue;
            }
            self.used[target] = true;
            if self.extend(col + 1, &next_a, &next_b) {
                return true;
            }
            self.used[target] = false;
        }
        false
    }
}

/// Set of span words, for span-equality checks in callers and tests.
pub fn span_set(code: &GeneratorMatrix) -> Result<HashSet<Codeword>> {
    Ok(code.span()?.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(rows: &[&str]) -> GeneratorMatrix {
        GeneratorMatrix::from_strs(rows).unwrap()
    }

    #[test]
    fn parse_two_rows() {
        let c = parse_code("11110000\n00111100").unwrap();
        assert_eq!((c.n(), c.k(), c.len()), (6, 2, 8));
        assert_eq!(c.rows()[0].to_string(), "11110000");
        assert_eq!(c.rows()[1].to_string(), "00111100");
    }

    #[test]
    fn parse_single_row() {
        let c = parse_code("1111").unwrap();
        assert_eq!((c.n(), c.k()), (3, 1));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            parse_code("11a1"),
            Err(Error::NonBinaryCharacter { line: 1, ch: 'a' })
        );
        assert!(matches!(
            parse_code("1111\n111"),
            Err(Error::RaggedRows { line: 2, .. })
        ));
        assert_eq!(parse_code(""), Err(Error::EmptyInput));
        assert_eq!(parse_code("# only a comment\n\n"), Err(Error::EmptyInput));
        assert!(matches!(
            parse_code(&"1".repeat(33)),
            Err(Error::LengthTooLarge(33))
        ));
    }

    #[test]
    fn parse_comments_and_length_pragma() {
        let c = parse_code("# e8 subcode\n\n11110000\n# trailing\n").unwrap();
        assert_eq!(c.k(), 1);
        let empty = parse_code("# length: 4\n").unwrap();
        assert_eq!((empty.len(), empty.k(), empty.n()), (4, 0, 4));
        assert_eq!(parse_code("#length=3").unwrap().len(), 3);
        assert!(matches!(
            parse_code("# length: 5\n1111"),
            Err(Error::RaggedRows { .. })
        ));
        assert!(matches!(
            parse_code("# length: x"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn display_round_trips() {
        for text in ["11110000\n00111100\n", "# length: 5\n"] {
            assert_eq!(parse_code(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn validate_examples() {
        assert!(code(&["1111"]).validate_doubly_even().is_ok());
        let bad = code(&["1100"]).validate_doubly_even();
        assert!(!bad.is_ok());
        assert_eq!(bad.violations, vec![Codeword::new(0b1100, 4)]);
        assert!(bad.methods_agree());
        let pair8 = code(&["11110000", "00111100", "01010101"]).validate_doubly_even();
        assert!(pair8.is_ok() && pair8.methods_agree());
    }

    #[test]
    fn validate_reports_dependence() {
        let r = code(&["11110000", "00001111", "11111111"]).validate_doubly_even();
        assert_eq!(r.dependencies, vec![vec![0, 1, 2]]);
        assert!(r.violations.is_empty());
        assert!(!r.is_ok());
    }

    #[test]
    fn validate_catches_odd_overlap() {
        // Weights 4 and 4 but overlap 1: the sum has weight 6.
        let r = code(&["11110000", "00011110"]).validate_doubly_even();
        assert!(!r.generator_criterion);
        assert_eq!(r.violations.len(), 1);
        assert!(r.methods_agree());
    }

    #[test]
    fn span_examples() {
        let s: Vec<String> = code(&["1111"])
            .span()
            .unwrap()
            .iter()
            .map(|w| w.to_string())
            .collect();
        assert_eq!(s, ["0000", "1111"]);
        assert_eq!(
            GeneratorMatrix::empty(5).unwrap().span().unwrap(),
            vec![Codeword::zero(5)]
        );
        let s = code(&["11110000", "00001111"]).span().unwrap();
        assert_eq!(s.len(), 4);
        assert!(s.contains(&Codeword::new(0xff, 8)));
        let big = GeneratorMatrix::new(32, (0..21).map(|i| 1 << i).collect()).unwrap();
        assert!(matches!(big.span(), Err(Error::KTooLarge { .. })));
    }

    #[test]
    fn dual_of_1111_is_even_weight_code() {
        let d = code(&["1111"]).dual();
        assert_eq!(d.k(), 3);
        let span = d.span().unwrap();
        assert_eq!(span.len(), 8);
        assert!(span.iter().all(|w| w.weight() % 2 == 0));
        assert_eq!(d.weight_distribution().unwrap(), vec![1, 0, 6, 0, 1]);
    }

    #[test]
    fn dual_of_zero_code_is_everything() {
        let d = GeneratorMatrix::empty(3).unwrap().dual();
        assert_eq!(d.span().unwrap().len(), 8);
    }

    #[test]
    fn e8_is_self_dual() {
        let e8 = code(&["11110000", "00111100", "00001111", "01010101"]);
        assert!(e8.validate_doubly_even().is_ok());
        assert!(e8.dual().same_span(&e8));
        assert_eq!(
            e8.weight_distribution().unwrap(),
            vec![1, 0, 0, 0, 14, 0, 0, 0, 1]
        );
    }

    #[test]
    fn weight_distribution_zero_code() {
        assert_eq!(
            GeneratorMatrix::empty(2)
                .unwrap()
                .weight_distribution()
                .unwrap(),
            vec![1, 0, 0]
        );
    }

    #[test]
    fn wedge_examples() {
        assert_eq!(code(&["1111"]).wedge_weight(&[0]), Ok(4));
        let c = code(&["11110000", "00111100"]);
        assert_eq!(c.wedge_weight(&[0, 1]), Ok(2));
        assert_eq!(code(&["11110000", "00001111"]).wedge_weight(&[0, 1]), Ok(0));
        assert_eq!(c.wedge_weight(&[]), Err(Error::EmptySubset));
        assert_eq!(
            c.wedge_weight(&[2]),
            Err(Error::IndexOutOfRange { index: 2, k: 2 })
        );
    }

    #[test]
    fn wedge_profile_is_monotone() {
        let e8 = code(&["11110000", "00111100", "00001111", "01010101"]);
        let profile = e8.wedge_profile().unwrap();
        for (subset, w) in profile.iter() {
            if subset.len() == 1 {
                assert_eq!(w, e8.rows()[subset[0]].weight());
            }
            for drop in 0..subset.len() {
                if subset.len() > 1 {
                    let mut smaller = subset.to_vec();
                    smaller.remove(drop);
                    assert!(w <= profile.get(&smaller).unwrap());
                }
            }
        }
    }

    #[test]
    fn normalization_examples() {
        let c = code(&["11110000", "00111100", "01010101"]);
        let (norm, private) = c.normalize_private_columns().unwrap();
        assert_eq!(norm, c);
        for (i, &col) in private.0.iter().enumerate() {
            for (j, row) in norm.rows().iter().enumerate() {
                assert_eq!(row.bit(col), i == j);
            }
        }

        let (norm, private) = code(&["11110000", "11111111"])
            .normalize_private_columns()
            .unwrap();
        assert_eq!(norm, code(&["11110000", "00001111"]));
        assert_eq!(private, PrivateColumns(vec![0, 4]));

        let (norm, private) = code(&["1111"]).normalize_private_columns().unwrap();
        assert_eq!(norm, code(&["1111"]));
        assert_eq!(private, PrivateColumns(vec![0]));
    }

    #[test]
    fn normalization_rejects_dependent_rows() {
        assert_eq!(
            code(&["1111", "1111"]).normalize_private_columns(),
            Err(Error::DependentRows)
        );
    }

    #[test]
    fn kmax_examples() {
        assert_eq!(kmax(4), Ok(1));
        assert_eq!(kmax(8), Ok(4));
        assert_eq!(kmax(7), Ok(3));
        assert_eq!(kmax(0), Err(Error::NonPositiveN));
        let expected = [0, 0, 0, 1, 1, 2, 3, 4, 4, 4, 4, 5, 5, 6, 7, 8];
        for (len, &k) in (1..=16).zip(&expected) {
            assert_eq!(kmax(len), Ok(k), "N = {len}");
        }
    }

    #[test]
    fn permutation_equivalence_examples() {
        let pair7_left = code(&["10000111", "10110100", "01111000"]);
        let pair7_right = code(&["00001111", "00111100", "11110000"]);
        assert_eq!(
            column_permutation_equivalent(&pair7_left, &pair7_right),
            Ok(true)
        );
        let pair8_left = code(&["00001111", "00111100", "01010101"]);
        let pair8_right = code(&["00001111", "00111100", "11110000"]);
        assert_eq!(
            column_permutation_equivalent(&pair8_left, &pair8_right),
            Ok(false)
        );
        assert_eq!(
            column_permutation_equivalent(&pair8_left, &pair8_left),
            Ok(true)
        );
    }

    #[test]
    fn permutation_equivalence_errors() {
        let long = GeneratorMatrix::empty(13).unwrap();
        assert!(matches!(
            column_permutation_equivalent(&long, &long),
            Err(Error::NTooLargeForExactSearch { .. })
        ));
        assert!(matches!(
            column_permutation_equivalent(&code(&["1111"]), &code(&["11110"])),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn permuted_columns_stay_equivalent() {
        let c = code(&["11110000", "00111100", "01010101"]);
        let perm = [3, 7, 0, 5, 1, 6, 2, 4];
        let p = c.permute_columns(&perm);
        assert!(!p.same_span(&c));
        assert_eq!(column_permutation_equivalent(&c, &p), Ok(true));
    }
}
