//! Bit-level GF(2) helpers shared by the code and graph modules. Words are
//! `u32` masks; a word's "leading" bit is its most significant set bit.

use rayon::prelude::*;

/// Reduced row echelon form. Rows come back sorted by descending pivot, each
/// pivot being the leading bit of its row and absent from every other row.
pub(crate) fn rref(rows: &[u32]) -> (Vec<u32>, Vec<u32>) {
    let mut rows = rows.to_vec();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for bit in (0..32).rev() {
        let mask = 1u32 << bit;
        let Some(found) = (rank..rows.len()).find(|&i| rows[i] & mask != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let pivot_row = rows[rank];
        for (j, row) in rows.iter_mut().enumerate() {
            if j != rank && *row & mask != 0 {
                *row ^= pivot_row;
            }
        }
        pivots.push(bit);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

pub(crate) fn rank(rows: &[u32]) -> usize {
    rref(rows).0.len()
}

/// Reduce `word` modulo the row space of an RREF basis; the result has every
/// pivot bit cleared and is the smallest element of `word + span`.
pub(crate) fn reduce(word: u32, basis: &[u32], pivots: &[u32]) -> u32 {
    basis.iter().zip(pivots).fold(
        word,
        |w, (&row, &p)| if w >> p & 1 == 1 { w ^ row } else { w },
    )
}

/// Index sets of rows that XOR to zero, one per dependent row found while
/// eliminating in input order.
pub(crate) fn dependencies(rows: &[u32]) -> Vec<Vec<usize>> {
    let k = rows.len();
    let mut basis: Vec<(u32, Vec<bool>)> = Vec::new();
    let mut deps = Vec::new();
    for (i, &row) in rows.iter().enumerate() {
        let mut word = row;
        let mut combo = vec![false; k];
        combo[i] = true;
        for (b, bcombo) in &basis {
            let lead = 31 - b.leading_zeros();
            if word >> lead & 1 == 1 {
                word ^= b;
                combo.iter_mut().zip(bcombo).for_each(|(c, &d)| *c ^= d);
            }
        }
        if word == 0 {
            deps.push((0..k).filter(|&j| combo[j]).collect());
        } else {
            basis.push((word, combo));
            basis.sort_by_key(|(w, _)| w.leading_zeros());
        }
    }
    deps
}

/// Basis of `{u : u.c = 0 for all c in span(rows)}` inside `len`-bit words.
pub(crate) fn nullspace(rows: &[u32], len: usize) -> Vec<u32> {
    let (basis, pivots) = rref(rows);
    let pivot_mask = pivots.iter().fold(0u32, |m, &p| m | 1 << p);
    (0..len as u32)
        .rev()
        .filter(|&f| pivot_mask >> f & 1 == 0)
        .map(|f| {
            basis
                .iter()
                .zip(&pivots)
                .filter(|(&row, _)| row >> f & 1 == 1)
                .fold(1u32 << f, |u, (_, &p)| u | 1 << p)
        })
        .collect()
}

/// Walk all 2^k XOR combinations of `gens` (Gray-code order), starting from
/// `start`.
pub(crate) fn for_each_combination(gens: &[u32], start: u32, mut f: impl FnMut(u32)) {
    let mut word = start;
    f(word);
    for i in 1u64..(1u64 << gens.len()) {
        word ^= gens[i.trailing_zeros() as usize];
        f(word);
    }
}

const PARALLEL_THRESHOLD: usize = 14;
const PREFIX_BITS: usize = 6;

/// Tally `bin(word)` over every element of span(gens) into `bins` counters.
/// Large spans are split over the top generators and summed, so the result
/// does not depend on the thread schedule.
pub(crate) fn tally_span<F>(gens: &[u32], bins: usize, bin: F) -> Vec<u64>
where
    F: Fn(u32) -> usize + Sync,
{
    if gens.len() < PARALLEL_THRESHOLD {
        let mut counts = vec![0u64; bins];
        for_each_combination(gens, 0, |w| counts[bin(w)] += 1);
        return counts;
    }
    let (high, low) = gens.split_at(PREFIX_BITS);
    (0u32..1 << PREFIX_BITS)
        .into_par_iter()
        .map(|sel| {
            let start = high
                .iter()
                .enumerate()
                .filter(|(i, _)| sel >> i & 1 == 1)
                .fold(0, |acc, (_, &g)| acc ^ g);
            let mut counts = vec![0u64; bins];
            for_each_combination(low, start, |w| counts[bin(w)] += 1);
            counts
        })
        .reduce(
            || vec![0u64; bins],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}
