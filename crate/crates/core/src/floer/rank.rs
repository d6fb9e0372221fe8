//! Rank over GF(2).

use std::collections::HashMap;

/// A GF(2) matrix stored as sorted column-index lists per row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseF2Matrix {
    pub ncols: usize,
    pub rows: Vec<Vec<u32>>,
}

impl SparseF2Matrix {
    pub fn new(ncols: usize) -> Self {
        SparseF2Matrix { ncols, rows: Vec::new() }
    }

    /// Push a row given by its nonzero columns (duplicates cancel).
    pub fn push_row(&mut self, mut cols: Vec<u32>) {
        cols.sort_unstable();
        let mut out: Vec<u32> = Vec::with_capacity(cols.len());
        for c in cols {
            if out.last() == Some(&c) {
                out.pop();
            } else {
                out.push(c);
            }
        }
        self.rows.push(out);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn dense_rows(&self) -> Vec<Vec<u64>> {
        let words = self.ncols.div_ceil(64);
        self.rows
            .iter()
            .map(|r| {
                let mut v = vec![0u64; words];
                for &c in r {
                    v[c as usize / 64] ^= 1 << (c % 64);
                }
                v
            })
            .collect()
    }
}

const DENSE_LIMIT: usize = 2048;

/// Rank over GF(2): packed-bit row elimination for small matrices, sparse row
/// elimination (lowest-column pivots, light rows first) for large ones.
pub fn f2_rank(m: &SparseF2Matrix) -> usize {
    if m.nrows().min(m.ncols) <= DENSE_LIMIT {
        f2_rank_dense(m.dense_rows())
    } else {
        f2_rank_sparse(m)
    }
}

/// Gaussian elimination on packed rows.
pub fn f2_rank_dense(mut rows: Vec<Vec<u64>>) -> usize {
    let mut rank = 0;
    let words = rows.first().map_or(0, Vec::len);
    for w in 0..words {
        for bit in 0..64 {
            let mask = 1u64 << bit;
            let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & mask != 0) else { continue };
            rows.swap(rank, p);
            let pivot = std::mem::take(&mut rows[rank]);
            for r in rows.iter_mut().skip(rank + 1) {
                if r[w] & mask != 0 {
                    for (a, b) in r[w..].iter_mut().zip(&pivot[w..]) {
                        *a ^= b;
                    }
                }
            }
            rows[rank] = pivot;
            rank += 1;
        }
    }
    rank
}

pub fn f2_rank_sparse(m: &SparseF2Matrix) -> usize {
    let mut order: Vec<usize> = (0..m.nrows()).collect();
    order.sort_by_key(|&r| m.rows[r].len());
    let mut pivots: HashMap<u32, Vec<u32>> = HashMap::new();
    let mut scratch = Vec::new();
    for r in order {
        let mut row = m.rows[r].clone();
        while let Some(&lead) = row.first() {
            match pivots.get(&lead) {
                Some(p) => {
                    xor_sorted(&row, p, &mut scratch);
                    std::mem::swap(&mut row, &mut scratch);
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

fn xor_sorted(a: &[u32], b: &[u32], out: &mut Vec<u32>) {
    out.clear();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
}
