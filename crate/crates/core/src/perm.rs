//! Permutation helpers: lexicographic enumeration and Lehmer ranking.

use itertools::Itertools;

pub fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> impl Iterator<Item = Vec<u8>> {
    (0..n as u8).permutations(n)
}

/// Lexicographic rank of a permutation of `0..n`.
pub fn rank(p: &[u8]) -> usize {
    let n = p.len();
    let mut used = 0u64;
    let mut r = 0;
    for (i, &v) in p.iter().enumerate() {
        let smaller_unused = (v as u32) - (used & ((1u64 << v) - 1)).count_ones();
        r = r * (n - i) + smaller_unused as usize;
        used |= 1 << v;
    }
    r
}

pub fn unrank(n: usize, r: usize) -> Vec<u8> {
    let mut out = vec![0u8; n];
    unrank_into(r, &mut out);
    out
}

/// [`unrank`] into a caller-provided buffer of length n ≤ 64.
pub fn unrank_into(mut r: usize, out: &mut [u8]) {
    let n = out.len();
    for i in (0..n).rev() {
        let base = n - i;
        out[i] = (r % base) as u8;
        r /= base;
    }
    let mut free = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    for d in out.iter_mut() {
        // the d-th smallest unused value
        let mut f = free;
        for _ in 0..*d {
            f &= f - 1;
        }
        let v = f.trailing_zeros() as u8;
        free &= !(1u64 << v);
        *d = v;
    }
}

pub fn inverse(p: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v as usize] = i as u8;
    }
    inv
}

pub fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_matches_enumeration_order() {
        for n in 0..=5 {
            for (i, p) in permutations(n).enumerate() {
                assert_eq!(rank(&p), i);
                assert_eq!(unrank(n, i), p);
            }
            assert_eq!(permutations(n).count(), factorial(n));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        for p in permutations(4) {
            let q = inverse(&p);
            assert_eq!(inverse(&q), p);
        }
    }
}
