//! Grid states (permutations) and cube states (pairs of permutations).

use crate::error::{Error, Result};
use crate::lattice::{Axis, LatticePoint3, Plane};
use crate::perm::{factorial, permutations, rank, unrank};

/// `rows[col]` is the row of the state point in column `col`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridState {
    pub rows: Vec<u8>,
}

impl GridState {
    pub fn new(rows: Vec<u8>) -> Self {
        GridState { rows }
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    /// Points in doubled coordinates.
    pub fn doubled(&self) -> Vec<[i64; 2]> {
        self.rows.iter().enumerate().map(|(c, &r)| [2 * c as i64, 2 * r as i64]).collect()
    }

    pub fn index(&self) -> usize {
        rank(&self.rows)
    }

    pub fn from_index(n: usize, i: usize) -> Self {
        GridState::new(unrank(n, i))
    }
}

pub fn grid_states(n: usize) -> impl Iterator<Item = GridState> {
    permutations(n).map(GridState::new)
}

/// Point `i` of the state is `(i, ys[i], zs[i])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CubeState {
    pub ys: Vec<u8>,
    pub zs: Vec<u8>,
}

impl CubeState {
    pub fn new(ys: Vec<u8>, zs: Vec<u8>) -> Result<Self> {
        let n = ys.len();
        let ok = |v: &[u8]| {
            let mut seen = vec![false; n];
            v.len() == n && v.iter().all(|&c| (c as usize) < n && !std::mem::replace(&mut seen[c as usize], true))
        };
        if !ok(&ys) || !ok(&zs) {
            return Err(Error::InvalidInput("cube state coordinates must be permutations".into()));
        }
        Ok(CubeState { ys, zs })
    }

    /// From n lattice points with pairwise distinct coordinates along every axis.
    pub fn from_points(points: &[[usize; 3]]) -> Result<Self> {
        let n = points.len();
        let mut ys = vec![u8::MAX; n];
        let mut zs = vec![u8::MAX; n];
        for p in points {
            if p.iter().any(|&c| c >= n) || ys[p[0]] != u8::MAX {
                return Err(Error::InvalidInput(format!("bad cube state point {p:?}")));
            }
            ys[p[0]] = p[1] as u8;
            zs[p[0]] = p[2] as u8;
        }
        CubeState::new(ys, zs)
    }

    pub fn n(&self) -> usize {
        self.ys.len()
    }

    pub fn points(&self) -> Vec<LatticePoint3> {
        (0..self.n()).map(|i| LatticePoint3::new(i, self.ys[i] as usize, self.zs[i] as usize)).collect()
    }

    pub fn coords(&self) -> Vec<[usize; 3]> {
        self.points().into_iter().map(|p| p.coords()).collect()
    }

    pub fn doubled(&self) -> Vec<[i64; 3]> {
        self.points().into_iter().map(|p| p.doubled()).collect()
    }

    pub fn project(&self, plane: Plane) -> GridState {
        let mut rows = vec![0u8; self.n()];
        for p in self.coords() {
            let [col, row] = plane.project(p);
            rows[col] = row as u8;
        }
        GridState::new(rows)
    }

    /// Exchange the `axis` coordinate of the points with x-coordinates `i` and `j`.
    pub fn swapped(&self, axis: Axis, i: usize, j: usize) -> CubeState {
        let mut t = self.clone();
        match axis {
            Axis::X => {
                t.ys.swap(i, j);
                t.zs.swap(i, j);
            }
            Axis::Y => t.ys.swap(i, j),
            Axis::Z => t.zs.swap(i, j),
        }
        t
    }

    pub fn index(&self) -> usize {
        rank(&self.ys) * factorial(self.n()) + rank(&self.zs)
    }

    pub fn from_index(n: usize, i: usize) -> Self {
        let f = factorial(n);
        CubeState { ys: unrank(n, i / f), zs: unrank(n, i % f) }
    }
}

pub fn cube_states(n: usize) -> impl Iterator<Item = CubeState> {
    let f = factorial(n);
    (0..f * f).map(move |i| CubeState::from_index(n, i))
}

/// ψ: the cube state whose projections to `axis`'s two planes are `first` and `second`.
/// The planes share `axis`, so the two grid states splice along that coordinate.
pub fn psi(axis: Axis, first: &GridState, second: &GridState) -> CubeState {
    let (p1, p2) = axis.planes();
    let n = first.n();
    let shared = axis.index();
    let (a1, b1) = p1.axes();
    let (a2, b2) = p2.axes();
    // map the shared coordinate value to the other coordinate in each plane
    let other_of = |plane_a: Axis, plane_b: Axis, s: &GridState| -> (Axis, Vec<usize>) {
        let mut m = vec![0usize; n];
        for (col, &row) in s.rows.iter().enumerate() {
            let (col, row) = (col, row as usize);
            if plane_a == axis {
                m[col] = row;
            } else {
                debug_assert_eq!(plane_b, axis);
                m[row] = col;
            }
        }
        (if plane_a == axis { plane_b } else { plane_a }, m)
    };
    let (o1, m1) = other_of(a1, b1, first);
    let (o2, m2) = other_of(a2, b2, second);
    let points: Vec<[usize; 3]> = (0..n)
        .map(|v| {
            let mut p = [0; 3];
            p[shared] = v;
            p[o1.index()] = m1[v];
            p[o2.index()] = m2[v];
            p
        })
        .collect();
    CubeState::from_points(&points).expect("spliced states form a cube state")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_roundtrip() {
        for axis in Axis::ALL {
            let (p1, p2) = axis.planes();
            for s in cube_states(3) {
                assert_eq!(psi(axis, &s.project(p1), &s.project(p2)), s);
            }
        }
    }

    #[test]
    fn psi_injective_n2() {
        let mut seen = std::collections::HashSet::new();
        for a in grid_states(2) {
            for b in grid_states(2) {
                assert!(seen.insert(psi(Axis::Y, &a, &b)));
            }
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn index_roundtrip() {
        for (i, s) in cube_states(3).enumerate() {
            assert_eq!(s.index(), i);
        }
        assert_eq!(cube_states(3).count(), 36);
    }
}
