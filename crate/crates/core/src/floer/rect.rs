//! Empty rectangles of grid states and empty cylinders of cube states.

use crate::cubediag::{CubeDiagram, MarkingKind};
use crate::griddiag::OrientedGridDiagram;
use crate::lattice::{Axis, Plane};

use super::state::{CubeState, GridState};

/// A rectangle on the n×n torus: columns `left .. left+width` and rows
/// `bottom .. bottom+height`, taken mod n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusRect {
    pub n: usize,
    pub left: usize,
    pub width: usize,
    pub bottom: usize,
    pub height: usize,
}

impl TorusRect {
    /// Rectangle with lower-left corner `p` and upper-right corner `q`.
    pub fn spanning(n: usize, p: [usize; 2], q: [usize; 2]) -> Self {
        TorusRect { n, left: p[0], width: (q[0] + n - p[0]) % n, bottom: p[1], height: (q[1] + n - p[1]) % n }
    }

    pub fn contains_cell(&self, col: usize, row: usize) -> bool {
        (col + self.n - self.left) % self.n < self.width && (row + self.n - self.bottom) % self.n < self.height
    }

    /// Lattice point strictly inside.
    pub fn contains_point(&self, x: usize, y: usize) -> bool {
        let dx = (x + self.n - self.left) % self.n;
        let dy = (y + self.n - self.bottom) % self.n;
        0 < dx && dx < self.width && 0 < dy && dy < self.height
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RectangleTerm {
    pub target: GridState,
    pub rect: TorusRect,
    /// Rows of the O markings inside.
    pub o_rows: Vec<usize>,
    /// Rows of the X markings inside.
    pub x_rows: Vec<usize>,
}

/// Every empty rectangle out of `s`, unrestricted by markings.
pub fn rectangles_from(g: &OrientedGridDiagram, s: &GridState) -> Vec<RectangleTerm> {
    let n = g.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (p, q) = ([i, s.rows[i] as usize], [j, s.rows[j] as usize]);
            let rect = TorusRect::spanning(n, p, q);
            if (0..n).any(|k| rect.contains_point(k, s.rows[k] as usize)) {
                continue;
            }
            let mut t = s.clone();
            t.rows.swap(i, j);
            let inside = |pos: &[usize]| (0..n).filter(|&r| rect.contains_cell(pos[r], r)).collect::<Vec<_>>();
            out.push(RectangleTerm { target: t, rect, o_rows: inside(g.opos()), x_rows: inside(g.xpos()) });
        }
    }
    out
}

pub fn empty_rectangles(g: &OrientedGridDiagram, s: &GridState, t: &GridState) -> Vec<RectangleTerm> {
    rectangles_from(g, s).into_iter().filter(|r| &r.target == t).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderTerm {
    pub target: CubeState,
    pub plane: Plane,
    /// Footprint of the cylinder in `plane` coordinates; full height along the normal.
    pub base: TorusRect,
    /// Traversal indices of the markings inside, per kind (X, Y, Z).
    pub census: [Vec<usize>; 3],
}

impl CylinderTerm {
    pub fn is_marking_free(&self) -> bool {
        self.census.iter().all(Vec::is_empty)
    }

    pub fn count(&self, kind: MarkingKind) -> usize {
        self.census[kind.index()].len()
    }
}

/// Empty `plane`-cylinders out of `s` that keep the other plane of `axis` fixed.
pub fn cylinders_from(c: &CubeDiagram, s: &CubeState, plane: Plane, axis: Axis) -> Vec<CylinderTerm> {
    let (a, b) = plane.axes();
    assert!(a == axis || b == axis, "plane {plane} does not contain axis {axis}");
    let swap_axis = if a == axis { b } else { a };
    let n = c.n();
    let pts: Vec<[usize; 2]> = s.coords().into_iter().map(|p| plane.project(p)).collect();
    let cells: [Vec<[usize; 2]>; 3] = MarkingKind::ALL.map(|k| c.marks(k).iter().map(|m| plane.project(m.coords())).collect());
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let base = TorusRect::spanning(n, pts[i], pts[j]);
            if pts.iter().any(|p| base.contains_point(p[0], p[1])) {
                continue;
            }
            let census = std::array::from_fn(|k| {
                cells[k].iter().enumerate().filter(|(_, m)| base.contains_cell(m[0], m[1])).map(|(idx, _)| idx).collect()
            });
            out.push(CylinderTerm { target: s.swapped(swap_axis, i, j), plane, base, census });
        }
    }
    out
}

/// Empty `plane`-cylinders from `s` to `t`; the fixed projection is inferred from `t`.
pub fn empty_cylinders(c: &CubeDiagram, s: &CubeState, t: &CubeState, plane: Plane) -> Vec<CylinderTerm> {
    let (a, b) = plane.axes();
    [a, b]
        .into_iter()
        .flat_map(|axis| cylinders_from(c, s, plane, axis))
        .filter(|cyl| &cyl.target == t)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::floer::state::{cube_states, grid_states};

    #[test]
    fn g_u2_rectangles() {
        let g = fixtures::g_u2();
        let diag = GridState::new(vec![0, 1]);
        let anti = GridState::new(vec![1, 0]);
        let r = empty_rectangles(&g, &diag, &anti);
        assert_eq!(r.len(), 2);
        assert!(r.iter().all(|t| t.o_rows.len() == 1 && t.x_rows.is_empty()));
        let back = empty_rectangles(&g, &anti, &diag);
        assert_eq!(back.len(), 2);
        assert!(back.iter().all(|t| t.x_rows.len() == 1 && t.o_rows.is_empty()));
    }

    #[test]
    fn cylinders_match_rectangles_of_projections() {
        for c in crate::cubediag::enumerate_cube_diagrams(3).into_iter().take(6) {
            for axis in Axis::ALL {
                let (p1, _) = axis.planes();
                let g = c.project(p1);
                let mut cyl_total = 0;
                for s in cube_states(3) {
                    let cyl = cylinders_from(&c, &s, p1, axis);
                    let rect = rectangles_from(&g, &s.project(p1));
                    let mut lhs: Vec<_> = cyl
                        .iter()
                        .map(|a| (a.target.project(p1), a.base, a.count(MarkingKind::variable(p1)), a.count(MarkingKind::grid_x(p1))))
                        .collect();
                    let mut rhs: Vec<_> = rect.iter().map(|b| (b.target.clone(), b.rect, b.o_rows.len(), b.x_rows.len())).collect();
                    lhs.sort();
                    rhs.sort();
                    assert_eq!(lhs, rhs);
                    cyl_total += cyl.len();
                }
                let rect_total: usize = grid_states(3).map(|s| rectangles_from(&g, &s).len()).sum();
                assert_eq!(cyl_total, 6 * rect_total);
            }
        }
    }
}
