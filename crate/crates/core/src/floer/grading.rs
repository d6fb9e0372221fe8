//! Maslov and Alexander gradings of grid and cube states.

use crate::cubediag::{CubeDiagram, MarkingKind};
use crate::griddiag::OrientedGridDiagram;
use crate::lattice::{j_pair, j_pair_2d, Axis, FormalPointSum, HalfGrading, Plane};

use super::state::{CubeState, GridState};

/// Sign of the `(n−1)/2` constant in Alexander gradings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlexanderConvention {
    /// `+ (n−1)/2`, as printed in the grid formula.
    Literal,
    /// `− (n−1)/2`, which puts V at bigradings (0,0) and (−1,−1).
    Normalized,
}

fn half(v: num_rational::Rational64) -> HalfGrading {
    HalfGrading::from_rational(v).expect("gradings are half-integers")
}

/// Gradings from doubled-coordinate points: state, grid-X markings, grid-O markings.
fn gradings_2d(n: usize, s: &[[i64; 2]], xs: &[[i64; 2]], os: &[[i64; 2]], conv: AlexanderConvention) -> (HalfGrading, HalfGrading) {
    let one = HalfGrading::from_int(1);
    let halfc = HalfGrading::from_twice(1);
    let st = FormalPointSum::from_points(s.iter().copied(), one);
    let xset = FormalPointSum::from_points(xs.iter().copied(), one);
    let oset = FormalPointSum::from_points(os.iter().copied(), one);
    let so = st.clone().minus(&oset);
    let m = half(j_pair_2d(&so, &so)) + one;
    let mixed = st.add_points(xs.iter().copied(), -halfc).add_points(os.iter().copied(), -halfc);
    let shift = HalfGrading::from_twice(n as i64 - 1);
    let a = half(j_pair_2d(&mixed, &xset.minus(&oset)))
        + match conv {
            AlexanderConvention::Literal => shift,
            AlexanderConvention::Normalized => -shift,
        };
    (m, a)
}

fn cells_2d(cells: impl Iterator<Item = (usize, usize)>) -> Vec<[i64; 2]> {
    cells.map(|(c, r)| [2 * c as i64 + 1, 2 * r as i64 + 1]).collect()
}

pub fn grid_gradings(g: &OrientedGridDiagram, s: &GridState, conv: AlexanderConvention) -> (HalfGrading, HalfGrading) {
    let xs = cells_2d(g.xpos().iter().enumerate().map(|(r, &c)| (c, r)));
    let os = cells_2d(g.opos().iter().enumerate().map(|(r, &c)| (c, r)));
    gradings_2d(g.n(), &s.doubled(), &xs, &os, conv)
}

/// `(M_p, A_p)` of a cube state, computed from 3-space data projected to `plane`:
/// `M_p = J_p(s − V, s − V) + 1` and `A_p = J_p(s − ½(W + V), W − V) ∓ (n−1)/2`,
/// where V is the plane's variable family and W the family projecting to grid X.
pub fn plane_gradings(c: &CubeDiagram, s: &CubeState, plane: Plane, conv: AlexanderConvention) -> (HalfGrading, HalfGrading) {
    let one = HalfGrading::from_int(1);
    let halfc = HalfGrading::from_twice(1);
    let cells = |kind: MarkingKind| c.marks(kind).iter().map(|m| m.doubled()).collect::<Vec<[i64; 3]>>();
    let (w, v) = (cells(MarkingKind::grid_x(plane)), cells(MarkingKind::variable(plane)));
    let st = FormalPointSum::<3>::from_points(s.doubled(), one);
    let vs = FormalPointSum::from_points(v.iter().copied(), one);
    let ws = FormalPointSum::from_points(w.iter().copied(), one);
    let sv = st.clone().minus(&vs);
    let m = half(j_pair(&sv, &sv, plane)) + one;
    let mixed = st.add_points(w.iter().copied(), -halfc).add_points(v.iter().copied(), -halfc);
    let shift = HalfGrading::from_twice(c.n() as i64 - 1);
    let a = half(j_pair(&mixed, &ws.minus(&vs), plane))
        + match conv {
            AlexanderConvention::Literal => shift,
            AlexanderConvention::Normalized => -shift,
        };
    (m, a)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CubeGradings {
    pub m: HalfGrading,
    pub a: HalfGrading,
    /// Constituents for the axis's two planes, in tensor-factor order.
    pub parts: [(Plane, HalfGrading, HalfGrading); 2],
}

pub fn cube_gradings(c: &CubeDiagram, s: &CubeState, axis: Axis, conv: AlexanderConvention) -> CubeGradings {
    let (p1, p2) = axis.planes();
    let (m1, a1) = plane_gradings(c, s, p1, conv);
    let (m2, a2) = plane_gradings(c, s, p2, conv);
    CubeGradings { m: m1 + m2, a: a1 + a2, parts: [(p1, m1, a1), (p2, m2, a2)] }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use AlexanderConvention::*;

    fn h(v: i64) -> HalfGrading {
        HalfGrading::from_int(v)
    }

    #[test]
    fn g_u2_gradings() {
        let g = fixtures::g_u2();
        assert_eq!(grid_gradings(&g, &GridState::new(vec![0, 1]), Literal), (h(-1), h(0)));
        assert_eq!(grid_gradings(&g, &GridState::new(vec![1, 0]), Literal), (h(0), h(1)));
        assert_eq!(grid_gradings(&g, &GridState::new(vec![1, 0]), Normalized), (h(0), h(0)));
    }

    #[test]
    fn u2_cube_gradings_axis_y() {
        let c = fixtures::u2();
        let st = |p: &[[usize; 3]]| CubeState::from_points(p).unwrap();
        let g = |p: &[[usize; 3]]| {
            let r = cube_gradings(&c, &st(p), Axis::Y, Literal);
            (r.m, r.a)
        };
        assert_eq!(g(&[[0, 0, 0], [1, 1, 1]]), (h(-1), h(1)));
        assert_eq!(g(&[[0, 0, 1], [1, 1, 0]]), (h(-2), h(0)));
        assert_eq!(g(&[[1, 0, 0], [0, 1, 1]]), (h(0), h(2)));
        assert_eq!(g(&[[1, 0, 1], [0, 1, 0]]), (h(-1), h(1)));
    }
}
