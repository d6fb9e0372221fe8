//! Grid and cube differentials in the three supported variants.

use std::fmt;

use crate::cubediag::{CubeDiagram, MarkingKind};
use crate::griddiag::OrientedGridDiagram;
use crate::lattice::Axis;

use super::chain::{FormalChain, Monomial};
use super::rect::{cylinders_from, rectangles_from};
use super::state::{CubeState, GridState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Full polynomial coefficients; only variable-family markings enter the monomial.
    Minus,
    /// Variables set to zero and every marked domain dropped (bigraded).
    Tilde,
    /// Variables set to zero; domains through the other markings still count.
    FilteredHat,
}

impl Variant {
    pub fn parse(s: &str) -> Option<Variant> {
        match s {
            "minus" => Some(Variant::Minus),
            "tilde" => Some(Variant::Tilde),
            "filtered-hat" | "hat" => Some(Variant::FilteredHat),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Minus => "minus",
            Variant::Tilde => "tilde",
            Variant::FilteredHat => "filtered-hat",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Rectangle differential; variable `r` belongs to the O marking in row `r`.
pub fn grid_differential(g: &OrientedGridDiagram, s: &GridState, variant: Variant) -> FormalChain<GridState> {
    let mut out = FormalChain::new();
    for r in rectangles_from(g, s) {
        let keep = match variant {
            Variant::Minus => true,
            Variant::Tilde => r.o_rows.is_empty() && r.x_rows.is_empty(),
            Variant::FilteredHat => r.o_rows.is_empty(),
        };
        if keep {
            let mut m = Monomial::one(g.n());
            for &row in &r.o_rows {
                m.bump(row);
            }
            out.add_term(m, r.target);
        }
    }
    out
}

/// Cylinder differential for `axis`. Variables `0..n` are the first plane's family
/// (by traversal index) and `n..2n` the second plane's.
pub fn differential(c: &CubeDiagram, s: &CubeState, axis: Axis, variant: Variant) -> FormalChain<CubeState> {
    let n = c.n();
    let (p1, p2) = axis.planes();
    let mut out = FormalChain::new();
    for (offset, plane) in [(0, p1), (n, p2)] {
        let v = MarkingKind::variable(plane);
        for cyl in cylinders_from(c, s, plane, axis) {
            let keep = match variant {
                Variant::Minus => true,
                Variant::Tilde => cyl.is_marking_free(),
                Variant::FilteredHat => cyl.census[v.index()].is_empty(),
            };
            if keep {
                let mut m = Monomial::one(2 * n);
                for &i in &cyl.census[v.index()] {
                    m.bump(offset + i);
                }
                out.add_term(m, cyl.target);
            }
        }
    }
    out
}

/// ∂∘∂ applied to `s`, expanded symbolically (zero for a chain complex).
pub fn d_squared(c: &CubeDiagram, s: &CubeState, axis: Axis, variant: Variant) -> FormalChain<CubeState> {
    let mut out = FormalChain::new();
    for (m, t) in differential(c, s, axis, variant).terms() {
        out.add_scaled(m, &differential(c, t, axis, variant));
    }
    out
}

pub fn grid_d_squared(g: &OrientedGridDiagram, s: &GridState, variant: Variant) -> FormalChain<GridState> {
    let mut out = FormalChain::new();
    for (m, t) in grid_differential(g, s, variant).terms() {
        out.add_scaled(m, &grid_differential(g, t, variant));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::floer::state::{cube_states, grid_states};

    #[test]
    fn g_u2_minus() {
        let g = fixtures::g_u2();
        let d = grid_differential(&g, &GridState::new(vec![0, 1]), Variant::Minus);
        let terms: Vec<_> = d.terms().cloned().collect();
        assert_eq!(
            terms,
            vec![
                (Monomial(vec![0, 1]), GridState::new(vec![1, 0])),
                (Monomial(vec![1, 0]), GridState::new(vec![1, 0]))
            ]
        );
        assert!(grid_differential(&g, &GridState::new(vec![1, 0]), Variant::Minus).is_zero());
    }

    #[test]
    fn u2_cube_minus() {
        let c = fixtures::u2();
        let st = |p: &[[usize; 3]]| CubeState::from_points(p).unwrap();
        let d = differential(&c, &st(&[[0, 0, 0], [1, 1, 1]]), Axis::Y, Variant::Minus);
        let t = st(&[[1, 0, 0], [0, 1, 1]]);
        let terms: Vec<_> = d.terms().cloned().collect();
        assert_eq!(terms, vec![(Monomial(vec![0, 1, 0, 0]), t.clone()), (Monomial(vec![1, 0, 0, 0]), t)]);

        let d = differential(&c, &st(&[[0, 0, 1], [1, 1, 0]]), Axis::Y, Variant::Minus);
        let a = st(&[[1, 0, 1], [0, 1, 0]]);
        let b = st(&[[0, 0, 0], [1, 1, 1]]);
        let mut expect = FormalChain::new();
        expect.add_term(Monomial(vec![1, 0, 0, 0]), a.clone());
        expect.add_term(Monomial(vec![0, 1, 0, 0]), a);
        expect.add_term(Monomial(vec![0, 0, 1, 0]), b.clone());
        expect.add_term(Monomial(vec![0, 0, 0, 1]), b);
        assert_eq!(d, expect);
    }

    #[test]
    fn d_squared_vanishes_small() {
        let g = fixtures::gt5_grid();
        for s in grid_states(5) {
            assert!(grid_d_squared(&g, &s, Variant::Minus).is_zero());
        }
        for c in crate::cubediag::enumerate_cube_diagrams(2) {
            for axis in Axis::ALL {
                for s in cube_states(2) {
                    assert!(d_squared(&c, &s, axis, Variant::Minus).is_zero());
                }
            }
        }
    }
}
