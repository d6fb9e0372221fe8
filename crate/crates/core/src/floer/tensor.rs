//! The chain-level tensor isomorphism between a cube complex and its two projections.

use rayon::prelude::*;

use crate::cubediag::{CubeDiagram, MarkingKind};
use crate::lattice::{Axis, Plane};
use crate::perm::factorial;

use super::chain::{FormalChain, Monomial};
use super::differential::{differential, grid_differential, Variant};
use super::state::{psi, CubeState, GridState};

/// For each grid O row of `c.project(plane)`, the traversal index of the
/// variable-family marking that projects onto it.
pub fn variable_renaming(c: &CubeDiagram, plane: Plane) -> Vec<usize> {
    let g = c.project(plane);
    let v = MarkingKind::variable(plane);
    (0..c.n())
        .map(|row| {
            c.marks(v)
                .iter()
                .position(|m| plane.project(m.coords()) == [g.opos()[row], row])
                .expect("every grid O comes from a variable-family marking")
        })
        .collect()
}

/// True iff ∂ψ(s⊗t) = ψ(∂s⊗t + s⊗∂t) for all generator pairs, under the renaming
/// U (first projection) → first family and U (second projection) → second family.
pub fn check_tensor_iso(c: &CubeDiagram, axis: Axis, variant: Variant) -> bool {
    check_tensor_iso_with(c, axis, variant, |s| differential(c, s, axis, variant))
}

/// As [`check_tensor_iso`], with the cube differential supplied by the caller.
pub fn check_tensor_iso_with<F>(c: &CubeDiagram, axis: Axis, variant: Variant, cube_d: F) -> bool
where
    F: Fn(&CubeState) -> FormalChain<CubeState> + Sync,
{
    let n = c.n();
    let (p1, p2) = axis.planes();
    let (g1, g2) = (c.project(p1), c.project(p2));
    let (r1, r2) = (variable_renaming(c, p1), variable_renaming(c, p2));
    let f = factorial(n);
    let states: Vec<GridState> = (0..f).map(|i| GridState::from_index(n, i)).collect();
    let d1: Vec<_> = states.par_iter().map(|s| grid_differential(&g1, s, variant)).collect();
    let d2: Vec<_> = states.par_iter().map(|s| grid_differential(&g2, s, variant)).collect();
    let lift = |m: &Monomial, ren: &[usize], offset: usize| {
        let mut out = Monomial::one(2 * n);
        for (row, &e) in m.0.iter().enumerate() {
            out.0[offset + ren[row]] += e;
        }
        out
    };
    (0..f * f).into_par_iter().all(|i| {
        let (a, b) = (&states[i / f], &states[i % f]);
        let mut expect = FormalChain::new();
        for (m, t) in d1[i / f].terms() {
            expect.add_term(lift(m, &r1, 0), psi(axis, t, b));
        }
        for (m, t) in d2[i % f].terms() {
            expect.add_term(lift(m, &r2, n), psi(axis, a, t));
        }
        cube_d(&psi(axis, a, b)) == expect
    })
}
