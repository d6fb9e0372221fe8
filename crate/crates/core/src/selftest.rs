//! A sweep over the library's invariants on small diagrams.
//!
//! Checks run in a fixed order and the sweep stops at the first failure.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cubediag::{enumerate_cube_diagrams, CubeDiagram, MarkingKind, SegmentKind, SegmentRef};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::floer::homology::BigradedDimTable;
use crate::floer::rank::{f2_rank_dense, f2_rank_sparse};
use crate::floer::{
    check_tensor_iso, cube_gradings, cube_homology, cylinders_from, d_squared, grid_d_squared, grid_gradings, grid_homology,
    AlexanderConvention, CubeState, GridState, SparseF2Matrix, Variant,
};
use crate::format::{parse, Diagram};
use crate::griddiag::{BendClass, OrientedGridDiagram, StabilizeVariant, VertexKind};
use crate::lattice::{Axis, HalfGrading, Plane};
use crate::lifting::{crossing_surgery, lift_grid, stack_cube, LiftOptions};
use crate::perm::factorial;
use crate::render::{cube_scene, grid_scene};

const NORM: AlexanderConvention = AlexanderConvention::Normalized;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn() -> std::result::Result<String, String>;

fn quick_checks() -> Vec<(&'static str, Check)> {
    vec![
        ("half-integer gradings round-trip through text", check_half_text),
        ("grid stabilization round-trips through destabilization", check_grid_stabilization),
        ("untwisting leaves no twisted bend", check_untwist),
        ("small cube diagrams project to valid grids", check_projections),
        ("cube stabilization round-trips through destabilization", check_cube_stabilization),
        ("cube commutations keep diagrams valid", check_commutations),
        ("lifting yields valid cubes over the untwisted grid", check_lifting),
        ("crossing surgery resolves single violations", check_surgery),
        ("grid differential squares to zero", check_grid_d2),
        ("cube differential squares to zero (n ≤ 3)", check_cube_d2),
        ("Maslov and Alexander drops of cylinders", check_drops),
        ("cube gradings split into projected grid gradings", check_projection_consistency),
        ("dense and sparse ranks agree", check_ranks),
        ("chain-level tensor isomorphism (small cubes)", check_tensor_small),
        ("unknot cube homology and stabilization", check_u2_homology),
        ("homology agrees across axes (small cubes)", check_axes_small),
        ("text formats round-trip", check_formats),
        ("rendered gaps match crossings", check_render),
    ]
}

fn full_checks() -> Vec<(&'static str, Check)> {
    vec![
        ("trefoil cube: tensor isomorphism and product table", check_trefoil_tensor),
        ("trefoil cube: axis symmetry", check_trefoil_axes),
    ]
}

/// Run the sweep, calling `report` after each check. `full` adds the size-6 trefoil checks.
pub fn run_selftest(full: bool, mut report: impl FnMut(&CheckOutcome)) -> Result<Vec<CheckOutcome>> {
    let mut checks = quick_checks();
    if full {
        checks.extend(full_checks());
    }
    let mut out = Vec::new();
    for (name, check) in checks {
        let res = check();
        let o = CheckOutcome { name, passed: res.is_ok(), detail: res.unwrap_or_else(|e| e) };
        report(&o);
        if !o.passed {
            return Err(Error::Invariant(format!("{name}: {}", o.detail)));
        }
        out.push(o);
    }
    Ok(out)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn small_cubes() -> Vec<CubeDiagram> {
    let mut v = enumerate_cube_diagrams(2);
    v.extend(enumerate_cube_diagrams(3));
    v
}

fn grids() -> Vec<OrientedGridDiagram> {
    vec![fixtures::g_u2(), fixtures::gt5_grid(), fixtures::twisted6_grid(), fixtures::surgery4_grid()]
}

fn check_half_text() -> std::result::Result<String, String> {
    for t in -9..=9 {
        let h = HalfGrading::from_twice(t);
        ensure(HalfGrading::parse(&h.to_string()) == Some(h), || format!("{h} does not parse back"))?;
    }
    Ok("19 values".into())
}

fn check_grid_stabilization() -> std::result::Result<String, String> {
    let mut count = 0;
    for g in grids() {
        for row in 0..g.n() {
            for v in StabilizeVariant::ALL {
                let s = g.stabilize(row, v).map_err(|e| e.to_string())?;
                let back = (0..s.n()).any(|r| (0..s.n()).any(|c| s.destabilize(r, c).is_ok_and(|d| d == g)));
                ensure(back, || format!("no destabilization undoes row {row} {v:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} stabilizations"))
}

fn check_untwist() -> std::result::Result<String, String> {
    for g in grids() {
        for kind in [VertexKind::X, VertexKind::O] {
            let (u, _) = g.untwist(kind);
            ensure(u.classify_bends(kind).iter().all(|(_, c)| *c != BendClass::Twisted), || format!("twisted bend left in\n{u}"))?;
            ensure(u.untwist(kind) == (u.clone(), 0), || "untwist is not idempotent".into())?;
        }
    }
    Ok(format!("{} grids", grids().len()))
}

fn check_projections() -> std::result::Result<String, String> {
    let cubes = small_cubes();
    for c in &cubes {
        for p in Plane::ALL {
            let g = c.project(p);
            OrientedGridDiagram::new(p, g.xpos().to_vec(), g.opos().to_vec()).map_err(|e| e.to_string())?;
        }
        ensure(c.rotated(3) == *c, || "rotation does not have order three".into())?;
    }
    Ok(format!("{} cubes", cubes.len()))
}

fn check_cube_stabilization() -> std::result::Result<String, String> {
    let mut count = 0;
    for c in enumerate_cube_diagrams(2).iter().chain([fixtures::split_u2()].iter()) {
        for kind in [SegmentKind::XY, SegmentKind::YZ, SegmentKind::ZX] {
            for index in 0..c.n() {
                let s = SegmentRef { kind, index };
                let d = c.stabilize(s).map_err(|e| e.to_string())?;
                ensure(d.is_valid() && d.n() == c.n() + 1, || format!("stabilizing {s} broke the diagram"))?;
                let back = [SegmentKind::XY, SegmentKind::YZ, SegmentKind::ZX]
                    .iter()
                    .any(|&k| (0..d.n()).any(|i| d.destabilize(SegmentRef { kind: k, index: i }).is_ok_and(|e| e == *c)));
                ensure(back, || format!("no destabilization undoes {s}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} stabilizations"))
}

fn check_commutations() -> std::result::Result<String, String> {
    let mut count = 0;
    for c in small_cubes().iter().chain([fixtures::split_u2()].iter()) {
        for (f, d) in c.legal_commutations() {
            ensure(d.is_valid(), || format!("commuting {:?} broke the diagram", f))?;
            count += 1;
        }
    }
    Ok(format!("{count} commutations"))
}

fn check_lifting() -> std::result::Result<String, String> {
    for g in [fixtures::g_u2(), fixtures::surgery4_grid(), fixtures::twisted6_grid(), fixtures::gt5_grid().reversed()] {
        let (c, r) = lift_grid(&g, LiftOptions::default()).map_err(|e| e.to_string())?;
        ensure(c.is_valid() && r.success(), || "lift is invalid".into())?;
        if r.surgeries == 0 {
            ensure(c.project(Plane::XY) == g.untwist(VertexKind::X).0, || "projection differs from the untwisted grid".into())?;
        }
    }
    Ok("4 grids".into())
}

fn check_surgery() -> std::result::Result<String, String> {
    let g = fixtures::surgery4_grid();
    for levels in [fixtures::SURGERY_LEVELS_YZ, fixtures::SURGERY_LEVELS_ZX] {
        let c = stack_cube(&g, &levels).map_err(|e| e.to_string())?;
        let v = c.crossing_violations();
        ensure(v.len() == 1, || format!("fixture has {} violations", v.len()))?;
        let d = crossing_surgery(&c, &v[0]).map_err(|e| e.to_string())?;
        ensure(d.is_valid() && d.n() == c.n() + 2, || "surgery output is invalid".into())?;
        ensure(d.projected_crossings(Plane::XY).len() == c.projected_crossings(Plane::XY).len(), || {
            "surgery changed the xy crossing count".into()
        })?;
    }
    ensure(crossing_surgery(&fixtures::u2(), &dummy_violation()).is_err(), || "surgery accepted a valid diagram".into())?;
    Ok("2 fixtures".into())
}

fn dummy_violation() -> crate::cubediag::CrossingViolation {
    let c = fixtures::u2();
    crate::cubediag::CrossingViolation { plane: Plane::YZ, row: c.segments()[0].id, col: c.segments()[1].id, at: [0, 0] }
}

fn check_grid_d2() -> std::result::Result<String, String> {
    let mut count = 0;
    for g in [fixtures::g_u2(), fixtures::gt5_grid()] {
        for i in 0..factorial(g.n()) {
            let s = GridState::from_index(g.n(), i);
            ensure(grid_d_squared(&g, &s, Variant::Minus).is_zero(), || format!("∂² ≠ 0 at {s:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} states"))
}

fn check_cube_d2() -> std::result::Result<String, String> {
    let mut count = 0;
    for c in small_cubes() {
        for axis in Axis::ALL {
            for i in 0..factorial(c.n()).pow(2) {
                let s = CubeState::from_index(c.n(), i);
                ensure(d_squared(&c, &s, axis, Variant::Minus).is_zero(), || format!("∂² ≠ 0 at {s:?}, axis {axis}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} states"))
}

/// Maslov: M(s) − M(t) + 2·deg = 1. Alexander: A(s) − A(t) = #W − #V inside the cylinder,
/// W the family projecting to grid X and V the variable family.
fn check_drops() -> std::result::Result<String, String> {
    let mut count = 0;
    for c in small_cubes().iter().chain([fixtures::split_u2()].iter()) {
        let states = factorial(c.n()).pow(2);
        for axis in Axis::ALL {
            for i in (0..states).step_by(if c.n() > 3 { 37 } else { 1 }) {
                let s = CubeState::from_index(c.n(), i);
                let gs = cube_gradings(c, &s, axis, NORM);
                for plane in [axis.planes().0, axis.planes().1] {
                    for cyl in cylinders_from(c, &s, plane, axis) {
                        let gt = cube_gradings(c, &cyl.target, axis, NORM);
                        let (w, v) = (cyl.count(MarkingKind::grid_x(plane)) as i64, cyl.count(MarkingKind::variable(plane)) as i64);
                        let m_ok = gs.m - gt.m + HalfGrading::from_int(2 * v) == HalfGrading::from_int(1);
                        let a_ok = gs.a - gt.a == HalfGrading::from_int(w - v);
                        ensure(m_ok && a_ok, || format!("{plane}-cylinder from {s:?}: M {}→{}, A {}→{}", gs.m, gt.m, gs.a, gt.a))?;
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(format!("{count} cylinders"))
}

fn check_projection_consistency() -> std::result::Result<String, String> {
    let mut count = 0;
    for c in small_cubes() {
        for axis in Axis::ALL {
            for s in crate::floer::cube_states(c.n()) {
                for (plane, m, a) in cube_gradings(&c, &s, axis, NORM).parts {
                    let g = grid_gradings(&c.project(plane), &s.project(plane), NORM);
                    ensure(g == (m, a), || format!("{plane} constituent of {s:?} is ({m},{a}), grid says {g:?}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} constituents"))
}

fn check_ranks() -> std::result::Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let (r, k) = (rng.gen_range(1..60), rng.gen_range(1..60));
        let mut m = SparseF2Matrix::new(k);
        for _ in 0..r {
            m.push_row((0..k as u32).filter(|_| rng.gen_bool(0.2)).collect());
        }
        ensure(f2_rank_dense(m.dense_rows()) == f2_rank_sparse(&m), || "dense and sparse ranks differ".into())?;
    }
    Ok("50 matrices".into())
}

fn stabilized_u2() -> CubeDiagram {
    fixtures::u2().stabilize(SegmentRef { kind: SegmentKind::XY, index: 0 }).expect("U2 stabilizes")
}

fn check_tensor_small() -> std::result::Result<String, String> {
    for c in [fixtures::u2(), stabilized_u2()] {
        for axis in Axis::ALL {
            for v in [Variant::Minus, Variant::Tilde, Variant::FilteredHat] {
                ensure(check_tensor_iso(&c, axis, v), || format!("fails at n={}, axis {axis}, {}", c.n(), v.name()))?;
            }
            let t = cube_homology(&c, axis, Variant::Tilde, NORM).map_err(|e| e.to_string())?;
            let (p1, p2) = axis.planes();
            let g1 = grid_homology(&c.project(p1), Variant::Tilde, NORM).map_err(|e| e.to_string())?;
            let g2 = grid_homology(&c.project(p2), Variant::Tilde, NORM).map_err(|e| e.to_string())?;
            let prod = g1.bigraded().unwrap().product(g2.bigraded().unwrap());
            ensure(t.bigraded() == Some(&prod), || format!("cube table differs from the product at n={}", c.n()))?;
        }
    }
    Ok("U2 and a stabilization".into())
}

fn check_u2_homology() -> std::result::Result<String, String> {
    let expected = BigradedDimTable::from_ints(&[((0, 0), 1), ((-1, -1), 2), ((-2, -2), 1)]);
    let t = cube_homology(&fixtures::u2(), Axis::Y, Variant::Tilde, NORM).map_err(|e| e.to_string())?;
    ensure(t.bigraded() == Some(&expected), || format!("U2 table is\n{t}"))?;
    let s = cube_homology(&stabilized_u2(), Axis::Y, Variant::Tilde, NORM).map_err(|e| e.to_string())?;
    ensure(s.bigraded() == Some(&expected.times_one_plus_u(2)), || format!("stabilized U2 table is\n{s}"))?;
    Ok("tables match".into())
}

fn check_axes_small() -> std::result::Result<String, String> {
    let mut cubes = enumerate_cube_diagrams(2);
    cubes.extend(enumerate_cube_diagrams(3).into_iter().step_by(7));
    for c in &cubes {
        let y = cube_homology(c, Axis::Y, Variant::Tilde, NORM).map_err(|e| e.to_string())?;
        for axis in [Axis::X, Axis::Z] {
            let t = cube_homology(c, axis, Variant::Tilde, NORM).map_err(|e| e.to_string())?;
            ensure(t == y, || format!("axis {axis} differs from axis y"))?;
        }
    }
    Ok(format!("{} cubes", cubes.len()))
}

fn check_formats() -> std::result::Result<String, String> {
    let ds: Vec<Diagram> = grids()
        .into_iter()
        .map(Diagram::Grid)
        .chain([fixtures::u2(), fixtures::split_u2(), fixtures::gt5_cube().clone()].into_iter().map(Diagram::Cube))
        .collect();
    for d in &ds {
        let t = d.to_text();
        ensure(parse(&t).ok().as_ref() == Some(d), || format!("round-trip failed for\n{t}"))?;
    }
    Ok(format!("{} diagrams", ds.len()))
}

fn check_render() -> std::result::Result<String, String> {
    for g in grids() {
        ensure(grid_scene(&g).gap_count() == g.crossings().len(), || "grid gap count".into())?;
    }
    for p in Plane::ALL {
        let c = fixtures::gt5_cube();
        let sc = cube_scene(c, p).map_err(|e| e.to_string())?;
        ensure(sc.gap_count() == c.projected_crossings(p).len(), || format!("{p} gap count"))?;
    }
    Ok("ok".into())
}

fn check_trefoil_tensor() -> std::result::Result<String, String> {
    let c = fixtures::gt5_cube();
    ensure(check_tensor_iso(c, Axis::Y, Variant::Tilde), || "chain map identity fails".into())?;
    let t = cube_homology(c, Axis::Y, Variant::Tilde, NORM).map_err(|e| e.to_string())?;
    let g1 = grid_homology(&c.project(Plane::XY), Variant::Tilde, NORM).map_err(|e| e.to_string())?;
    let g2 = grid_homology(&c.project(Plane::YZ), Variant::Tilde, NORM).map_err(|e| e.to_string())?;
    let prod = g1.bigraded().unwrap().product(g2.bigraded().unwrap());
    ensure(t.bigraded() == Some(&prod), || "cube table differs from the product".into())?;
    Ok(format!("total {}", t.total()))
}

fn check_trefoil_axes() -> std::result::Result<String, String> {
    let c = fixtures::gt5_cube();
    let y = cube_homology(c, Axis::Y, Variant::Tilde, NORM).map_err(|e| e.to_string())?;
    for axis in [Axis::X, Axis::Z] {
        ensure(cube_homology(c, axis, Variant::Tilde, NORM).map_err(|e| e.to_string())? == y, || format!("axis {axis} differs"))?;
    }
    Ok("x, y, z agree".into())
}
