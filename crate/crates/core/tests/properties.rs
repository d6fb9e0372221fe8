use cubeknot::floer::rank::{f2_rank_dense, f2_rank_sparse};
use cubeknot::floer::{d_squared, grid_d_squared, grid_states, CubeKernel, SparseF2Matrix, Variant};
use cubeknot::format::{self, Diagram};
use cubeknot::lifting::bend_constraints;
use cubeknot::{
    fixtures, lift_grid, plan_stack, Axis, CubeDiagram, HalfGrading, LiftOptions, OrientedGridDiagram, Plane,
    SegmentKind, SegmentRef, StackPlan, VertexKind,
};
use num_rational::Rational64;
use proptest::prelude::*;
use proptest::sample::subsequence;
use std::sync::OnceLock;

fn perm(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn grid(max_n: usize) -> impl Strategy<Value = OrientedGridDiagram> {
    let planes = prop_oneof![Just(Plane::XY), Just(Plane::YZ), Just(Plane::ZX)];
    (2..=max_n)
        .prop_flat_map(move |n| (perm(n), perm(n), planes.clone()))
        .prop_filter_map("X and O share a cell", |(xp, op, plane)| OrientedGridDiagram::new(plane, xp, op).ok())
}

fn small_cubes() -> &'static [CubeDiagram] {
    static CUBES: OnceLock<Vec<CubeDiagram>> = OnceLock::new();
    CUBES.get_or_init(|| {
        let mut v = cubeknot::cubediag::enumerate_cube_diagrams(3);
        v.push(fixtures::u2());
        v.push(fixtures::split_u2());
        v
    })
}

fn small_cube() -> impl Strategy<Value = CubeDiagram> {
    (0..small_cubes().len()).prop_map(|i| small_cubes()[i].clone())
}

fn segment(n: usize) -> impl Strategy<Value = SegmentRef> {
    let kinds = prop_oneof![Just(SegmentKind::XY), Just(SegmentKind::YZ), Just(SegmentKind::ZX)];
    (kinds, 0..n).prop_map(|(kind, index)| SegmentRef { kind, index })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn half_grading_text_round_trips(t in -1000i64..1000) {
        let h = HalfGrading::from_twice(t);
        prop_assert_eq!(HalfGrading::parse(&h.to_string()), Some(h));
        prop_assert_eq!(HalfGrading::from_rational(h.to_rational()), Some(h));
        prop_assert_eq!(h + (-h), HalfGrading::ZERO);
        prop_assert_eq!(HalfGrading::from_rational(Rational64::new(2 * t + 1, 4)), None);
    }

    #[test]
    fn grid_text_round_trips(g in grid(7)) {
        let text = format::serialize_grid(&g);
        match format::parse(&text).unwrap() {
            Diagram::Grid(h) => prop_assert_eq!(h, g),
            Diagram::Cube(_) => prop_assert!(false, "grid parsed as cube"),
        }
    }

    #[test]
    fn cube_text_round_trips(c in small_cube()) {
        let d = Diagram::Cube(c.clone());
        let back = format::parse(&d.to_text()).unwrap();
        prop_assert_eq!(back.hash(), d.hash());
        match back {
            Diagram::Cube(e) => prop_assert_eq!(e, c),
            Diagram::Grid(_) => prop_assert!(false, "cube parsed as grid"),
        }
    }

    #[test]
    fn untwisted_grids_have_acyclic_or_reported_plans(g in grid(6)) {
        let (u, _) = g.untwist(VertexKind::X);
        let cons = bend_constraints(&u);
        match plan_stack(&u) {
            Ok(plan) => prop_assert!(StackPlan::satisfies(&cons, &plan.levels)),
            Err(cubeknot::Error::ConstraintCycle(_)) => {}
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn lifts_are_valid_cubes(g in grid(5)) {
        let (c, r) = lift_grid(&g, LiftOptions::default()).unwrap();
        prop_assert!(c.is_valid());
        prop_assert_eq!(r.size, c.n());
        if r.surgeries == 0 {
            prop_assert_eq!(c.project(g.orientation()), g.untwist(VertexKind::X).0);
        }
    }

    #[test]
    fn rotation_has_order_three(c in small_cube()) {
        prop_assert_eq!(c.rotated(3), c.clone());
        prop_assert_eq!(c.rotate().project(Plane::YZ), c.project(Plane::XY).with_orientation(Plane::YZ));
    }

    #[test]
    fn stabilization_round_trips(c in small_cube(), s in segment(4)) {
        prop_assume!(s.index < c.n());
        let bigger = c.stabilize(s).unwrap();
        prop_assert!(bigger.is_valid());
        prop_assert_eq!(bigger.n(), c.n() + 1);
        let destabilizable = (0..bigger.n())
            .flat_map(|index| [SegmentKind::XY, SegmentKind::YZ, SegmentKind::ZX].map(|kind| SegmentRef { kind, index }))
            .filter_map(|t| bigger.destabilize(t).ok())
            .any(|d| d == c);
        prop_assert!(destabilizable);
    }

    #[test]
    fn grid_boundary_squares_to_zero(g in grid(4), minus in any::<bool>()) {
        let variant = if minus { Variant::Minus } else { Variant::Tilde };
        for s in grid_states(g.n()) {
            prop_assert!(grid_d_squared(&g, &s, variant).is_zero());
        }
    }

    #[test]
    fn kernel_boundary_squares_to_zero(c in small_cube(), a in 0usize..3, hat in any::<bool>()) {
        let variant = if hat { Variant::FilteredHat } else { Variant::Tilde };
        let k = CubeKernel::new(&c, Axis::from_index(a), variant);
        let (mut first, mut second) = (Vec::new(), Vec::new());
        for idx in 0..k.len() {
            k.boundary(idx, &mut first);
            let mut acc = std::collections::BTreeMap::<u32, bool>::new();
            for &t in &first {
                k.boundary(t as usize, &mut second);
                for &u in &second {
                    *acc.entry(u).or_default() ^= true;
                }
            }
            prop_assert!(acc.values().all(|odd| !odd));
        }
    }

    #[test]
    fn reference_boundary_squares_to_zero(c in small_cube(), a in 0usize..3, pick in subsequence((0..36usize).collect::<Vec<_>>(), 4)) {
        let states: Vec<_> = cubeknot::floer::cube_states(c.n()).collect();
        for i in pick {
            let s = &states[i % states.len()];
            prop_assert!(d_squared(&c, s, Axis::from_index(a), Variant::Minus).is_zero());
        }
    }

    #[test]
    fn dense_and_sparse_ranks_agree(rows in prop::collection::vec(prop::collection::btree_set(0u32..40, 0..8), 0..40)) {
        let mut m = SparseF2Matrix::new(40);
        for r in rows {
            m.push_row(r.into_iter().collect());
        }
        let dense = f2_rank_dense(m.dense_rows());
        prop_assert_eq!(f2_rank_sparse(&m), dense);
        prop_assert!(dense <= m.nrows().min(40));
    }
}
