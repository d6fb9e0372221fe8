//! Cube diagrams from grid diagrams: bend stacking, ordering search, crossing surgery.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cubediag::{rotate_cell, CrossingViolation, CubeDiagram};
use crate::error::{Error, Result};
use crate::griddiag::{BendClass, OrientedGridDiagram, VertexKind};
use crate::lattice::{Cell3, Plane};
use crate::perm::{factorial, permutations};

/// Levels for the X-vertex bends of a grid, one per row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackPlan {
    /// `levels[r]` is the height of the bend with row `r`.
    pub levels: Vec<usize>,
    /// `(under, over)` bend pairs; the over bend must sit higher.
    pub constraints: Vec<(usize, usize)>,
}

impl StackPlan {
    pub fn satisfies(constraints: &[(usize, usize)], levels: &[usize]) -> bool {
        constraints.iter().all(|&(u, o)| levels[u] < levels[o])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub size: usize,
    pub untwist_stabilizations: usize,
    pub orderings_searched: usize,
    pub surgeries: usize,
    pub residual: Vec<CrossingViolation>,
}

impl LiftReport {
    pub fn success(&self) -> bool {
        self.residual.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LiftOptions {
    /// Maximum number of constraint-consistent orderings to try; `None` uses the default.
    pub budget: Option<usize>,
    pub surgery: bool,
    pub seed: u64,
}

impl Default for LiftOptions {
    fn default() -> Self {
        LiftOptions { budget: None, surgery: true, seed: 0x5eed }
    }
}

/// All orderings for n ≤ 6, else 10,000 samples.
pub fn default_budget(n: usize) -> usize {
    if n <= 6 {
        factorial(n)
    } else {
        10_000
    }
}

/// Over/under constraints between X-vertex bends: a crossing's row bend lies below its column bend.
pub fn bend_constraints(g: &OrientedGridDiagram) -> Vec<(usize, usize)> {
    let x_row = g.x_row_of_col();
    g.crossings().into_iter().map(|c| (c.row, x_row[c.col])).collect()
}

/// Topological levels: under-bends lowest, then neutral, then over, ties by row.
pub fn plan_stack(g: &OrientedGridDiagram) -> Result<StackPlan> {
    let n = g.n();
    let constraints = bend_constraints(g);
    let class: Vec<u8> = g
        .classify_bends(VertexKind::X)
        .into_iter()
        .map(|(_, c)| match c {
            BendClass::Under => 0,
            BendClass::Neutral => 1,
            BendClass::Over => 2,
            BendClass::Twisted => 3,
        })
        .collect();
    let mut indeg = vec![0usize; n];
    let mut succ = vec![Vec::new(); n];
    for &(u, o) in &constraints {
        indeg[o] += 1;
        succ[u].push(o);
    }
    let mut levels = vec![usize::MAX; n];
    for level in 0..n {
        let Some(next) = (0..n).filter(|&b| levels[b] == usize::MAX && indeg[b] == 0).min_by_key(|&b| (class[b], b)) else {
            return Err(Error::ConstraintCycle(find_cycle(&succ, &levels)));
        };
        levels[next] = level;
        for &o in &succ[next] {
            indeg[o] -= 1;
        }
    }
    Ok(StackPlan { levels, constraints })
}

fn find_cycle(succ: &[Vec<usize>], levels: &[usize]) -> Vec<usize> {
    let open = |b: usize| levels[b] == usize::MAX;
    let mut path: Vec<usize> = vec![(0..succ.len()).find(|&b| open(b)).expect("a cycle leaves bends unplaced")];
    loop {
        let cur = *path.last().unwrap();
        let next = *succ[cur].iter().filter(|&&o| open(o)).min().expect("unplaced bends keep a predecessor");
        if let Some(pos) = path.iter().position(|&b| b == next) {
            let mut cyc = path.split_off(pos);
            let m = cyc.iter().enumerate().min_by_key(|&(_, b)| *b).unwrap().0;
            cyc.rotate_left(m);
            return cyc;
        }
        path.push(next);
    }
}

/// Stack the X-vertex bends of `g` at `levels`, as a diagram whose xy-projection is `g`.
/// Only marking conditions are guaranteed; crossing conditions may fail.
pub fn stack_cube(g: &OrientedGridDiagram, levels: &[usize]) -> Result<CubeDiagram> {
    let n = g.n();
    if levels.len() != n || !crate::perm::is_permutation(levels, n) {
        return Err(Error::InvalidInput(format!("levels must be a permutation of 0..{n}")));
    }
    let o_row = g.o_row_of_col();
    let (xp, op) = (g.xpos(), g.opos());
    let z = (0..n).map(|r| Cell3::new(xp[r], r, levels[r])).collect();
    let y = (0..n).map(|r| Cell3::new(op[r], r, levels[r])).collect();
    let x = (0..n).map(|r| Cell3::new(xp[r], o_row[xp[r]], levels[r])).collect();
    CubeDiagram::new_partial(n, x, y, z)
}

/// Rotations taking the xy-plane to `plane`.
fn rotations_to(plane: Plane) -> usize {
    match plane {
        Plane::XY => 0,
        Plane::YZ => 1,
        Plane::ZX => 2,
    }
}

/// Up to this size all permutations are filtered in lexicographic order; above it,
/// random linear extensions are sampled.
const LEXICOGRAPHIC_MAX: usize = 8;

fn candidate_orderings(n: usize, constraints: &[(usize, usize)], budget: usize, seed: u64, plan: &[usize]) -> Vec<Vec<usize>> {
    if n <= LEXICOGRAPHIC_MAX || budget >= factorial(n) {
        return permutations(n)
            .map(|p| p.into_iter().map(usize::from).collect::<Vec<_>>())
            .filter(|l| StackPlan::satisfies(constraints, l))
            .take(budget)
            .collect();
    }
    // random linear extensions: Kahn's algorithm with shuffled priorities
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![plan.to_vec()];
    let mut prio: Vec<usize> = (0..n).collect();
    while out.len() < budget {
        prio.shuffle(&mut rng);
        let mut indeg = vec![0usize; n];
        for &(_, o) in constraints {
            indeg[o] += 1;
        }
        let mut levels = vec![usize::MAX; n];
        for level in 0..n {
            let b = (0..n).filter(|&b| levels[b] == usize::MAX && indeg[b] == 0).min_by_key(|&b| prio[b]).unwrap();
            levels[b] = level;
            for &(u, o) in constraints {
                if u == b {
                    indeg[o] -= 1;
                }
            }
        }
        out.push(levels);
    }
    out
}

/// Lift a grid diagram to a cube diagram whose projection to the grid's plane is
/// the grid after untwisting (and after surgery, if any was needed).
pub fn lift_grid(g: &OrientedGridDiagram, opts: LiftOptions) -> Result<(CubeDiagram, LiftReport)> {
    let rot = rotations_to(g.orientation());
    let (gu, untwists) = g.with_orientation(Plane::XY).untwist(VertexKind::X);
    let n = gu.n();
    let plan = plan_stack(&gu)?;
    let budget = opts.budget.unwrap_or_else(|| default_budget(n));
    let cands = candidate_orderings(n, &plan.constraints, budget, opts.seed, &plan.levels);
    let mut best: Option<(usize, usize, CubeDiagram)> = None;
    let mut found = None;
    for (start, chunk) in cands.chunks(256).enumerate().map(|(i, c)| (i * 256, c)) {
        let scored: Vec<(usize, CubeDiagram)> = chunk
            .par_iter()
            .map(|l| {
                let c = stack_cube(&gu, l).expect("levels come from permutations");
                (c.crossing_violations().len(), c)
            })
            .collect();
        for (i, (v, c)) in scored.into_iter().enumerate() {
            if best.as_ref().map_or(true, |b| v < b.0) {
                best = Some((v, start + i, c));
            }
        }
        if best.as_ref().is_some_and(|b| b.0 == 0) {
            found = best.take();
            break;
        }
    }
    let mut report = LiftReport { size: n, untwist_stabilizations: untwists, orderings_searched: 0, surgeries: 0, residual: vec![] };
    let cube = match found {
        Some((_, idx, c)) => {
            report.orderings_searched = idx + 1;
            c
        }
        None => {
            report.orderings_searched = cands.len();
            let Some((v, _, mut c)) = best else {
                return Err(Error::BudgetExhausted { budget, best: usize::MAX });
            };
            if !opts.surgery {
                return Err(Error::BudgetExhausted { budget, best: v });
            }
            let limit = 4 * v + 4;
            while let Some(viol) = c.crossing_violations().first().copied() {
                if report.surgeries == limit {
                    return Err(Error::Surgery(format!("{} violation(s) remain after {limit} surgeries", c.crossing_violations().len())));
                }
                c = crossing_surgery(&c, &viol)?;
                report.surgeries += 1;
            }
            report.size = c.n();
            c
        }
    };
    let cube = cube.rotated(rot);
    report.residual = cube.crossing_violations();
    if !report.residual.is_empty() {
        return Err(Error::Invariant("lift produced crossing violations".into()));
    }
    Ok((cube, report))
}

/// Resolve one crossing violation by rerouting one of its two segments through two
/// new marking triples (size grows by two).
///
/// Accepted candidates keep the marking conditions, remove exactly one violation and
/// add no crossings to the two other projections; candidates that keep every crossing
/// count are preferred, then the row segment over the column segment.
pub fn crossing_surgery(c: &CubeDiagram, v: &CrossingViolation) -> Result<CubeDiagram> {
    let all = c.crossing_violations();
    if !all.contains(v) {
        return Err(Error::Surgery(if all.is_empty() {
            "diagram has no crossing violation".into()
        } else {
            format!("{v} is not a violation of this diagram")
        }));
    }
    let mut best: Option<(u8, CubeDiagram)> = None;
    for (pref, id) in [(0u8, v.row), (1, v.col)] {
        // rotate until the rerouted segment runs Z → X
        let k = (2 + 3 - id.kind as usize) % 3;
        let rc = c.rotated(k);
        let tail = (0..k).fold(c.segment(id).from, |a, _| rotate_cell(a));
        let index = rc.z().iter().position(|&z| z == tail).expect("rotated tail is a Z marking");
        let plane = (0..k).fold(v.plane, |p, _| rotate_plane(p));
        let keep: Vec<usize> = (0..3).filter(|&i| Plane::ALL[i] != plane).collect();
        let rbefore = crossing_counts(&rc);
        let accept = |d: &CubeDiagram| -> Option<u8> {
            if d.crossing_violations().len() + 1 != all.len() {
                return None;
            }
            let after = crossing_counts(d);
            if keep.iter().any(|&i| after[i] > rbefore[i]) {
                return None;
            }
            Some(if after == rbefore { 0 } else if keep.iter().all(|&i| after[i] == rbefore[i]) { 1 } else { 2 })
        };
        if let Some((tier, d)) = detour_zx(&rc, index, accept) {
            let key = 2 * tier + pref;
            if best.as_ref().map_or(true, |b| key < b.0) {
                best = Some((key, d.rotated((3 - k) % 3)));
            }
        }
        if best.as_ref().is_some_and(|b| b.0 == 0) {
            break;
        }
    }
    best.map(|(_, d)| d).ok_or_else(|| Error::Surgery(format!("no reroute resolves {v}")))
}

fn rotate_plane(p: Plane) -> Plane {
    match p {
        Plane::XY => Plane::YZ,
        Plane::YZ => Plane::ZX,
        Plane::ZX => Plane::XY,
    }
}

fn crossing_counts(c: &CubeDiagram) -> [usize; 3] {
    Plane::ALL.map(|p| c.projected_crossings(p).len())
}

// The segment Z_a → X_b (along y) becomes Z_a → X1 → Y1 → Z1 → X2 → Y2 → Z2 → X_b, whose
// middle run Z1 → X2 sits at new x and z levels. Z_a moves to a new x-flat beside its old
// one and X_b to a new z-flat beside its old one. Returns the lowest-tier candidate, first
// in enumeration order.
fn detour_zx(c: &CubeDiagram, index: usize, accept: impl Fn(&CubeDiagram) -> Option<u8> + Sync) -> Option<(u8, CubeDiagram)> {
    let n = c.n();
    let s = |x: usize| 8 * x as i64 + 8;
    let sc = |cell: Cell3| cell.coords().map(s);
    let (za, xb) = (sc(c.z()[index]), sc(c.x()[c.next_index(index)]));
    let base_x: Vec<[i64; 3]> = c.x().iter().map(|&p| sc(p)).collect();
    let base_y: Vec<[i64; 3]> = c.y().iter().map(|&p| sc(p)).collect();
    let base_z: Vec<[i64; 3]> = c.z().iter().map(|&p| sc(p)).collect();
    let slots: Vec<i64> = (0..n).flat_map(|v| [s(v) - 2, s(v) + 2]).collect();
    // new y-levels strictly inside the run, in travel order
    let (ya, yb) = (za[1], xb[1]);
    let inside: Vec<i64> = if ya < yb {
        slots.iter().copied().filter(|&y| ya < y && y < yb).collect()
    } else {
        slots.iter().rev().copied().filter(|&y| yb < y && y < ya).collect()
    };
    let pairs: Vec<(i64, i64)> =
        (0..inside.len()).flat_map(|i| (i + 1..inside.len()).map(move |j| (i, j))).map(|(i, j)| (inside[i], inside[j])).collect();
    let m = slots.len();
    let total = 4 * m * m * pairs.len();
    let candidate = |idx: usize| -> Option<(u8, CubeDiagram)> {
        let (dxa, dza) = (if idx & 1 == 0 { -1 } else { 1 }, if idx & 2 == 0 { -1 } else { 1 });
        let r = idx / 4;
        let (x1, z1, (y1, y2)) = (slots[r % m], slots[(r / m) % m], pairs[r / (m * m)]);
        let (xa, zaa) = (za[0], za[2]);
        let (xa2, za2) = (xa + dxa, zaa + dza);
        let new_x = [[xa2, y1, zaa], [x1, y2, z1]];
        let new_y = [[xa2, y1, z1], [x1, y2, za2]];
        let new_z = [[x1, y1, z1], [xa, y2, za2]];
        let xs: Vec<[i64; 3]> = base_x.iter().map(|&p| if p == xb { [xb[0], xb[1], za2] } else { p }).chain(new_x).collect();
        let ys: Vec<[i64; 3]> = base_y.iter().copied().chain(new_y).collect();
        let zs: Vec<[i64; 3]> = base_z.iter().map(|&p| if p == za { [xa2, za[1], zaa] } else { p }).chain(new_z).collect();
        let d = compress_i64(n + 2, [xs, ys, zs])?;
        accept(&d).map(|tier| (tier, d))
    };
    (0..total)
        .into_par_iter()
        .filter_map(|i| candidate(i).map(|(tier, d)| (tier, i, d)))
        .min_by_key(|&(tier, i, _)| (tier, i))
        .map(|(tier, _, d)| (tier, d))
}

/// Rank-compress coordinates; `None` unless every axis has exactly `n` values
/// and the marking conditions hold.
fn compress_i64(n: usize, marks: [Vec<[i64; 3]>; 3]) -> Option<CubeDiagram> {
    let mut vals: [Vec<i64>; 3] = Default::default();
    for (ax, v) in vals.iter_mut().enumerate() {
        *v = marks.iter().flatten().map(|p| p[ax]).collect();
        v.sort_unstable();
        v.dedup();
        if v.len() != n {
            return None;
        }
    }
    let [x, y, z] = marks.map(|m| {
        m.into_iter()
            .map(|p| Cell3::from_coords(std::array::from_fn(|ax| vals[ax].binary_search(&p[ax]).unwrap())))
            .collect::<Vec<_>>()
    });
    CubeDiagram::new_partial(n, x, y, z).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, SURGERY_LEVELS_YZ, SURGERY_LEVELS_ZX};

    #[test]
    fn plan_for_u2_grid_is_unconstrained() {
        let p = plan_stack(&fixtures::g_u2()).unwrap();
        assert!(p.constraints.is_empty());
        assert_eq!(p.levels.len(), 2);
    }

    #[test]
    fn gt5_has_a_constraint_cycle() {
        match plan_stack(&fixtures::gt5_grid()) {
            Err(Error::ConstraintCycle(c)) => assert_eq!(c, vec![1, 2, 3]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn untwisted_plan_respects_constraints() {
        for g in [fixtures::twisted6_grid(), fixtures::gt5_grid(), fixtures::gt5_grid().reversed()] {
            let (gu, _) = g.untwist(VertexKind::X);
            let p = plan_stack(&gu).unwrap();
            assert!(StackPlan::satisfies(&p.constraints, &p.levels));
            let c = stack_cube(&gu, &p.levels).unwrap();
            assert!(c.crossing_violations_in(Plane::XY).is_empty());
            assert_eq!(c.project(Plane::XY), gu);
        }
    }

    #[test]
    fn lift_u2_grid() {
        let (c, r) = lift_grid(&fixtures::g_u2(), LiftOptions::default()).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.n(), 2);
        assert_eq!(c.project(Plane::XY), fixtures::g_u2());
        assert!(r.success());
        assert_eq!(r.surgeries, 0);
    }

    #[test]
    fn lift_in_other_orientations() {
        for plane in [Plane::YZ, Plane::ZX] {
            let g = fixtures::surgery4_grid().with_orientation(plane);
            let (c, _) = lift_grid(&g, LiftOptions::default()).unwrap();
            assert!(c.is_valid());
            assert_eq!(c.project(plane), g);
        }
    }

    #[test]
    fn lift_reversed_gt5_without_surgery() {
        let g = fixtures::gt5_grid().reversed();
        let (c, r) = lift_grid(&g, LiftOptions { surgery: false, ..Default::default() }).unwrap();
        assert!(c.is_valid());
        assert_eq!((c.n(), r.untwist_stabilizations, r.surgeries), (6, 1, 0));
        assert_eq!(c.project(Plane::XY), g.untwist(VertexKind::X).0);
    }

    #[test]
    fn tiny_budget_is_reported() {
        let g = fixtures::gt5_grid().reversed();
        match lift_grid(&g, LiftOptions { budget: Some(1), surgery: false, ..Default::default() }) {
            Err(Error::BudgetExhausted { budget: 1, best }) => assert!(best > 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn surgery_fixes_single_violations() {
        let g = fixtures::surgery4_grid();
        for (levels, plane) in [(SURGERY_LEVELS_YZ, Plane::YZ), (SURGERY_LEVELS_ZX, Plane::ZX)] {
            let c = stack_cube(&g, &levels).unwrap();
            let v = c.crossing_violations();
            assert_eq!(v.len(), 1);
            assert_eq!(v[0].plane, plane);
            let d = crossing_surgery(&c, &v[0]).unwrap();
            assert_eq!(d.n(), 6);
            assert!(d.is_valid());
            assert_eq!(crossing_counts(&d)[0], crossing_counts(&c)[0]);
        }
    }

    #[test]
    fn surgery_needs_a_violation() {
        let c = fixtures::u2();
        let fake = CrossingViolation { plane: Plane::YZ, row: c.segments()[0].id, col: c.segments()[1].id, at: [0, 0] };
        assert!(matches!(crossing_surgery(&c, &fake), Err(Error::Surgery(_))));
    }

    #[test]
    fn lift_with_surgery_when_budget_is_tiny() {
        let g = fixtures::surgery4_grid();
        let (c, r) = lift_grid(&g, LiftOptions { budget: Some(1), ..Default::default() }).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.n(), 4 + 2 * r.surgeries);
    }
}
