//! Cube diagrams: validation, canonical traversal, projections and moves.
//!
//! Markings are stored in traversal order: component by component, the i-th
//! triple is `X_i → Y_i → Z_i`, followed by `X_{i+1}` (cyclically within the
//! component). Segment X→Y runs parallel to z, Y→Z parallel to x and Z→X
//! parallel to y. Each components starts at its lexicographically smallest X,
//! and components are ordered by that X.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, IllegalMove, Result};
use crate::griddiag::{interleaved, OrientedGridDiagram};
use crate::lattice::{Axis, Cell3, Plane};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MarkingKind {
    X,
    Y,
    Z,
}

impl MarkingKind {
    pub const ALL: [MarkingKind; 3] = [MarkingKind::X, MarkingKind::Y, MarkingKind::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn next(self) -> MarkingKind {
        MarkingKind::ALL[(self.index() + 1) % 3]
    }

    pub fn prev(self) -> MarkingKind {
        MarkingKind::ALL[(self.index() + 2) % 3]
    }

    /// The kind sitting at the vertex of the bend inside flats of `axis`.
    pub fn vertex_of(axis: Axis) -> MarkingKind {
        MarkingKind::ALL[axis.index()]
    }

    /// Projects to the grid X marking in `plane`.
    pub fn grid_x(plane: Plane) -> MarkingKind {
        match plane {
            Plane::XY => MarkingKind::Z,
            Plane::YZ => MarkingKind::X,
            Plane::ZX => MarkingKind::Y,
        }
    }

    /// The ring-variable family attached to `plane` (the kinds that project to grid O
    /// are this one and its successor).
    pub fn variable(plane: Plane) -> MarkingKind {
        MarkingKind::grid_x(plane).next()
    }

    pub fn name(self) -> &'static str {
        ["X", "Y", "Z"][self.index()]
    }
}

impl fmt::Display for MarkingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A segment type, named by its tail and head kinds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SegmentKind {
    XY,
    YZ,
    ZX,
}

impl SegmentKind {
    pub const ALL: [SegmentKind; 3] = [SegmentKind::XY, SegmentKind::YZ, SegmentKind::ZX];

    pub fn tail(self) -> MarkingKind {
        MarkingKind::ALL[self as usize]
    }

    pub fn from_tail(k: MarkingKind) -> SegmentKind {
        SegmentKind::ALL[k.index()]
    }

    /// The axis this segment runs along.
    pub fn axis(self) -> Axis {
        match self {
            SegmentKind::XY => Axis::Z,
            SegmentKind::YZ => Axis::X,
            SegmentKind::ZX => Axis::Y,
        }
    }

    pub fn along(axis: Axis) -> SegmentKind {
        match axis {
            Axis::Z => SegmentKind::XY,
            Axis::X => SegmentKind::YZ,
            Axis::Y => SegmentKind::ZX,
        }
    }

    pub fn name(self) -> &'static str {
        ["XY", "YZ", "ZX"][self as usize]
    }

    pub fn parse(s: &str) -> Option<SegmentKind> {
        SegmentKind::ALL.into_iter().find(|k| k.name().eq_ignore_ascii_case(s))
    }
}

impl fmt::Display for SegmentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A segment identified by its type and the traversal index of its tail.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SegmentRef {
    pub kind: SegmentKind,
    pub index: usize,
}

impl fmt::Display for SegmentRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.kind, self.index)
    }
}

/// A projected crossing whose first-axis ("row") segment is not below its
/// second-axis ("column") segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CrossingViolation {
    pub plane: Plane,
    pub row: SegmentRef,
    pub col: SegmentRef,
    /// Crossing point in the plane's (first, second) coordinates.
    pub at: [usize; 2],
}

impl fmt::Display for CrossingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}-projection: {} is not below {} at ({},{})",
            self.plane, self.row, self.col, self.at[0], self.at[1]
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubeViolation {
    TooSmall(usize),
    Count { kind: MarkingKind, count: usize, n: usize },
    OutOfRange { kind: MarkingKind, cell: Cell3 },
    FlatCount { axis: Axis, index: usize, kind: MarkingKind, count: usize },
    SharedCell { cell: Cell3 },
    RightAngle { axis: Axis, index: usize },
    BrokenSegment { kind: MarkingKind, cell: Cell3 },
    Crossing(CrossingViolation),
}

impl fmt::Display for CubeViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CubeViolation::TooSmall(n) => write!(f, "size {n} is below the minimum of 2"),
            CubeViolation::Count { kind, count, n } => write!(f, "{count} {kind} markings, expected {n}"),
            CubeViolation::OutOfRange { kind, cell } => write!(f, "{kind} marking {cell} lies outside the cube"),
            CubeViolation::FlatCount { axis, index, kind, count } => {
                write!(f, "{axis}-flat {index} holds {count} {kind} markings, expected 1")
            }
            CubeViolation::SharedCell { cell } => write!(f, "several markings share cell {cell}"),
            CubeViolation::RightAngle { axis, index } => {
                write!(f, "markings of {axis}-flat {index} do not form a right angle at its vertex")
            }
            CubeViolation::BrokenSegment { kind, cell } => {
                write!(f, "{kind} marking {cell} has no {} partner to continue the link", kind.next())
            }
            CubeViolation::Crossing(c) => write!(f, "crossing condition: {c}"),
        }
    }
}

/// Flat-count, placement and segment conditions (everything except crossing conditions).
pub fn validate_markings(n: usize, marks: [&[Cell3]; 3]) -> Vec<CubeViolation> {
    let mut out = Vec::new();
    if n < 2 {
        out.push(CubeViolation::TooSmall(n));
    }
    for kind in MarkingKind::ALL {
        let cells = marks[kind.index()];
        if cells.len() != n {
            out.push(CubeViolation::Count { kind, count: cells.len(), n });
        }
        for &cell in cells {
            if cell.coords().iter().any(|&c| c >= n) {
                out.push(CubeViolation::OutOfRange { kind, cell });
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    let mut seen: HashMap<Cell3, usize> = HashMap::new();
    for cells in marks {
        for &c in cells {
            *seen.entry(c).or_default() += 1;
        }
    }
    let mut shared: Vec<Cell3> = seen.into_iter().filter(|&(_, k)| k > 1).map(|(c, _)| c).collect();
    shared.sort();
    out.extend(shared.into_iter().map(|cell| CubeViolation::SharedCell { cell }));

    let mut counts_ok = true;
    for axis in Axis::ALL {
        for kind in MarkingKind::ALL {
            let mut count = vec![0usize; n];
            for c in marks[kind.index()] {
                count[c.coord(axis)] += 1;
            }
            for (index, &k) in count.iter().enumerate() {
                if k != 1 {
                    counts_ok = false;
                    out.push(CubeViolation::FlatCount { axis, index, kind, count: k });
                }
            }
        }
    }
    if counts_ok {
        for axis in Axis::ALL {
            let v = MarkingKind::vertex_of(axis);
            for index in 0..n {
                let in_flat = |k: MarkingKind| *marks[k.index()].iter().find(|c| c.coord(axis) == index).unwrap();
                let (pv, vv, nv) = (in_flat(v.prev()), in_flat(v), in_flat(v.next()));
                if !segment_aligned(pv, vv, SegmentKind::from_tail(v.prev()).axis())
                    || !segment_aligned(vv, nv, SegmentKind::from_tail(v).axis())
                {
                    out.push(CubeViolation::RightAngle { axis, index });
                }
            }
        }
    }
    for kind in MarkingKind::ALL {
        let axis = SegmentKind::from_tail(kind).axis();
        for &cell in marks[kind.index()] {
            let partners = marks[kind.next().index()].iter().filter(|&&h| segment_aligned(cell, h, axis)).count();
            if partners != 1 {
                out.push(CubeViolation::BrokenSegment { kind, cell });
            }
        }
    }
    out
}

/// `a` and `b` differ exactly along `axis`.
fn segment_aligned(a: Cell3, b: Cell3, axis: Axis) -> bool {
    Axis::ALL
        .iter()
        .all(|&ax| (ax == axis) != (a.coord(ax) == b.coord(ax)))
}

/// Every violated condition, crossing conditions included (empty when valid).
pub fn validate_cube(n: usize, marks: [&[Cell3]; 3]) -> Vec<CubeViolation> {
    let v = validate_markings(n, marks);
    if !v.is_empty() {
        return v;
    }
    let c = CubeDiagram::assemble(n, marks);
    c.crossing_violations().into_iter().map(CubeViolation::Crossing).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CubeDiagram {
    n: usize,
    marks: [Vec<Cell3>; 3],
    components: Vec<Range<usize>>,
}

/// One straight piece of the link.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub id: SegmentRef,
    pub from: Cell3,
    pub to: Cell3,
}

impl Segment {
    pub fn axis(&self) -> Axis {
        self.id.kind.axis()
    }

    /// Closed span along the travel axis.
    pub fn span(&self) -> (usize, usize) {
        let ax = self.axis();
        let (a, b) = (self.from.coord(ax), self.to.coord(ax));
        (a.min(b), a.max(b))
    }
}

/// A flat, addressed by its thin axis and coordinate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FlatRef {
    pub axis: Axis,
    pub index: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CubeMove {
    /// Stabilize the segment `kind[index]` by inserting one X/Y/Z triple.
    Stabilize { segment: SegmentRef },
    /// Remove the triple following the tail of `kind[index]`.
    Destabilize { segment: SegmentRef },
    /// Swap flats `index` and `index + 1` of `axis`.
    Commute { flat: FlatRef },
}

impl CubeDiagram {
    /// A fully valid cube diagram, or every violated condition.
    pub fn new(n: usize, x: Vec<Cell3>, y: Vec<Cell3>, z: Vec<Cell3>) -> Result<Self> {
        let c = Self::new_partial(n, x, y, z)?;
        let v = c.crossing_violations();
        if !v.is_empty() {
            return Err(Error::InvalidCube(v.into_iter().map(CubeViolation::Crossing).collect()));
        }
        Ok(c)
    }

    /// Marking conditions only; crossing conditions may fail.
    pub fn new_partial(n: usize, x: Vec<Cell3>, y: Vec<Cell3>, z: Vec<Cell3>) -> Result<Self> {
        let v = validate_markings(n, [&x, &y, &z]);
        if !v.is_empty() {
            return Err(Error::InvalidCube(v));
        }
        Ok(Self::assemble(n, [&x, &y, &z]))
    }

    /// Order markings along the link; assumes the marking conditions hold.
    fn assemble(n: usize, marks: [&[Cell3]; 3]) -> Self {
        let key = |a: Cell3, axis: Axis| -> [usize; 2] {
            let mut k = [0; 2];
            let mut j = 0;
            for ax in Axis::ALL {
                if ax != axis {
                    k[j] = a.coord(ax);
                    j += 1;
                }
            }
            k
        };
        let lookup: Vec<HashMap<[usize; 2], Cell3>> = MarkingKind::ALL
            .iter()
            .map(|&k| {
                let axis = SegmentKind::from_tail(k.prev()).axis();
                marks[k.index()].iter().map(|&c| (key(c, axis), c)).collect()
            })
            .collect();
        let succ = |kind: MarkingKind, c: Cell3| -> Cell3 {
            let nk = kind.next();
            lookup[nk.index()][&key(c, SegmentKind::from_tail(kind).axis())]
        };
        let mut xs: Vec<Cell3> = marks[0].to_vec();
        xs.sort();
        let mut visited: HashMap<Cell3, ()> = HashMap::new();
        let mut out: [Vec<Cell3>; 3] = Default::default();
        let mut components = Vec::new();
        for &start in &xs {
            if visited.contains_key(&start) {
                continue;
            }
            let begin = out[0].len();
            let mut cur = start;
            loop {
                visited.insert(cur, ());
                let y = succ(MarkingKind::X, cur);
                let z = succ(MarkingKind::Y, y);
                out[0].push(cur);
                out[1].push(y);
                out[2].push(z);
                cur = succ(MarkingKind::Z, z);
                if cur == start {
                    break;
                }
            }
            components.push(begin..out[0].len());
        }
        CubeDiagram { n, marks: out, components }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &[Cell3] {
        &self.marks[0]
    }

    pub fn y(&self) -> &[Cell3] {
        &self.marks[1]
    }

    pub fn z(&self) -> &[Cell3] {
        &self.marks[2]
    }

    pub fn marks(&self, kind: MarkingKind) -> &[Cell3] {
        &self.marks[kind.index()]
    }

    pub fn marking(&self, kind: MarkingKind, i: usize) -> Cell3 {
        self.marks[kind.index()][i]
    }

    pub fn components(&self) -> &[Range<usize>] {
        &self.components
    }

    fn component_of(&self, i: usize) -> &Range<usize> {
        self.components.iter().find(|r| r.contains(&i)).expect("index in range")
    }

    pub fn next_index(&self, i: usize) -> usize {
        let r = self.component_of(i);
        if i + 1 == r.end {
            r.start
        } else {
            i + 1
        }
    }

    pub fn prev_index(&self, i: usize) -> usize {
        let r = self.component_of(i);
        if i == r.start {
            r.end - 1
        } else {
            i - 1
        }
    }

    pub fn validate(&self) -> Vec<CubeViolation> {
        validate_cube(self.n, [self.x(), self.y(), self.z()])
    }

    pub fn segment(&self, id: SegmentRef) -> Segment {
        let tail = id.kind.tail();
        let head_index = if id.kind == SegmentKind::ZX { self.next_index(id.index) } else { id.index };
        Segment { id, from: self.marking(tail, id.index), to: self.marking(tail.next(), head_index) }
    }

    pub fn segments(&self) -> Vec<Segment> {
        SegmentKind::ALL
            .iter()
            .flat_map(|&kind| (0..self.n).map(move |index| SegmentRef { kind, index }))
            .map(|id| self.segment(id))
            .collect()
    }

    /// Transverse intersections in `plane`'s projection, as (row segment, column segment, point).
    pub fn projected_crossings(&self, plane: Plane) -> Vec<(Segment, Segment, [usize; 2])> {
        let (a, b) = plane.axes();
        let rows: Vec<Segment> = (0..self.n).map(|index| self.segment(SegmentRef { kind: SegmentKind::along(a), index })).collect();
        let cols: Vec<Segment> = (0..self.n).map(|index| self.segment(SegmentRef { kind: SegmentKind::along(b), index })).collect();
        let mut out = Vec::new();
        for r in &rows {
            let (alo, ahi) = r.span();
            let rb = r.from.coord(b);
            for c in &cols {
                let (blo, bhi) = c.span();
                let ca = c.from.coord(a);
                if alo < ca && ca < ahi && blo < rb && rb < bhi {
                    out.push((*r, *c, [ca, rb]));
                }
            }
        }
        out
    }

    pub fn crossing_violations_in(&self, plane: Plane) -> Vec<CrossingViolation> {
        let c = plane.normal();
        self.projected_crossings(plane)
            .into_iter()
            .filter(|(r, s, _)| r.from.coord(c) >= s.from.coord(c))
            .map(|(r, s, at)| CrossingViolation { plane, row: r.id, col: s.id, at })
            .collect()
    }

    pub fn crossing_violations(&self) -> Vec<CrossingViolation> {
        Plane::ALL.iter().flat_map(|&p| self.crossing_violations_in(p)).collect()
    }

    pub fn is_valid(&self) -> bool {
        self.crossing_violations().is_empty()
    }

    /// The oriented grid diagram seen in `plane`.
    pub fn project(&self, plane: Plane) -> OrientedGridDiagram {
        let n = self.n;
        let mut xpos = vec![0; n];
        let mut opos = vec![0; n];
        let gx = MarkingKind::grid_x(plane);
        for &c in self.marks(gx) {
            let [col, row] = plane.project(c.coords());
            xpos[row] = col;
        }
        for &c in self.marks(gx.next()) {
            let [col, row] = plane.project(c.coords());
            opos[row] = col;
        }
        OrientedGridDiagram::new_unchecked(plane, xpos, opos)
    }

    /// Components as cyclic (kind, cell) sequences.
    pub fn traverse(&self) -> Vec<Vec<(MarkingKind, Cell3)>> {
        self.components
            .iter()
            .map(|r| {
                r.clone()
                    .flat_map(|i| MarkingKind::ALL.map(|k| (k, self.marking(k, i))))
                    .collect()
            })
            .collect()
    }

    /// The two segments of the bend inside a flat (incoming, outgoing).
    pub fn flat_segments(&self, flat: FlatRef) -> [Segment; 2] {
        let v = MarkingKind::vertex_of(flat.axis);
        let i = self.marks(v).iter().position(|c| c.coord(flat.axis) == flat.index).expect("flat index in range");
        let incoming = match v {
            MarkingKind::X => SegmentRef { kind: SegmentKind::ZX, index: self.prev_index(i) },
            _ => SegmentRef { kind: SegmentKind::from_tail(v.prev()), index: i },
        };
        [self.segment(incoming), self.segment(SegmentRef { kind: SegmentKind::from_tail(v), index: i })]
    }

    /// Whether like-parallel segments of two flats of the same axis interleave.
    pub fn interleaved(&self, f1: FlatRef, f2: FlatRef) -> bool {
        let s1 = self.flat_segments(f1);
        let s2 = self.flat_segments(f2);
        s1.iter()
            .any(|a| s2.iter().any(|b| a.axis() == b.axis() && interleaved(a.span(), b.span())))
    }

    /// Relabel coordinates (x,y,z) ↦ (z,x,y) and kinds Z,X,Y ↦ X,Y,Z.
    /// Maps the xy-projection to the yz-projection, yz to zx and zx to xy.
    pub fn rotate(&self) -> Self {
        let r = |v: &[Cell3]| v.iter().map(|&c| rotate_cell(c)).collect::<Vec<_>>();
        Self::assemble(self.n, [&r(self.z()), &r(self.x()), &r(self.y())])
    }

    pub fn rotated(&self, times: usize) -> Self {
        (0..times % 3).fold(self.clone(), |c, _| c.rotate())
    }

    pub fn apply_move(&self, m: &CubeMove) -> Result<Self> {
        match *m {
            CubeMove::Stabilize { segment } => self.stabilize(segment),
            CubeMove::Destabilize { segment } => self.destabilize(segment),
            CubeMove::Commute { flat } => self.commute(flat),
        }
    }

    fn check_segment(&self, s: SegmentRef) -> Result<()> {
        if s.index >= self.n {
            return Err(Error::IllegalMove(IllegalMove::OutOfRange(format!("segment {s} in size {}", self.n))));
        }
        Ok(())
    }

    /// Rotate so that `s` becomes an XY segment; returns the rotation count and its new index.
    fn to_xy(&self, s: SegmentRef) -> (usize, Self, usize) {
        let times = match s.kind {
            SegmentKind::XY => 0,
            SegmentKind::ZX => 1,
            SegmentKind::YZ => 2,
        };
        let cell = (0..times).fold(self.marking(s.kind.tail(), s.index), |c, _| rotate_cell(c));
        let rot = self.rotated(times);
        let index = rot.x().iter().position(|&c| c == cell).expect("rotated tail is an X");
        (times, rot, index)
    }

    pub fn stabilize(&self, s: SegmentRef) -> Result<Self> {
        self.check_segment(s)?;
        let (times, rot, i) = self.to_xy(s);
        Ok(rot.stabilize_xy(i)?.rotated(3 - times))
    }

    pub fn destabilize(&self, s: SegmentRef) -> Result<Self> {
        self.check_segment(s)?;
        let (times, rot, i) = self.to_xy(s);
        Ok(rot.destabilize_xy(i)?.rotated(3 - times))
    }

    fn stabilize_xy(&self, i: usize) -> Result<Self> {
        let n = self.n;
        // old coordinate c becomes 4c+4; new flats sit at ±2 from their neighbour
        let s = |c: usize| 4 * c + 4;
        let (xi, yi, zi) = (self.x()[i], self.y()[i], self.z()[i]);
        let zp = self.z()[self.prev_index(i)];
        let near = |c: usize, up: bool| if up { s(c) + 2 } else { s(c) - 2 };
        let x1 = near(xi.x, zi.x > xi.x);
        let y1 = near(xi.y, zp.y < xi.y);
        let zn = near(xi.z, yi.z > xi.z);
        let sc = |c: Cell3| Cell3::new(s(c.x), s(c.y), s(c.z));
        let mut marks: [Vec<Cell3>; 3] = [
            self.x().iter().map(|&c| sc(c)).collect(),
            self.y().iter().map(|&c| sc(c)).collect(),
            self.z().iter().map(|&c| sc(c)).collect(),
        ];
        let y_moved = sc(yi);
        marks[1][i] = Cell3::new(x1, y1, y_moved.z);
        let z_moved = sc(zi);
        marks[2][i] = Cell3::new(z_moved.x, y1, z_moved.z);

        // every placement of the new triple in the new z-flat that passes the flat counts
        let mut xs: Vec<usize> = marks[0].iter().map(|c| c.x).collect();
        xs.push(x1);
        let mut ys: Vec<usize> = marks[0].iter().map(|c| c.y).collect();
        ys.push(y1);
        let fits = |kind: MarkingKind, cell: Cell3| {
            let m = &marks[kind.index()];
            !m.iter().any(|c| c.x == cell.x) && !m.iter().any(|c| c.y == cell.y)
        };
        let cands = |kind: MarkingKind| -> Vec<Cell3> {
            xs.iter()
                .flat_map(|&x| ys.iter().map(move |&y| Cell3::new(x, y, zn)))
                .filter(|&c| fits(kind, c))
                .collect()
        };
        let (cx, cy, cz) = (cands(MarkingKind::X), cands(MarkingKind::Y), cands(MarkingKind::Z));
        let mut found = Vec::new();
        for &a in &cx {
            for &b in &cy {
                for &c in &cz {
                    let mut m = marks.clone();
                    m[0].push(a);
                    m[1].push(b);
                    m[2].push(c);
                    let m = compress(m);
                    if validate_cube(n + 1, [&m[0], &m[1], &m[2]]).is_empty() {
                        found.push(m);
                    }
                }
            }
        }
        if found.len() != 1 {
            return Err(Error::Invariant(format!(
                "cube stabilization at X[{i}] admits {} valid placements, expected exactly 1",
                found.len()
            )));
        }
        let [x, y, z] = found.pop().unwrap();
        Ok(Self::assemble(n + 1, [&x, &y, &z]))
    }

    fn destabilize_xy(&self, i: usize) -> Result<Self> {
        let absent = |why: &str| Error::IllegalMove(IllegalMove::PatternAbsent(format!("after X[{i}]: {why}")));
        if self.n < 3 || self.component_of(i).len() < 3 {
            return Err(absent("component too short"));
        }
        let j = self.next_index(i);
        let xi = self.x()[i];
        let (y1, x1) = (self.y()[i], self.x()[j]);
        let (gone_x, gone_y, gone_z) = (x1.x, x1.y, y1.z);
        let mut marks: [Vec<Cell3>; 3] = Default::default();
        for k in 0..self.n {
            if k == j {
                continue;
            }
            let (x, mut y, mut z) = (self.x()[k], self.y()[k], self.z()[k]);
            if k == i {
                let (yn, zn) = (self.y()[j], self.z()[j]);
                y = Cell3::new(xi.x, xi.y, yn.z);
                z = Cell3::new(zn.x, xi.y, zn.z);
            }
            marks[0].push(x);
            marks[1].push(y);
            marks[2].push(z);
        }
        let occupied = marks.iter().flatten().any(|c| c.x == gone_x || c.y == gone_y || c.z == gone_z);
        if occupied {
            return Err(absent("the triple's flats are not emptied"));
        }
        let marks = compress(marks);
        let out = CubeDiagram::new(self.n - 1, marks[0].clone(), marks[1].clone(), marks[2].clone())
            .map_err(|_| absent("result is not a cube diagram"))?;
        let xi_new = Cell3::new(
            squeeze(xi.x, gone_x),
            squeeze(xi.y, gone_y),
            squeeze(xi.z, gone_z),
        );
        let k = out.x().iter().position(|&c| c == xi_new).ok_or_else(|| absent("tail not found"))?;
        match out.stabilize_xy(k) {
            Ok(back) if &back == self => Ok(out),
            _ => Err(absent("not a stabilization pattern")),
        }
    }

    fn commute(&self, flat: FlatRef) -> Result<Self> {
        let k = flat.index;
        if k + 1 >= self.n {
            return Err(Error::IllegalMove(IllegalMove::OutOfRange(format!(
                "{}-flats {k},{} in size {}",
                flat.axis,
                k + 1,
                self.n
            ))));
        }
        let other = FlatRef { axis: flat.axis, index: k + 1 };
        if self.interleaved(flat, other) {
            return Err(Error::IllegalMove(IllegalMove::Interleaved(format!("{}-flats {k},{}", flat.axis, k + 1))));
        }
        let ax = flat.axis.index();
        let swap = |c: &Cell3| {
            let mut v = c.coords();
            if v[ax] == k {
                v[ax] = k + 1
            } else if v[ax] == k + 1 {
                v[ax] = k
            }
            Cell3::from_coords(v)
        };
        let m = |kind: MarkingKind| self.marks(kind).iter().map(swap).collect::<Vec<_>>();
        let out = Self::assemble(self.n, [&m(MarkingKind::X), &m(MarkingKind::Y), &m(MarkingKind::Z)]);
        let v = out.crossing_violations();
        if !v.is_empty() {
            return Err(Error::IllegalMove(IllegalMove::CrossingFailure(
                v.into_iter().map(CubeViolation::Crossing).collect(),
            )));
        }
        Ok(out)
    }

    /// All legal commutations.
    pub fn legal_commutations(&self) -> Vec<(FlatRef, CubeDiagram)> {
        Axis::ALL
            .iter()
            .flat_map(|&axis| (0..self.n - 1).map(move |index| FlatRef { axis, index }))
            .filter_map(|f| self.commute(f).ok().map(|c| (f, c)))
            .collect()
    }
}

pub fn rotate_cell(c: Cell3) -> Cell3 {
    Cell3::new(c.z, c.x, c.y)
}

fn squeeze(c: usize, removed: usize) -> usize {
    if c > removed {
        c - 1
    } else {
        c
    }
}

/// Rank-compress each coordinate to 0..n.
fn compress(marks: [Vec<Cell3>; 3]) -> [Vec<Cell3>; 3] {
    let mut vals: [Vec<usize>; 3] = Default::default();
    for (ax, v) in vals.iter_mut().enumerate() {
        *v = marks.iter().flatten().map(|c| c.coords()[ax]).collect();
        v.sort_unstable();
        v.dedup();
    }
    marks.map(|m| {
        m.into_iter()
            .map(|c| {
                let co = c.coords();
                Cell3::from_coords(std::array::from_fn(|ax| vals[ax].binary_search(&co[ax]).unwrap()))
            })
            .collect()
    })
}

/// Every cube diagram of size `n` (feasible for n ≤ 3).
///
/// Any marking structure is `X_i=(i,p_i,q_i)`, `Y_i=(i,p_i,r_i)`,
/// `Z_i=(q⁻¹(r_i),p_i,r_i)` for permutations p, q, r with `q_i ≠ r_i`.
pub fn enumerate_cube_diagrams(n: usize) -> Vec<CubeDiagram> {
    use crate::perm::{inverse, permutations};
    let perms: Vec<Vec<u8>> = permutations(n).collect();
    let mut out = Vec::new();
    for p in &perms {
        for q in &perms {
            let qi = inverse(q);
            for r in &perms {
                if q.iter().zip(r).any(|(a, b)| a == b) {
                    continue;
                }
                let x: Vec<Cell3> = (0..n).map(|i| Cell3::new(i, p[i] as usize, q[i] as usize)).collect();
                let y: Vec<Cell3> = (0..n).map(|i| Cell3::new(i, p[i] as usize, r[i] as usize)).collect();
                let z: Vec<Cell3> =
                    (0..n).map(|i| Cell3::new(qi[r[i] as usize] as usize, p[i] as usize, r[i] as usize)).collect();
                if let Ok(c) = CubeDiagram::new(n, x, y, z) {
                    out.push(c);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn u2_is_valid_and_canonical() {
        let c = fixtures::u2();
        assert!(c.validate().is_empty());
        assert_eq!(c.x(), &[Cell3::new(0, 0, 0), Cell3::new(1, 1, 1)]);
        assert_eq!(c.components().len(), 1);
        assert_eq!(c.project(Plane::XY), fixtures::g_u2());
    }

    #[test]
    fn invalid_examples() {
        let c = fixtures::u2();
        let mut x = c.x().to_vec();
        x[1] = Cell3::new(0, 1, 1);
        let v = validate_cube(2, [&x, c.y(), c.z()]);
        assert!(v.iter().any(|e| matches!(e, CubeViolation::FlatCount { axis: Axis::X, index: 0, .. })));
        let v = validate_cube(2, [&c.x()[..1], c.y(), c.z()]);
        assert!(v.contains(&CubeViolation::Count { kind: MarkingKind::X, count: 1, n: 2 }));
    }

    #[test]
    fn split_diagram_has_two_components() {
        let c = fixtures::split_u2();
        assert!(c.validate().is_empty());
        assert_eq!(c.components().len(), 2);
        assert_eq!(c.traverse().iter().map(Vec::len).collect::<Vec<_>>(), vec![6, 6]);
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_cube_diagrams(2).len(), 4);
        let three = enumerate_cube_diagrams(3);
        assert!(!three.is_empty());
        for c in &three {
            assert!(c.validate().is_empty());
        }
    }

    #[test]
    fn projections_are_valid_grids() {
        for c in enumerate_cube_diagrams(3) {
            for p in Plane::ALL {
                let g = c.project(p);
                assert!(crate::griddiag::validate_grid(3, g.xpos(), g.opos()).is_empty());
                assert_eq!(g.components().len(), c.components().len());
            }
        }
    }

    #[test]
    fn rotation_permutes_projections() {
        for c in enumerate_cube_diagrams(3) {
            let r = c.rotate();
            assert!(r.validate().is_empty());
            assert_eq!(r.project(Plane::YZ).xpos(), c.project(Plane::XY).xpos());
            assert_eq!(r.project(Plane::ZX).opos(), c.project(Plane::YZ).opos());
            assert_eq!(r.project(Plane::XY).xpos(), c.project(Plane::ZX).xpos());
            assert_eq!(r.rotate().rotate(), c);
        }
    }

    #[test]
    fn stabilize_then_destabilize() {
        let c = fixtures::u2();
        for kind in SegmentKind::ALL {
            for index in 0..2 {
                let s = SegmentRef { kind, index };
                let st = c.stabilize(s).unwrap();
                assert_eq!(st.n(), 3);
                assert!(st.validate().is_empty());
                for p in Plane::ALL {
                    assert_eq!(st.project(p).components().len(), 1);
                }
                let back: Vec<_> = (0..3)
                    .filter_map(|index| st.destabilize(SegmentRef { kind, index }).ok())
                    .collect();
                assert!(back.contains(&c), "{kind}[{index}]");
            }
        }
    }

    #[test]
    fn destabilize_rejects_non_patterns() {
        let c = fixtures::u2();
        for kind in SegmentKind::ALL {
            assert!(c.destabilize(SegmentRef { kind, index: 0 }).is_err());
        }
    }

    #[test]
    fn commutation_of_u2() {
        let c = fixtures::u2();
        for axis in Axis::ALL {
            let f = FlatRef { axis, index: 0 };
            match c.apply_move(&CubeMove::Commute { flat: f }) {
                Ok(d) => assert!(d.validate().is_empty()),
                Err(Error::IllegalMove(_)) => {}
                Err(e) => panic!("{e}"),
            }
        }
    }
}
