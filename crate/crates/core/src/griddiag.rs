//! Oriented grid diagrams: validation, link traversal, moves and bends.
//!
//! Rows are indexed bottom-to-top by the second axis of the orientation and
//! columns left-to-right by the first axis. `xpos[r]` / `opos[r]` give the
//! column of the X / O marking in row `r`. Row segments run O→X, column
//! segments X→O, and column segments cross over row segments.

use std::fmt;

use crate::error::{Error, IllegalMove, Result};
use crate::lattice::Plane;
use crate::perm::is_permutation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexKind {
    X,
    O,
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexKind::X => "X",
            VertexKind::O => "O",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GridViolation {
    TooSmall(usize),
    Length { kind: VertexKind, len: usize, n: usize },
    OutOfRange { kind: VertexKind, row: usize, col: usize },
    ColumnCount { kind: VertexKind, col: usize, count: usize },
    SharedCell { row: usize, col: usize },
}

impl fmt::Display for GridViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GridViolation::TooSmall(n) => write!(f, "size {n} is below the minimum of 2"),
            GridViolation::Length { kind, len, n } => write!(f, "{kind} row table has {len} entries, expected {n}"),
            GridViolation::OutOfRange { kind, row, col } => write!(f, "{kind} in row {row} at column {col} is outside the grid"),
            GridViolation::ColumnCount { kind, col, count } => write!(f, "column {col} holds {count} {kind} markings, expected 1"),
            GridViolation::SharedCell { row, col } => write!(f, "X and O share cell (col {col}, row {row})"),
        }
    }
}

/// Every violated grid condition (empty when valid).
pub fn validate_grid(n: usize, xpos: &[usize], opos: &[usize]) -> Vec<GridViolation> {
    let mut out = Vec::new();
    if n < 2 {
        out.push(GridViolation::TooSmall(n));
    }
    for (kind, pos) in [(VertexKind::X, xpos), (VertexKind::O, opos)] {
        if pos.len() != n {
            out.push(GridViolation::Length { kind, len: pos.len(), n });
        }
        let mut count = vec![0usize; n];
        for (row, &col) in pos.iter().enumerate() {
            if col >= n || row >= n {
                out.push(GridViolation::OutOfRange { kind, row, col });
            } else {
                count[col] += 1;
            }
        }
        for (col, &c) in count.iter().enumerate() {
            if c != 1 {
                out.push(GridViolation::ColumnCount { kind, col, count: c });
            }
        }
    }
    for (row, (&x, &o)) in xpos.iter().zip(opos).enumerate() {
        if x == o {
            out.push(GridViolation::SharedCell { row, col: x });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedGridDiagram {
    n: usize,
    orientation: Plane,
    xpos: Vec<usize>,
    opos: Vec<usize>,
}

/// A transverse intersection of row segment `row` with column segment `col`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GridCrossing {
    pub row: usize,
    pub col: usize,
}

impl OrientedGridDiagram {
    pub fn new(orientation: Plane, xpos: Vec<usize>, opos: Vec<usize>) -> Result<Self> {
        let n = xpos.len();
        let v = validate_grid(n, &xpos, &opos);
        if !v.is_empty() {
            return Err(Error::InvalidGrid(v));
        }
        Ok(OrientedGridDiagram { n, orientation, xpos, opos })
    }

    pub(crate) fn new_unchecked(orientation: Plane, xpos: Vec<usize>, opos: Vec<usize>) -> Self {
        debug_assert!(validate_grid(xpos.len(), &xpos, &opos).is_empty());
        OrientedGridDiagram { n: xpos.len(), orientation, xpos, opos }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn orientation(&self) -> Plane {
        self.orientation
    }

    pub fn xpos(&self) -> &[usize] {
        &self.xpos
    }

    pub fn opos(&self) -> &[usize] {
        &self.opos
    }

    pub fn with_orientation(&self, orientation: Plane) -> Self {
        OrientedGridDiagram { orientation, ..self.clone() }
    }

    /// Same grid with X and O exchanged: the link with reversed orientation.
    pub fn reversed(&self) -> Self {
        OrientedGridDiagram::new_unchecked(self.orientation, self.opos.clone(), self.xpos.clone())
    }

    pub fn x_row_of_col(&self) -> Vec<usize> {
        invert(&self.xpos)
    }

    pub fn o_row_of_col(&self) -> Vec<usize> {
        invert(&self.opos)
    }

    pub fn row_span(&self, r: usize) -> (usize, usize) {
        sorted(self.xpos[r], self.opos[r])
    }

    pub fn col_spans(&self) -> Vec<(usize, usize)> {
        let xr = self.x_row_of_col();
        let or = self.o_row_of_col();
        (0..self.n).map(|c| sorted(xr[c], or[c])).collect()
    }

    pub fn crossings(&self) -> Vec<GridCrossing> {
        let cols = self.col_spans();
        let mut out = Vec::new();
        for row in 0..self.n {
            let (a, b) = self.row_span(row);
            for (col, &(lo, hi)) in cols.iter().enumerate() {
                if a < col && col < b && lo < row && row < hi {
                    out.push(GridCrossing { row, col });
                }
            }
        }
        out
    }

    /// Link components as cyclic lists of rows, each starting at its lowest row.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let or = self.o_row_of_col();
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut r = start;
            while !seen[r] {
                seen[r] = true;
                comp.push(r);
                r = or[self.xpos[r]];
            }
            out.push(comp);
        }
        out
    }

    pub fn apply_move(&self, m: &GridMove) -> Result<Self> {
        match *m {
            GridMove::Stabilize { row, variant } => self.stabilize(row, variant),
            GridMove::Destabilize { row, col } => self.destabilize(row, col),
            GridMove::CommuteRows(k) => self.commute(k, true),
            GridMove::CommuteCols(k) => self.commute(k, false),
            GridMove::CyclicRows(k) => Ok(self.cyclic_rows(k)),
            GridMove::CyclicCols(k) => Ok(self.cyclic_cols(k)),
        }
    }

    fn check_row(&self, row: usize) -> Result<()> {
        if row >= self.n {
            return Err(Error::IllegalMove(IllegalMove::OutOfRange(format!("row {row} in size {}", self.n))));
        }
        Ok(())
    }

    pub fn stabilize(&self, row: usize, variant: StabilizeVariant) -> Result<Self> {
        self.check_row(row)?;
        let shift = |r: usize| 2 * if r > row { r + 1 } else { r } as i64;
        let (cx, co) = (2 * self.xpos[row] as i64, 2 * self.opos[row] as i64);
        let (rx, ro) = if variant.x_below { (2 * row as i64, 2 * row as i64 + 2) } else { (2 * row as i64 + 2, 2 * row as i64) };
        let new_col = match variant.next_to {
            VertexKind::X => if co < cx { cx - 1 } else { cx + 1 },
            VertexKind::O => if cx < co { co - 1 } else { co + 1 },
        };
        let mut xs = Vec::with_capacity(self.n + 1);
        let mut os = Vec::with_capacity(self.n + 1);
        for r in 0..self.n {
            if r == row {
                xs.push((cx, rx));
                os.push((co, ro));
            } else {
                xs.push((2 * self.xpos[r] as i64, shift(r)));
                os.push((2 * self.opos[r] as i64, shift(r)));
            }
        }
        xs.push((new_col, ro));
        os.push((new_col, rx));
        Ok(from_cells(self.orientation, &xs, &os))
    }

    pub fn destabilize(&self, row: usize, col: usize) -> Result<Self> {
        if self.n < 3 || row + 1 >= self.n || col >= self.n {
            return Err(Error::IllegalMove(IllegalMove::OutOfRange(format!(
                "rows {row},{} / column {col} in size {}",
                row + 1,
                self.n
            ))));
        }
        let rx = self.x_row_of_col()[col];
        let ro = self.o_row_of_col()[col];
        let absent = |why: &str| Error::IllegalMove(IllegalMove::PatternAbsent(format!("rows {row},{} column {col}: {why}", row + 1)));
        if sorted(rx, ro) != (row, row + 1) {
            return Err(absent("column markings are not in the two rows"));
        }
        let (mx, mo) = (self.xpos[ro], self.opos[rx]);
        if mx == mo {
            return Err(absent("merged row would hold X and O in one cell"));
        }
        let squeeze = |c: usize| if c > col { c - 1 } else { c };
        let mut xpos = Vec::with_capacity(self.n - 1);
        let mut opos = Vec::with_capacity(self.n - 1);
        for r in 0..self.n {
            if r == row + 1 {
                continue;
            }
            let (x, o) = if r == row { (mx, mo) } else { (self.xpos[r], self.opos[r]) };
            xpos.push(squeeze(x));
            opos.push(squeeze(o));
        }
        let out = OrientedGridDiagram::new_unchecked(self.orientation, xpos, opos);
        let restores = StabilizeVariant::ALL
            .iter()
            .any(|&v| out.stabilize(row, v).map(|g| &g == self).unwrap_or(false));
        if restores {
            Ok(out)
        } else {
            Err(absent("not a stabilization pattern"))
        }
    }

    fn commute(&self, k: usize, rows: bool) -> Result<Self> {
        if k + 1 >= self.n {
            return Err(Error::IllegalMove(IllegalMove::OutOfRange(format!("index {k} in size {}", self.n))));
        }
        let (s1, s2) = if rows {
            (self.row_span(k), self.row_span(k + 1))
        } else {
            let spans = self.col_spans();
            (spans[k], spans[k + 1])
        };
        if interleaved(s1, s2) {
            let what = if rows { "rows" } else { "columns" };
            return Err(Error::IllegalMove(IllegalMove::Interleaved(format!(
                "{what} {k},{} with spans {s1:?} and {s2:?}",
                k + 1
            ))));
        }
        let mut g = self.clone();
        if rows {
            g.xpos.swap(k, k + 1);
            g.opos.swap(k, k + 1);
        } else {
            let swap = |c: &mut usize| {
                if *c == k {
                    *c = k + 1
                } else if *c == k + 1 {
                    *c = k
                }
            };
            g.xpos.iter_mut().for_each(swap);
            g.opos.iter_mut().for_each(swap);
        }
        Ok(g)
    }

    fn cyclic_rows(&self, k: usize) -> Self {
        let n = self.n;
        let pick = |v: &[usize]| (0..n).map(|r| v[(r + k) % n]).collect();
        OrientedGridDiagram::new_unchecked(self.orientation, pick(&self.xpos), pick(&self.opos))
    }

    fn cyclic_cols(&self, k: usize) -> Self {
        let n = self.n;
        let shift = |v: &[usize]| v.iter().map(|&c| (c + n - k % n) % n).collect();
        OrientedGridDiagram::new_unchecked(self.orientation, shift(&self.xpos), shift(&self.opos))
    }

    /// Bends partitioning the link, one per row, with vertex at the row's X or O.
    pub fn bends(&self, kind: VertexKind) -> Vec<Bend> {
        (0..self.n)
            .map(|row| {
                let column = match kind {
                    VertexKind::X => self.xpos[row],
                    VertexKind::O => self.opos[row],
                };
                Bend { kind, row, column }
            })
            .collect()
    }

    pub fn classify_bends(&self, kind: VertexKind) -> Vec<(Bend, BendClass)> {
        let cr = self.crossings();
        self.bends(kind)
            .into_iter()
            .map(|b| {
                let under = cr.iter().any(|c| c.row == b.row);
                let over = cr.iter().any(|c| c.col == b.column);
                let class = match (over, under) {
                    (true, true) => BendClass::Twisted,
                    (true, false) => BendClass::Over,
                    (false, true) => BendClass::Under,
                    (false, false) => BendClass::Neutral,
                };
                (b, class)
            })
            .collect()
    }

    /// Stabilize at the vertex of each twisted bend until none remain.
    /// Returns the new diagram and the number of stabilizations.
    pub fn untwist(&self, kind: VertexKind) -> (Self, usize) {
        let variant = StabilizeVariant { x_below: true, next_to: kind };
        let mut g = self.clone();
        let mut count = 0;
        while let Some((b, _)) = g.classify_bends(kind).into_iter().find(|(_, c)| *c == BendClass::Twisted) {
            g = g.stabilize(b.row, variant).expect("row of an existing bend");
            count += 1;
        }
        (g, count)
    }
}

impl fmt::Display for OrientedGridDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in (0..self.n).rev() {
            let line: String = (0..self.n)
                .map(|c| if self.xpos[r] == c { 'X' } else if self.opos[r] == c { 'O' } else { '.' })
                .collect();
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Where the new column goes and which marking keeps the lower row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct StabilizeVariant {
    /// X stays in the lower of the two resulting rows.
    pub x_below: bool,
    /// The new column sits next to this marking, on the side facing the other.
    pub next_to: VertexKind,
}

impl Default for StabilizeVariant {
    fn default() -> Self {
        StabilizeVariant { x_below: true, next_to: VertexKind::X }
    }
}

impl StabilizeVariant {
    pub const ALL: [StabilizeVariant; 4] = [
        StabilizeVariant { x_below: true, next_to: VertexKind::X },
        StabilizeVariant { x_below: true, next_to: VertexKind::O },
        StabilizeVariant { x_below: false, next_to: VertexKind::X },
        StabilizeVariant { x_below: false, next_to: VertexKind::O },
    ];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridMove {
    Stabilize { row: usize, variant: StabilizeVariant },
    /// Merge rows `row` and `row + 1` and delete column `col`.
    Destabilize { row: usize, col: usize },
    /// Swap rows `k` and `k + 1`.
    CommuteRows(usize),
    CommuteCols(usize),
    /// Row `r` of the result is row `r + k` of the input.
    CyclicRows(usize),
    /// Column `c` of the result is column `c + k` of the input.
    CyclicCols(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bend {
    pub kind: VertexKind,
    /// The row segment of the bend (and the row of its vertex).
    pub row: usize,
    /// The column segment of the bend (and the column of its vertex).
    pub column: usize,
}

impl Bend {
    pub fn vertex(&self) -> (usize, usize) {
        (self.column, self.row)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BendClass {
    Over,
    Neutral,
    Under,
    Twisted,
}

impl fmt::Display for BendClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BendClass::Over => "over",
            BendClass::Neutral => "neutral",
            BendClass::Under => "under",
            BendClass::Twisted => "twisted",
        })
    }
}

/// Two closed intervals whose four endpoints are distinct and alternate.
pub fn interleaved(a: (usize, usize), b: (usize, usize)) -> bool {
    let (a, b) = (sorted(a.0, a.1), sorted(b.0, b.1));
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

fn sorted(a: usize, b: usize) -> (usize, usize) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn invert(pos: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; pos.len()];
    for (r, &c) in pos.iter().enumerate() {
        inv[c] = r;
    }
    inv
}

/// Build a grid from (column, row) cells with arbitrary distinct coordinates.
fn from_cells(orientation: Plane, xs: &[(i64, i64)], os: &[(i64, i64)]) -> OrientedGridDiagram {
    let rank = |vals: Vec<i64>| {
        let mut v = vals;
        v.sort_unstable();
        v.dedup();
        v
    };
    let cols = rank(xs.iter().map(|c| c.0).collect());
    let rows = rank(xs.iter().map(|c| c.1).collect());
    let idx = |v: &[i64], x: i64| v.binary_search(&x).expect("coordinate present");
    let n = xs.len();
    let mut xpos = vec![0; n];
    let mut opos = vec![0; n];
    for &(c, r) in xs {
        xpos[idx(&rows, r)] = idx(&cols, c);
    }
    for &(c, r) in os {
        opos[idx(&rows, r)] = idx(&cols, c);
    }
    debug_assert!(is_permutation(&xpos, n) && is_permutation(&opos, n));
    OrientedGridDiagram::new_unchecked(orientation, xpos, opos)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn validation_examples() {
        assert!(validate_grid(2, &[1, 0], &[0, 1]).is_empty());
        assert!(validate_grid(5, &[0, 1, 2, 3, 4], &[2, 3, 4, 0, 1]).is_empty());
        let v = validate_grid(2, &[0, 0], &[1, 1]);
        assert!(v.contains(&GridViolation::ColumnCount { kind: VertexKind::X, col: 0, count: 2 }));
        assert!(v.contains(&GridViolation::ColumnCount { kind: VertexKind::O, col: 0, count: 0 }));
        let v = validate_grid(2, &[0, 1], &[0, 1]);
        assert_eq!(v.len(), 2);
        assert!(matches!(v[0], GridViolation::SharedCell { .. }));
        assert!(validate_grid(1, &[0], &[0]).contains(&GridViolation::TooSmall(1)));
    }

    #[test]
    fn gt5_is_a_three_crossing_knot() {
        let g = fixtures::gt5_grid();
        assert_eq!(g.components().len(), 1);
        let c: Vec<_> = g.crossings().iter().map(|c| (c.row, c.col)).collect();
        assert_eq!(c, vec![(1, 2), (2, 3), (3, 1)]);
    }

    #[test]
    fn stabilization_examples() {
        let g = fixtures::g_u2();
        let s = g.stabilize(0, StabilizeVariant::default()).unwrap();
        assert_eq!(s.n(), 3);
        assert_eq!(s.components().len(), 1);
        for v in StabilizeVariant::ALL {
            let s = g.stabilize(1, v).unwrap();
            assert_eq!(s.destabilize(1, find_new_col(&g, &s, 1)).unwrap(), g);
        }
    }

    fn find_new_col(_before: &OrientedGridDiagram, after: &OrientedGridDiagram, row: usize) -> usize {
        (0..after.n())
            .find(|&c| after.destabilize(row, c).is_ok())
            .expect("a destabilizable column")
    }

    #[test]
    fn commutation_examples() {
        let g = fixtures::g_u2();
        // rows of G_U2 have nested spans [0,1] and [0,1] → legal
        assert!(g.apply_move(&GridMove::CommuteRows(0)).is_ok());
        let gt = fixtures::gt5_grid();
        // rows 0 ([0,2]) and 1 ([1,3]) interleave
        assert!(matches!(
            gt.apply_move(&GridMove::CommuteRows(0)),
            Err(Error::IllegalMove(IllegalMove::Interleaved(_)))
        ));
    }

    #[test]
    fn cyclic_shift_example() {
        let g = fixtures::gt5_grid().apply_move(&GridMove::CyclicRows(1)).unwrap();
        assert_eq!(g.xpos(), &[1, 2, 3, 4, 0]);
        assert_eq!(g.opos(), &[3, 4, 0, 1, 2]);
        assert!(validate_grid(5, g.xpos(), g.opos()).is_empty());
    }

    #[test]
    fn bends_of_fixtures() {
        let u = fixtures::g_u2().classify_bends(VertexKind::X);
        assert_eq!(u.len(), 2);
        assert!(u.iter().all(|(_, c)| *c == BendClass::Neutral));
        let gt: Vec<_> = fixtures::gt5_grid().classify_bends(VertexKind::X).into_iter().map(|(_, c)| c).collect();
        use BendClass::*;
        assert_eq!(gt, vec![Neutral, Twisted, Twisted, Twisted, Neutral]);
        let tw = fixtures::twisted6_grid().classify_bends(VertexKind::X);
        assert_eq!(tw.iter().filter(|(_, c)| *c == Twisted).count(), 1);
        assert_eq!(tw[1].1, Twisted);
    }

    #[test]
    fn untwist_examples() {
        let g = fixtures::g_u2();
        assert_eq!(g.untwist(VertexKind::X), (g.clone(), 0));
        let (u, k) = fixtures::twisted6_grid().untwist(VertexKind::X);
        assert_eq!((u.n(), k), (7, 1));
        assert!(u.classify_bends(VertexKind::X).iter().all(|(_, c)| *c != BendClass::Twisted));
        assert_eq!(u.untwist(VertexKind::X), (u.clone(), 0));
        let (u, k) = fixtures::gt5_grid().untwist(VertexKind::X);
        assert_eq!((u.n(), k), (8, 3));
        let (u, k) = fixtures::gt5_grid().untwist(VertexKind::O);
        assert_eq!((u.n(), k), (6, 1));
        assert!(u.classify_bends(VertexKind::O).iter().all(|(_, c)| *c != BendClass::Twisted));
    }

    #[test]
    fn interleaving() {
        assert!(interleaved((0, 2), (1, 3)));
        assert!(!interleaved((0, 3), (1, 2)));
        assert!(!interleaved((0, 1), (2, 3)));
        assert!(!interleaved((0, 2), (2, 3)));
    }
}
