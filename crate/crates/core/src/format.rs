//! Text formats: `gridknot v1` and `cubeknot v1`.
//!
//! ```text
//! gridknot v1            cubeknot v1
//! n 5                    n 2
//! plane xy               X 0 0 0
//! X 0 1 2 3 4            X 1 1 1
//! O 2 3 4 0 1            Y 0 0 1
//!                        ...
//! ```
//!
//! Grid `X`/`O` lines list the column of each row's marking, bottom row first.
//! Blank lines and `#` comments are ignored. Serialization is canonical: cube
//! markings are written in traversal order.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::cubediag::{CubeDiagram, MarkingKind};
use crate::error::{Error, Result};
use crate::griddiag::OrientedGridDiagram;
use crate::lattice::{Cell3, Plane};

pub const GRID_HEADER: &str = "gridknot v1";
pub const CUBE_HEADER: &str = "cubeknot v1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagram {
    Grid(OrientedGridDiagram),
    Cube(CubeDiagram),
}

impl Diagram {
    pub fn to_text(&self) -> String {
        match self {
            Diagram::Grid(g) => serialize_grid(g),
            Diagram::Cube(c) => serialize_cube(c),
        }
    }

    pub fn hash(&self) -> String {
        diagram_hash(&self.to_text())
    }
}

/// First 16 hex digits of the SHA-256 of the canonical text.
pub fn diagram_hash(canonical: &str) -> String {
    Sha256::digest(canonical.as_bytes()).iter().take(8).fold(String::new(), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Content lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

fn numbers(line: usize, fields: &[&str]) -> Result<Vec<usize>> {
    fields.iter().map(|f| f.parse().map_err(|_| perr(line, format!("expected a non-negative integer, found {f:?}")))).collect()
}

pub fn parse(text: &str) -> Result<Diagram> {
    let mut it = lines(text);
    let (ln, header) = it.next().ok_or_else(|| perr(1, "empty file"))?;
    match header {
        GRID_HEADER => parse_grid_body(it).map(Diagram::Grid),
        CUBE_HEADER => parse_cube_body(it).map(Diagram::Cube),
        other => Err(perr(ln, format!("unknown header {other:?} (expected {GRID_HEADER:?} or {CUBE_HEADER:?})"))),
    }
}

pub fn parse_file(path: &Path) -> Result<Diagram> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
    parse(&text)
}

fn parse_n<'a>(it: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<(usize, usize)> {
    let (ln, l) = it.next().ok_or_else(|| perr(2, "missing size line `n <size>`"))?;
    match l.split_whitespace().collect::<Vec<_>>()[..] {
        ["n", v] => Ok((ln, numbers(ln, &[v])?[0])),
        _ => Err(perr(ln, "expected `n <size>`")),
    }
}

fn parse_grid_body<'a>(mut it: impl Iterator<Item = (usize, &'a str)>) -> Result<OrientedGridDiagram> {
    let (nl, n) = parse_n(&mut it)?;
    let (mut plane, mut xs, mut os) = (None, None, None);
    let mut last = nl;
    for (ln, l) in it {
        last = ln;
        let f: Vec<&str> = l.split_whitespace().collect();
        match f[0] {
            "plane" if f.len() == 2 && plane.is_none() => {
                plane = Some(Plane::parse(f[1]).ok_or_else(|| perr(ln, format!("unknown plane {:?}", f[1])))?)
            }
            "X" | "O" => {
                let v = numbers(ln, &f[1..])?;
                if v.len() != n {
                    return Err(perr(ln, format!("expected {n} columns, found {}", v.len())));
                }
                let slot = if f[0] == "X" { &mut xs } else { &mut os };
                if slot.replace(v).is_some() {
                    return Err(perr(ln, format!("duplicate {} line", f[0])));
                }
            }
            _ => return Err(perr(ln, format!("unexpected line {l:?}"))),
        }
    }
    let (Some(xs), Some(os)) = (xs, os) else {
        return Err(perr(last, "grid needs both an X and an O line"));
    };
    OrientedGridDiagram::new(plane.unwrap_or(Plane::XY), xs, os)
}

fn parse_cube_body<'a>(mut it: impl Iterator<Item = (usize, &'a str)>) -> Result<CubeDiagram> {
    let (_, n) = parse_n(&mut it)?;
    let mut marks: [Vec<Cell3>; 3] = Default::default();
    for (ln, l) in it {
        let f: Vec<&str> = l.split_whitespace().collect();
        let kind = match f[0] {
            "X" => MarkingKind::X,
            "Y" => MarkingKind::Y,
            "Z" => MarkingKind::Z,
            _ => return Err(perr(ln, format!("unexpected line {l:?}"))),
        };
        if f.len() != 4 {
            return Err(perr(ln, "a marking line is `<X|Y|Z> <x> <y> <z>`"));
        }
        let v = numbers(ln, &f[1..])?;
        marks[kind.index()].push(Cell3::new(v[0], v[1], v[2]));
    }
    let [x, y, z] = marks;
    CubeDiagram::new(n, x, y, z)
}

pub fn serialize_grid(g: &OrientedGridDiagram) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
    format!("{GRID_HEADER}\nn {}\nplane {}\nX {}\nO {}\n", g.n(), g.orientation(), join(g.xpos()), join(g.opos()))
}

pub fn serialize_cube(c: &CubeDiagram) -> String {
    let mut s = format!("{CUBE_HEADER}\nn {}\n", c.n());
    for kind in MarkingKind::ALL {
        for m in c.marks(kind) {
            let _ = writeln!(s, "{kind} {} {} {}", m.x, m.y, m.z);
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trips() {
        for d in [
            Diagram::Grid(fixtures::g_u2()),
            Diagram::Grid(fixtures::gt5_grid().with_orientation(Plane::ZX)),
            Diagram::Cube(fixtures::u2()),
            Diagram::Cube(fixtures::split_u2()),
        ] {
            let t = d.to_text();
            assert_eq!(parse(&t).unwrap(), d);
            assert_eq!(parse(&t).unwrap().to_text(), t);
        }
    }

    #[test]
    fn canonicalizes_order_and_comments() {
        let text = "# unknot\ncubeknot v1\nn 2\nZ 0 1 0\nX 1 1 1\nY 1 1 0\nX 0 0 0   # first\nY 0 0 1\nZ 1 0 1\n";
        assert_eq!(parse(text).unwrap().to_text(), serialize_cube(&fixtures::u2()));
    }

    #[test]
    fn errors_carry_line_numbers() {
        match parse("gridknot v1\nn 2\nX 1 0\nO 0 q\n") {
            Err(Error::Parse { line: 4, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("knot v9\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn duplicate_cell_is_a_validation_error() {
        let text = "cubeknot v1\nn 2\nX 0 0 0\nX 0 0 0\nY 0 0 1\nY 1 1 0\nZ 1 0 1\nZ 0 1 0\n";
        assert!(matches!(parse(text), Err(Error::InvalidCube(_))));
    }

    #[test]
    fn hash_is_stable_hex() {
        let h = Diagram::Cube(fixtures::u2()).hash();
        assert_eq!(h.len(), 16);
        assert_eq!(h, Diagram::Cube(fixtures::u2()).hash());
    }
}
