//! SVG drawings of grid diagrams and cube projections.
//!
//! Segments parallel to the plane's second axis are drawn over those parallel to the
//! first; each under-segment is broken around every crossing.

use std::fmt::Write as _;

use crate::cubediag::{CubeDiagram, MarkingKind, SegmentKind};
use crate::error::{Error, Result};
use crate::format::Diagram;
use crate::griddiag::OrientedGridDiagram;
use crate::lattice::Plane;

#[derive(Clone, Debug, PartialEq)]
pub struct SceneSegment {
    pub from: [f64; 2],
    pub to: [f64; 2],
    pub over: bool,
    /// Positions along the segment's own axis where it is broken.
    pub gaps: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Glyph {
    pub at: [f64; 2],
    pub label: &'static str,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RenderScene {
    pub n: usize,
    pub cell: f64,
    pub title: String,
    pub segments: Vec<SceneSegment>,
    pub glyphs: Vec<Glyph>,
}

impl RenderScene {
    pub fn gap_count(&self) -> usize {
        self.segments.iter().map(|s| s.gaps.len()).sum()
    }

    fn center(&self, col: usize, row: usize) -> [f64; 2] {
        [(col as f64 + 0.5) * self.cell, (self.n as f64 - row as f64 - 0.5) * self.cell]
    }
}

const CELL: f64 = 40.0;

pub fn grid_scene(g: &OrientedGridDiagram) -> RenderScene {
    let n = g.n();
    let mut sc = RenderScene { n, cell: CELL, title: format!("grid, plane {}", g.orientation()), segments: vec![], glyphs: vec![] };
    let crossings = g.crossings();
    for r in 0..n {
        let gaps = crossings.iter().filter(|c| c.row == r).map(|c| sc.center(c.col, r)[0]).collect();
        let (from, to) = (sc.center(g.xpos()[r], r), sc.center(g.opos()[r], r));
        sc.segments.push(SceneSegment { from, to, over: false, gaps });
    }
    let (xr, or) = (g.x_row_of_col(), g.o_row_of_col());
    for c in 0..n {
        let (from, to) = (sc.center(c, or[c]), sc.center(c, xr[c]));
        sc.segments.push(SceneSegment { from, to, over: true, gaps: vec![] });
    }
    for r in 0..n {
        sc.glyphs.push(Glyph { at: sc.center(g.xpos()[r], r), label: "X" });
        sc.glyphs.push(Glyph { at: sc.center(g.opos()[r], r), label: "O" });
    }
    sc
}

pub fn cube_scene(c: &CubeDiagram, plane: Plane) -> Result<RenderScene> {
    if !c.is_valid() {
        return Err(Error::InvalidInput("cannot render a diagram that violates crossing conditions".into()));
    }
    let n = c.n();
    let (a, b) = plane.axes();
    let mut sc = RenderScene { n, cell: CELL, title: format!("cube projection, plane {plane}"), segments: vec![], glyphs: vec![] };
    let crossings = c.projected_crossings(plane);
    for seg in c.segments() {
        let over = match seg.axis() {
            ax if ax == a => false,
            ax if ax == b => true,
            _ => continue,
        };
        let [fc, fr] = plane.project(seg.from.coords());
        let [tc, tr] = plane.project(seg.to.coords());
        let gaps = crossings.iter().filter(|(r, _, _)| r.id == seg.id).map(|(_, _, at)| sc.center(at[0], 0)[0]).collect();
        sc.segments.push(SceneSegment { from: sc.center(fc, fr), to: sc.center(tc, tr), over, gaps });
    }
    for kind in MarkingKind::ALL {
        // the two kinds joined by the normal-axis segment project to one cell; nudge them apart
        let nudge = if SegmentKind::from_tail(kind).axis() == plane.normal() {
            -0.18
        } else if SegmentKind::from_tail(kind.prev()).axis() == plane.normal() {
            0.18
        } else {
            0.0
        };
        for m in c.marks(kind) {
            let [col, row] = plane.project(m.coords());
            let [x, y] = sc.center(col, row);
            sc.glyphs.push(Glyph { at: [x + nudge * CELL, y], label: kind.name() });
        }
    }
    Ok(sc)
}

pub fn scene(d: &Diagram, plane: Option<Plane>) -> Result<RenderScene> {
    match d {
        Diagram::Grid(g) => match plane {
            Some(p) if p != g.orientation() => {
                Err(Error::InvalidInput(format!("a grid diagram in plane {} has no {p} projection", g.orientation())))
            }
            _ => Ok(grid_scene(g)),
        },
        Diagram::Cube(c) => cube_scene(c, plane.unwrap_or(Plane::XY)),
    }
}

pub fn to_svg(sc: &RenderScene) -> String {
    let size = sc.n as f64 * sc.cell;
    let gap = sc.cell * 0.18;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
    );
    let _ = writeln!(s, "<title>{}</title>", sc.title);
    let _ = writeln!(s, r#"<rect width="{size}" height="{size}" fill="white"/>"#);
    for i in 0..=sc.n {
        let p = i as f64 * sc.cell;
        let _ = writeln!(s, r##"<line class="grid" x1="{p}" y1="0" x2="{p}" y2="{size}" stroke="#ddd"/>"##);
        let _ = writeln!(s, r##"<line class="grid" x1="0" y1="{p}" x2="{size}" y2="{p}" stroke="#ddd"/>"##);
    }
    for seg in sc.segments.iter().filter(|s| !s.over).chain(sc.segments.iter().filter(|s| s.over)) {
        let horizontal = seg.from[1] == seg.to[1];
        let ax = usize::from(!horizontal);
        let (lo, hi) = (seg.from[ax].min(seg.to[ax]), seg.from[ax].max(seg.to[ax]));
        let mut cuts = seg.gaps.clone();
        cuts.sort_by(f64::total_cmp);
        let mut start = lo;
        let mut pieces = Vec::new();
        for g in cuts {
            pieces.push((start, g - gap));
            start = g + gap;
        }
        pieces.push((start, hi));
        let class = if seg.over { "over" } else { "under" };
        for (p, q) in pieces {
            let (x1, y1, x2, y2) = if horizontal { (p, seg.from[1], q, seg.from[1]) } else { (seg.from[0], p, seg.from[0], q) };
            let _ = writeln!(
                s,
                r#"<line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="2"/>"#
            );
        }
    }
    for g in &sc.glyphs {
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="monospace" font-size="{}" text-anchor="middle" dominant-baseline="central">{}</text>"#,
            g.at[0],
            g.at[1],
            sc.cell * 0.4,
            g.label
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn render_svg(d: &Diagram, plane: Option<Plane>) -> Result<String> {
    Ok(to_svg(&scene(d, plane)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn under_pieces(svg: &str) -> usize {
        svg.matches(r#"class="under""#).count()
    }

    #[test]
    fn u2_projections_have_no_gaps() {
        for p in Plane::ALL {
            let sc = cube_scene(&fixtures::u2(), p).unwrap();
            assert_eq!(sc.gap_count(), 0);
        }
    }

    #[test]
    fn gt5_gaps_match_crossings() {
        let g = fixtures::gt5_grid();
        let sc = grid_scene(&g);
        assert_eq!(sc.gap_count(), g.crossings().len());
        let svg = to_svg(&sc);
        assert_eq!(under_pieces(&svg), g.n() + g.crossings().len());
        assert!(svg.starts_with("<svg") && svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn cube_projection_gaps_match_crossings() {
        let c = fixtures::gt5_cube();
        for p in Plane::ALL {
            let sc = cube_scene(c, p).unwrap();
            assert_eq!(sc.gap_count(), c.projected_crossings(p).len());
            assert_eq!(sc.glyphs.len(), 3 * c.n());
        }
    }

    #[test]
    fn grid_in_foreign_plane_is_rejected() {
        assert!(scene(&Diagram::Grid(fixtures::g_u2()), Some(Plane::YZ)).is_err());
    }
}
