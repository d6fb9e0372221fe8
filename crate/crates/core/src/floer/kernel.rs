//! Allocation-light boundary maps of the marking-free variants, by generator index.

use crate::cubediag::{CubeDiagram, MarkingKind};
use crate::lattice::{Axis, Plane};
use crate::perm::{factorial, rank, unrank_into};

use super::differential::Variant;
use super::rect::TorusRect;

const MAX_N: usize = 12;

struct PlaneData {
    plane: Plane,
    swap: Axis,
    /// `blocked[col * n + row]`: the cell holds a marking that excludes a cylinder.
    blocked: Vec<bool>,
}

/// Boundary of the tilde or filtered-hat cube complex on generator indices
/// (`CubeState::index` numbering).
pub struct CubeKernel {
    n: usize,
    f: usize,
    planes: [PlaneData; 2],
}

impl CubeKernel {
    pub fn new(c: &CubeDiagram, axis: Axis, variant: Variant) -> Self {
        assert!(variant != Variant::Minus, "the minus complex is not index-based");
        assert!(c.n() <= MAX_N);
        let n = c.n();
        let data = |plane: Plane| {
            let (a, b) = plane.axes();
            let swap = if a == axis { b } else { a };
            let mut blocked = vec![false; n * n];
            for kind in MarkingKind::ALL {
                if variant == Variant::FilteredHat && kind != MarkingKind::variable(plane) {
                    continue;
                }
                for m in c.marks(kind) {
                    let [col, row] = plane.project(m.coords());
                    blocked[col * n + row] = true;
                }
            }
            PlaneData { plane, swap, blocked }
        };
        let (p1, p2) = axis.planes();
        CubeKernel { n, f: factorial(n), planes: [data(p1), data(p2)] }
    }

    pub fn len(&self) -> usize {
        self.f * self.f
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Targets of ∂(generator `idx`), sorted, with GF(2) cancellation applied.
    pub fn boundary(&self, idx: usize, out: &mut Vec<u32>) {
        out.clear();
        let n = self.n;
        let mut ys = [0u8; MAX_N];
        let mut zs = [0u8; MAX_N];
        unrank_into(idx / self.f, &mut ys[..n]);
        unrank_into(idx % self.f, &mut zs[..n]);
        let coord = |k: usize, ax: Axis, ys: &[u8], zs: &[u8]| match ax {
            Axis::X => k,
            Axis::Y => ys[k] as usize,
            Axis::Z => zs[k] as usize,
        };
        for pd in &self.planes {
            let (a, b) = pd.plane.axes();
            let mut pts = [[0usize; 2]; MAX_N];
            for (k, p) in pts.iter_mut().enumerate().take(n) {
                *p = [coord(k, a, &ys, &zs), coord(k, b, &ys, &zs)];
            }
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    let r = TorusRect::spanning(n, pts[i], pts[j]);
                    if pts[..n].iter().any(|p| r.contains_point(p[0], p[1])) {
                        continue;
                    }
                    let free = (0..r.width).all(|dc| {
                        let col = (r.left + dc) % n;
                        (0..r.height).all(|dr| !pd.blocked[col * n + (r.bottom + dr) % n])
                    });
                    if !free {
                        continue;
                    }
                    let (mut ty, mut tz) = (ys, zs);
                    match pd.swap {
                        Axis::X => {
                            ty.swap(i, j);
                            tz.swap(i, j);
                        }
                        Axis::Y => ty.swap(i, j),
                        Axis::Z => tz.swap(i, j),
                    }
                    out.push((rank(&ty[..n]) * self.f + rank(&tz[..n])) as u32);
                }
            }
        }
        cancel_pairs(out);
    }
}

/// Sort and drop values occurring an even number of times.
pub(crate) fn cancel_pairs(v: &mut Vec<u32>) {
    v.sort_unstable();
    let mut w = 0;
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j < v.len() && v[j] == v[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            v[w] = v[i];
            w += 1;
        }
        i = j;
    }
    v.truncate(w);
}
