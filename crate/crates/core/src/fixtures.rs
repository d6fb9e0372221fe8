//! Named diagrams used by tests, the self-test and the CLI.

use std::sync::OnceLock;

use crate::cubediag::CubeDiagram;
use crate::griddiag::OrientedGridDiagram;
use crate::lattice::{Cell3, Plane};

fn grid(xpos: &[usize], opos: &[usize]) -> OrientedGridDiagram {
    OrientedGridDiagram::new(Plane::XY, xpos.to_vec(), opos.to_vec()).expect("fixture grid is valid")
}

/// The 2×2 unknot grid.
pub fn g_u2() -> OrientedGridDiagram {
    grid(&[1, 0], &[0, 1])
}

/// A 5×5 trefoil grid.
pub fn gt5_grid() -> OrientedGridDiagram {
    grid(&[0, 1, 2, 3, 4], &[2, 3, 4, 0, 1])
}

/// A 6×6 knot with exactly one twisted X-bend (row 1).
pub fn twisted6_grid() -> OrientedGridDiagram {
    grid(&[0, 4, 3, 5, 2, 1], &[2, 1, 5, 4, 3, 0])
}

/// A 4×4 grid whose stack at [`SURGERY_LEVELS_YZ`] breaks exactly one (y,z)
/// crossing condition and at [`SURGERY_LEVELS_ZX`] exactly one (z,x) condition.
pub fn surgery4_grid() -> OrientedGridDiagram {
    grid(&[0, 1, 2, 3], &[1, 3, 0, 2])
}

pub const SURGERY_LEVELS_YZ: [usize; 4] = [0, 1, 3, 2];
pub const SURGERY_LEVELS_ZX: [usize; 4] = [0, 2, 1, 3];

/// The size-2 unknot cube.
pub fn u2() -> CubeDiagram {
    let c = |x, y, z| Cell3::new(x, y, z);
    CubeDiagram::new(2, vec![c(0, 0, 0), c(1, 1, 1)], vec![c(0, 0, 1), c(1, 1, 0)], vec![c(1, 0, 1), c(0, 1, 0)])
        .expect("U2 is a cube diagram")
}

/// Two unknots in block-diagonal position (size 4).
pub fn split_u2() -> CubeDiagram {
    let u = u2();
    let shift = |v: &[Cell3]| v.iter().map(|c| Cell3::new(c.x + 2, c.y + 2, c.z + 2)).collect::<Vec<_>>();
    let join = |v: &[Cell3]| v.iter().copied().chain(shift(v)).collect::<Vec<_>>();
    CubeDiagram::new(4, join(u.x()), join(u.y()), join(u.z())).expect("split U2 is a cube diagram")
}

/// A size-6 trefoil cube: the lift of the reversed 5×5 trefoil grid.
pub fn gt5_cube() -> &'static CubeDiagram {
    static CUBE: OnceLock<CubeDiagram> = OnceLock::new();
    CUBE.get_or_init(|| {
        let opts = crate::lifting::LiftOptions { surgery: false, ..Default::default() };
        crate::lifting::lift_grid(&gt5_grid().reversed(), opts).expect("reversed trefoil grid lifts").0
    })
}
