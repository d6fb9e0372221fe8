//! Cube diagrams of links in the 3-sphere.
//!
//! * [`lattice`] — coordinates, planes, half-integer gradings, pair counting.
//! * [`griddiag`] — oriented grid diagrams, their moves and bends.
//! * [`cubediag`] — cube diagrams, validation, projections and moves.
//! * [`lifting`] — building cube diagrams from grid diagrams.
//! * [`floer`] — states, gradings, differentials and homology over GF(2).
//! * [`format`] / [`render`] / [`selftest`] — text I/O, SVG output, invariant sweep.

pub mod cubediag;
pub mod error;
pub mod fixtures;
pub mod floer;
pub mod format;
pub mod griddiag;
pub mod lattice;
pub mod lifting;
pub mod perm;
pub mod render;
pub mod selftest;

pub use cubediag::{CubeDiagram, CubeMove, CubeViolation, CrossingViolation, FlatRef, MarkingKind, SegmentKind, SegmentRef};
pub use error::{Error, IllegalMove, Result};
pub use griddiag::{BendClass, GridMove, OrientedGridDiagram, StabilizeVariant, VertexKind};
pub use lattice::{Axis, Cell3, HalfGrading, LatticePoint3, Plane};
pub use lifting::{lift_grid, plan_stack, LiftOptions, LiftReport, StackPlan};
