//! Cube states, gradings, cylinder differentials and homology over GF(2).

pub mod chain;
pub mod differential;
pub mod grading;
pub mod homology;
pub mod kernel;
pub mod rank;
pub mod rect;
pub mod state;
pub mod tensor;

pub use chain::{FormalChain, Monomial};
pub use differential::{d_squared, differential, grid_d_squared, grid_differential, Variant};
pub use grading::{cube_gradings, grid_gradings, plane_gradings, AlexanderConvention, CubeGradings};
pub use kernel::CubeKernel;
pub use homology::{cube_homology, grid_homology, BigradedDimTable, HomologyTable};
pub use rank::{f2_rank, SparseF2Matrix};
pub use rect::{cylinders_from, empty_cylinders, empty_rectangles, rectangles_from, CylinderTerm, RectangleTerm, TorusRect};
pub use state::{cube_states, grid_states, psi, CubeState, GridState};
pub use tensor::{check_tensor_iso, check_tensor_iso_with};
