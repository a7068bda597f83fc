//! Brute-force ground truth built from characters of the 2-torus.

pub mod grid;
pub mod lattice;
pub mod series;
pub mod trig;
pub mod unipotent_limit;

pub use grid::{grid_fourier, GridSet};
pub use lattice::{lattice_correlation, LatticeEstimate};
pub use trig::{char_correlation, trig_correlation, trig_projection, Coef, Freq, TrigPoly};
pub use unipotent_limit::{limit_two_unipotents, projection_norm_sq, reduced_rectangle_series, LimitValue, Observable};
