//! Exact arithmetic for SL(2,Z): group elements, trace classification,
//! power identities and spectral decompositions over real quadratic fields.

pub mod classify;
pub mod eigen;
pub mod mat2;
pub mod quad;

pub use classify::{chebyshev_coeffs, classify, fixed_vector, ChebPair, MatClass};
pub use eigen::{eigen_data, expanding_eigenvalue, lift, EigenData};
pub use mat2::{primitive, vec_add, vec_is_zero, vec_neg, vec_scale, Mat2, Ring, Vec2};
pub use quad::{compare_distinct, square_free_decomposition, QuadVal};
