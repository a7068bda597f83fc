//! Symbolic matrix sequences indexed by `n`.

pub mod sequence;
pub mod poly;

pub use sequence::{
    evaluate, expand_unipotent_products, family_power, Family, FamilyTuple, PolyMatFamily,
    PowerFamily,
};
pub use poly::IntPoly;
