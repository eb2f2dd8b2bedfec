//! Treedepth, covers and the bounded-treedepth edge deletion.

mod cover;
mod treedepth;

pub use cover::{
    coverage_ok, dissection_height, edge_deletion_to_bounded_td, low_td_cover, verify_cover, weak_diameter,
    weak_diameter_cover, Cover, CoverError, CoverKind, TdDeletion,
};
pub use treedepth::{decompose, treedepth, verify_decomposition, TreedepthDecomposition, TreedepthError, EXACT_TD_MAX};
