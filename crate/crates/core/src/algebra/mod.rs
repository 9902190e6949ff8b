//! Exact integer polynomial algebra: the decision kernel for common roots.

pub mod bivariate;
mod fpoly;
pub mod gcd;
pub mod intpoly;
pub mod modp;
pub mod resultant;
mod screen;

pub use bivariate::{
    common_root_exists_2d, common_root_exists_2d_with, eliminate_y, BivarIntPoly, CommonRoot2d,
    LiftOptions,
};
pub use gcd::{gcd_int, gcd_many};
pub use intpoly::IntPoly;
pub use resultant::{
    certify_resultant, common_root_decision, common_root_exists, modular_resultant_filter,
    resultant, DecisionStage, PipelineOptions, ResultantVerdict,
};
