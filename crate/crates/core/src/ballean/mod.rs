//! Ballean machinery: explicit finite balleans and group-side hyperballean operations.

pub mod constructions;
pub mod cover;
pub mod explicit;
pub mod group;
pub mod hamming;

pub use constructions::{
    coproduct_ballean, exp_hyperballean_of, exp_index, mask_of, product_ballean,
    random_valid_ballean, EXP_SUPPORT_LIMIT, PRODUCT_LIMIT,
};
pub use explicit::{ExplicitBallean, PointSet, ValidationReport, Violation};
pub use group::{
    exp_ball_enumerate, exp_ball_enumerate_centered_identity, exp_ball_membership, g_exp_ball,
    group_ball, mu_set_distance, symmetrize, Carrier, FiniteSubset, IntegerWindow, MuReport,
};
pub use hamming::{hamming_distance, HammingPoint};
