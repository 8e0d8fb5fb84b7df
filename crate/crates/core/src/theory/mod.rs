//! Exact contrast formulas for every scheme in the crate.
//!
//! Everything is computed in arbitrary-precision rationals except values
//! involving `√2`, which only the better (2,∞) scheme produces.

pub mod better;
pub mod curve;
pub mod matrix;
pub mod or_contrast;
pub mod partition;
pub mod tables;
pub mod xor_contrast;

pub use better::{
    better2_alpha, better2_alpha_infinity, better2_alpha_partition, better3_alpha, better3_alpha_infinity,
    better3_alpha_partition, better3_class_alphas, better3_weights, Sqrt2Surd,
};
pub use curve::{compare_curves, find_convergence_n, Classification, Comparison, ContrastCurve, ContrastValue};
pub use matrix::{count_matrices, count_matrices_inclusion_exclusion, pr_distinct};
pub use or_contrast::{alpha_or_infinity, alpha_or_partition, alpha_or_stack_t, sigma_or};
pub use partition::{group_shape, raw_partitions, valid_partitions, weight_partition, Partition};
pub use xor_contrast::{alpha_xor_infinity, alpha_xor_partition, pr_even, sigma_xor, xor_transmissions};
