//! Counting oracles, closed forms, and whole-model verification.

pub mod counts;
pub mod partition;
pub mod verify;

pub use counts::{
    abs_sqrt_count_brute, asr_count, asr_quotient_count, asrgrpn_count, classify, epsilon,
    involution_count_formula, involutions_over_sigma, involutions_over_sigma_brute, is_involutory,
    mod_lin_solutions, Classification, SquareRootCounts,
};
pub use partition::{partition_of, pi21, CyclePartition, Part, MAX_PARTITION_CYCLES};
pub use verify::{conjecture_check, homomorphism_check, inner_product, split_statistics, verify_model};
