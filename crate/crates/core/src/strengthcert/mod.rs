//! Strength certification: column-graded decompositions, linear-pair normal
//! forms, exclusion matrices, brute-force strength of small quadrics and the
//! certificate files.

mod bruteforce;
mod certificate;
mod decomposition;
mod exclusion;
mod linear;

pub use bruteforce::{
    expand, search_strength, strength_bruteforce_small, BruteStrength, Decomposition, SearchField, SmallField,
};
pub use certificate::{
    certify_all, certify_n32_lower, certify_n32_upper_sample, certify_n33, certify_small_r, recheck, Certificate,
    Environment, N33Options, RecheckReport, SubVerdict, VerdictKind, CLAIM_N32_LOWER, CLAIM_N32_UPPER, CLAIM_N33,
    CLAIM_SMALL_R, DEFAULT_SEED, SMALL_R_PAIRS, UPPER_PRIME, UPPER_SAMPLES,
};
pub use decomposition::{
    equation_number, grading_constraint_check, ConstraintCheck, GradedDecomposition, Pieces, Violation,
    EQUATION_DEGREES,
};
pub use exclusion::{all_coordinate_pairs, exclusion_matrix, strength_one_excluded, ExclusionReport, IdealClass};
pub use linear::{classify_linear_pair, GlAction, GradedLinearForm, LinearPairClass, PairTag};
