//! Bundled counterexample fixtures, integrity-checked by SHA-256.

use sha2::{Digest, Sha256};

use crate::bistochastic::{permutation_matrix, PairMatrix};
use crate::exact::RatMatrix;
use crate::group::{GroupFunction, Permutation};

pub const PAIR_MATRIX: &str = include_str!("../fixtures/counterexample.pairmatrix");
pub const PAIR_MATRIX_TABLE: &str = include_str!("../fixtures/counterexample.table");
pub const PAIR_MATRIX_GROUPED_TABLE: &str =
    include_str!("../fixtures/counterexample_grouped.table");
pub const REPLACED_TABLE: &str = include_str!("../fixtures/replaced.table");
pub const REPLACED_GROUPED_TABLE: &str = include_str!("../fixtures/replaced_grouped.table");
pub const MARGINAL: &str = include_str!("../fixtures/marginal.matrix");
pub const BLOCK_FUNCTION_N6: &str = include_str!("../fixtures/block_function_n6.groupfunction");

const DIGESTS: [(&str, &str, &str); 7] = [
    (
        "counterexample.pairmatrix",
        PAIR_MATRIX,
        "05b27e5263a45fdc55a4cf3c7af90c4c5f761c514f3d2d15233c85d6aba83614",
    ),
    (
        "counterexample.table",
        PAIR_MATRIX_TABLE,
        "2ec73aae1d170b660ef69f654ce115a1e3ceeff7c83e49de2eaee0252d1b604b",
    ),
    (
        "counterexample_grouped.table",
        PAIR_MATRIX_GROUPED_TABLE,
        "c7e9453c649e8566340e97a1252f6ab19ca812ff9608717cd8e6024dcc433864",
    ),
    (
        "replaced.table",
        REPLACED_TABLE,
        "3480e46bc6dc041bcb1a6198a300b8610d50253d863a239de6b1cc1684a52fd2",
    ),
    (
        "replaced_grouped.table",
        REPLACED_GROUPED_TABLE,
        "f51257515266bdbffc2b834df6e01230f1eb446dcc456b7ab4d728f4f4af74ac",
    ),
    (
        "marginal.matrix",
        MARGINAL,
        "9bac919a15f9410435a7bdb9f2baf5e9aa8021f9fa21944b6e803f8af68f05c5",
    ),
    (
        "block_function_n6.groupfunction",
        BLOCK_FUNCTION_N6,
        "9950ef8d72139a92936b20798aa49e3d25d9bc813ce0f79c032a9b040001eaa8",
    ),
];

pub fn sha256_hex(text: &str) -> String {
    format!("{:x}", Sha256::digest(text.as_bytes()))
}

/// Names of fixtures whose content no longer matches the recorded digest.
pub fn integrity_failures() -> Vec<&'static str> {
    DIGESTS
        .iter()
        .filter(|(_, text, digest)| sha256_hex(text) != *digest)
        .map(|(name, _, _)| *name)
        .collect()
}

/// The 12 × 12 counterexample for `n = 4`.
pub fn counterexample_matrix() -> PairMatrix {
    PairMatrix::parse(PAIR_MATRIX).expect("bundled fixture parses")
}

/// The displayed marginal `R` of [`counterexample_matrix`].
pub fn displayed_marginal() -> RatMatrix {
    RatMatrix::parse(MARGINAL).expect("bundled fixture parses")
}

/// The four permutations of the displayed decomposition of `R`, each with
/// weight 1/4, in display order.
pub fn displayed_marginal_terms() -> [Permutation; 4] {
    [
        vec![4, 3, 2, 1],
        vec![1, 2, 4, 3],
        vec![3, 4, 1, 2],
        vec![4, 1, 3, 2],
    ]
    .map(|p| Permutation::new(p).expect("valid permutation"))
}

/// The replacement matrix `P` (the reversal `i ↦ 5 - i`).
pub fn reversal() -> RatMatrix {
    permutation_matrix(&displayed_marginal_terms()[0])
}

/// The displayed `M̃` tables, lexicographic order and grouped order.
pub fn displayed_replacement_tables() -> (PairMatrix, PairMatrix) {
    (
        PairMatrix::parse_table(REPLACED_TABLE).expect("bundled fixture parses"),
        PairMatrix::parse_table(REPLACED_GROUPED_TABLE).expect("bundled fixture parses"),
    )
}

pub fn displayed_matrix_tables() -> (PairMatrix, PairMatrix) {
    (
        PairMatrix::parse_table(PAIR_MATRIX_TABLE).expect("bundled fixture parses"),
        PairMatrix::parse_table(PAIR_MATRIX_GROUPED_TABLE).expect("bundled fixture parses"),
    )
}

pub fn block_function_n6() -> GroupFunction {
    GroupFunction::parse(BLOCK_FUNCTION_N6).expect("bundled fixture parses")
}
