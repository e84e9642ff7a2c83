//! The algebraic layer: index monoids, free-vector bialgebras, the tensor
//! algebra with its operators and functionals, and the randomized axiom
//! suite.
//!
//! Everything here mirrors the matrix-state engine exactly — the
//! correspondence (factor `(g1, 1/q)` ↔ column `(s, k)`) intertwines the
//! operators and the evaluation functionals, which the test suites verify
//! term by term.

pub mod axioms;
pub mod freevec;
pub mod monoid;
pub mod tensor;

pub use axioms::{run_axiom_suite, AxiomReport, LawReport};
pub use freevec::FreeVec;
pub use monoid::{G1Elem, G2Elem, Monoid, Pair};
pub use tensor::{
    block_increment, block_insert, block_raise, cal_a, cal_b, cal_s, factor_weight, from_matrix,
    seminorm_g1, seminorm_g2, seminorm_t, tensor_to_weighted_sum, to_matrix, weight_functional,
    weighted_sum_to_tensor, TensorElem, TensorError, VBasis,
};
