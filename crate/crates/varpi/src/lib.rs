//! Exact combinatorics of ordered-exponential expansions, computed three
//! independent ways and cross-checked to the last digit.
//!
//! The object of study is a sequence of rational numbers ϖ_n attached to a
//! weight sequence b_0, b_1, b_2, … (equivalently, to a field series
//! f = Σ b_k xᵏ/k!). The crate computes ϖ_n by three routes that share no
//! code beyond rational arithmetic:
//!
//! 1. **Series** ([`series`], [`catalog`]): build the generating function
//!    Φ = exp(∫₀ˣ dt/t ∫₀ᵗ f(s) ds) as a truncated series with exact
//!    rational coefficients; then ϖ_n = n!·[xⁿ]Φ. The inverse direction
//!    recovers f from Φ and is verified in two algebraically different
//!    forms.
//! 2. **Matrix states** ([`matrix`]): expand (A + B)ⁿ applied to the empty
//!    two-row state 𝟙, where A inserts columns and B increments them;
//!    aggregate equal states; evaluate the result with the functional Υ
//!    that turns a state into a product of weights. The expansion's raw
//!    branch count grows factorially, but only 2ⁿ⁻¹ aggregated states
//!    survive.
//! 3. **Operator calculus** ([`calculus`]): realize each word in A, B as a
//!    composition of multiplication and connection-derivative operators
//!    acting on Φ and read off the constant term; summing all 2ⁿ words of
//!    length n gives ϖ_n again.
//!
//! The bridge between the state picture and its algebraic underpinnings
//! lives in [`bialgebra`]: free vector spaces over two monoids, their
//! bialgebra structure, the tensor algebra whose rank-n component hosts
//! n-column states, and a randomized suite checking every algebraic law
//! the constructions rely on.
//!
//! [`model`] resolves user-facing model descriptions (catalog names or
//! coefficient files) into a canonical form and runs the pipelines;
//! [`cli`] exposes everything as subcommands. Every number anywhere is a
//! [`rational::Rational`]; nothing is floating point except clearly
//! labeled display columns.
//!
//! # Example
//!
//! ```
//! use varpi::matrix::{omega_sequence, ExpansionBudget, WeightSeq};
//! use varpi::rational::Rational;
//!
//! // Base model: b_g = g. The first counts are 1, 0, 1/2, 2/3, 3/2.
//! let counts = omega_sequence(4, &WeightSeq::Base, &ExpansionBudget::default()).unwrap();
//! assert_eq!(counts[4], Rational::new(3, 2));
//! ```

pub mod bialgebra;
pub mod calculus;
pub mod catalog;
pub mod cli;
pub mod files;
pub mod matrix;
pub mod model;
pub mod rational;
pub mod series;

pub use rational::Rational;
pub use series::TruncatedSeries;
