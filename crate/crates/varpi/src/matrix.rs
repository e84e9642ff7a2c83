//! Two-row matrix states and the operators that act on them.
//!
//! A [`MatrixState`] is a finite sequence of columns `(s, k)` with `s >= 0`
//! and `k >= 1`; the empty state is written `[]` and acts as the starting
//! vector. Operators map a single state to a formal sum of states:
//!
//! * [`apply_a`] produces `n + 1` states for an `n`-column input — one
//!   insertion per position plus an append,
//! * [`apply_b`] produces `n` states — one bump per column,
//! * [`apply_s`] prepends a fixed column (one state).
//!
//! Sums of states are kept aggregated in a [`WeightedSum`]: a canonical map
//! from state to exact multiplicity. Aggregation is what keeps the walk
//! tractable — after `n` steps of `A + B` the raw branch count has grown
//! factorially (1, 3, 13, 75, 541, ...) while the aggregated state count
//! is only `2^(n-1)`.
//!
//! The evaluation functional [`WeightedSum::upsilon`] contracts a sum to a
//! number using a weight sequence `b`: each state contributes
//! `multiplicity * prod_i b(s_i) / k_i`. The headline quantity is
//! [`omega_n`]`= upsilon((A + B)^n [])`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::rational::{factorial, Rational};
use crate::series::TruncatedSeries;

/// One column of a matrix state: top entry `s >= 0`, bottom entry `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Column {
    pub s: u32,
    pub k: u32,
}

impl Column {
    pub fn new(s: u32, k: u32) -> Result<Self, MatrixError> {
        if k == 0 {
            return Err(MatrixError::InvalidColumn { s, k });
        }
        Ok(Column { s, k })
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum MatrixError {
    #[error("column ({s}, {k}) is invalid: the bottom entry must be at least 1")]
    InvalidColumn { s: u32, k: u32 },
    #[error(
        "expansion budget exceeded at step {step}: {states} aggregated states, limit {max_states}"
    )]
    BudgetExceeded {
        step: usize,
        states: usize,
        max_states: usize,
    },
    #[error("weight table covers indices 0..={max_index}, but b({needed}) was requested")]
    WeightOutOfRange { needed: u32, max_index: usize },
}

/// A sequence of columns; `Ord` is lexicographic, which fixes the canonical
/// presentation order everywhere a sum is printed or serialized.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MatrixState {
    cols: Vec<Column>,
}

impl MatrixState {
    /// The empty state (the starting vector of every expansion).
    pub fn empty() -> Self {
        MatrixState { cols: Vec::new() }
    }

    pub fn from_columns(cols: Vec<Column>) -> Self {
        MatrixState { cols }
    }

    /// Builds a state from raw `(s, k)` pairs, validating `k >= 1`.
    pub fn from_pairs(pairs: &[(u32, u32)]) -> Result<Self, MatrixError> {
        let cols = pairs
            .iter()
            .map(|&(s, k)| Column::new(s, k))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(MatrixState { cols })
    }

    pub fn columns(&self) -> &[Column] {
        &self.cols
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }
}

impl fmt::Display for MatrixState {
    /// Renders both rows, e.g. `[1 0; 2 1]`; the empty state is `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cols.is_empty() {
            return write!(f, "[]");
        }
        write!(f, "[")?;
        for (i, c) in self.cols.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", c.s)?;
        }
        write!(f, "; ")?;
        for (i, c) in self.cols.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", c.k)?;
        }
        write!(f, "]")
    }
}

/// Raw output of the first operator, one entry per case, before
/// aggregation: for each position `j` a new column `(0, k_j + 1)` is
/// inserted in front of column `j` while every column strictly left of the
/// insertion gets its bottom entry bumped; finally the append case bumps
/// every bottom entry and adds `(0, 1)` at the end. An `n`-column state
/// yields exactly `n + 1` raw terms.
pub fn apply_a_raw(state: &MatrixState) -> Vec<MatrixState> {
    let cols = state.columns();
    let n = cols.len();
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..n {
        let mut new = Vec::with_capacity(n + 1);
        for c in &cols[..j] {
            new.push(Column { s: c.s, k: c.k + 1 });
        }
        new.push(Column {
            s: 0,
            k: cols[j].k + 1,
        });
        new.extend_from_slice(&cols[j..]);
        out.push(MatrixState { cols: new });
    }
    let mut appended: Vec<Column> = cols
        .iter()
        .map(|c| Column { s: c.s, k: c.k + 1 })
        .collect();
    appended.push(Column { s: 0, k: 1 });
    out.push(MatrixState { cols: appended });
    out
}

/// Raw output of the second operator, before aggregation: for each
/// position `j` the top entry of column `j` is raised by one and the
/// bottom entries of columns `0..=j` are bumped. An `n`-column state
/// yields exactly `n` raw terms; the empty state yields none.
pub fn apply_b_raw(state: &MatrixState) -> Vec<MatrixState> {
    let cols = state.columns();
    let n = cols.len();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut new = Vec::with_capacity(n);
        for (i, c) in cols.iter().enumerate() {
            let s = if i == j { c.s + 1 } else { c.s };
            let k = if i <= j { c.k + 1 } else { c.k };
            new.push(Column { s, k });
        }
        out.push(MatrixState { cols: new });
    }
    out
}

/// The first operator as an aggregated sum: coinciding insertion cases are
/// merged into one state with an integer multiplicity.
pub fn apply_a(state: &MatrixState) -> WeightedSum {
    let mut sum = WeightedSum::zero();
    for produced in apply_a_raw(state) {
        sum.add_term(produced, Rational::one());
    }
    sum
}

/// The second operator as an aggregated sum; the empty state maps to the
/// zero sum.
pub fn apply_b(state: &MatrixState) -> WeightedSum {
    let mut sum = WeightedSum::zero();
    for produced in apply_b_raw(state) {
        sum.add_term(produced, Rational::one());
    }
    sum
}

/// Prepends the fixed column to the state (the seeding operator).
pub fn apply_s(state: &MatrixState, col: Column) -> MatrixState {
    let mut cols = Vec::with_capacity(state.len() + 1);
    cols.push(col);
    cols.extend_from_slice(state.columns());
    MatrixState { cols }
}

/// One letter of an operator word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Letter {
    A,
    B,
    /// Prepend the given column.
    S(Column),
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::A => write!(f, "A"),
            Letter::B => write!(f, "B"),
            Letter::S(c) => write!(f, "S({},{})", c.s, c.k),
        }
    }
}

/// The weight sequence `b` used by the evaluation functional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightSeq {
    /// `b(g) = g`, defined for every index.
    Base,
    /// Explicit values `b(0) .. b(K)`; indices beyond `K` are an error.
    Table(Vec<Rational>),
}

impl WeightSeq {
    /// Weight table read off a field series: `b(k) = k! * c_k` where `c_k`
    /// is the coefficient of `x^k` in `f`.
    pub fn from_field(f: &TruncatedSeries) -> Self {
        let table = f
            .coeffs()
            .iter()
            .enumerate()
            .map(|(k, c)| factorial(k) * c)
            .collect();
        WeightSeq::Table(table)
    }

    pub fn weight(&self, g: u32) -> Result<Rational, MatrixError> {
        match self {
            WeightSeq::Base => Ok(Rational::from_int(i64::from(g))),
            WeightSeq::Table(t) => t.get(g as usize).cloned().ok_or_else(|| {
                MatrixError::WeightOutOfRange {
                    needed: g,
                    max_index: t.len().saturating_sub(1),
                }
            }),
        }
    }
}

/// The evaluation functional on a single state: the product over columns
/// of `b(s) / k`, with the empty product equal to one.
pub fn upsilon(state: &MatrixState, weights: &WeightSeq) -> Result<Rational, MatrixError> {
    let mut acc = Rational::one();
    for c in state.columns() {
        let b = weights.weight(c.s)?;
        if b.is_zero() {
            return Ok(Rational::zero());
        }
        acc *= &(b / Rational::from_int(i64::from(c.k)));
    }
    Ok(acc)
}

/// Cap on the aggregated state count during an expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExpansionBudget {
    pub max_states: usize,
}

impl Default for ExpansionBudget {
    fn default() -> Self {
        ExpansionBudget {
            max_states: Self::DEFAULT_MAX_STATES,
        }
    }
}

impl ExpansionBudget {
    pub const DEFAULT_MAX_STATES: usize = 5_000_000;

    pub fn new(max_states: usize) -> Self {
        ExpansionBudget { max_states }
    }

    fn check(&self, step: usize, states: usize) -> Result<(), MatrixError> {
        if states > self.max_states {
            return Err(MatrixError::BudgetExceeded {
                step,
                states,
                max_states: self.max_states,
            });
        }
        Ok(())
    }
}

/// Number of aggregated states above which a step runs on the thread pool.
const PARALLEL_THRESHOLD: usize = 256;

/// A formal sum of states with exact multiplicities, kept aggregated:
/// equal states are always merged and zero multiplicities dropped.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightedSum {
    terms: BTreeMap<MatrixState, Rational>,
}

impl WeightedSum {
    /// The sum consisting of the empty state with multiplicity one.
    pub fn starting_vector() -> Self {
        Self::from_state(MatrixState::empty())
    }

    pub fn zero() -> Self {
        WeightedSum::default()
    }

    pub fn from_state(state: MatrixState) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(state, Rational::one());
        WeightedSum { terms }
    }

    pub fn add_term(&mut self, state: MatrixState, mult: Rational) {
        if mult.is_zero() {
            return;
        }
        let entry = self.terms.entry(state);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(mult);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &mult;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Aggregated state count (not the raw term count).
    pub fn num_states(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (lexicographic) state order.
    pub fn terms(&self) -> impl Iterator<Item = (&MatrixState, &Rational)> {
        self.terms.iter()
    }

    pub fn multiplicity(&self, state: &MatrixState) -> Rational {
        self.terms.get(state).cloned().unwrap_or_else(Rational::zero)
    }

    /// Sum of all multiplicities; under `A + B` expansion this equals the
    /// raw branch count, which grows factorially while the aggregated
    /// state count stays at `2^(n-1)`.
    pub fn total_multiplicity(&self) -> Rational {
        self.terms.values().sum()
    }

    /// Applies one letter to every term and re-aggregates.
    pub fn apply_letter(&self, letter: Letter) -> WeightedSum {
        if self.terms.len() >= PARALLEL_THRESHOLD {
            self.step_parallel(|state| expand_one(state, letter))
        } else {
            self.step_serial(|state| expand_one(state, letter))
        }
    }

    /// Applies the sum of the first two operators to every term.
    pub fn apply_a_plus_b(&self) -> WeightedSum {
        if self.terms.len() >= PARALLEL_THRESHOLD {
            self.step_parallel(expand_a_plus_b)
        } else {
            self.step_serial(expand_a_plus_b)
        }
    }

    fn step_serial<F>(&self, expand: F) -> WeightedSum
    where
        F: Fn(&MatrixState) -> Vec<MatrixState>,
    {
        let mut out = WeightedSum::zero();
        for (state, mult) in &self.terms {
            for produced in expand(state) {
                out.add_term(produced, mult.clone());
            }
        }
        out
    }

    /// Same contraction as [`Self::step_serial`], fanned out over the rayon
    /// pool. Merging maps by exact addition is associative and commutative,
    /// and the result lands in a canonically ordered map, so the outcome is
    /// bit-identical to the serial step regardless of scheduling.
    fn step_parallel<F>(&self, expand: F) -> WeightedSum
    where
        F: Fn(&MatrixState) -> Vec<MatrixState> + Sync,
    {
        let merged = self
            .terms
            .par_iter()
            .fold(WeightedSum::zero, |mut acc, (state, mult)| {
                for produced in expand(state) {
                    acc.add_term(produced, mult.clone());
                }
                acc
            })
            .reduce(WeightedSum::zero, |mut a, b| {
                for (state, mult) in b.terms {
                    a.add_term(state, mult);
                }
                a
            });
        merged
    }

    /// Contracts the sum to a number: the multiplicity-weighted total of
    /// [`upsilon`] over all states.
    pub fn upsilon(&self, weights: &WeightSeq) -> Result<Rational, MatrixError> {
        let mut acc = Rational::zero();
        for (state, mult) in &self.terms {
            let w = upsilon(state, weights)?;
            if !w.is_zero() {
                acc += &(mult * &w);
            }
        }
        Ok(acc)
    }
}

impl fmt::Display for WeightedSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (state, mult)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if mult.is_one() {
                write!(f, "{}", state)?;
            } else {
                write!(f, "{}*{}", mult, state)?;
            }
        }
        Ok(())
    }
}

fn expand_one(state: &MatrixState, letter: Letter) -> Vec<MatrixState> {
    match letter {
        Letter::A => apply_a_raw(state),
        Letter::B => apply_b_raw(state),
        Letter::S(col) => vec![apply_s(state, col)],
    }
}

fn expand_a_plus_b(state: &MatrixState) -> Vec<MatrixState> {
    let mut out = apply_a_raw(state);
    out.extend(apply_b_raw(state));
    out
}

/// `(A + B)^n` applied to the empty state, aggregated after every step.
pub fn expand_power(n: usize, budget: &ExpansionBudget) -> Result<WeightedSum, MatrixError> {
    let mut sum = WeightedSum::starting_vector();
    for step in 1..=n {
        sum = sum.apply_a_plus_b();
        budget.check(step, sum.num_states())?;
    }
    Ok(sum)
}

/// Applies a word of letters to the empty state. The *rightmost* letter
/// acts first, matching operator-composition order: `word = [A, B]` means
/// `A(B([]))`.
pub fn expand_word(word: &[Letter], budget: &ExpansionBudget) -> Result<WeightedSum, MatrixError> {
    let mut sum = WeightedSum::starting_vector();
    for (step, letter) in word.iter().rev().enumerate() {
        sum = sum.apply_letter(*letter);
        budget.check(step + 1, sum.num_states())?;
    }
    Ok(sum)
}

/// The weighted count `upsilon((A + B)^n [])`.
pub fn omega_n(
    n: usize,
    weights: &WeightSeq,
    budget: &ExpansionBudget,
) -> Result<Rational, MatrixError> {
    expand_power(n, budget)?.upsilon(weights)
}

/// The counts for `n = 0 ..= n_max`, sharing one expansion pass.
pub fn omega_sequence(
    n_max: usize,
    weights: &WeightSeq,
    budget: &ExpansionBudget,
) -> Result<Vec<Rational>, MatrixError> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut sum = WeightedSum::starting_vector();
    out.push(sum.upsilon(weights)?);
    for step in 1..=n_max {
        sum = sum.apply_a_plus_b();
        budget.check(step, sum.num_states())?;
        out.push(sum.upsilon(weights)?);
    }
    Ok(out)
}
