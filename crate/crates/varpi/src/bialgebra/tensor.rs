//! The tensor algebra over the paired basis space, the operators acting on
//! it, and the evaluation functionals.
//!
//! A [`VBasis`] pairs one element of each index monoid; pure tensors are
//! finite sequences of such factors, and a [`TensorElem`] is a canonical
//! rational combination of pure tensors (the empty sequence is the rank-0
//! scalar). The three operators mirror the matrix-state operators exactly
//! under the correspondence `factor (g1, 1/q) <-> column (s = g1, k = q)`:
//!
//! * [`cal_a`] — inserts a fresh factor per position plus an append case,
//! * [`cal_b`] — raises one factor per position,
//! * [`cal_s`] — prepends a fixed factor,
//!
//! each built from the three verified blocks [`block_increment`],
//! [`block_insert`], [`block_raise`].
//!
//! Two functionals contract a tensor element to a number: [`seminorm_t`]
//! takes absolute values of coefficients (the city-block extension), while
//! [`weight_functional`] is fully linear and matches the matrix-side
//! evaluation functional. They agree on nonnegative combinations.

use std::collections::BTreeMap;
use std::fmt;

use crate::bialgebra::monoid::{G1Elem, G2Elem};
use crate::matrix::{Column, MatrixState, MatrixError, WeightSeq, WeightedSum};
use crate::rational::Rational;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum TensorError {
    #[error("factor ({g1}, inf) has no matrix counterpart (infinite denominator)")]
    InfiniteDenominator { g1: u64 },
    #[error(transparent)]
    Weight(#[from] MatrixError),
}

/// One tensor factor: a pair of index-monoid elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VBasis {
    pub g1: G1Elem,
    pub g2: G2Elem,
}

impl VBasis {
    pub fn new(g1: G1Elem, g2: G2Elem) -> Self {
        VBasis { g1, g2 }
    }

    /// The factor corresponding to the matrix column `(s, k)`.
    pub fn from_column(c: Column) -> Self {
        VBasis {
            g1: G1Elem(u64::from(c.s)),
            g2: G2Elem::unit_fraction(u64::from(c.k)),
        }
    }

    /// The matrix column for this factor, if the denominator is finite.
    pub fn to_column(&self) -> Result<Column, TensorError> {
        let q = self
            .g2
            .denom()
            .ok_or(TensorError::InfiniteDenominator { g1: self.g1.0 })?;
        Ok(Column {
            s: self.g1.0 as u32,
            k: q as u32,
        })
    }
}

impl fmt::Display for VBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(e1[{}], e2[{}])", self.g1, self.g2)
    }
}

/// Bumps the second index: `(g1, g2) -> (g1, g2 . 1)`. Applied to every
/// factor left of the position an operator acts at.
pub fn block_increment(v: &VBasis) -> VBasis {
    VBasis {
        g1: v.g1,
        g2: v.g2.star(&G2Elem::unit_fraction(1)),
    }
}

/// Splits a factor in two: `(g1, g2) -> (0, g2 . 1) (x) (g1, g2)`. The
/// insertion case of the first operator.
pub fn block_insert(v: &VBasis) -> (VBasis, VBasis) {
    (
        VBasis {
            g1: G1Elem(0),
            g2: v.g2.star(&G2Elem::unit_fraction(1)),
        },
        *v,
    )
}

/// Raises both indices: `(g1, g2) -> (g1 + 1, g2 . 1)`. The action of the
/// second operator at its position.
pub fn block_raise(v: &VBasis) -> VBasis {
    VBasis {
        g1: G1Elem(v.g1.0 + 1),
        g2: v.g2.star(&G2Elem::unit_fraction(1)),
    }
}

/// A canonical rational combination of pure tensors; the empty factor
/// sequence is the rank-0 scalar.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElem {
    terms: BTreeMap<Vec<VBasis>, Rational>,
}

impl TensorElem {
    pub fn zero() -> Self {
        TensorElem::default()
    }

    /// The scalar `c` in rank 0.
    pub fn scalar(c: Rational) -> Self {
        let mut t = TensorElem::default();
        t.add_term(Vec::new(), c);
        t
    }

    /// The algebra unit: the scalar 1.
    pub fn one() -> Self {
        Self::scalar(Rational::one())
    }

    /// The pure tensor with the given factors and coefficient 1.
    pub fn pure(factors: Vec<VBasis>) -> Self {
        let mut t = TensorElem::default();
        t.add_term(factors, Rational::one());
        t
    }

    pub fn from_terms<I: IntoIterator<Item = (Vec<VBasis>, Rational)>>(iter: I) -> Self {
        let mut t = TensorElem::default();
        for (factors, c) in iter {
            t.add_term(factors, c);
        }
        t
    }

    pub fn add_term(&mut self, factors: Vec<VBasis>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(factors) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The rank-0 coefficient.
    pub fn scalar_part(&self) -> Rational {
        self.terms
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn coeff(&self, factors: &[VBasis]) -> Rational {
        self.terms
            .get(factors)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<VBasis>, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (factors, c) in &other.terms {
            out.add_term(factors.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        TensorElem {
            terms: self
                .terms
                .iter()
                .map(|(fs, a)| (fs.clone(), a * c))
                .collect(),
        }
    }

    /// The tensor-algebra product: concatenation of factor sequences,
    /// bilinear in coefficients.
    pub fn tensor_mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (fs, a) in &self.terms {
            for (gs, b) in &other.terms {
                let mut cat = Vec::with_capacity(fs.len() + gs.len());
                cat.extend_from_slice(fs);
                cat.extend_from_slice(gs);
                out.add_term(cat, a * b);
            }
        }
        out
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (factors, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if factors.is_empty() {
                write!(f, "{}", c)?;
                continue;
            }
            if !c.is_one() {
                write!(f, "{}*", c)?;
            }
            for (j, v) in factors.iter().enumerate() {
                if j > 0 {
                    write!(f, "(x)")?;
                }
                write!(f, "{}", v)?;
            }
        }
        Ok(())
    }
}

fn map_pure<F>(v: &TensorElem, per_pure: F) -> TensorElem
where
    F: Fn(&[VBasis]) -> Vec<(Vec<VBasis>, Rational)>,
{
    let mut out = TensorElem::zero();
    for (factors, coeff) in v.terms() {
        for (produced, scale) in per_pure(factors) {
            out.add_term(produced, coeff * &scale);
        }
    }
    out
}

/// The first operator on the tensor algebra: on a rank-`k` pure tensor,
/// `k` insertion terms (the insert block at position `j`, increment blocks
/// to its left) plus one append term (all factors incremented, the factor
/// `(0, 1)` appended); on the scalar only the append case survives.
pub fn cal_a(v: &TensorElem) -> TensorElem {
    map_pure(v, |factors| {
        let k = factors.len();
        let mut out = Vec::with_capacity(k + 1);
        for j in 0..k {
            let mut produced = Vec::with_capacity(k + 1);
            for f in &factors[..j] {
                produced.push(block_increment(f));
            }
            let (fresh, kept) = block_insert(&factors[j]);
            produced.push(fresh);
            produced.push(kept);
            produced.extend_from_slice(&factors[j + 1..]);
            out.push((produced, Rational::one()));
        }
        let mut appended: Vec<VBasis> = factors.iter().map(block_increment).collect();
        appended.push(VBasis::new(G1Elem(0), G2Elem::unit_fraction(1)));
        out.push((appended, Rational::one()));
        out
    })
}

/// The second operator on the tensor algebra: the raise block at each
/// position, increment blocks to its left; the scalar maps to zero.
pub fn cal_b(v: &TensorElem) -> TensorElem {
    map_pure(v, |factors| {
        let k = factors.len();
        let mut out = Vec::with_capacity(k);
        for j in 0..k {
            let mut produced = Vec::with_capacity(k);
            for f in &factors[..j] {
                produced.push(block_increment(f));
            }
            produced.push(block_raise(&factors[j]));
            produced.extend_from_slice(&factors[j + 1..]);
            out.push((produced, Rational::one()));
        }
        out
    })
}

/// The seeding operator: prepends the factor `(kk, 1/l)`; `l >= 1`.
pub fn cal_s(kk: u64, l: u64, v: &TensorElem) -> TensorElem {
    let factor = VBasis::new(G1Elem(kk), G2Elem::unit_fraction(l));
    TensorElem::pure(vec![factor]).tensor_mul(v)
}

/// Weight of one factor: `b(g1) * g2`, i.e. `b(g1) / q` for finite `g2`
/// and `0` for the infinite element.
pub fn factor_weight(v: &VBasis, w: &WeightSeq) -> Result<Rational, MatrixError> {
    match v.g2.denom() {
        None => Ok(Rational::zero()),
        Some(q) => {
            let b = w.weight(v.g1.0 as u32)?;
            Ok(b / Rational::from_int(q as i64))
        }
    }
}

fn pure_weight(factors: &[VBasis], w: &WeightSeq) -> Result<Rational, MatrixError> {
    let mut acc = Rational::one();
    for f in factors {
        let fw = factor_weight(f, w)?;
        if fw.is_zero() {
            return Ok(Rational::zero());
        }
        acc *= &fw;
    }
    Ok(acc)
}

/// City-block seminorm on the tensor algebra: absolute values of
/// coefficients, multiplicative factor weights per pure tensor.
pub fn seminorm_t(v: &TensorElem, w: &WeightSeq) -> Result<Rational, MatrixError> {
    let mut acc = Rational::zero();
    for (factors, c) in v.terms() {
        let fw = pure_weight(factors, w)?;
        if !fw.is_zero() {
            acc += &(c.abs() * fw);
        }
    }
    Ok(acc)
}

/// Fully linear evaluation functional: same factor weights, signed
/// coefficients. Coincides with [`seminorm_t`] on nonnegative combinations
/// and with the matrix-side functional under the colum correspondence.
pub fn weight_functional(v: &TensorElem, w: &WeightSeq) -> Result<Rational, MatrixError> {
    let mut acc = Rational::zero();
    for (factors, c) in v.terms() {
        let fw = pure_weight(factors, w)?;
        if !fw.is_zero() {
            acc += &(c * &fw);
        }
    }
    Ok(acc)
}

/// Seminorm on a free vector over the first monoid: `sum |a_g| b(g)`.
pub fn seminorm_g1(
    v: &crate::bialgebra::freevec::FreeVec<G1Elem>,
    w: &WeightSeq,
) -> Result<Rational, MatrixError> {
    let mut acc = Rational::zero();
    for (g, c) in v.terms() {
        acc += &(c.abs() * w.weight(g.0 as u32)?);
    }
    Ok(acc)
}

/// Seminorm on a free vector over the second monoid: `sum |b_g| / q` over
/// finite elements; the infinite element contributes nothing.
pub fn seminorm_g2(v: &crate::bialgebra::freevec::FreeVec<G2Elem>) -> Rational {
    let mut acc = Rational::zero();
    for (g, c) in v.terms() {
        if let Some(q) = g.denom() {
            acc += &(c.abs() / Rational::from_int(q as i64));
        }
    }
    acc
}

/// The matrix state of a pure tensor; every factor needs a finite
/// denominator.
pub fn to_matrix(factors: &[VBasis]) -> Result<MatrixState, TensorError> {
    let cols = factors
        .iter()
        .map(VBasis::to_column)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(MatrixState::from_columns(cols))
}

/// The pure tensor (coefficient 1) of a matrix state; the empty state maps
/// to the scalar 1.
pub fn from_matrix(m: &MatrixState) -> TensorElem {
    TensorElem::pure(m.columns().iter().map(|&c| VBasis::from_column(c)).collect())
}

/// Converts a whole tensor element to an aggregated weighted sum of
/// states; fails on infinite denominators.
pub fn tensor_to_weighted_sum(v: &TensorElem) -> Result<WeightedSum, TensorError> {
    let mut sum = WeightedSum::zero();
    for (factors, c) in v.terms() {
        sum.add_term(to_matrix(factors)?, c.clone());
    }
    Ok(sum)
}

/// Converts a weighted sum of states to a tensor element.
pub fn weighted_sum_to_tensor(sum: &WeightedSum) -> TensorElem {
    let mut out = TensorElem::zero();
    for (state, mult) in sum.terms() {
        out.add_term(
            state.columns().iter().map(|&c| VBasis::from_column(c)).collect(),
            mult.clone(),
        );
    }
    out
}
