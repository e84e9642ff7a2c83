//! Free vector spaces over a monoid, with their bialgebra structure.
//!
//! A [`FreeVec`] is a finite rational-linear combination of basis vectors
//! `e_g` indexed by monoid elements, kept canonical (no zero coefficients).
//! The algebra structure convolves along the monoid operation,
//! `e_p * e_q = e_{p.q}`; the coalgebra structure is group-like,
//! `delta(e_g) = e_g (x) e_g` and `eps(e_g) = 1`, both extended linearly.
//!
//! Tensor legs are represented by free vectors over product monoids, so
//! `delta` maps `FreeVec<M>` to `FreeVec<(M, M)>` and iterated coproducts
//! nest tuples; the product monoid's convolution is automatically the
//! legwise product, which is what the bialgebra compatibility law needs.

use std::collections::BTreeMap;
use std::fmt;

use crate::bialgebra::monoid::{Monoid, Pair};
use crate::rational::Rational;

/// A canonical finite linear combination of monoid-indexed basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeVec<M: Monoid> {
    terms: BTreeMap<M, Rational>,
}

impl<M: Monoid> Default for FreeVec<M> {
    fn default() -> Self {
        FreeVec {
            terms: BTreeMap::new(),
        }
    }
}

impl<M: Monoid> FreeVec<M> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis vector `e_g`.
    pub fn basis(g: M) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(g, Rational::one());
        FreeVec { terms }
    }

    /// The algebra unit `eta(1) = e_{unit}`.
    pub fn unit() -> Self {
        Self::basis(M::unit())
    }

    pub fn from_terms<I: IntoIterator<Item = (M, Rational)>>(iter: I) -> Self {
        let mut v = Self::zero();
        for (g, c) in iter {
            v.add_term(g, c);
        }
        v
    }

    pub fn add_term(&mut self, g: M, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(g) {
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

    pub fn coeff(&self, g: &M) -> Rational {
        self.terms.get(g).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&M, &Rational)> {
        self.terms.iter()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (g, c) in &other.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FreeVec {
            terms: self
                .terms
                .iter()
                .map(|(g, a)| (g.clone(), a * c))
                .collect(),
        }
    }

    /// The algebra product `mu`: bilinear convolution along the monoid.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                out.add_term(g.combine(h), a * b);
            }
        }
        out
    }

    /// The coproduct `delta`: group-like on the basis, linear overall.
    pub fn delta(&self) -> FreeVec<Pair<M, M>> {
        FreeVec {
            terms: self
                .terms
                .iter()
                .map(|(g, c)| (Pair(g.clone(), g.clone()), c.clone()))
                .collect(),
        }
    }

    /// The counit `eps`: sum of coefficients.
    pub fn counit(&self) -> Rational {
        self.terms.values().sum()
    }

    /// Relabels basis vectors through `f` (which must be injective on the
    /// support for the result to stay faithful; linear in general).
    pub fn map_basis<N: Monoid>(&self, f: impl Fn(&M) -> N) -> FreeVec<N> {
        let mut out = FreeVec::zero();
        for (g, c) in &self.terms {
            out.add_term(f(g), c.clone());
        }
        out
    }
}

impl<M: Monoid> fmt::Display for FreeVec<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (g, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "e[{}]", g)?;
            } else {
                write!(f, "{}*e[{}]", c, g)?;
            }
        }
        Ok(())
    }
}
