//! The two index monoids and the monoid abstraction shared by the free
//! vector spaces.
//!
//! * [`G1Elem`] — nonnegative integers under addition.
//! * [`G2Elem`] — unit fractions `1/q` together with an infinite element,
//!   under harmonic addition: `1/p . 1/q = 1/(p + q)`, with infinity as the
//!   unit. Representing an element by its denominator (infinity as 0) makes
//!   the operation plain integer addition.
//!
//! Products of monoids are monoids componentwise; the blanket tuple
//! implementation below is what lets one coproduct/counit code path serve
//! single legs, pairs of legs, and nested legs alike.

use std::fmt;

/// A commutative monoid used as the basis index of a free vector space.
pub trait Monoid: Clone + Ord + fmt::Display {
    fn combine(&self, other: &Self) -> Self;
    fn unit() -> Self;
}

/// Nonnegative integer under addition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct G1Elem(pub u64);

impl G1Elem {
    pub fn value(&self) -> u64 {
        self.0
    }
}

impl Monoid for G1Elem {
    fn combine(&self, other: &Self) -> Self {
        G1Elem(self.0 + other.0)
    }

    fn unit() -> Self {
        G1Elem(0)
    }
}

impl fmt::Display for G1Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A unit fraction or the infinite unit, stored as its denominator with
/// `0` encoding infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct G2Elem {
    denom: u64,
}

impl G2Elem {
    /// The infinite element, the unit of the operation.
    pub fn infinity() -> Self {
        G2Elem { denom: 0 }
    }

    /// The fraction `1/q`; `q` must be at least 1.
    pub fn unit_fraction(q: u64) -> Self {
        assert!(q >= 1, "a unit fraction needs a positive denominator");
        G2Elem { denom: q }
    }

    pub fn is_infinite(&self) -> bool {
        self.denom == 0
    }

    /// The denominator `q` of a finite element, or `None` for infinity.
    pub fn denom(&self) -> Option<u64> {
        if self.denom == 0 {
            None
        } else {
            Some(self.denom)
        }
    }

    /// Harmonic addition: `1/p . 1/q = 1/(p + q)`, infinity neutral.
    pub fn star(&self, other: &Self) -> Self {
        G2Elem {
            denom: self.denom + other.denom,
        }
    }
}

impl Monoid for G2Elem {
    fn combine(&self, other: &Self) -> Self {
        self.star(other)
    }

    fn unit() -> Self {
        G2Elem::infinity()
    }
}

impl fmt::Display for G2Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.denom {
            0 => write!(f, "inf"),
            1 => write!(f, "1"),
            q => write!(f, "1/{}", q),
        }
    }
}

/// Componentwise product of two monoids; tensor legs of coproducts live
/// over `Pair`s, and nesting `Pair`s gives higher legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair<A, B>(pub A, pub B);

impl<A: Monoid, B: Monoid> Monoid for Pair<A, B> {
    fn combine(&self, other: &Self) -> Self {
        Pair(self.0.combine(&other.0), self.1.combine(&other.1))
    }

    fn unit() -> Self {
        Pair(A::unit(), B::unit())
    }
}

impl<A: fmt::Display, B: fmt::Display> fmt::Display for Pair<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}
