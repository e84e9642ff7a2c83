//! Named models: generating functions with known closed forms, each paired
//! with its field series.
//!
//! Every entry provides both columns of the dictionary:
//!
//! * `F` — the generating function fed to the pipeline, and
//! * `f` — the field whose double integral exponentiates to `F`.
//!
//! The two columns are consistent by construction, and the test suite pins
//! the weighted-count sequences each model produces.

use std::fmt;
use std::str::FromStr;

use crate::rational::{factorial, Rational};
use crate::series::{phi_from_f, TruncatedSeries};

/// A model from the built-in catalog.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CatalogModel {
    /// Field `f = x e^x`; counts 1, 0, 1/2, 2/3, 3/2, 62/15, ...
    Base,
    /// `F = (1 - sqrt(1 - 4x)) / (2x)`; counts are `n! * C_n`.
    Catalan,
    /// `F = exp(e^x - 1)`; counts are the set-partition numbers.
    Bell,
    /// `F = (1 + x)^alpha`; counts are falling factorials of `alpha`.
    Binomial(Rational),
    /// `F = exp(sin x)`; a signed, eventually oscillating count sequence.
    ExpSin,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown model name {0:?} (expected base, catalan, bell, binomial, expsin)")]
    UnknownName(String),
    #[error("model `binomial` needs an alpha parameter")]
    MissingAlpha,
    #[error("model {0} takes no alpha parameter")]
    UnexpectedAlpha(&'static str),
}

impl CatalogModel {
    /// Resolves a CLI-style name plus optional `alpha` into a model.
    pub fn resolve(name: &str, alpha: Option<Rational>) -> Result<Self, CatalogError> {
        let plain = |model: CatalogModel, tag: &'static str| match alpha {
            Some(_) => Err(CatalogError::UnexpectedAlpha(tag)),
            None => Ok(model),
        };
        match name {
            "base" => plain(CatalogModel::Base, "base"),
            "catalan" => plain(CatalogModel::Catalan, "catalan"),
            "bell" => plain(CatalogModel::Bell, "bell"),
            "expsin" => plain(CatalogModel::ExpSin, "expsin"),
            "binomial" => alpha
                .map(CatalogModel::Binomial)
                .ok_or(CatalogError::MissingAlpha),
            other => Err(CatalogError::UnknownName(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CatalogModel::Base => "base",
            CatalogModel::Catalan => "catalan",
            CatalogModel::Bell => "bell",
            CatalogModel::Binomial(_) => "binomial",
            CatalogModel::ExpSin => "expsin",
        }
    }

    /// The field series `f` truncated at `order`.
    pub fn field(&self, order: usize) -> TruncatedSeries {
        match self {
            // f = x e^x: coefficient 1/(k-1)! at x^k
            CatalogModel::Base => {
                let mut c = vec![Rational::zero(); order + 1];
                for (k, ck) in c.iter_mut().enumerate().skip(1) {
                    *ck = factorial(k - 1).recip();
                }
                TruncatedSeries::from_coeffs(c)
            }
            // coefficient (2k+1)! / (k!)^2 at x^k
            CatalogModel::Catalan => {
                let c = (0..=order)
                    .map(|k| {
                        let kf = factorial(k);
                        factorial(2 * k + 1) / (&kf * &kf)
                    })
                    .collect();
                TruncatedSeries::from_coeffs(c)
            }
            // f = e^x (x + 1)
            CatalogModel::Bell => {
                let ex = TruncatedSeries::exp_x(order);
                let shifted = ex.mul_by_x().truncated(order).expect("order bookkeeping");
                ex.add(&shifted).expect("equal orders")
            }
            // f = alpha (1 + x)^(-2): coefficient alpha (-1)^k (k+1) at x^k
            CatalogModel::Binomial(alpha) => {
                let c = (0..=order)
                    .map(|k| {
                        let sign = if k % 2 == 0 { 1 } else { -1 };
                        alpha * &Rational::from_int(sign * (k as i64 + 1))
                    })
                    .collect();
                TruncatedSeries::from_coeffs(c)
            }
            // f = cos x - x sin x
            CatalogModel::ExpSin => {
                let x_sin = TruncatedSeries::sin_x(order).mul_by_x();
                TruncatedSeries::cos_x(order)
                    .sub(&x_sin.truncated(order).expect("order bookkeeping"))
                    .expect("equal orders")
            }
        }
    }

    /// The generating function `F` truncated at `order`; `F(0) = 1` for
    /// every catalog entry.
    pub fn generating_function(&self, order: usize) -> TruncatedSeries {
        match self {
            // no independent closed form: defined through its field
            CatalogModel::Base => {
                phi_from_f(&self.field(order), order).expect("catalog field is consistent")
            }
            CatalogModel::Catalan => catalan_gf(order),
            CatalogModel::Bell => {
                let em1 = TruncatedSeries::exp_x(order)
                    .sub(&TruncatedSeries::one(order))
                    .expect("equal orders");
                em1.exp().expect("constant term is 0")
            }
            CatalogModel::Binomial(alpha) => {
                let mut c = vec![Rational::zero(); order + 1];
                c[0] = Rational::one();
                if order >= 1 {
                    c[1] = Rational::one();
                }
                TruncatedSeries::from_coeffs(c)
                    .pow_alpha(alpha)
                    .expect("constant term is 1")
            }
            CatalogModel::ExpSin => TruncatedSeries::sin_x(order)
                .exp()
                .expect("sin has no constant term"),
        }
    }
}

/// `(1 - sqrt(1 - 4x)) / (2x)`, the ordinary generating function of the
/// Catalan numbers.
fn catalan_gf(order: usize) -> TruncatedSeries {
    // compute one order higher so the division by x lands on `order`
    let mut radicand = TruncatedSeries::one(order + 1);
    let minus_4x = TruncatedSeries::monomial(Rational::from_int(-4), 1, order + 1)
        .expect("order + 1 >= 1");
    radicand = radicand.add(&minus_4x).expect("equal orders");
    let root = radicand.sqrt().expect("constant term is 1");
    TruncatedSeries::one(order + 1)
        .sub(&root)
        .expect("equal orders")
        .divide_by_x()
        .expect("valuation >= 1")
        .scale(&Rational::new(1, 2))
}

impl fmt::Display for CatalogModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogModel::Binomial(alpha) => write!(f, "binomial(alpha = {})", alpha),
            other => write!(f, "{}", other.name()),
        }
    }
}

impl FromStr for CatalogModel {
    type Err = CatalogError;

    /// Parses `base`, `catalan`, `bell`, `expsin`, or `binomial:<alpha>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(alpha) = s.strip_prefix("binomial:") {
            let alpha = alpha
                .parse()
                .map_err(|_| CatalogError::UnknownName(s.to_string()))?;
            return Ok(CatalogModel::Binomial(alpha));
        }
        CatalogModel::resolve(s, None)
    }
}
