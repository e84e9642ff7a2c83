//! Truncated formal power series over exact rationals.
//!
//! A [`TruncatedSeries`] of order `N` stores the coefficients of
//! `x^0 .. x^N` and nothing else. Truncation is always explicit: binary
//! operations demand equal orders, and each operation documents the order of
//! its result. Orders never change silently.
//!
//! The module also carries the two maps between field data `f` and the
//! generating function `Phi`:
//!
//! * [`phi_from_f`] builds `Phi = exp( int_0^x dt/t int_0^t f(s) ds )`,
//! * [`f_from_phi`] recovers `f` from a series with constant term 1,
//!
//! together with the preprocessing steps [`normalize_f`] and [`shift_f`]
//! that adapt an arbitrary generating function `F` to the `Phi(0) = 1`
//! convention.

use std::fmt;

use crate::rational::{factorial, Rational};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("order mismatch: left has order {left}, right has order {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("{op} requires constant term {expected}, found {found}")]
    BadConstantTerm {
        op: &'static str,
        expected: &'static str,
        found: Rational,
    },
    #[error("{op} needs order >= {needed}, series has order {order}")]
    OrderTooSmall {
        op: &'static str,
        needed: usize,
        order: usize,
    },
    #[error("coefficient index {index} exceeds series order {order}")]
    IndexBeyondOrder { index: usize, order: usize },
    #[error("initial value F(0) is zero; use the shift construction instead")]
    ZeroInitialValue,
}

type Result<T> = std::result::Result<T, SeriesError>;

/// Formal power series truncated at an explicit order.
///
/// Invariant: `coeffs.len() == order + 1`; the order is carried by the
/// length and is part of the value (two series of different orders are
/// never equal and never combine implicitly).
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Series from raw coefficients `c_0 .. c_N`; the order is `N`.
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least a constant term");
        TruncatedSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Rational::one(), order)
    }

    pub fn constant(c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The monomial `c * x^power`; requires `power <= order`.
    pub fn monomial(c: Rational, power: usize, order: usize) -> Result<Self> {
        if power > order {
            return Err(SeriesError::IndexBeyondOrder {
                index: power,
                order,
            });
        }
        let mut s = Self::zero(order);
        s.coeffs[power] = c;
        Ok(s)
    }

    /// `exp(x)` truncated at `order`.
    pub fn exp_x(order: usize) -> Self {
        let coeffs = (0..=order).map(|k| factorial(k).recip()).collect();
        TruncatedSeries { coeffs }
    }

    /// `sin(x)` truncated at `order`.
    pub fn sin_x(order: usize) -> Self {
        let mut s = Self::zero(order);
        for k in (1..=order).step_by(2) {
            let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
            s.coeffs[k] = Rational::from_int(sign) / factorial(k);
        }
        s
    }

    /// `cos(x)` truncated at `order`.
    pub fn cos_x(order: usize) -> Self {
        let mut s = Self::zero(order);
        for k in (0..=order).step_by(2) {
            let sign = if (k / 2) % 2 == 0 { 1 } else { -1 };
            s.coeffs[k] = Rational::from_int(sign) / factorial(k);
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; `k` must not exceed the order.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Lowest power with a nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Explicit truncation to a lower (or equal) order.
    pub fn truncated(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(SeriesError::OrderTooSmall {
                op: "truncate",
                needed: order,
                order: self.order(),
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[..=order].to_vec(),
        })
    }

    fn check_orders(&self, rhs: &Self) -> Result<()> {
        if self.order() != rhs.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: rhs.order(),
            });
        }
        Ok(())
    }

    /// Coefficientwise sum; both operands must share one order.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check_orders(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check_orders(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    pub fn neg(&self) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product at the shared order.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check_orders(rhs)?;
        let n = self.order();
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > n {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        Ok(TruncatedSeries { coeffs })
    }

    /// Quotient at the shared order; the divisor needs a nonzero constant term.
    pub fn div(&self, rhs: &Self) -> Result<Self> {
        self.check_orders(rhs)?;
        if rhs.constant_term().is_zero() {
            return Err(SeriesError::BadConstantTerm {
                op: "series division",
                expected: "nonzero",
                found: rhs.constant_term().clone(),
            });
        }
        let n = self.order();
        let inv0 = rhs.constant_term().recip();
        let mut q = vec![Rational::zero(); n + 1];
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for (j, qj) in q.iter().take(k).enumerate() {
                acc -= &(qj * &rhs.coeffs[k - j]);
            }
            q[k] = acc * &inv0;
        }
        Ok(TruncatedSeries { coeffs: q })
    }

    /// Termwise derivative; order drops from `N` to `N - 1`.
    pub fn derive(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(SeriesError::OrderTooSmall {
                op: "derivative",
                needed: 1,
                order: 0,
            });
        }
        let coeffs = (1..=self.order())
            .map(|k| &self.coeffs[k] * &Rational::from_int(k as i64))
            .collect();
        Ok(TruncatedSeries { coeffs })
    }

    /// Definite integral from 0; order rises from `N` to `N + 1` and the
    /// constant term is 0.
    pub fn integrate(&self) -> Self {
        let mut coeffs = vec![Rational::zero(); self.order() + 2];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] = c / &Rational::from_int((k + 1) as i64);
        }
        TruncatedSeries { coeffs }
    }

    /// Exact division by `x`; requires a zero constant term, order drops by 1.
    pub fn divide_by_x(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::BadConstantTerm {
                op: "division by x",
                expected: "0",
                found: self.constant_term().clone(),
            });
        }
        if self.order() == 0 {
            return Err(SeriesError::OrderTooSmall {
                op: "division by x",
                needed: 1,
                order: 0,
            });
        }
        Ok(TruncatedSeries {
            coeffs: self.coeffs[1..].to_vec(),
        })
    }

    /// Multiplication by `x`; order rises by 1.
    pub fn mul_by_x(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order() + 2);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        TruncatedSeries { coeffs }
    }

    /// `exp` of a series with zero constant term, at the same order.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::BadConstantTerm {
                op: "series exp",
                expected: "0",
                found: self.constant_term().clone(),
            });
        }
        let n = self.order();
        let mut e = vec![Rational::zero(); n + 1];
        e[0] = Rational::one();
        // e' = s' e  =>  k e_k = sum_{j=1..k} j s_j e_{k-j}
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &(&(&self.coeffs[j] * &Rational::from_int(j as i64)) * &e[k - j]);
                }
            }
            e[k] = acc / Rational::from_int(k as i64);
        }
        Ok(TruncatedSeries { coeffs: e })
    }

    /// `log` of a series with constant term 1, at the same order.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::BadConstantTerm {
                op: "series log",
                expected: "1",
                found: self.constant_term().clone(),
            });
        }
        let n = self.order();
        let mut l = vec![Rational::zero(); n + 1];
        // s l' = s'  =>  k l_k = k s_k - sum_{j=1..k-1} j l_j s_{k-j}
        for k in 1..=n {
            let mut acc = &self.coeffs[k] * &Rational::from_int(k as i64);
            for (j, lj) in l.iter().enumerate().take(k).skip(1) {
                if !lj.is_zero() && !self.coeffs[k - j].is_zero() {
                    acc -= &(&(lj * &Rational::from_int(j as i64)) * &self.coeffs[k - j]);
                }
            }
            l[k] = acc / Rational::from_int(k as i64);
        }
        Ok(TruncatedSeries { coeffs: l })
    }

    /// `self^alpha` via `exp(alpha * log self)`; needs constant term 1.
    pub fn pow_alpha(&self, alpha: &Rational) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::BadConstantTerm {
                op: "series power",
                expected: "1",
                found: self.constant_term().clone(),
            });
        }
        self.log()?.scale(alpha).exp()
    }

    /// Square root (`alpha = 1/2`); needs constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        self.pow_alpha(&Rational::new(1, 2))
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*x", c)?,
                _ => write!(f, "{}*x^{}", c, k)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Generating function `Phi = exp( int_0^x dt/t int_0^t f(s) ds )` at the
/// requested order. The inner integral has valuation >= 1, so the division
/// by `t` stays inside polynomial arithmetic. `Phi(0) = 1` always.
///
/// Needs `f` known to order `order - 1` (in terms of the returned order).
pub fn phi_from_f(f: &TruncatedSeries, order: usize) -> Result<TruncatedSeries> {
    if order == 0 {
        return Ok(TruncatedSeries::one(0));
    }
    if f.order() + 1 < order {
        return Err(SeriesError::OrderTooSmall {
            op: "phi_from_f",
            needed: order - 1,
            order: f.order(),
        });
    }
    let inner = f.truncated(order - 1)?.integrate(); // order, valuation >= 1
    let ln = inner.divide_by_x()?.integrate(); // order, constant term 0
    ln.exp()
}

/// Recovers the field series `f` from `Phi` with `Phi(0) = 1`.
///
/// Two independent routes are evaluated and must agree exactly:
/// the explicit quotient `[Phi Phi' + x(Phi Phi'' - Phi'^2)] / Phi^2`
/// and the compact form `d/dx( x * (log Phi)' )`. The result has order
/// `N - 2` for an input of order `N >= 2`.
pub fn f_from_phi(phi: &TruncatedSeries) -> Result<TruncatedSeries> {
    if !phi.constant_term().is_one() {
        return Err(SeriesError::BadConstantTerm {
            op: "f_from_phi",
            expected: "1",
            found: phi.constant_term().clone(),
        });
    }
    let n = phi.order();
    if n < 2 {
        return Err(SeriesError::OrderTooSmall {
            op: "f_from_phi",
            needed: 2,
            order: n,
        });
    }
    let m = n - 2;

    // Quotient route.
    let d1 = phi.derive()?; // order n-1
    let d2 = d1.derive()?; // order n-2
    let t1 = phi.truncated(m)?.mul(&d1.truncated(m)?)?;
    let shifted = if m >= 1 {
        let p = phi.truncated(m - 1)?.mul(&d2.truncated(m - 1)?)?;
        let q = d1.truncated(m - 1)?.mul(&d1.truncated(m - 1)?)?;
        p.sub(&q)?.mul_by_x()
    } else {
        TruncatedSeries::zero(0)
    };
    let numer = t1.add(&shifted)?;
    let denom = phi.truncated(m)?.mul(&phi.truncated(m)?)?;
    let quotient = numer.div(&denom)?;

    // Connection route: f = d/dx( x * (log Phi)' ).
    let g = phi.log()?.derive()?; // order n-1
    let direct = g.mul_by_x().derive()?.truncated(m)?; // order n-1 -> m

    assert_eq!(
        quotient, direct,
        "inverse-map routes disagree; series engine is inconsistent"
    );
    Ok(quotient)
}

/// Splits `F` with `F(0) != 0` into `(F / F(0), F(0))`; the scalar scales
/// the whole output sequence downstream.
pub fn normalize_f(big_f: &TruncatedSeries) -> Result<(TruncatedSeries, Rational)> {
    let c0 = big_f.constant_term().clone();
    if c0.is_zero() {
        return Err(SeriesError::ZeroInitialValue);
    }
    Ok((big_f.scale(&c0.recip()), c0))
}

/// Splits an arbitrary `F` into `(F - F(0) + 1, F(0))`. Downstream the
/// value at index 0 must be corrected by `F(0) - 1`.
pub fn shift_f(big_f: &TruncatedSeries) -> (TruncatedSeries, Rational) {
    let c0 = big_f.constant_term().clone();
    let mut coeffs = big_f.coeffs().to_vec();
    coeffs[0] = Rational::one();
    (TruncatedSeries::from_coeffs(coeffs), c0)
}

/// `n`-th derivative at 0, i.e. `n! * c_n`.
pub fn derivatives_at_zero(phi: &TruncatedSeries, n: usize) -> Result<Rational> {
    if n > phi.order() {
        return Err(SeriesError::IndexBeyondOrder {
            index: n,
            order: phi.order(),
        });
    }
    Ok(factorial(n) * phi.coeff(n))
}
