//! Closed-form evaluation of operator words on a generating function, and
//! the right-hand-side calculators for the derivative estimates.
//!
//! For a generating function `Phi` with `Phi(0) = 1`, let
//! `g = (log Phi)'`. The two walk operators act on series as
//!
//! * `A`: multiplication, `h -> g * h`,
//! * `B`: the connection derivative, `h -> h' - g * h`,
//!
//! and the value of a word is the constant term after applying its letters
//! to `Phi`, rightmost letter first. This reproduces the matrix-pipeline
//! value of the same word exactly, and summing over all `2^n` words of
//! length `n` gives the `n`-th weighted count (the two operators sum to
//! the plain derivative).
//!
//! Each application can lower the usable truncation order by one, so
//! [`eval_word`] demands `order >= 2 * len + 8`: cheap over-provisioning
//! that keeps the final constant term exact beyond doubt.

use std::fmt;
use std::str::FromStr;

use crate::rational::{factorial, Rational};
use crate::series::{SeriesError, TruncatedSeries};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CalculusError {
    #[error("word evaluation needs order >= {needed} (2*len + 8), series has order {order}")]
    InsufficientOrder { needed: usize, order: usize },
    #[error("the generating function must have constant term 1, found {0}")]
    NotNormalized(Rational),
    #[error("invalid letter {0:?} in word (expected only 'A' and 'B')")]
    InvalidLetter(char),
    #[error("dimension must be at least 1")]
    InvalidDimension,
    #[error("the constant must be positive, got {0}")]
    InvalidConstant(Rational),
    #[error("the derivative index must be at least 1")]
    InvalidIndex,
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// One letter of an operator word on the calculus side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AbLetter {
    A,
    B,
}

/// A finite word over the two letters. The rightmost letter acts first.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct OperatorWord {
    letters: Vec<AbLetter>,
}

impl OperatorWord {
    /// The empty word (the identity operator).
    pub fn identity() -> Self {
        OperatorWord::default()
    }

    pub fn new(letters: Vec<AbLetter>) -> Self {
        OperatorWord { letters }
    }

    /// Builds `A^e1 B^e2 A^e3 ...` from run-length pairs, leftmost first.
    pub fn from_powers(pairs: &[(AbLetter, usize)]) -> Self {
        let mut letters = Vec::new();
        for &(letter, exponent) in pairs {
            letters.extend(std::iter::repeat_n(letter, exponent));
        }
        OperatorWord { letters }
    }

    /// All `2^len` words of the given length, in lexicographic order with
    /// `A < B`.
    pub fn enumerate(len: usize) -> Vec<OperatorWord> {
        assert!(len < usize::BITS as usize, "word length out of range");
        (0..(1usize << len))
            .map(|mask| {
                let letters = (0..len)
                    .map(|i| {
                        if mask & (1 << (len - 1 - i)) == 0 {
                            AbLetter::A
                        } else {
                            AbLetter::B
                        }
                    })
                    .collect();
                OperatorWord { letters }
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[AbLetter] {
        &self.letters
    }

    /// The matrix-side letters of the same word.
    pub fn to_matrix_letters(&self) -> Vec<crate::matrix::Letter> {
        self.letters
            .iter()
            .map(|l| match l {
                AbLetter::A => crate::matrix::Letter::A,
                AbLetter::B => crate::matrix::Letter::B,
            })
            .collect()
    }
}

impl FromStr for OperatorWord {
    type Err = CalculusError;

    /// Parses a string of `A`s and `B`s; the empty string is the identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .chars()
            .map(|c| match c {
                'A' => Ok(AbLetter::A),
                'B' => Ok(AbLetter::B),
                other => Err(CalculusError::InvalidLetter(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(OperatorWord { letters })
    }
}

impl fmt::Display for OperatorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "(empty)");
        }
        for l in &self.letters {
            match l {
                AbLetter::A => write!(f, "A")?,
                AbLetter::B => write!(f, "B")?,
            }
        }
        Ok(())
    }
}

/// Evaluates a word on `Phi`: applies multiplication (`A`) and connection
/// derivative (`B`) rightmost-first and returns the constant term.
///
/// Requires `Phi(0) = 1` and `order(Phi) >= 2 * len + 8`.
pub fn eval_word(word: &OperatorWord, phi: &TruncatedSeries) -> Result<Rational, CalculusError> {
    if !phi.constant_term().is_one() {
        return Err(CalculusError::NotNormalized(phi.constant_term().clone()));
    }
    let needed = 2 * word.len() + 8;
    if phi.order() < needed {
        return Err(CalculusError::InsufficientOrder {
            needed,
            order: phi.order(),
        });
    }

    let g = phi.log()?.derive()?; // order N - 1
    let mut h = phi.clone(); // order N
    for letter in word.letters.iter().rev() {
        // every step costs exactly one order, uniformly for both letters
        let target = h.order() - 1;
        let g_t = g.truncated(target)?;
        h = match letter {
            AbLetter::A => g_t.mul(&h.truncated(target)?)?,
            AbLetter::B => {
                let derived = h.derive()?; // already order - 1
                derived.sub(&g_t.mul(&h.truncated(target)?)?)?
            }
        };
    }
    Ok(h.constant_term().clone())
}

/// Sums [`eval_word`] over all `2^n` words of length `n`; by linearity
/// this equals the `n`-th derivative of `Phi` at zero.
pub fn sum_over_words(n: usize, phi: &TruncatedSeries) -> Result<Rational, CalculusError> {
    let mut total = Rational::zero();
    for word in OperatorWord::enumerate(n) {
        total += &eval_word(&word, phi)?;
    }
    Ok(total)
}

/// Validated inputs for the derivative estimates: dimension `d >= 1`,
/// constant `C > 0`, derivative index `n >= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundInput {
    d: u64,
    c: Rational,
    n: usize,
}

impl BoundInput {
    pub fn new(d: u64, c: Rational, n: usize) -> Result<Self, CalculusError> {
        if d < 1 {
            return Err(CalculusError::InvalidDimension);
        }
        if c.is_zero() || c.is_negative() {
            return Err(CalculusError::InvalidConstant(c));
        }
        if n < 1 {
            return Err(CalculusError::InvalidIndex);
        }
        Ok(BoundInput { d, c, n })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn c(&self) -> &Rational {
        &self.c
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

/// The plain right-hand side `d^n * C^(2n) * w(2n)`, where `w(2n)` is the
/// weighted count of order `2n` supplied by the caller.
pub fn bound_rhs(input: &BoundInput, omega_2n: &Rational) -> Rational {
    let d_pow = Rational::from_int(input.d as i64).pow(input.n as i32);
    let c_pow = input.c.pow(2 * input.n as i32);
    d_pow * c_pow * omega_2n
}

/// The refined right-hand side: the plain one times `(n-1)! / (2n-1)!`.
pub fn bound_rhs_refined(input: &BoundInput, omega_2n: &Rational) -> Rational {
    let ratio = factorial(input.n - 1) / factorial(2 * input.n - 1);
    bound_rhs(input, omega_2n) * ratio
}

/// Both right-hand sides with the count sourced from the default model's
/// series pipeline (weights `b(g) = g`, i.e. field `x e^x`).
pub fn bound_pair(input: &BoundInput) -> (Rational, Rational) {
    let omega_2n = base_omega(2 * input.n);
    (
        bound_rhs(input, &omega_2n),
        bound_rhs_refined(input, &omega_2n),
    )
}

/// The weighted count of the default model at index `m`, from the series
/// pipeline. The field `x e^x` has coefficient `1/(k-1)!` at `x^k`.
fn base_omega(m: usize) -> Rational {
    let order = m.max(1);
    let coeffs: Vec<Rational> = (0..=order)
        .map(|k| {
            if k == 0 {
                Rational::zero()
            } else {
                factorial(k - 1).recip()
            }
        })
        .collect();
    let f = TruncatedSeries::from_coeffs(coeffs);
    let phi = crate::series::phi_from_f(&f, order).expect("field has ample order");
    crate::series::derivatives_at_zero(&phi, m).expect("m <= order by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{expand_word, ExpansionBudget, WeightSeq};
    use crate::series::phi_from_f;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn base_phi(order: usize) -> TruncatedSeries {
        let coeffs: Vec<Rational> = (0..order)
            .map(|k| {
                if k == 0 {
                    Rational::zero()
                } else {
                    factorial(k - 1).recip()
                }
            })
            .collect();
        let f = TruncatedSeries::from_coeffs(coeffs);
        phi_from_f(&f, order).unwrap()
    }

    #[test]
    fn word_parsing_and_display() {
        let w: OperatorWord = "BA".parse().unwrap();
        assert_eq!(w.letters(), &[AbLetter::B, AbLetter::A]);
        assert_eq!(w.to_string(), "BA");
        assert_eq!("".parse::<OperatorWord>().unwrap(), OperatorWord::identity());
        assert_eq!(OperatorWord::identity().to_string(), "(empty)");
        assert!(matches!(
            "AxB".parse::<OperatorWord>(),
            Err(CalculusError::InvalidLetter('x'))
        ));
        let w = OperatorWord::from_powers(&[(AbLetter::A, 2), (AbLetter::B, 1)]);
        assert_eq!(w.to_string(), "AAB");
    }

    #[test]
    fn enumerate_orders_words_lexicographically() {
        let words = OperatorWord::enumerate(2);
        let rendered: Vec<String> = words.iter().map(|w| w.to_string()).collect();
        assert_eq!(rendered, vec!["AA", "AB", "BA", "BB"]);
        assert_eq!(OperatorWord::enumerate(0).len(), 1);
    }

    #[test]
    fn empty_word_evaluates_to_one() {
        let phi = base_phi(10);
        assert_eq!(eval_word(&OperatorWord::identity(), &phi).unwrap(), r("1"));
    }

    #[test]
    fn hand_checked_small_words() {
        let phi = base_phi(14);
        // single multiplication: g(0) * Phi(0) = 0 since g starts at x/2
        assert_eq!(eval_word(&"A".parse().unwrap(), &phi).unwrap(), r("0"));
        // BA: (g Phi)' - g (g Phi) at 0 collapses to g'(0) = 1/2
        assert_eq!(eval_word(&"BA".parse().unwrap(), &phi).unwrap(), r("1/2"));
        // any word ending in B kills the constant immediately
        assert_eq!(eval_word(&"BB".parse().unwrap(), &phi).unwrap(), r("0"));
        assert_eq!(eval_word(&"AB".parse().unwrap(), &phi).unwrap(), r("0"));
    }

    #[test]
    fn words_agree_with_the_matrix_pipeline() {
        let phi = base_phi(22);
        let budget = ExpansionBudget::default();
        let weights = WeightSeq::Base;
        for len in 0..=6 {
            for word in OperatorWord::enumerate(len) {
                let via_series = eval_word(&word, &phi).unwrap();
                let via_matrix = expand_word(&word.to_matrix_letters(), &budget)
                    .unwrap()
                    .upsilon(&weights)
                    .unwrap();
                assert_eq!(via_series, via_matrix, "word {}", word);
            }
        }
    }

    #[test]
    fn word_sums_reproduce_the_counts() {
        let phi = base_phi(24);
        let expect = [
            "1", "0", "1/2", "2/3", "3/2", "62/15", "115/9", "1549/35",
        ];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(sum_over_words(n, &phi).unwrap(), r(e), "n = {n}");
        }
    }

    #[test]
    fn preconditions_are_enforced() {
        let phi = base_phi(9);
        let w: OperatorWord = "ABAB".parse().unwrap(); // needs 16
        assert!(matches!(
            eval_word(&w, &phi),
            Err(CalculusError::InsufficientOrder {
                needed: 16,
                order: 9
            })
        ));
        let not_normalized = TruncatedSeries::from_coeffs(vec![r("2"); 11]);
        assert!(matches!(
            eval_word(&OperatorWord::identity(), &not_normalized),
            Err(CalculusError::NotNormalized(_))
        ));
    }

    #[test]
    fn bound_inputs_are_validated() {
        assert!(BoundInput::new(1, r("1"), 1).is_ok());
        assert!(matches!(
            BoundInput::new(0, r("1"), 1),
            Err(CalculusError::InvalidDimension)
        ));
        assert!(matches!(
            BoundInput::new(2, r("0"), 1),
            Err(CalculusError::InvalidConstant(_))
        ));
        assert!(matches!(
            BoundInput::new(2, r("-3"), 1),
            Err(CalculusError::InvalidConstant(_))
        ));
        assert!(matches!(
            BoundInput::new(2, r("1"), 0),
            Err(CalculusError::InvalidIndex)
        ));
    }

    #[test]
    fn bound_values_match_hand_computation() {
        // d=2, C=1, n=1: 2 * w_2 = 2 * 1/2 = 1; ratio 0!/1! = 1
        let input = BoundInput::new(2, r("1"), 1).unwrap();
        let (plain, refined) = bound_pair(&input);
        assert_eq!(plain, r("1"));
        assert_eq!(refined, r("1"));

        // d=1, C=1, n=2: w_4 = 3/2; ratio 1!/3! = 1/6 -> 1/4
        let input = BoundInput::new(1, r("1"), 2).unwrap();
        let (plain, refined) = bound_pair(&input);
        assert_eq!(plain, r("3/2"));
        assert_eq!(refined, r("1/4"));

        // nontrivial d and C: d=3, C=2/5, n=2 -> 9 * (2/5)^4 * 3/2
        let input = BoundInput::new(3, r("2/5"), 2).unwrap();
        let (plain, refined) = bound_pair(&input);
        assert_eq!(plain, r("216/625"));
        assert_eq!(refined, plain.clone() * r("1/6"));
    }

    #[test]
    fn refined_bound_never_exceeds_the_plain_one() {
        for n in 1..=5 {
            let input = BoundInput::new(2, r("7/3"), n).unwrap();
            let (plain, refined) = bound_pair(&input);
            assert!(refined <= plain, "n = {n}");
            // and the ratio is exactly (n-1)!/(2n-1)!
            let ratio = factorial(n - 1) / factorial(2 * n - 1);
            assert_eq!(refined, plain * ratio);
        }
    }
}
