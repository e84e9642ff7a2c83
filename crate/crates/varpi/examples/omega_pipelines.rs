//! The headline cross-check: compute the counts of the default model by
//! three independent pipelines and confirm exact agreement.
//!
//! Run with: `cargo run --example omega_pipelines`

use varpi::calculus::sum_over_words;
use varpi::matrix::{omega_sequence, ExpansionBudget, WeightSeq};
use varpi::rational::Rational;
use varpi::series::{derivatives_at_zero, phi_from_f, TruncatedSeries};

fn main() {
    let n_max = 8;

    // The default model's field series is f = x e^x: coefficient 1/(k-1)!
    // at x^k. The word calculus wants the most headroom, order 2n + 8.
    let order = 2 * n_max + 8;
    let mut coeffs = vec![Rational::zero(); order];
    let mut fact = Rational::one();
    for (k, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = fact.recip(); // 1 / (k-1)!
        fact *= &Rational::from_int(k as i64);
    }
    let f = TruncatedSeries::from_coeffs(coeffs);
    let phi = phi_from_f(&f, order).expect("f has enough terms");

    // Pipeline 1 — series: counts are n! [x^n] Phi.
    let via_series: Vec<Rational> = (0..=n_max)
        .map(|n| derivatives_at_zero(&phi, n).expect("within order"))
        .collect();

    // Pipeline 2 — matrix states: expand (A + B)^n on the empty state and
    // contract with the weight functional, b(g) = g.
    let budget = ExpansionBudget::default();
    let via_matrix =
        omega_sequence(n_max, &WeightSeq::Base, &budget).expect("well within budget");

    // Pipeline 3 — operator calculus: sum the 2^n words of multiplication
    // and connection-derivative operators applied to Phi.
    let via_calculus: Vec<Rational> = (0..=n_max)
        .map(|n| sum_over_words(n, &phi).expect("order suffices"))
        .collect();

    println!("n   series          matrix          calculus");
    for n in 0..=n_max {
        println!(
            "{n:<3} {:<15} {:<15} {:<15}",
            via_series[n].to_string(),
            via_matrix[n].to_string(),
            via_calculus[n].to_string()
        );
        assert_eq!(via_series[n], via_matrix[n]);
        assert_eq!(via_series[n], via_calculus[n]);
    }
    println!("\nall three pipelines agree exactly for n <= {n_max}");
}
