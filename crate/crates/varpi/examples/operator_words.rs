//! Words in the two operators: expand them on matrix states, evaluate the
//! same words as compositions of multiplication and connection-derivative
//! operators on Phi, and watch the 2^n word sums rebuild the counts.
//!
//! Run with: `cargo run --example operator_words`

use varpi::calculus::{eval_word, OperatorWord};
use varpi::catalog::CatalogModel;
use varpi::matrix::{expand_word, omega_sequence, ExpansionBudget, WeightSeq};
use varpi::series::f_from_phi;

fn main() {
    let budget = ExpansionBudget::default();

    // The default model: weights b(g) = g, Phi from f = x e^x.
    let phi = CatalogModel::Base.generating_function(24);
    let weights = WeightSeq::from_field(&f_from_phi(&phi).unwrap());

    println!("word      states after expansion             matrix     calculus");
    for text in ["", "A", "BA", "BBA", "ABA", "S(2,3)BA"] {
        // The S letter is only a matrix-side operator; strip it for the
        // calculus column.
        let (matrix_letters, calc_text) = if let Some(rest) = text.strip_prefix("S(2,3)") {
            let word: OperatorWord = rest.parse().unwrap();
            let mut letters = vec![varpi::matrix::Letter::S(
                varpi::matrix::Column::new(2, 3).unwrap(),
            )];
            letters.extend(word.to_matrix_letters());
            (letters, None)
        } else {
            let word: OperatorWord = text.parse().unwrap();
            (word.to_matrix_letters(), Some(word))
        };

        let expansion = expand_word(&matrix_letters, &budget).unwrap();
        let matrix_value = expansion.upsilon(&weights).unwrap();
        let calculus = calc_text
            .as_ref()
            .map(|w| eval_word(w, &phi).unwrap().to_string())
            .unwrap_or_else(|| "(not an A/B word)".to_string());

        let label = if text.is_empty() { "(empty)" } else { text };
        println!(
            "{label:<9} {:<36} {:<10} {calculus}",
            expansion.to_string(),
            matrix_value.to_string()
        );
        if let Some(w) = &calc_text {
            assert_eq!(eval_word(w, &phi).unwrap(), matrix_value);
        }
    }

    // Summing the 2^n words of length n recovers the counts.
    println!("\nn   sum of 2^n words       count");
    let counts = omega_sequence(6, &weights, &budget).unwrap();
    for (n, count) in counts.iter().enumerate() {
        let sum: varpi::rational::Rational = OperatorWord::enumerate(n)
            .iter()
            .map(|w| eval_word(w, &phi).unwrap())
            .sum();
        println!("{n:<3} {:<21} {}", sum.to_string(), count);
        assert_eq!(&sum, count);
    }
}
