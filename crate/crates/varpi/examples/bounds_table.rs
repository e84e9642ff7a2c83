//! Derivative-bound right-hand sides: the plain value d^n C^{2n} w_{2n}
//! and its refinement by the factor (n-1)!/(2n-1)!, tabulated exactly.
//!
//! Run with: `cargo run --example bounds_table`

use varpi::calculus::{bound_pair, BoundInput};
use varpi::rational::{factorial, Rational};

fn main() {
    println!("d   C     n   plain                 refined               ratio");
    for (d, c) in [(1u64, "1"), (2, "1"), (3, "2/5")] {
        let c: Rational = c.parse().unwrap();
        for n in 1..=5usize {
            let input = BoundInput::new(d, c.clone(), n).unwrap();
            let (plain, refined) = bound_pair(&input);

            let ratio = factorial(n - 1) / factorial(2 * n - 1);
            assert_eq!(refined, &plain * &ratio);
            assert!(refined <= plain);

            // Pre-render so the column widths apply to the full "p/q" text.
            let (c_s, plain_s, refined_s) = (c.to_string(), plain.to_string(), refined.to_string());
            println!("{d:<3} {c_s:<5} {n:<3} {plain_s:<21} {refined_s:<21} {ratio}");
        }
    }
    println!("\nthe refinement ratio (n-1)!/(2n-1)! is independent of d and C");
}
