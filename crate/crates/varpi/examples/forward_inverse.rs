//! The two directions of the series construction, plus the preprocessing
//! that handles generating functions with a constant term other than one.
//!
//! Forward: field data f determines Phi = exp(double integral of f).
//! Inverse: Phi determines f, computed by two different formulas that are
//! asserted equal internally.
//!
//! Run with: `cargo run --example forward_inverse`

use varpi::rational::{factorial, Rational};
use varpi::series::{
    f_from_phi, normalize_f, phi_from_f, shift_f, TruncatedSeries,
};

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn main() {
    // Forward: the set-partition model has f = e^x (x + 1), i.e.
    // coefficient (k + 1)/k! at x^k.
    let order = 12;
    let coeffs: Vec<Rational> = (0..order)
        .map(|k| Rational::from_int(k as i64 + 1) / factorial(k))
        .collect();
    let f = TruncatedSeries::from_coeffs(coeffs);
    let phi = phi_from_f(&f, order).unwrap();

    // n! [x^n] Phi are the set-partition numbers.
    let counts: Vec<String> = (0..=7)
        .map(|n| (factorial(n) * phi.coeff(n)).to_string())
        .collect();
    println!("forward:  f = e^x (x + 1)");
    println!("          counts {}", counts.join(", "));
    assert_eq!(counts.join(", "), "1, 1, 2, 5, 15, 52, 203, 877");

    // Inverse: recover f from Phi; exact round trip through order - 2.
    let back = f_from_phi(&phi).unwrap();
    assert_eq!(back, f.truncated(order - 2).unwrap());
    println!("inverse:  f recovered exactly to order {}", order - 2);

    // Preprocessing. F = 3 + x^2 has F(0) = 3, so it is not yet a valid
    // generating function for the pipelines. Two constructions fix it:
    let big_f = TruncatedSeries::from_coeffs(vec![r("3"), r("0"), r("1"), r("0"), r("0")]);

    // 1. normalize: Phi = F / F(0); every count is scaled back by F(0).
    let (phi_n, scale) = normalize_f(&big_f).unwrap();
    assert_eq!(scale, r("3"));
    assert!(phi_n.constant_term().is_one());

    // 2. shift: Phi = F - F(0) + 1; only the count at index 0 changes,
    //    by F(0) - 1.
    let (phi_s, c0) = shift_f(&big_f);
    assert_eq!(c0, r("3"));
    assert!(phi_s.constant_term().is_one());

    for n in 0..=4usize {
        let direct = factorial(n) * big_f.coeff(n);
        let via_normalize = factorial(n) * phi_n.coeff(n) * &scale;
        let mut via_shift = factorial(n) * phi_s.coeff(n);
        if n == 0 {
            via_shift += &(c0.clone() - Rational::one());
        }
        assert_eq!(via_normalize, direct);
        assert_eq!(via_shift, direct);
    }
    println!("preproc:  normalize (scale 3) and shift (index-0 correction 2)");
    println!("          both reproduce n! [x^n] (3 + x^2) = 3, 0, 2, 0, 0");
}
