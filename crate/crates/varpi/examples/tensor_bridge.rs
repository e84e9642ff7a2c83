//! The algebraic backdrop of the matrix states: basis vectors indexed by a
//! pair of monoids, tensor-algebra operators that mirror the state
//! operators exactly, and the seminorms whose kernel absorbs infinite and
//! weightless factors.
//!
//! Run with: `cargo run --example tensor_bridge`

use varpi::bialgebra::tensor::{
    cal_a, cal_b, cal_s, seminorm_t, tensor_to_weighted_sum, weight_functional,
    weighted_sum_to_tensor, TensorElem, VBasis,
};
use varpi::bialgebra::{FreeVec, G1Elem, G2Elem};
use varpi::matrix::{expand_power, ExpansionBudget, WeightSeq};
use varpi::rational::Rational;

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn main() {
    // A basis vector carries a counter (natural number under addition) and
    // a unit fraction whose "star" product adds denominators.
    let half = G2Elem::unit_fraction(2);
    let third = G2Elem::unit_fraction(3);
    assert_eq!(half.star(&third), G2Elem::unit_fraction(5));
    assert_eq!(G2Elem::infinity().star(&half), half);
    println!("star product: 1/2 * 1/3 = 1/5, inf * 1/2 = 1/2");

    // Group-like coproduct on the free vector space over the fraction
    // monoid: delta(e_g) = e_g (x) e_g, extended linearly.
    let v: FreeVec<G2Elem> =
        FreeVec::basis(half).add(&FreeVec::basis(G2Elem::infinity()).scale(&r("-3")));
    let delta = v.delta();
    println!("delta({v}) = {delta}");
    assert_eq!(v.counit(), r("-2"));

    // The tensor operators reproduce the matrix-state walk. Expand
    // (A + B)^4 both ways and compare exactly.
    let budget = ExpansionBudget::default();
    let sum = expand_power(4, &budget).unwrap();
    let mut tensor = TensorElem::one();
    for _ in 0..4 {
        tensor = cal_a(&tensor).add(&cal_b(&tensor));
    }
    assert_eq!(tensor_to_weighted_sum(&tensor).unwrap(), sum);
    assert_eq!(weighted_sum_to_tensor(&sum), tensor);
    println!("(A + B)^4: tensor walk == state walk, {} aggregated terms", sum.num_states());

    // The prepend operator, on both sides of the correspondence.
    let seeded = cal_s(2, 3, &tensor);
    let seeded_states = tensor_to_weighted_sum(&seeded).unwrap();
    assert_eq!(seeded_states.num_states(), sum.num_states());
    println!("S(2,3) prepends a factor to every term on both sides");

    // Functionals. The linear weight functional equals the matrix
    // contraction; the seminorm takes absolute values of coefficients and
    // sends infinite factors to zero instead of failing.
    let w = WeightSeq::Base;
    assert_eq!(
        weight_functional(&tensor, &w).unwrap(),
        sum.upsilon(&w).unwrap()
    );

    let alive = TensorElem::pure(vec![VBasis::new(G1Elem(2), G2Elem::unit_fraction(3))]);
    let dead = TensorElem::pure(vec![VBasis::new(G1Elem(1), G2Elem::infinity())]);
    let mixed = alive.scale(&r("-1")).add(&dead.scale(&r("100")));
    assert_eq!(seminorm_t(&alive, &w).unwrap(), r("2/3"));
    assert_eq!(seminorm_t(&dead, &w).unwrap(), r("0"));
    assert_eq!(seminorm_t(&mixed, &w).unwrap(), r("2/3"));
    println!("seminorm: |-1| * b(2)/3 = 2/3; infinite factors vanish, kernel absorbed");
}
