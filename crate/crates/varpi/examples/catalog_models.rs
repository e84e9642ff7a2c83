//! Sweep the model catalog: for each built-in generating function, read
//! the weight table off its field series, run the matrix pipeline, and
//! recover the classical sequence n! [x^n] F.
//!
//! Run with: `cargo run --example catalog_models`

use varpi::matrix::ExpansionBudget;
use varpi::model::{omega_table, resolve_model, working_order, Method, Mode};
use varpi::rational::{factorial, Rational};

fn main() {
    let n_max = 8;
    let budget = ExpansionBudget::default();

    let specs: &[(&str, Option<&str>, &str)] = &[
        ("base", None, "1, 0, 1/2, 2/3, ... (the default model)"),
        ("bell", None, "set-partition numbers"),
        ("catalan", None, "n! times the Catalan numbers"),
        ("binomial", Some("1/2"), "falling factorials of 1/2"),
        ("binomial", Some("-1"), "falling factorials of -1"),
        ("expsin", None, "derivatives of exp(sin x) at zero"),
    ];

    for (name, alpha, note) in specs {
        let alpha: Option<Rational> = alpha.map(|a| a.parse().unwrap());
        let model =
            resolve_model(name, alpha, Mode::Normalize, working_order(n_max)).unwrap();

        // Matrix pipeline only; the weights come from the field series f.
        let rows = omega_table(&model, n_max, Method::Matrix, &budget).unwrap();

        // Independent check: the counts must be n! [x^n] F.
        for row in &rows {
            let expect = factorial(row.n) * model.phi.coeff(row.n) * &model.scale;
            assert_eq!(row.value, expect, "{} at n = {}", model.label, row.n);
        }

        let rendered: Vec<String> = rows.iter().map(|r| r.value.to_string()).collect();
        println!("{:<22} {}", model.label, rendered.join(", "));
        println!("{:<22} ^ {}", "", note);
    }

    println!("\nevery sequence equals n! [x^n] F exactly");
}
