//! Model resolution and the three independent count pipelines.
//!
//! A model can come from the built-in catalog, from a coefficient file, or
//! from the literal name `zero`. Resolution produces a [`ResolvedModel`]:
//! a normalized generating function `Phi` with `Phi(0) = 1`, its field
//! series `f`, and the two correction data that translate counts of `Phi`
//! into counts of the original `F`:
//!
//! * `scale` — from the division `Phi = F / F(0)` (requires `F(0) != 0`),
//! * `delta0` — from the shift `Phi = F - F(0) + 1`, which adds
//!   `F(0) - 1` to the count at index 0.
//!
//! File models are exact polynomials: coefficients beyond the file are
//! zero. Files tagged `egf-b` carry field data and resolve directly
//! through `f`; files tagged `series-c` carry a generating function and go
//! through the selected preprocessing mode.
//!
//! [`omega_table`] computes the counts `n = 0 ..= n_max` by any of three
//! routes — series coefficients, aggregated matrix expansion, word-by-word
//! operator calculus — or by all three with an exact cross-check.

use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::calculus::{sum_over_words, CalculusError};
use crate::catalog::{CatalogError, CatalogModel};
use crate::files::{CoeffFile, CoeffKind, FileError};
use crate::matrix::{omega_sequence, ExpansionBudget, MatrixError, WeightSeq};
use crate::rational::Rational;
use crate::series::{
    derivatives_at_zero, f_from_phi, normalize_f, phi_from_f, shift_f, SeriesError,
    TruncatedSeries,
};

#[derive(Debug, thiserror::Error)]
pub enum ModelError {
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("{path}: a file tagged egf-b holds field data, but a generating function is required here")]
    FieldFileWhereGfExpected { path: String },
    #[error("model {spec:?} is neither a catalog name (base, catalan, bell, binomial, expsin, zero) nor a readable file")]
    UnknownModel { spec: String },
}

/// How an `F`-input with `F(0) != 1` is brought to the `Phi(0) = 1` form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Divide by `F(0)`; the counts are scaled back afterwards. Requires
    /// `F(0) != 0`.
    #[default]
    Normalize,
    /// Replace the constant term by 1; the count at index 0 is corrected
    /// by `F(0) - 1` afterwards. Always applicable.
    Shift,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Normalize => write!(f, "normalize"),
            Mode::Shift => write!(f, "shift"),
        }
    }
}

/// A model brought to canonical form, ready for any pipeline.
#[derive(Debug, Clone)]
pub struct ResolvedModel {
    pub label: String,
    /// Normalized generating function, `phi(0) = 1`, at the working order.
    pub phi: TruncatedSeries,
    /// Field series of `phi` (working order minus 2).
    pub f: TruncatedSeries,
    /// Multiplies every count (1 unless normalization divided by `F(0)`).
    pub scale: Rational,
    /// Added to the count at index 0 (0 unless the shift was applied).
    pub delta0: Rational,
}

impl ResolvedModel {
    /// The count at index `n` by the series route alone (no budget, no
    /// expansion): `scale * n! * [x^n] phi`, delta-corrected at 0.
    pub fn omega_series(&self, n: usize) -> Result<Rational, SeriesError> {
        let raw = derivatives_at_zero(&self.phi, n)?;
        let mut value = &raw * &self.scale;
        if n == 0 {
            value += &self.delta0;
        }
        Ok(value)
    }

    /// Weight table for the matrix pipeline, read off the field series.
    pub fn weights(&self) -> WeightSeq {
        WeightSeq::from_field(&self.f)
    }

    fn corrected(&self, raw: Vec<Rational>) -> Vec<Rational> {
        raw.into_iter()
            .enumerate()
            .map(|(n, v)| {
                let mut value = v * &self.scale;
                if n == 0 {
                    value += &self.delta0;
                }
                value
            })
            .collect()
    }
}

/// Extends a polynomial (exact) series with zeros up to `order`.
fn pad_to(series: &TruncatedSeries, order: usize) -> TruncatedSeries {
    if series.order() >= order {
        return series.truncated(order).expect("order <= series order");
    }
    let mut coeffs = series.coeffs().to_vec();
    coeffs.resize(order + 1, Rational::zero());
    TruncatedSeries::from_coeffs(coeffs)
}

/// Working truncation order for a target count index `n`: enough for the
/// series route (`n`), the weight table (`n - 1`), and the word calculus
/// (`2n + 8`), in one resolution.
pub fn working_order(n_max: usize) -> usize {
    2 * n_max + 10
}

fn looks_like_catalog_name(spec: &str) -> bool {
    matches!(spec, "base" | "catalan" | "bell" | "binomial" | "expsin" | "zero")
}

/// Builds a model from field data: `phi` is constructed, nothing needs
/// rescaling.
pub fn model_from_field(f: &TruncatedSeries, label: String, order: usize) -> ResolvedModel {
    let f_padded = pad_to(f, order.max(1) - 1);
    let phi = phi_from_f(&f_padded, order).expect("field padded to sufficient order");
    ResolvedModel {
        label,
        f: pad_to(f, order.saturating_sub(2)),
        phi,
        scale: Rational::one(),
        delta0: Rational::zero(),
    }
}

/// Builds a model from a generating function under the chosen mode; the
/// field series is recovered through the inverse map.
pub fn model_from_gf(
    big_f: &TruncatedSeries,
    label: String,
    mode: Mode,
    order: usize,
) -> Result<ResolvedModel, ModelError> {
    let padded = pad_to(big_f, order + 2);
    let (phi_wide, scale, delta0) = match mode {
        Mode::Normalize => {
            let (phi, c0) = normalize_f(&padded)?;
            (phi, c0, Rational::zero())
        }
        Mode::Shift => {
            let (phi, c0) = shift_f(&padded);
            (phi, Rational::one(), c0 - Rational::one())
        }
    };
    let f = f_from_phi(&phi_wide)?; // order `order`
    Ok(ResolvedModel {
        label,
        phi: phi_wide.truncated(order).expect("explicitly padded"),
        f,
        scale,
        delta0,
    })
}

/// Resolves a model specifier for the count pipelines: a catalog name,
/// `zero`, or a path to a coefficient file (`egf-b` = field data,
/// `series-c` = generating function, preprocessed per `mode`).
pub fn resolve_model(
    spec: &str,
    alpha: Option<Rational>,
    mode: Mode,
    order: usize,
) -> Result<ResolvedModel, ModelError> {
    if spec == "zero" {
        return Ok(model_from_field(
            &TruncatedSeries::zero(0),
            "zero".to_string(),
            order,
        ));
    }
    if looks_like_catalog_name(spec) {
        let model = CatalogModel::resolve(spec, alpha)?;
        let big_f = model.generating_function(order + 2);
        return model_from_gf(&big_f, model.to_string(), mode, order);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(ModelError::UnknownModel {
            spec: spec.to_string(),
        });
    }
    let file = CoeffFile::read(path)?;
    match file.kind {
        CoeffKind::EgfB => Ok(model_from_field(
            &file.to_series(),
            format!("file:{spec} (field data)"),
            order,
        )),
        CoeffKind::SeriesC => model_from_gf(
            &file.to_series(),
            format!("file:{spec} (generating function, {mode})"),
            mode,
            order,
        ),
    }
}

/// Resolves an `f`-specifier (for the forward map): a catalog name's field
/// column, `zero`, or a file of either kind.
pub fn resolve_field(
    spec: &str,
    alpha: Option<Rational>,
    order: usize,
) -> Result<(TruncatedSeries, String), ModelError> {
    if spec == "zero" {
        return Ok((TruncatedSeries::zero(order), "zero".to_string()));
    }
    if looks_like_catalog_name(spec) {
        let model = CatalogModel::resolve(spec, alpha)?;
        return Ok((model.field(order), model.to_string()));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(ModelError::UnknownModel {
            spec: spec.to_string(),
        });
    }
    let file = CoeffFile::read(path)?;
    Ok((pad_to(&file.to_series(), order), format!("file:{spec}")))
}

/// Resolves an `F`-specifier (for the inverse map): a catalog name's
/// generating function or a `series-c` file. Field files are rejected —
/// inverting them would silently conflate the two columns.
pub fn resolve_gf(
    spec: &str,
    alpha: Option<Rational>,
    order: usize,
) -> Result<(TruncatedSeries, String), ModelError> {
    if looks_like_catalog_name(spec) && spec != "zero" {
        let model = CatalogModel::resolve(spec, alpha)?;
        return Ok((model.generating_function(order), model.to_string()));
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(ModelError::UnknownModel {
            spec: spec.to_string(),
        });
    }
    let file = CoeffFile::read(path)?;
    match file.kind {
        CoeffKind::EgfB => Err(ModelError::FieldFileWhereGfExpected {
            path: spec.to_string(),
        }),
        CoeffKind::SeriesC => Ok((pad_to(&file.to_series(), order), format!("file:{spec}"))),
    }
}

/// Which pipeline(s) compute the counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    Matrix,
    Series,
    Calculus,
    /// All three, with an exact cross-check.
    #[default]
    All,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Matrix => write!(f, "matrix"),
            Method::Series => write!(f, "series"),
            Method::Calculus => write!(f, "calculus"),
            Method::All => write!(f, "all"),
        }
    }
}

/// The three values of a failed cross-check, boxed to keep the error slim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MismatchValues {
    pub n: usize,
    pub matrix: Rational,
    pub series: Rational,
    pub calculus: Rational,
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(
        "pipelines disagree at n = {}: matrix gives {}, series gives {}, calculus gives {}",
        .0.n, .0.matrix, .0.series, .0.calculus
    )]
    Mismatch(Box<MismatchValues>),
}

/// One row of a count table.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct OmegaRow {
    pub n: usize,
    pub value: Rational,
}

/// Counts `0 ..= n_max` for the model by the requested method. With
/// [`Method::All`] the three pipelines run independently and any
/// disagreement is an error carrying all three values.
pub fn omega_table(
    model: &ResolvedModel,
    n_max: usize,
    method: Method,
    budget: &ExpansionBudget,
) -> Result<Vec<OmegaRow>, PipelineError> {
    let values = match method {
        Method::Series => series_counts(model, n_max)?,
        Method::Matrix => matrix_counts(model, n_max, budget)?,
        Method::Calculus => calculus_counts(model, n_max)?,
        Method::All => {
            let series = series_counts(model, n_max)?;
            let matrix = matrix_counts(model, n_max, budget)?;
            let calculus = calculus_counts(model, n_max)?;
            for n in 0..=n_max {
                if series[n] != matrix[n] || series[n] != calculus[n] {
                    return Err(PipelineError::Mismatch(Box::new(MismatchValues {
                        n,
                        matrix: matrix[n].clone(),
                        series: series[n].clone(),
                        calculus: calculus[n].clone(),
                    })));
                }
            }
            series
        }
    };
    Ok(values
        .into_iter()
        .enumerate()
        .map(|(n, value)| OmegaRow { n, value })
        .collect())
}

fn series_counts(model: &ResolvedModel, n_max: usize) -> Result<Vec<Rational>, SeriesError> {
    (0..=n_max).map(|n| model.omega_series(n)).collect()
}

fn matrix_counts(
    model: &ResolvedModel,
    n_max: usize,
    budget: &ExpansionBudget,
) -> Result<Vec<Rational>, MatrixError> {
    let raw = omega_sequence(n_max, &model.weights(), budget)?;
    Ok(model.corrected(raw))
}

fn calculus_counts(model: &ResolvedModel, n_max: usize) -> Result<Vec<Rational>, CalculusError> {
    let raw = (0..=n_max)
        .map(|n| sum_over_words(n, &model.phi))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(model.corrected(raw))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn rows(values: &[&str]) -> Vec<OmegaRow> {
        values
            .iter()
            .enumerate()
            .map(|(n, v)| OmegaRow { n, value: r(v) })
            .collect()
    }

    #[test]
    fn base_model_cross_checks() {
        let model = resolve_model("base", None, Mode::Normalize, working_order(6)).unwrap();
        let table = omega_table(&model, 6, Method::All, &ExpansionBudget::default()).unwrap();
        assert_eq!(table, rows(&["1", "0", "1/2", "2/3", "3/2", "62/15", "115/9"]));
        assert_eq!(model.scale, r("1"));
        assert_eq!(model.delta0, r("0"));
    }

    #[test]
    fn bell_model_counts_set_partitions() {
        let model = resolve_model("bell", None, Mode::Normalize, working_order(8)).unwrap();
        let table = omega_table(&model, 8, Method::All, &ExpansionBudget::default()).unwrap();
        assert_eq!(
            table,
            rows(&["1", "1", "2", "5", "15", "52", "203", "877", "4140"])
        );
    }

    #[test]
    fn catalan_model_counts() {
        let model = resolve_model("catalan", None, Mode::Normalize, working_order(6)).unwrap();
        let table = omega_table(&model, 6, Method::All, &ExpansionBudget::default()).unwrap();
        // n! * C_n
        assert_eq!(
            table,
            rows(&["1", "1", "4", "30", "336", "5040", "95040"])
        );
    }

    #[test]
    fn expsin_model_counts() {
        let model = resolve_model("expsin", None, Mode::Normalize, working_order(8)).unwrap();
        let table = omega_table(&model, 8, Method::All, &ExpansionBudget::default()).unwrap();
        assert_eq!(
            table,
            rows(&["1", "1", "1", "0", "-3", "-8", "-3", "56", "217"])
        );
    }

    #[test]
    fn binomial_model_counts_falling_factorials() {
        let model = resolve_model(
            "binomial",
            Some(r("5/2")),
            Mode::Normalize,
            working_order(5),
        )
        .unwrap();
        let table = omega_table(&model, 5, Method::All, &ExpansionBudget::default()).unwrap();
        // alpha (alpha-1) ... (alpha-n+1) at alpha = 5/2
        assert_eq!(
            table,
            rows(&["1", "5/2", "15/4", "15/8", "-15/16", "45/32"])
        );
    }

    #[test]
    fn zero_model() {
        let model = resolve_model("zero", None, Mode::Normalize, working_order(4)).unwrap();
        let table = omega_table(&model, 4, Method::All, &ExpansionBudget::default()).unwrap();
        assert_eq!(table, rows(&["1", "0", "0", "0", "0"]));
    }

    #[test]
    fn shift_mode_applies_the_index_zero_correction() {
        // F = 3 + x^2: shift makes phi = 1 + x^2; counts are
        // 3, 0, 2, 0, 0, ... = n! [x^n] F with the 0-index correction
        let dir = std::env::temp_dir().join("varpi-model-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("three-plus-x2.json");
        std::fs::write(
            &path,
            r#"{"kind": "series-c", "coeffs": ["3", "0", "1"]}"#,
        )
        .unwrap();
        let spec = path.to_str().unwrap();

        let model = resolve_model(spec, None, Mode::Shift, working_order(6)).unwrap();
        assert_eq!(model.delta0, r("2"));
        assert_eq!(model.scale, r("1"));
        let table = omega_table(&model, 6, Method::All, &ExpansionBudget::default()).unwrap();
        assert_eq!(table, rows(&["3", "0", "2", "0", "0", "0", "0"]));

        // normalize mode on the same file: counts scale by F(0) = 3
        let model = resolve_model(spec, None, Mode::Normalize, working_order(6)).unwrap();
        assert_eq!(model.scale, r("3"));
        let table = omega_table(&model, 6, Method::All, &ExpansionBudget::default()).unwrap();
        assert_eq!(table, rows(&["3", "0", "2", "0", "0", "0", "0"]));
    }

    #[test]
    fn normalize_rejects_zero_initial_value() {
        let dir = std::env::temp_dir().join("varpi-model-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("valuation-one.json");
        std::fs::write(&path, r#"{"kind": "series-c", "coeffs": ["0", "1"]}"#).unwrap();
        let spec = path.to_str().unwrap();

        let err = resolve_model(spec, None, Mode::Normalize, working_order(3)).unwrap_err();
        assert!(matches!(
            err,
            ModelError::Series(SeriesError::ZeroInitialValue)
        ));
        // the shift handles it: F = x -> phi = 1 + x, delta0 = -1
        let model = resolve_model(spec, None, Mode::Shift, working_order(3)).unwrap();
        assert_eq!(model.delta0, r("-1"));
        let table = omega_table(&model, 3, Method::All, &ExpansionBudget::default()).unwrap();
        assert_eq!(table, rows(&["0", "1", "0", "0"]));
    }

    #[test]
    fn field_files_resolve_directly() {
        let dir = std::env::temp_dir().join("varpi-model-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("base-weights.json");
        // b_k = k for k <= 9: exactly the default model's weights
        std::fs::write(
            &path,
            r#"{"kind": "egf-b", "coeffs": ["0", "1", "2", "3", "4", "5", "6", "7", "8", "9"]}"#,
        )
        .unwrap();
        let spec = path.to_str().unwrap();

        let model = resolve_model(spec, None, Mode::Normalize, working_order(6)).unwrap();
        let table = omega_table(&model, 6, Method::All, &ExpansionBudget::default()).unwrap();
        assert_eq!(table, rows(&["1", "0", "1/2", "2/3", "3/2", "62/15", "115/9"]));
    }

    #[test]
    fn unknown_specs_are_rejected() {
        assert!(matches!(
            resolve_model("nonsense", None, Mode::Normalize, 10),
            Err(ModelError::UnknownModel { .. })
        ));
        assert!(matches!(
            resolve_field("/no/such/file.json", None, 10),
            Err(ModelError::UnknownModel { .. })
        ));
    }

    #[test]
    fn gf_resolution_rejects_field_files() {
        let dir = std::env::temp_dir().join("varpi-model-tests");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("reject-field.json");
        std::fs::write(&path, r#"{"kind": "egf-b", "coeffs": ["0", "1"]}"#).unwrap();
        let err = resolve_gf(path.to_str().unwrap(), None, 5).unwrap_err();
        assert!(matches!(err, ModelError::FieldFileWhereGfExpected { .. }));
    }

    #[test]
    fn field_and_gf_sources_give_the_table_columns() {
        let (f, _) = resolve_field("bell", None, 6).unwrap();
        let ex = TruncatedSeries::exp_x(6);
        let expect = ex.add(&ex.mul_by_x().truncated(6).unwrap()).unwrap();
        assert_eq!(f, expect);

        let (big_f, label) = resolve_gf("catalan", None, 5).unwrap();
        assert_eq!(label, "catalan");
        let catalan: Vec<Rational> = ["1", "1", "2", "5", "14", "42"]
            .iter()
            .map(|s| r(s))
            .collect();
        assert_eq!(big_f.coeffs(), &catalan[..]);
    }

    #[test]
    fn mismatch_reporting_carries_all_three_values() {
        // sabotage a resolved model: a wrong weight table cannot match the
        // series route
        let mut model =
            resolve_model("base", None, Mode::Normalize, working_order(4)).unwrap();
        model.scale = r("2"); // scale applies to all pipelines equally...
        let ok = omega_table(&model, 4, Method::All, &ExpansionBudget::default());
        assert!(ok.is_ok(), "consistent scaling stays consistent");

        // ...but a doctored phi breaks the agreement between series and
        // matrix routes
        let mut coeffs = model.phi.coeffs().to_vec();
        coeffs[2] = r("1");
        model.phi = TruncatedSeries::from_coeffs(coeffs);
        let err = omega_table(&model, 4, Method::All, &ExpansionBudget::default()).unwrap_err();
        match err {
            PipelineError::Mismatch(values) => {
                assert_eq!(values.n, 2);
                assert_eq!(values.matrix, r("1")); // 2 * 1/2: scale 2, true count
                assert_eq!(values.series, r("4")); // 2 * 2! * doctored coefficient
            }
            other => panic!("unexpected error {other}"),
        }
    }
}
