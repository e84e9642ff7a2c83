//! Randomized checks of the algebraic laws, reported per law.
//!
//! Every law draws its own deterministic random stream, derived from the
//! suite seed and the law name, so reports are reproducible given
//! `(trials, seed)` and independent of execution order; laws run in
//! parallel. A failing law records its first counterexample. Laws that are
//! only meaningful for nonnegative weights (the seminorm axioms and the
//! kernel characterization) are skipped and flagged when the weight table
//! contains negative entries, since the city-block map then stops being a
//! seminorm.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bialgebra::freevec::FreeVec;
use crate::bialgebra::monoid::{G1Elem, G2Elem, Monoid, Pair};
use crate::bialgebra::tensor::{seminorm_t, TensorElem, VBasis};
use crate::matrix::WeightSeq;
use crate::rational::Rational;

/// Outcome of one law over all its trials.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct LawReport {
    pub trials: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
}

/// The whole suite: per-law reports plus the inputs that reproduce them.
#[derive(Debug, Clone, Serialize)]
pub struct AxiomReport {
    pub seed: u64,
    pub trials: usize,
    pub laws: BTreeMap<String, LawReport>,
}

impl AxiomReport {
    pub fn total_failures(&self) -> usize {
        self.laws.values().map(|l| l.failures).sum()
    }

    pub fn all_passed(&self) -> bool {
        self.total_failures() == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

/// FNV-1a over the law name, folded with the suite seed, as the per-law
/// stream seed — stable across platforms and runs.
fn law_seed(suite_seed: u64, name: &str) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in name.as_bytes() {
        h ^= u64::from(*byte);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h ^ suite_seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn rand_coeff(rng: &mut ChaCha8Rng) -> Rational {
    let mut numer = rng.gen_range(-5i64..=5);
    if numer == 0 {
        numer = 1;
    }
    let denom = rng.gen_range(1i64..=4);
    Rational::new(numer, denom)
}

fn rand_g1(rng: &mut ChaCha8Rng) -> G1Elem {
    G1Elem(rng.gen_range(0u64..=6))
}

fn rand_g2(rng: &mut ChaCha8Rng) -> G2Elem {
    match rng.gen_range(0u64..=6) {
        0 => G2Elem::infinity(),
        q => G2Elem::unit_fraction(q),
    }
}

fn rand_vec<M: Monoid>(rng: &mut ChaCha8Rng, gen: &impl Fn(&mut ChaCha8Rng) -> M) -> FreeVec<M> {
    let n = rng.gen_range(1usize..=4);
    let mut v = FreeVec::zero();
    for _ in 0..n {
        let g = gen(rng);
        let c = rand_coeff(rng);
        v.add_term(g, c);
    }
    v
}

/// Random tensor element with first indices bounded by `max_g1`, so every
/// sampled factor stays inside a finite weight table.
fn rand_tensor(rng: &mut ChaCha8Rng, max_g1: u64) -> TensorElem {
    let n = rng.gen_range(1usize..=3);
    let mut t = TensorElem::zero();
    for _ in 0..n {
        let rank = rng.gen_range(0usize..=3);
        let factors: Vec<VBasis> = (0..rank)
            .map(|_| VBasis::new(G1Elem(rng.gen_range(0..=max_g1)), rand_g2(rng)))
            .collect();
        t.add_term(factors, rand_coeff(rng));
    }
    t
}

type Check = Box<dyn Fn(&mut ChaCha8Rng) -> Option<String> + Send + Sync>;

/// One law: a name, a single-trial checker returning a counterexample
/// description on failure, and an optional skip reason.
struct Law {
    name: String,
    check: Check,
    skipped: Option<String>,
}

impl Law {
    fn new(name: impl Into<String>, check: Check) -> Self {
        Law {
            name: name.into(),
            check,
            skipped: None,
        }
    }

    fn skipped(name: impl Into<String>, reason: String) -> Self {
        Law {
            name: name.into(),
            check: Box::new(|_| None),
            skipped: Some(reason),
        }
    }
}

fn run_law(law: &Law, trials: usize, suite_seed: u64) -> LawReport {
    if let Some(reason) = &law.skipped {
        return LawReport {
            trials: 0,
            failures: 0,
            first_counterexample: None,
            skipped: Some(reason.clone()),
        };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(law_seed(suite_seed, &law.name));
    let mut failures = 0;
    let mut first = None;
    for _ in 0..trials {
        if let Some(cex) = (law.check)(&mut rng) {
            failures += 1;
            if first.is_none() {
                first = Some(cex);
            }
        }
    }
    LawReport {
        trials,
        failures,
        first_counterexample: first,
        skipped: None,
    }
}

fn neq<T: PartialEq + std::fmt::Display>(lhs: T, rhs: T, what: &str) -> Option<String> {
    if lhs == rhs {
        None
    } else {
        Some(format!("{what}: {lhs} != {rhs}"))
    }
}

/// The algebra, coalgebra, and compatibility laws for one free-vector
/// bialgebra, generic over the index monoid.
fn bialgebra_laws<M, G>(tag: &str, gen: G) -> Vec<Law>
where
    M: Monoid + Send + Sync + 'static,
    G: Fn(&mut ChaCha8Rng) -> M + Clone + Send + Sync + 'static,
{
    let mut laws = Vec::new();

    let g = gen.clone();
    laws.push(Law::new(
        format!("{tag}-mul-assoc"),
        Box::new(move |rng| {
            let a = rand_vec(rng, &g);
            let b = rand_vec(rng, &g);
            let c = rand_vec(rng, &g);
            neq(a.mul(&b).mul(&c), a.mul(&b.mul(&c)), "(ab)c vs a(bc)")
        }),
    ));

    let g = gen.clone();
    laws.push(Law::new(
        format!("{tag}-mul-comm"),
        Box::new(move |rng| {
            let a = rand_vec(rng, &g);
            let b = rand_vec(rng, &g);
            neq(a.mul(&b), b.mul(&a), "ab vs ba")
        }),
    ));

    let g = gen.clone();
    laws.push(Law::new(
        format!("{tag}-mul-unit"),
        Box::new(move |rng| {
            let a = rand_vec(rng, &g);
            neq(a.mul(&FreeVec::unit()), a.clone(), "a*eta(1) vs a")
                .or_else(|| neq(FreeVec::unit().mul(&a), a.clone(), "eta(1)*a vs a"))
        }),
    ));

    let g = gen.clone();
    laws.push(Law::new(
        format!("{tag}-coassoc"),
        Box::new(move |rng| {
            let a = rand_vec(rng, &g);
            let d = a.delta();
            // apply the coproduct to each leg, then compare through the
            // common three-leg flattening
            let left = d
                .map_basis(|p| Pair(Pair(p.0.clone(), p.0.clone()), p.1.clone()))
                .map_basis(|p| Pair(p.0 .0.clone(), Pair(p.0 .1.clone(), p.1.clone())));
            let right = d.map_basis(|p| Pair(p.0.clone(), Pair(p.1.clone(), p.1.clone())));
            neq(left, right, "(delta x id)delta vs (id x delta)delta")
        }),
    ));

    let g = gen.clone();
    laws.push(Law::new(
        format!("{tag}-cocomm"),
        Box::new(move |rng| {
            let a = rand_vec(rng, &g);
            let d = a.delta();
            let swapped = d.map_basis(|p| Pair(p.1.clone(), p.0.clone()));
            neq(d, swapped, "delta vs swap(delta)")
        }),
    ));

    let g = gen.clone();
    laws.push(Law::new(
        format!("{tag}-counit"),
        Box::new(move |rng| {
            let a = rand_vec(rng, &g);
            // contract one leg of the coproduct with eps, keep the other
            let mut keep_right = FreeVec::zero();
            let mut keep_left = FreeVec::zero();
            for (p, c) in a.delta().terms() {
                keep_right.add_term(p.1.clone(), c.clone());
                keep_left.add_term(p.0.clone(), c.clone());
            }
            neq(keep_right, a.clone(), "(eps x id)delta vs id")
                .or_else(|| neq(keep_left, a.clone(), "(id x eps)delta vs id"))
        }),
    ));

    let g = gen.clone();
    laws.push(Law::new(
        format!("{tag}-delta-multiplicative"),
        Box::new(move |rng| {
            let a = rand_vec(rng, &g);
            let b = rand_vec(rng, &g);
            neq(
                a.mul(&b).delta(),
                a.delta().mul(&b.delta()),
                "delta(ab) vs delta(a)delta(b)",
            )
        }),
    ));

    let g = gen.clone();
    laws.push(Law::new(
        format!("{tag}-counit-multiplicative"),
        Box::new(move |rng| {
            let a = rand_vec(rng, &g);
            let b = rand_vec(rng, &g);
            neq(
                a.mul(&b).counit(),
                a.counit() * b.counit(),
                "eps(ab) vs eps(a)eps(b)",
            )
        }),
    ));

    laws.push(Law::new(
        format!("{tag}-unit-maps"),
        Box::new(move |_rng| {
            let one = FreeVec::<M>::unit();
            neq(
                one.delta(),
                FreeVec::basis(Pair(M::unit(), M::unit())),
                "delta(eta(1)) vs eta(1) x eta(1)",
            )
            .or_else(|| neq(one.counit(), Rational::one(), "eps(eta(1)) vs 1"))
        }),
    ));

    laws
}

fn star_laws() -> Vec<Law> {
    vec![
        Law::new(
            "star-assoc",
            Box::new(|rng| {
                let (a, b, c) = (rand_g2(rng), rand_g2(rng), rand_g2(rng));
                neq(
                    a.star(&b).star(&c),
                    a.star(&b.star(&c)),
                    "(a.b).c vs a.(b.c)",
                )
            }),
        ),
        Law::new(
            "star-comm",
            Box::new(|rng| {
                let (a, b) = (rand_g2(rng), rand_g2(rng));
                neq(a.star(&b), b.star(&a), "a.b vs b.a")
            }),
        ),
        Law::new(
            "star-unit",
            Box::new(|rng| {
                let a = rand_g2(rng);
                let inf = G2Elem::infinity();
                neq(a.star(&inf), a, "a.inf vs a").or_else(|| neq(inf.star(&a), a, "inf.a vs a"))
            }),
        ),
    ]
}

/// Largest first index that any sampler may draw under these weights, the
/// zero-weight indices, and the nonzero-weight indices within range.
struct WeightProfile {
    max_g1: u64,
    dead: Vec<u64>,
    alive: Vec<u64>,
    negative: bool,
}

fn profile(weights: &WeightSeq) -> WeightProfile {
    match weights {
        WeightSeq::Base => WeightProfile {
            max_g1: 6,
            dead: vec![0],
            alive: (1..=6).collect(),
            negative: false,
        },
        WeightSeq::Table(t) => WeightProfile {
            max_g1: t.len().saturating_sub(1) as u64,
            dead: t
                .iter()
                .enumerate()
                .filter(|(_, b)| b.is_zero())
                .map(|(i, _)| i as u64)
                .collect(),
            alive: t
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
                .map(|(i, _)| i as u64)
                .collect(),
            negative: t.iter().any(Rational::is_negative),
        },
    }
}

fn seminorm_laws(weights: &WeightSeq) -> Vec<Law> {
    let p = profile(weights);
    if p.negative {
        let reason =
            "weight table has negative entries; the city-block map is not a seminorm there"
                .to_string();
        return vec![
            Law::skipped("seminorm-homogeneity", reason.clone()),
            Law::skipped("seminorm-triangle", reason.clone()),
            Law::skipped("seminorm-kernel", reason),
        ];
    }

    let mut laws = Vec::new();

    let w = weights.clone();
    let max_g1 = p.max_g1;
    laws.push(Law::new(
        "seminorm-homogeneity",
        Box::new(move |rng| {
            let v = rand_tensor(rng, max_g1);
            let lambda = rand_coeff(rng);
            let lhs = seminorm_t(&v.scale(&lambda), &w).expect("indices sampled in range");
            let rhs = lambda.abs() * seminorm_t(&v, &w).expect("indices sampled in range");
            if lhs == rhs {
                None
            } else {
                Some(format!(
                    "|l*v| = {lhs} but |l|*|v| = {rhs} for l = {lambda}, v = {v}"
                ))
            }
        }),
    ));

    let w = weights.clone();
    laws.push(Law::new(
        "seminorm-triangle",
        Box::new(move |rng| {
            let u = rand_tensor(rng, max_g1);
            let v = rand_tensor(rng, max_g1);
            let both = seminorm_t(&u.add(&v), &w).expect("indices sampled in range");
            let split = seminorm_t(&u, &w).expect("indices sampled in range")
                + seminorm_t(&v, &w).expect("indices sampled in range");
            if both <= split {
                None
            } else {
                Some(format!(
                    "|u+v| = {both} > {split} = |u|+|v| for u = {u}, v = {v}"
                ))
            }
        }),
    ));

    if p.alive.is_empty() {
        laws.push(Law::skipped(
            "seminorm-kernel",
            "weight table is identically zero; every element is in the kernel".to_string(),
        ));
        return laws;
    }

    let w = weights.clone();
    let dead = p.dead;
    let alive = p.alive;
    laws.push(Law::new(
        "seminorm-kernel",
        Box::new(move |rng| {
            // kernel side: every pure tensor carries at least one factor
            // of weight zero (dead first index or infinite second index)
            let mut v = TensorElem::zero();
            let n = rng.gen_range(1usize..=3);
            for _ in 0..n {
                let rank = rng.gen_range(1usize..=3);
                let killer_pos = rng.gen_range(0..rank);
                let mut factors = Vec::with_capacity(rank);
                for i in 0..rank {
                    if i == killer_pos {
                        let use_dead_index = !dead.is_empty() && rng.gen_bool(0.5);
                        let factor = if use_dead_index {
                            let d = dead[rng.gen_range(0..dead.len())];
                            VBasis::new(G1Elem(d), rand_g2(rng))
                        } else {
                            VBasis::new(G1Elem(rng.gen_range(0..=max_g1)), G2Elem::infinity())
                        };
                        factors.push(factor);
                    } else {
                        factors.push(VBasis::new(
                            G1Elem(rng.gen_range(0..=max_g1)),
                            rand_g2(rng),
                        ));
                    }
                }
                v.add_term(factors, rand_coeff(rng));
            }
            let norm = seminorm_t(&v, &w).expect("indices sampled in range");
            if !norm.is_zero() {
                return Some(format!("kernel element has |v| = {norm}: v = {v}"));
            }

            // non-kernel side: all factors alive and finite, so the norm
            // must come out strictly positive
            let rank = rng.gen_range(1usize..=3);
            let factors: Vec<VBasis> = (0..rank)
                .map(|_| {
                    let a = alive[rng.gen_range(0..alive.len())];
                    VBasis::new(G1Elem(a), G2Elem::unit_fraction(rng.gen_range(1u64..=5)))
                })
                .collect();
            let u = TensorElem::from_terms([(factors, rand_coeff(rng))]);
            let norm = seminorm_t(&u, &w).expect("indices sampled in range");
            if norm.is_zero() || norm.is_negative() {
                Some(format!("non-kernel element has |u| = {norm}: u = {u}"))
            } else {
                None
            }
        }),
    ));

    laws
}

/// Runs every law for `trials` trials with deterministic per-law streams;
/// the report is independent of scheduling.
pub fn run_axiom_suite(trials: usize, seed: u64, weights: &WeightSeq) -> AxiomReport {
    let mut laws = Vec::new();
    laws.extend(star_laws());
    laws.extend(bialgebra_laws("g1", rand_g1));
    laws.extend(bialgebra_laws("g2", rand_g2));
    laws.extend(seminorm_laws(weights));

    let reports: Vec<(String, LawReport)> = laws
        .par_iter()
        .map(|law| (law.name.clone(), run_law(law, trials, seed)))
        .collect();

    AxiomReport {
        seed,
        trials,
        laws: reports.into_iter().collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_weights_pass_everything() {
        let report = run_axiom_suite(120, 7, &WeightSeq::Base);
        assert!(report.all_passed(), "report: {}", report.to_json());
        assert_eq!(report.laws.len(), 3 + 9 + 9 + 3);
        for (name, law) in &report.laws {
            assert!(law.skipped.is_none(), "{name} unexpectedly skipped");
            assert_eq!(law.trials, 120, "{name}");
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let w = WeightSeq::Base;
        let a = run_axiom_suite(60, 42, &w);
        let b = run_axiom_suite(60, 42, &w);
        assert_eq!(a.to_json(), b.to_json());
        let c = run_axiom_suite(60, 43, &w);
        assert!(c.all_passed());
    }

    #[test]
    fn negative_weights_skip_the_seminorm_laws() {
        fn r(s: &str) -> Rational {
            s.parse().unwrap()
        }
        let w = WeightSeq::Table(vec![r("0"), r("1"), r("-2"), r("3")]);
        let report = run_axiom_suite(50, 7, &w);
        for name in [
            "seminorm-triangle",
            "seminorm-kernel",
            "seminorm-homogeneity",
        ] {
            let law = &report.laws[name];
            assert!(law.skipped.is_some(), "{name} should be skipped");
            assert_eq!(law.trials, 0);
        }
        // algebraic laws never depend on weights
        assert_eq!(report.laws["g1-mul-assoc"].failures, 0);
        assert!(report.all_passed());
    }

    #[test]
    fn short_nonnegative_table_stays_in_range() {
        fn r(s: &str) -> Rational {
            s.parse().unwrap()
        }
        // a 3-entry table with a zero: samplers must never index past it
        let w = WeightSeq::Table(vec![r("0"), r("2"), r("1/2")]);
        let report = run_axiom_suite(200, 11, &w);
        assert!(report.all_passed(), "report: {}", report.to_json());
        assert!(report.laws["seminorm-kernel"].skipped.is_none());
        assert_eq!(report.laws["seminorm-triangle"].trials, 200);
    }

    #[test]
    fn all_zero_table_skips_only_the_kernel_law() {
        let w = WeightSeq::Table(vec![Rational::zero(), Rational::zero()]);
        let report = run_axiom_suite(40, 3, &w);
        assert!(report.laws["seminorm-kernel"].skipped.is_some());
        assert!(report.laws["seminorm-triangle"].skipped.is_none());
        assert!(report.all_passed());
    }

    #[test]
    fn json_shape() {
        let report = run_axiom_suite(5, 1, &WeightSeq::Base);
        let value: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(value["seed"], 1);
        assert_eq!(value["trials"], 5);
        let law = &value["laws"]["star-assoc"];
        assert_eq!(law["trials"], 5);
        assert_eq!(law["failures"], 0);
        assert!(law.get("first_counterexample").is_none());
    }
}
