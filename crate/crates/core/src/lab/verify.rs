//! Forward verification: predicted components against computed Kerov
//! polynomials, positivity sweeps, and the identity suites. Every check
//! produces a [`SuiteReport`]; failures are findings, not errors.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::character::normalized_character;
use crate::error::{Error, Result};
use crate::kerov::{
    change_generators, krr1_closed_form, krr3_closed_form, CumulantPolynomial, Family, KerovStore,
};
use crate::partition::{enumerate_partitions, Partition};
use crate::rational::{format_rational, ratio, Rational};
use crate::symfunc::{evaluate_power_sum_form, Basis, SymFunc};

use super::identities::{check_complete_lemma, check_power_sum_lemma, check_triple_sum};
use super::predict::{predicted_component, predicted_component_f, predicted_component_g};
use super::tables::{load_table, CoefficientTable, TableKind, TableSource};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, checks: Vec<Check>) -> Self {
        SuiteReport {
            suite: suite.into(),
            pass: checks.iter().all(|c| c.pass),
            checks,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Coefficient counts of an expansion, with the negative entries listed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityReport {
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
    pub negatives: Vec<(Partition, String)>,
}

impl PositivityReport {
    pub fn is_nonnegative(&self) -> bool {
        self.negative == 0
    }
}

fn positivity_of<'a>(
    terms: impl Iterator<Item = (&'a Partition, &'a Rational)>,
) -> PositivityReport {
    let mut rep = PositivityReport {
        positive: 0,
        zero: 0,
        negative: 0,
        negatives: Vec::new(),
    };
    for (k, c) in terms {
        if c.is_zero() {
            rep.zero += 1;
        } else if c.is_negative() {
            rep.negative += 1;
            rep.negatives.push((k.clone(), format_rational(c)));
        } else {
            rep.positive += 1;
        }
    }
    rep
}

/// Positivity of a symmetric function in the monomial basis.
pub fn positivity_report_symfunc(f: &SymFunc) -> PositivityReport {
    positivity_of(f.convert(Basis::M).sorted_terms().into_iter())
}

pub fn positivity_report_poly(p: &CumulantPolynomial) -> PositivityReport {
    positivity_of(p.sorted_terms().into_iter())
}

/// The comparison of one predicted component with the computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentCheck {
    pub r: usize,
    pub pass: bool,
    pub terms: usize,
    /// `(index, predicted, computed)` at the first differing term.
    pub first_mismatch: Option<(Partition, String, String)>,
}

fn compare_components(
    r: usize,
    predicted: &CumulantPolynomial,
    computed: &CumulantPolynomial,
) -> ComponentCheck {
    let first_mismatch = predicted
        .first_difference(computed)
        .map(|(k, p, c)| (k, format_rational(&p), format_rational(&c)));
    ComponentCheck {
        r,
        pass: first_mismatch.is_none(),
        terms: computed.terms().len().max(predicted.terms().len()),
        first_mismatch,
    }
}

/// The table's function predicted against `K_{r,r-2k+1}` for every `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableVerification {
    pub table: String,
    pub per_r: Vec<ComponentCheck>,
    /// Rows whose monomial is nonzero at some evaluation point in range.
    pub entries_exercised: usize,
    pub entries_total: usize,
}

impl TableVerification {
    pub fn pass(&self) -> bool {
        self.per_r.iter().all(|c| c.pass)
    }
}

/// Computed `K_{r,r-2k+1}` in the given family.
pub fn computed_component(
    store: &KerovStore,
    family: Family,
    k: usize,
    r: usize,
) -> Result<CumulantPolynomial> {
    let kr = store.get(r)?;
    Ok(change_generators(
        &kr.graded_component(r + 1 - 2 * k),
        family,
    ))
}

pub fn verify_table(
    table: &CoefficientTable,
    r_min: usize,
    r_max: usize,
    store: &KerovStore,
) -> Result<TableVerification> {
    let k = table.kind.k();
    let family = table.kind.family();
    if r_min + 1 < 2 * k || r_min > r_max {
        return Err(Error::InvalidArgument(format!(
            "table {} needs r >= {} and a nonempty range",
            table.kind.name(),
            2 * k - 1
        )));
    }
    let f = table.to_symfunc();
    let rs: Vec<usize> = (r_min..=r_max).collect();
    store.get_many(&rs)?;
    let mut per_r = Vec::new();
    let mut points: Vec<Partition> = Vec::new();
    for &r in &rs {
        let predicted = predicted_component(family, k, r, &f);
        let computed = computed_component(store, family, k, r)?;
        per_r.push(compare_components(r, &predicted, &computed));
        points.extend(enumerate_partitions(r + 1 - 2 * k, 2));
    }
    let entries_exercised = table
        .entries
        .keys()
        .filter(|rho| {
            let m = SymFunc::term(Basis::M, (*rho).clone(), Rational::from_integer(1.into()))
                .convert(Basis::P);
            points
                .iter()
                .any(|mu| !evaluate_power_sum_form(&m, mu.parts()).is_zero())
        })
        .count();
    Ok(TableVerification {
        table: table.kind.name().to_string(),
        per_r,
        entries_exercised,
        entries_total: table.entries.len(),
    })
}

fn table_suite(
    name: &str,
    kind: TableKind,
    r_min: usize,
    r_max: usize,
    ctx: &SuiteContext,
) -> Result<SuiteReport> {
    let table = load_table(&ctx.tables, kind)?;
    let v = verify_table(&table, r_min, r_max, ctx.store)?;
    let mut checks: Vec<Check> = v
        .per_r
        .iter()
        .map(|c| {
            let detail = match &c.first_mismatch {
                None => format!("{} terms agree", c.terms),
                Some((idx, p, q)) => {
                    format!("first mismatch at {idx}: predicted {p}, computed {q}")
                }
            };
            Check::new(format!("{} r={}", kind.name(), c.r), c.pass, detail)
        })
        .collect();
    checks.push(Check::new(
        format!("{} coverage", kind.name()),
        true,
        format!(
            "{} of {} table rows are nonzero at some evaluation point for r in {r_min}..={r_max}",
            v.entries_exercised, v.entries_total
        ),
    ));
    Ok(SuiteReport::new(name, checks))
}

/// Seed for the random weights of the triple-sum checks.
pub const LEMMA_SEED: u64 = 0x6b_6572_6f76;

/// Everything a suite needs.
pub struct SuiteContext<'a> {
    pub store: &'a KerovStore,
    pub tables: TableSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Conj3,
    Conj4,
    Conj8,
    ClosedForms,
    PositivityR,
    PositivityC,
    PositivityQ,
    KerovTheorem,
    Lemmas,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Conj3,
        Suite::Conj4,
        Suite::Conj8,
        Suite::ClosedForms,
        Suite::PositivityR,
        Suite::PositivityC,
        Suite::PositivityQ,
        Suite::KerovTheorem,
        Suite::Lemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Conj3 => "conj3",
            Suite::Conj4 => "conj4",
            Suite::Conj8 => "conj8",
            Suite::ClosedForms => "closed-forms",
            Suite::PositivityR => "positivity-R",
            Suite::PositivityC => "positivity-C",
            Suite::PositivityQ => "positivity-Q",
            Suite::KerovTheorem => "kerov-theorem",
            Suite::Lemmas => "lemmas",
        }
    }

    pub fn from_name(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }

    /// Default upper end of the range the suite sweeps.
    pub fn default_r_max(self) -> usize {
        match self {
            Suite::Conj3 | Suite::Conj8 | Suite::ClosedForms => 13,
            Suite::Conj4 => 12,
            Suite::PositivityR | Suite::PositivityC | Suite::PositivityQ => 14,
            Suite::KerovTheorem => 8,
            Suite::Lemmas => 10,
        }
    }

    pub fn run(self, r_max: Option<usize>, ctx: &SuiteContext) -> Result<SuiteReport> {
        let r_max = r_max.unwrap_or(self.default_r_max());
        match self {
            Suite::Conj3 => table_suite(self.name(), TableKind::C3, 7, r_max, ctx),
            Suite::Conj8 => table_suite(self.name(), TableKind::A3, 7, r_max, ctx),
            Suite::Conj4 => table_suite(self.name(), TableKind::C4, 9, r_max, ctx),
            Suite::ClosedForms => closed_forms_suite(r_max, ctx),
            Suite::PositivityR => positivity_r_suite(r_max, ctx.store),
            Suite::PositivityC => family_positivity_suite(self.name(), Family::C, r_max, ctx.store),
            Suite::PositivityQ => family_positivity_suite(self.name(), Family::Q, r_max, ctx.store),
            Suite::KerovTheorem => kerov_theorem_suite(r_max, 11.max(r_max), ctx.store),
            Suite::Lemmas => Ok(lemmas_suite(r_max, r_max + 2, 20, LEMMA_SEED)),
        }
    }
}

fn poly_check(
    name: String,
    predicted: &CumulantPolynomial,
    computed: &CumulantPolynomial,
) -> Check {
    match predicted.first_difference(computed) {
        None => Check::new(
            name,
            true,
            format!("{} terms agree", computed.terms().len()),
        ),
        Some((k, p, c)) => Check::new(
            name,
            false,
            format!(
                "first mismatch at {k}: expected {}, found {}",
                format_rational(&p),
                format_rational(&c)
            ),
        ),
    }
}

/// `K_{r,r-1}` and `K_{r,r-3}` against their closed forms, the three
/// degree-4 tables forward-checked, and the f/g descriptions against each
/// other.
pub fn closed_forms_suite(r_max: usize, ctx: &SuiteContext) -> Result<SuiteReport> {
    let store = ctx.store;
    let rs: Vec<usize> = (3..=r_max).collect();
    store.get_many(&rs)?;
    let f2 = load_table(&ctx.tables, TableKind::F2)?.to_symfunc();
    let g2 = load_table(&ctx.tables, TableKind::G2)?.to_symfunc();
    let upper = load_table(&ctx.tables, TableKind::UpperF2)?.to_symfunc();
    let mut checks = Vec::new();
    for &r in &rs {
        let kr = store.get(r)?;
        checks.push(poly_check(
            format!("K_(r,r-1) r={r}"),
            &krr1_closed_form(r),
            &kr.graded_component(r - 1),
        ));
        if r >= 5 {
            let computed = kr.graded_component(r - 3);
            checks.push(poly_check(
                format!("K_(r,r-3) r={r}"),
                &krr3_closed_form(r),
                &computed,
            ));
            for (name, family, f) in [
                ("f2", Family::R, &f2),
                ("g2", Family::Q, &g2),
                ("F2", Family::C, &upper),
            ] {
                let predicted = change_generators(&predicted_component(family, 2, r, f), Family::R);
                checks.push(poly_check(format!("{name} r={r}"), &predicted, &computed));
            }
            let via_g = change_generators(&predicted_component_g(2, r, &g2), Family::R);
            checks.push(poly_check(
                format!("f2 vs g2 r={r}"),
                &predicted_component_f(2, r, &f2),
                &via_g,
            ));
        }
    }
    let rep = positivity_report_symfunc(&upper);
    let expected = vec![
        (
            Partition::new(vec![2, 1, 1]),
            format_rational(&ratio(-4, 2880)),
        ),
        (
            Partition::new(vec![1, 1, 1]),
            format_rational(&ratio(-24, 2880)),
        ),
    ];
    checks.push(Check::new(
        "F2 negative entries",
        rep.negatives == expected,
        format!("{:?}", rep.negatives),
    ));
    Ok(SuiteReport::new(Suite::ClosedForms.name(), checks))
}

/// Monic top term, parity and nonnegative integer coefficients of `K_r`.
pub fn positivity_r_suite(r_max: usize, store: &KerovStore) -> Result<SuiteReport> {
    let rs: Vec<usize> = (2..=r_max).collect();
    let ks = store.get_many(&rs)?;
    let checks = ks
        .iter()
        .map(|k| {
            let findings = k.findings();
            let detail = if findings.is_empty() {
                format!("{} terms, all nonnegative integers", k.poly.terms().len())
            } else {
                findings
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join("; ")
            };
            Check::new(format!("K_{}", k.r), findings.is_empty(), detail)
        })
        .collect();
    Ok(SuiteReport::new(Suite::PositivityR.name(), checks))
}

/// Nonnegativity of every `K_{r,r-2k+1}` expanded in the C or Q family.
pub fn family_positivity_suite(
    name: &str,
    family: Family,
    r_max: usize,
    store: &KerovStore,
) -> Result<SuiteReport> {
    let rs: Vec<usize> = (2..=r_max).collect();
    let ks = store.get_many(&rs)?;
    let mut checks = Vec::new();
    for kr in &ks {
        let r = kr.r;
        let mut negatives = Vec::new();
        let mut terms = 0;
        for k in 1..=r.div_ceil(2) {
            let comp = change_generators(&kr.graded_component(r + 1 - 2 * k), family);
            terms += comp.terms().len();
            for (idx, c) in comp.negative_terms() {
                negatives.push(format!(
                    "K_({r},{}) {}{idx} = {}",
                    r + 1 - 2 * k,
                    family.letter(),
                    format_rational(&c)
                ));
            }
        }
        let detail = if negatives.is_empty() {
            format!("{terms} terms, all nonnegative")
        } else {
            negatives.join("; ")
        };
        checks.push(Check::new(
            format!("K_{r} in {}", family.letter()),
            negatives.is_empty(),
            detail,
        ));
    }
    Ok(SuiteReport::new(name, checks))
}

/// `K_r` at the free cumulants of every `λ` with `r <= |λ| <= n_max` against
/// the normalized character.
pub fn kerov_theorem_suite(r_max: usize, n_max: usize, store: &KerovStore) -> Result<SuiteReport> {
    let rs: Vec<usize> = (2..=r_max).collect();
    let ks = store.get_many(&rs)?;
    let mut checks = Vec::new();
    for kr in &ks {
        let r = kr.r;
        let mut evaluated = 0;
        let mut bad = None;
        'sizes: for n in r..=n_max {
            for lam in enumerate_partitions(n, 1) {
                evaluated += 1;
                let lhs = kr.evaluate_at(&lam)?;
                let rhs = normalized_character(&lam, r)?;
                if lhs != rhs {
                    bad = Some(format!(
                        "λ = {lam}: K_{r} gives {}, character {}",
                        format_rational(&lhs),
                        format_rational(&rhs)
                    ));
                    break 'sizes;
                }
            }
        }
        checks.push(match bad {
            None => Check::new(
                format!("K_{r}"),
                true,
                format!("{evaluated} diagrams agree"),
            ),
            Some(d) => Check::new(format!("K_{r}"), false, d),
        });
    }
    Ok(SuiteReport::new(Suite::KerovTheorem.name(), checks))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-20..=20), rng.gen_range(1..=9))
}

/// Random `(a, b, c)` triples from a fixed seed.
pub fn random_triples(draws: usize, seed: u64) -> Vec<(Rational, Rational, Rational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..draws)
        .map(|_| {
            (
                random_rational(&mut rng),
                random_rational(&mut rng),
                random_rational(&mut rng),
            )
        })
        .collect()
}

/// Both triple-sum lemmas for `1 <= n <= lemma_n`, and the weighted
/// `C_i C_j C_k` sums for `n <= triple_n` with random weights.
pub fn lemmas_suite(lemma_n: usize, triple_n: usize, draws: usize, seed: u64) -> SuiteReport {
    let mut checks = Vec::new();
    for n in 1..=lemma_n {
        for (name, result) in [
            ("power-sum expansion", check_power_sum_lemma(n)),
            ("complete expansion", check_complete_lemma(n)),
        ] {
            checks.push(match result {
                Ok(()) => Check::new(format!("{name} n={n}"), true, "exact"),
                Err(e) => Check::new(format!("{name} n={n}"), false, e),
            });
        }
    }
    let triples = random_triples(draws, seed);
    for n in 0..=triple_n {
        let failure = triples
            .iter()
            .find_map(|(a, b, c)| check_triple_sum(a, b, c, n).err());
        checks.push(match failure {
            None => Check::new(
                format!("triple sums n={n}"),
                true,
                format!("{draws} random weights"),
            ),
            Some(e) => Check::new(format!("triple sums n={n}"), false, e),
        });
    }
    SuiteReport::new(Suite::Lemmas.name(), checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kerov::compute_kerov;
    use crate::kerov::SamplingConfig;

    #[test]
    fn positivity_report_examples() {
        let f2 = load_table(&TableSource::Embedded, TableKind::F2)
            .unwrap()
            .to_symfunc();
        let rep = positivity_report_symfunc(&f2);
        assert_eq!((rep.positive, rep.negative), (11, 0));
        let upper = load_table(&TableSource::Embedded, TableKind::UpperF2)
            .unwrap()
            .to_symfunc();
        let rep = positivity_report_symfunc(&upper);
        assert_eq!(rep.negative, 2);
        let k6 = compute_kerov(6, &SamplingConfig::default()).unwrap();
        assert!(positivity_report_poly(&k6.poly).is_nonnegative());
    }

    #[test]
    fn small_suites_pass() {
        let store = KerovStore::in_memory();
        let ctx = SuiteContext {
            store: &store,
            tables: TableSource::Embedded,
        };
        for (suite, r_max) in [
            (Suite::ClosedForms, 8),
            (Suite::PositivityR, 8),
            (Suite::PositivityC, 8),
            (Suite::PositivityQ, 8),
            (Suite::KerovTheorem, 5),
            (Suite::Lemmas, 5),
            (Suite::Conj3, 8),
        ] {
            let rep = suite.run(Some(r_max), &ctx).unwrap();
            assert!(
                rep.pass,
                "{}: {:?}",
                suite.name(),
                rep.failures().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn a_wrong_table_is_a_finding() {
        let store = KerovStore::in_memory();
        let mut table = load_table(&TableSource::Embedded, TableKind::C3).unwrap();
        *table.entries.get_mut(&Partition::new(vec![1])).unwrap() += 1;
        let v = verify_table(&table, 7, 8, &store).unwrap();
        assert!(!v.pass());
        assert!(v.per_r.iter().all(|c| c.first_mismatch.is_some()));
    }
}
