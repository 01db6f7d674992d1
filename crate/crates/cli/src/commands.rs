use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use kerovlab::character::{cycle_character, dimension, normalized_character};
use kerovlab::cumulants::free_cumulants;
use kerovlab::kerov::{change_generators, CumulantPolynomial, Family, KerovStore, Origin};
use kerovlab::lab::verify::{kerov_theorem_suite, lemmas_suite};
use kerovlab::lab::{
    extract_symfunc, load_all, target_letter, ExtractionReport, Suite, SuiteContext, SuiteReport,
    TableSource,
};
use kerovlab::linalg::clear_denominators;
use kerovlab::partition::{partitions_up_to, Partition};
use kerovlab::rational::format_rational;
use kerovlab::{Error, Result};

use crate::{Command, FamilyArg, OutFormat, SuiteArg, TargetArg};

pub struct Context {
    pub store: KerovStore,
    pub tables: TableSource,
}

pub struct Outcome {
    pub stdout: String,
    pub summary: String,
    pub finding: bool,
}

impl Outcome {
    fn json(value: &Value, summary: String, finding: bool) -> Result<Outcome> {
        Ok(Outcome {
            stdout: serde_json::to_string(value)?,
            summary,
            finding,
        })
    }
}

fn family(f: FamilyArg) -> Family {
    match f {
        FamilyArg::R => Family::R,
        FamilyArg::C => Family::C,
        FamilyArg::Q => Family::Q,
    }
}

fn target(t: TargetArg) -> Family {
    match t {
        TargetArg::LowerF => Family::R,
        TargetArg::LowerG => Family::Q,
        TargetArg::UpperF => Family::C,
    }
}

fn suite(s: SuiteArg) -> Suite {
    match s {
        SuiteArg::Conj3 => Suite::Conj3,
        SuiteArg::Conj4 => Suite::Conj4,
        SuiteArg::Conj8 => Suite::Conj8,
        SuiteArg::ClosedForms => Suite::ClosedForms,
        SuiteArg::PositivityR => Suite::PositivityR,
        SuiteArg::PositivityC => Suite::PositivityC,
        SuiteArg::PositivityQ => Suite::PositivityQ,
        SuiteArg::KerovTheorem => Suite::KerovTheorem,
        SuiteArg::Lemmas => Suite::Lemmas,
    }
}

fn parse_lambda(s: &str) -> Result<Partition> {
    let lambda: Partition = s.parse()?;
    if lambda.is_empty() {
        return Err(Error::EmptyPartition("diagram"));
    }
    Ok(lambda)
}

fn terms_json(poly: &CumulantPolynomial) -> Value {
    serde_json::to_value(poly.to_json_terms()).expect("terms serialize")
}

pub fn run(command: &Command, ctx: &Context) -> Result<Outcome> {
    match command {
        Command::Kerov {
            r,
            basis,
            component,
            out,
        } => kerov(ctx, *r as usize, family(*basis), *component, *out),
        Command::Cumulants { lambda, max_k } => cumulants(&parse_lambda(lambda)?, *max_k as usize),
        Command::Character { lambda, r } => character(&parse_lambda(lambda)?, *r as usize),
        Command::Extract {
            family,
            k,
            r_min,
            r_max,
        } => extract(ctx, target(*family), *k as usize, *r_min, *r_max),
        Command::Verify { suite: s, r_max } => verify(ctx, suite(*s), *r_max),
        Command::Selftest => selftest(ctx),
    }
}

fn origin_note(r: usize, origin: Origin) -> String {
    match origin {
        Origin::Memory | Origin::Computed => format!("K_{r} computed"),
        Origin::Disk => format!("K_{r} read from cache"),
        Origin::Recomputed => format!("K_{r} recomputed (cache file was stale or invalid)"),
    }
}

fn kerov(
    ctx: &Context,
    r: usize,
    basis: Family,
    component: Option<usize>,
    out: OutFormat,
) -> Result<Outcome> {
    let (k, origin) = ctx.store.get_with_origin(r)?;
    let poly = match component {
        Some(s) => k.graded_component(s),
        None => k.poly.clone(),
    };
    let poly = change_generators(&poly, basis);
    let mut summary = origin_note(r, origin);
    for f in k.findings() {
        summary.push_str(&format!("\nfinding: {f}"));
    }
    let finding = !k.findings().is_empty();
    let stdout = match out {
        OutFormat::Json => {
            let mut obj = Map::new();
            obj.insert("r".into(), json!(r));
            if basis != Family::R {
                obj.insert("basis".into(), json!(basis.letter().to_string()));
            }
            if let Some(s) = component {
                obj.insert("component".into(), json!(s));
            }
            obj.insert("terms".into(), terms_json(&poly));
            serde_json::to_string(&Value::Object(obj))?
        }
        OutFormat::Csv => {
            let mut lines = vec!["partition;coef".to_string()];
            lines.extend(
                poly.sorted_terms()
                    .into_iter()
                    .map(|(p, c)| format!("{};{}", p.to_text(), format_rational(c))),
            );
            lines.join("\n")
        }
        OutFormat::Text => {
            let name = match component {
                Some(s) => format!("K_({r},{s})"),
                None => format!("K_{r}"),
            };
            format!("{name} = {poly}")
        }
    };
    Ok(Outcome {
        stdout,
        summary,
        finding,
    })
}

fn cumulants(lambda: &Partition, max_k: usize) -> Result<Outcome> {
    let r = free_cumulants(lambda, max_k)?;
    let values: Map<String, Value> = (2..=max_k)
        .map(|k| (k.to_string(), json!(format_rational(&r.get(k)))))
        .collect();
    let value = json!({ "lambda": lambda, "R": values });
    Outcome::json(
        &value,
        format!("free cumulants of {lambda} up to R_{max_k}"),
        false,
    )
}

fn character(lambda: &Partition, r: usize) -> Result<Outcome> {
    let normalized = normalized_character(lambda, r)?;
    let dim = dimension(lambda)?;
    let raw = cycle_character(lambda, r)?;
    let value = json!({
        "lambda": lambda,
        "r": r,
        "normalized": format_rational(&normalized),
        "dim": dim.to_string(),
        "raw": raw.to_string(),
    });
    Outcome::json(
        &value,
        format!("normalized character of {lambda} on a {r}-cycle"),
        false,
    )
}

fn extraction_json(rep: &ExtractionReport) -> Value {
    let residual: Vec<Value> = rep
        .residual_rows
        .iter()
        .map(|(r, mu)| json!({ "r": r, "partition": mu }))
        .collect();
    let mut obj = Map::new();
    obj.insert("target".into(), json!(target_letter(rep.target)));
    obj.insert("k".into(), json!(rep.k));
    obj.insert("r_min".into(), json!(rep.r_min));
    obj.insert("r_max".into(), json!(rep.r_max));
    obj.insert("unknowns".into(), json!(rep.unknown_count));
    obj.insert("equations".into(), json!(rep.equation_count));
    obj.insert("rank".into(), json!(rep.system_rank));
    obj.insert("consistent".into(), json!(rep.consistent));
    obj.insert("unique".into(), json!(rep.is_unique()));
    obj.insert("residual_rows".into(), Value::Array(residual));
    match &rep.solution {
        Some(sol) => {
            let sorted = sol.sorted_terms();
            let coefs: Vec<_> = sorted.iter().map(|(_, c)| (*c).clone()).collect();
            let scaled = clear_denominators(&coefs);
            let denominator = coefs
                .iter()
                .zip(&scaled)
                .find(|(c, _)| !num_traits_is_zero(c))
                .map(|(c, s)| {
                    (kerovlab::Rational::from_integer(s.clone()) / (*c).clone()).to_integer()
                })
                .unwrap_or_else(|| BigInt::from(1));
            let scaled_terms: Vec<Value> = sorted
                .iter()
                .zip(&scaled)
                .map(|((p, _), s)| json!({ "partition": p, "coef": s.to_string() }))
                .collect();
            obj.insert(
                "solution".into(),
                serde_json::to_value(sol.to_json()).expect("symfunc serializes"),
            );
            obj.insert("denominator".into(), json!(denominator.to_string()));
            obj.insert("scaled_terms".into(), Value::Array(scaled_terms));
        }
        None => {
            obj.insert("solution".into(), Value::Null);
        }
    }
    Value::Object(obj)
}

fn num_traits_is_zero(c: &kerovlab::Rational) -> bool {
    c.numer().sign() == num_bigint::Sign::NoSign
}

fn extract(ctx: &Context, t: Family, k: usize, r_min: usize, r_max: usize) -> Result<Outcome> {
    let rep = extract_symfunc(t, k, r_min, r_max, &ctx.store)?;
    let name = format!("{}_{k}", target_letter(t));
    let summary = match (&rep.solution, rep.consistent) {
        (Some(sol), _) => format!(
            "{name} determined uniquely (rank {}): {sol}",
            rep.system_rank
        ),
        (None, true) => format!(
            "{name} not determined: rank {} of {} unknowns over {} equations",
            rep.system_rank, rep.unknown_count, rep.equation_count
        ),
        (None, false) => format!(
            "{name}: system inconsistent at {} rows (first at r = {}, μ = {})",
            rep.residual_rows.len(),
            rep.residual_rows[0].0,
            rep.residual_rows[0].1
        ),
    };
    Outcome::json(&extraction_json(&rep), summary, !rep.consistent)
}

fn suite_summary(rep: &SuiteReport) -> String {
    let failed: Vec<_> = rep.failures().collect();
    let mut s = format!(
        "{}: {} checks, {}",
        rep.suite,
        rep.checks.len(),
        if failed.is_empty() {
            "all pass".to_string()
        } else {
            format!("{} failed", failed.len())
        }
    );
    for c in failed {
        s.push_str(&format!("\n  {}: {}", c.name, c.detail));
    }
    s
}

fn verify(ctx: &Context, s: Suite, r_max: Option<usize>) -> Result<Outcome> {
    let sctx = SuiteContext {
        store: &ctx.store,
        tables: ctx.tables.clone(),
    };
    let rep = s.run(r_max, &sctx)?;
    Outcome::json(&serde_json::to_value(&rep)?, suite_summary(&rep), !rep.pass)
}

/// Every monomial of weight <= `max_weight` survives a trip through each
/// other family.
fn conversion_roundtrips(max_weight: usize) -> SuiteReport {
    let mut checks = Vec::new();
    for from in [Family::R, Family::C, Family::Q] {
        for via in [Family::R, Family::C, Family::Q] {
            let bad = partitions_up_to(max_weight, 2).into_iter().find(|mu| {
                let p = CumulantPolynomial::monomial(from, mu.clone(), kerovlab::rational::rat(1));
                change_generators(&change_generators(&p, via), from) != p
            });
            let name = format!("{} -> {} -> {}", from.letter(), via.letter(), from.letter());
            checks.push(match bad {
                None => kerovlab::lab::Check::new(name, true, format!("weight <= {max_weight}")),
                Some(mu) => kerovlab::lab::Check::new(name, false, format!("fails at {mu}")),
            });
        }
    }
    SuiteReport::new("roundtrip", checks)
}

fn selftest(ctx: &Context) -> Result<Outcome> {
    // checksum or parse failures are errors (exit 2), not findings
    let tables = load_all(&ctx.tables)?;
    let sctx = SuiteContext {
        store: &ctx.store,
        tables: ctx.tables.clone(),
    };
    let mut reports = vec![
        SuiteReport::new(
            "tables",
            tables
                .iter()
                .map(|t| {
                    kerovlab::lab::Check::new(
                        t.kind.name(),
                        true,
                        format!("{} rows, checksum ok, scale {}", t.entries.len(), t.scale),
                    )
                })
                .collect(),
        ),
        conversion_roundtrips(8),
        lemmas_suite(6, 8, 5, 7),
        kerov_theorem_suite(6, 9, &ctx.store)?,
    ];
    for (s, r_max) in [
        (Suite::ClosedForms, 9),
        (Suite::PositivityR, 9),
        (Suite::PositivityC, 9),
        (Suite::PositivityQ, 9),
        (Suite::Conj3, 9),
        (Suite::Conj8, 9),
        (Suite::Conj4, 9),
    ] {
        reports.push(s.run(Some(r_max), &sctx)?);
    }
    let pass = reports.iter().all(|r| r.pass);
    let summary = reports
        .iter()
        .map(suite_summary)
        .collect::<Vec<_>>()
        .join("\n");
    let value = json!({ "pass": pass, "suites": reports });
    Outcome::json(&value, summary, !pass)
}
