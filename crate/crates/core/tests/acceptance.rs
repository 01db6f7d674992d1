//! Acceptance gate: one PASS/FAIL line per criterion, nonzero exit when any
//! required criterion fails. Criterion 12 (full extraction of f_3) is a
//! stretch goal: it is reported but never fails the run.
//!
//! `KEROVLAB_CACHE` points the Kerov store at a disk cache;
//! `KEROVLAB_SKIP_STRETCH=1` skips criterion 12.

use std::process::ExitCode;
use std::sync::{mpsc, Arc};
use std::time::{Duration, Instant};

use kerovlab::cumulants::free_cumulants;
use kerovlab::kerov::{krr1_closed_form, krr3_closed_form, Family, KerovStore, SamplingConfig};
use kerovlab::lab::verify::{
    closed_forms_suite, computed_component, family_positivity_suite, kerov_theorem_suite,
    lemmas_suite, positivity_r_suite, positivity_report_symfunc, verify_table, LEMMA_SEED,
};
use kerovlab::lab::{
    extract_symfunc, load_table, predicted_component, SuiteContext, SuiteReport, TableKind,
    TableSource,
};
use kerovlab::partition::{enumerate_partitions, Partition};
use kerovlab::rational::{format_rational, ratio, Rational};
use kerovlab::{Basis, SymFunc};

type Outcome = Result<(bool, String), String>;

const STRETCH_BUDGET: Duration = Duration::from_secs(3600);

fn suite_outcome(rep: &SuiteReport) -> (bool, String) {
    let failed: Vec<String> = rep
        .failures()
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    if failed.is_empty() {
        (true, format!("{} checks", rep.checks.len()))
    } else {
        (false, failed.join("; "))
    }
}

fn oracle_equivalence(store: &KerovStore) -> Outcome {
    let rep = kerov_theorem_suite(8, 11, store).map_err(|e| e.to_string())?;
    let diagrams: usize = (2..=11).map(|n| enumerate_partitions(n, 1).len()).sum();
    let (pass, detail) = suite_outcome(&rep);
    Ok((
        pass,
        format!("{detail}, K_2..K_8 on the {diagrams} diagrams of size 2..=11 with |λ| >= r"),
    ))
}

/// Extraction over `r` in 5..=12 against the printed table, constant term
/// required to vanish.
fn extraction_matches(store: &KerovStore, target: Family, kind: TableKind) -> Outcome {
    let rep = extract_symfunc(target, 2, 5, 12, store).map_err(|e| e.to_string())?;
    let table = load_table(&TableSource::Embedded, kind).map_err(|e| e.to_string())?;
    let Some(sol) = rep.solution else {
        return Ok((
            false,
            format!(
                "not determined: rank {} of {}, consistent = {}",
                rep.system_rank, rep.unknown_count, rep.consistent
            ),
        ));
    };
    let constant = sol.coefficient(&Partition::new(vec![]));
    let scaled = sol.scale(&Rational::from_integer(table.scale.clone()));
    let pass = sol == table.to_symfunc() && constant == ratio(0, 1);
    Ok((
        pass,
        format!(
            "{} · {} = {}; rank {} of {}",
            table.scale,
            kind.name(),
            scaled,
            rep.system_rank,
            rep.unknown_count
        ),
    ))
}

fn upper_f_forward(store: &KerovStore) -> Outcome {
    let table =
        load_table(&TableSource::Embedded, TableKind::UpperF2).map_err(|e| e.to_string())?;
    let f = table.to_symfunc();
    let mut bad = Vec::new();
    for r in 5..=12 {
        let computed = computed_component(store, Family::C, 2, r).map_err(|e| e.to_string())?;
        if predicted_component(Family::C, 2, r, &f) != computed {
            bad.push(r);
        }
    }
    let negatives = positivity_report_symfunc(&f).negatives;
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
    let shown: Vec<String> = table
        .negative_entries()
        .iter()
        .map(|(p, c)| format!("m{p}: {c}/{}", table.scale))
        .collect();
    Ok((
        bad.is_empty() && negatives == expected,
        format!(
            "mismatch at r = {bad:?}; negative entries: {}",
            shown.join(", ")
        ),
    ))
}

fn closed_forms(store: &KerovStore) -> Outcome {
    let mut bad = Vec::new();
    for r in 3..=14 {
        let kr = store.get(r).map_err(|e| e.to_string())?;
        if kr.graded_component(r - 1) != krr1_closed_form(r) {
            bad.push(format!("K_({r},{})", r - 1));
        }
        if r >= 5 && kr.graded_component(r - 3) != krr3_closed_form(r) {
            bad.push(format!("K_({r},{})", r - 3));
        }
    }
    // the suite version also cross-checks f2, g2 and F2 along the way
    let ctx = SuiteContext {
        store,
        tables: TableSource::Embedded,
    };
    let suite = closed_forms_suite(14, &ctx).map_err(|e| e.to_string())?;
    let (suite_pass, detail) = suite_outcome(&suite);
    Ok((
        bad.is_empty() && suite_pass,
        format!("K_(r,r-1) for r in 3..=14, K_(r,r-3) for r in 5..=14; failures {bad:?}; suite {detail}"),
    ))
}

/// Forward check of a conjectural table on `r_min..=r_max` (required), then
/// on up to `r_cover` so that every row meets a diagram where its monomial
/// is nonzero.
fn table_forward(
    store: &KerovStore,
    kind: TableKind,
    r_min: usize,
    r_max: usize,
    r_cover: usize,
) -> Outcome {
    let table = load_table(&TableSource::Embedded, kind).map_err(|e| e.to_string())?;
    let core = verify_table(&table, r_min, r_max, store).map_err(|e| e.to_string())?;
    let wide = verify_table(&table, r_min, r_cover, store).map_err(|e| e.to_string())?;
    let bad: Vec<String> = wide
        .per_r
        .iter()
        .filter(|c| !c.pass)
        .map(|c| match &c.first_mismatch {
            Some((p, a, b)) => format!("r={} at {p}: predicted {a}, computed {b}", c.r),
            None => format!("r={}", c.r),
        })
        .collect();
    let all_rows = wide.entries_exercised == wide.entries_total;
    let mut detail = format!(
        "exact for r in {r_min}..={r_max}, {} of {} rows exercised",
        core.entries_exercised, core.entries_total
    );
    if r_cover > r_max {
        detail.push_str(&format!(
            "; extended to r <= {r_cover}: {} of {} rows exercised",
            wide.entries_exercised, wide.entries_total
        ));
    }
    if !bad.is_empty() {
        detail = format!("mismatches {}", bad.join("; "));
    }
    Ok((bad.is_empty() && (r_cover == r_max || all_rows), detail))
}

fn positivity(store: &KerovStore) -> Outcome {
    let reports = [
        positivity_r_suite(14, store).map_err(|e| e.to_string())?,
        family_positivity_suite("positivity-C", Family::C, 14, store).map_err(|e| e.to_string())?,
        family_positivity_suite("positivity-Q", Family::Q, 14, store).map_err(|e| e.to_string())?,
    ];
    let pass = reports.iter().all(|r| r.pass);
    let detail = reports
        .iter()
        .map(|r| format!("{}: {}", r.suite, suite_outcome(r).1))
        .collect::<Vec<_>>()
        .join("; ");
    Ok((pass, detail))
}

fn identities() -> Outcome {
    let rep = lemmas_suite(10, 12, 20, LEMMA_SEED);
    Ok(suite_outcome(&rep))
}

fn cumulant_properties() -> Outcome {
    let mut checked = 0;
    for n in 1..=12 {
        for lam in enumerate_partitions(n, 1) {
            let r = free_cumulants(&lam, 10).map_err(|e| e.to_string())?;
            let rt = free_cumulants(&lam.conjugate(), 10).map_err(|e| e.to_string())?;
            if r.get(2) != Rational::from_integer(n.into()) {
                return Ok((false, format!("R_2({lam}) = {}", r.get(2))));
            }
            for k in 2..=10 {
                let sign = if k % 2 == 0 {
                    ratio(1, 1)
                } else {
                    ratio(-1, 1)
                };
                if rt.get(k) != sign * r.get(k) {
                    return Ok((false, format!("R_{k} of {lam} and its transpose")));
                }
            }
            checked += 1;
        }
    }
    Ok((true, format!("{checked} diagrams, k <= 10")))
}

fn stretch(store: Arc<KerovStore>) -> (String, String) {
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let result = extract_symfunc(Family::R, 3, 5, 21, &store).map_err(|e| e.to_string());
        let _ = tx.send(result);
    });
    let table = match load_table(&TableSource::Embedded, TableKind::C3) {
        Ok(t) => t,
        Err(e) => return ("FAIL".into(), e.to_string()),
    };
    match rx.recv_timeout(STRETCH_BUDGET) {
        Err(_) => (
            "INCOMPLETE".into(),
            format!("not finished within {STRETCH_BUDGET:?}"),
        ),
        Ok(Err(e)) => ("FAIL".into(), e),
        Ok(Ok(rep)) => match rep.solution {
            None => (
                "FAIL".into(),
                format!(
                    "rank {} of {} unknowns, consistent = {}",
                    rep.system_rank, rep.unknown_count, rep.consistent
                ),
            ),
            Some(sol) => {
                let expected: SymFunc = table.to_symfunc();
                let differing = sol.sub(&expected).convert(Basis::M).terms().len();
                let status = if differing == 0 { "PASS" } else { "FAIL" };
                (
                    status.into(),
                    format!(
                        "f_3 determined uniquely (rank {} of {}); {} of {} table rows reproduced, {differing} differing",
                        rep.system_rank,
                        rep.unknown_count,
                        table.entries.len() - differing.min(table.entries.len()),
                        table.entries.len()
                    ),
                )
            }
        },
    }
}

fn main() -> ExitCode {
    let cache = std::env::var_os("KEROVLAB_CACHE").map(Into::into);
    let store = Arc::new(KerovStore::new(SamplingConfig::default(), cache));

    let criteria: Vec<(&str, Box<dyn Fn(&KerovStore) -> Outcome>)> = vec![
        (
            "1 Kerov polynomials against the character oracle",
            Box::new(oracle_equivalence),
        ),
        (
            "2 extraction of f_2 over r in 5..=12",
            Box::new(|s| extraction_matches(s, Family::R, TableKind::F2)),
        ),
        (
            "3 extraction of g_2 over r in 5..=12",
            Box::new(|s| extraction_matches(s, Family::Q, TableKind::G2)),
        ),
        (
            "4 F_2 forward check and its negative entries",
            Box::new(upper_f_forward),
        ),
        (
            "5 closed forms of K_(r,r-1) and K_(r,r-3)",
            Box::new(closed_forms),
        ),
        (
            "6 c3 table against K_(r,r-5)",
            Box::new(|s| table_forward(s, TableKind::C3, 7, 13, 21)),
        ),
        (
            "7 a3 table against K_(r,r-5) via the Q family",
            Box::new(|s| table_forward(s, TableKind::A3, 7, 13, 21)),
        ),
        (
            "8 c4 table against K_(r,r-7)",
            Box::new(|s| table_forward(s, TableKind::C4, 9, 12, 12)),
        ),
        (
            "9 positivity in the R, C and Q families",
            Box::new(positivity),
        ),
        (
            "10 triple-sum lemmas and weighted sums",
            Box::new(|_| identities()),
        ),
        (
            "11 cumulant symmetries",
            Box::new(|_| cumulant_properties()),
        ),
    ];

    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let (status, detail) = match check(&store) {
            Ok((true, d)) => ("PASS", d),
            Ok((false, d)) => ("FAIL", d),
            Err(e) => ("FAIL", format!("error: {e}")),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!(
            "[{status}] {name} ({:.1}s): {detail}",
            start.elapsed().as_secs_f64()
        );
    }

    let name = "12 (stretch) f_3 extracted from r <= 21 against the c3 table";
    if std::env::var("KEROVLAB_SKIP_STRETCH").is_ok_and(|v| v == "1") {
        println!("[SKIP] {name}: KEROVLAB_SKIP_STRETCH=1");
    } else {
        let start = Instant::now();
        let (status, detail) = stretch(Arc::clone(&store));
        println!(
            "[{status}] {name} ({:.1}s): {detail}",
            start.elapsed().as_secs_f64()
        );
    }

    println!(
        "acceptance: {} of {} required criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
