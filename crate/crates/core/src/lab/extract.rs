//! Recovers the describing symmetric function of `K_{r,r-2k+1}` from
//! computed Kerov polynomials by solving for its monomial coefficients.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kerov::closed_forms::{script_q_factor, script_r_factor};
use crate::kerov::{change_generators, Family, KerovStore};
use crate::linalg::solve;
use crate::partition::{enumerate_partitions, multiplicity_factorial, partitions_up_to, Partition};
use crate::rational::{binomial, factorial, Rational};
use crate::symfunc::{evaluate_power_sum_form, Basis, SymFunc};

/// The conventional letter of the describing function: `f` (R), `g` (Q),
/// `F` (C).
pub fn target_letter(family: Family) -> &'static str {
    match family {
        Family::R => "f",
        Family::Q => "g",
        Family::C => "F",
    }
}

pub fn target_from_letter(s: &str) -> Result<Family> {
    match s {
        "f" => Ok(Family::R),
        "g" => Ok(Family::Q),
        "F" => Ok(Family::C),
        _ => Err(Error::Parse(format!(
            "unknown target {s:?}; expected f, g or F"
        ))),
    }
}

#[derive(Clone, Debug)]
pub struct ExtractionReport {
    pub target: Family,
    pub k: usize,
    pub r_min: usize,
    pub r_max: usize,
    /// Present only for a consistent system of full column rank.
    pub solution: Option<SymFunc>,
    pub system_rank: usize,
    pub unknown_count: usize,
    pub equation_count: usize,
    pub consistent: bool,
    pub residual_rows: Vec<(usize, Partition)>,
}

impl ExtractionReport {
    pub fn is_unique(&self) -> bool {
        self.solution.is_some()
    }
}

/// Divisor turning the coefficient of the plain monomial indexed by `mu`
/// into the value of the describing function at `mu`. `None` when the
/// formula has no term for `mu` (more parts than slots for `F`).
pub fn structural_factor(target: Family, k: usize, r: usize, mu: &Partition) -> Option<Rational> {
    let lead = Rational::from_integer(binomial(r + 1, 3));
    let l = mu.len();
    let f = match target {
        Family::R => Rational::from_integer(factorial(l + 2 * k - 2)) * script_r_factor(mu),
        Family::Q => {
            Rational::from_integer(num_bigint::BigInt::from(2 * k - 1).pow(l as u32))
                * script_q_factor(mu)
        }
        Family::C => {
            let slots = 2 * k - 1;
            if l > slots {
                return None;
            }
            // arrangements of μ padded with zeros into the slots
            Rational::new(
                factorial(slots),
                multiplicity_factorial(mu) * factorial(slots - l),
            )
        }
    };
    Some(lead * f)
}

/// Solves `Σ_ρ c_ρ m_ρ(μ) = value(μ)` over all `μ` (parts `>= 2`,
/// `|μ| = r - 2k + 1`, `r` in range) for every `|ρ| <= 4(k-1)`, constant
/// term included.
pub fn extract_symfunc(
    target: Family,
    k: usize,
    r_min: usize,
    r_max: usize,
    store: &KerovStore,
) -> Result<ExtractionReport> {
    if k == 0 || r_min > r_max || r_min < 2 || r_min + 1 < 2 * k {
        return Err(Error::InvalidArgument(format!(
            "need k >= 1 and 2 <= r_min <= r_max with r_min >= 2k - 1 (k = {k}, r = {r_min}..{r_max})"
        )));
    }
    let unknowns = partitions_up_to(4 * (k - 1), 1);
    let monomials: Vec<SymFunc> = unknowns
        .iter()
        .map(|rho| {
            SymFunc::term(Basis::M, rho.clone(), Rational::from_integer(1.into())).convert(Basis::P)
        })
        .collect();

    let rs: Vec<usize> = (r_min..=r_max).collect();
    let kerovs = store.get_many(&rs)?;

    let mut a: Vec<Vec<Rational>> = Vec::new();
    let mut b: Vec<Rational> = Vec::new();
    let mut labels: Vec<(usize, Partition)> = Vec::new();
    let mut residual_rows = Vec::new();
    for (kr, &r) in kerovs.iter().zip(&rs) {
        let s = r + 1 - 2 * k;
        let component = change_generators(&kr.graded_component(s), target);
        for mu in enumerate_partitions(s, 2) {
            let coef = component.coefficient(&mu);
            match structural_factor(target, k, r, &mu) {
                Some(factor) => {
                    a.push(
                        monomials
                            .iter()
                            .map(|m| evaluate_power_sum_form(m, mu.parts()))
                            .collect(),
                    );
                    b.push(coef / factor);
                    labels.push((r, mu));
                }
                None if !coef.is_zero() => residual_rows.push((r, mu)),
                None => {}
            }
        }
    }

    let solved = solve(&a, &b);
    residual_rows.extend(solved.inconsistent_rows.iter().map(|&i| labels[i].clone()));
    residual_rows.sort();
    let consistent = residual_rows.is_empty();
    let solution = solved
        .solution
        .filter(|_| consistent)
        .map(|x| SymFunc::from_terms(Basis::M, unknowns.iter().cloned().zip(x)));
    Ok(ExtractionReport {
        target,
        k,
        r_min,
        r_max,
        solution,
        system_rank: solved.rank,
        unknown_count: unknowns.len(),
        equation_count: labels.len(),
        consistent,
        residual_rows,
    })
}
