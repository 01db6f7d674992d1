//! Reconstruction of `K_r` by exact interpolation against the normalized
//! character oracle.
//!
//! Unknowns are the coefficients of `R_μ` for every `μ` with parts `>= 2`,
//! `|μ| <= r + 1` and `|μ| ≡ r + 1 (mod 2)`. Diagrams are sampled size by
//! size from `|λ| = r` upwards; a modular rank filter keeps rows that raise
//! the rank, and once the rank is full the square system is solved exactly
//! with fraction-free elimination (or, for large systems, modularly with
//! an exact certificate). The solution is then checked against the
//! oracle on every other sampled diagram and on held-out diagrams.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::character::normalized_character;
use crate::cumulants::{free_cumulants, integer_free_cumulants};
use crate::error::{Error, Result};
use crate::linalg::{solve_integer, solve_square_multimodular, ModularRank};
use crate::partition::{enumerate_partitions, Partition};
use crate::rational::Rational;

use super::poly::{CumulantPolynomial, Family};

/// Above this many unknowns the square system is solved modularly (with an
/// exact certificate) instead of by fraction-free elimination.
const MULTIMODULAR_THRESHOLD: usize = 150;
const MAX_PRIMES: usize = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplingConfig {
    /// Largest `|λ| - r` sampled before giving up on full rank.
    pub max_extra_size: usize,
    /// Number of held-out diagrams (with `|λ| <= r + held_out_extra_size`)
    /// that the solution must reproduce.
    pub held_out: usize,
    pub held_out_extra_size: usize,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            max_extra_size: 16,
            held_out: 10,
            held_out_extra_size: 6,
        }
    }
}

/// `K_r` as a polynomial in the free cumulants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KerovPolynomial {
    pub r: usize,
    pub poly: CumulantPolynomial,
}

/// A violated structural property of a computed `K_r`. These are findings to
/// report, not errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KerovFinding {
    TopTerm {
        coefficient: Rational,
    },
    ParityViolation {
        index: Partition,
        coefficient: Rational,
    },
    NotNonnegativeInteger {
        index: Partition,
        coefficient: Rational,
    },
}

impl std::fmt::Display for KerovFinding {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        use crate::rational::format_rational as fr;
        match self {
            KerovFinding::TopTerm { coefficient } => {
                write!(f, "top term R_(r+1) has coefficient {}", fr(coefficient))
            }
            KerovFinding::ParityViolation { index, coefficient } => {
                write!(
                    f,
                    "weight {} term R{index} = {} violates the parity rule",
                    index.weight(),
                    fr(coefficient)
                )
            }
            KerovFinding::NotNonnegativeInteger { index, coefficient } => {
                write!(f, "coefficient of R{index} is {}", fr(coefficient))
            }
        }
    }
}

impl KerovPolynomial {
    pub fn graded_component(&self, s: usize) -> CumulantPolynomial {
        self.poly.graded_component(s)
    }

    /// Monic top term `R_{r+1}`, the parity rule, and integrality with
    /// nonnegativity of every coefficient.
    pub fn findings(&self) -> Vec<KerovFinding> {
        let mut out = Vec::new();
        let top = self.poly.coefficient(&Partition::single(self.r + 1));
        let others_at_top = self
            .poly
            .terms()
            .keys()
            .any(|k| k.weight() == self.r + 1 && k.len() > 1);
        if !top.is_one() || others_at_top {
            out.push(KerovFinding::TopTerm { coefficient: top });
        }
        for (k, c) in self.poly.sorted_terms() {
            if k.weight() % 2 != (self.r + 1) % 2 || k.weight() > self.r + 1 {
                out.push(KerovFinding::ParityViolation {
                    index: k.clone(),
                    coefficient: c.clone(),
                });
            }
            if !c.is_integer() || c.is_negative() {
                out.push(KerovFinding::NotNonnegativeInteger {
                    index: k.clone(),
                    coefficient: c.clone(),
                });
            }
        }
        out
    }

    /// `K_r` at the free cumulants of `lambda`.
    pub fn evaluate_at(&self, lambda: &Partition) -> Result<Rational> {
        let r = free_cumulants(lambda, self.r + 1)?;
        Ok(self.poly.evaluate(r.as_slice()))
    }
}

/// The unknown support for `K_r`, in presentation order.
pub fn kerov_support(r: usize) -> Vec<Partition> {
    (0..=r + 1)
        .rev()
        .filter(|w| w % 2 == (r + 1) % 2)
        .flat_map(|w| enumerate_partitions(w, 2))
        .collect()
}

struct Sample {
    lambda: Partition,
    // [R_μ(λ) for μ in support] followed by χ̂_r^λ
    row: Vec<BigInt>,
}

/// `∏ R_{μ_i}` for every `μ` in the support, sharing products of common
/// tails.
fn monomial_values(cumulants: &[BigInt], support: &[Partition]) -> Vec<BigInt> {
    let mut cache: HashMap<&[usize], BigInt> = HashMap::new();
    fn value<'a>(
        parts: &'a [usize],
        cumulants: &[BigInt],
        cache: &mut HashMap<&'a [usize], BigInt>,
    ) -> BigInt {
        match parts {
            [] => BigInt::one(),
            [k] => cumulants[*k].clone(),
            [k, rest @ ..] => {
                if let Some(v) = cache.get(parts) {
                    return v.clone();
                }
                let v = &cumulants[*k] * value(rest, cumulants, cache);
                cache.insert(parts, v.clone());
                v
            }
        }
    }
    support
        .iter()
        .map(|mu| value(mu.parts(), cumulants, &mut cache))
        .collect()
}

fn sample(lambda: &Partition, r: usize, support: &[Partition]) -> Result<Sample> {
    let cumulants = integer_free_cumulants(lambda, r + 1)?;
    let chi = normalized_character(lambda, r)?;
    let mut row = monomial_values(&cumulants, support);
    if !chi.is_integer() {
        return Err(Error::Invariant(format!(
            "χ̂_{r} at {lambda} is not an integer"
        )));
    }
    row.push(chi.to_integer());
    Ok(Sample {
        lambda: lambda.clone(),
        row,
    })
}

fn samples_of_size(n: usize, r: usize, support: &[Partition]) -> Result<Vec<Sample>> {
    enumerate_partitions(n, 1)
        .par_iter()
        .map(|lam| sample(lam, r, support))
        .collect()
}

fn residual(poly_coeffs: &[Rational], row: &[BigInt]) -> bool {
    let k = poly_coeffs.len();
    let value: Rational = poly_coeffs
        .iter()
        .zip(&row[..k])
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, v)| c * Rational::from_integer(v.clone()))
        .sum();
    value != Rational::from_integer(row[k].clone())
}

/// Computes `K_r` for `r >= 2`.
pub fn compute_kerov(r: usize, config: &SamplingConfig) -> Result<KerovPolynomial> {
    if r < 2 {
        return Err(Error::InvalidArgument(format!("K_r needs r >= 2, got {r}")));
    }
    let support = kerov_support(r);
    let k = support.len();
    let mut tracker = ModularRank::new(k);
    let mut chosen: Vec<Sample> = Vec::new();
    let mut unused: Vec<Sample> = Vec::new();
    let mut size = r;
    while !tracker.is_full() {
        if size > r + config.max_extra_size {
            return Err(Error::RankDeficient {
                r,
                rank: tracker.rank(),
                unknowns: k,
                max_size: size - 1,
            });
        }
        for s in samples_of_size(size, r, &support)? {
            if tracker.insert(&s.row[..k]) {
                chosen.push(s);
            } else {
                unused.push(s);
            }
        }
        size += 1;
    }

    let system: Vec<Vec<BigInt>> = chosen.iter().map(|s| s.row.clone()).collect();
    let coeffs = match (k > MULTIMODULAR_THRESHOLD)
        .then(|| solve_square_multimodular(&system, k, MAX_PRIMES))
        .flatten()
    {
        Some(x) => x,
        None => {
            let solved = solve_integer(system, k);
            solved.solution.ok_or_else(|| {
                Error::Invariant(format!(
                    "K_{r}: selected rows have rank {} of {k}",
                    solved.rank
                ))
            })?
        }
    };

    // every sampled diagram not used in the solve must agree
    if let Some(bad) = unused.par_iter().find_any(|s| residual(&coeffs, &s.row)) {
        return Err(Error::HeldOutMismatch {
            r,
            lambda: bad.lambda.to_string(),
        });
    }
    // plus held-out diagrams evaluated against the full oracle
    for lam in held_out_diagrams(r, config, &chosen) {
        let s = sample(&lam, r, &support)?;
        if residual(&coeffs, &s.row) {
            return Err(Error::HeldOutMismatch {
                r,
                lambda: lam.to_string(),
            });
        }
    }

    let poly = CumulantPolynomial::from_terms(Family::R, support.into_iter().zip(coeffs));
    Ok(KerovPolynomial { r, poly })
}

/// Deterministic spread of diagrams with `r <= |λ| <= r + extra`, skipping
/// those used in the solve. Sizes are visited from the top so the held-out
/// set reaches beyond the sampled range whenever possible.
fn held_out_diagrams(r: usize, config: &SamplingConfig, chosen: &[Sample]) -> Vec<Partition> {
    let used: std::collections::HashSet<&Partition> = chosen.iter().map(|s| &s.lambda).collect();
    let pool: Vec<Partition> = (r..=r + config.held_out_extra_size)
        .rev()
        .flat_map(|n| enumerate_partitions(n, 1))
        .filter(|lam| !used.contains(lam))
        .collect();
    if pool.len() <= config.held_out {
        return pool;
    }
    let step = pool.len() / config.held_out;
    pool.into_iter()
        .step_by(step)
        .take(config.held_out)
        .collect()
}
