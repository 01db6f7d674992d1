//! Graded components `K_{r,r-2k+1}` predicted by the three conjectural
//! descriptions, given the describing symmetric function.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::kerov::closed_forms::{script_q_factor, script_r_factor};
use crate::kerov::{CumulantPolynomial, Family};
use crate::partition::{compositions, enumerate_partitions, Partition};
use crate::rational::{binomial, factorial, ratio, Rational};
use crate::symfunc::{evaluate_power_sum_form, Basis, SymFunc};

fn int(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// The constant `1/4` describing `K_{r,r-1}` in every family.
pub fn first_function() -> SymFunc {
    SymFunc::constant(Basis::M, ratio(1, 4))
}

fn component_weight(k: usize, r: usize) -> usize {
    assert!(
        k >= 1 && r + 1 >= 2 * k,
        "component r - 2k + 1 is negative (r = {r}, k = {k})"
    );
    r + 1 - 2 * k
}

/// `binom(r+1,3) Σ_{|μ|=r-2k+1} (l(μ)+2k-2)! f(μ) 𝓡_μ`, in R.
pub fn predicted_component_f(k: usize, r: usize, f: &SymFunc) -> CumulantPolynomial {
    let s = component_weight(k, r);
    let lead = int(binomial(r + 1, 3));
    let f = f.convert(Basis::P);
    CumulantPolynomial::from_terms(
        Family::R,
        enumerate_partitions(s, 2).into_iter().map(|mu| {
            let value = evaluate_power_sum_form(&f, mu.parts());
            let c = &lead * int(factorial(mu.len() + 2 * k - 2)) * value * script_r_factor(&mu);
            (mu, c)
        }),
    )
}

/// `binom(r+1,3) Σ_{|μ|=r-2k+1} (2k-1)^{l(μ)} g(μ) 𝓠_μ`, in Q.
pub fn predicted_component_g(k: usize, r: usize, g: &SymFunc) -> CumulantPolynomial {
    let s = component_weight(k, r);
    let lead = int(binomial(r + 1, 3));
    let g = g.convert(Basis::P);
    CumulantPolynomial::from_terms(
        Family::Q,
        enumerate_partitions(s, 2).into_iter().map(|mu| {
            let value = evaluate_power_sum_form(&g, mu.parts());
            let power = int(BigInt::from(2 * k - 1).pow(mu.len() as u32));
            let c = &lead * power * value * script_q_factor(&mu);
            (mu, c)
        }),
    )
}

/// `binom(r+1,3) Σ_{ν ∈ N^{2k-1}, |ν|=r-2k+1} F(ν) ∏ C_{ν_i}`, in C. Zero
/// entries of `ν` contribute `C_0 = 1`; any entry 1 kills the term.
pub fn predicted_component_upper_f(k: usize, r: usize, upper: &SymFunc) -> CumulantPolynomial {
    let s = component_weight(k, r);
    let lead = int(binomial(r + 1, 3));
    let upper = upper.convert(Basis::P);
    let mut out = CumulantPolynomial::zero(Family::C);
    for nu in compositions(s, 2 * k - 1) {
        if nu.contains(&1) {
            continue;
        }
        let value = evaluate_power_sum_form(&upper, &nu);
        if !value.is_zero() {
            out.add_term(Partition::new(nu), &lead * value);
        }
    }
    out
}

/// Prediction in the family the describing function belongs to.
pub fn predicted_component(family: Family, k: usize, r: usize, f: &SymFunc) -> CumulantPolynomial {
    match family {
        Family::R => predicted_component_f(k, r, f),
        Family::Q => predicted_component_g(k, r, f),
        Family::C => predicted_component_upper_f(k, r, f),
    }
}
