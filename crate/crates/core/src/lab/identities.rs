//! Symmetric-function identities behind the closed forms: the two triple
//! sums `Σ e_i e_j e_k` and `Σ i² e_i e_j e_k` expanded on power sums and on
//! complete functions, and the weighted `C_i C_j C_k` sums they specialize
//! to.

use num_bigint::BigInt;

use crate::kerov::closed_forms::{
    script_r_factor, triple_sum_brute, weighted_triple_sum, TripleSumForm,
};
use crate::kerov::{change_generators, CumulantPolynomial, Family};
use crate::partition::{
    compositions, enumerate_partitions, multiplicity_factorial, z_factor, Partition,
};
use crate::rational::{factorial, pow, rat, ratio, Rational};
use crate::symfunc::{phi_hat, Basis, SymFunc};

fn int(n: impl Into<BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

fn sign(k: usize) -> Rational {
    rat(if k.is_multiple_of(2) { 1 } else { -1 })
}

/// `Σ_{i+j+k=n} w(i) e_i e_j e_k` in the e basis (`e_0 = 1`).
fn weighted_e_triple(n: usize, w: impl Fn(usize) -> Rational) -> SymFunc {
    let mut out = SymFunc::zero(Basis::E);
    for nu in compositions(n, 3) {
        out.add_term(Partition::new(nu.clone()), w(nu[0]));
    }
    out
}

/// Both triple sums on power sums:
/// `Σ (-1)^{n-l} 3^l z_μ^{-1} p_μ` and `Σ (-1)^{n-l} 3^{l-2} (n² + 2p_2(μ)) z_μ^{-1} p_μ`.
pub fn power_sum_triple_forms(n: usize) -> (SymFunc, SymFunc) {
    let nn = rat(n as i64);
    let mut plain = SymFunc::zero(Basis::P);
    let mut squared = SymFunc::zero(Basis::P);
    for mu in enumerate_partitions(n, 1) {
        let l = mu.len();
        let base = sign(n - l) * pow(&rat(3), l) / z_factor(&mu);
        let weight = (&nn * &nn + rat(2) * int(mu.power_sum(2))) * ratio(1, 9);
        plain.add_term(mu.clone(), base.clone());
        squared.add_term(mu, base * weight);
    }
    (plain, squared)
}

/// Both triple sums on complete functions:
/// `(1/2) Σ (-1)^{n-l} (l+2)!/∏m_i! h_μ` and
/// `(1/12) Σ (-1)^{n-l} (l+2)!/∏m_i! (n² + p_2(μ)) h_μ`.
pub fn complete_triple_forms(n: usize) -> (SymFunc, SymFunc) {
    let nn = rat(n as i64);
    let mut plain = SymFunc::zero(Basis::H);
    let mut squared = SymFunc::zero(Basis::H);
    for mu in enumerate_partitions(n, 1) {
        let l = mu.len();
        let base = sign(n - l) * Rational::new(factorial(l + 2), multiplicity_factorial(&mu));
        plain.add_term(mu.clone(), &base * ratio(1, 2));
        squared.add_term(
            mu.clone(),
            base * ratio(1, 12) * (&nn * &nn + int(mu.power_sum(2))),
        );
    }
    (plain, squared)
}

/// Outcome of one identity check; `Err` carries a description of the
/// mismatch.
pub type IdentityCheck = std::result::Result<(), String>;

fn compare(what: &str, n: usize, lhs: &SymFunc, rhs: &SymFunc) -> IdentityCheck {
    if lhs == rhs {
        Ok(())
    } else {
        Err(format!(
            "{what} at n = {n}: {} != {}",
            lhs.convert(Basis::P),
            rhs.convert(Basis::P)
        ))
    }
}

/// The triple sums against their power-sum expansions.
pub fn check_power_sum_lemma(n: usize) -> IdentityCheck {
    let (plain, squared) = power_sum_triple_forms(n);
    compare(
        "Σ e_i e_j e_k (power sums)",
        n,
        &weighted_e_triple(n, |_| rat(1)),
        &plain,
    )?;
    compare(
        "Σ i² e_i e_j e_k (power sums)",
        n,
        &weighted_e_triple(n, |i| rat((i * i) as i64)),
        &squared,
    )
}

/// The triple sums against their complete-function expansions.
pub fn check_complete_lemma(n: usize) -> IdentityCheck {
    let (plain, squared) = complete_triple_forms(n);
    compare(
        "Σ e_i e_j e_k (complete)",
        n,
        &weighted_e_triple(n, |_| rat(1)),
        &plain,
    )?;
    compare(
        "Σ i² e_i e_j e_k (complete)",
        n,
        &weighted_e_triple(n, |i| rat((i * i) as i64)),
        &squared,
    )
}

/// `Σ_{|μ|=n} (l(μ)+2)! φ̂(μ) 𝓡_μ`, built from [`phi_hat`] evaluated at each
/// `μ`.
pub fn phi_hat_sum(a: &Rational, b: &Rational, c: &Rational, n: usize) -> CumulantPolynomial {
    let f = phi_hat(a, b, c, n);
    CumulantPolynomial::from_terms(
        Family::R,
        enumerate_partitions(n, 2).into_iter().map(|mu| {
            let v = f.evaluate_at_vector(mu.parts());
            let coef = int(factorial(mu.len() + 2)) * v * script_r_factor(&mu);
            (mu, coef)
        }),
    )
}

/// `Σ (a + b i + c i²) C_i C_j C_k` by brute force against both closed forms
/// and against the `φ̂` expansion.
pub fn check_triple_sum(a: &Rational, b: &Rational, c: &Rational, n: usize) -> IdentityCheck {
    let brute = triple_sum_brute(|i| a + b * rat(i as i64) + c * rat((i * i) as i64), n);
    let in_r = change_generators(&brute, Family::R);
    let in_q = change_generators(&brute, Family::Q);
    let label = |what: &str| format!("{what} at n = {n}, (a, b, c) = ({a}, {b}, {c})");
    if weighted_triple_sum(a, b, c, n, TripleSumForm::R) != in_r {
        return Err(label("R-form triple sum"));
    }
    if weighted_triple_sum(a, b, c, n, TripleSumForm::Q) != in_q {
        return Err(label("Q-form triple sum"));
    }
    if phi_hat_sum(a, b, c, n) != in_r {
        return Err(label("φ̂ expansion"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lemmas_small_n() {
        for n in 1..=7 {
            check_power_sum_lemma(n).unwrap();
            check_complete_lemma(n).unwrap();
        }
    }

    #[test]
    fn wrong_expansion_is_detected() {
        let (plain, _) = power_sum_triple_forms(3);
        let broken = plain.add(&SymFunc::term(Basis::P, Partition::new(vec![3]), rat(1)));
        assert!(compare("x", 3, &weighted_e_triple(3, |_| rat(1)), &broken).is_err());
    }

    #[test]
    fn triple_sums_small_n() {
        for n in 0..=8 {
            check_triple_sum(&ratio(2, 3), &rat(-1), &ratio(5, 7), n).unwrap();
        }
    }
}
