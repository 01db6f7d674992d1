//! Exact symmetric functions in the monomial (m), power-sum (p), elementary
//! (e) and complete (h) bases.
//!
//! Values may be inhomogeneous: terms of different degrees coexist, and the
//! constant term is indexed by the empty partition. The power-sum basis is
//! the reference basis: products and equality are decided there.

pub mod transition;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{multiplicity_factorial, Partition};
use crate::rational::{falling_factorial, format_rational, parse_rational, pow, ratio, Rational};
use transition::{add_into, Terms};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    #[serde(rename = "m")]
    M,
    #[serde(rename = "p")]
    P,
    #[serde(rename = "e")]
    E,
    #[serde(rename = "h")]
    H,
}

impl Basis {
    pub fn letter(self) -> char {
        match self {
            Basis::M => 'm',
            Basis::P => 'p',
            Basis::E => 'e',
            Basis::H => 'h',
        }
    }

    /// e, h and p are multiplicative: `b_λ b_μ = b_{λ ∪ μ}`.
    pub fn is_multiplicative(self) -> bool {
        self != Basis::M
    }

    pub fn from_letter(c: &str) -> Result<Basis> {
        match c {
            "m" => Ok(Basis::M),
            "p" => Ok(Basis::P),
            "e" => Ok(Basis::E),
            "h" => Ok(Basis::H),
            _ => Err(Error::Parse(format!("unknown basis {c:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SymFunc {
    basis: Basis,
    terms: Terms,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc {
            basis,
            terms: Terms::new(),
        }
    }

    pub fn constant(basis: Basis, c: Rational) -> Self {
        SymFunc::term(basis, Partition::empty(), c)
    }

    pub fn term(basis: Basis, index: Partition, c: Rational) -> Self {
        let mut f = SymFunc::zero(basis);
        f.add_term(index, c);
        f
    }

    pub fn from_terms(
        basis: Basis,
        terms: impl IntoIterator<Item = (Partition, Rational)>,
    ) -> Self {
        let mut f = SymFunc::zero(basis);
        for (k, c) in terms {
            f.add_term(k, c);
        }
        f
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn coefficient(&self, index: &Partition) -> Rational {
        self.terms
            .get(index)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest degree present, `None` for the zero function.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Partition::weight).max()
    }

    pub fn add_term(&mut self, index: Partition, c: Rational) {
        add_into(&mut self.terms, index, c);
    }

    pub fn scale(&self, c: &Rational) -> SymFunc {
        SymFunc::from_terms(
            self.basis,
            self.terms.iter().map(|(k, v)| (k.clone(), v * c)),
        )
    }

    pub fn add(&self, other: &SymFunc) -> SymFunc {
        let other = other.convert(self.basis);
        let mut out = self.clone();
        for (k, v) in other.terms {
            out.add_term(k, v);
        }
        out
    }

    pub fn sub(&self, other: &SymFunc) -> SymFunc {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Same abstract function in the `target` basis. Every route passes
    /// through the power sums.
    pub fn convert(&self, target: Basis) -> SymFunc {
        if self.basis == target {
            return self.clone();
        }
        if self.basis != Basis::P && target != Basis::P {
            return self.convert(Basis::P).convert(target);
        }
        let mut out = SymFunc::zero(target);
        match (self.basis, target) {
            (Basis::M, Basis::P) => {
                for (lam, c) in &self.terms {
                    let table = transition::monomial_to_power_sum(lam.weight());
                    for (mu, d) in &table[lam] {
                        out.add_term(mu.clone(), c * d);
                    }
                }
            }
            (Basis::P, Basis::M) => {
                for (mu, c) in &self.terms {
                    let table = transition::power_sum_to_monomial(mu.weight());
                    for (lam, d) in &table[mu] {
                        out.add_term(lam.clone(), c * d);
                    }
                }
            }
            (from, to) => {
                for (mu, c) in &self.terms {
                    for (nu, d) in transition::product_of_generators(from, to, mu, false) {
                        out.add_term(nu, c * d);
                    }
                }
            }
        }
        out
    }

    /// Conversion between multiplicative bases in the quotient ring where the
    /// degree-one generator `p_1 = e_1 = h_1` vanishes.
    pub fn convert_modulo_p1(&self, target: Basis) -> Result<SymFunc> {
        if !self.basis.is_multiplicative() || !target.is_multiplicative() {
            return Err(Error::InvalidArgument(
                "the quotient by p_1 is only defined on multiplicative bases".into(),
            ));
        }
        let via = |f: &SymFunc, to: Basis| {
            let mut out = SymFunc::zero(to);
            for (mu, c) in &f.terms {
                for (nu, d) in transition::product_of_generators(f.basis, to, mu, true) {
                    out.add_term(nu, c * d);
                }
            }
            out
        };
        if self.basis == target {
            return Ok(via(self, target));
        }
        if self.basis == Basis::P || target == Basis::P {
            return Ok(via(self, target));
        }
        Ok(via(&via(self, Basis::P), target))
    }

    /// Product, computed in the p basis and returned in `self`'s basis.
    pub fn multiply(&self, other: &SymFunc) -> SymFunc {
        let a = self.convert(Basis::P);
        let b = other.convert(Basis::P);
        let mut out = SymFunc::zero(Basis::P);
        for (x, c) in &a.terms {
            for (y, d) in &b.terms {
                out.add_term(x.union(y), c * d);
            }
        }
        out.convert(self.basis)
    }

    /// Value at `x_i = v_i` (remaining variables 0), via `p_k(v) = Σ v_i^k`.
    pub fn evaluate_at_vector(&self, v: &[usize]) -> Rational {
        let p = self.convert(Basis::P);
        evaluate_power_sum_form(&p, v)
    }

    /// Equality of abstract symmetric functions (compared in the p basis).
    pub fn equals(&self, other: &SymFunc) -> bool {
        self.convert(Basis::P).terms == other.convert(Basis::P).terms
    }

    /// Terms in presentation order: degree descending, then reverse lex.
    pub fn sorted_terms(&self) -> Vec<(&Partition, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    pub fn to_json(&self) -> SymFuncJson {
        SymFuncJson {
            basis: self.basis,
            terms: self
                .sorted_terms()
                .into_iter()
                .map(|(k, c)| TermJson {
                    partition: k.clone(),
                    coef: format_rational(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &SymFuncJson) -> Result<SymFunc> {
        let mut f = SymFunc::zero(j.basis);
        for t in &j.terms {
            f.add_term(t.partition.clone(), parse_rational(&t.coef)?);
        }
        Ok(f)
    }
}

/// Evaluates a p-basis function at an integer vector without re-conversion.
pub fn evaluate_power_sum_form(p: &SymFunc, v: &[usize]) -> Rational {
    debug_assert_eq!(p.basis, Basis::P);
    let max_part = p.terms.keys().map(Partition::largest).max().unwrap_or(0);
    let vector = Partition::new(v.to_vec());
    let sums: Vec<Rational> = (0..=max_part)
        .map(|k| Rational::from_integer(vector.power_sum(k)))
        .collect();
    p.terms
        .iter()
        .map(|(mu, c)| mu.parts().iter().fold(c.clone(), |acc, &k| acc * &sums[k]))
        .sum()
}

impl PartialEq for SymFunc {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.sorted_terms().into_iter().enumerate() {
            let body = format!("{}[{}]", self.basis.letter(), k.to_text());
            match (i, c.is_negative()) {
                (0, _) => write!(f, "{}*{body}", format_rational(c))?,
                (_, false) => write!(f, " + {}*{body}", format_rational(c))?,
                (_, true) => write!(f, " - {}*{body}", format_rational(&-c))?,
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub partition: Partition,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymFuncJson {
    pub basis: Basis,
    pub terms: Vec<TermJson>,
}

/// `p_μ[t] = t^{l(μ)}`
pub fn p_scalar_specialize(mu: &Partition, t: &Rational) -> Rational {
    pow(t, mu.len())
}

/// `m_μ[t] = t (t-1) ... (t - l(μ) + 1) / ∏ m_i(μ)!`
pub fn m_scalar_specialize(mu: &Partition, t: &Rational) -> Rational {
    falling_factorial(t, mu.len()) / Rational::from_integer(multiplicity_factorial(mu))
}

/// The function `φ̂` attached to `φ(i) = a + b i + c i²` at degree `n`:
/// `a/2 + b n/6 + c (n² + p_2)/12`, in the p basis.
pub fn phi_hat(a: &Rational, b: &Rational, c: &Rational, n: usize) -> SymFunc {
    let n = Rational::from_integer(n.into());
    let constant = a * ratio(1, 2) + b * &n * ratio(1, 6) + c * &n * &n * ratio(1, 12);
    let mut f = SymFunc::constant(Basis::P, constant);
    f.add_term(Partition::single(2), c * ratio(1, 12));
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_partitions;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    /// Direct monomial evaluation: sum over distinct injective placements of
    /// the exponent vector into the variables.
    fn brute_monomial(lam: &Partition, v: &[usize]) -> Rational {
        fn go(exps: &[usize], used: &mut Vec<bool>, v: &[usize]) -> Rational {
            if exps.is_empty() {
                return rat(1);
            }
            let mut s = Rational::zero();
            for i in 0..v.len() {
                if !used[i] {
                    used[i] = true;
                    s += rat(num_traits::pow(v[i] as i64, exps[0])) * go(&exps[1..], used, v);
                    used[i] = false;
                }
            }
            s
        }
        // ordered placements overcount by ∏ m_i(λ)!
        go(lam.parts(), &mut vec![false; v.len()], v)
            / Rational::from_integer(multiplicity_factorial(lam))
    }

    #[test]
    fn conversion_examples() {
        let e2 = SymFunc::term(Basis::E, p(&[2]), rat(1));
        let expected = SymFunc::from_terms(
            Basis::P,
            [(p(&[1, 1]), ratio(1, 2)), (p(&[2]), ratio(-1, 2))],
        );
        assert_eq!(e2.convert(Basis::P).terms(), expected.terms());

        let p2 = SymFunc::term(Basis::P, p(&[2]), rat(1));
        assert_eq!(
            p2.convert(Basis::M).terms(),
            SymFunc::term(Basis::M, p(&[2]), rat(1)).terms()
        );

        let h2 = SymFunc::term(Basis::H, p(&[2]), rat(1));
        let expected = SymFunc::from_terms(Basis::E, [(p(&[1, 1]), rat(1)), (p(&[2]), rat(-1))]);
        assert_eq!(h2.convert(Basis::E).terms(), expected.terms());
    }

    #[test]
    fn multiplication_examples() {
        let p2 = SymFunc::term(Basis::P, p(&[2]), rat(1));
        let p1 = SymFunc::term(Basis::P, p(&[1]), rat(1));
        assert_eq!(
            p2.multiply(&p1).terms(),
            SymFunc::term(Basis::P, p(&[2, 1]), rat(1)).terms()
        );

        let e1 = SymFunc::term(Basis::E, p(&[1]), rat(1));
        let sq = e1.multiply(&e1).convert(Basis::M);
        let expected = SymFunc::from_terms(Basis::M, [(p(&[2]), rat(1)), (p(&[1, 1]), rat(2))]);
        assert_eq!(sq.terms(), expected.terms());

        let one = SymFunc::constant(Basis::H, rat(1));
        let f = SymFunc::from_terms(Basis::H, [(p(&[3, 1]), ratio(2, 7)), (p(&[2]), rat(-1))]);
        assert_eq!(one.multiply(&f).terms(), f.terms());
    }

    #[test]
    fn evaluation_examples() {
        let m21 = SymFunc::term(Basis::M, p(&[2, 1]), rat(1));
        assert_eq!(m21.evaluate_at_vector(&[3, 1]), rat(12));
        let p2 = SymFunc::term(Basis::P, p(&[2]), rat(1));
        assert_eq!(p2.evaluate_at_vector(&[2, 2]), rat(8));
        let m111 = SymFunc::term(Basis::M, p(&[1, 1, 1]), rat(1));
        assert_eq!(m111.evaluate_at_vector(&[2, 1]), rat(0));
    }

    #[test]
    fn monomial_evaluation_matches_brute_force() {
        let vectors: [&[usize]; 5] = [&[3, 1], &[2, 2, 2], &[4, 3, 1, 1], &[5], &[2, 2, 1, 1, 1]];
        for n in 0..=6 {
            for lam in enumerate_partitions(n, 1) {
                let f = SymFunc::term(Basis::M, lam.clone(), rat(1));
                for v in vectors {
                    assert_eq!(
                        f.evaluate_at_vector(v),
                        brute_monomial(&lam, v),
                        "m_{lam} at {v:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn scalar_specializations() {
        assert_eq!(p_scalar_specialize(&p(&[2, 1]), &rat(3)), rat(9));
        assert_eq!(
            p_scalar_specialize(&Partition::empty(), &ratio(5, 3)),
            rat(1)
        );
        assert_eq!(p_scalar_specialize(&p(&[5]), &rat(-2)), rat(-2));
        assert_eq!(m_scalar_specialize(&p(&[1, 1]), &rat(3)), rat(3));
        assert_eq!(m_scalar_specialize(&p(&[2]), &ratio(7, 3)), ratio(7, 3));
        assert_eq!(m_scalar_specialize(&p(&[2, 1]), &rat(2)), rat(2));
    }

    #[test]
    fn m_specialization_matches_vector_of_ones() {
        for t in 0..=6usize {
            let ones = vec![1; t];
            for n in 0..=6 {
                for mu in enumerate_partitions(n, 1) {
                    if mu.len() > t {
                        continue;
                    }
                    let f = SymFunc::term(Basis::M, mu.clone(), rat(1));
                    assert_eq!(
                        m_scalar_specialize(&mu, &rat(t as i64)),
                        f.evaluate_at_vector(&ones),
                        "m_{mu}[{t}]"
                    );
                }
            }
        }
    }

    #[test]
    fn phi_hat_examples() {
        let f = phi_hat(&rat(1), &rat(0), &rat(0), 5);
        assert_eq!(f.terms(), SymFunc::constant(Basis::P, ratio(1, 2)).terms());
        let g = phi_hat(&rat(0), &rat(0), &rat(1), 2);
        let expected = SymFunc::from_terms(
            Basis::P,
            [(Partition::empty(), ratio(4, 12)), (p(&[2]), ratio(1, 12))],
        );
        assert_eq!(g.terms(), expected.terms());
        // Σ_{i+j+k=2} i² C_i C_j C_k = 4 C_2 = 3! φ̂((2)) R_2 with C_2 = R_2
        let at_2 = g.evaluate_at_vector(&[2]);
        assert_eq!(at_2, ratio(2, 3));
        assert_eq!(rat(6) * at_2, rat(4));
    }

    #[test]
    fn text_and_json_forms() {
        let f = SymFunc::from_terms(
            Basis::M,
            [
                (p(&[3, 1]), ratio(8, 5760)),
                (p(&[4]), ratio(3, 5760)),
                (p(&[1]), rat(-2)),
            ],
        );
        assert_eq!(f.to_string(), "1/1920*m[4] + 1/720*m[3,1] - 2*m[1]");
        let j = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(
            j,
            r#"{"basis":"m","terms":[{"partition":[4],"coef":"1/1920"},{"partition":[3,1],"coef":"1/720"},{"partition":[1],"coef":"-2"}]}"#
        );
        let back = SymFunc::from_json(&serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back.terms(), f.terms());
    }

    fn arb_symfunc(max_degree: usize) -> impl Strategy<Value = SymFunc> {
        let basis = prop_oneof![
            Just(Basis::M),
            Just(Basis::P),
            Just(Basis::E),
            Just(Basis::H)
        ];
        let term = (
            proptest::collection::vec(1usize..=4, 0..4),
            -5i64..=5,
            1i64..=4,
        );
        (basis, proptest::collection::vec(term, 0..5)).prop_map(move |(b, ts)| {
            SymFunc::from_terms(
                b,
                ts.into_iter().filter_map(|(parts, n, d)| {
                    let lam = Partition::new(parts);
                    (lam.weight() <= max_degree).then(|| (lam, ratio(n, d)))
                }),
            )
        })
    }

    fn arb_basis() -> impl Strategy<Value = Basis> {
        prop_oneof![
            Just(Basis::M),
            Just(Basis::P),
            Just(Basis::E),
            Just(Basis::H)
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn conversion_roundtrips(f in arb_symfunc(10), via in arb_basis()) {
            let back = f.convert(via).convert(f.basis());
            prop_assert_eq!(back.terms(), f.terms());
        }

        #[test]
        fn evaluation_is_a_ring_homomorphism(
            f in arb_symfunc(6),
            g in arb_symfunc(6),
            v in proptest::collection::vec(1usize..=4, 0..5),
        ) {
            let v: Vec<usize> = v.into_iter().scan(0usize, |s, x| { *s += x; (*s <= 12).then_some(x) }).collect();
            let fg = f.multiply(&g);
            prop_assert_eq!(fg.evaluate_at_vector(&v), f.evaluate_at_vector(&v) * g.evaluate_at_vector(&v));
        }
    }
}
