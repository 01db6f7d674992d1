use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::symfunc::transition::add_into;
use crate::symfunc::TermJson;

/// Generator family of a cumulant polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    R,
    C,
    Q,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::R => 'R',
            Family::C => 'C',
            Family::Q => 'Q',
        }
    }

    pub fn from_letter(s: &str) -> Result<Family> {
        match s {
            "R" | "r" => Ok(Family::R),
            "C" | "c" => Ok(Family::C),
            "Q" | "q" => Ok(Family::Q),
            _ => Err(Error::Parse(format!("unknown generator family {s:?}"))),
        }
    }
}

/// Polynomial in one family of generators `X_2, X_3, ...`, stored as a
/// sparse map from the monomial's index partition (all parts >= 2) to its
/// coefficient. The weight of `X_μ` is `|μ|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulantPolynomial {
    family: Family,
    terms: BTreeMap<Partition, Rational>,
}

impl CumulantPolynomial {
    pub fn zero(family: Family) -> Self {
        CumulantPolynomial {
            family,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(family: Family, index: Partition, c: Rational) -> Self {
        let mut p = CumulantPolynomial::zero(family);
        p.add_term(index, c);
        p
    }

    pub fn from_terms(
        family: Family,
        terms: impl IntoIterator<Item = (Partition, Rational)>,
    ) -> Self {
        let mut p = CumulantPolynomial::zero(family);
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    pub fn family(&self) -> Family {
        self.family
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

    /// Adds `c X_index`. Indices with a part 1 are rejected: `X_1 = 0` in
    /// every family.
    pub fn add_term(&mut self, index: Partition, c: Rational) {
        assert!(
            index.smallest() != 1,
            "generator {}_1 is identically zero; index {index} is invalid",
            self.family.letter()
        );
        add_into(&mut self.terms, index, c);
    }

    pub fn add(&self, other: &CumulantPolynomial) -> CumulantPolynomial {
        assert_eq!(
            self.family, other.family,
            "adding polynomials in different families"
        );
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> CumulantPolynomial {
        CumulantPolynomial::from_terms(
            self.family,
            self.terms.iter().map(|(k, v)| (k.clone(), v * c)),
        )
    }

    pub fn multiply(&self, other: &CumulantPolynomial) -> CumulantPolynomial {
        assert_eq!(
            self.family, other.family,
            "multiplying polynomials in different families"
        );
        let mut out = CumulantPolynomial::zero(self.family);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.union(b), c * d);
            }
        }
        out
    }

    /// The weight-`s` part.
    pub fn graded_component(&self, s: usize) -> CumulantPolynomial {
        CumulantPolynomial::from_terms(
            self.family,
            self.terms
                .iter()
                .filter(|(k, _)| k.weight() == s)
                .map(|(k, c)| (k.clone(), c.clone())),
        )
    }

    /// Distinct weights present, ascending.
    pub fn weights(&self) -> Vec<usize> {
        let mut w: Vec<usize> = self.terms.keys().map(Partition::weight).collect();
        w.sort_unstable();
        w.dedup();
        w
    }

    /// Value with `X_i = values[i]`.
    pub fn evaluate(&self, values: &[Rational]) -> Rational {
        self.terms
            .iter()
            .map(|(mu, c)| {
                mu.parts()
                    .iter()
                    .fold(c.clone(), |acc, &i| acc * &values[i])
            })
            .sum()
    }

    /// Terms with negative coefficients, in presentation order.
    pub fn negative_terms(&self) -> Vec<(Partition, Rational)> {
        self.sorted_terms()
            .into_iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect()
    }

    pub fn sorted_terms(&self) -> Vec<(&Partition, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.display_cmp(b.0));
        v
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.sorted_terms()
            .into_iter()
            .map(|(k, c)| TermJson {
                partition: k.clone(),
                coef: format_rational(c),
            })
            .collect()
    }

    pub fn from_json_terms(family: Family, terms: &[TermJson]) -> Result<Self> {
        let mut p = CumulantPolynomial::zero(family);
        for t in terms {
            if t.partition.smallest() == 1 {
                return Err(Error::Parse(format!("index {} has a part 1", t.partition)));
            }
            p.add_term(t.partition.clone(), parse_rational(&t.coef)?);
        }
        Ok(p)
    }

    /// First term (in presentation order) where `self` and `other` differ.
    pub fn first_difference(
        &self,
        other: &CumulantPolynomial,
    ) -> Option<(Partition, Rational, Rational)> {
        let diff = self.add(&other.scale(&-Rational::one()));
        diff.sorted_terms()
            .first()
            .map(|(k, _)| ((*k).clone(), self.coefficient(k), other.coefficient(k)))
    }
}

impl fmt::Display for CumulantPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let letter = self.family.letter();
        for (i, (k, c)) in self.sorted_terms().into_iter().enumerate() {
            let body = format!("{letter}[{}]", k.to_text());
            match (i, c.is_negative()) {
                (0, _) => write!(f, "{}*{body}", format_rational(c))?,
                (_, false) => write!(f, " + {}*{body}", format_rational(c))?,
                (_, true) => write!(f, " - {}*{body}", format_rational(&-c))?,
            }
        }
        Ok(())
    }
}
