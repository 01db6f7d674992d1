//! Integer partitions: the index set for representations, cycle types,
//! symmetric-function bases and cumulant monomials.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{factorial, Rational};

/// A weakly decreasing sequence of positive integers.
///
/// The derived `Ord` is lexicographic on the parts; use
/// [`Partition::display_cmp`] for the canonical "largest weight, then
/// reverse-lex" presentation order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// Builds from parts that must already be weakly decreasing and positive.
    pub fn from_sorted(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!(
                "{parts:?} is not a weakly decreasing sequence of positive integers"
            )));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn single(part: usize) -> Self {
        Partition::new(vec![part])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.parts
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn smallest(&self) -> usize {
        self.parts.last().copied().unwrap_or(0)
    }

    pub fn multiplicity(&self, i: usize) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// `(part, multiplicity)` pairs in decreasing part order.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Sum of the k-th powers of the parts.
    pub fn power_sum(&self, k: usize) -> BigInt {
        self.parts
            .iter()
            .map(|&p| num_traits::pow(BigInt::from(p), k))
            .sum()
    }

    /// Concatenation of parts (product in a multiplicative basis).
    pub fn union(&self, other: &Partition) -> Partition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        parts.extend_from_slice(&self.parts);
        parts.extend_from_slice(&other.parts);
        Partition::new(parts)
    }

    pub fn without_first(&self) -> Partition {
        Partition {
            parts: self.parts.get(1..).unwrap_or_default().to_vec(),
        }
    }

    /// Transposed diagram: `λ'_j = #{i : λ_i >= j}`.
    pub fn conjugate(&self) -> Partition {
        let parts = (1..=self.largest())
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// Weight descending, then reverse lexicographic.
    pub fn display_cmp(&self, other: &Partition) -> Ordering {
        other
            .weight()
            .cmp(&self.weight())
            .then_with(|| other.parts.cmp(&self.parts))
    }

    /// Comma-separated parts, the CLI text form (`""` for the empty partition).
    pub fn to_text(&self) -> String {
        self.parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_text())
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("invalid partition {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::from_sorted(parts)
    }
}

impl From<Vec<usize>> for Partition {
    fn from(parts: Vec<usize>) -> Self {
        Partition::new(parts)
    }
}

impl<const N: usize> From<[usize; N]> for Partition {
    fn from(parts: [usize; N]) -> Self {
        Partition::new(parts.to_vec())
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::from_sorted(parts).map_err(serde::de::Error::custom)
    }
}

/// All partitions of `n` with every part `>= min_part`, in reverse
/// lexicographic order. `n = 0` yields the single empty partition.
pub fn enumerate_partitions(n: usize, min_part: usize) -> Vec<Partition> {
    fn go(n: usize, max: usize, min: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for p in (min..=max.min(n)).rev() {
            cur.push(p);
            go(n - p, p, min, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, min_part.max(1), &mut Vec::new(), &mut out);
    out
}

/// Partitions of every weight in `0..=max_weight`, largest weight first.
pub fn partitions_up_to(max_weight: usize, min_part: usize) -> Vec<Partition> {
    (0..=max_weight)
        .rev()
        .flat_map(|n| enumerate_partitions(n, min_part))
        .collect()
}

/// `z_μ = ∏ i^{m_i} m_i!`
pub fn z_factor(mu: &Partition) -> Rational {
    let z = mu
        .multiplicities()
        .into_iter()
        .fold(BigInt::one(), |acc, (i, m)| {
            acc * num_traits::pow(BigInt::from(i), m) * factorial(m)
        });
    Rational::from_integer(z)
}

/// `(-1)^{|μ| - l(μ)}`
pub fn epsilon(mu: &Partition) -> i64 {
    if (mu.weight() - mu.len()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `∏ m_i(μ)!`
pub fn multiplicity_factorial(mu: &Partition) -> BigInt {
    mu.multiplicities()
        .into_iter()
        .fold(BigInt::one(), |acc, (_, m)| acc * factorial(m))
}

/// `u_μ = l(μ)! / ∏ m_i(μ)!`, the number of distinct orderings of the parts.
pub fn u_factor(mu: &Partition) -> Rational {
    Rational::new(factorial(mu.len()), multiplicity_factorial(mu))
}

/// All weak compositions of `n` into `slots` nonnegative parts, in
/// lexicographically decreasing order.
pub fn compositions(n: usize, slots: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(n);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in (0..=n).rev() {
            cur.push(first);
            go(n - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if slots == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, slots, &mut Vec::new(), &mut out);
    out
}
