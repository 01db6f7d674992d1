//! Per-degree change-of-basis data, computed on demand and cached for the
//! lifetime of the process.
//!
//! Every cache is fill-idempotent: two threads racing on the same key compute
//! identical values and the first insertion wins.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Basis;
use crate::partition::{
    enumerate_partitions, epsilon, multiplicity_factorial, u_factor, z_factor, Partition,
};
use crate::rational::{rat, Rational};

pub type Expansion = Vec<(Partition, Rational)>;
pub type Terms = BTreeMap<Partition, Rational>;

type Cache<K, V> = OnceLock<Mutex<HashMap<K, Arc<V>>>>;

fn cached<K, V>(cache: &'static Cache<K, V>, key: K, compute: impl FnOnce() -> V) -> Arc<V>
where
    K: std::hash::Hash + Eq + Clone,
{
    let map = cache.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = map.lock().expect("transition cache poisoned").get(&key) {
        return v.clone();
    }
    let value = Arc::new(compute());
    map.lock()
        .expect("transition cache poisoned")
        .entry(key)
        .or_insert(value)
        .clone()
}

/// The degree-`n` generator of `from` (one of e, h, p) expanded in the
/// multiplicative basis `to`.
pub fn generator(from: Basis, to: Basis, n: usize) -> Arc<Expansion> {
    static CACHE: Cache<(Basis, Basis, usize), Expansion> = OnceLock::new();
    assert!(from.is_multiplicative() && to.is_multiplicative());
    cached(&CACHE, (from, to, n), || compute_generator(from, to, n))
}

fn compute_generator(from: Basis, to: Basis, n: usize) -> Expansion {
    if from == to {
        return vec![(Partition::single(n), rat(1))];
    }
    match (from, to) {
        // e_n = Σ ε_μ z_μ^{-1} p_μ
        (Basis::E, Basis::P) => enumerate_partitions(n, 1)
            .into_iter()
            .map(|mu| {
                let c = rat(epsilon(&mu)) / z_factor(&mu);
                (mu, c)
            })
            .collect(),
        // h_n = Σ z_μ^{-1} p_μ
        (Basis::H, Basis::P) => enumerate_partitions(n, 1)
            .into_iter()
            .map(|mu| {
                let c = rat(1) / z_factor(&mu);
                (mu, c)
            })
            .collect(),
        // p_n = Σ ε_μ (n / l(μ)) u_μ e_μ
        (Basis::P, Basis::E) => enumerate_partitions(n, 1)
            .into_iter()
            .map(|mu| {
                let c = rat(epsilon(&mu)) * rat(n as i64) / rat(mu.len() as i64) * u_factor(&mu);
                (mu, c)
            })
            .collect(),
        // p_n = -n Σ (-1)^{l(μ)} u_μ h_μ / l(μ)
        (Basis::P, Basis::H) => enumerate_partitions(n, 1)
            .into_iter()
            .map(|mu| {
                let s = if mu.len() % 2 == 0 { -1 } else { 1 };
                let c = rat(s * n as i64) / rat(mu.len() as i64) * u_factor(&mu);
                (mu, c)
            })
            .collect(),
        // e <-> h route through p
        (from, to) => {
            let via_p = generator(from, Basis::P, n);
            let mut acc = Terms::new();
            for (mu, c) in via_p.iter() {
                for (nu, d) in product_of_generators(Basis::P, to, mu, false) {
                    add_into(&mut acc, nu, c * d);
                }
            }
            acc.into_iter().collect()
        }
    }
}

pub(crate) fn add_into(acc: &mut Terms, key: Partition, c: Rational) {
    if c.is_zero() {
        return;
    }
    match acc.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Expands `from_μ = ∏ from_{μ_i}` in the multiplicative basis `to`.
///
/// With `modulo_p1`, computes the image in the quotient by the ideal generated
/// by `p_1 = e_1 = h_1`: indices containing a part 1 are erased, which is
/// exact because in a multiplicative basis that ideal is spanned by exactly
/// those indices.
pub fn product_of_generators(from: Basis, to: Basis, mu: &Partition, modulo_p1: bool) -> Terms {
    let mut acc = Terms::new();
    if modulo_p1 && mu.parts().contains(&1) {
        return acc;
    }
    acc.insert(Partition::empty(), rat(1));
    for &part in mu.parts() {
        let gen = generator(from, to, part);
        let mut next = Terms::new();
        for (lhs, a) in &acc {
            for (rhs, b) in gen.iter() {
                if modulo_p1 && rhs.parts().contains(&1) {
                    continue;
                }
                add_into(&mut next, lhs.union(rhs), a * b);
            }
        }
        acc = next;
    }
    acc
}

/// Number of ways to distribute the parts of `mu` (as labelled items) into
/// bins of sizes `lambda`, i.e. the coefficient of `m_λ` in `p_μ`.
pub fn augmented_count(mu: &Partition, lambda: &Partition) -> BigInt {
    fn go(
        parts: &[usize],
        j: usize,
        caps: Vec<usize>,
        memo: &mut HashMap<(usize, Vec<usize>), BigInt>,
    ) -> BigInt {
        if j == parts.len() {
            return if caps.iter().all(|&c| c == 0) {
                BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        if let Some(v) = memo.get(&(j, caps.clone())) {
            return v.clone();
        }
        let mut total = BigInt::zero();
        for i in 0..caps.len() {
            if caps[i] >= parts[j] {
                let mut next = caps.clone();
                next[i] -= parts[j];
                // the count is invariant under permuting bins
                next.sort_unstable_by(|a, b| b.cmp(a));
                total += go(parts, j + 1, next, memo);
            }
        }
        memo.insert((j, caps), total.clone());
        total
    }
    if mu.weight() != lambda.weight() {
        return BigInt::zero();
    }
    go(mu.parts(), 0, lambda.parts().to_vec(), &mut HashMap::new())
}

/// `p_μ` in the monomial basis, for every `|μ| = n`.
pub fn power_sum_to_monomial(n: usize) -> Arc<HashMap<Partition, Expansion>> {
    static CACHE: Cache<usize, HashMap<Partition, Expansion>> = OnceLock::new();
    cached(&CACHE, n, || {
        let parts = enumerate_partitions(n, 1);
        parts
            .iter()
            .map(|mu| {
                let row = parts
                    .iter()
                    .filter_map(|lam| {
                        let c = augmented_count(mu, lam);
                        (!c.is_zero()).then(|| (lam.clone(), Rational::from_integer(c)))
                    })
                    .collect();
                (mu.clone(), row)
            })
            .collect()
    })
}

/// `m_λ` in the power-sum basis, for every `|λ| = n`, by back-substitution in
/// the triangular system `p_μ = Σ_{λ ≥ μ} L_{μλ} m_λ`.
pub fn monomial_to_power_sum(n: usize) -> Arc<HashMap<Partition, Expansion>> {
    static CACHE: Cache<usize, HashMap<Partition, Expansion>> = OnceLock::new();
    cached(&CACHE, n, || {
        let p_to_m = power_sum_to_monomial(n);
        let mut solved: HashMap<Partition, Terms> = HashMap::new();
        // reverse-lex order: every λ with L_{μλ} ≠ 0, λ ≠ μ, is lex-larger
        for mu in enumerate_partitions(n, 1) {
            let mut acc = Terms::new();
            acc.insert(mu.clone(), rat(1));
            let mut diag = Rational::zero();
            for (lam, c) in &p_to_m[&mu] {
                if *lam == mu {
                    diag = c.clone();
                    continue;
                }
                debug_assert!(lam > &mu);
                for (nu, d) in &solved[lam] {
                    add_into(&mut acc, nu.clone(), -(c * d));
                }
            }
            debug_assert_eq!(diag, Rational::from_integer(multiplicity_factorial(&mu)));
            let acc = acc.into_iter().map(|(k, v)| (k, v / &diag)).collect();
            solved.insert(mu, acc);
        }
        solved
            .into_iter()
            .map(|(k, v)| (k, v.into_iter().collect()))
            .collect()
    })
}
