//! Irreducible characters of symmetric groups and the normalized character
//! on an r-cycle, the oracle that Kerov polynomials are fitted against.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::rational::{factorial, Rational};

/// `|λ|! / ∏ hooks`; the division is checked to be exact.
pub fn dimension(lambda: &Partition) -> Result<BigInt> {
    if lambda.is_empty() {
        return Err(Error::EmptyPartition("dimension"));
    }
    let conj = lambda.conjugate();
    let mut hooks = BigInt::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = conj.parts()[j] - i - 1;
            hooks *= arm + leg + 1;
        }
    }
    let (q, rem) = factorial(lambda.weight()).div_rem(&hooks);
    if !rem.is_zero() {
        return Err(Error::Invariant(format!(
            "hook product does not divide |{lambda}|!"
        )));
    }
    Ok(q)
}

/// Removes every border strip of size `len` from `lambda`, returning the
/// remaining shapes with their signs `(-1)^{height}`.
///
/// Works on beta-numbers: a strip of size `len` is a bead moved from `b` to
/// an empty position `b - len`, and its height is the number of beads jumped.
pub fn remove_border_strips(lambda: &Partition, len: usize) -> Vec<(Partition, i64)> {
    let l = lambda.len();
    let beta: Vec<usize> = lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| p + l - 1 - i)
        .collect();
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < len || beta.contains(&(b - len)) {
            continue;
        }
        let target = b - len;
        let jumped = beta.iter().filter(|&&c| c > target && c < b).count();
        let mut next = beta.clone();
        next[idx] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let parts = next
            .iter()
            .enumerate()
            .map(|(i, &c)| c - (l - 1 - i))
            .collect();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        out.push((Partition::new(parts), sign));
    }
    out
}

type MemoKey = (Partition, Partition);

fn memo() -> &'static Mutex<HashMap<MemoKey, BigInt>> {
    static MEMO: OnceLock<Mutex<HashMap<MemoKey, BigInt>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `χ^λ_μ` by the Murnaghan–Nakayama rule, stripping the largest part of
/// `mu` first. Results are memoized per process.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    if lambda.weight() != mu.weight() {
        return Err(Error::WeightMismatch {
            lambda: lambda.weight(),
            mu: mu.weight(),
        });
    }
    Ok(mn_recurse(lambda, mu))
}

fn mn_recurse(lambda: &Partition, mu: &Partition) -> BigInt {
    if mu.is_empty() {
        return BigInt::one();
    }
    let key = (lambda.clone(), mu.clone());
    if let Some(v) = memo().lock().expect("character memo poisoned").get(&key) {
        return v.clone();
    }
    let rest = mu.without_first();
    let value = remove_border_strips(lambda, mu.largest())
        .into_iter()
        .map(|(shape, sign)| mn_recurse(&shape, &rest) * sign)
        .sum::<BigInt>();
    memo()
        .lock()
        .expect("character memo poisoned")
        .entry(key)
        .or_insert(value)
        .clone()
}

/// `χ^λ` on cycle type `(r, 1^{n-r})`: strip one r-strip, then the
/// remaining character at the identity is a dimension.
pub fn cycle_character(lambda: &Partition, r: usize) -> Result<BigInt> {
    let n = lambda.weight();
    if n < r {
        return Err(Error::CycleTooLong { n, r });
    }
    let mut total = BigInt::zero();
    for (shape, sign) in remove_border_strips(lambda, r) {
        let d = if shape.is_empty() {
            BigInt::one()
        } else {
            dimension(&shape)?
        };
        total += d * sign;
    }
    Ok(total)
}

/// `χ̂_r^λ = n(n-1)...(n-r+1) χ^λ_{(r,1^{n-r})} / dim λ`.
pub fn normalized_character(lambda: &Partition, r: usize) -> Result<Rational> {
    let n = lambda.weight();
    if n < r || lambda.is_empty() {
        return Err(Error::CycleTooLong { n, r });
    }
    let falling = ((n - r + 1)..=n).fold(BigInt::one(), |acc, k| acc * k);
    let raw = cycle_character(lambda, r)?;
    Ok(Rational::new(falling * raw, dimension(lambda)?))
}
