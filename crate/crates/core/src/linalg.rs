//! Exact linear solving: fraction-free (Bareiss) elimination over the
//! integers, and a word-sized modular rank filter used to pick independent
//! rows before the exact solve.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Rational;

/// Outcome of solving a possibly overdetermined system `A x = b`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    pub rank: usize,
    pub unknowns: usize,
    /// Present iff the system is consistent and has full column rank.
    pub solution: Option<Vec<Rational>>,
    /// Original indices of rows that reduced to `0 = nonzero`.
    pub inconsistent_rows: Vec<usize>,
}

impl LinearSolution {
    pub fn is_consistent(&self) -> bool {
        self.inconsistent_rows.is_empty()
    }
}

/// Scales a rational row to a primitive integer row (common denominator
/// cleared).
pub fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

/// Solves `A x = b` exactly. Rows are cleared of denominators and reduced
/// with Bareiss elimination on the augmented matrix; every entry produced is
/// a minor of the input, so no fractions appear until back-substitution.
pub fn solve(a: &[Vec<Rational>], b: &[Rational]) -> LinearSolution {
    assert_eq!(a.len(), b.len());
    let unknowns = a.first().map_or(0, Vec::len);
    let rows: Vec<Vec<BigInt>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut full = row.clone();
            full.push(rhs.clone());
            clear_denominators(&full)
        })
        .collect();
    solve_integer(rows, unknowns)
}

/// Same as [`solve`] for rows already given as integers `[a_1 .. a_k | b]`.
pub fn solve_integer(mut rows: Vec<Vec<BigInt>>, unknowns: usize) -> LinearSolution {
    let m = rows.len();
    let mut order: Vec<usize> = (0..m).collect();
    let mut prev = BigInt::one();
    let mut pivots: Vec<usize> = Vec::new();
    let mut top = 0;
    for col in 0..unknowns {
        if top == m {
            break;
        }
        let Some(found) = (top..m).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(top, found);
        order.swap(top, found);
        let (upper, lower) = rows.split_at_mut(top + 1);
        let pivot_row = &upper[top];
        let pivot = pivot_row[col].clone();
        for row in lower.iter_mut() {
            let factor = row[col].clone();
            for j in col..=unknowns {
                let v = &row[j] * &pivot - &factor * &pivot_row[j];
                row[j] = v / &prev;
            }
        }
        // rows above the pivot keep their values: they are not touched again
        prev = pivot;
        pivots.push(col);
        top += 1;
    }
    let rank = pivots.len();
    let inconsistent_rows: Vec<usize> = (rank..m)
        .filter(|&i| !rows[i][unknowns].is_zero())
        .map(|i| order[i])
        .collect();
    let solution = (rank == unknowns && inconsistent_rows.is_empty()).then(|| {
        let mut x = vec![Rational::zero(); unknowns];
        for i in (0..rank).rev() {
            let col = pivots[i];
            let mut acc = Rational::from_integer(rows[i][unknowns].clone());
            for j in (col + 1)..unknowns {
                if !rows[i][j].is_zero() {
                    acc -= Rational::from_integer(rows[i][j].clone()) * &x[j];
                }
            }
            x[col] = acc / Rational::from_integer(rows[i][col].clone());
        }
        x
    });
    LinearSolution {
        rank,
        unknowns,
        solution,
        inconsistent_rows,
    }
}

/// `2^61 - 1`
const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    // a * b = hi * 2^61 + lo and 2^61 = 1 modulo the prime
    let prod = a as u128 * b as u128;
    let folded = (prod as u64 & PRIME) + (prod >> 61) as u64;
    let once = if folded >= PRIME {
        folded - PRIME
    } else {
        folded
    };
    if once >= PRIME {
        once - PRIME
    } else {
        once
    }
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn reduce(x: &BigInt) -> u64 {
    let p = BigInt::from(PRIME);
    let r = x.mod_floor(&p);
    r.to_u64().expect("residue fits in a word")
}

/// Incremental rank tracker over `Z / (2^61 - 1)`. Rows independent modulo
/// the prime are independent over the rationals, so the rows it accepts can
/// be handed to the exact solver.
#[derive(Debug)]
pub struct ModularRank {
    width: usize,
    basis: Vec<(usize, Vec<u64>)>,
}

impl ModularRank {
    pub fn new(width: usize) -> Self {
        ModularRank {
            width,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.width
    }

    /// Returns true (and records the row) when `row` increases the rank.
    pub fn insert(&mut self, row: &[BigInt]) -> bool {
        assert_eq!(row.len(), self.width);
        if self.is_full() {
            return false;
        }
        let mut v: Vec<u64> = row.iter().map(reduce).collect();
        for (col, b) in &self.basis {
            let f = v[*col];
            if f != 0 {
                for j in 0..self.width {
                    if b[j] != 0 {
                        let t = v[j] + PRIME - mul_mod(f, b[j]);
                        v[j] = if t >= PRIME { t - PRIME } else { t };
                    }
                }
            }
        }
        let Some(col) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = pow_mod(v[col], PRIME - 2);
        for x in v.iter_mut() {
            *x = mul_mod(*x, inv);
        }
        self.basis.push((col, v));
        true
    }
}

/// Primes below `2^31`, largest first.
fn word_primes() -> impl Iterator<Item = u64> {
    (2..1u64 << 31)
        .rev()
        .filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut acc, mut base, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Solution of the square system modulo `p < 2^32`, or `None` when the
/// matrix is singular there.
fn solve_mod_prime(rows: &[Vec<BigInt>], k: usize, p: u64) -> Option<Vec<u64>> {
    let big_p = BigInt::from(p);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| x.mod_floor(&big_p).to_u64().expect("residue fits"))
                .collect()
        })
        .collect();
    for col in 0..k {
        let found = (col..k).find(|&i| m[i][col] != 0)?;
        m.swap(col, found);
        let pinv = inv_mod(m[col][col], p);
        for x in m[col][col..].iter_mut() {
            *x = *x * pinv % p;
        }
        let (above, rest) = m.split_at_mut(col);
        let (pivot_row, below) = rest.split_first_mut().expect("pivot row exists");
        let pivot_row = &*pivot_row;
        for row in above.iter_mut().chain(below.iter_mut()) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for j in col..=k {
                row[j] = (row[j] + (p - f) * pivot_row[j]) % p;
            }
        }
    }
    Some(m.iter().map(|row| row[k]).collect())
}

/// `u ≡ n / d (mod m)` with `|n|, d <= sqrt(m / 2)`, if such a fraction
/// exists.
fn rational_reconstruction(u: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// True when `x` satisfies every row `[a | b]` exactly.
fn satisfies(rows: &[Vec<BigInt>], k: usize, x: &[Rational]) -> bool {
    let scaled = clear_denominators(x);
    let d = if let Some((q, s)) = x.iter().zip(&scaled).find(|(q, _)| !q.is_zero()) {
        s * q.denom() / q.numer()
    } else {
        BigInt::one()
    };
    rows.iter().all(|row| {
        let lhs: BigInt = row[..k].iter().zip(&scaled).map(|(a, y)| a * y).sum();
        lhs == &d * &row[k]
    })
}

/// Solves a square integer system `[a_1 .. a_k | b]` of full rank by
/// solving modulo a sequence of primes, combining residues with the Chinese
/// remainder theorem and reconstructing rationals. A candidate is accepted
/// only after it satisfies every row exactly, so a returned solution is the
/// solution. `None` means no certified answer within `max_primes` primes
/// (the matrix may be singular); callers fall back to [`solve_integer`].
pub fn solve_square_multimodular(
    rows: &[Vec<BigInt>],
    k: usize,
    max_primes: usize,
) -> Option<Vec<Rational>> {
    assert_eq!(rows.len(), k);
    let mut modulus = BigInt::one();
    let mut residues = vec![BigInt::zero(); k];
    let mut last: Option<Vec<Rational>> = None;
    for p in word_primes().take(max_primes) {
        let Some(x) = solve_mod_prime(rows, k, p) else {
            continue;
        };
        let big_p = BigInt::from(p);
        let m_inv = inv_mod(modulus.mod_floor(&big_p).to_u64().expect("residue fits"), p);
        for (res, xi) in residues.iter_mut().zip(&x) {
            let cur = res.mod_floor(&big_p).to_u64().expect("residue fits");
            let delta = (xi + p - cur) % p * m_inv % p;
            *res += &modulus * delta;
        }
        modulus *= &big_p;
        let candidate: Option<Vec<Rational>> = residues
            .iter()
            .map(|u| rational_reconstruction(u, &modulus))
            .collect();
        if let Some(c) = candidate {
            if last.as_ref() == Some(&c) && satisfies(rows, k, &c) {
                return Some(c);
            }
            last = Some(c);
        }
    }
    None
}

/// True when every entry is a nonnegative integer.
pub fn all_nonnegative_integers(values: &[Rational]) -> bool {
    values.iter().all(|q| q.is_integer() && !q.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};
    use proptest::prelude::*;

    fn rows(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter()
            .map(|r| r.iter().map(|&x| rat(x)).collect())
            .collect()
    }

    #[test]
    fn multimodular_matches_bareiss() {
        let to_int = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        let rows = vec![
            to_int(&[2, 1, 0, 7]),
            to_int(&[1, 3, -1, 2]),
            to_int(&[0, 5, 4, -3]),
        ];
        let exact = solve_integer(rows.clone(), 3).solution.unwrap();
        assert_eq!(solve_square_multimodular(&rows, 3, 50).unwrap(), exact);
        let singular = vec![to_int(&[1, 2, 3]), to_int(&[2, 4, 6])];
        assert!(solve_square_multimodular(&singular, 2, 5).is_none());
    }

    #[test]
    fn square_system() {
        let a = rows(&[&[2, 1], &[1, 3]]);
        let b = vec![rat(3), rat(5)];
        let s = solve(&a, &b);
        assert_eq!(s.rank, 2);
        assert_eq!(s.solution, Some(vec![ratio(4, 5), ratio(7, 5)]));
    }

    #[test]
    fn overdetermined_inconsistent_rows_are_reported() {
        let a = rows(&[&[1, 0], &[0, 1], &[1, 1], &[2, 2]]);
        let b = vec![rat(1), rat(2), rat(3), rat(7)];
        let s = solve(&a, &b);
        assert_eq!(s.rank, 2);
        assert_eq!(s.inconsistent_rows, vec![3]);
        assert!(s.solution.is_none());
    }

    #[test]
    fn rank_deficient_has_no_solution() {
        let a = rows(&[&[1, 2], &[2, 4]]);
        let b = vec![rat(1), rat(2)];
        let s = solve(&a, &b);
        assert_eq!(s.rank, 1);
        assert!(s.is_consistent());
        assert!(s.solution.is_none());
    }

    #[test]
    fn modular_rank_matches_exact_rank() {
        let mut mr = ModularRank::new(3);
        let to_int = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert!(mr.insert(&to_int(&[1, 2, 3])));
        assert!(!mr.insert(&to_int(&[2, 4, 6])));
        assert!(mr.insert(&to_int(&[0, 1, 1])));
        assert!(!mr.insert(&to_int(&[1, 3, 4])));
        assert!(mr.insert(&to_int(&[0, 0, -7])));
        assert!(mr.is_full());
    }

    proptest! {
        #[test]
        fn recovers_planted_solution(
            entries in proptest::collection::vec(-9i64..=9, 16),
            extra in proptest::collection::vec(-9i64..=9, 8),
            x in proptest::collection::vec(-20i64..=20, 4),
        ) {
            let mut a: Vec<Vec<Rational>> = entries.chunks(4).map(|c| c.iter().map(|&v| rat(v)).collect()).collect();
            a.extend(extra.chunks(4).map(|c| c.iter().map(|&v| ratio(v, 3)).collect::<Vec<_>>()));
            let xs: Vec<Rational> = x.iter().map(|&v| ratio(v, 7)).collect();
            let b: Vec<Rational> = a.iter().map(|row| row.iter().zip(&xs).map(|(p, q)| p * q).sum()).collect();
            let s = solve(&a, &b);
            prop_assert!(s.is_consistent());
            if s.rank == 4 {
                prop_assert_eq!(s.solution.unwrap(), xs);
            }
        }

        #[test]
        fn multimodular_agrees_with_bareiss(entries in proptest::collection::vec(-1000i64..=1000, 30)) {
            let rows: Vec<Vec<BigInt>> = entries.chunks(6).map(|c| c.iter().map(|&v| BigInt::from(v)).collect()).collect();
            let exact = solve_integer(rows.clone(), 5).solution;
            let fast = solve_square_multimodular(&rows, 5, 40);
            if let Some(x) = fast {
                prop_assert_eq!(Some(x), exact);
            } else {
                prop_assert!(exact.is_none());
            }
        }

        #[test]
        fn mersenne_reduction(a in 0..PRIME, b in 0..PRIME) {
            prop_assert_eq!(mul_mod(a, b) as u128, a as u128 * b as u128 % PRIME as u128);
        }
    }
}
