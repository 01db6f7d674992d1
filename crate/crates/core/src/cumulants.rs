//! Young diagram → interlacing pair → free cumulants, by exact inversion of
//! the resolvent series, plus the numeric `C_n` and `Q_n` values of a
//! diagram.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, multiplicity_factorial, Partition};
use crate::rational::{factorial, rat, Rational};
use crate::series::Series;

/// Profile of a Young diagram: minima `x` (length d) and maxima `y`
/// (length d-1) with `x_1 < y_1 < x_2 < ... < y_{d-1} < x_d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InterlacingPair {
    pub x: Vec<i64>,
    pub y: Vec<i64>,
}

impl InterlacingPair {
    pub fn new(x: Vec<i64>, y: Vec<i64>) -> Result<Self> {
        let pair = InterlacingPair { x, y };
        if !pair.is_interlacing() {
            return Err(Error::InvalidArgument(format!(
                "x = {:?}, y = {:?} do not interlace",
                pair.x, pair.y
            )));
        }
        Ok(pair)
    }

    pub fn is_interlacing(&self) -> bool {
        if self.x.len() != self.y.len() + 1 {
            return false;
        }
        self.y
            .iter()
            .enumerate()
            .all(|(i, &y)| self.x[i] < y && y < self.x[i + 1])
    }

    /// `Σ x_i - Σ y_i`
    pub fn center(&self) -> i64 {
        self.x.iter().sum::<i64>() - self.y.iter().sum::<i64>()
    }
}

/// Contents of the removable corners (`y`) and of the addable cells (`x`).
/// The box in row `i`, column `j` (1-based) has content `j - i`.
pub fn diagram_to_interlacing(lambda: &Partition) -> Result<InterlacingPair> {
    if lambda.is_empty() {
        return Err(Error::EmptyPartition("corners"));
    }
    let parts = lambda.parts();
    let l = parts.len();
    let mut x = Vec::with_capacity(l + 1);
    let mut y = Vec::with_capacity(l);
    // walk rows bottom-up so contents come out increasing
    x.push(-(l as i64));
    for i in (1..=l).rev() {
        let row = parts[i - 1] as i64;
        let below = parts.get(i).copied().unwrap_or(0) as i64;
        if row > below {
            y.push(row - i as i64);
        }
        let above = if i >= 2 {
            parts[i - 2] as i64
        } else {
            i64::MAX
        };
        if above > row {
            x.push(row + 1 - i as i64);
        }
    }
    let pair = InterlacingPair { x, y };
    if !pair.is_interlacing() || pair.center() != 0 {
        return Err(Error::Invariant(format!(
            "diagram {lambda} produced a malformed profile {pair:?}"
        )));
    }
    Ok(pair)
}

/// Moments `m_0, ..., m_order` of `G(z) = Σ m_j z^{-j-1}`, computed as the
/// expansion of `Π(1 - y_i u) / Π(1 - x_i u)` in `u = 1/z`.
pub fn resolvent_series(pair: &InterlacingPair, order: usize) -> Vec<Rational> {
    let len = order + 1;
    let linear = |root: i64| Series::new(vec![rat(1), rat(-root)], len);
    let numerator = pair
        .y
        .iter()
        .fold(Series::one(len), |acc, &y| acc.mul(&linear(y)));
    let denominator = pair
        .x
        .iter()
        .fold(Series::one(len), |acc, &x| acc.mul(&linear(x)));
    numerator.div(&denominator).coeffs().to_vec()
}

/// Free cumulants `R_2, ..., R_{max}` of a diagram (`R_1 = 0` is implicit).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CumulantVector {
    // values[k] = R_k; indices 0 and 1 hold zero
    values: Vec<Rational>,
}

impl CumulantVector {
    pub fn from_values(values: Vec<Rational>) -> Self {
        CumulantVector { values }
    }

    pub fn max_order(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn get(&self, k: usize) -> Rational {
        assert!(
            k <= self.max_order(),
            "R_{k} was not computed (max order {})",
            self.max_order()
        );
        self.values[k].clone()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.values
    }

    /// `R_μ = ∏ R_{μ_i}`
    pub fn monomial(&self, mu: &Partition) -> Rational {
        mu.parts()
            .iter()
            .fold(Rational::one(), |acc, &k| acc * &self.values[k])
    }
}

/// Solves `m_n = Σ_{s=1}^{n} R_s [u^{n-s}] M(u)^s` triangularly for the
/// cumulants, which is coefficient matching of `K(G(z)) = z` with
/// `K(w) = 1/w + Σ R_k w^{k-1}`.
pub fn cumulants_from_moments(moments: &[Rational]) -> Result<Vec<Rational>> {
    let k_max = moments.len() - 1;
    let len = k_max + 1;
    let m = Series::new(moments.to_vec(), len);
    // powers[s] = M^s
    let mut powers = vec![Series::one(len)];
    for s in 1..=k_max {
        let next = powers[s - 1].mul(&m);
        powers.push(next);
    }
    let mut r = vec![Rational::zero(); len];
    for n in 1..=k_max {
        let mut acc = moments[n].clone();
        for s in 1..n {
            if !r[s].is_zero() {
                acc -= &r[s] * powers[s].coeff(n - s);
            }
        }
        r[n] = acc;
    }
    if len > 1 && !r[1].is_zero() {
        return Err(Error::Invariant(format!(
            "R_1 = {} but a centered profile forces 0",
            r[1]
        )));
    }
    Ok(r)
}

pub fn free_cumulants(lambda: &Partition, k_max: usize) -> Result<CumulantVector> {
    if k_max < 2 {
        return Err(Error::InvalidArgument(format!(
            "k_max = {k_max} must be at least 2"
        )));
    }
    let pair = diagram_to_interlacing(lambda)?;
    let moments = resolvent_series(&pair, k_max);
    Ok(CumulantVector::from_values(cumulants_from_moments(
        &moments,
    )?))
}

/// Integer-only version of [`free_cumulants`]: for a diagram the moments of
/// the transition measure and its free cumulants are all integers, so no
/// rational arithmetic is needed. `out[k] = R_k` for `k <= k_max`.
pub fn integer_free_cumulants(lambda: &Partition, k_max: usize) -> Result<Vec<BigInt>> {
    let pair = diagram_to_interlacing(lambda)?;
    let len = k_max + 1;
    let truncate_mul = |a: &[BigInt], b: &[BigInt]| {
        let mut out = vec![BigInt::zero(); len];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, y) in b.iter().enumerate().take(len - i) {
                out[i + j] += x * y;
            }
        }
        out
    };
    // Π(1 - y u) times Σ x^j u^j for each x
    let mut m = vec![BigInt::zero(); len];
    m[0] = BigInt::one();
    for &y in &pair.y {
        for j in (1..len).rev() {
            let prev = m[j - 1].clone();
            m[j] -= prev * y;
        }
    }
    for &x in &pair.x {
        for j in 1..len {
            let prev = m[j - 1].clone();
            m[j] += prev * x;
        }
    }
    let mut r = vec![BigInt::zero(); len];
    let mut power = m.clone();
    // powers[s] is only needed at coefficient n - s for n > s
    let mut powers = vec![vec![BigInt::zero(); len]];
    for _ in 1..len {
        powers.push(power.clone());
        power = truncate_mul(&power, &m);
    }
    for n in 1..len {
        let mut acc = m[n].clone();
        for s in 2..n {
            if !r[s].is_zero() {
                acc -= &r[s] * &powers[s][n - s];
            }
        }
        r[n] = acc;
    }
    if len > 1 && !r[1].is_zero() {
        return Err(Error::Invariant(format!(
            "R_1 = {} but a centered profile forces 0",
            r[1]
        )));
    }
    Ok(r)
}

/// `(i-1) R_i` scaled cumulants, the building block of `𝓡_μ`.
fn scaled_cumulant(r: &CumulantVector, i: usize) -> Rational {
    rat(i as i64 - 1) * r.get(i)
}

/// `𝓡_μ = ∏ ((i-1) R_i)^{m_i} / m_i!`
pub fn script_r(r: &CumulantVector, mu: &Partition) -> Rational {
    let prod = mu
        .parts()
        .iter()
        .fold(Rational::one(), |acc, &i| acc * scaled_cumulant(r, i));
    prod / Rational::from_integer(multiplicity_factorial(mu))
}

/// `C_0, ..., C_{n_max}` from `C(z) = (1 - Σ (i-1) R_i z^i)^{-1}`.
pub fn c_values(lambda: &Partition, n_max: usize) -> Result<Vec<Rational>> {
    let r = free_cumulants(lambda, n_max.max(2))?;
    let len = n_max + 1;
    let mut denom = vec![Rational::one()];
    denom.extend((1..len).map(|i| {
        if i >= 2 {
            -scaled_cumulant(&r, i)
        } else {
            Rational::zero()
        }
    }));
    Ok(Series::one(len)
        .div(&Series::new(denom, len))
        .coeffs()
        .to_vec())
}

/// `Q_0 = 1`, `Q_1 = 0`, `Q_n = Σ_{|μ|=n} (l(μ)-1)! 𝓡_μ`.
pub fn q_values(lambda: &Partition, n_max: usize) -> Result<Vec<Rational>> {
    let r = free_cumulants(lambda, n_max.max(2))?;
    Ok((0..=n_max)
        .map(|n| match n {
            0 => Rational::one(),
            1 => Rational::zero(),
            _ => enumerate_partitions(n, 2)
                .iter()
                .map(|mu| Rational::from_integer(factorial(mu.len() - 1)) * script_r(&r, mu))
                .sum(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn rats(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn interlacing_examples() {
        let one = diagram_to_interlacing(&p(&[1])).unwrap();
        assert_eq!((one.x, one.y), (vec![-1, 1], vec![0]));
        let hook = diagram_to_interlacing(&p(&[2, 1])).unwrap();
        assert_eq!((hook.x, hook.y), (vec![-2, 0, 2], vec![-1, 1]));
        let three_one = diagram_to_interlacing(&p(&[3, 1])).unwrap();
        assert_eq!((three_one.x, three_one.y), (vec![-2, 0, 3], vec![-1, 2]));
        assert!(matches!(
            diagram_to_interlacing(&Partition::empty()),
            Err(Error::EmptyPartition(_))
        ));
    }

    #[test]
    fn resolvent_examples() {
        let one = diagram_to_interlacing(&p(&[1])).unwrap();
        // z/(z²-1) = u + u³ + u⁵ + ...
        assert_eq!(resolvent_series(&one, 4), rats(&[1, 0, 1, 0, 1]));
        let hook = diagram_to_interlacing(&p(&[2, 1])).unwrap();
        assert_eq!(resolvent_series(&hook, 3), rats(&[1, 0, 3, 0]));
        let row = InterlacingPair::new(vec![-1, 2], vec![1]).unwrap();
        assert_eq!(resolvent_series(&row, 3), rats(&[1, 0, 2, 2]));
    }

    #[test]
    fn cumulant_examples() {
        let r = free_cumulants(&p(&[1]), 4).unwrap();
        assert_eq!((r.get(2), r.get(3), r.get(4)), (rat(1), rat(0), rat(-1)));
        let r = free_cumulants(&p(&[2]), 3).unwrap();
        assert_eq!((r.get(2), r.get(3)), (rat(2), rat(2)));
        let r = free_cumulants(&p(&[2, 1]), 4).unwrap();
        assert_eq!((r.get(2), r.get(3), r.get(4)), (rat(3), rat(0), rat(-6)));
        assert!(free_cumulants(&p(&[2]), 1).is_err());
    }

    #[test]
    fn c_and_q_examples() {
        let c = c_values(&p(&[1]), 2).unwrap();
        assert_eq!(c, rats(&[1, 0, 1]));
        let c = c_values(&p(&[2, 1]), 4).unwrap();
        assert_eq!(c[1], rat(0));
        assert_eq!(c[4], rat(-9));
        let q = q_values(&p(&[2]), 3).unwrap();
        assert_eq!(
            (q[1].clone(), q[2].clone(), q[3].clone()),
            (rat(0), rat(2), rat(4))
        );
        let q = q_values(&p(&[2, 1]), 4).unwrap();
        assert_eq!(q[4], ratio(-27, 2));
    }

    #[test]
    fn c_series_matches_factorial_sum() {
        for lam in [p(&[3, 1]), p(&[4, 2, 2, 1]), p(&[5, 5, 3])] {
            let r = free_cumulants(&lam, 10).unwrap();
            let c = c_values(&lam, 10).unwrap();
            for n in 0..=10 {
                let direct: Rational = enumerate_partitions(n, 2)
                    .iter()
                    .map(|mu| Rational::from_integer(factorial(mu.len())) * script_r(&r, mu))
                    .sum();
                assert_eq!(c[n], direct, "C_{n} at {lam}");
            }
        }
    }

    #[test]
    fn integer_path_matches_rational_path() {
        for n in 1..=11 {
            for lam in enumerate_partitions(n, 1) {
                let exact = free_cumulants(&lam, 12).unwrap();
                let ints = integer_free_cumulants(&lam, 12).unwrap();
                for k in 2..=12 {
                    assert_eq!(
                        Rational::from_integer(ints[k].clone()),
                        exact.get(k),
                        "{lam} R_{k}"
                    );
                }
            }
        }
    }

    #[test]
    fn second_cumulant_is_the_size() {
        for n in 1..=14 {
            for lam in enumerate_partitions(n, 1) {
                assert_eq!(
                    free_cumulants(&lam, 2).unwrap().get(2),
                    rat(n as i64),
                    "{lam}"
                );
            }
        }
    }

    #[test]
    fn transposition_flips_odd_cumulants() {
        for n in 1..=12 {
            for lam in enumerate_partitions(n, 1) {
                let a = free_cumulants(&lam, 10).unwrap();
                let b = free_cumulants(&lam.conjugate(), 10).unwrap();
                for k in 2..=10 {
                    let s = if k % 2 == 0 { rat(1) } else { rat(-1) };
                    assert_eq!(b.get(k), s * a.get(k), "R_{k} at {lam}");
                }
            }
        }
    }

    #[test]
    fn inverse_composes_back_to_identity() {
        // With U(w) = 1/K(w) = w / (1 + Σ_k R_k w^k), G(K(w)) = Σ m_j U^{j+1} = w.
        for lam in [p(&[1]), p(&[3, 1]), p(&[4, 4, 2, 1]), p(&[6, 3, 3, 1, 1])] {
            let order = 9;
            let pair = diagram_to_interlacing(&lam).unwrap();
            let m = resolvent_series(&pair, order);
            let r = free_cumulants(&lam, order).unwrap();
            let len = order + 2;
            let mut denom = vec![rat(1)];
            denom.extend((1..len).map(|k| {
                if k >= 2 && k <= order {
                    r.get(k)
                } else {
                    rat(0)
                }
            }));
            let w = Series::new(vec![rat(0), rat(1)], len);
            // the w^{k} terms beyond `order` are unknown, so compare below that
            let u = w.div(&Series::new(denom, len));
            let mut g = Series::new(Vec::new(), len);
            let mut power = u.clone();
            for mj in &m {
                g = g.add(&power.scale(mj));
                power = power.mul(&u);
            }
            let expected = Series::new(vec![rat(0), rat(1)], order + 1);
            assert_eq!(g.truncate(order + 1), expected, "{lam}");
        }
    }

    #[test]
    fn random_profiles_interlace() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let n = rng.gen_range(1..=30usize);
            // random partition of n by random cuts
            let mut parts = Vec::new();
            let mut left = n;
            while left > 0 {
                let k = rng.gen_range(1..=left);
                parts.push(k);
                left -= k;
            }
            let lam = Partition::new(parts);
            let pair = diagram_to_interlacing(&lam).unwrap();
            assert!(pair.is_interlacing());
            assert_eq!(pair.center(), 0);
            assert_eq!(pair.x[0], -(lam.len() as i64));
            assert_eq!(*pair.x.last().unwrap(), lam.largest() as i64);
        }
    }
}
