//! Truncated formal power series with exact rational coefficients.

use num_traits::{One, Zero};

use crate::rational::Rational;

/// `Σ_{j < order} c_j u^j + O(u^order)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    /// Pads or truncates `coeffs` to exactly `order` known coefficients.
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        Series { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Series::new(vec![Rational::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> Rational {
        assert!(
            j < self.order(),
            "coefficient u^{j} is beyond the truncation order {}",
            self.order()
        );
        self.coeffs[j].clone()
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order());
        Series::new(self.coeffs[..order].to_vec(), order)
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let coeffs = (0..order)
            .map(|j| &self.coeffs[j] + &other.coeffs[j])
            .collect();
        Series { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order];
        for (i, a) in self.coeffs.iter().enumerate().take(order) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order - i) {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        Series { coeffs }
    }

    /// `self / other`; `other` must have an invertible constant term.
    pub fn div(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let lead = other.coeffs.first().cloned().unwrap_or_else(Rational::zero);
        assert!(!lead.is_zero(), "series division by a non-unit");
        let mut q: Vec<Rational> = Vec::with_capacity(order);
        for n in 0..order {
            let mut acc = self.coeffs[n].clone();
            for k in 1..=n {
                if !other.coeffs[k].is_zero() {
                    acc -= &other.coeffs[k] * &q[n - k];
                }
            }
            q.push(acc / &lead);
        }
        Series { coeffs: q }
    }

    /// `self(g(u))` for `g` with zero constant term.
    pub fn compose(&self, g: &Series) -> Series {
        assert!(
            g.coeffs.first().is_none_or(Zero::is_zero),
            "inner series must vanish at 0"
        );
        let order = self.order().min(g.order());
        let mut acc = Series::new(Vec::new(), order);
        let mut power = Series::one(order);
        for c in self.coeffs.iter().take(order) {
            acc = acc.add(&power.scale(c));
            power = power.mul(g);
        }
        acc
    }
}
