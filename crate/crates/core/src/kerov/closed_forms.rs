//! Closed forms for the two top nonvanishing graded components of `K_r`
//! below the leading term, and the weighted triple sums over `C_i C_j C_k`.

use num_traits::Zero;

use crate::partition::{compositions, enumerate_partitions, multiplicity_factorial, Partition};
use crate::rational::{binomial, factorial, rat, ratio, Rational};

use super::generators::change_generators;
use super::poly::{CumulantPolynomial, Family};

fn int(n: impl Into<num_bigint::BigInt>) -> Rational {
    Rational::from_integer(n.into())
}

/// Coefficient turning `𝓡_μ` into the plain monomial `R_μ`:
/// `∏ (i-1)^{m_i} / m_i!`.
pub fn script_r_factor(mu: &Partition) -> Rational {
    let num: Rational = mu.parts().iter().map(|&i| rat(i as i64 - 1)).product();
    num / int(multiplicity_factorial(mu))
}

/// `𝓠_μ = ∏ Q_i^{m_i} / m_i!` as a coefficient of `Q_μ`.
pub fn script_q_factor(mu: &Partition) -> Rational {
    Rational::new(1.into(), multiplicity_factorial(mu))
}

/// `(1/4) binom(r+1,3) Σ_{|μ|=r-1} l(μ)! 𝓡_μ`
pub fn krr1_closed_form(r: usize) -> CumulantPolynomial {
    assert!(r >= 2, "K_(r,r-1) needs r >= 2");
    let lead = ratio(1, 4) * int(binomial(r + 1, 3));
    CumulantPolynomial::from_terms(
        Family::R,
        enumerate_partitions(r - 1, 2).into_iter().map(|mu| {
            let c = &lead * int(factorial(mu.len())) * script_r_factor(&mu);
            (mu, c)
        }),
    )
}

/// `a(r) = -(r-1)(r-3)(r² - 4r - 6) / 2880`
pub fn krr3_a(r: usize) -> Rational {
    let r = r as i64;
    ratio(-(r - 1) * (r - 3) * (r * r - 4 * r - 6), 2880)
}

/// `b(r) = (2r² - 3) / 480`
pub fn krr3_b(r: usize) -> Rational {
    let r = r as i64;
    ratio(2 * r * r - 3, 480)
}

/// `Σ_{i+j+k=n} φ(i) C_i C_j C_k` summed term by term over compositions,
/// with `C_0 = 1` and `C_1 = 0`. Result in the C family.
pub fn triple_sum_brute(phi: impl Fn(usize) -> Rational, n: usize) -> CumulantPolynomial {
    let mut out = CumulantPolynomial::zero(Family::C);
    for nu in compositions(n, 3) {
        if nu.contains(&1) {
            continue;
        }
        out.add_term(Partition::new(nu.clone()), phi(nu[0]));
    }
    out
}

/// `binom(r+1,3) Σ_{i+j+k=r-3} (a(r) + b(r) i²) C_i C_j C_k`, in R.
pub fn krr3_closed_form(r: usize) -> CumulantPolynomial {
    assert!(r >= 5, "the K_(r,r-3) formula is stated for r >= 5");
    let (a, b) = (krr3_a(r), krr3_b(r));
    let c_form =
        triple_sum_brute(|i| &a + &b * rat((i * i) as i64), r - 3).scale(&int(binomial(r + 1, 3)));
    change_generators(&c_form, Family::R)
}

/// Which closed form to use for `Σ (a + b i + c i²) C_i C_j C_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TripleSumForm {
    /// `(1/2) Σ (l+2)! (a + bn/3 + (c/6)(n² + p_2(μ))) 𝓡_μ`
    R,
    /// `Σ 3^l (a + bn/3 + (c/9)(n² + 2 p_2(μ))) 𝓠_μ`
    Q,
}

pub fn weighted_triple_sum(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    n: usize,
    form: TripleSumForm,
) -> CumulantPolynomial {
    let nn = rat(n as i64);
    let base = a + b * &nn * ratio(1, 3);
    let family = match form {
        TripleSumForm::R => Family::R,
        TripleSumForm::Q => Family::Q,
    };
    let mut out = CumulantPolynomial::zero(family);
    for mu in enumerate_partitions(n, 2) {
        let p2 = int(mu.power_sum(2));
        let coef = match form {
            TripleSumForm::R => {
                let inner = &base + c * ratio(1, 6) * (&nn * &nn + p2);
                ratio(1, 2) * int(factorial(mu.len() + 2)) * inner * script_r_factor(&mu)
            }
            TripleSumForm::Q => {
                let inner = &base + c * ratio(1, 9) * (&nn * &nn + rat(2) * p2);
                int(num_bigint::BigInt::from(3).pow(mu.len() as u32)) * inner * script_q_factor(&mu)
            }
        };
        if !coef.is_zero() {
            out.add_term(mu, coef);
        }
    }
    out
}
