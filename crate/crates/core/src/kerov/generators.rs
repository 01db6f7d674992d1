//! Change of generator family through a formal alphabet `A` with
//!
//! ```text
//! (i - 1) R_i = -h_i(A),   Q_i = -p_i(A) / i,   C_i = (-1)^i e_i(A)
//! ```
//!
//! and `h_1 = p_1 = e_1 = 0` (all three families have a vanishing degree-one
//! generator). Conversions happen in the symmetric-function quotient by `p_1`.

use crate::error::Result;
use crate::partition::Partition;
use crate::rational::{rat, ratio, Rational};
use crate::symfunc::{Basis, SymFunc};

use super::poly::{CumulantPolynomial, Family};

fn basis_of(family: Family) -> Basis {
    match family {
        Family::R => Basis::H,
        Family::Q => Basis::P,
        Family::C => Basis::E,
    }
}

/// Scalar `s_i` with `X_i = s_i b_i(A)`.
fn generator_to_alphabet(family: Family, i: usize) -> Rational {
    let i = i as i64;
    match family {
        Family::R => ratio(-1, i - 1),
        Family::Q => ratio(-1, i),
        Family::C => rat(if i % 2 == 0 { 1 } else { -1 }),
    }
}

fn monomial_scale(family: Family, mu: &Partition, inverse: bool) -> Rational {
    mu.parts().iter().fold(rat(1), |acc, &i| {
        let s = generator_to_alphabet(family, i);
        if inverse {
            acc / s
        } else {
            acc * s
        }
    })
}

/// Image of a cumulant polynomial in the symmetric functions on `A`.
pub fn to_alphabet(poly: &CumulantPolynomial) -> SymFunc {
    let family = poly.family();
    SymFunc::from_terms(
        basis_of(family),
        poly.terms()
            .iter()
            .map(|(mu, c)| (mu.clone(), c * monomial_scale(family, mu, false))),
    )
}

/// Reads a symmetric function on `A` back as a polynomial in `family`.
/// Indices containing a part 1 must already have been erased.
pub fn from_alphabet(f: &SymFunc, family: Family) -> Result<CumulantPolynomial> {
    let f = f.convert_modulo_p1(basis_of(family))?;
    Ok(CumulantPolynomial::from_terms(
        family,
        f.terms()
            .iter()
            .map(|(mu, c)| (mu.clone(), c * monomial_scale(family, mu, true))),
    ))
}

/// The same element re-expressed in `target` generators.
pub fn change_generators(poly: &CumulantPolynomial, target: Family) -> CumulantPolynomial {
    if poly.family() == target {
        return poly.clone();
    }
    from_alphabet(&to_alphabet(poly), target).expect("e, h and p are multiplicative bases")
}
