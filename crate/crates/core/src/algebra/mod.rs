//! Exact scalars and the two sparse containers shared by every path.
//!
//! Both [`EvenPolynomial`] and [`Correlator`] index their terms by the same
//! exponent vector `(d_1, ..., d_n)`. For a polynomial the entry `d_i` means
//! `L_i^(2 d_i)`; for a correlator it means `z_i^-(2 d_i + 2)`. With that
//! convention the Laplace transform is a pure rescaling of coefficients.

mod combinatorics;
mod rational;
mod sparse;

pub use combinatorics::{binomial, double_factorial_odd, factorial};
pub use rational::{parse_rational, rat, to_decimal, Rational};
pub use sparse::{Correlator, EvenPolynomial, Exponents, InverseSquares, LengthSquares, Sparse, Variables};

use num_traits::One;

/// Laplace transform of `L_1 ... L_n * p`, term by term:
/// `c * prod L_i^(2d_i)` maps to `c * prod (2 d_i + 1)!` on the same exponent vector.
pub fn laplace(p: &EvenPolynomial) -> Correlator {
    let mut out = Correlator::zero(p.arity());
    for (exps, c) in p.terms() {
        let mut scale = Rational::one();
        for &d in exps {
            scale *= Rational::from_integer(factorial(2 * d + 1));
        }
        out.add_term(exps.clone(), c * scale);
    }
    out
}
