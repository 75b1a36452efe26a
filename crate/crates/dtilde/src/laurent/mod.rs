//! Exact sparse Laurent polynomials over the integers.
//!
//! Variables are vertices of a D̃ₙ quiver ([`VarId`]). Coefficients are
//! arbitrary-precision integers. Rational functions appear only as
//! intermediates of substitutions and are turned back into Laurent
//! polynomials by exact division ([`to_polynomial`]).
//!
//! ```
//! use dtilde::laurent::{parse_poly, LaurentPoly, VarId};
//!
//! let p = LaurentPoly::one_plus(VarId::Inner(0), 1);
//! assert_eq!((&p * &p).render(), "1 + 2*x_0 + x_0^2");
//! assert_eq!(parse_poly("1 + 2*x_0 + x_0^2").unwrap(), &p * &p);
//! ```

mod monomial;
mod poly;
mod rational;
mod text;
mod var;

pub use monomial::Monomial;
pub use poly::{mul, LaurentPoly};
pub use rational::{substitute, substitute_exact, to_polynomial, RationalFunction};
pub use text::{
    from_json, parse_poly, parse_with_denominator, render_with_denominator, split_denominator,
    to_json, JsonTerm,
};
pub use var::VarId;

use num_bigint::BigInt;
use num_traits::One;

/// The generalized binomial coefficient `n(n-1)⋯(n-k+1)/k!`; `n` may be negative.
pub fn gen_binomial(n: i64, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k as i64 {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Substitutes 1 for every variable.
pub fn evaluate_ones(p: &LaurentPoly) -> BigInt {
    p.evaluate_ones()
}
