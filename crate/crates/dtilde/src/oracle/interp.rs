use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::count::{count_unchecked, prime_pool, RankProfile};
use super::rep::MatrixRep;
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::quiver::DimVec;

/// Number of primes beyond the interpolation nodes used to test the fit.
pub const HELD_OUT_PRIMES: usize = 2;

/// Default total-dimension guard of [`fpoly_oracle`].
pub const ORACLE_DIM_LIMIT: i64 = 10;

/// A univariate integer polynomial in the field size `q`, the number of
/// `𝔽_q`-points of a quiver Grassmannian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingPolynomial {
    coefficients: Vec<BigInt>,
}

impl CountingPolynomial {
    /// Builds a polynomial from coefficients in increasing degree.
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        CountingPolynomial { coefficients }
    }

    /// Coefficients in increasing degree, without trailing zeros.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    /// The degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    /// Value at an integer.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Value at `q = 1`, the Euler characteristic.
    pub fn at_one(&self) -> BigInt {
        self.coefficients.iter().sum()
    }

    /// Lagrange interpolation through `(x_i, y_i)`; fails with
    /// [`Error::NonIntegralInterpolation`] unless every coefficient is an integer.
    pub fn interpolate(points: &[(u64, u128)]) -> Result<Self> {
        let k = points.len();
        let mut coeffs = vec![BigRational::zero(); k];
        for (i, &(xi, yi)) in points.iter().enumerate() {
            // basis polynomial Π_{j≠i} (x − x_j) / (x_i − x_j)
            let mut basis = vec![BigRational::one()];
            let mut denom = BigRational::one();
            for (j, &(xj, _)) in points.iter().enumerate() {
                if j == i {
                    continue;
                }
                let xj = BigRational::from_integer(BigInt::from(xj));
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (d, c) in basis.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * &xj;
                }
                basis = next;
                denom *= BigRational::from_integer(BigInt::from(xi)) - xj;
            }
            let scale = BigRational::from_integer(BigInt::from(yi)) / denom;
            for (d, c) in basis.into_iter().enumerate() {
                coeffs[d] += c * &scale;
            }
        }
        let mut out = Vec::with_capacity(k);
        for c in coeffs {
            if !c.is_integer() {
                return Err(Error::NonIntegralInterpolation(format!(
                    "coefficient {c} through {k} points"
                )));
            }
            out.push(c.to_integer());
        }
        Ok(CountingPolynomial::new(out))
    }
}

/// `Σ_q e_q (m_q − e_q)`, the dimension of the ambient product of Grassmannians.
pub fn grassmannian_dimension(m: &DimVec, e: &DimVec) -> usize {
    m.iter().map(|(v, mv)| (e.get(v) * (mv - e.get(v))).max(0) as usize).sum()
}

/// The first `count` primes of good reduction for `m`.
pub fn good_primes(m: &MatrixRep, count: usize) -> Result<Vec<u64>> {
    let rational = RankProfile::rational(m);
    let primes: Vec<u64> = prime_pool()
        .into_iter()
        .filter(|&p| RankProfile::modular(m, p) == rational)
        .take(count)
        .collect();
    if primes.len() < count {
        return Err(Error::TooLarge(format!("needs {count} primes of good reduction")));
    }
    Ok(primes)
}

fn counting_polynomial_with(
    m: &MatrixRep,
    e: &DimVec,
    primes: &[u64],
) -> Result<CountingPolynomial> {
    let nodes = grassmannian_dimension(m.dims(), e) + 1;
    let counts: Vec<(u64, u128)> = primes[..nodes + HELD_OUT_PRIMES]
        .par_iter()
        .map(|&p| Ok((p, count_unchecked(m, e, p, None)?)))
        .collect::<Result<_>>()?;
    let poly = CountingPolynomial::interpolate(&counts[..nodes])?;
    for &(p, c) in &counts[nodes..] {
        if poly.eval(&BigInt::from(p)) != BigInt::from(c) {
            return Err(Error::NonIntegralInterpolation(format!(
                "count {c} at p = {p} is off the interpolated polynomial for e = {e}"
            )));
        }
    }
    Ok(poly)
}

/// The counting polynomial of `Gr_e(M)`, interpolated from `D + 1` good
/// primes with `D` = [`grassmannian_dimension`] and checked at
/// [`HELD_OUT_PRIMES`] further primes.
pub fn counting_polynomial(m: &MatrixRep, e: &DimVec) -> Result<CountingPolynomial> {
    let need = grassmannian_dimension(m.dims(), e) + 1 + HELD_OUT_PRIMES;
    counting_polynomial_with(m, e, &good_primes(m, need)?)
}

fn euler_from(poly: &CountingPolynomial, e: &DimVec) -> Result<BigInt> {
    let chi = poly.at_one();
    if chi.is_negative() {
        return Err(Error::NonIntegralInterpolation(format!(
            "negative Euler characteristic {chi} for e = {e}"
        )));
    }
    Ok(chi)
}

/// `χ(Gr_e(M))`, the value at 1 of the counting polynomial.
///
/// ```
/// use dtilde::oracle::{euler_char, homogeneous_rep};
/// use dtilde::quiver::{DimVec, QuiverDn};
/// use dtilde::laurent::VarId;
///
/// let q = QuiverDn::subspace(4);
/// let m = homogeneous_rep(&q, 1, 2).unwrap();
/// let e = DimVec::simple(4, VarId::Inner(0));
/// assert_eq!(euler_char(&m, &e).unwrap(), 2.into());
/// ```
pub fn euler_char(m: &MatrixRep, e: &DimVec) -> Result<BigInt> {
    euler_from(&counting_polynomial(m, e)?, e)
}

/// Every `e` with `0 ≤ e ≤ m`, in lexicographic order of dense entries.
pub fn sub_dimensions(m: &DimVec) -> Vec<DimVec> {
    let mut out = vec![Vec::new()];
    for &k in m.entries() {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<i64>| {
                (0..=k).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(DimVec::from_dense).collect()
}

/// The F-polynomial `Σ_e χ(Gr_e(M)) x^e` computed from point counts.
///
/// Refuses representations of total dimension above [`ORACLE_DIM_LIMIT`].
pub fn fpoly_oracle(m: &MatrixRep) -> Result<LaurentPoly> {
    fpoly_oracle_with_limit(m, ORACLE_DIM_LIMIT)
}

/// [`fpoly_oracle`] with an explicit total-dimension guard.
pub fn fpoly_oracle_with_limit(m: &MatrixRep, limit: i64) -> Result<LaurentPoly> {
    if m.total_dim() > limit {
        return Err(Error::TooLarge(format!("total dimension {} exceeds {limit}", m.total_dim())));
    }
    let subs = sub_dimensions(m.dims());
    let need = subs.iter().map(|e| grassmannian_dimension(m.dims(), e)).max().unwrap_or(0)
        + 1
        + HELD_OUT_PRIMES;
    let primes = good_primes(m, need)?;
    let terms: Vec<(DimVec, BigInt)> = subs
        .into_par_iter()
        .map(|e| {
            let chi = euler_from(&counting_polynomial_with(m, &e, &primes)?, &e)?;
            Ok((e, chi))
        })
        .collect::<Result<_>>()?;
    Ok(LaurentPoly::from_terms(
        terms.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (e.monomial(), c)),
    ))
}
