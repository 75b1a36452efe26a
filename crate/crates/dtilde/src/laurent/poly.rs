use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Monomial, VarId};
use crate::error::{Error, Result};

/// A sparse Laurent polynomial with arbitrary-precision integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    /// The constant `1`.
    pub fn one() -> Self {
        Self::constant(1)
    }

    /// A constant polynomial.
    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Self::term(c, Monomial::one())
    }

    /// The single variable `x_v`.
    pub fn var(v: VarId) -> Self {
        Self::term(1, Monomial::var_pow(v, 1))
    }

    /// The monomial `m` with coefficient 1.
    pub fn monomial(m: Monomial) -> Self {
        Self::term(1, m)
    }

    /// The term `c · m`.
    pub fn term<T: Into<BigInt>>(c: T, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    /// `1 + x_v^e`, the binomial used by every reflection transform.
    pub fn one_plus(v: VarId, e: i32) -> Self {
        &Self::one() + &Self::monomial(Monomial::var_pow(v, e))
    }

    /// Builds a polynomial from terms, adding repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigInt)>>(terms: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c · m` in place.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Whether the polynomial is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether the polynomial is the constant `1`.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether there are no terms (same as [`LaurentPoly::is_zero`]).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates over `(monomial, coefficient)` in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// The coefficient of `m` (zero when absent).
    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// The largest term in monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Returns the single monomial and coefficient if the polynomial is a term.
    pub fn as_term(&self) -> Option<(&Monomial, &BigInt)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Every variable that occurs with a nonzero exponent.
    pub fn variables(&self) -> Vec<VarId> {
        let mut vs: Vec<VarId> =
            self.terms.keys().flat_map(|m| m.exponents().iter().map(|&(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }

    /// Per-variable `(min, max)` exponent over all terms; absent variables count as 0.
    pub fn exponent_bounds(&self) -> BTreeMap<VarId, (i32, i32)> {
        let vars = self.variables();
        let mut out = BTreeMap::new();
        for v in vars {
            let mut lo = i32::MAX;
            let mut hi = i32::MIN;
            for m in self.terms.keys() {
                let e = m.exponent(v);
                lo = lo.min(e);
                hi = hi.max(e);
            }
            out.insert(v, (lo, hi));
        }
        out
    }

    /// The monomial `Π x_v^{min_v}` dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        Monomial::from_pairs(self.exponent_bounds().into_iter().map(|(v, (lo, _))| (v, lo)))
    }

    /// Multiplies by a monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    /// Multiplies by an integer scalar.
    pub fn scale<T: Into<BigInt>>(&self, c: T) -> LaurentPoly {
        let c = c.into();
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, v)| (k.clone(), v * &c)).collect() }
    }

    /// Divides every coefficient by `c`, failing if any division is inexact.
    pub fn div_scalar(&self, c: &BigInt) -> Result<LaurentPoly> {
        if c.is_zero() {
            return Err(Error::NotDivisible("division by zero".into()));
        }
        let mut terms = BTreeMap::new();
        for (m, v) in &self.terms {
            let (q, r) = v.div_rem(c);
            if !r.is_zero() {
                return Err(Error::NonIntegralResult(format!(
                    "coefficient {v} of {} is not divisible by {c}",
                    m.render()
                )));
            }
            terms.insert(m.clone(), q);
        }
        Ok(LaurentPoly { terms })
    }

    /// The `k`-th power, `k ≥ 0`.
    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut result = LaurentPoly::one();
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = &result * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Substitutes 1 for every variable.
    pub fn evaluate_ones(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Whether every coefficient is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Whether no monomial has a negative exponent.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|m| m.exponents().iter().all(|&(_, e)| e > 0))
    }

    /// Renames variables; exponents of variables mapped to the same target add up.
    pub fn rename(&self, f: impl Fn(VarId) -> VarId) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| {
            (Monomial::from_pairs(m.exponents().iter().map(|&(v, e)| (f(v), e))), c.clone())
        }))
    }

    /// Exact division by `d`.
    ///
    /// Uses leading-term long division. Quotient monomials are confined to
    /// the box `[min(self) - min(d), max(self) - max(d)]` per variable, which
    /// any exact quotient satisfies; leaving the box or meeting an inexact
    /// coefficient raises [`Error::NotDivisible`].
    pub fn div_exact(&self, d: &LaurentPoly) -> Result<LaurentPoly> {
        let (dm, dc) =
            d.leading_term().ok_or_else(|| Error::NotDivisible("division by zero".into()))?;
        if self.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        if let Some((m, c)) = d.as_term() {
            let inv = m.inv();
            return self
                .div_scalar(c)
                .map(|p| p.mul_monomial(&inv))
                .map_err(|_| Error::NotDivisible(format!("coefficients not divisible by {c}")));
        }
        let nb = self.exponent_bounds();
        let db = d.exponent_bounds();
        let mut vars: Vec<VarId> = nb.keys().chain(db.keys()).copied().collect();
        vars.sort();
        vars.dedup();
        let bounds: Vec<(VarId, i32, i32)> = vars
            .iter()
            .map(|&v| {
                let (nlo, nhi) = nb.get(&v).copied().unwrap_or((0, 0));
                let (dlo, dhi) = db.get(&v).copied().unwrap_or((0, 0));
                (v, nlo - dlo, nhi - dhi)
            })
            .collect();
        let mut rem = self.clone();
        let mut quot = LaurentPoly::zero();
        while let Some((lm, lc)) = rem.leading_term() {
            let qm = lm.div(dm);
            for &(v, lo, hi) in &bounds {
                let e = qm.exponent(v);
                if e < lo || e > hi {
                    return Err(Error::NotDivisible(format!(
                        "remainder term {} escapes the quotient box",
                        lm.render()
                    )));
                }
            }
            let (qc, r) = lc.div_rem(dc);
            if !r.is_zero() {
                return Err(Error::NotDivisible(format!("coefficient {lc} not divisible by {dc}")));
            }
            let step = LaurentPoly::term(qc.clone(), qm.clone());
            rem = &rem - &(&step * d);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Renders in canonical order: total degree ascending, then monomial order descending.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.canonical_terms().into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.render());
            } else {
                out.push_str(&format!("{abs}*{}", m.render()));
            }
        }
        out
    }

    /// Terms in canonical printing order.
    pub fn canonical_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.total_degree().cmp(&b.0.total_degree()).then_with(|| b.0.cmp(a.0)));
        v
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        mul(self, rhs)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// The exact product of two Laurent polynomials.
pub fn mul(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() || q.is_zero() {
        return LaurentPoly::zero();
    }
    let (small, large) = if p.len() <= q.len() { (p, q) } else { (q, p) };
    if let Some((m, c)) = small.as_term() {
        if c.is_one() {
            return large.mul_monomial(m);
        }
    }
    if let Some(prod) = mul_dense(small, large) {
        return prod;
    }
    let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(large.len() * 2);
    for (m1, c1) in &small.terms {
        for (m2, c2) in &large.terms {
            *acc.entry(m1.mul(m2)).or_insert_with(BigInt::zero) += c1 * c2;
        }
    }
    LaurentPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
}

/// Largest dense exponent box the machine-integer product will allocate.
const DENSE_LIMIT: usize = 1 << 25;

/// Product via convolution on the dense exponent box with `i128`
/// accumulators. Returns `None` when coefficients are too large for an
/// overflow-free accumulation or the box is too big.
fn mul_dense(p: &LaurentPoly, q: &LaurentPoly) -> Option<LaurentPoly> {
    let max_abs = |x: &LaurentPoly| -> Option<u64> {
        x.terms.values().map(|c| c.abs().to_u64()).try_fold(0u64, |m, c| Some(m.max(c?)))
    };
    let (mp, mq) = (max_abs(p)? as u128, max_abs(q)? as u128);
    let bound = mp.checked_mul(mq)?.checked_mul(p.len().min(q.len()) as u128)?;
    if bound >= 1u128 << 126 {
        return None;
    }
    let bp = p.exponent_bounds();
    let bq = q.exponent_bounds();
    let mut vars: Vec<VarId> = bp.keys().chain(bq.keys()).copied().collect();
    vars.sort();
    vars.dedup();
    let range = |b: &BTreeMap<VarId, (i32, i32)>, v: VarId| b.get(&v).copied().unwrap_or((0, 0));
    let mut strides = Vec::with_capacity(vars.len());
    let mut lows = Vec::with_capacity(vars.len());
    let mut size = 1usize;
    for &v in &vars {
        let (plo, phi) = range(&bp, v);
        let (qlo, qhi) = range(&bq, v);
        strides.push(size);
        lows.push((plo, qlo));
        size = size.checked_mul((phi - plo + qhi - qlo + 1) as usize)?;
        if size > DENSE_LIMIT {
            return None;
        }
    }
    let index = |m: &Monomial, first: bool| -> usize {
        vars.iter()
            .enumerate()
            .map(|(i, &v)| {
                let lo = if first { lows[i].0 } else { lows[i].1 };
                (m.exponent(v) - lo) as usize * strides[i]
            })
            .sum()
    };
    let to_i = |c: &BigInt| c.to_i128().expect("bounded by max_abs");
    let pt: Vec<(usize, i128)> = p.terms.iter().map(|(m, c)| (index(m, true), to_i(c))).collect();
    let qt: Vec<(usize, i128)> = q.terms.iter().map(|(m, c)| (index(m, false), to_i(c))).collect();
    let mut acc = vec![0i128; size];
    for &(i, a) in &pt {
        for &(j, b) in &qt {
            acc[i + j] += a * b;
        }
    }
    let mut terms = BTreeMap::new();
    for (idx, c) in acc.into_iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut rest = idx;
        let mut exps = Vec::with_capacity(vars.len());
        for i in (0..vars.len()).rev() {
            let k = rest / strides[i];
            rest %= strides[i];
            exps.push((vars[i], k as i32 + lows[i].0 + lows[i].1));
        }
        terms.insert(Monomial::from_pairs(exps), BigInt::from(c));
    }
    Some(LaurentPoly { terms })
}
