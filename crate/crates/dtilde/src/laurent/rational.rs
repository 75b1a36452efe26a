use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed};

use super::{LaurentPoly, Monomial, VarId};
use crate::error::{Error, Result};

/// A quotient of Laurent polynomials with a factored denominator.
///
/// Denominator factors are kept normalized: no monomial content, positive
/// leading coefficient, and never a unit monomial (those are folded into
/// the numerator). Keeping the factors separate lets [`to_polynomial`]
/// divide by one small factor at a time.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    numerator: LaurentPoly,
    factors: Vec<(LaurentPoly, u32)>,
}

impl RationalFunction {
    /// Embeds a Laurent polynomial.
    pub fn from_poly(p: LaurentPoly) -> Self {
        RationalFunction { numerator: p, factors: Vec::new() }
    }

    /// Builds `numerator / denominator`.
    ///
    /// # Panics
    /// Panics if the denominator is zero.
    pub fn new(numerator: LaurentPoly, denominator: LaurentPoly) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        let mut r = Self::from_poly(numerator);
        r.push_factor(denominator, 1);
        r
    }

    /// The numerator.
    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    /// The denominator factors with multiplicities.
    pub fn factors(&self) -> &[(LaurentPoly, u32)] {
        &self.factors
    }

    /// The expanded denominator.
    pub fn denominator(&self) -> LaurentPoly {
        self.factors.iter().fold(LaurentPoly::one(), |acc, (f, k)| &acc * &f.pow(*k))
    }

    /// Whether the denominator is trivial.
    pub fn is_polynomial(&self) -> bool {
        self.factors.is_empty()
    }

    fn push_factor(&mut self, f: LaurentPoly, k: u32) {
        if k == 0 {
            return;
        }
        let content = f.monomial_content();
        let mut f = f.mul_monomial(&content.inv());
        self.numerator = self.numerator.mul_monomial(&content.inv().pow(k as i32));
        if f.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            f = -&f;
            if k % 2 == 1 {
                self.numerator = -&self.numerator;
            }
        }
        if f.is_one() {
            return;
        }
        if let Some(slot) = self.factors.iter_mut().find(|(g, _)| *g == f) {
            slot.1 += k;
        } else {
            self.factors.push((f, k));
        }
    }

    /// The product of two rational functions.
    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        let mut out = RationalFunction::from_poly(&self.numerator * &other.numerator);
        for (f, k) in self.factors.iter().chain(other.factors.iter()) {
            out.push_factor(f.clone(), *k);
        }
        out
    }

    /// Multiplies the numerator by a polynomial.
    pub fn mul_poly(&self, p: &LaurentPoly) -> RationalFunction {
        RationalFunction { numerator: &self.numerator * p, factors: self.factors.clone() }
    }

    /// Divides by a nonzero polynomial.
    pub fn div_poly(&self, p: &LaurentPoly) -> RationalFunction {
        let mut out = self.clone();
        out.push_factor(p.clone(), 1);
        out
    }

    /// The sum of two rational functions.
    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let a = self.numerator.clone() * other.denominator();
        let b = other.numerator.clone() * self.denominator();
        let mut out = RationalFunction::from_poly(&a + &b);
        for (f, k) in self.factors.iter().chain(other.factors.iter()) {
            out.push_factor(f.clone(), *k);
        }
        out
    }

    /// Cross-multiplied equality `p/q = r/s ⇔ p·s = r·q`.
    pub fn equals(&self, other: &RationalFunction) -> bool {
        &self.numerator * &other.denominator() == &other.numerator * &self.denominator()
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({}) / ({})", self.numerator, self.denominator())
    }
}

/// The exact quotient of a rational function known to be a Laurent polynomial.
///
/// Divides the numerator by each denominator factor in turn.
pub fn to_polynomial(r: &RationalFunction) -> Result<LaurentPoly> {
    let mut num = r.numerator.clone();
    for (f, k) in &r.factors {
        for _ in 0..*k {
            num = num.div_exact(f).map_err(|e| match e {
                Error::NotDivisible(msg) => Error::NotDivisible(format!("by factor ({f}): {msg}")),
                other => other,
            })?;
        }
    }
    Ok(num)
}

/// Simultaneous substitution `x_v ↦ assignment[v]`; unassigned variables stay fixed.
///
/// Each image is split as `monomial · core / den`. Terms of `p` are grouped
/// by their exponents on variables with nontrivial core or denominator, so
/// only one polynomial product is formed per group rather than per term.
pub fn substitute(
    p: &LaurentPoly,
    assignment: &BTreeMap<VarId, RationalFunction>,
) -> RationalFunction {
    struct Image {
        mono: Monomial,
        core: LaurentPoly,
        den: Vec<(LaurentPoly, u32)>,
        trivial: bool,
    }
    let mut images: BTreeMap<VarId, Image> = BTreeMap::new();
    for v in p.variables() {
        let img = match assignment.get(&v) {
            None => Image {
                mono: Monomial::var_pow(v, 1),
                core: LaurentPoly::one(),
                den: Vec::new(),
                trivial: true,
            },
            Some(r) => {
                let content = r.numerator.monomial_content();
                let mut core = r.numerator.mul_monomial(&content.inv());
                let mut mono = content;
                if let Some((m, c)) = core.as_term() {
                    if c.is_one() {
                        mono = mono.mul(m);
                        core = LaurentPoly::one();
                    }
                }
                let trivial = core.is_one() && r.factors.is_empty();
                Image { mono, core, den: r.factors.clone(), trivial }
            }
        };
        images.insert(v, img);
    }
    let nontrivial: Vec<VarId> =
        images.iter().filter(|(_, im)| !im.trivial).map(|(v, _)| *v).collect();
    let bounds = p.exponent_bounds();
    let shift: BTreeMap<VarId, (i32, i32)> = nontrivial
        .iter()
        .map(|v| {
            let (lo, hi) = bounds[v];
            (*v, ((-lo).max(0), hi.max(0)))
        })
        .collect();

    let mut groups: BTreeMap<Vec<i32>, LaurentPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let key: Vec<i32> = nontrivial.iter().map(|&v| m.exponent(v)).collect();
        let mono = Monomial::from_pairs(m.exponents().iter().flat_map(|&(v, e)| {
            images[&v].mono.exponents().iter().map(move |&(w, f)| (w, e * f)).collect::<Vec<_>>()
        }));
        groups.entry(key).or_default().add_term(mono, c.clone());
    }

    let mut core_pows: BTreeMap<(VarId, u32), LaurentPoly> = BTreeMap::new();
    let mut den_pows: BTreeMap<(VarId, u32), LaurentPoly> = BTreeMap::new();
    let mut numerator = LaurentPoly::zero();
    for (key, part) in groups {
        let mut term = part;
        for (i, &v) in nontrivial.iter().enumerate() {
            let (a, b) = shift[&v];
            let e = key[i];
            let ce = (e + a) as u32;
            let de = (b - e) as u32;
            let im = &images[&v];
            if ce > 0 && !im.core.is_one() {
                let cp = core_pows.entry((v, ce)).or_insert_with(|| im.core.pow(ce));
                term = &term * cp;
            }
            if de > 0 && !im.den.is_empty() {
                let dp = den_pows.entry((v, de)).or_insert_with(|| {
                    im.den.iter().fold(LaurentPoly::one(), |acc, (f, k)| &acc * &f.pow(k * de))
                });
                term = &term * dp;
            }
        }
        numerator = &numerator + &term;
    }
    let mut out = RationalFunction::from_poly(numerator);
    for &v in &nontrivial {
        let (a, b) = shift[&v];
        let im = &images[&v];
        if a > 0 && !im.core.is_one() {
            out.push_factor(im.core.clone(), a as u32);
        }
        if b > 0 {
            for (f, k) in &im.den {
                out.push_factor(f.clone(), k * b as u32);
            }
        }
    }
    out
}

/// Substitution followed by exact division back to a Laurent polynomial.
pub fn substitute_exact(
    p: &LaurentPoly,
    assignment: &BTreeMap<VarId, RationalFunction>,
) -> Result<LaurentPoly> {
    to_polynomial(&substitute(p, assignment))
}
