use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{LaurentPoly, Monomial, VarId};
use crate::error::{Error, Result};

/// Parses the canonical text form, e.g. `1 + 2*x_0 - x_a*x_0^2 + x_c^-1`.
///
/// Accepts any term order and any whitespace; repeated monomials add up.
pub fn parse_poly(s: &str) -> Result<LaurentPoly> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut poly = LaurentPoly::zero();
    let bytes = compact.as_bytes();
    let mut start = 0;
    let mut i = 0;
    while i <= bytes.len() {
        let at_split = i == bytes.len()
            || (i > start && (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^');
        if at_split {
            let (m, c) = parse_term(&compact[start..i])?;
            poly.add_term(m, c);
            start = i;
        }
        i += 1;
    }
    Ok(poly)
}

fn parse_term(t: &str) -> Result<(Monomial, BigInt)> {
    let (sign, body) = match t.as_bytes().first() {
        Some(b'+') => (1, &t[1..]),
        Some(b'-') => (-1, &t[1..]),
        _ => (1, t),
    };
    if body.is_empty() {
        return Err(Error::Parse(format!("dangling sign in `{t}`")));
    }
    let mut coeff = BigInt::from(sign);
    let mut pairs = Vec::new();
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{t}`")));
        }
        if factor.starts_with("x_") {
            let (name, exp) = match factor.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            pairs.push((name.parse::<VarId>()?, exp));
        } else {
            let c: BigInt =
                factor.parse().map_err(|_| Error::Parse(format!("bad coefficient `{factor}`")))?;
            coeff *= c;
        }
    }
    Ok((Monomial::from_pairs(pairs), coeff))
}

/// One term in the JSON form.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct JsonTerm {
    /// Nonzero exponents keyed by vertex name.
    pub exponents: BTreeMap<String, i32>,
    /// The coefficient as a decimal string.
    pub coeff: String,
}

/// The JSON form: a list of terms in canonical order.
pub fn to_json(p: &LaurentPoly) -> serde_json::Value {
    let terms: Vec<JsonTerm> = p
        .canonical_terms()
        .into_iter()
        .map(|(m, c)| JsonTerm {
            exponents: m.exponents().iter().map(|&(v, e)| (v.name(), e)).collect(),
            coeff: c.to_string(),
        })
        .collect();
    serde_json::to_value(terms).expect("terms serialize")
}

/// Parses the JSON form produced by [`to_json`].
pub fn from_json(v: &serde_json::Value) -> Result<LaurentPoly> {
    let terms: Vec<JsonTerm> =
        serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
    let mut p = LaurentPoly::zero();
    for t in terms {
        let mut pairs = Vec::new();
        for (k, e) in t.exponents {
            pairs.push((k.parse::<VarId>()?, e));
        }
        let c: BigInt =
            t.coeff.parse().map_err(|_| Error::Parse(format!("bad coefficient `{}`", t.coeff)))?;
        p.add_term(Monomial::from_pairs(pairs), c);
    }
    Ok(p)
}

/// Splits `p` as `N / x^D` with `N` free of negative exponents and `D ≥ 0` minimal.
pub fn split_denominator(p: &LaurentPoly) -> (LaurentPoly, Monomial) {
    let den =
        Monomial::from_pairs(p.exponent_bounds().into_iter().map(|(v, (lo, _))| (v, (-lo).max(0))));
    (p.mul_monomial(&den), den)
}

/// Renders `p` with an explicit monomial denominator, e.g. `(1 + x_0) / x_a`.
pub fn render_with_denominator(p: &LaurentPoly) -> String {
    let (num, den) = split_denominator(p);
    if den.is_one() {
        num.render()
    } else {
        format!("({}) / {}", num.render(), den.render())
    }
}

/// Parses the output of [`render_with_denominator`].
pub fn parse_with_denominator(s: &str) -> Result<LaurentPoly> {
    match s.rsplit_once(") /") {
        Some((num, den)) => {
            let num =
                num.trim().strip_prefix('(').ok_or_else(|| Error::Parse("missing `(`".into()))?;
            let n = parse_poly(num)?;
            let d = parse_poly(den)?;
            let (m, c) =
                d.as_term().ok_or_else(|| Error::Parse("denominator must be a monomial".into()))?;
            if *c != BigInt::from(1) {
                return Err(Error::Parse("denominator must be monic".into()));
            }
            Ok(n.mul_monomial(&m.inv()))
        }
        None => parse_poly(s),
    }
}
