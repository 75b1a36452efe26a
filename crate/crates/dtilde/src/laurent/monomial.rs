use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::VarId;

/// A Laurent monomial `Π x_v^{e_v}` stored as a sorted list of nonzero exponents.
///
/// The order is lexicographic on the dense exponent vector in canonical
/// variable order: the first variable where two monomials differ decides,
/// and the larger exponent is the larger monomial. This is a total order
/// compatible with multiplication, which makes leading terms well defined
/// for Laurent polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<(VarId, i32)>,
}

impl Monomial {
    /// The empty monomial `1`.
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// The monomial `x_v^e`.
    pub fn var_pow(v: VarId, e: i32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial { exps: vec![(v, e)] }
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs, summing repeats.
    pub fn from_pairs<I: IntoIterator<Item = (VarId, i32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<VarId, i32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial { exps: map.into_iter().filter(|&(_, e)| e != 0).collect() }
    }

    /// The exponent of `v` (zero when absent).
    pub fn exponent(&self, v: VarId) -> i32 {
        self.exps.binary_search_by(|(w, _)| w.cmp(&v)).map(|i| self.exps[i].1).unwrap_or(0)
    }

    /// The stored nonzero exponents in canonical variable order.
    pub fn exponents(&self) -> &[(VarId, i32)] {
        &self.exps
    }

    /// Whether this is the monomial `1`.
    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Sum of all exponents.
    pub fn total_degree(&self) -> i64 {
        self.exps.iter().map(|&(_, e)| e as i64).sum()
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.combine(other, 1)
    }

    /// Quotient `self / other`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        self.combine(other, -1)
    }

    /// The multiplicative inverse.
    pub fn inv(&self) -> Monomial {
        Monomial { exps: self.exps.iter().map(|&(v, e)| (v, -e)).collect() }
    }

    /// The `k`-th power.
    pub fn pow(&self, k: i32) -> Monomial {
        if k == 0 {
            return Self::one();
        }
        Monomial { exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect() }
    }

    fn combine(&self, other: &Monomial, sign: i32) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            let take = match (self.exps.get(i), other.exps.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Less,
                (None, _) => Ordering::Greater,
            };
            match take {
                Ordering::Less => {
                    out.push(self.exps[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    let (v, e) = other.exps[j];
                    out.push((v, sign * e));
                    j += 1;
                }
                Ordering::Equal => {
                    let e = self.exps[i].1 + sign * other.exps[j].1;
                    if e != 0 {
                        out.push((self.exps[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Monomial { exps: out }
    }

    /// Renders the monomial as `x_a*x_0^2`; the monomial `1` renders as `1`.
    pub fn render(&self) -> String {
        if self.exps.is_empty() {
            return "1".into();
        }
        self.exps
            .iter()
            .map(|&(v, e)| if e == 1 { format!("x_{v}") } else { format!("x_{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, e)), None) => return e.cmp(&0),
                (None, Some(&(_, e))) => return 0.cmp(&e),
                (Some(&(v, e)), Some(&(w, f))) => match v.cmp(&w) {
                    Ordering::Less => return e.cmp(&0),
                    Ordering::Greater => return 0.cmp(&f),
                    Ordering::Equal => {
                        if e != f {
                            return e.cmp(&f);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
