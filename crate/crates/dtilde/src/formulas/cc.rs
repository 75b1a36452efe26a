use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::laurent::{LaurentPoly, Monomial, RationalFunction, VarId};
use crate::quiver::{DimVec, QuiverDn};

/// The Caldero–Chapoton Laurent polynomial computed from its defining sum
/// `X_M = Σ_e χ(Gr_e(M)) Π_q x_q^{−⟨e,s_q⟩ − ⟨s_q, m−e⟩}`.
///
/// `table` maps each `e ≤ m` to `χ(Gr_e(M))`; absent entries count as zero.
pub fn cc_variable(q: &QuiverDn, m: &DimVec, table: &BTreeMap<DimVec, BigInt>) -> LaurentPoly {
    let n = q.n();
    let mut out = LaurentPoly::zero();
    for (e, chi) in table {
        let rest = m.sub(e);
        let exps = q.vertices().into_iter().map(|v| {
            let s = DimVec::simple(n, v);
            (v, (-q.euler_form(e, &s) - q.euler_form(&s, &rest)) as i32)
        });
        out.add_term(Monomial::from_pairs(exps), chi.clone());
    }
    out
}

/// The Euler characteristic table read off an F-polynomial.
pub fn euler_table(f: &LaurentPoly, n: usize) -> BTreeMap<DimVec, BigInt> {
    f.terms().map(|(mono, c)| (DimVec::from_monomial(n, mono), c.clone())).collect()
}

/// [`cc_variable`] with the table taken from `F_M`.
pub fn cc_from_fpoly(q: &QuiverDn, m: &DimVec, f: &LaurentPoly) -> LaurentPoly {
    cc_variable(q, m, &euler_table(f, q.n()))
}

/// Index conventions for the factorization `X_M = x^{m'} F_M(x')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CcConvention {
    /// `m'_q = Σ_p a(q,p) m_p − m_q` when true, `Σ_p a(p,q) m_p − m_q` when false.
    pub m_outgoing: bool,
    /// `x'_q = Π_p x_p^{a(q,p) − a(p,q)}` when true, the inverse when false.
    pub x_outgoing: bool,
}

impl CcConvention {
    /// The convention under which the factorization agrees with the defining sum.
    pub const VALID: CcConvention = CcConvention { m_outgoing: true, x_outgoing: true };

    /// All four combinations.
    pub const ALL: [CcConvention; 4] = [
        CcConvention { m_outgoing: true, x_outgoing: true },
        CcConvention { m_outgoing: true, x_outgoing: false },
        CcConvention { m_outgoing: false, x_outgoing: true },
        CcConvention { m_outgoing: false, x_outgoing: false },
    ];
}

/// `x^{m'} F_M(x')` under the given index convention.
pub fn cc_factorized(q: &QuiverDn, m: &DimVec, f: &LaurentPoly, conv: CcConvention) -> LaurentPoly {
    let verts = q.vertices();
    let m_prime = Monomial::from_pairs(verts.iter().map(|&v| {
        let s: i64 = verts
            .iter()
            .map(|&p| {
                let a = if conv.m_outgoing { q.a(v, p) } else { q.a(p, v) };
                a as i64 * m.get(p)
            })
            .sum();
        (v, (s - m.get(v)) as i32)
    }));
    let sign = if conv.x_outgoing { 1 } else { -1 };
    let assignment: BTreeMap<VarId, RationalFunction> = verts
        .iter()
        .map(|&v| {
            let mono = Monomial::from_pairs(
                verts.iter().map(|&p| (p, sign * (q.a(v, p) as i32 - q.a(p, v) as i32))),
            );
            (v, RationalFunction::from_poly(LaurentPoly::monomial(mono)))
        })
        .collect();
    let sub = crate::laurent::substitute(f, &assignment);
    let poly = crate::laurent::to_polynomial(&sub).expect("monomial substitution is polynomial");
    poly.mul_monomial(&m_prime)
}
