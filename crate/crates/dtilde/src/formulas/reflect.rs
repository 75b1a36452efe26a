use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Monomial, RationalFunction, VarId};
use crate::quiver::{DimVec, QuiverDn, Side};

/// Prefactor used in the source case of [`reflect_fpoly_local`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SourcePrefactor {
    /// `(1 + x_q)^{(σ_q m)_q}`, the form that makes sink and source
    /// reflections mutually inverse.
    OnePlusX,
    /// `(1 + x_q^{-1})^{(σ_q m)_q}`, kept only so tests can show it fails.
    OnePlusXInverse,
}

/// Reflection of an F-polynomial at a sink or source `q` of an arbitrary quiver.
///
/// `incoming` lists `(i, a(i,q))`, `outgoing` lists `(i, a(q,i))`. The
/// arguments `m_q` and `sigma_m_q` are `(dim M)_q` and `(σ_q dim M)_q`.
///
/// * Sink: `F_{σM} = (1+x_q^{-1})^{-m_q} F_M(x')` with `x'_q = x_q^{-1}` and
///   `x'_i = x_i x_q^{a(i,q)} (1+x_q^{-1})^{a(i,q)}`.
/// * Source: `F_{σM} = (1+x_q)^{(σm)_q} F_M(x')` with `x'_q = x_q^{-1}` and
///   `x'_i = x_i x_q^{a(q,i)} (1+x_q)^{-a(q,i)}`.
///
/// The result must be a Laurent polynomial; [`Error::NotDivisible`] means
/// the input was not the F-polynomial of a module without `S_q` summand.
#[allow(clippy::too_many_arguments)]
pub fn reflect_fpoly_local(
    q: VarId,
    incoming: &[(VarId, u32)],
    outgoing: &[(VarId, u32)],
    f: &LaurentPoly,
    m_q: i64,
    sigma_m_q: i64,
    side: Side,
    prefactor: SourcePrefactor,
) -> Result<LaurentPoly> {
    let xq = LaurentPoly::var(q);
    let one_plus_xq = LaurentPoly::one_plus(q, 1);
    let mut assignment: BTreeMap<VarId, RationalFunction> = BTreeMap::new();
    assignment
        .insert(q, RationalFunction::from_poly(LaurentPoly::monomial(Monomial::var_pow(q, -1))));
    match side {
        Side::Sink => {
            if !outgoing.is_empty() {
                return Err(Error::BadParameter(format!("{q} is not a sink")));
            }
            for &(i, a) in incoming {
                // x_i x_q^a (1 + x_q^{-1})^a = x_i (1 + x_q)^a
                let img = &LaurentPoly::var(i) * &one_plus_xq.pow(a);
                assignment.insert(i, RationalFunction::from_poly(img));
            }
            let num = crate::laurent::substitute(f, &assignment);
            // divide by (1 + x_q^{-1})^{m_q} = (1 + x_q)^{m_q} x_q^{-m_q}
            let shifted = num.mul_poly(&xq.pow(m_q.max(0) as u32));
            let r = shifted.div_poly(&one_plus_xq.pow(m_q.max(0) as u32));
            crate::laurent::to_polynomial(&r)
        }
        Side::Source => {
            if !incoming.is_empty() {
                return Err(Error::BadParameter(format!("{q} is not a source")));
            }
            for &(i, a) in outgoing {
                let num = LaurentPoly::monomial(Monomial::from_pairs([(i, 1), (q, a as i32)]));
                assignment.insert(i, RationalFunction::new(num, one_plus_xq.pow(a)));
            }
            let base = match prefactor {
                SourcePrefactor::OnePlusX => one_plus_xq.clone(),
                SourcePrefactor::OnePlusXInverse => LaurentPoly::one_plus(q, -1),
            };
            let sub = crate::laurent::substitute(f, &assignment);
            let r = if sigma_m_q >= 0 {
                sub.mul_poly(&base.pow(sigma_m_q as u32))
            } else {
                sub.div_poly(&base.pow((-sigma_m_q) as u32))
            };
            crate::laurent::to_polynomial(&r)
        }
    }
}

/// Reflection of the F-polynomial of a D̃ₙ representation of dimension `m`
/// at the sink or source `q` of `quiver`; the result lives on `σ_q quiver`.
pub fn reflect_fpoly(
    quiver: &QuiverDn,
    q: VarId,
    f: &LaurentPoly,
    m: &DimVec,
    side: Side,
) -> Result<LaurentPoly> {
    reflect_fpoly_with(quiver, q, f, m, side, SourcePrefactor::OnePlusX)
}

/// [`reflect_fpoly`] with an explicit choice of source prefactor.
pub fn reflect_fpoly_with(
    quiver: &QuiverDn,
    q: VarId,
    f: &LaurentPoly,
    m: &DimVec,
    side: Side,
    prefactor: SourcePrefactor,
) -> Result<LaurentPoly> {
    let ok = match side {
        Side::Sink => quiver.is_sink(q),
        Side::Source => quiver.is_source(q),
    };
    if !ok {
        return Err(Error::BadParameter(format!("{q} is not a {side:?} of {quiver}")));
    }
    let n = quiver.n();
    if *m == DimVec::simple(n, q) {
        return if *f == LaurentPoly::one_plus(q, 1) {
            Ok(LaurentPoly::one())
        } else {
            Err(Error::BadParameter("F does not belong to S_q".into()))
        };
    }
    let incoming: Vec<(VarId, u32)> =
        quiver.arrows().iter().filter(|a| a.target == q).map(|a| (a.source, 1)).collect();
    let outgoing: Vec<(VarId, u32)> =
        quiver.arrows().iter().filter(|a| a.source == q).map(|a| (a.target, 1)).collect();
    let sigma = quiver.reflect_dim(q, m);
    reflect_fpoly_local(q, &incoming, &outgoing, f, m.get(q), sigma.get(q), side, prefactor)
}

/// The F-polynomial of the dual representation: `x^m F(x^{-1})`.
pub fn dual_fpoly(f: &LaurentPoly, m: &DimVec) -> LaurentPoly {
    let top = m.monomial();
    LaurentPoly::from_terms(f.terms().map(|(e, c)| (top.div(e), c.clone())))
}

/// How a type-one reduction glues the removed inner vertex back in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeOne {
    /// Index `k` of the inner vertex `q_k` of D̃ₙ that is removed.
    pub removed: u16,
    /// The inner neighbour of `q_k` on the big side.
    pub big: VarId,
}

impl TypeOne {
    /// The neighbours of the removed vertex other than `big`.
    pub fn small(&self, q: &QuiverDn) -> Vec<VarId> {
        q.neighbours(VarId::Inner(self.removed)).into_iter().filter(|&v| v != self.big).collect()
    }

    /// Renames the variables of D̃_{n−1} into D̃ₙ, skipping the removed index.
    pub fn lift_vars(&self, p: &LaurentPoly) -> LaurentPoly {
        let k = self.removed;
        p.rename(|v| match v {
            VarId::Inner(j) if j >= k => VarId::Inner(j + 1),
            other => other,
        })
    }

    /// Whether arrows flow `small → q_k → big` (true) or `big → q_k → small` (false).
    pub fn forward(&self, q: &QuiverDn) -> Result<bool> {
        let mid = VarId::Inner(self.removed);
        let small = self.small(q);
        let into_big = q.a(mid, self.big) == 1;
        let small_in = small.iter().all(|&s| q.a(s, mid) == 1);
        let small_out = small.iter().all(|&s| q.a(mid, s) == 1);
        match (into_big, small_in, small_out) {
            (true, true, _) => Ok(true),
            (false, _, true) => Ok(false),
            _ => Err(Error::BadParameter(format!(
                "q_{} does not lie on a path between its two sides in {q}",
                self.removed
            ))),
        }
    }

    /// The variable change of the reduction.
    ///
    /// Forward: `x_big ↦ x_big(1+x_k)`, `x_s ↦ x_s x_k/(1+x_k)`.
    /// Backward: `x_big ↦ x_big x_k/(1+x_k)`, `x_s ↦ x_s(1+x_k)`.
    pub fn substitution(&self, q: &QuiverDn) -> Result<BTreeMap<VarId, RationalFunction>> {
        let mid = VarId::Inner(self.removed);
        let one_plus = LaurentPoly::one_plus(mid, 1);
        let grow = |v: VarId| RationalFunction::from_poly(&LaurentPoly::var(v) * &one_plus);
        let shrink = |v: VarId| {
            RationalFunction::new(
                LaurentPoly::monomial(Monomial::from_pairs([(v, 1), (mid, 1)])),
                one_plus.clone(),
            )
        };
        let fwd = self.forward(q)?;
        let mut map = BTreeMap::new();
        map.insert(self.big, if fwd { grow(self.big) } else { shrink(self.big) });
        for s in self.small(q) {
            map.insert(s, if fwd { shrink(s) } else { grow(s) });
        }
        Ok(map)
    }
}

/// Lifts the F-polynomial of the reduced representation on D̃_{n−1} to D̃ₙ
/// by re-inserting the inner vertex `q_k` with `α_k = α_big`.
///
/// Forward orientation: `F = F̂(x')`. Backward orientation:
/// `F = (1+x_k)^{α_big − Σ α_small} F̂(x'')`.
pub fn reduce_type_one(
    f_hat: &LaurentPoly,
    q: &QuiverDn,
    red: &TypeOne,
    alpha: &DimVec,
) -> Result<LaurentPoly> {
    let mid = VarId::Inner(red.removed);
    if alpha.get(mid) != alpha.get(red.big) {
        return Err(Error::BadParameter(format!(
            "type-one reduction needs equal entries at q_{} and {}",
            red.removed, red.big
        )));
    }
    let lifted = red.lift_vars(f_hat);
    let map = red.substitution(q)?;
    let sub = crate::laurent::substitute(&lifted, &map);
    let r = if red.forward(q)? {
        sub
    } else {
        let k = alpha.get(red.big) - red.small(q).iter().map(|&s| alpha.get(s)).sum::<i64>();
        let f = LaurentPoly::one_plus(mid, 1);
        if k >= 0 {
            sub.mul_poly(&f.pow(k as u32))
        } else {
            sub.div_poly(&f.pow((-k) as u32))
        }
    };
    crate::laurent::to_polynomial(&r)
}

/// F-polynomial of the thin indecomposable with the given support:
/// the sum of `x^U` over successor-closed subsets `U`.
pub fn thin_fpoly(q: &QuiverDn, alpha: &DimVec) -> LaurentPoly {
    let support = alpha.support();
    let k = support.len();
    let arrows: Vec<(usize, usize)> = q
        .arrows()
        .iter()
        .filter_map(|a| {
            let s = support.iter().position(|&v| v == a.source)?;
            let t = support.iter().position(|&v| v == a.target)?;
            Some((s, t))
        })
        .collect();
    let mut p = LaurentPoly::zero();
    for mask in 0u32..(1 << k) {
        if arrows.iter().all(|&(s, t)| mask >> s & 1 == 0 || mask >> t & 1 == 1) {
            let m = Monomial::from_pairs(
                (0..k).filter(|&i| mask >> i & 1 == 1).map(|i| (support[i], 1)),
            );
            p.add_term(m, BigInt::from(1));
        }
    }
    p
}

/// Whether the support of `alpha` is connected in the D̃ₙ graph.
pub fn support_connected(q: &QuiverDn, alpha: &DimVec) -> bool {
    let support = alpha.support();
    let Some(&first) = support.first() else {
        return false;
    };
    let mut seen = vec![first];
    let mut stack = vec![first];
    while let Some(v) = stack.pop() {
        for w in q.neighbours(v) {
            if support.contains(&w) && !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    seen.len() == support.len()
}
