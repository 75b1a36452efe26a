//! Closed-form and recursive F-polynomials for D̃ₙ.
//!
//! The [`Engine`] owns memoization caches and offers two independent ways of
//! producing the F-polynomial of an indecomposable:
//!
//! * [`Engine::f_root`] dispatches on the root type to the homogeneous
//!   recursion, the tube formula, or the defect −1 / −2 formulas;
//! * [`Engine::reflection_chain`] reduces the root to a simple by sink and
//!   source reflections and transports `1 + x_q` back.
//!
//! ```
//! use dtilde::formulas::Engine;
//! use dtilde::quiver::{DimVec, QuiverDn};
//!
//! let q = QuiverDn::subspace(4);
//! let engine = Engine::new();
//! let alpha = DimVec::parse_pairs(4, "a=1,0=2,b=1,c=1,d=2").unwrap();
//! let by_formula = engine.f_root(&q, &alpha).unwrap();
//! let by_chain = engine.reflection_chain(&q, &alpha).unwrap();
//! assert_eq!(by_formula, by_chain);
//! ```

mod cc;
mod euler;
mod reflect;

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use num_traits::One;
use parking_lot::RwLock;

pub use cc::{cc_factorized, cc_from_fpoly, cc_variable, euler_table, CcConvention};
pub use euler::{
    binolem_part1, binolem_part2, euler_reflect, euler_strata, grassrefl_sum, type_two_identity,
};
pub use reflect::{
    dual_fpoly, reduce_type_one, reflect_fpoly, reflect_fpoly_local, reflect_fpoly_with,
    support_connected, thin_fpoly, SourcePrefactor, TypeOne,
};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, VarId};
use crate::quiver::{
    classify_root, tubes, Decomposition, DimVec, QuiverDn, RootInfo, RootKind, Side, TauDirection,
    TubeId,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Root,
    Chain,
    Delta,
}

type CacheKey = ((usize, u64), DimVec, Kind);

/// Memoizing evaluator for all F-polynomial formulas.
///
/// Safe to share between threads; concurrent writers store identical values.
#[derive(Debug, Default)]
pub struct Engine {
    cache: RwLock<HashMap<CacheKey, LaurentPoly>>,
}

impl Engine {
    /// An engine with empty caches.
    pub fn new() -> Self {
        Self::default()
    }

    fn cached(
        &self,
        q: &QuiverDn,
        alpha: &DimVec,
        kind: Kind,
        compute: impl FnOnce() -> Result<LaurentPoly>,
    ) -> Result<LaurentPoly> {
        let key = (q.key(), alpha.clone(), kind);
        if let Some(f) = self.cache.read().get(&key) {
            return Ok(f.clone());
        }
        let f = compute()?;
        self.cache.write().insert(key, f.clone());
        Ok(f)
    }

    /// `F_α` with the conventions `F_0 = 1` and `F_α = 0` when some entry of
    /// `α` is negative.
    pub fn f_or_zero(&self, q: &QuiverDn, alpha: &DimVec) -> Result<LaurentPoly> {
        if !alpha.is_nonneg() {
            Ok(LaurentPoly::zero())
        } else if alpha.is_zero() {
            Ok(LaurentPoly::one())
        } else {
            self.f_root(q, alpha)
        }
    }

    /// `F_{rδ}` with `F_{−δ} = 0`.
    fn f_multiple(&self, q: &QuiverDn, r: i64) -> Result<LaurentPoly> {
        if r < 0 {
            Ok(LaurentPoly::zero())
        } else {
            self.f_homog(q, r as usize)
        }
    }

    /// The F-polynomial of a representation of dimension `δ` in a homogeneous tube.
    ///
    /// On D̃₄ in subspace orientation this is `F_{E₀}F_{E₁} − x^{E₀} − x^{E₁}`
    /// for the quasi-simples `E₀ = a + c + q₀` and `E₁ = b + d + q₀`. Larger
    /// `n` are reached by re-inserting the last inner vertex, other
    /// orientations by reflection.
    pub fn f_delta(&self, q: &QuiverDn) -> Result<LaurentPoly> {
        let delta = q.delta();
        self.cached(q, &delta, Kind::Delta, || {
            let n = q.n();
            let sub = QuiverDn::subspace(n);
            if *q != sub {
                return transport_fpoly(&sub, &self.f_delta(&sub)?, &delta, q);
            }
            if n == 4 {
                let data = tube_data(q, TubeId::Rank2First);
                let e0 = &data.quasi_simples[0];
                let e1 = &data.quasi_simples[1];
                let f0 = self.f_small(q, e0)?;
                let f1 = self.f_small(q, e1)?;
                let mut f = &f0 * &f1;
                f = &f - &LaurentPoly::monomial(e0.monomial());
                f = &f - &LaurentPoly::monomial(e1.monomial());
                return Ok(f);
            }
            let smaller = self.f_delta(&QuiverDn::subspace(n - 1))?;
            let red = TypeOne { removed: (n - 4) as u16, big: VarId::Inner((n - 5) as u16) };
            reduce_type_one(&smaller, q, &red, &delta)
        })
    }

    /// `F_{rδ}` by the recursion `F_{rδ} = F_δ F_{(r−1)δ} − x^δ F_{(r−2)δ}`
    /// with `F_0 = 1` and `F_{−δ} = 0`.
    pub fn f_homog(&self, q: &QuiverDn, r: usize) -> Result<LaurentPoly> {
        if r == 0 {
            return Ok(LaurentPoly::one());
        }
        let fd = self.f_delta(q)?;
        let xd = LaurentPoly::monomial(q.delta().monomial());
        let mut prev = LaurentPoly::one();
        let mut cur = fd.clone();
        for _ in 1..r {
            let next = &(&fd * &cur) - &(&xd * &prev);
            prev = cur;
            cur = next;
        }
        Ok(cur)
    }

    /// `F_{rδ}` from the closed form `(λ₊^{r+1} − λ₋^{r+1}) / (λ₊ − λ₋)`,
    /// expanded as `2^{−r} Σ_{j odd} C(r+1, j) F_δ^{r+1−j} (F_δ² − 4x^δ)^{(j−1)/2}`.
    pub fn homog_closed_form(&self, q: &QuiverDn, r: usize) -> Result<LaurentPoly> {
        let fd = self.f_delta(q)?;
        let xd = LaurentPoly::monomial(q.delta().monomial());
        let disc = &(&fd * &fd) - &xd.scale(4);
        let mut sum = LaurentPoly::zero();
        for j in (1..=r + 1).step_by(2) {
            let c = crate::laurent::gen_binomial((r + 1) as i64, j as u32);
            let term = &fd.pow((r + 1 - j) as u32) * &disc.pow(((j - 1) / 2) as u32);
            sum = &sum + &term.scale(c);
        }
        sum.div_scalar(&(BigInt::one() << r))
    }

    /// F-polynomial of a tube module from the rank-`t` formula
    /// `F_{m_l(r)} = F_{m_l(0)}F_{rδ} + x^{m_{l+1}(0)} F_{m_{t−1}(0) − m_{l+1}(0)} F_{(r−1)δ}`,
    /// where `m_l(0)` is the segment of length `l` starting at the quasi-socle
    /// and `m_t(0) = δ`.
    pub fn f_tube(&self, q: &QuiverDn, info: &RootInfo) -> Result<LaurentPoly> {
        match &info.decomposition {
            Decomposition::Tube { tube, r, start, l } => {
                self.f_tube_coords(q, *tube, *r, *start, *l)
            }
            other => Err(Error::BadParameter(format!("{other:?} is not a tube decomposition"))),
        }
    }

    /// [`Engine::f_tube`] for explicit coordinates; `l = 0` gives the
    /// non-Schurian module of dimension `rδ` with quasi-socle `E_start`.
    pub fn f_tube_coords(
        &self,
        q: &QuiverDn,
        tube: TubeId,
        r: usize,
        start: usize,
        l: usize,
    ) -> Result<LaurentPoly> {
        let data = tube_data(q, tube);
        let t = data.rank();
        if l >= t {
            return Err(Error::BadParameter(format!("l = {l} must be below the rank {t}")));
        }
        let seg = |s: usize, len: i64| -> Option<DimVec> {
            match len {
                len if len < 0 => None,
                len if len as usize == t => Some(q.delta()),
                len => Some(data.segment(s, len as usize)),
            }
        };
        let f_seg = |s: usize, len: i64| -> Result<LaurentPoly> {
            match seg(s, len) {
                None => Ok(LaurentPoly::zero()),
                Some(d) if d.is_zero() => Ok(LaurentPoly::one()),
                Some(d) if len as usize == t => self.f_delta(q).inspect(|_| {
                    debug_assert_eq!(d, q.delta());
                }),
                Some(d) => self.f_small(q, &d),
            }
        };
        let first = &f_seg(start, l as i64)? * &self.f_multiple(q, r as i64)?;
        let rest = self.f_multiple(q, r as i64 - 1)?;
        if rest.is_zero() {
            return Ok(first);
        }
        let top = seg(start, l as i64 + 1).expect("positive length");
        let tail = f_seg((start + l + 1) % t, t as i64 - 2 - l as i64)?;
        let second = &(&LaurentPoly::monomial(top.monomial()) * &tail) * &rest;
        Ok(&first + &second)
    }

    /// Defect −1: `F_t F_{rδ} − x^δ F_{(r−1)δ}` when `δ − t` is injective,
    /// else `F_t F_{rδ} − x^u F_{δ−u} F_{(r−1)δ}` with `u = τ⁻¹t`.
    pub fn f_defect1(&self, q: &QuiverDn, info: &RootInfo) -> Result<LaurentPoly> {
        let Decomposition::Normal { r, t, terminal, .. } = &info.decomposition else {
            return Err(Error::BadParameter("defect −1 formula needs a normal form".into()));
        };
        if *r == 0 {
            return self.f_small(q, &info.alpha);
        }
        let r = *r as i64;
        let ft = self.f_root(q, t)?;
        let first = &ft * &self.f_multiple(q, r)?;
        let rest = self.f_multiple(q, r - 1)?;
        let correction = if *terminal {
            LaurentPoly::monomial(q.delta().monomial())
        } else {
            let u = q.tau_dim(t, TauDirection::Inverse)?;
            &LaurentPoly::monomial(u.monomial()) * &self.f_or_zero(q, &q.delta().sub(&u))?
        };
        Ok(&first - &(&correction * &rest))
    }

    /// Defect −2: `F_B = F_N F_M − x^{τ⁻¹M} F_{N − τ⁻¹M}` from the splitting
    /// `dim B = dim M + dim N`.
    pub fn f_defect2(&self, q: &QuiverDn, info: &RootInfo) -> Result<LaurentPoly> {
        let Decomposition::Normal { r, splitting, .. } = &info.decomposition else {
            return Err(Error::BadParameter("defect −2 formula needs a normal form".into()));
        };
        let Some(s) = splitting else {
            return if *r == 0 {
                self.f_small(q, &info.alpha)
            } else {
                Err(Error::NoSplitting(info.alpha.to_string()))
            };
        };
        let fm = self.f_root(q, &s.m)?;
        let fnn = self.f_root(q, &s.n)?;
        let u = q.tau_dim(&s.m, TauDirection::Inverse)?;
        let rest = self.f_or_zero(q, &s.n.sub(&u))?;
        Ok(&(&fnn * &fm) - &(&LaurentPoly::monomial(u.monomial()) * &rest))
    }

    /// The dispatcher: classifies `α` and applies the matching formula.
    ///
    /// Preinjective roots are computed on the opposite quiver and dualized;
    /// real roots below `δ` go to [`Engine::f_small`].
    pub fn f_root(&self, q: &QuiverDn, alpha: &DimVec) -> Result<LaurentPoly> {
        self.cached(q, alpha, Kind::Root, || {
            let info = classify_root(q, alpha)?;
            match (&info.kind, &info.decomposition) {
                (_, Decomposition::Homogeneous { r }) => self.f_homog(q, *r),
                (_, Decomposition::Tube { .. }) => self.f_tube(q, &info),
                (RootKind::RealPreinjective, _) => {
                    let f = self.f_root(&q.opposite(), alpha)?;
                    Ok(dual_fpoly(&f, alpha))
                }
                (_, Decomposition::Normal { r: 0, .. }) => self.f_small(q, alpha),
                _ if info.defect == -1 => self.f_defect1(q, &info),
                _ => self.f_defect2(q, &info),
            }
        })
    }

    /// F-polynomial of a real root below `δ`, via [`Engine::reflection_chain`].
    pub fn f_small(&self, q: &QuiverDn, alpha: &DimVec) -> Result<LaurentPoly> {
        let info = classify_root(q, alpha)?;
        if info.kind == RootKind::ImaginaryMultipleOfDelta {
            return Err(Error::NotARoot(format!("{alpha} is imaginary")));
        }
        self.reflection_chain(q, alpha)
    }

    /// F-polynomial of the indecomposable of real root `α`, built without
    /// any closed formula.
    ///
    /// Searches a word of sink and source reflections taking `α` to a simple
    /// root and transports `1 + x_q` back. Roots no word can reduce are thin
    /// roots, handled by successor-closed subsets, or tube modules of
    /// quasi-length at least two, handled by the almost split recursion
    /// `F(j, L+1) F(j+1, L−1) = F(j+1, L) F(j, L) − x^{dim (j+1, L)}` seeded
    /// by the quasi-simples.
    pub fn reflection_chain(&self, q: &QuiverDn, alpha: &DimVec) -> Result<LaurentPoly> {
        self.cached(q, alpha, Kind::Chain, || {
            let info = classify_root(q, alpha)?;
            if info.kind == RootKind::ImaginaryMultipleOfDelta {
                return Err(Error::NotARoot(format!("{alpha} is not a real root")));
            }
            if let Some(word) = reduction_word(q, alpha) {
                return transport_word(q, alpha, &word);
            }
            if alpha.is_thin() && support_connected(q, alpha) {
                return Ok(thin_fpoly(q, alpha));
            }
            match info.decomposition {
                Decomposition::Tube { tube, r, start, l } => {
                    let data = tube_data(q, tube);
                    self.tube_mesh(q, tube, start, r * data.rank() + l)
                }
                _ => Err(Error::NotARoot(format!("no reflection word reduces {alpha}"))),
            }
        })
    }

    /// F-polynomial of the tube module with quasi-socle `E_start` and
    /// quasi-length `len`, from the almost split recursion alone.
    pub fn tube_mesh(
        &self,
        q: &QuiverDn,
        tube: TubeId,
        start: usize,
        len: usize,
    ) -> Result<LaurentPoly> {
        let data = tube_data(q, tube);
        let t = data.rank();
        // rows[L][j] = F(j, L)
        let mut rows: Vec<Vec<LaurentPoly>> = vec![vec![LaurentPoly::one(); t]];
        if len == 0 {
            return Ok(LaurentPoly::one());
        }
        let mut first = Vec::with_capacity(t);
        for e in &data.quasi_simples {
            let f = match reduction_word(q, e) {
                Some(word) => transport_word(q, e, &word)?,
                None if e.is_thin() && support_connected(q, e) => thin_fpoly(q, e),
                None => return Err(Error::NotARoot(format!("quasi-simple {e} is not reducible"))),
            };
            first.push(f);
        }
        rows.push(first);
        for big_l in 1..len {
            let mut next = Vec::with_capacity(t);
            for j in 0..t {
                let j1 = (j + 1) % t;
                let num = &(&rows[big_l][j1] * &rows[big_l][j])
                    - &LaurentPoly::monomial(data.segment(j1, big_l).monomial());
                next.push(num.div_exact(&rows[big_l - 1][j1])?);
            }
            rows.push(next);
        }
        Ok(rows[len][start % t].clone())
    }
}

/// The data of one exceptional tube of `q`.
pub fn tube_data(q: &QuiverDn, id: TubeId) -> crate::quiver::TubeData {
    tubes(q).into_iter().find(|t| t.id == id).expect("every tube id exists")
}

/// Transports the F-polynomial of a representation of dimension `m` on
/// `from` to `to` along a shortest reflection path.
pub fn transport_fpoly(
    from: &QuiverDn,
    f: &LaurentPoly,
    m: &DimVec,
    to: &QuiverDn,
) -> Result<LaurentPoly> {
    let mut cur = from.clone();
    let mut f = f.clone();
    let mut m = m.clone();
    for (v, side) in from.reflection_path(to) {
        f = reflect_fpoly(&cur, v, &f, &m, side)?;
        m = cur.reflect_dim(v, &m);
        cur = cur.reflect(v);
    }
    Ok(f)
}

/// One step of a reduction word: reflect the current quiver at `vertex`,
/// which is a sink or source as recorded in `side`.
pub type WordStep = (VarId, Side);

/// A shortest word of sink and source reflections taking `α` on `q` to a
/// simple root, never passing through the simple root being reflected.
///
/// The height of intermediate roots is capped at `height(α) + 2·height(δ)`,
/// doubled once if nothing is found.
pub fn reduction_word(q: &QuiverDn, alpha: &DimVec) -> Option<Vec<WordStep>> {
    let hd = q.delta().height();
    let base = alpha.height() + 2 * hd;
    reduction_word_capped(q, alpha, base).or_else(|| reduction_word_capped(q, alpha, 2 * base))
}

fn reduction_word_capped(q: &QuiverDn, alpha: &DimVec, cap: i64) -> Option<Vec<WordStep>> {
    type State = (QuiverDn, DimVec);
    let start: State = (q.clone(), alpha.clone());
    let mut prev: HashMap<State, Option<(State, WordStep)>> = HashMap::new();
    prev.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    let mut goal = None;
    while let Some(state) = queue.pop_front() {
        if state.1.height() == 1 {
            goal = Some(state);
            break;
        }
        let (cq, a) = &state;
        for v in cq.vertices() {
            let side = if cq.is_sink(v) {
                Side::Sink
            } else if cq.is_source(v) {
                Side::Source
            } else {
                continue;
            };
            let b = cq.reflect_dim(v, a);
            if !b.is_nonneg() || b.height() > cap {
                continue;
            }
            let next = (cq.reflect(v), b);
            if !prev.contains_key(&next) {
                prev.insert(next.clone(), Some((state.clone(), (v, side))));
                queue.push_back(next);
            }
        }
    }
    let mut cur = goal?;
    let mut word = Vec::new();
    while let Some(Some((p, step))) = prev.get(&cur) {
        word.push(*step);
        cur = p.clone();
    }
    word.reverse();
    Some(word)
}

/// Runs a reduction word forward on dimension vectors, then carries
/// `1 + x_q` back through the inverse reflections.
fn transport_word(q: &QuiverDn, alpha: &DimVec, word: &[WordStep]) -> Result<LaurentPoly> {
    let mut states = vec![(q.clone(), alpha.clone())];
    for &(v, _) in word {
        let (cq, a) = states.last().expect("nonempty");
        states.push((cq.reflect(v), cq.reflect_dim(v, a)));
    }
    let (_, last) = states.last().expect("nonempty");
    let q_simple = last.support()[0];
    let mut f = LaurentPoly::one_plus(q_simple, 1);
    for (i, &(v, side)) in word.iter().enumerate().rev() {
        let (cq, a) = &states[i + 1];
        let back = match side {
            Side::Sink => Side::Source,
            Side::Source => Side::Sink,
        };
        f = reflect_fpoly(cq, v, &f, a, back)?;
    }
    Ok(f)
}
