use std::fmt;

use super::{DimVec, QuiverDn, Side, TauDirection};
use crate::error::{Error, Result};
use crate::laurent::VarId;

/// The three exceptional tubes of D̃ₙ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TubeId {
    /// The rank-2 tube containing `a + c + inner` in subspace orientation (`2a`).
    Rank2First,
    /// The rank-2 tube containing `a + d + inner` in subspace orientation (`2b`).
    Rank2Second,
    /// The tube of rank `n − 2` containing `a + b + q₀` in subspace orientation (`big`).
    RankN2,
}

impl TubeId {
    /// All three tubes.
    pub const ALL: [TubeId; 3] = [TubeId::Rank2First, TubeId::Rank2Second, TubeId::RankN2];

    /// The command-line name: `2a`, `2b` or `big`.
    pub fn name(&self) -> &'static str {
        match self {
            TubeId::Rank2First => "2a",
            TubeId::Rank2Second => "2b",
            TubeId::RankN2 => "big",
        }
    }

    /// Parses a command-line name.
    pub fn parse(s: &str) -> Result<TubeId> {
        match s {
            "2a" => Ok(TubeId::Rank2First),
            "2b" => Ok(TubeId::Rank2Second),
            "big" => Ok(TubeId::RankN2),
            _ => Err(Error::Parse(format!("unknown tube `{s}` (expected 2a, 2b or big)"))),
        }
    }
}

impl fmt::Display for TubeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The quasi-simple dimension vectors of one exceptional tube.
///
/// `quasi_simples[j + 1] = τ⁻¹ quasi_simples[j]`, indices modulo the rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TubeData {
    /// Which tube.
    pub id: TubeId,
    /// Quasi-simples in `τ⁻¹` order.
    pub quasi_simples: Vec<DimVec>,
}

impl TubeData {
    /// The rank of the tube.
    pub fn rank(&self) -> usize {
        self.quasi_simples.len()
    }

    /// Dimension vector of the tube module with quasi-socle `E_start` and
    /// quasi-length `len`, i.e. `E_start + … + E_{start+len−1}`.
    pub fn segment(&self, start: usize, len: usize) -> DimVec {
        let t = self.rank();
        let mut d = DimVec::zeros(self.quasi_simples[0].n());
        for k in 0..len {
            d = d.add(&self.quasi_simples[(start + k) % t]);
        }
        d
    }
}

/// Exceptional tube data for an arbitrary orientation.
///
/// The quasi-simples are written down in subspace orientation, ordered by
/// `τ⁻¹`, and transported along a sink/source reflection path to `q`.
pub fn tubes(q: &QuiverDn) -> Vec<TubeData> {
    let n = q.n();
    let sub = QuiverDn::subspace(n);
    let inner: Vec<VarId> = (0..=n - 4).map(|i| VarId::Inner(i as u16)).collect();
    let with_inner = |outer: &[VarId]| {
        let mut d = DimVec::zeros(n);
        for &v in outer {
            d.set(v, 1);
        }
        for &v in &inner {
            d.set(v, 1);
        }
        d
    };
    let seeds = [
        (TubeId::Rank2First, with_inner(&[VarId::A, VarId::C]), 2),
        (TubeId::Rank2Second, with_inner(&[VarId::A, VarId::D]), 2),
        (
            TubeId::RankN2,
            DimVec::from_pairs(n, &[(VarId::A, 1), (VarId::B, 1), (VarId::Inner(0), 1)]),
            n - 2,
        ),
    ];
    let path = sub.reflection_path(q);
    seeds
        .into_iter()
        .map(|(id, e0, t)| {
            let mut chain = vec![e0];
            for _ in 1..t {
                let next = sub
                    .tau_dim(chain.last().expect("nonempty"), TauDirection::Inverse)
                    .expect("quasi-simples are regular");
                chain.push(next);
            }
            debug_assert_eq!(
                sub.tau_dim(&chain[t - 1], TauDirection::Inverse).ok().as_ref(),
                Some(&chain[0])
            );
            let mut cur = sub.clone();
            for &(v, _) in &path {
                chain = chain.iter().map(|d| cur.reflect_dim(v, d)).collect();
                cur = cur.reflect(v);
            }
            TubeData { id, quasi_simples: chain }
        })
        .collect()
}

/// Kind of a positive root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RootKind {
    /// Real root of negative defect.
    RealPreprojective,
    /// Real root of positive defect.
    RealPreinjective,
    /// Real root of defect zero.
    RealRegular,
    /// A multiple `rδ` of the imaginary root, viewed in a homogeneous tube.
    ImaginaryMultipleOfDelta,
    /// A multiple `rδ` realized by a non-Schurian module of an exceptional tube.
    ImaginaryRegularNonSchur,
}

/// Data of a defect `−2` splitting `0 → M → B → N → 0` with `N = τ^{-l} M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting {
    /// `dim M`, of defect −1.
    pub m: DimVec,
    /// `dim N`, of defect −1.
    pub n: DimVec,
    /// The exponent `l` with `N = τ^{-l} M`.
    pub l: usize,
}

/// How a root decomposes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decomposition {
    /// `α = rδ` in a homogeneous tube.
    Homogeneous {
        /// The multiple.
        r: usize,
    },
    /// `α = rδ + E_start + … + E_{start+l−1}` in an exceptional tube.
    Tube {
        /// The tube.
        tube: TubeId,
        /// The multiple of δ.
        r: usize,
        /// Index of the quasi-socle.
        start: usize,
        /// Position in the quasi-socle chain, `0 ≤ l < rank`.
        l: usize,
    },
    /// Normal form `α = rδ + t` of a preprojective (or, on the opposite
    /// quiver, preinjective) root.
    Normal {
        /// Largest `r` with `α − rδ ≥ 0`.
        r: usize,
        /// The remainder.
        t: DimVec,
        /// Whether `δ − t` is the dimension vector of an injective
        /// (projective on the opposite quiver).
        terminal: bool,
        /// Splitting data when the defect is ∓2.
        splitting: Option<Splitting>,
    },
}

/// Classification of a positive root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInfo {
    /// The root itself.
    pub alpha: DimVec,
    /// Its kind.
    pub kind: RootKind,
    /// `⟨δ, α⟩`.
    pub defect: i64,
    /// The decomposition.
    pub decomposition: Decomposition,
}

impl RootInfo {
    /// Rebuilds `α` from the decomposition.
    pub fn reconstruct(&self, q: &QuiverDn) -> DimVec {
        let delta = q.delta();
        match &self.decomposition {
            Decomposition::Homogeneous { r } => delta.scale(*r as i64),
            Decomposition::Tube { tube, r, start, l } => {
                let data = tubes(q).into_iter().find(|t| t.id == *tube).expect("tube exists");
                let base = if *l == 0 { DimVec::zeros(q.n()) } else { data.segment(*start, *l) };
                base.add(&delta.scale(*r as i64))
            }
            Decomposition::Normal { r, t, .. } => t.add(&delta.scale(*r as i64)),
        }
    }
}

/// Largest `r` with `α − rδ ≥ 0`, and the remainder.
pub fn normal_form(q: &QuiverDn, alpha: &DimVec) -> (usize, DimVec) {
    let delta = q.delta();
    let mut r = 0;
    let mut t = alpha.clone();
    loop {
        let next = t.sub(&delta);
        if !next.is_nonneg() {
            return (r, t);
        }
        t = next;
        r += 1;
    }
}

/// Classifies a positive root.
pub fn classify_root(q: &QuiverDn, alpha: &DimVec) -> Result<RootInfo> {
    if alpha.n() != q.n() {
        return Err(Error::NotARoot(format!("{alpha} has the wrong length for n = {}", q.n())));
    }
    if !alpha.is_nonneg() || alpha.is_zero() {
        return Err(Error::NotARoot(format!("{alpha} is not a positive vector")));
    }
    let defect = q.defect(alpha);
    match q.tits_form(alpha) {
        0 => {
            let r = alpha.get(VarId::A);
            if *alpha == q.delta().scale(r) {
                Ok(RootInfo {
                    alpha: alpha.clone(),
                    kind: RootKind::ImaginaryMultipleOfDelta,
                    defect,
                    decomposition: Decomposition::Homogeneous { r: r as usize },
                })
            } else {
                Err(Error::NotARoot(format!(
                    "{alpha} has Tits form 0 but is not a multiple of delta"
                )))
            }
        }
        1 if defect == 0 => classify_regular(q, alpha),
        1 => {
            let (qq, kind) = if defect < 0 {
                (q.clone(), RootKind::RealPreprojective)
            } else {
                (q.opposite(), RootKind::RealPreinjective)
            };
            let decomposition = preprojective_normal_form(&qq, alpha)?;
            Ok(RootInfo { alpha: alpha.clone(), kind, defect, decomposition })
        }
        t => Err(Error::NotARoot(format!("{alpha} has Tits form {t}"))),
    }
}

fn classify_regular(q: &QuiverDn, alpha: &DimVec) -> Result<RootInfo> {
    let (r, a0) = normal_form(q, alpha);
    for data in tubes(q) {
        let t = data.rank();
        for start in 0..t {
            for l in 1..t {
                if data.segment(start, l) == a0 {
                    return Ok(RootInfo {
                        alpha: alpha.clone(),
                        kind: RootKind::RealRegular,
                        defect: 0,
                        decomposition: Decomposition::Tube { tube: data.id, r, start, l },
                    });
                }
            }
        }
    }
    Err(Error::NotARoot(format!("regular part {a0} of {alpha} matches no tube chain")))
}

/// Normal form of a preprojective root on `q`, with the defect −2 splitting.
fn preprojective_normal_form(q: &QuiverDn, alpha: &DimVec) -> Result<Decomposition> {
    let delta = q.delta();
    let (r, t) = normal_form(q, alpha);
    let defect = q.defect(alpha);
    let (terminal, splitting) = match defect {
        -1 => {
            if !t.le(&delta) {
                return Err(Error::NotARoot(format!("normal form remainder {t} exceeds delta")));
            }
            let rest = delta.sub(&t);
            let terminal = q.vertices().iter().any(|&v| q.injective(v) == rest);
            (terminal, None)
        }
        -2 => (false, defect2_splitting(q, alpha).ok()),
        d => return Err(Error::NotARoot(format!("{alpha} has unexpected defect {d}"))),
    };
    Ok(Decomposition::Normal { r, t, terminal, splitting })
}

/// All defect −1 preprojective roots `≤ bound`, as `τ^{-k} P_x` for outer `x`.
pub fn defect_one_roots_below(q: &QuiverDn, bound: &DimVec) -> Vec<DimVec> {
    let mut out = Vec::new();
    for x in [VarId::A, VarId::B, VarId::C, VarId::D] {
        let mut m = q.projective(x);
        while m.le(bound) {
            out.push(m.clone());
            match q.tau_dim(&m, TauDirection::Inverse) {
                Ok(next) => m = next,
                Err(_) => break,
            }
        }
    }
    out.sort_by_key(|d| (d.height(), d.clone()));
    out
}

/// Searches `dim B = dim M + dim τ^{-l}M` with `dim M` of defect −1 and
/// `1 ≤ l ≤ n − 3`; the smallest `l` wins.
pub fn defect2_splitting(q: &QuiverDn, b: &DimVec) -> Result<Splitting> {
    let candidates = defect_one_roots_below(q, b);
    for l in 1..=q.n() - 3 {
        for m in &candidates {
            let mut nn = m.clone();
            let mut ok = true;
            for _ in 0..l {
                match q.tau_dim(&nn, TauDirection::Inverse) {
                    Ok(x) => nn = x,
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && m.add(&nn) == *b {
                return Ok(Splitting { m: m.clone(), n: nn, l });
            }
        }
    }
    Err(Error::NoSplitting(b.to_string()))
}

/// Every positive real root of height at most `max_height`, sorted by height.
pub fn positive_real_roots(q: &QuiverDn, max_height: i64) -> Vec<DimVec> {
    let n = q.n();
    let mut out = Vec::new();
    let mut frontier: Vec<DimVec> = q.vertices().iter().map(|&v| DimVec::simple(n, v)).collect();
    let mut seen: std::collections::HashSet<DimVec> = frontier.iter().cloned().collect();
    let delta = q.delta();
    while let Some(a) = frontier.pop() {
        if q.tits_form(&a) == 1 {
            out.push(a.clone());
        }
        for v in q.vertices() {
            let mut b = a.clone();
            b.set(v, b.get(v) + 1);
            let tits = q.tits_form(&b);
            let root = tits == 1 || (tits == 0 && b == delta.scale(b.get(VarId::A)));
            if b.height() <= max_height && root && seen.insert(b.clone()) {
                frontier.push(b);
            }
        }
    }
    out.sort_by_key(|d| (d.height(), d.clone()));
    out
}

/// Applies a reflection path to a dimension vector, returning the final quiver too.
pub fn transport_dim(q: &QuiverDn, path: &[(VarId, Side)], alpha: &DimVec) -> (QuiverDn, DimVec) {
    let mut cur = q.clone();
    let mut a = alpha.clone();
    for &(v, _) in path {
        a = cur.reflect_dim(v, &a);
        cur = cur.reflect(v);
    }
    (cur, a)
}
