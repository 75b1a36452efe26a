use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use super::DimVec;
use crate::error::{Error, Result};
use crate::laurent::VarId;

/// An edge of the D̃ₙ diagram.
///
/// The canonical endpoints are `a:(q_a,q₀)`, `b:(q_b,q₀)`,
/// `c:(q_c,q_{n-4})`, `d:(q_d,q_{n-4})` and `vᵢ:(qᵢ,q_{i+1})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeId {
    /// Edge at `q_a`.
    A,
    /// Edge at `q_b`.
    B,
    /// Edge at `q_c`.
    C,
    /// Edge at `q_d`.
    D,
    /// Inner edge between `qᵢ` and `q_{i+1}`.
    V(u16),
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeId::A => f.write_str("a"),
            EdgeId::B => f.write_str("b"),
            EdgeId::C => f.write_str("c"),
            EdgeId::D => f.write_str("d"),
            EdgeId::V(i) => write!(f, "v{i}"),
        }
    }
}

impl std::str::FromStr for EdgeId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" => Ok(EdgeId::A),
            "b" => Ok(EdgeId::B),
            "c" => Ok(EdgeId::C),
            "d" => Ok(EdgeId::D),
            t => t
                .strip_prefix('v')
                .and_then(|i| i.parse::<u16>().ok())
                .map(EdgeId::V)
                .ok_or_else(|| Error::Parse(format!("unknown edge `{s}`"))),
        }
    }
}

/// Whether an edge points from its first to its second canonical endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dir {
    /// First endpoint to second.
    Fwd,
    /// Second endpoint to first.
    Rev,
}

/// One arrow of an oriented quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arrow {
    /// The underlying edge.
    pub edge: EdgeId,
    /// Tail vertex.
    pub source: VarId,
    /// Head vertex.
    pub target: VarId,
}

/// Direction of the Auslander–Reiten translation on dimension vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TauDirection {
    /// `τ`, reflections at sinks.
    Forward,
    /// `τ⁻¹`, reflections at sources.
    Inverse,
}

/// Whether a reflection happens at a sink or at a source.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    /// The vertex is a sink before the reflection.
    Sink,
    /// The vertex is a source before the reflection.
    Source,
}

/// The quiver D̃ₙ (n ≥ 4) with an orientation of each edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverDn {
    n: usize,
    dirs: Vec<Dir>,
}

impl QuiverDn {
    /// The orientation with every outer edge pointing inward and every
    /// inner edge pointing toward `q₀`.
    pub fn subspace(n: usize) -> Self {
        assert!(n >= 4, "D̃ₙ needs n ≥ 4");
        let mut dirs = vec![Dir::Fwd; 4];
        dirs.extend(std::iter::repeat_n(Dir::Rev, n - 4));
        QuiverDn { n, dirs }
    }

    /// Parses `a:fwd,b:rev,…`; omitted edges keep the subspace orientation.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        if n < 4 {
            return Err(Error::Parse(format!("n must be at least 4, got {n}")));
        }
        let mut q = Self::subspace(n);
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (e, d) = part
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("expected `edge:dir`, got `{part}`")))?;
            let e: EdgeId = e.parse()?;
            let d = match d.trim() {
                "fwd" => Dir::Fwd,
                "rev" => Dir::Rev,
                other => return Err(Error::Parse(format!("unknown direction `{other}`"))),
            };
            let i = q
                .edge_index(e)
                .ok_or_else(|| Error::Parse(format!("edge {e} does not exist for n = {n}")))?;
            q.dirs[i] = d;
        }
        Ok(q)
    }

    /// The orientation string, listing every edge.
    pub fn orientation_string(&self) -> String {
        self.edges()
            .iter()
            .zip(&self.dirs)
            .map(|(e, d)| format!("{e}:{}", if *d == Dir::Fwd { "fwd" } else { "rev" }))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// A compact key identifying the orientation.
    pub fn key(&self) -> (usize, u64) {
        let bits = self.dirs.iter().enumerate().fold(0u64, |acc, (i, d)| {
            if *d == Dir::Rev {
                acc | (1 << i)
            } else {
                acc
            }
        });
        (self.n, bits)
    }

    /// The `n` of D̃ₙ.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Vertices in canonical order.
    pub fn vertices(&self) -> Vec<VarId> {
        (0..=self.n).map(|i| DimVec::var_at(self.n, i)).collect()
    }

    /// Edges in canonical order `a, b, c, d, v₀, …`.
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut e = vec![EdgeId::A, EdgeId::B, EdgeId::C, EdgeId::D];
        e.extend((0..self.n - 4).map(|i| EdgeId::V(i as u16)));
        e
    }

    fn edge_index(&self, e: EdgeId) -> Option<usize> {
        match e {
            EdgeId::A => Some(0),
            EdgeId::B => Some(1),
            EdgeId::C => Some(2),
            EdgeId::D => Some(3),
            EdgeId::V(i) if (i as usize) < self.n - 4 => Some(4 + i as usize),
            EdgeId::V(_) => None,
        }
    }

    /// The canonical endpoints of an edge.
    pub fn endpoints(&self, e: EdgeId) -> (VarId, VarId) {
        let last = VarId::Inner((self.n - 4) as u16);
        match e {
            EdgeId::A => (VarId::A, VarId::Inner(0)),
            EdgeId::B => (VarId::B, VarId::Inner(0)),
            EdgeId::C => (VarId::C, last),
            EdgeId::D => (VarId::D, last),
            EdgeId::V(i) => (VarId::Inner(i), VarId::Inner(i + 1)),
        }
    }

    /// The direction of an edge.
    pub fn direction(&self, e: EdgeId) -> Dir {
        self.dirs[self.edge_index(e).expect("edge of this quiver")]
    }

    /// The arrow carried by an edge.
    pub fn arrow(&self, e: EdgeId) -> Arrow {
        let (p, q) = self.endpoints(e);
        match self.direction(e) {
            Dir::Fwd => Arrow { edge: e, source: p, target: q },
            Dir::Rev => Arrow { edge: e, source: q, target: p },
        }
    }

    /// All arrows.
    pub fn arrows(&self) -> Vec<Arrow> {
        self.edges().into_iter().map(|e| self.arrow(e)).collect()
    }

    /// Number of arrows `p → q`.
    pub fn a(&self, p: VarId, q: VarId) -> u32 {
        self.arrows().iter().filter(|ar| ar.source == p && ar.target == q).count() as u32
    }

    /// Neighbours of `q` in the underlying graph.
    pub fn neighbours(&self, q: VarId) -> Vec<VarId> {
        let mut out = Vec::new();
        for e in self.edges() {
            let (x, y) = self.endpoints(e);
            if x == q {
                out.push(y);
            } else if y == q {
                out.push(x);
            }
        }
        out
    }

    /// Whether no arrow starts at `q`.
    pub fn is_sink(&self, q: VarId) -> bool {
        self.arrows().iter().all(|ar| ar.source != q)
    }

    /// Whether no arrow ends at `q`.
    pub fn is_source(&self, q: VarId) -> bool {
        self.arrows().iter().all(|ar| ar.target != q)
    }

    /// Reverses every arrow at `q`.
    pub fn reflect(&self, q: VarId) -> QuiverDn {
        let mut out = self.clone();
        for (i, e) in self.edges().into_iter().enumerate() {
            let (x, y) = self.endpoints(e);
            if x == q || y == q {
                out.dirs[i] = match out.dirs[i] {
                    Dir::Fwd => Dir::Rev,
                    Dir::Rev => Dir::Fwd,
                };
            }
        }
        out
    }

    /// The opposite quiver.
    pub fn opposite(&self) -> QuiverDn {
        QuiverDn {
            n: self.n,
            dirs: self
                .dirs
                .iter()
                .map(|d| if *d == Dir::Fwd { Dir::Rev } else { Dir::Fwd })
                .collect(),
        }
    }

    /// The Euler form `Σ α_qβ_q − Σ_{p→q} α_pβ_q`.
    pub fn euler_form(&self, alpha: &DimVec, beta: &DimVec) -> i64 {
        let diag: i64 = alpha.entries().iter().zip(beta.entries()).map(|(a, b)| a * b).sum();
        let off: i64 =
            self.arrows().iter().map(|ar| alpha.get(ar.source) * beta.get(ar.target)).sum();
        diag - off
    }

    /// The Tits form `⟨α,α⟩`.
    pub fn tits_form(&self, alpha: &DimVec) -> i64 {
        self.euler_form(alpha, alpha)
    }

    /// The minimal positive imaginary root: 2 on inner vertices, 1 on outer ones.
    pub fn delta(&self) -> DimVec {
        let mut d = DimVec::zeros(self.n);
        for v in self.vertices() {
            d.set(v, if v.is_outer() { 1 } else { 2 });
        }
        d
    }

    /// The defect `⟨δ, α⟩`.
    pub fn defect(&self, alpha: &DimVec) -> i64 {
        self.euler_form(&self.delta(), alpha)
    }

    /// The simple reflection `σ_q` on dimension vectors.
    pub fn reflect_dim(&self, q: VarId, alpha: &DimVec) -> DimVec {
        let mut out = alpha.clone();
        let s: i64 = self.neighbours(q).iter().map(|&p| alpha.get(p)).sum();
        out.set(q, s - alpha.get(q));
        out
    }

    /// An admissible sink sequence: each vertex is a sink once the previous
    /// ones have been reflected. Ties go to the smallest vertex.
    pub fn sink_order(&self) -> Vec<VarId> {
        let mut cur = self.clone();
        let mut used = Vec::new();
        for _ in 0..=self.n {
            let v = self
                .vertices()
                .into_iter()
                .find(|v| !used.contains(v) && cur.is_sink(*v))
                .expect("an acyclic quiver always has an admissible sink sequence");
            cur = cur.reflect(v);
            used.push(v);
        }
        used
    }

    /// The Coxeter transformation on dimension vectors.
    ///
    /// Fails with [`Error::OutOfCategory`] if the result has a negative
    /// entry, which happens exactly for projective (forward) or injective
    /// (inverse) roots.
    pub fn tau_dim(&self, alpha: &DimVec, dir: TauDirection) -> Result<DimVec> {
        let mut order = self.sink_order();
        if dir == TauDirection::Inverse {
            order.reverse();
        }
        let mut out = alpha.clone();
        for q in order {
            out = self.reflect_dim(q, &out);
        }
        if out.is_nonneg() {
            Ok(out)
        } else {
            Err(Error::OutOfCategory(format!(
                "{} of {alpha} is {out}",
                if dir == TauDirection::Forward { "tau" } else { "tau^-1" }
            )))
        }
    }

    /// Number of paths `p ⇝ q`, which is 0 or 1 on a tree.
    pub fn paths(&self, p: VarId, q: VarId) -> i64 {
        let mut stack = vec![p];
        let mut seen = vec![p];
        while let Some(x) = stack.pop() {
            if x == q {
                return 1;
            }
            for ar in self.arrows() {
                if ar.source == x && !seen.contains(&ar.target) {
                    seen.push(ar.target);
                    stack.push(ar.target);
                }
            }
        }
        0
    }

    /// Dimension vector of the indecomposable projective `P_q`.
    pub fn projective(&self, q: VarId) -> DimVec {
        let mut d = DimVec::zeros(self.n);
        for p in self.vertices() {
            d.set(p, self.paths(q, p));
        }
        d
    }

    /// Dimension vector of the indecomposable injective `I_q`.
    pub fn injective(&self, q: VarId) -> DimVec {
        let mut d = DimVec::zeros(self.n);
        for p in self.vertices() {
            d.set(p, self.paths(p, q));
        }
        d
    }

    /// A shortest sequence of sink or source reflections turning `self` into `target`.
    ///
    /// Each step `(q, side)` reflects the current quiver at `q`, which is a
    /// sink or a source of it as recorded.
    pub fn reflection_path(&self, target: &QuiverDn) -> Vec<(VarId, Side)> {
        assert_eq!(self.n, target.n, "quivers of different rank");
        let mut prev: HashMap<QuiverDn, Option<(QuiverDn, VarId, Side)>> = HashMap::new();
        prev.insert(self.clone(), None);
        let mut queue = VecDeque::from([self.clone()]);
        while let Some(cur) = queue.pop_front() {
            if &cur == target {
                break;
            }
            for v in cur.vertices() {
                let side = if cur.is_sink(v) {
                    Side::Sink
                } else if cur.is_source(v) {
                    Side::Source
                } else {
                    continue;
                };
                let next = cur.reflect(v);
                if !prev.contains_key(&next) {
                    prev.insert(next.clone(), Some((cur.clone(), v, side)));
                    queue.push_back(next);
                }
            }
        }
        let mut path = Vec::new();
        let mut cur = target.clone();
        while let Some(Some((p, v, side))) = prev.get(&cur) {
            path.push((*v, *side));
            cur = p.clone();
        }
        path.reverse();
        path
    }

    /// All orientations of D̃ₙ.
    pub fn all_orientations(n: usize) -> Vec<QuiverDn> {
        let edges = n;
        (0..(1u64 << edges))
            .map(|bits| QuiverDn {
                n,
                dirs: (0..edges)
                    .map(|i| if bits >> i & 1 == 1 { Dir::Rev } else { Dir::Fwd })
                    .collect(),
            })
            .collect()
    }

    /// The arrow-count table `a(p, q)` as a map.
    pub fn arrow_counts(&self) -> BTreeMap<(VarId, VarId), u32> {
        let mut m = BTreeMap::new();
        for ar in self.arrows() {
            *m.entry((ar.source, ar.target)).or_insert(0) += 1;
        }
        m
    }
}

impl fmt::Display for QuiverDn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D~{} [{}]", self.n, self.orientation_string())
    }
}
