use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::linalg::{kernel_q, IntMatrix};
use crate::coeffq::{build_rank2_chain, CoeffQuiver};
use crate::error::{Error, Result};
use crate::formulas::{reduction_word, support_connected};
use crate::laurent::VarId;
use crate::quiver::{
    classify_root, normal_form, transport_dim, DimVec, EdgeId, QuiverDn, RootKind, Side,
};

/// A representation of a D̃ₙ quiver by integer matrices.
///
/// The matrix of an arrow `p → q` has shape `dim M_q × dim M_p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixRep {
    quiver: QuiverDn,
    dims: DimVec,
    maps: BTreeMap<EdgeId, IntMatrix>,
}

impl MatrixRep {
    /// Builds a representation, checking every matrix shape against `dims`.
    pub fn new(quiver: QuiverDn, dims: DimVec, maps: BTreeMap<EdgeId, IntMatrix>) -> Result<Self> {
        if dims.n() != quiver.n() || !dims.is_nonneg() {
            return Err(Error::InconsistentLabels(format!("bad dimension vector {dims}")));
        }
        for ar in quiver.arrows() {
            let m = maps.get(&ar.edge).ok_or_else(|| {
                Error::InconsistentLabels(format!("missing map for edge {}", ar.edge))
            })?;
            let want = (dims.get(ar.target) as usize, dims.get(ar.source) as usize);
            if (m.rows(), m.cols()) != want {
                return Err(Error::InconsistentLabels(format!(
                    "map {} has shape {}x{}, expected {}x{}",
                    ar.edge,
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        if maps.len() != quiver.n() {
            return Err(Error::InconsistentLabels("maps for unknown edges".into()));
        }
        Ok(MatrixRep { quiver, dims, maps })
    }

    /// The zero representation.
    pub fn zero(quiver: &QuiverDn) -> Self {
        Self::with_zero_maps(quiver, DimVec::zeros(quiver.n()))
    }

    fn with_zero_maps(quiver: &QuiverDn, dims: DimVec) -> Self {
        let maps = quiver
            .arrows()
            .into_iter()
            .map(|ar| {
                let m =
                    IntMatrix::zeros(dims.get(ar.target) as usize, dims.get(ar.source) as usize);
                (ar.edge, m)
            })
            .collect();
        MatrixRep { quiver: quiver.clone(), dims, maps }
    }

    /// The simple representation `S_v`.
    pub fn simple(quiver: &QuiverDn, v: VarId) -> Self {
        Self::with_zero_maps(quiver, DimVec::simple(quiver.n(), v))
    }

    /// The thin representation with identity maps on a connected support.
    pub fn thin(quiver: &QuiverDn, alpha: &DimVec) -> Result<Self> {
        if !alpha.is_thin() || !support_connected(quiver, alpha) {
            return Err(Error::BadParameter(format!("{alpha} is not thin and connected")));
        }
        let mut rep = Self::with_zero_maps(quiver, alpha.clone());
        for ar in quiver.arrows() {
            if alpha.get(ar.source) == 1 && alpha.get(ar.target) == 1 {
                rep.maps.insert(ar.edge, IntMatrix::identity(1));
            }
        }
        Ok(rep)
    }

    /// The quiver.
    pub fn quiver(&self) -> &QuiverDn {
        &self.quiver
    }

    /// The dimension vector.
    pub fn dims(&self) -> &DimVec {
        &self.dims
    }

    /// The matrix of an edge.
    pub fn map(&self, e: EdgeId) -> &IntMatrix {
        &self.maps[&e]
    }

    /// All matrices keyed by edge.
    pub fn maps(&self) -> &BTreeMap<EdgeId, IntMatrix> {
        &self.maps
    }

    /// Total dimension.
    pub fn total_dim(&self) -> i64 {
        self.dims.height()
    }

    /// The block direct sum.
    pub fn direct_sum(&self, other: &MatrixRep) -> Result<MatrixRep> {
        if self.quiver != other.quiver {
            return Err(Error::InconsistentLabels("direct sum of different quivers".into()));
        }
        let dims = self.dims.add(&other.dims);
        let mut maps = BTreeMap::new();
        for (e, m1) in &self.maps {
            let m2 = &other.maps[e];
            let mut m = IntMatrix::zeros(m1.rows() + m2.rows(), m1.cols() + m2.cols());
            for i in 0..m1.rows() {
                for j in 0..m1.cols() {
                    m.set(i, j, m1.get(i, j).clone());
                }
            }
            for i in 0..m2.rows() {
                for j in 0..m2.cols() {
                    m.set(m1.rows() + i, m1.cols() + j, m2.get(i, j).clone());
                }
            }
            maps.insert(*e, m);
        }
        MatrixRep::new(self.quiver.clone(), dims, maps)
    }

    /// JSON form: `{"n", "orient", "dims", "maps": {edge: rows}}`.
    pub fn to_json(&self) -> serde_json::Value {
        let maps: serde_json::Map<String, serde_json::Value> = self
            .maps
            .iter()
            .map(|(e, m)| {
                let rows: Vec<Vec<String>> = m
                    .to_rows()
                    .into_iter()
                    .map(|r| r.iter().map(|x| x.to_string()).collect())
                    .collect();
                (e.to_string(), serde_json::json!(rows))
            })
            .collect();
        serde_json::json!({
            "n": self.quiver.n(),
            "orient": self.quiver.orientation_string(),
            "dims": self.dims.to_json(),
            "maps": maps,
        })
    }

    /// Parses the JSON form written by [`MatrixRep::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<MatrixRep> {
        let bad = |what: &str| Error::Parse(format!("matrix representation: {what}"));
        let obj = v.as_object().ok_or_else(|| bad("not an object"))?;
        for k in obj.keys() {
            if !["n", "orient", "dims", "maps"].contains(&k.as_str()) {
                return Err(bad(&format!("unknown key `{k}`")));
            }
        }
        let n = obj.get("n").and_then(|x| x.as_u64()).ok_or_else(|| bad("missing n"))? as usize;
        let orient = obj.get("orient").and_then(|x| x.as_str()).unwrap_or("");
        let quiver = QuiverDn::parse(n, orient)?;
        let dims = DimVec::from_json(n, obj.get("dims").ok_or_else(|| bad("missing dims"))?)?;
        let raw = obj.get("maps").and_then(|x| x.as_object()).ok_or_else(|| bad("missing maps"))?;
        let mut maps = BTreeMap::new();
        for (k, rows) in raw {
            let e: EdgeId = k.parse()?;
            let ar = quiver.arrow(e);
            let cols = dims.get(ar.source) as usize;
            let rows = rows.as_array().ok_or_else(|| bad("rows must be arrays"))?;
            let parsed: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    r.as_array()
                        .ok_or_else(|| bad("row must be an array"))?
                        .iter()
                        .map(|x| match x {
                            serde_json::Value::String(s) => {
                                s.parse::<BigInt>().map_err(|_| bad("bad integer"))
                            }
                            serde_json::Value::Number(n) => {
                                n.as_i64().map(BigInt::from).ok_or_else(|| bad("bad integer"))
                            }
                            _ => Err(bad("bad entry")),
                        })
                        .collect()
                })
                .collect::<Result<_>>()?;
            let m = IntMatrix::from_rows(parsed, cols).ok_or_else(|| bad("ragged rows"))?;
            maps.insert(e, m);
        }
        MatrixRep::new(quiver, dims, maps)
    }
}

/// The tree module of a coefficient quiver: one basis vector per vertex and
/// a single entry 1 per arrow.
pub fn tree_module(g: &CoeffQuiver, q: &QuiverDn) -> Result<MatrixRep> {
    if g.n != q.n() {
        return Err(Error::InconsistentLabels(format!("coefficient quiver is for n = {}", g.n)));
    }
    let dims = g.full_type();
    let mut position = Vec::with_capacity(g.vertices.len());
    let mut count: BTreeMap<VarId, usize> = BTreeMap::new();
    for &v in &g.vertices {
        let c = count.entry(v).or_insert(0);
        position.push(*c);
        *c += 1;
    }
    let mut rep = MatrixRep::with_zero_maps(q, dims);
    for ar in &g.arrows {
        let e: EdgeId = ar.edge.parse()?;
        let qa = q.arrow(e);
        let (s, t) = (g.vertices[ar.source], g.vertices[ar.target]);
        if (qa.source, qa.target) != (s, t) {
            return Err(Error::InconsistentLabels(format!(
                "arrow {} -> {} labelled {e} does not match {} -> {} in {q}",
                ar.source, ar.target, qa.source, qa.target
            )));
        }
        let m = rep.maps.get_mut(&e).expect("every edge has a map");
        m.set(position[ar.target], position[ar.source], BigInt::one());
    }
    Ok(rep)
}

/// The BGP reflection functor at a sink or source `v`.
///
/// At a sink the new space is the kernel of `⊕ M_p → M_v`; at a source it is
/// the cokernel of `M_v → ⊕ M_p`, presented by a left kernel basis. Bases
/// are primitive integer vectors.
pub fn reflect_rep(m: &MatrixRep, v: VarId) -> Result<MatrixRep> {
    let q = &m.quiver;
    let side = if q.is_sink(v) {
        Side::Sink
    } else if q.is_source(v) {
        Side::Source
    } else {
        return Err(Error::BadParameter(format!("{v} is neither a sink nor a source of {q}")));
    };
    let arrows: Vec<_> =
        q.arrows().into_iter().filter(|a| a.source == v || a.target == v).collect();
    let other = |a: &crate::quiver::Arrow| if a.source == v { a.target } else { a.source };
    let widths: Vec<usize> = arrows.iter().map(|a| m.dims.get(other(a)) as usize).collect();
    let total: usize = widths.iter().sum();
    let mv = m.dims.get(v) as usize;
    let new_q = q.reflect(v);
    let mut dims = m.dims.clone();
    let mut maps = m.maps.clone();
    match side {
        Side::Sink => {
            // φ: ⊕ M_p → M_v as an mv × total matrix
            let mut phi = vec![vec![BigInt::zero(); total]; mv];
            let mut off = 0;
            for (a, &w) in arrows.iter().zip(&widths) {
                let mat = &m.maps[&a.edge];
                for (i, row) in phi.iter_mut().enumerate() {
                    for j in 0..w {
                        row[off + j] = mat.get(i, j).clone();
                    }
                }
                off += w;
            }
            let ker = kernel_q(&phi, total);
            let k = ker.len();
            dims.set(v, k as i64);
            let mut off = 0;
            for (a, &w) in arrows.iter().zip(&widths) {
                let mut mat = IntMatrix::zeros(w, k);
                for (c, vec) in ker.iter().enumerate() {
                    for i in 0..w {
                        mat.set(i, c, vec[off + i].clone());
                    }
                }
                maps.insert(a.edge, mat);
                off += w;
            }
        }
        Side::Source => {
            // ψ: M_v → ⊕ M_p as a total × mv matrix; its left kernel presents the cokernel
            let mut psi_t = vec![vec![BigInt::zero(); total]; mv];
            let mut off = 0;
            for (a, &w) in arrows.iter().zip(&widths) {
                let mat = &m.maps[&a.edge];
                for i in 0..w {
                    for (j, row) in psi_t.iter_mut().enumerate() {
                        row[off + i] = mat.get(i, j).clone();
                    }
                }
                off += w;
            }
            let coker = kernel_q(&psi_t, total);
            let k = coker.len();
            dims.set(v, k as i64);
            let mut off = 0;
            for (a, &w) in arrows.iter().zip(&widths) {
                let mut mat = IntMatrix::zeros(k, w);
                for (r, vec) in coker.iter().enumerate() {
                    for j in 0..w {
                        mat.set(r, j, vec[off + j].clone());
                    }
                }
                maps.insert(a.edge, mat);
                off += w;
            }
        }
    }
    MatrixRep::new(new_q, dims, maps)
}

/// Dimension of `End(M)`, the kernel dimension of the intertwiner system
/// `f_q M_e = M_e f_p` over `ℚ`.
pub fn end_dimension(m: &MatrixRep) -> usize {
    let (rows, cols) = intertwiner_system(m);
    cols - super::linalg::rank_q(&rows, cols)
}

/// The intertwiner equations as integer rows, and the number of unknowns.
pub(crate) fn intertwiner_system(m: &MatrixRep) -> (Vec<Vec<BigInt>>, usize) {
    let verts = m.quiver.vertices();
    let mut offset = BTreeMap::new();
    let mut cols = 0usize;
    for &v in &verts {
        offset.insert(v, cols);
        let d = m.dims.get(v) as usize;
        cols += d * d;
    }
    let mut rows = Vec::new();
    for ar in m.quiver.arrows() {
        let (p, q) = (ar.source, ar.target);
        let (dp, dq) = (m.dims.get(p) as usize, m.dims.get(q) as usize);
        let me = &m.maps[&ar.edge];
        for i in 0..dq {
            for j in 0..dp {
                let mut row = vec![BigInt::zero(); cols];
                // (f_q M_e)[i][j] = Σ_k f_q[i][k] M_e[k][j]
                for k in 0..dq {
                    row[offset[&q] + i * dq + k] += me.get(k, j);
                }
                // (M_e f_p)[i][j] = Σ_k M_e[i][k] f_p[k][j]
                for k in 0..dp {
                    row[offset[&p] + k * dp + j] -= me.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    (rows, cols)
}

/// The indecomposable of real root `α`, built by reflection functors.
///
/// Uses the reduction word of [`reduction_word`] and reflects a simple back
/// along it. Thin roots use the identity representation. Tube modules of
/// quasi-length at least two on D̃₄ come from the rank-2 glueing of
/// coefficient quivers, relabelled to the right tube and transported from
/// subspace orientation. Other Schur roots fall back to a random brick.
/// The endomorphism ring is checked to have dimension
/// 1 for reflected and thin modules, and `⌈l/2⌉` for a tube module of
/// quasi-length `l`.
pub fn rep_from_root(q: &QuiverDn, alpha: &DimVec) -> Result<MatrixRep> {
    let info = classify_root(q, alpha)?;
    if info.kind == RootKind::ImaginaryMultipleOfDelta {
        return Err(Error::NotARoot(format!("{alpha} is not a real root")));
    }
    let mut expected_end = 1;
    let rep = if let Some(word) = reduction_word(q, alpha) {
        let mut quivers = vec![q.clone()];
        let mut a = alpha.clone();
        for &(v, _) in &word {
            let cq = quivers.last().expect("nonempty").clone();
            a = cq.reflect_dim(v, &a);
            quivers.push(cq.reflect(v));
        }
        let last = quivers.last().expect("nonempty");
        let mut rep = MatrixRep::simple(last, a.support()[0]);
        for (i, &(v, _)) in word.iter().enumerate().rev() {
            debug_assert_eq!(rep.quiver, quivers[i + 1]);
            rep = reflect_rep(&rep, v)?;
        }
        rep
    } else if alpha.is_thin() && support_connected(q, alpha) {
        MatrixRep::thin(q, alpha)?
    } else if q.n() == 4 {
        let (rep, r) = d4_tube_rep(q, alpha)?;
        expected_end = r + 1;
        rep
    } else {
        generic_brick(q, alpha)?
    };
    if rep.dims != *alpha {
        return Err(Error::BadParameter(format!("built {} instead of {alpha}", rep.dims)));
    }
    let end = end_dimension(&rep);
    if end != expected_end {
        return Err(Error::BadParameter(format!(
            "representation of {alpha} has End-dimension {end}, expected {expected_end}"
        )));
    }
    Ok(rep)
}

/// Number of random representations tried by [`generic_brick`].
const BRICK_ATTEMPTS: u64 = 8;

/// A representation of `alpha` with small random integer matrices whose
/// endomorphism ring is the field; for a real Schur root it is the
/// indecomposable. The random stream is seeded, so the result is reproducible.
fn generic_brick(q: &QuiverDn, alpha: &DimVec) -> Result<MatrixRep> {
    for seed in 0..BRICK_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let maps = q
            .arrows()
            .into_iter()
            .map(|ar| {
                let (rows, cols) = (alpha.get(ar.target) as usize, alpha.get(ar.source) as usize);
                let mut m = IntMatrix::zeros(rows, cols);
                for i in 0..rows {
                    for j in 0..cols {
                        m.set(i, j, BigInt::from(rng.gen_range(-2i64..=2)));
                    }
                }
                (ar.edge, m)
            })
            .collect();
        let rep = MatrixRep::new(q.clone(), alpha.clone(), maps)?;
        if end_dimension(&rep) == 1 {
            return Ok(rep);
        }
    }
    Err(Error::BadParameter(format!("no matrix realization of {alpha} on {q}")))
}

/// The tube module of `alpha` together with `r`, where it has quasi-length `2r + 1`.
fn d4_tube_rep(q: &QuiverDn, alpha: &DimVec) -> Result<(MatrixRep, usize)> {
    let sub = QuiverDn::subspace(4);
    let (_, alpha_s) = transport_dim(q, &q.reflection_path(&sub), alpha);
    let (r, e) = normal_form(&sub, &alpha_s);
    let outer = [VarId::A, VarId::B, VarId::C, VarId::D];
    let first: Vec<VarId> = outer.iter().copied().filter(|&v| e.get(v) == 1).collect();
    if first.len() != 2 || e.get(VarId::Inner(0)) != 1 {
        return Err(Error::BadParameter(format!("{alpha} is not a tube root of D̃₄")));
    }
    let second: Vec<VarId> = outer.iter().copied().filter(|v| !first.contains(v)).collect();
    let relabel = |v: VarId| match v {
        VarId::A => first[0],
        VarId::C => first[1],
        VarId::B => second[0],
        VarId::D => second[1],
        other => other,
    };
    let mut g = build_rank2_chain(2 * r + 1);
    for v in g.vertices.iter_mut() {
        *v = relabel(*v);
    }
    for ar in g.arrows.iter_mut() {
        let outer_end = g.vertices[ar.source];
        ar.edge = outer_end.name();
    }
    let mut rep = tree_module(&g, &sub)?;
    for (v, _) in sub.reflection_path(q) {
        rep = reflect_rep(&rep, v)?;
    }
    Ok((rep, r))
}

/// A representation of dimension `rδ` in the homogeneous tube with
/// parameter `λ`, for D̃ₙ in subspace orientation.
///
/// Inner spaces are `k^{2r}` joined by identities; the outer maps into the
/// end vertices are `[I; 0]`, `[0; I]`, `[I; I]` and `[I; J_r(λ)]` with a
/// Jordan block `J_r(λ)`.
pub fn homogeneous_rep(q: &QuiverDn, r: usize, lambda: i64) -> Result<MatrixRep> {
    if *q != QuiverDn::subspace(q.n()) {
        return Err(Error::BadParameter("homogeneous_rep needs subspace orientation".into()));
    }
    if r == 0 {
        return Err(Error::BadParameter("r must be positive".into()));
    }
    if lambda == 0 || lambda == 1 {
        return Err(Error::BadParameter(format!("λ = {lambda} lies in an exceptional tube")));
    }
    let n = q.n();
    let dims = q.delta().scale(r as i64);
    let block = |top: &dyn Fn(usize, usize) -> i64, bottom: &dyn Fn(usize, usize) -> i64| {
        let mut m = IntMatrix::zeros(2 * r, r);
        for i in 0..r {
            for j in 0..r {
                m.set(i, j, BigInt::from(top(i, j)));
                m.set(r + i, j, BigInt::from(bottom(i, j)));
            }
        }
        m
    };
    let id = |i: usize, j: usize| i64::from(i == j);
    let zero = |_: usize, _: usize| 0;
    let jordan = move |i: usize, j: usize| {
        if i == j {
            lambda
        } else {
            i64::from(j == i + 1)
        }
    };
    let mut maps = BTreeMap::new();
    maps.insert(EdgeId::A, block(&id, &zero));
    maps.insert(EdgeId::B, block(&zero, &id));
    maps.insert(EdgeId::C, block(&id, &id));
    maps.insert(EdgeId::D, block(&id, &jordan));
    for i in 0..n - 4 {
        maps.insert(EdgeId::V(i as u16), IntMatrix::identity(2 * r));
    }
    MatrixRep::new(q.clone(), dims, maps)
}
