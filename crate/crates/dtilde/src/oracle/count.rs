use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;

use super::linalg::{gauss_binomial, kernel_mod, rank_mod, rank_q, subspaces, IntMatrix};
use super::rep::{intertwiner_system, MatrixRep};
use crate::error::{Error, Result};
use crate::laurent::VarId;
use crate::quiver::{DimVec, EdgeId};

/// Rank data of a representation that must survive reduction modulo `p`.
///
/// Records the rank of every arrow, the rank of the joint map
/// `⊕_{p∈S} M_p → M_v` along directed paths for every vertex `v` and every
/// set `S` of vertices with a path into `v`, the rank of the dual joint map
/// `M_v → ⊕_{p∈S} M_p`, and the endomorphism dimension. A prime where any of
/// these drops changes the isomorphism type of the reduction, for example
/// when two of the four lines of a homogeneous module coincide.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankProfile {
    arrows: BTreeMap<EdgeId, usize>,
    joint: Vec<usize>,
    end_dim: usize,
}

/// The composite matrix along the directed path `from ⇝ to`, if there is one.
fn path_map(m: &MatrixRep, from: VarId, to: VarId) -> Option<IntMatrix> {
    let q = m.quiver();
    // walk the tree from `to` back to `from`, following arrows backwards
    let mut prev: BTreeMap<VarId, (VarId, EdgeId)> = BTreeMap::new();
    let mut stack = vec![from];
    let mut seen = vec![from];
    while let Some(v) = stack.pop() {
        for ar in q.arrows().into_iter().filter(|a| a.source == v) {
            if !seen.contains(&ar.target) {
                seen.push(ar.target);
                prev.insert(ar.target, (v, ar.edge));
                stack.push(ar.target);
            }
        }
    }
    if !seen.contains(&to) {
        return None;
    }
    let mut acc = IntMatrix::identity(m.dims().get(to) as usize);
    let mut v = to;
    while v != from {
        let (u, e) = prev[&v];
        acc = acc.mul(m.map(e));
        v = u;
    }
    Some(acc)
}

fn reduce(rows: &[Vec<BigInt>], p: u64) -> Vec<Vec<u64>> {
    let pb = BigInt::from(p);
    rows.iter()
        .map(|r| r.iter().map(|x| u64::try_from(x.mod_floor(&pb)).expect("residue")).collect())
        .collect()
}

/// Matrices whose ranks make up a [`RankProfile`], with their column counts.
fn profile_matrices(m: &MatrixRep) -> Vec<(Vec<Vec<BigInt>>, usize)> {
    let verts = m.quiver().vertices();
    let mut out = Vec::new();
    for &v in &verts {
        let mv = m.dims().get(v) as usize;
        let into: Vec<IntMatrix> =
            verts.iter().filter(|&&u| u != v).filter_map(|&u| path_map(m, u, v)).collect();
        let out_of: Vec<IntMatrix> =
            verts.iter().filter(|&&u| u != v).filter_map(|&u| path_map(m, v, u)).collect();
        for mask in 1u32..(1 << into.len()) {
            let chosen: Vec<&IntMatrix> =
                (0..into.len()).filter(|i| mask >> i & 1 == 1).map(|i| &into[i]).collect();
            let cols: usize = chosen.iter().map(|c| c.cols()).sum();
            let rows: Vec<Vec<BigInt>> = (0..mv)
                .map(|i| {
                    chosen
                        .iter()
                        .flat_map(|c| (0..c.cols()).map(move |j| c.get(i, j).clone()))
                        .collect()
                })
                .collect();
            out.push((rows, cols));
        }
        for mask in 1u32..(1 << out_of.len()) {
            let rows: Vec<Vec<BigInt>> = (0..out_of.len())
                .filter(|i| mask >> i & 1 == 1)
                .flat_map(|i| out_of[i].to_rows())
                .collect();
            out.push((rows, mv));
        }
    }
    out
}

impl RankProfile {
    /// Ranks over `ℚ`.
    pub fn rational(m: &MatrixRep) -> Self {
        Self::compute(m, None)
    }

    /// Ranks over `𝔽_p`.
    pub fn modular(m: &MatrixRep, p: u64) -> Self {
        Self::compute(m, Some(p))
    }

    fn compute(m: &MatrixRep, p: Option<u64>) -> Self {
        let rank = |rows: &[Vec<BigInt>], cols: usize| match p {
            None => rank_q(rows, cols),
            Some(p) => rank_mod(&reduce(rows, p), cols, p),
        };
        let arrows =
            m.maps().iter().map(|(e, mat)| (*e, rank(&mat.to_rows(), mat.cols()))).collect();
        let joint = profile_matrices(m).iter().map(|(rows, cols)| rank(rows, *cols)).collect();
        let (rows, cols) = intertwiner_system(m);
        let end_dim = cols - rank(&rows, cols);
        RankProfile { arrows, joint, end_dim }
    }
}

/// Whether `p` is a prime of good reduction for `m`: the [`RankProfile`]
/// over `𝔽_p` equals the one over `ℚ`.
pub fn good_reduction(m: &MatrixRep, p: u64) -> bool {
    RankProfile::rational(m) == RankProfile::modular(m, p)
}

/// The primes `2, 3, 5, …` in increasing order (up to a generous bound).
pub fn prime_pool() -> Vec<u64> {
    (2u64..2000).filter(|&k| (2..k).take_while(|d| d * d <= k).all(|d| k % d != 0)).collect()
}

struct Choice {
    /// Basis rows of the chosen subspace.
    basis: Vec<Vec<u64>>,
    /// Rows spanning its annihilator.
    annihilator: Vec<Vec<u64>>,
}

fn mat_vec(mat: &[Vec<u64>], v: &[u64], p: u64) -> Vec<u64> {
    mat.iter().map(|row| row.iter().zip(v).fold(0u64, |acc, (a, b)| (acc + a * b) % p)).collect()
}

fn row_mat(row: &[u64], mat: &[Vec<u64>], cols: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; cols];
    for (k, &a) in row.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for j in 0..cols {
            out[j] = (out[j] + a * mat[k][j]) % p;
        }
    }
    out
}

/// Number of subrepresentations `U ⊆ M` over `𝔽_p` with `dim U = e`.
///
/// One colour class `A` of the tree is enumerated subspace by subspace in
/// reduced echelon form. Given the choices on `A`, every vertex `w` of the
/// other class is squeezed between the span `S` of the incoming images and
/// the common preimage `T` of the outgoing choices, and contributes
/// `[dim T − dim S choose e_w − dim S]_p` subspaces.
///
/// ```
/// use dtilde::oracle::{count_points, homogeneous_rep};
/// use dtilde::quiver::{DimVec, QuiverDn};
/// use dtilde::laurent::VarId;
///
/// let q = QuiverDn::subspace(4);
/// let m = homogeneous_rep(&q, 1, 2).unwrap();
/// let e = DimVec::simple(4, VarId::Inner(0));
/// assert_eq!(count_points(&m, &e, 3).unwrap(), 4);
/// ```
pub fn count_points(m: &MatrixRep, e: &DimVec, p: u64) -> Result<u128> {
    if !good_reduction(m, p) {
        return Err(Error::BadReduction(p));
    }
    count_unchecked(m, e, p, None)
}

/// [`count_points`] restricted to the subrepresentations `U` with
/// `U_q = Σ_{p→q} M(U_p)` at the sink `q`.
pub fn count_points_covered(m: &MatrixRep, e: &DimVec, q: VarId, p: u64) -> Result<u128> {
    if !m.quiver().is_sink(q) {
        return Err(Error::BadParameter(format!("{q} is not a sink")));
    }
    if !good_reduction(m, p) {
        return Err(Error::BadReduction(p));
    }
    count_unchecked(m, e, p, Some(q))
}

/// Arrows at a vertex of the non-enumerated class: `(edge, index into the
/// enumerated class, arrow points into the vertex)`.
type Links = Vec<(EdgeId, usize, bool)>;

pub(crate) fn count_unchecked(
    m: &MatrixRep,
    e: &DimVec,
    p: u64,
    covered: Option<VarId>,
) -> Result<u128> {
    let dims = m.dims();
    if e.n() != dims.n() || !e.is_nonneg() || !e.le(dims) {
        return Ok(0);
    }
    let q = m.quiver();
    let verts = q.vertices();
    let mut colour: BTreeMap<VarId, bool> = BTreeMap::new();
    let mut stack = vec![(verts[0], false)];
    while let Some((v, c)) = stack.pop() {
        if colour.insert(v, c).is_none() {
            for w in q.neighbours(v) {
                stack.push((w, !c));
            }
        }
    }
    let cost = |side: bool| -> f64 {
        verts
            .iter()
            .filter(|v| colour[v] == side)
            .map(|&v| gauss_binomial(dims.get(v), e.get(v), p) as f64)
            .product()
    };
    let a_side = match covered {
        Some(c) => !colour[&c],
        None => cost(false) > cost(true),
    };
    let a_verts: Vec<VarId> = verts.iter().copied().filter(|v| colour[v] == a_side).collect();
    let index_of: BTreeMap<VarId, usize> =
        a_verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let b_verts: Vec<(VarId, Links)> = verts
        .iter()
        .copied()
        .filter(|v| colour[v] != a_side)
        .map(|w| {
            let links = q
                .arrows()
                .into_iter()
                .filter_map(|ar| {
                    if ar.target == w {
                        Some((ar.edge, index_of[&ar.source], true))
                    } else if ar.source == w {
                        Some((ar.edge, index_of[&ar.target], false))
                    } else {
                        None
                    }
                })
                .collect();
            (w, links)
        })
        .collect();
    let mats: BTreeMap<EdgeId, Vec<Vec<u64>>> =
        m.maps().iter().map(|(k, mat)| (*k, mat.to_mod(p))).collect();

    let mut options: Vec<Vec<Choice>> = Vec::with_capacity(a_verts.len());
    for &v in &a_verts {
        let mv = dims.get(v) as usize;
        let list: Vec<Choice> = subspaces(mv, e.get(v) as usize, p)
            .into_iter()
            .map(|basis| {
                let annihilator = kernel_mod(&basis, mv, p);
                Choice { basis, annihilator }
            })
            .collect();
        options.push(list);
    }

    let overflow = || Error::TooLarge(format!("point count of {e} over F_{p}"));
    let mut total: u128 = 0;
    let mut pick = vec![0usize; a_verts.len()];
    loop {
        let mut product: u128 = 1;
        for (w, links) in &b_verts {
            let mw = dims.get(*w) as usize;
            let ew = e.get(*w);
            let mut span: Vec<Vec<u64>> = Vec::new();
            let mut constraints: Vec<Vec<u64>> = Vec::new();
            for &(edge, idx, into) in links {
                let choice = &options[idx][pick[idx]];
                if into {
                    span.extend(choice.basis.iter().map(|b| mat_vec(&mats[&edge], b, p)));
                } else {
                    constraints
                        .extend(choice.annihilator.iter().map(|r| row_mat(r, &mats[&edge], mw, p)));
                }
            }
            let dim_s = rank_mod(&span, mw, p) as i64;
            let dim_t = mw as i64 - rank_mod(&constraints, mw, p) as i64;
            let inside = span.iter().all(|s| {
                constraints
                    .iter()
                    .all(|c| c.iter().zip(s).fold(0u64, |acc, (x, y)| (acc + x * y) % p) == 0)
            });
            let factor = if !inside {
                0
            } else if covered == Some(*w) {
                u128::from(dim_s == ew)
            } else {
                gauss_binomial(dim_t - dim_s, ew - dim_s, p)
            };
            product = product.checked_mul(factor).ok_or_else(overflow)?;
            if product == 0 {
                break;
            }
        }
        total = total.checked_add(product).ok_or_else(overflow)?;
        let mut i = 0;
        loop {
            if i == pick.len() {
                return Ok(total);
            }
            pick[i] += 1;
            if pick[i] < options[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}
