//! Coefficient quivers, admissible subsets and the recursions counting them.
//!
//! A coefficient quiver records a basis of a tree module: one vertex per
//! basis vector (labelled by the quiver vertex it lives at) and one arrow per
//! nonzero matrix entry. A subset of its vertices is *admissible* if it is
//! closed under successors along extremal arrows and, for every ramification
//! `(l, l+1, l+2, l+3)`, containing `l+1` and `l+2` forces `l`.
//!
//! ```
//! use dtilde::coeffq::{build_snake, gen_function, snake_recursion};
//!
//! let g = build_snake(0, 4);
//! assert_eq!(g.vertices.len(), 5);
//! assert_eq!(gen_function(&g).evaluate_ones(), 14.into());
//! assert_eq!(gen_function(&g), snake_recursion(0, 4));
//! ```

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::laurent::{LaurentPoly, Monomial, VarId};
use crate::quiver::{DimVec, EdgeId};

/// One arrow of a coefficient quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffArrow {
    /// Tail vertex id.
    pub source: usize,
    /// Head vertex id.
    pub target: usize,
    /// The quiver edge carrying this matrix entry.
    pub edge: String,
    /// Whether the arrow is extremal.
    pub extremal: bool,
}

/// A vertex- and arrow-labelled tree with extremal flags and ramifications.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffQuiver {
    /// The `n` of D̃ₙ the labels refer to.
    pub n: usize,
    /// Vertex labels, indexed by vertex id.
    pub vertices: Vec<VarId>,
    /// Arrows.
    pub arrows: Vec<CoeffArrow>,
    /// Ramification subgraphs `(l, l+1, l+2, l+3)`.
    pub ramifications: Vec<[usize; 4]>,
}

impl Serialize for VarId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name())
    }
}

impl<'de> Deserialize<'de> for VarId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl CoeffQuiver {
    fn new(n: usize) -> Self {
        CoeffQuiver { n, vertices: Vec::new(), arrows: Vec::new(), ramifications: Vec::new() }
    }

    fn add_vertex(&mut self, label: VarId) -> usize {
        self.vertices.push(label);
        self.vertices.len() - 1
    }

    fn add_arrow(&mut self, source: usize, target: usize, edge: EdgeId, extremal: bool) {
        self.arrows.push(CoeffArrow { source, target, edge: edge.to_string(), extremal });
    }

    /// The type of a subset given by membership flags.
    pub fn subset_type(&self, members: &[bool]) -> DimVec {
        let mut d = DimVec::zeros(self.n);
        for (i, &m) in members.iter().enumerate() {
            if m {
                let v = self.vertices[i];
                d.set(v, d.get(v) + 1);
            }
        }
        d
    }

    /// The type of the full vertex set.
    pub fn full_type(&self) -> DimVec {
        self.subset_type(&vec![true; self.vertices.len()])
    }

    /// Graphviz rendering; non-extremal arrows are dashed.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph coeff {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            s.push_str(&format!("  {i} [label=\"{i}:{v}\"];\n"));
        }
        for a in &self.arrows {
            let style = if a.extremal { "" } else { ", style=dashed" };
            s.push_str(&format!("  {} -> {} [label=\"{}\"{style}];\n", a.source, a.target, a.edge));
        }
        s.push_str("}\n");
        s
    }

    /// JSON rendering.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("coefficient quiver serializes")
    }
}

/// The snake-shaped coefficient quiver `Q(s, n)` with vertices `0, …, s(2n−2) + n`.
///
/// Vertex 0 is labelled `d` and points to vertex 1, the first vertex of
/// row 0, which runs `q_{n−4}, …, q₀`. Rows alternate direction; between
/// rows sit ramifications `(l, l+1, l+2, l+3)` whose middle vertices are
/// labelled `a, b` (after even rows) or `c, d` (after odd rows). The final
/// row consists of the single vertex `q₀`.
pub fn build_snake(s: usize, n: usize) -> CoeffQuiver {
    assert!(n >= 4, "D̃ₙ needs n ≥ 4");
    let top = (n - 4) as u16;
    let mut g = CoeffQuiver::new(n);
    let v0 = g.add_vertex(VarId::D);
    let mut last = g.add_vertex(VarId::Inner(top));
    g.add_arrow(v0, last, EdgeId::D, true);
    for j in (0..top).rev() {
        let v = g.add_vertex(VarId::Inner(j));
        g.add_arrow(last, v, EdgeId::V(j), true);
        last = v;
    }
    for k in 0..=s {
        let l = last;
        let xa = g.add_vertex(VarId::A);
        let xb = g.add_vertex(VarId::B);
        let c0 = g.add_vertex(VarId::Inner(0));
        g.add_arrow(xa, l, EdgeId::A, false);
        g.add_arrow(xa, c0, EdgeId::A, true);
        g.add_arrow(xb, c0, EdgeId::B, true);
        g.ramifications.push([l, xa, xb, c0]);
        last = c0;
        if k == s {
            break;
        }
        for j in 1..=top {
            let v = g.add_vertex(VarId::Inner(j));
            g.add_arrow(v, last, EdgeId::V(j - 1), true);
            last = v;
        }
        let l = last;
        let xc = g.add_vertex(VarId::C);
        let xd = g.add_vertex(VarId::D);
        let r0 = g.add_vertex(VarId::Inner(top));
        g.add_arrow(xc, l, EdgeId::C, false);
        g.add_arrow(xc, r0, EdgeId::C, true);
        g.add_arrow(xd, r0, EdgeId::D, true);
        g.ramifications.push([l, xc, xd, r0]);
        last = r0;
        for j in (0..top).rev() {
            let v = g.add_vertex(VarId::Inner(j));
            g.add_arrow(last, v, EdgeId::V(j), true);
            last = v;
        }
    }
    g
}

/// The glueing of `k` blocks for D̃₄ in subspace orientation.
///
/// Blocks alternate `T₁ = {a, c}` and `T₂ = {b, d}`; each block is a centre
/// labelled `q₀` with two extremal arrows into it. Block `j ≥ 2` is joined
/// to block `j − 1` by a non-extremal arrow from its first outer vertex to
/// the previous centre, forming the ramification `(c_{j−1}, x_j, y_j, c_j)`.
pub fn build_rank2_chain(k: usize) -> CoeffQuiver {
    let mut g = CoeffQuiver::new(4);
    let mut prev: Option<usize> = None;
    for j in 0..k {
        let (x, y, ex, ey) = if j % 2 == 0 {
            (VarId::A, VarId::C, EdgeId::A, EdgeId::C)
        } else {
            (VarId::B, VarId::D, EdgeId::B, EdgeId::D)
        };
        let vx = g.add_vertex(x);
        let vy = g.add_vertex(y);
        let c = g.add_vertex(VarId::Inner(0));
        g.add_arrow(vx, c, ex, true);
        g.add_arrow(vy, c, ey, true);
        if let Some(p) = prev {
            g.add_arrow(vx, p, ex, false);
            g.ramifications.push([p, vx, vy, c]);
        }
        prev = Some(c);
    }
    g
}

/// Per-vertex constraints checked when the vertex with the lowest id is decided.
struct Constraints {
    /// Extremal arrows `(source, target)` grouped by `min(source, target)`.
    arrows: Vec<Vec<(usize, usize)>>,
    /// Ramifications grouped by their smallest vertex `l`.
    rams: Vec<Vec<[usize; 4]>>,
}

impl Constraints {
    fn new(g: &CoeffQuiver) -> Self {
        let nv = g.vertices.len();
        let mut arrows = vec![Vec::new(); nv];
        for a in g.arrows.iter().filter(|a| a.extremal) {
            arrows[a.source.min(a.target)].push((a.source, a.target));
        }
        let mut rams = vec![Vec::new(); nv];
        for r in &g.ramifications {
            let lo = *r.iter().min().expect("four vertices");
            rams[lo].push(*r);
        }
        Constraints { arrows, rams }
    }

    fn ok(&self, v: usize, members: &[bool]) -> bool {
        self.arrows[v].iter().all(|&(s, t)| !members[s] || members[t])
            && self.rams[v].iter().all(|r| !(members[r[1]] && members[r[2]]) || members[r[0]])
    }
}

/// Visits admissible subsets in binary-counting order of their membership
/// vectors (vertex id = bit position).
fn visit_admissible(g: &CoeffQuiver, mut f: impl FnMut(&[bool])) {
    let nv = g.vertices.len();
    let cons = Constraints::new(g);
    let mut members = vec![false; nv];
    fn rec(v: usize, members: &mut Vec<bool>, cons: &Constraints, f: &mut dyn FnMut(&[bool])) {
        for choice in [false, true] {
            members[v] = choice;
            if cons.ok(v, members) {
                if v == 0 {
                    f(members);
                } else {
                    rec(v - 1, members, cons, f);
                }
            }
        }
        members[v] = false;
    }
    if nv == 0 {
        f(&members);
        return;
    }
    rec(nv - 1, &mut members, &cons, &mut f);
}

/// Every admissible subset with its type, in binary-counting order.
pub fn admissible_subsets(g: &CoeffQuiver) -> Vec<(Vec<usize>, DimVec)> {
    let mut out = Vec::new();
    visit_admissible(g, |m| {
        let ids: Vec<usize> = (0..m.len()).filter(|&i| m[i]).collect();
        out.push((ids, g.subset_type(m)));
    });
    out
}

/// The generating function `Σ x^{type}` over admissible subsets.
pub fn gen_function(g: &CoeffQuiver) -> LaurentPoly {
    let mut counts: HashMap<Vec<i64>, u64> = HashMap::new();
    let n = g.n;
    let idx: Vec<usize> = g.vertices.iter().map(|&v| DimVec::index_of(n, v)).collect();
    visit_admissible(g, |m| {
        let mut t = vec![0i64; n + 1];
        for (i, &x) in m.iter().enumerate() {
            if x {
                t[idx[i]] += 1;
            }
        }
        *counts.entry(t).or_insert(0) += 1;
    });
    LaurentPoly::from_terms(
        counts.into_iter().map(|(t, c)| (DimVec::from_dense(t).monomial(), BigInt::from(c))),
    )
}

fn x(v: VarId) -> LaurentPoly {
    LaurentPoly::var(v)
}

fn mono(vs: &[VarId]) -> LaurentPoly {
    LaurentPoly::monomial(Monomial::from_pairs(vs.iter().map(|&v| (v, 1))))
}

/// `H(x, y, z) = 1 + x + xy + xz + xyz`.
pub fn h(a: VarId, b: VarId, c: VarId) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for m in [vec![a], vec![a, b], vec![a, c], vec![a, b, c]] {
        p = &p + &mono(&m);
    }
    p
}

/// The generating function of `Q(s, n)` computed by the row recursion,
/// never by enumeration.
///
/// Rows `ℱ_i^j` (`j = 0, …, n−4`) are built from the seeds
/// `ℱ_{−1}^{n−4} = 1` and `ℱ_0^{n−4} = 1 + x_{n−4} + x_{n−4}x_d`; the result
/// is `ℱ_{2s+1}^0`. For `n = 4` the convention `ℱ_{2m+1}^{−1} = ℱ_{2m}^0`
/// reduces the recursion to the two-by-two matrix form.
pub fn snake_recursion(s: usize, n: usize) -> LaurentPoly {
    assert!(n >= 4, "D̃ₙ needs n ≥ 4");
    let top = n - 4;
    let xi = |j: usize| x(VarId::Inner(j as u16));
    let q0 = VarId::Inner(0);
    let qt = VarId::Inner(top as u16);
    let mut prev_odd = vec![LaurentPoly::zero(); top + 1];
    prev_odd[top] = LaurentPoly::one();
    let mut even = vec![LaurentPoly::zero(); top + 1];
    even[top] = &(&LaurentPoly::one() + &xi(top)) + &mono(&[qt, VarId::D]);
    let mut prev_even_0 = LaurentPoly::zero();
    for m in 0..=s {
        if m > 0 {
            let below = if top == 0 { prev_even_0.clone() } else { prev_odd[top - 1].clone() };
            even[top] = &(&h(qt, VarId::C, VarId::D) * &prev_odd[top])
                - &(&mono(&[qt, VarId::C, VarId::D]) * &below);
        }
        for j in (0..top).rev() {
            even[j] = &(&xi(j) * &even[j + 1]) + &prev_odd[top];
        }
        let mut odd = vec![LaurentPoly::zero(); top + 1];
        odd[0] = &(&h(q0, VarId::A, VarId::B) * &even[0])
            - &(&mono(&[q0, VarId::A, VarId::B]) * &prev_odd[top]);
        if top >= 1 {
            odd[1] = &(&(&LaurentPoly::one() + &xi(1)) * &odd[0]) - &(&xi(1) * &even[0]);
        }
        for j in 2..=top {
            odd[j] = &(&(&LaurentPoly::one() + &xi(j)) * &odd[j - 1]) - &(&xi(j) * &odd[j - 2]);
        }
        if m == s {
            return odd[0].clone();
        }
        prev_even_0 = even[0].clone();
        prev_odd = odd;
    }
    unreachable!("loop returns at m = s")
}

/// `F_{T₁} = H(x₀, x_a, x_c)`.
pub fn f_t1() -> LaurentPoly {
    h(VarId::Inner(0), VarId::A, VarId::C)
}

/// `F_{T₂} = H(x₀, x_b, x_d)`.
pub fn f_t2() -> LaurentPoly {
    h(VarId::Inner(0), VarId::B, VarId::D)
}

/// The rank-2 tube recursion `f_{2r+1} = F_{T₁}f_{2r} − x₀x_ax_c f_{2r−1}`,
/// `f_{2r+2} = F_{T₂}f_{2r+1} − x₀x_bx_d f_{2r}` with `f_{−1} = 0`, `f₀ = 1`.
pub fn tube_recursion_rank2(k: usize) -> LaurentPoly {
    let q0 = VarId::Inner(0);
    let mut prev = LaurentPoly::zero();
    let mut cur = LaurentPoly::one();
    for i in 0..k {
        let (f, m) = if i % 2 == 0 {
            (f_t1(), mono(&[q0, VarId::A, VarId::C]))
        } else {
            (f_t2(), mono(&[q0, VarId::B, VarId::D]))
        };
        let next = &(&f * &cur) - &(&m * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `F_m = Σ_{i=−1}^{m} Π_{j=0}^{i} x_j`, the generating function of a linearly
/// oriented path `q₀ ← q₁ ← … ← q_m`.
pub fn path_fpoly(m: usize) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    let mut prod = LaurentPoly::one();
    for j in 0..=m {
        prod = &prod * &x(VarId::Inner(j as u16));
        p = &p + &prod;
    }
    p
}

/// The product `Π_{i=0}^{m} [[1, 0], [1, x_i]]` as a 2×2 matrix.
pub fn path_matrix_product(m: usize) -> [[LaurentPoly; 2]; 2] {
    let mut acc =
        [[LaurentPoly::one(), LaurentPoly::zero()], [LaurentPoly::zero(), LaurentPoly::one()]];
    for i in 0..=m {
        let step = [
            [LaurentPoly::one(), LaurentPoly::zero()],
            [LaurentPoly::one(), x(VarId::Inner(i as u16))],
        ];
        acc = mat_mul(&acc, &step);
    }
    acc
}

/// Product of 2×2 polynomial matrices.
pub fn mat_mul(a: &[[LaurentPoly; 2]; 2], b: &[[LaurentPoly; 2]; 2]) -> [[LaurentPoly; 2]; 2] {
    let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}
