//! The quiver D̃ₙ with an arbitrary orientation.
//!
//! Provides the Euler form, δ, the defect, simple reflections and the
//! Coxeter transformation on dimension vectors, and a root classifier that
//! locates real roots in the preprojective, preinjective or regular part.
//!
//! ```
//! use dtilde::laurent::VarId;
//! use dtilde::quiver::{DimVec, QuiverDn, TauDirection};
//!
//! let q = QuiverDn::subspace(4);
//! let pa = q.projective(VarId::A);
//! assert_eq!(q.defect(&pa), -1);
//! let next = q.tau_dim(&pa, TauDirection::Inverse).unwrap();
//! assert_eq!(next, DimVec::parse_pairs(4, "0=2,b=1,c=1,d=1").unwrap());
//! ```

mod dimvec;
mod dn;
mod roots;

pub use dimvec::{check_vertex, DimVec};
pub use dn::{Arrow, Dir, EdgeId, QuiverDn, Side, TauDirection};
pub use roots::{
    classify_root, defect2_splitting, defect_one_roots_below, normal_form, positive_real_roots,
    transport_dim, tubes, Decomposition, RootInfo, RootKind, Splitting, TubeData, TubeId,
};

/// Free-function form of [`QuiverDn::euler_form`].
pub fn euler_form(q: &QuiverDn, alpha: &DimVec, beta: &DimVec) -> i64 {
    q.euler_form(alpha, beta)
}

/// Free-function form of [`QuiverDn::delta`].
pub fn delta(q: &QuiverDn) -> DimVec {
    q.delta()
}

/// Free-function form of [`QuiverDn::defect`].
pub fn defect(q: &QuiverDn, alpha: &DimVec) -> i64 {
    q.defect(alpha)
}

/// Free-function form of [`QuiverDn::reflect_dim`].
pub fn reflect_dim(q: &QuiverDn, v: crate::laurent::VarId, alpha: &DimVec) -> DimVec {
    q.reflect_dim(v, alpha)
}

/// Free-function form of [`QuiverDn::sink_order`].
pub fn sink_order(q: &QuiverDn) -> Vec<crate::laurent::VarId> {
    q.sink_order()
}

/// Free-function form of [`QuiverDn::tau_dim`].
pub fn tau_dim(q: &QuiverDn, alpha: &DimVec, dir: TauDirection) -> crate::Result<DimVec> {
    q.tau_dim(alpha, dir)
}
