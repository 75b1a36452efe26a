//! Ground truth from explicit matrices.
//!
//! A [`MatrixRep`] stores one integer matrix per arrow. Indecomposables of
//! real roots come from reflection functors ([`rep_from_root`]), tube and
//! homogeneous modules from explicit constructions. Quiver Grassmannians are
//! counted over prime fields ([`count_points`]), the counts are interpolated
//! to a polynomial in the field size and evaluated at 1 ([`euler_char`]).
//!
//! ```
//! use dtilde::formulas::Engine;
//! use dtilde::oracle::{fpoly_oracle, rep_from_root};
//! use dtilde::quiver::{DimVec, QuiverDn};
//! use dtilde::laurent::VarId;
//!
//! let q = QuiverDn::subspace(4);
//! let alpha = DimVec::from_pairs(4, &[(VarId::Inner(0), 1), (VarId::A, 1), (VarId::C, 1)]);
//! let m = rep_from_root(&q, &alpha).unwrap();
//! assert_eq!(fpoly_oracle(&m).unwrap(), Engine::new().f_root(&q, &alpha).unwrap());
//! ```

mod count;
mod interp;
mod linalg;
mod rep;

pub use count::{count_points, count_points_covered, good_reduction, prime_pool, RankProfile};
pub use interp::{
    counting_polynomial, euler_char, fpoly_oracle, fpoly_oracle_with_limit, good_primes,
    grassmannian_dimension, sub_dimensions, CountingPolynomial, HELD_OUT_PRIMES, ORACLE_DIM_LIMIT,
};
pub use linalg::{gauss_binomial, kernel_q, rank_q, subspaces, IntMatrix};
pub use rep::{end_dimension, homogeneous_rep, reflect_rep, rep_from_root, tree_module, MatrixRep};
