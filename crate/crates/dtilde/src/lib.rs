//! F-polynomials and Caldero–Chapoton variables for representations of
//! affine quivers of type D̃ₙ.
//!
//! The crate is organized in layers:
//!
//! * [`laurent`]: exact Laurent polynomial arithmetic.
//! * [`quiver`]: the D̃ₙ quiver, its root system and reflections.
//! * [`coeffq`]: coefficient quivers and admissible-subset counting.
//! * [`formulas`]: closed formulas, reflection transforms and the CC map.
//! * [`oracle`]: explicit matrix representations and finite-field point counts.
//!
//! ```
//! use dtilde::quiver::QuiverDn;
//! use dtilde::formulas::Engine;
//!
//! let q = QuiverDn::subspace(4);
//! let engine = Engine::new();
//! let f = engine.f_delta(&q).unwrap();
//! assert_eq!(f.evaluate_ones(), 23.into());
//! ```

pub mod coeffq;
pub mod error;
pub mod formulas;
pub mod laurent;
pub mod oracle;
pub mod quiver;

pub use error::{Error, Result};

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/laurent.md")]
    pub mod laurent {}
    #[doc = include_str!("../../../book/src/quivers.md")]
    pub mod quivers {}
    #[doc = include_str!("../../../book/src/coefficient-quivers.md")]
    pub mod coefficient_quivers {}
    #[doc = include_str!("../../../book/src/formulas.md")]
    pub mod formulas {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    pub mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
