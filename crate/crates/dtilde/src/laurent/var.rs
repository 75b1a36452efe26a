use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A vertex of a quiver of type D̃ₙ, used as a variable name.
///
/// The derived order is the canonical order `a, b, 0, 1, …, n-4, c, d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    /// The outer vertex `a`, attached to `q₀`.
    A,
    /// The outer vertex `b`, attached to `q₀`.
    B,
    /// The inner vertex `qᵢ`.
    Inner(u16),
    /// The outer vertex `c`, attached to `q_{n-4}`.
    C,
    /// The outer vertex `d`, attached to `q_{n-4}`.
    D,
}

impl VarId {
    /// The short name: `a`, `b`, `c`, `d` or the inner index.
    pub fn name(&self) -> String {
        match self {
            VarId::A => "a".into(),
            VarId::B => "b".into(),
            VarId::C => "c".into(),
            VarId::D => "d".into(),
            VarId::Inner(i) => i.to_string(),
        }
    }

    /// Whether this is one of the four outer vertices.
    pub fn is_outer(&self) -> bool {
        !matches!(self, VarId::Inner(_))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for VarId {
    type Err = Error;

    /// Parses `a`, `b`, `c`, `d` or a decimal inner index, with an optional `x_` or `q_` prefix.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix("x_").or_else(|| t.strip_prefix("q_")).unwrap_or(t);
        match t {
            "a" => Ok(VarId::A),
            "b" => Ok(VarId::B),
            "c" => Ok(VarId::C),
            "d" => Ok(VarId::D),
            _ => t
                .parse::<u16>()
                .map(VarId::Inner)
                .map_err(|_| Error::Parse(format!("unknown vertex `{s}`"))),
        }
    }
}
