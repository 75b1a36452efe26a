use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::{Monomial, VarId};

/// An integer vector indexed by the vertices of D̃ₙ.
///
/// Stored densely in canonical vertex order `a, b, 0, …, n-4, c, d`, so
/// the length is `n + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVec(Vec<i64>);

impl DimVec {
    /// The zero vector for D̃ₙ.
    pub fn zeros(n: usize) -> Self {
        DimVec(vec![0; n + 1])
    }

    /// The unit vector `s_v`.
    pub fn simple(n: usize, v: VarId) -> Self {
        let mut d = Self::zeros(n);
        d.set(v, 1);
        d
    }

    /// Builds a vector from `(vertex, value)` pairs; repeated vertices add up.
    pub fn from_pairs(n: usize, pairs: &[(VarId, i64)]) -> Self {
        let mut d = Self::zeros(n);
        for &(v, x) in pairs {
            d.set(v, d.get(v) + x);
        }
        d
    }

    /// Builds a vector from its dense entries in canonical order.
    pub fn from_dense(entries: Vec<i64>) -> Self {
        assert!(entries.len() >= 5, "D̃ₙ needs n ≥ 4");
        DimVec(entries)
    }

    /// The `n` of D̃ₙ.
    pub fn n(&self) -> usize {
        self.0.len() - 1
    }

    /// Dense position of a vertex.
    pub fn index_of(n: usize, v: VarId) -> usize {
        match v {
            VarId::A => 0,
            VarId::B => 1,
            VarId::Inner(i) => {
                assert!((i as usize) <= n - 4, "inner vertex {i} out of range for n = {n}");
                2 + i as usize
            }
            VarId::C => n - 1,
            VarId::D => n,
        }
    }

    /// The vertex at a dense position.
    pub fn var_at(n: usize, i: usize) -> VarId {
        match i {
            0 => VarId::A,
            1 => VarId::B,
            _ if i == n - 1 => VarId::C,
            _ if i == n => VarId::D,
            _ => VarId::Inner((i - 2) as u16),
        }
    }

    /// The entry at `v`.
    pub fn get(&self, v: VarId) -> i64 {
        self.0[Self::index_of(self.n(), v)]
    }

    /// Sets the entry at `v`.
    pub fn set(&mut self, v: VarId, x: i64) {
        let i = Self::index_of(self.n(), v);
        self.0[i] = x;
    }

    /// The dense entries.
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// `(vertex, entry)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (VarId, i64)> + '_ {
        let n = self.n();
        self.0.iter().enumerate().map(move |(i, &x)| (Self::var_at(n, i), x))
    }

    /// Componentwise sum.
    pub fn add(&self, o: &DimVec) -> DimVec {
        DimVec(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference.
    pub fn sub(&self, o: &DimVec) -> DimVec {
        DimVec(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    /// Scalar multiple.
    pub fn scale(&self, k: i64) -> DimVec {
        DimVec(self.0.iter().map(|a| a * k).collect())
    }

    /// Sum of entries.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Whether every entry is nonnegative.
    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Whether every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// Whether every entry is 0 or 1.
    pub fn is_thin(&self) -> bool {
        self.0.iter().all(|&x| x == 0 || x == 1)
    }

    /// Componentwise `self ≤ o`.
    pub fn le(&self, o: &DimVec) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a <= b)
    }

    /// Vertices with nonzero entry.
    pub fn support(&self) -> Vec<VarId> {
        self.iter().filter(|&(_, x)| x != 0).map(|(v, _)| v).collect()
    }

    /// The monomial `x^self`.
    pub fn monomial(&self) -> Monomial {
        Monomial::from_pairs(self.iter().map(|(v, x)| (v, x as i32)))
    }

    /// Reads the exponent vector of a monomial.
    pub fn from_monomial(n: usize, m: &Monomial) -> DimVec {
        let mut d = Self::zeros(n);
        for &(v, e) in m.exponents() {
            d.set(v, e as i64);
        }
        d
    }

    /// JSON object keyed by vertex name, e.g. `{"a":1,"b":0,"0":2,"c":0,"d":0}`.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> =
            self.iter().map(|(v, x)| (v.name(), serde_json::Value::from(x))).collect();
        serde_json::Value::Object(map)
    }

    /// Parses the JSON object form; absent vertices are zero.
    pub fn from_json(n: usize, v: &serde_json::Value) -> Result<DimVec> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Parse("dimension vector must be a JSON object".into()))?;
        let mut d = Self::zeros(n);
        for (k, x) in obj {
            let var: VarId = k.parse()?;
            check_vertex(n, var)?;
            let x =
                x.as_i64().ok_or_else(|| Error::Parse(format!("entry `{k}` is not an integer")))?;
            d.set(var, x);
        }
        Ok(d)
    }

    /// Parses `k=v` pairs separated by commas, e.g. `a=1,0=2`.
    pub fn parse_pairs(n: usize, s: &str) -> Result<DimVec> {
        let mut d = Self::zeros(n);
        let mut seen = BTreeMap::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, x) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected `vertex=value`, got `{part}`")))?;
            let var: VarId = k.parse()?;
            check_vertex(n, var)?;
            let x: i64 =
                x.trim().parse().map_err(|_| Error::Parse(format!("bad value in `{part}`")))?;
            if seen.insert(var, x).is_some() {
                return Err(Error::Parse(format!("vertex `{k}` given twice")));
            }
            d.set(var, x);
        }
        Ok(d)
    }
}

/// Fails unless `v` is a vertex of D̃ₙ.
pub fn check_vertex(n: usize, v: VarId) -> Result<()> {
    match v {
        VarId::Inner(i) if i as usize > n - 4 => {
            Err(Error::Parse(format!("vertex {i} does not exist for n = {n}")))
        }
        _ => Ok(()),
    }
}

impl fmt::Display for DimVec {
    /// Renders as `(a:1, b:0, 0:2, c:1, d:1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(v, x)| format!("{v}:{x}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}
