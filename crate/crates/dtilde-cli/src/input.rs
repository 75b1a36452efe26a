//! Turning command-line flags into a quiver and a target representation.

use clap::Args;
use dtilde::coeffq::build_snake;
use dtilde::formulas::{tube_data, Engine};
use dtilde::laurent::LaurentPoly;
use dtilde::quiver::{classify_root, DimVec, QuiverDn, RootKind, TubeId};
use dtilde::{Error, Result};

/// The quiver: number of inner-plus-one vertices and an orientation.
#[derive(Args, Debug, Clone)]
pub struct QuiverArgs {
    /// Type of the quiver, D̃ₙ with n + 1 vertices (n ≥ 4).
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Orientation as `edge:fwd|rev` pairs, e.g. `a:rev,v0:fwd`. `fwd` points
    /// outer to inner and `i` to `i+1`; omitted edges keep the subspace
    /// orientation.
    #[arg(long, default_value = "")]
    pub orient: String,
}

impl QuiverArgs {
    pub fn quiver(&self) -> Result<QuiverDn> {
        if self.n < 4 {
            return Err(Error::Parse(format!("n = {} must be at least 4", self.n)));
        }
        QuiverDn::parse(self.n, &self.orient)
    }
}

/// Which representation to work with; exactly one source must be given.
#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false, id = "source")]
pub struct TargetArgs {
    /// Dimension vector entries `vertex=k`, comma separated or repeated;
    /// `delta` adds the imaginary root.
    #[arg(long, group = "source")]
    pub root: Vec<String>,
    /// Exceptional tube `2a`, `2b` or `big`.
    #[arg(long, group = "source")]
    pub tube: Option<String>,
    /// Snake coefficient quiver with `s` periods (subspace orientation).
    #[arg(long, group = "source")]
    pub snake: Option<usize>,
}

/// Tube coordinates, used with `--tube`.
#[derive(Args, Debug, Clone)]
pub struct TubeArgs {
    /// Quasi-length modulo the rank, below the rank.
    #[arg(long, default_value_t = 1)]
    pub l: usize,
    /// Number of full turns around the tube.
    #[arg(long, default_value_t = 0)]
    pub r: usize,
    /// Index of the quasi-socle.
    #[arg(long, default_value_t = 0)]
    pub start: usize,
}

/// A resolved target: its dimension vector and how to compute `F`.
pub enum Target {
    Root(DimVec),
    Tube { tube: TubeId, r: usize, start: usize, l: usize, dim: DimVec },
}

impl Target {
    pub fn resolve(q: &QuiverDn, t: &TargetArgs, coords: &TubeArgs) -> Result<Target> {
        if let Some(name) = &t.tube {
            let tube = TubeId::parse(name)?;
            let data = tube_data(q, tube);
            if coords.l >= data.rank() {
                return Err(Error::BadParameter(format!(
                    "l = {} must be below the rank {}",
                    coords.l,
                    data.rank()
                )));
            }
            if coords.l == 0 && coords.r == 0 {
                return Err(Error::BadParameter("l = 0 needs r ≥ 1".into()));
            }
            let start = coords.start % data.rank();
            let dim = data.segment(start, coords.l).add(&q.delta().scale(coords.r as i64));
            return Ok(Target::Tube { tube, r: coords.r, start, l: coords.l, dim });
        }
        if let Some(s) = t.snake {
            if *q != QuiverDn::subspace(q.n()) {
                return Err(Error::BadParameter("--snake needs subspace orientation".into()));
            }
            return Ok(Target::Root(build_snake(s, q.n()).full_type()));
        }
        Ok(Target::Root(parse_root(q, &t.root)?))
    }

    pub fn dim(&self) -> &DimVec {
        match self {
            Target::Root(d) | Target::Tube { dim: d, .. } => d,
        }
    }

    /// Whether the target is a multiple of `δ` (homogeneous or tube imaginary).
    pub fn is_imaginary(&self, q: &QuiverDn) -> Result<bool> {
        match self {
            Target::Tube { l, .. } => Ok(*l == 0),
            Target::Root(d) => Ok(classify_root(q, d)?.kind == RootKind::ImaginaryMultipleOfDelta),
        }
    }

    pub fn fpoly(&self, q: &QuiverDn, engine: &Engine) -> Result<LaurentPoly> {
        match self {
            Target::Root(d) => engine.f_root(q, d),
            Target::Tube { tube, r, start, l, .. } => {
                engine.f_tube_coords(q, *tube, *r, *start, *l)
            }
        }
    }
}

/// Sums the `--root` arguments into one dimension vector.
pub fn parse_root(q: &QuiverDn, parts: &[String]) -> Result<DimVec> {
    let n = q.n();
    let mut total = DimVec::zeros(n);
    for part in parts.iter().flat_map(|p| p.split(',')) {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let add = if part == "delta" { q.delta() } else { DimVec::parse_pairs(n, part)? };
        total = total.add(&add);
    }
    if total.is_zero() {
        return Err(Error::Parse("empty dimension vector".into()));
    }
    Ok(total)
}
