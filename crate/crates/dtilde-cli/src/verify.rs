//! The invariant suites behind `dtilde verify`.

use std::collections::BTreeMap;

use clap::ValueEnum;
use dtilde::formulas::{
    binolem_part1, binolem_part2, dual_fpoly, euler_reflect, type_two_identity, Engine,
};
use dtilde::laurent::{LaurentPoly, Monomial, VarId};
use dtilde::oracle::{
    count_points, count_points_covered, fpoly_oracle, good_primes, reflect_rep, rep_from_root,
    sub_dimensions, IntMatrix, MatrixRep, ORACLE_DIM_LIMIT,
};
use dtilde::quiver::{classify_root, positive_real_roots, Decomposition, DimVec, QuiverDn};
use dtilde::Result;
use num_bigint::BigInt;
use serde_json::{json, Value};

const Q0: VarId = VarId::Inner(0);

/// Largest `n` of the exhaustive binomial identity checks.
const BINOMIAL_BOUND: i64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
pub enum Suite {
    /// Closed formulas against the reflection chain on every orientation.
    CrossPipeline,
    /// Homogeneous mesh identity and closed form for `1 ≤ r ≤ rmax`.
    Formhom,
    /// The two binomial identities, exhaustively.
    Binolem,
    /// Euler characteristics across a sink reflection, against point counts.
    Bgpeuler,
    /// The type-two Euler identity on extensions by a simple.
    TypeTwo,
    /// Duality between a quiver and its opposite, plus structural checks.
    Duality,
    /// Closed formulas against the point-count oracle, root by root.
    Oracle,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::CrossPipeline => "cross-pipeline",
            Suite::Formhom => "formhom",
            Suite::Binolem => "binolem",
            Suite::Bgpeuler => "bgpeuler",
            Suite::TypeTwo => "type-two",
            Suite::Duality => "duality",
            Suite::Oracle => "oracle",
        }
    }
}

/// Depth settings shared by the suites.
#[derive(Clone, Debug)]
pub struct Depth {
    /// Largest multiple of `δ` for `formhom`.
    pub rmax: usize,
    /// Root height bound; each suite has its own default.
    pub height: Option<i64>,
    /// Number of primes used to test the Euler hypothesis in `bgpeuler`.
    pub primes: usize,
}

/// The outcome of one suite.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    pub counterexample: Option<String>,
    /// Roots left out because no matrix model of them is available.
    pub skipped: usize,
    /// Per-item results, filled by suites that list their items.
    pub items: Vec<(String, bool)>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite, checks: 0, counterexample: None, skipped: 0, items: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Records one check; the first failure becomes the counterexample.
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(what());
        }
        ok
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "suite": self.suite.name(),
            "passed": self.passed(),
            "checks": self.checks,
            "counterexample": self.counterexample,
            "skipped": self.skipped,
        });
        if !self.items.is_empty() {
            v["items"] =
                self.items.iter().map(|(k, ok)| json!({ "root": k, "equal": ok })).collect();
        }
        v
    }
}

pub fn run(suite: Suite, q: &QuiverDn, depth: &Depth, engine: &Engine) -> Result<SuiteReport> {
    match suite {
        Suite::CrossPipeline => cross_pipeline(q.n(), depth, engine),
        Suite::Formhom => formhom(q, depth, engine),
        Suite::Binolem => Ok(binolem()),
        Suite::Bgpeuler => bgpeuler(q.n(), depth),
        Suite::TypeTwo => type_two(q.n(), depth),
        Suite::Duality => duality(q.n(), depth, engine),
        Suite::Oracle => oracle(q, depth, engine),
    }
}

/// Whether the oracle can build the indecomposable of `alpha`: every real
/// root except tube modules of quasi-length above the rank on D̃ₙ, `n ≥ 5`,
/// which are neither reflected simples, thin, nor bricks.
fn realizable(q: &QuiverDn, alpha: &DimVec) -> Result<bool> {
    if q.n() == 4 {
        return Ok(true);
    }
    Ok(!matches!(
        classify_root(q, alpha)?.decomposition,
        Decomposition::Tube { r, l, .. } if r >= 1 && l >= 1
    ))
}

fn structured(f: &LaurentPoly, dim: &DimVec) -> bool {
    f.is_nonnegative()
        && f.coeff(&Monomial::one()) == BigInt::from(1)
        && f.coeff(&dim.monomial()) == BigInt::from(1)
        && f.terms().all(|(m, _)| DimVec::from_monomial(dim.n(), m).le(dim))
}

fn cross_pipeline(n: usize, depth: &Depth, engine: &Engine) -> Result<SuiteReport> {
    let height = depth.height.unwrap_or(12 - 2 * (n as i64 - 4)).max(1);
    let mut rep = SuiteReport::new(Suite::CrossPipeline);
    for q in QuiverDn::all_orientations(n) {
        for a in positive_real_roots(&q, height) {
            let f = engine.f_root(&q, &a)?;
            let g = engine.reflection_chain(&q, &a)?;
            rep.check(f == g && structured(&f, &a), || format!("{q} {a}"));
        }
    }
    Ok(rep)
}

fn formhom(q: &QuiverDn, depth: &Depth, engine: &Engine) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::Formhom);
    for r in 1..=depth.rmax {
        let lhs = &engine.f_homog(q, r + 1)? * &engine.f_homog(q, r - 1)?;
        let mid = engine.f_homog(q, r)?;
        let rhs = &(&mid * &mid) - &LaurentPoly::monomial(q.delta().scale(r as i64).monomial());
        let closed = engine.homog_closed_form(q, r)? == mid;
        rep.check(lhs == rhs && closed, || format!("r = {r} on {q}"));
    }
    Ok(rep)
}

fn binolem() -> SuiteReport {
    let mut rep = SuiteReport::new(Suite::Binolem);
    for n in 0..=BINOMIAL_BOUND {
        for t in 0..=n {
            for m in 0..=t {
                rep.check(binolem_part1(m, t, n), || format!("part 1: m={m} t={t} n={n}"));
            }
        }
    }
    for t in 0..=BINOMIAL_BOUND {
        for n in 0..t {
            for m in 0..=n {
                rep.check(binolem_part2(m, n, t), || format!("part 2: m={m} n={n} t={t}"));
            }
        }
    }
    rep
}

fn chi(f: &LaurentPoly, d: &DimVec) -> BigInt {
    if d.is_nonneg() {
        f.coeff(&d.monomial())
    } else {
        BigInt::from(0)
    }
}

/// Reflects at the sink `q₀` of the subspace orientation and compares the
/// Euler characteristics of the reflected module with the propagation
/// formula, for every `e` satisfying the covering hypothesis at all tested primes.
fn bgpeuler(n: usize, depth: &Depth) -> Result<SuiteReport> {
    let q = QuiverDn::subspace(n);
    let sq = DimVec::simple(n, Q0);
    let height = depth.height.unwrap_or(10).min(ORACLE_DIM_LIMIT);
    let mut rep = SuiteReport::new(Suite::Bgpeuler);
    for alpha in positive_real_roots(&q, height) {
        if alpha.get(Q0) < 2 || q.reflect_dim(Q0, &alpha).height() > ORACLE_DIM_LIMIT {
            continue;
        }
        if !realizable(&q, &alpha)? || !realizable(&q.reflect(Q0), &q.reflect_dim(Q0, &alpha))? {
            rep.skipped += 1;
            continue;
        }
        let m = rep_from_root(&q, &alpha)?;
        let f = fpoly_oracle(&m)?;
        let sf = fpoly_oracle(&reflect_rep(&m, Q0)?)?;
        let primes = good_primes(&m, depth.primes.max(1))?;
        for e in sub_dimensions(&alpha) {
            let mut covered = true;
            for &p in &primes {
                covered &= count_points(&m, &e, p)? == count_points_covered(&m, &e, Q0, p)?;
            }
            if !covered {
                continue;
            }
            let se = q.reflect_dim(Q0, &e);
            let table: Vec<BigInt> = (0..=2).map(|j| chi(&f, &e.add(&sq.scale(j)))).collect();
            let t = alpha.get(Q0) - e.get(Q0);
            for mm in 0..=2usize {
                let got = chi(&sf, &se.sub(&sq.scale(mm as i64)));
                let want = euler_reflect(&table, se.get(Q0), t, mm);
                rep.check(got == want, || format!("{alpha}, e = {e}, m = {mm}: {got} vs {want}"));
            }
        }
    }
    Ok(rep)
}

/// `B` with the simple `S_q` at the sink `q` divided out.
fn quotient_by_simple(b: &MatrixRep, q: VarId) -> Result<MatrixRep> {
    let dims = b.dims().sub(&DimVec::simple(b.dims().n(), q));
    let maps: BTreeMap<_, _> = b
        .quiver()
        .arrows()
        .into_iter()
        .map(|ar| {
            let m = if ar.target == q {
                IntMatrix::zeros(0, dims.get(ar.source) as usize)
            } else {
                b.map(ar.edge).clone()
            };
            (ar.edge, m)
        })
        .collect();
    MatrixRep::new(b.quiver().clone(), dims, maps)
}

/// Checks the type-two identity on the worked example with `q = q₁`, and on
/// every extension `0 → S_q → B → N → 0` at a sink `q` where `dim B_q = 1` and
/// exactly one arrow into `q` carries a one-dimensional space; there
/// `Hom(S_q, B)` is a line, `Ext(B, S_q) = 0`, and the Ext condition on
/// subrepresentations of `N` holds whenever `e` vanishes at that neighbour.
fn type_two(n: usize, depth: &Depth) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(Suite::TypeTwo);
    let example = QuiverDn::subspace(5).opposite();
    let b = DimVec::parse_pairs(5, "a=1,b=1,0=2,1=2,c=1")?;
    let nn = DimVec::parse_pairs(5, "a=1,b=1,0=2,1=1,c=1")?;
    let e2 = DimVec::parse_pairs(5, "a=1,b=1,0=1,1=2,c=1")?;
    let fb = fpoly_oracle(&rep_from_root(&example, &b)?)?;
    let fnn = fpoly_oracle(&rep_from_root(&example, &nn)?)?;
    let shift = e2.sub(&DimVec::simple(5, VarId::Inner(1)));
    let (cb, cs, cn) = (chi(&fb, &e2), chi(&fnn, &shift), chi(&fnn, &e2));
    rep.check(cb == BigInt::from(2) && cn == BigInt::from(0), || {
        format!("worked example: χ_B = {cb}, χ_N = {cn}")
    });
    rep.check(ident(&cb, &cs, &cn), || "worked example identity".into());

    let height = depth.height.unwrap_or(9).min(ORACLE_DIM_LIMIT);
    for quiver in QuiverDn::all_orientations(n) {
        for beta in positive_real_roots(&quiver, height) {
            for q in quiver.vertices() {
                if !quiver.is_sink(q) || beta.get(q) != 1 || beta == DimVec::simple(n, q) {
                    continue;
                }
                let feeding: Vec<VarId> = quiver
                    .arrows()
                    .into_iter()
                    .filter(|ar| ar.target == q && beta.get(ar.source) > 0)
                    .map(|ar| ar.source)
                    .collect();
                if feeding.len() != 1 || beta.get(feeding[0]) != 1 {
                    continue;
                }
                if !realizable(&quiver, &beta)? {
                    rep.skipped += 1;
                    continue;
                }
                let bm = rep_from_root(&quiver, &beta)?;
                let fb = fpoly_oracle(&bm)?;
                let fnn = fpoly_oracle(&quotient_by_simple(&bm, q)?)?;
                let sq = DimVec::simple(n, q);
                for e in sub_dimensions(&beta) {
                    if e.get(feeding[0]) != 0 {
                        continue;
                    }
                    let (cb, cs, cn) = (chi(&fb, &e), chi(&fnn, &e.sub(&sq)), chi(&fnn, &e));
                    rep.check(ident(&cb, &cs, &cn), || format!("{quiver} B = {beta}, e = {e}"));
                }
            }
        }
    }
    Ok(rep)
}

fn ident(b: &BigInt, shift: &BigInt, n: &BigInt) -> bool {
    match (i64::try_from(b), i64::try_from(shift), i64::try_from(n)) {
        (Ok(b), Ok(s), Ok(n)) => type_two_identity(b, s, n),
        _ => false,
    }
}

fn duality(n: usize, depth: &Depth, engine: &Engine) -> Result<SuiteReport> {
    let height = depth.height.unwrap_or(10 - 2 * (n as i64 - 4)).max(1);
    let mut rep = SuiteReport::new(Suite::Duality);
    for q in QuiverDn::all_orientations(n) {
        let op = q.opposite();
        for a in positive_real_roots(&q, height) {
            let f = engine.reflection_chain(&q, &a)?;
            let g = engine.reflection_chain(&op, &a)?;
            let ok = dual_fpoly(&g, &a) == f && dual_fpoly(&f, &a) == g && structured(&f, &a);
            rep.check(ok, || format!("{q} {a}"));
        }
    }
    Ok(rep)
}

fn oracle(q: &QuiverDn, depth: &Depth, engine: &Engine) -> Result<SuiteReport> {
    let height = depth.height.unwrap_or(10).min(ORACLE_DIM_LIMIT);
    let mut rep = SuiteReport::new(Suite::Oracle);
    for a in positive_real_roots(q, height) {
        if !realizable(q, &a)? {
            rep.skipped += 1;
            continue;
        }
        let f = fpoly_oracle(&rep_from_root(q, &a)?)?;
        let ok = rep.check(f == engine.f_root(q, &a)?, || format!("{q} {a}"));
        rep.items.push((a.to_string(), ok));
    }
    Ok(rep)
}
