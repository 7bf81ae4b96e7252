//! The skew dodecahedron: its twelve facet planes, the thirty edge lines,
//! exhaustive facet covers of the edges, and the ideal of the edge lines.

use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::arrangements::{sample_points, ArrangementError, LinearSubspace};
use crate::groebner::{hilbert, intersect_all, member, GroebnerConfig, GroebnerError, Ideal};
use crate::invariants::{minimal_generator_degrees, InvariantError};
use crate::polyring::{integer, product, Monomial, Polynomial, VarRing};
use crate::report::VerificationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DodecaError {
    #[error("found {0} edge lines instead of 30")]
    EdgeCount(usize),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
}

const PLANES: [[i64; 4]; 12] = [
    [5, 0, -3, -2],
    [6, 0, 3, -2],
    [5, -2, 0, -3],
    [4, -2, 0, 3],
    [5, -3, -2, 0],
    [5, 3, -2, 0],
    [6, 0, 3, 2],
    [5, 0, -3, 2],
    [6, 2, 0, 3],
    [5, 2, 0, -3],
    [4, 3, 2, 0],
    [6, -3, 2, 0],
];

/// A facet half-space `c0 + c1 x1 + c2 x2 + c3 x3 >= 0`, numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HalfSpace {
    pub index: usize,
    /// `[c0, c1, c2, c3]`.
    pub coeffs: [i64; 4],
}

impl HalfSpace {
    pub fn linear_part(&self) -> [i64; 3] {
        [self.coeffs[1], self.coeffs[2], self.coeffs[3]]
    }

    /// The affine form in `k[x1, x2, x3]`.
    pub fn form(&self, ring: &Arc<VarRing>) -> Polynomial {
        let mut terms = vec![(integer(self.coeffs[0]), Monomial::one(3))];
        terms.extend((0..3).map(|v| (integer(self.coeffs[v + 1]), Monomial::var(3, v))));
        Polynomial::from_terms(ring, terms)
    }

    /// The homogenized form in `k[x0, x1, x2, x3]`.
    pub fn homogenized(&self, ring: &Arc<VarRing>) -> Polynomial {
        Polynomial::from_terms(ring, (0..4).map(|v| (integer(self.coeffs[v]), Monomial::var(4, v))))
    }

    pub fn value_at(&self, x: &[BigRational; 3]) -> BigRational {
        let c = |k: usize| BigRational::from_integer(self.coeffs[k].into());
        c(0) + c(1) * &x[0] + c(2) * &x[1] + c(3) * &x[2]
    }

    pub fn is_parallel(&self, other: &HalfSpace) -> bool {
        cross(self.linear_part(), other.linear_part()) == [0, 0, 0]
    }
}

pub fn dodeca_planes() -> Vec<HalfSpace> {
    PLANES.iter().enumerate().map(|(i, &coeffs)| HalfSpace { index: i + 1, coeffs }).collect()
}

fn cross(a: [i64; 3], b: [i64; 3]) -> [i64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// The projective closure of the line where two facet planes meet.
#[derive(Clone, Debug)]
pub struct ProjLine {
    /// Facet indices, numbered from 1, smaller first.
    pub facets: (usize, usize),
    pub subspace: LinearSubspace,
    /// Parameter interval `[lo, hi]` of the polytope edge along `point + t * direction`.
    pub segment: (BigRational, BigRational),
    pub point: [BigRational; 3],
    pub direction: [i64; 3],
}

/// A point on both planes, by Cramer's rule on a nonsingular 2x2 minor.
fn common_point(a: &HalfSpace, b: &HalfSpace) -> [BigRational; 3] {
    let (na, nb) = (a.linear_part(), b.linear_part());
    let (ra, rb) = (-a.coeffs[0], -b.coeffs[0]);
    for (i, j) in (0..3).tuple_combinations() {
        let det = na[i] * nb[j] - na[j] * nb[i];
        if det != 0 {
            let mut x: [BigRational; 3] = Default::default();
            x[i] = BigRational::new((ra * nb[j] - rb * na[j]).into(), det.into());
            x[j] = BigRational::new((na[i] * rb - nb[i] * ra).into(), det.into());
            return x;
        }
    }
    unreachable!("planes are not parallel")
}

/// `Some([lo, hi])` when the line meets the polytope in a segment of
/// positive length.
fn polytope_segment(
    planes: &[HalfSpace],
    point: &[BigRational; 3],
    dir: [i64; 3],
) -> Option<(BigRational, BigRational)> {
    let (mut lo, mut hi): (Option<BigRational>, Option<BigRational>) = (None, None);
    for h in planes {
        let c0 = h.value_at(point);
        let d = h.linear_part();
        let c1 = BigRational::from_integer((d[0] * dir[0] + d[1] * dir[1] + d[2] * dir[2]).into());
        // c0 + c1 t >= 0
        if c1.is_zero() {
            if c0.is_negative() {
                return None;
            }
            continue;
        }
        let t = -&c0 / &c1;
        if c1.is_positive() {
            lo = Some(lo.map_or(t.clone(), |l| l.max(t)));
        } else {
            hi = Some(hi.map_or(t.clone(), |u| u.min(t)));
        }
    }
    match (lo, hi) {
        (Some(l), Some(u)) if u > l => Some((l, u)),
        _ => None,
    }
}

/// Lines through pairs of non-parallel facet planes that carry an edge,
/// sorted by facet pair.
pub fn edge_lines() -> Result<Vec<ProjLine>, DodecaError> {
    let planes = dodeca_planes();
    let ring = VarRing::projective(3);
    let mut out = Vec::new();
    for (a, b) in planes.iter().tuple_combinations() {
        if a.is_parallel(b) {
            continue;
        }
        let dir = cross(a.linear_part(), b.linear_part());
        let point = common_point(a, b);
        if let Some(segment) = polytope_segment(&planes, &point, dir) {
            let subspace = LinearSubspace::new(&ring, vec![a.homogenized(&ring), b.homogenized(&ring)])?;
            out.push(ProjLine { facets: (a.index, b.index), subspace, segment, point, direction: dir });
        }
    }
    if out.len() != 30 {
        return Err(DodecaError::EdgeCount(out.len()));
    }
    Ok(out)
}

/// `incidence[f][l]`: facet `f + 1` contains line `l`.
pub fn incidence(lines: &[ProjLine]) -> Vec<Vec<bool>> {
    (1..=12).map(|f| lines.iter().map(|l| l.facets.0 == f || l.facets.1 == f).collect()).collect()
}

/// Facets sharing an edge line with facet `f`.
pub fn neighbours(lines: &[ProjLine], f: usize) -> Vec<usize> {
    lines
        .iter()
        .filter_map(|l| match l.facets {
            (a, b) if a == f => Some(b),
            (a, b) if b == f => Some(a),
            _ => None,
        })
        .sorted()
        .collect()
}

/// All `k`-subsets of facets (numbered from 1) meeting every edge line.
pub fn cover_search(k: usize) -> Result<Vec<Vec<usize>>, DodecaError> {
    let lines = edge_lines()?;
    Ok(covers(&lines, k))
}

pub fn covers(lines: &[ProjLine], k: usize) -> Vec<Vec<usize>> {
    let masks: Vec<u16> = lines.iter().map(|l| (1u16 << (l.facets.0 - 1)) | (1u16 << (l.facets.1 - 1))).collect();
    let subsets: Vec<Vec<usize>> = (1..=12).combinations(k).collect();
    subsets
        .into_par_iter()
        .filter(|s| {
            let chosen: u16 = s.iter().map(|&f| 1u16 << (f - 1)).sum();
            masks.iter().all(|m| m & chosen != 0)
        })
        .collect()
}

/// The ideal of the thirty edge lines and its minimal generator degrees.
#[derive(Clone, Debug)]
pub struct DodecaIdeal {
    pub ideal: Ideal,
    /// Number of line ideals folded into `ideal`.
    pub completed: usize,
    /// Minimal generators per degree, present once the fold completes.
    pub profile: Option<BTreeMap<u32, usize>>,
}

impl DodecaIdeal {
    pub fn is_complete(&self) -> bool {
        self.completed == 30
    }
}

/// Pairs reduced per intersection step before the fold gives up.
pub const DEFAULT_STEP_BUDGET: usize = 5_000_000;

pub fn default_config() -> GroebnerConfig {
    GroebnerConfig { max_pairs: Some(DEFAULT_STEP_BUDGET), ..GroebnerConfig::default() }
}

pub fn dodeca_ideal() -> Result<DodecaIdeal, DodecaError> {
    dodeca_ideal_with(&default_config())
}

pub fn dodeca_ideal_with(cfg: &GroebnerConfig) -> Result<DodecaIdeal, DodecaError> {
    fold_lines(&edge_lines()?, cfg)
}

fn fold_lines(lines: &[ProjLine], cfg: &GroebnerConfig) -> Result<DodecaIdeal, DodecaError> {
    let ideals: Vec<Ideal> = lines.iter().map(|l| l.subspace.ideal()).collect();
    let fold = intersect_all(&ideals, cfg)?;
    let profile = if fold.is_complete() {
        let top = fold
            .ideal
            .groebner(fold.ideal.ring().canonical_order())
            .iter()
            .filter_map(|g| g.total_degree())
            .max()
            .unwrap_or(0);
        Some(minimal_generator_degrees(&fold.ideal, top)?)
    } else {
        None
    };
    Ok(DodecaIdeal { ideal: fold.ideal, completed: fold.completed, profile })
}

/// Products of eight of the homogenized facet forms, chosen with a fixed seed.
pub fn sample_facet_products(count: usize, seed: u64) -> Vec<(Vec<usize>, Polynomial)> {
    let ring = VarRing::projective(3);
    let planes = dodeca_planes();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut idx: Vec<usize> = sample(&mut rng, 12, 8).into_iter().collect();
            idx.sort_unstable();
            let factors: Vec<Polynomial> = idx.iter().map(|&i| planes[i].homogenized(&ring)).collect();
            (idx.iter().map(|i| i + 1).collect(), product(&ring, &factors))
        })
        .collect()
}

#[derive(Serialize)]
struct PlaneJson {
    index: usize,
    form: String,
}

/// Runs every check and returns the report together with a JSON summary.
pub fn dodeca_report(cfg: &GroebnerConfig) -> Result<(VerificationReport, serde_json::Value), DodecaError> {
    let mut report = VerificationReport::new("dodecahedron");
    let planes = dodeca_planes();
    let affine = VarRing::affine(3);
    let pairs = planes.iter().tuple_combinations::<(_, _)>().count();
    let parallel: Vec<(usize, usize)> =
        planes.iter().tuple_combinations().filter(|(a, b)| a.is_parallel(b)).map(|(a, b)| (a.index, b.index)).collect();
    report
        .check(
            "opposite facets (i, i+6) are exactly the parallel pairs",
            parallel == (1..=6).map(|i| (i, i + 6)).collect_vec(),
        )
        .detail(format!("{pairs} pairs, {} parallel", parallel.len()));
    report.check("origin is interior", planes.iter().all(|h| h.coeffs[0] > 0));

    let lines = report.timed("edge lines", |_| edge_lines())?;
    let inc = incidence(&lines);
    report
        .check(
            "each facet contains exactly 5 edge lines",
            inc.iter().all(|row| row.iter().filter(|&&b| b).count() == 5),
        )
        .detail(format!("{} edge lines among {} non-parallel pairs", lines.len(), pairs - parallel.len()));
    let share = |a: usize, b: usize| (0..lines.len()).filter(|&l| inc[a - 1][l] && inc[b - 1][l]).count();
    let adjacency_ok =
        (1..=12).tuple_combinations().all(|(a, b)| share(a, b) <= 1) && parallel.iter().all(|&(a, b)| share(a, b) == 0);
    report.check("facets share at most one edge line, opposite facets none", adjacency_ok);

    let (c8, c9) = report.timed("cover search", |_| (covers(&lines, 8), covers(&lines, 9)));
    report.check("no 8 facets cover all edge lines", c8.is_empty()).detail("495 subsets searched");
    report.check("some 9 facets cover all edge lines", !c9.is_empty()).detail(format!("{} covers of size 9", c9.len()));
    let argument = c9.iter().all(|cov| {
        (1..=12).filter(|f| !cov.contains(f)).all(|f| neighbours(&lines, f).iter().all(|g| cov.contains(g)))
    });
    report.check("an excluded facet forces all five neighbours into a 9-cover", argument);

    let ring = VarRing::projective(3);
    let di = report.timed("intersection fold", |_| fold_lines(&lines, cfg))?;
    let mut profile_json = serde_json::Value::Null;
    if let Some(profile) = &di.profile {
        let ideal = &di.ideal;
        report
            .check("minimally generated by 10 forms of degree 8", *profile == BTreeMap::from([(8, 10)]))
            .detail(format!("{profile:?}"));
        profile_json =
            serde_json::to_value(profile.iter().map(|(d, r)| (d.to_string(), r)).collect::<BTreeMap<_, _>>())
                .expect("serializable");
        let h = hilbert(ideal, ring.canonical_order())?;
        report
            .check("dimension 2 and degree 30", h.dim == 2 && h.degree == 30)
            .detail(format!("dim {} degree {}", h.dim, h.degree));
        let bad = report.timed("line sampling", |_| {
            lines.par_iter().find_map_first(|l| {
                let pts = sample_points(&l.subspace, 3).expect("parametrized");
                pts.iter().find_map(|pt| {
                    ideal
                        .gens()
                        .iter()
                        .any(|g| !g.evaluate(pt).expect("length").is_zero())
                        .then(|| format!("line {:?}", l.facets))
                })
            })
        });
        let c = report.check("generators vanish at 3 points of every edge line", bad.is_none());
        if let Some(w) = bad {
            c.detail(w);
        }
        let products = sample_facet_products(20, 8);
        let inside = report.timed("facet products", |_| {
            products.iter().find(|(_, f)| member(f, ideal, ring.canonical_order())).map(|(idx, _)| idx.clone())
        });
        let c = report.check("20 sampled products of 8 facet forms lie outside the ideal", inside.is_none());
        if let Some(idx) = inside {
            c.detail(format!("facets {idx:?}"));
        }
    } else {
        report
            .check("intersection fold completed within the step budget", false)
            .detail(format!("{} of 30 line ideals folded", di.completed));
    }

    let json = serde_json::json!({
        "planes": planes.iter().map(|h| PlaneJson { index: h.index, form: h.form(&affine).to_string() }).collect_vec(),
        "line_selection": "lines through two facet planes that meet the polytope in an edge of positive length",
        "edge_lines": lines.iter().map(|l| [l.facets.0, l.facets.1]).collect_vec(),
        "incidence": inc.iter().map(|row| row.iter().map(|&b| u8::from(b)).collect_vec()).collect_vec(),
        "covers": { "8": c8, "9": c9 },
        "fold": { "completed": di.completed, "total": 30 },
        "generator_degrees": profile_json,
    });
    Ok((report, json))
}
