use std::sync::Arc;

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;

use super::{components, family_generators, generator_degree, partitions, sample_points, subsets};
use super::{ArrangementError, Family, FamilySpec, LinearSubspace};
use crate::groebner::{hilbert, ideals_equal, intersect_all, member, FoldOutcome, GroebnerConfig, Ideal};
use crate::linalg::rank;
use crate::polyring::{product, Coeff, Polynomial, VarRing};
use crate::report::VerificationReport;

/// `<x_i^m - x_j^m : i, j in a common block>`, variables numbered from 1.
pub fn block_ideal(ring: &Arc<VarRing>, blocks: &[Vec<usize>], m: u32) -> Ideal {
    let gens = blocks
        .iter()
        .flat_map(|b| b.iter().copied().tuple_combinations())
        .map(|(i, j)| &Polynomial::var(ring, i - 1).pow(m) - &Polynomial::var(ring, j - 1).pow(m))
        .collect();
    Ideal::new(ring, gens).expect("same ring")
}

/// Nonsingleton blocks and the power-difference ideal they define.
pub type BlockIdeal = (Vec<Vec<usize>>, Ideal);

/// The rational ideals whose intersection the family generators cut out,
/// with their nonsingleton blocks: one per `p`-subset for `LiLi`, one per
/// partition into `p` blocks for `KL`.
pub fn block_ideals(spec: &FamilySpec) -> Result<Vec<BlockIdeal>, ArrangementError> {
    let ring = spec.ring();
    let blocks: Vec<Vec<Vec<usize>>> = match spec.family {
        Family::LiLi => subsets(spec.n, spec.p).into_iter().map(|s| vec![s]).collect(),
        Family::KL => partitions(spec.n, spec.p)?
            .iter()
            .map(|l| l.blocks().iter().filter(|b| b.len() > 1).cloned().collect())
            .collect(),
        _ => return Err(ArrangementError::InvalidSpec(format!("{spec}: no block description"))),
    };
    Ok(blocks
        .into_iter()
        .map(|b| {
            let i = block_ideal(&ring, &b, spec.m);
            (b, i)
        })
        .collect())
}

pub fn brute_force_ideal(comps: &[LinearSubspace]) -> Result<Ideal, ArrangementError> {
    Ok(brute_force_ideal_with(comps, &GroebnerConfig::default())?.ideal)
}

/// Left fold of pairwise intersections of the component ideals.
pub fn brute_force_ideal_with(comps: &[LinearSubspace], cfg: &GroebnerConfig) -> Result<FoldOutcome, ArrangementError> {
    if comps.is_empty() {
        return Err(ArrangementError::NoComponents);
    }
    let ideals: Vec<Ideal> = comps.iter().map(LinearSubspace::ideal).collect();
    Ok(intersect_all(&ideals, cfg)?)
}

/// A generator of one ideal missing from the other, in canonical text.
fn difference_witness(a: &Ideal, b: &Ideal) -> Option<String> {
    let o = a.ring().canonical_order();
    a.gens()
        .iter()
        .find(|g| !member(g, b, o))
        .or_else(|| b.gens().iter().find(|g| !member(g, a, o)))
        .map(|g| g.to_string())
}

pub(super) fn equality_check(report: &mut VerificationReport, name: &str, a: &Ideal, b: &Ideal) {
    let o = a.ring().canonical_order().clone();
    let eq = ideals_equal(a, b, &o).expect("same ring");
    let c = report.check(name, eq);
    if !eq {
        if let Some(w) = difference_witness(a, b) {
            c.witness(w);
        }
    }
}

/// Exact verification of the generator identity for one family instance.
pub fn verify_family(spec: &FamilySpec) -> VerificationReport {
    let mut report = VerificationReport::new(spec.to_string());
    let ring = spec.ring();
    let gens = report.timed("construct", |_| family_generators(spec));
    report.check("generator count", gens.len() == spec.generator_count()).detail(format!(
        "{} generators, expected {}",
        gens.len(),
        spec.generator_count()
    ));
    let expected_degrees: Vec<u32> = match spec.family {
        Family::LiLi => partitions(spec.n, spec.p - 1)
            .expect("valid spec")
            .iter()
            .map(|l| generator_degree(spec, Some(l)))
            .collect(),
        _ => vec![generator_degree(spec, None); gens.len()],
    };
    let degrees: Vec<u32> = gens.iter().map(|g| g.total_degree().unwrap_or(0)).collect();
    report.check("generator degrees", degrees == expected_degrees).detail(format!("{degrees:?}"));
    let gen_ideal = Ideal::new(&ring, gens.clone()).expect("same ring");

    match components(spec) {
        Ok(comps) => {
            report.check("component count", comps.len() == spec.component_count()).detail(format!(
                "{} components, expected {}",
                comps.len(),
                spec.component_count()
            ));
            report.check("component codimension", comps.iter().all(|c| c.codim() == spec.codim()));
            let bad = report.timed("vanishing", |_| {
                comps.par_iter().find_map_first(|c| {
                    let pts = sample_points(c, 5).expect("parametrized");
                    pts.iter().find_map(|pt| {
                        gens.iter()
                            .find(|g| !g.evaluate(pt).expect("point length").is_zero())
                            .map(|g| format!("{g} at ({})", pt.iter().join(", ")))
                    })
                })
            });
            let c = report.check("generators vanish on sampled component points", bad.is_none());
            if let Some(w) = bad {
                c.witness(w);
            }
            let oracle = report.timed("brute force", |_| brute_force_ideal(&comps).expect("nonempty"));
            report.timed("oracle equality", |r| {
                equality_check(r, "ideal equals intersection of component ideals", &gen_ideal, &oracle)
            });
        }
        Err(ArrangementError::IrrationalComponents(m)) => {
            report.skip(
                "ideal equals intersection of component ideals",
                format!("components for m = {m} are not rational"),
            );
        }
        Err(e) => {
            report.check("components", false).detail(e.to_string());
        }
    }

    if matches!(spec.family, Family::LiLi | Family::KL) {
        let pieces = block_ideals(spec).expect("LiLi or KL");
        let folded = report.timed("rational identity", |_| {
            intersect_all(&pieces.iter().map(|(_, i)| i.clone()).collect_vec(), &GroebnerConfig::default())
                .expect("nonempty")
                .ideal
        });
        equality_check(&mut report, "ideal equals intersection of power-difference ideals", &gen_ideal, &folded);
        let wrong = report.timed("block ideal invariants", |_| {
            pieces.iter().find_map(|(blocks, i)| {
                let codim: usize = blocks.iter().map(|b| b.len() - 1).sum();
                let h = hilbert(i, ring.canonical_order()).expect("homogeneous");
                let degree = u64::from(spec.m).pow(codim as u32);
                (h.codim != codim || h.degree != degree).then(|| {
                    format!(
                        "blocks {blocks:?}: codim {} degree {}, expected codim {codim} degree {degree}",
                        h.codim, h.degree
                    )
                })
            })
        });
        let c =
            report.check("power-difference ideals have codim |b|-1 and degree m^(|b|-1) per block", wrong.is_none());
        if let Some(w) = wrong {
            c.detail(w);
        }
    }
    report
}

/// Choice ideals `<L_1, ..., L_t>` picking one linear factor from each
/// entry, in lexicographic order of the choices.
pub fn ci_decomposition(entries: &[(Polynomial, Vec<Polynomial>)]) -> Result<Vec<LinearSubspace>, ArrangementError> {
    let Some((first, _)) = entries.first() else {
        return Err(ArrangementError::NoComponents);
    };
    let ring = first.ring().clone();
    for (k, (q, factors)) in entries.iter().enumerate() {
        if product(&ring, factors) != *q {
            return Err(ArrangementError::FactorMismatch(k));
        }
    }
    let mut out: Vec<LinearSubspace> = Vec::new();
    for choice in entries.iter().map(|(_, f)| f.iter()).multi_cartesian_product() {
        let s = LinearSubspace::new(&ring, choice.into_iter().cloned().collect())?;
        if out.iter().any(|o| o.same_subspace(&s)) {
            return Err(ArrangementError::DuplicateChoice(s.to_string()));
        }
        out.push(s);
    }
    Ok(out)
}

/// Whether the `n x (p+1)` matrix with rows `(1, x_i^m, ..., x_i^(pm))` has
/// rank at most `p` at `point`.
pub fn truncation_rank_test(n: usize, m: u32, p: usize, point: &[Coeff]) -> Result<bool, ArrangementError> {
    if point.len() != n {
        return Err(ArrangementError::PointLength { expected: n, found: point.len() });
    }
    let rows: Vec<Vec<Coeff>> = point
        .iter()
        .map(|x| {
            let xm = num_traits::pow(x.clone(), m as usize);
            (0..=p).map(|k| num_traits::pow(xm.clone(), k)).collect()
        })
        .collect();
    Ok(rank(&rows) <= p)
}
