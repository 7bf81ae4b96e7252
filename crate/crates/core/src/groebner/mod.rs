//! Groebner bases over the rationals: division, Buchberger completion,
//! elimination, intersection, ideal equality, and Hilbert functions.

mod convert;
mod domain;
mod hilbert;
mod ideal;
pub mod io;
mod kernel;

use std::sync::Arc;

use num_bigint::BigInt;
use thiserror::Error;

pub use domain::PRESCREEN_PRIME;
pub use hilbert::{hf_values, hilbert, hilbert_of_monomials, HilbertData};
pub use ideal::Ideal;
pub use io::{format_ideal, parse_ideal};
pub use kernel::{GroebnerConfig, GroebnerStats};

use crate::polyring::{Monomial, MonomialOrder, PolyError, Polynomial, VarRing};
use convert::{monic_rational, scaled_rational, to_integer, to_zp};
use domain::{Integers, Zp};
use kernel::{check_groebner, complete, reduce, Completion, KPoly, Reducer, Scale};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("ideals or polynomials live in different rings")]
    RingMismatch,
    #[error("monomial order has the wrong number of variables")]
    OrderMismatch,
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("ideal is not homogeneous")]
    NonHomogeneous,
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("step budget exhausted after {pairs} S-pair reductions")]
    BudgetExceeded { pairs: usize },
    #[error("ideal file, line {line}: {msg}")]
    File { line: usize, msg: String },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Remainder of `f` under the division algorithm by `basis`, always using the
/// first basis element whose leading monomial divides the current term.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    Divider::new(basis, order).normal_form(f)
}

/// A basis prepared for repeated normal form computations.
pub struct Divider {
    order: MonomialOrder,
    reducers: Vec<Reducer<BigInt>>,
}

impl Divider {
    pub fn new(basis: &[Polynomial], order: &MonomialOrder) -> Divider {
        let reducers = basis.iter().filter(|g| !g.is_zero()).map(|g| Reducer::new(to_integer(g, order))).collect();
        Divider { order: order.clone(), reducers }
    }

    /// Whether some leading monomial divides `m`.
    pub fn is_reducible(&self, m: &Monomial) -> bool {
        self.reducers.iter().any(|r| r.poly.lm().divides(m))
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        if f.is_zero() {
            return f.clone();
        }
        let refs: Vec<&Reducer<BigInt>> = self.reducers.iter().collect();
        let (_, content) = f.primitive_integer_terms();
        let start = to_integer(f, &self.order);
        let mut scale = Scale { mul: BigInt::from(1), div: BigInt::from(1) };
        let r = reduce(&Integers, &self.order, start, &refs, true, Some(&mut scale));
        // r = (mul/div) * (f / content) mod basis
        scaled_rational(f.ring(), &r, &scale.div, &scale.mul).scale(&content)
    }
}

/// Reduced Groebner basis, monic, sorted by increasing leading monomial.
pub fn buchberger(gens: &[Polynomial], order: &MonomialOrder) -> Vec<Polynomial> {
    buchberger_with(gens, order, &GroebnerConfig::default()).expect("no budget configured")
}

pub fn buchberger_with(
    gens: &[Polynomial],
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<Vec<Polynomial>, GroebnerError> {
    buchberger_stats(gens, order, cfg).map(|(gb, _)| gb)
}

pub fn buchberger_stats(
    gens: &[Polynomial],
    order: &MonomialOrder,
    cfg: &GroebnerConfig,
) -> Result<(Vec<Polynomial>, GroebnerStats), GroebnerError> {
    let Some(first) = gens.iter().find(|g| !g.is_zero()) else {
        return Ok((Vec::new(), GroebnerStats::default()));
    };
    let ring = first.ring().clone();
    if order.nvars() != ring.count() {
        return Err(GroebnerError::OrderMismatch);
    }
    if gens.iter().any(|g| **g.ring() != *ring) {
        return Err(GroebnerError::RingMismatch);
    }
    let input: Vec<KPoly<BigInt>> = gens.iter().map(|g| to_integer(g, order)).collect();
    match complete(Integers, order, input, cfg) {
        Completion::Done(basis, stats) => {
            let mut out: Vec<Polynomial> = basis.iter().map(|k| monic_rational(&ring, k)).collect();
            sort_by_leading(&mut out, order);
            Ok((out, stats))
        }
        Completion::Budget(stats) => Err(GroebnerError::BudgetExceeded { pairs: stats.pairs_reduced }),
    }
}

fn sort_by_leading(polys: &mut [Polynomial], order: &MonomialOrder) {
    polys.sort_by(|a, b| order.cmp(a.leading_monomial(order).unwrap(), b.leading_monomial(order).unwrap()));
}

/// Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner(gens: &[Polynomial], order: &MonomialOrder) -> bool {
    let ks: Vec<KPoly<BigInt>> = gens.iter().map(|g| to_integer(g, order)).collect();
    check_groebner(&Integers, order, &ks).is_none()
}

/// The first pair of generator indices whose S-polynomial does not reduce to
/// zero, among the nonzero generators.
pub fn groebner_obstruction(gens: &[Polynomial], order: &MonomialOrder) -> Option<(usize, usize)> {
    let ks: Vec<KPoly<BigInt>> = gens.iter().map(|g| to_integer(g, order)).collect();
    check_groebner(&Integers, order, &ks)
}

pub fn member(f: &Polynomial, ideal: &Ideal, order: &MonomialOrder) -> bool {
    let gb = ideal.groebner(order);
    normal_form(f, &gb, order).is_zero()
}

pub fn ideals_equal(a: &Ideal, b: &Ideal, order: &MonomialOrder) -> Result<bool, GroebnerError> {
    if **a.ring() != **b.ring() {
        return Err(GroebnerError::RingMismatch);
    }
    Ok(*a.groebner(order) == *b.groebner(order))
}

/// Compares reduced bases of the images modulo [`PRESCREEN_PRIME`]. Only a
/// pre-screen: a `false` here can come from an unlucky prime.
pub fn prescreen_equal_mod_p(a: &Ideal, b: &Ideal, order: &MonomialOrder) -> bool {
    let zp = Zp::new(PRESCREEN_PRIME);
    let run = |i: &Ideal| {
        let input: Vec<KPoly<u64>> = i.gens().iter().map(|g| to_zp(g, order, &zp)).collect();
        match complete(zp, order, input, &GroebnerConfig::default()) {
            Completion::Done(mut basis, _) => {
                basis.sort_by(|x, y| order.cmp(x.lm(), y.lm()));
                basis.into_iter().map(|k| k.terms).collect::<Vec<_>>()
            }
            Completion::Budget(_) => unreachable!("no budget"),
        }
    };
    run(a) == run(b)
}

/// The monomial ideal generated by the leading monomials of a Groebner basis.
pub fn initial_ideal(ideal: &Ideal, order: &MonomialOrder) -> Ideal {
    let ring = ideal.ring();
    let gens = ideal
        .groebner(order)
        .iter()
        .map(|g| Polynomial::monomial(ring, crate::polyring::integer(1), g.leading_monomial(order).unwrap().clone()))
        .collect();
    Ideal::new(ring, gens).expect("same ring")
}

fn rest_precedence(ring: &VarRing, skip: &[usize]) -> Vec<usize> {
    ring.canonical_order().precedence().iter().copied().filter(|v| !skip.contains(v)).collect()
}

/// Generators of `I ∩ k[other variables]` via a block order with `vars` leading.
pub fn eliminate(ideal: &Ideal, vars: &[usize]) -> Result<Ideal, GroebnerError> {
    eliminate_with(ideal, vars, &GroebnerConfig::default())
}

pub fn eliminate_with(ideal: &Ideal, vars: &[usize], cfg: &GroebnerConfig) -> Result<Ideal, GroebnerError> {
    let ring = ideal.ring();
    let n = ring.count();
    let mut precedence: Vec<usize> = vars.to_vec();
    precedence.extend(rest_precedence(ring, vars));
    let order = MonomialOrder::elimination(n, vars)?.with_precedence(precedence)?;
    let gb = ideal.groebner_with(&order, cfg)?;
    let kept: Vec<Polynomial> = gb.iter().filter(|g| vars.iter().all(|&v| !g.involves(v))).cloned().collect();
    let out = Ideal::new(ring, kept.clone())?;
    if vars.is_empty() {
        return Ok(out);
    }
    // Restricted to polynomials free of `vars`, the block order is the
    // canonical grevlex, so `kept` is already the canonical reduced basis.
    let canonical = ring.canonical_order().clone();
    let mut seeded = kept;
    sort_by_leading(&mut seeded, &canonical);
    out.seed(&canonical, seeded);
    Ok(out)
}

pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal, GroebnerError> {
    intersect_with(a, b, &GroebnerConfig::default())
}

/// `I ∩ J` as the elimination of `t` from `t*I + (1 - t)*J`.
pub fn intersect_with(a: &Ideal, b: &Ideal, cfg: &GroebnerConfig) -> Result<Ideal, GroebnerError> {
    if **a.ring() != **b.ring() {
        return Err(GroebnerError::RingMismatch);
    }
    let ring = a.ring();
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let (ext, t) = ring.with_fresh("t");
    let map: Vec<usize> = (0..ring.count()).collect();
    let tvar = Polynomial::var(&ext, t);
    let one_minus_t = &Polynomial::one(&ext) - &tvar;
    let mut gens = Vec::with_capacity(a.gens().len() + b.gens().len());
    gens.extend(a.gens().iter().map(|f| &tvar * &f.embed(&ext, &map)));
    gens.extend(b.gens().iter().map(|g| &one_minus_t * &g.embed(&ext, &map)));
    let tagged = Ideal::new(&ext, gens)?;
    let elim = eliminate_with(&tagged, &[t], cfg)?;
    let back: Vec<usize> = (0..ring.count()).collect();
    let restrict = |p: &Polynomial| restrict_to(p, ring, &back);
    let gens: Vec<Polynomial> = elim.gens().iter().map(restrict).collect();
    let out = Ideal::new(ring, gens.clone())?;
    let canonical = ring.canonical_order().clone();
    let mut seeded = gens;
    sort_by_leading(&mut seeded, &canonical);
    out.seed(&canonical, seeded);
    Ok(out)
}

/// Drops trailing variables that do not occur; `keep[i]` is the source index of target variable `i`.
fn restrict_to(p: &Polynomial, target: &Arc<VarRing>, keep: &[usize]) -> Polynomial {
    let terms = p.terms().iter().map(|t| {
        let e: Vec<u32> = keep.iter().map(|&i| t.mono.exp(i)).collect();
        (t.coeff.clone(), Monomial::from_exponents(&e))
    });
    Polynomial::from_terms(target, terms)
}

/// Outcome of folding [`intersect`] over a list of ideals.
#[derive(Debug, Clone)]
pub struct FoldOutcome {
    /// Intersection of the first `completed` ideals.
    pub ideal: Ideal,
    pub completed: usize,
    pub total: usize,
}

impl FoldOutcome {
    pub fn is_complete(&self) -> bool {
        self.completed == self.total
    }
}

/// Left fold of pairwise intersections. `max_pairs` in `cfg` bounds each step;
/// on exhaustion the partial intersection is returned.
pub fn intersect_all(ideals: &[Ideal], cfg: &GroebnerConfig) -> Result<FoldOutcome, GroebnerError> {
    let first = ideals.first().ok_or(GroebnerError::EmptyGenerators)?;
    let mut acc = first.clone();
    for (k, next) in ideals.iter().enumerate().skip(1) {
        match intersect_with(&acc, next, cfg) {
            Ok(i) => acc = i,
            Err(GroebnerError::BudgetExceeded { .. }) => {
                return Ok(FoldOutcome { ideal: acc, completed: k, total: ideals.len() });
            }
            Err(e) => return Err(e),
        }
    }
    Ok(FoldOutcome { ideal: acc, completed: ideals.len(), total: ideals.len() })
}

#[cfg(test)]
mod tests;
