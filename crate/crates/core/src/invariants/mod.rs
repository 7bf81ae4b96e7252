//! Graded Betti numbers via Koszul homology, pure types, regularity,
//! Herzog-Kuehl predictions and transport of tables under substitution.

mod betti;

use std::collections::BTreeMap;

use itertools::Itertools;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use thiserror::Error;

pub use betti::{betti_table, BettiTable, MAX_VARS};

use crate::arrangements::{
    family_generators, skeleton_initial_generators, stanley_reisner_projective, Family, FamilySpec,
};
use crate::groebner::{hilbert, GroebnerError, Ideal};
use crate::linalg::{rref, sparse_rank};
use crate::polyring::monomials_of_degree;
use crate::report::VerificationReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("ideal is not homogeneous")]
    NonHomogeneous,
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("size limits exceeded: {0}")]
    LimitsExceeded(String),
    #[error("Betti table is empty")]
    EmptyTable,
    #[error("invalid pure type: {0}")]
    InvalidType(String),
    #[error("Herzog-Kuehl solution is not a vector of positive integers: {0}")]
    NonIntegral(String),
    #[error("type predicts degree {predicted}, but degree {given} was supplied")]
    DegreeMismatch { predicted: String, given: u64 },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// Degrees `(d_0, d_1, ...)` when every homological degree has exactly one
/// nonzero entry; `None` otherwise.
pub fn pure_type(table: &BettiTable) -> Option<Vec<u32>> {
    let mut degrees: Vec<Vec<u32>> = vec![Vec::new(); table.totals().len()];
    for (i, j, _) in table.entries() {
        degrees[i].push(j);
    }
    if degrees.is_empty() {
        return None;
    }
    degrees.into_iter().map(|d| (d.len() == 1).then(|| d[0])).collect()
}

/// `max (j - i)` over the nonzero entries.
pub fn regularity(table: &BettiTable) -> Result<u32, InvariantError> {
    table.entries().map(|(i, j, _)| j - i as u32).max().ok_or(InvariantError::EmptyTable)
}

/// Betti ranks `(beta_1, ..., beta_c)` of a Cohen-Macaulay module `S/I` with
/// a pure resolution of type `(d_1, ..., d_c)`, from the equations
/// `sum_{i=0}^{c} (-1)^i beta_i d_i^k = 0` for `k < c` with `beta_0 = 1, d_0 = 0`.
/// The solution must also reproduce `degree` through
/// `sum (-1)^i beta_i d_i^c = (-1)^c c! degree`.
pub fn herzog_kuhl(degrees: &[u32], codim: usize, degree: u64) -> Result<Vec<u64>, InvariantError> {
    let c = codim;
    if degrees.len() != c || c == 0 {
        return Err(InvariantError::InvalidType(format!("{} degrees for codimension {c}", degrees.len())));
    }
    if degrees[0] == 0 || degrees.windows(2).any(|w| w[0] >= w[1]) {
        return Err(InvariantError::InvalidType(format!("{degrees:?} is not strictly increasing and positive")));
    }
    let q = |x: i64| BigRational::from_integer(x.into());
    let alt = |i: usize| if i.is_multiple_of(2) { q(1) } else { q(-1) };
    let dpow = |i: usize, k: usize| num_traits::pow(q(i64::from(degrees[i])), k);
    // augmented system: rows k = 0..c-1, unknowns beta_1..beta_c
    let mut m: Vec<Vec<BigRational>> = (0..c)
        .map(|k| {
            let mut row: Vec<BigRational> = (0..c).map(|i| alt(i + 1) * dpow(i, k)).collect();
            row.push(if k == 0 { q(-1) } else { q(0) });
            row
        })
        .collect();
    let pivots = rref(&mut m);
    if pivots.len() != c || pivots.contains(&c) {
        return Err(InvariantError::InvalidType(format!("{degrees:?} gives a singular system")));
    }
    let betas: Vec<BigRational> = m.iter().map(|row| row[c].clone()).collect();
    if betas.iter().any(|b| !b.is_integer() || !b.is_positive()) {
        return Err(InvariantError::NonIntegral(betas.iter().join(", ")));
    }
    let top: BigRational = (0..c).map(|i| alt(i + 1) * &betas[i] * dpow(i, c)).sum();
    let fact: BigRational = (1..=c as i64).map(q).product();
    let predicted = top * alt(c) / fact;
    if predicted != q(degree as i64) {
        return Err(InvariantError::DegreeMismatch { predicted: predicted.to_string(), given: degree });
    }
    Ok(betas.iter().map(|b| b.to_integer().to_u64().expect("positive integer")).collect())
}

/// Whether `sum_i (-1)^i beta_{i,j}(S/I)` matches the K-polynomial
/// coefficient of `t^j` for every degree in the table.
pub fn euler_characteristic_matches(table: &BettiTable, ideal: &Ideal) -> Result<bool, InvariantError> {
    let h = hilbert(ideal, ideal.ring().canonical_order())?;
    Ok((0..=table.maxdeg()).all(|j| {
        // S/I has beta_{0,0} = 1 and beta_{i+1,j}(S/I) = beta_{i,j}(I)
        let mut sum: i128 = if j == 0 { 1 } else { 0 };
        for (i, jj, r) in table.entries() {
            if jj == j {
                let sign = if i % 2 == 0 { -1 } else { 1 };
                sum += sign * i128::from(r);
            }
        }
        let k = h.numerator.get(j as usize).cloned().unwrap_or_default();
        k.to_i128() == Some(sum)
    }))
}

/// Number of minimal generators in each degree `<= maxdeg`: the dimension
/// of `I_d` minus the rank of all products of lower-degree elements of `I`.
pub fn minimal_generator_degrees(ideal: &Ideal, maxdeg: u32) -> Result<BTreeMap<u32, usize>, InvariantError> {
    if !ideal.is_homogeneous() {
        return Err(InvariantError::NonHomogeneous);
    }
    let ring = ideal.ring();
    let n = ring.count();
    let gb = ideal.groebner(ring.canonical_order());
    let mut out = BTreeMap::new();
    for d in 0..=maxdeg {
        let basis = monomials_of_degree(n, d);
        let index: std::collections::HashMap<_, usize> =
            basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let rows_for = |strict: bool| {
            let mut rows = Vec::new();
            for g in gb.iter() {
                let gd = g.total_degree().expect("nonzero");
                if gd > d || (strict && gd == d) {
                    continue;
                }
                for m in monomials_of_degree(n, d - gd) {
                    let (terms, _) = g.mul_monomial(&m).primitive_integer_terms();
                    let mut row: Vec<_> = terms.into_iter().map(|(c, mono)| (index[&mono], c)).collect();
                    row.sort_by_key(|t| t.0);
                    rows.push(row);
                }
            }
            rows
        };
        let full = sparse_rank(rows_for(false));
        let lower = sparse_rank(rows_for(true));
        if full > lower {
            out.insert(d, full - lower);
        }
    }
    Ok(out)
}

/// Compares the Betti table of the skeleton ideal and of `M_p` with the
/// table of the squarefree monomial ideal with degrees doubled.
pub fn transport_check(n: usize, p: usize) -> Result<VerificationReport, InvariantError> {
    if n > 4 || p >= n {
        return Err(InvariantError::LimitsExceeded(format!("transport check needs p < n <= 4, got n={n} p={p}")));
    }
    let mut report = VerificationReport::new(format!("transport n={n} p={p}"));
    let maxdeg = 2 * n as u32 + 2;
    let sk = FamilySpec::new(Family::Skeleton, n, p, 2).expect("p < n");
    let ring = sk.ring();
    let skel = Ideal::new(&ring, family_generators(&sk))?;
    let mono = Ideal::new(&ring, skeleton_initial_generators(n, p))?;
    let sr = Ideal::new(&ring, stanley_reisner_projective(n, p))?;
    let base = report.timed("betti squarefree", |_| betti_table(&sr, n as u32 + 1))?;
    let doubled = base.scale_degrees(2, &ring);
    let a = report.timed("betti skeleton", |_| betti_table(&skel, maxdeg))?;
    let b = report.timed("betti squares", |_| betti_table(&mono, maxdeg))?;
    let show = |t: &BettiTable| t.to_staircase();
    let c = report.check("skeleton table is the squarefree table with degrees doubled", a == doubled);
    if a != doubled {
        c.witness(format!("skeleton:\n{}doubled:\n{}", show(&a), show(&doubled)));
    }
    let c = report.check("squares table is the squarefree table with degrees doubled", b == doubled);
    if b != doubled {
        c.witness(format!("squares:\n{}doubled:\n{}", show(&b), show(&doubled)));
    }
    Ok(report)
}

/// Full invariant suite for the skeleton ideal: pure type, Herzog-Kuehl,
/// regularity, generator degrees, Euler characteristic and transport.
pub fn skeleton_invariants(n: usize, p: usize) -> Result<VerificationReport, InvariantError> {
    let sk = FamilySpec::new(Family::Skeleton, n, p, 2).map_err(|e| InvariantError::LimitsExceeded(e.to_string()))?;
    if n > 4 {
        return Err(InvariantError::LimitsExceeded(format!("invariant checks need n <= 4, got {n}")));
    }
    let mut report = VerificationReport::new(format!("{sk} invariants"));
    let ring = sk.ring();
    let ideal = Ideal::new(&ring, family_generators(&sk))?;
    let table = report.timed("betti", |_| betti_table(&ideal, 2 * n as u32 + 2))?;
    let expected: Vec<u32> = (p + 1..=n).map(|k| 2 * k as u32).collect();
    let ty = pure_type(&table);
    report
        .check("pure of type (2(p+1), ..., 2n)", ty.as_ref() == Some(&expected))
        .detail(format!("type {ty:?}, expected {expected:?}"))
        .witness(table.to_staircase());
    let degree = (binomial(n, p) << (n - p)) as u64;
    match herzog_kuhl(&expected, n - p, degree) {
        Ok(pred) => {
            let c = report.check("Betti ranks match the Herzog-Kuehl prediction", table.totals() == pred);
            c.detail(format!("predicted {pred:?}, computed {:?}", table.totals()));
        }
        Err(e) => {
            report.check("Betti ranks match the Herzog-Kuehl prediction", false).detail(e.to_string());
        }
    }
    let reg = regularity(&table)?;
    report.check("regularity is n+p+1", reg as usize == n + p + 1).detail(format!("regularity {reg}"));
    report.check("regularity at most the number of components", n + p < degree as usize);
    let row0: Vec<(u32, u64)> = table.entries().filter(|e| e.0 == 0).map(|e| (e.1, e.2)).collect();
    report
        .check("generators: C(n,p+1) in degree 2(p+1)", row0 == [(2 * (p as u32 + 1), binomial(n, p + 1) as u64)])
        .detail(format!("{row0:?}"));
    let euler = euler_characteristic_matches(&table, &ideal)?;
    report.check("alternating Betti sums match the Hilbert series numerator", euler);
    report.extend(transport_check(n, p)?);
    Ok(report)
}
