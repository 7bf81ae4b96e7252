//! Set partitions, the arrangement families and their generators, linear
//! components, the brute-force intersection oracle and family verification.

mod family;
mod partition;
mod subspace;
mod verify;

use std::sync::Arc;

use itertools::Itertools;
use thiserror::Error;

pub use family::{
    family_generators, generator_degree, partition_product, skeleton_factor, skeleton_initial_generators,
    stanley_reisner_projective, stirling2, Family, FamilySpec,
};
pub use partition::{partitions, subsets, unique_block_partitions, SetPartition};
pub use subspace::{integer_point, linear_form, sample_points, truncation, LinearSubspace};
pub use verify::{
    block_ideal, block_ideals, brute_force_ideal, brute_force_ideal_with, ci_decomposition, truncation_rank_test,
    verify_family, BlockIdeal,
};

use crate::groebner::GroebnerError;
use crate::polyring::{PolyError, Polynomial, VarRing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("invalid family spec: {0}")]
    InvalidSpec(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("components for m = {0} need roots of unity and are not constructed")]
    IrrationalComponents(u32),
    #[error("`{0}` is not a homogeneous linear form")]
    NotLinear(String),
    #[error("linear forms are dependent: {0}")]
    DependentForms(String),
    #[error("subspace has no parametric description")]
    NoParametrization,
    #[error("component list is empty")]
    NoComponents,
    #[error("product of the factors of entry {0} differs from the polynomial")]
    FactorMismatch(usize),
    #[error("factor choices give the same ideal twice: {0}")]
    DuplicateChoice(String),
    #[error("point has {found} coordinates, expected {expected}")]
    PointLength { expected: usize, found: usize },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn var(ring: &Arc<VarRing>, i: usize) -> Polynomial {
    Polynomial::var(ring, i)
}

/// The linear components of the zero set of the family, for `m <= 2`.
pub fn components(spec: &FamilySpec) -> Result<Vec<LinearSubspace>, ArrangementError> {
    if spec.m > 2 {
        return Err(ArrangementError::IrrationalComponents(spec.m));
    }
    let ring = spec.ring();
    let (n, p) = (spec.n, spec.p);
    let x = |i: usize| var(&ring, i - 1);
    let mut forms_list: Vec<Vec<Polynomial>> = Vec::new();
    match spec.family {
        Family::LiLi => {
            for sigma in subsets(n, p) {
                if spec.m == 1 {
                    forms_list.push(sigma.iter().tuple_windows().map(|(&i, &j)| &x(i) - &x(j)).collect());
                } else {
                    for signs in 0u32..(1 << (p - 1)) {
                        forms_list.push(signed_star(&sigma, signs, &x));
                    }
                }
            }
        }
        Family::KL => {
            for lambda in partitions(n, p)? {
                let big: Vec<&Vec<usize>> = lambda.blocks().iter().filter(|b| b.len() > 1).collect();
                if spec.m == 1 {
                    forms_list.push(
                        big.iter().flat_map(|b| b.iter().tuple_windows().map(|(&i, &j)| &x(i) - &x(j))).collect(),
                    );
                } else {
                    let free: usize = big.iter().map(|b| b.len() - 1).sum();
                    for signs in 0u32..(1 << free) {
                        let mut forms = Vec::new();
                        let mut shift = 0;
                        for b in &big {
                            forms.extend(signed_star(b, signs >> shift, &x));
                            shift += b.len() - 1;
                        }
                        forms_list.push(forms);
                    }
                }
            }
        }
        Family::Skeleton => {
            let x0 = var(&ring, 0);
            for sigma in subsets(n, n - p) {
                for signs in 0u32..(1 << (n - p)) {
                    forms_list.push(
                        sigma
                            .iter()
                            .enumerate()
                            .map(|(k, &i)| {
                                let xi = var(&ring, i);
                                if signs & (1 << k) == 0 {
                                    &xi - &x0
                                } else {
                                    &xi + &x0
                                }
                            })
                            .collect(),
                    );
                }
            }
        }
        Family::StanleyReisner => {
            for sigma in subsets(n, n - p) {
                forms_list.push(sigma.iter().map(|&i| x(i)).collect());
            }
        }
    }
    forms_list.into_iter().map(|forms| LinearSubspace::new(&ring, forms)).collect()
}

/// Forms `x_{b1} - e_k x_{bk}` for `k >= 2`, where bit `k-2` of `signs` set means `e_k = -1`.
fn signed_star(block: &[usize], signs: u32, x: &impl Fn(usize) -> Polynomial) -> Vec<Polynomial> {
    let head = x(block[0]);
    block[1..]
        .iter()
        .enumerate()
        .map(|(k, &j)| if signs & (1 << k) == 0 { &head - &x(j) } else { &head + &x(j) })
        .collect()
}

#[cfg(test)]
mod tests;
