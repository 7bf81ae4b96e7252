use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use num_integer::binomial;
use serde::Serialize;

use super::partition::{partitions, subsets, unique_block_partitions, SetPartition};
use super::ArrangementError;
use crate::polyring::{integer, product, Monomial, Polynomial, VarRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Family {
    /// At least `p` coordinates agree after raising to the `m`-th power.
    LiLi,
    /// The `m`-th powers of the coordinates take at most `p` values.
    KL,
    /// Projective closure of the `p`-skeleton of the cube `[-1, 1]^n`.
    Skeleton,
    /// Coordinate subspaces of dimension `p`.
    StanleyReisner,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::LiLi => "LiLi",
            Family::KL => "KL",
            Family::Skeleton => "Skeleton",
            Family::StanleyReisner => "StanleyReisner",
        })
    }
}

impl FromStr for Family {
    type Err = ArrangementError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "LiLi" => Ok(Family::LiLi),
            "KL" => Ok(Family::KL),
            "Skeleton" => Ok(Family::Skeleton),
            "StanleyReisner" | "SR" => Ok(Family::StanleyReisner),
            _ => Err(ArrangementError::InvalidSpec(format!("unknown family `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FamilySpec {
    pub family: Family,
    pub n: usize,
    pub p: usize,
    pub m: u32,
}

impl FamilySpec {
    /// Validates the parameters; `m` is forced to 2 for `Skeleton` and to 1
    /// for `StanleyReisner`.
    pub fn new(family: Family, n: usize, p: usize, m: u32) -> Result<Self, ArrangementError> {
        let bad = |why: &str| Err(ArrangementError::InvalidSpec(format!("{family} n={n} p={p}: {why}")));
        match family {
            Family::LiLi if !(2 <= p && p <= n) => return bad("requires 2 <= p <= n"),
            Family::KL if !(1 <= p && p < n) => return bad("requires 1 <= p < n"),
            Family::Skeleton | Family::StanleyReisner if p >= n => return bad("requires p < n"),
            _ => {}
        }
        let m = match family {
            Family::Skeleton => 2,
            Family::StanleyReisner => 1,
            _ if m == 0 => return bad("requires m >= 1"),
            _ => m,
        };
        Ok(FamilySpec { family, n, p, m })
    }

    pub fn ring(&self) -> Arc<VarRing> {
        match self.family {
            Family::Skeleton => VarRing::projective(self.n),
            _ => VarRing::affine(self.n),
        }
    }

    pub fn generator_count(&self) -> usize {
        let (n, p) = (self.n, self.p);
        match self.family {
            Family::LiLi => stirling2(n, p - 1),
            Family::KL => binomial(n, p + 1),
            Family::Skeleton | Family::StanleyReisner => binomial(n, p + 1),
        }
    }

    /// Number of linear components of the zero set (for `m <= 2`).
    pub fn component_count(&self) -> usize {
        let (n, p) = (self.n, self.p);
        let signs = |e: usize| if self.m == 2 { 1usize << e } else { 1 };
        match self.family {
            Family::LiLi => binomial(n, p) * signs(p - 1),
            Family::KL => stirling2(n, p) * signs(n - p),
            Family::Skeleton => binomial(n, p) << (n - p),
            Family::StanleyReisner => binomial(n, p),
        }
    }

    /// Codimension of every component.
    pub fn codim(&self) -> usize {
        match self.family {
            Family::LiLi => self.p - 1,
            _ => self.n - self.p,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "family={} n={} p={} m={}", self.family, self.n, self.p, self.m)
    }
}

impl FromStr for FamilySpec {
    type Err = ArrangementError;

    /// Parses `family=LiLi n=3 p=2 m=2`; `m` defaults to 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (mut family, mut n, mut p, mut m) = (None, None, None, 1u32);
        for tok in s.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| ArrangementError::InvalidSpec(format!("expected key=value, got `{tok}`")))?;
            let num =
                |v: &str| v.parse::<usize>().map_err(|_| ArrangementError::InvalidSpec(format!("bad number `{v}`")));
            match k {
                "family" => family = Some(v.parse()?),
                "n" => n = Some(num(v)?),
                "p" => p = Some(num(v)?),
                "m" => m = num(v)? as u32,
                _ => return Err(ArrangementError::InvalidSpec(format!("unknown key `{k}`"))),
            }
        }
        let missing = |k: &str| ArrangementError::InvalidSpec(format!("missing `{k}`"));
        FamilySpec::new(family.ok_or(missing("family"))?, n.ok_or(missing("n"))?, p.ok_or(missing("p"))?, m)
    }
}

/// Stirling number of the second kind.
pub fn stirling2(n: usize, k: usize) -> usize {
    let mut row = vec![0usize; k + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = j * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

fn power_difference(ring: &Arc<VarRing>, i: usize, j: usize, m: u32) -> Polynomial {
    &Polynomial::var(ring, i).pow(m) - &Polynomial::var(ring, j).pow(m)
}

/// Product of `x_i^m - x_j^m` over pairs `i < j` in a common block.
/// Variables are numbered from 1 and live at index `i - 1` of `ring`.
pub fn partition_product(ring: &Arc<VarRing>, lambda: &SetPartition, m: u32) -> Polynomial {
    let factors: Vec<Polynomial> =
        lambda.within_block_pairs().into_iter().map(|(i, j)| power_difference(ring, i - 1, j - 1, m)).collect();
    product(ring, &factors)
}

/// `F_i = x_i^2 - x0^2` in `k[x0..xn]`.
pub fn skeleton_factor(ring: &Arc<VarRing>, i: usize) -> Polynomial {
    power_difference(ring, i, 0, 2)
}

pub fn family_generators(spec: &FamilySpec) -> Vec<Polynomial> {
    let ring = spec.ring();
    let (n, p, m) = (spec.n, spec.p, spec.m);
    match spec.family {
        Family::LiLi => {
            partitions(n, p - 1).expect("validated spec").iter().map(|l| partition_product(&ring, l, m)).collect()
        }
        Family::KL => unique_block_partitions(n, p + 1)
            .expect("validated spec")
            .iter()
            .map(|l| partition_product(&ring, l, m))
            .collect(),
        Family::Skeleton => subsets(n, p + 1)
            .iter()
            .map(|s| product(&ring, &s.iter().map(|&i| skeleton_factor(&ring, i)).collect_vec()))
            .collect(),
        Family::StanleyReisner => subsets(n, p + 1)
            .iter()
            .map(|s| {
                let e: Vec<u32> = (1..=n).map(|i| u32::from(s.contains(&i))).collect();
                Polynomial::monomial(&ring, integer(1), Monomial::from_exponents(&e))
            })
            .collect(),
    }
}

/// `M_p`: products of `x_i^2` over `(p+1)`-subsets, in `k[x0..xn]`.
pub fn skeleton_initial_generators(n: usize, p: usize) -> Vec<Polynomial> {
    let ring = VarRing::projective(n);
    subsets(n, p + 1)
        .iter()
        .map(|s| {
            let mut e = vec![0u32; n + 1];
            for &i in s {
                e[i] = 2;
            }
            Polynomial::monomial(&ring, integer(1), Monomial::from_exponents(&e))
        })
        .collect()
}

/// Squarefree monomials of degree `p+1` in `x1..xn`, inside `k[x0..xn]`.
pub fn stanley_reisner_projective(n: usize, p: usize) -> Vec<Polynomial> {
    let ring = VarRing::projective(n);
    subsets(n, p + 1)
        .iter()
        .map(|s| {
            let mut e = vec![0u32; n + 1];
            for &i in s {
                e[i] = 1;
            }
            Polynomial::monomial(&ring, integer(1), Monomial::from_exponents(&e))
        })
        .collect()
}

/// Expected total degree of each generator.
pub fn generator_degree(spec: &FamilySpec, lambda: Option<&SetPartition>) -> u32 {
    let m = spec.m as usize;
    let d = match spec.family {
        Family::LiLi => m * lambda.expect("partition").blocks().iter().map(|b| binomial(b.len(), 2)).sum::<usize>(),
        Family::KL => m * binomial(spec.p + 1, 2),
        Family::Skeleton => 2 * (spec.p + 1),
        Family::StanleyReisner => spec.p + 1,
    };
    d as u32
}
