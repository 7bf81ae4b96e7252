use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ArrangementError;
use crate::groebner::Ideal;
use crate::linalg::{null_space, rank, rref};
use crate::polyring::{Coeff, Monomial, Polynomial, VarRing};

/// A linear subspace of affine space (or a projective subspace) given by
/// independent homogeneous linear forms.
#[derive(Clone, Debug)]
pub struct LinearSubspace {
    ring: Arc<VarRing>,
    forms: Vec<Polynomial>,
    /// Integer basis of the solution space, each vector primitive with a
    /// positive first nonzero entry.
    params: Option<Vec<Vec<Coeff>>>,
}

fn coefficient_row(f: &Polynomial, nvars: usize) -> Result<Vec<Coeff>, ArrangementError> {
    let mut row = vec![Coeff::zero(); nvars];
    for t in f.terms() {
        if t.mono.degree() != 1 {
            return Err(ArrangementError::NotLinear(f.to_string()));
        }
        let v = (0..nvars).find(|&v| t.mono.exp(v) == 1).expect("degree one");
        row[v] = t.coeff.clone();
    }
    Ok(row)
}

fn primitive_integer(v: &[Coeff]) -> Vec<Coeff> {
    let den = v.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * &den).to_integer()).collect();
    let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    ints.into_iter().map(|c| Coeff::from_integer(c / &g)).collect()
}

impl LinearSubspace {
    pub fn new(ring: &Arc<VarRing>, forms: Vec<Polynomial>) -> Result<Self, ArrangementError> {
        let mut s = Self::implicit(ring, forms)?;
        let n = ring.count();
        let basis = null_space(&s.matrix(), n);
        s.params = Some(basis.iter().map(|v| primitive_integer(v)).collect());
        Ok(s)
    }

    /// A subspace known only by its defining forms.
    pub fn implicit(ring: &Arc<VarRing>, forms: Vec<Polynomial>) -> Result<Self, ArrangementError> {
        let n = ring.count();
        let rows = forms.iter().map(|f| coefficient_row(f, n)).collect::<Result<Vec<_>, _>>()?;
        if rank(&rows) != rows.len() {
            return Err(ArrangementError::DependentForms(forms.iter().join(", ")));
        }
        Ok(LinearSubspace { ring: ring.clone(), forms, params: None })
    }

    pub fn ring(&self) -> &Arc<VarRing> {
        &self.ring
    }

    pub fn forms(&self) -> &[Polynomial] {
        &self.forms
    }

    pub fn params(&self) -> Option<&[Vec<Coeff>]> {
        self.params.as_deref()
    }

    pub fn codim(&self) -> usize {
        self.forms.len()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.forms.clone()).expect("forms share the ring")
    }

    /// Coefficient matrix, one row per form.
    pub fn matrix(&self) -> Vec<Vec<Coeff>> {
        let n = self.ring.count();
        self.forms.iter().map(|f| coefficient_row(f, n).expect("checked linear")).collect()
    }

    /// Canonical description independent of the choice of forms.
    pub fn key(&self) -> Vec<Vec<Coeff>> {
        let mut m = self.matrix();
        rref(&mut m);
        m
    }

    pub fn same_subspace(&self, other: &LinearSubspace) -> bool {
        *self.ring == *other.ring && self.key() == other.key()
    }

    pub fn contains(&self, point: &[Coeff]) -> bool {
        self.forms.iter().all(|f| f.evaluate(point).is_ok_and(|v| v.is_zero()))
    }
}

impl PartialEq for LinearSubspace {
    fn eq(&self, other: &Self) -> bool {
        self.same_subspace(other)
    }
}

impl fmt::Display for LinearSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.forms.iter().join(", "))
    }
}

const SAMPLE_COEFFS: [i64; 5] = [1, 2, 3, 5, 7];

/// Deterministic rational points: sample `k` combines the basis vectors with
/// coefficients drawn cyclically from 1, 2, 3, 5, 7.
pub fn sample_points(c: &LinearSubspace, count: usize) -> Result<Vec<Vec<Coeff>>, ArrangementError> {
    let basis = c.params().ok_or(ArrangementError::NoParametrization)?;
    let n = c.ring().count();
    Ok((0..count)
        .map(|k| {
            let mut point = vec![Coeff::zero(); n];
            for (j, b) in basis.iter().enumerate() {
                let a = Coeff::from_integer(SAMPLE_COEFFS[(k + 2 * j) % SAMPLE_COEFFS.len()].into());
                for (x, y) in point.iter_mut().zip(b) {
                    *x += &a * y;
                }
            }
            point
        })
        .collect())
}

/// Every intersection of `codim` of the given hyperplanes that has
/// codimension exactly `codim`, without repetition.
pub fn truncation(
    ring: &Arc<VarRing>,
    hyperplanes: &[Polynomial],
    codim: usize,
) -> Result<Vec<LinearSubspace>, ArrangementError> {
    let n = ring.count();
    let rows = hyperplanes.iter().map(|f| coefficient_row(f, n)).collect::<Result<Vec<_>, _>>()?;
    let mut out: Vec<LinearSubspace> = Vec::new();
    for choice in (0..hyperplanes.len()).combinations(codim) {
        let sub: Vec<Vec<Coeff>> = choice.iter().map(|&i| rows[i].clone()).collect();
        if rank(&sub) != codim {
            continue;
        }
        let s = LinearSubspace::new(ring, choice.iter().map(|&i| hyperplanes[i].clone()).collect())?;
        if !out.iter().any(|o| o.same_subspace(&s)) {
            out.push(s);
        }
    }
    Ok(out)
}

/// Linear form with the given coefficients on each variable.
pub fn linear_form(ring: &Arc<VarRing>, coeffs: &[Coeff]) -> Polynomial {
    let n = ring.count();
    Polynomial::from_terms(ring, coeffs.iter().enumerate().map(|(v, c)| (c.clone(), Monomial::var(n, v))))
}

pub fn integer_point(point: &[i64]) -> Vec<BigRational> {
    point.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}
