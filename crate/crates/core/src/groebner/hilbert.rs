//! Hilbert series of `S/I` from the initial monomial ideal.
//!
//! The K-polynomial `K(t)` with `HS(t) = K(t) / (1 - t)^N` is computed by the
//! pivot recursion `K(M) = K(M + <x>) + t * K(M : x)` on a most frequent
//! variable `x`, memoised on the minimal generator set.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{GroebnerError, Ideal};
use crate::polyring::{Monomial, MonomialOrder};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub nvars: usize,
    /// Coefficients of the K-polynomial, lowest degree first.
    #[serde(serialize_with = "ser_bigints")]
    pub numerator: Vec<BigInt>,
    /// Numerator after cancelling every `(1 - t)` factor.
    #[serde(serialize_with = "ser_bigints")]
    pub reduced_numerator: Vec<BigInt>,
    /// Krull dimension of `S/I`.
    pub dim: usize,
    pub codim: usize,
    pub degree: u64,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&x.to_string())?;
    }
    seq.end()
}

impl HilbertData {
    /// Hilbert function values in degrees `0..=max_degree`.
    pub fn values(&self, max_degree: u32) -> Vec<u64> {
        hf_from_numerator(&self.numerator, self.nvars, max_degree)
    }
}

type TPoly = Vec<BigInt>;

fn trim(mut p: TPoly) -> TPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn add_shifted(acc: &mut TPoly, p: &TPoly, shift: usize) {
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, BigInt::zero());
    }
    for (k, c) in p.iter().enumerate() {
        acc[k + shift] += c;
    }
}

fn mul_one_minus_t_pow(p: &TPoly, d: usize) -> TPoly {
    // p * (1 - t^d)
    let mut out = p.clone();
    if d == 0 {
        return Vec::new();
    }
    out.resize(p.len() + d, BigInt::zero());
    for (k, c) in p.iter().enumerate() {
        out[k + d] -= c;
    }
    trim(out)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| (m.degree(), m.clone()));
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out.sort();
    out
}

struct KPolyMemo {
    memo: HashMap<Vec<Monomial>, TPoly>,
}

impl KPolyMemo {
    fn compute(&mut self, gens: Vec<Monomial>) -> TPoly {
        if gens.is_empty() {
            return vec![BigInt::one()];
        }
        if let Some(k) = self.memo.get(&gens) {
            return k.clone();
        }
        let n = gens[0].nvars();
        let mut freq = vec![0usize; n];
        for g in &gens {
            for (v, &e) in g.exponents().iter().enumerate() {
                if e > 0 {
                    freq[v] += 1;
                }
            }
        }
        let (pivot, &best) = freq.iter().enumerate().max_by_key(|(v, &f)| (f, std::cmp::Reverse(*v))).unwrap();
        let result = if best <= 1 {
            // pairwise coprime generators: a complete intersection of monomials
            let mut k = vec![BigInt::one()];
            for g in &gens {
                k = mul_one_minus_t_pow(&k, g.degree() as usize);
            }
            k
        } else {
            let x = Monomial::var(n, pivot);
            let mut plus: Vec<Monomial> = gens.iter().filter(|g| g.exp(pivot) == 0).cloned().collect();
            plus.push(x.clone());
            let quotient: Vec<Monomial> = gens
                .iter()
                .map(|g| {
                    let mut q = g.clone();
                    let e = &mut q.exponents_mut()[pivot];
                    *e = e.saturating_sub(1);
                    q
                })
                .collect();
            let a = self.compute(minimalize(plus));
            let b = self.compute(minimalize(quotient));
            let mut out = a;
            add_shifted(&mut out, &b, 1);
            trim(out)
        };
        self.memo.insert(gens, result.clone());
        result
    }
}

/// Hilbert data of `S / <gens>` for a monomial ideal.
pub fn hilbert_of_monomials(nvars: usize, gens: &[Monomial]) -> Result<HilbertData, GroebnerError> {
    let mut memo = KPolyMemo { memo: HashMap::new() };
    let numerator = memo.compute(minimalize(gens.to_vec()));
    if numerator.is_empty() {
        return Err(GroebnerError::UnitIdeal);
    }
    let mut reduced = numerator.clone();
    let mut codim = 0;
    while reduced.iter().fold(BigInt::zero(), |acc, c| acc + c).is_zero() {
        // divide by (1 - t): synthetic division
        let mut q = Vec::with_capacity(reduced.len() - 1);
        let mut carry = BigInt::zero();
        for c in reduced.iter().take(reduced.len() - 1) {
            carry += c;
            q.push(carry.clone());
        }
        reduced = trim(q);
        codim += 1;
    }
    let degree = reduced.iter().fold(BigInt::zero(), |acc, c| acc + c);
    Ok(HilbertData {
        nvars,
        numerator,
        reduced_numerator: reduced,
        dim: nvars - codim,
        codim,
        degree: degree.abs().to_u64().expect("degree fits in u64"),
    })
}

fn hf_from_numerator(numer: &[BigInt], nvars: usize, max_degree: u32) -> Vec<u64> {
    (0..=max_degree as usize)
        .map(|d| {
            let mut v = BigInt::zero();
            for (k, c) in numer.iter().enumerate() {
                if k > d || c.is_zero() {
                    continue;
                }
                // coefficient of t^(d-k) in 1/(1-t)^N
                let count = if nvars == 0 {
                    if d == k {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                } else {
                    binomial(BigInt::from(d - k + nvars - 1), BigInt::from(nvars - 1))
                };
                v += c * count;
            }
            v.to_u64().expect("Hilbert function values are nonnegative")
        })
        .collect()
}

fn leading_monomials(ideal: &Ideal, order: &MonomialOrder) -> Result<Vec<Monomial>, GroebnerError> {
    if !ideal.is_homogeneous() {
        return Err(GroebnerError::NonHomogeneous);
    }
    Ok(ideal
        .groebner(order)
        .iter()
        .map(|g| g.leading_monomial(order).expect("basis elements are nonzero").clone())
        .collect())
}

pub fn hilbert(ideal: &Ideal, order: &MonomialOrder) -> Result<HilbertData, GroebnerError> {
    let lms = leading_monomials(ideal, order)?;
    hilbert_of_monomials(ideal.ring().count(), &lms)
}

pub fn hf_values(ideal: &Ideal, order: &MonomialOrder, max_degree: u32) -> Result<Vec<u64>, GroebnerError> {
    let lms = leading_monomials(ideal, order)?;
    let mut memo = KPolyMemo { memo: HashMap::new() };
    let numer = memo.compute(minimalize(lms));
    Ok(hf_from_numerator(&numer, ideal.ring().count(), max_degree))
}
