use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::domain::Zp;
use super::kernel::KPoly;
use crate::polyring::{Coeff, MonomialOrder, Polynomial, Term, VarRing};

pub(crate) fn to_integer(p: &Polynomial, order: &MonomialOrder) -> KPoly<BigInt> {
    let (mut terms, _) = p.primitive_integer_terms();
    let mut ks: Vec<_> = terms.drain(..).map(|(c, m)| (m, c)).collect();
    ks.sort_by(|a, b| order.cmp(&b.0, &a.0));
    KPoly { terms: ks }
}

pub(crate) fn to_zp(p: &Polynomial, order: &MonomialOrder, zp: &Zp) -> KPoly<u64> {
    let (terms, _) = p.primitive_integer_terms();
    let mut ks: Vec<_> = terms.into_iter().map(|(c, m)| (m, zp.reduce_bigint(&c))).filter(|(_, c)| *c != 0).collect();
    ks.sort_by(|a, b| order.cmp(&b.0, &a.0));
    KPoly { terms: ks }
}

/// Rational polynomial `k / lc(k)`.
pub(crate) fn monic_rational(ring: &Arc<VarRing>, k: &KPoly<BigInt>) -> Polynomial {
    if k.is_zero() {
        return Polynomial::zero(ring);
    }
    let lc = k.lc().clone();
    let terms =
        k.terms.iter().map(|(m, c)| Term { coeff: Coeff::new(c.clone(), lc.clone()), mono: m.clone() }).collect();
    Polynomial::from_distinct_terms(ring, terms)
}

/// Rational polynomial `k * num / den`.
pub(crate) fn scaled_rational(ring: &Arc<VarRing>, k: &KPoly<BigInt>, num: &BigInt, den: &BigInt) -> Polynomial {
    debug_assert!(!den.is_zero());
    let terms =
        k.terms.iter().map(|(m, c)| Term { coeff: Coeff::new(c * num, den.clone()), mono: m.clone() }).collect();
    Polynomial::from_distinct_terms(ring, terms)
}
