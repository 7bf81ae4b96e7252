//! Coefficient domains for the reduction kernel.
//!
//! Rational input is run fraction-free over the integers; `Zp` is the optional
//! prime-field mode used only to pre-screen.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub(crate) trait Domain: Clone + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// Returns `(alpha, beta)` with `alpha * b == beta * a` and `alpha` a unit
    /// or positive, so `alpha * f - beta * m * g` cancels the term of `f` with
    /// coefficient `b` against the leading coefficient `a` of `g`.
    fn cancel(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// A common divisor of all coefficients, normalised so dividing by it makes
    /// the leading coefficient positive (integers) or one (fields).
    fn content<'a, I>(&self, coeffs: I, lead: &Self::Elem) -> Self::Elem
    where
        I: Iterator<Item = &'a Self::Elem>,
        Self::Elem: 'a;

    fn div_exact(&self, a: &Self::Elem, c: &Self::Elem) -> Self::Elem;

    /// Cheap test for whether content removal is worth doing.
    fn is_large(&self, _a: &Self::Elem) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Integers;

impl Domain for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigInt) -> bool {
        a.is_one()
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn cancel(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        let g = a.gcd(b);
        let (mut alpha, mut beta) = (a / &g, b / &g);
        if alpha.is_negative() {
            alpha = -alpha;
            beta = -beta;
        }
        (alpha, beta)
    }
    fn content<'a, I>(&self, coeffs: I, lead: &BigInt) -> BigInt
    where
        I: Iterator<Item = &'a BigInt>,
    {
        let mut g = BigInt::zero();
        for c in coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if lead.is_negative() {
            -g
        } else {
            g
        }
    }
    fn div_exact(&self, a: &BigInt, c: &BigInt) -> BigInt {
        a / c
    }
    fn is_large(&self, a: &BigInt) -> bool {
        a.bits() > 64
    }
}

/// Integers modulo a word-sized prime.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Zp {
    p: u64,
}

pub const PRESCREEN_PRIME: u64 = 32003;

impl Zp {
    pub fn new(p: u64) -> Self {
        Zp { p }
    }

    pub fn reduce_bigint(&self, a: &BigInt) -> u64 {
        let r = a.mod_floor(&BigInt::from(self.p));
        r.try_into().expect("reduced value fits")
    }

    pub fn inv(&self, a: u64) -> u64 {
        // Fermat
        let mut base = a % self.p;
        let mut e = self.p - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }
}

impl Domain for Zp {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_one(&self, a: &u64) -> bool {
        *a == 1
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn cancel(&self, a: &u64, b: &u64) -> (u64, u64) {
        (1, b * self.inv(*a) % self.p)
    }
    fn content<'a, I>(&self, _coeffs: I, lead: &u64) -> u64
    where
        I: Iterator<Item = &'a u64>,
    {
        *lead
    }
    fn div_exact(&self, a: &u64, c: &u64) -> u64 {
        a * self.inv(*c) % self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_cancel_is_exact() {
        let d = Integers;
        let (a, b) = (BigInt::from(-6), BigInt::from(4));
        let (alpha, beta) = d.cancel(&a, &b);
        assert_eq!(&alpha * &b, &beta * &a);
        assert!(alpha.is_positive());
        assert_eq!(alpha, BigInt::from(3));
    }

    #[test]
    fn zp_inverse() {
        let z = Zp::new(PRESCREEN_PRIME);
        for a in [1u64, 2, 17, 32002] {
            assert_eq!(a * z.inv(a) % PRESCREEN_PRIME, 1);
        }
        assert_eq!(z.reduce_bigint(&BigInt::from(-1)), 32002);
    }
}
