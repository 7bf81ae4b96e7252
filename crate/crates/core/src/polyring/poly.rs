use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::order::MonomialOrder;
use super::ring::VarRing;
use super::PolyError;

pub type Coeff = BigRational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub mono: Monomial,
}

/// Sparse polynomial with rational coefficients.
///
/// Terms are kept strictly descending under the ring's canonical order with
/// no zero coefficients, so structural equality is polynomial equality.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<VarRing>,
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<VarRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<VarRing>) -> Self {
        Self::constant(ring, Coeff::one())
    }

    pub fn constant(ring: &Arc<VarRing>, c: Coeff) -> Self {
        Self::monomial(ring, c, Monomial::one(ring.count()))
    }

    pub fn from_int(ring: &Arc<VarRing>, c: i64) -> Self {
        Self::constant(ring, Coeff::from_integer(BigInt::from(c)))
    }

    pub fn var(ring: &Arc<VarRing>, index: usize) -> Self {
        Self::monomial(ring, Coeff::one(), Monomial::var(ring.count(), index))
    }

    pub fn monomial(ring: &Arc<VarRing>, c: Coeff, mono: Monomial) -> Self {
        debug_assert_eq!(mono.nvars(), ring.count());
        let terms = if c.is_zero() { Vec::new() } else { vec![Term { coeff: c, mono }] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary (coefficient, monomial) pairs,
    /// combining repeated monomials and dropping zeros.
    pub fn from_terms<I>(ring: &Arc<VarRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Coeff, Monomial)>,
    {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (c, m) in terms {
            debug_assert_eq!(m.nvars(), ring.count());
            *acc.entry(m).or_insert_with(Coeff::zero) += c;
        }
        let mut terms: Vec<Term> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(mono, coeff)| Term { coeff, mono }).collect();
        let order = ring.canonical_order();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        Polynomial { ring: ring.clone(), terms }
    }

    /// Like [`Polynomial::from_terms`] but the caller promises distinct nonzero
    /// terms in any order.
    pub(crate) fn from_distinct_terms(ring: &Arc<VarRing>, mut terms: Vec<Term>) -> Self {
        let order = ring.canonical_order();
        terms.sort_by(|a, b| order.cmp(&b.mono, &a.mono));
        debug_assert!(terms.windows(2).all(|w| w[0].mono != w[1].mono));
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn parse(text: &str, ring: &Arc<VarRing>) -> Result<Self, PolyError> {
        super::parse::parse_poly(text, ring)
    }

    pub fn ring(&self) -> &Arc<VarRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => {
                let d = t.mono.degree();
                self.terms.iter().all(|s| s.mono.degree() == d)
            }
        }
    }

    /// Whether variable `var` appears in some term.
    pub fn involves(&self, var: usize) -> bool {
        self.terms.iter().any(|t| t.mono.exp(var) > 0)
    }

    pub fn coefficient(&self, mono: &Monomial) -> Coeff {
        self.terms.iter().find(|t| &t.mono == mono).map(|t| t.coeff.clone()).unwrap_or_else(Coeff::zero)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<(), PolyError> {
        if Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut acc: HashMap<Monomial, Coeff> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let m = a.mono.mul(&b.mono);
                let c = &a.coeff * &b.coeff;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(mono, coeff)| Term { coeff, mono }).collect();
        Ok(Polynomial::from_distinct_terms(&self.ring, terms))
    }

    fn merge(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        let order = self.ring.canonical_order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let signed = |t: &Term| {
            if subtract {
                Term { coeff: -t.coeff.clone(), mono: t.mono.clone() }
            } else {
                t.clone()
            }
        };
        while i < a.len() && j < b.len() {
            match order.cmp(&a[i].mono, &b[j].mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(signed(&b[j]));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract { &a[i].coeff - &b[j].coeff } else { &a[i].coeff + &b[j].coeff };
                    if !c.is_zero() {
                        out.push(Term { coeff: c, mono: a[i].mono.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(signed));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|t| Term { coeff: &t.coeff * c, mono: t.mono.clone() }).collect(),
        }
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|t| Term { coeff: t.coeff.clone(), mono: t.mono.mul(m) }).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.ring);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Result<&Term, PolyError> {
        if order.nvars() != self.ring.count() {
            return Err(PolyError::LengthMismatch { expected: self.ring.count(), found: order.nvars() });
        }
        self.terms.iter().max_by(|a, b| order.cmp(&a.mono, &b.mono)).ok_or(PolyError::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Result<&Monomial, PolyError> {
        self.leading_term(order).map(|t| &t.mono)
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic(&self, order: &MonomialOrder) -> Result<Polynomial, PolyError> {
        let lc = self.leading_term(order)?.coeff.clone();
        Ok(self.scale(&(Coeff::one() / lc)))
    }

    pub fn evaluate(&self, point: &[Coeff]) -> Result<Coeff, PolyError> {
        let n = self.ring.count();
        if point.len() != n {
            return Err(PolyError::LengthMismatch { expected: n, found: point.len() });
        }
        // evaluate at the integer point D * point, then divide by D^degree termwise
        let den = point.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = point.iter().map(|c| (c * &den).to_integer()).collect();
        let top = self.total_degree().unwrap_or(0) as usize;
        let mut powers: Vec<Vec<BigInt>> = ints.iter().map(|x| vec![BigInt::one(), x.clone()]).collect();
        let den_powers: Vec<BigInt> =
            std::iter::successors(Some(BigInt::one()), |d| Some(d * &den)).take(top + 1).collect();
        let coeff_den = self.terms.iter().fold(BigInt::one(), |acc, t| acc.lcm(t.coeff.denom()));
        let mut total = BigInt::zero();
        for t in &self.terms {
            let mut v = (&t.coeff * &coeff_den).to_integer() * &den_powers[top - t.mono.degree() as usize];
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                let e = e as usize;
                if e > 0 {
                    while powers[i].len() <= e {
                        let next = powers[i].last().expect("nonempty") * &ints[i];
                        powers[i].push(next);
                    }
                    v *= &powers[i][e];
                }
            }
            total += v;
        }
        Ok(Coeff::new(total, coeff_den * &den_powers[top]))
    }

    /// Multiplies each term by a power of `var` to reach the total degree.
    pub fn homogenize(&self, var: usize) -> Result<Polynomial, PolyError> {
        if self.involves(var) {
            return Err(PolyError::HomvarOccurs(self.ring.name(var).to_string()));
        }
        let d = self.total_degree().unwrap_or(0);
        let n = self.ring.count();
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let lift = Monomial::var_pow(n, var, d - t.mono.degree());
                Term { coeff: t.coeff.clone(), mono: t.mono.mul(&lift) }
            })
            .collect();
        Ok(Polynomial::from_distinct_terms(&self.ring, terms))
    }

    pub fn substitute(&self, subst: &Substitution) -> Result<Polynomial, PolyError> {
        if *subst.source != *self.ring {
            return Err(PolyError::RingMismatch);
        }
        if let Some(i) = subst.images.iter().position(Option::is_none) {
            return Err(PolyError::MissingImage(self.ring.name(i).to_string()));
        }
        let images: Vec<&Polynomial> = subst.images.iter().map(|p| p.as_ref().unwrap()).collect();
        let mut powers: Vec<Vec<Polynomial>> =
            images.iter().map(|p| vec![Polynomial::one(&subst.target), (*p).clone()]).collect();
        let mut out = Polynomial::zero(&subst.target);
        for t in &self.terms {
            let mut v = Polynomial::constant(&subst.target, t.coeff.clone());
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                let e = e as usize;
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e {
                    let next = &powers[i][powers[i].len() - 1] * images[i];
                    powers[i].push(next);
                }
                v = &v * &powers[i][e];
            }
            out = &out + &v;
        }
        Ok(out)
    }

    /// Moves the polynomial into `target`, sending variable `i` to `map[i]`.
    pub fn embed(&self, target: &Arc<VarRing>, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ring.count());
        let n = target.count();
        let terms = self.terms.iter().map(|t| Term { coeff: t.coeff.clone(), mono: t.mono.embed(n, map) }).collect();
        Polynomial::from_distinct_terms(target, terms)
    }

    /// Clears denominators and divides by the content; returns integer coefficients
    /// in term order together with the rational factor `self = factor * result`.
    pub fn primitive_integer_terms(&self) -> (Vec<(BigInt, Monomial)>, Coeff) {
        use num_integer::Integer;
        if self.is_zero() {
            return (Vec::new(), Coeff::one());
        }
        let mut den = BigInt::one();
        for t in &self.terms {
            den = den.lcm(t.coeff.denom());
        }
        let ints: Vec<BigInt> = self.terms.iter().map(|t| t.coeff.numer() * (&den / t.coeff.denom())).collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        let out = ints.into_iter().zip(&self.terms).map(|(c, t)| (c / &g, t.mono.clone())).collect();
        (out, Coeff::new(g, den))
    }

    /// Canonical text, e.g. `x1^2*x2^2 - x0^2*x1^2 - x0^2*x2^2 + x0^4`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

/// A ring map given by the images of the source variables.
#[derive(Clone, Debug)]
pub struct Substitution {
    source: Arc<VarRing>,
    target: Arc<VarRing>,
    images: Vec<Option<Polynomial>>,
}

impl Substitution {
    pub fn new(source: &Arc<VarRing>, target: &Arc<VarRing>) -> Self {
        Substitution { source: source.clone(), target: target.clone(), images: vec![None; source.count()] }
    }

    pub fn identity(ring: &Arc<VarRing>) -> Self {
        let mut s = Self::new(ring, ring);
        for i in 0..ring.count() {
            s.images[i] = Some(Polynomial::var(ring, i));
        }
        s
    }

    pub fn from_fn(
        source: &Arc<VarRing>,
        target: &Arc<VarRing>,
        mut f: impl FnMut(usize) -> Polynomial,
    ) -> Result<Self, PolyError> {
        let mut s = Self::new(source, target);
        for i in 0..source.count() {
            s.set(i, f(i))?;
        }
        Ok(s)
    }

    pub fn set(&mut self, var: usize, image: Polynomial) -> Result<&mut Self, PolyError> {
        if *image.ring != *self.target {
            return Err(PolyError::RingMismatch);
        }
        self.images[var] = Some(image);
        Ok(self)
    }

    pub fn target(&self) -> &Arc<VarRing> {
        &self.target
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

fn write_coeff_prefix(c: &Coeff, is_const: bool, out: &mut String) {
    // `c` is positive here.
    if is_const {
        out.push_str(&c.to_string());
    } else if !c.is_one() {
        out.push_str(&c.to_string());
        out.push('*');
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let abs = t.coeff.abs();
            let is_const = t.mono.is_one();
            write_coeff_prefix(&abs, is_const, &mut s);
            if !is_const {
                t.mono.write_with(self.ring.names(), &mut s)?;
            }
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

// Operator forms panic on ring mismatch; use the `checked_*` methods when the
// rings are not known to agree.
impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|t| Term { coeff: -t.coeff.clone(), mono: t.mono.clone() }).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Product of a list of polynomials; the empty product is 1.
pub fn product<'a, I>(ring: &Arc<VarRing>, factors: I) -> Polynomial
where
    I: IntoIterator<Item = &'a Polynomial>,
{
    factors.into_iter().fold(Polynomial::one(ring), |acc, f| &acc * f)
}

pub fn rational(n: i64, d: i64) -> Coeff {
    Coeff::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}
