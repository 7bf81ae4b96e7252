use std::cmp::Ordering;
use std::fmt;

use super::monomial::Monomial;
use super::ring::VarRing;
use super::PolyError;

/// The comparison rule of a monomial order. Weight vectors are indexed by the
/// ring's native variable index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Lex,
    Grevlex,
    /// Weighted degree, ties broken by grevlex.
    Weight(Vec<u32>),
    /// Grevlex on the first `split` variables of the precedence, then grevlex on the rest.
    Block(usize),
}

/// A multiplicative well-order on exponent vectors.
///
/// `precedence[0]` is the most significant variable; for lex it is the largest
/// variable and for grevlex the last entry is the least variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    precedence: Vec<usize>,
}

impl MonomialOrder {
    pub fn lex(nvars: usize) -> Self {
        Self { kind: OrderKind::Lex, precedence: (0..nvars).collect() }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self { kind: OrderKind::Grevlex, precedence: (0..nvars).collect() }
    }

    pub fn weighted(weights: Vec<u32>) -> Result<Self, PolyError> {
        if weights.contains(&0) {
            return Err(PolyError::InvalidOrder("weights must be positive".into()));
        }
        let n = weights.len();
        Ok(Self { kind: OrderKind::Weight(weights), precedence: (0..n).collect() })
    }

    /// Elimination order: the variables in `first` form the leading grevlex block.
    pub fn elimination(nvars: usize, first: &[usize]) -> Result<Self, PolyError> {
        let mut precedence: Vec<usize> = Vec::with_capacity(nvars);
        for &v in first {
            if v >= nvars || precedence.contains(&v) {
                return Err(PolyError::InvalidOrder(format!("bad block variable {v}")));
            }
            precedence.push(v);
        }
        precedence.extend((0..nvars).filter(|v| !first.contains(v)));
        Ok(Self { kind: OrderKind::Block(first.len()), precedence })
    }

    pub fn with_precedence(mut self, precedence: Vec<usize>) -> Result<Self, PolyError> {
        let n = self.precedence.len();
        let mut seen = vec![false; n];
        if precedence.len() != n {
            return Err(PolyError::InvalidOrder("precedence must list every variable".into()));
        }
        for &v in &precedence {
            if v >= n || seen[v] {
                return Err(PolyError::InvalidOrder("precedence is not a permutation".into()));
            }
            seen[v] = true;
        }
        self.precedence = precedence;
        Ok(self)
    }

    /// Moves `var` to the end of the precedence so it becomes the least variable
    /// for lex, grevlex and the grevlex tiebreak of weight orders.
    pub fn with_least(mut self, var: usize) -> Self {
        if let Some(pos) = self.precedence.iter().position(|&v| v == var) {
            self.precedence.remove(pos);
            self.precedence.push(var);
        }
        self
    }

    /// Draws `count` weight orders with weights in `[1, 100]` from a seeded
    /// generator. With `least = Some(v)`, variable `v` receives the minimum of the
    /// drawn weights and is least in the tiebreak.
    pub fn sample_weights(nvars: usize, count: usize, seed: u64, least: Option<usize>) -> Vec<Self> {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..count)
            .map(|_| {
                let mut w: Vec<u32> = (0..nvars).map(|_| rng.gen_range(1..=100)).collect();
                match least {
                    Some(v) if v < nvars => {
                        w[v] = w.iter().copied().min().unwrap_or(1);
                        Self { kind: OrderKind::Weight(w), precedence: (0..nvars).collect() }.with_least(v)
                    }
                    _ => Self { kind: OrderKind::Weight(w), precedence: (0..nvars).collect() },
                }
            })
            .collect()
    }

    pub fn kind(&self) -> &OrderKind {
        &self.kind
    }

    pub fn precedence(&self) -> &[usize] {
        &self.precedence
    }

    pub fn nvars(&self) -> usize {
        self.precedence.len()
    }

    pub fn compare(&self, u: &Monomial, v: &Monomial) -> Result<Ordering, PolyError> {
        let n = self.nvars();
        if u.nvars() != n || v.nvars() != n {
            return Err(PolyError::LengthMismatch {
                expected: n,
                found: if u.nvars() != n { u.nvars() } else { v.nvars() },
            });
        }
        Ok(self.cmp(u, v))
    }

    /// Compares two monomials of the right length.
    #[inline]
    pub fn cmp(&self, u: &Monomial, v: &Monomial) -> Ordering {
        let (a, b) = (u.exponents(), v.exponents());
        match &self.kind {
            OrderKind::Lex => {
                for &i in &self.precedence {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => grevlex(&self.precedence, a, b),
            OrderKind::Weight(w) => {
                let wa: u64 = a.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum();
                let wb: u64 = b.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum();
                wa.cmp(&wb).then_with(|| grevlex(&self.precedence, a, b))
            }
            OrderKind::Block(split) => {
                let (first, rest) = self.precedence.split_at(*split);
                grevlex(first, a, b).then_with(|| grevlex(rest, a, b))
            }
        }
    }

    /// True when `var` is smaller than every other variable.
    pub fn is_least(&self, var: usize) -> bool {
        let n = self.nvars();
        let x = Monomial::var(n, var);
        (0..n).filter(|&i| i != var).all(|i| self.cmp(&x, &Monomial::var(n, i)) == Ordering::Less)
    }

    /// Text form accepted by [`MonomialOrder::parse`].
    pub fn describe(&self, ring: &VarRing) -> String {
        let names: Vec<&str> = self.precedence.iter().map(|&i| ring.name(i)).collect();
        let identity = self.precedence.iter().enumerate().all(|(k, &v)| k == v);
        let at = if identity { String::new() } else { format!("@{}", names.join(",")) };
        match &self.kind {
            OrderKind::Lex => format!("lex{at}"),
            OrderKind::Grevlex => format!("grevlex{at}"),
            OrderKind::Weight(w) => {
                let ws: Vec<String> = w.iter().map(|x| x.to_string()).collect();
                format!("weight:{}{at}", ws.join(","))
            }
            OrderKind::Block(k) => format!("block:{k}@{}", names.join(",")),
        }
    }

    /// Parses `lex`, `grevlex`, `weight:3,1,2` or `block:K`, each optionally
    /// followed by `@v1,v2,...` listing variables from most to least significant.
    pub fn parse(text: &str, ring: &VarRing) -> Result<Self, PolyError> {
        let n = ring.count();
        let (head, prec) = match text.split_once('@') {
            Some((h, p)) => (h.trim(), Some(p)),
            None => (text.trim(), None),
        };
        let base = if head == "lex" {
            Self::lex(n)
        } else if head == "grevlex" {
            Self::grevlex(n)
        } else if let Some(ws) = head.strip_prefix("weight:") {
            let weights = ws
                .split(',')
                .map(|w| w.trim().parse::<u32>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| PolyError::InvalidOrder(format!("bad weight: {e}")))?;
            if weights.len() != n {
                return Err(PolyError::InvalidOrder(format!("expected {n} weights, got {}", weights.len())));
            }
            Self::weighted(weights)?
        } else if let Some(k) = head.strip_prefix("block:") {
            let k: usize = k.trim().parse().map_err(|e| PolyError::InvalidOrder(format!("bad block size: {e}")))?;
            if k > n {
                return Err(PolyError::InvalidOrder("block larger than ring".into()));
            }
            Self { kind: OrderKind::Block(k), precedence: (0..n).collect() }
        } else {
            return Err(PolyError::InvalidOrder(format!("unknown order `{head}`")));
        };
        match prec {
            None => Ok(base),
            Some(p) => {
                let perm = p
                    .split(',')
                    .map(|name| {
                        ring.index_of(name.trim())
                            .ok_or_else(|| PolyError::UnknownVariable { name: name.trim().to_string(), pos: 0 })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                base.with_precedence(perm)
            }
        }
    }
}

#[inline]
fn grevlex(vars: &[usize], a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = vars.iter().map(|&i| a[i]).sum();
    let db: u32 = vars.iter().map(|&i| b[i]).sum();
    if da != db {
        return da.cmp(&db);
    }
    for &i in vars.iter().rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl fmt::Debug for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}@{:?}", self.kind, self.precedence)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_with_x0_least() {
        let o = MonomialOrder::grevlex(3).with_least(0);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Less);
        assert!(o.is_least(0));
        assert!(!MonomialOrder::grevlex(3).is_least(0));
    }

    #[test]
    fn lex_definition() {
        let o = MonomialOrder::lex(3);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 3, 0])), Ordering::Greater);
    }

    #[test]
    fn grevlex_tiebreak_is_reverse() {
        // x1*x3 < x2^2 in grevlex with x1 > x2 > x3
        let o = MonomialOrder::grevlex(3);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::elimination(3, &[2]).unwrap();
        // t = var 2 beats any power of x1, x2
        assert_eq!(o.cmp(&m(&[0, 0, 1]), &m(&[9, 9, 0])), Ordering::Greater);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        let o = MonomialOrder::grevlex(3);
        assert!(o.compare(&m(&[1, 0]), &m(&[1, 0, 0])).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let ring = VarRing::projective(2);
        for text in ["lex", "grevlex", "grevlex@x1,x2,x0", "weight:1,3,2", "weight:1,3,2@x2,x1,x0"] {
            let o = MonomialOrder::parse(text, &ring).unwrap();
            assert_eq!(o.describe(&ring), text);
        }
        assert!(MonomialOrder::parse("weight:0,1,1", &ring).is_err());
        assert!(MonomialOrder::parse("grevlex@x1,x1,x0", &ring).is_err());
        assert!(MonomialOrder::parse("revlex", &ring).is_err());
    }
}
