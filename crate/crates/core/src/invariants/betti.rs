use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::InvariantError;
use crate::groebner::{Divider, Ideal};
use crate::linalg::{block_rank, SparseRow};
use crate::polyring::{integer, monomials_of_degree, Monomial, Polynomial, VarRing};

/// Graded Betti numbers `beta_{i,j}` of an ideal `I`, for internal degrees
/// up to `maxdeg`. Row `i = 0` counts minimal generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    ring: Arc<VarRing>,
    maxdeg: u32,
    entries: BTreeMap<(usize, u32), u64>,
}

#[derive(Serialize)]
struct Entry {
    i: usize,
    j: u32,
    rank: u64,
}

impl BettiTable {
    /// Keeps only the nonzero entries.
    pub fn new(ring: &Arc<VarRing>, maxdeg: u32, entries: impl IntoIterator<Item = ((usize, u32), u64)>) -> Self {
        let entries = entries.into_iter().filter(|(_, r)| *r > 0).collect();
        BettiTable { ring: ring.clone(), maxdeg, entries }
    }

    pub fn ring(&self) -> &Arc<VarRing> {
        &self.ring
    }

    pub fn maxdeg(&self) -> u32 {
        self.maxdeg
    }

    pub fn get(&self, i: usize, j: u32) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries in `(i, j)` order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, u32, u64)> + '_ {
        self.entries.iter().map(|(&(i, j), &r)| (i, j, r))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total rank in each homological degree `0..=max i`.
    pub fn totals(&self) -> Vec<u64> {
        let top = self.entries.keys().map(|k| k.0).max().map_or(0, |m| m + 1);
        (0..top).map(|i| self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, r)| r).sum()).collect()
    }

    /// The table after multiplying every internal degree by `factor`, in `ring`.
    pub fn scale_degrees(&self, factor: u32, ring: &Arc<VarRing>) -> BettiTable {
        BettiTable::new(ring, self.maxdeg * factor, self.entries.iter().map(|(&(i, j), &r)| ((i, j * factor), r)))
    }

    /// Staircase layout: column `i`, row `j - i`.
    pub fn to_staircase(&self) -> String {
        let totals = self.totals();
        if totals.is_empty() {
            return "total: 0\n".to_string();
        }
        let width = self
            .entries
            .values()
            .map(|r| r.to_string().len())
            .max()
            .unwrap_or(1)
            .max(totals.iter().map(|r| r.to_string().len()).max().unwrap_or(1))
            + 1;
        let rows: Vec<u32> = {
            let mut r: Vec<u32> = self.entries.keys().map(|&(i, j)| j - i as u32).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let label = rows.iter().map(|r| r.to_string().len() + 1).max().unwrap_or(1).max(6);
        let mut out = String::new();
        write!(out, "{:>label$}", "").unwrap();
        for i in 0..totals.len() {
            write!(out, "{i:>width$}").unwrap();
        }
        out.push('\n');
        write!(out, "{:>label$}", "total:").unwrap();
        for t in &totals {
            write!(out, "{t:>width$}").unwrap();
        }
        out.push('\n');
        for r in rows {
            write!(out, "{:>label$}", format!("{r}:")).unwrap();
            for i in 0..totals.len() {
                let v = self.get(i, r + i as u32);
                if v == 0 {
                    write!(out, "{:>width$}", ".").unwrap();
                } else {
                    write!(out, "{v:>width$}").unwrap();
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Entry> = self.entries().map(|(i, j, rank)| Entry { i, j, rank }).collect();
        serde_json::json!({ "maxdeg": self.maxdeg, "entries": entries })
    }
}

/// Standard monomials of one degree with their positions.
struct Piece {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

/// Koszul data of `S/I`: standard monomial bases per degree and the normal
/// forms of `x_k * m` for each basis monomial `m`.
/// Sparse coordinates `(index, numerator, denominator)` of a normal form.
type Coords = Vec<(usize, BigInt, BigInt)>;

struct Koszul {
    nvars: usize,
    pieces: Vec<Piece>,
    /// `mult[d][m][k]`: coordinates of `NF(x_k * m)` in degree `d + 1`.
    mult: Vec<Vec<Vec<Coords>>>,
}

impl Koszul {
    fn new(ideal: &Ideal, maxdeg: u32) -> Koszul {
        let ring = ideal.ring();
        let n = ring.count();
        let order = ring.canonical_order();
        let gb = ideal.groebner(order);
        let div = Divider::new(&gb, order);
        let pieces: Vec<Piece> = (0..=maxdeg)
            .map(|d| {
                let basis: Vec<Monomial> =
                    monomials_of_degree(n, d).into_iter().filter(|m| !div.is_reducible(m)).collect();
                let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
                Piece { basis, index }
            })
            .collect();
        let mult = (0..maxdeg as usize)
            .into_par_iter()
            .map(|d| {
                pieces[d]
                    .basis
                    .iter()
                    .map(|m| {
                        (0..n)
                            .map(|k| {
                                let xm = Polynomial::monomial(ring, integer(1), m.mul(&Monomial::var(n, k)));
                                let nf = div.normal_form(&xm);
                                nf.terms()
                                    .iter()
                                    .map(|t| {
                                        let pos = pieces[d + 1].index[&t.mono];
                                        (pos, t.coeff.numer().clone(), t.coeff.denom().clone())
                                    })
                                    .collect()
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Koszul { nvars: n, pieces, mult }
    }

    fn hf(&self, d: i64) -> usize {
        if d < 0 {
            0
        } else {
            self.pieces[d as usize].basis.len()
        }
    }

    /// Dimension of `K_i` in internal degree `j`.
    fn dim(&self, i: usize, j: u32) -> usize {
        num_integer::binomial(self.nvars, i) * self.hf(j as i64 - i as i64)
    }

    /// Rank of the Koszul differential `K_{i,j} -> K_{i-1,j}`.
    fn rank(&self, i: usize, j: u32, subsets: &[Vec<u32>], position: &HashMap<u32, usize>) -> usize {
        if i == 0 || i > self.nvars || (j as i64) < i as i64 {
            return 0;
        }
        let d = (j - i as u32) as usize;
        let target_width = self.pieces[d + 1].basis.len();
        let mut rows: Vec<SparseRow> = Vec::new();
        for &t in &subsets[i] {
            for (mi, _) in self.pieces[d].basis.iter().enumerate() {
                let mut row: Vec<(usize, BigInt, BigInt)> = Vec::new();
                let mut sign_pos = 0;
                for k in 0..self.nvars {
                    if t & (1 << k) == 0 {
                        continue;
                    }
                    let face = position[&(t & !(1 << k))];
                    let negate = sign_pos % 2 == 1;
                    sign_pos += 1;
                    for (pos, num, den) in &self.mult[d][mi][k] {
                        let num = if negate { -num.clone() } else { num.clone() };
                        row.push((face * target_width + pos, num, den.clone()));
                    }
                }
                rows.push(integer_row(row));
            }
        }
        block_rank(rows, num_integer::binomial(self.nvars, i - 1) * target_width)
    }
}

/// Clears denominators; entries with equal columns never occur here.
fn integer_row(mut row: Vec<(usize, BigInt, BigInt)>) -> SparseRow {
    row.sort_by_key(|e| e.0);
    let lcm = row.iter().fold(BigInt::one(), |acc, e| acc.lcm(&e.2));
    row.into_iter().filter(|e| !e.1.is_zero()).map(|(c, num, den)| (c, num * (&lcm / den))).collect()
}

pub const MAX_VARS: usize = 5;

/// Graded Betti numbers of `I` in internal degrees `<= maxdeg`, from the
/// homology of the Koszul complex of `S/I`.
pub fn betti_table(ideal: &Ideal, maxdeg: u32) -> Result<BettiTable, InvariantError> {
    let ring = ideal.ring();
    let n = ring.count();
    if !ideal.is_homogeneous() {
        return Err(InvariantError::NonHomogeneous);
    }
    if n > MAX_VARS || maxdeg as usize > 2 * n + 2 {
        return Err(InvariantError::LimitsExceeded(format!(
            "{n} variables, maxdeg {maxdeg}; supported up to {MAX_VARS} variables and maxdeg 2N+2"
        )));
    }
    let kz = Koszul::new(ideal, maxdeg);
    if kz.hf(0) == 0 {
        return Err(InvariantError::UnitIdeal);
    }
    // subsets of each size as bitmasks, with their position among that size
    let mut subsets: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for mask in 0u32..(1 << n) {
        subsets[mask.count_ones() as usize].push(mask);
    }
    let mut position = HashMap::new();
    for list in &subsets {
        for (k, &m) in list.iter().enumerate() {
            position.insert(m, k);
        }
    }
    let jobs: Vec<(usize, u32)> = (1..=n + 1).flat_map(|i| (0..=maxdeg).map(move |j| (i, j))).collect();
    let ranks: HashMap<(usize, u32), usize> =
        jobs.par_iter().map(|&(i, j)| ((i, j), kz.rank(i, j, &subsets, &position))).collect();
    let mut entries = Vec::new();
    for i in 1..=n {
        for j in 0..=maxdeg {
            let beta = kz.dim(i, j) - ranks[&(i, j)] - ranks[&(i + 1, j)];
            entries.push(((i - 1, j), beta as u64));
        }
    }
    Ok(BettiTable::new(ring, maxdeg, entries))
}
