//! Exact linear algebra over the rationals: echelon rank of sparse integer
//! matrices, reduced row echelon form and null spaces of dense matrices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sparse row: strictly increasing column indices with nonzero entries.
pub type SparseRow = Vec<(usize, BigInt)>;

fn make_primitive(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, c) in row.iter_mut() {
            *c /= &g;
        }
    }
}

/// `a * row - b * pivot`, where `a`, `b` cancel the shared leading column.
fn combine(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let g = row[0].1.gcd(&pivot[0].1);
    let a = &pivot[0].1 / &g;
    let b = &row[0].1 / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|t| t.0);
        let cj = pivot.get(j).map(|t| t.0);
        match (ci, cj) {
            (Some(x), Some(y)) if x == y => {
                let v = &a * &row[i].1 - &b * &pivot[j].1;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push((x, &a * &row[i].1));
                i += 1;
            }
            (Some(x), None) => {
                out.push((x, &a * &row[i].1));
                i += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(&b * &pivot[j].1)));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental row echelon form over the integers, fraction free.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Adds `row` to the echelon form; `false` when it was already in the span.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        match self.reduce(row) {
            Some(r) => {
                self.pivots.insert(r[0].0, r);
                true
            }
            None => false,
        }
    }

    /// Leading-column reduction; `None` when the row lies in the span.
    pub fn reduce(&self, mut row: SparseRow) -> Option<SparseRow> {
        row.retain(|t| !t.1.is_zero());
        loop {
            if row.is_empty() {
                return None;
            }
            match self.pivots.get(&row[0].0) {
                Some(p) => {
                    row = combine(&row, p);
                    if !row.is_empty() {
                        make_primitive(&mut row);
                    }
                }
                None => {
                    make_primitive(&mut row);
                    return Some(row);
                }
            }
        }
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_none()
    }
}

/// Rank of a sparse integer matrix given by rows.
pub fn sparse_rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Rank of a sparse matrix after splitting into blocks that share no row or
/// column; `ncols` bounds the column indices.
pub fn block_rank(rows: Vec<SparseRow>, ncols: usize) -> usize {
    let nonempty: Vec<SparseRow> = rows.into_iter().filter(|r| r.iter().any(|t| !t.1.is_zero())).collect();
    if nonempty.is_empty() {
        return 0;
    }
    let mut uf = UnionFind::new(ncols);
    for r in &nonempty {
        let first = r[0].0;
        for t in &r[1..] {
            uf.union(first, t.0);
        }
    }
    let mut blocks: BTreeMap<usize, Vec<SparseRow>> = BTreeMap::new();
    for r in nonempty {
        let root = uf.find(r[0].0);
        blocks.entry(root).or_default().push(r);
    }
    use rayon::prelude::*;
    blocks.into_values().collect::<Vec<_>>().into_par_iter().map(sparse_rank).sum()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut Vec<Vec<BigRational>>) -> Vec<usize> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..m.len()).find(|&k| !m[k][c].is_zero()) else { continue };
        m.swap(r, k);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for k in 0..m.len() {
            if k != r && !m[k][c].is_zero() {
                let f = m[k][c].clone();
                let (pivot_row, row) = if k < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[k])
                } else {
                    let (lo, hi) = m.split_at_mut(k);
                    (&lo[r], &mut hi[0])
                };
                for (x, p) in row[c..ncols].iter_mut().zip(&pivot_row[c..ncols]) {
                    *x -= &f * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// A basis of `{ v : A v = 0 }` for an `r x ncols` matrix.
pub fn null_space(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}
