//! Buchberger completion over a coefficient [`Domain`], on polynomials whose
//! terms are sorted descending under the active order.

use std::cmp::Ordering;
use std::collections::VecDeque;

use rayon::prelude::*;

use super::domain::Domain;
use crate::polyring::{Monomial, MonomialOrder};

pub(crate) type KTerm<E> = (Monomial, E);

#[derive(Clone, Debug)]
pub(crate) struct KPoly<E> {
    pub terms: Vec<KTerm<E>>,
}

impl<E> KPoly<E> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &E {
        &self.terms[0].1
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }
}

pub(crate) struct Reducer<E> {
    pub poly: KPoly<E>,
    pub mask: u64,
}

impl<E> Reducer<E> {
    pub fn new(poly: KPoly<E>) -> Self {
        let mask = poly.lm().support_mask();
        Reducer { poly, mask }
    }
}

pub(crate) fn find_reducer<'a, E>(
    reducers: impl Iterator<Item = &'a Reducer<E>>,
    m: &Monomial,
) -> Option<&'a Reducer<E>>
where
    E: 'a,
{
    let mask = m.support_mask();
    reducers.into_iter().find(|r| r.mask & !mask == 0 && r.poly.lm().divides(m))
}

/// `alpha * f[skip_f..] - beta * m * g[skip_g..]`, with `alpha` also applied to `f[..prefix]`.
#[allow(clippy::too_many_arguments)]
fn axpy<D: Domain>(
    dom: &D,
    order: &MonomialOrder,
    f: &[KTerm<D::Elem>],
    prefix: usize,
    alpha: &D::Elem,
    beta: &D::Elem,
    m: &Monomial,
    g: &[KTerm<D::Elem>],
) -> Vec<KTerm<D::Elem>> {
    let unit = dom.is_one(alpha);
    let scale = |c: &D::Elem| if unit { c.clone() } else { dom.mul(alpha, c) };
    let mut out = Vec::with_capacity(f.len() + g.len());
    out.extend(f[..prefix].iter().map(|(mono, c)| (mono.clone(), scale(c))));
    // f[prefix] is the cancelled term and g[0] its partner
    let (mut i, mut j) = (prefix + 1, 1);
    let mut shifted = g.get(1).map(|t| t.0.mul(m));
    while i < f.len() {
        let Some(sg) = shifted.as_ref() else { break };
        match order.cmp(&f[i].0, sg) {
            Ordering::Greater => {
                out.push((f[i].0.clone(), scale(&f[i].1)));
                i += 1;
            }
            Ordering::Less => {
                let c = dom.sub(&dom.zero(), &dom.mul(beta, &g[j].1));
                out.push((shifted.take().unwrap(), c));
                j += 1;
                shifted = g.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let c = dom.sub(&scale(&f[i].1), &dom.mul(beta, &g[j].1));
                if !dom.is_zero(&c) {
                    out.push((f[i].0.clone(), c));
                }
                i += 1;
                j += 1;
                shifted = g.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out.extend(f[i..].iter().map(|(mono, c)| (mono.clone(), scale(c))));
    if let Some(sg) = shifted {
        out.push((sg, dom.sub(&dom.zero(), &dom.mul(beta, &g[j].1))));
        for t in &g[j + 1..] {
            out.push((t.0.mul(m), dom.sub(&dom.zero(), &dom.mul(beta, &t.1))));
        }
    }
    out
}

/// Scale bookkeeping: the reduced polynomial equals `mul / div` times the input modulo the ideal.
pub(crate) struct Scale<E> {
    pub mul: E,
    pub div: E,
}

pub(crate) fn make_primitive<D: Domain>(dom: &D, p: &mut KPoly<D::Elem>) -> D::Elem {
    if p.is_zero() {
        return dom.one();
    }
    let c = dom.content(p.terms.iter().map(|t| &t.1), p.lc());
    if !dom.is_one(&c) {
        for t in p.terms.iter_mut() {
            t.1 = dom.div_exact(&t.1, &c);
        }
    }
    c
}

/// Reduces `f` by `reducers`. With `full`, every term is reduced; otherwise
/// only leading terms until the leading monomial is irreducible.
pub(crate) fn reduce<D: Domain>(
    dom: &D,
    order: &MonomialOrder,
    mut f: KPoly<D::Elem>,
    reducers: &[&Reducer<D::Elem>],
    full: bool,
    track: Option<&mut Scale<D::Elem>>,
) -> KPoly<D::Elem> {
    let mut pos = 0;
    let mut steps = 0usize;
    let mut scale = Scale { mul: dom.one(), div: dom.one() };
    while pos < f.terms.len() {
        let Some(r) = find_reducer(reducers.iter().copied(), &f.terms[pos].0) else {
            if !full {
                break;
            }
            pos += 1;
            continue;
        };
        let g = &r.poly.terms;
        let m = f.terms[pos].0.checked_div(&g[0].0).expect("divisor found");
        let (alpha, beta) = dom.cancel(&g[0].1, &f.terms[pos].1);
        if !dom.is_one(&alpha) {
            scale.mul = dom.mul(&scale.mul, &alpha);
        }
        f.terms = axpy(dom, order, &f.terms, pos, &alpha, &beta, &m, g);
        steps += 1;
        if steps.is_multiple_of(8) && f.terms.first().is_some_and(|t| dom.is_large(&t.1)) {
            let c = make_primitive(dom, &mut f);
            scale.div = dom.mul(&scale.div, &c);
        }
    }
    let c = make_primitive(dom, &mut f);
    scale.div = dom.mul(&scale.div, &c);
    if let Some(t) = track {
        *t = scale;
    }
    f
}

pub(crate) fn spoly<D: Domain>(
    dom: &D,
    order: &MonomialOrder,
    f: &KPoly<D::Elem>,
    g: &KPoly<D::Elem>,
) -> KPoly<D::Elem> {
    let lcm = f.lm().lcm(g.lm());
    let mf = lcm.checked_div(f.lm()).unwrap();
    let mg = lcm.checked_div(g.lm()).unwrap();
    // alpha * (mf f) - beta * (mg g), with alpha*lc(f) = beta*lc(g)
    let (alpha, beta) = dom.cancel(g.lc(), f.lc());
    let fm: Vec<KTerm<D::Elem>> = f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    let terms = axpy(dom, order, &fm, 0, &alpha, &beta, &mg, &g.terms);
    // axpy leaves the scaled copy of f's leading term out; it cancels exactly.
    let mut p = KPoly { terms };
    make_primitive(dom, &mut p);
    p
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Elem<E> {
    red: Reducer<E>,
    sugar: u32,
    active: bool,
}

#[derive(Clone, Debug)]
pub struct GroebnerConfig {
    /// Maximum number of S-pair reductions before giving up.
    pub max_pairs: Option<usize>,
    /// Reduce batches of equal-sugar pairs in parallel.
    pub parallel: bool,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig { max_pairs: None, parallel: true }
    }
}

#[derive(Clone, Debug, Default)]
pub struct GroebnerStats {
    pub pairs_reduced: usize,
    pub zero_reductions: usize,
    pub basis_size: usize,
}

pub(crate) enum Completion<E> {
    Done(Vec<KPoly<E>>, GroebnerStats),
    Budget(GroebnerStats),
}

struct State<'o, D: Domain> {
    order: &'o MonomialOrder,
    basis: Vec<Elem<D::Elem>>,
    pairs: Vec<Pair>,
}

impl<D: Domain> State<'_, D> {
    fn active_reducers(&self) -> Vec<&Reducer<D::Elem>> {
        self.basis.iter().filter(|e| e.active).map(|e| &e.red).collect()
    }

    /// Gebauer-Moeller update with a new basis element.
    fn update(&mut self, h: KPoly<D::Elem>, sugar: u32) {
        let hidx = self.basis.len();
        let hlm = h.lm().clone();
        let hdeg = hlm.degree();
        let mut cand: VecDeque<(Pair, bool)> = VecDeque::new();
        for (g, e) in self.basis.iter().enumerate() {
            if !e.active {
                continue;
            }
            let glm = e.red.poly.lm();
            let lcm = glm.lcm(&hlm);
            let ld = lcm.degree();
            let s = (e.sugar + ld - glm.degree()).max(sugar + ld - hdeg);
            let coprime = glm.is_coprime(&hlm);
            cand.push_back((Pair { i: g, j: hidx, lcm, sugar: s }, coprime));
        }
        // criteria M and F: keep one pair per minimal lcm
        let mut kept: Vec<(Pair, bool)> = Vec::new();
        while let Some((p, coprime)) = cand.pop_front() {
            if coprime || !cand.iter().chain(kept.iter()).any(|(q, _)| q.lcm.divides(&p.lcm)) {
                kept.push((p, coprime));
            }
        }
        let new_pairs: Vec<Pair> = kept.into_iter().filter(|(_, cp)| !*cp).map(|(p, _)| p).collect();
        // criterion B on old pairs
        let basis = &self.basis;
        self.pairs.retain(|p| {
            if !hlm.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].red.poly.lm().lcm(&hlm);
            let lj = basis[p.j].red.poly.lm().lcm(&hlm);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);
        for e in self.basis.iter_mut() {
            if e.active && hlm.divides(e.red.poly.lm()) {
                e.active = false;
            }
        }
        self.basis.push(Elem { red: Reducer::new(h), sugar, active: true });
    }

    fn take_batch(&mut self, parallel: bool) -> Vec<Pair> {
        let order = self.order;
        let Some(min_sugar) = self.pairs.iter().map(|p| p.sugar).min() else {
            return Vec::new();
        };
        let mut batch: Vec<Pair> = Vec::new();
        let mut rest = Vec::with_capacity(self.pairs.len());
        for p in self.pairs.drain(..) {
            if p.sugar == min_sugar {
                batch.push(p);
            } else {
                rest.push(p);
            }
        }
        batch.sort_by(|a, b| order.cmp(&a.lcm, &b.lcm).then((a.i, a.j).cmp(&(b.i, b.j))));
        let cap = if parallel { 64 } else { 1 };
        if batch.len() > cap {
            rest.extend(batch.drain(cap..));
        }
        self.pairs = rest;
        batch
    }
}

pub(crate) fn complete<D: Domain>(
    dom: D,
    order: &MonomialOrder,
    input: Vec<KPoly<D::Elem>>,
    cfg: &GroebnerConfig,
) -> Completion<D::Elem> {
    let mut st: State<'_, D> = State { order, basis: Vec::new(), pairs: Vec::new() };
    let mut stats = GroebnerStats::default();
    let mut input: Vec<KPoly<D::Elem>> = input.into_iter().filter(|p| !p.is_zero()).collect();
    input.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for f in input {
        let sugar = f.degree();
        let reds = st.active_reducers();
        let h = reduce(&dom, order, f, &reds, false, None);
        if !h.is_zero() {
            st.update(h, sugar);
        }
    }
    loop {
        let batch = st.take_batch(cfg.parallel);
        if batch.is_empty() {
            break;
        }
        if let Some(limit) = cfg.max_pairs {
            if stats.pairs_reduced + batch.len() > limit {
                stats.basis_size = st.basis.len();
                return Completion::Budget(stats);
            }
        }
        let reduced: Vec<KPoly<D::Elem>> = {
            let reds = st.active_reducers();
            let work = |p: &Pair| {
                let s = spoly(&dom, order, &st.basis[p.i].red.poly, &st.basis[p.j].red.poly);
                reduce(&dom, order, s, &reds, false, None)
            };
            if cfg.parallel && batch.len() > 1 {
                batch.par_iter().map(work).collect()
            } else {
                batch.iter().map(work).collect()
            }
        };
        let snapshot = st.basis.len();
        for (p, h) in batch.iter().zip(reduced) {
            stats.pairs_reduced += 1;
            let h = if st.basis.len() > snapshot {
                let reds = st.active_reducers();
                reduce(&dom, order, h, &reds, false, None)
            } else {
                h
            };
            if h.is_zero() {
                stats.zero_reductions += 1;
                continue;
            }
            st.update(h, p.sugar);
        }
    }
    // minimal basis: active elements have pairwise non-dividing leading monomials
    let mut minimal: Vec<KPoly<D::Elem>> = st.basis.into_iter().filter(|e| e.active).map(|e| e.red.poly).collect();
    minimal.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let reducers: Vec<Reducer<D::Elem>> = minimal.iter().cloned().map(Reducer::new).collect();
    let out: Vec<KPoly<D::Elem>> = {
        let work = |k: usize| {
            let others: Vec<&Reducer<D::Elem>> =
                reducers.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, r)| r).collect();
            // tail reduction only; the leading monomial is irreducible by minimality
            let p = minimal[k].clone();
            let mut lead = KPoly { terms: vec![p.terms[0].clone()] };
            let tail = KPoly { terms: p.terms[1..].to_vec() };
            let mut sc = Scale { mul: dom.one(), div: dom.one() };
            let tail = reduce(&dom, order, tail, &others, true, Some(&mut sc));
            // tail now equals (mul/div) * old tail; rescale the lead to match
            lead.terms[0].1 = dom.mul(&lead.terms[0].1, &sc.mul);
            let mut terms = lead.terms;
            let tail_terms: Vec<KTerm<D::Elem>> =
                tail.terms.into_iter().map(|(m, c)| (m, dom.mul(&c, &sc.div))).collect();
            terms.extend(tail_terms);
            let mut q = KPoly { terms };
            make_primitive(&dom, &mut q);
            q
        };
        if cfg.parallel {
            (0..minimal.len()).into_par_iter().map(work).collect()
        } else {
            (0..minimal.len()).map(work).collect()
        }
    };
    stats.basis_size = out.len();
    Completion::Done(out, stats)
}

/// Buchberger's criterion with the coprime and chain criteria used only as skips.
pub(crate) fn check_groebner<D: Domain>(
    dom: &D,
    order: &MonomialOrder,
    gens: &[KPoly<D::Elem>],
) -> Option<(usize, usize)> {
    let gens: Vec<&KPoly<D::Elem>> = gens.iter().filter(|g| !g.is_zero()).collect();
    let n = gens.len();
    let reducers: Vec<Reducer<D::Elem>> = gens.iter().map(|g| Reducer::new((*g).clone())).collect();
    let refs: Vec<&Reducer<D::Elem>> = reducers.iter().collect();
    let mut treated = vec![vec![false; n]; n];
    for j in 0..n {
        for i in 0..j {
            let (li, lj) = (gens[i].lm(), gens[j].lm());
            let lcm = li.lcm(lj);
            let skip = li.is_coprime(lj)
                || (0..n).any(|k| {
                    k != i
                        && k != j
                        && gens[k].lm().divides(&lcm)
                        && treated[i.min(k)][i.max(k)]
                        && treated[j.min(k)][j.max(k)]
                });
            if !skip {
                let s = spoly(dom, order, gens[i], gens[j]);
                let r = reduce(dom, order, s, &refs, false, None);
                if !r.is_zero() {
                    return Some((i, j));
                }
            }
            treated[i][j] = true;
        }
    }
    None
}
