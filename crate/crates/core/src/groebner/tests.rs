use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::linalg::sparse_rank;
use crate::polyring::{integer, monomials_of_degree, product, Substitution};

fn p(text: &str, ring: &Arc<VarRing>) -> Polynomial {
    Polynomial::parse(text, ring).unwrap()
}

fn ideal(ring: &Arc<VarRing>, gens: &[&str]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|g| p(g, ring)).collect()).unwrap()
}

fn canon(ring: &Arc<VarRing>) -> MonomialOrder {
    ring.canonical_order().clone()
}

/// Q_sigma = prod (x_i^2 - x0^2) over sigma, for all sigma of size p+1.
fn skeleton_gens(n: usize, pp: usize) -> (Arc<VarRing>, Vec<Polynomial>) {
    let r = VarRing::projective(n);
    let f: Vec<Polynomial> = (1..=n).map(|i| p(&format!("x{i}^2 - x0^2"), &r)).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == pp + 1 {
            let factors: Vec<Polynomial> = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| f[i].clone()).collect();
            out.push(product(&r, &factors));
        }
    }
    (r, out)
}

fn point_ideal(ring: &Arc<VarRing>, point: &[i64]) -> Ideal {
    // homogeneous point [1 : a1 : ... : an]
    let gens = (1..ring.count())
        .map(|i| &Polynomial::var(ring, i) - &Polynomial::var(ring, 0).scale(&integer(point[i - 1])))
        .collect();
    Ideal::new(ring, gens).unwrap()
}

#[test]
fn normal_form_examples() {
    let r = VarRing::projective(2);
    let o = canon(&r);
    let g = p("x1^2 - x0^2", &r);
    assert!(normal_form(&g, std::slice::from_ref(&g), &o).is_zero());
    assert_eq!(normal_form(&p("x1^3", &r), std::slice::from_ref(&g), &o), p("x0^2*x1", &r));
    // scaling the divisor changes nothing
    let g3 = g.scale(&integer(3));
    assert_eq!(normal_form(&p("1/2*x1^3 + x2", &r), &[g3], &o), p("1/2*x0^2*x1 + x2", &r));
}

#[test]
fn linear_gb_under_lex() {
    let r = VarRing::affine(3);
    let lex = MonomialOrder::lex(3);
    let gb = buchberger(&[p("x1 - x2", &r), p("x2 - x3", &r)], &lex);
    // already a basis; reducing the tail of x1 - x2 by x2 - x3 gives x1 - x3
    assert!(is_groebner(&[p("x1 - x2", &r), p("x2 - x3", &r)], &lex));
    assert_eq!(gb, vec![p("x2 - x3", &r), p("x1 - x3", &r)]);
}

#[test]
fn skeleton_families_are_groebner() {
    for (n, pp) in [(2, 0), (3, 1), (4, 2)] {
        let (r, gens) = skeleton_gens(n, pp);
        assert!(is_groebner(&gens, &canon(&r)), "n={n} p={pp}");
    }
    let (r, gens) = skeleton_gens(3, 1);
    let gb = buchberger(&gens, &canon(&r));
    let mut monic: Vec<Polynomial> = gens.iter().map(|g| g.monic(&canon(&r)).unwrap()).collect();
    monic.sort_by(|a, b| {
        canon(&r).cmp(a.leading_monomial(&canon(&r)).unwrap(), b.leading_monomial(&canon(&r)).unwrap())
    });
    assert_eq!(gb, monic);
}

#[test]
fn non_groebner_pair() {
    let r = VarRing::projective(2);
    let o = canon(&r);
    let gens = vec![p("x1^2 - x0^2", &r), p("x1^3 - x0^2*x2", &r)];
    assert!(!is_groebner(&gens, &o));
    assert_eq!(groebner_obstruction(&gens, &o), Some((0, 1)));
    let gb = buchberger(&gens, &o);
    assert!(is_groebner(&gb, &o));
    assert_ne!(gb.len(), 2);
    assert!(is_groebner(&[p("x1^5 - x2*x0 + 3", &r)], &o));
}

#[test]
fn four_points_have_degree_four() {
    let r = VarRing::projective(2);
    let pts: Vec<Ideal> = [[1, 1], [1, -1], [-1, 1], [-1, -1]].iter().map(|q| point_ideal(&r, q)).collect();
    let fold = intersect_all(&pts, &GroebnerConfig::default()).unwrap();
    assert!(fold.is_complete());
    let h = hilbert(&fold.ideal, &canon(&r)).unwrap();
    assert_eq!((h.dim, h.degree), (1, 4));
    let (_, pi0) = skeleton_gens(2, 0);
    assert!(ideals_equal(&fold.ideal, &Ideal::new(&r, pi0).unwrap(), &canon(&r)).unwrap());
}

#[test]
fn membership_examples() {
    let r = VarRing::affine(3);
    let o = canon(&r);
    let pairs: Vec<Ideal> = ["x1 - x2", "x1 - x3", "x2 - x3"].iter().map(|g| ideal(&r, &[g])).collect();
    let fold = intersect_all(&pairs, &GroebnerConfig::default()).unwrap();
    let vdm = p("(x1-x2)*(x1-x3)*(x2-x3)", &r);
    assert!(member(&vdm, &fold.ideal, &o));
    assert!(ideals_equal(&fold.ideal, &ideal(&r, &["(x1-x2)*(x1-x3)*(x2-x3)"]), &o).unwrap());
    let unit = ideal(&r, &["x1", "x1 + 1"]);
    assert!(member(&Polynomial::one(&r), &unit, &o));

    let (rs, gens) = skeleton_gens(3, 1);
    let sk = Ideal::new(&rs, gens).unwrap();
    assert!(!member(&p("x1*x2*x3", &rs), &sk, &canon(&rs)));
}

#[test]
fn elimination_examples() {
    let r = VarRing::new(["t", "x1", "x2"]).unwrap();
    let i = ideal(&r, &["t*x1", "(1-t)*x2", "t^2 - t"]);
    let e = eliminate(&i, &[0]).unwrap();
    assert!(member(&p("x1*x2", &r), &e, &canon(&r)));
    assert!(e.gens().iter().all(|g| !g.involves(0)));

    let same = eliminate(&i, &[]).unwrap();
    assert!(ideals_equal(&same, &i, &canon(&r)).unwrap());

    let a = VarRing::affine(2);
    let ab = intersect(&ideal(&a, &["x1"]), &ideal(&a, &["x2"])).unwrap();
    assert_eq!(&*ab.groebner(&canon(&a)), &[p("x1*x2", &a)]);
}

#[test]
fn intersection_examples() {
    let r = VarRing::affine(2);
    let o = canon(&r);
    let both = intersect(&ideal(&r, &["x1 - x2"]), &ideal(&r, &["x1 + x2"])).unwrap();
    assert_eq!(&*both.groebner(&o), &[p("x1^2 - x2^2", &r)]);
    let i = ideal(&r, &["x1^2", "x1*x2 - x2^2"]);
    let ii = intersect(&i, &i).unwrap();
    assert!(ideals_equal(&ii, &i, &o).unwrap());
}

#[test]
fn seeded_basis_matches_recomputation() {
    let r = VarRing::projective(2);
    let o = canon(&r);
    let a = ideal(&r, &["x1 - x0", "x2 - x0"]);
    let b = ideal(&r, &["x1 + x0", "x2 - 2*x0"]);
    let c = intersect(&a, &b).unwrap();
    assert!(c.has_cached(&o));
    let fresh = buchberger(c.gens(), &o);
    assert_eq!(&*c.groebner(&o), fresh.as_slice());
}

#[test]
fn ideals_equal_examples() {
    let r = VarRing::affine(2);
    let o = canon(&r);
    assert!(ideals_equal(&ideal(&r, &["x1", "x2"]), &ideal(&r, &["x1 + x2", "x1 - x2"]), &o).unwrap());
    assert!(!ideals_equal(&ideal(&r, &["x1"]), &ideal(&r, &["x1^2"]), &o).unwrap());
    let other = VarRing::affine(3);
    assert_eq!(ideals_equal(&ideal(&r, &["x1"]), &ideal(&other, &["x1"]), &o), Err(GroebnerError::RingMismatch));
}

#[test]
fn squares_of_coordinates_identity_n3_p2() {
    // the ideal of points with at least two equal squared coordinates
    let r = VarRing::affine(3);
    let o = canon(&r);
    let gen = ideal(&r, &["(x1^2-x2^2)*(x1^2-x3^2)*(x2^2-x3^2)"]);
    let pieces: Vec<Ideal> =
        [(1, 2), (1, 3), (2, 3)].iter().map(|(i, j)| ideal(&r, &[&format!("x{i}^2 - x{j}^2")])).collect();
    let fold = intersect_all(&pieces, &GroebnerConfig::default()).unwrap();
    assert!(ideals_equal(&gen, &fold.ideal, &o).unwrap());
    assert!(prescreen_equal_mod_p(&gen, &fold.ideal, &o));
}

#[test]
fn hilbert_examples() {
    let r = VarRing::affine(3);
    let o = canon(&r);
    let sq = ideal(&r, &["x1^2", "x2^2"]);
    let h = hilbert(&sq, &o).unwrap();
    assert_eq!(h.values(6), vec![1, 3, 4, 4, 4, 4, 4]);
    assert_eq!((h.dim, h.degree), (1, 4));

    let z = Ideal::zero(&r);
    let hz = hilbert(&z, &o).unwrap();
    assert_eq!((hz.dim, hz.degree), (3, 1));

    let sigma = ideal(&r, &["x1^2 - x2^2", "x1^2 - x3^2"]);
    let hs = hilbert(&sigma, &o).unwrap();
    assert_eq!((hs.dim, hs.degree), (1, 4));

    let inhom = ideal(&r, &["x1 + 1"]);
    assert_eq!(hilbert(&inhom, &o), Err(GroebnerError::NonHomogeneous));
    assert_eq!(hilbert(&ideal(&r, &["x1", "x2", "x3", "x1 + x2"]), &o).unwrap().dim, 0);
}

#[test]
fn hf_values_examples() {
    let r2 = VarRing::affine(2);
    assert_eq!(hf_values(&Ideal::zero(&r2), &canon(&r2), 3).unwrap(), vec![1, 2, 3, 4]);

    let (r, pi0) = skeleton_gens(2, 0);
    let m0 = ideal(&r, &["x1^2", "x2^2"]);
    assert_eq!(
        hf_values(&Ideal::new(&r, pi0).unwrap(), &canon(&r), 8).unwrap(),
        hf_values(&m0, &canon(&r), 8).unwrap()
    );

    let (r, pi1) = skeleton_gens(3, 1);
    let m1 = ideal(&r, &["x1^2*x2^2", "x1^2*x3^2", "x2^2*x3^2"]);
    assert_eq!(
        hf_values(&Ideal::new(&r, pi1).unwrap(), &canon(&r), 10).unwrap(),
        hf_values(&m1, &canon(&r), 10).unwrap()
    );
}

/// Hilbert function by linear algebra: dim S_d minus the rank of all
/// monomial multiples of the generators landing in degree d.
fn hf_by_rank(ideal: &Ideal, d: u32) -> u64 {
    let n = ideal.ring().count();
    let basis = monomials_of_degree(n, d);
    let index: std::collections::HashMap<Monomial, usize> =
        basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in ideal.gens() {
        let gd = g.total_degree().unwrap();
        if gd > d {
            continue;
        }
        for m in monomials_of_degree(n, d - gd) {
            let h = g.mul_monomial(&m);
            let (terms, _) = h.primitive_integer_terms();
            let mut row: Vec<(usize, num_bigint::BigInt)> =
                terms.into_iter().map(|(c, mono)| (index[&mono], c)).collect();
            row.sort_by_key(|t| t.0);
            rows.push(row);
        }
    }
    (basis.len() - sparse_rank(rows)) as u64
}

#[test]
fn hilbert_function_matches_linear_algebra() {
    let r = VarRing::projective(2);
    let (rs, pi1) = skeleton_gens(3, 1);
    let cases = vec![
        ideal(&r, &["x1^2 - x0^2", "x1*x2 - x0*x1"]),
        ideal(&r, &["x1^3 - x0*x2^2", "x0*x1 - x2^2", "x1*x2^2"]),
        ideal(&r, &["(x1-x2)*(x1+x2-3*x0)", "x2^3 - x0*x1*x2"]),
        Ideal::new(&rs, pi1).unwrap(),
    ];
    for i in cases {
        let o = canon(i.ring());
        let hf = hf_values(&i, &o, 6).unwrap();
        let init = initial_ideal(&i, &o);
        assert_eq!(hf, hf_values(&init, &o, 6).unwrap());
        for d in 0..=6 {
            assert_eq!(hf[d as usize], hf_by_rank(&i, d), "{i:?} degree {d}");
        }
    }
}

fn shuffle_ideals() -> Vec<Ideal> {
    let r = VarRing::projective(2);
    let (r3, pi1) = skeleton_gens(3, 1);
    vec![
        ideal(&r, &["x1^2 - x0^2", "x1^3 - x0^2*x2", "x2^2 - x1*x0"]),
        ideal(&r, &["x1*x2 - x0^2", "x1^2 - x2^2", "x1 + x2 - x0", "x0*x2 - x1^2"]),
        ideal(&r, &["x1^3 + 2*x1*x2*x0", "x2^3 - 5*x0^3", "x1^2*x2 - 7*x0*x2^2"]),
        ideal(&r, &["(x2 - x1)*(x1 - 2*x0)", "(x1 + x2)*(x2 - 3*x0)", "x0*x1*x2"]),
        Ideal::new(&r3, pi1).unwrap(),
    ]
}

#[test]
fn reduced_basis_ignores_generator_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in shuffle_ideals() {
        let o = canon(i.ring());
        let reference = buchberger(i.gens(), &o);
        let serial = GroebnerConfig { parallel: false, ..GroebnerConfig::default() };
        assert_eq!(buchberger_with(i.gens(), &o, &serial).unwrap(), reference);
        for _ in 0..100 {
            let mut g = i.gens().to_vec();
            g.shuffle(&mut rng);
            assert_eq!(buchberger(&g, &o), reference);
        }
    }
}

#[test]
fn budget_is_reported() {
    let i = &shuffle_ideals()[2];
    let cfg = GroebnerConfig { max_pairs: Some(1), ..GroebnerConfig::default() };
    assert!(matches!(buchberger_with(i.gens(), &canon(i.ring()), &cfg), Err(GroebnerError::BudgetExceeded { .. })));
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &Arc<VarRing>, max_deg: u32) -> Polynomial {
    let n = ring.count();
    let terms = (0..rng.gen_range(1..=4)).map(|_| {
        let d = rng.gen_range(0..=max_deg);
        let ms = monomials_of_degree(n, d);
        let m = ms[rng.gen_range(0..ms.len())].clone();
        (integer(rng.gen_range(-3..=3)), m)
    });
    Polynomial::from_terms(ring, terms)
}

#[test]
fn membership_is_closed_under_ideal_operations() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for i in shuffle_ideals() {
        let r = i.ring().clone();
        let o = canon(&r);
        for _ in 0..10 {
            let a = random_poly(&mut rng, &r, 2) * i.gens()[0].clone();
            let b = random_poly(&mut rng, &r, 2) * i.gens()[1].clone();
            assert!(member(&a, &i, &o) && member(&b, &i, &o));
            assert!(member(&(&a + &b), &i, &o));
            let h = random_poly(&mut rng, &r, 2);
            assert!(member(&(&h * &a), &i, &o));
        }
    }
}

#[test]
fn intersection_is_sound() {
    let r = VarRing::projective(2);
    let o = canon(&r);
    let i = ideal(&r, &["x1 - x0", "x2^2 - x0*x1"]);
    let j = ideal(&r, &["x1*x2 - x0^2", "x1 + x2"]);
    let ij = intersect(&i, &j).unwrap();
    for g in ij.gens() {
        assert!(member(g, &i, &o) && member(g, &j, &o));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    let mut hits = 0;
    for k in 0..50 {
        // mix random polynomials with products that land in both ideals
        let f = match k % 3 {
            0 => random_poly(&mut rng, &r, 3),
            1 => &random_poly(&mut rng, &r, 1) * &(&i.gens()[0] * &j.gens()[1]),
            _ => &random_poly(&mut rng, &r, 1) * &i.gens()[1] + random_poly(&mut rng, &r, 2),
        };
        let expected = member(&f, &i, &o) && member(&f, &j, &o);
        hits += usize::from(expected);
        assert_eq!(member(&f, &ij, &o), expected, "{f}");
    }
    assert!(hits > 0);
}

#[test]
fn power_substitution_commutes_with_intersection() {
    let r = VarRing::affine(3);
    let o = canon(&r);
    let comps: Vec<Ideal> =
        [["x1 - x2", "x1 - x3"], ["x1 - x2", "x2 + x3"], ["x1 + x3", "x2 - x3"]].iter().map(|g| ideal(&r, g)).collect();
    let comps: Vec<Ideal> = comps.into_iter().chain([ideal(&r, &["x1 - x2"]), ideal(&r, &["x2 - x3"])]).collect();
    for m in [2u32, 3] {
        let phi = Substitution::from_fn(&r, &r, |v| Polynomial::var(&r, v).pow(m)).unwrap();
        let map = |i: &Ideal| Ideal::new(&r, i.gens().iter().map(|g| g.substitute(&phi).unwrap()).collect()).unwrap();
        for a in 0..comps.len() {
            for b in a + 1..comps.len() {
                let lhs = intersect(&map(&comps[a]), &map(&comps[b])).unwrap();
                let rhs = map(&intersect(&comps[a], &comps[b]).unwrap());
                assert!(ideals_equal(&lhs, &rhs, &o).unwrap(), "m={m} {a} {b}");
            }
        }
    }
}

#[test]
fn concurrent_requests_see_one_basis() {
    let i = Arc::new(shuffle_ideals().swap_remove(2));
    let o = canon(i.ring());
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let (i, o) = (i.clone(), o.clone());
            std::thread::spawn(move || i.groebner(&o))
        })
        .collect();
    let bases: Vec<Arc<[Polynomial]>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    assert!(bases.windows(2).all(|w| Arc::ptr_eq(&w[0], &w[1])));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn normal_form_is_a_remainder(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideals = shuffle_ideals();
        let i = &ideals[(seed % 4) as usize];
        let r = i.ring().clone();
        let o = canon(&r);
        let gb = i.groebner(&o);
        let f = random_poly(&mut rng, &r, 4);
        let nf = normal_form(&f, &gb, &o);
        prop_assert!(member(&(&f - &nf), i, &o));
        for t in nf.terms() {
            for g in gb.iter() {
                prop_assert!(!g.leading_monomial(&o).unwrap().divides(&t.mono));
            }
        }
    }
}
