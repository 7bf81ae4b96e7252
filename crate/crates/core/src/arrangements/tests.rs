use num_integer::binomial;
use num_traits::Zero;
use proptest::prelude::*;

use super::*;
use crate::groebner::{hilbert, ideals_equal, Ideal};
use crate::polyring::{Coeff, Substitution};
use crate::report::Status;

fn spec(f: Family, n: usize, p: usize, m: u32) -> FamilySpec {
    FamilySpec::new(f, n, p, m).unwrap()
}

fn poly(text: &str, ring: &Arc<VarRing>) -> Polynomial {
    Polynomial::parse(text, ring).unwrap()
}

/// Partition count by the recurrence S(n,k) = k S(n-1,k) + S(n-1,k-1).
fn stirling_rec(n: usize, k: usize) -> usize {
    match (n, k) {
        (0, 0) => 1,
        (0, _) | (_, 0) => 0,
        _ => k * stirling_rec(n - 1, k) + stirling_rec(n - 1, k - 1),
    }
}

#[test]
fn partition_examples() {
    let one = partitions(3, 1).unwrap();
    assert_eq!(one.len(), 1);
    assert_eq!(one[0].to_string(), "{1,2,3}");
    assert_eq!(partitions(4, 2).unwrap().len(), 7);
    let singles = partitions(3, 3).unwrap();
    assert_eq!(singles.len(), 1);
    assert_eq!(singles[0].to_string(), "{1}{2}{3}");
    assert!(partitions(3, 0).is_err() && partitions(3, 4).is_err());
}

#[test]
fn partitions_are_canonical_and_counted_by_stirling() {
    for n in 1..=7 {
        for k in 1..=n {
            let ps = partitions(n, k).unwrap();
            assert_eq!(ps.len(), stirling_rec(n, k), "n={n} k={k}");
            assert_eq!(stirling2(n, k), stirling_rec(n, k));
            let set: std::collections::HashSet<_> = ps.iter().collect();
            assert_eq!(set.len(), ps.len());
            for lambda in &ps {
                assert_eq!(lambda.blocks().len(), k);
                let again = SetPartition::new(n, lambda.blocks().iter().rev().cloned().collect()).unwrap();
                assert_eq!(&again, lambda);
            }
        }
    }
}

#[test]
fn unique_block_examples() {
    let ps = unique_block_partitions(3, 2).unwrap();
    let shown: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
    assert_eq!(shown, ["{1,2}{3}", "{1,3}{2}", "{1}{2,3}"]);
    assert_eq!(unique_block_partitions(4, 3).unwrap().len(), binomial(4, 3));
    assert_eq!(unique_block_partitions(3, 3).unwrap().len(), 1);
    assert!(unique_block_partitions(3, 1).is_err());
}

#[test]
fn spec_text_round_trip() {
    let s: FamilySpec = "family=LiLi n=3 p=2 m=2".parse().unwrap();
    assert_eq!(s, spec(Family::LiLi, 3, 2, 2));
    assert_eq!(s.to_string(), "family=LiLi n=3 p=2 m=2");
    assert_eq!("family=Skeleton n=3 p=1".parse::<FamilySpec>().unwrap().m, 2);
    assert!("family=LiLi n=3 p=1".parse::<FamilySpec>().is_err());
    assert!("family=KL n=3 p=3".parse::<FamilySpec>().is_err());
    assert!("family=Skeleton n=2 p=2".parse::<FamilySpec>().is_err());
    assert!("family=Cube n=2 p=0".parse::<FamilySpec>().is_err());
}

#[test]
fn generator_examples() {
    let li = spec(Family::LiLi, 3, 2, 1);
    let r = li.ring();
    assert_eq!(family_generators(&li), vec![poly("(x1-x2)*(x1-x3)*(x2-x3)", &r)]);

    let sk = spec(Family::Skeleton, 2, 0, 2);
    let rs = sk.ring();
    assert_eq!(family_generators(&sk), vec![poly("x1^2 - x0^2", &rs), poly("x2^2 - x0^2", &rs)]);

    let kl = family_generators(&spec(Family::KL, 4, 2, 2));
    assert_eq!(kl.len(), 4);
    assert!(kl.iter().all(|g| g.total_degree() == Some(6) && g.is_homogeneous()));

    let sr = family_generators(&spec(Family::StanleyReisner, 3, 1, 1));
    let ra = VarRing::affine(3);
    assert_eq!(sr, vec![poly("x1*x2", &ra), poly("x1*x3", &ra), poly("x2*x3", &ra)]);

    let sk31 = family_generators(&spec(Family::Skeleton, 3, 1, 2));
    let r3 = VarRing::projective(3);
    assert_eq!(sk31[0], poly("(x1^2-x0^2)*(x2^2-x0^2)", &r3));
    assert_eq!(sk31[0].to_string(), "x1^2*x2^2 - x0^2*x1^2 - x0^2*x2^2 + x0^4");
}

#[test]
fn generator_degrees_follow_block_sizes() {
    for n in 2..=5 {
        for p in 2..=n {
            for m in 1..=3 {
                let s = spec(Family::LiLi, n, p, m);
                let gens = family_generators(&s);
                assert_eq!(gens.len(), stirling2(n, p - 1));
                for (g, l) in gens.iter().zip(partitions(n, p - 1).unwrap()) {
                    let pairs: usize = l.blocks().iter().map(|b| b.len() * (b.len() - 1) / 2).sum();
                    assert_eq!(g.total_degree(), Some(m * pairs as u32));
                }
            }
        }
    }
}

#[test]
fn powers_transport_generators() {
    for n in 2..=4 {
        for p in 2..=n {
            let r = VarRing::affine(n);
            for m in [2u32, 3] {
                let phi = Substitution::from_fn(&r, &r, |v| Polynomial::var(&r, v).pow(m)).unwrap();
                let base = family_generators(&spec(Family::LiLi, n, p, 1));
                let lifted: Vec<Polynomial> = base.iter().map(|g| g.substitute(&phi).unwrap()).collect();
                assert_eq!(lifted, family_generators(&spec(Family::LiLi, n, p, m)));
            }
        }
    }
}

#[test]
fn component_examples() {
    let pts = components(&spec(Family::Skeleton, 2, 0, 2)).unwrap();
    assert_eq!(pts.len(), 4);
    let got: Vec<Vec<Coeff>> = pts.iter().map(|c| sample_points(c, 1).unwrap().remove(0)).collect();
    for expected in [[1, 1, 1], [1, -1, 1], [1, 1, -1], [1, -1, -1]] {
        assert!(got.contains(&integer_point(&expected)), "{expected:?}");
    }
    let lines = components(&spec(Family::Skeleton, 3, 1, 2)).unwrap();
    assert_eq!(lines.len(), 12);
    for l in &lines {
        assert_eq!(l.params().unwrap().len(), 2);
        for pt in sample_points(l, 4).unwrap() {
            assert!(l.contains(&pt));
        }
    }
    let diag = components(&spec(Family::LiLi, 3, 3, 1)).unwrap();
    assert_eq!(diag.len(), 1);
    assert_eq!(diag[0].codim(), 2);
    assert!(matches!(components(&spec(Family::LiLi, 3, 2, 3)), Err(ArrangementError::IrrationalComponents(3))));
}

#[test]
fn component_counts() {
    for n in 1..=5 {
        for p in 0..n {
            let s = spec(Family::Skeleton, n, p, 2);
            assert_eq!(components(&s).unwrap().len(), (1 << (n - p)) * binomial(n, p));
        }
    }
    for n in 2..=5 {
        for p in 2..=n {
            assert_eq!(components(&spec(Family::LiLi, n, p, 2)).unwrap().len(), binomial(n, p) << (p - 1));
        }
        for p in 1..n {
            let expected: usize = partitions(n, p).unwrap().len() << (n - p);
            assert_eq!(components(&spec(Family::KL, n, p, 2)).unwrap().len(), expected);
        }
    }
}

#[test]
fn components_are_distinct() {
    for s in [spec(Family::KL, 4, 2, 2), spec(Family::LiLi, 4, 3, 2), spec(Family::Skeleton, 4, 1, 2)] {
        let comps = components(&s).unwrap();
        for (a, b) in comps.iter().tuple_combinations() {
            assert!(!a.same_subspace(b), "{s}: {a} twice");
        }
    }
}

fn all_specs(max_n: usize, max_m: u32) -> Vec<FamilySpec> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for m in 1..=max_m {
            out.extend((2..=n).map(|p| spec(Family::LiLi, n, p, m)));
            out.extend((1..n).map(|p| spec(Family::KL, n, p, m)));
        }
        out.extend((0..n).map(|p| spec(Family::Skeleton, n, p, 2)));
        out.extend((0..n).map(|p| spec(Family::StanleyReisner, n, p, 1)));
    }
    out
}

#[test]
fn generators_vanish_on_components() {
    for s in all_specs(5, 2) {
        let gens = family_generators(&s);
        for c in components(&s).unwrap() {
            for pt in sample_points(&c, 5).unwrap() {
                for g in &gens {
                    assert!(g.evaluate(&pt).unwrap().is_zero(), "{s}: {g} on {c}");
                }
            }
        }
    }
}

#[test]
fn brute_force_examples() {
    let sk = spec(Family::Skeleton, 2, 0, 2);
    let r = sk.ring();
    let o = r.canonical_order().clone();
    let oracle = brute_force_ideal(&components(&sk).unwrap()).unwrap();
    assert!(ideals_equal(&oracle, &Ideal::new(&r, family_generators(&sk)).unwrap(), &o).unwrap());

    let single = LinearSubspace::new(&r, vec![poly("x1 - x2", &r)]).unwrap();
    assert!(ideals_equal(&brute_force_ideal(std::slice::from_ref(&single)).unwrap(), &single.ideal(), &o).unwrap());

    let ra = VarRing::affine(3);
    let lines: Vec<LinearSubspace> = ["x1 - x2", "x1 - x3", "x2 - x3"]
        .iter()
        .map(|f| LinearSubspace::new(&ra, vec![poly(f, &ra)]).unwrap())
        .collect();
    let i = brute_force_ideal(&lines).unwrap();
    let v = Ideal::new(&ra, vec![poly("(x1-x2)*(x1-x3)*(x2-x3)", &ra)]).unwrap();
    assert!(ideals_equal(&i, &v, ra.canonical_order()).unwrap());
    assert_eq!(brute_force_ideal(&[]).unwrap_err(), ArrangementError::NoComponents);
}

fn assert_passes(s: FamilySpec) -> crate::report::VerificationReport {
    let rep = verify_family(&s);
    assert!(rep.passed(), "{rep}");
    rep
}

#[test]
fn verify_family_examples() {
    let rep = assert_passes(spec(Family::LiLi, 3, 2, 2));
    assert!(rep.checks.iter().all(|c| c.status == Status::Pass));

    let kl = spec(Family::KL, 3, 1, 2);
    assert_passes(kl);
    let r = kl.ring();
    let expected =
        Ideal::new(&r, ["x1^2-x2^2", "x1^2-x3^2", "x2^2-x3^2"].iter().map(|t| poly(t, &r)).collect()).unwrap();
    let got = Ideal::new(&r, family_generators(&kl)).unwrap();
    assert!(ideals_equal(&got, &expected, r.canonical_order()).unwrap());

    let li = spec(Family::LiLi, 4, 3, 1);
    assert_passes(li);
    assert_eq!(family_generators(&li).len(), 7);

    let cubic = verify_family(&spec(Family::LiLi, 3, 2, 3));
    assert!(cubic.passed(), "{cubic}");
    assert!(cubic.checks.iter().any(|c| c.status == Status::Skipped));
}

#[test]
fn verify_family_reports_a_false_identity() {
    // the component map is correct, so break the comparison directly
    let s = spec(Family::KL, 3, 1, 1);
    let r = s.ring();
    let wrong = Ideal::new(&r, vec![poly("x1 - x2", &r)]).unwrap();
    let truth = brute_force_ideal(&components(&s).unwrap()).unwrap();
    let mut rep = crate::report::VerificationReport::new("negative control");
    verify::equality_check(&mut rep, "ideal equality", &wrong, &truth);
    assert!(!rep.passed());
    let w = rep.checks[0].witness.clone().unwrap();
    assert!(Polynomial::parse(&w, &r).is_ok());
}

#[test]
fn block_ideal_numerics() {
    for m in [2u32, 3] {
        for p in 1..=3usize {
            let r = VarRing::affine(3);
            let sigma: Vec<usize> = (1..=p).collect();
            let i = block_ideal(&r, &[sigma], m);
            let h = hilbert(&i, r.canonical_order()).unwrap();
            assert_eq!(h.codim, p - 1);
            assert_eq!(h.degree, u64::from(m).pow(p as u32 - 1));
        }
    }
}

#[test]
fn ci_decomposition_examples() {
    let r = VarRing::projective(2);
    let f = |t: &str| poly(t, &r);
    let entries = vec![
        (f("x1^2 - x0^2"), vec![f("x1 - x0"), f("x1 + x0")]),
        (f("x2^2 - x0^2"), vec![f("x2 - x0"), f("x2 + x0")]),
    ];
    let pts = ci_decomposition(&entries).unwrap();
    assert_eq!(pts.len(), 4);
    let oracle = brute_force_ideal(&pts).unwrap();
    let ci = Ideal::new(&r, entries.iter().map(|e| e.0.clone()).collect()).unwrap();
    assert!(ideals_equal(&oracle, &ci, r.canonical_order()).unwrap());
    let expected = components(&spec(Family::Skeleton, 2, 0, 2)).unwrap();
    assert!(expected.iter().all(|e| pts.contains(e)));

    let ra = VarRing::affine(3);
    let g = |t: &str| poly(t, &ra);
    assert_eq!(ci_decomposition(&[(g("x1 - x2"), vec![g("x1 - x2")])]).unwrap().len(), 1);
    let sigma = vec![
        (g("x1^2 - x2^2"), vec![g("x1 - x2"), g("x1 + x2")]),
        (g("x1^2 - x3^2"), vec![g("x1 - x3"), g("x1 + x3")]),
    ];
    let lines = ci_decomposition(&sigma).unwrap();
    assert_eq!(lines.len(), 4);
    let ci = Ideal::new(&ra, sigma.iter().map(|e| e.0.clone()).collect()).unwrap();
    assert!(ideals_equal(&brute_force_ideal(&lines).unwrap(), &ci, ra.canonical_order()).unwrap());

    assert_eq!(
        ci_decomposition(&[(g("x1^2 - x2^2"), vec![g("x1 - x2"), g("x1 - x2")])]).unwrap_err(),
        ArrangementError::FactorMismatch(0)
    );
    let dup = vec![(g("x1*x2"), vec![g("x1"), g("x2")]), (g("x1*x2"), vec![g("x1"), g("x2")])];
    assert!(matches!(ci_decomposition(&dup), Err(ArrangementError::DependentForms(_))));
    let dup2 = vec![(g("x1*x2"), vec![g("x1"), g("x2")]), (g("x2*x1"), vec![g("x2"), g("x1")])];
    assert!(matches!(
        ci_decomposition(&dup2),
        Err(ArrangementError::DuplicateChoice(_)) | Err(ArrangementError::DependentForms(_))
    ));
}

#[test]
fn truncation_rank_examples() {
    assert!(!truncation_rank_test(3, 2, 1, &integer_point(&[0, 0, 1])).unwrap());
    assert!(truncation_rank_test(3, 2, 1, &integer_point(&[1, 1, 1])).unwrap());
    assert!(truncation_rank_test(3, 2, 1, &integer_point(&[2, -2, 2])).unwrap());
    assert_eq!(
        truncation_rank_test(3, 2, 1, &integer_point(&[1, 1])),
        Err(ArrangementError::PointLength { expected: 3, found: 2 })
    );
}

#[test]
fn sample_point_examples() {
    let r = VarRing::projective(2);
    let pt = LinearSubspace::new(&r, vec![poly("x1 + x0", &r), poly("x2 - x0", &r)]).unwrap();
    assert_eq!(sample_points(&pt, 1).unwrap(), vec![integer_point(&[1, -1, 1])]);

    let r4 = VarRing::projective(3);
    let line = LinearSubspace::new(&r4, vec![poly("x1 - x0", &r4), poly("x2 + x0", &r4)]).unwrap();
    let samples = sample_points(&line, 3).unwrap();
    assert_eq!(samples.len(), 3);
    assert!(samples.iter().all(|s| line.contains(s)));
    assert_eq!(sample_points(&line, 0).unwrap(), Vec::<Vec<Coeff>>::new());

    let implicit = LinearSubspace::implicit(&r4, vec![poly("x1", &r4)]).unwrap();
    assert_eq!(sample_points(&implicit, 1).unwrap_err(), ArrangementError::NoParametrization);
}

#[test]
fn codim_two_truncation_of_the_square() {
    let r = VarRing::projective(2);
    let lines: Vec<Polynomial> = ["x1 - x0", "x1 + x0", "x2 - x0", "x2 + x0"].iter().map(|t| poly(t, &r)).collect();
    let pts = truncation(&r, &lines, 2).unwrap();
    assert_eq!(pts.len(), 6);
    let reps: Vec<Vec<Coeff>> = pts.iter().map(|c| sample_points(c, 1).unwrap().remove(0)).collect();
    assert!(reps.contains(&integer_point(&[0, 0, 1])));
    assert!(reps.contains(&integer_point(&[0, 1, 0])));
}

#[test]
fn invalid_subspaces() {
    let r = VarRing::affine(2);
    assert!(matches!(
        LinearSubspace::new(&r, vec![poly("x1 - x2", &r), poly("2*x2 - 2*x1", &r)]),
        Err(ArrangementError::DependentForms(_))
    ));
    assert!(matches!(LinearSubspace::new(&r, vec![poly("x1^2", &r)]), Err(ArrangementError::NotLinear(_))));
    assert!(matches!(LinearSubspace::new(&r, vec![poly("x1 + 1", &r)]), Err(ArrangementError::NotLinear(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn samples_lie_on_their_subspace(coeffs in proptest::collection::vec(-4i64..=4, 8), count in 0usize..6) {
        let r = VarRing::projective(3);
        let forms: Vec<Polynomial> = coeffs
            .chunks(4)
            .map(|c| linear_form(&r, &integer_point(c)))
            .filter(|f| !f.is_zero())
            .collect();
        if let Ok(s) = LinearSubspace::new(&r, forms) {
            let pts = sample_points(&s, count).unwrap();
            prop_assert_eq!(pts.len(), count);
            for pt in pts {
                prop_assert!(s.contains(&pt));
            }
        }
    }
}
