use std::sync::Arc;

use infalg::belief::{belief_to_mass, commonality_to_mass, FocalSet, Kind, SetPotential, DEFAULT_SUBSET_CAP};
use infalg::{random, Domain, Tolerance, VariableCatalog};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn close(a: f64, b: f64) -> bool {
    Tolerance::default().eq(a, b)
}

fn frame(n: usize) -> (Arc<VariableCatalog>, Domain) {
    let cat = Arc::new(VariableCatalog::with_sizes([("X", n)]).unwrap());
    let d = cat.full_domain();
    (cat, d)
}

fn subset(cat: &VariableCatalog, d: &Domain, mask: usize, n: usize) -> FocalSet {
    FocalSet::from_indices(cat, d.clone(), (0..n).filter(|i| mask >> i & 1 == 1).collect()).unwrap()
}

/// Catalog whose frames multiply to at most 9 configurations.
fn joint_catalog(rng: &mut ChaCha8Rng) -> Arc<VariableCatalog> {
    loop {
        let n = rng.gen_range(1..=3);
        let cat = random::catalog(rng, n, 3);
        if cat.config_count(&cat.full_domain()).unwrap() <= 9 {
            return cat;
        }
    }
}

#[test]
fn combination_commutes_and_associates() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..300 {
        let cat = joint_catalog(&mut rng);
        let n = cat.len();
        let [a, b, c] = [0; 3].map(|_| {
            let d = random::domain(&mut rng, n, 0.6);
            random::potential(&mut rng, &cat, &d, 4, Kind::Raw)
        });
        assert!(a.combine(&b).unwrap().approx_eq(&b.combine(&a).unwrap()));
        let left = a.combine(&b).unwrap().combine(&c).unwrap();
        let right = a.combine(&b.combine(&c).unwrap()).unwrap();
        assert!(left.approx_eq(&right), "{}\nvs\n{}", left.render(), right.render());
    }
}

/// Dempster's rule straight from its definition, over explicit config sets.
fn brute_dempster(a: &SetPotential, b: &SetPotential) -> (Vec<(Vec<usize>, f64)>, f64) {
    let mut acc: Vec<(Vec<usize>, f64)> = Vec::new();
    let mut conflict = 0.0;
    for (s1, m1) in a.focal_sets() {
        for (s2, m2) in b.focal_sets() {
            let inter: Vec<usize> = s1.indices().iter().copied().filter(|i| s2.contains(*i)).collect();
            if inter.is_empty() {
                conflict += m1 * m2;
            } else if let Some(e) = acc.iter_mut().find(|e| e.0 == inter) {
                e.1 += m1 * m2;
            } else {
                acc.push((inter, m1 * m2));
            }
        }
    }
    for e in &mut acc {
        e.1 /= 1.0 - conflict;
    }
    (acc, conflict)
}

#[test]
fn dempster_matches_brute_force_on_a_shared_frame() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    for _ in 0..300 {
        let (cat, d) = frame(rng.gen_range(1..=5));
        let a = random::potential(&mut rng, &cat, &d, 4, Kind::Bpa);
        let b = random::potential(&mut rng, &cat, &d, 4, Kind::Bpa);
        let (expected, conflict) = brute_dempster(&a, &b);
        if close(conflict, 1.0) {
            assert!(a.dempster_combine(&b).is_err());
            continue;
        }
        let got = a.dempster_combine(&b).unwrap();
        assert_eq!(got.kind(), Kind::Bpa);
        assert!(close(got.conflict(), conflict));
        assert_eq!(got.len(), expected.len());
        for (set, m) in expected {
            let f = FocalSet::from_indices(&cat, d.clone(), set).unwrap();
            assert!(close(got.mass(&f), m));
        }
        checked += 1;
    }
    assert!(checked > 100);
}

#[test]
fn dempster_is_commutative_and_associative() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let (cat, d) = frame(rng.gen_range(2..=4));
        let [a, b, c] = [0; 3].map(|_| random::potential(&mut rng, &cat, &d, 3, Kind::Bpa));
        let (Ok(ab), Ok(ba)) = (a.dempster_combine(&b), b.dempster_combine(&a)) else {
            continue;
        };
        assert!(ab.approx_eq(&ba));
        let (Ok(bc), Ok(ab_c)) = (b.dempster_combine(&c), ab.dempster_combine(&c)) else {
            continue;
        };
        let a_bc = a.dempster_combine(&bc).unwrap();
        let masses = |p: &SetPotential| p.focal_sets().map(|(s, m)| (s.indices().to_vec(), m)).collect::<Vec<_>>();
        let (l, r) = (masses(&ab_c), masses(&a_bc));
        assert_eq!(l.len(), r.len());
        assert!(l.iter().zip(&r).all(|(x, y)| x.0 == y.0 && close(x.1, y.1)));
    }
}

#[test]
fn moebius_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..100 {
        let (cat, d) = frame(rng.gen_range(1..=4));
        let kind = if rng.gen_bool(0.5) { Kind::Bpa } else { Kind::Raw };
        let m = random::potential(&mut rng, &cat, &d, 5, kind);
        let b = m.belief_table(DEFAULT_SUBSET_CAP).unwrap();
        let q = m.commonality_table(DEFAULT_SUBSET_CAP).unwrap();
        assert!(belief_to_mass(cat.clone(), &b).unwrap().approx_eq(&m));
        assert!(commonality_to_mass(cat.clone(), &q).unwrap().approx_eq(&m));
    }
}

#[test]
fn support_is_monotone_and_dual_to_plausibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let (cat, d) = frame(n);
        let m = random::potential(&mut rng, &cat, &d, 4, Kind::Bpa);
        for h in 0..1usize << n {
            let hs = subset(&cat, &d, h, n);
            let sp = m.degree_of_support(&hs).unwrap().1;
            let pl = m.degree_of_plausibility(&hs.complement(&cat).unwrap()).unwrap();
            assert!(close(pl, 1.0 - sp));
            for g in (0..1usize << n).filter(|g| g & h == h) {
                let sg = m.degree_of_support(&subset(&cat, &d, g, n)).unwrap().1;
                assert!(sp <= sg + 1e-12);
            }
        }
    }
}

#[test]
fn quasi_support_of_an_intersection_counts_common_focal_subsets() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let (cat, d) = frame(n);
        let m = random::potential(&mut rng, &cat, &d, 5, Kind::Raw);
        for h1 in 0..1usize << n {
            for h2 in 0..1usize << n {
                let both = subset(&cat, &d, h1, n).intersection(&subset(&cat, &d, h2, n));
                let direct = m.belief(&both).unwrap();
                let brute: f64 = m
                    .focal_sets()
                    .filter(|(s, _)| s.indices().iter().all(|&i| h1 >> i & 1 == 1 && h2 >> i & 1 == 1))
                    .map(|(_, w)| w)
                    .sum();
                assert!(close(direct, brute));
            }
        }
    }
}
