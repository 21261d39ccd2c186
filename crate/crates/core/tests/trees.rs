use infalg::random;
use infalg::treecomp::{build_covering_join_tree, family_indep, markov_direct, EliminationSequence, Heuristic};
use infalg::Domain;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn from_mask(mask: u32) -> Domain {
    Domain::from_ids((0..6).filter(|i| mask >> i & 1 == 1))
}

/// Pairwise form of family independence in the subset lattice.
fn pairwise_indep(xs: &[Domain], z: &Domain) -> bool {
    xs.iter()
        .enumerate()
        .all(|(i, a)| xs[i + 1..].iter().all(|b| a.intersection(b).is_subset(z)))
}

#[test]
fn join_tree_and_direct_markov_check_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut positives = 0;
    for _ in 0..600 {
        let n = rng.gen_range(1..=5);
        let labels = (0..n).map(|_| random::domain(&mut rng, 5, 0.45)).collect();
        let t = random::tree(&mut rng, labels);
        let join = t.is_join_tree();
        assert_eq!(join, markov_direct(&t), "{t:?}");
        assert_eq!(join, t.is_markov_tree());
        positives += join as usize;
    }
    assert!(positives > 50 && positives < 550);
}

#[test]
fn removing_a_leaf_keeps_the_tree_markov() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let n = rng.gen_range(2..=7);
        let t = EliminationSequence::random(&mut rng, n, 6).to_join_tree().unwrap();
        assert!(t.is_markov_tree());
        for v in 0..t.len() {
            if t.neighbors(v).len() == 1 {
                let sub = t.remove_leaf(v).unwrap();
                assert_eq!(sub.len(), t.len() - 1);
                assert!(sub.is_markov_tree());
                assert!(markov_direct(&sub));
            }
        }
    }
}

fn closure_holds(xs: &[Domain], z: &Domain) {
    let n = xs.len();
    let mut rev = xs.to_vec();
    rev.reverse();
    assert!(family_indep(&rev, z));
    let mut rot = xs.to_vec();
    rot.rotate_left(1);
    assert!(family_indep(&rot, z));
    for j in 0..1u32 << n {
        let sub: Vec<Domain> = (0..n).filter(|i| j >> i & 1 == 1).map(|i| xs[i].clone()).collect();
        assert!(family_indep(&sub, z));
    }
    let x1 = xs[0].vars();
    for m in 0..1u32 << x1.len() {
        let y = Domain::from_ids((0..x1.len()).filter(|i| m >> i & 1 == 1).map(|i| x1[i]));
        let mut ys = xs.to_vec();
        ys[0] = y;
        assert!(family_indep(&ys, z));
    }
    if n >= 2 {
        let mut merged = vec![xs[0].union(&xs[1])];
        merged.extend_from_slice(&xs[2..]);
        assert!(family_indep(&merged, z));
    }
    let mut with_z = xs.to_vec();
    with_z[0] = xs[0].union(z);
    assert!(family_indep(&with_z, z));
}

#[test]
fn family_independence_closure_exhaustive_on_three_variables() {
    for z in 0..8u32 {
        let z = from_mask(z);
        for n in 1..=4u32 {
            for code in 0..8u32.pow(n) {
                let xs: Vec<Domain> = (0..n).map(|i| from_mask(code >> (3 * i) & 7)).collect();
                let indep = family_indep(&xs, &z);
                assert_eq!(indep, pairwise_indep(&xs, &z));
                if indep {
                    closure_holds(&xs, &z);
                }
            }
        }
    }
}

#[test]
fn family_independence_closure_sampled_on_six_variables() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut hits = 0;
    for _ in 0..5000 {
        let z = random::domain(&mut rng, 6, 0.5);
        let n = rng.gen_range(1..=4);
        let xs: Vec<Domain> = (0..n).map(|_| random::domain(&mut rng, 6, 0.35)).collect();
        let indep = family_indep(&xs, &z);
        assert_eq!(indep, pairwise_indep(&xs, &z));
        if indep {
            hits += 1;
            closure_holds(&xs, &z);
        }
    }
    assert!(hits > 500);
}

#[test]
fn built_trees_are_covering_join_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..500 {
        let k = rng.gen_range(1..=6);
        let domains: Vec<Domain> = (0..k).map(|_| random::domain(&mut rng, 7, 0.3)).collect();
        let h = if rng.gen_bool(0.5) { Heuristic::MinDegree } else { Heuristic::MinFill };
        let t = build_covering_join_tree(&domains, h, rng.gen_range(0..3)).unwrap();
        assert!(t.is_join_tree());
        assert_eq!(t.assignment().len(), k);
        for (i, d) in domains.iter().enumerate() {
            assert!(d.is_subset(t.label(t.assignment()[i])));
        }
    }
}

#[test]
fn construction_sequences_yield_join_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..500 {
        let n = rng.gen_range(1..=7);
        let seq = EliminationSequence::random(&mut rng, n, 6);
        assert!(seq.verify());
        let t = seq.to_join_tree().unwrap();
        assert!(t.is_join_tree());
        assert_eq!(t.edges().len(), n - 1);
    }
}
