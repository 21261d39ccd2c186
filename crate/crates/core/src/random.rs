//! Seeded generators of small random instances, used by the checkers and tests.

use std::sync::Arc;

use rand::Rng;

use crate::belief::{FocalSet, Kind, SetPotential};
use crate::domain::{Domain, VariableCatalog};
use crate::semiring::Semiring;
use crate::treecomp::LabeledTree;
use crate::valuation::Valuation;

/// Variables `V0, V1, …` with frame sizes drawn from `1..=max_frame`.
pub fn catalog<R: Rng + ?Sized>(rng: &mut R, nvars: usize, max_frame: usize) -> Arc<VariableCatalog> {
    let vars = (0..nvars).map(|i| (format!("V{i}"), rng.gen_range(1..=max_frame)));
    Arc::new(VariableCatalog::with_sizes(vars).expect("distinct names"))
}

/// Each of the variables `0..nvars` independently with probability `p`.
pub fn domain<R: Rng + ?Sized>(rng: &mut R, nvars: usize, p: f64) -> Domain {
    Domain::from_ids((0..nvars).filter(|_| rng.gen_bool(p)))
}

/// Sampled table; with small probability the null valuation.
pub fn valuation<R: Rng + ?Sized>(
    rng: &mut R,
    s: &Semiring,
    cat: &Arc<VariableCatalog>,
    d: &Domain,
) -> Valuation {
    let n = cat.config_count(d).expect("small domain");
    let table = match s.zero() {
        Some(z) if rng.gen_range(0..12) == 0 => vec![z; n],
        _ => (0..n).map(|_| s.sample(rng)).collect(),
    };
    Valuation::new(*s, cat.clone(), d.clone(), table).expect("sampled values lie in the carrier")
}

/// A random factor list: up to `max_factors` valuations over up to `max_vars`
/// variables with frames of size at most `max_frame`.
pub fn factor_problem<R: Rng + ?Sized>(
    rng: &mut R,
    s: &Semiring,
    max_vars: usize,
    max_frame: usize,
    max_factors: usize,
) -> (Arc<VariableCatalog>, Vec<Valuation>) {
    let nvars = rng.gen_range(1..=max_vars);
    let cat = catalog(rng, nvars, max_frame);
    let k = rng.gen_range(1..=max_factors);
    let factors = (0..k)
        .map(|_| {
            let d = domain(rng, nvars, 0.4);
            valuation(rng, s, &cat, &d)
        })
        .collect();
    (cat, factors)
}

/// Up to `max_focal` focal sets with positive masses. A bpa never receives the
/// empty set and its masses sum to one.
pub fn potential<R: Rng + ?Sized>(
    rng: &mut R,
    cat: &Arc<VariableCatalog>,
    d: &Domain,
    max_focal: usize,
    kind: Kind,
) -> SetPotential {
    let n = cat.config_count(d).expect("small domain");
    let k = rng.gen_range(1..=max_focal);
    let mut entries = Vec::with_capacity(k);
    for _ in 0..k {
        let mut configs: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if configs.is_empty() && (kind == Kind::Bpa || rng.gen_bool(0.5)) {
            configs.push(rng.gen_range(0..n));
        }
        let set = FocalSet::from_indices(cat, d.clone(), configs).expect("in range");
        entries.push((set, rng.gen_range(1..=16) as f64));
    }
    if kind == Kind::Bpa {
        let total: f64 = entries.iter().map(|(_, m)| m).sum();
        for e in &mut entries {
            e.1 /= total;
        }
    }
    SetPotential::new(cat.clone(), d.clone(), entries, kind).expect("valid masses")
}

/// A uniformly shaped random tree over the given labels: node `i > 0` is
/// attached to a random earlier node.
pub fn tree<R: Rng + ?Sized>(rng: &mut R, labels: Vec<Domain>) -> LabeledTree {
    let edges = (1..labels.len()).map(|i| (rng.gen_range(0..i), i)).collect();
    LabeledTree::new(labels, edges).expect("attachment yields a tree")
}
