use std::collections::BTreeSet;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::tree::LabeledTree;
use crate::domain::{Domain, VarId};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Heuristic {
    #[default]
    MinDegree,
    MinFill,
}

impl FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min-degree" => Ok(Heuristic::MinDegree),
            "min-fill" => Ok(Heuristic::MinFill),
            _ => Err(Error::InvalidTree(format!("unknown heuristic `{s}`"))),
        }
    }
}

impl std::fmt::Display for Heuristic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Heuristic::MinDegree => "min-degree",
            Heuristic::MinFill => "min-fill",
        })
    }
}

/// Builds a join tree covering `domains` by eliminating variables from the
/// interaction graph. Node `k` is the cluster of the `k`-th eliminated
/// variable; domain `i` is assigned to the cluster of its first eliminated
/// variable.
///
/// Ties go to the lowest variable id when `seed` is 0, otherwise to a seeded
/// random priority.
pub fn build_covering_join_tree(domains: &[Domain], heuristic: Heuristic, seed: u64) -> Result<LabeledTree> {
    let vars: BTreeSet<VarId> = domains.iter().flat_map(|d| d.vars().iter().copied()).collect();
    if vars.is_empty() {
        let tree = LabeledTree::new(vec![Domain::empty()], vec![])?;
        return tree.with_assignment(vec![0; domains.len()], domains);
    }
    let vars: Vec<VarId> = vars.into_iter().collect();
    let max = *vars.last().expect("nonempty") + 1;
    let mut priority: Vec<usize> = (0..max).collect();
    if seed != 0 {
        priority.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }

    let mut adj: Vec<BTreeSet<VarId>> = vec![BTreeSet::new(); max];
    for d in domains {
        for &a in d.vars() {
            for &b in d.vars() {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
    }

    let fill = |adj: &[BTreeSet<VarId>], v: VarId| -> usize {
        let ns: Vec<VarId> = adj[v].iter().copied().collect();
        let mut missing = 0;
        for (i, &a) in ns.iter().enumerate() {
            for &b in &ns[i + 1..] {
                if !adj[a].contains(&b) {
                    missing += 1;
                }
            }
        }
        missing
    };

    let mut remaining: BTreeSet<VarId> = vars.iter().copied().collect();
    let mut order: Vec<VarId> = Vec::with_capacity(vars.len());
    let mut clusters: Vec<Domain> = Vec::with_capacity(vars.len());
    while !remaining.is_empty() {
        let v = *remaining
            .iter()
            .min_by_key(|&&v| {
                let score = match heuristic {
                    Heuristic::MinDegree => adj[v].len(),
                    Heuristic::MinFill => fill(&adj, v),
                };
                (score, priority[v])
            })
            .expect("nonempty");
        let ns: Vec<VarId> = adj[v].iter().copied().collect();
        clusters.push(Domain::from_ids(ns.iter().copied().chain([v])));
        for &a in &ns {
            adj[a].remove(&v);
            for &b in &ns {
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        adj[v].clear();
        remaining.remove(&v);
        order.push(v);
    }

    let mut position = vec![usize::MAX; max];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    let first_eliminated = |d: &Domain| d.vars().iter().map(|&v| position[v]).min();

    let mut edges = Vec::new();
    let mut roots = Vec::new();
    for (k, c) in clusters.iter().enumerate() {
        let rest = c.difference(&Domain::from_ids([order[k]]));
        match first_eliminated(&rest) {
            Some(p) => edges.push((k, p)),
            None => roots.push(k),
        }
    }
    for w in roots.windows(2) {
        edges.push((w[0], w[1]));
    }
    let assignment = domains
        .iter()
        .map(|d| first_eliminated(d).unwrap_or(0))
        .collect();
    LabeledTree::new(clusters, edges)?.with_assignment(assignment, domains)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(ids: &[usize]) -> Domain {
        Domain::from_ids(ids.iter().copied())
    }

    fn covers(t: &LabeledTree, domains: &[Domain]) -> bool {
        domains
            .iter()
            .zip(t.assignment())
            .all(|(d, &v)| d.is_subset(t.label(v)))
    }

    #[test]
    fn chain_of_two_factors() {
        let fs = [d(&[0, 1]), d(&[1, 2])];
        for h in [Heuristic::MinDegree, Heuristic::MinFill] {
            let t = build_covering_join_tree(&fs, h, 0).unwrap();
            assert!(t.len() <= 3);
            assert!(t.is_join_tree());
            assert!(covers(&t, &fs));
        }
    }

    #[test]
    fn single_factor() {
        let fs = [d(&[0, 1, 2])];
        let t = build_covering_join_tree(&fs, Heuristic::MinFill, 0).unwrap();
        assert!(t.labels().iter().all(|l| l.is_subset(&fs[0])));
        assert!(t.labels().contains(&fs[0]));
        assert!(covers(&t, &fs));
    }

    #[test]
    fn disconnected_factors() {
        let fs = [d(&[0]), d(&[1])];
        let t = build_covering_join_tree(&fs, Heuristic::MinDegree, 0).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.edges().len(), 1);
        assert!(t.is_join_tree());
        assert!(covers(&t, &fs));
    }

    #[test]
    fn no_variables() {
        let fs = [Domain::empty(), Domain::empty()];
        let t = build_covering_join_tree(&fs, Heuristic::MinDegree, 0).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.assignment(), &[0, 0]);
        let t = build_covering_join_tree(&[], Heuristic::MinDegree, 0).unwrap();
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn ties_follow_global_order() {
        let fs = [d(&[2, 3]), d(&[0, 1])];
        let t = build_covering_join_tree(&fs, Heuristic::MinDegree, 0).unwrap();
        assert_eq!(t.label(0), &d(&[0, 1]));
        let again = build_covering_join_tree(&fs, Heuristic::MinDegree, 0).unwrap();
        assert_eq!(t, again);
        let seeded = build_covering_join_tree(&fs, Heuristic::MinDegree, 9).unwrap();
        assert_eq!(seeded, build_covering_join_tree(&fs, Heuristic::MinDegree, 9).unwrap());
    }

    #[test]
    fn parses_heuristics() {
        assert_eq!("min-fill".parse::<Heuristic>().unwrap(), Heuristic::MinFill);
        assert!("greedy".parse::<Heuristic>().is_err());
    }
}
