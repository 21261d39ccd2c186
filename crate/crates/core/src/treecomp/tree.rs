use crate::domain::{cond_indep_subsets, Domain};
use crate::error::{Error, Result};

/// A tree whose nodes carry domains, with an optional factor assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTree {
    labels: Vec<Domain>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    assignment: Vec<usize>,
}

/// Node count up to which [`markov_direct`] is evaluated by [`LabeledTree::is_markov_tree`].
pub const DIRECT_MARKOV_LIMIT: usize = 8;

impl LabeledTree {
    pub fn new(labels: Vec<Domain>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidTree("a tree needs at least one node".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} nodes need {} edges, found {}",
                n,
                n - 1,
                edges.len()
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(Error::InvalidTree(format!("edge ({a},{b}) names a missing node")));
            }
            if a == b {
                return Err(Error::InvalidTree(format!("self loop at node {a}")));
            }
            if adjacency[a].contains(&b) {
                return Err(Error::InvalidTree(format!("duplicate edge ({a},{b})")));
            }
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidTree(format!("node {v} is not connected")));
        }
        Ok(LabeledTree {
            labels,
            edges,
            adjacency,
            assignment: Vec::new(),
        })
    }

    /// Assigns factor `i` to node `assignment[i]`, checking coverage.
    pub fn with_assignment(mut self, assignment: Vec<usize>, factor_domains: &[Domain]) -> Result<Self> {
        if assignment.len() != factor_domains.len() {
            return Err(Error::InvalidTree(format!(
                "{} factors but {} assignments",
                factor_domains.len(),
                assignment.len()
            )));
        }
        for (i, (&v, d)) in assignment.iter().zip(factor_domains).enumerate() {
            if v >= self.len() {
                return Err(Error::InvalidTree(format!("factor {i} assigned to missing node {v}")));
            }
            if !d.is_subset(&self.labels[v]) {
                return Err(Error::InvalidTree(format!(
                    "factor {i} is not covered by the label of node {v}"
                )));
            }
        }
        self.assignment = assignment;
        Ok(self)
    }

    /// Assigns every factor to the lowest-index node covering its domain.
    pub fn assign_covering(self, factor_domains: &[Domain]) -> Result<Self> {
        let assignment = factor_domains
            .iter()
            .enumerate()
            .map(|(i, d)| {
                self.covering_node(d)
                    .ok_or_else(|| Error::InvalidTree(format!("no node covers factor {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.with_assignment(assignment, factor_domains)
    }

    /// Lowest-index node whose label contains `d`.
    pub fn covering_node(&self, d: &Domain) -> Option<usize> {
        self.labels.iter().position(|l| d.is_subset(l))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[Domain] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &Domain {
        &self.labels[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Factor indices assigned to `v`, ascending.
    pub fn factors_at(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.assignment
            .iter()
            .enumerate()
            .filter(move |(_, &n)| n == v)
            .map(|(i, _)| i)
    }

    /// Parent of every node when the tree hangs from `root` (root maps to itself),
    /// together with a preorder listing.
    pub fn rooted(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let mut parent = vec![usize::MAX; self.len()];
        let mut order = Vec::with_capacity(self.len());
        parent[root] = root;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in self.adjacency[v].iter().rev() {
                if parent[w] == usize::MAX {
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        (parent, order)
    }

    /// Nodes on the path from `u` to `v`, both included.
    pub fn path(&self, u: usize, v: usize) -> Vec<usize> {
        let (parent, _) = self.rooted(v);
        let mut p = vec![u];
        let mut x = u;
        while x != v {
            x = parent[x];
            p.push(x);
        }
        p
    }

    /// Running intersection: `λ(v) ∩ λ(u) ⊆ λ(w)` for every `w` between `v` and `u`.
    pub fn is_join_tree(&self) -> bool {
        self.join_tree_violation().is_none()
    }

    /// A pair `(v, u)` violating the running intersection property.
    pub fn join_tree_violation(&self) -> Option<(usize, usize)> {
        for v in 0..self.len() {
            // (node, predecessor, intersection of λ(v) with every label on the path so far)
            let mut stack = vec![(v, usize::MAX, self.labels[v].clone())];
            while let Some((w, from, acc)) = stack.pop() {
                for &u in &self.adjacency[w] {
                    if u == from {
                        continue;
                    }
                    let inter = self.labels[v].intersection(&self.labels[u]);
                    if !inter.is_subset(&acc) {
                        return Some((v, u));
                    }
                    stack.push((u, w, acc.intersection(&self.labels[u])));
                }
            }
        }
        None
    }

    /// For subset-lattice labels Markov trees and join trees coincide. Small
    /// trees are additionally checked against the neighbour-split definition.
    pub fn is_markov_tree(&self) -> bool {
        let join = self.is_join_tree();
        if self.len() <= DIRECT_MARKOV_LIMIT {
            debug_assert_eq!(join, markov_direct(self));
        }
        join
    }

    /// Subtree on the node set obtained by deleting leaf `v`; nodes are renumbered
    /// in order and the assignment is dropped.
    pub fn remove_leaf(&self, v: usize) -> Result<LabeledTree> {
        if self.len() < 2 || self.adjacency[v].len() != 1 {
            return Err(Error::InvalidTree(format!("node {v} is not a leaf")));
        }
        let renum = |x: usize| if x > v { x - 1 } else { x };
        let labels = self
            .labels
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != v)
            .map(|(_, l)| l.clone())
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|(a, b)| *a != v && *b != v)
            .map(|&(a, b)| (renum(a), renum(b)))
            .collect();
        LabeledTree::new(labels, edges)
    }

    /// Union of the labels in the component of `w` after removing `v`.
    pub fn branch_label(&self, v: usize, w: usize) -> Domain {
        let mut acc = Domain::empty();
        let mut stack = vec![(w, v)];
        while let Some((x, from)) = stack.pop() {
            acc = acc.union(&self.labels[x]);
            for &y in &self.adjacency[x] {
                if y != from {
                    stack.push((y, x));
                }
            }
        }
        acc
    }
}

/// Family independence `⊥{x_1..x_n} | z` in the subset lattice, evaluated over
/// all splits into disjoint index sets `J`, `K`.
pub fn family_indep(xs: &[Domain], z: &Domain) -> bool {
    let n = xs.len();
    if n < 2 {
        return true;
    }
    // each index goes to J, K or neither
    let total = 3usize.pow(n as u32);
    (0..total).all(|mut code| {
        let (mut j, mut k) = (Domain::empty(), Domain::empty());
        for x in xs {
            match code % 3 {
                1 => j = j.union(x),
                2 => k = k.union(x),
                _ => {}
            }
            code /= 3;
        }
        cond_indep_subsets(&j, &k, z)
    })
}

/// Markov property checked node by node against the neighbour-branch family.
pub fn markov_direct(tree: &LabeledTree) -> bool {
    (0..tree.len()).all(|v| {
        let branches: Vec<Domain> = tree
            .neighbors(v)
            .iter()
            .map(|&w| tree.branch_label(v, w))
            .collect();
        family_indep(&branches, tree.label(v))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(ids: &[usize]) -> Domain {
        Domain::from_ids(ids.iter().copied())
    }

    #[test]
    fn malformed_trees() {
        assert!(LabeledTree::new(vec![], vec![]).is_err());
        assert!(LabeledTree::new(vec![d(&[0]), d(&[1])], vec![]).is_err());
        assert!(LabeledTree::new(vec![d(&[0]), d(&[1]), d(&[2])], vec![(0, 1), (0, 1)]).is_err());
        assert!(LabeledTree::new(vec![d(&[0]), d(&[1])], vec![(0, 0)]).is_err());
        assert!(LabeledTree::new(vec![d(&[0]), d(&[1])], vec![(0, 2)]).is_err());
    }

    #[test]
    fn join_tree_examples() {
        // X=0 Y=1 Z=2 W=3
        let single = LabeledTree::new(vec![d(&[0, 1])], vec![]).unwrap();
        assert!(single.is_join_tree());
        let chain = LabeledTree::new(vec![d(&[0, 1]), d(&[1, 2]), d(&[2, 3])], vec![(0, 1), (1, 2)]).unwrap();
        assert!(chain.is_join_tree());
        let bad = LabeledTree::new(vec![d(&[0, 1]), d(&[2]), d(&[0, 3])], vec![(0, 1), (1, 2)]).unwrap();
        assert!(!bad.is_join_tree());
        assert!(bad.join_tree_violation().is_some());
    }

    #[test]
    fn markov_examples() {
        let chain = LabeledTree::new(vec![d(&[0, 1]), d(&[1, 2]), d(&[2, 3])], vec![(0, 1), (1, 2)]).unwrap();
        assert!(chain.is_markov_tree() && markov_direct(&chain));
        let bad = LabeledTree::new(vec![d(&[0, 1]), d(&[2]), d(&[0, 3])], vec![(0, 1), (1, 2)]).unwrap();
        assert!(!bad.is_markov_tree() && !markov_direct(&bad));
        // X=0 Y=1 Z=2 W=3 A=4 B=5: {X,Y}-{Y,Z,W} with leaves {Z,A}, {W,B}
        let star = LabeledTree::new(
            vec![d(&[1, 2, 3]), d(&[0, 1]), d(&[2, 4]), d(&[3, 5])],
            vec![(0, 1), (0, 2), (0, 3)],
        )
        .unwrap();
        assert_eq!(markov_direct(&star), star.is_join_tree());
        assert!(star.is_join_tree());
    }

    #[test]
    fn paths_and_branches() {
        let chain = LabeledTree::new(vec![d(&[0]), d(&[1]), d(&[2])], vec![(1, 0), (1, 2)]).unwrap();
        assert_eq!(chain.path(0, 2), vec![0, 1, 2]);
        assert_eq!(chain.branch_label(0, 1), d(&[1, 2]));
        let sub = chain.remove_leaf(0).unwrap();
        assert_eq!(sub.labels(), &[d(&[1]), d(&[2])]);
        assert!(chain.remove_leaf(1).is_err());
    }

    #[test]
    fn assignment_is_checked() {
        let t = LabeledTree::new(vec![d(&[0, 1]), d(&[1, 2])], vec![(0, 1)]).unwrap();
        assert!(t.clone().with_assignment(vec![0], &[d(&[2])]).is_err());
        let t = t.assign_covering(&[d(&[2]), d(&[1])]).unwrap();
        assert_eq!(t.assignment(), &[1, 0]);
        assert_eq!(t.factors_at(1).collect::<Vec<_>>(), vec![0]);
    }
}
