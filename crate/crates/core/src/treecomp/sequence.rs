use rand::Rng;

use super::tree::LabeledTree;
use crate::domain::Domain;
use crate::error::{Error, Result};

/// A hypertree construction sequence `x_0..x_{n-1}` with `b(i) > i`.
/// Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationSequence {
    domains: Vec<Domain>,
    b: Vec<usize>,
}

impl EliminationSequence {
    pub fn new(domains: Vec<Domain>, b: Vec<usize>) -> Result<Self> {
        let n = domains.len();
        if n == 0 {
            return Err(Error::InvalidSequence("empty sequence".into()));
        }
        if b.len() != n - 1 {
            return Err(Error::InvalidSequence(format!(
                "{} domains need {} entries of b, found {}",
                n,
                n - 1,
                b.len()
            )));
        }
        for (i, &bi) in b.iter().enumerate() {
            if bi <= i || bi >= n {
                return Err(Error::InvalidSequence(format!(
                    "b({i}) = {bi} must lie in {}..{}",
                    i + 1,
                    n - 1
                )));
            }
        }
        Ok(EliminationSequence { domains, b })
    }

    /// Uses the first valid `b(i)` for every position, if one exists.
    pub fn with_first_valid_b(domains: Vec<Domain>) -> Result<Self> {
        let b = (0..domains.len().saturating_sub(1))
            .map(|i| {
                valid_parents(&domains, i)
                    .first()
                    .copied()
                    .ok_or_else(|| Error::InvalidSequence(format!("no valid b({i})")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(domains, b)
    }

    pub fn len(&self) -> usize {
        self.domains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.domains.is_empty()
    }

    pub fn domains(&self) -> &[Domain] {
        &self.domains
    }

    pub fn domain(&self, i: usize) -> &Domain {
        &self.domains[i]
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    /// `y_i`, the join of every domain after position `i`.
    pub fn tail(&self, i: usize) -> Domain {
        self.domains[i + 1..]
            .iter()
            .fold(Domain::empty(), |acc, d| acc.union(d))
    }

    /// First `i` with `x_i ∩ y_i ⊄ x_{b(i)}`.
    pub fn first_violation(&self) -> Option<usize> {
        (0..self.b.len()).find(|&i| {
            !self.domains[i]
                .intersection(&self.tail(i))
                .is_subset(&self.domains[self.b[i]])
        })
    }

    pub fn verify(&self) -> bool {
        self.first_violation().is_none()
    }

    /// The tree with edges `{i, b(i)}` and labels `x_i`; factor `i` sits at node `i`.
    pub fn to_join_tree(&self) -> Result<LabeledTree> {
        if let Some(i) = self.first_violation() {
            return Err(Error::InvalidSequence(format!("condition fails at position {i}")));
        }
        let edges = self.b.iter().enumerate().map(|(i, &bi)| (i, bi)).collect();
        LabeledTree::new(self.domains.clone(), edges)?
            .with_assignment((0..self.len()).collect(), &self.domains)
    }

    /// A random valid sequence of `n` domains over variables `0..nvars`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, n: usize, nvars: usize) -> Self {
        assert!(n >= 1);
        let mut domains = vec![Domain::empty(); n];
        let mut b = vec![0; n - 1];
        let mut tail = Domain::empty();
        for i in (0..n).rev() {
            let mut ids: Vec<usize> = Vec::new();
            if i + 1 < n {
                b[i] = rng.gen_range(i + 1..n);
                ids.extend(domains[b[i]].vars().iter().copied().filter(|_| rng.gen_bool(0.6)));
            }
            ids.extend((0..nvars).filter(|v| !tail.contains(*v) && rng.gen_bool(0.35)));
            if ids.is_empty() && nvars > 0 && rng.gen_bool(0.8) {
                let v = rng.gen_range(0..nvars);
                if i + 1 == n || domains[b[i]].contains(v) || !tail.contains(v) {
                    ids.push(v);
                }
            }
            domains[i] = Domain::from_ids(ids);
            tail = tail.union(&domains[i]);
        }
        EliminationSequence { domains, b }
    }
}

/// Every `j > i` that can serve as `b(i)`.
pub fn valid_parents(domains: &[Domain], i: usize) -> Vec<usize> {
    let tail = domains[i + 1..]
        .iter()
        .fold(Domain::empty(), |acc, d| acc.union(d));
    let need = domains[i].intersection(&tail);
    (i + 1..domains.len())
        .filter(|&j| need.is_subset(&domains[j]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn d(ids: &[usize]) -> Domain {
        Domain::from_ids(ids.iter().copied())
    }

    #[test]
    fn verify_examples() {
        let s = EliminationSequence::new(vec![d(&[0])], vec![]).unwrap();
        assert!(s.verify());
        // X=0 Y=1 Z=2, b = (2,3) in 1-based numbering
        let s = EliminationSequence::new(vec![d(&[0, 1]), d(&[1, 2]), d(&[2])], vec![1, 2]).unwrap();
        assert!(s.verify());
        let s = EliminationSequence::new(vec![d(&[0, 1]), d(&[2]), d(&[0, 2])], vec![1, 2]).unwrap();
        assert!(!s.verify());
        assert_eq!(s.first_violation(), Some(0));
        assert!(EliminationSequence::new(vec![d(&[0]), d(&[1])], vec![0]).is_err());
    }

    #[test]
    fn to_join_tree_examples() {
        let two = EliminationSequence::new(vec![d(&[0, 1]), d(&[1])], vec![1]).unwrap();
        let t = two.to_join_tree().unwrap();
        assert_eq!(t.edges(), &[(0, 1)]);
        let s = EliminationSequence::new(vec![d(&[0, 1]), d(&[1, 2]), d(&[2])], vec![1, 2]).unwrap();
        let t = s.to_join_tree().unwrap();
        assert_eq!(t.path(0, 2), vec![0, 1, 2]);
        assert!(t.is_join_tree());
        let bad = EliminationSequence::new(vec![d(&[0, 1]), d(&[2]), d(&[0, 2])], vec![1, 2]).unwrap();
        assert!(bad.to_join_tree().is_err());
    }

    #[test]
    fn random_sequences_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let n = rng.gen_range(1..=6);
            let s = EliminationSequence::random(&mut rng, n, 6);
            assert!(s.verify(), "{s:?}");
            assert!(s.to_join_tree().unwrap().is_join_tree());
        }
    }

    #[test]
    fn first_valid_b() {
        let s = EliminationSequence::with_first_valid_b(vec![d(&[0, 1]), d(&[1, 2]), d(&[2])]).unwrap();
        assert_eq!(s.b(), &[1, 2]);
        let s = EliminationSequence::with_first_valid_b(vec![d(&[0, 1]), d(&[2]), d(&[0, 2])]).unwrap();
        assert_eq!(s.b(), &[2, 2]);
        assert!(EliminationSequence::with_first_valid_b(vec![d(&[0, 1]), d(&[1]), d(&[0])]).is_err());
    }
}
