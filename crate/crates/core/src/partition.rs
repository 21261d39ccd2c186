//! Partitions of a finite universe ordered by refinement (coarse ≤ fine),
//! saturation operators and the induced conditional independence relation.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::report::CheckReport;

pub type ElementSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl Universe {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::DuplicateElement(l.clone()));
            }
        }
        Ok(Arc::new(Universe { labels, index }))
    }

    /// Universe labelled `1..=n`.
    pub fn numbered(n: usize) -> Result<Arc<Self>> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn element(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn set<S: AsRef<str>>(&self, labels: impl IntoIterator<Item = S>) -> Result<ElementSet> {
        labels.into_iter().map(|l| self.element(l.as_ref())).collect()
    }

    pub fn all(&self) -> ElementSet {
        (0..self.len()).collect()
    }
}

/// A partition in canonical form: blocks sorted by minimum element,
/// elements sorted within each block.
#[derive(Debug, Clone)]
pub struct Partition {
    universe: Arc<Universe>,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        same_universe(&self.universe, &other.universe) && self.blocks == other.blocks
    }
}

impl Eq for Partition {}

impl std::hash::Hash for Partition {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.blocks.hash(state);
    }
}

fn same_universe(a: &Arc<Universe>, b: &Arc<Universe>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Partition {
    pub fn new(universe: Arc<Universe>, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let n = universe.len();
        let mut owner = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &e in block {
                if e >= n {
                    return Err(Error::UnknownElement(format!("#{e}")));
                }
                if owner[e] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "element `{}` appears in more than one block",
                        universe.label(e)
                    )));
                }
                owner[e] = b;
            }
        }
        if let Some(e) = owner.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!(
                "element `{}` is not covered",
                universe.label(e)
            )));
        }
        Ok(Self::from_labelling(universe, &owner))
    }

    pub fn from_labels<S: AsRef<str>>(universe: Arc<Universe>, blocks: &[Vec<S>]) -> Result<Self> {
        let blocks = blocks
            .iter()
            .map(|b| b.iter().map(|l| universe.element(l.as_ref())).collect())
            .collect::<Result<Vec<Vec<usize>>>>()?;
        Self::new(universe, blocks)
    }

    /// Partition whose blocks are the level sets of `label`, one entry per element.
    pub fn from_labelling<K: Eq + std::hash::Hash>(universe: Arc<Universe>, label: &[K]) -> Self {
        assert_eq!(label.len(), universe.len());
        let mut first: HashMap<&K, usize> = HashMap::new();
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut block_of = vec![0; label.len()];
        for (e, k) in label.iter().enumerate() {
            let b = *first.entry(k).or_insert_with(|| {
                blocks.push(Vec::new());
                blocks.len() - 1
            });
            blocks[b].push(e);
            block_of[e] = b;
        }
        Partition {
            universe,
            blocks,
            block_of,
        }
    }

    /// The single-block partition, bottom of the order.
    pub fn trivial(universe: Arc<Universe>) -> Self {
        let label = vec![0u8; universe.len()];
        Self::from_labelling(universe, &label)
    }

    /// The partition into singletons, top of the order.
    pub fn discrete(universe: Arc<Universe>) -> Self {
        let label: Vec<usize> = (0..universe.len()).collect();
        Self::from_labelling(universe, &label)
    }

    pub fn random<R: Rng + ?Sized>(universe: Arc<Universe>, rng: &mut R) -> Self {
        let n = universe.len();
        let k = rng.gen_range(1..=n);
        let label: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
        Self::from_labelling(universe, &label)
    }

    /// Every partition of the universe, generated from restricted growth strings.
    pub fn all(universe: Arc<Universe>) -> Vec<Partition> {
        let n = universe.len();
        let mut out = Vec::new();
        let mut rgs = vec![0usize; n];
        fn rec(i: usize, max: usize, rgs: &mut Vec<usize>, u: &Arc<Universe>, out: &mut Vec<Partition>) {
            if i == rgs.len() {
                out.push(Partition::from_labelling(u.clone(), rgs));
                return;
            }
            for v in 0..=max + 1 {
                rgs[i] = v;
                rec(i + 1, max.max(v), rgs, u, out);
            }
        }
        if n > 0 {
            rec(1, 0, &mut rgs, &universe, &mut out);
        }
        out
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_index(&self, e: usize) -> usize {
        self.block_of[e]
    }

    pub fn block_containing(&self, e: usize) -> &[usize] {
        &self.blocks[self.block_of[e]]
    }

    fn compatible(&self, other: &Partition) -> Result<()> {
        if same_universe(&self.universe, &other.universe) {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    /// Union of the blocks that meet `x`.
    pub fn saturate(&self, x: &ElementSet) -> Result<ElementSet> {
        let mut out = ElementSet::new();
        for &e in x {
            if e >= self.universe.len() {
                return Err(Error::UnknownElement(format!("#{e}")));
            }
            out.extend(self.block_containing(e));
        }
        Ok(out)
    }

    fn sat(&self, x: &ElementSet) -> ElementSet {
        x.iter().flat_map(|&e| self.block_containing(e).iter().copied()).collect()
    }

    /// True iff `self` is coarser than (or equal to) `fine`.
    pub fn leq(&self, fine: &Partition) -> Result<bool> {
        self.compatible(fine)?;
        Ok(self.leq_unchecked(fine))
    }

    fn leq_unchecked(&self, fine: &Partition) -> bool {
        fine.blocks
            .iter()
            .all(|b| b.iter().all(|&e| self.block_of[e] == self.block_of[b[0]]))
    }

    /// Common refinement: all nonempty intersections of blocks.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.compatible(other)?;
        Ok(self.join_unchecked(other))
    }

    fn join_unchecked(&self, other: &Partition) -> Partition {
        let label: Vec<(usize, usize)> = (0..self.universe.len())
            .map(|e| (self.block_of[e], other.block_of[e]))
            .collect();
        Partition::from_labelling(self.universe.clone(), &label)
    }

    /// Finest common coarsening, from the closure of each singleton under
    /// alternating saturation.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.compatible(other)?;
        Ok(self.meet_unchecked(other))
    }

    fn meet_unchecked(&self, other: &Partition) -> Partition {
        let n = self.universe.len();
        let mut label = vec![usize::MAX; n];
        for u in 0..n {
            if label[u] != usize::MAX {
                continue;
            }
            let mut x: ElementSet = [u].into();
            loop {
                let next = self.sat(&other.sat(&x));
                if next == x {
                    break;
                }
                x = next;
            }
            for e in x {
                label[e] = u;
            }
        }
        Partition::from_labelling(self.universe.clone(), &label)
    }

    /// True iff the saturation operators commute on every singleton.
    pub fn commutes(&self, other: &Partition) -> Result<bool> {
        self.compatible(other)?;
        Ok((0..self.universe.len()).all(|u| {
            let x: ElementSet = [u].into();
            self.sat(&other.sat(&x)) == other.sat(&self.sat(&x))
        }))
    }

    /// Display using the universe labels, e.g. `{{1,2},{3}}`.
    pub fn render(&self) -> String {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let l: Vec<&str> = b.iter().map(|&e| self.universe.label(e)).collect();
                format!("{{{}}}", l.join(","))
            })
            .collect();
        format!("{{{}}}", blocks.join(","))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `p1 ⊥ p2 | p`: inside every block of `p`, any block of `p1` and any block
/// of `p2` that both meet it also meet each other there.
pub fn cond_indep_partitions(p1: &Partition, p2: &Partition, p: &Partition) -> Result<bool> {
    p1.compatible(p2)?;
    p1.compatible(p)?;
    Ok(cond_indep_unchecked(p1, p2, p))
}

fn cond_indep_unchecked(p1: &Partition, p2: &Partition, p: &Partition) -> bool {
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    p.blocks.iter().all(|block| {
        seen.clear();
        let mut r1 = BTreeSet::new();
        let mut r2 = BTreeSet::new();
        for &e in block {
            let (a, b) = (p1.block_of[e], p2.block_of[e]);
            r1.insert(a);
            r2.insert(b);
            seen.insert((a, b));
        }
        seen.len() == r1.len() * r2.len()
    })
}

/// The lattice-theoretic relation `(p1 ∨ p) ∧ (p2 ∨ p) = p`.
pub fn lattice_indep(p1: &Partition, p2: &Partition, p: &Partition) -> Result<bool> {
    Ok(p1.join(p)?.meet(&p2.join(p)?)? == *p)
}

/// Independence relation used by [`check_qseparoid_with`].
pub type Relation<'a> = &'a dyn Fn(&Partition, &Partition, &Partition) -> bool;

/// Checks C1–C4 and basicness for the partition relation over a join-closed set.
pub fn check_qseparoid(set: &[Partition], exhaustive_limit: u64, seed: u64) -> Result<CheckReport> {
    check_qseparoid_with(set, exhaustive_limit, seed, &cond_indep_unchecked)
}

/// As [`check_qseparoid`], with the independence relation supplied by the caller.
pub fn check_qseparoid_with(
    set: &[Partition],
    exhaustive_limit: u64,
    seed: u64,
    rel: Relation<'_>,
) -> Result<CheckReport> {
    if let Some(first) = set.first() {
        for p in set {
            first.compatible(p)?;
        }
    }
    let members: HashSet<&Partition> = set.iter().collect();
    for (i, a) in set.iter().enumerate() {
        for b in &set[i..] {
            let j = a.join_unchecked(b);
            if !members.contains(&j) {
                return Err(Error::NotJoinClosed(format!("{a} ∨ {b} = {j} is missing")));
            }
        }
    }

    let n = set.len() as u64;
    let exhaustive = n.saturating_pow(3) <= exhaustive_limit;
    let mut report = CheckReport::new(format!("qseparoid ({} partitions)", set.len()), Some(seed));
    report.exhaustive = exhaustive;
    for law in ["C1", "C2", "C3", "C4", "basic"] {
        report.declare(law);
    }
    if set.is_empty() {
        return Ok(report);
    }

    let below: Vec<Vec<usize>> = set
        .iter()
        .map(|y| (0..set.len()).filter(|&w| set[w].leq_unchecked(y)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples: Box<dyn Iterator<Item = (usize, usize, usize)>> = if exhaustive {
        let k = set.len();
        Box::new((0..k).flat_map(move |x| (0..k).flat_map(move |y| (0..k).map(move |z| (x, y, z)))))
    } else {
        let k = set.len();
        let sample: Vec<_> = (0..exhaustive_limit.max(1))
            .map(|_| (rng.gen_range(0..k), rng.gen_range(0..k), rng.gen_range(0..k)))
            .collect();
        Box::new(sample.into_iter())
    };

    let mut w_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    for (xi, yi, zi) in triples {
        let (x, y, z) = (&set[xi], &set[yi], &set[zi]);
        let show = |names: &[(&str, &Partition)]| {
            names
                .iter()
                .map(|(n, p)| format!("{n}={p}"))
                .collect::<Vec<_>>()
                .join(" ")
        };
        report.check("C1", rel(x, y, y), || show(&[("x", x), ("y", y)]));
        let xyz = rel(x, y, z);
        report.check("C2", !xyz || rel(y, x, z), || show(&[("x", x), ("y", y), ("z", z)]));
        if xyz {
            let ws: Vec<usize> = if exhaustive {
                below[yi].clone()
            } else {
                below[yi].choose(&mut w_rng).copied().into_iter().collect()
            };
            for wi in ws {
                let w = &set[wi];
                report.check("C3", rel(x, w, z), || {
                    show(&[("x", x), ("y", y), ("z", z), ("w", w)])
                });
            }
            let yz = y.join_unchecked(z);
            report.check("C4", rel(x, &yz, z), || show(&[("x", x), ("y", y), ("z", z)]));
        }
        if zi == 0 || !exhaustive {
            // basic: x ⊥ x | y ⇒ x ≤ y, quantified over pairs
            report.check("basic", !rel(x, x, y) || x.leq_unchecked(y), || {
                show(&[("x", x), ("y", y)])
            });
        }
    }
    Ok(report)
}
