use std::collections::BTreeMap;

use super::algebra::LocalAlgebra;
use super::tree::LabeledTree;
use crate::domain::Domain;
use crate::error::{Error, Result};

/// How messages are reduced before being sent along an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MessageForm {
    /// Transport when the algebra supports it, projection otherwise.
    #[default]
    Auto,
    /// `μ_{u→w} = t_{λ(w)}(…)`; needs transport.
    Transport,
    /// `μ_{u→w} = π_{λ(u)∩λ(w)}(…)`; valid for every algebra.
    Projection,
}

impl MessageForm {
    pub fn resolve<A: LocalAlgebra>(self, alg: &A) -> Result<MessageForm> {
        match self {
            MessageForm::Auto if alg.supports_transport() => Ok(MessageForm::Transport),
            MessageForm::Auto => Ok(MessageForm::Projection),
            MessageForm::Transport if !alg.supports_transport() => Err(Error::Capability(format!(
                "transport messages need idempotent addition, which {} lacks",
                alg.name()
            ))),
            f => Ok(f),
        }
    }
}

/// Messages cached per directed edge `(from, to)` by a collect run.
#[derive(Debug, Clone)]
pub struct MessageStore<V> {
    pub root: usize,
    pub form: MessageForm,
    pub messages: BTreeMap<(usize, usize), V>,
}

impl<V> MessageStore<V> {
    pub fn get(&self, from: usize, to: usize) -> Option<&V> {
        self.messages.get(&(from, to))
    }
}

/// `unit(λ(v))` combined with the factors assigned to `v`, in factor order.
pub fn node_factors<A: LocalAlgebra>(alg: &A, tree: &LabeledTree, factors: &[A::Value]) -> Result<Vec<A::Value>> {
    if tree.assignment().len() != factors.len() {
        return Err(Error::InvalidTree(format!(
            "{} factors but {} assignments",
            factors.len(),
            tree.assignment().len()
        )));
    }
    (0..tree.len())
        .map(|v| {
            let mut acc = alg.unit(tree.label(v))?;
            for i in tree.factors_at(v) {
                if !alg.label(&factors[i]).is_subset(tree.label(v)) {
                    return Err(Error::InvalidTree(format!("factor {i} is not covered by node {v}")));
                }
                acc = alg.combine(&acc, &factors[i])?;
            }
            Ok(acc)
        })
        .collect()
}

struct Run<'a, A: LocalAlgebra> {
    alg: &'a A,
    tree: &'a LabeledTree,
    local: Vec<A::Value>,
    form: MessageForm,
}

impl<A: LocalAlgebra> Run<'_, A> {
    /// `φ_u` combined with the cached messages into `u`, skipping the one from `except`.
    fn gather(&self, u: usize, except: Option<usize>, store: &MessageStore<A::Value>) -> Result<A::Value> {
        let mut acc = self.local[u].clone();
        for &n in self.tree.neighbors(u) {
            if Some(n) == except {
                continue;
            }
            let m = store
                .get(n, u)
                .ok_or_else(|| Error::MissingCache(format!("message {n}->{u}")))?;
            acc = self.alg.combine(&acc, m)?;
        }
        Ok(acc)
    }

    fn send(&self, u: usize, w: usize, store: &MessageStore<A::Value>) -> Result<A::Value> {
        let acc = self.gather(u, Some(w), store)?;
        match self.form {
            MessageForm::Transport => self.alg.transport(&acc, self.tree.label(w)),
            _ => self
                .alg
                .project(&acc, &self.tree.label(u).intersection(self.tree.label(w))),
        }
    }
}

fn prepare<'a, A: LocalAlgebra>(
    alg: &'a A,
    tree: &'a LabeledTree,
    factors: &[A::Value],
    root: usize,
    form: MessageForm,
) -> Result<Run<'a, A>> {
    if root >= tree.len() {
        return Err(Error::InvalidTree(format!("root {root} is not a node")));
    }
    if !tree.is_join_tree() {
        return Err(Error::InvalidTree("labels violate the running intersection property".into()));
    }
    Ok(Run {
        alg,
        tree,
        local: node_factors(alg, tree, factors)?,
        form: form.resolve(alg)?,
    })
}

/// Inward pass towards `root`. Returns the root marginal and the message cache.
pub fn collect<A: LocalAlgebra>(
    alg: &A,
    tree: &LabeledTree,
    factors: &[A::Value],
    root: usize,
    form: MessageForm,
) -> Result<(A::Value, MessageStore<A::Value>)> {
    let run = prepare(alg, tree, factors, root, form)?;
    let mut store = MessageStore {
        root,
        form: run.form,
        messages: BTreeMap::new(),
    };
    let (parent, order) = tree.rooted(root);
    for &u in order.iter().rev() {
        if u != root {
            let m = run.send(u, parent[u], &store)?;
            store.messages.insert((u, parent[u]), m);
        }
    }
    Ok((run.gather(root, None, &store)?, store))
}

/// Outward pass after [`collect`] from the same root; returns every node marginal.
pub fn distribute<A: LocalAlgebra>(
    alg: &A,
    tree: &LabeledTree,
    factors: &[A::Value],
    store: &mut MessageStore<A::Value>,
    root: usize,
) -> Result<Vec<A::Value>> {
    if store.root != root {
        return Err(Error::MissingCache(format!(
            "messages were collected towards {}, not {root}",
            store.root
        )));
    }
    let run = prepare(alg, tree, factors, root, store.form)?;
    let (parent, order) = tree.rooted(root);
    for &u in &order {
        for &c in tree.neighbors(u) {
            if c != u && parent[c] == u {
                let m = run.send(u, c, store)?;
                store.messages.insert((u, c), m);
            }
        }
    }
    (0..tree.len()).map(|v| run.gather(v, None, store)).collect()
}

/// Combines all factors in order, then marginalizes to `x`.
pub fn naive_solve<A: LocalAlgebra>(alg: &A, factors: &[A::Value], x: &Domain) -> Result<A::Value> {
    let mut acc = alg.unit(&Domain::empty())?;
    for f in factors {
        acc = alg.combine(&acc, f)?;
    }
    if alg.supports_transport() {
        alg.transport(&acc, x)
    } else {
        let d = alg.label(&acc).union(x);
        let padded = alg.combine(&acc, &alg.unit(&d)?)?;
        alg.project(&padded, x)
    }
}

/// Lowest-index node whose label covers `query`.
pub fn select_root(tree: &LabeledTree, query: &Domain) -> Option<usize> {
    tree.covering_node(query)
}
