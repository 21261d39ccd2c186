//! Labeled trees, hypertree construction sequences, join-tree construction
//! and local computation by message passing.

mod algebra;
mod build;
mod hypertree;
mod propagate;
mod sequence;
mod tree;

pub use algebra::{LocalAlgebra, PotentialAlgebra, ValuationAlgebra};
pub use build::{build_covering_join_tree, Heuristic};
pub use hypertree::{hypertree_collect, hypertree_distribute, HypertreeState};
pub use propagate::{collect, distribute, naive_solve, node_factors, select_root, MessageForm, MessageStore};
pub use sequence::{valid_parents, EliminationSequence};
pub use tree::{family_indep, markov_direct, LabeledTree, DIRECT_MARKOV_LIMIT};
