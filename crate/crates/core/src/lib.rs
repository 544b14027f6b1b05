//! Finite non-degenerate set-theoretic solutions of the Yang-Baxter equation,
//! their 2-reductive classification as disjoint unions of abelian groups, and
//! finite skew left braces.
//!
//! Everything is table driven: carriers are dense indices `0..n`, groups are
//! Cayley tables, solutions are pairs of `n x n` tables.
//!
//! Permutations compose right to left: `p.compose(&q)` applies `q` first.

pub mod brace;
pub mod error;
pub mod groups;
pub mod retraction;
pub mod solution;
pub mod union;

pub use brace::SkewBrace;
pub use error::{Error, Result};
pub use groups::{AbelianGroup, FiniteGroup, Perm, PermGroup};
pub use retraction::{MultipermutationLevel, RelationKind, SolutionPartition};
pub use solution::{FiniteSolution, SolutionTables};
pub use union::AbelianUnion;
