//! The relations `~` (equal σ-rows), `∽` (equal τ-rows) and `≈` (both),
//! congruences, quotient solutions and the retraction tower.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::groups::{Perm, PermGroup};
use crate::solution::FiniteSolution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RelationKind {
    /// `x ~ y ⇔ σ_x = σ_y`
    Sim,
    /// `x ∽ y ⇔ τ_x = τ_y`
    Cosim,
    /// `x ≈ y ⇔ x ~ y and x ∽ y`
    Approx,
    Custom,
}

/// A partition of a solution's carrier. Blocks are sorted and listed by
/// their minimum element.
#[derive(Clone, Debug)]
pub struct SolutionPartition<'a> {
    base: &'a FiniteSolution,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    kind: RelationKind,
}

/// A quotient solution together with the projection `x ↦ block index`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSolution {
    pub solution: FiniteSolution,
    pub projection: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MultipermutationLevel {
    Level(usize),
    /// The tower stopped shrinking after `steps` retractions at `size > 1`.
    Irretractable { steps: usize, size: usize },
}

impl MultipermutationLevel {
    pub fn level(&self) -> Option<usize> {
        match *self {
            MultipermutationLevel::Level(k) => Some(k),
            MultipermutationLevel::Irretractable { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct PermutationGroups {
    /// `⟨σ_x⟩`
    pub left: PermGroup,
    /// `⟨τ_x⟩`
    pub right: PermGroup,
    /// `⟨σ_x, τ_x⟩`
    pub full: PermGroup,
}

fn partition_by_key<K: PartialEq>(n: usize, key: impl Fn(usize) -> K) -> Vec<Vec<usize>> {
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    'outer: for x in 0..n {
        for b in blocks.iter_mut() {
            if key(b[0]) == key(x) {
                b.push(x);
                continue 'outer;
            }
        }
        blocks.push(vec![x]);
    }
    blocks
}

pub fn relation(s: &FiniteSolution, kind: RelationKind) -> Result<SolutionPartition<'_>> {
    let (sg, ta) = (s.sigma(), s.tau());
    let blocks = match kind {
        RelationKind::Sim => partition_by_key(s.n(), |x| &sg[x]),
        RelationKind::Cosim => partition_by_key(s.n(), |x| &ta[x]),
        RelationKind::Approx => partition_by_key(s.n(), |x| (&sg[x], &ta[x])),
        RelationKind::Custom => return invalid("custom partitions need explicit blocks"),
    };
    Ok(SolutionPartition::build(s, blocks, kind))
}

impl<'a> SolutionPartition<'a> {
    fn build(base: &'a FiniteSolution, mut blocks: Vec<Vec<usize>>, kind: RelationKind) -> Self {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort();
        let mut block_of = vec![0; base.n()];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = i;
            }
        }
        SolutionPartition { base, blocks, block_of, kind }
    }

    /// A user-supplied partition; must cover `0..n` with disjoint non-empty blocks.
    pub fn custom(base: &'a FiniteSolution, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; base.n()];
        for b in &blocks {
            if b.is_empty() {
                return invalid("empty block");
            }
            for &x in b {
                if x >= base.n() || seen[x] {
                    return invalid(format!("element {x} out of range or repeated"));
                }
                seen[x] = true;
            }
        }
        if let Some(x) = seen.iter().position(|s| !s) {
            return invalid(format!("element {x} is not covered"));
        }
        Ok(Self::build(base, blocks, RelationKind::Custom))
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn base(&self) -> &FiniteSolution {
        self.base
    }

    /// Compatibility with `σ^ε` and `τ^ε`, `ε = ±1`.
    pub fn is_congruence(&self) -> bool {
        let s = self.base;
        let n = s.n();
        let inv_rows = |t: &[Vec<usize>]| -> Vec<Vec<usize>> {
            t.iter()
                .map(|row| {
                    let mut inv = vec![0; n];
                    for (a, &b) in row.iter().enumerate() {
                        inv[b] = a;
                    }
                    inv
                })
                .collect()
        };
        let tables = [s.sigma().to_vec(), inv_rows(s.sigma()), s.tau().to_vec(), inv_rows(s.tau())];
        let rep = |x: usize| self.blocks[self.block_of[x]][0];
        tables.iter().all(|t| {
            (0..n).all(|x| {
                (0..n).all(|y| self.block_of[t[x][y]] == self.block_of[t[rep(x)][rep(y)]])
            })
        })
    }

    /// The induced solution on the blocks, reindexed by block minimum.
    pub fn quotient_solution(&self) -> Result<QuotientSolution> {
        if !self.is_congruence() {
            return invalid("partition is not a congruence");
        }
        let m = self.blocks.len();
        let s = self.base;
        let induced = |t: &[Vec<usize>]| -> Vec<Vec<usize>> {
            (0..m)
                .map(|i| (0..m).map(|j| self.block_of[t[self.blocks[i][0]][self.blocks[j][0]]]).collect())
                .collect()
        };
        let solution = FiniteSolution::from_trusted(induced(s.sigma()), induced(s.tau()));
        Ok(QuotientSolution { solution, projection: self.block_of.clone() })
    }
}

/// `Ret(X) = X/≈`.
pub fn retraction(s: &FiniteSolution) -> QuotientSolution {
    relation(s, RelationKind::Approx)
        .expect("approx is a canonical relation")
        .quotient_solution()
        .expect("approx is always a congruence")
}

/// Iterates the retraction until one element remains or it stops shrinking.
pub fn multipermutation_level(s: &FiniteSolution) -> MultipermutationLevel {
    let mut cur = s.clone();
    let mut steps = 0;
    while cur.n() > 1 {
        let next = retraction(&cur).solution;
        if next.n() == cur.n() {
            return MultipermutationLevel::Irretractable { steps, size: cur.n() };
        }
        cur = next;
        steps += 1;
    }
    MultipermutationLevel::Level(steps)
}

pub fn permutation_groups(s: &FiniteSolution) -> PermutationGroups {
    let n = s.n();
    let sig: Vec<Perm> = (0..n).map(|x| s.sigma_perm(x)).collect();
    let tau: Vec<Perm> = (0..n).map(|x| s.tau_perm(x)).collect();
    let all: Vec<Perm> = sig.iter().chain(&tau).cloned().collect();
    let group = |g: Vec<Perm>| PermGroup::generate(n, g).expect("rows have degree n");
    PermutationGroups { left: group(sig), right: group(tau), full: group(all) }
}
