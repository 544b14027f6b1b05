//! Finite non-degenerate solutions `r(x, y) = (σ_x(y), τ_y(x))`.
//!
//! Storage: `sigma[x][y] = σ_x(y)` and `tau[y][x] = τ_y(x)`, so row `x` of
//! either table is the permutation `σ_x` or `τ_x`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{invalid, Result};
use crate::groups::perm::is_permutation;
use crate::groups::Perm;
use crate::union::{self, InjectivityReport};

/// Raw, unverified tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionTables {
    pub n: usize,
    pub sigma: Vec<Vec<usize>>,
    pub tau: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Sigma,
    Tau,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Sigma => "sigma",
            Side::Tau => "tau",
        })
    }
}

/// Which component of the braid relation failed.
///
/// Component `k` of `(id×r)(r×id)(id×r)(x,y,z) = (r×id)(id×r)(r×id)(x,y,z)`
/// is exactly the birack identity `k`:
///
/// 1. `σ_x σ_y(z) = σ_{σ_x(y)} σ_{τ_y(x)}(z)`
/// 2. `τ_{σ_{τ_y(x)}(z)}(σ_x(y)) = σ_{τ_{σ_y(z)}(x)}(τ_z(y))`
/// 3. `τ_z τ_y(x) = τ_{τ_z(y)} τ_{σ_y(z)}(x)`
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BirackIdentity {
    Birack1,
    Birack2,
    Birack3,
}

impl fmt::Display for BirackIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self {
            BirackIdentity::Birack1 => 1,
            BirackIdentity::Birack2 => 2,
            BirackIdentity::Birack3 => 3,
        };
        write!(f, "birack:{k}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum SolutionViolation {
    #[error("malformed tables: {message}")]
    Shape { message: String },

    #[error("{side} row {row} is not a permutation")]
    NotPermutation { side: Side, row: usize },

    #[error("r is not injective: r{first:?} = r{second:?}")]
    NotBijective { first: (usize, usize), second: (usize, usize) },

    #[error("braid relation fails at {triple:?} ({identity})")]
    Braid { triple: (usize, usize, usize), identity: BirackIdentity },
}

/// A verified solution.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SolutionTables", into = "SolutionTables")]
pub struct FiniteSolution {
    n: usize,
    sigma: Vec<Vec<usize>>,
    tau: Vec<Vec<usize>>,
}

impl TryFrom<SolutionTables> for FiniteSolution {
    type Error = SolutionViolation;

    fn try_from(t: SolutionTables) -> std::result::Result<Self, SolutionViolation> {
        FiniteSolution::verify(t)
    }
}

impl From<FiniteSolution> for SolutionTables {
    fn from(s: FiniteSolution) -> Self {
        SolutionTables { n: s.n, sigma: s.sigma, tau: s.tau }
    }
}

/// The four 2-reductivity identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reductivity {
    /// `σ_{σ_x(y)} = σ_y`
    pub red1: bool,
    /// `τ_{τ_x(y)} = τ_y`
    pub red2: bool,
    /// `σ_{τ_x(y)} = σ_y`
    pub red3: bool,
    /// `τ_{σ_x(y)} = τ_y`
    pub red4: bool,
}

impl Reductivity {
    pub fn all(&self) -> bool {
        self.red1 && self.red2 && self.red3 && self.red4
    }
}

fn check_shape(t: &SolutionTables) -> std::result::Result<(), SolutionViolation> {
    let n = t.n;
    let shape = |message: String| Err(SolutionViolation::Shape { message });
    for (name, table) in [("sigma", &t.sigma), ("tau", &t.tau)] {
        if table.len() != n {
            return shape(format!("{name} has {} rows, expected {n}", table.len()));
        }
        for (x, row) in table.iter().enumerate() {
            if row.len() != n {
                return shape(format!("{name} row {x} has length {}, expected {n}", row.len()));
            }
            if let Some(&v) = row.iter().find(|&&v| v >= n) {
                return shape(format!("{name} row {x} has entry {v} out of range"));
            }
        }
    }
    Ok(())
}

/// First failing `(triple, identity)` of the braid relation, triples in
/// lexicographic order.
fn braid_witness(s: &FiniteSolution) -> Option<((usize, usize, usize), BirackIdentity)> {
    let n = s.n;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (a, b) = s.apply(y, z);
                let (p, q) = s.apply(x, a);
                let (u, v) = s.apply(q, b);
                let lhs = [p, u, v];
                let (a, b) = s.apply(x, y);
                let (p, q) = s.apply(b, z);
                let (u, v) = s.apply(a, p);
                let rhs = [u, v, q];
                if let Some(k) = (0..3).find(|&k| lhs[k] != rhs[k]) {
                    return Some(((x, y, z), BIRACK[k]));
                }
            }
        }
    }
    None
}

const BIRACK: [BirackIdentity; 3] =
    [BirackIdentity::Birack1, BirackIdentity::Birack2, BirackIdentity::Birack3];

/// Same witness, computed from the three birack identities.
fn birack_witness(s: &FiniteSolution) -> Option<((usize, usize, usize), BirackIdentity)> {
    let n = s.n;
    let sg = |x: usize, y: usize| s.sigma[x][y];
    let ta = |y: usize, x: usize| s.tau[y][x];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let b1 = sg(x, sg(y, z)) == sg(sg(x, y), sg(ta(y, x), z));
                let b2 = ta(sg(ta(y, x), z), sg(x, y)) == sg(ta(sg(y, z), x), ta(z, y));
                let b3 = ta(z, ta(y, x)) == ta(ta(z, y), ta(sg(y, z), x));
                if let Some(k) = [b1, b2, b3].iter().position(|ok| !ok) {
                    return Some(((x, y, z), BIRACK[k]));
                }
            }
        }
    }
    None
}

impl FiniteSolution {
    /// Checks shape, non-degeneracy, bijectivity of `r` and the braid relation,
    /// in that order.
    pub fn verify(t: SolutionTables) -> std::result::Result<Self, SolutionViolation> {
        check_shape(&t)?;
        for (side, table) in [(Side::Sigma, &t.sigma), (Side::Tau, &t.tau)] {
            if let Some(row) = table.iter().position(|r| !is_permutation(r)) {
                return Err(SolutionViolation::NotPermutation { side, row });
            }
        }
        let s = FiniteSolution { n: t.n, sigma: t.sigma, tau: t.tau };
        let n = s.n;
        let mut seen = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                let (u, v) = s.apply(x, y);
                if let Some(first) = seen[u * n + v] {
                    return Err(SolutionViolation::NotBijective { first, second: (x, y) });
                }
                seen[u * n + v] = Some((x, y));
            }
        }
        let witness = braid_witness(&s);
        if cfg!(debug_assertions) {
            assert_eq!(witness, birack_witness(&s), "braid and birack checks disagree");
        }
        match witness {
            Some((triple, identity)) => Err(SolutionViolation::Braid { triple, identity }),
            None => Ok(s),
        }
    }

    pub fn from_tables(
        sigma: Vec<Vec<usize>>,
        tau: Vec<Vec<usize>>,
    ) -> std::result::Result<Self, SolutionViolation> {
        Self::verify(SolutionTables { n: sigma.len(), sigma, tau })
    }

    /// Builds from `sigma(x, y) = σ_x(y)` and `tau(y, x) = τ_y(x)`.
    pub fn from_fns(
        n: usize,
        sigma: impl Fn(usize, usize) -> usize,
        tau: impl Fn(usize, usize) -> usize,
    ) -> std::result::Result<Self, SolutionViolation> {
        let sigma = (0..n).map(|x| (0..n).map(|y| sigma(x, y)).collect()).collect();
        let tau = (0..n).map(|y| (0..n).map(|x| tau(y, x)).collect()).collect();
        Self::verify(SolutionTables { n, sigma, tau })
    }

    /// Tables known to be a solution by construction. Checked in debug builds.
    pub(crate) fn from_trusted(sigma: Vec<Vec<usize>>, tau: Vec<Vec<usize>>) -> Self {
        let s = FiniteSolution { n: sigma.len(), sigma, tau };
        debug_assert!(Self::verify(s.tables()).is_ok(), "trusted tables are not a solution");
        s
    }

    /// `σ_x = τ_x = id` for all `x`.
    pub fn projection(n: usize) -> Self {
        let id: Vec<usize> = (0..n).collect();
        FiniteSolution { n, sigma: vec![id.clone(); n], tau: vec![id; n] }
    }

    /// `r(x, y) = (f(y), g(x))`; a solution iff `fg = gf`.
    pub fn permutational(f: &Perm, g: &Perm) -> std::result::Result<Self, SolutionViolation> {
        let n = f.degree();
        if g.degree() != n {
            return Err(SolutionViolation::Shape {
                message: format!("degrees {} and {} differ", n, g.degree()),
            });
        }
        Self::from_fns(n, |_, y| f.apply(y), |_, x| g.apply(x))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sigma(&self) -> &[Vec<usize>] {
        &self.sigma
    }

    pub fn tau(&self) -> &[Vec<usize>] {
        &self.tau
    }

    /// `σ_x(y)`
    #[inline]
    pub fn s(&self, x: usize, y: usize) -> usize {
        self.sigma[x][y]
    }

    /// `τ_y(x)`
    #[inline]
    pub fn t(&self, y: usize, x: usize) -> usize {
        self.tau[y][x]
    }

    #[inline]
    pub fn apply(&self, x: usize, y: usize) -> (usize, usize) {
        (self.sigma[x][y], self.tau[y][x])
    }

    pub fn tables(&self) -> SolutionTables {
        SolutionTables { n: self.n, sigma: self.sigma.clone(), tau: self.tau.clone() }
    }

    pub fn sigma_perm(&self, x: usize) -> Perm {
        Perm::from_vec_unchecked(self.sigma[x].clone())
    }

    pub fn tau_perm(&self, x: usize) -> Perm {
        Perm::from_vec_unchecked(self.tau[x].clone())
    }

    /// `(X, r⁻¹)`, written as `r⁻¹(u, v) = (σ̂_u(v), τ̂_v(u))`.
    pub fn inverse_solution(&self) -> FiniteSolution {
        let n = self.n;
        let mut sigma = vec![vec![0; n]; n];
        let mut tau = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                let (u, v) = self.apply(x, y);
                sigma[u][v] = x;
                tau[v][u] = y;
            }
        }
        let inv = FiniteSolution { n, sigma, tau };
        debug_assert!((0..n).all(|x| (0..n).all(|y| {
            let (u, v) = self.apply(x, y);
            inv.apply(u, v) == (x, y)
        })));
        debug_assert!(Self::verify(inv.tables()).is_ok());
        inv
    }

    fn all_pairs(&self, f: impl Fn(usize, usize) -> bool) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| f(x, y)))
    }

    fn all_triples(&self, f: impl Fn(usize, usize, usize) -> bool) -> bool {
        self.all_pairs(|x, y| (0..self.n).all(|z| f(x, y, z)))
    }

    pub fn is_involutive(&self) -> bool {
        self.all_pairs(|x, y| {
            let (u, v) = self.apply(x, y);
            self.apply(u, v) == (x, y)
        })
    }

    pub fn is_square_free(&self) -> bool {
        (0..self.n).all(|x| self.apply(x, x) == (x, x))
    }

    pub fn is_permutational(&self) -> bool {
        self.sigma.windows(2).all(|w| w[0] == w[1]) && self.tau.windows(2).all(|w| w[0] == w[1])
    }

    pub fn is_projection(&self) -> bool {
        self.all_pairs(|x, y| self.sigma[x][y] == y && self.tau[x][y] == y)
    }

    /// `σ_x τ_x = id` for every `x`.
    pub fn has_lri(&self) -> bool {
        self.all_pairs(|x, y| self.sigma[x][self.tau[x][y]] == y)
    }

    pub fn reductivity(&self) -> Reductivity {
        let (s, t) = (&self.sigma, &self.tau);
        Reductivity {
            red1: self.all_pairs(|x, y| s[s[x][y]] == s[y]),
            red2: self.all_pairs(|x, y| t[t[x][y]] == t[y]),
            red3: self.all_pairs(|x, y| s[t[x][y]] == s[y]),
            red4: self.all_pairs(|x, y| t[s[x][y]] == t[y]),
        }
    }

    pub fn is_2reductive(&self) -> bool {
        self.reductivity().all()
    }

    /// `σ_x σ_y = σ_{σ_x(y)} σ_x`
    pub fn is_left_distributive(&self) -> bool {
        let s = &self.sigma;
        self.all_triples(|x, y, z| s[x][s[y][z]] == s[s[x][y]][s[x][z]])
    }

    /// `τ_x τ_y = τ_{τ_x(y)} τ_x`
    pub fn is_right_distributive(&self) -> bool {
        let t = &self.tau;
        self.all_triples(|x, y, z| t[x][t[y][z]] == t[t[x][y]][t[x][z]])
    }

    /// Five characterizations of left distributivity, in order: the defining
    /// identity, `σ_{τ_x(y)} = σ_y`, `σ_{σ̂_x(y)} = σ_y`, `τ̂_x = σ_x⁻¹`, and
    /// every `σ_z` being an automorphism of the solution.
    pub fn left_distributivity_routes(&self) -> [bool; 5] {
        let inv = self.inverse_solution();
        let (s, t) = (&self.sigma, &self.tau);
        let (sh, th) = (&inv.sigma, &inv.tau);
        [
            self.is_left_distributive(),
            self.reductivity().red3,
            self.all_pairs(|x, y| s[sh[x][y]] == s[y]),
            self.all_pairs(|x, y| th[x][s[x][y]] == y),
            self.all_triples(|z, x, y| {
                s[z][s[x][y]] == s[s[z][x]][s[z][y]] && s[z][t[x][y]] == t[s[z][x]][s[z][y]]
            }),
        ]
    }

    /// Mirror of [`Self::left_distributivity_routes`] with σ and τ exchanged.
    pub fn right_distributivity_routes(&self) -> [bool; 5] {
        let inv = self.inverse_solution();
        let (s, t) = (&self.sigma, &self.tau);
        let (sh, th) = (&inv.sigma, &inv.tau);
        [
            self.is_right_distributive(),
            self.reductivity().red4,
            self.all_pairs(|x, y| t[th[x][y]] == t[y]),
            self.all_pairs(|x, y| sh[x][t[x][y]] == y),
            self.all_triples(|z, x, y| {
                t[z][t[x][y]] == t[t[z][x]][t[z][y]] && t[z][s[x][y]] == s[t[z][x]][t[z][y]]
            }),
        ]
    }

    /// For every `x` there are `y, y'` with `σ_y(x) = x` and `τ_{y'}(x) = x`.
    pub fn satisfies_condition_star(&self) -> bool {
        (0..self.n).all(|x| {
            (0..self.n).any(|y| self.sigma[y][x] == x) && (0..self.n).any(|y| self.tau[y][x] == x)
        })
    }

    /// Transports the solution along the bijection `f`.
    pub fn relabel(&self, f: &Perm) -> Result<FiniteSolution> {
        if f.degree() != self.n {
            return invalid(format!("relabeling of degree {} on {} points", f.degree(), self.n));
        }
        let n = self.n;
        let mut sigma = vec![vec![0; n]; n];
        let mut tau = vec![vec![0; n]; n];
        for x in 0..n {
            for y in 0..n {
                sigma[f.apply(x)][f.apply(y)] = f.apply(self.sigma[x][y]);
                tau[f.apply(x)][f.apply(y)] = f.apply(self.tau[x][y]);
            }
        }
        Ok(FiniteSolution { n, sigma, tau })
    }

    /// Checks `f(σ_x(y)) = σ'_{f(x)}(f(y))` and the same for τ.
    pub fn is_isomorphism(&self, other: &FiniteSolution, f: &[usize]) -> bool {
        f.len() == self.n
            && other.n == self.n
            && is_permutation(f)
            && self.all_pairs(|x, y| {
                f[self.sigma[x][y]] == other.sigma[f[x]][f[y]]
                    && f[self.tau[x][y]] == other.tau[f[x]][f[y]]
            })
    }

    /// An isomorphism onto `other`, by backtracking with forced images.
    pub fn find_isomorphism(&self, other: &FiniteSolution) -> Option<Vec<usize>> {
        if self.n != other.n {
            return None;
        }
        let n = self.n;
        let mut f = vec![usize::MAX; n];
        let mut used = vec![false; n];
        if self.extend_iso(other, &mut f, &mut used) {
            Some(f)
        } else {
            None
        }
    }

    fn extend_iso(&self, other: &FiniteSolution, f: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let Some(x) = f.iter().position(|&v| v == usize::MAX) else {
            return true;
        };
        for img in 0..self.n {
            if used[img] {
                continue;
            }
            let (saved_f, saved_used) = (f.clone(), used.clone());
            f[x] = img;
            used[img] = true;
            if self.propagate(other, f, used) && self.extend_iso(other, f, used) {
                return true;
            }
            *f = saved_f;
            *used = saved_used;
        }
        false
    }

    /// Closes the partial map under the forced images; false on conflict.
    fn propagate(&self, other: &FiniteSolution, f: &mut [usize], used: &mut [bool]) -> bool {
        let n = self.n;
        let mut changed = true;
        while changed {
            changed = false;
            for x in 0..n {
                if f[x] == usize::MAX {
                    continue;
                }
                for y in 0..n {
                    if f[y] == usize::MAX {
                        continue;
                    }
                    for (src, dst) in [
                        (self.sigma[x][y], other.sigma[f[x]][f[y]]),
                        (self.tau[x][y], other.tau[f[x]][f[y]]),
                    ] {
                        if f[src] == usize::MAX {
                            if used[dst] {
                                return false;
                            }
                            f[src] = dst;
                            used[dst] = true;
                            changed = true;
                        } else if f[src] != dst {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_isomorphic(&self, other: &FiniteSolution) -> bool {
        self.find_isomorphism(other).is_some()
    }

    /// Decomposes into a union of abelian groups and runs the two necessary
    /// conditions for injectivity.
    pub fn injectivity_necessary_checks(&self) -> Result<InjectivityReport> {
        let decomposition = union::solution_to_union(self)?;
        Ok(decomposition.union.injectivity_necessary_checks())
    }

    /// Two whitespace-separated `n x n` blocks (σ then τ) split by a blank line.
    pub fn to_text(&self) -> String {
        let block = |t: &[Vec<usize>]| -> String {
            t.iter()
                .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ") + "\n")
                .collect()
        };
        format!("{}\n{}", block(&self.sigma), block(&self.tau))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("tables serialize")
    }
}

impl SolutionTables {
    /// Parses the text format. Errors carry 1-based line numbers.
    pub fn parse_text(text: &str) -> Result<SolutionTables> {
        let mut blocks: Vec<Vec<(usize, Vec<usize>)>> = vec![Vec::new()];
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                if !blocks.last().unwrap().is_empty() {
                    blocks.push(Vec::new());
                }
                continue;
            }
            let row = line
                .split_whitespace()
                .map(|w| w.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>();
            match row {
                Ok(row) => blocks.last_mut().unwrap().push((k + 1, row)),
                Err(e) => return invalid(format!("line {}: {e}", k + 1)),
            }
        }
        if blocks.last().is_some_and(|b| b.is_empty()) {
            blocks.pop();
        }
        if blocks.len() != 2 {
            return invalid(format!("expected 2 blocks separated by a blank line, found {}", blocks.len()));
        }
        let n = blocks[0].len();
        for block in &blocks {
            if block.len() != n {
                return invalid(format!("blocks have {} and {} rows", n, block.len()));
            }
            if let Some((line, row)) = block.iter().find(|(_, r)| r.len() != n) {
                return invalid(format!("line {line}: expected {n} entries, found {}", row.len()));
            }
        }
        let mut blocks = blocks.into_iter().map(|b| b.into_iter().map(|(_, r)| r).collect());
        let sigma = blocks.next().unwrap();
        let tau = blocks.next().unwrap();
        Ok(SolutionTables { n, sigma, tau })
    }
}
