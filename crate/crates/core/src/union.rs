//! 2-reductive solutions as disjoint unions of abelian groups.
//!
//! A union `((A_i), C, D)` has carrier `A_1 ⊔ … ⊔ A_k` and
//! `σ_x(y) = y + c_{i,j}`, `τ_y(x) = x + d_{j,i}` for `x ∈ A_i`, `y ∈ A_j`.
//! Both `c_{i,j}` and `d_{i,j}` live in `A_j`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::groups::{abelian_groups_of_order, partitions, AbelianGroup, FiniteGroup};
use crate::retraction::permutation_groups;
use crate::solution::FiniteSolution;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionTables {
    pub groups: Vec<Vec<usize>>,
    #[serde(rename = "C")]
    pub c: Vec<Vec<usize>>,
    #[serde(rename = "D")]
    pub d: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "UnionTables", into = "UnionTables")]
pub struct AbelianUnion {
    groups: Vec<AbelianGroup>,
    c: Vec<Vec<usize>>,
    d: Vec<Vec<usize>>,
}

impl TryFrom<UnionTables> for AbelianUnion {
    type Error = Error;

    fn try_from(t: UnionTables) -> Result<Self> {
        let groups = t.groups.iter().map(|f| AbelianGroup::new(f)).collect::<Result<_>>()?;
        AbelianUnion::new(groups, t.c, t.d)
    }
}

impl From<AbelianUnion> for UnionTables {
    fn from(u: AbelianUnion) -> Self {
        UnionTables {
            groups: u.groups.iter().map(|g| g.factors().to_vec()).collect(),
            c: u.c,
            d: u.d,
        }
    }
}

impl PartialOrd for AbelianUnion {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Blocks by `(size, factors)`, then `C` and `D` row-major.
impl Ord for AbelianUnion {
    fn cmp(&self, other: &Self) -> Ordering {
        let types = |u: &AbelianUnion| -> Vec<(usize, Vec<usize>)> {
            u.groups.iter().map(type_key).collect()
        };
        types(self)
            .cmp(&types(other))
            .then_with(|| self.c.cmp(&other.c))
            .then_with(|| self.d.cmp(&other.d))
    }
}

fn type_key(g: &AbelianGroup) -> (usize, Vec<usize>) {
    (g.order(), g.factors().to_vec())
}

/// Matrix-level predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionPredicates {
    pub involutive: bool,
    pub square_free: bool,
    pub condition_star: bool,
}

/// Two necessary conditions for injectivity. Passing both proves nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectivityReport {
    /// `c_{i,i} = -d_{i,i}` for all `i`
    pub diagonal_ok: bool,
    /// `o(c_{i,j} + d_{i,j}) = o(c_{j,i} + d_{j,i})` for all `i, j`
    pub order_ok: bool,
}

impl InjectivityReport {
    pub fn proves_non_injective(&self) -> bool {
        !(self.diagonal_ok && self.order_ok)
    }
}

/// `π` maps block `i` to block `pi[i]`; `psi[j]` maps `A_j` onto `A'_{π(j)}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnionIsomorphism {
    pub pi: Vec<usize>,
    pub psi: Vec<Vec<usize>>,
}

/// Result of decomposing a 2-reductive solution.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub union: AbelianUnion,
    /// Block index of each carrier element.
    pub labels: Vec<usize>,
    /// Position of each carrier element in `union_to_solution(&union)`; an
    /// isomorphism onto that solution.
    pub carrier: Vec<usize>,
}

impl AbelianUnion {
    /// Checks entry ranges and the generation condition
    /// `A_j = ⟨c_{i,j}, d_{i,j} : i⟩`.
    pub fn new(groups: Vec<AbelianGroup>, c: Vec<Vec<usize>>, d: Vec<Vec<usize>>) -> Result<Self> {
        let u = Self::new_non_generating(groups, c, d)?;
        if let Some(j) = (0..u.k()).find(|&j| !u.column_generates(j)) {
            return invalid(format!("column {j} does not generate its group {}", u.groups[j].label()));
        }
        Ok(u)
    }

    /// Like [`Self::new`] but without the generation condition.
    pub fn new_non_generating(
        groups: Vec<AbelianGroup>,
        c: Vec<Vec<usize>>,
        d: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let k = groups.len();
        if k == 0 {
            return invalid("a union needs at least one block");
        }
        for (name, m) in [("C", &c), ("D", &d)] {
            if m.len() != k || m.iter().any(|row| row.len() != k) {
                return invalid(format!("{name} must be {k}x{k}"));
            }
            for (i, row) in m.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    if v >= groups[j].order() {
                        return invalid(format!(
                            "{name}[{i}][{j}] = {v} is not an element of {}",
                            groups[j].label()
                        ));
                    }
                }
            }
        }
        Ok(AbelianUnion { groups, c, d })
    }

    /// Convenience constructor from invariant-factor lists.
    pub fn from_factors(factors: &[&[usize]], c: Vec<Vec<usize>>, d: Vec<Vec<usize>>) -> Result<Self> {
        let groups = factors.iter().map(|f| AbelianGroup::new(f)).collect::<Result<_>>()?;
        Self::new(groups, c, d)
    }

    pub fn k(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[AbelianGroup] {
        &self.groups
    }

    pub fn c(&self) -> &[Vec<usize>] {
        &self.c
    }

    pub fn d(&self) -> &[Vec<usize>] {
        &self.d
    }

    /// Carrier size.
    pub fn size(&self) -> usize {
        self.groups.iter().map(|g| g.order()).sum()
    }

    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.groups
            .iter()
            .map(|g| {
                let o = acc;
                acc += g.order();
                o
            })
            .collect()
    }

    fn column(&self, j: usize) -> Vec<usize> {
        (0..self.k()).map(|i| self.c[i][j]).chain((0..self.k()).map(|i| self.d[i][j])).collect()
    }

    pub fn column_generates(&self, j: usize) -> bool {
        self.groups[j].generated_by(&self.column(j))
    }

    pub fn satisfies_generation(&self) -> bool {
        (0..self.k()).all(|j| self.column_generates(j))
    }

    pub fn to_solution(&self) -> FiniteSolution {
        union_to_solution(self)
    }

    /// `((A_i), -D, -C)`, the union of the inverse solution.
    pub fn opposite(&self) -> AbelianUnion {
        let neg = |m: &[Vec<usize>]| -> Vec<Vec<usize>> {
            m.iter()
                .map(|row| row.iter().enumerate().map(|(j, &v)| self.groups[j].neg(v)).collect())
                .collect()
        };
        AbelianUnion { groups: self.groups.clone(), c: neg(&self.d), d: neg(&self.c) }
    }

    pub fn predicates(&self) -> UnionPredicates {
        let k = self.k();
        let all = |f: &dyn Fn(usize, usize) -> bool| (0..k).all(|i| (0..k).all(|j| f(i, j)));
        UnionPredicates {
            involutive: all(&|i, j| self.d[i][j] == self.groups[j].neg(self.c[i][j])),
            square_free: (0..k).all(|i| self.c[i][i] == 0 && self.d[i][i] == 0),
            condition_star: (0..k).all(|i| {
                (0..k).any(|j| self.c[j][i] == 0) && (0..k).any(|j| self.d[j][i] == 0)
            }),
        }
    }

    pub fn injectivity_necessary_checks(&self) -> InjectivityReport {
        let k = self.k();
        let sum_order = |i: usize, j: usize| {
            let g = &self.groups[j];
            g.element_order(g.add(self.c[i][j], self.d[i][j]))
        };
        InjectivityReport {
            diagonal_ok: (0..k).all(|i| self.c[i][i] == self.groups[i].neg(self.d[i][i])),
            order_ok: (0..k).all(|i| (0..k).all(|j| sum_order(i, j) == sum_order(j, i))),
        }
    }

    /// Orbit type such as `Z3+Z1` or `Z2xZ2+Z1`, largest blocks first.
    pub fn orbit_type(&self) -> String {
        let mut blocks: Vec<&AbelianGroup> = self.groups.iter().collect();
        blocks.sort_by_key(|g| std::cmp::Reverse(type_key(g)));
        blocks.iter().map(|g| g.label()).collect::<Vec<_>>().join("+")
    }

    pub fn canonical_form(&self) -> AbelianUnion {
        canonical_form(self)
    }

    pub fn isomorphism(&self, other: &AbelianUnion) -> Option<UnionIsomorphism> {
        unions_isomorphic(self, other)
    }

    /// Applies `π` and `ψ`: block `i` goes to position `pi[i]`.
    pub fn transform(&self, pi: &[usize], psi: &[Vec<usize>]) -> Result<AbelianUnion> {
        let k = self.k();
        if pi.len() != k || psi.len() != k || !crate::groups::perm::is_permutation(pi) {
            return invalid("pi must be a permutation of the blocks with one psi per block");
        }
        for j in 0..k {
            if self.groups[j] != self.groups[pi[j]] {
                return invalid("pi must preserve block types");
            }
            if !self.groups[j].automorphisms().contains(&psi[j]) {
                return invalid(format!("psi[{j}] is not an automorphism"));
            }
        }
        let mut groups = self.groups.clone();
        let mut c = vec![vec![0; k]; k];
        let mut d = vec![vec![0; k]; k];
        for i in 0..k {
            groups[pi[i]] = self.groups[i].clone();
            for j in 0..k {
                c[pi[i]][pi[j]] = psi[j][self.c[i][j]];
                d[pi[i]][pi[j]] = psi[j][self.d[i][j]];
            }
        }
        Ok(AbelianUnion { groups, c, d })
    }
}

pub fn union_to_solution(u: &AbelianUnion) -> FiniteSolution {
    let n = u.size();
    let offsets = u.offsets();
    let mut block = Vec::with_capacity(n);
    for (i, g) in u.groups.iter().enumerate() {
        block.extend(std::iter::repeat_n(i, g.order()));
    }
    let table = |m: &[Vec<usize>]| -> Vec<Vec<usize>> {
        (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        let (i, j) = (block[x], block[y]);
                        offsets[j] + u.groups[j].add(y - offsets[j], m[i][j])
                    })
                    .collect()
            })
            .collect()
    };
    // tau[y][x] = τ_y(x) = x + d_{j,i} for y in A_j, x in A_i
    FiniteSolution::from_trusted(table(&u.c), table(&u.d))
}

/// Inverse of [`union_to_solution`] up to isomorphism: blocks are the
/// `𝒢(X)`-orbits ordered by minimum, each made into a group with its
/// minimum as zero.
pub fn solution_to_union(s: &FiniteSolution) -> Result<Decomposition> {
    if !s.is_2reductive() {
        return invalid("solution is not 2-reductive");
    }
    let n = s.n();
    let groups = permutation_groups(s);
    let gens = groups.full.generators().to_vec();
    let orbits = groups.full.orbits();
    let mut labels = vec![0; n];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            labels[x] = i;
        }
    }
    let mut blocks = Vec::with_capacity(orbits.len());
    let mut local_to_std = Vec::with_capacity(orbits.len());
    for orbit in &orbits {
        let local = |x: usize| orbit.binary_search(&x).expect("orbit member");
        // alpha[p] maps e to p; found by breadth-first search over generators
        let mut alpha: Vec<Option<Vec<usize>>> = vec![None; orbit.len()];
        alpha[0] = Some(orbit.clone());
        let mut queue = VecDeque::from([0usize]);
        while let Some(p) = queue.pop_front() {
            let ap = alpha[p].clone().unwrap();
            for g in &gens {
                let q = local(g.apply(orbit[p]));
                if alpha[q].is_none() {
                    alpha[q] = Some(ap.iter().map(|&x| g.apply(x)).collect());
                    queue.push_back(q);
                }
            }
        }
        let table: Vec<Vec<usize>> = alpha
            .iter()
            .map(|a| a.as_ref().expect("orbit is connected").iter().map(|&x| local(x)).collect())
            .collect();
        let g = FiniteGroup::from_table(table)
            .map_err(|e| Error::Mismatch(format!("orbit addition is not a group: {e}")))?;
        let (std, iso) = abelian_groups_of_order(orbit.len())?
            .into_iter()
            .find_map(|a| a.isomorphism_from(&g).map(|iso| (a, iso)))
            .ok_or_else(|| Error::Mismatch("orbit group is not abelian".into()))?;
        blocks.push(std);
        local_to_std.push(iso);
    }
    let k = orbits.len();
    let to_std = |x: usize| {
        let j = labels[x];
        local_to_std[j][orbits[j].binary_search(&x).unwrap()]
    };
    let mut c = vec![vec![0; k]; k];
    let mut d = vec![vec![0; k]; k];
    for i in 0..k {
        for j in 0..k {
            let (e, f) = (orbits[i][0], orbits[j][0]);
            c[i][j] = to_std(s.s(e, f));
            d[i][j] = to_std(s.tau()[e][f]);
        }
    }
    let union = AbelianUnion::new(blocks, c, d)
        .map_err(|e| Error::Mismatch(format!("decomposition failed: {e}")))?;
    let offsets = union.offsets();
    let carrier: Vec<usize> = (0..n).map(|x| offsets[labels[x]] + to_std(x)).collect();
    debug_assert!(s.is_isomorphism(&union.to_solution(), &carrier));
    Ok(Decomposition { union, labels, carrier })
}

/// Positions grouped by block type, for a union whose blocks are sorted.
fn type_preserving_perms(groups: &[AbelianGroup], target: &[AbelianGroup]) -> Vec<Vec<usize>> {
    let k = groups.len();
    let mut out = Vec::new();
    let mut pi = vec![usize::MAX; k];
    let mut used = vec![false; k];
    fn go(
        i: usize,
        groups: &[AbelianGroup],
        target: &[AbelianGroup],
        pi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if i == groups.len() {
            out.push(pi.clone());
            return;
        }
        for t in 0..target.len() {
            if !used[t] && groups[i] == target[t] {
                used[t] = true;
                pi[i] = t;
                go(i + 1, groups, target, pi, used, out);
                used[t] = false;
            }
        }
    }
    if target.len() == k {
        go(0, groups, target, &mut pi, &mut used, &mut out);
    }
    out
}

/// A witness `(π, ψ)` that `u1` and `u2` give isomorphic solutions.
pub fn unions_isomorphic(u1: &AbelianUnion, u2: &AbelianUnion) -> Option<UnionIsomorphism> {
    let k = u1.k();
    'pi: for pi in type_preserving_perms(&u1.groups, &u2.groups) {
        let mut psi = Vec::with_capacity(k);
        for j in 0..k {
            let found = u1.groups[j].automorphisms().iter().find(|a| {
                (0..k).all(|i| {
                    a[u1.c[i][j]] == u2.c[pi[i]][pi[j]] && a[u1.d[i][j]] == u2.d[pi[i]][pi[j]]
                })
            });
            match found {
                Some(a) => psi.push(a.clone()),
                None => continue 'pi,
            }
        }
        return Some(UnionIsomorphism { pi, psi });
    }
    None
}

/// The least union isomorphic to `u` in the order of [`AbelianUnion::cmp`].
///
/// For a fixed block arrangement the automorphisms act on columns
/// independently, and each column's entries occur in the row-major order as
/// `C` rows followed by `D` rows, so the per-column minimum is optimal.
pub fn canonical_form(u: &AbelianUnion) -> AbelianUnion {
    let k = u.k();
    let mut sorted = u.groups.clone();
    sorted.sort_by_key(type_key);
    let mut best: Option<AbelianUnion> = None;
    for pi in type_preserving_perms(&u.groups, &sorted) {
        let mut c = vec![vec![0; k]; k];
        let mut d = vec![vec![0; k]; k];
        let mut inv = vec![0; k];
        for (i, &p) in pi.iter().enumerate() {
            inv[p] = i;
        }
        for q in 0..k {
            let j = inv[q];
            let col: Vec<usize> =
                (0..k).map(|p| u.c[inv[p]][j]).chain((0..k).map(|p| u.d[inv[p]][j])).collect();
            let image = u.groups[j]
                .automorphisms()
                .iter()
                .map(|a| col.iter().map(|&v| a[v]).collect::<Vec<_>>())
                .min()
                .expect("identity automorphism");
            for p in 0..k {
                c[p][q] = image[p];
                d[p][q] = image[k + p];
            }
        }
        let cand = AbelianUnion { groups: sorted.clone(), c, d };
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.expect("identity arrangement exists")
}

/// Group types for each part of a partition, as multisets over equal parts.
fn group_assignments(parts: &[usize]) -> Result<Vec<Vec<AbelianGroup>>> {
    let mut out: Vec<Vec<AbelianGroup>> = vec![vec![]];
    let mut idx = 0;
    while idx < parts.len() {
        let size = parts[idx];
        let reps = parts[idx..].iter().take_while(|&&p| p == size).count();
        let types = abelian_groups_of_order(size)?;
        // non-decreasing type index sequences of length reps
        let mut combos: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..reps {
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    let start = c.last().copied().unwrap_or(0);
                    (start..types.len()).map(move |t| {
                        let mut c = c.clone();
                        c.push(t);
                        c
                    })
                })
                .collect();
        }
        out = out
            .into_iter()
            .flat_map(|prefix| {
                let types = &types;
                combos.iter().map(move |combo| {
                    let mut p = prefix.clone();
                    p.extend(combo.iter().map(|&t| types[t].clone()));
                    p
                })
            })
            .collect();
        idx += reps;
    }
    for cell in out.iter_mut() {
        cell.sort_by_key(type_key);
    }
    Ok(out)
}

/// Column options for block `j`: generating columns that are least in their
/// automorphism orbit.
fn column_options(g: &AbelianGroup, k: usize) -> Vec<Vec<usize>> {
    let len = 2 * k;
    let n = g.order();
    let total = n.pow(len as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut col = vec![0; len];
        let mut rest = code;
        for slot in col.iter_mut().rev() {
            *slot = rest % n;
            rest /= n;
        }
        if !g.generated_by(&col) {
            continue;
        }
        let least = g
            .automorphisms()
            .iter()
            .all(|a| col.iter().map(|&v| a[v]).cmp(col.iter().copied()) != Ordering::Less);
        if least {
            out.push(col);
        }
    }
    out
}

// ordering ignores the cached automorphisms inside AbelianGroup
#[allow(clippy::mutable_key_type)]
fn enumerate_cell(groups: &[AbelianGroup]) -> Vec<AbelianUnion> {
    let k = groups.len();
    let options: Vec<Vec<Vec<usize>>> = groups.iter().map(|g| column_options(g, k)).collect();
    if options.iter().any(|o| o.is_empty()) {
        return Vec::new();
    }
    let mut found = BTreeSet::new();
    let mut choice = vec![0usize; k];
    loop {
        let mut c = vec![vec![0; k]; k];
        let mut d = vec![vec![0; k]; k];
        for j in 0..k {
            let col = &options[j][choice[j]];
            for i in 0..k {
                c[i][j] = col[i];
                d[i][j] = col[k + i];
            }
        }
        let u = AbelianUnion { groups: groups.to_vec(), c, d };
        found.insert(canonical_form(&u));
        // odometer over column choices
        let mut j = 0;
        loop {
            if j == k {
                return found.into_iter().collect();
            }
            choice[j] += 1;
            if choice[j] < options[j].len() {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

/// All 2-reductive solutions of size `n` up to isomorphism, as canonical
/// unions in increasing order.
///
/// Cells (one per multiset of block types) are independent and run on the
/// current rayon pool.
pub fn enumerate_2reductive(n: usize) -> Result<Vec<AbelianUnion>> {
    if n == 0 {
        return invalid("n must be positive");
    }
    let mut cells = Vec::new();
    for mut parts in partitions(n) {
        parts.reverse();
        cells.extend(group_assignments(&parts)?);
    }
    let mut out: Vec<AbelianUnion> = cells.par_iter().flat_map_iter(|g| enumerate_cell(g)).collect();
    out.sort();
    Ok(out)
}

/// Count per orbit type.
pub fn count_by_orbit_type(unions: &[AbelianUnion]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for u in unions {
        *m.entry(u.orbit_type()).or_insert(0) += 1;
    }
    m
}

pub fn union_predicates(u: &AbelianUnion) -> UnionPredicates {
    u.predicates()
}

pub fn opposite_union(u: &AbelianUnion) -> AbelianUnion {
    u.opposite()
}
