use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::perm::{is_permutation, Perm};
use crate::error::{invalid, Result};

/// Serialized Cayley table, `{"n": .., "table": [[..]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub n: usize,
    pub table: Vec<Vec<usize>>,
}

/// A finite group on `0..n` given by its operation table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<Vec<usize>>,
    inv: Vec<usize>,
    id: usize,
}

/// A quotient group together with the projection from the parent carrier.
///
/// Quotient elements are indexed by increasing coset minimum.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: Vec<usize>,
    pub representatives: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Cayley table: Latin square, two-sided identity, associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return invalid("a group needs at least one element");
        }
        for (x, row) in table.iter().enumerate() {
            if row.len() != n {
                return invalid(format!("row {x} has length {}, expected {n}", row.len()));
            }
            if !is_permutation(row) {
                return invalid(format!("row {x} is not a permutation of 0..{n}"));
            }
        }
        for y in 0..n {
            let col: Vec<usize> = table.iter().map(|row| row[y]).collect();
            if !is_permutation(&col) {
                return invalid(format!("column {y} is not a permutation of 0..{n}"));
            }
        }
        let id = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| crate::Error::InvalidArgument("table has no identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return invalid(format!("associativity fails on ({a},{b},{c})"));
                    }
                }
            }
        }
        let inv = (0..n)
            .map(|x| (0..n).find(|&y| table[x][y] == id).expect("latin square"))
            .collect();
        Ok(FiniteGroup { n, table, inv, id })
    }

    pub(crate) fn from_table_unchecked(table: Vec<Vec<usize>>, id: usize) -> Self {
        let n = table.len();
        let inv = (0..n)
            .map(|x| (0..n).find(|&y| table[x][y] == id).expect("group table"))
            .collect();
        FiniteGroup { n, table, inv, id }
    }

    pub fn from_group_table(doc: GroupTable) -> Result<Self> {
        if doc.table.len() != doc.n {
            return invalid(format!("table has {} rows, n = {}", doc.table.len(), doc.n));
        }
        Self::from_table(doc.table)
    }

    pub fn to_group_table(&self) -> GroupTable {
        GroupTable { n: self.n, table: self.table.clone() }
    }

    /// The cyclic group `Z_n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("cyclic group of order 0");
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Ok(Self::from_table_unchecked(table, 0))
    }

    /// Group of permutations closed under composition; `p·q = p ∘ q`.
    ///
    /// Elements are indexed in the order given.
    pub fn from_perms(elements: &[Perm]) -> Result<Self> {
        let index = |p: &Perm| elements.iter().position(|q| q == p);
        let mut table = Vec::with_capacity(elements.len());
        for p in elements {
            let mut row = Vec::with_capacity(elements.len());
            for q in elements {
                match index(&p.compose(q)) {
                    Some(k) => row.push(k),
                    None => return invalid("permutation set is not closed under composition"),
                }
            }
            table.push(row);
        }
        Self::from_table(table)
    }

    /// The symmetric group on `k` points, elements in lexicographic order.
    pub fn symmetric(k: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if k >= 2 {
            gens.push(Perm::from_cycles(k, &[&[0, 1]])?);
            let cycle: Vec<usize> = (0..k).collect();
            gens.push(Perm::from_cycles(k, &[&cycle])?);
        }
        let g = super::PermGroup::generate(k, gens)?;
        Self::from_perms(g.elements())
    }

    /// The dihedral group of order `2k` acting on a `k`-gon.
    pub fn dihedral(k: usize) -> Result<Self> {
        if k < 3 {
            return invalid("dihedral group needs k >= 3");
        }
        let rot: Vec<usize> = (0..k).map(|x| (x + 1) % k).collect();
        let refl: Vec<usize> = (0..k).map(|x| (k - x) % k).collect();
        let g = super::PermGroup::generate(k, vec![Perm::new(rot)?, Perm::new(refl)?])?;
        Self::from_perms(g.elements())
    }

    /// The quaternion group `Q8`.
    ///
    /// Element `2u + s` is `(-1)^s · q_u` with `q_0..q_3 = 1, i, j, k`.
    pub fn quaternion() -> Self {
        // unit products: (sign, unit)
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (0, 1), (0, 2), (0, 3)],
            [(0, 1), (1, 0), (0, 3), (1, 2)],
            [(0, 2), (1, 3), (1, 0), (0, 1)],
            [(0, 3), (0, 2), (1, 1), (1, 0)],
        ];
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (s, u) = UNIT[a / 2][b / 2];
                        2 * u + ((a % 2) ^ (b % 2) ^ s)
                    })
                    .collect()
            })
            .collect();
        Self::from_table_unchecked(table, 0)
    }

    /// Direct product; element `(a, b)` is indexed `a * |h| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let m = h.n;
        let n = g.n * m;
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| g.mul(x / m, y / m) * m + h.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        Self::from_table_unchecked(table, g.id * m + h.id)
    }

    /// The opposite group, `a ·op b = b · a`.
    pub fn opposite(&self) -> Self {
        let table = (0..self.n)
            .map(|a| (0..self.n).map(|b| self.table[b][a]).collect())
            .collect();
        FiniteGroup { n: self.n, table, inv: self.inv.clone(), id: self.id }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.id {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&a| (0..self.n).all(|b| self.table[a][b] == self.table[b][a]))
            .collect()
    }

    /// `a⁻¹·b⁻¹·a·b`
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let t = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(t, a), b)
    }

    fn check_subset(&self, s: &[usize]) -> Result<()> {
        match s.iter().find(|&&x| x >= self.n) {
            Some(x) => invalid(format!("element {x} out of range 0..{}", self.n)),
            None => Ok(()),
        }
    }

    /// Smallest subgroup containing `s`, sorted.
    pub fn subgroup_generated(&self, s: &[usize]) -> Result<Vec<usize>> {
        self.check_subset(s)?;
        let mut member = vec![false; self.n];
        member[self.id] = true;
        let mut queue = VecDeque::from([self.id]);
        while let Some(x) = queue.pop_front() {
            for &g in s {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        Ok((0..self.n).filter(|&x| member[x]).collect())
    }

    pub fn is_subgroup(&self, s: &[usize]) -> bool {
        if self.check_subset(s).is_err() || !s.contains(&self.id) {
            return false;
        }
        let mut member = vec![false; self.n];
        for &x in s {
            member[x] = true;
        }
        s.iter().all(|&a| member[self.inv(a)] && s.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// Whether `s` is a normal subgroup.
    pub fn is_normal(&self, s: &[usize]) -> bool {
        if !self.is_subgroup(s) {
            return false;
        }
        let mut member = vec![false; self.n];
        for &x in s {
            member[x] = true;
        }
        (0..self.n).all(|g| s.iter().all(|&a| member[self.mul(self.mul(self.inv(g), a), g)]))
    }

    /// Quotient by a normal subgroup.
    pub fn quotient(&self, s: &[usize]) -> Result<Quotient> {
        if !self.is_normal(s) {
            return invalid(format!("{s:?} is not a normal subgroup"));
        }
        let mut projection = vec![usize::MAX; self.n];
        let mut representatives = Vec::new();
        for x in 0..self.n {
            if projection[x] != usize::MAX {
                continue;
            }
            let k = representatives.len();
            representatives.push(x);
            for &a in s {
                projection[self.mul(x, a)] = k;
            }
        }
        let table = representatives
            .iter()
            .map(|&a| representatives.iter().map(|&b| projection[self.mul(a, b)]).collect())
            .collect();
        let group = FiniteGroup::from_table_unchecked(table, projection[self.id]);
        Ok(Quotient { group, projection, representatives })
    }

    /// Nilpotency class via the upper central series, `None` if not nilpotent.
    ///
    /// The trivial group has class 0, non-trivial abelian groups class 1.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let mut current = self.clone();
        let mut class = 0;
        while current.n > 1 {
            let z = current.center();
            if z.len() == 1 {
                return None;
            }
            current = current.quotient(&z).expect("center is normal").group;
            class += 1;
        }
        Some(class)
    }

    /// Maps every element `x` to the permutation `y ↦ x·y`.
    pub fn left_regular(&self) -> Vec<Perm> {
        self.table.iter().map(|row| Perm::from_vec_unchecked(row.clone())).collect()
    }

    /// Checks that `f` is a homomorphism `self → other`.
    pub fn is_homomorphism(&self, other: &FiniteGroup, f: &[usize]) -> bool {
        f.len() == self.n
            && (0..self.n)
                .all(|a| (0..self.n).all(|b| f[self.mul(a, b)] == other.mul(f[a], f[b])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_three_is_centerless() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.center(), vec![s3.id()]);
        assert_eq!(s3.nilpotency_class(), None);
    }

    #[test]
    fn cyclic_six_orders_and_quotient() {
        let z6 = FiniteGroup::cyclic(6).unwrap();
        assert_eq!(z6.element_order(2), 3);
        assert_eq!(z6.element_order(1), 6);
        assert_eq!(z6.element_order(0), 1);
        let q = z6.quotient(&[0, 3]).unwrap();
        assert_eq!(q.group.order(), 3);
        assert_eq!(q.representatives, vec![0, 1, 2]);
        assert!(z6.is_homomorphism(&q.group, &q.projection));
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let t = (0..6).find(|&x| x != s3.id() && s3.element_order(x) == 2).unwrap();
        let h = s3.subgroup_generated(&[t]).unwrap();
        assert_eq!(h.len(), 2);
        assert!(s3.is_subgroup(&h));
        assert!(!s3.is_normal(&h));
        assert!(matches!(s3.quotient(&h), Err(crate::Error::InvalidArgument(_))));
    }

    #[test]
    fn quaternion_and_dihedral() {
        let q8 = FiniteGroup::quaternion();
        FiniteGroup::from_table(q8.table().to_vec()).unwrap();
        assert_eq!(q8.center(), vec![0, 1]);
        assert_eq!(q8.nilpotency_class(), Some(2));
        assert_eq!((0..8).filter(|&x| q8.element_order(x) == 4).count(), 6);
        let d4 = FiniteGroup::dihedral(4).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.center().len(), 2);
        assert_eq!((0..8).filter(|&x| d4.element_order(x) == 2).count(), 5);
        assert_eq!(d4.nilpotency_class(), Some(2));
    }

    #[test]
    fn table_validation() {
        assert!(FiniteGroup::from_table(vec![]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![0, 1]]).is_err());
        // Latin square without associativity: the 3-element quasigroup x - y mod 3
        let t = (0..3).map(|a| (0..3).map(|b| (a + 3 - b) % 3).collect()).collect();
        assert!(FiniteGroup::from_table(t).is_err());
        let doc: GroupTable = serde_json::from_str(r#"{"n":2,"table":[[0,1],[1,0]]}"#).unwrap();
        let g = FiniteGroup::from_group_table(doc.clone()).unwrap();
        assert_eq!(g.to_group_table(), doc);
    }

    #[test]
    fn opposite_and_product() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let op = s3.opposite();
        assert_eq!(op.opposite(), s3);
        let inv: Vec<usize> = (0..6).map(|x| s3.inv(x)).collect();
        assert!(s3.is_homomorphism(&op, &inv));
        let p = FiniteGroup::direct_product(&FiniteGroup::cyclic(2).unwrap(), &s3);
        assert_eq!(p.order(), 12);
        assert_eq!(p.center().len(), 2);
    }
}
