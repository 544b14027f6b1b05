use std::collections::{BTreeSet, VecDeque};
use std::sync::OnceLock;

use super::finite::FiniteGroup;
use super::perm::Perm;
use crate::error::{invalid, Result};

/// A permutation group of some degree, given by generators. The element list
/// is computed lazily by closure.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: OnceLock<Vec<Perm>>,
}

/// The group generated by a non-empty list of permutations of equal degree.
pub fn perm_group_closure(gens: &[Perm]) -> Result<PermGroup> {
    match gens.first() {
        None => invalid("cannot infer degree from an empty generator list"),
        Some(g) => PermGroup::generate(g.degree(), gens.to_vec()),
    }
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return invalid(format!("generator {g} has degree {}, expected {degree}", g.degree()));
        }
        let mut generators = generators;
        generators.retain(|g| !g.is_identity());
        generators.sort();
        generators.dedup();
        Ok(PermGroup { degree, generators, elements: OnceLock::new() })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// All elements, sorted lexicographically by image vector.
    pub fn elements(&self) -> &[Perm] {
        self.elements.get_or_init(|| {
            let id = Perm::identity(self.degree);
            let mut seen = BTreeSet::from([id.clone()]);
            let mut queue = VecDeque::from([id]);
            while let Some(p) = queue.pop_front() {
                for g in &self.generators {
                    let q = g.compose(&p);
                    if seen.insert(q.clone()) {
                        queue.push_back(q);
                    }
                }
            }
            seen.into_iter().collect()
        })
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.elements().binary_search(p).is_ok()
    }

    /// Orbits on `0..degree`, each sorted, listed by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &self.generators {
            for x in 0..self.degree {
                let (a, b) = (find(&mut parent, x), find(&mut parent, g.apply(x)));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.degree];
        for x in 0..self.degree {
            let r = find(&mut parent, x);
            if slot[r] == usize::MAX {
                slot[r] = orbits.len();
                orbits.push(Vec::new());
            }
            orbits[slot[r]].push(x);
        }
        orbits
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn to_finite_group(&self) -> FiniteGroup {
        FiniteGroup::from_perms(self.elements()).expect("closure is a group")
    }
}
