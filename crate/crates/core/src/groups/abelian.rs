use std::sync::OnceLock;

use super::finite::FiniteGroup;
use super::{factorize, partitions};
use crate::error::{invalid, Result};

/// A finite abelian group `Z_{d1} × … × Z_{dk}` in invariant-factor form
/// (`d1 | d2 | … | dk`, each `>= 2`; the trivial group has no factors).
///
/// Elements are mixed-radix integers with the last factor least significant,
/// so element `x` has digits `x = Σ digit_i · stride_i`.
#[derive(Clone, Debug)]
pub struct AbelianGroup {
    factors: Vec<usize>,
    strides: Vec<usize>,
    group: FiniteGroup,
    automorphisms: OnceLock<Vec<Vec<usize>>>,
}

impl PartialEq for AbelianGroup {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}

impl Eq for AbelianGroup {}

impl std::hash::Hash for AbelianGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.factors.hash(state);
    }
}

/// Rewrites any multiset of cyclic orders as invariant factors.
///
/// Orders equal to 1 are dropped; `[]` is the trivial group.
pub fn normalize_factors(orders: &[usize]) -> Result<Vec<usize>> {
    if let Some(&bad) = orders.iter().find(|&&d| d == 0) {
        return invalid(format!("cyclic factor of order {bad}"));
    }
    // prime -> exponents of that prime across the factors
    let mut by_prime: Vec<(usize, Vec<u32>)> = Vec::new();
    for &d in orders {
        for (p, e) in factorize(d) {
            match by_prime.iter_mut().find(|(q, _)| *q == p) {
                Some((_, es)) => es.push(e),
                None => by_prime.push((p, vec![e])),
            }
        }
    }
    let width = by_prime.iter().map(|(_, es)| es.len()).max().unwrap_or(0);
    let mut factors = vec![1usize; width];
    for (p, mut es) in by_prime {
        es.sort_unstable();
        // largest exponents go to the last (largest) factors
        let offset = width - es.len();
        for (k, e) in es.into_iter().enumerate() {
            factors[offset + k] *= p.pow(e);
        }
    }
    Ok(factors)
}

/// The abelian group `Z_{d1} × … × Z_{dk}` for any list of cyclic orders.
pub fn abelian_group(orders: &[usize]) -> Result<AbelianGroup> {
    AbelianGroup::new(orders)
}

/// One representative per isomorphism class of abelian groups of order `n`,
/// sorted by number of invariant factors, then by the factors.
pub fn abelian_groups_of_order(n: usize) -> Result<Vec<AbelianGroup>> {
    if n == 0 {
        return invalid("order must be positive");
    }
    let mut types: Vec<Vec<usize>> = vec![vec![]];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for t in &types {
            for part in partitions(e as usize) {
                let mut orders = t.clone();
                orders.extend(part.iter().map(|&k| p.pow(k as u32)));
                next.push(orders);
            }
        }
        types = next;
    }
    let mut groups: Vec<AbelianGroup> = types
        .iter()
        .map(|orders| AbelianGroup::new(orders))
        .collect::<Result<_>>()?;
    groups.sort_by(|a, b| {
        (a.factors.len(), &a.factors).cmp(&(b.factors.len(), &b.factors))
    });
    Ok(groups)
}

impl AbelianGroup {
    pub fn new(orders: &[usize]) -> Result<Self> {
        Ok(Self::from_invariant_factors(normalize_factors(orders)?))
    }

    pub fn trivial() -> Self {
        Self::from_invariant_factors(Vec::new())
    }

    fn from_invariant_factors(factors: Vec<usize>) -> Self {
        let mut strides = vec![1; factors.len()];
        for k in (0..factors.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * factors[k + 1];
        }
        let n: usize = factors.iter().product();
        let add = |a: usize, b: usize| -> usize {
            factors
                .iter()
                .zip(&strides)
                .map(|(&d, &s)| ((a / s % d + b / s % d) % d) * s)
                .sum()
        };
        let table = (0..n).map(|a| (0..n).map(|b| add(a, b)).collect()).collect();
        let group = FiniteGroup::from_table_unchecked(table, 0);
        AbelianGroup { factors, strides, group, automorphisms: OnceLock::new() }
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.group.mul(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.group.inv(a)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k · a`
    pub fn times(&self, k: usize, a: usize) -> usize {
        (0..k).fold(0, |acc, _| self.add(acc, a))
    }

    pub fn digits(&self, x: usize) -> Vec<usize> {
        self.factors.iter().zip(&self.strides).map(|(&d, &s)| x / s % d).collect()
    }

    pub fn from_digits(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(self.factors.iter().zip(&self.strides))
            .map(|(&a, (&d, &s))| (a % d) * s)
            .sum()
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.group.element_order(x)
    }

    /// The standard generators, one unit vector per invariant factor.
    pub fn standard_generators(&self) -> Vec<usize> {
        self.strides.clone()
    }

    pub fn span(&self, s: &[usize]) -> Vec<usize> {
        self.group.subgroup_generated(s).expect("elements in range")
    }

    pub fn generated_by(&self, s: &[usize]) -> bool {
        self.span(s).len() == self.order()
    }

    /// Extends generator images to a map; `None` unless it is an automorphism.
    fn extend(&self, images: &[usize]) -> Option<Vec<usize>> {
        let n = self.order();
        let mut map = Vec::with_capacity(n);
        let mut hit = vec![false; n];
        for x in 0..n {
            let y = self
                .digits(x)
                .iter()
                .zip(images)
                .fold(0, |acc, (&k, &g)| self.add(acc, self.times(k, g)));
            if hit[y] {
                return None;
            }
            hit[y] = true;
            map.push(y);
        }
        Some(map)
    }

    /// All automorphisms as element maps, by brute force over images of the
    /// standard generators. Sorted, identity first.
    pub fn automorphisms(&self) -> &[Vec<usize>] {
        self.automorphisms.get_or_init(|| {
            let n = self.order();
            // candidate images per generator: order must divide the factor
            let candidates: Vec<Vec<usize>> = self
                .factors
                .iter()
                .map(|&d| (0..n).filter(|&g| d % self.element_order(g) == 0).collect())
                .collect();
            let mut out = Vec::new();
            let mut images = vec![0; self.factors.len()];
            fn go(
                a: &AbelianGroup,
                cands: &[Vec<usize>],
                k: usize,
                images: &mut Vec<usize>,
                out: &mut Vec<Vec<usize>>,
            ) {
                if k == cands.len() {
                    if let Some(map) = a.extend(images) {
                        out.push(map);
                    }
                    return;
                }
                for &g in &cands[k] {
                    images[k] = g;
                    go(a, cands, k + 1, images, out);
                }
            }
            go(self, &candidates, 0, &mut images, &mut out);
            out.sort();
            out
        })
    }

    /// Finds an isomorphism from an abstract abelian group `g` (given by its
    /// table) onto `self`, returned as the image of every element of `g`.
    pub(crate) fn isomorphism_from(&self, g: &FiniteGroup) -> Option<Vec<usize>> {
        if g.order() != self.order() || !g.is_abelian() {
            return None;
        }
        // choose preimages of the standard generators with matching orders
        let n = g.order();
        let k = self.factors.len();
        let candidates: Vec<Vec<usize>> = self
            .factors
            .iter()
            .map(|&d| (0..n).filter(|&x| g.element_order(x) == d).collect())
            .collect();
        let mut chosen = vec![0; k];
        fn power(g: &FiniteGroup, x: usize, e: usize) -> usize {
            (0..e).fold(g.id(), |acc, _| g.mul(acc, x))
        }
        fn go(
            a: &AbelianGroup,
            g: &FiniteGroup,
            cands: &[Vec<usize>],
            depth: usize,
            chosen: &mut Vec<usize>,
        ) -> Option<Vec<usize>> {
            if depth == cands.len() {
                // map self -> g, then invert
                let n = a.order();
                let mut inverse = vec![usize::MAX; n];
                for x in 0..n {
                    let y = a
                        .digits(x)
                        .iter()
                        .zip(chosen.iter())
                        .fold(g.id(), |acc, (&e, &h)| g.mul(acc, power(g, h, e)));
                    if inverse[y] != usize::MAX {
                        return None;
                    }
                    inverse[y] = x;
                }
                return Some(inverse);
            }
            for &x in &cands[depth] {
                chosen[depth] = x;
                if let Some(found) = go(a, g, cands, depth + 1, chosen) {
                    return Some(found);
                }
            }
            None
        }
        go(self, g, &candidates, 0, &mut chosen)
    }

    /// Short type label such as `Z1`, `Z4` or `Z2xZ2`.
    pub fn label(&self) -> String {
        if self.factors.is_empty() {
            "Z1".to_string()
        } else {
            self.factors.iter().map(|d| format!("Z{d}")).collect::<Vec<_>>().join("x")
        }
    }
}
