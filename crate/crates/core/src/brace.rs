//! Finite skew left braces `(B, ·, ∘)` with `a∘(b·c) = (a∘b)·a⁻¹·(a∘c)`.
//!
//! Notation: `a⁻¹` is the inverse in `(B,·)`, `ā` the inverse in `(B,∘)`.
//! Maps compose right to left, so `λ_a λ_b` applies `λ_b` first.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{invalid, Error, Result};
use crate::groups::FiniteGroup;
use crate::retraction::{multipermutation_level, MultipermutationLevel};
use crate::solution::FiniteSolution;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceTables {
    pub n: usize,
    pub dot: Vec<Vec<usize>>,
    pub circle: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "snake_case")]
pub enum BraceViolation {
    #[error("{operation} table is not a group: {message}")]
    NotGroup { operation: String, message: String },

    #[error("operations act on {dot} and {circle} elements")]
    SizeMismatch { dot: usize, circle: usize },

    #[error("identities differ: {dot} for dot, {circle} for circle")]
    IdentityMismatch { dot: usize, circle: usize },

    #[error("brace law a∘(b·c) = (a∘b)·a⁻¹·(a∘c) fails at {triple:?}")]
    BraceLaw { triple: (usize, usize, usize) },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BraceTables", into = "BraceTables")]
pub struct SkewBrace {
    dot: FiniteGroup,
    circle: FiniteGroup,
}

impl TryFrom<BraceTables> for SkewBrace {
    type Error = BraceViolation;

    fn try_from(t: BraceTables) -> std::result::Result<Self, BraceViolation> {
        for (name, table) in [("dot", &t.dot), ("circle", &t.circle)] {
            if table.len() != t.n {
                return Err(BraceViolation::NotGroup {
                    operation: name.into(),
                    message: format!("{} rows, expected {}", table.len(), t.n),
                });
            }
        }
        let group = |name: &str, table: Vec<Vec<usize>>| {
            FiniteGroup::from_table(table).map_err(|e| BraceViolation::NotGroup {
                operation: name.into(),
                message: e.to_string(),
            })
        };
        verify_brace(group("dot", t.dot)?, group("circle", t.circle)?)
    }
}

impl From<SkewBrace> for BraceTables {
    fn from(b: SkewBrace) -> Self {
        BraceTables { n: b.order(), dot: b.dot.table().to_vec(), circle: b.circle.table().to_vec() }
    }
}

/// Checks shared carrier and identity, then the brace law on all triples.
pub fn verify_brace(dot: FiniteGroup, circle: FiniteGroup) -> std::result::Result<SkewBrace, BraceViolation> {
    if dot.order() != circle.order() {
        return Err(BraceViolation::SizeMismatch { dot: dot.order(), circle: circle.order() });
    }
    if dot.id() != circle.id() {
        return Err(BraceViolation::IdentityMismatch { dot: dot.id(), circle: circle.id() });
    }
    let n = dot.order();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = circle.mul(a, dot.mul(b, c));
                let rhs = dot.mul(dot.mul(circle.mul(a, b), dot.inv(a)), circle.mul(a, c));
                if lhs != rhs {
                    return Err(BraceViolation::BraceLaw { triple: (a, b, c) });
                }
            }
        }
    }
    Ok(SkewBrace { dot, circle })
}

/// A subset that is normal in both groups and `λ`-stable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ideal {
    pub elements: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceQuotient {
    pub brace: SkewBrace,
    /// Coset index of each element; cosets are numbered by their minimum.
    pub projection: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Nilpotency {
    Class(usize),
    /// The socle became trivial at `steps` with the attached brace of size > 1.
    NotNilpotent { steps: usize, stabilized: SkewBrace },
}

impl Nilpotency {
    pub fn class(&self) -> Option<usize> {
        match self {
            Nilpotency::Class(k) => Some(*k),
            Nilpotency::NotNilpotent { .. } => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SocleSeries {
    /// `B_0 = B, B_{k+1} = B_k / Soc(B_k)`, up to the last computed term.
    pub terms: Vec<SkewBrace>,
    pub nilpotency: Nilpotency,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KernelIdeals {
    pub ker_lambda: Vec<usize>,
    pub ker_rho: Vec<usize>,
    pub ker_lambda_is_ideal: bool,
    pub ker_rho_is_ideal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BiskewRoutes {
    /// `(B, ∘, ·)` is a skew left brace
    pub swapped_is_brace: bool,
    /// `λ_{a·b} = λ_b λ_a`
    pub lambda_antihom: bool,
    /// `σ_{σ̂_x(y)} = σ_y` on the associated solution
    pub solution_identity: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductivityProfile {
    pub red1: bool,
    pub red2: bool,
    pub red3: bool,
    pub red4: bool,
    /// `λ_{a·b} = λ_a λ_b`
    pub lambda_dot_hom: bool,
    /// `λ_{a·b} = λ_b λ_a`
    pub lambda_dot_antihom: bool,
    /// `ρ_{a·b} = ρ_a ρ_b`
    pub rho_dot_hom: bool,
    /// `ρ_{a·b} = ρ_b ρ_a`
    pub rho_dot_antihom: bool,
    /// `λ_{a·b} = λ_{b·a} = λ_{a∘b}` and the same for `ρ`
    pub symmetric_maps: bool,
    pub mp_level_at_most_2: bool,
    pub class_at_most_2: bool,
    pub opposite_class_at_most_2: bool,
}

impl ReductivityProfile {
    pub fn two_reductive(&self) -> bool {
        self.red1 && self.red2 && self.red3 && self.red4
    }
}

impl SkewBrace {
    pub fn from_tables(dot: Vec<Vec<usize>>, circle: Vec<Vec<usize>>) -> std::result::Result<Self, BraceViolation> {
        BraceTables { n: dot.len(), dot, circle }.try_into()
    }

    pub fn order(&self) -> usize {
        self.dot.order()
    }

    pub fn dot(&self) -> &FiniteGroup {
        &self.dot
    }

    pub fn circle(&self) -> &FiniteGroup {
        &self.circle
    }

    pub fn id(&self) -> usize {
        self.dot.id()
    }

    /// `a·b`
    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.dot.mul(a, b)
    }

    /// `a∘b`
    #[inline]
    pub fn circ(&self, a: usize, b: usize) -> usize {
        self.circle.mul(a, b)
    }

    /// `a⁻¹`
    #[inline]
    pub fn dinv(&self, a: usize) -> usize {
        self.dot.inv(a)
    }

    /// `ā`
    #[inline]
    pub fn cinv(&self, a: usize) -> usize {
        self.circle.inv(a)
    }

    pub fn is_trivial(&self) -> bool {
        self.dot.table() == self.circle.table()
    }

    pub fn to_tables(&self) -> BraceTables {
        self.clone().into()
    }

    /// `λ_a(b) = a⁻¹·(a∘b)`
    pub fn lambda(&self, a: usize, b: usize) -> usize {
        self.mul(self.dinv(a), self.circ(a, b))
    }

    /// `ρ_b(a) = \overline{λ_a(b)} ∘ a ∘ b`
    pub fn rho(&self, b: usize, a: usize) -> usize {
        self.circ(self.circ(self.cinv(self.lambda(a, b)), a), b)
    }

    /// Row `a` is `λ_a`.
    pub fn lambda_map(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|a| (0..n).map(|b| self.lambda(a, b)).collect()).collect()
    }

    /// Row `b` is `ρ_b`.
    pub fn rho_map(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|b| (0..n).map(|a| self.rho(b, a)).collect()).collect()
    }

    /// `(B, λ, ρ)`: `r(a, b) = (λ_a(b), ρ_b(a))`.
    pub fn associated_solution(&self) -> FiniteSolution {
        FiniteSolution::from_trusted(self.lambda_map(), self.rho_map())
    }

    /// `(B, ·op, ∘)`
    pub fn opposite_brace(&self) -> SkewBrace {
        let b = SkewBrace { dot: self.dot.opposite(), circle: self.circle.clone() };
        debug_assert!(verify_brace(b.dot.clone(), b.circle.clone()).is_ok());
        b
    }

    /// Each `λ_a` is an automorphism of `(B,·)` and `λ_{a∘b} = λ_a λ_b`.
    pub fn lambda_is_action(&self) -> bool {
        let n = self.order();
        let l = self.lambda_map();
        (0..n).all(|a| self.dot.is_homomorphism(&self.dot, &l[a]))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|x| l[self.circ(a, b)][x] == l[a][l[b][x]])))
    }

    /// `ρ_{a∘b} = ρ_b ρ_a`
    pub fn rho_is_antihom(&self) -> bool {
        let n = self.order();
        let r = self.rho_map();
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|x| r[self.circ(a, b)][x] == r[b][r[a][x]])))
    }

    pub fn biskew_routes(&self) -> BiskewRoutes {
        let n = self.order();
        let l = self.lambda_map();
        let routes = self.associated_solution().left_distributivity_routes();
        BiskewRoutes {
            swapped_is_brace: verify_brace(self.circle.clone(), self.dot.clone()).is_ok(),
            lambda_antihom: (0..n)
                .all(|a| (0..n).all(|b| (0..n).all(|x| l[self.mul(a, b)][x] == l[b][l[a][x]]))),
            solution_identity: routes[2],
        }
    }

    /// Whether `(B, ∘, ·)` is a brace too; errors if the routes disagree.
    pub fn is_biskew(&self) -> Result<bool> {
        let r = self.biskew_routes();
        if r.swapped_is_brace == r.lambda_antihom && r.lambda_antihom == r.solution_identity {
            Ok(r.swapped_is_brace)
        } else {
            Err(Error::Mismatch(format!("bi-skew routes disagree: {r:?}")))
        }
    }

    pub fn ker_lambda(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&a| (0..n).all(|b| self.lambda(a, b) == b)).collect()
    }

    pub fn ker_rho(&self) -> Vec<usize> {
        let n = self.order();
        (0..n).filter(|&a| (0..n).all(|b| self.rho(a, b) == b)).collect()
    }

    pub fn is_ideal(&self, s: &[usize]) -> bool {
        self.dot.is_normal(s)
            && self.circle.is_normal(s)
            && s.iter().all(|&x| (0..self.order()).all(|a| s.contains(&self.lambda(a, x))))
    }

    /// `{a : a∘b = a·b = b·a ∀b}`, checked against `Ker λ ∩ Ker ρ` and
    /// `Ker λ ∩ Z(B,·)`.
    pub fn socle(&self) -> Result<Ideal> {
        let n = self.order();
        let direct: Vec<usize> = (0..n)
            .filter(|&a| (0..n).all(|b| self.circ(a, b) == self.mul(a, b) && self.mul(a, b) == self.mul(b, a)))
            .collect();
        let kl = self.ker_lambda();
        let kr = self.ker_rho();
        let center = self.dot.center();
        let via_rho: Vec<usize> = kl.iter().copied().filter(|a| kr.contains(a)).collect();
        let via_center: Vec<usize> = kl.iter().copied().filter(|a| center.contains(a)).collect();
        if direct != via_rho || direct != via_center {
            return Err(Error::Mismatch(format!(
                "socle {direct:?}, Ker λ ∩ Ker ρ {via_rho:?}, Ker λ ∩ Z {via_center:?}"
            )));
        }
        if !self.is_ideal(&direct) {
            return Err(Error::Mismatch(format!("socle {direct:?} is not an ideal")));
        }
        Ok(Ideal { elements: direct })
    }

    /// `B/I`. The cosets `a·I` and `a∘I` must coincide and `I` must be an ideal.
    pub fn quotient(&self, ideal: &[usize]) -> Result<BraceQuotient> {
        if !self.is_ideal(ideal) {
            return invalid("not an ideal");
        }
        let n = self.order();
        for a in 0..n {
            let mut dc: Vec<usize> = ideal.iter().map(|&i| self.mul(a, i)).collect();
            let mut cc: Vec<usize> = ideal.iter().map(|&i| self.circ(a, i)).collect();
            dc.sort_unstable();
            cc.sort_unstable();
            if dc != cc {
                return invalid(format!("cosets of {a} differ between the two operations"));
            }
        }
        let q = self.dot.quotient(ideal)?;
        let reps = &q.representatives;
        let m = reps.len();
        let circle: Vec<Vec<usize>> = (0..m)
            .map(|i| (0..m).map(|j| q.projection[self.circ(reps[i], reps[j])]).collect())
            .collect();
        let circle = FiniteGroup::from_table(circle)?;
        let brace = verify_brace(q.group, circle)?;
        Ok(BraceQuotient { brace, projection: q.projection })
    }

    pub fn socle_series(&self) -> Result<SocleSeries> {
        let mut terms = vec![self.clone()];
        loop {
            let cur = terms.last().unwrap();
            if cur.order() == 1 {
                return Ok(SocleSeries { nilpotency: Nilpotency::Class(terms.len() - 1), terms });
            }
            let soc = cur.socle()?;
            if soc.elements.len() == 1 {
                let stabilized = cur.clone();
                let steps = terms.len() - 1;
                return Ok(SocleSeries { terms, nilpotency: Nilpotency::NotNilpotent { steps, stabilized } });
            }
            let next = cur.quotient(&soc.elements)?.brace;
            terms.push(next);
        }
    }

    pub fn nilpotency(&self) -> Result<Nilpotency> {
        Ok(self.socle_series()?.nilpotency)
    }

    pub fn kernel_ideals(&self) -> KernelIdeals {
        let ker_lambda = self.ker_lambda();
        let ker_rho = self.ker_rho();
        KernelIdeals {
            ker_lambda_is_ideal: self.is_ideal(&ker_lambda),
            ker_rho_is_ideal: self.is_ideal(&ker_rho),
            ker_lambda,
            ker_rho,
        }
    }

    /// `B/Ker λ`, only when `Ker λ` is an ideal.
    pub fn lambda_kernel_quotient(&self) -> Result<BraceQuotient> {
        let k = self.ker_lambda();
        if !self.is_ideal(&k) {
            return invalid("Ker λ is not an ideal");
        }
        self.quotient(&k)
    }

    /// Computes every claimed equivalence from both sides; a disagreement is
    /// an error carrying the profile.
    pub fn reductivity_profile(&self) -> Result<ReductivityProfile> {
        let n = self.order();
        let sol = self.associated_solution();
        let red = sol.reductivity();
        let l = self.lambda_map();
        let r = self.rho_map();
        let all3 = |f: &dyn Fn(usize, usize, usize) -> bool| {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|x| f(a, b, x))))
        };
        let at_most_2 = |nil: Nilpotency| nil.class().is_some_and(|k| k <= 2);
        let p = ReductivityProfile {
            red1: red.red1,
            red2: red.red2,
            red3: red.red3,
            red4: red.red4,
            lambda_dot_hom: all3(&|a, b, x| l[self.mul(a, b)][x] == l[a][l[b][x]]),
            lambda_dot_antihom: all3(&|a, b, x| l[self.mul(a, b)][x] == l[b][l[a][x]]),
            rho_dot_hom: all3(&|a, b, x| r[self.mul(a, b)][x] == r[a][r[b][x]]),
            rho_dot_antihom: all3(&|a, b, x| r[self.mul(a, b)][x] == r[b][r[a][x]]),
            symmetric_maps: (0..n).all(|a| {
                (0..n).all(|b| {
                    let (ab, ba, acb) = (self.mul(a, b), self.mul(b, a), self.circ(a, b));
                    l[ab] == l[ba] && l[ab] == l[acb] && r[ab] == r[ba] && r[ab] == r[acb]
                })
            }),
            mp_level_at_most_2: matches!(multipermutation_level(&sol), MultipermutationLevel::Level(k) if k <= 2),
            class_at_most_2: at_most_2(self.nilpotency()?),
            opposite_class_at_most_2: at_most_2(self.opposite_brace().nilpotency()?),
        };
        let pairs = [
            ("red1 vs λ hom", p.red1, p.lambda_dot_hom),
            ("red2 vs ρ hom", p.red2, p.rho_dot_hom),
            ("red3 vs λ anti-hom", p.red3, p.lambda_dot_antihom),
            ("red4 vs ρ anti-hom", p.red4, p.rho_dot_antihom),
            ("2-reductive vs symmetric maps", p.two_reductive(), p.symmetric_maps),
            ("2-reductive vs level <= 2", p.two_reductive(), p.mp_level_at_most_2),
            ("2-reductive vs class <= 2", p.two_reductive(), p.class_at_most_2),
            ("2-reductive vs opposite class <= 2", p.two_reductive(), p.opposite_class_at_most_2),
        ];
        match pairs.iter().find(|(_, a, b)| a != b) {
            Some((what, _, _)) => Err(Error::Mismatch(format!("{what}: {p:?}"))),
            None => Ok(p),
        }
    }

    /// The identities (i)-(vii) that hold in braces with 2-reductive solution:
    ///
    /// 1. `y∘y = y·\overline{y⁻¹}`
    /// 2. `(y⁻¹∘x)·y = (ȳ∘x)·ȳ⁻¹ = ρ_y(x)`
    /// 3. `ȳ·y = y·ȳ`
    /// 4. `y⁻¹·ȳ⁻¹ = y⁻¹∘y`
    /// 5. `y∘y = \overline{y⁻¹}∘ȳ⁻¹`
    /// 6. `\overline{ȳ·y} = (ȳ·y)⁻¹ = y⁻¹∘y`
    /// 7. `x∘y∘x̄∘ȳ = (x∘y)·(y∘x)⁻¹`
    pub fn seven_identities(&self) -> [bool; 7] {
        let n = self.order();
        let (m, c, di, ci) = (
            |a, b| self.mul(a, b),
            |a, b| self.circ(a, b),
            |a| self.dinv(a),
            |a| self.cinv(a),
        );
        let each = |f: &dyn Fn(usize) -> bool| (0..n).all(f);
        let pairs = |f: &dyn Fn(usize, usize) -> bool| (0..n).all(|x| (0..n).all(|y| f(x, y)));
        [
            each(&|y| c(y, y) == m(y, ci(di(y)))),
            pairs(&|x, y| {
                let lhs = m(c(di(y), x), y);
                lhs == m(c(ci(y), x), di(ci(y))) && lhs == self.rho(y, x)
            }),
            each(&|y| m(ci(y), y) == m(y, ci(y))),
            each(&|y| m(di(y), di(ci(y))) == c(di(y), y)),
            each(&|y| c(y, y) == c(ci(di(y)), di(ci(y)))),
            each(&|y| {
                let p = m(ci(y), y);
                ci(p) == di(p) && di(p) == c(di(y), y)
            }),
            pairs(&|x, y| c(c(c(x, y), ci(x)), ci(y)) == m(c(x, y), di(c(y, x)))),
        ]
    }

    /// Sufficient test for meta-triviality: `B/Soc(B)` is a trivial brace
    /// (the socle itself is always a trivial sub-brace).
    pub fn is_meta_trivial_via_socle(&self) -> Result<bool> {
        let soc = self.socle()?;
        Ok(self.quotient(&soc.elements)?.brace.is_trivial())
    }
}

pub fn trivial_brace(g: &FiniteGroup) -> SkewBrace {
    SkewBrace { dot: g.clone(), circle: g.clone() }
}

/// `(G, ·, ·op)`
pub fn almost_trivial_brace(g: &FiniteGroup) -> SkewBrace {
    SkewBrace { dot: g.clone(), circle: g.opposite() }
}

/// Componentwise product; `(a, b)` is element `a·|B2| + b`.
pub fn product_brace(b1: &SkewBrace, b2: &SkewBrace) -> SkewBrace {
    SkewBrace {
        dot: FiniteGroup::direct_product(&b1.dot, &b2.dot),
        circle: FiniteGroup::direct_product(&b1.circle, &b2.circle),
    }
}

fn twisted(n: usize) -> Result<FiniteGroup> {
    if n.is_multiple_of(2) {
        return invalid(format!("n must be odd, got {n}"));
    }
    let m = 2 * n;
    let table = (0..m)
        .map(|x| (0..m).map(|y| if x % 2 == 0 { (x + y) % m } else { (x + m - y) % m }).collect())
        .collect();
    FiniteGroup::from_table(table)
}

/// `ℤ_{2n}` with `x·y = x + (-1)^x y` and `∘ = +`, for odd `n`.
pub fn z2n_brace(n: usize) -> Result<SkewBrace> {
    Ok(verify_brace(twisted(n)?, FiniteGroup::cyclic(2 * n)?)?)
}

/// `ℤ_{2n}` with `· = +` and `x∘y = x + (-1)^x y`, for odd `n`.
pub fn z2n_dual_brace(n: usize) -> Result<SkewBrace> {
    Ok(verify_brace(FiniteGroup::cyclic(2 * n)?, twisted(n)?)?)
}

/// Element `εf + e_i` of `ℤ_2^3` as the mixed-radix index of its coordinates.
pub fn dihedral_element(eps: usize, i: usize) -> usize {
    const E: [usize; 4] = [0b000, 0b100, 0b010, 0b001];
    (if eps % 2 == 1 { 0b111 } else { 0 }) ^ E[i % 4]
}

/// `(ℤ_2^3, +, ∘)` with `(εf + e_i)∘(ζf + e_j) = (ε+ζ)f + e_{i + 3^ε j}`,
/// where `e_0 = 0` and `f = e_1 + e_2 + e_3`; `(B,∘)` is dihedral of order 8.
pub fn dihedral_example_brace() -> SkewBrace {
    let dot = FiniteGroup::from_table((0..8).map(|a| (0..8).map(|b| a ^ b).collect()).collect())
        .expect("xor is a group");
    let mut decode = [(0, 0); 8];
    for eps in 0..2 {
        for i in 0..4 {
            decode[dihedral_element(eps, i)] = (eps, i);
        }
    }
    let circle = (0..8)
        .map(|a| {
            let (e, i) = decode[a];
            (0..8)
                .map(|b| {
                    let (z, j) = decode[b];
                    let twist = if e == 1 { 3 * j } else { j };
                    dihedral_element(e + z, i + twist)
                })
                .collect()
        })
        .collect();
    let circle = FiniteGroup::from_table(circle).expect("dihedral group");
    verify_brace(dot, circle).expect("dihedral example is a brace")
}

/// Named braces used by the test suites and the CLI.
pub fn catalog() -> Vec<(String, SkewBrace)> {
    let mut groups: Vec<(String, FiniteGroup)> = Vec::new();
    for k in 1..=8 {
        groups.push((format!("Z{k}"), FiniteGroup::cyclic(k).unwrap()));
    }
    for f in [&[2, 2][..], &[2, 4], &[2, 2, 2]] {
        let g = crate::groups::AbelianGroup::new(f).unwrap();
        groups.push((g.label(), g.group().clone()));
    }
    groups.push(("S3".into(), FiniteGroup::symmetric(3).unwrap()));
    groups.push(("D4".into(), FiniteGroup::dihedral(4).unwrap()));
    groups.push(("Q8".into(), FiniteGroup::quaternion()));

    let mut out = Vec::new();
    for (name, g) in &groups {
        out.push((format!("Triv({name})"), trivial_brace(g)));
        out.push((format!("AlmostTriv({name})"), almost_trivial_brace(g)));
    }
    for n in [1, 3, 5] {
        out.push((format!("Z{}", 2 * n), z2n_brace(n).unwrap()));
        out.push((format!("Z{}dual", 2 * n), z2n_dual_brace(n).unwrap()));
    }
    let s3 = FiniteGroup::symmetric(3).unwrap();
    out.push(("Triv(S3)xAlmostTriv(S3)".into(), product_brace(&trivial_brace(&s3), &almost_trivial_brace(&s3))));
    let z2 = FiniteGroup::cyclic(2).unwrap();
    out.push(("Z6xTriv(Z2)".into(), product_brace(&z2n_brace(3).unwrap(), &trivial_brace(&z2))));
    out.push(("Dihedral(Z2^3)".into(), dihedral_example_brace()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders_verify() {
        for (name, b) in catalog() {
            let t = b.to_tables();
            assert!(SkewBrace::try_from(t).is_ok(), "{name}");
        }
        assert!(z2n_brace(2).is_err());
        assert_eq!(z2n_brace(1).unwrap().order(), 2);
    }

    #[test]
    fn rejects_non_braces() {
        // Z4 against a relabeled Z4 with the same identity
        let z4 = FiniteGroup::cyclic(4).unwrap();
        let swap = |x: usize| [0, 2, 1, 3][x];
        let other: Vec<Vec<usize>> =
            (0..4).map(|a| (0..4).map(|b| swap(z4.mul(swap(a), swap(b)))).collect()).collect();
        let other = FiniteGroup::from_table(other).unwrap();
        assert!(matches!(verify_brace(z4.clone(), other), Err(BraceViolation::BraceLaw { .. })));
        let shifted = FiniteGroup::from_table(vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(matches!(
            verify_brace(FiniteGroup::cyclic(2).unwrap(), shifted),
            Err(BraceViolation::IdentityMismatch { .. })
        ));
    }

    #[test]
    fn z6_maps() {
        let b = z2n_brace(3).unwrap();
        for x in 0..6 {
            for y in 0..6 {
                let sign = |v: usize| if x % 2 == 0 { v } else { (6 - v) % 6 };
                assert_eq!(b.lambda(x, y), sign(y));
                // ρ_x(y) = (-1)^{y+1} x + x + y
                let t = if y % 2 == 1 { x } else { (6 - x) % 6 };
                assert_eq!(b.rho(x, y), (t + x + y) % 6);
            }
        }
    }

    #[test]
    fn almost_trivial_lambda_is_conjugation() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let b = almost_trivial_brace(&s3);
        for a in 0..6 {
            for x in 0..6 {
                assert_eq!(b.lambda(a, x), s3.mul(s3.mul(s3.inv(a), x), a));
            }
        }
        assert_eq!(b.socle().unwrap().elements, vec![0]);
    }

    #[test]
    fn trivial_brace_solution() {
        let s3 = FiniteGroup::symmetric(3).unwrap();
        let b = trivial_brace(&s3);
        let s = b.associated_solution();
        for a in 0..6 {
            for x in 0..6 {
                assert_eq!(s.s(a, x), x);
                assert_eq!(s.t(x, a), s3.mul(s3.mul(s3.inv(x), a), x));
            }
        }
        assert_eq!(b.opposite_brace(), almost_trivial_brace(&s3.opposite()));
    }

    #[test]
    fn socle_series_examples() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(trivial_brace(&z4).nilpotency().unwrap(), Nilpotency::Class(1));
        let q8 = FiniteGroup::quaternion();
        assert_eq!(almost_trivial_brace(&q8).nilpotency().unwrap(), Nilpotency::Class(2));
        match z2n_brace(3).unwrap().nilpotency().unwrap() {
            Nilpotency::NotNilpotent { steps, stabilized } => {
                assert_eq!(steps, 0);
                assert_eq!(stabilized.order(), 6);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(trivial_brace(&FiniteGroup::cyclic(1).unwrap()).nilpotency().unwrap(), Nilpotency::Class(0));
    }

    #[test]
    fn dihedral_witness() {
        let b = dihedral_example_brace();
        let f_e1 = dihedral_element(1, 1);
        let e1 = dihedral_element(0, 1);
        let f_e3 = dihedral_element(1, 3);
        assert_eq!(b.rho(f_e1, e1), f_e3);
        assert_ne!(b.mul(f_e1, dihedral_element(1, 0)), f_e3);
        assert!(!b.circle().is_abelian());
    }
}
