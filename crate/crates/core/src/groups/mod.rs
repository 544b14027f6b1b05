//! Finite-group substrate: permutations, Cayley-table groups, abelian groups
//! given by invariant factors, and permutation groups given by generators.

mod abelian;
mod finite;
pub(crate) mod perm;
mod permgroup;

pub use abelian::{abelian_group, abelian_groups_of_order, normalize_factors, AbelianGroup};
pub use finite::{FiniteGroup, GroupTable, Quotient};
pub use perm::Perm;
pub use permgroup::{perm_group_closure, PermGroup};

/// Prime factorization as `(prime, exponent)` pairs in increasing prime order.
pub(crate) fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Integer partitions of `n` with non-increasing parts.
pub(crate) fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}
