#![allow(dead_code)]

use ybe_core::FiniteSolution;

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                go(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every solution on `n` points, by trying all tables with permutation rows.
pub fn all_solutions(n: usize) -> Vec<FiniteSolution> {
    let perms = all_perms(n);
    let rows = 2 * n;
    let total = perms.len().pow(rows as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut rest = code;
        let mut pick = Vec::with_capacity(rows);
        for _ in 0..rows {
            pick.push(perms[rest % perms.len()].clone());
            rest /= perms.len();
        }
        let tau = pick.split_off(n);
        if let Ok(s) = FiniteSolution::from_tables(pick, tau) {
            out.push(s);
        }
    }
    out
}

/// Isomorphism by trying every bijection.
pub fn brute_isomorphic(a: &FiniteSolution, b: &FiniteSolution) -> bool {
    a.n() == b.n() && all_perms(a.n()).iter().any(|f| a.is_isomorphism(b, f))
}

/// Representatives up to isomorphism, by all-bijections comparison.
pub fn dedup_brute(sols: Vec<FiniteSolution>) -> Vec<FiniteSolution> {
    let mut reps: Vec<FiniteSolution> = Vec::new();
    for s in sols {
        if !reps.iter().any(|r| brute_isomorphic(r, &s)) {
            reps.push(s);
        }
    }
    reps
}
