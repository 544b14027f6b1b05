mod common;

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use ybe_core::brace::{catalog, dihedral_element, dihedral_example_brace, z2n_brace};
use ybe_core::retraction::{
    multipermutation_level, permutation_groups, relation, retraction, MultipermutationLevel, RelationKind,
};
use ybe_core::union::{
    count_by_orbit_type, enumerate_2reductive, solution_to_union, unions_isomorphic, AbelianUnion,
};

use common::{all_solutions, brute_isomorphic, dedup_brute};

fn report(id: &str, ok: bool, detail: impl AsRef<str>) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    // bypasses libtest capture so passing criteria are reported too
    let line = format!("criterion {id}: {verdict} - {}\n", detail.as_ref());
    std::io::stdout().lock().write_all(line.as_bytes()).unwrap();
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(f)
}

#[test]
fn criterion_1_census_counts() {
    let start = Instant::now();
    let (n3, n4) = single_threaded(|| (enumerate_2reductive(3).unwrap(), enumerate_2reductive(4).unwrap()));
    let elapsed = start.elapsed();
    let expected: BTreeMap<String, usize> =
        [("Z4", 3), ("Z3+Z1", 20), ("Z2+Z2", 42), ("Z2+Z1+Z1", 30), ("Z1+Z1+Z1+Z1", 1)]
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect();
    let got = count_by_orbit_type(&n4);
    let ok = n3.len() == 14 && n4.len() == 96 && got == expected && elapsed < Duration::from_secs(10);
    report(
        "1",
        ok,
        format!("n=3: {} (want 14), n=4: {} (want 96), by type {got:?}, {elapsed:.2?}", n3.len(), n4.len()),
    );
    assert!(ok);
}

#[test]
fn criterion_2_involutive_count() {
    let n3 = enumerate_2reductive(3).unwrap();
    let involutive = n3.iter().filter(|u| u.predicates().involutive).count();
    let ok = involutive == 5;
    report("2a", ok, format!("{involutive} involutive of {} at n=3 (want 5)", n3.len()));
    assert!(ok);
}

#[test]
fn criterion_2_square_free_count() {
    let n3 = enumerate_2reductive(3).unwrap();
    let square_free = n3.iter().filter(|u| u.predicates().square_free).count();
    let ok = n3.len() == 14 && square_free == 3;
    report("2b", ok, format!("{square_free} square-free of {} at n=3 (want 3 of 14)", n3.len()));
    assert!(ok);
}

#[test]
fn criterion_3_completeness_oracle() {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut ok = true;
    for n in [2, 3] {
        let reps = dedup_brute(all_solutions(n).into_iter().filter(|s| s.is_2reductive()).collect());
        let census = enumerate_2reductive(n).unwrap();
        ok &= reps.len() == census.len();
        // every brute-force class is hit by exactly one census entry
        for s in &reps {
            let hits = census.iter().filter(|u| brute_isomorphic(&u.to_solution(), s)).count();
            ok &= hits == 1;
        }
        details.push(format!("n={n}: brute force {} vs census {}", reps.len(), census.len()));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(60);
    report("3", ok, format!("{}, {elapsed:.2?}", details.join("; ")));
    assert!(ok);
}

fn scramble(u: &AbelianUnion, rng: &mut StdRng) -> AbelianUnion {
    let k = u.k();
    let mut pi: Vec<usize> = (0..k).collect();
    // shuffle within runs of equal block type
    loop {
        pi.shuffle(rng);
        if (0..k).all(|i| u.groups()[i] == u.groups()[pi[i]]) {
            break;
        }
    }
    let psi: Vec<Vec<usize>> = u
        .groups()
        .iter()
        .map(|g| {
            let auts = g.automorphisms();
            auts[rng.gen_range(0..auts.len())].clone()
        })
        .collect();
    u.transform(&pi, &psi).unwrap()
}

#[test]
fn criterion_4_round_trip_and_isomorphism() {
    let mut rng = StdRng::seed_from_u64(7);
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for n in 1..=5 {
        for u in enumerate_2reductive(n).unwrap() {
            let s = u.to_solution();
            let dec = solution_to_union(&s).unwrap();
            if unions_isomorphic(&dec.union, &u).is_none() {
                mismatches.push(format!("round trip {u:?}"));
            }
            let scrambled = scramble(&u, &mut rng);
            if unions_isomorphic(&u, &scrambled).is_none() || scrambled.canonical_form() != u {
                mismatches.push(format!("scramble {u:?}"));
            }
            checked += 1;
        }
    }
    let mut pairs = 0;
    for n in 1..=4 {
        let census = enumerate_2reductive(n).unwrap();
        let sols: Vec<_> = census.iter().map(|u| u.to_solution()).collect();
        for (i, u) in census.iter().enumerate() {
            for (j, v) in census.iter().enumerate() {
                let by_union = unions_isomorphic(u, v).is_some();
                let by_brute = brute_isomorphic(&sols[i], &sols[j]);
                if by_union != by_brute || by_union != (i == j) {
                    mismatches.push(format!("pair {i},{j} at n={n}"));
                }
                pairs += 1;
            }
            let copy = scramble(u, &mut rng);
            if !brute_isomorphic(&sols[i], &copy.to_solution()) || unions_isomorphic(u, &copy).is_none() {
                mismatches.push(format!("scrambled copy {i} at n={n}"));
            }
        }
    }
    let ok = mismatches.is_empty();
    report("4", ok, format!("{checked} round trips, {pairs} pairs, mismatches {mismatches:?}"));
    assert!(ok);
}

#[test]
fn criterion_5_retraction_properties() {
    let mut violations = Vec::new();
    let mut checked = 0;
    for n in 1..=5 {
        for u in enumerate_2reductive(n).unwrap() {
            let s = u.to_solution();
            let ret = retraction(&s).solution;
            if !ret.is_projection() {
                violations.push(format!("Ret not projection: {u:?}"));
            }
            if !permutation_groups(&s).full.is_abelian() {
                violations.push(format!("G(X) not abelian: {u:?}"));
            }
            let want = if n == 1 {
                0
            } else if s.is_permutational() {
                1
            } else {
                2
            };
            if multipermutation_level(&s) != MultipermutationLevel::Level(want) {
                violations.push(format!("level {:?} want {want}: {u:?}", multipermutation_level(&s)));
            }
            checked += 1;
        }
    }
    let ok = violations.is_empty();
    report("5", ok, format!("{checked} census entries, violations {violations:?}"));
    assert!(ok);
}

#[test]
fn criterion_6_brace_catalog() {
    let start = Instant::now();
    let mut violations = Vec::new();
    let cat = catalog();
    for (name, b) in &cat {
        let sol = b.associated_solution();
        if !b.lambda_is_action() {
            violations.push(format!("{name}: (a) λ"));
        }
        if !b.rho_is_antihom() {
            violations.push(format!("{name}: (b) ρ"));
        }
        let soc = match b.socle() {
            Ok(s) => s,
            Err(e) => {
                violations.push(format!("{name}: (c) {e}"));
                continue;
            }
        };
        if let Err(e) = b.is_biskew() {
            violations.push(format!("{name}: (d) {e}"));
        }
        if b.opposite_brace().associated_solution() != sol.inverse_solution() {
            violations.push(format!("{name}: (e) opposite"));
        }
        if let Err(e) = b.reductivity_profile() {
            violations.push(format!("{name}: (f) {e}"));
        }
        let quotient = b.quotient(&soc.elements).unwrap().brace.associated_solution();
        if !retraction(&sol).solution.is_isomorphic(&quotient) {
            violations.push(format!("{name}: (g) Ret vs B/Soc"));
        }
    }
    let elapsed = start.elapsed();
    let ok = violations.is_empty() && elapsed < Duration::from_secs(30);
    report("6", ok, format!("{} braces, {elapsed:.2?}, violations {violations:?}", cat.len()));
    assert!(ok);
}

#[test]
fn criterion_7_named_examples() {
    let mut failures = Vec::new();
    let z6 = z2n_brace(3).unwrap();
    let s = z6.associated_solution();
    if !(s.is_left_distributive() && !s.is_right_distributive()) {
        failures.push("Z6 distributivity");
    }
    if !matches!(multipermutation_level(&s), MultipermutationLevel::Irretractable { size: 6, .. }) {
        failures.push("Z6 irretractable");
    }
    if relation(&s, RelationKind::Approx).unwrap().blocks().len() != 6 {
        failures.push("Z6 approx classes");
    }
    if z6.socle().unwrap().elements != vec![0] {
        failures.push("Z6 socle");
    }
    let k = z6.kernel_ideals();
    if k.ker_rho != vec![0, 3] || z6.dot().is_normal(&k.ker_rho) {
        failures.push("Z6 Ker ρ");
    }
    let d = dihedral_example_brace();
    let (f_e1, e1, f, f_e3) =
        (dihedral_element(1, 1), dihedral_element(0, 1), dihedral_element(1, 0), dihedral_element(1, 3));
    if d.rho(f_e1, e1) != f_e3 || d.mul(f_e1, f) == f_e3 {
        failures.push("dihedral witness");
    }
    let u = AbelianUnion::from_factors(&[&[2], &[]], vec![vec![0; 2]; 2], vec![vec![0, 0], vec![1, 0]]).unwrap();
    if u.injectivity_necessary_checks().order_ok {
        failures.push("order condition");
    }
    let ok = failures.is_empty();
    report("7", ok, format!("failures {failures:?}"));
    assert!(ok);
}

#[test]
fn criterion_8_seven_identities() {
    let mut violations = Vec::new();
    let mut checked = Vec::new();
    for (name, b) in catalog() {
        if !b.associated_solution().is_2reductive() {
            continue;
        }
        checked.push(name.clone());
        for (k, ok) in b.seven_identities().iter().enumerate() {
            if !ok {
                violations.push(format!("{name}: identity {}", k + 1));
            }
        }
    }
    let ok = violations.is_empty() && !checked.is_empty();
    report("8", ok, format!("{} braces checked, violations {violations:?}", checked.len()));
    assert!(ok);
}
