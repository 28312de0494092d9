//! Acceptance checks. Each criterion prints one PASS/FAIL line; every
//! comparison is exact.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rcomb::binomial::{check_binomial_identity, Identity};
use rcomb::compositions::{family_parts, verify_composition_correspondence, Family};
use rcomb::count::{count_subsets_fast, count_subsets_oracle, run_closed_form};
use rcomb::digraph::{build_digraph, classify_structure, StructureClass};
use rcomb::genfunc::{rational_equal, recurrence_to_gf, s_gf_from_b_gf};
use rcomb::permutations::{verify_closed_forms, verify_swap_window, verify_theorem_bij};
use rcomb::recurrence::{recurrence_common_node, recurrence_for, recurrence_four_inner_two_errant};
use rcomb::subword::{equivalence_gf, qset_from_subword, verify_equivalence_classes, Subword};
use rcomb::tiling::{count_tilings, verify_s_equals_b};
use rcomb::transfer::transfer_matrix_gf;
use rcomb::{QSet, RationalGF};

type Outcome = Result<(), String>;

fn q(s: &str) -> QSet {
    QSet::parse(s).unwrap()
}

fn subsets_of(max: u32) -> Vec<QSet> {
    (1u32..1 << max)
        .map(|mask| QSet::new((1..=max).filter(|d| mask >> (d - 1) & 1 == 1)).unwrap())
        .collect()
}

fn ensure(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(detail())
    }
}

fn fibonacci_baseline() -> Outcome {
    let mut fib = vec![BigUint::zero(), BigUint::from(1u32)];
    for i in 2..=27 {
        let next = &fib[i - 1] + &fib[i - 2];
        fib.push(next);
    }
    let fast = count_subsets_fast(&q("1"), 25, false).map_err(|e| e.to_string())?;
    let oracle = count_subsets_oracle(&q("1"), 22, false).map_err(|e| e.to_string())?;
    for n in 0..=25 {
        ensure(fast.totals[n] == fib[n + 2], || format!("fast n={n}"))?;
        if n <= 22 {
            ensure(oracle.totals[n] == fib[n + 2], || format!("oracle n={n}"))?;
        }
    }
    Ok(())
}

fn run_closed_forms() -> Outcome {
    for qq in 1..=5 {
        let t = count_subsets_oracle(&QSet::run(qq), 20, true).map_err(|e| e.to_string())?;
        for n in 0..=20 {
            for k in 0..=n {
                let closed = run_closed_form(qq, n as i64, k as i64);
                ensure(closed == t.refined(n, k), || format!("q={qq} n={n} k={k}"))?;
            }
        }
    }
    Ok(())
}

fn subsets_equal_tilings() -> Outcome {
    for set in subsets_of(6) {
        let r = verify_s_equals_b(&set, 12).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
    }
    Ok(())
}

fn pipeline(set: &str, class: StructureClass, num: &[i64], den: &[i64]) -> Outcome {
    let set = q(set);
    let g = build_digraph(&set.comb()).map_err(|e| e.to_string())?;
    let cs = classify_structure(&g);
    ensure(cs.class == class, || format!("classified as {}", cs.class))?;
    let (r, _) = match class {
        StructureClass::CommonNode => recurrence_common_node(&cs),
        _ => recurrence_four_inner_two_errant(&cs),
    }
    .map_err(|e| e.to_string())?;
    let gs = s_gf_from_b_gf(&recurrence_to_gf(&r), set.q() as usize).map_err(|e| e.to_string())?;
    let literal = RationalGF::from_i64s(num, den).map_err(|e| e.to_string())?;
    ensure(rational_equal(&gs, &literal), || format!("got {gs}"))?;
    let series = gs.series(39);
    let fast = count_subsets_fast(&set, 39, false).map_err(|e| e.to_string())?;
    let oracle = count_subsets_oracle(&set, 26, false).map_err(|e| e.to_string())?;
    for n in 0..=39 {
        ensure(series[n] == BigInt::from(fast.totals[n].clone()), || format!("fast n={n}"))?;
        if n <= 26 {
            ensure(series[n] == BigInt::from(oracle.totals[n].clone()), || format!("oracle n={n}"))?;
        }
    }
    Ok(())
}

/// Recurrence, transfer matrix and tiling oracle agree on `B_n` and `B_{n,k}`.
fn three_way(set: &QSet, n_max: usize) -> Outcome {
    let g = build_digraph(&set.comb()).map_err(|e| e.to_string())?;
    let cs = classify_structure(&g);
    let (uni, bi) = recurrence_for(&cs).map_err(|e| e.to_string())?;
    let tm = transfer_matrix_gf(&g).map_err(|e| e.to_string())?;
    let tm_tri = tm.triangle(n_max);
    let tm_uni = tm.at_y_one().map_err(|e| e.to_string())?.series(n_max);
    let tiles = count_tilings(&set.comb(), n_max).map_err(|e| e.to_string())?;
    let u = uni.evaluate(n_max);
    let b = bi.evaluate(n_max);
    let u2 = bi.to_univariate().evaluate(n_max);
    for n in 0..=n_max {
        let oracle = BigInt::from(tiles.b[n].clone());
        ensure(u[n] == oracle && tm_uni[n] == oracle && u2[n] == oracle, || {
            format!("{set} n={n}: recurrence {} transfer {} oracle {oracle}", u[n], tm_uni[n])
        })?;
        for k in 0..=n {
            let oracle = BigInt::from(tiles.refined(n, k));
            let rec = b[n].get(k).cloned().unwrap_or_default();
            ensure(rec == oracle && tm_tri[n][k] == oracle, || {
                format!("{set} n={n} k={k}: recurrence {rec} transfer {} oracle {oracle}", tm_tri[n][k])
            })?;
        }
    }
    Ok(())
}

fn second_four_inner_instance() -> Outcome {
    let set = q("1,2,5,7");
    let g = build_digraph(&set.comb()).map_err(|e| e.to_string())?;
    let class = classify_structure(&g).class;
    ensure(class == StructureClass::FourInnerTwoErrant, || format!("classified as {class}"))?;
    three_way(&set, 18)
}

fn common_node_sweep() -> Outcome {
    let mut seen = 0;
    for set in subsets_of(5) {
        let g = build_digraph(&set.comb()).map_err(|e| e.to_string())?;
        if classify_structure(&g).class == StructureClass::CommonNode {
            three_way(&set, 14)?;
            seen += 1;
        }
    }
    ensure(seen > 0, || "no common-node sets".into())
}

fn binomial_identities() -> Outcome {
    let all = [Identity::Db, Identity::Dbv, Identity::Bi];
    for which in all {
        let arity = which.arity();
        let mut j = vec![1i64; arity];
        loop {
            ensure(check_binomial_identity(which, &j), || format!("{which:?} {j:?}"))?;
            let Some(i) = (0..arity).find(|&i| j[i] < 12) else { break };
            j[..i].iter_mut().for_each(|x| *x = 1);
            j[i] += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(40);
    for _ in 0..200 {
        for which in all {
            let j: Vec<i64> = (0..which.arity()).map(|_| rng.gen_range(1..=40)).collect();
            ensure(check_binomial_identity(which, &j), || format!("{which:?} {j:?}"))?;
        }
    }
    Ok(())
}

fn swap_windows() -> Outcome {
    for m in 2..=5 {
        let r = verify_swap_window(m, 12).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
    }
    Ok(())
}

fn restricted_permutations() -> Outcome {
    for m in 1..=3 {
        for j in 1..=3 {
            let r = verify_theorem_bij(m, j, 10).map_err(|e| e.to_string())?;
            ensure(r.passed(), || r.to_string())?;
            let r = verify_closed_forms(m, j, 10).map_err(|e| e.to_string())?;
            ensure(r.passed(), || r.to_string())?;
        }
    }
    Ok(())
}

fn composition_families() -> Outcome {
    let cases = [
        ("1,2", Family::Per { l: 1, g: 1, r: 3, t: 1 }),
        ("2,3", Family::Per { l: 1, g: 1, r: 2, t: 2 }),
        ("1,2,3", Family::Per { l: 1, g: 1, r: 4, t: 1 }),
        ("1,3", Family::Compwb { p: 2, q: 3 }),
        ("1,2,4", Family::Compwb { p: 3, q: 4 }),
        ("2,4", Family::Min1arc(q("2,4"))),
        ("2,4,5,6", Family::Per2 { l: 1, g: 1, m: 1, h: 1, r: 3, t: 3 }),
    ];
    for (expected, family) in cases {
        let (set, parts) = family_parts(&family).map_err(|e| format!("{family:?}: {e}"))?;
        ensure(set == q(expected), || format!("{family:?} gives {set}"))?;
        let r = verify_composition_correspondence(&set, &parts, 20).map_err(|e| e.to_string())?;
        ensure(r.passed(), || r.to_string())?;
    }
    Ok(())
}

fn subword_classes() -> Outcome {
    let listed = [
        ("1", "{}"),
        ("10", "{1}"),
        ("100", "{1,2}"),
        ("1000", "{1,2,3}"),
        ("1010", "{1,3}"),
        ("10000", "{1,2,3,4}"),
        ("10010", "{1,2,4}"),
        ("100010", "{1,2,3,5}"),
        ("100110", "{1,2,4,5}"),
        ("101010", "{1,3,5}"),
    ];
    let mut failures = Vec::new();
    for (w, expected) in listed {
        let w = Subword::parse(w).map_err(|e| e.to_string())?;
        let (set, _) = qset_from_subword(&w);
        if set.to_string() != expected {
            failures.push(format!("{w} gives {set}, listed as {expected}"));
        }
        match verify_equivalence_classes(&w, 16) {
            Ok(r) if r.passed() => {}
            Ok(r) => failures.push(r.to_string()),
            Err(e) => failures.push(format!("{w}: {e}")),
        }
        if let Ok(gf) = equivalence_gf(&w) {
            let series = gf.series(16);
            for (n, c) in series.iter().enumerate() {
                let e = rcomb::subword::count_equivalence_classes(&w, n).map_err(|e| e.to_string())?;
                if *c != BigInt::from(e.total) {
                    failures.push(format!("{w}: series {c} vs {} classes at n={n}", e.total));
                    break;
                }
            }
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn well_based_triples() -> Outcome {
    let found: Vec<String> = subsets_of(16)
        .into_iter()
        .filter(|s| s.len() == 3 && s.is_well_based())
        .map(|s| s.to_string())
        .collect();
    let expected = ["{1,2,3}", "{1,2,4}", "{1,2,5}", "{1,3,5}"];
    let mut found_sorted = found.clone();
    found_sorted.sort();
    ensure(found_sorted == expected, || format!("found {found:?}"))
}

fn self_starting() -> Outcome {
    let mut sets = subsets_of(7);
    sets.push(q("1,2,5,7"));
    for set in sets {
        let g = build_digraph(&set.comb()).map_err(|e| e.to_string())?;
        let Ok((uni, bi)) = recurrence_for(&classify_structure(&g)) else { continue };
        let qq = set.q() as usize;
        let u = uni.evaluate(qq);
        let b = bi.to_univariate().evaluate(qq);
        ensure(u.iter().chain(&b).all(|v| *v == BigInt::from(1)), || format!("{set}: {u:?}"))?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, Duration, fn() -> Outcome)> = vec![
        ("Fibonacci baseline", Duration::from_secs(10), fibonacci_baseline),
        ("run closed form", Duration::from_secs(10), run_closed_forms),
        ("S = B for every Q in {1..6}", Duration::from_secs(120), subsets_equal_tilings),
        ("{1,4} generating function pipeline", Duration::from_secs(1), || {
            pipeline(
                "1,4",
                StructureClass::CommonNode,
                &[1, 1, 1, 1, 2, 0, 1],
                &[1, -1, 0, -1, 1, -2, 1, -1],
            )
        }),
        ("{1,5} generating function pipeline", Duration::from_secs(1), || {
            pipeline(
                "1,5",
                StructureClass::FourInnerTwoErrant,
                &[1, 2, 2, 2, 2, 4, 3, 2, 1, 1],
                &[1, 0, -1, -1, -1, 1, -1, -1, -1, 0, -1],
            )
        }),
        ("{1,2,5,7} four-inner recurrence", Duration::from_secs(30), second_four_inner_instance),
        ("common-node sweep q <= 5", Duration::from_secs(60), common_node_sweep),
        ("binomial identities", Duration::from_secs(5), binomial_identities),
        ("swap-window permutations", Duration::from_secs(60), swap_windows),
        ("restricted permutations and closed forms", Duration::from_secs(60), restricted_permutations),
        ("composition families", Duration::from_secs(60), composition_families),
        ("subword equivalence classes", Duration::from_secs(120), subword_classes),
        ("well-based triples", Duration::from_secs(1), well_based_triples),
        ("self-starting recurrences", Duration::from_secs(5), self_starting),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({elapsed:.2?})", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name} ({elapsed:.2?}): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
