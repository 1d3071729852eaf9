//! End-to-end acceptance run. Prints one `PASS`/`FAIL` line per criterion.

mod common;

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sortnet::access::{certify_last_layer_arity, connectivity_bound, find_branch_depth2};
use sortnet::Network;
use sortnet::constructions::{build_columnsort4, build_depth3, figure1};
use sortnet::cubes::{self, cube_config_from_network, random_config, replay_cubes, solve_cubes_detailed};
use sortnet::cubes2::{self, meets_guarantee, select_substacks, solve_second_cubes, uniform_config, SolverParams};
use sortnet::search::{minimal_arity, MinArity, SearchLimits};
use sortnet::verify::{verify_exhaustive, verify_random};

struct Outcome {
    pass: bool,
    detail: String,
    budget: Duration,
}

fn outcome(pass: bool, detail: impl Into<String>, budget_secs: u64) -> Outcome {
    Outcome { pass, detail: detail.into(), budget: Duration::from_secs(budget_secs) }
}

fn figure1_reproduction() -> Outcome {
    let net = figure1();
    let input = [1, 5, 8, 2, 42, 27, 7, 4];
    let expected = [
        vec![1, 5, 8, 2, 42, 27, 7, 4],
        vec![1, 2, 5, 8, 4, 7, 27, 42],
        vec![1, 2, 5, 8, 4, 7, 27, 42],
        vec![1, 2, 4, 5, 7, 8, 27, 42],
    ];
    let trace = net.trace(&input).unwrap();
    let arrays_ok = trace.arrays == expected;
    let sorted = verify_exhaustive(&net).unwrap().is_sorted();
    outcome(arrays_ok && sorted, format!("arrays match: {arrays_ok}, 2^8 inputs sorted: {sorted}"), 1)
}

fn depth3_construction() -> Outcome {
    let mut bad = Vec::new();
    for n in 2..=20 {
        let net = build_depth3(n).unwrap();
        let last = net.layer(net.depth() - 1).arity();
        let ok = verify_exhaustive(&net).unwrap().is_sorted() && net.arity() == n.div_ceil(2) && last <= 2;
        if !ok {
            bad.push(n);
        }
    }
    let detail = if bad == [2] {
        "n in 3..=20 exact; n = 2 has arity 2 but ⌈2/2⌉ = 1 is not attainable by any sorting network".to_string()
    } else {
        format!("n in 2..=20, failures {bad:?}")
    };
    outcome(bad.is_empty(), detail, 120)
}

fn depth4_construction() -> Outcome {
    let mut bad = Vec::new();
    for n in 4..=18 {
        if !verify_exhaustive(&build_columnsort4(n).unwrap()).unwrap().is_sorted() {
            bad.push(n);
        }
    }
    let mut constants = Vec::new();
    for (i, n) in [100usize, 1000, 10_000].into_iter().enumerate() {
        let net = build_columnsort4(n).unwrap();
        if !verify_random(&net, 100_000, 1000 + i as u64).unwrap().is_sorted() {
            bad.push(n);
        }
        let c = net.arity() as f64 / (n as f64).powf(2.0 / 3.0);
        if n >= 1000 && c > 4.0 {
            bad.push(n);
        }
        constants.push(format!("n={n} arity={} c={c:.3}", net.arity()));
    }
    outcome(bad.is_empty(), format!("{}; failures {bad:?}", constants.join(", ")), 300)
}

const MINIMA: [(usize, usize, usize); 5] = [(3, 2, 3), (4, 2, 4), (4, 3, 2), (5, 3, 3), (6, 3, 3)];

fn searched_minima() -> Vec<(usize, usize, Option<usize>)> {
    let limits = SearchLimits::default();
    MINIMA
        .iter()
        .map(|&(n, d, _)| match minimal_arity(n, d, &limits).unwrap() {
            MinArity::Exact { k, .. } => (n, d, Some(k)),
            MinArity::Partial { .. } => (n, d, None),
        })
        .collect()
}

fn small_minima(found: &[(usize, usize, Option<usize>)]) -> Outcome {
    let pass = found.iter().zip(MINIMA).all(|(&(_, _, k), (_, _, want))| k == Some(want));
    let shown: Vec<String> = found.iter().map(|(n, d, k)| format!("({n},{d})={k:?}")).collect();
    outcome(pass, shown.join(" "), 600)
}

fn connectivity_consistency(found: &[(usize, usize, Option<usize>)]) -> Outcome {
    let pass = found.iter().all(|&(n, d, k)| k.is_some_and(|k| k >= connectivity_bound(n, d)));
    let shown: Vec<String> =
        found.iter().map(|&(n, d, k)| format!("({n},{d}) {k:?}>={}", connectivity_bound(n, d))).collect();
    outcome(pass, shown.join(" "), 1)
}

fn cubes_guarantee() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut violations = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(4..=200);
        let config = random_config(n, &mut rng);
        let m = config.half();
        let ok = match solve_cubes_detailed(&config) {
            Ok(sol) => {
                let run = replay_cubes(&config, &sol.plan).map(|r| r.best_run).unwrap_or(0);
                run >= n / 2 + 1 && sol.phase1_removed + 1 <= m / 2 && sol.final_residue <= m / 2 + 1
            }
            Err(_) => false,
        };
        if !ok {
            violations += 1;
        }
    }
    outcome(violations == 0, format!("1000 instances, {violations} violations"), 60)
}

fn depth3_pipeline() -> Outcome {
    let mut shown = Vec::new();
    let mut pass = true;
    for n in [8, 10, 12, 16] {
        let net = common::pairs_then_full(n);
        let input = vec![false; n];
        let bound = cube_config_from_network(&net, &input)
            .and_then(|mapped| cubes::solve_cubes(&mapped.config))
            .and_then(|plan| cubes::branch_from_plan(&net, &input, &plan))
            .and_then(|branch| certify_last_layer_arity(&net, &branch))
            .map(|c| c.certified_bound)
            .unwrap_or(0);
        pass &= bound >= n / 2 + 2;
        shown.push(format!("n={n} bound={bound}>={}", n / 2 + 2));
    }
    outcome(pass, shown.join(", "), 60)
}

fn second_cubes_at_scale() -> Outcome {
    let n = 10_000_000;
    let params = SolverParams { seed: 8, ..Default::default() };
    let (t, l) = params.resolve(n).unwrap();
    let config = uniform_config(n, t, params.seed).unwrap();
    let m = config.stacks();
    let selection = match select_substacks(&config, &params) {
        Ok(s) => s,
        Err(e) => return outcome(false, format!("selection failed: {e}"), 120),
    };
    let sol = solve_second_cubes(&config, &selection).unwrap();
    let r = &sol.report;
    let pass = meets_guarantee(r.run.best_run, m, l, t) && r.singleton_prefix <= t && r.monotone;
    outcome(
        pass,
        format!(
            "t={t} l={l} m={m} attempts={} best_run={} guarantee={:.0} prefix={}",
            selection.attempts,
            r.run.best_run,
            cubes2::guaranteed_run(m, l, t),
            r.singleton_prefix
        ),
        120,
    )
}

/// Cells of `array` that hold 0 on `x` and become 1 under some single flip.
fn accessible(net: &Network, x: &[bool], array: usize) -> Vec<bool> {
    let base = net.trace_bool(x).unwrap().arrays[array].clone();
    let mut acc = vec![false; x.len()];
    for i in (0..x.len()).filter(|&i| !x[i]) {
        let mut y = x.to_vec();
        y[i] = true;
        let arr = &net.trace_bool(&y).unwrap().arrays[array];
        for c in 0..x.len() {
            acc[c] |= !base[c] && arr[c];
        }
    }
    acc
}

fn access_stability() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut violations = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=12);
        let depth = rng.gen_range(1..=4);
        let max_block = rng.gen_range(1..=n);
        let net = common::random_network(n, depth, max_block, &mut rng);
        let x = common::random_bits(n, &mut rng);
        let zeros: Vec<usize> = (0..n).filter(|&i| !x[i]).collect();
        if zeros.is_empty() {
            continue;
        }
        let flip = zeros[rng.gen_range(0..zeros.len())];
        let mut y = x.clone();
        y[flip] = true;
        let tx = net.trace_bool(&x).unwrap();
        let ty = net.trace_bool(&y).unwrap();
        for a in 0..=depth {
            let monotone = tx.arrays[a].iter().zip(&ty.arrays[a]).all(|(&p, &q)| !p || q);
            let sx = accessible(&net, &x, a);
            let sy = accessible(&net, &y, a);
            let stable = (0..n).all(|c| !sx[c] || ty.arrays[a][c] || sy[c]);
            if !monotone || !stable {
                violations += 1;
            }
        }
    }
    outcome(violations == 0, format!("10000 trials, {violations} violations"), 60)
}

fn depth2_certification() -> Outcome {
    let mut shown = Vec::new();
    let mut pass = true;
    for n in [4, 6, 8] {
        let net = common::pairs_then_full_depth2(n);
        let bound = find_branch_depth2(&net)
            .and_then(|b| certify_last_layer_arity(&net, &b))
            .map(|c| c.certified_bound)
            .unwrap_or(0);
        pass &= bound == n;
        shown.push(format!("n={n} bound={bound}"));
    }
    outcome(pass, shown.join(", "), 1)
}

fn report(id: usize, name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = f();
    let elapsed = start.elapsed();
    let in_time = elapsed <= o.budget;
    let pass = o.pass && in_time;
    println!(
        "{} {id:>2} {name}: {} [{:.2}s, budget {}s]",
        if pass { "PASS" } else { "FAIL" },
        o.detail,
        elapsed.as_secs_f64(),
        o.budget.as_secs()
    );
    pass
}

/// Criteria that cannot hold as stated.
const KNOWN_RED: [usize; 1] = [2];

fn main() {
    let mut results = Vec::new();
    results.push(report(1, "figure-1 reproduction", figure1_reproduction));
    results.push(report(2, "depth-3 construction", depth3_construction));
    results.push(report(3, "depth-4 construction", depth4_construction));
    let mut found = Vec::new();
    results.push(report(4, "small-case minima", || {
        found = searched_minima();
        small_minima(&found)
    }));
    results.push(report(5, "connectivity bound", || connectivity_consistency(&found)));
    results.push(report(6, "cube solver guarantee", cubes_guarantee));
    results.push(report(7, "depth-3 certificate pipeline", depth3_pipeline));
    results.push(report(8, "second cubes at n = 10^7", second_cubes_at_scale));
    results.push(report(9, "access stability", access_stability));
    results.push(report(10, "depth-2 certification", depth2_certification));
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, &p)| !p).map(|(i, _)| i + 1).collect();
    assert_eq!(failed, KNOWN_RED, "failed criteria");
    // The only red criterion fails solely at n = 2, where arity 1 cannot sort.
    let n2 = build_depth3(2).unwrap();
    assert_eq!(n2.arity(), 2);
    assert!(verify_exhaustive(&n2).unwrap().is_sorted());
    assert!(!verify_exhaustive(&Network::identity(2).unwrap()).unwrap().is_sorted());
}
