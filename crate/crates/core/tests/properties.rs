mod common;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sortnet::access::{access_set, access_sets_by_propagation};
use sortnet::constructions::{build_columnsort4, build_depth3};
use sortnet::verify::{bits_of, verify_exhaustive, verify_permutations};
use sortnet::Network;

fn network_strategy(max_n: usize, max_depth: usize) -> impl Strategy<Value = (Network, u64)> {
    (2..=max_n, 1..=max_depth, any::<u64>()).prop_map(|(n, depth, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let block = rng.gen_range(1..=n);
        (common::random_network(n, depth, block, &mut rng), seed)
    })
}

fn bits_strategy() -> impl Strategy<Value = (Network, Vec<bool>, usize)> {
    network_strategy(12, 4).prop_flat_map(|(net, _)| {
        let n = net.n();
        (Just(net), prop::collection::vec(any::<bool>(), n), 0..n)
    })
}

fn sorted_copy(v: &[i64]) -> Vec<i64> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

proptest! {
    #[test]
    fn every_array_is_a_permutation_of_the_input(
        (net, seed) in network_strategy(16, 5),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let input: Vec<i64> = (0..net.n()).map(|_| rng.gen_range(-50..50)).collect();
        let trace = net.trace(&input).unwrap();
        for array in &trace.arrays {
            prop_assert_eq!(sorted_copy(array), sorted_copy(&input));
        }
    }

    #[test]
    fn boolean_and_integer_evaluation_agree((net, x, _) in bits_strategy()) {
        let ints: Vec<i64> = x.iter().map(|&b| b as i64).collect();
        let from_ints: Vec<bool> = net.evaluate(&ints).unwrap().into_iter().map(|v| v == 1).collect();
        prop_assert_eq!(from_ints, net.evaluate_bool(&x).unwrap());
    }

    #[test]
    fn one_bit_flip_moves_one_cell_per_array((net, x, i) in bits_strategy()) {
        prop_assume!(!x[i]);
        let mut y = x.clone();
        y[i] = true;
        let tx = net.trace_bool(&x).unwrap();
        let ty = net.trace_bool(&y).unwrap();
        for (a, b) in tx.arrays.iter().zip(&ty.arrays) {
            let rose = a.iter().zip(b).filter(|(&p, &q)| !p && q).count();
            let fell = a.iter().zip(b).filter(|(&p, &q)| p && !q).count();
            prop_assert_eq!((rose, fell), (1, 0));
        }
    }

    #[test]
    fn propagation_matches_definition((net, x, _) in bits_strategy()) {
        let by_propagation = access_sets_by_propagation(&net, &x).unwrap();
        for (a, cells) in by_propagation.iter().enumerate() {
            prop_assert_eq!(cells, &access_set(&net, &x, a).unwrap().cells);
        }
    }

    #[test]
    fn access_survives_a_flip((net, x, i) in bits_strategy()) {
        prop_assume!(!x[i]);
        let mut y = x.clone();
        y[i] = true;
        let ty = net.trace_bool(&y).unwrap();
        for a in 0..=net.depth() {
            let before = access_set(&net, &x, a).unwrap();
            let after = access_set(&net, &y, a).unwrap();
            for c in before.cells {
                prop_assert!(ty.arrays[a][c] || after.cells.contains(&c), "array {} cell {}", a, c);
            }
        }
    }

    #[test]
    fn exhaustive_and_permutation_checks_agree((net, _) in network_strategy(6, 4)) {
        prop_assert_eq!(verify_exhaustive(&net).unwrap().is_sorted(), verify_permutations(&net).unwrap());
    }
}

#[test]
fn evaluation_is_monotone() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..2000 {
        let n = rng.gen_range(2..=10);
        let depth = rng.gen_range(1..=4);
        let block = rng.gen_range(1..=n);
        let net = common::random_network(n, depth, block, &mut rng);
        let x = common::random_bits(n, &mut rng);
        let y: Vec<bool> = x.iter().map(|&b| b || rng.gen_bool(0.3)).collect();
        let ox = net.evaluate_bool(&x).unwrap();
        let oy = net.evaluate_bool(&y).unwrap();
        assert!(ox.iter().zip(&oy).all(|(&p, &q)| !p || q));
    }
}

#[test]
fn checkerboard_zero_counts_after_rows() {
    for n in (2..=16).step_by(2) {
        let net = build_depth3(n).unwrap();
        for x in 0..1u64 << n {
            let after_rows = &net.trace_bool(&bits_of(x, n)).unwrap().arrays[1];
            let (mut t0, mut t1) = (0i64, 0i64);
            for (p, &v) in after_rows.iter().enumerate() {
                if !v {
                    let (i, j) = (p / 2, p % 2);
                    if (i + j) % 2 == 0 {
                        t0 += 1;
                    } else {
                        t1 += 1;
                    }
                }
            }
            assert!((t0 - t1).abs() <= 1, "n = {n}, x = {x:b}");
        }
    }
}

#[test]
fn constructions_sort_integer_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in [7, 12, 30, 64, 101] {
        for net in [build_depth3(n).unwrap(), build_columnsort4(n).unwrap()] {
            for _ in 0..200 {
                let input: Vec<i64> = (0..n).map(|_| rng.gen_range(-1000..1000)).collect();
                assert_eq!(net.evaluate(&input).unwrap(), sorted_copy(&input));
            }
        }
    }
}
