use std::time::Duration;

use sortnet::access::connectivity_bound;
use sortnet::search::{
    count_sequences, exists_network, exists_network_with_stats, minimal_arity, partitions, MinArity,
    SearchLimits, SearchOutcome,
};
use sortnet::verify::verify_exhaustive;
use sortnet::Network;

/// Every layer sequence, checked one network at a time through the
/// verifier. Returns (sequences, sorting sequences).
fn brute_force(n: usize, d: usize, k: usize) -> (u64, u64) {
    let layers = partitions(n, k);
    let mut idx = vec![0usize; d];
    let (mut total, mut sorting) = (0, 0);
    loop {
        let net = Network::new(n, idx.iter().map(|&i| layers[i].clone()).collect()).unwrap();
        total += 1;
        if verify_exhaustive(&net).unwrap().is_sorted() {
            sorting += 1;
        }
        let mut pos = 0;
        loop {
            if pos == d {
                return (total, sorting);
            }
            idx[pos] += 1;
            if idx[pos] < layers.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[test]
fn partition_counts_match_bell_and_matchings() {
    let bell = [1, 1, 2, 5, 15, 52, 203];
    for (n, &b) in bell.iter().enumerate().skip(1) {
        assert_eq!(partitions(n, n).len(), b, "n = {n}");
    }
    // Partial matchings: 1, 2, 4, 10, 26, 76.
    let matchings = [1, 2, 4, 10, 26, 76];
    for (i, &m) in matchings.iter().enumerate() {
        assert_eq!(partitions(i + 1, 2).len(), m, "n = {}", i + 1);
    }
    assert_eq!(partitions(4, 1).len(), 1);
}

#[test]
fn sequence_counts() {
    assert_eq!(count_sequences(3, 2, 3).unwrap(), (25, 9));
    assert_eq!(count_sequences(3, 3, 3).unwrap(), (125, 67));
    assert_eq!(count_sequences(3, 2, 2).unwrap(), (16, 0));
}

#[test]
fn counts_agree_with_brute_force() {
    for (n, d, k) in [(3, 2, 3), (3, 3, 2), (4, 2, 3), (4, 3, 2), (3, 3, 3)] {
        assert_eq!(count_sequences(n, d, k).unwrap(), brute_force(n, d, k), "({n},{d},{k})");
    }
}

#[test]
fn canonical_search_agrees_with_brute_force() {
    let limits = SearchLimits::default();
    for n in 2..=4 {
        for d in 1..=3 {
            for k in 1..=n {
                if partitions(n, k).len().pow(d as u32) > 20_000 {
                    continue;
                }
                let expected = brute_force(n, d, k).1 > 0;
                let found = matches!(exists_network(n, d, k, &limits).unwrap(), SearchOutcome::Found(_));
                assert_eq!(found, expected, "({n},{d},{k})");
            }
        }
    }
}

#[test]
fn witnesses_sort() {
    let limits = SearchLimits::default();
    for (n, d, k) in [(4, 3, 2), (5, 3, 3), (6, 3, 3), (6, 4, 3), (3, 2, 3)] {
        match exists_network(n, d, k, &limits).unwrap() {
            SearchOutcome::Found(net) => {
                assert_eq!(net.depth(), d);
                assert!(net.arity() <= k);
                assert!(verify_exhaustive(&net).unwrap().is_sorted(), "({n},{d},{k})");
            }
            other => panic!("({n},{d},{k}): {other:?}"),
        }
    }
}

#[test]
fn known_minima() {
    let limits = SearchLimits::default();
    for (n, d, want) in [(2, 1, 2), (3, 2, 3), (4, 2, 4), (4, 3, 2), (5, 3, 3), (6, 3, 3), (6, 4, 3)] {
        match minimal_arity(n, d, &limits).unwrap() {
            MinArity::Exact { k, witness } => {
                assert_eq!(k, want, "({n},{d})");
                assert!(k >= connectivity_bound(n, d));
                assert!(verify_exhaustive(&witness).unwrap().is_sorted());
            }
            other => panic!("({n},{d}): {other:?}"),
        }
    }
}

#[test]
fn zero_timeout_is_indeterminate() {
    let limits = SearchLimits { timeout: Some(Duration::ZERO), ..Default::default() };
    let (outcome, stats) = exists_network_with_stats(6, 3, 2, &limits).unwrap();
    assert_eq!(outcome, SearchOutcome::Indeterminate);
    assert!(stats.nodes > 0);
    assert!(matches!(minimal_arity(6, 3, &limits).unwrap(), MinArity::Partial { .. }));
}

#[test]
fn oversized_instances_are_refused() {
    assert!(exists_network(9, 3, 3, &SearchLimits { max_n: 9, ..Default::default() }).is_err());
    assert!(exists_network(7, 3, 3, &SearchLimits::default()).is_err());
    assert!(exists_network(4, 0, 2, &SearchLimits::default()).is_err());
}
