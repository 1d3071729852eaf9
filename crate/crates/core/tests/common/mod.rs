#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use sortnet::Network;

/// Random partition of `0..n` into blocks of size at most `max_block`.
pub fn random_partition<R: Rng>(n: usize, max_block: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let mut cells: Vec<usize> = (0..n).collect();
    cells.shuffle(rng);
    let mut blocks = Vec::new();
    let mut rest = &cells[..];
    while !rest.is_empty() {
        let k = rng.gen_range(1..=max_block.min(rest.len()));
        let (head, tail) = rest.split_at(k);
        blocks.push(head.to_vec());
        rest = tail;
    }
    blocks
}

pub fn random_network<R: Rng>(n: usize, depth: usize, max_block: usize, rng: &mut R) -> Network {
    let layers = (0..depth).map(|_| random_partition(n, max_block, rng)).collect();
    Network::new(n, layers).unwrap()
}

pub fn random_bits<R: Rng>(n: usize, rng: &mut R) -> Vec<bool> {
    (0..n).map(|_| rng.gen()).collect()
}

/// Layer 1 pairs {1,2},{3,4},..., layer 2 pairs {2,3},...,{n,1}, layer 3 one
/// comparator of all cells. `n` must be even.
pub fn pairs_then_full(n: usize) -> Network {
    let first: Vec<Vec<usize>> = (0..n / 2).map(|i| vec![2 * i, 2 * i + 1]).collect();
    let second: Vec<Vec<usize>> = (0..n / 2).map(|i| vec![2 * i + 1, (2 * i + 2) % n]).collect();
    Network::new(n, vec![first, second, vec![(0..n).collect()]]).unwrap()
}

/// Layer 1 pairs, layer 2 one comparator of all cells.
pub fn pairs_then_full_depth2(n: usize) -> Network {
    let first: Vec<Vec<usize>> = (0..n / 2).map(|i| vec![2 * i, 2 * i + 1]).collect();
    Network::new(n, vec![first, vec![(0..n).collect()]]).unwrap()
}
