//! Exhaustive search for the smallest arity of a depth-`d` sorting network
//! on a handful of cells.
//!
//! The search state is the set of Boolean arrays reachable after a prefix
//! of layers, stored as a bitset over all `2^n` arrays. Failed states are
//! memoized with the number of layers that were left. Only one first layer
//! per multiset of block sizes is tried: a sorting network with first layer
//! `P` can be relabeled and untangled into one whose first layer is any
//! other partition of the same shape, with the same depth and arity.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::access::connectivity_bound;
use crate::error::{Error, Result};
use crate::network::Network;

/// Largest `n` the bitset state can hold.
pub const HARD_MAX_N: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_n: usize,
    /// Refuse instances with more candidate layers than this.
    pub max_partitions_per_layer: usize,
    pub timeout: Option<Duration>,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_n: 6, max_partitions_per_layer: 5000, timeout: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Network),
    NotFound,
    /// The timeout expired before the search finished.
    Indeterminate,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub memo_hits: u64,
    pub partitions_per_layer: usize,
    pub first_layer_shapes: usize,
}

/// Set partitions of `0..n` with every block of size at most `k`, in
/// restricted-growth order.
pub fn partitions(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, k: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == n {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            if blocks[b].len() < k {
                blocks[b].push(i);
                go(i + 1, n, k, blocks, out);
                blocks[b].pop();
            }
        }
        blocks.push(vec![i]);
        go(i + 1, n, k, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    if k > 0 {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// One partition per multiset of block sizes: contiguous blocks, largest
/// first.
fn shape_representatives(n: usize, k: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for size in (1..=max.min(left)).rev() {
            cur.push(size);
            go(left - size, size, cur, out);
            cur.pop();
        }
    }
    let mut shapes = Vec::new();
    go(n, k, &mut Vec::new(), &mut shapes);
    shapes
        .into_iter()
        .map(|sizes| {
            let mut at = 0;
            sizes
                .into_iter()
                .map(|s| {
                    let block = (at..at + s).collect();
                    at += s;
                    block
                })
                .collect()
        })
        .collect()
}

type State = [u64; 4];

struct CompiledLayer {
    blocks: Vec<Vec<usize>>,
    comparators: Vec<(u32, Vec<u32>)>,
}

impl CompiledLayer {
    fn new(blocks: Vec<Vec<usize>>) -> Self {
        let comparators = blocks
            .iter()
            .filter(|b| b.len() > 1)
            .map(|b| {
                let mask = b.iter().fold(0u32, |m, &i| m | 1 << i);
                let mut keep = vec![mask];
                let mut ones = mask;
                for &i in b {
                    ones &= !(1 << i);
                    keep.push(ones);
                }
                (mask, keep)
            })
            .collect();
        CompiledLayer { blocks, comparators }
    }

    fn apply(&self, mut x: u32) -> u32 {
        for (mask, keep) in &self.comparators {
            let zeros = (mask & !x).count_ones() as usize;
            x = (x & !mask) | keep[zeros];
        }
        x
    }

    fn apply_state(&self, state: &State) -> State {
        let mut next = [0u64; 4];
        for (w, &word) in state.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros();
                bits &= bits - 1;
                let y = self.apply(w as u32 * 64 + b) as usize;
                next[y / 64] |= 1 << (y % 64);
            }
        }
        next
    }
}

fn full_state(n: usize) -> State {
    let mut s = [0u64; 4];
    for x in 0..(1usize << n) {
        s[x / 64] |= 1 << (x % 64);
    }
    s
}

fn sorted_state(n: usize) -> State {
    let mut s = [0u64; 4];
    let full = (1usize << n) - 1;
    for z in 0..=n {
        let x = full & !((1usize << z) - 1);
        s[x / 64] |= 1 << (x % 64);
    }
    s
}

fn subset(a: &State, b: &State) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

struct Searcher<'a> {
    layers: &'a [CompiledLayer],
    sorted: State,
    /// Largest number of remaining layers known to fail from a state.
    failed: HashMap<State, usize>,
    deadline: Option<Instant>,
    expired: &'a AtomicBool,
    nodes: u64,
    memo_hits: u64,
}

impl Searcher<'_> {
    /// Indices of layers that sort every array of `state`, or `None`.
    fn solve(&mut self, state: &State, remaining: usize) -> Option<Vec<usize>> {
        if subset(state, &self.sorted) {
            return Some(Vec::new());
        }
        if remaining == 0 {
            return None;
        }
        if self.failed.get(state).is_some_and(|&r| r >= remaining) {
            self.memo_hits += 1;
            return None;
        }
        self.nodes += 1;
        if self.nodes % 1024 == 1 {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    self.expired.store(true, Ordering::Relaxed);
                }
            }
        }
        if self.expired.load(Ordering::Relaxed) {
            return None;
        }
        for (i, layer) in self.layers.iter().enumerate() {
            let next = layer.apply_state(state);
            if next == *state {
                continue;
            }
            if let Some(mut rest) = self.solve(&next, remaining - 1) {
                rest.insert(0, i);
                return Some(rest);
            }
        }
        if !self.expired.load(Ordering::Relaxed) {
            let entry = self.failed.entry(*state).or_insert(0);
            *entry = (*entry).max(remaining);
        }
        None
    }
}

fn check_instance(n: usize, d: usize, k: usize, limits: &SearchLimits) -> Result<()> {
    if n == 0 || n > limits.max_n.min(HARD_MAX_N) {
        return Err(Error::Capacity { n, cap: limits.max_n.min(HARD_MAX_N) });
    }
    if d == 0 || k == 0 {
        return Err(Error::Domain("depth and arity must be positive".into()));
    }
    Ok(())
}

pub fn exists_network(n: usize, d: usize, k: usize, limits: &SearchLimits) -> Result<SearchOutcome> {
    Ok(exists_network_with_stats(n, d, k, limits)?.0)
}

pub fn exists_network_with_stats(
    n: usize,
    d: usize,
    k: usize,
    limits: &SearchLimits,
) -> Result<(SearchOutcome, SearchStats)> {
    check_instance(n, d, k, limits)?;
    let k = k.min(n);
    let all = partitions(n, k);
    if all.len() > limits.max_partitions_per_layer {
        return Err(Error::Domain(format!(
            "{} candidate layers exceed the limit of {}",
            all.len(),
            limits.max_partitions_per_layer
        )));
    }
    let layers: Vec<CompiledLayer> = all.into_iter().map(CompiledLayer::new).collect();
    let firsts: Vec<CompiledLayer> = shape_representatives(n, k).into_iter().map(CompiledLayer::new).collect();
    let deadline = limits.timeout.map(|t| Instant::now() + t);
    let expired = AtomicBool::new(false);
    let nodes = AtomicU64::new(0);
    let memo_hits = AtomicU64::new(0);
    let start = full_state(n);
    let sorted = sorted_state(n);
    let found = firsts.par_iter().find_map_first(|first| {
        let mut searcher = Searcher {
            layers: &layers,
            sorted,
            failed: HashMap::new(),
            deadline,
            expired: &expired,
            nodes: 0,
            memo_hits: 0,
        };
        let result = searcher.solve(&first.apply_state(&start), d - 1);
        nodes.fetch_add(searcher.nodes + 1, Ordering::Relaxed);
        memo_hits.fetch_add(searcher.memo_hits, Ordering::Relaxed);
        result.map(|rest| {
            let mut blocks = vec![first.blocks.clone()];
            blocks.extend(rest.into_iter().map(|i| layers[i].blocks.clone()));
            while blocks.len() < d {
                blocks.push((0..n).map(|i| vec![i]).collect());
            }
            blocks
        })
    });
    let stats = SearchStats {
        nodes: nodes.load(Ordering::Relaxed),
        memo_hits: memo_hits.load(Ordering::Relaxed),
        partitions_per_layer: layers.len(),
        first_layer_shapes: firsts.len(),
    };
    let outcome = match found {
        Some(blocks) => SearchOutcome::Found(Network::new(n, blocks)?),
        None if expired.load(Ordering::Relaxed) => SearchOutcome::Indeterminate,
        None => SearchOutcome::NotFound,
    };
    Ok((outcome, stats))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinArity {
    Exact { k: usize, witness: Network },
    /// Every arity below `low` is excluded; `high` is the smallest arity with
    /// a known network (`n` if none was found).
    Partial { low: usize, high: usize },
}

/// Ascends from the connectivity bound to the first arity admitting a
/// depth-`d` sorting network.
pub fn minimal_arity(n: usize, d: usize, limits: &SearchLimits) -> Result<MinArity> {
    check_instance(n, d, 1, limits)?;
    for k in connectivity_bound(n, d).max(1)..=n {
        match exists_network(n, d, k, limits)? {
            SearchOutcome::Found(witness) => return Ok(MinArity::Exact { k, witness }),
            SearchOutcome::NotFound => {}
            SearchOutcome::Indeterminate => return Ok(MinArity::Partial { low: k, high: n }),
        }
    }
    Err(Error::Internal(format!("no depth-{d} network of arity {n} sorts {n} cells")))
}

/// Enumerates every sequence of `d` layers with blocks of size at most `k`,
/// without symmetry reduction or memoization. Returns the number of
/// sequences and how many of them sort.
pub fn count_sequences(n: usize, d: usize, k: usize) -> Result<(u64, u64)> {
    check_instance(n, d, k, &SearchLimits { max_n: HARD_MAX_N, ..Default::default() })?;
    let layers: Vec<CompiledLayer> = partitions(n, k).into_iter().map(CompiledLayer::new).collect();
    let sorted = sorted_state(n);
    fn go(layers: &[CompiledLayer], sorted: &State, state: State, left: usize, counts: &mut (u64, u64)) {
        if left == 0 {
            counts.0 += 1;
            if subset(&state, sorted) {
                counts.1 += 1;
            }
            return;
        }
        for layer in layers {
            go(layers, sorted, layer.apply_state(&state), left - 1, counts);
        }
    }
    let mut counts = (0, 0);
    go(&layers, &sorted, full_state(n), d, &mut counts);
    Ok(counts)
}
