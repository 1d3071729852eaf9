//! Zero-one verification, exhaustive and randomized.
//!
//! Boolean input number `x` (in `0..2^n`) sets cell `i` to bit `i` of `x`.
//! Exhaustive search returns the counterexample with the smallest number,
//! regardless of how the range was split between worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::network::{is_sorted, Network};

pub const DEFAULT_EXHAUSTIVE_CAP: usize = 24;

/// Identity of the generator behind [`verify_random`].
pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.3), stream = chunk index, 1024 trials per chunk";

const RANDOM_CHUNK: u64 = 1024;
const EXHAUSTIVE_CHUNK: u64 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sorted,
    Counterexample,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub verdict: Verdict,
    /// Present iff the verdict is [`Verdict::Counterexample`].
    pub witness: Option<Vec<bool>>,
    pub trials: u64,
    pub seed: Option<u64>,
    pub rng: Option<&'static str>,
}

impl VerifyReport {
    pub fn is_sorted(&self) -> bool {
        self.verdict == Verdict::Sorted
    }
}

/// A network compiled to bitmask operations on inputs of at most 64 cells.
pub struct MaskNetwork {
    n: usize,
    layers: Vec<Vec<MaskComparator>>,
}

struct MaskComparator {
    mask: u64,
    /// `keep_ones[z]`: the members that hold 1 when `z` of the inputs are 0.
    keep_ones: Vec<u64>,
}

impl MaskNetwork {
    pub fn compile(network: &Network) -> Result<Self> {
        if network.n() > 64 {
            return Err(Error::Domain(format!(
                "bitmask evaluation supports at most 64 cells, got {}",
                network.n()
            )));
        }
        let layers = network
            .layers()
            .iter()
            .map(|layer| {
                layer
                    .comparators()
                    .iter()
                    .filter(|c| c.arity() > 1)
                    .map(|c| {
                        let mask = c.members().iter().fold(0u64, |m, &i| m | 1 << i);
                        let mut keep_ones = Vec::with_capacity(c.arity() + 1);
                        let mut ones = mask;
                        keep_ones.push(ones);
                        for &i in c.members() {
                            ones &= !(1 << i);
                            keep_ones.push(ones);
                        }
                        MaskComparator { mask, keep_ones }
                    })
                    .collect()
            })
            .collect();
        Ok(MaskNetwork { n: network.n(), layers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn evaluate(&self, mut x: u64) -> u64 {
        for layer in &self.layers {
            for c in layer {
                let zeros = (c.mask & !x).count_ones() as usize;
                x = (x & !c.mask) | c.keep_ones[zeros];
            }
        }
        x
    }

    /// True when `out` reads 0…01…1 from cell 1 to cell n.
    pub fn is_sorted_output(&self, out: u64) -> bool {
        let ones = out.count_ones() as usize;
        let zeros = self.n - ones;
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let expected = if zeros == 64 { 0 } else { full & !((1u64 << zeros) - 1) };
        out == expected
    }
}

pub fn bits_of(x: u64, n: usize) -> Vec<bool> {
    (0..n).map(|i| x >> i & 1 == 1).collect()
}

pub fn verify_exhaustive(network: &Network) -> Result<VerifyReport> {
    verify_exhaustive_with_cap(network, DEFAULT_EXHAUSTIVE_CAP)
}

pub fn verify_exhaustive_with_cap(network: &Network, cap: usize) -> Result<VerifyReport> {
    let n = network.n();
    if n > cap || n > 63 {
        return Err(Error::Capacity { n, cap: cap.min(63) });
    }
    let compiled = MaskNetwork::compile(network)?;
    let total = 1u64 << n;
    let chunks = total.div_ceil(EXHAUSTIVE_CHUNK);
    let first_bad = (0..chunks).into_par_iter().find_map_first(|chunk| {
        let lo = chunk * EXHAUSTIVE_CHUNK;
        let hi = (lo + EXHAUSTIVE_CHUNK).min(total);
        (lo..hi).find(|&x| !compiled.is_sorted_output(compiled.evaluate(x)))
    });
    Ok(match first_bad {
        None => VerifyReport {
            verdict: Verdict::Sorted,
            witness: None,
            trials: total,
            seed: None,
            rng: None,
        },
        Some(x) => VerifyReport {
            verdict: Verdict::Counterexample,
            witness: Some(bits_of(x, n)),
            trials: x + 1,
            seed: None,
            rng: None,
        },
    })
}

/// Checks `trials` uniformly random Boolean inputs. Trial `j` belongs to chunk
/// `j / 1024`, and each chunk draws from its own ChaCha stream, so the report
/// does not depend on the number of worker threads.
pub fn verify_random(network: &Network, trials: u64, seed: u64) -> Result<VerifyReport> {
    if trials == 0 {
        return Err(Error::Domain("at least one trial is required".into()));
    }
    let n = network.n();
    let chunks = trials.div_ceil(RANDOM_CHUNK);
    let first_bad = (0..chunks).into_par_iter().find_map_first(|chunk| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(chunk);
        let count = RANDOM_CHUNK.min(trials - chunk * RANDOM_CHUNK);
        let mut input = vec![false; n];
        let mut values = vec![false; n];
        for j in 0..count {
            input.iter_mut().for_each(|b| *b = rng.gen());
            values.copy_from_slice(&input);
            for layer in network.layers() {
                layer.apply_bool(&mut values);
            }
            if !is_sorted(&values) {
                return Some((chunk * RANDOM_CHUNK + j, input.clone()));
            }
        }
        None
    });
    Ok(match first_bad {
        None => VerifyReport {
            verdict: Verdict::Sorted,
            witness: None,
            trials,
            seed: Some(seed),
            rng: Some(RNG_ALGORITHM),
        },
        Some((index, input)) => VerifyReport {
            verdict: Verdict::Counterexample,
            witness: Some(input),
            trials: index + 1,
            seed: Some(seed),
            rng: Some(RNG_ALGORITHM),
        },
    })
}

/// Integer-mode check over every permutation of `0..n`.
pub fn verify_permutations(network: &Network) -> Result<bool> {
    let n = network.n();
    if n > 10 {
        return Err(Error::Capacity { n, cap: 10 });
    }
    let mut perm: Vec<i64> = (0..n as i64).collect();
    loop {
        if !is_sorted(&network.evaluate(&perm)?) {
            return Ok(false);
        }
        if !next_permutation(&mut perm) {
            return Ok(true);
        }
    }
}

fn next_permutation(v: &mut [i64]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
