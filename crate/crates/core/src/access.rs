//! Access sets, growing branches and last-layer arity certificates.
//!
//! A cell is *accessible* on a Boolean input `x` when it holds 0 on `x` and
//! some single 0→1 flip of an input bit turns it into 1. A growing branch of
//! length `k-1` on which every input has at least two accessible cells
//! before the last layer forces a last-layer comparator of arity `k` in any
//! sorting network.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::format::{content_lines, parse_keyed_usize, syntax};
use crate::network::{format_bits, parse_bits, Network};

/// A cell `c_{array, position}` of a network (both 0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellRef {
    pub array: usize,
    pub position: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AccessSet {
    pub input: Vec<bool>,
    pub array: usize,
    /// Accessible positions in `array`, ascending.
    pub cells: Vec<usize>,
}

impl AccessSet {
    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cell_refs(&self) -> impl Iterator<Item = CellRef> + '_ {
        self.cells.iter().map(|&position| CellRef { array: self.array, position })
    }
}

fn check_array(network: &Network, input: &[bool], array: usize) -> Result<()> {
    if input.len() != network.n() {
        return Err(Error::InputShape { expected: network.n(), actual: input.len() });
    }
    if array > network.depth() {
        return Err(Error::Domain(format!(
            "array index {array} exceeds depth {}",
            network.depth()
        )));
    }
    Ok(())
}

/// Access set by definition: re-evaluates the network once per 0-bit of the
/// input with that bit flipped.
pub fn access_set(network: &Network, input: &[bool], array: usize) -> Result<AccessSet> {
    check_array(network, input, array)?;
    let mut base = input.to_vec();
    for layer in &network.layers()[..array] {
        layer.apply_bool(&mut base);
    }
    let mut hit = vec![false; network.n()];
    let mut flipped = input.to_vec();
    for i in (0..input.len()).filter(|&i| !input[i]) {
        flipped.copy_from_slice(input);
        flipped[i] = true;
        for layer in &network.layers()[..array] {
            layer.apply_bool(&mut flipped);
        }
        for (b, h) in hit.iter_mut().enumerate() {
            if !base[b] && flipped[b] {
                *h = true;
            }
        }
    }
    let cells = (0..network.n()).filter(|&b| hit[b]).collect();
    Ok(AccessSet { input: input.to_vec(), array, cells })
}

/// Access sets of every array at once, by following each flip through the
/// network: a comparator that gains a 1 turns its highest 0-output into 1.
pub fn access_sets_by_propagation(network: &Network, input: &[bool]) -> Result<Vec<Vec<usize>>> {
    check_array(network, input, 0)?;
    let trace = network.trace_bool(input)?;
    // last_zero[a][c]: position of the highest 0-output of comparator c in layer a.
    let last_zero: Vec<Vec<Option<usize>>> = network
        .layers()
        .iter()
        .enumerate()
        .map(|(a, layer)| {
            layer
                .comparators()
                .iter()
                .map(|c| c.members().iter().rev().copied().find(|&i| !trace.arrays[a + 1][i]))
                .collect()
        })
        .collect();
    let mut sets = vec![BTreeSet::new(); network.depth() + 1];
    for i in (0..input.len()).filter(|&i| !input[i]) {
        let mut cell = i;
        sets[0].insert(cell);
        for (a, layer) in network.layers().iter().enumerate() {
            cell = last_zero[a][layer.owner(cell)]
                .expect("a comparator receiving a 0 emits a 0");
            sets[a + 1].insert(cell);
        }
    }
    Ok(sets.into_iter().map(|s| s.into_iter().collect()).collect())
}

/// A sequence of Boolean inputs, each obtained from the previous one by a
/// single 0→1 flip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowingBranch {
    inputs: Vec<Vec<bool>>,
}

impl GrowingBranch {
    pub fn inputs(&self) -> &[Vec<bool>] {
        &self.inputs
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn n(&self) -> usize {
        self.inputs[0].len()
    }

    /// Flipped positions, one per step.
    pub fn flips(&self) -> Vec<usize> {
        self.inputs
            .windows(2)
            .map(|w| (0..w[0].len()).find(|&i| w[0][i] != w[1][i]).unwrap())
            .collect()
    }

    pub fn from_flips(start: Vec<bool>, flips: &[usize]) -> Result<Self> {
        let mut inputs = vec![start];
        for (step, &f) in flips.iter().enumerate() {
            let mut next = inputs.last().unwrap().clone();
            if f >= next.len() {
                return Err(Error::InvalidBranch {
                    step: step + 1,
                    message: format!("flip position {} out of range", f + 1),
                });
            }
            next[f] = !next[f];
            inputs.push(next);
        }
        validate_branch(inputs)
    }
}

pub fn validate_branch(inputs: Vec<Vec<bool>>) -> Result<GrowingBranch> {
    let Some(first) = inputs.first() else {
        return Err(Error::InvalidBranch { step: 0, message: "branch is empty".into() });
    };
    let n = first.len();
    for (step, pair) in inputs.windows(2).enumerate() {
        let (prev, next) = (&pair[0], &pair[1]);
        if next.len() != n {
            return Err(Error::InvalidBranch {
                step: step + 1,
                message: format!("length {} differs from {n}", next.len()),
            });
        }
        let changed: Vec<usize> = (0..n).filter(|&i| prev[i] != next[i]).collect();
        if changed.len() != 1 {
            return Err(Error::InvalidBranch {
                step: step + 1,
                message: format!("{} bits changed, expected exactly one", changed.len()),
            });
        }
        if prev[changed[0]] {
            return Err(Error::InvalidBranch {
                step: step + 1,
                message: format!("bit {} changed from 1 to 0", changed[0] + 1),
            });
        }
    }
    Ok(GrowingBranch { inputs })
}

/// A growing branch together with the arity it forces on the last layer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArityCertificate {
    pub branch: GrowingBranch,
    pub certified_bound: usize,
    /// 1-based index of the bounded layer (the last one).
    pub layer: usize,
    /// When set, the certificate is about the network obtained by joining
    /// small first-layer comparators with this threshold.
    pub joined_first_layer: Option<usize>,
}

/// Checks that every input of `branch` has at least two accessible cells
/// before the last layer and returns the bound `branch.len() + 1`.
///
/// The network is assumed to sort. On a sorting network the union of the
/// access sets necessarily has at least `bound` cells, all feeding one
/// last-layer comparator; a violation is reported as [`Error::Internal`].
pub fn certify_last_layer_arity(network: &Network, branch: &GrowingBranch) -> Result<ArityCertificate> {
    if branch.n() != network.n() {
        return Err(Error::InputShape { expected: network.n(), actual: branch.n() });
    }
    let before_last = network.depth() - 1;
    let mut union = BTreeSet::new();
    for (index, input) in branch.inputs().iter().enumerate() {
        let set = access_set(network, input, before_last)?;
        if set.len() < 2 {
            return Err(Error::Precondition {
                index,
                message: format!(
                    "{} accessible cell(s) before the last layer, need at least 2",
                    set.len()
                ),
            });
        }
        union.extend(set.cells);
    }
    let bound = branch.len() + 1;
    if union.len() < bound {
        return Err(Error::Internal(format!(
            "accessible cells number {} < certified bound {bound}",
            union.len()
        )));
    }
    let last = network.layer(before_last);
    let owners: BTreeSet<usize> = union.iter().map(|&c| last.owner(c)).collect();
    if owners.len() != 1 {
        return Err(Error::Internal(format!(
            "accessible cells feed {} different last-layer comparators",
            owners.len()
        )));
    }
    Ok(ArityCertificate {
        branch: branch.clone(),
        certified_bound: bound,
        layer: network.depth(),
        joined_first_layer: None,
    })
}

/// Smallest `k` with `k^⌈d/2⌉ >= n/2`, in exact integer arithmetic.
pub fn connectivity_bound(n: usize, d: usize) -> usize {
    let h = d.div_ceil(2) as u32;
    let target = n as u128;
    let mut k = 1usize;
    // 2 * k^h >= n
    while (k as u128).checked_pow(h).is_some_and(|p| 2 * p < target) {
        k += 1;
    }
    k
}

/// Branch for depth-2 networks: keep one cell in each of two different
/// first-layer comparators at 0 and flip all other cells one by one.
pub fn find_branch_depth2(network: &Network) -> Result<GrowingBranch> {
    if network.depth() != 2 {
        return Err(Error::StrategyInapplicable(format!(
            "depth-2 strategy needs a depth-2 network, got depth {}",
            network.depth()
        )));
    }
    let first = network.layer(0);
    if first.comparators().len() < 2 {
        return Err(Error::StrategyInapplicable(
            "the first layer is a single comparator".into(),
        ));
    }
    let n = network.n();
    let keep_a = 0;
    let keep_b = (0..n).find(|&i| first.owner(i) != first.owner(keep_a)).unwrap();
    let flips: Vec<usize> = (0..n).filter(|&i| i != keep_a && i != keep_b).collect();
    GrowingBranch::from_flips(vec![false; n], &flips)
}

/// Heuristic branch for arbitrary networks: from all-zeros, flip the bit
/// that leaves the most accessible cells before the last layer, as long as
/// at least two remain. Carries no optimality guarantee.
pub fn greedy_branch(network: &Network) -> Result<GrowingBranch> {
    let n = network.n();
    let before_last = network.depth() - 1;
    let count = |x: &[bool]| -> Result<usize> {
        Ok(access_sets_by_propagation(network, x)?[before_last].len())
    };
    let mut current = vec![false; n];
    if count(&current)? < 2 {
        return Err(Error::StrategyInapplicable(
            "fewer than 2 accessible cells before the last layer on the all-zeros input".into(),
        ));
    }
    let mut inputs = vec![current.clone()];
    loop {
        let mut best: Option<(usize, usize)> = None;
        for i in 0..n {
            if current[i] {
                continue;
            }
            current[i] = true;
            let c = count(&current)?;
            current[i] = false;
            if best.is_none_or(|(_, bc)| c > bc) {
                best = Some((i, c));
            }
        }
        match best {
            Some((i, c)) if c >= 2 => {
                current[i] = true;
                inputs.push(current.clone());
            }
            _ => break,
        }
    }
    validate_branch(inputs)
}

pub const CERTIFICATE_HEADER: &str = "certificate v1";

/// Text form: header, `n`, `layer`, `bound`, optional `join`, the starting
/// input as a 0/1 string, then one `flip <position>` line per step.
pub fn certificate_to_text(cert: &ArityCertificate) -> String {
    let mut out = format!(
        "{CERTIFICATE_HEADER}\nn {}\nlayer {}\nbound {}\n",
        cert.branch.n(),
        cert.layer,
        cert.certified_bound
    );
    if let Some(t) = cert.joined_first_layer {
        out.push_str(&format!("join {t}\n"));
    }
    out.push_str(&format!("start {}\n", format_bits(&cert.branch.inputs()[0])));
    for f in cert.branch.flips() {
        out.push_str(&format!("flip {}\n", f + 1));
    }
    out
}

/// A parsed certificate, not yet checked against any network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateClaim {
    pub n: usize,
    pub layer: usize,
    pub bound: usize,
    pub join: Option<usize>,
    pub branch: GrowingBranch,
}

pub fn parse_certificate(text: &str) -> Result<CertificateClaim> {
    let mut lines = content_lines(text).peekable();
    let (lno, header) = lines.next().ok_or_else(|| syntax(1, 1, "empty certificate"))?;
    if header.trim() != CERTIFICATE_HEADER {
        return Err(syntax(lno, 1, format!("expected `{CERTIFICATE_HEADER}`")));
    }
    let mut next = |key: &str| -> Result<usize> {
        let (lno, line) = lines.next().ok_or_else(|| syntax(lno + 1, 1, format!("missing `{key}`")))?;
        parse_keyed_usize(lno, line, key)
    };
    let n = next("n")?;
    let layer = next("layer")?;
    let bound = next("bound")?;
    let mut join = None;
    if let Some((lno, line)) = lines.peek().copied() {
        if line.trim_start().starts_with("join") {
            join = Some(parse_keyed_usize(lno, line, "join")?);
            lines.next();
        }
    }
    let (lno, line) = lines.next().ok_or_else(|| syntax(1, 1, "missing `start`"))?;
    let bits = line
        .trim()
        .strip_prefix("start")
        .map(str::trim)
        .ok_or_else(|| syntax(lno, 1, "expected `start <bits>`"))?;
    let start = parse_bits(bits).map_err(|e| match e {
        Error::Syntax { column, message, .. } => syntax(lno, column, message),
        other => other,
    })?;
    if start.len() != n {
        return Err(syntax(lno, 1, format!("start has {} bits, expected {n}", start.len())));
    }
    let mut flips = Vec::new();
    for (lno, line) in lines {
        let pos = parse_keyed_usize(lno, line, "flip")?;
        if pos == 0 || pos > n {
            return Err(syntax(lno, 1, format!("flip position {pos} out of range 1..={n}")));
        }
        flips.push(pos - 1);
    }
    let branch = GrowingBranch::from_flips(start, &flips)?;
    Ok(CertificateClaim { n, layer, bound, join, branch })
}
