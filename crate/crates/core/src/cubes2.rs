//! The depth-4 second cube game.
//!
//! Left cubes are the 0-outputs of first-layer comparators, labeled by the
//! second-layer comparator they feed. Right cubes are the 0-outputs of
//! second-layer comparators, colored by the third-layer comparator they
//! feed; right stack `i` belongs to label `i`. Removing a left cube with
//! label `i` also removes the top of right stack `i`. A top left cube with
//! label `i` gives access to the top color of right stack `i`, and the goal
//! is a long run of states with access to at least two colors.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::access::{validate_branch, GrowingBranch};
use crate::cubes::{parse_numbers, Color, StepReport};
use crate::error::{Error, Result};
use crate::format::{content_lines, parse_keyed_usize, syntax};
use crate::network::Network;

pub type Label = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverParams {
    /// `D` in `t = ⌊n^{2/3}/D⌋`.
    pub t_divisor: u64,
    /// Window length; `⌊n^{1/3}⌋` when unset.
    pub substack_length: Option<usize>,
    pub retry_budget: usize,
    pub seed: u64,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams { t_divisor: 100, substack_length: None, retry_budget: 1000, seed: 0 }
    }
}

/// `⌊n^{1/3}⌋`.
pub fn icbrt(n: usize) -> usize {
    let n = n as u128;
    let mut x = (n as f64).cbrt() as u128;
    while x * x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x as usize
}

impl SolverParams {
    /// `⌊n^{2/3}/D⌋`, the largest `t` with `(tD)^3 <= n^2`.
    pub fn t(&self, n: usize) -> usize {
        let target = (n as u128) * (n as u128);
        let d = self.t_divisor.max(1) as u128;
        let fits = |t: u128| (t * d).pow(3) <= target;
        let mut t = ((n as f64).powf(2.0 / 3.0) / d as f64) as u128;
        while t > 0 && !fits(t) {
            t -= 1;
        }
        while fits(t + 1) {
            t += 1;
        }
        t as usize
    }

    pub fn l(&self, n: usize) -> usize {
        self.substack_length.unwrap_or_else(|| icbrt(n))
    }

    /// `(t, l)` for `n` cubes, checking `1 <= l <= t`.
    pub fn resolve(&self, n: usize) -> Result<(usize, usize)> {
        let (t, l) = (self.t(n), self.l(n));
        if t == 0 {
            return Err(Error::Domain(format!("t = 0 for n = {n} and D = {}", self.t_divisor)));
        }
        if l == 0 || l > t {
            return Err(Error::Domain(format!("window length l = {l} must lie in [1, t = {t}]")));
        }
        Ok((t, l))
    }
}

/// Left stacks of labels and right stacks of colors, bottom to top.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoSidedConfig {
    pub left: Vec<Vec<Label>>,
    pub right: Vec<Vec<Color>>,
}

impl TwoSidedConfig {
    pub fn total(&self) -> usize {
        self.left.iter().map(Vec::len).sum()
    }

    pub fn stacks(&self) -> usize {
        self.left.len()
    }

    pub fn labels(&self) -> usize {
        self.right.len()
    }

    fn label_counts(&self) -> Result<Vec<usize>> {
        let mut counts = vec![0; self.labels()];
        for &label in self.left.iter().flatten() {
            let slot = counts.get_mut(label as usize).ok_or_else(|| {
                Error::InvalidConfig(format!("label {label} has no right stack ({} labels)", self.labels()))
            })?;
            *slot += 1;
        }
        Ok(counts)
    }

    /// Right stack `i` must hold as many cubes as there are left cubes
    /// labeled `i`.
    pub fn check_coupling(&self) -> Result<()> {
        for (i, count) in self.label_counts()?.into_iter().enumerate() {
            if count != self.right[i].len() {
                return Err(Error::InvalidConfig(format!(
                    "label {i} appears {count} times but right stack {i} has {} cubes",
                    self.right[i].len()
                )));
            }
        }
        Ok(())
    }

    /// Coupling plus the size bounds: left stacks in `[t, 3t]`, right stacks
    /// and color classes at most `t`.
    pub fn validate(&self, t: usize) -> Result<()> {
        self.check_coupling()?;
        if let Some((j, s)) = self.left.iter().enumerate().find(|(_, s)| s.len() < t || s.len() > 3 * t) {
            return Err(Error::InvalidConfig(format!(
                "left stack {} has {} cubes, outside [{t}, {}]",
                j + 1,
                s.len(),
                3 * t
            )));
        }
        if let Some((i, s)) = self.right.iter().enumerate().find(|(_, s)| s.len() > t) {
            return Err(Error::InvalidConfig(format!("right stack {i} has {} cubes, more than {t}", s.len())));
        }
        let mut colors = std::collections::HashMap::new();
        for &c in self.right.iter().flatten() {
            *colors.entry(c).or_insert(0usize) += 1;
        }
        if let Some((c, k)) = colors.into_iter().filter(|&(_, k)| k > t).min() {
            return Err(Error::InvalidConfig(format!("color {c} has {k} cubes, more than {t}")));
        }
        Ok(())
    }
}

/// Uniform synthetic instance with `n` cubes per side: `⌈n/(2t)⌉` left
/// stacks of near-equal size, `⌈n/t⌉` labels and colors with near-equal
/// counts, both shuffled.
pub fn uniform_config(n: usize, t: usize, seed: u64) -> Result<TwoSidedConfig> {
    if t == 0 || n < t {
        return Err(Error::Domain(format!("uniform config needs n >= t >= 1, got n = {n}, t = {t}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spread = |total: usize, parts: usize| -> Vec<usize> {
        (0..parts).map(|j| total / parts + usize::from(j < total % parts)).collect()
    };
    let m = n.div_ceil(2 * t);
    let a = n.div_ceil(t);
    let label_counts = spread(n, a);
    let mut labels: Vec<Label> = Vec::with_capacity(n);
    for (i, &k) in label_counts.iter().enumerate() {
        labels.extend(std::iter::repeat_n(i as Label, k));
    }
    labels.shuffle(&mut rng);
    let mut left = Vec::with_capacity(m);
    let mut rest = &labels[..];
    for k in spread(n, m) {
        let (head, tail) = rest.split_at(k);
        left.push(head.to_vec());
        rest = tail;
    }
    let mut colors: Vec<Color> = Vec::with_capacity(n);
    for (c, k) in spread(n, a).into_iter().enumerate() {
        colors.extend(std::iter::repeat_n(c as Color, k));
    }
    colors.shuffle(&mut rng);
    let mut right = Vec::with_capacity(a);
    let mut rest = &colors[..];
    for k in label_counts {
        let (head, tail) = rest.split_at(k);
        right.push(head.to_vec());
        rest = tail;
    }
    let config = TwoSidedConfig { left, right };
    config.validate(t)?;
    Ok(config)
}

/// One window of `length` consecutive cubes per left stack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstackSelection {
    /// 0-based offset of each window's bottom cube.
    pub starts: Vec<usize>,
    pub length: usize,
    /// Attempts drawn until this selection was accepted.
    pub attempts: usize,
    /// Largest number of windows holding one label.
    pub max_spread: usize,
    /// Whether every label sits in fewer than `m/10` windows.
    pub meets_tenth: bool,
}

impl SubstackSelection {
    fn check(&self, config: &TwoSidedConfig) -> Result<()> {
        if self.starts.len() != config.stacks() {
            return Err(Error::InvalidConfig(format!(
                "selection has {} windows for {} left stacks",
                self.starts.len(),
                config.stacks()
            )));
        }
        if self.length == 0 {
            return Err(Error::InvalidConfig("windows must hold at least one cube".into()));
        }
        for (j, (&s, stack)) in self.starts.iter().zip(&config.left).enumerate() {
            if s + self.length > stack.len() {
                return Err(Error::InvalidConfig(format!(
                    "window {} at offset {s} of length {} overruns a stack of {} cubes",
                    j + 1,
                    self.length,
                    stack.len()
                )));
            }
        }
        Ok(())
    }
}

/// Number of windows containing each label.
pub fn label_spread(config: &TwoSidedConfig, starts: &[usize], length: usize) -> Vec<usize> {
    let mut spread = vec![0usize; config.labels()];
    let mut last_seen = vec![usize::MAX; config.labels()];
    for (j, (&s, stack)) in starts.iter().zip(&config.left).enumerate() {
        for &label in &stack[s..s + length] {
            let label = label as usize;
            if last_seen[label] != j {
                last_seen[label] = j;
                spread[label] += 1;
            }
        }
    }
    spread
}

/// Draws uniform windows until every label lies in fewer than `m/4` of
/// them. Attempt `k` draws from ChaCha stream `k` of the seed.
pub fn select_substacks(config: &TwoSidedConfig, params: &SolverParams) -> Result<SubstackSelection> {
    let (_, l) = params.resolve(config.total())?;
    config.check_coupling()?;
    let m = config.stacks();
    let shortest = config.left.iter().map(Vec::len).min().unwrap_or(0);
    if m == 0 || l > shortest {
        return Err(Error::Domain(format!(
            "window length {l} exceeds the shortest left stack ({shortest} cubes)"
        )));
    }
    let draw = |attempt: usize| {
        let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
        rng.set_stream(attempt as u64);
        let starts: Vec<usize> = config
            .left
            .iter()
            .map(|s| rand::Rng::gen_range(&mut rng, 0..=s.len() - l))
            .collect();
        let spread = label_spread(config, &starts, l);
        let (label, worst) = spread
            .iter()
            .copied()
            .enumerate()
            .max_by_key(|&(i, k)| (k, std::cmp::Reverse(i)))
            .unwrap_or((0, 0));
        (starts, label, worst)
    };
    let found = (0..params.retry_budget).into_par_iter().find_map_first(|attempt| {
        let (starts, _, worst) = draw(attempt);
        (4 * worst < m).then(|| SubstackSelection {
            starts,
            length: l,
            attempts: attempt + 1,
            max_spread: worst,
            meets_tenth: 10 * worst < m,
        })
    });
    found.ok_or_else(|| {
        let (label, spread) = (0..params.retry_budget)
            .map(|a| {
                let (_, label, worst) = draw(a);
                (label, worst)
            })
            .max_by_key(|&(label, worst)| (worst, std::cmp::Reverse(label)))
            .unwrap_or((0, 0));
        Error::SelectionFailed { attempts: params.retry_budget, label, spread, stacks: m }
    })
}

/// Game state with the accessible color set maintained incrementally.
struct State<'a> {
    config: &'a TwoSidedConfig,
    heights: Vec<usize>,
    right_heights: Vec<usize>,
    tops_with_label: Vec<u32>,
    grant: Vec<u32>,
    active: usize,
}

impl<'a> State<'a> {
    fn new(config: &'a TwoSidedConfig) -> Self {
        let colors = config.right.iter().flatten().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut state = State {
            config,
            heights: config.left.iter().map(Vec::len).collect(),
            right_heights: config.right.iter().map(Vec::len).collect(),
            tops_with_label: vec![0; config.labels()],
            grant: vec![0; colors],
            active: 0,
        };
        for stack in &config.left {
            if let Some(&top) = stack.last() {
                state.tops_with_label[top as usize] += 1;
            }
        }
        for label in 0..config.labels() {
            state.add(label);
        }
        state
    }

    /// The color label `i` gives access to, if any.
    fn granted(&self, label: usize) -> Option<Color> {
        let h = self.right_heights[label];
        (self.tops_with_label[label] > 0 && h > 0).then(|| self.config.right[label][h - 1])
    }

    fn add(&mut self, label: usize) {
        if let Some(c) = self.granted(label) {
            self.grant[c as usize] += 1;
            if self.grant[c as usize] == 1 {
                self.active += 1;
            }
        }
    }

    fn remove(&mut self, label: usize) {
        if let Some(c) = self.granted(label) {
            self.grant[c as usize] -= 1;
            if self.grant[c as usize] == 0 {
                self.active -= 1;
            }
        }
    }

    fn top(&self, s: usize) -> Option<Label> {
        let h = self.heights[s];
        (h > 0).then(|| self.config.left[s][h - 1])
    }

    /// Removes the top of left stack `s` and the top of the right stack of
    /// its label.
    fn pop(&mut self, s: usize) -> std::result::Result<(), String> {
        let h = self.heights[s];
        if h == 0 {
            return Err(format!("left stack {} is empty", s + 1));
        }
        let k = self.config.left[s][h - 1] as usize;
        if self.right_heights[k] == 0 {
            return Err(format!("right stack {k} is already empty"));
        }
        let below = (h >= 2).then(|| self.config.left[s][h - 2] as usize).filter(|&b| b != k);
        self.remove(k);
        if let Some(b) = below {
            self.remove(b);
        }
        self.tops_with_label[k] -= 1;
        self.heights[s] -= 1;
        self.right_heights[k] -= 1;
        if h >= 2 {
            self.tops_with_label[self.config.left[s][h - 2] as usize] += 1;
        }
        self.add(k);
        if let Some(b) = below {
            self.add(b);
        }
        Ok(())
    }
}

/// Left-stack indices (0-based); each step removes that stack's top cube.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SecondPlan {
    pub steps: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondReport {
    /// `|S|` in every state.
    pub sizes: Vec<u32>,
    /// `|S| >= 2` flags and their longest run.
    pub run: StepReport,
    /// First state in which no left stack reaches above its window.
    pub main_start: Option<usize>,
    /// States with `|S| = 1` from `main_start` until `|S|` first reaches 2.
    pub singleton_prefix: usize,
    /// False if `|S|` fell below 2 after having reached 2 in the main loop.
    pub monotone: bool,
}

pub fn replay_second(
    config: &TwoSidedConfig,
    selection: &SubstackSelection,
    plan: &SecondPlan,
) -> Result<SecondReport> {
    config.check_coupling()?;
    selection.check(config)?;
    let l = selection.length;
    let mut state = State::new(config);
    let mut above = (0..config.stacks()).filter(|&s| state.heights[s] > selection.starts[s] + l).count();
    let mut sizes = Vec::with_capacity(plan.steps.len() + 1);
    sizes.push(state.active as u32);
    let mut main_start = (above == 0).then_some(0);
    for (step, &s) in plan.steps.iter().enumerate() {
        let replay_err = |message: String| Error::Replay { step: step + 1, message };
        if s >= config.stacks() {
            return Err(replay_err(format!("left stack {} does not exist", s + 1)));
        }
        if state.heights[s] <= selection.starts[s] + 1 {
            return Err(replay_err(format!("window {} is exhausted", s + 1)));
        }
        let was_above = state.heights[s] > selection.starts[s] + l;
        state.pop(s).map_err(replay_err)?;
        if was_above && state.heights[s] == selection.starts[s] + l {
            above -= 1;
        }
        sizes.push(state.active as u32);
        if above == 0 && main_start.is_none() {
            main_start = Some(step + 1);
        }
    }
    let (mut singleton_prefix, mut monotone) = (0, true);
    if let Some(start) = main_start {
        let main = &sizes[start..];
        let first_two = main.iter().position(|&k| k >= 2).unwrap_or(main.len());
        singleton_prefix = main[..first_two].iter().filter(|&&k| k == 1).count();
        monotone = main[first_two..].iter().all(|&k| k >= 2);
    }
    let flags = sizes.iter().map(|&k| k >= 2).collect();
    Ok(SecondReport { sizes, run: StepReport::from_flags(flags), main_start, singleton_prefix, monotone })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondSolution {
    pub plan: SecondPlan,
    pub phase0_steps: usize,
    pub exhausted: usize,
    pub report: SecondReport,
}

/// `m/2·(l-1) - t`, the guaranteed run length (may be negative).
pub fn guaranteed_run(m: usize, l: usize, t: usize) -> f64 {
    m as f64 / 2.0 * (l as f64 - 1.0) - t as f64
}

/// Whether `run >= m/2·(l-1) - t`, in exact arithmetic.
pub fn meets_guarantee(run: usize, m: usize, l: usize, t: usize) -> bool {
    2 * (run as i128 + t as i128) >= (m as i128) * (l as i128 - 1)
}

/// Clears everything above the windows, then removes window cubes: from
/// the lowest non-exhausted window while `|S| >= 3`, otherwise from the
/// lowest non-exhausted window whose top label differs from the labels
/// granting the current colors. Stops once `⌈m/2⌉` windows are exhausted.
pub fn solve_second_cubes(config: &TwoSidedConfig, selection: &SubstackSelection) -> Result<SecondSolution> {
    config.check_coupling()?;
    selection.check(config)?;
    let m = config.stacks();
    let l = selection.length;
    let starts = &selection.starts;
    let mut state = State::new(config);
    let mut steps = Vec::new();
    for s in 0..m {
        while state.heights[s] > starts[s] + l {
            state.pop(s).map_err(Error::Internal)?;
            steps.push(s);
        }
    }
    let phase0_steps = steps.len();
    let is_exhausted = |state: &State, s: usize| state.heights[s] == starts[s] + 1;
    let mut exhausted = (0..m).filter(|&s| is_exhausted(&state, s)).count();
    let need = m.div_ceil(2);
    let mut lowest = 0;
    while exhausted < need {
        let pick = if state.active >= 3 {
            while is_exhausted(&state, lowest) {
                lowest += 1;
            }
            Some(lowest)
        } else {
            let (i, j) = witness_labels(&state);
            (0..m).find(|&s| {
                !is_exhausted(&state, s) && state.top(s).is_some_and(|k| Some(k) != i && Some(k) != j)
            })
        };
        let Some(s) = pick else { break };
        state.pop(s).map_err(Error::Internal)?;
        steps.push(s);
        if is_exhausted(&state, s) {
            exhausted += 1;
        }
    }
    let plan = SecondPlan { steps };
    let report = replay_second(config, selection, &plan)?;
    Ok(SecondSolution { plan, phase0_steps, exhausted, report })
}

/// Labels of the lowest-index left stacks granting the (at most two)
/// accessible colors.
fn witness_labels(state: &State) -> (Option<Label>, Option<Label>) {
    let mut first: Option<(Label, Color)> = None;
    for s in 0..state.heights.len() {
        let Some(k) = state.top(s) else { continue };
        let Some(c) = state.granted(k as usize) else { continue };
        match first {
            None => first = Some((k, c)),
            Some((i, c1)) if c != c1 => return (Some(i), Some(k)),
            _ => {}
        }
    }
    let i = first.map(|(k, _)| k);
    (i, i)
}

/// A two-sided configuration read off a network, with the first-layer
/// comparator behind each left stack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkTwoSided {
    pub config: TwoSidedConfig,
    pub stack_comparators: Vec<usize>,
}

/// Reads the two-sided configuration of a depth-4 network on `input`.
/// Requires first-layer arity at most `3t` and second- and third-layer
/// arity at most `t`.
pub fn two_sided_from_network(network: &Network, input: &[bool], t: usize) -> Result<NetworkTwoSided> {
    if network.depth() != 4 {
        return Err(Error::MappingInapplicable(format!(
            "second cube game needs a depth-4 network, got depth {}",
            network.depth()
        )));
    }
    for (a, cap) in [(0, 3 * t), (1, t), (2, t)] {
        if let Some(c) = network.layer(a).comparators().iter().find(|c| c.arity() > cap) {
            return Err(Error::MappingInapplicable(format!(
                "layer {} comparator at cell {} has arity {}, more than {cap}",
                a + 1,
                c.min() + 1,
                c.arity()
            )));
        }
    }
    two_sided_from_network_relaxed(network, input)
}

/// The same mapping without arity preconditions, for illustrations.
pub fn two_sided_from_network_relaxed(network: &Network, input: &[bool]) -> Result<NetworkTwoSided> {
    if network.depth() < 3 {
        return Err(Error::MappingInapplicable("second cube game needs at least three layers".into()));
    }
    let trace = network.trace_bool(input)?;
    let zero_stacks = |a: usize, tag: &dyn Fn(usize) -> u32| -> Vec<Vec<u32>> {
        network
            .layer(a)
            .comparators()
            .iter()
            .map(|c| c.members().iter().filter(|&&i| !trace.arrays[a + 1][i]).map(|&i| tag(i)).collect())
            .collect()
    };
    let second = network.layer(1);
    let third = network.layer(2);
    let all_left = zero_stacks(0, &|i| second.owner(i) as Label);
    let right = zero_stacks(1, &|i| third.owner(i) as Color);
    let mut left = Vec::new();
    let mut stack_comparators = Vec::new();
    for (ci, stack) in all_left.into_iter().enumerate() {
        if !stack.is_empty() {
            left.push(stack);
            stack_comparators.push(ci);
        }
    }
    let config = TwoSidedConfig { left, right };
    config.check_coupling().map_err(|e| Error::Internal(e.to_string()))?;
    Ok(NetworkTwoSided { config, stack_comparators })
}

/// Joins first-layer comparators of arity below `t` (two lowest-index ones
/// at a time) until at most one remains, then adds that one to the
/// lowest-index comparator of arity below `2t`. Comparators may start with
/// any arity up to `3t`; afterwards every one has arity in `[t, 3t]`.
pub fn join_first_layer(network: &Network, t: usize) -> Result<Network> {
    if t == 0 {
        return Err(Error::Domain("t must be positive".into()));
    }
    if network.n() < t {
        return Err(Error::StrategyInapplicable(format!(
            "n = {} is below t = {t}; no joined layer can reach arity t",
            network.n()
        )));
    }
    let mut blocks = network.layer(0).blocks();
    if let Some(b) = blocks.iter().find(|b| b.len() > 3 * t) {
        return Err(Error::Domain(format!(
            "first-layer comparator at cell {} has arity {} > 3t = {}",
            b[0] + 1,
            b.len(),
            3 * t
        )));
    }
    loop {
        let small: Vec<usize> = (0..blocks.len()).filter(|&i| blocks[i].len() < t).take(2).collect();
        if small.len() < 2 {
            break;
        }
        let absorbed = blocks.remove(small[1]);
        blocks[small[0]].extend(absorbed);
    }
    if let Some(lone) = blocks.iter().position(|b| b.len() < t) {
        let host = (0..blocks.len()).find(|&i| i != lone && blocks[i].len() < 2 * t).ok_or_else(|| {
            Error::StrategyInapplicable(format!(
                "the undersized comparator at cell {} has nothing to join with",
                blocks[lone][0] + 1
            ))
        })?;
        let absorbed = blocks.remove(lone);
        let host = if host > lone { host - 1 } else { host };
        blocks[host].extend(absorbed);
    }
    network.with_layer(0, blocks)
}

/// Turns a plan into input flips (lowest 0-input of the stack's first-layer
/// comparator) and keeps the inputs of the longest `|S| >= 2` run.
pub fn branch_from_plan2(
    network: &Network,
    input: &[bool],
    selection: &SubstackSelection,
    plan: &SecondPlan,
) -> Result<GrowingBranch> {
    let mapped = two_sided_from_network_relaxed(network, input)?;
    let report = replay_second(&mapped.config, selection, plan)?;
    let mut heights: Vec<usize> = mapped.config.left.iter().map(Vec::len).collect();
    let first = network.layer(0);
    let mut current = input.to_vec();
    let (start, len) = if report.run.best_run == 0 { (0, 1) } else { (report.run.best_start, report.run.best_run) };
    let mut inputs = Vec::with_capacity(len);
    if start == 0 {
        inputs.push(current.clone());
    }
    for (step, &s) in plan.steps.iter().enumerate().take(start + len - 1) {
        let comp = &first.comparators()[mapped.stack_comparators[s]];
        let zeros: Vec<usize> = comp.members().iter().copied().filter(|&i| !current[i]).collect();
        if zeros.len() != heights[s] {
            return Err(Error::Desync {
                step: step + 1,
                message: format!(
                    "left stack {} has {} cubes but its comparator has {} zero inputs",
                    s + 1,
                    heights[s],
                    zeros.len()
                ),
            });
        }
        heights[s] -= 1;
        current[zeros[0]] = true;
        if step + 1 >= start {
            inputs.push(current.clone());
        }
    }
    validate_branch(inputs)
}

pub const CUBES2_HEADER: &str = "cubes2 v1";
pub const SELECTION_HEADER: &str = "selection v1";

/// `cubes2 v1`, `labels a`, one `left:` line per left stack and one
/// `right:` line per right stack, bottom to top.
pub fn config_to_text(config: &TwoSidedConfig) -> String {
    let mut out = format!("{CUBES2_HEADER}\nlabels {}\n", config.labels());
    let line = |tag: &str, s: &[u32]| {
        let mut l = format!("{tag}:");
        for v in s {
            l.push(' ');
            l.push_str(&v.to_string());
        }
        l.push('\n');
        l
    };
    for s in &config.left {
        out.push_str(&line("left", s));
    }
    for s in &config.right {
        out.push_str(&line("right", s));
    }
    out
}

pub fn parse_config(text: &str) -> Result<TwoSidedConfig> {
    let mut lines = content_lines(text);
    let (lno, header) = lines.next().ok_or_else(|| syntax(1, 1, "empty input"))?;
    if header.trim() != CUBES2_HEADER {
        return Err(syntax(lno, 1, format!("expected `{CUBES2_HEADER}`")));
    }
    let (lno, line) = lines.next().ok_or_else(|| syntax(lno + 1, 1, "missing `labels` line"))?;
    let a = parse_keyed_usize(lno, line, "labels")?;
    let mut config = TwoSidedConfig::default();
    for (lno, line) in lines {
        let body = line.trim_start();
        let col = line.len() - body.len();
        if let Some(rest) = body.strip_prefix("left:") {
            let values = parse_numbers(lno, rest).map_err(|e| shift(e, col + 5))?;
            config.left.push(values);
        } else if let Some(rest) = body.strip_prefix("right:") {
            let values = parse_numbers(lno, rest).map_err(|e| shift(e, col + 6))?;
            config.right.push(values);
        } else {
            return Err(syntax(lno, col + 1, "expected `left:` or `right:`"));
        }
    }
    if config.right.len() != a {
        return Err(syntax(lno, 1, format!("declared {a} labels but found {} right stacks", config.right.len())));
    }
    Ok(config)
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Syntax { line, column, message } => Error::Syntax { line, column: column + by, message },
        other => other,
    }
}

/// `selection v1`, `length l`, then one 0-based window offset per line.
pub fn selection_to_text(selection: &SubstackSelection) -> String {
    let mut out = format!("{SELECTION_HEADER}\nlength {}\n", selection.length);
    for s in &selection.starts {
        out.push_str(&format!("{s}\n"));
    }
    out
}

/// Reads a selection; the spread statistics are recomputed against `config`.
pub fn parse_selection(text: &str, config: &TwoSidedConfig) -> Result<SubstackSelection> {
    let mut lines = content_lines(text);
    let (lno, header) = lines.next().ok_or_else(|| syntax(1, 1, "empty input"))?;
    if header.trim() != SELECTION_HEADER {
        return Err(syntax(lno, 1, format!("expected `{SELECTION_HEADER}`")));
    }
    let (lno, line) = lines.next().ok_or_else(|| syntax(lno + 1, 1, "missing `length` line"))?;
    let length = parse_keyed_usize(lno, line, "length")?;
    let mut starts = Vec::new();
    for (lno, line) in lines {
        let v: Vec<usize> = parse_numbers(lno, line)?;
        if v.len() != 1 {
            return Err(syntax(lno, 1, "expected one window offset"));
        }
        starts.push(v[0]);
    }
    let mut selection =
        SubstackSelection { starts, length, attempts: 0, max_spread: 0, meets_tenth: false };
    selection.check(config)?;
    let m = config.stacks();
    selection.max_spread = label_spread(config, &selection.starts, length).into_iter().max().unwrap_or(0);
    selection.meets_tenth = 10 * selection.max_spread < m;
    Ok(selection)
}

pub fn plan_to_text(plan: &SecondPlan) -> String {
    plan.steps.iter().map(|s| format!("{}\n", s + 1)).collect()
}

pub fn parse_plan(text: &str) -> Result<SecondPlan> {
    let plan = crate::cubes::parse_plan(text)?;
    Ok(SecondPlan { steps: plan.steps })
}
