//! The depth-3 cube game.
//!
//! On a Boolean input, the 0-outputs of every first-layer comparator form a
//! stack of cubes (bottom to top by cell position), each colored by the
//! second-layer comparator its cell feeds. Flipping an input bit removes the
//! top cube of one stack. Two top cubes of different colors mean two
//! accessible cells before the last layer, so a long run of such states is
//! a long growing branch for the arity certifier.
//!
//! [`solve_cubes`] first removes at most `⌊m/2⌋-1` cubes to reach
//!
//! * (A) two monochromatic stacks of different colors, or
//! * (B) two top colors differ, at least 3 stacks, at least 2 of them not
//!   monochromatic,
//!
//! and then greedily removes cubes while keeping (A), else (B), until a
//! terminal configuration remains. Here `m = ⌈n/2⌉`.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::access::{validate_branch, GrowingBranch};
use crate::error::{Error, Result};
use crate::format::{content_lines, syntax};
use crate::network::Network;

pub type Color = u32;

/// Stacks of colored cubes, listed bottom to top.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CubeConfig {
    pub stacks: Vec<Vec<Color>>,
}

impl CubeConfig {
    pub fn new(stacks: Vec<Vec<Color>>) -> Self {
        CubeConfig { stacks }
    }

    pub fn total(&self) -> usize {
        self.stacks.iter().map(Vec::len).sum()
    }

    /// `⌈n/2⌉`: every stack and every color must stay strictly below it.
    pub fn half(&self) -> usize {
        self.total().div_ceil(2)
    }

    pub fn color_counts(&self) -> std::collections::BTreeMap<Color, usize> {
        let mut counts = std::collections::BTreeMap::new();
        for &c in self.stacks.iter().flatten() {
            *counts.entry(c).or_insert(0) += 1;
        }
        counts
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.total();
        if n < 2 {
            return Err(Error::InvalidConfig(format!("need at least 2 cubes, got {n}")));
        }
        let m = self.half();
        if let Some((j, s)) = self.stacks.iter().enumerate().find(|(_, s)| s.len() >= m) {
            return Err(Error::InvalidConfig(format!(
                "stack {} has {} cubes, must be fewer than ⌈n/2⌉ = {m}",
                j + 1,
                s.len()
            )));
        }
        if let Some((c, count)) = self.color_counts().into_iter().find(|&(_, k)| k >= m) {
            return Err(Error::InvalidConfig(format!(
                "color {c} has {count} cubes, must be fewer than ⌈n/2⌉ = {m}"
            )));
        }
        Ok(())
    }

    /// Same stacks without the empty ones.
    pub fn without_empty(&self) -> CubeConfig {
        CubeConfig { stacks: self.stacks.iter().filter(|s| !s.is_empty()).cloned().collect() }
    }
}

/// Stack indices (0-based); each step removes that stack's top cube.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RemovalPlan {
    pub steps: Vec<usize>,
}

/// Per-state flags of a replay: states are counted before every removal and
/// after the last one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepReport {
    pub flags: Vec<bool>,
    pub best_run: usize,
    /// First state of the best run.
    pub best_start: usize,
}

impl StepReport {
    pub fn from_flags(flags: Vec<bool>) -> Self {
        let (mut best_run, mut best_start, mut run) = (0, 0, 0);
        for (i, &f) in flags.iter().enumerate() {
            run = if f { run + 1 } else { 0 };
            if run > best_run {
                best_run = run;
                best_start = i + 1 - run;
            }
        }
        StepReport { flags, best_run, best_start }
    }
}

/// Game state: fixed stack contents and current heights.
struct Game<'a> {
    stacks: &'a [Vec<Color>],
    heights: Vec<usize>,
    /// Length of the monochromatic run at the bottom of each stack.
    bottom_run: Vec<usize>,
}

impl<'a> Game<'a> {
    fn new(config: &'a CubeConfig) -> Self {
        let bottom_run = config
            .stacks
            .iter()
            .map(|s| s.iter().take_while(|&&c| c == s[0]).count())
            .collect();
        Game {
            stacks: &config.stacks,
            heights: config.stacks.iter().map(Vec::len).collect(),
            bottom_run,
        }
    }

    fn total(&self) -> usize {
        self.heights.iter().sum()
    }

    fn top(&self, j: usize) -> Option<Color> {
        let h = self.heights[j];
        (h > 0).then(|| self.stacks[j][h - 1])
    }

    fn is_mono(&self, j: usize) -> bool {
        let h = self.heights[j];
        h > 0 && h <= self.bottom_run[j]
    }

    fn nonempty(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.heights.len()).filter(|&j| self.heights[j] > 0)
    }

    fn two_tops(&self) -> bool {
        let mut tops = self.nonempty().map(|j| self.top(j).unwrap());
        match tops.next() {
            Some(first) => tops.any(|c| c != first),
            None => false,
        }
    }

    fn cond_a(&self) -> bool {
        let mut mono = self.nonempty().filter(|&j| self.is_mono(j)).map(|j| self.stacks[j][0]);
        match mono.next() {
            Some(first) => mono.any(|c| c != first),
            None => false,
        }
    }

    fn cond_b(&self) -> bool {
        self.two_tops()
            && self.nonempty().count() >= 3
            && self.nonempty().filter(|&j| !self.is_mono(j)).count() >= 2
    }

    fn pop(&mut self, j: usize) {
        self.heights[j] -= 1;
    }

    /// Removes a cube from the lowest-index stack for which `keep` still
    /// holds afterwards.
    fn try_pop_keeping(&mut self, keep: fn(&Self) -> bool) -> Option<usize> {
        for j in 0..self.heights.len() {
            if self.heights[j] == 0 {
                continue;
            }
            self.heights[j] -= 1;
            if keep(self) {
                return Some(j);
            }
            self.heights[j] += 1;
        }
        None
    }

    /// The three-stack terminal pattern: one single cube of color `c` and
    /// two stacks of height ≥ 2 whose tops differ from `c` and whose other
    /// cubes are all `c`. Returns the indices of the two tall stacks.
    fn three_stack_terminal(&self) -> Option<(usize, usize)> {
        let live: Vec<usize> = self.nonempty().collect();
        if live.len() != 3 {
            return None;
        }
        let single = *live.iter().find(|&&j| self.heights[j] == 1)?;
        let c = self.top(single).unwrap();
        let tall: Vec<usize> = live.iter().copied().filter(|&j| j != single).collect();
        let shaped = |j: usize| {
            let h = self.heights[j];
            h >= 2 && self.stacks[j][h - 1] != c && self.stacks[j][..h - 1].iter().all(|&x| x == c)
        };
        (tall.len() == 2 && shaped(tall[0]) && shaped(tall[1])).then(|| (tall[0], tall[1]))
    }
}

/// The solver's plan together with the quantities its two phases bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeSolution {
    pub plan: RemovalPlan,
    /// Cubes removed before (A) or (B) holds; at most `⌊m/2⌋-1`.
    pub phase1_removed: usize,
    /// Cubes left when the greedy phase gets stuck.
    pub stuck_residue: usize,
    /// Cubes left after emptying the third stack of a three-stack terminal
    /// configuration; at most `⌊m/2⌋+1`.
    pub final_residue: usize,
    pub report: StepReport,
}

pub fn solve_cubes(config: &CubeConfig) -> Result<RemovalPlan> {
    Ok(solve_cubes_detailed(config)?.plan)
}

pub fn solve_cubes_detailed(config: &CubeConfig) -> Result<CubeSolution> {
    config.validate()?;
    let n = config.total();
    let m = config.half();
    let mut game = Game::new(config);
    let mut steps = Vec::new();

    if !game.cond_a() && !game.cond_b() {
        let live: Vec<usize> = game.nonempty().collect();
        let common = game.top(live[0]).unwrap();
        if live.iter().any(|&j| game.top(j) != Some(common)) {
            return Err(Error::Internal("(A) and (B) fail but top colors differ".into()));
        }
        let mixed: Vec<usize> = live.iter().copied().filter(|&j| !game.is_mono(j)).take(2).collect();
        if mixed.len() < 2 {
            return Err(Error::Internal("fewer than two non-monochromatic stacks".into()));
        }
        // Cubes above the highest cube whose color differs from the tops.
        let above = |j: usize| {
            let s = &config.stacks[j];
            let marked = (0..s.len()).rev().find(|&i| s[i] != common).unwrap();
            s.len() - 1 - marked
        };
        let chosen = if above(mixed[1]) < above(mixed[0]) { mixed[1] } else { mixed[0] };
        for _ in 0..above(chosen) {
            game.pop(chosen);
            steps.push(chosen);
        }
        if !game.cond_a() && !game.cond_b() {
            return Err(Error::Internal("first phase did not reach (A) or (B)".into()));
        }
    }
    let phase1_removed = steps.len();
    if phase1_removed + 1 > m / 2 && phase1_removed > 0 {
        return Err(Error::Internal(format!(
            "first phase removed {phase1_removed} cubes, bound is ⌊m/2⌋-1 = {}",
            (m / 2).saturating_sub(1)
        )));
    }

    loop {
        if let Some(j) = game.try_pop_keeping(Game::cond_a) {
            steps.push(j);
        } else if let Some(j) = game.try_pop_keeping(Game::cond_b) {
            steps.push(j);
        } else {
            break;
        }
    }
    let stuck_residue = game.total();
    if stuck_residue > 2 {
        let (s1, s2) = game.three_stack_terminal().ok_or_else(|| {
            Error::Internal(format!("stuck with {stuck_residue} cubes in a non-terminal configuration"))
        })?;
        // Keep the shorter tall stack; it pairs with the single cube.
        let drop = if game.heights[s2] < game.heights[s1] { s1 } else { s2 };
        while game.heights[drop] > 0 {
            game.pop(drop);
            steps.push(drop);
        }
    }
    let final_residue = game.total();
    if final_residue > m / 2 + 1 {
        return Err(Error::Internal(format!(
            "{final_residue} cubes left, bound is ⌊m/2⌋+1 = {}",
            m / 2 + 1
        )));
    }
    let plan = RemovalPlan { steps };
    let report = replay_cubes(config, &plan)?;
    if report.best_run < n / 2 + 1 {
        return Err(Error::Internal(format!(
            "best run {} below ⌊n/2⌋+1 = {}",
            report.best_run,
            n / 2 + 1
        )));
    }
    Ok(CubeSolution { plan, phase1_removed, stuck_residue, final_residue, report })
}

pub fn replay_cubes(config: &CubeConfig, plan: &RemovalPlan) -> Result<StepReport> {
    let mut game = Game::new(config);
    let mut flags = Vec::with_capacity(plan.steps.len() + 1);
    flags.push(game.two_tops());
    for (step, &j) in plan.steps.iter().enumerate() {
        if j >= game.heights.len() || game.heights[j] == 0 {
            return Err(Error::Replay {
                step: step + 1,
                message: format!("stack {} is empty or does not exist", j + 1),
            });
        }
        game.pop(j);
        flags.push(game.two_tops());
    }
    Ok(StepReport::from_flags(flags))
}

/// A cube configuration read off a network, with the first-layer comparator
/// behind each stack.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkCubes {
    pub config: CubeConfig,
    pub stack_comparators: Vec<usize>,
}

/// Reads the cube configuration of a depth-3 network on `input`. Requires
/// every first- and second-layer comparator to have arity below `⌈n₀/2⌉`,
/// where `n₀` is the number of zeros in the input.
pub fn cube_config_from_network(network: &Network, input: &[bool]) -> Result<NetworkCubes> {
    if network.depth() != 3 {
        return Err(Error::MappingInapplicable(format!(
            "cube game needs a depth-3 network, got depth {}",
            network.depth()
        )));
    }
    let zeros = input.iter().filter(|&&b| !b).count();
    let limit = zeros.div_ceil(2);
    for a in (0..2).filter(|_| zeros > 0) {
        if let Some(c) = network.layer(a).comparators().iter().find(|c| c.arity() >= limit) {
            return Err(Error::MappingInapplicable(format!(
                "layer {} comparator at cell {} has arity {}, must be below ⌈n₀/2⌉ = {limit}",
                a + 1,
                c.min() + 1,
                c.arity()
            )));
        }
    }
    cube_config_from_network_relaxed(network, input)
}

/// The same mapping without the arity precondition, for illustrations whose
/// comparators are as large as half the input.
pub fn cube_config_from_network_relaxed(network: &Network, input: &[bool]) -> Result<NetworkCubes> {
    if network.depth() < 2 {
        return Err(Error::MappingInapplicable("cube game needs at least two layers".into()));
    }
    let mut after_first = input.to_vec();
    if after_first.len() != network.n() {
        return Err(Error::InputShape { expected: network.n(), actual: input.len() });
    }
    network.layer(0).apply_bool(&mut after_first);
    let second = network.layer(1);
    let mut stacks = Vec::new();
    let mut stack_comparators = Vec::new();
    for (ci, comp) in network.layer(0).comparators().iter().enumerate() {
        let stack: Vec<Color> = comp
            .members()
            .iter()
            .filter(|&&i| !after_first[i])
            .map(|&i| second.owner(i) as Color)
            .collect();
        if !stack.is_empty() {
            stacks.push(stack);
            stack_comparators.push(ci);
        }
    }
    Ok(NetworkCubes { config: CubeConfig { stacks }, stack_comparators })
}

/// Turns a removal plan into input flips (the lowest 0-input of the stack's
/// first-layer comparator) and keeps the inputs of the plan's longest
/// two-color run.
pub fn branch_from_plan(network: &Network, input: &[bool], plan: &RemovalPlan) -> Result<GrowingBranch> {
    let mapped = cube_config_from_network_relaxed(network, input)?;
    let report = replay_cubes(&mapped.config, plan)?;
    let mut heights: Vec<usize> = mapped.config.stacks.iter().map(Vec::len).collect();
    let first = network.layer(0);
    let mut current = input.to_vec();
    let mut inputs = vec![current.clone()];
    for (step, &j) in plan.steps.iter().enumerate() {
        let comp = &first.comparators()[mapped.stack_comparators[j]];
        let zeros: Vec<usize> = comp.members().iter().copied().filter(|&i| !current[i]).collect();
        if zeros.len() != heights[j] {
            return Err(Error::Desync {
                step: step + 1,
                message: format!(
                    "stack {} has {} cubes but its comparator has {} zero inputs",
                    j + 1,
                    heights[j],
                    zeros.len()
                ),
            });
        }
        heights[j] -= 1;
        current[zeros[0]] = true;
        inputs.push(current.clone());
    }
    let (start, len) = if report.best_run == 0 { (0, 1) } else { (report.best_start, report.best_run) };
    validate_branch(inputs[start..start + len].to_vec())
}

pub const CUBES_HEADER: &str = "cubes v1";

/// `cubes v1`, then one line per stack with color ids bottom to top; an
/// empty stack is written `-`.
pub fn config_to_text(config: &CubeConfig) -> String {
    let mut out = format!("{CUBES_HEADER}\n");
    for s in &config.stacks {
        if s.is_empty() {
            out.push('-');
        } else {
            let colors: Vec<String> = s.iter().map(|c| c.to_string()).collect();
            out.push_str(&colors.join(" "));
        }
        out.push('\n');
    }
    out
}

pub fn parse_config(text: &str) -> Result<CubeConfig> {
    let mut lines = content_lines(text);
    let (lno, header) = lines.next().ok_or_else(|| syntax(1, 1, "empty input"))?;
    if header.trim() != CUBES_HEADER {
        return Err(syntax(lno, 1, format!("expected `{CUBES_HEADER}`")));
    }
    let mut stacks = Vec::new();
    for (lno, line) in lines {
        if line.trim() == "-" {
            stacks.push(Vec::new());
            continue;
        }
        stacks.push(parse_numbers(lno, line)?);
    }
    Ok(CubeConfig { stacks })
}

pub(crate) fn parse_numbers<T: std::str::FromStr>(lno: usize, line: &str) -> Result<Vec<T>> {
    let mut out = Vec::new();
    let mut offset = 0;
    for token in line.split_whitespace() {
        let col = line[offset..].find(token).map_or(1, |p| offset + p + 1);
        offset = col - 1 + token.len();
        out.push(
            token
                .parse::<T>()
                .map_err(|_| syntax(lno, col, format!("`{token}` is not a valid number")))?,
        );
    }
    Ok(out)
}

/// One 1-based stack index per line.
pub fn plan_to_text(plan: &RemovalPlan) -> String {
    plan.steps.iter().map(|j| format!("{}\n", j + 1)).collect()
}

pub fn parse_plan(text: &str) -> Result<RemovalPlan> {
    let mut steps = Vec::new();
    for (lno, line) in content_lines(text) {
        let values: Vec<usize> = parse_numbers(lno, line)?;
        if values.len() != 1 || values[0] == 0 {
            return Err(syntax(lno, 1, "expected one 1-based stack index"));
        }
        steps.push(values[0] - 1);
    }
    Ok(RemovalPlan { steps })
}

/// Random valid configuration with `n` cubes. With probability 1/2 one color
/// takes the maximal `⌈n/2⌉-1` cubes and is pushed to the stack tops, which
/// forces the first phase to do work.
pub fn random_config<R: Rng>(n: usize, rng: &mut R) -> CubeConfig {
    assert!(n >= 4, "valid configurations need n >= 4");
    let cap = n.div_ceil(2) - 1;
    let min_parts = n.div_ceil(cap);
    let split = |rng: &mut R, parts: usize| -> Vec<usize> {
        // Random sizes in 1..=cap summing to n.
        let mut sizes = vec![1; parts];
        let mut left = n - parts;
        while left > 0 {
            let j = rng.gen_range(0..parts);
            if sizes[j] < cap {
                sizes[j] += 1;
                left -= 1;
            }
        }
        sizes
    };
    let colors = rng.gen_range(min_parts.max(2)..=n);
    let color_sizes = split(rng, colors);
    let mut cubes: Vec<Color> = Vec::with_capacity(n);
    let dominant = rng.gen_bool(0.5);
    let mut color_sizes = color_sizes;
    if dominant {
        // Move mass onto color 0 up to the cap.
        let mut j = 1;
        while color_sizes[0] < cap && j < color_sizes.len() {
            if color_sizes[j] > 1 {
                color_sizes[j] -= 1;
                color_sizes[0] += 1;
            } else {
                j += 1;
            }
        }
    }
    for (c, &k) in color_sizes.iter().enumerate() {
        cubes.extend(std::iter::repeat_n(c as Color, k));
    }
    cubes.shuffle(rng);
    let stacks_n = rng.gen_range(min_parts.max(3)..=n);
    let stack_sizes = split(rng, stacks_n);
    let mut stacks = Vec::with_capacity(stacks_n);
    let mut rest = &cubes[..];
    for k in stack_sizes {
        let (head, tail) = rest.split_at(k);
        let mut s = head.to_vec();
        if dominant && rng.gen_bool(0.7) {
            // Bottom: other colors; top: the dominant one.
            s.sort_by_key(|&c| c == 0);
        }
        stacks.push(s);
        rest = tail;
    }
    CubeConfig { stacks }
}
