//! The `sortnet` command-line front end.
//!
//! Exit status is 0 on success (sorted, certified, guarantee met), 1 when a
//! check fails, and 2 for usage and file-format errors. Output is `key
//! value` lines, or tab-separated rows with `--format rows`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::access::{
    certificate_to_text, certify_last_layer_arity, connectivity_bound, find_branch_depth2, greedy_branch,
    parse_certificate, ArityCertificate,
};
use crate::constructions::{build_columnsort4, build_depth3, figure1};
use crate::cubes::{self, CubeConfig};
use crate::cubes2::{self, SolverParams};
use crate::error::Error;
use crate::format;
use crate::network::{parse_bits, Network};
use crate::search::{minimal_arity, MinArity, SearchLimits};
use crate::verify::{verify_exhaustive_with_cap, verify_random, Verdict, DEFAULT_EXHAUSTIVE_CAP};

#[derive(Parser, Debug)]
#[command(name = "sortnet", version, about = "Constant-depth k-ary sorting networks")]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, global = true, default_value_t = OutputFormat::Human)]
    pub format: OutputFormat,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Human,
    Rows,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a network and write it in sortnet v1 format.
    Build {
        #[arg(long, value_enum)]
        construction: Construction,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a network sorts.
    Verify {
        network: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_CAP)]
        cap: usize,
    },
    /// Evaluate a network on one input and print every array.
    Eval {
        network: PathBuf,
        /// Integers separated by spaces or commas.
        #[arg(long, allow_hyphen_values = true)]
        input: String,
    },
    /// Print size statistics.
    Info { network: PathBuf },
    /// Smallest arity of a depth-d sorting network on n cells, by search.
    Minarity {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        timeout_secs: Option<u64>,
        /// Write the witness network here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Certify a lower bound on the last-layer arity, or check a certificate.
    Certify(CertifyArgs),
    /// Connectivity lower bound and known exact arities.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
    },
    /// The depth-3 cube game.
    #[command(subcommand)]
    Cubes(CubesCommand),
    /// The depth-4 second cube game.
    #[command(subcommand)]
    Cubes2(Cubes2Command),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Depth3,
    Columnsort4,
    Figure1,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Depth2,
    Cubes3,
    Cubes4,
    Greedy,
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    network: PathBuf,
    #[arg(long, value_enum, required_unless_present = "check")]
    strategy: Option<Strategy>,
    /// Check this certificate instead of producing one.
    #[arg(long, conflicts_with = "strategy")]
    check: Option<PathBuf>,
    /// Starting input as a 0/1 string (default: all zeros).
    #[arg(long)]
    input: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    t_divisor: u64,
    /// Window length for cubes4 (default: ⌊n^{1/3}⌋).
    #[arg(long)]
    window: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    retries: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum CubesCommand {
    /// Read the cube configuration of a depth-3 network on an input.
    Map {
        network: PathBuf,
        #[arg(long)]
        input: Option<String>,
        /// Skip the arity precondition.
        #[arg(long)]
        relaxed: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve a configuration and write the removal plan.
    Solve {
        config: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replay a plan and report the longest two-color run.
    Replay { config: PathBuf, plan: PathBuf },
    /// Solve random valid configurations and check the guarantees.
    Selfcheck {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 1000)]
        instances: usize,
        #[arg(long, default_value_t = 4)]
        min_n: usize,
        #[arg(long, default_value_t = 200)]
        max_n: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ParamArgs {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 100)]
    t_divisor: u64,
    #[arg(long)]
    window: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    retries: usize,
}

impl ParamArgs {
    fn params(&self) -> Result<SolverParams, Failure> {
        Ok(SolverParams {
            t_divisor: self.t_divisor,
            substack_length: self.window,
            retry_budget: self.retries,
            seed: require_seed(self.seed)?,
        })
    }
}

#[derive(Subcommand, Debug)]
pub enum Cubes2Command {
    /// Write a uniform synthetic configuration with n cubes per side.
    Generate {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw windows satisfying the label-spread condition.
    Select {
        config: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Solve a configuration for a selection and write the plan.
    Solve {
        config: PathBuf,
        selection: PathBuf,
        #[arg(long, default_value_t = 100)]
        t_divisor: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Replay a plan and report the longest run with two accessible colors.
    Replay {
        config: PathBuf,
        selection: PathBuf,
        plan: PathBuf,
        #[arg(long, default_value_t = 100)]
        t_divisor: u64,
    },
    /// Generate, select, solve and check the step guarantee.
    Selfcheck {
        #[arg(long, default_value_t = 100_000)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        instances: usize,
        #[command(flatten)]
        params: ParamArgs,
    },
}

/// A command outcome that is not success: exit code and message.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. } | Error::Partition { .. } | Error::InputShape { .. } => 2,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn require_seed(seed: Option<u64>) -> Result<u64, Failure> {
    seed.ok_or_else(|| usage("this command is randomized and requires --seed"))
}

struct Out<'a> {
    w: &'a mut dyn Write,
    rows: bool,
}

impl Out<'_> {
    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        let sep = if self.rows { '\t' } else { ' ' };
        let _ = writeln!(self.w, "{key}{sep}{value}");
    }

    fn list<T: std::fmt::Display>(&mut self, key: &str, values: &[T]) {
        let sep = if self.rows { "\t" } else { " " };
        let joined: Vec<String> = values.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(self.w, "{key}{sep}{}", joined.join(sep));
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write_or_print(path: &Option<PathBuf>, text: &str, out: &mut Out) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let _ = out.w.write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn load_network(path: &Path) -> Result<Network, Failure> {
    Ok(format::parse(&read(path)?)?)
}

fn parse_input_bits(text: Option<&str>, n: usize) -> Result<Vec<bool>, Failure> {
    match text {
        None => Ok(vec![false; n]),
        Some(t) => {
            let compact: String = t.chars().filter(|c| !c.is_whitespace() && *c != ',').collect();
            let bits = parse_bits(&compact)?;
            if bits.len() != n {
                return Err(Error::InputShape { expected: n, actual: bits.len() }.into());
            }
            Ok(bits)
        }
    }
}

fn spaced_bits(bits: &[bool]) -> String {
    bits.iter().map(|&b| if b { "1" } else { "0" }).collect::<Vec<_>>().join(" ")
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let rows = cli.format == OutputFormat::Rows;
    let mut buffer = Vec::new();
    let go = |buffer: &mut Vec<u8>| dispatch(cli.command, &mut Out { w: buffer, rows });
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(|| go(&mut buffer)),
            Err(e) => Err(usage(format!("cannot start {j} worker threads: {e}"))),
        },
        None => go(&mut buffer),
    };
    let _ = stdout.write_all(&buffer);
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, out: &mut Out) -> Result<i32, Failure> {
    match command {
        Command::Build { construction, n, output } => {
            let net = match construction {
                Construction::Depth3 => build_depth3(n)?,
                Construction::Columnsort4 => build_columnsort4(n)?,
                Construction::Figure1 => figure1(),
            };
            write_or_print(&output, &format::serialize(&net), out)?;
            Ok(0)
        }
        Command::Verify { network, mode, trials, seed, cap } => {
            let net = load_network(&network)?;
            let report = match mode {
                Mode::Exhaustive => verify_exhaustive_with_cap(&net, cap)?,
                Mode::Random => {
                    let seed = require_seed(seed)?;
                    out.kv("seed", seed);
                    verify_random(&net, trials, seed)?
                }
            };
            out.kv("trials", report.trials);
            if let Some(rng) = report.rng {
                out.kv("rng", rng);
            }
            match report.verdict {
                Verdict::Sorted => {
                    out.kv("verdict", "sorted");
                    Ok(0)
                }
                Verdict::Counterexample => {
                    out.kv("verdict", "counterexample");
                    let w = report.witness.unwrap_or_default();
                    out.kv("counterexample", spaced_bits(&w));
                    Ok(1)
                }
            }
        }
        Command::Eval { network, input } => {
            let net = load_network(&network)?;
            let values = input
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|s| !s.is_empty())
                .enumerate()
                .map(|(i, s)| {
                    s.parse::<i64>()
                        .map_err(|_| usage(format!("input value {} `{s}` is not an integer", i + 1)))
                })
                .collect::<Result<Vec<i64>, Failure>>()?;
            let trace = net.trace(&values)?;
            for (a, array) in trace.arrays.iter().enumerate() {
                out.list(&format!("array{a}"), array);
            }
            out.list("output", trace.output());
            Ok(0)
        }
        Command::Info { network } => {
            let stats = load_network(&network)?.stats();
            out.kv("n", stats.n);
            out.kv("depth", stats.depth);
            out.kv("arity", stats.arity);
            out.list("per_layer", &stats.per_layer_arities);
            Ok(0)
        }
        Command::Minarity { n, d, timeout_secs, output } => {
            let limits = SearchLimits { timeout: timeout_secs.map(Duration::from_secs), ..Default::default() };
            out.kv("n", n);
            out.kv("d", d);
            match minimal_arity(n, d, &limits)? {
                MinArity::Exact { k, witness } => {
                    out.kv("k_min", k);
                    if let Some(p) = &output {
                        write_or_print(&Some(p.clone()), &format::serialize(&witness), out)?;
                        out.kv("witness", p.display());
                    }
                    Ok(0)
                }
                MinArity::Partial { low, high } => {
                    out.kv("k_min_interval", format!("{low} {high}"));
                    out.kv("status", "indeterminate");
                    Ok(1)
                }
            }
        }
        Command::Certify(args) => certify(args, out),
        Command::Bounds { n, d } => {
            if n == 0 || d == 0 {
                return Err(usage("n and d must be positive"));
            }
            out.kv("connectivity_bound", connectivity_bound(n, d));
            match d {
                1 | 2 => out.kv("exact", n),
                3 => out.kv("exact", n.div_ceil(2)),
                4 => {
                    out.kv("exact", "Θ(n^{2/3})");
                    if n >= 4 {
                        out.kv("columnsort4_arity", build_columnsort4(n)?.arity());
                    }
                }
                _ => out.kv("exact", "unknown"),
            }
            Ok(0)
        }
        Command::Cubes(c) => cubes_command(c, out),
        Command::Cubes2(c) => cubes2_command(c, out),
    }
}

fn certify(args: CertifyArgs, out: &mut Out) -> Result<i32, Failure> {
    let net = load_network(&args.network)?;
    if let Some(path) = &args.check {
        let claim = parse_certificate(&read(path)?)?;
        let target = match claim.join {
            Some(t) => cubes2::join_first_layer(&net, t)?,
            None => net,
        };
        if claim.n != target.n() || claim.layer != target.depth() {
            out.kv("valid", "false");
            return Err(Failure {
                code: 1,
                message: format!(
                    "certificate is for n = {}, layer {}; network has n = {}, depth {}",
                    claim.n,
                    claim.layer,
                    target.n(),
                    target.depth()
                ),
            });
        }
        let cert = certify_last_layer_arity(&target, &claim.branch)?;
        let valid = cert.certified_bound == claim.bound;
        out.kv("valid", valid);
        out.kv("bound", cert.certified_bound);
        return Ok(if valid { 0 } else { 1 });
    }
    let strategy = args.strategy.ok_or_else(|| usage("--strategy or --check is required"))?;
    let n = net.n();
    let input = parse_input_bits(args.input.as_deref(), n)?;
    let cert: ArityCertificate = match strategy {
        Strategy::Depth2 => certify_last_layer_arity(&net, &find_branch_depth2(&net)?)?,
        Strategy::Greedy => {
            out.kv("note", "heuristic strategy, no guarantee");
            certify_last_layer_arity(&net, &greedy_branch(&net)?)?
        }
        Strategy::Cubes3 => {
            let mapped = cubes::cube_config_from_network(&net, &input)?;
            let plan = cubes::solve_cubes(&mapped.config)?;
            let branch = cubes::branch_from_plan(&net, &input, &plan)?;
            certify_last_layer_arity(&net, &branch)?
        }
        Strategy::Cubes4 => {
            let params = SolverParams {
                t_divisor: args.t_divisor,
                substack_length: args.window,
                retry_budget: args.retries,
                seed: require_seed(args.seed)?,
            };
            out.kv("seed", params.seed);
            let zeros = input.iter().filter(|&&b| !b).count();
            let (t, l) = params.resolve(zeros)?;
            out.kv("t", t);
            out.kv("l", l);
            let joined = cubes2::join_first_layer(&net, t)?;
            let mapped = cubes2::two_sided_from_network(&joined, &input, t)?;
            let selection = cubes2::select_substacks(&mapped.config, &params)?;
            let sol = cubes2::solve_second_cubes(&mapped.config, &selection)?;
            let branch = cubes2::branch_from_plan2(&joined, &input, &selection, &sol.plan)?;
            let mut cert = certify_last_layer_arity(&joined, &branch)?;
            cert.joined_first_layer = Some(t);
            cert
        }
    };
    out.kv("layer", cert.layer);
    out.kv("bound", cert.certified_bound);
    out.kv("branch_length", cert.branch.len());
    if let Some(p) = &args.output {
        write_or_print(&Some(p.clone()), &certificate_to_text(&cert), out)?;
        out.kv("certificate", p.display());
    }
    Ok(0)
}

fn report_cube_run(out: &mut Out, n: usize, best_run: usize) -> i32 {
    let target = n / 2 + 1;
    out.kv("best_run", best_run);
    out.kv("target", target);
    if best_run >= target {
        0
    } else {
        1
    }
}

fn cubes_command(command: CubesCommand, out: &mut Out) -> Result<i32, Failure> {
    match command {
        CubesCommand::Map { network, input, relaxed, output } => {
            let net = load_network(&network)?;
            let bits = parse_input_bits(input.as_deref(), net.n())?;
            let mapped = if relaxed {
                cubes::cube_config_from_network_relaxed(&net, &bits)?
            } else {
                cubes::cube_config_from_network(&net, &bits)?
            };
            write_or_print(&output, &cubes::config_to_text(&mapped.config), out)?;
            Ok(0)
        }
        CubesCommand::Solve { config, output } => {
            let config = cubes::parse_config(&read(&config)?)?;
            let sol = cubes::solve_cubes_detailed(&config)?;
            write_or_print(&output, &cubes::plan_to_text(&sol.plan), out)?;
            out.kv("n", config.total());
            out.kv("steps", sol.plan.steps.len());
            out.kv("phase1_removed", sol.phase1_removed);
            out.kv("stuck_residue", sol.stuck_residue);
            out.kv("final_residue", sol.final_residue);
            Ok(report_cube_run(out, config.total(), sol.report.best_run))
        }
        CubesCommand::Replay { config, plan } => {
            let config = cubes::parse_config(&read(&config)?)?;
            let plan = cubes::parse_plan(&read(&plan)?)?;
            let report = cubes::replay_cubes(&config, &plan)?;
            out.kv("states", report.flags.len());
            out.kv("best_start", report.best_start);
            Ok(report_cube_run(out, config.total(), report.best_run))
        }
        CubesCommand::Selfcheck { seed, instances, min_n, max_n } => {
            let seed = require_seed(seed)?;
            if min_n < 4 || max_n < min_n {
                return Err(usage("need 4 <= min-n <= max-n"));
            }
            out.kv("seed", seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failures = 0;
            let mut worst_margin = i64::MAX;
            for _ in 0..instances {
                let n = rng.gen_range(min_n..=max_n);
                let config = cubes::random_config(n, &mut rng);
                match check_cube_instance(&config) {
                    Ok(margin) => worst_margin = worst_margin.min(margin),
                    Err(_) => failures += 1,
                }
            }
            out.kv("instances", instances);
            out.kv("violations", failures);
            out.kv("min_margin", worst_margin);
            Ok(if failures == 0 { 0 } else { 1 })
        }
    }
}

/// Solves one configuration and returns `best_run - (⌊n/2⌋+1)`, or an error
/// if any guarantee fails.
pub fn check_cube_instance(config: &CubeConfig) -> Result<i64, Error> {
    let n = config.total();
    let sol = cubes::solve_cubes_detailed(config)?;
    let replayed = cubes::replay_cubes(config, &sol.plan)?;
    if replayed.best_run < n / 2 + 1 || replayed != sol.report {
        return Err(Error::Internal(format!("guarantee failed on {config:?}")));
    }
    Ok(replayed.best_run as i64 - (n / 2 + 1) as i64)
}

fn cubes2_command(command: Cubes2Command, out: &mut Out) -> Result<i32, Failure> {
    match command {
        Cubes2Command::Generate { n, params, output } => {
            let p = params.params()?;
            let t = p.t(n);
            out.kv("seed", p.seed);
            let config = cubes2::uniform_config(n, t, p.seed)?;
            write_or_print(&output, &cubes2::config_to_text(&config), out)?;
            out.kv("t", t);
            out.kv("stacks", config.stacks());
            Ok(0)
        }
        Cubes2Command::Select { config, params, output } => {
            let p = params.params()?;
            let config = cubes2::parse_config(&read(&config)?)?;
            out.kv("seed", p.seed);
            let selection = cubes2::select_substacks(&config, &p)?;
            write_or_print(&output, &cubes2::selection_to_text(&selection), out)?;
            out.kv("attempts", selection.attempts);
            out.kv("max_spread", selection.max_spread);
            out.kv("meets_tenth", selection.meets_tenth);
            Ok(0)
        }
        Cubes2Command::Solve { config, selection, t_divisor, output } => {
            let config = cubes2::parse_config(&read(&config)?)?;
            let selection = cubes2::parse_selection(&read(&selection)?, &config)?;
            let sol = cubes2::solve_second_cubes(&config, &selection)?;
            write_or_print(&output, &cubes2::plan_to_text(&sol.plan), out)?;
            let t = SolverParams { t_divisor, ..Default::default() }.t(config.total());
            Ok(report_second_run(out, &config, &selection, &sol.report, t))
        }
        Cubes2Command::Replay { config, selection, plan, t_divisor } => {
            let config = cubes2::parse_config(&read(&config)?)?;
            let selection = cubes2::parse_selection(&read(&selection)?, &config)?;
            let plan = cubes2::parse_plan(&read(&plan)?)?;
            let report = cubes2::replay_second(&config, &selection, &plan)?;
            let t = SolverParams { t_divisor, ..Default::default() }.t(config.total());
            Ok(report_second_run(out, &config, &selection, &report, t))
        }
        Cubes2Command::Selfcheck { n, instances, params } => {
            let base = params.params()?;
            out.kv("seed", base.seed);
            let (t, l) = base.resolve(n)?;
            let mut failures = 0;
            for i in 0..instances {
                let p = SolverParams { seed: base.seed.wrapping_add(i as u64), ..base };
                let config = cubes2::uniform_config(n, t, p.seed)?;
                let ok = match cubes2::select_substacks(&config, &p)
                    .and_then(|sel| cubes2::solve_second_cubes(&config, &sel))
                {
                    Ok(sol) => {
                        let r = &sol.report;
                        cubes2::meets_guarantee(r.run.best_run, config.stacks(), l, t)
                            && r.singleton_prefix <= t
                            && r.monotone
                    }
                    Err(_) => false,
                };
                if !ok {
                    failures += 1;
                }
            }
            out.kv("t", t);
            out.kv("l", l);
            out.kv("instances", instances);
            out.kv("violations", failures);
            Ok(if failures == 0 { 0 } else { 1 })
        }
    }
}

fn report_second_run(
    out: &mut Out,
    config: &cubes2::TwoSidedConfig,
    selection: &cubes2::SubstackSelection,
    report: &cubes2::SecondReport,
    t: usize,
) -> i32 {
    let m = config.stacks();
    let l = selection.length;
    out.kv("states", report.sizes.len());
    out.kv("best_run", report.run.best_run);
    out.kv("guarantee", format!("{:.1}", cubes2::guaranteed_run(m, l, t)));
    out.kv("singleton_prefix", report.singleton_prefix);
    out.kv("monotone", report.monotone);
    let ok = cubes2::meets_guarantee(report.run.best_run, m, l, t) && report.singleton_prefix <= t && report.monotone;
    if ok {
        0
    } else {
        1
    }
}
