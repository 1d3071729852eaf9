use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn sortnet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sortnet")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_string_lossy().into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = path(dir, name);
    fs::write(&p, text).unwrap();
    p
}

const PAIRS_8: &str = "sortnet v1\nn 8\nlayer {1 2} {3 4} {5 6} {7 8}\nlayer {2 3} {4 5} {6 7} {8 1}\nlayer {1 2 3 4 5 6 7 8}\n";

#[test]
fn build_then_verify() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "d3.txt");
    assert_eq!(sortnet(&["build", "--construction", "depth3", "--n", "10", "-o", &file]).status.code(), Some(0));
    assert!(fs::read_to_string(&file).unwrap().starts_with("sortnet v1\nn 10\n"));
    let o = sortnet(&["verify", &file]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict sorted"));
}

#[test]
fn counterexample_exits_one() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "id.txt", "sortnet v1\nn 2\nlayer {1} {2}\n");
    let o = sortnet(&["verify", &file]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample 1 0"));
}

#[test]
fn random_mode_needs_seed() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "c4.txt");
    sortnet(&["build", "--construction", "columnsort4", "--n", "100", "-o", &file]);
    assert_eq!(sortnet(&["verify", &file, "--mode", "random"]).status.code(), Some(2));
    let o = sortnet(&["verify", &file, "--mode", "random", "--trials", "5000", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("seed 3"));
}

#[test]
fn malformed_network_exits_two() {
    let dir = TempDir::new().unwrap();
    let file = write(&dir, "bad.txt", "sortnet v1\nn 3\nlayer {1 2}\n");
    let o = sortnet(&["info", &file]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    assert_eq!(sortnet(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(sortnet(&["--help"]).status.code(), Some(0));
}

#[test]
fn eval_prints_figure1_arrays() {
    let dir = TempDir::new().unwrap();
    let file = path(&dir, "f1.txt");
    sortnet(&["build", "--construction", "figure1", "-o", &file]);
    let o = sortnet(&["eval", &file, "--input", "1 5 8 2 42 27 7 4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("output 1 2 4 5 7 8 27 42"));
}

#[test]
fn rows_format_is_tab_separated() {
    let o = sortnet(&["--format", "rows", "minarity", "--n", "4", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().any(|l| l == "k_min\t2"));
}

#[test]
fn bounds_report_connectivity() {
    let o = sortnet(&["bounds", "--n", "16", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("connectivity_bound 3"));
    assert!(text.contains("exact 8"));
}

#[test]
fn certificate_round_trip() {
    let dir = TempDir::new().unwrap();
    let net = write(&dir, "pairs.txt", PAIRS_8);
    let cert = path(&dir, "cert.txt");
    let o = sortnet(&["certify", &net, "--strategy", "cubes3", "-o", &cert]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("bound 8"));
    let o = sortnet(&["certify", &net, "--check", &cert]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid true"));

    let forged = fs::read_to_string(&cert).unwrap().replace("bound 8", "bound 9");
    let forged = write(&dir, "forged.txt", &forged);
    assert_eq!(sortnet(&["certify", &net, "--check", &forged]).status.code(), Some(1));
}

#[test]
fn cubes4_certificate_on_joined_network() {
    let dir = TempDir::new().unwrap();
    let n = 64;
    let pairs: Vec<String> = (0..n / 2).map(|i| format!("{{{} {}}}", 2 * i + 1, 2 * i + 2)).collect();
    let blocks = |w: usize| -> String {
        (0..n / w)
            .map(|b| format!("{{{}}}", (1..=w).map(|i| (b * w + i).to_string()).collect::<Vec<_>>().join(" ")))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let all: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let text = format!(
        "sortnet v1\nn {n}\nlayer {}\nlayer {}\nlayer {}\nlayer {{{}}}\n",
        pairs.join(" "),
        blocks(2),
        blocks(2),
        all.join(" ")
    );
    let net = write(&dir, "d4.txt", &text);
    let cert = path(&dir, "cert4.txt");
    let args = ["certify", &net, "--strategy", "cubes4", "--t-divisor", "4", "--window", "2", "--seed", "5", "-o", &cert];
    let o = sortnet(&args);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(fs::read_to_string(&cert).unwrap().contains("join "));
    let o = sortnet(&["certify", &net, "--check", &cert]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(sortnet(&["certify", &net, "--strategy", "cubes4"]).status.code(), Some(2));
}

#[test]
fn cubes_map_solve_replay() {
    let dir = TempDir::new().unwrap();
    let net = write(&dir, "pairs.txt", PAIRS_8);
    let config = path(&dir, "cfg.txt");
    let plan = path(&dir, "plan.txt");
    assert_eq!(sortnet(&["cubes", "map", &net, "-o", &config]).status.code(), Some(0));
    assert_eq!(fs::read_to_string(&config).unwrap(), "cubes v1\n0 1\n1 2\n2 3\n3 0\n");
    assert_eq!(sortnet(&["cubes", "solve", &config, "-o", &plan]).status.code(), Some(0));
    let o = sortnet(&["cubes", "replay", &config, &plan]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("target 5"));

    let short = write(&dir, "short.txt", "1\n");
    assert_eq!(sortnet(&["cubes", "replay", &config, &short]).status.code(), Some(1));
}

#[test]
fn cubes_selfcheck() {
    let o = sortnet(&["cubes", "selfcheck", "--seed", "11", "--instances", "300"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("violations 0"));
    assert_eq!(sortnet(&["cubes", "selfcheck"]).status.code(), Some(2));
}

#[test]
fn cubes2_generate_select_solve_replay() {
    let dir = TempDir::new().unwrap();
    let config = path(&dir, "c2.txt");
    let selection = path(&dir, "sel.txt");
    let plan = path(&dir, "plan.txt");
    let common = ["--t-divisor", "20"];
    let run = |args: &[&str]| {
        let mut all = args.to_vec();
        all.extend_from_slice(&common);
        sortnet(&all)
    };
    assert_eq!(run(&["cubes2", "generate", "--n", "100000", "--seed", "1", "-o", &config]).status.code(), Some(0));
    assert_eq!(run(&["cubes2", "select", &config, "--seed", "1", "-o", &selection]).status.code(), Some(0));
    assert!(Path::new(&selection).exists());
    assert_eq!(run(&["cubes2", "solve", &config, &selection, "-o", &plan]).status.code(), Some(0));
    let o = run(&["cubes2", "replay", &config, &selection, &plan]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("monotone true"));
    let o = run(&["cubes2", "selfcheck", "--n", "100000", "--seed", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("violations 0"));
}

#[test]
fn jobs_flag_is_accepted() {
    let o = sortnet(&["--jobs", "2", "minarity", "--n", "5", "--d", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k_min 3"));
}
