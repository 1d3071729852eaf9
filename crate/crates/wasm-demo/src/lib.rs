//! Browser front end for `sortnet`.
//!
//! Each operation has a plain Rust function returning JSON (tested
//! natively) and a thin `wasm_bindgen` export used by `www/main.js`.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use wasm_bindgen::prelude::*;

use sortnet::access::certify_last_layer_arity;
use sortnet::constructions::{build_columnsort4, build_depth3, figure1};
use sortnet::cubes::{self, CubeConfig};
use sortnet::Network;

#[derive(Serialize)]
struct TraceView {
    n: usize,
    arity: usize,
    /// 0-based members of every comparator, per layer.
    layers: Vec<Vec<Vec<usize>>>,
    arrays: Vec<Vec<i64>>,
}

#[derive(Serialize)]
struct CubesView {
    stacks: Vec<Vec<u32>>,
    /// 0-based stack index of every removal.
    steps: Vec<usize>,
    flags: Vec<bool>,
    best_run: usize,
    best_start: usize,
    target: usize,
}

#[derive(Serialize)]
struct CertificateView {
    n: usize,
    layers: Vec<Vec<Vec<usize>>>,
    stacks: Vec<Vec<u32>>,
    /// 0-based input position flipped at each step.
    flips: Vec<usize>,
    bound: usize,
    target: usize,
}

fn json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

fn layers_of(net: &Network) -> Vec<Vec<Vec<usize>>> {
    net.layers().iter().map(|l| l.blocks()).collect()
}

fn parse_values(text: &str) -> Result<Vec<i64>, String> {
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<i64>().map_err(|_| format!("`{s}` is not an integer")))
        .collect()
}

/// Builds a network and traces one integer input through it. An empty
/// input draws a random permutation from `seed`.
pub fn trace_json(construction: &str, n: usize, input: &str, seed: u64) -> Result<String, String> {
    let net = match construction {
        "figure1" => figure1(),
        "depth3" => build_depth3(n).map_err(|e| e.to_string())?,
        "columnsort4" => build_columnsort4(n).map_err(|e| e.to_string())?,
        other => return Err(format!("unknown construction `{other}`")),
    };
    let mut values = parse_values(input)?;
    if values.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        values = (1..=net.n() as i64).collect();
        for i in (1..values.len()).rev() {
            let j = (rand_chacha::rand_core::RngCore::next_u64(&mut rng) % (i as u64 + 1)) as usize;
            values.swap(i, j);
        }
    }
    let trace = net.trace(&values).map_err(|e| e.to_string())?;
    json(&TraceView { n: net.n(), arity: net.arity(), layers: layers_of(&net), arrays: trace.arrays })
}

/// Solves a cube game, either parsed from `cubes v1` text or, when `text` is
/// blank, drawn at random with `n` cubes.
pub fn cubes_json(text: &str, n: usize, seed: u64) -> Result<String, String> {
    let config: CubeConfig = if text.trim().is_empty() {
        if n < 4 {
            return Err("random games need n >= 4".into());
        }
        cubes::random_config(n, &mut ChaCha8Rng::seed_from_u64(seed))
    } else {
        cubes::parse_config(text).map_err(|e| e.to_string())?
    };
    let sol = cubes::solve_cubes_detailed(&config).map_err(|e| e.to_string())?;
    let report = cubes::replay_cubes(&config, &sol.plan).map_err(|e| e.to_string())?;
    json(&CubesView {
        stacks: config.stacks.clone(),
        steps: sol.plan.steps,
        flags: report.flags,
        best_run: report.best_run,
        best_start: report.best_start,
        target: config.total() / 2 + 1,
    })
}

/// Runs the depth-3 lower-bound pipeline on the network with pair layers
/// `{1,2},{3,4},...` and `{2,3},...,{n,1}` followed by one full comparator.
pub fn certify_json(n: usize) -> Result<String, String> {
    if n < 6 || n % 2 == 1 {
        return Err("n must be even and at least 6".into());
    }
    let first: Vec<Vec<usize>> = (0..n / 2).map(|i| vec![2 * i, 2 * i + 1]).collect();
    let second: Vec<Vec<usize>> = (0..n / 2).map(|i| vec![2 * i + 1, (2 * i + 2) % n]).collect();
    let net = Network::new(n, vec![first, second, vec![(0..n).collect()]]).map_err(|e| e.to_string())?;
    let input = vec![false; n];
    let run = || -> sortnet::Result<(CubeConfig, sortnet::access::ArityCertificate)> {
        let mapped = cubes::cube_config_from_network(&net, &input)?;
        let plan = cubes::solve_cubes(&mapped.config)?;
        let branch = cubes::branch_from_plan(&net, &input, &plan)?;
        Ok((mapped.config, certify_last_layer_arity(&net, &branch)?))
    };
    let (config, cert) = run().map_err(|e| e.to_string())?;
    json(&CertificateView {
        n,
        layers: layers_of(&net),
        stacks: config.stacks,
        flips: cert.branch.flips(),
        bound: cert.certified_bound,
        target: n / 2 + 2,
    })
}

#[wasm_bindgen]
pub fn trace(construction: &str, n: usize, input: &str, seed: u64) -> Result<String, JsError> {
    trace_json(construction, n, input, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn cubes_game(text: &str, n: usize, seed: u64) -> Result<String, JsError> {
    cubes_json(text, n, seed).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn certify_pairs(n: usize) -> Result<String, JsError> {
    certify_json(n).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn figure1_trace() {
        let v: Value = serde_json::from_str(&trace_json("figure1", 0, "1 5 8 2 42 27 7 4", 0).unwrap()).unwrap();
        assert_eq!(v["arrays"][3], serde_json::json!([1, 2, 4, 5, 7, 8, 27, 42]));
        assert_eq!(v["layers"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn random_trace_sorts() {
        let v: Value = serde_json::from_str(&trace_json("columnsort4", 30, "", 7).unwrap()).unwrap();
        let out: Vec<i64> = serde_json::from_value(v["arrays"][4].clone()).unwrap();
        assert_eq!(out, (1..=30).collect::<Vec<_>>());
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(trace_json("depth3", 4, "1 x 3 4", 0).is_err());
        assert!(trace_json("depth3", 4, "1 2 3", 0).is_err());
        assert!(trace_json("bogus", 4, "", 0).is_err());
    }

    #[test]
    fn cubes_reach_target() {
        for seed in 0..20 {
            let v: Value = serde_json::from_str(&cubes_json("", 40, seed).unwrap()).unwrap();
            assert!(v["best_run"].as_u64() >= v["target"].as_u64());
        }
        let v: Value = serde_json::from_str(&cubes_json("cubes v1\n0 1\n1 2\n2 3\n3 0\n", 0, 0).unwrap()).unwrap();
        assert_eq!(v["stacks"], serde_json::json!([[0, 1], [1, 2], [2, 3], [3, 0]]));
        assert!(cubes_json("cubes v1\n0 0\n0 0 1\n", 0, 0).is_err());
    }

    #[test]
    fn pairs_certificate() {
        let v: Value = serde_json::from_str(&certify_json(10).unwrap()).unwrap();
        assert_eq!(v["bound"], 10);
        assert_eq!(v["flips"].as_array().unwrap().len(), 8);
        assert!(certify_json(7).is_err());
    }
}
