//! Browser demo: generate a scenario, solve it with any algorithm, and watch
//! the lazy search grow batch by batch.

use std::time::Duration;

use lacas::bench::{execute, explore, AlgorithmSpec, Report};
use lacas::render::{render_svg, Overlay};
use lacas::scenarios::{generate_instance, Family, ScenarioSpec};
use lacas::{Budget, ProblemInstance};
use serde::Serialize;
use wasm_bindgen::prelude::*;

const SVG_SIZE: f64 = 640.0;

#[derive(Serialize)]
struct SolveResult {
    algorithm: String,
    outcome: String,
    cost: Option<f64>,
    proven_optimal: bool,
    iterations: u64,
    connect_calls: u64,
    elapsed_ms: f64,
    /// `[elapsed ms, cost]` per improvement.
    improvements: Vec<[f64; 2]>,
    svg: String,
}

#[wasm_bindgen]
pub struct Demo {
    instance: ProblemInstance,
    seed: u64,
}

fn parse_spec(algo: &str) -> Result<AlgorithmSpec, JsError> {
    algo.parse::<AlgorithmSpec>()
        .map_err(|e| JsError::new(&e.to_string()))
}

#[wasm_bindgen]
impl Demo {
    /// `locations = 0` keeps the family default.
    #[wasm_bindgen(constructor)]
    pub fn new(family: &str, seed: u64, locations: usize) -> Result<Demo, JsError> {
        let family: Family = family
            .parse()
            .map_err(|e: lacas::scenarios::UnknownFamily| JsError::new(&e.to_string()))?;
        let mut spec = ScenarioSpec::new(family, seed);
        if locations > 0 {
            spec = spec.with_locations(locations);
        }
        Ok(Demo {
            instance: generate_instance(&spec),
            seed,
        })
    }

    pub fn families() -> Vec<String> {
        Family::ALL.iter().map(|f| f.name().to_string()).collect()
    }

    #[wasm_bindgen(getter)]
    pub fn locations(&self) -> usize {
        self.instance.len()
    }

    #[wasm_bindgen(getter)]
    pub fn obstacles(&self) -> usize {
        self.instance.obstacles().len()
    }

    pub fn svg(&self) -> String {
        render_svg(&self.instance, &Overlay::default(), SVG_SIZE)
    }

    /// Runs `algo` (e.g. `lacas*`, `astar-k,k=5`) for at most `timeout_ms`; returns JSON.
    pub fn solve(&self, algo: &str, timeout_ms: u32) -> Result<String, JsError> {
        let spec = parse_spec(algo)?;
        let budget = Budget::time(Duration::from_millis(timeout_ms.into()));
        let report = execute(&self.instance, &spec, self.seed, budget);
        let path = report.waypoints(&self.instance);
        let (outcome, cost, proven_optimal, iterations, connect_calls, elapsed, improvements) =
            match &report {
                Report::Graph(r) => summary(r),
                Report::Waypoints(r) => summary(r),
            };
        let mut overlay = Overlay::default();
        if let Some(path) = path {
            overlay.paths.push((spec.to_string(), path));
        }
        let result = SolveResult {
            algorithm: spec.to_string(),
            outcome,
            cost,
            proven_optimal,
            iterations,
            connect_calls,
            elapsed_ms: elapsed,
            improvements,
            svg: render_svg(&self.instance, &overlay, SVG_SIZE),
        };
        serde_json::to_string(&result).map_err(|e| JsError::new(&e.to_string()))
    }

    /// SVG of what `algo` has explored after `iterations` iterations.
    pub fn explore(&self, algo: &str, iterations: u32) -> Result<String, JsError> {
        let spec = parse_spec(algo)?;
        let (report, arcs) = explore(
            &self.instance,
            &spec,
            self.seed,
            Budget::iterations(iterations.into()),
        );
        let mut overlay = Overlay {
            arcs,
            paths: Vec::new(),
        };
        if let Some(path) = report.waypoints(&self.instance) {
            overlay.paths.push((spec.to_string(), path));
        }
        Ok(render_svg(&self.instance, &overlay, SVG_SIZE))
    }
}

type Summary = (String, Option<f64>, bool, u64, u64, f64, Vec<[f64; 2]>);

fn summary<P>(r: &lacas::SearchReport<P>) -> Summary {
    (
        r.outcome.kind().to_string(),
        r.outcome.cost(),
        matches!(
            r.outcome,
            lacas::SearchOutcome::Solution {
                proven_optimal: true,
                ..
            }
        ),
        r.iterations,
        r.connect_calls,
        r.elapsed.as_secs_f64() * 1e3,
        r.improvements
            .iter()
            .map(|i| [i.elapsed.as_secs_f64() * 1e3, i.cost])
            .collect(),
    )
}
