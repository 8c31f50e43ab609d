//! Browser front end for `locbound`.
//!
//! Three operations are exported to JavaScript, each taking plain values
//! and returning a JSON string:
//!
//! * `multipartite(parts)`, `random_graph(n, p_num, p_den, seed)` and
//!   `from_graph6(s)` build a graph and return its graph6 string with an
//!   edge list for drawing.
//! * `analyze(graph6, t_max)` returns the bound report for every `t` in
//!   `2..=t_max`.
//! * `descend(graph6, t)` evaluates the potential at the uniform point and
//!   traces a descent from it.
//!
//! The `*_json` functions are ordinary Rust so they can be tested natively.

use locbound::bounds::{report_with_profile, BoundReport};
use locbound::clique::{vertex_clique_numbers, WorkBudget};
use locbound::format::{parse_graph6, to_graph6};
use locbound::graph::{generate_complete_multipartite, generate_random};
use locbound::rational::{to_decimal, Rational};
use locbound::simplex::{check_minimizer_structure, MinimizerStructure, Potential, SimplexPoint};
use locbound::{Graph, PartSpec};
use num_rational::Ratio;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest graph the page will analyze; keeps the tab responsive.
pub const DEMO_MAX_N: usize = 40;
/// Node budget for each clique computation.
const DEMO_BUDGET: u64 = 5_000_000;

fn exact(r: &Rational) -> Value {
    json!({ "exact": r.to_string(), "approx": to_decimal(r) })
}

fn graph_json(g: &Graph) -> Result<String, String> {
    let g6 = to_graph6(g).map_err(|e| e.to_string())?;
    let edges: Vec<[usize; 2]> = g.edges().map(|(u, v)| [u, v]).collect();
    Ok(json!({ "graph6": g6, "n": g.n(), "edges": edges }).to_string())
}

fn load(g6: &str) -> Result<Graph, String> {
    let g = parse_graph6(g6).map_err(|e| e.to_string())?;
    if g.n() > DEMO_MAX_N {
        return Err(format!("the demo handles at most {DEMO_MAX_N} vertices, got {}", g.n()));
    }
    Ok(g)
}

/// Validates a graph6 string and returns it with its edge list.
pub fn graph6_json(g6: &str) -> Result<String, String> {
    graph_json(&load(g6.trim())?)
}

/// `parts` is a comma-separated list of part sizes such as `"2,2,2"`.
pub fn multipartite_json(parts: &str) -> Result<String, String> {
    let sizes = parts
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| format!("bad part size {s:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    let spec = PartSpec::new(sizes).map_err(|e| e.to_string())?;
    if spec.order() > DEMO_MAX_N {
        return Err(format!("the demo handles at most {DEMO_MAX_N} vertices"));
    }
    graph_json(&generate_complete_multipartite(&spec))
}

pub fn random_graph_json(n: usize, p_num: u64, p_den: u64, seed: u64) -> Result<String, String> {
    if n > DEMO_MAX_N {
        return Err(format!("the demo handles at most {DEMO_MAX_N} vertices"));
    }
    if p_den == 0 || p_num > p_den {
        return Err("p must lie in [0, 1]".into());
    }
    let g = generate_random(n, Ratio::new(p_num, p_den), seed).map_err(|e| e.to_string())?;
    graph_json(&g)
}

fn report_json(r: &BoundReport) -> Value {
    json!({
        "t": r.t,
        "N": r.true_count.to_string(),
        "localized": exact(&r.localized_zykov),
        "zykov": exact(&r.zykov_classical),
        "gap": exact(&r.gap()),
        "kirsch_nir_sum": exact(&r.kirsch_nir_sum),
        "kirsch_nir_cap": r.kirsch_nir_cap.to_string(),
        "tight": r.is_tight,
    })
}

pub fn analyze_json(g6: &str, t_max: usize) -> Result<String, String> {
    let g = load(g6)?;
    if !(2..=8).contains(&t_max) {
        return Err("t_max must lie in [2, 8]".into());
    }
    let profile = vertex_clique_numbers(&g);
    let mut budget = WorkBudget::limited(DEMO_BUDGET);
    let reports = (2..=t_max)
        .map(|t| report_with_profile(&g, t, &profile, &mut budget))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| e.to_string())?;
    let first = &reports[0];
    Ok(json!({
        "n": g.n(),
        "m": g.m(),
        "omega": profile.omega,
        "c": profile.c,
        "certificate": first.extremal_certificate.clone().map(Vec::from),
        "edge_localized_sum": exact(&first.edge_localized_sum),
        "edge_localized_cap": first.edge_localized_cap.to_string(),
        "reports": reports.iter().map(report_json).collect::<Vec<_>>(),
    })
    .to_string())
}

pub fn descend_json(g6: &str, t: usize) -> Result<String, String> {
    let g = load(g6)?;
    if g.n() == 0 {
        return Err("the graph has no vertices".into());
    }
    let profile = vertex_clique_numbers(&g);
    let pot = Potential::new(&g, t, &profile).map_err(|e| e.to_string())?;
    let x0 = SimplexPoint::uniform(g.n()).map_err(|e| e.to_string())?;
    let start = pot.eval(&x0).map_err(|e| e.to_string())?;
    let trace = pot.descend(&x0).map_err(|e| e.to_string())?;
    let structure = check_minimizer_structure(&pot, &trace).map_err(|e| e.to_string())?;
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "i": s.i,
                "j": s.j,
                "epsilon": s.epsilon.to_string(),
                "delta": s.delta_ij.to_string(),
                "phi": exact(&s.phi_after),
            })
        })
        .collect();
    Ok(json!({
        "t": t,
        "a": exact(&start.a),
        "b": exact(&start.b),
        "phi_uniform": exact(&start.phi),
        "steps": steps,
        "end_point": trace.end.coords().iter().map(Rational::to_string).collect::<Vec<_>>(),
        "end_support": trace.end.support_vec(),
        "end_support_is_clique": trace.end_support_is_clique,
        "minimizer_structure": match structure.passes() {
            None if structure == MinimizerStructure::Vacuous => "vacuous (t exceeds the clique number)",
            None => "not certified",
            Some(true) => "pass",
            Some(false) => "fail",
        },
    })
    .to_string())
}

#[wasm_bindgen]
pub fn from_graph6(graph6: &str) -> Result<String, JsValue> {
    graph6_json(graph6).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn multipartite(parts: &str) -> Result<String, JsValue> {
    multipartite_json(parts).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn random_graph(n: usize, p_num: u32, p_den: u32, seed: u32) -> Result<String, JsValue> {
    random_graph_json(n, p_num.into(), p_den.into(), seed.into()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn analyze(graph6: &str, t_max: usize) -> Result<String, JsValue> {
    analyze_json(graph6, t_max).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn descend(graph6: &str, t: usize) -> Result<String, JsValue> {
    descend_json(graph6, t).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn version() -> String {
    locbound::VERSION.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn octahedron_round_trip() {
        let g = parse(&multipartite_json("2,2,2").unwrap());
        assert_eq!(g["graph6"], "E]~o");
        assert_eq!(g["edges"].as_array().unwrap().len(), 12);
        let a = parse(&analyze_json("E]~o", 3).unwrap());
        assert_eq!(a["certificate"], json!([2, 2, 2]));
        assert_eq!(a["reports"][0]["localized"]["exact"], "12");
        assert_eq!(a["reports"][1]["tight"], true);
    }

    #[test]
    fn c5_descent_matches_hand_computation() {
        let d = parse(&descend_json("Dhc", 2).unwrap());
        assert_eq!(d["phi_uniform"]["exact"], "1/20");
        assert_eq!(d["steps"].as_array().unwrap().len(), 3);
        assert_eq!(d["end_point"], json!(["3/5", "2/5", "0", "0", "0"]));
        let d = parse(&descend_json("Dhc", 3).unwrap());
        assert!(d["minimizer_structure"].as_str().unwrap().starts_with("vacuous"));
    }

    #[test]
    fn random_is_deterministic() {
        assert_eq!(random_graph_json(12, 1, 2, 9), random_graph_json(12, 1, 2, 9));
        assert!(random_graph_json(12, 3, 2, 9).is_err());
        assert!(random_graph_json(DEMO_MAX_N + 1, 1, 2, 9).is_err());
    }

    #[test]
    fn bad_inputs_are_errors() {
        assert!(multipartite_json("2,x").is_err());
        assert!(multipartite_json("0").is_err());
        assert!(analyze_json("D?", 3).is_err());
        assert!(analyze_json("E]~o", 1).is_err());
        assert!(descend_json("?", 2).is_err());
        assert!(graph6_json("D?").is_err());
        assert_eq!(parse(&graph6_json(" C{\n").unwrap())["edges"].as_array().unwrap().len(), 4);
    }
}
