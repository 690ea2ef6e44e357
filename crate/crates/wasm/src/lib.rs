//! Browser bindings: classify an ideal, list a Taylor layer, reduce a pair.
//! Every call takes the `.ideal` text and returns JSON.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use rees_kit::classify::classify;
use rees_kit::demos;
use rees_kit::graph::build_graph;
use rees_kit::ideal_file::{parse_ideal, render_ideal};
use rees_kit::reduce::{reduce_to_normal, Reduction};
use rees_kit::rees::{taylor_binomial, taylor_layer, IndexSequence};
use rees_kit::report::ReportJson;
use rees_kit::SquareFreeIdeal;

fn load(text: &str) -> Result<SquareFreeIdeal, String> {
    parse_ideal(text).map_err(|e| format!("line {e}"))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

pub fn classify_json(text: &str) -> Result<Value, String> {
    let ideal = load(text)?;
    let report = ReportJson::build(&ideal, &classify(&ideal));
    let g = build_graph(&ideal);
    Ok(json!({
        "report": report,
        "vertices": g.vertices(),
        "labels": ideal.gens().iter().map(|m| ideal.render(m)).collect::<Vec<_>>(),
    }))
}

pub fn taylor_json(text: &str, degree: usize) -> Result<Value, String> {
    let ideal = load(text)?;
    if degree == 0 || degree > 6 {
        return Err("degree must be between 1 and 6".into());
    }
    let layer = taylor_layer(&ideal, degree);
    let rows: Vec<Value> = layer
        .iter()
        .take(500)
        .map(
            |b| json!({ "alpha": b.alpha.entries(), "beta": b.beta.entries(), "binomial": b.render(&ideal) }),
        )
        .collect();
    Ok(json!({ "degree": degree, "total": layer.len(), "binomials": rows }))
}

fn parse_seq(ideal: &SquareFreeIdeal, s: &str) -> Result<IndexSequence, String> {
    let v = s
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| format!("bad index {t:?}")))
        .collect::<Result<Vec<_>, _>>()?;
    for &i in &v {
        ideal.check_index(i).map_err(|e| e.to_string())?;
    }
    IndexSequence::from_unsorted(v).map_err(|e| e.to_string())
}

pub fn reduce_json(text: &str, alpha: &str, beta: &str) -> Result<Value, String> {
    let ideal = load(text)?;
    let a = parse_seq(&ideal, alpha)?;
    let b = parse_seq(&ideal, beta)?;
    let target = taylor_binomial(&ideal, &a, &b).map_err(|e| e.to_string())?;
    let head = json!({ "alpha": a.entries(), "beta": b.entries(), "binomial": target.render(&ideal) });
    Ok(match reduce_to_normal(&ideal, &a, &b) {
        Reduction::Reduced {
            chain,
            terminal_degree,
        } => json!({
            "target": head,
            "outcome": "reduced",
            "terminal_degree": terminal_degree,
            "steps": chain.iter().map(|c| json!({ "rule": c.provenance(), "identity": c.render(&ideal) })).collect::<Vec<_>>(),
        }),
        Reduction::Stuck { witness } => json!({
            "target": head,
            "outcome": "stuck",
            "witness": witness.map(|w| json!({
                "summary": w.render(&ideal),
                "walk": w.closed_walk(&ideal).map(|x| x.render()),
            })),
        }),
    })
}

#[wasm_bindgen(js_name = classifyIdeal)]
pub fn classify_ideal(text: &str) -> Result<String, JsValue> {
    to_js(classify_json(text))
}

#[wasm_bindgen(js_name = taylorLayer)]
pub fn taylor_layer_js(text: &str, degree: usize) -> Result<String, JsValue> {
    to_js(taylor_json(text, degree))
}

#[wasm_bindgen(js_name = reducePair)]
pub fn reduce_pair(text: &str, alpha: &str, beta: &str) -> Result<String, JsValue> {
    to_js(reduce_json(text, alpha, beta))
}

/// `.ideal` text of a bundled example.
#[wasm_bindgen(js_name = demoIdeal)]
pub fn demo_ideal(name: &str) -> String {
    let n = 6;
    demos::by_name(name, n)
        .map(|i| render_ideal(&i))
        .unwrap_or_default()
}
