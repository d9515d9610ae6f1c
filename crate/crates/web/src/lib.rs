//! Browser bindings. Every export takes plain strings and numbers and
//! returns a JSON string, so the page needs no generated glue beyond
//! `wasm-bindgen` itself.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};
use verlinde_core::alcove::{enumerate_sigma_c, fold_to_alcove};
use verlinde_core::dims::{factorized_dimension, general_dimension, CurveRequest, VerlindeData};
use verlinde_core::lie::{build_root_datum, LieType, Weight};
use verlinde_core::twist::{TwistData, TwistKind};
use wasm_bindgen::prelude::*;

/// Twist tags accepted from the page.
fn parse_kind(kind: &str) -> Result<TwistKind, String> {
    match kind {
        "identity" => Ok(TwistKind::Identity),
        "diagram2" => Ok(TwistKind::Diagram2),
        "diagram3" => Ok(TwistKind::Diagram3),
        "standard4" => Ok(TwistKind::Standard4),
        other => Err(format!("unknown twist {other:?}")),
    }
}

fn twist(lie_type: &str, rank: usize, kind: &str) -> Result<Arc<TwistData>, String> {
    let t: LieType = lie_type.parse().map_err(|_| format!("unknown type {lie_type:?}"))?;
    let amb = build_root_datum(t, rank).map_err(|e| e.to_string())?;
    TwistData::new(amb, parse_kind(kind)?).map(Arc::new).map_err(|e| e.to_string())
}

fn weights(text: &str) -> Result<Vec<Weight>, String> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let raw: Vec<Vec<i32>> = serde_json::from_str(text).map_err(|e| format!("weights: {e}"))?;
    Ok(raw.into_iter().map(Weight).collect())
}

#[derive(Serialize)]
struct PointView {
    /// Pairings with the fundamental weights, as `num/den` strings.
    pairings: Vec<String>,
    weight: Weight,
}

/// Alphabet, torus orders and the points of the finite sum.
pub fn alcove_json(lie_type: &str, rank: usize, kind: &str, level: u32) -> Result<Value, String> {
    let tw = twist(lie_type, rank, kind)?;
    let e = enumerate_sigma_c(&tw, level);
    let alphabet = tw.weight_alphabet(level);
    let points: Vec<PointView> = e
        .points
        .iter()
        .zip(alphabet.iter())
        .map(|(p, w)| PointView {
            pairings: p.pairings().iter().map(|n| format!("{n}/{}", p.den())).collect(),
            weight: w.clone(),
        })
        .collect();
    Ok(json!({
        "fixed": tw.fixed().name(),
        "shifted_level": tw.shifted_level(level),
        "order_t": e.order_t.to_string(),
        "order_tsigma": e.order_tsigma.to_string(),
        "points": points,
    }))
}

/// Folds one weight of the fixed algebra into the alcove.
pub fn fold_json(lie_type: &str, rank: usize, kind: &str, level: u32, weight: &str) -> Result<Value, String> {
    let tw = twist(lie_type, rank, kind)?;
    let w: Vec<i32> = serde_json::from_str(weight).map_err(|e| format!("weight: {e}"))?;
    let working = tw.companion().cloned().unwrap_or_else(|| tw.clone());
    if w.len() != working.fixed().rank() {
        return Err(format!("expected {} coordinates", working.fixed().rank()));
    }
    serde_json::to_value(fold_to_alcove(&tw, level, &Weight(w))).map_err(|e| e.to_string())
}

/// All coefficients `c^eta_{lambda mu}` at one level.
pub fn fusion_json(lie_type: &str, rank: usize, kind: &str, level: u32) -> Result<Value, String> {
    let tw = twist(lie_type, rank, kind)?;
    let data = VerlindeData::get(&tw, level);
    let alph = data.alphabet().members.clone();
    let mut table = Vec::with_capacity(alph.len());
    for l in &alph {
        let mut row = Vec::with_capacity(alph.len());
        for m in &alph {
            let col: Result<Vec<i64>, String> = alph
                .iter()
                .map(|e| data.fusion(l, m, e).map(|r| r.value).map_err(|x| x.to_string()))
                .collect();
            row.push(col?);
        }
        table.push(row);
    }
    Ok(json!({ "alphabet": alph, "table": table }))
}

/// The general formula next to the factorization recursion.
pub fn dimension_json(
    lie_type: &str,
    rank: usize,
    kind: &str,
    level: u32,
    genus_bar: u32,
    fixed: &str,
    ambient: &str,
) -> Result<Value, String> {
    let req = CurveRequest {
        twist: twist(lie_type, rank, kind)?,
        level,
        genus_bar,
        lambda_dagger: weights(fixed)?,
        mu: weights(ambient)?,
    };
    let g = general_dimension(&req).map_err(|e| e.to_string())?;
    let f = factorized_dimension(&req).map_err(|e| e.to_string())?;
    Ok(json!({
        "general": g.value,
        "general_residual": g.residual,
        "factorized": f.value,
        "agree": g.value == f.value,
    }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn alcove(lie_type: &str, rank: usize, kind: &str, level: u32) -> Result<String, JsError> {
    to_js(alcove_json(lie_type, rank, kind, level))
}

#[wasm_bindgen]
pub fn fold(lie_type: &str, rank: usize, kind: &str, level: u32, weight: &str) -> Result<String, JsError> {
    to_js(fold_json(lie_type, rank, kind, level, weight))
}

#[wasm_bindgen]
pub fn fusion(lie_type: &str, rank: usize, kind: &str, level: u32) -> Result<String, JsError> {
    to_js(fusion_json(lie_type, rank, kind, level))
}

#[wasm_bindgen]
pub fn dimension(
    lie_type: &str,
    rank: usize,
    kind: &str,
    level: u32,
    genus_bar: u32,
    fixed: &str,
    ambient: &str,
) -> Result<String, JsError> {
    to_js(dimension_json(lie_type, rank, kind, level, genus_bar, fixed, ambient))
}
