//! Browser bindings: every export returns a JSON string.

use bn_cells::analysis::asymptotic_table;
use bn_cells::perm::SignedPerm;
use bn_cells::specialize::{build_specialized_kl, check_preservation, WeightPair};
use bn_cells::tableau::{rs_map, shape_of};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Largest rank served to the page; W_3 already has 48 elements.
pub const MAX_RANK: usize = 3;

fn rank_ok(rank: usize) -> Result<(), String> {
    if (1..=MAX_RANK).contains(&rank) {
        Ok(())
    } else {
        Err(format!("rank must be between 1 and {MAX_RANK}"))
    }
}

pub fn kl_json(rank: usize) -> Result<String, String> {
    rank_ok(rank)?;
    let t = asymptotic_table(rank).map_err(|e| e.to_string())?;
    let g = t.algebra().group();
    let rows: Vec<_> = (0..t.len())
        .map(|w| {
            let terms: Vec<_> = t.c(w).iter().map(|(y, p)| json!([g.elem(y).to_string(), p.to_string()])).collect();
            json!({ "w": g.elem(w).to_string(), "word": g.elem(w).word_string(), "terms": terms })
        })
        .collect();
    Ok(json!({ "rank": rank, "elements": rows }).to_string())
}

pub fn rs_json(element: &str) -> Result<String, String> {
    let w: SignedPerm = element.parse().map_err(|e: bn_cells::Error| e.to_string())?;
    let (p, q) = rs_map(&w);
    Ok(json!({
        "element": w.to_string(),
        "word": w.word_string(),
        "shape": shape_of(&w).to_string(),
        "p": p,
        "q": q,
    })
    .to_string())
}

pub fn specialize_json(rank: usize, a: i64, b: i64) -> Result<String, String> {
    rank_ok(rank)?;
    let run = || -> bn_cells::Result<String> {
        let w = WeightPair::new(a, b)?;
        let asym = asymptotic_table(rank)?;
        let spec = build_specialized_kl(&asym, w)?;
        Ok(serde_json::to_string(&check_preservation(&asym, &spec, w)?).expect("report serializes"))
    };
    run().map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn kl_table(rank: usize) -> Result<String, JsError> {
    kl_json(rank).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn rs(element: &str) -> Result<String, JsError> {
    rs_json(element).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn specialize(rank: usize, a: i32, b: i32) -> Result<String, JsError> {
    specialize_json(rank, a.into(), b.into()).map_err(|e| JsError::new(&e))
}
