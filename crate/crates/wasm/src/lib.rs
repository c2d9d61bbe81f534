//! Browser bindings. Every export returns a JSON string; errors come back
//! as a thrown string.

use inducibility::bounds::{find_sparse_alpha, lemma51_bound};
use inducibility::brightness::{brightness_exact, brightness_lower_bounds, BRIGHTNESS_EXACT_LIMIT};
use inducibility::constructions::{dtame_limit, split_limit};
use inducibility::structure::{classify_vertices, minimal_taming_number, TAMING_EXACT_LIMIT};
use inducibility::{parse_graph6, Error};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn js(e: Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

/// Vertex classes, taming number and brightness of a graph6 string.
pub fn classify_json(graph6: &str) -> Result<Value, Error> {
    let h = parse_graph6(graph6.trim())?;
    let core = h.non_isolated_core();
    let taming = if h.n() <= TAMING_EXACT_LIMIT {
        let (number, witness) = minimal_taming_number(&h)?;
        json!({ "number": number, "v0": witness.v0 })
    } else {
        Value::Null
    };
    let (exact, bounds) = if h.edge_count() >= 2 {
        let exact = (core.n() <= BRIGHTNESS_EXACT_LIMIT)
            .then(|| brightness_exact(&h))
            .transpose()?
            .map(|q| json!({ "value": q.to_string(), "approx": inducibility::exact::to_f64(&q) }));
        (exact, Some(brightness_lower_bounds(&h)?))
    } else {
        (None, None)
    };
    Ok(json!({
        "n": h.n(),
        "edges": h.edges().collect::<Vec<_>>(),
        "degrees": h.degree_profile().degrees,
        "classification": classify_vertices(&h),
        "taming": taming,
        "brightness": exact,
        "brightness_bounds": bounds,
    }))
}

/// Limits of the split and tame blow-up constructions for a given `k`, as
/// `sigma` sweeps `(0, 1)` in `steps` points.
pub fn construction_limits_json(k: u32, steps: u32) -> Result<Value, Error> {
    if !(4..=2000).contains(&k) || !(2..=2000).contains(&steps) {
        return Err(Error::Input(format!("need 4 <= k <= 2000 and 2 <= steps <= 2000, got k = {k}, steps = {steps}")));
    }
    let k64 = u64::from(k);
    let sigmas: Vec<f64> = (1..steps).map(|i| f64::from(i) / f64::from(steps)).collect();
    let curve = |r: u64| sigmas.iter().map(|&s| split_limit(k64, r, s)).collect::<Vec<_>>();
    let tame: Vec<f64> = (0..=6.min(k as usize - 1)).map(|d| dtame_limit(k as usize, d)).collect();
    Ok(json!({
        "k": k,
        "sigma": sigmas,
        "r1": curve(1),
        "r2": curve(2),
        "r1_at_1_over_k": split_limit(k64, 1, 1.0 / f64::from(k)),
        "r2_at_2_over_k": split_limit(k64, 2, 2.0 / f64::from(k)),
        "tame_by_d": tame,
    }))
}

/// The sparse-core bound as a function of brightness for fixed `alpha`.
pub fn sparse_bound_json(alpha: f64, steps: u32) -> Result<Value, Error> {
    if !(2..=2000).contains(&steps) {
        return Err(Error::Input(format!("need 2 <= steps <= 2000, got {steps}")));
    }
    let nu: Vec<f64> = (0..=steps).map(|i| f64::from(i) / f64::from(steps)).collect();
    let bound = nu.iter().map(|&v| lemma51_bound(alpha, v)).collect::<Result<Vec<_>, _>>()?;
    let a = find_sparse_alpha();
    Ok(json!({
        "alpha": alpha,
        "nu": nu,
        "bound": bound,
        "at_one_twelfth": lemma51_bound(alpha, 1.0 / 12.0)?,
        "one_over_e": (-1.0f64).exp(),
        "sparse_alpha": a,
    }))
}

#[wasm_bindgen]
pub fn classify(graph6: &str) -> Result<String, JsValue> {
    classify_json(graph6).map(|v| v.to_string()).map_err(js)
}

#[wasm_bindgen]
pub fn construction_limits(k: u32, steps: u32) -> Result<String, JsValue> {
    construction_limits_json(k, steps).map(|v| v.to_string()).map_err(js)
}

#[wasm_bindgen]
pub fn sparse_bound(alpha: f64, steps: u32) -> Result<String, JsValue> {
    sparse_bound_json(alpha, steps).map(|v| v.to_string()).map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_path() {
        let v = classify_json("Bg").unwrap();
        assert_eq!(v["brightness"]["value"], "1/3");
        assert_eq!(v["classification"]["obscure"], json!([1]));
        assert_eq!(v["taming"]["number"], 1);
        assert!(classify_json("!!").is_err());
    }

    #[test]
    fn curves() {
        let v = construction_limits_json(100, 100).unwrap();
        assert!((v["r1_at_1_over_k"].as_f64().unwrap() - (-1.0f64).exp()).abs() < 0.002);
        assert_eq!(v["sigma"].as_array().unwrap().len(), 99);
        let v = sparse_bound_json(0.0, 10).unwrap();
        let b = v["bound"].as_array().unwrap();
        assert!((b[0].as_f64().unwrap() - (-1.0f64).exp()).abs() < 1e-12);
        assert!(sparse_bound_json(-1.0, 10).is_err());
    }
}
