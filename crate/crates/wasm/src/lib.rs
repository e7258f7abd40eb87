//! Three operations for the static page in `www/`: generate `Q_n`, plot its
//! roots, and tabulate exact inverse power sums.

use serde_json::json;
use wasm_bindgen::prelude::*;

use yv_core::roots;
use yv_core::series::inverse_power_sums;
use yv_core::{generate, YvRecord};

/// Largest `n` the page accepts; root extraction beyond this gets slow in the browser.
pub const MAX_N: u32 = 20;

fn record(n: u32) -> Result<YvRecord, String> {
    if n > MAX_N {
        return Err(format!("n must be at most {MAX_N}"));
    }
    let mut recs = generate(n).map_err(|e| e.to_string())?;
    Ok(recs.pop().expect("generate returns n + 1 records"))
}

pub fn polynomial_json(n: u32) -> Result<String, String> {
    let r = record(n)?;
    let v = json!({
        "n": r.n(),
        "degree": r.degree(),
        "polynomial": r.poly().to_string(),
        "compressed": r.compressed().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "x_n": r.x_n().to_string(),
        "p_n": r.p_n(),
    });
    Ok(v.to_string())
}

pub fn roots_svg_string(n: u32, precision_bits: usize) -> Result<String, String> {
    let r = record(n)?;
    let bits = precision_bits.clamp(64, 1024);
    let rs = roots::roots_of(&r, bits).map_err(|e| e.to_string())?;
    let cert = roots::certify(&rs, &r);
    if cert.failed() {
        return Err(format!("certification failed: {}", cert.detail));
    }
    Ok(roots::to_svg(&rs))
}

pub fn sums_json(n: u32, m_max: u32) -> Result<String, String> {
    let r = record(n)?;
    let t = inverse_power_sums(&r, m_max.clamp(1, 60));
    let rows: Vec<_> = (1..=t.max_m())
        .map(|m| {
            let s = t.get(m);
            json!({"m": m, "num": s.numer().to_string(), "den": s.denom().to_string()})
        })
        .collect();
    Ok(serde_json::Value::Array(rows).to_string())
}

#[wasm_bindgen]
pub fn yv_polynomial(n: u32) -> Result<String, JsValue> {
    polynomial_json(n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn yv_roots_svg(n: u32, precision_bits: usize) -> Result<String, JsValue> {
    roots_svg_string(n, precision_bits).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn yv_inverse_sums(n: u32, m_max: u32) -> Result<String, JsValue> {
    sums_json(n, m_max).map_err(|e| JsValue::from_str(&e))
}
