//! Browser bindings. Each exported function returns a JSON string (an object
//! with an `"error"` key on bad input) so the page needs no generated types.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use unimodal_lab::certmax::{certified_alpha, d_value};
use unimodal_lab::eclass::{default_exclusion, l_value_guarded, max_l, ThetaScan};
use unimodal_lab::exactpoly::{expand_family, FamilyParams, UnimodalReport};
use unimodal_lab::theorem1::critical_m;

/// Largest `m` the page may request; coefficients stay printable.
pub const MAX_M: u64 = 400;
pub const MAX_K: u64 = 60;
const MAX_SAMPLES: usize = 20_000;

fn render(result: Result<Value, String>) -> String {
    result.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

fn check_samples(samples: usize) -> Result<(), String> {
    if (2..=MAX_SAMPLES).contains(&samples) {
        Ok(())
    } else {
        Err(format!("samples must be in [2, {MAX_SAMPLES}]"))
    }
}

/// Coefficients of `(1+x)^m (1+x^k)` with both unimodality verdicts.
pub fn family_value(m: u64, k: u64) -> Result<Value, String> {
    if m > MAX_M || k > MAX_K {
        return Err(format!("m <= {MAX_M} and k <= {MAX_K} in the demo"));
    }
    let params = FamilyParams::new(m, k).map_err(|e| e.to_string())?;
    let p = expand_family(params);
    let report = UnimodalReport::of(&p);
    Ok(json!({
        "m": m,
        "k": k,
        "coefficients": p.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "unimodal": report.unimodal.holds,
        "unimodal_witness": report.unimodal.witness,
        "strongly_unimodal": report.strongly_unimodal.holds,
        "strong_failure": report.strongly_unimodal.failure.map(|(i, _)| i),
        "threshold": critical_m(k),
    }))
}

/// `L(k, theta)` sampled on `(0, pi)` plus the refined maximum and `m(k)`.
/// Samples near the singular angles come back as `null`.
pub fn l_curve_value(k: u64, samples: usize) -> Result<Value, String> {
    check_samples(samples)?;
    if !(2..=MAX_K).contains(&k) {
        return Err(format!("k must be in [2, {MAX_K}]"));
    }
    let eps = default_exclusion(k);
    let theta: Vec<f64> = (1..=samples).map(|i| std::f64::consts::PI * i as f64 / (samples + 1) as f64).collect();
    let l: Vec<Option<f64>> = theta
        .iter()
        .map(|&t| Some(l_value_guarded(k, t, eps)).filter(|v| v.is_finite()))
        .collect();
    let max = max_l(&ThetaScan::new(k).with_grid(20_000)).map_err(|e| e.to_string())?;
    Ok(json!({
        "k": k,
        "theta": theta,
        "l": l,
        "max_l": max.max_l,
        "argmax_theta": max.argmax_theta,
        "m_of_k": max.m_of_k,
        "near_integer": max.near_integer,
        "scaled_max": max.scaled(),
    }))
}

/// `D(z)` on `(pi/2, pi)` with the certified enclosure of its maximum.
pub fn d_curve_value(samples: usize, tol: f64) -> Result<Value, String> {
    check_samples(samples)?;
    let cert = certified_alpha(tol).map_err(|e| e.to_string())?;
    let (a, b) = (std::f64::consts::FRAC_PI_2, std::f64::consts::PI);
    let z: Vec<f64> = (1..=samples).map(|i| a + (b - a) * i as f64 / (samples + 1) as f64).collect();
    let d: Vec<Option<f64>> = z.iter().map(|&z| Some(d_value(z)).filter(|v| v.is_finite())).collect();
    Ok(json!({
        "z": z,
        "d": d,
        "crit_lo": cert.crit_bracket.lo,
        "crit_hi": cert.crit_bracket.hi,
        "alpha_lo": cert.value_enclosure.lo,
        "alpha_hi": cert.value_enclosure.hi,
        "evaluations": cert.evaluations,
    }))
}

#[wasm_bindgen]
pub fn family(m: u32, k: u32) -> String {
    render(family_value(m.into(), k.into()))
}

#[wasm_bindgen]
pub fn l_curve(k: u32, samples: u32) -> String {
    render(l_curve_value(k.into(), samples as usize))
}

#[wasm_bindgen]
pub fn d_curve(samples: u32, tol: f64) -> String {
    render(d_curve_value(samples as usize, tol))
}
