//! Browser bindings: generate a construction, verify an edited grid, and
//! run one caching round. Each export wraps a plain function returning
//! JSON or grid text so the logic is testable without a browser.

use pda_core::constructions::{all_star, h_array, identity, label_range, mn, mn_reverse, shangguan_direct, yan_half_memory};
use pda_core::format::{parse_any, serialize_grid};
use pda_core::lifting::{corollary_odd, mn_recursive};
use pda_core::params::decimal4;
use pda_core::sim::{run, Demands};
use pda_core::subsets::binom;
use pda_core::{params, validate, Pda};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Arrays are rendered in the page; keep them small enough to read.
const MAX_CELLS: usize = 4096;

fn ints(args: &str) -> Result<Vec<usize>, String> {
    args.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| format!("not a number: {s:?}")))
        .collect()
}

fn build(name: &str, a: &[usize]) -> Result<Pda, String> {
    let want = |n: usize| {
        if a.len() == n {
            Ok(())
        } else {
            Err(format!("{name} takes {n} numbers, got {}", a.len()))
        }
    };
    let p = match name {
        "identity" => {
            want(1)?;
            identity(a[0], 0, false)
        }
        "h" => {
            want(1)?;
            h_array(a[0], &label_range(0, a[0] * a[0].saturating_sub(1) / 2))
        }
        "star" => {
            want(2)?;
            all_star(a[0], a[1])
        }
        "mn" | "mnrev" => {
            want(2)?;
            if a[1] > a[0] || a[0] > 16 {
                return Err("need t <= K <= 16".into());
            }
            let s = label_range(0, binom(a[0], a[1] + 1));
            if name == "mn" {
                mn(a[0], a[1], &s)
            } else {
                mn_reverse(a[0], a[1], &s)
            }
        }
        "mn-recursive" => {
            want(2)?;
            if a[0] > 16 {
                return Err("need K <= 16".into());
            }
            mn_recursive(a[0], a[1])
        }
        "shangguan" => {
            want(3)?;
            if a[0] > 16 || a[1] + a[2] > a[0] {
                return Err("need a + b <= n <= 16".into());
            }
            shangguan_direct(a[0], a[1], a[2], &label_range(0, binom(a[0], a[1] + a[2])))
        }
        "corollary-odd" => {
            want(2)?;
            if a[0] > 63 || a[1] > 63 {
                return Err("need g, n <= 63".into());
            }
            corollary_odd(a[0], a[1])
        }
        "yan-half" => {
            want(1)?;
            if a[0] > 12 {
                return Err("need g <= 12".into());
            }
            yan_half_memory(a[0])
        }
        _ => return Err(format!("unknown construction {name:?}")),
    }
    .map_err(|e| e.to_string())?;
    if p.rows() * p.cols() > MAX_CELLS {
        return Err(format!("{}x{} is too large to display", p.rows(), p.cols()));
    }
    Ok(p)
}

/// Grid text of the named construction; `args` are comma or space separated.
pub fn generate_grid(name: &str, args: &str) -> Result<String, String> {
    build(name, &ints(args)?).map(|p| serialize_grid(&p))
}

/// JSON `{valid, params?, violations}` for grid or JSON text.
pub fn verify_text(text: &str) -> Result<String, String> {
    let p = parse_any(text).map_err(|e| e.to_string())?;
    let report = validate(&p);
    let violations: Vec<String> = report.violations.iter().map(ToString::to_string).collect();
    let mut out = json!({ "valid": report.is_valid(), "violations": violations });
    if report.is_valid() {
        let q = params(&p).map_err(|e| e.to_string())?;
        out["params"] = json!({
            "summary": q.to_string(),
            "K": q.users,
            "f": q.subpacketization,
            "Z": q.stars,
            "S": q.labels,
            "g": q.regularity,
            "MN": decimal4(&q.memory_ratio),
            "R": decimal4(&q.rate),
        });
    }
    Ok(out.to_string())
}

/// One placement and delivery round with `N = K` files unless `files` is
/// nonzero; the report as JSON.
pub fn simulate_text(text: &str, files: usize, size: usize, seed: u64) -> Result<String, String> {
    let p = parse_any(text).map_err(|e| e.to_string())?;
    let files = if files == 0 { p.cols() } else { files };
    let report = run(&p, files, size, &Demands::Seeded(seed), seed).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn generate(name: &str, args: &str) -> Result<String, JsValue> {
    generate_grid(name, args).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify(text: &str) -> Result<String, JsValue> {
    verify_text(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn simulate(text: &str, files: usize, size: usize, seed: u64) -> Result<String, JsValue> {
    simulate_text(text, files, size, seed).map_err(|e| JsValue::from_str(&e))
}
