//! Browser bindings. Every entry point returns a JSON string; failures come
//! back as `{"error": "..."}` so the page never has to catch exceptions.

use npseq::search::{self, SearchConfig, SearchFilter};
use npseq::theory::generate_bound_table;
use npseq::{AlmostParySequence, SequenceReport};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Searches run on the page's main thread, so keep them small.
pub const BROWSER_BUDGET: u128 = 2_000_000;

fn render(result: Result<Value, String>) -> String {
    let value = result.unwrap_or_else(|e| json!({ "error": e }));
    value.to_string()
}

fn parse_list(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("not an integer: {t:?}")))
        .collect()
}

fn parse_filter(text: &str) -> Result<SearchFilter, String> {
    let text = text.trim();
    match text {
        "" | "nps" => return Ok(SearchFilter::AnyNps),
        "all" => return Ok(SearchFilter::All),
        "uniform" => return Ok(SearchFilter::Uniform),
        _ => {}
    }
    if let Some(b) = text.strip_prefix("gamma2<=") {
        let bound = b.trim().parse().map_err(|_| format!("bad bound {b:?}"))?;
        return Ok(SearchFilter::Gamma2AtMost { bound });
    }
    let parts = parse_list(text.trim_start_matches('(').trim_end_matches(')'))?;
    match parts.as_slice() {
        [gamma1, gamma2] => Ok(SearchFilter::Type { gamma1: *gamma1, gamma2: *gamma2 }),
        _ => Err(format!("unknown filter {text:?}")),
    }
}

/// Profile, NPS type and difference-set structure of one sequence.
#[wasm_bindgen]
pub fn analyze(p: u32, seq: &str) -> String {
    render((|| {
        let seq = AlmostParySequence::parse(p, seq).map_err(|e| e.to_string())?;
        let report = SequenceReport::of(&seq);
        let checks: serde_json::Map<String, Value> =
            report.checks().into_iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
        let mut value = serde_json::to_value(&report).map_err(|e| e.to_string())?;
        value["checks"] = Value::Object(checks);
        Ok(value)
    })())
}

/// Rows of `(gamma1, gamma2, B, not_exist)` over two comma-separated lists.
#[wasm_bindgen]
pub fn bound_table(n: i32, gamma1s: &str, gamma2s: &str) -> String {
    render((|| {
        let rows = generate_bound_table(n as i64, &parse_list(gamma1s)?, &parse_list(gamma2s)?, None);
        serde_json::to_value(&rows).map_err(|e| e.to_string())
    })())
}

/// Exhaustive phase-normalized search. `filter` is `nps`, `all`, `uniform`,
/// `gamma2<=B` or a type `g1,g2`.
#[wasm_bindgen]
pub fn search(p: u32, period: u32, zeros: u32, filter: &str) -> String {
    render((|| {
        let config = SearchConfig::new(p, period as usize, zeros as usize)
            .with_filter(parse_filter(filter)?)
            .with_budget(BROWSER_BUDGET);
        let report = search::enumerate_and_classify(&config).map_err(|e| e.to_string())?;
        serde_json::to_value(&report).map_err(|e| e.to_string())
    })())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn analyze_example() {
        let v = parse(&analyze(3, "Z,Z,1,1,1"));
        assert_eq!(v["nps"]["gamma1"], 2);
        assert_eq!(v["pdpds"]["params"]["lambda3"], 2);
        assert_eq!(v["checks"]["nps-iff-pdpds"], true);
    }

    #[test]
    fn errors_are_json() {
        assert!(parse(&analyze(3, "Z,9"))["error"].is_string());
        assert!(parse(&bound_table(15, "1,x", ""))["error"].is_string());
        assert!(parse(&search(7, 20, 2, "nps"))["error"].as_str().unwrap().contains("budget"));
    }

    #[test]
    fn table_rows() {
        let v = parse(&bound_table(15, "-10", "-8,10"));
        assert_eq!(v.as_array().unwrap().len(), 2);
        assert_eq!(v[0]["B"], -1);
        assert_eq!(v[0]["not_exist"], true);
        assert_eq!(parse(&bound_table(15, "", "")), json!([]));
    }

    #[test]
    fn search_filters() {
        let v = parse(&search(3, 5, 2, "2,1"));
        assert_eq!(v["matches"].as_array().unwrap().len(), 1);
        assert_eq!(v["matches"][0]["sequence"], "Z,Z,0,0,0");
        let v = parse(&search(3, 7, 2, "gamma2<=-3"));
        assert!(v["matches"].as_array().unwrap().is_empty());
        assert!(parse(&search(3, 5, 2, "sideways"))["error"].is_string());
    }
}
