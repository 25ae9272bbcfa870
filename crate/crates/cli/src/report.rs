//! The JSON document every command can emit.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use quadbir_core::classifier::TraceEntry;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Top-level keys, in serialization order.
pub const TOP_LEVEL_KEYS: [&str; 4] = ["version", "command", "result", "trace"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub claim: String,
    pub anchor: String,
    pub value: String,
}

impl TraceRecord {
    pub fn new(claim: impl Into<String>, anchor: impl Into<String>, value: impl ToString) -> Self {
        TraceRecord { claim: claim.into(), anchor: anchor.into(), value: value.to_string() }
    }
}

impl From<TraceEntry> for TraceRecord {
    fn from(e: TraceEntry) -> Self {
        TraceRecord { claim: e.claim, anchor: e.anchor, value: e.value }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub version: String,
    pub command: String,
    pub result: Value,
    pub trace: Vec<TraceRecord>,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>, result: Value, trace: Vec<TraceRecord>) -> Self {
        ReportDocument { version: env!("CARGO_PKG_VERSION").to_string(), command: command.into(), result, trace }
    }

    /// Pretty-printed JSON with a trailing newline. Object keys inside
    /// `result` come out sorted, so equal documents print identically.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

/// A JSON number when the value fits in `i64`, its decimal string otherwise.
pub fn int_value(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(n) => Value::from(n),
        None => Value::String(v.to_string()),
    }
}

/// Echo of the invocation, quoting arguments that contain whitespace or
/// shell metacharacters.
pub fn command_echo<S: AsRef<str>>(args: &[S]) -> String {
    let quote = |a: &str| {
        let plain = !a.is_empty() && a.chars().all(|c| c.is_ascii_alphanumeric() || "-_=.,/:'+^*".contains(c));
        if plain {
            a.to_string()
        } else {
            format!("{a:?}")
        }
    };
    args.iter().map(|a| quote(a.as_ref())).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_are_in_frozen_order() {
        let doc = ReportDocument::new("x", json!({"b": 1, "a": 2}), vec![]);
        let s = doc.to_json();
        let positions: Vec<usize> = TOP_LEVEL_KEYS.iter().map(|k| s.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(s.find("\"a\"").unwrap() < s.find("\"b\"").unwrap());
    }

    #[test]
    fn round_trip_and_unknown_keys() {
        let doc = ReportDocument::new("lattice --check mult5", json!({"multiplier": 5}), vec![TraceRecord::new("c", "a", 5)]);
        assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
        assert!(ReportDocument::from_json(r#"{"version":"1","command":"","result":null,"trace":[],"extra":1}"#).is_err());
    }

    #[test]
    fn echo_quotes_expressions_with_spaces() {
        assert_eq!(command_echo(&["intersect", "--expr", "(3H-E)^4"]), "intersect --expr \"(3H-E)^4\"");
        assert_eq!(command_echo(&["--expr", "H^4"]), "--expr H^4");
    }

    #[test]
    fn big_integers_become_strings() {
        assert_eq!(int_value(&BigInt::from(-10)), json!(-10));
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        assert_eq!(int_value(&big), json!("123456789012345678901234567890"));
    }
}
