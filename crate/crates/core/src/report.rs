//! Machine-readable report envelopes.

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Result;

/// Bumped whenever a report payload changes shape.
pub const SCHEMA_VERSION: u32 = 1;

/// Wraps a payload as `{"schema_version", "kind", "ok", "data"}`.
pub fn envelope<T: Serialize>(kind: &str, ok: bool, data: &T) -> Result<Value> {
    Ok(json!({
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "ok": ok,
        "data": serde_json::to_value(data)?,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_carries_the_version() {
        let v = envelope("demo", true, &vec![1, 2]).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert_eq!(v["data"][1], 2);
    }
}
