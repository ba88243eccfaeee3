use serde::Serialize;
use serde_json::Value;

use super::EmitError;
use crate::witness::Witness;

pub const SCHEMA: &str = "fizzle-witness/1";

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'static str,
    #[serde(flatten)]
    witness: &'a Witness,
}

/// Pretty-printed JSON carrying the schema version next to the witness fields.
pub fn serialize_witness(w: &Witness) -> String {
    serde_json::to_string_pretty(&Envelope {
        schema: SCHEMA,
        witness: w,
    })
    .expect("witness serialization is infallible")
}

pub fn deserialize_witness(json: &str) -> Result<Witness, EmitError> {
    let mut value: Value = serde_json::from_str(json).map_err(|e| EmitError::Malformed(e.to_string()))?;
    let Value::Object(map) = &mut value else {
        return Err(EmitError::Malformed("expected a JSON object".into()));
    };
    match map.remove("schema") {
        Some(Value::String(s)) if s == SCHEMA => {}
        Some(Value::String(s)) => {
            return Err(EmitError::SchemaMismatch {
                expected: SCHEMA.into(),
                found: s,
            })
        }
        Some(other) => return Err(EmitError::Malformed(format!("schema must be a string, found {other}"))),
        None => return Err(EmitError::Malformed("missing schema field".into())),
    }
    serde_json::from_value(value).map_err(|e| EmitError::Malformed(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Poly;
    use crate::numeric::Rat;
    use crate::witness::{w_poly, Strategy};

    #[test]
    fn round_trip_polynomial() {
        let w = w_poly(&Poly::from_ints(&[0, 3, 1]), &Rat::one(), Strategy::II);
        let json = serialize_witness(&w);
        assert!(json.contains("\"schema\": \"fizzle-witness/1\""));
        assert!(json.contains("\"center\": \"1\""));
        assert_eq!(deserialize_witness(&json).unwrap(), w);
    }

    #[test]
    fn schema_checked() {
        let w = w_poly(&Poly::from_ints(&[0, 1]), &Rat::zero(), Strategy::II);
        let old = serialize_witness(&w).replace("fizzle-witness/1", "fizzle-witness/0");
        assert!(matches!(deserialize_witness(&old), Err(EmitError::SchemaMismatch { .. })));
        assert!(matches!(deserialize_witness("[1]"), Err(EmitError::Malformed(_))));
        assert!(matches!(deserialize_witness("{\"claim\": 1}"), Err(EmitError::Malformed(_))));
        let bad = serialize_witness(&w).replace("\"eps\"", "\"epsilon\"");
        assert!(matches!(deserialize_witness(&bad), Err(EmitError::Malformed(_))));
    }
}
