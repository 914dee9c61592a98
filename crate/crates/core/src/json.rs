//! JSON encodings. Objects are `serde_json::Map`s, so keys come out sorted.

use std::collections::HashMap;

use serde_json::{json, Map, Value};

use crate::error::{PolyError, Result};
use crate::lens::Lens;
use crate::poly::FinPoly;
use crate::set::FinSet;

fn bad(msg: impl Into<String>) -> PolyError {
    PolyError::Json(msg.into())
}

pub fn poly_to_value(p: &FinPoly) -> Value {
    json!({
        "positions": p.positions().iter().map(|pos| json!({
            "label": pos.label,
            "dirs": pos.dirs.elements(),
        })).collect::<Vec<_>>()
    })
}

pub fn poly_from_value(v: &Value) -> Result<FinPoly> {
    let positions = v
        .get("positions")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("polynomial needs a \"positions\" array"))?;
    let mut out = Vec::with_capacity(positions.len());
    for pos in positions {
        let label = pos
            .get("label")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("position needs a string \"label\""))?;
        let dirs = string_array(pos.get("dirs"), "dirs")?;
        out.push((label.to_string(), FinSet::new(label, dirs)?));
    }
    FinPoly::new(out)
}

fn string_array(v: Option<&Value>, what: &str) -> Result<Vec<String>> {
    v.and_then(Value::as_array)
        .ok_or_else(|| bad(format!("\"{what}\" must be an array of strings")))?
        .iter()
        .map(|d| {
            d.as_str()
                .map(str::to_string)
                .ok_or_else(|| bad(format!("\"{what}\" must be an array of strings")))
        })
        .collect()
}

pub fn lens_to_value(f: &Lens) -> Value {
    let (pos, dir) = f.to_label_maps();
    json!({
        "dom": poly_to_value(f.dom()),
        "cod": poly_to_value(f.cod()),
        "onPos": pos,
        "onDir": dir,
    })
}

pub fn lens_from_value(v: &Value) -> Result<Lens> {
    let dom = poly_from_value(v.get("dom").ok_or_else(|| bad("lens needs \"dom\""))?)?;
    let cod = poly_from_value(v.get("cod").ok_or_else(|| bad("lens needs \"cod\""))?)?;
    let pos = string_map(v.get("onPos"), "onPos")?;
    let dir_obj = v
        .get("onDir")
        .and_then(Value::as_object)
        .ok_or_else(|| bad("lens needs an \"onDir\" object"))?;
    let mut dir = HashMap::new();
    for (k, row) in dir_obj {
        dir.insert(k.clone(), string_map(Some(row), "onDir")?);
    }
    Lens::from_labels(dom, cod, &pos, &dir)
}

fn string_map(v: Option<&Value>, what: &str) -> Result<HashMap<String, String>> {
    let obj = v
        .and_then(Value::as_object)
        .ok_or_else(|| bad(format!("\"{what}\" must be an object of strings")))?;
    obj.iter()
        .map(|(k, v)| {
            v.as_str()
                .map(|s| (k.clone(), s.to_string()))
                .ok_or_else(|| bad(format!("\"{what}\" values must be strings")))
        })
        .collect()
}

/// Pretty-printed text with a trailing newline.
pub fn to_string(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| bad(e.to_string()))
}

pub fn poly_to_string(p: &FinPoly) -> String {
    to_string(&poly_to_value(p))
}

pub fn poly_from_str(text: &str) -> Result<FinPoly> {
    poly_from_value(&parse(text)?)
}

pub fn lens_to_string(f: &Lens) -> String {
    to_string(&lens_to_value(f))
}

pub fn lens_from_str(text: &str) -> Result<Lens> {
    lens_from_value(&parse(text)?)
}

pub(crate) fn object(pairs: Vec<(&str, Value)>) -> Value {
    Value::Object(
        pairs
            .into_iter()
            .map(|(k, v)| (k.to_string(), v))
            .collect::<Map<_, _>>(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_roundtrip_is_bit_exact_on_canonical_forms() {
        let p = FinPoly::from_exponents(&[0, 2, 1, 1]).canonical_form();
        let text = poly_to_string(&p);
        let back = poly_from_str(&text).unwrap();
        assert!(back.same_layout(&p));
        assert_eq!(poly_to_string(&back), text);
    }

    #[test]
    fn lens_roundtrip() {
        let p = FinPoly::from_exponents(&[2, 0]);
        let q = FinPoly::from_exponents(&[1, 3]);
        let f = Lens::new(p, q, vec![1, 1], vec![vec![0, 1, 1], vec![]]).unwrap_err();
        assert!(matches!(f, PolyError::InvalidDirection { .. } | PolyError::ShapeMismatch(_)));
        let p = FinPoly::from_exponents(&[2, 1]);
        let q = FinPoly::from_exponents(&[1, 3]);
        let f = Lens::new(p, q, vec![1, 0], vec![vec![0, 1, 1], vec![0]]).unwrap();
        let text = lens_to_string(&f);
        assert!(text.find("\"cod\"").unwrap() < text.find("\"dom\"").unwrap());
        let back = lens_from_str(&text).unwrap();
        assert_eq!(back, f);
        assert_eq!(lens_to_string(&back), text);
    }

    #[test]
    fn malformed_json_is_rejected() {
        assert!(poly_from_str("{\"positions\": 3}").is_err());
        assert!(poly_from_str("{\"positions\": [{\"label\": \"a\", \"dirs\": [\"x\", \"x\"]}]}").is_err());
        assert!(poly_from_str("not json").is_err());
    }
}
