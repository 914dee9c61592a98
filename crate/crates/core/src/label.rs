//! Structured labels for the elements of composite constructions.
//!
//! Composite positions and directions are rendered with a fixed bracket
//! syntax so that they stay inspectable after serialization:
//!
//! - tuples `(a,b,c)`
//! - coproduct injections `in0(a)`, `in1(b)`, ...
//! - finite functions `{d1:x,d2:y}` (listed in domain order)
//! - the point of a one-element set `*`

/// The element of the canonical one-element set.
pub const POINT: &str = "*";

pub fn tuple<S: AsRef<str>>(parts: &[S]) -> String {
    let mut out = String::from("(");
    for (k, p) in parts.iter().enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(p.as_ref());
    }
    out.push(')');
    out
}

pub fn pair(a: &str, b: &str) -> String {
    let mut out = String::with_capacity(a.len() + b.len() + 3);
    out.push('(');
    out.push_str(a);
    out.push(',');
    out.push_str(b);
    out.push(')');
    out
}

pub fn inj(k: usize, a: &str) -> String {
    format!("in{k}({a})")
}

/// Renders a function given as parallel slices of domain and codomain labels.
pub fn function<S: AsRef<str>, T: AsRef<str>>(dom: &[S], values: &[T]) -> String {
    debug_assert_eq!(dom.len(), values.len());
    let mut out = String::from("{");
    for (k, (d, v)) in dom.iter().zip(values).enumerate() {
        if k > 0 {
            out.push(',');
        }
        out.push_str(d.as_ref());
        out.push(':');
        out.push_str(v.as_ref());
    }
    out.push('}');
    out
}

/// Tuple label that collapses to the sole component (or to `*` for none).
///
/// Used wherever a product of port values is rendered and a single port
/// should keep its plain value.
pub fn flat_tuple<S: AsRef<str>>(parts: &[S]) -> String {
    match parts.len() {
        0 => POINT.to_string(),
        1 => parts[0].as_ref().to_string(),
        _ => tuple(parts),
    }
}
