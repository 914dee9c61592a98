//! Run records and their JSON / CSV export.

use serde_json::{json, Value};

use crate::error::{PolyError, Result};
use crate::json;
use crate::report::Report;

use super::mdds::Mdds;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub state: String,
    /// the position emitted in `state`
    pub position: String,
    /// the direction consumed at that position
    pub direction: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub steps: Vec<Step>,
    pub final_state: String,
    pub final_position: String,
    /// label of the composite morphism in the state category, when recorded
    pub history: Option<String>,
}

impl Trace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// States `s_0, …, s_n`, including the final one.
    pub fn states(&self) -> Vec<&str> {
        self.steps
            .iter()
            .map(|s| s.state.as_str())
            .chain(std::iter::once(self.final_state.as_str()))
            .collect()
    }

    pub fn to_value(&self) -> Value {
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(k, s)| {
                json!({
                    "step": k,
                    "state": s.state,
                    "position": s.position,
                    "direction": s.direction,
                })
            })
            .collect();
        let mut fields = vec![
            ("steps", Value::Array(steps)),
            ("final_state", json!(self.final_state)),
            ("final_position", json!(self.final_position)),
        ];
        if let Some(h) = &self.history {
            fields.push(("history", json!(h)));
        }
        json::object(fields)
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let text = |v: &Value, k: &str| -> Result<String> {
            v.get(k)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or_else(|| PolyError::Json(format!("trace needs string \"{k}\"")))
        };
        let steps = v
            .get("steps")
            .and_then(Value::as_array)
            .ok_or_else(|| PolyError::Json("trace needs \"steps\"".into()))?
            .iter()
            .map(|s| {
                Ok(Step {
                    state: text(s, "state")?,
                    position: text(s, "position")?,
                    direction: text(s, "direction")?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Trace {
            steps,
            final_state: text(v, "final_state")?,
            final_position: text(v, "final_position")?,
            history: v.get("history").and_then(Value::as_str).map(str::to_string),
        })
    }

    /// `step,state,position,direction`; the last row holds the final state
    /// with an empty direction.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["step", "state", "position", "direction"]).expect("in-memory");
        for (k, s) in self.steps.iter().enumerate() {
            w.write_record([&k.to_string(), &s.state, &s.position, &s.direction])
                .expect("in-memory");
        }
        w.write_record([
            &self.steps.len().to_string(),
            &self.final_state,
            &self.final_position,
            "",
        ])
        .expect("in-memory");
        String::from_utf8(w.into_inner().expect("in-memory")).expect("utf-8")
    }

    /// Every recorded step must be the dynamics' own move.
    pub fn validate(&self, sys: &Mdds) -> Report {
        let mut r = Report::new("trace");
        let carrier = sys.state().carrier();
        let states = self.states();
        for (k, step) in self.steps.iter().enumerate() {
            let Some(s) = carrier.position_index(&step.state) else {
                r.fail(format!("step {k}: unknown state `{}`", step.state));
                continue;
            };
            match sys.step(s, &step.direction) {
                Ok((pos, next)) => {
                    r.check(pos == step.position, || {
                        format!("step {k}: state `{}` emits `{pos}`, not `{}`", step.state, step.position)
                    });
                    let expected = carrier.position_label(next);
                    r.check(expected == states[k + 1], || {
                        format!("step {k}: next state is `{expected}`, trace has `{}`", states[k + 1])
                    });
                }
                Err(e) => r.fail(format!("step {k}: {e}")),
            }
        }
        if let Some(s) = carrier.position_index(&self.final_state) {
            let pos = sys.interface().position_label(sys.dynamics().on_pos(s));
            r.check(pos == self.final_position, || {
                format!("final state emits `{pos}`, not `{}`", self.final_position)
            });
        } else {
            r.fail(format!("unknown final state `{}`", self.final_state));
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_structured_labels() {
        let t = Trace {
            steps: vec![Step {
                state: "(a,b)".into(),
                position: "x".into(),
                direction: "d".into(),
            }],
            final_state: "(b,a)".into(),
            final_position: "y".into(),
            history: None,
        };
        assert_eq!(
            t.to_csv(),
            "step,state,position,direction\n0,\"(a,b)\",x,d\n1,\"(b,a)\",y,\n"
        );
        assert_eq!(Trace::from_value(&t.to_value()).unwrap(), t);
    }
}
