//! Moore machines and their presentation as lenses `S y^S -> B y^A`.

use std::sync::Arc;

use crate::category::contractible;
use crate::error::{PolyError, Result};
use crate::lens::Lens;
use crate::poly::FinPoly;
use crate::set::{FinSet, SetFn};

use super::trace::{Step, Trace};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreMachine {
    pub states: FinSet,
    pub inputs: FinSet,
    pub outputs: FinSet,
    /// `S -> B`
    pub readout: SetFn,
    /// `A × S -> S`, domain labels `(a,s)`
    pub update: SetFn,
    pub initial: usize,
}

impl MooreMachine {
    pub fn new(
        states: FinSet,
        inputs: FinSet,
        outputs: FinSet,
        readout: SetFn,
        update: SetFn,
        initial: usize,
    ) -> Result<Self> {
        if readout.dom() != &states || readout.cod() != &outputs {
            return Err(PolyError::ShapeMismatch("readout must be a function S -> B".into()));
        }
        if update.dom() != &inputs.product(&states) || update.cod() != &states {
            return Err(PolyError::ShapeMismatch("update must be a function A × S -> S".into()));
        }
        if initial >= states.len() {
            return Err(PolyError::ShapeMismatch("initial state out of range".into()));
        }
        Ok(MooreMachine {
            states,
            inputs,
            outputs,
            readout,
            update,
            initial,
        })
    }

    /// Builds a machine from index tables: `readout[s]` and `update[s][a]`.
    pub fn from_tables(
        states: FinSet,
        inputs: FinSet,
        outputs: FinSet,
        readout: Vec<usize>,
        update: Vec<Vec<usize>>,
        initial: usize,
    ) -> Result<Self> {
        let (ns, na) = (states.len(), inputs.len());
        if update.len() != ns || update.iter().any(|row| row.len() != na) {
            return Err(PolyError::ShapeMismatch("update table must be |S| × |A|".into()));
        }
        let mut flat = vec![0; na * ns];
        for (s, row) in update.iter().enumerate() {
            for (a, &t) in row.iter().enumerate() {
                flat[a * ns + s] = t;
            }
        }
        let r = SetFn::new(states.clone(), outputs.clone(), readout)?;
        let u = SetFn::new(inputs.product(&states), states.clone(), flat)?;
        MooreMachine::new(states, inputs, outputs, r, u, initial)
    }

    pub fn read(&self, s: usize) -> usize {
        self.readout.apply_index(s)
    }

    pub fn next(&self, s: usize, a: usize) -> usize {
        self.update.apply_index(a * self.states.len() + s)
    }

    /// The interface `B y^A`.
    pub fn interface(&self) -> FinPoly {
        FinPoly::monomial(&self.outputs, &self.inputs)
    }
}

/// On positions the readout; at `s`, each input `a` goes to `u(a, s)`.
pub fn moore_to_lens(m: &MooreMachine) -> Lens {
    let carrier = contractible(&m.states).carrier_arc().clone();
    let on_pos = (0..m.states.len()).map(|s| m.read(s)).collect();
    let on_dir = (0..m.states.len())
        .map(|s| (0..m.inputs.len()).map(|a| m.next(s, a)).collect())
        .collect();
    Lens::new(carrier, Arc::new(m.interface()), on_pos, on_dir).expect("well-typed")
}

/// Inverse of [`moore_to_lens`]; `initial` names the start state.
pub fn lens_to_moore(f: &Lens, initial: &str) -> Result<MooreMachine> {
    let dom = f.dom();
    let states = dom.position_set();
    for i in 0..dom.num_positions() {
        if !dom.dirs(i).same_order(&states) {
            return Err(PolyError::ShapeMismatch(format!(
                "domain is not of the form S y^S: position `{}` has directions {}",
                dom.position_label(i),
                dom.dirs(i)
            )));
        }
    }
    let cod = f.cod();
    if !cod.is_monomial() || cod.num_positions() == 0 {
        return Err(PolyError::NotMonomial(cod.algebraic()));
    }
    let inputs = cod.dirs(0).clone().with_label("inputs");
    let outputs = cod.position_set();
    let init = states.require(initial, "states")?;
    MooreMachine::from_tables(
        states.clone(),
        inputs,
        outputs,
        f.on_pos_table().to_vec(),
        f.on_dir_table().to_vec(),
        init,
    )
}

/// Feeds `inputs` one at a time: `b_n = r(s_n)`, `s_{n+1} = u(a_n, s_n)`.
pub fn run_moore<S: AsRef<str>>(m: &MooreMachine, inputs: &[S]) -> Result<Trace> {
    let mut s = m.initial;
    let mut steps = Vec::with_capacity(inputs.len());
    for a in inputs {
        let a = m.inputs.require(a.as_ref(), "inputs")?;
        steps.push(Step {
            state: m.states.get(s).to_string(),
            position: m.outputs.get(m.read(s)).to_string(),
            direction: m.inputs.get(a).to_string(),
        });
        s = m.next(s, a);
    }
    Ok(Trace {
        steps,
        final_state: m.states.get(s).to_string(),
        final_position: m.outputs.get(m.read(s)).to_string(),
        history: None,
    })
}
