//! Mode-dependent dynamical systems: a state comonoid with a lens from its
//! carrier to an interface.

use std::collections::HashMap;

use crate::algebra::{pairing, tensor_lens, tensor_lens_all};
use crate::category::{comonoid_tensor_all, contractible, morphism_labels, Comonoid};
use crate::error::{PolyError, Result};
use crate::lens::Lens;
use crate::poly::FinPoly;

use super::moore::{moore_to_lens, MooreMachine};
use super::strategy::StrategyTree;
use super::trace::{Step, Trace};

#[derive(Debug, Clone)]
pub struct Mdds {
    state: Comonoid,
    dynamics: Lens,
}

impl Mdds {
    pub fn new(state: Comonoid, dynamics: Lens) -> Result<Self> {
        if *dynamics.dom() != *state.carrier() {
            return Err(PolyError::ShapeMismatch(
                "dynamics must start at the state comonoid's carrier".into(),
            ));
        }
        let dynamics = Lens::new(
            state.carrier_arc().clone(),
            dynamics.cod_arc().clone(),
            dynamics.on_pos_table().to_vec(),
            dynamics.on_dir_table().to_vec(),
        )?;
        Ok(Mdds { state, dynamics })
    }

    pub fn from_moore(m: &MooreMachine) -> Self {
        Mdds::new(contractible(&m.states), moore_to_lens(m)).expect("well-typed")
    }

    pub fn state(&self) -> &Comonoid {
        &self.state
    }

    pub fn interface(&self) -> &FinPoly {
        self.dynamics.cod()
    }

    pub fn dynamics(&self) -> &Lens {
        &self.dynamics
    }

    pub fn state_index(&self, label: &str) -> Result<usize> {
        self.state
            .carrier()
            .position_index(label)
            .ok_or_else(|| PolyError::UnknownLabel {
                label: label.to_string(),
                context: "states".into(),
            })
    }

    /// Index form of [`Mdds::step`]: the direction taken at `s` in the state
    /// category and the state it leads to.
    pub fn step_index(&self, s: usize, d: usize) -> (usize, usize) {
        let e = self.dynamics.on_dir(s, d);
        (e, self.state.target(s, e))
    }

    /// Emits the position `f(s)` and follows `f♯_s(d)`. The direction must
    /// belong to the emitted position.
    pub fn step(&self, s: usize, direction: &str) -> Result<(String, usize)> {
        let p = self.interface();
        let i = self.dynamics.on_pos(s);
        let d = p.dirs(i).index_of(direction).ok_or_else(|| PolyError::InvalidDirection {
            position: p.position_label(i).to_string(),
            direction: direction.to_string(),
        })?;
        Ok((p.position_label(i).to_string(), self.step_index(s, d).1))
    }

    /// Runs from `s0` on caller-supplied directions, recording the history
    /// morphism in the state category.
    pub fn run<S: AsRef<str>>(&self, s0: usize, directions: &[S]) -> Result<Trace> {
        let carrier = self.state.carrier();
        let p = self.interface();
        let mut s = s0;
        let mut history = self.state.identity(s0);
        let mut steps = Vec::with_capacity(directions.len());
        for d in directions {
            let (pos, next) = self.step(s, d.as_ref())?;
            let i = self.dynamics.on_pos(s);
            let (e, _) = self.step_index(s, p.dirs(i).index_of(d.as_ref()).expect("checked by step"));
            history = self.state.composite(s0, history, e);
            steps.push(Step {
                state: carrier.position_label(s).to_string(),
                position: pos,
                direction: d.as_ref().to_string(),
            });
            s = next;
        }
        debug_assert_eq!(self.state.target(s0, history), s);
        Ok(Trace {
            steps,
            final_state: carrier.position_label(s).to_string(),
            final_position: p.position_label(self.dynamics.on_pos(s)).to_string(),
            history: Some(morphism_labels(carrier)[s0][history].clone()),
        })
    }

    /// Iterates the unique move of a system with interface `y`.
    pub fn run_closed(&self, s0: usize, steps: usize) -> Result<Trace> {
        let p = self.interface();
        if p.num_positions() != 1 || p.dir_count(0) != 1 {
            return Err(PolyError::InterfaceMismatch(format!(
                "closed runs need the interface y, got {}",
                p.algebraic()
            )));
        }
        let d = p.dirs(0).get(0).to_string();
        self.run(s0, &vec![d; steps])
    }

    /// Runs a system with monomial interface `B y^A` on a stream of inputs.
    pub fn run_open<S: AsRef<str>>(&self, s0: usize, inputs: &[S]) -> Result<Trace> {
        if !self.interface().is_monomial() {
            return Err(PolyError::NotMonomial(self.interface().algebraic()));
        }
        self.run(s0, inputs)
    }

    /// The morphism of the state category traced out by `directions` from
    /// `s0`, as an index into `comonoid_to_category(state)`.
    pub fn trace_history<S: AsRef<str>>(&self, s0: usize, directions: &[S]) -> Result<usize> {
        let mut s = s0;
        let mut history = self.state.identity(s0);
        let p = self.interface();
        for d in directions {
            let i = self.dynamics.on_pos(s);
            let k = p.dirs(i).index_of(d.as_ref()).ok_or_else(|| PolyError::InvalidDirection {
                position: p.position_label(i).to_string(),
                direction: d.as_ref().to_string(),
            })?;
            let (e, next) = self.step_index(s, k);
            history = self.state.composite(s0, history, e);
            s = next;
        }
        let offset: usize = (0..s0).map(|i| self.state.carrier().dir_count(i)).sum();
        Ok(offset + history)
    }

    /// The depth-`n` strategy played from `s`.
    pub fn unroll(&self, s: usize, n: usize) -> StrategyTree {
        let p = self.interface();
        if n == 0 {
            return StrategyTree::empty();
        }
        let i = self.dynamics.on_pos(s);
        let branches = (0..p.dir_count(i))
            .map(|d| {
                let (_, next) = self.step_index(s, d);
                (p.dirs(i).get(d).to_string(), self.unroll(next, n - 1))
            })
            .collect();
        StrategyTree::node(n, p.position_label(i).to_string(), branches)
    }

    /// Classes of `n`-bisimilar states by partition refinement: two states
    /// are equivalent at depth `n` when they emit the same position and
    /// each direction leads to `(n-1)`-equivalent states.
    pub fn bisimulation_classes(&self, n: usize) -> Vec<usize> {
        let states = self.state.carrier().num_positions();
        let mut classes = vec![0; states];
        for _ in 0..n {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            classes = (0..states)
                .map(|s| {
                    let i = self.dynamics.on_pos(s);
                    let next = (0..self.interface().dir_count(i))
                        .map(|d| classes[self.step_index(s, d).1])
                        .collect();
                    let fresh = ids.len();
                    *ids.entry((i, next)).or_insert(fresh)
                })
                .collect();
        }
        classes
    }

    /// Composes the dynamics with a wiring lens out of the interface.
    pub fn apply_wiring(&self, w: &Lens) -> Result<Mdds> {
        Mdds::new(self.state.clone(), self.dynamics.then(w)?)
    }
}

/// The pairing `C -> p × q` of two systems on the same state.
pub fn overlay(f: &Lens, g: &Lens) -> Result<Lens> {
    pairing(&[f, g])
}

/// `f1 ⊗ f2 : C1 ⊗ C2 -> p1 ⊗ p2`.
pub fn juxtapose(f1: &Lens, f2: &Lens) -> Lens {
    tensor_lens(f1, f2)
}

/// Juxtaposes whole systems, tensoring the state comonoids.
pub fn juxtapose_all(systems: &[&Mdds]) -> Mdds {
    let lenses: Vec<&Lens> = systems.iter().map(|s| &s.dynamics).collect();
    let states: Vec<&Comonoid> = systems.iter().map(|s| &s.state).collect();
    Mdds::new(comonoid_tensor_all(&states), tensor_lens_all(&lenses)).expect("tensor carriers agree")
}

/// Applies `w : p_1 ⊗ … ⊗ p_k -> q` to a juxtaposed system.
pub fn apply_wiring(w: &Lens, sys: &Lens) -> Result<Lens> {
    sys.then(w)
}

/// The closed-loop trace of an already wired system with interface `y`.
pub fn run_closed(sys: &Mdds, s0: usize, steps: usize) -> Result<Trace> {
    sys.run_closed(s0, steps)
}

/// The open-loop trace of a system with monomial interface.
pub fn run_open<S: AsRef<str>>(sys: &Mdds, s0: usize, inputs: &[S]) -> Result<Trace> {
    sys.run_open(s0, inputs)
}
