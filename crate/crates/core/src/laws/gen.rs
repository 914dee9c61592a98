//! Random small instances. Every instance is a list of exponent vectors plus
//! a salt; suites derive everything else (lenses, tables, input streams)
//! from the salt, so shrinking the vectors keeps a sample reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::dynamics::MooreMachine;
use crate::lens::Lens;
use crate::poly::FinPoly;
use crate::set::FinSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    /// Exponent vectors; a vector of zeros of length `n` encodes the size `n`.
    pub polys: Vec<Vec<usize>>,
    pub salt: u64,
}

impl Instance {
    pub fn poly(&self, k: usize) -> FinPoly {
        FinPoly::from_exponents(&self.polys[k])
    }

    pub fn size(&self, k: usize) -> usize {
        self.polys[k].len()
    }

    /// Randomness for everything beyond the exponent vectors.
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.salt)
    }

    pub fn to_value(&self) -> Value {
        let polys: Vec<Value> = self
            .polys
            .iter()
            .map(|e| json!({"exponents": e, "algebraic": FinPoly::from_exponents(e).algebraic()}))
            .collect();
        json!({"polys": polys, "salt": self.salt})
    }
}

/// Up to `max_pos` positions with up to `max_dir` directions each.
pub(crate) fn exps(rng: &mut ChaCha8Rng, max_pos: usize, max_dir: usize) -> Vec<usize> {
    let n = rng.gen_range(0..=max_pos);
    (0..n).map(|_| rng.gen_range(0..=max_dir)).collect()
}

/// A size in `lo..=hi`, encoded as a vector of zeros.
pub(crate) fn sized(rng: &mut ChaCha8Rng, lo: usize, hi: usize) -> Vec<usize> {
    vec![0; rng.gen_range(lo..=hi.max(lo))]
}

pub(crate) fn instance(rng: &mut ChaCha8Rng, polys: Vec<Vec<usize>>) -> Instance {
    Instance { polys, salt: rng.gen() }
}

pub(crate) fn random_table(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..m)).collect()
}

/// A uniformly chosen codomain position among those admitting a backward
/// map, then uniform backward maps; `None` when `hom(p, q)` is empty.
pub(crate) fn random_lens(rng: &mut ChaCha8Rng, p: &FinPoly, q: &FinPoly) -> Option<Lens> {
    let mut on_pos = Vec::with_capacity(p.num_positions());
    let mut on_dir = Vec::with_capacity(p.num_positions());
    for i in 0..p.num_positions() {
        let feasible: Vec<usize> = (0..q.num_positions())
            .filter(|&j| q.dir_count(j) == 0 || p.dir_count(i) > 0)
            .collect();
        if feasible.is_empty() {
            return None;
        }
        let j = feasible[rng.gen_range(0..feasible.len())];
        on_pos.push(j);
        on_dir.push(random_table(rng, q.dir_count(j), p.dir_count(i)));
    }
    Some(Lens::new(p.clone(), q.clone(), on_pos, on_dir).expect("well-typed"))
}

pub(crate) fn named(prefix: &str, n: usize, label: &str) -> FinSet {
    FinSet::new(label, (0..n).map(|k| format!("{prefix}{k}")).collect()).expect("distinct")
}

/// A machine with random tables; `None` when there are no states, or no
/// outputs to read out.
pub(crate) fn random_machine(
    rng: &mut ChaCha8Rng,
    states: usize,
    inputs: FinSet,
    outputs: FinSet,
) -> Option<MooreMachine> {
    if states == 0 || outputs.is_empty() {
        return None;
    }
    let s = named("s", states, "states");
    let readout = random_table(rng, states, outputs.len());
    let update = (0..states).map(|_| random_table(rng, inputs.len(), states)).collect();
    Some(MooreMachine::from_tables(s, inputs, outputs, readout, update, 0).expect("well-typed"))
}
