//! Seeded property suites over small random instances.
//!
//! Sample `k` of suite `s` under seed `n` draws from a ChaCha8 stream keyed
//! by `(n, s, k)` alone, so samples can run in parallel while reports stay
//! byte-identical. Failing samples are shrunk by deleting positions, then
//! removing directions, re-checking after each step.

mod gen;
mod suites;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{PolyError, Result};

pub use gen::Instance;
pub use suites::SUITES;

/// Environment variable consulted when no seed is given explicitly.
pub const SEED_ENV: &str = "POLYDYN_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LawConfig {
    /// Bound on positions and directions per position of sampled instances.
    pub size_bound: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            size_bound: 3,
            samples: 100,
            seed: 0,
        }
    }
}

/// `Err` carries a description of the violation.
pub type Outcome = std::result::Result<(), String>;

pub struct Suite {
    pub name: &'static str,
    pub module: &'static str,
    pub property: &'static str,
    generate: fn(&mut ChaCha8Rng, usize) -> Instance,
    check: fn(&Instance, usize) -> Outcome,
}

impl Suite {
    pub fn generate(&self, rng: &mut ChaCha8Rng, bound: usize) -> Instance {
        (self.generate)(rng, bound)
    }

    pub fn check(&self, instance: &Instance, bound: usize) -> Outcome {
        (self.check)(instance, bound)
    }
}

/// `all`, a module name, or a suite name.
pub fn select(name: &str) -> Result<Vec<&'static Suite>> {
    let chosen: Vec<&Suite> = SUITES
        .iter()
        .filter(|s| name == "all" || s.module == name || s.name == name)
        .collect();
    if chosen.is_empty() {
        return Err(PolyError::UnknownLabel {
            label: name.to_string(),
            context: "law suites".into(),
        });
    }
    Ok(chosen)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: String,
    pub samples: usize,
    pub failures: Vec<Value>,
    pub seed: u64,
}

impl SuiteReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_value(&self) -> Value {
        json!({
            "suite": self.suite,
            "samples": self.samples,
            "failures": self.failures,
            "seed": self.seed,
        })
    }
}

/// FNV-1a, to key streams by suite name.
fn name_key(name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

pub fn sample_rng(seed: u64, suite: &str, index: usize) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&name_key(suite).to_le_bytes());
    key[16..24].copy_from_slice(&(index as u64).to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Greedy minimization: first delete whole positions, then single
/// directions, keeping any change under which the check still fails.
pub fn shrink(suite: &Suite, instance: &Instance, bound: usize, message: String) -> (Instance, String, usize) {
    let mut current = instance.clone();
    let mut message = message;
    let mut steps = 0;
    for phase in [Phase::Positions, Phase::Directions] {
        'restart: loop {
            for k in 0..current.polys.len() {
                for i in 0..current.polys[k].len() {
                    let mut candidate = current.clone();
                    match phase {
                        Phase::Positions => {
                            candidate.polys[k].remove(i);
                        }
                        Phase::Directions if candidate.polys[k][i] > 0 => candidate.polys[k][i] -= 1,
                        Phase::Directions => continue,
                    }
                    if let Err(m) = suite.check(&candidate, bound) {
                        current = candidate;
                        message = m;
                        steps += 1;
                        continue 'restart;
                    }
                }
            }
            break;
        }
    }
    (current, message, steps)
}

#[derive(Clone, Copy)]
enum Phase {
    Positions,
    Directions,
}

pub fn run_suite(suite: &Suite, cfg: &LawConfig) -> SuiteReport {
    let failures: Vec<Value> = (0..cfg.samples)
        .into_par_iter()
        .filter_map(|k| {
            let mut rng = sample_rng(cfg.seed, suite.name, k);
            let instance = suite.generate(&mut rng, cfg.size_bound);
            let message = suite.check(&instance, cfg.size_bound).err()?;
            let (small, message, steps) = shrink(suite, &instance, cfg.size_bound, message);
            Some(json!({
                "sample": k,
                "instance": instance.to_value(),
                "counterexample": small.to_value(),
                "shrink_steps": steps,
                "message": message,
            }))
        })
        .collect();
    SuiteReport {
        suite: suite.name.to_string(),
        samples: cfg.samples,
        failures,
        seed: cfg.seed,
    }
}

/// Runs every suite matching `name`, in registry order.
pub fn run(name: &str, cfg: &LawConfig) -> Result<Vec<SuiteReport>> {
    Ok(select(name)?.into_iter().map(|s| run_suite(s, cfg)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gen(rng: &mut ChaCha8Rng, b: usize) -> Instance {
        let polys = vec![gen::exps(rng, b + 2, b), gen::exps(rng, b, b)];
        gen::instance(rng, polys)
    }

    /// A false law: no polynomial has two positions with directions.
    fn check(x: &Instance, _b: usize) -> Outcome {
        match x.polys[0].iter().filter(|&&e| e > 0).count() {
            n if n >= 2 => Err(format!("{n} positions with directions")),
            _ => Ok(()),
        }
    }

    const FALSE_LAW: Suite = Suite {
        name: "test.false_law",
        module: "test",
        property: "deliberately false",
        generate: gen,
        check,
    };

    #[test]
    fn shrinks_positions_then_directions() {
        let x = Instance {
            polys: vec![vec![3, 0, 2, 1], vec![2, 2]],
            salt: 9,
        };
        let msg = FALSE_LAW.check(&x, 3).unwrap_err();
        let (small, msg, steps) = shrink(&FALSE_LAW, &x, 3, msg);
        assert_eq!(small.polys, vec![vec![1, 1], vec![]]);
        assert_eq!(small.salt, 9);
        assert_eq!(msg, "2 positions with directions");
        assert!(steps >= 4);
    }

    #[test]
    fn failures_are_reported_deterministically() {
        let cfg = LawConfig {
            size_bound: 3,
            samples: 64,
            seed: 5,
        };
        let a = run_suite(&FALSE_LAW, &cfg);
        assert!(!a.is_ok());
        assert_eq!(a.to_value(), run_suite(&FALSE_LAW, &cfg).to_value());
        let samples: Vec<u64> = a.failures.iter().map(|f| f["sample"].as_u64().unwrap()).collect();
        assert!(samples.windows(2).all(|w| w[0] < w[1]));
        for f in &a.failures {
            assert_eq!(f["counterexample"]["polys"][0]["exponents"], serde_json::json!([1, 1]));
        }
    }

    #[test]
    fn streams_differ_by_seed_suite_and_index() {
        use rand::Rng;
        let draw = |seed, suite, k| sample_rng(seed, suite, k).gen::<u64>();
        assert_eq!(draw(1, "a", 0), draw(1, "a", 0));
        assert_ne!(draw(1, "a", 0), draw(2, "a", 0));
        assert_ne!(draw(1, "a", 0), draw(1, "b", 0));
        assert_ne!(draw(1, "a", 0), draw(1, "a", 1));
    }
}
