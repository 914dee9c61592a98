//! Moore machines, mode-dependent dynamical systems, runs and strategies.

mod mdds;
mod moore;
mod strategy;
mod trace;

pub use mdds::*;
pub use moore::*;
pub use strategy::*;
pub use trace::*;
