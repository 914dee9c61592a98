//! Polynomial functors over finite sets, their lenses, comonoids, and
//! mode-dependent dynamical systems built from them.

pub mod algebra;
pub mod category;
pub mod dynamics;
pub mod error;
pub mod json;
pub mod label;
pub mod laws;
pub mod lens;
pub mod odometer;
pub mod poly;
pub mod report;
pub mod set;

pub use error::{PolyError, Result};
pub use lens::{lens_compose, lens_id, Lens};
pub use poly::{make_poly, FinPoly, Position};
pub use report::Report;
pub use set::{coequalizer_set, pullback_set, FinSet, SetFn};
