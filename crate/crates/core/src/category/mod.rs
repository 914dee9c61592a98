//! Finite categories, comonoids in `(Poly, ∘, y)`, and cofunctors.

mod catalog;
mod cofree;
mod cofunctor;
mod comonoid;
mod fincat;

pub use catalog::*;
pub use cofree::*;
pub use cofunctor::*;
pub use comonoid::*;
pub use fincat::*;
