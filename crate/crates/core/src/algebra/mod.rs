//! Monoidal structures, closures, hom-sets, limits, factorizations, base
//! change and adjunctions.

mod adjunction;
mod closure;
mod factor;
mod fibration;
mod hom;
mod limits;
mod monoidal;
mod structure;

pub use adjunction::*;
pub use closure::*;
pub use factor::*;
pub use fibration::*;
pub use hom::*;
pub use limits::*;
pub use monoidal::*;
pub use structure::*;
