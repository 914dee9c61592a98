//! A textual language for mode-dependent wiring diagrams.
//!
//! A program declares finite sets, boxes with typed ports, an outer box,
//! connections (optionally switched by the position of a designated mode
//! box), defaults for inputs left unwired, and machine tables. It compiles
//! to the wiring lens `⊗ boxes -> outer` and, with machines for every box,
//! to a runnable system.
//!
//! ```text
//! set A = {a0, a1}
//! box Plant {
//!   in a : A;
//!   out c : A;
//! }
//! outer System {
//!   in a : A;
//!   out c : A;
//! }
//! connect System.a -> Plant.a
//! connect Plant.c -> System.c
//! ```
//!
//! Nested diagrams are not part of the language; compose compiled lenses
//! instead.

pub mod ast;
pub mod compile;
pub mod error;
pub mod parser;
pub mod printer;
pub mod validate;

pub use ast::WiringSpec;
pub use compile::{
    box_interface, compile_machines, compile_system, compile_wiring, outer_interface, port_set, BoundMachine,
    CompiledSystem,
};
pub use error::{Result, WiringError};
pub use parser::{parse, parse_syntax};
pub use printer::print;
pub use validate::{validate, ValidationReport, Violation, ViolationKind};
