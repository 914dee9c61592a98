//! From validated programs to lenses, machines and runnable systems.
//!
//! A box with out-ports `o_1..o_m` and in-ports `i_1..i_n` is the monomial
//! `(O_1 × … × O_m) y^(I_1 × … × I_n)`; tuples are listed with the first
//! port most significant and a single port keeps its plain values.

use polydyn::algebra::tensor_all;
use polydyn::dynamics::{juxtapose_all, Mdds, MooreMachine};
use polydyn::label;
use polydyn::odometer::{rank_mixed, unrank_mixed, Odometer};
use polydyn::{FinPoly, FinSet, Lens};

use crate::ast::*;
use crate::error::{Result, WiringError};
use crate::validate::{routing, Source};

fn set_of(spec: &WiringSpec, name: &str) -> FinSet {
    let decl = spec.set(name).expect("port sets are checked by the parser");
    FinSet::new(name, decl.elements.iter().map(|e| e.name.clone()).collect()).expect("checked by the parser")
}

fn radices(spec: &WiringSpec, b: &BoxDecl, dir: PortDir) -> Vec<usize> {
    b.ports(dir).map(|p| set_of(spec, &p.set.name).len()).collect()
}

/// The product of a box's ports in one direction.
pub fn port_set(spec: &WiringSpec, b: &BoxDecl, dir: PortDir) -> FinSet {
    let sets: Vec<FinSet> = b.ports(dir).map(|p| set_of(spec, &p.set.name)).collect();
    let elements = Odometer::new(sets.iter().map(FinSet::len).collect())
        .map(|t| {
            let parts: Vec<&str> = t.iter().zip(&sets).map(|(&k, s)| s.get(k)).collect();
            label::flat_tuple(&parts)
        })
        .collect();
    let name = format!("{}.{}", b.name, dir.keyword());
    FinSet::new(name, elements).expect("tuples of distinct elements are distinct")
}

/// `B y^A` with `B` the out-port product and `A` the in-port product.
pub fn box_interface(spec: &WiringSpec, b: &BoxDecl) -> FinPoly {
    FinPoly::monomial(&port_set(spec, b, PortDir::Out), &port_set(spec, b, PortDir::In))
}

/// The outer box's interface; `y` when there is no outer box.
pub fn outer_interface(spec: &WiringSpec) -> FinPoly {
    spec.outer().map_or_else(FinPoly::y, |o| box_interface(spec, o))
}

/// The wiring lens `⊗ boxes -> outer`, boxes in declaration order.
pub fn compile_wiring(spec: &WiringSpec) -> Result<Lens> {
    let routing = routing(spec).map_err(WiringError::Invalid)?;
    let boxes: Vec<&BoxDecl> = spec.boxes().collect();
    let ifaces: Vec<FinPoly> = boxes.iter().map(|b| box_interface(spec, b)).collect();
    let dom = tensor_all(&ifaces.iter().collect::<Vec<_>>());
    let cod = outer_interface(spec);

    let pos_counts: Vec<usize> = ifaces.iter().map(FinPoly::num_positions).collect();
    // monomials: every position of box k has the same directions
    let dir_counts: Vec<usize> = boxes.iter().map(|b| radices(spec, b, PortDir::In).iter().product()).collect();
    let out_radices: Vec<Vec<usize>> = boxes.iter().map(|b| radices(spec, b, PortDir::Out)).collect();
    let in_radices: Vec<Vec<usize>> = boxes.iter().map(|b| radices(spec, b, PortDir::In)).collect();
    let (outer_out, outer_in) = match spec.outer() {
        Some(o) => (radices(spec, o, PortDir::Out), radices(spec, o, PortDir::In)),
        None => (Vec::new(), Vec::new()),
    };

    let mut on_pos = Vec::with_capacity(dom.num_positions());
    let mut on_dir = Vec::with_capacity(dom.num_positions());
    for i in 0..dom.num_positions() {
        let outs: Vec<Vec<usize>> = unrank_mixed(i, &pos_counts)
            .iter()
            .zip(&out_radices)
            .map(|(&p, r)| unrank_mixed(p, r))
            .collect();
        let mode = routing.mode_box.map_or(0, |k| outs[k][0]);
        let value = |src: Source, outer_in: &[usize]| match src {
            Source::Inner { bx, port } => outs[bx][port],
            Source::Outer { port } => outer_in[port],
            Source::Default(v) => v,
        };
        let emitted: Vec<usize> = routing.outer_out[mode].iter().map(|&s| value(s, &[])).collect();
        let j = rank_mixed(&emitted, &outer_out);
        let row = (0..cod.dir_count(j))
            .map(|e| {
                let incoming = unrank_mixed(e, &outer_in);
                let dirs: Vec<usize> = routing.inner_in[mode]
                    .iter()
                    .zip(&in_radices)
                    .map(|(srcs, r)| {
                        let vals: Vec<usize> = srcs.iter().map(|&s| value(s, &incoming)).collect();
                        rank_mixed(&vals, r)
                    })
                    .collect();
                rank_mixed(&dirs, &dir_counts)
            })
            .collect();
        on_pos.push(j);
        on_dir.push(row);
    }
    Ok(Lens::new(dom, cod, on_pos, on_dir)?)
}

/// A machine together with the box it runs in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundMachine {
    pub owner: String,
    pub machine: MooreMachine,
}

fn machine_error(m: &MachineDecl, span: Span, message: String) -> WiringError {
    WiringError::Machine {
        owner: m.owner.name.clone(),
        span,
        message,
    }
}

fn render(v: &[(String, String)]) -> String {
    let parts: Vec<String> = v.iter().map(|(p, x)| format!("{p} = {x}")).collect();
    format!("({})", parts.join(", "))
}

/// Index of a valuation in the product of `ports`: each port exactly once,
/// each value an element of the port's set.
fn encode(spec: &WiringSpec, m: &MachineDecl, ports: &[&PortDecl], v: &Valuation, span: Span) -> Result<usize> {
    let mut digits = vec![None; ports.len()];
    for (port, value) in v {
        let Some(k) = ports.iter().position(|p| p.name == *port) else {
            return Err(machine_error(m, port.span, format!("no such port `{port}` here")));
        };
        let set = set_of(spec, &ports[k].set.name);
        let Some(x) = set.index_of(&value.name) else {
            return Err(machine_error(m, value.span, format!("`{value}` is not an element of `{}`", ports[k].set)));
        };
        if digits[k].replace(x).is_some() {
            return Err(machine_error(m, port.span, format!("port `{port}` assigned twice")));
        }
    }
    if let Some(k) = digits.iter().position(Option::is_none) {
        return Err(machine_error(m, span, format!("port `{}` is not assigned", ports[k].name)));
    }
    let digits: Vec<usize> = digits.into_iter().map(Option::unwrap).collect();
    let radices: Vec<usize> = ports.iter().map(|p| set_of(spec, &p.set.name).len()).collect();
    Ok(rank_mixed(&digits, &radices))
}

fn compile_machine(spec: &WiringSpec, m: &MachineDecl) -> Result<MooreMachine> {
    let b = spec.inner_box(&m.owner.name).ok_or_else(|| WiringError::Undeclared {
        kind: "box",
        name: m.owner.name.clone(),
        span: m.owner.span,
    })?;
    let names: Vec<String> = m.states.iter().map(|s| s.name.clone()).collect();
    let states = FinSet::new(format!("{} states", m.owner), names)?;
    let state = |id: &Ident| {
        states
            .index_of(&id.name)
            .ok_or_else(|| machine_error(m, id.span, format!("`{id}` is not a state")))
    };
    let init = state(&m.init)?;
    let outs: Vec<&PortDecl> = b.ports(PortDir::Out).collect();
    let ins: Vec<&PortDecl> = b.ports(PortDir::In).collect();
    let (out_set, in_set) = (port_set(spec, b, PortDir::Out), port_set(spec, b, PortDir::In));

    let mut readout = vec![None; states.len()];
    for r in &m.readouts {
        let s = state(&r.state)?;
        let b = encode(spec, m, &outs, &r.outputs, r.state.span)?;
        if readout[s].replace(b).is_some() {
            return Err(machine_error(m, r.state.span, format!("second readout for `{}`", r.state)));
        }
    }
    let mut update = vec![vec![None; in_set.len()]; states.len()];
    for u in &m.updates {
        let s = state(&u.state)?;
        let a = encode(spec, m, &ins, &u.inputs, u.state.span)?;
        let t = state(&u.next)?;
        if update[s][a].replace(t).is_some() {
            return Err(machine_error(m, u.state.span, format!("second update for `{}` {}", u.state, render_inputs(spec, &ins, a))));
        }
    }

    let mut missing = Vec::new();
    for (s, r) in readout.iter().enumerate() {
        if r.is_none() {
            missing.push(format!("readout {}", states.get(s)));
        }
    }
    for (s, row) in update.iter().enumerate() {
        for (a, t) in row.iter().enumerate() {
            if t.is_none() {
                missing.push(format!("update {} {}", states.get(s), render_inputs(spec, &ins, a)));
            }
        }
    }
    if !missing.is_empty() {
        return Err(WiringError::PartialTable {
            owner: m.owner.name.clone(),
            missing,
        });
    }
    let readout = readout.into_iter().map(Option::unwrap).collect();
    let update = update.into_iter().map(|row| row.into_iter().map(Option::unwrap).collect()).collect();
    Ok(MooreMachine::from_tables(states, in_set, out_set, readout, update, init)?)
}

/// The input valuation with index `a`, in table syntax.
fn render_inputs(spec: &WiringSpec, ins: &[&PortDecl], a: usize) -> String {
    let sets: Vec<FinSet> = ins.iter().map(|p| set_of(spec, &p.set.name)).collect();
    let digits = unrank_mixed(a, &sets.iter().map(FinSet::len).collect::<Vec<_>>());
    let pairs: Vec<(String, String)> = ins
        .iter()
        .zip(&sets)
        .zip(digits)
        .map(|((p, s), d)| (p.name.name.clone(), s.get(d).to_string()))
        .collect();
    render(&pairs)
}

/// Every machine table, in declaration order.
pub fn compile_machines(spec: &WiringSpec) -> Result<Vec<BoundMachine>> {
    spec.machines()
        .map(|m| {
            Ok(BoundMachine {
                owner: m.owner.name.clone(),
                machine: compile_machine(spec, m)?,
            })
        })
        .collect()
}

/// A wired system ready to run.
#[derive(Debug, Clone)]
pub struct CompiledSystem {
    pub mdds: Mdds,
    /// the state made of every machine's initial state
    pub initial: usize,
    pub wiring: Lens,
    /// one machine per box, in box order
    pub machines: Vec<BoundMachine>,
}

/// Juxtaposes the boxes' machines and applies the wiring.
pub fn compile_system(spec: &WiringSpec) -> Result<CompiledSystem> {
    let wiring = compile_wiring(spec)?;
    let mut compiled = compile_machines(spec)?;
    let mut machines = Vec::new();
    for b in spec.boxes() {
        let k = compiled
            .iter()
            .position(|m| m.owner == b.name.name)
            .ok_or_else(|| WiringError::MissingMachine(b.name.name.clone()))?;
        machines.push(compiled.swap_remove(k));
    }
    let systems: Vec<Mdds> = machines.iter().map(|m| Mdds::from_moore(&m.machine)).collect();
    let mdds = juxtapose_all(&systems.iter().collect::<Vec<_>>()).apply_wiring(&wiring)?;
    let initials: Vec<usize> = machines.iter().map(|m| m.machine.initial).collect();
    let counts: Vec<usize> = machines.iter().map(|m| m.machine.states.len()).collect();
    Ok(CompiledSystem {
        mdds,
        initial: rank_mixed(&initials, &counts),
        wiring,
        machines,
    })
}
