//! Canonical rendering of a program; `parse(print(spec)) == spec`.

use std::fmt::Write;

use crate::ast::*;

fn list(ids: &[Ident]) -> String {
    ids.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join(", ")
}

fn valuation(v: &Valuation) -> String {
    let parts: Vec<String> = v.iter().map(|(p, x)| format!("{p} = {x}")).collect();
    format!("({})", parts.join(", "))
}

fn box_decl(out: &mut String, keyword: &str, b: &BoxDecl) {
    writeln!(out, "{keyword} {} {{", b.name).unwrap();
    for p in &b.ports {
        writeln!(out, "  {} {} : {};", p.dir.keyword(), p.name, p.set).unwrap();
    }
    out.push_str("}\n");
}

fn item(out: &mut String, item: &Item) {
    match item {
        Item::Set(s) => writeln!(out, "set {} = {{{}}}", s.name, list(&s.elements)).unwrap(),
        Item::Box(b) => box_decl(out, "box", b),
        Item::Outer(b) => box_decl(out, "outer", b),
        Item::Connect(c) => writeln!(out, "connect {} -> {}", c.source, c.target).unwrap(),
        Item::Default(d) => writeln!(out, "default {} = {}", d.target, d.value).unwrap(),
        Item::Modes(m) => {
            writeln!(out, "modes from {} {{", m.mode_box).unwrap();
            for mode in &m.modes {
                writeln!(out, "  mode {} {{", mode.name).unwrap();
                for c in &mode.connects {
                    writeln!(out, "    connect {} -> {}", c.source, c.target).unwrap();
                }
                out.push_str("  }\n");
            }
            out.push_str("}\n");
        }
        Item::Machine(m) => {
            writeln!(out, "machine {} {{", m.owner).unwrap();
            writeln!(out, "  states = {{{}}};", list(&m.states)).unwrap();
            writeln!(out, "  init = {};", m.init).unwrap();
            for r in &m.readouts {
                writeln!(out, "  readout {} = {}", r.state, valuation(&r.outputs)).unwrap();
            }
            for u in &m.updates {
                writeln!(out, "  update {} {} = {}", u.state, valuation(&u.inputs), u.next).unwrap();
            }
            out.push_str("}\n");
        }
    }
}

/// Runs of one-line statements of the same kind stay together; everything
/// else is separated by a blank line.
fn grouped(a: &Item, b: &Item) -> bool {
    matches!(
        (a, b),
        (Item::Set(_), Item::Set(_)) | (Item::Connect(_), Item::Connect(_)) | (Item::Default(_), Item::Default(_))
    )
}

pub fn print(spec: &WiringSpec) -> String {
    let mut out = String::new();
    for (k, it) in spec.items.iter().enumerate() {
        if k > 0 && !grouped(&spec.items[k - 1], it) {
            out.push('\n');
        }
        item(&mut out, it);
    }
    out
}
