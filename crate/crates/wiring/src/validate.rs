//! Static checks on a parsed program, and the per-mode routing table they
//! establish.

use std::collections::HashMap;
use std::fmt;

use crate::ast::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// reference to a box, port or element that does not exist
    Undeclared,
    /// source and target typed by different sets
    TypeMismatch,
    /// an input used as a source or an output used as a target
    Direction,
    /// an outer input wired straight to an outer output
    PassThrough,
    /// two drivers for one port in one mode
    FanIn,
    /// a port left undriven in some mode, without a default
    MissingDriver,
    /// a default on the wrong kind of port or declared twice
    Default,
    /// malformed mode block
    Mode,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::Undeclared => "undeclared",
            ViolationKind::TypeMismatch => "type mismatch",
            ViolationKind::Direction => "direction",
            ViolationKind::PassThrough => "pass-through",
            ViolationKind::FanIn => "fan-in",
            ViolationKind::MissingDriver => "missing driver",
            ViolationKind::Default => "default",
            ViolationKind::Mode => "mode",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub span: Span,
    /// the mode in which the violation occurs, for per-mode checks
    pub mode: Option<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}: {}", self.span, self.kind.as_str(), self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn has(&self, kind: ViolationKind) -> bool {
        self.violations.iter().any(|v| v.kind == kind)
    }

    fn push(&mut self, kind: ViolationKind, span: Span, mode: Option<&str>, message: String) {
        let v = Violation {
            kind,
            span,
            mode: mode.map(str::to_string),
            message,
        };
        if !self.violations.contains(&v) {
            self.violations.push(v);
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Where a port's value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Source {
    /// out-port `port` of inner box `bx`
    Inner { bx: usize, port: usize },
    /// in-port `port` of the outer box
    Outer { port: usize },
    /// a fixed element of the port's set
    Default(usize),
}

/// Drivers of every inner input and outer output, per mode.
#[derive(Debug, Clone)]
pub(crate) struct Routing {
    /// mode box index; modes are the elements of its single out-port's set
    pub mode_box: Option<usize>,
    /// `[mode][box][in-port]`
    pub inner_in: Vec<Vec<Vec<Source>>>,
    /// `[mode][outer out-port]`
    pub outer_out: Vec<Vec<Source>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Owner {
    Inner(usize),
    Outer,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct End {
    owner: Owner,
    dir: PortDirKey,
    /// index among the owner's ports of that direction
    port: usize,
}

/// source, target and where the connect was written
type Wire = (End, End, Span);

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum PortDirKey {
    In,
    Out,
}

struct Ctx<'a> {
    spec: &'a WiringSpec,
    boxes: Vec<&'a BoxDecl>,
    outer: Option<&'a BoxDecl>,
}

fn mode_suffix(mode: Option<&str>) -> String {
    mode.map(|m| format!(" in mode `{m}`")).unwrap_or_default()
}

impl<'a> Ctx<'a> {
    fn owner(&self, name: &str) -> Option<(Owner, &'a BoxDecl)> {
        if let Some(k) = self.boxes.iter().position(|b| b.name.name == name) {
            return Some((Owner::Inner(k), self.boxes[k]));
        }
        self.outer.filter(|o| o.name.name == name).map(|o| (Owner::Outer, o))
    }

    fn set_elements(&self, set: &str) -> Vec<&'a str> {
        self.spec
            .set(set)
            .map(|s| s.elements.iter().map(|e| e.name.as_str()).collect())
            .unwrap_or_default()
    }

    /// Resolves `Box.port` to an endpoint and the name of its set.
    fn resolve(&self, r: &PortRef, report: &mut ValidationReport) -> Option<(End, &'a str)> {
        let Some((owner, decl)) = self.owner(&r.owner.name) else {
            report.push(
                ViolationKind::Undeclared,
                r.owner.span,
                None,
                format!("no box named `{}`", r.owner),
            );
            return None;
        };
        let Some(port) = decl.port(&r.port.name) else {
            report.push(
                ViolationKind::Undeclared,
                r.port.span,
                None,
                format!("box `{}` has no port `{}`", r.owner, r.port),
            );
            return None;
        };
        let index = decl.ports(port.dir).position(|p| p.name == port.name).expect("present");
        let dir = match port.dir {
            PortDir::In => PortDirKey::In,
            PortDir::Out => PortDirKey::Out,
        };
        Some((End { owner, dir, port: index }, port.set.name.as_str()))
    }

    /// A well-formed connection as (source, target).
    fn connect(&self, c: &Connect, report: &mut ValidationReport) -> Option<(End, End)> {
        let src = self.resolve(&c.source, report);
        let tgt = self.resolve(&c.target, report);
        let ((s, s_set), (t, t_set)) = (src?, tgt?);
        let mut ok = true;
        let is_source = matches!(
            (s.owner, s.dir),
            (Owner::Inner(_), PortDirKey::Out) | (Owner::Outer, PortDirKey::In)
        );
        if !is_source {
            report.push(
                ViolationKind::Direction,
                c.source.owner.span,
                None,
                format!("`{}` cannot drive a connection: sources are inner outputs or outer inputs", c.source),
            );
            ok = false;
        }
        let is_target = matches!(
            (t.owner, t.dir),
            (Owner::Inner(_), PortDirKey::In) | (Owner::Outer, PortDirKey::Out)
        );
        if !is_target {
            report.push(
                ViolationKind::Direction,
                c.target.owner.span,
                None,
                format!("`{}` cannot be driven: targets are inner inputs or outer outputs", c.target),
            );
            ok = false;
        }
        if s.owner == Owner::Outer && t.owner == Owner::Outer {
            report.push(
                ViolationKind::PassThrough,
                c.source.owner.span,
                None,
                format!("`{}` -> `{}` wires an outer input straight to an outer output", c.source, c.target),
            );
            ok = false;
        }
        if s_set != t_set {
            report.push(
                ViolationKind::TypeMismatch,
                c.target.owner.span,
                None,
                format!("`{}` carries `{s_set}` but `{}` expects `{t_set}`", c.source, c.target),
            );
            ok = false;
        }
        ok.then_some((s, t))
    }
}

/// Checks every invariant of a parsed program and reports all violations.
pub fn validate(spec: &WiringSpec) -> ValidationReport {
    match routing(spec) {
        Ok(_) => ValidationReport::default(),
        Err(r) => r,
    }
}

pub(crate) fn routing(spec: &WiringSpec) -> Result<Routing, ValidationReport> {
    let ctx = Ctx {
        spec,
        boxes: spec.boxes().collect(),
        outer: spec.outer(),
    };
    let mut report = ValidationReport::default();

    let global: Vec<Wire> = spec
        .connects()
        .filter_map(|c| ctx.connect(c, &mut report).map(|(s, t)| (s, t, c.target.owner.span)))
        .collect();

    let mut defaults: HashMap<End, usize> = HashMap::new();
    for d in spec.defaults() {
        let Some((end, set)) = ctx.resolve(&d.target, &mut report) else {
            continue;
        };
        if !matches!((end.owner, end.dir), (Owner::Inner(_), PortDirKey::In)) {
            report.push(
                ViolationKind::Default,
                d.target.owner.span,
                None,
                format!("`{}` is not an inner input; only inner inputs take defaults", d.target),
            );
            continue;
        }
        let Some(value) = ctx.set_elements(set).iter().position(|e| *e == d.value.name) else {
            report.push(
                ViolationKind::Undeclared,
                d.value.span,
                None,
                format!("`{}` is not an element of `{set}`", d.value),
            );
            continue;
        };
        if defaults.insert(end, value).is_some() {
            report.push(
                ViolationKind::Default,
                d.target.owner.span,
                None,
                format!("`{}` has more than one default", d.target),
            );
        }
    }

    // modes: (name, mode-specific connections) in mode-set order
    let mut mode_box = None;
    let mut modes: Vec<(Option<String>, Vec<Wire>)> = vec![(None, Vec::new())];
    let blocks: Vec<&ModeBlock> = spec.mode_blocks().collect();
    for extra in blocks.iter().skip(1) {
        report.push(
            ViolationKind::Mode,
            extra.mode_box.span,
            None,
            "only one mode block is allowed".into(),
        );
    }
    if let Some(block) = blocks.first() {
        let local = |m: &Mode, report: &mut ValidationReport| -> Vec<Wire> {
            m.connects
                .iter()
                .filter_map(|c| ctx.connect(c, report).map(|(s, t)| (s, t, c.target.owner.span)))
                .collect()
        };
        match ctx.owner(&block.mode_box.name) {
            Some((Owner::Inner(k), decl)) => {
                let outs: Vec<&PortDecl> = decl.ports(PortDir::Out).collect();
                if outs.len() != 1 {
                    report.push(
                        ViolationKind::Mode,
                        block.mode_box.span,
                        None,
                        format!("mode box `{}` must have exactly one output port, found {}", block.mode_box, outs.len()),
                    );
                    modes = block.modes.iter().map(|m| (Some(m.name.name.clone()), local(m, &mut report))).collect();
                } else {
                    let elements = ctx.set_elements(&outs[0].set.name);
                    for m in &block.modes {
                        if !elements.contains(&m.name.name.as_str()) {
                            report.push(
                                ViolationKind::Mode,
                                m.name.span,
                                Some(&m.name.name),
                                format!("`{}` is not a value of `{}.{}`", m.name, block.mode_box, outs[0].name),
                            );
                        }
                    }
                    modes = elements
                        .iter()
                        .map(|e| match block.modes.iter().find(|m| m.name.name == *e) {
                            Some(m) => (Some(e.to_string()), local(m, &mut report)),
                            None => {
                                report.push(
                                    ViolationKind::Mode,
                                    block.mode_box.span,
                                    Some(e),
                                    format!("mode `{e}` of `{}` has no block", block.mode_box),
                                );
                                (Some(e.to_string()), Vec::new())
                            }
                        })
                        .collect();
                    mode_box = Some(k);
                }
            }
            found => {
                let (kind, message) = match found {
                    Some(_) => (ViolationKind::Mode, format!("the mode box `{}` must be an inner box", block.mode_box)),
                    None => (ViolationKind::Undeclared, format!("no box named `{}`", block.mode_box)),
                };
                report.push(kind, block.mode_box.span, None, message);
                modes = block.modes.iter().map(|m| (Some(m.name.name.clone()), local(m, &mut report))).collect();
            }
        }
    }

    for m in spec.machines() {
        if spec.inner_box(&m.owner.name).is_none() {
            report.push(
                ViolationKind::Undeclared,
                m.owner.span,
                None,
                format!("machine for undeclared box `{}`", m.owner),
            );
        }
    }

    // every target that must be driven, with its declaration
    let mut targets: Vec<(End, &PortDecl, String)> = Vec::new();
    for (k, b) in ctx.boxes.iter().enumerate() {
        for (i, p) in b.ports(PortDir::In).enumerate() {
            let end = End {
                owner: Owner::Inner(k),
                dir: PortDirKey::In,
                port: i,
            };
            targets.push((end, p, format!("{}.{}", b.name, p.name)));
        }
    }
    if let Some(o) = ctx.outer {
        for (i, p) in o.ports(PortDir::Out).enumerate() {
            let end = End {
                owner: Owner::Outer,
                dir: PortDirKey::Out,
                port: i,
            };
            targets.push((end, p, format!("{}.{}", o.name, p.name)));
        }
    }

    let mut inner_in = Vec::with_capacity(modes.len());
    let mut outer_out = Vec::with_capacity(modes.len());
    for (mode, local) in &modes {
        let mode = mode.as_deref();
        let mut drivers: HashMap<End, Vec<(End, Span)>> = HashMap::new();
        for &(s, t, span) in global.iter().chain(local) {
            drivers.entry(t).or_default().push((s, span));
        }
        let mut chosen: HashMap<End, Source> = HashMap::new();
        for (end, decl, name) in &targets {
            let found = drivers.get(end).map(Vec::as_slice).unwrap_or_default();
            match found {
                [] => match defaults.get(end) {
                    Some(&v) => {
                        chosen.insert(*end, Source::Default(v));
                    }
                    None => report.push(
                        ViolationKind::MissingDriver,
                        decl.name.span,
                        mode,
                        format!("no driver for `{name}`{}", mode_suffix(mode)),
                    ),
                },
                [(s, _)] => {
                    let src = match s.owner {
                        Owner::Inner(bx) => Source::Inner { bx, port: s.port },
                        Owner::Outer => Source::Outer { port: s.port },
                    };
                    chosen.insert(*end, src);
                }
                [_, (_, span), ..] => report.push(
                    ViolationKind::FanIn,
                    *span,
                    mode,
                    format!("`{name}` has {} drivers{}", found.len(), mode_suffix(mode)),
                ),
            }
        }
        if report.is_ok() {
            let per_box = ctx
                .boxes
                .iter()
                .enumerate()
                .map(|(k, b)| {
                    (0..b.ports(PortDir::In).count())
                        .map(|i| {
                            chosen[&End {
                                owner: Owner::Inner(k),
                                dir: PortDirKey::In,
                                port: i,
                            }]
                        })
                        .collect()
                })
                .collect();
            let outs = (0..ctx.outer.map_or(0, |o| o.ports(PortDir::Out).count()))
                .map(|i| {
                    chosen[&End {
                        owner: Owner::Outer,
                        dir: PortDirKey::Out,
                        port: i,
                    }]
                })
                .collect();
            inner_in.push(per_box);
            outer_out.push(outs);
        }
    }

    if !report.is_ok() {
        report.violations.sort_by_key(|v| (v.span.line, v.span.col));
        return Err(report);
    }
    Ok(Routing {
        mode_box,
        inner_in,
        outer_out,
    })
}
