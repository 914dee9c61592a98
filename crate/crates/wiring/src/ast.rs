//! Syntax tree of a wiring program.
//!
//! Every name carries the source position it was read from. Positions are
//! ignored by equality, so a program and its reprinted, reparsed form
//! compare equal.

use std::fmt;

/// 1-based line and column of the first character of a token.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl Ident {
    pub fn new(name: impl Into<String>) -> Self {
        Ident {
            name: name.into(),
            span: Span::default(),
        }
    }
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Ident {}

impl fmt::Display for Ident {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PortDir {
    In,
    Out,
}

impl PortDir {
    pub fn keyword(self) -> &'static str {
        match self {
            PortDir::In => "in",
            PortDir::Out => "out",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortDecl {
    pub dir: PortDir,
    pub name: Ident,
    pub set: Ident,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetDecl {
    pub name: Ident,
    pub elements: Vec<Ident>,
}

/// A `box` or the `outer` box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxDecl {
    pub name: Ident,
    pub ports: Vec<PortDecl>,
}

impl BoxDecl {
    pub fn ports(&self, dir: PortDir) -> impl Iterator<Item = &PortDecl> {
        self.ports.iter().filter(move |p| p.dir == dir)
    }

    pub fn port(&self, name: &str) -> Option<&PortDecl> {
        self.ports.iter().find(|p| p.name.name == name)
    }
}

/// `Box.port`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PortRef {
    pub owner: Ident,
    pub port: Ident,
}

impl fmt::Display for PortRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.owner, self.port)
    }
}

/// `connect source -> target`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connect {
    pub source: PortRef,
    pub target: PortRef,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefaultDecl {
    pub target: PortRef,
    pub value: Ident,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mode {
    pub name: Ident,
    pub connects: Vec<Connect>,
}

/// Connections that apply only while the mode box emits the named value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModeBlock {
    pub mode_box: Ident,
    pub modes: Vec<Mode>,
}

/// Port assignments `(p = v, ...)`.
pub type Valuation = Vec<(Ident, Ident)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Readout {
    pub state: Ident,
    pub outputs: Valuation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Update {
    pub state: Ident,
    pub inputs: Valuation,
    pub next: Ident,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MachineDecl {
    pub owner: Ident,
    pub states: Vec<Ident>,
    pub init: Ident,
    pub readouts: Vec<Readout>,
    pub updates: Vec<Update>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Set(SetDecl),
    Box(BoxDecl),
    Outer(BoxDecl),
    Connect(Connect),
    Default(DefaultDecl),
    Modes(ModeBlock),
    Machine(MachineDecl),
}

/// A parsed program; items are kept in source order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WiringSpec {
    pub items: Vec<Item>,
}

impl WiringSpec {
    pub fn sets(&self) -> impl Iterator<Item = &SetDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Set(s) => Some(s),
            _ => None,
        })
    }

    pub fn set(&self, name: &str) -> Option<&SetDecl> {
        self.sets().find(|s| s.name.name == name)
    }

    /// Inner boxes in declaration order.
    pub fn boxes(&self) -> impl Iterator<Item = &BoxDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Box(b) => Some(b),
            _ => None,
        })
    }

    pub fn inner_box(&self, name: &str) -> Option<&BoxDecl> {
        self.boxes().find(|b| b.name.name == name)
    }

    pub fn outer(&self) -> Option<&BoxDecl> {
        self.items.iter().find_map(|i| match i {
            Item::Outer(b) => Some(b),
            _ => None,
        })
    }

    /// Connections outside any mode block.
    pub fn connects(&self) -> impl Iterator<Item = &Connect> {
        self.items.iter().filter_map(|i| match i {
            Item::Connect(c) => Some(c),
            _ => None,
        })
    }

    pub fn defaults(&self) -> impl Iterator<Item = &DefaultDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Default(d) => Some(d),
            _ => None,
        })
    }

    pub fn mode_blocks(&self) -> impl Iterator<Item = &ModeBlock> {
        self.items.iter().filter_map(|i| match i {
            Item::Modes(m) => Some(m),
            _ => None,
        })
    }

    pub fn machines(&self) -> impl Iterator<Item = &MachineDecl> {
        self.items.iter().filter_map(|i| match i {
            Item::Machine(m) => Some(m),
            _ => None,
        })
    }

    pub fn machine(&self, owner: &str) -> Option<&MachineDecl> {
        self.machines().find(|m| m.owner.name == owner)
    }
}
