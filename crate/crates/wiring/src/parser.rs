//! Hand-written lexer and recursive-descent parser.
//!
//! Keywords are contextual: `in`, `mode`, ... are ordinary identifiers
//! wherever the grammar expects a name.

use std::collections::HashMap;

use crate::ast::*;
use crate::error::{Result, WiringError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    Sym(&'static str),
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    span: Span,
}

const SYMBOLS: [&str; 10] = ["->", "{", "}", "(", ")", "=", ",", ";", ":", "."];

fn is_id_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut rest = text;
    while let Some(c) = rest.chars().next() {
        let span = Span { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            rest = &rest[1..];
        } else if c.is_ascii_whitespace() {
            col += 1;
            rest = &rest[1..];
        } else if c == '#' {
            let end = rest.find('\n').unwrap_or(rest.len());
            col += rest[..end].chars().count();
            rest = &rest[end..];
        } else if is_id_char(c) {
            let end = rest.find(|c| !is_id_char(c)).unwrap_or(rest.len());
            out.push(Token {
                tok: Tok::Id(rest[..end].to_string()),
                span,
            });
            col += end;
            rest = &rest[end..];
        } else if let Some(sym) = SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            out.push(Token { tok: Tok::Sym(sym), span });
            col += sym.len();
            rest = &rest[sym.len()..];
        } else {
            return Err(WiringError::Syntax {
                span,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span { line, col },
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Id(s) => format!("`{s}`"),
        Tok::Sym(s) => format!("`{s}`"),
        Tok::Eof => "end of input".into(),
    }
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> Result<T> {
        let t = self.peek();
        Err(WiringError::Syntax {
            span: t.span,
            message: format!("expected {expected}, found {}", describe(&t.tok)),
        })
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(x) if *x == s)
    }

    fn at_kw(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Id(x) if x == kw)
    }

    fn sym(&mut self, s: &str) -> Result<()> {
        if self.at_sym(s) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{s}`"))
        }
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.at_sym(s);
        if hit {
            self.bump();
        }
        hit
    }

    fn kw(&mut self, kw: &str) -> Result<()> {
        if self.at_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{kw}`"))
        }
    }

    fn ident(&mut self) -> Result<Ident> {
        match &self.peek().tok {
            Tok::Id(name) => {
                let ident = Ident {
                    name: name.clone(),
                    span: self.peek().span,
                };
                self.bump();
                Ok(ident)
            }
            _ => self.error("an identifier"),
        }
    }

    /// `{ a, b, c }`, possibly empty.
    fn ident_set(&mut self) -> Result<Vec<Ident>> {
        self.sym("{")?;
        let mut out = Vec::new();
        if !self.eat_sym("}") {
            loop {
                out.push(self.ident()?);
                if self.eat_sym("}") {
                    break;
                }
                self.sym(",")?;
            }
        }
        Ok(out)
    }

    fn port_ref(&mut self) -> Result<PortRef> {
        let owner = self.ident()?;
        self.sym(".")?;
        let port = self.ident()?;
        Ok(PortRef { owner, port })
    }

    /// After the `connect` keyword.
    fn connect(&mut self) -> Result<Connect> {
        let source = self.port_ref()?;
        self.sym("->")?;
        let target = self.port_ref()?;
        Ok(Connect { source, target })
    }

    fn box_body(&mut self) -> Result<BoxDecl> {
        let name = self.ident()?;
        self.sym("{")?;
        let mut ports = Vec::new();
        while !self.eat_sym("}") {
            let dir = if self.at_kw("in") {
                PortDir::In
            } else if self.at_kw("out") {
                PortDir::Out
            } else {
                return self.error("`in`, `out` or `}`");
            };
            self.bump();
            let port = self.ident()?;
            self.sym(":")?;
            let set = self.ident()?;
            self.sym(";")?;
            ports.push(PortDecl { dir, name: port, set });
        }
        Ok(BoxDecl { name, ports })
    }

    fn valuation(&mut self) -> Result<Valuation> {
        self.sym("(")?;
        let mut out = Vec::new();
        if !self.eat_sym(")") {
            loop {
                let port = self.ident()?;
                self.sym("=")?;
                let value = self.ident()?;
                out.push((port, value));
                if self.eat_sym(")") {
                    break;
                }
                self.sym(",")?;
            }
        }
        Ok(out)
    }

    fn modes(&mut self) -> Result<ModeBlock> {
        self.kw("from")?;
        let mode_box = self.ident()?;
        self.sym("{")?;
        let mut modes = Vec::new();
        loop {
            if self.at_sym("}") && !modes.is_empty() {
                self.bump();
                break;
            }
            self.kw("mode")?;
            let name = self.ident()?;
            self.sym("{")?;
            let mut connects = Vec::new();
            while !self.eat_sym("}") {
                if !self.at_kw("connect") {
                    return self.error("`connect` or `}`");
                }
                self.bump();
                connects.push(self.connect()?);
            }
            modes.push(Mode { name, connects });
        }
        Ok(ModeBlock { mode_box, modes })
    }

    fn machine(&mut self) -> Result<MachineDecl> {
        let owner = self.ident()?;
        self.sym("{")?;
        self.kw("states")?;
        self.sym("=")?;
        let states = self.ident_set()?;
        self.sym(";")?;
        self.kw("init")?;
        self.sym("=")?;
        let init = self.ident()?;
        self.sym(";")?;
        let mut readouts = Vec::new();
        while self.at_kw("readout") {
            self.bump();
            let state = self.ident()?;
            self.sym("=")?;
            let outputs = self.valuation()?;
            self.eat_sym(";");
            readouts.push(Readout { state, outputs });
        }
        let mut updates = Vec::new();
        while self.at_kw("update") {
            self.bump();
            let state = self.ident()?;
            let inputs = self.valuation()?;
            self.sym("=")?;
            let next = self.ident()?;
            self.eat_sym(";");
            updates.push(Update { state, inputs, next });
        }
        if !self.eat_sym("}") {
            return self.error("`readout`, `update` or `}`");
        }
        Ok(MachineDecl {
            owner,
            states,
            init,
            readouts,
            updates,
        })
    }

    fn item(&mut self) -> Result<Item> {
        let Tok::Id(kw) = self.peek().tok.clone() else {
            return self.error("a statement");
        };
        let item = match kw.as_str() {
            "set" => {
                self.bump();
                let name = self.ident()?;
                self.sym("=")?;
                let elements = self.ident_set()?;
                Item::Set(SetDecl { name, elements })
            }
            "box" => {
                self.bump();
                Item::Box(self.box_body()?)
            }
            "outer" => {
                self.bump();
                Item::Outer(self.box_body()?)
            }
            "connect" => {
                self.bump();
                Item::Connect(self.connect()?)
            }
            "default" => {
                self.bump();
                let target = self.port_ref()?;
                self.sym("=")?;
                let value = self.ident()?;
                Item::Default(DefaultDecl { target, value })
            }
            "modes" => {
                self.bump();
                Item::Modes(self.modes()?)
            }
            "machine" => {
                self.bump();
                Item::Machine(self.machine()?)
            }
            _ => return self.error("`set`, `box`, `outer`, `connect`, `default`, `modes` or `machine`"),
        };
        Ok(item)
    }
}

/// Records first occurrences, failing on a second one.
struct Seen {
    kind: &'static str,
    first: HashMap<String, Span>,
}

impl Seen {
    fn new(kind: &'static str) -> Self {
        Seen {
            kind,
            first: HashMap::new(),
        }
    }

    fn insert(&mut self, id: &Ident) -> Result<()> {
        if let Some(&first) = self.first.get(&id.name) {
            return Err(WiringError::Duplicate {
                kind: self.kind,
                name: id.name.clone(),
                span: id.span,
                first,
            });
        }
        self.first.insert(id.name.clone(), id.span);
        Ok(())
    }
}

/// Declaration-level checks: no name declared twice, every port typed by a
/// declared set. Everything about connections is left to validation.
fn check_declarations(spec: &WiringSpec) -> Result<()> {
    let mut sets = Seen::new("set");
    let mut boxes = Seen::new("box");
    let mut outer: Option<Span> = None;
    let mut machines = Seen::new("machine");
    for item in &spec.items {
        match item {
            Item::Set(s) => {
                sets.insert(&s.name)?;
                let mut elems = Seen::new("element");
                for e in &s.elements {
                    elems.insert(e)?;
                }
            }
            Item::Box(b) | Item::Outer(b) => {
                if matches!(item, Item::Outer(_)) {
                    if let Some(first) = outer {
                        return Err(WiringError::Duplicate {
                            kind: "outer box",
                            name: b.name.name.clone(),
                            span: b.name.span,
                            first,
                        });
                    }
                    outer = Some(b.name.span);
                }
                boxes.insert(&b.name)?;
                let mut ports = Seen::new("port");
                for p in &b.ports {
                    ports.insert(&p.name)?;
                }
            }
            Item::Modes(m) => {
                let mut names = Seen::new("mode");
                for mode in &m.modes {
                    names.insert(&mode.name)?;
                }
            }
            Item::Machine(m) => {
                machines.insert(&m.owner)?;
                let mut states = Seen::new("state");
                for s in &m.states {
                    states.insert(s)?;
                }
            }
            Item::Connect(_) | Item::Default(_) => {}
        }
    }
    for b in spec.boxes().chain(spec.outer()) {
        for p in &b.ports {
            if spec.set(&p.set.name).is_none() {
                return Err(WiringError::Undeclared {
                    kind: "set",
                    name: p.set.name.clone(),
                    span: p.set.span,
                });
            }
        }
    }
    Ok(())
}

/// Parses a program and checks its declarations.
pub fn parse(text: &str) -> Result<WiringSpec> {
    let spec = parse_syntax(text)?;
    check_declarations(&spec)?;
    Ok(spec)
}

/// Parses without declaration checks.
pub fn parse_syntax(text: &str) -> Result<WiringSpec> {
    let mut p = Parser {
        tokens: lex(text)?,
        pos: 0,
    };
    let mut items = Vec::new();
    while p.peek().tok != Tok::Eof {
        items.push(p.item()?);
    }
    Ok(WiringSpec { items })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax_at(text: &str) -> (usize, usize) {
        match parse(text) {
            Err(WiringError::Syntax { span, .. }) => (span.line, span.col),
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn empty_and_comment_only_files() {
        assert_eq!(parse("").unwrap(), WiringSpec::default());
        assert_eq!(parse("  # nothing\n\n# here").unwrap(), WiringSpec::default());
    }

    #[test]
    fn spans_are_one_based() {
        let spec = parse("set A = {a}\n  box B { out x : A; }").unwrap();
        let b = spec.inner_box("B").unwrap();
        assert_eq!((b.name.span.line, b.name.span.col), (2, 7));
        assert_eq!((b.ports[0].set.span.line, b.ports[0].set.span.col), (2, 19));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(syntax_at("set A = {a b}"), (1, 12));
        assert_eq!(syntax_at("set A = {a}\nconnect X.p => Y.q"), (2, 14));
        assert_eq!(syntax_at("box B { out x A; }"), (1, 15));
        assert_eq!(syntax_at("set A = {é}"), (1, 10));
        assert_eq!(syntax_at("modes from M { }"), (1, 16));
        assert_eq!(syntax_at("frobnicate"), (1, 1));
    }

    #[test]
    fn undeclared_set_is_named() {
        let err = parse("box B {\n  in x : Nope;\n}").unwrap_err();
        assert!(matches!(&err, WiringError::Undeclared { kind: "set", name, .. } if name == "Nope"));
        assert!(err.to_string().contains("Nope"));
        assert!(err.to_string().starts_with("2:10"));
    }

    #[test]
    fn duplicates_are_rejected() {
        for text in [
            "set A = {a}\nset A = {b}",
            "set A = {a, a}",
            "set A = {a}\nbox B { in x : A; out x : A; }",
            "box B { }\nouter B { }",
            "outer S { }\nouter T { }",
            "set A = {a}\nbox B { out x : A; }\nmachine B { states = {s, s}; init = s; }",
        ] {
            assert!(matches!(parse(text), Err(WiringError::Duplicate { .. })), "{text}");
        }
    }

    #[test]
    fn keywords_are_contextual() {
        let spec = parse("set in = {out, mode}\nbox box { in in : in; }").unwrap();
        assert_eq!(spec.inner_box("box").unwrap().ports[0].set.name, "in");
    }

    #[test]
    fn machine_rows_allow_optional_semicolons() {
        let text = "set A = {a}\nbox B { out x : A; }\nmachine B { states = {s}; init = s; readout s = (x = a); update s () = s; }";
        let m = parse(text).unwrap().machines().next().unwrap().clone();
        assert_eq!(m.readouts.len(), 1);
        assert_eq!(m.updates.len(), 1);
        assert!(m.updates[0].inputs.is_empty());
    }
}
