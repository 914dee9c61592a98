//! Uniform-depth strategy trees, i.e. positions of `p^{∘n}`.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::json;
use crate::label;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyTree {
    depth: usize,
    position: Option<String>,
    branches: Vec<(String, StrategyTree)>,
}

impl StrategyTree {
    /// The depth-0 tree: the unique position of `y`.
    pub fn empty() -> Self {
        StrategyTree {
            depth: 0,
            position: None,
            branches: Vec::new(),
        }
    }

    /// A tree of depth `depth >= 1`; each branch must have depth `depth - 1`.
    pub fn node(depth: usize, position: String, branches: Vec<(String, StrategyTree)>) -> Self {
        assert!(depth >= 1, "nodes have depth at least 1");
        assert!(branches.iter().all(|(_, t)| t.depth + 1 == depth), "non-uniform depth");
        StrategyTree {
            depth,
            position: Some(position),
            branches,
        }
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn position(&self) -> Option<&str> {
        self.position.as_deref()
    }

    pub fn branches(&self) -> &[(String, StrategyTree)] {
        &self.branches
    }

    /// The label of the corresponding position of `compose_power(p, depth)`.
    pub fn label(&self) -> String {
        match (self.depth, &self.position) {
            (0, _) => label::POINT.to_string(),
            (1, Some(p)) => p.clone(),
            (_, Some(p)) => {
                let dirs: Vec<&str> = self.branches.iter().map(|(d, _)| d.as_str()).collect();
                let children: Vec<String> = self.branches.iter().map(|(_, t)| t.label()).collect();
                label::pair(p, &label::function(&dirs, &children))
            }
            _ => unreachable!("nodes carry a position"),
        }
    }

    /// `{"depth": n, "position": …, "branches": [{"direction": …, "tree": …}]}`,
    /// with `branches` omitted below depth 2 and `position` at depth 0.
    pub fn to_value(&self) -> Value {
        let mut fields = vec![("depth", json!(self.depth))];
        if let Some(p) = &self.position {
            fields.push(("position", json!(p)));
        }
        if self.depth >= 2 {
            let branches = self
                .branches
                .iter()
                .map(|(d, t)| json!({"direction": d, "tree": t.to_value()}))
                .collect();
            fields.push(("branches", Value::Array(branches)));
        }
        json::object(fields)
    }

    /// Graphviz `digraph`; nodes are numbered in preorder.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph strategy {\n");
        let mut next = 0;
        self.dot_node(&mut out, &mut next);
        out.push_str("}\n");
        out
    }

    fn dot_node(&self, out: &mut String, next: &mut usize) -> usize {
        let id = *next;
        *next += 1;
        let text = self.position.as_deref().unwrap_or(label::POINT);
        writeln!(out, "  n{id} [label={}];", quote(text)).expect("string write");
        if self.depth >= 2 {
            for (d, t) in &self.branches {
                let child = t.dot_node(out, next);
                writeln!(out, "  n{id} -> n{child} [label={}];", quote(d)).expect("string write");
            }
        }
        id
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_by_depth() {
        assert_eq!(StrategyTree::empty().label(), "*");
        let leaf = |p: &str| StrategyTree::node(1, p.into(), vec![("d".into(), StrategyTree::empty())]);
        assert_eq!(leaf("a").label(), "a");
        let t = StrategyTree::node(2, "a".into(), vec![("d".into(), leaf("b"))]);
        assert_eq!(t.label(), "(a,{d:b})");
        assert!(t.to_dot().contains("n0 -> n1 [label=\"d\"]"));
    }
}
