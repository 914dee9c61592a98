//! Labeled finite sets and total functions between them.

use std::collections::HashSet;
use std::fmt;

use crate::error::{PolyError, Result};
use crate::label;

/// A finite set of string-labeled elements.
///
/// The element order is kept for serialization and enumeration; equality
/// compares the underlying sets and ignores both order and the set's name.
#[derive(Clone, Default)]
pub struct FinSet {
    label: String,
    elements: Vec<String>,
}

impl FinSet {
    pub fn new<S: Into<String>>(label: impl Into<String>, elements: Vec<S>) -> Result<Self> {
        let label = label.into();
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let mut seen = HashSet::with_capacity(elements.len());
        for e in &elements {
            if !seen.insert(e.as_str()) {
                return Err(PolyError::DuplicateLabel {
                    label: e.clone(),
                    context: format!("set `{label}`"),
                });
            }
        }
        Ok(FinSet { label, elements })
    }

    /// An unnamed set; panics on duplicate elements.
    ///
    /// Meant for literals in code and tests.
    pub fn of<S: AsRef<str>>(elements: &[S]) -> Self {
        FinSet::new("", elements.iter().map(|e| e.as_ref().to_string()).collect())
            .expect("duplicate element in set literal")
    }

    /// The ordinal `{0, 1, ..., n-1}`.
    pub fn ordinal(n: usize) -> Self {
        FinSet {
            label: String::new(),
            elements: (0..n).map(|k| k.to_string()).collect(),
        }
    }

    pub fn empty() -> Self {
        FinSet::default()
    }

    /// The one-element set `{*}`.
    pub fn point() -> Self {
        FinSet {
            label: String::new(),
            elements: vec![label::POINT.to_string()],
        }
    }

    /// Builds a set whose elements are already known to be distinct.
    pub(crate) fn from_distinct(elements: Vec<String>) -> Self {
        debug_assert_eq!(
            elements.iter().collect::<HashSet<_>>().len(),
            elements.len(),
            "from_distinct called with duplicates: {elements:?}"
        );
        FinSet {
            label: String::new(),
            elements,
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn get(&self, index: usize) -> &str {
        &self.elements[index]
    }

    pub fn index_of(&self, element: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == element)
    }

    pub fn contains(&self, element: &str) -> bool {
        self.index_of(element).is_some()
    }

    pub(crate) fn require(&self, element: &str, context: &str) -> Result<usize> {
        self.index_of(element).ok_or_else(|| PolyError::UnknownLabel {
            label: element.to_string(),
            context: context.to_string(),
        })
    }

    /// True when both sets list the same elements in the same order.
    pub fn same_order(&self, other: &FinSet) -> bool {
        self.elements == other.elements
    }

    /// Cartesian product with pair labels, first factor most significant.
    pub fn product(&self, other: &FinSet) -> FinSet {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for a in &self.elements {
            for b in &other.elements {
                out.push(label::pair(a, b));
            }
        }
        FinSet::from_distinct(out)
    }

    /// Disjoint union with `in0`/`in1` tags.
    pub fn coproduct(&self, other: &FinSet) -> FinSet {
        let out = self
            .elements
            .iter()
            .map(|a| label::inj(0, a))
            .chain(other.elements.iter().map(|b| label::inj(1, b)))
            .collect();
        FinSet::from_distinct(out)
    }
}

impl PartialEq for FinSet {
    fn eq(&self, other: &Self) -> bool {
        if self.elements.len() != other.elements.len() {
            return false;
        }
        if self.elements == other.elements {
            return true;
        }
        let mine: HashSet<&str> = self.elements.iter().map(String::as_str).collect();
        other.elements.iter().all(|e| mine.contains(e.as_str()))
    }
}

impl Eq for FinSet {}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.elements.join(","))
    }
}

impl fmt::Display for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A total function between finite sets, stored as a table of codomain indices.
#[derive(Clone, Debug)]
pub struct SetFn {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

impl SetFn {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(PolyError::ShapeMismatch(format!(
                "function table has {} entries but domain has {} elements",
                table.len(),
                dom.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= cod.len()) {
            return Err(PolyError::ShapeMismatch(format!(
                "function value index {bad} outside codomain of size {}",
                cod.len()
            )));
        }
        Ok(SetFn { dom, cod, table })
    }

    /// Builds a function from `(argument, value)` label pairs.
    pub fn from_pairs<S: AsRef<str>>(dom: FinSet, cod: FinSet, pairs: &[(S, S)]) -> Result<Self> {
        let mut table = vec![usize::MAX; dom.len()];
        for (a, b) in pairs {
            let i = dom.require(a.as_ref(), "function domain")?;
            let j = cod.require(b.as_ref(), "function codomain")?;
            if table[i] != usize::MAX {
                return Err(PolyError::DuplicateLabel {
                    label: a.as_ref().to_string(),
                    context: "function table".into(),
                });
            }
            table[i] = j;
        }
        if let Some(i) = table.iter().position(|&v| v == usize::MAX) {
            return Err(PolyError::ShapeMismatch(format!(
                "function undefined at `{}`",
                dom.get(i)
            )));
        }
        Ok(SetFn { dom, cod, table })
    }

    pub fn identity(set: &FinSet) -> Self {
        SetFn {
            dom: set.clone(),
            cod: set.clone(),
            table: (0..set.len()).collect(),
        }
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply_index(&self, i: usize) -> usize {
        self.table[i]
    }

    pub fn apply(&self, element: &str) -> Option<&str> {
        self.dom.index_of(element).map(|i| self.cod.get(self.table[i]))
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &SetFn) -> Result<SetFn> {
        if self.cod != next.dom {
            return Err(PolyError::ShapeMismatch(
                "composing functions with mismatched middle set".into(),
            ));
        }
        let table = self
            .table
            .iter()
            .map(|&j| {
                let idx = next.dom.index_of(self.cod.get(j)).expect("sets are equal");
                next.table[idx]
            })
            .collect();
        Ok(SetFn {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            table,
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.len()];
        self.table.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.cod.len()];
        for &v in &self.table {
            hit[v] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_bijective(&self) -> bool {
        self.dom.len() == self.cod.len() && self.is_injective()
    }
}

impl PartialEq for SetFn {
    fn eq(&self, other: &Self) -> bool {
        self.dom == other.dom
            && self.cod == other.cod
            && self
                .dom
                .elements()
                .iter()
                .all(|e| self.apply(e) == other.apply(e))
    }
}

impl Eq for SetFn {}

/// Pullback of a cospan `f: A -> C <- B: g`.
///
/// Returns the set of matching pairs `(a,b)` with its two projections.
pub fn pullback_set(f: &SetFn, g: &SetFn) -> Result<(FinSet, SetFn, SetFn)> {
    if f.cod != g.cod {
        return Err(PolyError::ShapeMismatch(
            "pullback of functions with different codomains".into(),
        ));
    }
    let mut labels = Vec::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (a, &fa) in f.table.iter().enumerate() {
        let target = f.cod.get(fa);
        for (b, &gb) in g.table.iter().enumerate() {
            if g.cod.get(gb) == target {
                labels.push(label::pair(f.dom.get(a), g.dom.get(b)));
                left.push(a);
                right.push(b);
            }
        }
    }
    let apex = FinSet::from_distinct(labels);
    let p1 = SetFn::new(apex.clone(), f.dom.clone(), left)?;
    let p2 = SetFn::new(apex.clone(), g.dom.clone(), right)?;
    Ok((apex, p1, p2))
}

/// Coequalizer of a parallel pair `f, g: A -> B`.
///
/// The quotient identifies `f(a) ~ g(a)` under the generated equivalence
/// relation; each class is labeled by its earliest member.
pub fn coequalizer_set(f: &SetFn, g: &SetFn) -> Result<(FinSet, SetFn)> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(PolyError::ShapeMismatch(
            "coequalizer of functions with different shapes".into(),
        ));
    }
    let n = f.cod.len();
    let mut uf = UnionFind::new(n);
    for a in 0..f.dom.len() {
        let a_in_g = g.dom.index_of(f.dom.get(a)).expect("domains are equal");
        let ga = f
            .cod
            .index_of(g.cod.get(g.table[a_in_g]))
            .expect("codomains are equal");
        uf.union(f.table[a], ga);
    }
    let (labels, table) = quotient_by(&f.cod, &mut uf);
    let quotient = FinSet::from_distinct(labels);
    let surjection = SetFn::new(f.cod.clone(), quotient.clone(), table)?;
    Ok((quotient, surjection))
}

/// Labels classes by their earliest member; returns class labels and the
/// element-to-class table.
pub(crate) fn quotient_by(set: &FinSet, uf: &mut UnionFind) -> (Vec<String>, Vec<usize>) {
    let n = set.len();
    let mut class_of_root = vec![usize::MAX; n];
    let mut labels = Vec::new();
    let mut table = Vec::with_capacity(n);
    for x in 0..n {
        let r = uf.find(x);
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = labels.len();
            labels.push(set.get(x).to_string());
        }
        table.push(class_of_root[r]);
    }
    (labels, table)
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller index as root so class order is stable
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}
