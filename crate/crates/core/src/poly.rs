//! Finite polynomial functors `Σ_{i ∈ p(1)} y^{p_i}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use crate::error::{PolyError, Result};
use crate::label;
use crate::odometer::Odometer;
use crate::set::FinSet;

/// One representable summand: a position together with its directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Position {
    pub label: String,
    pub dirs: FinSet,
}

/// A polynomial with finitely many positions, each carrying a finite set of
/// directions.
///
/// Positions are ordered; the order drives enumeration and serialization but
/// not equality, which compares positions by label.
#[derive(Clone, Default)]
pub struct FinPoly {
    positions: Vec<Position>,
    index: OnceLock<HashMap<String, usize>>,
}

impl FinPoly {
    pub fn new(positions: Vec<(String, FinSet)>) -> Result<Self> {
        let positions: Vec<Position> = positions
            .into_iter()
            .map(|(label, dirs)| Position { label, dirs })
            .collect();
        let poly = FinPoly {
            positions,
            index: OnceLock::new(),
        };
        let mut seen = HashMap::with_capacity(poly.positions.len());
        for (i, p) in poly.positions.iter().enumerate() {
            if seen.insert(p.label.clone(), i).is_some() {
                return Err(PolyError::DuplicateLabel {
                    label: p.label.clone(),
                    context: "polynomial positions".into(),
                });
            }
        }
        let _ = poly.index.set(seen);
        Ok(poly)
    }

    /// Positions whose labels are already known to be distinct.
    pub(crate) fn from_distinct(positions: Vec<Position>) -> Self {
        FinPoly {
            positions,
            index: OnceLock::new(),
        }
    }

    /// `0`, the polynomial with no positions.
    pub fn zero() -> Self {
        FinPoly::default()
    }

    /// `1`, one position with no directions.
    pub fn one() -> Self {
        FinPoly::constant(&FinSet::point())
    }

    /// `y`, one position with one direction.
    pub fn y() -> Self {
        FinPoly::representable(&FinSet::point())
    }

    /// The constant polynomial `A`.
    pub fn constant(a: &FinSet) -> Self {
        FinPoly::monomial(a, &FinSet::empty())
    }

    /// The linear polynomial `A y`.
    pub fn linear(a: &FinSet) -> Self {
        FinPoly::monomial(a, &FinSet::point())
    }

    /// The representable `y^A`.
    pub fn representable(a: &FinSet) -> Self {
        FinPoly::monomial(&FinSet::point(), a)
    }

    /// The monomial `B y^A`: `|B|` positions, each with directions `A`.
    pub fn monomial(b: &FinSet, a: &FinSet) -> Self {
        FinPoly::from_distinct(
            b.elements()
                .iter()
                .map(|pos| Position {
                    label: pos.clone(),
                    dirs: a.clone(),
                })
                .collect(),
        )
    }

    /// Positions `0..n` whose direction sets are ordinals of the given sizes.
    ///
    /// `from_exponents(&[2, 1, 1, 1, 0, 0])` is `y^2 + 3y + 2`.
    pub fn from_exponents(exponents: &[usize]) -> Self {
        FinPoly::from_distinct(
            exponents
                .iter()
                .enumerate()
                .map(|(i, &n)| Position {
                    label: i.to_string(),
                    dirs: FinSet::ordinal(n),
                })
                .collect(),
        )
    }

    pub fn positions(&self) -> &[Position] {
        &self.positions
    }

    pub fn num_positions(&self) -> usize {
        self.positions.len()
    }

    pub fn position_label(&self, i: usize) -> &str {
        &self.positions[i].label
    }

    pub fn dirs(&self, i: usize) -> &FinSet {
        &self.positions[i].dirs
    }

    pub fn dir_count(&self, i: usize) -> usize {
        self.positions[i].dirs.len()
    }

    /// The number of directions at each position, in position order.
    pub fn exponents(&self) -> Vec<usize> {
        self.positions.iter().map(|p| p.dirs.len()).collect()
    }

    pub fn total_dirs(&self) -> usize {
        self.positions.iter().map(|p| p.dirs.len()).sum()
    }

    fn index(&self) -> &HashMap<String, usize> {
        self.index.get_or_init(|| {
            self.positions
                .iter()
                .enumerate()
                .map(|(i, p)| (p.label.clone(), i))
                .collect()
        })
    }

    pub fn position_index(&self, label: &str) -> Option<usize> {
        self.index().get(label).copied()
    }

    pub(crate) fn require_position(&self, label: &str) -> Result<usize> {
        self.position_index(label)
            .ok_or_else(|| PolyError::UnknownLabel {
                label: label.to_string(),
                context: "polynomial positions".into(),
            })
    }

    /// `p(1)`, the set of positions.
    pub fn position_set(&self) -> FinSet {
        FinSet::from_distinct(self.positions.iter().map(|p| p.label.clone()).collect())
    }

    /// True when the two polynomials list identical labels in identical order.
    pub fn same_layout(&self, other: &FinPoly) -> bool {
        self.positions.len() == other.positions.len()
            && self
                .positions
                .iter()
                .zip(&other.positions)
                .all(|(a, b)| a.label == b.label && a.dirs.same_order(&b.dirs))
    }

    /// Multiset of direction counts, sorted descending: the isomorphism
    /// invariant of a finite polynomial.
    pub fn signature(&self) -> Vec<usize> {
        let mut sig = self.exponents();
        sig.sort_unstable_by(|a, b| b.cmp(a));
        sig
    }

    /// `p(X)`: pairs of a position and a function from its directions to `X`.
    pub fn eval(&self, x: &FinSet) -> FinSet {
        let mut out = Vec::new();
        for pos in &self.positions {
            for phi in Odometer::functions(pos.dirs.len(), x.len()) {
                let values: Vec<&str> = phi.iter().map(|&v| x.get(v)).collect();
                out.push(label::pair(
                    &pos.label,
                    &label::function(pos.dirs.elements(), &values),
                ));
            }
        }
        FinSet::from_distinct(out)
    }

    /// `p(0)`: positions with no directions.
    pub fn eval_empty(&self) -> FinSet {
        self.eval(&FinSet::empty())
    }

    /// Relabels to a representative of the isomorphism class.
    ///
    /// Positions become `"0","1",...` sorted by direction count (descending)
    /// and then by original label; directions become `"0".."n-1"`.
    pub fn canonical_form(&self) -> FinPoly {
        let mut order: Vec<usize> = (0..self.positions.len()).collect();
        order.sort_by(|&a, &b| {
            self.dir_count(b)
                .cmp(&self.dir_count(a))
                .then_with(|| self.positions[a].label.cmp(&self.positions[b].label))
        });
        let exps: Vec<usize> = order.iter().map(|&i| self.dir_count(i)).collect();
        FinPoly::from_exponents(&exps)
    }

    pub fn is_iso(&self, other: &FinPoly) -> bool {
        self.signature() == other.signature()
    }

    /// All direction sets are equal as labeled sets.
    pub fn is_monomial(&self) -> bool {
        match self.positions.first() {
            None => true,
            Some(first) => self.positions.iter().all(|p| p.dirs == first.dirs),
        }
    }

    /// Keeps only the positions selected by `keep`, in order.
    pub fn restrict(&self, keep: impl Fn(usize) -> bool) -> FinPoly {
        FinPoly::from_distinct(
            self.positions
                .iter()
                .enumerate()
                .filter(|(i, _)| keep(*i))
                .map(|(_, p)| p.clone())
                .collect(),
        )
    }

    /// Algebraic rendering such as `y^2 + 3y + 2`.
    pub fn algebraic(&self) -> String {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        for e in self.exponents() {
            *counts.entry(e).or_default() += 1;
        }
        if counts.is_empty() {
            return "0".into();
        }
        let terms: Vec<String> = counts
            .iter()
            .rev()
            .map(|(&e, &c)| {
                let coeff = if c == 1 && e > 0 {
                    String::new()
                } else {
                    c.to_string()
                };
                match e {
                    0 => c.to_string(),
                    1 => format!("{coeff}y"),
                    _ => format!("{coeff}y^{e}"),
                }
            })
            .collect();
        terms.join(" + ")
    }
}

impl PartialEq for FinPoly {
    fn eq(&self, other: &Self) -> bool {
        if self.positions.len() != other.positions.len() {
            return false;
        }
        if self.same_layout(other) {
            return true;
        }
        self.positions.iter().all(|p| {
            other
                .position_index(&p.label)
                .is_some_and(|j| other.dirs(j) == &p.dirs)
        })
    }
}

impl Eq for FinPoly {}

impl fmt::Debug for FinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("FinPoly[")?;
        for (k, p) in self.positions.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}:{:?}", p.label, p.dirs)?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for FinPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.algebraic())
    }
}

/// Builds a polynomial from `(position, directions)` label lists.
pub fn make_poly<P, D>(spec: Vec<(P, Vec<D>)>) -> Result<FinPoly>
where
    P: Into<String>,
    D: Into<String>,
{
    let positions = spec
        .into_iter()
        .map(|(label, dirs)| {
            let label = label.into();
            let set = FinSet::new(label.clone(), dirs)?;
            Ok((label, set))
        })
        .collect::<Result<Vec<_>>>()?;
    FinPoly::new(positions)
}
