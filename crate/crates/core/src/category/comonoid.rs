//! Comonoids in `(Poly, ∘, y)` and their translation to and from categories.
//!
//! A comonoid is stored by the data its counit and comultiplication carry:
//! for each position `i` the chosen identity direction, the codomain
//! position `φ_i(d)` reached by each direction, and the composite
//! `ψ_i(d, e)` of `d` followed by `e ∈ C_{φ_i(d)}`. The lenses themselves can
//! be materialized on demand, but the carrier `C ∘ C` grows very quickly, so
//! laws are checked pointwise on this data.

use std::sync::Arc;

use serde_json::Value;

use crate::algebra::{compose, compose_lens, duoidal, tensor_lens, ComposeLayout, Monoidal};
use crate::error::{PolyError, Result};
use crate::json;
use crate::label;
use crate::lens::Lens;
use crate::poly::{FinPoly, Position};
use crate::report::Report;
use crate::set::FinSet;

use super::fincat::{check_category, FinCat, Morphism};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comonoid {
    carrier: Arc<FinPoly>,
    identity: Vec<usize>,
    targets: Vec<Vec<usize>>,
    composites: Vec<Vec<Vec<usize>>>,
}

impl Comonoid {
    /// Validates shapes only; use [`Comonoid::check_laws`] for the axioms.
    pub fn new(
        carrier: impl Into<Arc<FinPoly>>,
        identity: Vec<usize>,
        targets: Vec<Vec<usize>>,
        composites: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let carrier = carrier.into();
        let n = carrier.num_positions();
        let shape = |msg: &str| Err(PolyError::ShapeMismatch(format!("comonoid: {msg}")));
        if identity.len() != n || targets.len() != n || composites.len() != n {
            return shape("tables must cover every position");
        }
        for i in 0..n {
            let di = carrier.dir_count(i);
            if identity[i] >= di {
                return shape("identity direction out of range");
            }
            if targets[i].len() != di || targets[i].iter().any(|&j| j >= n) {
                return shape("codomain table out of range");
            }
            if composites[i].len() != di {
                return shape("composite table has the wrong length");
            }
            for (d, row) in composites[i].iter().enumerate() {
                let j = targets[i][d];
                if row.len() != carrier.dir_count(j) || row.iter().any(|&x| x >= di) {
                    return shape("composite out of range");
                }
            }
        }
        Ok(Comonoid {
            carrier,
            identity,
            targets,
            composites,
        })
    }

    pub fn carrier(&self) -> &FinPoly {
        &self.carrier
    }

    pub fn carrier_arc(&self) -> &Arc<FinPoly> {
        &self.carrier
    }

    /// The identity direction at position `i`.
    pub fn identity(&self, i: usize) -> usize {
        self.identity[i]
    }

    /// The position reached from `i` along direction `d`.
    pub fn target(&self, i: usize, d: usize) -> usize {
        self.targets[i][d]
    }

    /// The direction at `i` composed of `d` followed by `e`.
    pub fn composite(&self, i: usize, d: usize, e: usize) -> usize {
        self.composites[i][d][e]
    }

    /// `ε : C -> y`.
    pub fn counit(&self) -> Lens {
        Lens::new(
            self.carrier.clone(),
            FinPoly::y(),
            vec![0; self.carrier.num_positions()],
            self.identity.iter().map(|&d| vec![d]).collect(),
        )
        .expect("well-typed")
    }

    /// `δ : C -> C ∘ C`, refusing composites with more than `cap` entries.
    pub fn comult(&self, cap: usize) -> Result<Lens> {
        let c = &*self.carrier;
        let cc = crate::algebra::try_compose(c, c, cap)?;
        let layout = ComposeLayout::new(c, c)?;
        let mut on_pos = Vec::with_capacity(c.num_positions());
        let mut on_dir = Vec::with_capacity(c.num_positions());
        for i in 0..c.num_positions() {
            on_pos.push(layout.position(i, &self.targets[i]));
            on_dir.push(self.composites[i].iter().flatten().copied().collect());
        }
        Lens::new(self.carrier.clone(), cc, on_pos, on_dir)
    }

    /// Reads a comonoid off explicit counit and comultiplication lenses.
    pub fn from_lenses(counit: &Lens, comult: &Lens) -> Result<Self> {
        let c = counit.dom();
        if !counit.cod().same_layout(&FinPoly::y()) {
            return Err(PolyError::ShapeMismatch("counit must land in y".into()));
        }
        if *comult.dom() != *c {
            return Err(PolyError::ShapeMismatch("counit and comultiplication disagree on the carrier".into()));
        }
        let cc = compose(c, c);
        if !comult.cod().same_layout(&cc) {
            return Err(PolyError::ShapeMismatch("comultiplication must land in C ∘ C".into()));
        }
        let comult = comult.aligned_to(counit.dom_arc());
        let layout = ComposeLayout::new(c, c)?;
        let mut targets = Vec::with_capacity(c.num_positions());
        let mut composites = Vec::with_capacity(c.num_positions());
        for i in 0..c.num_positions() {
            let (i2, phi) = layout.decode(c, comult.on_pos(i));
            if i2 != i {
                return Err(PolyError::LawViolation(format!(
                    "right counit law: δ moves position `{}` to `{}`",
                    c.position_label(i),
                    c.position_label(i2)
                )));
            }
            let rows = phi
                .iter()
                .enumerate()
                .map(|(d, &j)| {
                    (0..c.dir_count(j))
                        .map(|e| comult.on_dir(i, ComposeLayout::direction(c, &phi, d, e)))
                        .collect()
                })
                .collect();
            targets.push(phi);
            composites.push(rows);
        }
        let identity = (0..c.num_positions()).map(|i| counit.on_dir(i, 0)).collect();
        Comonoid::new(counit.dom_arc().clone(), identity, targets, composites)
    }

    /// Counitality and coassociativity, checked pointwise.
    pub fn check_laws(&self) -> Report {
        let mut r = Report::new("comonoid");
        let c = &*self.carrier;
        let pos = |i: usize| c.position_label(i);
        let dir = |i: usize, d: usize| c.dirs(i).get(d);
        for i in 0..c.num_positions() {
            let id = self.identity[i];
            r.check(self.targets[i][id] == i, || {
                format!("left counit: identity at `{}` does not return to it", pos(i))
            });
            if self.targets[i][id] == i {
                for e in 0..c.dir_count(i) {
                    r.check(self.composites[i][id][e] == e, || {
                        format!("left counit: identity then `{}` at `{}`", dir(i, e), pos(i))
                    });
                }
            }
            for d in 0..c.dir_count(i) {
                let j = self.targets[i][d];
                r.check(self.composites[i][d][self.identity[j]] == d, || {
                    format!("right counit: `{}` then identity at `{}`", dir(i, d), pos(i))
                });
                for e in 0..c.dir_count(j) {
                    let de = self.composites[i][d][e];
                    let k = self.targets[j][e];
                    r.check(self.targets[i][de] == k, || {
                        format!(
                            "coassociativity: codomain of `{}`;`{}` at `{}`",
                            dir(i, d),
                            dir(j, e),
                            pos(i)
                        )
                    });
                    if self.targets[i][de] != k {
                        continue;
                    }
                    for g in 0..c.dir_count(k) {
                        let lhs = self.composites[i][de][g];
                        let rhs = self.composites[i][d][self.composites[j][e][g]];
                        r.check(lhs == rhs, || {
                            format!(
                                "coassociativity: (`{}`;`{}`);`{}` at `{}`",
                                dir(i, d),
                                dir(j, e),
                                dir(k, g),
                                pos(i)
                            )
                        });
                    }
                }
            }
        }
        r
    }

    /// The same laws as exact lens equalities, with unitors and the
    /// associator inserted. Only feasible for small carriers.
    pub fn check_laws_materialized(&self, cap: usize) -> Result<Report> {
        let mut r = Report::new("comonoid (lens equations)");
        let c = &*self.carrier;
        let delta = self.comult(cap)?;
        let eps = self.counit();
        let id = Lens::identity(self.carrier.clone());
        let left = delta
            .then(&compose_lens(&eps, &id))?
            .then(&Monoidal::Compose.left_unitor(c))?;
        r.check(left == id, || "(ε ∘ C) · δ ≠ id".into());
        let right = delta
            .then(&compose_lens(&id, &eps))?
            .then(&Monoidal::Compose.right_unitor(c))?;
        r.check(right == id, || "(C ∘ ε) · δ ≠ id".into());
        let cc = delta.cod().clone();
        if crate::algebra::compose_position_count(&cc, c).is_none_or(|n| n > cap) {
            return Err(PolyError::TooLarge {
                what: "C ∘ C ∘ C".into(),
                size: "over the cap".into(),
                cap,
            });
        }
        let lhs = delta
            .then(&compose_lens(&delta, &id))?
            .then(&Monoidal::Compose.associator(c, c, c))?;
        let rhs = delta.then(&compose_lens(&id, &delta))?;
        r.check(lhs == rhs, || "coassociativity fails as a lens equation".into());
        Ok(r)
    }

    pub fn to_value(&self, cap: usize) -> Result<Value> {
        Ok(json::object(vec![
            ("carrier", json::poly_to_value(&self.carrier)),
            ("counit", json::lens_to_value(&self.counit())),
            ("comult", json::lens_to_value(&self.comult(cap)?)),
        ]))
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let get = |k: &str| {
            v.get(k)
                .ok_or_else(|| PolyError::Json(format!("comonoid needs \"{k}\"")))
        };
        let carrier = json::poly_from_value(get("carrier")?)?;
        let counit = json::lens_from_value(get("counit")?)?;
        let comult = json::lens_from_value(get("comult")?)?;
        if *counit.dom() != carrier {
            return Err(PolyError::ShapeMismatch("counit domain is not the carrier".into()));
        }
        Comonoid::from_lenses(&counit, &comult)
    }
}

/// Labels of the morphism for direction `d` at `i`: the bare direction label
/// when direction labels are globally unique, else the pair `(i,d)`.
pub(crate) fn morphism_labels(c: &FinPoly) -> Vec<Vec<String>> {
    let mut seen = std::collections::HashSet::new();
    let unique = c
        .positions()
        .iter()
        .flat_map(|p| p.dirs.elements())
        .all(|d| seen.insert(d.as_str()));
    c.positions()
        .iter()
        .map(|p| {
            p.dirs
                .elements()
                .iter()
                .map(|d| {
                    if unique {
                        d.clone()
                    } else {
                        label::pair(&p.label, d)
                    }
                })
                .collect()
        })
        .collect()
}

/// Objects are positions, morphisms out of `i` are directions at `i`.
pub fn comonoid_to_category(c: &Comonoid) -> Result<FinCat> {
    let report = c.check_laws();
    if let Some(v) = report.violations.first() {
        return Err(PolyError::LawViolation(v.clone()));
    }
    let carrier = c.carrier();
    let labels = morphism_labels(carrier);
    let mut offset = Vec::with_capacity(carrier.num_positions());
    let mut morphisms = Vec::new();
    for i in 0..carrier.num_positions() {
        offset.push(morphisms.len());
        for d in 0..carrier.dir_count(i) {
            morphisms.push(Morphism {
                label: labels[i][d].clone(),
                dom: i,
                cod: c.targets[i][d],
            });
        }
    }
    let identity = (0..carrier.num_positions())
        .map(|i| offset[i] + c.identity[i])
        .collect();
    let mut table = Vec::new();
    for i in 0..carrier.num_positions() {
        for d in 0..carrier.dir_count(i) {
            let j = c.targets[i][d];
            for e in 0..carrier.dir_count(j) {
                table.push((offset[j] + e, offset[i] + d, offset[i] + c.composites[i][d][e]));
            }
        }
    }
    let objects = carrier.position_set().with_label("objects");
    FinCat::new(objects, morphisms, identity, &table)
}

/// Carrier `Σ_objects y^{outgoing morphisms}`; the counit picks identities
/// and the comultiplication records codomains and composites.
pub fn category_to_comonoid(k: &FinCat) -> Result<Comonoid> {
    let report = check_category(k);
    if let Some(v) = report.violations.first() {
        return Err(PolyError::LawViolation(v.clone()));
    }
    let n = k.num_objects();
    let mut local = vec![0; k.num_morphisms()];
    for o in 0..n {
        for (slot, &m) in k.out_of(o).iter().enumerate() {
            local[m] = slot;
        }
    }
    let positions = (0..n)
        .map(|o| Position {
            label: k.objects().get(o).to_string(),
            dirs: FinSet::from_distinct(
                k.out_of(o)
                    .iter()
                    .map(|&m| k.morphism(m).label.clone())
                    .collect(),
            ),
        })
        .collect();
    let carrier = FinPoly::from_distinct(positions);
    let identity = (0..n).map(|o| local[k.identity(o)]).collect();
    let targets = (0..n)
        .map(|o| k.out_of(o).iter().map(|&m| k.morphism(m).cod).collect())
        .collect();
    let composites = (0..n)
        .map(|o| {
            k.out_of(o)
                .iter()
                .map(|&f| {
                    k.out_of(k.morphism(f).cod)
                        .iter()
                        .map(|&g| local[k.compose(g, f).expect("composable")])
                        .collect()
                })
                .collect()
        })
        .collect();
    Comonoid::new(carrier, identity, targets, composites)
}

/// `S y^S`: the category with exactly one morphism between any two objects.
pub fn contractible(s: &FinSet) -> Comonoid {
    let n = s.len();
    let carrier = FinPoly::from_distinct(
        s.elements()
            .iter()
            .map(|x| Position {
                label: x.clone(),
                dirs: s.clone().with_label(x.clone()),
            })
            .collect(),
    );
    Comonoid::new(
        carrier,
        (0..n).collect(),
        vec![(0..n).collect(); n],
        vec![vec![(0..n).collect(); n]; n],
    )
    .expect("well-formed")
}

/// The comonoid `y`, whose category is terminal.
pub fn trivial() -> Comonoid {
    Comonoid::new(FinPoly::y(), vec![0], vec![vec![0]], vec![vec![vec![0]]]).expect("well-formed")
}

/// Carrier `C + D`; the category is the coproduct.
pub fn comonoid_sum(c: &Comonoid, d: &Comonoid) -> Comonoid {
    let carrier = crate::algebra::sum(c.carrier(), d.carrier());
    let shift = c.carrier().num_positions();
    let mut targets = c.targets.clone();
    targets.extend(
        d.targets
            .iter()
            .map(|row| row.iter().map(|&j| j + shift).collect()),
    );
    let mut identity = c.identity.clone();
    identity.extend_from_slice(&d.identity);
    let mut composites = c.composites.clone();
    composites.extend(d.composites.iter().cloned());
    Comonoid::new(carrier, identity, targets, composites).expect("well-formed")
}

/// Carrier `C ⊗ D` with the comultiplication `(δ_C ⊗ δ_D)` followed by the
/// duoidal interchange; the category is the product. When `C ∘ C` or
/// `D ∘ D` is too large to materialize, the same data is computed pointwise.
pub fn comonoid_tensor(c: &Comonoid, d: &Comonoid) -> Comonoid {
    let via_lenses = || -> Result<Comonoid> {
        let (cc, dc) = (c.carrier(), d.carrier());
        let count = |p: &FinPoly| crate::algebra::compose_position_count(p, p).unwrap_or(usize::MAX);
        let both = count(cc).saturating_mul(count(dc));
        if both > TENSOR_CAP || count(&crate::algebra::tensor(cc, dc)) > TENSOR_CAP {
            return Err(PolyError::TooLarge {
                what: "tensor comultiplication".into(),
                size: both.to_string(),
                cap: TENSOR_CAP,
            });
        }
        let delta = tensor_lens(&c.comult(TENSOR_CAP)?, &d.comult(TENSOR_CAP)?)
            .then(&duoidal(cc, cc, dc, dc))?;
        let eps = tensor_lens(&c.counit(), &d.counit()).then(&Monoidal::Tensor.left_unitor(&FinPoly::y()))?;
        Comonoid::from_lenses(&eps, &delta)
    };
    via_lenses().unwrap_or_else(|_| tensor_pointwise(c, d))
}

const TENSOR_CAP: usize = 1 << 12;

/// The n-ary tensor, with the carrier labelled as `tensor_all` labels it.
pub fn comonoid_tensor_all(cs: &[&Comonoid]) -> Comonoid {
    match cs {
        [] => trivial(),
        [c] => (*c).clone(),
        [first, rest @ ..] => {
            let folded = rest.iter().fold((*first).clone(), |acc, c| comonoid_tensor(&acc, c));
            let carriers: Vec<&FinPoly> = cs.iter().map(|c| c.carrier()).collect();
            Comonoid::new(
                crate::algebra::tensor_all(&carriers),
                folded.identity,
                folded.targets,
                folded.composites,
            )
            .expect("same layout")
        }
    }
}

fn tensor_pointwise(c: &Comonoid, d: &Comonoid) -> Comonoid {
    let (cc, dc) = (c.carrier(), d.carrier());
    let carrier = crate::algebra::tensor(cc, dc);
    let nd = dc.num_positions();
    let mut identity = Vec::with_capacity(carrier.num_positions());
    let mut targets = Vec::with_capacity(carrier.num_positions());
    let mut composites = Vec::with_capacity(carrier.num_positions());
    for a in 0..cc.num_positions() {
        for b in 0..nd {
            let (na, nb) = (cc.dir_count(a), dc.dir_count(b));
            identity.push(c.identity[a] * nb + d.identity[b]);
            let mut t = Vec::with_capacity(na * nb);
            let mut rows = Vec::with_capacity(na * nb);
            for f in 0..na {
                for g in 0..nb {
                    let (a2, b2) = (c.targets[a][f], d.targets[b][g]);
                    t.push(a2 * nd + b2);
                    let nb2 = dc.dir_count(b2);
                    let mut row = Vec::with_capacity(cc.dir_count(a2) * nb2);
                    for f2 in 0..cc.dir_count(a2) {
                        for g2 in 0..nb2 {
                            row.push(c.composites[a][f][f2] * nb + d.composites[b][g][g2]);
                        }
                    }
                    rows.push(row);
                }
            }
            targets.push(t);
            composites.push(rows);
        }
    }
    Comonoid::new(carrier, identity, targets, composites).expect("well-formed")
}
