//! Finite limits of polynomials over diagrams shaped by finite categories.
//!
//! Positions of a limit are the matching families of positions; directions
//! at a family are the colimit of the direction sets involved, glued along
//! the on-direction maps of the diagram.

use std::sync::Arc;

use crate::category::{check_category, FinCat, Morphism};
use crate::error::{PolyError, Result};
use crate::label;
use crate::lens::Lens;
use crate::odometer::Odometer;
use crate::poly::{FinPoly, Position};
use crate::report::Report;
use crate::set::{quotient_by, FinSet, UnionFind};

use super::hom::{hom_enumerate, DEFAULT_CAP};

/// A functor from a finite category into Poly.
#[derive(Debug, Clone)]
pub struct Diagram {
    shape: FinCat,
    objects: Vec<Arc<FinPoly>>,
    morphisms: Vec<Lens>,
}

impl Diagram {
    /// Checks that lenses match the shape's endpoints and that identities
    /// and composites are preserved.
    pub fn new(shape: FinCat, objects: Vec<FinPoly>, morphisms: Vec<Lens>) -> Result<Self> {
        if let Some(v) = check_category(&shape).violations.first() {
            return Err(PolyError::LawViolation(format!("diagram shape: {v}")));
        }
        if objects.len() != shape.num_objects() || morphisms.len() != shape.num_morphisms() {
            return Err(PolyError::ShapeMismatch(
                "diagram needs one polynomial per object and one lens per morphism".into(),
            ));
        }
        let objects: Vec<Arc<FinPoly>> = objects.into_iter().map(Arc::new).collect();
        let mut aligned = Vec::with_capacity(morphisms.len());
        for (k, f) in morphisms.into_iter().enumerate() {
            let m = shape.morphism(k);
            if *f.dom() != *objects[m.dom] || *f.cod() != *objects[m.cod] {
                return Err(PolyError::ShapeMismatch(format!(
                    "lens for `{}` has the wrong endpoints",
                    m.label
                )));
            }
            aligned.push(
                Lens::new(
                    objects[m.dom].clone(),
                    objects[m.cod].clone(),
                    f.on_pos_table().to_vec(),
                    f.on_dir_table().to_vec(),
                )
                .expect("same layout"),
            );
        }
        for o in 0..shape.num_objects() {
            if aligned[shape.identity(o)] != Lens::identity(objects[o].clone()) {
                return Err(PolyError::LawViolation(format!(
                    "non-functorial diagram: identity of `{}` is not sent to an identity",
                    shape.objects().get(o)
                )));
            }
        }
        for f in 0..shape.num_morphisms() {
            for &g in shape.out_of(shape.morphism(f).cod) {
                let h = shape.compose(g, f).expect("composable");
                if aligned[f].then(&aligned[g])? != aligned[h] {
                    return Err(PolyError::LawViolation(format!(
                        "non-functorial diagram: `{}` ∘ `{}` is not sent to the composite",
                        shape.morphism(g).label,
                        shape.morphism(f).label
                    )));
                }
            }
        }
        Ok(Diagram {
            shape,
            objects,
            morphisms: aligned,
        })
    }

    pub fn shape(&self) -> &FinCat {
        &self.shape
    }

    pub fn object(&self, c: usize) -> &FinPoly {
        &self.objects[c]
    }

    pub fn lens(&self, m: usize) -> &Lens {
        &self.morphisms[m]
    }
}

/// The limit object with one leg per object of the shape.
#[derive(Debug, Clone)]
pub struct Cone {
    pub apex: Arc<FinPoly>,
    pub legs: Vec<Lens>,
}

/// Matching families, by backtracking over shape objects in order.
fn families(d: &Diagram) -> Vec<Vec<usize>> {
    let n = d.shape.num_objects();
    let mut out = Vec::new();
    let mut family = vec![usize::MAX; n];
    fn go(d: &Diagram, c: usize, family: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if c == family.len() {
            out.push(family.clone());
            return;
        }
        for x in 0..d.objects[c].num_positions() {
            family[c] = x;
            let consistent = d.shape.morphisms().iter().enumerate().all(|(k, m)| {
                m.dom > c || m.cod > c || d.morphisms[k].on_pos(family[m.dom]) == family[m.cod]
            });
            if consistent {
                go(d, c + 1, family, out);
            }
        }
        family[c] = usize::MAX;
    }
    go(d, 0, &mut family, &mut out);
    out
}

pub fn limit(d: &Diagram) -> Cone {
    let n = d.shape.num_objects();
    let fams = families(d);
    let mut positions = Vec::with_capacity(fams.len());
    // for each family and object, the class of each direction at that object
    let mut classes: Vec<Vec<Vec<usize>>> = Vec::with_capacity(fams.len());
    for fam in &fams {
        let mut offsets = Vec::with_capacity(n);
        let mut all = Vec::new();
        for c in 0..n {
            offsets.push(all.len());
            for e in d.objects[c].dirs(fam[c]).elements() {
                all.push(if n == 1 { e.clone() } else { label::inj(c, e) });
            }
        }
        let mut uf = UnionFind::new(all.len());
        for (k, m) in d.shape.morphisms().iter().enumerate() {
            let f = &d.morphisms[k];
            for e in 0..d.objects[m.cod].dir_count(fam[m.cod]) {
                uf.union(offsets[m.cod] + e, offsets[m.dom] + f.on_dir(fam[m.dom], e));
            }
        }
        let (labels, table) = quotient_by(&FinSet::from_distinct(all), &mut uf);
        classes.push(
            (0..n)
                .map(|c| {
                    let len = d.objects[c].dir_count(fam[c]);
                    table[offsets[c]..offsets[c] + len].to_vec()
                })
                .collect(),
        );
        let parts: Vec<&str> = (0..n).map(|c| d.objects[c].position_label(fam[c])).collect();
        positions.push(Position {
            label: label::flat_tuple(&parts),
            dirs: FinSet::from_distinct(labels),
        });
    }
    let apex = Arc::new(FinPoly::from_distinct(positions));
    let legs = (0..n)
        .map(|c| {
            Lens::new(
                apex.clone(),
                d.objects[c].clone(),
                fams.iter().map(|f| f[c]).collect(),
                classes.iter().map(|cl| cl[c].clone()).collect(),
            )
            .expect("well-typed")
        })
        .collect();
    Cone { apex, legs }
}

fn shape(objects: &[&str], arrows: &[(&str, usize, usize)], composites: &[(usize, usize, usize)]) -> FinCat {
    let n = objects.len();
    let mut morphisms: Vec<Morphism> = (0..n)
        .map(|o| Morphism {
            label: format!("id_{}", objects[o]),
            dom: o,
            cod: o,
        })
        .collect();
    morphisms.extend(arrows.iter().map(|&(l, dom, cod)| Morphism {
        label: l.to_string(),
        dom,
        cod,
    }));
    let mut table: Vec<(usize, usize, usize)> = composites.to_vec();
    for (k, m) in morphisms.iter().enumerate() {
        table.push((k, m.dom, k));
        if k >= n {
            table.push((m.cod, k, k));
        }
    }
    FinCat::new(FinSet::of(objects), morphisms, (0..n).collect(), &table).expect("well-formed")
}

pub fn terminal() -> Cone {
    let d = Diagram::new(shape(&[], &[], &[]), Vec::new(), Vec::new()).expect("empty diagram");
    limit(&d)
}

/// The discrete diagram on `p` and `q`.
pub fn product_diagram(p: &FinPoly, q: &FinPoly) -> Diagram {
    Diagram::new(
        shape(&["a", "b"], &[], &[]),
        vec![p.clone(), q.clone()],
        vec![Lens::identity(p.clone()), Lens::identity(q.clone())],
    )
    .expect("discrete diagram")
}

/// The parallel pair `f, g: p ⇉ q`.
pub fn equalizer_diagram(f: &Lens, g: &Lens) -> Result<Diagram> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(PolyError::ShapeMismatch("equalizer of non-parallel lenses".into()));
    }
    Diagram::new(
        shape(&["a", "b"], &[("s", 0, 1), ("t", 0, 1)], &[]),
        vec![f.dom().clone(), f.cod().clone()],
        vec![
            Lens::identity(f.dom().clone()),
            Lens::identity(f.cod().clone()),
            f.clone(),
            g.clone(),
        ],
    )
}

/// The cospan `f: p -> r`, `g: q -> r`.
pub fn pullback_diagram(f: &Lens, g: &Lens) -> Result<Diagram> {
    if f.cod() != g.cod() {
        return Err(PolyError::ShapeMismatch("pullback of lenses with different codomains".into()));
    }
    Diagram::new(
        shape(&["a", "b", "c"], &[("u", 0, 2), ("v", 1, 2)], &[]),
        vec![f.dom().clone(), g.dom().clone(), f.cod().clone()],
        vec![
            Lens::identity(f.dom().clone()),
            Lens::identity(g.dom().clone()),
            Lens::identity(f.cod().clone()),
            f.clone(),
            g.clone(),
        ],
    )
}

pub fn binary_product(p: &FinPoly, q: &FinPoly) -> Cone {
    limit(&product_diagram(p, q))
}

/// Returns the equalizer object and its inclusion into `dom(f)`.
pub fn equalizer(f: &Lens, g: &Lens) -> Result<(Arc<FinPoly>, Lens)> {
    let mut cone = limit(&equalizer_diagram(f, g)?);
    Ok((cone.apex, cone.legs.swap_remove(0)))
}

/// The pullback of a cospan `f: p -> r`, `g: q -> r`, with legs to `p` and `q`.
pub fn pullback(f: &Lens, g: &Lens) -> Result<(Arc<FinPoly>, Lens, Lens)> {
    let cone = limit(&pullback_diagram(f, g)?);
    let mut legs = cone.legs.into_iter();
    let (a, b) = (legs.next().expect("leg"), legs.next().expect("leg"));
    Ok((cone.apex, a, b))
}

/// Test objects for the universal property: `1`, `y`, `y + 1`, `y^2`.
pub fn cone_test_objects() -> Vec<FinPoly> {
    vec![
        FinPoly::from_exponents(&[0]),
        FinPoly::from_exponents(&[1]),
        FinPoly::from_exponents(&[1, 0]),
        FinPoly::from_exponents(&[2]),
    ]
}

/// For every cone from each test object, counts mediating lenses into the
/// apex by filtering the enumerated hom-set; exactly one must exist.
pub fn check_universal_property(d: &Diagram, cone: &Cone, tests: &[FinPoly]) -> Result<Report> {
    let mut r = Report::new("universal property");
    let n = d.shape.num_objects();
    for t in tests {
        let homs: Vec<Vec<Lens>> = (0..n)
            .map(|c| hom_enumerate(t, d.object(c), DEFAULT_CAP))
            .collect::<Result<_>>()?;
        let mediators = hom_enumerate(t, &cone.apex, DEFAULT_CAP)?;
        let composites: Vec<Vec<Lens>> = mediators
            .iter()
            .map(|m| cone.legs.iter().map(|leg| m.then(leg)).collect::<Result<_>>())
            .collect::<Result<_>>()?;
        for pick in Odometer::new(homs.iter().map(Vec::len).collect()) {
            let legs: Vec<&Lens> = (0..n).map(|c| &homs[c][pick[c]]).collect();
            let is_cone = d.shape.morphisms().iter().enumerate().all(|(k, m)| {
                legs[m.dom].then(&d.morphisms[k]).map(|x| x == *legs[m.cod]).unwrap_or(false)
            });
            if !is_cone {
                continue;
            }
            let count = composites
                .iter()
                .filter(|comp| comp.iter().zip(&legs).all(|(a, b)| a == *b))
                .count();
            r.check(count == 1, || {
                format!(
                    "cone from {} with legs {:?} has {count} mediating lenses",
                    t.algebraic(),
                    legs.iter().map(|l| l.on_pos_table()).collect::<Vec<_>>()
                )
            });
        }
    }
    Ok(r)
}
