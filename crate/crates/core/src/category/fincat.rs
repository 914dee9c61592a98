//! Finite categories given by explicit composition tables.

use std::collections::{HashMap, HashSet};

use serde_json::{json, Value};

use crate::error::{PolyError, Result};
use crate::json;
use crate::report::Report;
use crate::set::FinSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub label: String,
    pub dom: usize,
    pub cod: usize,
}

/// A finite category. `compose[g][f]` is `g ∘ f`, present exactly when
/// `cod f = dom g` (checked by [`check_category`], not by construction).
#[derive(Debug, Clone)]
pub struct FinCat {
    objects: FinSet,
    morphisms: Vec<Morphism>,
    identity: Vec<usize>,
    compose: Vec<Vec<Option<usize>>>,
    out: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl FinCat {
    pub fn new(
        objects: FinSet,
        morphisms: Vec<Morphism>,
        identity: Vec<usize>,
        composites: &[(usize, usize, usize)],
    ) -> Result<Self> {
        let n = morphisms.len();
        let mut index = HashMap::with_capacity(n);
        for (k, m) in morphisms.iter().enumerate() {
            if index.insert(m.label.clone(), k).is_some() {
                return Err(PolyError::DuplicateLabel {
                    label: m.label.clone(),
                    context: "morphisms".into(),
                });
            }
            if m.dom >= objects.len() || m.cod >= objects.len() {
                return Err(PolyError::ShapeMismatch(format!(
                    "morphism `{}` has an endpoint outside the objects",
                    m.label
                )));
            }
        }
        if identity.len() != objects.len() || identity.iter().any(|&m| m >= n) {
            return Err(PolyError::ShapeMismatch(
                "one identity morphism per object required".into(),
            ));
        }
        let mut compose = vec![vec![None; n]; n];
        for &(g, f, h) in composites {
            if g >= n || f >= n || h >= n {
                return Err(PolyError::ShapeMismatch("composite outside morphisms".into()));
            }
            if compose[g][f].replace(h).is_some() {
                return Err(PolyError::ShapeMismatch(format!(
                    "composite of `{}` after `{}` given twice",
                    morphisms[g].label, morphisms[f].label
                )));
            }
        }
        let mut out = vec![Vec::new(); objects.len()];
        for (k, m) in morphisms.iter().enumerate() {
            out[m.dom].push(k);
        }
        Ok(FinCat {
            objects,
            morphisms,
            identity,
            compose,
            out,
            index,
        })
    }

    /// Builds a category from labels. Composites with identities may be
    /// omitted; they are filled in.
    pub fn from_labels(
        objects: &[&str],
        morphisms: &[(&str, &str, &str)],
        identities: &[(&str, &str)],
        composites: &[(&str, &str, &str)],
    ) -> Result<Self> {
        let objs = FinSet::new("objects", objects.to_vec())?;
        let obj = |l: &str| objs.require(l, "objects");
        let mut morph = Vec::new();
        for &(l, d, c) in morphisms {
            morph.push(Morphism {
                label: l.to_string(),
                dom: obj(d)?,
                cod: obj(c)?,
            });
        }
        let find = |l: &str| {
            morph
                .iter()
                .position(|m| m.label == l)
                .ok_or_else(|| PolyError::UnknownLabel {
                    label: l.to_string(),
                    context: "morphisms".into(),
                })
        };
        let mut identity = vec![usize::MAX; objs.len()];
        for &(o, m) in identities {
            identity[obj(o)?] = find(m)?;
        }
        if identity.contains(&usize::MAX) {
            return Err(PolyError::ShapeMismatch("every object needs an identity".into()));
        }
        let mut table = Vec::new();
        let mut seen = HashSet::new();
        for &(g, f, h) in composites {
            let t = (find(g)?, find(f)?, find(h)?);
            seen.insert((t.0, t.1));
            table.push(t);
        }
        for (k, m) in morph.iter().enumerate() {
            let (before, after) = (identity[m.dom], identity[m.cod]);
            if seen.insert((k, before)) {
                table.push((k, before, k));
            }
            if seen.insert((after, k)) {
                table.push((after, k, k));
            }
        }
        FinCat::new(objs, morph, identity, &table)
    }

    pub fn objects(&self) -> &FinSet {
        &self.objects
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.morphisms
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn morphism(&self, k: usize) -> &Morphism {
        &self.morphisms[k]
    }

    pub fn morphism_index(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn identity(&self, object: usize) -> usize {
        self.identity[object]
    }

    /// `g ∘ f`, if defined.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    /// Morphisms with domain `object`, in morphism order.
    pub fn out_of(&self, object: usize) -> &[usize] {
        &self.out[object]
    }

    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        self.out[a]
            .iter()
            .copied()
            .filter(|&m| self.morphisms[m].cod == b)
            .collect()
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identity[self.morphisms[m].dom] == m
    }

    /// A one-object category from a monoid table (`table[g][f] = g·f`, with
    /// element 0 the unit).
    pub fn monoid(labels: &[&str], table: &[Vec<usize>]) -> Result<Self> {
        let n = labels.len();
        let objects = FinSet::of(&["*"]);
        let morphisms = labels
            .iter()
            .map(|l| Morphism {
                label: l.to_string(),
                dom: 0,
                cod: 0,
            })
            .collect();
        let mut comp = Vec::with_capacity(n * n);
        for (g, row) in table.iter().enumerate() {
            for (f, &h) in row.iter().enumerate() {
                comp.push((g, f, h));
            }
        }
        FinCat::new(objects, morphisms, vec![0], &comp)
    }

    /// The discrete category on `objects`.
    pub fn discrete(objects: &FinSet) -> Self {
        let morphisms: Vec<Morphism> = (0..objects.len())
            .map(|o| Morphism {
                label: format!("id_{}", objects.get(o)),
                dom: o,
                cod: o,
            })
            .collect();
        let comp: Vec<_> = (0..objects.len()).map(|o| (o, o, o)).collect();
        FinCat::new(objects.clone(), morphisms, (0..objects.len()).collect(), &comp)
            .expect("well-formed")
    }

    pub fn to_value(&self) -> Value {
        let m = |k: usize| self.morphisms[k].label.as_str();
        let mut composition = Vec::new();
        for g in 0..self.morphisms.len() {
            for f in 0..self.morphisms.len() {
                if let Some(h) = self.compose[g][f] {
                    composition.push(json!({"after": m(g), "before": m(f), "result": m(h)}));
                }
            }
        }
        json::object(vec![
            ("objects", json!(self.objects.elements())),
            (
                "morphisms",
                Value::Array(
                    self.morphisms
                        .iter()
                        .map(|mm| {
                            json!({
                                "label": mm.label,
                                "dom": self.objects.get(mm.dom),
                                "cod": self.objects.get(mm.cod),
                            })
                        })
                        .collect(),
                ),
            ),
            (
                "identities",
                Value::Object(
                    (0..self.num_objects())
                        .map(|o| (self.objects.get(o).to_string(), json!(m(self.identity[o]))))
                        .collect(),
                ),
            ),
            ("composition", Value::Array(composition)),
        ])
    }

    pub fn from_value(v: &Value) -> Result<Self> {
        let bad = |s: &str| PolyError::Json(s.to_string());
        let str_of = |v: &Value, k: &str| -> Result<String> {
            v.get(k)
                .and_then(Value::as_str)
                .map(str::to_string)
                .ok_or_else(|| bad(&format!("missing string field \"{k}\"")))
        };
        let objects: Vec<String> = v
            .get("objects")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("category needs \"objects\""))?
            .iter()
            .map(|o| o.as_str().map(str::to_string).ok_or_else(|| bad("object labels are strings")))
            .collect::<Result<_>>()?;
        let mut morphisms = Vec::new();
        for mm in v
            .get("morphisms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("category needs \"morphisms\""))?
        {
            morphisms.push((str_of(mm, "label")?, str_of(mm, "dom")?, str_of(mm, "cod")?));
        }
        let ids: Vec<(String, String)> = v
            .get("identities")
            .and_then(Value::as_object)
            .ok_or_else(|| bad("category needs \"identities\""))?
            .iter()
            .map(|(k, m)| {
                m.as_str()
                    .map(|s| (k.clone(), s.to_string()))
                    .ok_or_else(|| bad("identities map to labels"))
            })
            .collect::<Result<_>>()?;
        let mut comps = Vec::new();
        for c in v
            .get("composition")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("category needs \"composition\""))?
        {
            comps.push((str_of(c, "after")?, str_of(c, "before")?, str_of(c, "result")?));
        }
        let o: Vec<&str> = objects.iter().map(String::as_str).collect();
        let m: Vec<(&str, &str, &str)> = morphisms
            .iter()
            .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
            .collect();
        let i: Vec<(&str, &str)> = ids.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let c: Vec<(&str, &str, &str)> = comps
            .iter()
            .map(|(a, b, c)| (a.as_str(), b.as_str(), c.as_str()))
            .collect();
        FinCat::from_labels(&o, &m, &i, &c)
    }
}

/// Exhaustively checks the category axioms.
pub fn check_category(k: &FinCat) -> Report {
    let mut report = Report::new("category");
    let label = |m: usize| k.morphisms[m].label.as_str();
    for o in 0..k.num_objects() {
        let id = k.identity[o];
        report.check(k.morphisms[id].dom == o && k.morphisms[id].cod == o, || {
            format!("identity `{}` is not an endomorphism of `{}`", label(id), k.objects.get(o))
        });
    }
    let n = k.num_morphisms();
    for g in 0..n {
        for f in 0..n {
            let composable = k.morphisms[f].cod == k.morphisms[g].dom;
            match (composable, k.compose[g][f]) {
                (true, None) => report.fail(format!("`{}` ∘ `{}` is undefined", label(g), label(f))),
                (false, Some(_)) => report.fail(format!(
                    "`{}` ∘ `{}` is defined on a non-composable pair",
                    label(g),
                    label(f)
                )),
                (true, Some(h)) => report.check(
                    k.morphisms[h].dom == k.morphisms[f].dom && k.morphisms[h].cod == k.morphisms[g].cod,
                    || format!("`{}` ∘ `{}` = `{}` has the wrong endpoints", label(g), label(f), label(h)),
                ),
                (false, None) => {}
            }
        }
    }
    if !report.is_ok() {
        return report;
    }
    for f in 0..n {
        let m = &k.morphisms[f];
        let (l, r) = (k.identity[m.cod], k.identity[m.dom]);
        report.check(k.compose[l][f] == Some(f), || format!("id ∘ `{}` ≠ `{}`", label(f), label(f)));
        report.check(k.compose[f][r] == Some(f), || format!("`{}` ∘ id ≠ `{}`", label(f), label(f)));
    }
    for f in 0..n {
        for &g in &k.out[k.morphisms[f].cod] {
            let gf = k.compose[g][f].expect("checked");
            for &h in &k.out[k.morphisms[g].cod] {
                let hg = k.compose[h][g].expect("checked");
                let lhs = k.compose[h][gf];
                let rhs = k.compose[hg][f];
                report.check(lhs == rhs, || {
                    format!("associativity fails for `{}`, `{}`, `{}`", label(h), label(g), label(f))
                });
            }
        }
    }
    report
}

/// An isomorphism of categories, as object and morphism maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatIso {
    pub objects: Vec<usize>,
    pub morphisms: Vec<usize>,
}

/// Searches for an isomorphism `a -> b` by backtracking.
pub fn find_isomorphism(a: &FinCat, b: &FinCat) -> Option<CatIso> {
    if a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms() {
        return None;
    }
    let n = a.num_objects();
    let hom_sizes = |k: &FinCat| -> Vec<Vec<usize>> {
        let mut h = vec![vec![0; n]; n];
        for m in &k.morphisms {
            h[m.dom][m.cod] += 1;
        }
        h
    };
    let (ha, hb) = (hom_sizes(a), hom_sizes(b));
    let mut obj = vec![usize::MAX; n];
    let mut used = vec![false; n];
    search_objects(a, b, &ha, &hb, 0, &mut obj, &mut used)
}

fn search_objects(
    a: &FinCat,
    b: &FinCat,
    ha: &[Vec<usize>],
    hb: &[Vec<usize>],
    depth: usize,
    obj: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> Option<CatIso> {
    let n = obj.len();
    if depth == n {
        return match_morphisms(a, b, obj);
    }
    for t in 0..n {
        if used[t] {
            continue;
        }
        obj[depth] = t;
        let consistent = (0..=depth).all(|x| {
            ha[depth][x] == hb[t][obj[x]] && ha[x][depth] == hb[obj[x]][t]
        });
        if consistent {
            used[t] = true;
            if let Some(iso) = search_objects(a, b, ha, hb, depth + 1, obj, used) {
                return Some(iso);
            }
            used[t] = false;
        }
    }
    obj[depth] = usize::MAX;
    None
}

fn match_morphisms(a: &FinCat, b: &FinCat, obj: &[usize]) -> Option<CatIso> {
    let m = a.num_morphisms();
    // candidates for each morphism of a: same image hom-set, identities to identities
    let candidates: Vec<Vec<usize>> = (0..m)
        .map(|f| {
            let mf = &a.morphisms[f];
            if a.is_identity(f) {
                vec![b.identity[obj[mf.dom]]]
            } else {
                b.hom(obj[mf.dom], obj[mf.cod])
                    .into_iter()
                    .filter(|&g| !b.is_identity(g))
                    .collect()
            }
        })
        .collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&f| candidates[f].len());
    let mut map = vec![usize::MAX; m];
    let mut used = vec![false; m];
    if assign(a, b, &candidates, &order, 0, &mut map, &mut used) {
        Some(CatIso {
            objects: obj.to_vec(),
            morphisms: map,
        })
    } else {
        None
    }
}

fn assign(
    a: &FinCat,
    b: &FinCat,
    candidates: &[Vec<usize>],
    order: &[usize],
    depth: usize,
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if depth == order.len() {
        return true;
    }
    let f = order[depth];
    for &t in &candidates[f] {
        if used[t] {
            continue;
        }
        map[f] = t;
        if consistent(a, b, map, f) {
            used[t] = true;
            if assign(a, b, candidates, order, depth + 1, map, used) {
                return true;
            }
            used[t] = false;
        }
    }
    map[f] = usize::MAX;
    false
}

/// Checks every composite involving `f` whose three morphisms are mapped.
fn consistent(a: &FinCat, b: &FinCat, map: &[usize], f: usize) -> bool {
    let mapped = |x: usize| map[x] != usize::MAX;
    let ok = |g: usize, h: usize| match a.compose[g][h] {
        Some(gh) if mapped(g) && mapped(h) && mapped(gh) => b.compose[map[g]][map[h]] == Some(map[gh]),
        _ => true,
    };
    let mf = &a.morphisms[f];
    a.out[mf.cod].iter().all(|&g| ok(g, f))
        && (0..a.num_morphisms()).all(|h| a.morphisms[h].cod != mf.dom || ok(f, h))
        && (0..a.num_morphisms()).all(|g| {
            (0..a.num_morphisms()).all(|h| a.compose[g][h] != Some(f) || ok(g, h))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> FinCat {
        FinCat::monoid(&["e", "t"], &[vec![0, 1], vec![1, 0]]).unwrap()
    }

    #[test]
    fn z2_is_a_category() {
        assert!(check_category(&z2()).is_ok());
    }

    #[test]
    fn broken_table_is_reported() {
        // t·t = t is still associative; t·t with non-unit identity breaks laws
        let bad = FinCat::monoid(&["e", "t"], &[vec![1, 1], vec![1, 0]]).unwrap();
        let report = check_category(&bad);
        assert!(!report.is_ok());
    }

    #[test]
    fn isomorphism_search() {
        let a = z2();
        let b = FinCat::monoid(&["u", "s"], &[vec![0, 1], vec![1, 0]]).unwrap();
        assert!(find_isomorphism(&a, &b).is_some());
        let c = FinCat::monoid(&["u", "s"], &[vec![0, 1], vec![1, 1]]).unwrap();
        assert!(check_category(&c).is_ok());
        assert!(find_isomorphism(&a, &c).is_none());
    }

    #[test]
    fn json_roundtrip() {
        let k = FinCat::from_labels(
            &["a", "b"],
            &[("1a", "a", "a"), ("1b", "b", "b"), ("f", "a", "b")],
            &[("a", "1a"), ("b", "1b")],
            &[],
        )
        .unwrap();
        assert!(check_category(&k).is_ok());
        let back = FinCat::from_value(&k.to_value()).unwrap();
        assert_eq!(back.to_value(), k.to_value());
    }
}
