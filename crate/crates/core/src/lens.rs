//! Morphisms of polynomials: forward on positions, backward on directions.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{PolyError, Result};
use crate::poly::FinPoly;
use crate::set::SetFn;

/// A lens `dom -> cod`.
///
/// `on_pos[i]` is the codomain position hit by domain position `i`, and
/// `on_dir[i][e]` is the domain direction at `i` that codomain direction `e`
/// (at `on_pos[i]`) is sent back to.
#[derive(Clone)]
pub struct Lens {
    dom: Arc<FinPoly>,
    cod: Arc<FinPoly>,
    on_pos: Vec<usize>,
    on_dir: Vec<Vec<usize>>,
}

impl Lens {
    pub fn new(
        dom: impl Into<Arc<FinPoly>>,
        cod: impl Into<Arc<FinPoly>>,
        on_pos: Vec<usize>,
        on_dir: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let lens = Lens {
            dom: dom.into(),
            cod: cod.into(),
            on_pos,
            on_dir,
        };
        lens.check_shape()?;
        Ok(lens)
    }

    /// Skips shape validation; callers guarantee well-typed tables.
    pub(crate) fn new_unchecked(
        dom: Arc<FinPoly>,
        cod: Arc<FinPoly>,
        on_pos: Vec<usize>,
        on_dir: Vec<Vec<usize>>,
    ) -> Self {
        let lens = Lens {
            dom,
            cod,
            on_pos,
            on_dir,
        };
        debug_assert!(lens.check_shape().is_ok(), "{:?}", lens.check_shape());
        lens
    }

    fn check_shape(&self) -> Result<()> {
        let (p, q) = (&*self.dom, &*self.cod);
        if self.on_pos.len() != p.num_positions() || self.on_dir.len() != p.num_positions() {
            return Err(PolyError::ShapeMismatch(format!(
                "lens tables cover {} positions, domain has {}",
                self.on_pos.len(),
                p.num_positions()
            )));
        }
        for (i, (&j, back)) in self.on_pos.iter().zip(&self.on_dir).enumerate() {
            if j >= q.num_positions() {
                return Err(PolyError::ShapeMismatch(format!(
                    "position `{}` sent outside the codomain",
                    p.position_label(i)
                )));
            }
            if back.len() != q.dir_count(j) {
                return Err(PolyError::ShapeMismatch(format!(
                    "on-directions at `{}` has {} entries, codomain position `{}` has {} directions",
                    p.position_label(i),
                    back.len(),
                    q.position_label(j),
                    q.dir_count(j)
                )));
            }
            if back.iter().any(|&d| d >= p.dir_count(i)) {
                return Err(PolyError::ShapeMismatch(format!(
                    "on-directions at `{}` leaves its direction set",
                    p.position_label(i)
                )));
            }
        }
        Ok(())
    }

    /// Builds a lens from label tables: `on_pos` maps domain to codomain
    /// positions, `on_dir[i]` maps codomain directions at `on_pos[i]` to
    /// domain directions at `i`.
    pub fn from_labels(
        dom: impl Into<Arc<FinPoly>>,
        cod: impl Into<Arc<FinPoly>>,
        on_pos: &HashMap<String, String>,
        on_dir: &HashMap<String, HashMap<String, String>>,
    ) -> Result<Self> {
        let (dom, cod) = (dom.into(), cod.into());
        let mut pos_table = Vec::with_capacity(dom.num_positions());
        let mut dir_table = Vec::with_capacity(dom.num_positions());
        for (i, pos) in dom.positions().iter().enumerate() {
            let target = on_pos.get(&pos.label).ok_or_else(|| {
                PolyError::ShapeMismatch(format!("onPos missing position `{}`", pos.label))
            })?;
            let j = cod.require_position(target)?;
            let empty = HashMap::new();
            let back = on_dir.get(&pos.label).unwrap_or(&empty);
            let mut row = Vec::with_capacity(cod.dir_count(j));
            for e in cod.dirs(j).elements() {
                let d = back.get(e).ok_or_else(|| {
                    PolyError::ShapeMismatch(format!(
                        "onDir at `{}` missing codomain direction `{e}`",
                        pos.label
                    ))
                })?;
                row.push(dom.dirs(i).require(d, "lens domain directions")?);
            }
            if back.len() != cod.dir_count(j) {
                return Err(PolyError::ShapeMismatch(format!(
                    "onDir at `{}` lists directions not at `{target}`",
                    pos.label
                )));
            }
            pos_table.push(j);
            dir_table.push(row);
        }
        if on_pos.len() != dom.num_positions() {
            return Err(PolyError::ShapeMismatch(
                "onPos lists positions outside the domain".into(),
            ));
        }
        Lens::new(dom, cod, pos_table, dir_table)
    }

    pub fn identity(p: impl Into<Arc<FinPoly>>) -> Self {
        let p = p.into();
        let on_pos = (0..p.num_positions()).collect();
        let on_dir = (0..p.num_positions())
            .map(|i| (0..p.dir_count(i)).collect())
            .collect();
        Lens {
            dom: p.clone(),
            cod: p,
            on_pos,
            on_dir,
        }
    }

    pub fn dom(&self) -> &FinPoly {
        &self.dom
    }

    pub fn cod(&self) -> &FinPoly {
        &self.cod
    }

    pub fn dom_arc(&self) -> &Arc<FinPoly> {
        &self.dom
    }

    pub fn cod_arc(&self) -> &Arc<FinPoly> {
        &self.cod
    }

    pub fn on_pos(&self, i: usize) -> usize {
        self.on_pos[i]
    }

    pub fn on_dir(&self, i: usize, e: usize) -> usize {
        self.on_dir[i][e]
    }

    pub fn on_pos_table(&self) -> &[usize] {
        &self.on_pos
    }

    pub fn on_dir_table(&self) -> &[Vec<usize>] {
        &self.on_dir
    }

    /// The on-positions function as a [`SetFn`] `dom(1) -> cod(1)`.
    pub fn on_pos_fn(&self) -> SetFn {
        SetFn::new(
            self.dom.position_set(),
            self.cod.position_set(),
            self.on_pos.clone(),
        )
        .expect("lens tables are well-typed")
    }

    /// The component `cod_{on_pos(i)} -> dom_i` as a [`SetFn`].
    pub fn on_dir_fn(&self, i: usize) -> SetFn {
        SetFn::new(
            self.cod.dirs(self.on_pos[i]).clone(),
            self.dom.dirs(i).clone(),
            self.on_dir[i].clone(),
        )
        .expect("lens tables are well-typed")
    }

    /// `self` followed by `next`, i.e. `next ∘ self`.
    pub fn then(&self, next: &Lens) -> Result<Lens> {
        if self.cod != next.dom {
            return Err(PolyError::InterfaceMismatch(format!(
                "cannot compose: {} does not match {}",
                self.cod.algebraic(),
                next.dom.algebraic()
            )));
        }
        let aligned = next.aligned_to(&self.cod);
        let mut on_pos = Vec::with_capacity(self.on_pos.len());
        let mut on_dir = Vec::with_capacity(self.on_pos.len());
        for (i, &j) in self.on_pos.iter().enumerate() {
            let k = aligned.on_pos[j];
            on_pos.push(k);
            on_dir.push(
                aligned.on_dir[j]
                    .iter()
                    .map(|&e| self.on_dir[i][e])
                    .collect(),
            );
        }
        Ok(Lens {
            dom: self.dom.clone(),
            cod: aligned.cod.clone(),
            on_pos,
            on_dir,
        })
    }

    /// Re-expresses this lens over a domain that is strictly equal to ours but
    /// may list positions or directions in a different order.
    pub(crate) fn aligned_to(&self, dom: &Arc<FinPoly>) -> std::borrow::Cow<'_, Lens> {
        if Arc::ptr_eq(&self.dom, dom) || self.dom.same_layout(dom) {
            return std::borrow::Cow::Borrowed(self);
        }
        let mut on_pos = Vec::with_capacity(dom.num_positions());
        let mut on_dir = Vec::with_capacity(dom.num_positions());
        for (i, pos) in dom.positions().iter().enumerate() {
            let mine = self.dom.position_index(&pos.label).expect("strictly equal");
            on_pos.push(self.on_pos[mine]);
            on_dir.push(
                self.on_dir[mine]
                    .iter()
                    .map(|&d| {
                        dom.dirs(i)
                            .index_of(self.dom.dirs(mine).get(d))
                            .expect("strictly equal")
                    })
                    .collect(),
            );
        }
        std::borrow::Cow::Owned(Lens {
            dom: dom.clone(),
            cod: self.cod.clone(),
            on_pos,
            on_dir,
        })
    }

    /// Surjective on positions, and at each codomain position the directions
    /// are separated by the on-directions maps of the positions above it.
    ///
    /// When the on-positions map is injective this is the same as every
    /// on-directions component being injective.
    pub fn is_epi(&self) -> bool {
        let q = &*self.cod;
        let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); q.num_positions()];
        for (i, &j) in self.on_pos.iter().enumerate() {
            fibers[j].push(i);
        }
        fibers.iter().enumerate().all(|(j, fiber)| {
            if fiber.is_empty() {
                return false;
            }
            let n = q.dir_count(j);
            (0..n).all(|e1| {
                (e1 + 1..n).all(|e2| fiber.iter().any(|&i| self.on_dir[i][e1] != self.on_dir[i][e2]))
            })
        })
    }

    /// Every on-directions component is injective (the fiberwise condition).
    pub fn is_fiberwise_injective(&self) -> bool {
        (0..self.on_pos.len()).all(|i| self.on_dir_fn(i).is_injective())
    }

    /// The on-positions function is the identity of a shared position set.
    pub fn is_vertical(&self) -> bool {
        self.dom.num_positions() == self.cod.num_positions()
            && self
                .on_pos
                .iter()
                .enumerate()
                .all(|(i, &j)| self.dom.position_label(i) == self.cod.position_label(j))
    }

    /// Every on-directions component is a bijection.
    pub fn is_cartesian(&self) -> bool {
        (0..self.on_pos.len()).all(|i| {
            self.on_dir[i].len() == self.dom.dir_count(i) && self.on_dir_fn(i).is_injective()
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.on_pos_fn().is_bijective() && self.is_cartesian()
    }

    /// The two-sided inverse of an invertible lens.
    pub fn inverse(&self) -> Result<Lens> {
        if !self.is_invertible() {
            return Err(PolyError::ShapeMismatch("lens is not invertible".into()));
        }
        let q = &self.cod;
        let mut on_pos = vec![0; q.num_positions()];
        let mut on_dir = vec![Vec::new(); q.num_positions()];
        for (i, &j) in self.on_pos.iter().enumerate() {
            on_pos[j] = i;
            let mut back = vec![0; q.dir_count(j)];
            for (e, &d) in self.on_dir[i].iter().enumerate() {
                back[d] = e;
            }
            on_dir[j] = back;
        }
        Ok(Lens {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            on_pos,
            on_dir,
        })
    }

    /// Label form of the tables, keyed by domain position label.
    pub fn to_label_maps(
        &self,
    ) -> (
        std::collections::BTreeMap<String, String>,
        std::collections::BTreeMap<String, std::collections::BTreeMap<String, String>>,
    ) {
        let mut pos = std::collections::BTreeMap::new();
        let mut dir = std::collections::BTreeMap::new();
        for (i, &j) in self.on_pos.iter().enumerate() {
            let src = self.dom.position_label(i).to_string();
            pos.insert(src.clone(), self.cod.position_label(j).to_string());
            let row = self.on_dir[i]
                .iter()
                .enumerate()
                .map(|(e, &d)| {
                    (
                        self.cod.dirs(j).get(e).to_string(),
                        self.dom.dirs(i).get(d).to_string(),
                    )
                })
                .collect();
            dir.insert(src, row);
        }
        (pos, dir)
    }
}

/// `g ∘ f`.
pub fn lens_compose(g: &Lens, f: &Lens) -> Result<Lens> {
    f.then(g)
}

pub fn lens_id(p: &FinPoly) -> Lens {
    Lens::identity(p.clone())
}

impl PartialEq for Lens {
    fn eq(&self, other: &Self) -> bool {
        if self.dom != other.dom || self.cod != other.cod {
            return false;
        }
        if (Arc::ptr_eq(&self.dom, &other.dom) || self.dom.same_layout(&other.dom))
            && (Arc::ptr_eq(&self.cod, &other.cod) || self.cod.same_layout(&other.cod))
        {
            return self.on_pos == other.on_pos && self.on_dir == other.on_dir;
        }
        self.to_label_maps() == other.to_label_maps()
    }
}

impl Eq for Lens {}

impl fmt::Debug for Lens {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Lens {} -> {}", self.dom.algebraic(), self.cod.algebraic())?;
        for (i, &j) in self.on_pos.iter().enumerate() {
            write!(
                f,
                "  {} -> {} [",
                self.dom.position_label(i),
                self.cod.position_label(j)
            )?;
            for (e, &d) in self.on_dir[i].iter().enumerate() {
                if e > 0 {
                    f.write_str(", ")?;
                }
                write!(
                    f,
                    "{}<-{}",
                    self.dom.dirs(i).get(d),
                    self.cod.dirs(j).get(e)
                )?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::make_poly;
    use crate::set::FinSet;

    fn sample() -> Lens {
        // y^2 + 1 -> y + 1 picking the second direction
        let p = Arc::new(FinPoly::from_exponents(&[2, 0]));
        let q = Arc::new(FinPoly::from_exponents(&[1, 0]));
        Lens::new(p, q, vec![0, 1], vec![vec![1], vec![]]).unwrap()
    }

    #[test]
    fn identity_laws() {
        let f = sample();
        assert_eq!(lens_compose(&lens_id(f.cod()), &f).unwrap(), f);
        assert_eq!(lens_compose(&f, &lens_id(f.dom())).unwrap(), f);
    }

    #[test]
    fn shape_is_validated() {
        let p = Arc::new(FinPoly::from_exponents(&[2]));
        let q = Arc::new(FinPoly::from_exponents(&[1]));
        assert!(Lens::new(p.clone(), q.clone(), vec![1], vec![vec![0]]).is_err());
        assert!(Lens::new(p.clone(), q.clone(), vec![0], vec![vec![2]]).is_err());
        assert!(Lens::new(p, q, vec![0], vec![vec![0, 0]]).is_err());
    }

    #[test]
    fn compose_checks_interfaces() {
        let f = sample();
        assert!(matches!(
            lens_compose(&f, &f),
            Err(PolyError::InterfaceMismatch(_))
        ));
    }

    #[test]
    fn identity_is_vertical_and_cartesian() {
        let id = lens_id(&FinPoly::from_exponents(&[3, 1, 0]));
        assert!(id.is_vertical() && id.is_cartesian() && id.is_epi() && id.is_invertible());
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn empty_domain_lens_is_epi_only_onto_zero() {
        let zero = Arc::new(FinPoly::zero());
        let to_zero = Lens::new(zero.clone(), zero.clone(), vec![], vec![]).unwrap();
        assert!(to_zero.is_epi());
        let to_y = Lens::new(zero, FinPoly::y(), vec![], vec![]).unwrap();
        assert!(!to_y.is_epi());
    }

    #[test]
    fn joint_injectivity_counts_for_epi() {
        // y + y^2 -> y^2: the second component separates both directions
        let p = Arc::new(make_poly(vec![("a", vec!["*"]), ("b", vec!["x", "z"])]).unwrap());
        let q = Arc::new(FinPoly::representable(&FinSet::of(&["x", "z"])));
        let f = Lens::new(p, q, vec![0, 0], vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert!(f.is_epi());
        assert!(!f.is_fiberwise_injective());
    }

    #[test]
    fn label_equality_ignores_layout() {
        let f = sample();
        let (pos, dir) = f.to_label_maps();
        let pos: HashMap<_, _> = pos.into_iter().collect();
        let dir: HashMap<_, HashMap<_, _>> = dir
            .into_iter()
            .map(|(k, v)| (k, v.into_iter().collect()))
            .collect();
        let dom = make_poly(vec![("1", vec![]), ("0", vec!["1", "0"])]).unwrap();
        let g = Lens::from_labels(dom, f.cod().clone(), &pos, &dir).unwrap();
        assert_eq!(f, g);
    }
}
