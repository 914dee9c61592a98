//! Cofunctors: forward on objects, backward on morphisms.

use std::sync::Arc;

use crate::algebra::compose_lens;
use crate::error::{PolyError, Result};
use crate::lens::Lens;
use crate::report::Report;
use crate::set::SetFn;

use super::comonoid::{category_to_comonoid, Comonoid};
use super::fincat::FinCat;

/// `pull[c][k]` is the source morphism out of `c` lifted from the `k`-th
/// morphism out of `on_obj(c)` (in [`FinCat::out_of`] order).
#[derive(Debug, Clone)]
pub struct Cofunctor {
    pub src: Arc<FinCat>,
    pub tgt: Arc<FinCat>,
    pub on_obj: SetFn,
    pub pull: Vec<Vec<usize>>,
}

impl Cofunctor {
    pub fn identity(k: impl Into<Arc<FinCat>>) -> Self {
        let k = k.into();
        let pull = (0..k.num_objects()).map(|o| k.out_of(o).to_vec()).collect();
        Cofunctor {
            on_obj: SetFn::identity(k.objects()),
            src: k.clone(),
            tgt: k,
            pull,
        }
    }

    /// Reads a cofunctor off a lens between the carriers of
    /// [`category_to_comonoid`]: positions are objects and directions are
    /// outgoing morphisms, in the same order.
    pub fn from_lens(src: impl Into<Arc<FinCat>>, tgt: impl Into<Arc<FinCat>>, f: &Lens) -> Result<Self> {
        let (src, tgt) = (src.into(), tgt.into());
        let shape_ok = f.dom().num_positions() == src.num_objects()
            && f.cod().num_positions() == tgt.num_objects()
            && (0..src.num_objects()).all(|c| f.dom().dir_count(c) == src.out_of(c).len())
            && (0..tgt.num_objects()).all(|d| f.cod().dir_count(d) == tgt.out_of(d).len());
        if !shape_ok {
            return Err(PolyError::ShapeMismatch(
                "lens carriers do not match the categories".into(),
            ));
        }
        let on_obj = SetFn::new(src.objects().clone(), tgt.objects().clone(), f.on_pos_table().to_vec())?;
        let pull = (0..src.num_objects())
            .map(|c| f.on_dir_table()[c].iter().map(|&d| src.out_of(c)[d]).collect())
            .collect();
        Ok(Cofunctor { src, tgt, on_obj, pull })
    }

    /// The lens between carriers of [`category_to_comonoid`].
    pub fn to_lens(&self) -> Result<Lens> {
        let c = category_to_comonoid(&self.src)?;
        let d = category_to_comonoid(&self.tgt)?;
        let local = |o: usize, m: usize| self.src.out_of(o).iter().position(|&x| x == m);
        let mut on_dir = Vec::with_capacity(self.pull.len());
        for (o, row) in self.pull.iter().enumerate() {
            on_dir.push(
                row.iter()
                    .map(|&m| {
                        local(o, m).ok_or_else(|| {
                            PolyError::ShapeMismatch(format!(
                                "pulled morphism `{}` does not leave `{}`",
                                self.src.morphism(m).label,
                                self.src.objects().get(o)
                            ))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Lens::new(
            c.carrier_arc().clone(),
            d.carrier_arc().clone(),
            self.on_obj.table().to_vec(),
            on_dir,
        )
    }
}

/// Laws (i) identities pull back to identities, (ii) codomains are
/// preserved, (iii) composites pull back to composites of pullbacks.
pub fn check_cofunctor(f: &Cofunctor) -> Report {
    let mut r = Report::new("cofunctor");
    let (s, t) = (&*f.src, &*f.tgt);
    if f.on_obj.dom().len() != s.num_objects() || f.on_obj.cod().len() != t.num_objects() {
        r.fail("object map does not match the categories");
        return r;
    }
    if f.pull.len() != s.num_objects() {
        r.fail("pull table must have one row per source object");
        return r;
    }
    let sl = |m: usize| s.morphism(m).label.as_str();
    let tl = |m: usize| t.morphism(m).label.as_str();
    let obj = |o: usize| s.objects().get(o);
    for c in 0..s.num_objects() {
        let fc = f.on_obj.apply_index(c);
        let out = t.out_of(fc);
        if f.pull[c].len() != out.len() || f.pull[c].iter().any(|&m| m >= s.num_morphisms() || s.morphism(m).dom != c) {
            r.fail(format!("pulled morphisms at `{}` are not all out of it", obj(c)));
            return r;
        }
    }
    let slot = |o: usize, m: usize| t.out_of(o).iter().position(|&x| x == m).expect("out of o");
    for c in 0..s.num_objects() {
        let fc = f.on_obj.apply_index(c);
        let id = f.pull[c][slot(fc, t.identity(fc))];
        r.check(id == s.identity(c), || {
            format!("(i) identity at `{}` pulls back to `{}`", obj(c), sl(id))
        });
        for (k, &g) in t.out_of(fc).iter().enumerate() {
            let lifted = f.pull[c][k];
            let c2 = s.morphism(lifted).cod;
            let ok = f.on_obj.apply_index(c2) == t.morphism(g).cod;
            r.check(ok, || {
                format!("(ii) codomain of `{}` lifted at `{}` is not sent to the codomain of `{}`", sl(lifted), obj(c), tl(g))
            });
            if !ok {
                continue;
            }
            for (k2, &h) in t.out_of(t.morphism(g).cod).iter().enumerate() {
                let hg = t.compose(h, g).expect("composable");
                let lhs = f.pull[c][slot(fc, hg)];
                let rhs = s.compose(f.pull[c2][k2], lifted).expect("composable");
                r.check(lhs == rhs, || {
                    format!("(iii) `{}` ∘ `{}` at `{}` pulls back to `{}`, not `{}`", tl(h), tl(g), obj(c), sl(lhs), sl(rhs))
                });
            }
        }
    }
    r
}

/// Whether `f` commutes with counits and comultiplications, compared as
/// materialized lenses.
pub fn is_comonoid_morphism(f: &Lens, c: &Comonoid, d: &Comonoid, cap: usize) -> Result<bool> {
    if *f.dom() != *c.carrier() || *f.cod() != *d.carrier() {
        return Err(PolyError::ShapeMismatch("lens does not run between the carriers".into()));
    }
    if f.then(&d.counit())? != c.counit() {
        return Ok(false);
    }
    let lhs = f.then(&d.comult(cap)?)?;
    let rhs = c.comult(cap)?.then(&compose_lens(f, f))?;
    Ok(lhs == rhs)
}
