//! The two closed structures: `q^p` for `×` and `[p, q]` for `⊗`, with the
//! currying bijections on hom-sets.

use std::sync::Arc;

use crate::error::{PolyError, Result};
use crate::lens::Lens;
use crate::odometer;
use crate::poly::FinPoly;

use super::hom::terminal_lens;
use super::monoidal::{
    compose, pairing, product, product_all, product_dir_offset, sum, tensor, ComposeLayout,
    TupleLayout,
};

fn exponent_factor(q: &FinPoly, a: &FinPoly, i: usize) -> FinPoly {
    compose(q, &sum(&FinPoly::constant(a.dirs(i)), &FinPoly::y()))
}

fn bracket_factor(q: &FinPoly, a: &FinPoly, i: usize) -> FinPoly {
    compose(q, &FinPoly::linear(a.dirs(i)))
}

/// `q^p = Π_{i ∈ p(1)} q ∘ (p_i + y)`.
pub fn cartesian_closure(q: &FinPoly, p: &FinPoly) -> FinPoly {
    let factors: Vec<FinPoly> = (0..p.num_positions())
        .map(|i| exponent_factor(q, p, i))
        .collect();
    product_all(&factors.iter().collect::<Vec<_>>())
}

/// `[p, q] = Π_{i ∈ p(1)} q ∘ (p_i y)`.
pub fn dirichlet_closure(p: &FinPoly, q: &FinPoly) -> FinPoly {
    let factors: Vec<FinPoly> = (0..p.num_positions())
        .map(|i| bracket_factor(q, p, i))
        .collect();
    product_all(&factors.iter().collect::<Vec<_>>())
}

fn require_dom(f: &Lens, expected: &FinPoly, what: &str) -> Result<()> {
    if !f.dom().same_layout(expected) {
        return Err(PolyError::ShapeMismatch(format!(
            "{what}: lens domain is not the expected {}",
            expected.algebraic()
        )));
    }
    Ok(())
}

fn require_cod(f: &Lens, expected: &FinPoly, what: &str) -> Result<()> {
    if !f.cod().same_layout(expected) {
        return Err(PolyError::ShapeMismatch(format!(
            "{what}: lens codomain is not the expected {}",
            expected.algebraic()
        )));
    }
    Ok(())
}

/// Pairs component lenses `p -> X_j` into `p -> Π_j X_j`, handling the empty
/// product.
fn pair_components(p: &FinPoly, components: Vec<Lens>) -> Result<Lens> {
    if components.is_empty() {
        return Ok(terminal_lens(p));
    }
    pairing(&components.iter().collect::<Vec<_>>())
}

/// Transposes `f: p × q -> r` to `p -> r^q`.
pub fn curry_cartesian(f: &Lens, p: &FinPoly, q: &FinPoly) -> Result<Lens> {
    require_dom(f, &product(p, q), "curry_cartesian")?;
    let r = f.cod();
    let dom = Arc::new(p.clone());
    let mut components = Vec::with_capacity(q.num_positions());
    for j in 0..q.num_positions() {
        let factor = Arc::new(exponent_factor(r, q, j));
        let layout = compose_layout(r, q.dir_count(j) + 1)?;
        let star = q.dir_count(j);
        let mut on_pos = Vec::with_capacity(p.num_positions());
        let mut on_dir = Vec::with_capacity(p.num_positions());
        for i in 0..p.num_positions() {
            let ij = i * q.num_positions() + j;
            let k = f.on_pos(ij);
            let pi = p.dir_count(i);
            let mut phi = Vec::with_capacity(r.dir_count(k));
            let mut back = Vec::new();
            for e in 0..r.dir_count(k) {
                let d = f.on_dir(ij, e);
                if d < pi {
                    phi.push(star);
                    back.push(d);
                } else {
                    phi.push(d - pi);
                }
            }
            on_pos.push(layout.position(k, &phi));
            on_dir.push(back);
        }
        components.push(Lens::new(dom.clone(), factor, on_pos, on_dir)?);
    }
    pair_components(p, components)
}

/// Layout of `r ∘ s` where only the number of positions of `s` matters.
fn compose_layout(r: &FinPoly, inner_positions: usize) -> Result<ComposeLayout> {
    ComposeLayout::new(r, &FinPoly::from_exponents(&vec![0; inner_positions]))
}

/// Inverse of [`curry_cartesian`]: `g: p -> r^q` to `p × q -> r`.
pub fn uncurry_cartesian(g: &Lens, q: &FinPoly, r: &FinPoly) -> Result<Lens> {
    let factors: Vec<FinPoly> = (0..q.num_positions())
        .map(|j| exponent_factor(r, q, j))
        .collect();
    let factor_refs: Vec<&FinPoly> = factors.iter().collect();
    require_cod(g, &product_all(&factor_refs), "uncurry_cartesian")?;
    let p = g.dom();
    let layouts: Vec<ComposeLayout> = (0..q.num_positions())
        .map(|j| compose_layout(r, q.dir_count(j) + 1))
        .collect::<Result<_>>()?;
    let tuple_layout = TupleLayout::new(&factor_refs);
    let dom = Arc::new(product(p, q));
    let mut on_pos = Vec::with_capacity(dom.num_positions());
    let mut on_dir = Vec::with_capacity(dom.num_positions());
    for i in 0..p.num_positions() {
        let t = tuple_layout.components(g.on_pos(i));
        let pi = p.dir_count(i);
        for j in 0..q.num_positions() {
            let (k, phi) = layouts[j].decode(r, t[j]);
            let offset = product_dir_offset(&factor_refs, &t, j);
            let star = q.dir_count(j);
            let mut back = Vec::with_capacity(phi.len());
            let mut seen_star = 0;
            for &x in &phi {
                if x == star {
                    back.push(g.on_dir(i, offset + seen_star));
                    seen_star += 1;
                } else {
                    back.push(pi + x);
                }
            }
            on_pos.push(k);
            on_dir.push(back);
        }
    }
    Lens::new(dom, Arc::new(r.clone()), on_pos, on_dir)
}

/// Transposes `f: p ⊗ q -> r` to `p -> [q, r]`.
pub fn curry_dirichlet(f: &Lens, p: &FinPoly, q: &FinPoly) -> Result<Lens> {
    require_dom(f, &tensor(p, q), "curry_dirichlet")?;
    let r = f.cod();
    let dom = Arc::new(p.clone());
    let mut components = Vec::with_capacity(q.num_positions());
    for j in 0..q.num_positions() {
        let factor = Arc::new(bracket_factor(r, q, j));
        let layout = compose_layout(r, q.dir_count(j))?;
        let qj = q.dir_count(j);
        let mut on_pos = Vec::with_capacity(p.num_positions());
        let mut on_dir = Vec::with_capacity(p.num_positions());
        for i in 0..p.num_positions() {
            let ij = i * q.num_positions() + j;
            let k = f.on_pos(ij);
            let (phi, back): (Vec<usize>, Vec<usize>) = (0..r.dir_count(k))
                .map(|e| {
                    let de = f.on_dir(ij, e);
                    (de % qj, de / qj)
                })
                .unzip();
            on_pos.push(layout.position(k, &phi));
            on_dir.push(back);
        }
        components.push(Lens::new(dom.clone(), factor, on_pos, on_dir)?);
    }
    pair_components(p, components)
}

/// Inverse of [`curry_dirichlet`]: `g: p -> [q, r]` to `p ⊗ q -> r`.
pub fn uncurry_dirichlet(g: &Lens, q: &FinPoly, r: &FinPoly) -> Result<Lens> {
    let factors: Vec<FinPoly> = (0..q.num_positions())
        .map(|j| bracket_factor(r, q, j))
        .collect();
    let factor_refs: Vec<&FinPoly> = factors.iter().collect();
    require_cod(g, &product_all(&factor_refs), "uncurry_dirichlet")?;
    let p = g.dom();
    let layouts: Vec<ComposeLayout> = (0..q.num_positions())
        .map(|j| compose_layout(r, q.dir_count(j)))
        .collect::<Result<_>>()?;
    let tuple_layout = TupleLayout::new(&factor_refs);
    let dom = Arc::new(tensor(p, q));
    let mut on_pos = Vec::with_capacity(dom.num_positions());
    let mut on_dir = Vec::with_capacity(dom.num_positions());
    for i in 0..p.num_positions() {
        let t = tuple_layout.components(g.on_pos(i));
        for j in 0..q.num_positions() {
            let (k, phi) = layouts[j].decode(r, t[j]);
            let offset = product_dir_offset(&factor_refs, &t, j);
            let radices = [p.dir_count(i), q.dir_count(j)];
            let back = phi
                .iter()
                .enumerate()
                .map(|(e, &x)| odometer::rank_mixed(&[g.on_dir(i, offset + e), x], &radices))
                .collect();
            on_pos.push(k);
            on_dir.push(back);
        }
    }
    Lens::new(dom, Arc::new(r.clone()), on_pos, on_dir)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hom::{hom_count, hom_iter};
    use crate::algebra::monoidal::product_projection;

    fn ex(e: &[usize]) -> FinPoly {
        FinPoly::from_exponents(e)
    }

    #[test]
    fn closure_units() {
        let q = ex(&[2, 0, 1]);
        assert!(cartesian_closure(&q, &FinPoly::one()).is_iso(&q));
        assert!(cartesian_closure(&q, &FinPoly::zero()).is_iso(&FinPoly::one()));
        assert!(dirichlet_closure(&FinPoly::y(), &q).is_iso(&q));
    }

    #[test]
    fn currying_roundtrips_exhaustively() {
        let family = [ex(&[]), ex(&[0]), ex(&[1]), ex(&[2, 0]), ex(&[1, 1])];
        for p in &family {
            for q in &family {
                for r in &family {
                    let pq = product(p, q);
                    let exp = cartesian_closure(r, q);
                    for f in hom_iter(&pq, r) {
                        let g = curry_cartesian(&f, p, q).unwrap();
                        assert_eq!(uncurry_cartesian(&g, q, r).unwrap(), f);
                    }
                    for g in hom_iter(p, &exp) {
                        let f = uncurry_cartesian(&g, q, r).unwrap();
                        assert_eq!(curry_cartesian(&f, p, q).unwrap(), g);
                    }
                    let pt = tensor(p, q);
                    let br = dirichlet_closure(q, r);
                    assert_eq!(hom_count(&pt, r), hom_count(p, &br));
                    for f in hom_iter(&pt, r) {
                        let g = curry_dirichlet(&f, p, q).unwrap();
                        assert_eq!(uncurry_dirichlet(&g, q, r).unwrap(), f);
                    }
                    for g in hom_iter(p, &br) {
                        let f = uncurry_dirichlet(&g, q, r).unwrap();
                        assert_eq!(curry_dirichlet(&f, p, q).unwrap(), g);
                    }
                }
            }
        }
    }

    #[test]
    fn currying_the_projection() {
        let p = ex(&[2, 0, 1]);
        let one = FinPoly::one();
        let pi = product_projection(&[&p, &one], 0);
        let g = curry_cartesian(&pi, &p, &one).unwrap();
        assert!(g.is_invertible());
        assert!(g.cod().is_iso(&p));
    }
}
