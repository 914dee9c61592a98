//! The four monoidal products `+`, `×`, `⊗`, `∘` on objects and on lenses.
//!
//! Every n-ary construction uses the same conventions: zero factors give the
//! unit, one factor gives the factor itself, and two or more factors give
//! tuple-labeled positions enumerated with the first factor most significant.

use std::sync::Arc;

use crate::error::{PolyError, Result};
use crate::label;
use crate::lens::Lens;
use crate::odometer::{self, Odometer};
use crate::poly::{FinPoly, Position};
use crate::set::FinSet;

pub fn sum(p: &FinPoly, q: &FinPoly) -> FinPoly {
    sum_all(&[p, q])
}

pub fn product(p: &FinPoly, q: &FinPoly) -> FinPoly {
    product_all(&[p, q])
}

pub fn tensor(p: &FinPoly, q: &FinPoly) -> FinPoly {
    tensor_all(&[p, q])
}

/// Coproduct: positions `in_k(i)`, directions unchanged.
pub fn sum_all(factors: &[&FinPoly]) -> FinPoly {
    match factors.len() {
        0 => FinPoly::zero(),
        1 => factors[0].clone(),
        _ => FinPoly::from_distinct(
            factors
                .iter()
                .enumerate()
                .flat_map(|(k, p)| {
                    p.positions().iter().map(move |pos| Position {
                        label: label::inj(k, &pos.label),
                        dirs: pos.dirs.clone(),
                    })
                })
                .collect(),
        ),
    }
}

/// Index bookkeeping for n-ary products whose positions are tuples.
#[derive(Debug, Clone)]
pub struct TupleLayout {
    radices: Vec<usize>,
}

impl TupleLayout {
    pub fn new(factors: &[&FinPoly]) -> Self {
        TupleLayout {
            radices: factors.iter().map(|p| p.num_positions()).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.radices.len()
    }

    pub fn position(&self, tuple: &[usize]) -> usize {
        odometer::rank_mixed(tuple, &self.radices)
    }

    pub fn components(&self, index: usize) -> Vec<usize> {
        odometer::unrank_mixed(index, &self.radices)
    }

    pub fn tuples(&self) -> Odometer {
        Odometer::new(self.radices.clone())
    }
}

fn tuple_positions(factors: &[&FinPoly]) -> Vec<Vec<usize>> {
    TupleLayout::new(factors).tuples().collect()
}

/// Cartesian product: positions are tuples, directions the disjoint union
/// `in_k(d)` of the factors' directions.
pub fn product_all(factors: &[&FinPoly]) -> FinPoly {
    match factors.len() {
        0 => FinPoly::one(),
        1 => factors[0].clone(),
        _ => FinPoly::from_distinct(
            tuple_positions(factors)
                .into_iter()
                .map(|t| {
                    let labels: Vec<&str> = t
                        .iter()
                        .zip(factors)
                        .map(|(&i, p)| p.position_label(i))
                        .collect();
                    let dirs = t
                        .iter()
                        .zip(factors)
                        .enumerate()
                        .flat_map(|(k, (&i, p))| {
                            p.dirs(i).elements().iter().map(move |d| label::inj(k, d))
                        })
                        .collect();
                    Position {
                        label: label::tuple(&labels),
                        dirs: FinSet::from_distinct(dirs),
                    }
                })
                .collect(),
        ),
    }
}

/// Offset of factor `k`'s directions inside a product position.
pub fn product_dir_offset(factors: &[&FinPoly], tuple: &[usize], k: usize) -> usize {
    (0..k).map(|m| factors[m].dir_count(tuple[m])).sum()
}

/// Dirichlet product: positions are tuples and so are directions.
pub fn tensor_all(factors: &[&FinPoly]) -> FinPoly {
    match factors.len() {
        0 => FinPoly::y(),
        1 => factors[0].clone(),
        _ => FinPoly::from_distinct(
            tuple_positions(factors)
                .into_iter()
                .map(|t| {
                    let labels: Vec<&str> = t
                        .iter()
                        .zip(factors)
                        .map(|(&i, p)| p.position_label(i))
                        .collect();
                    let radices: Vec<usize> =
                        t.iter().zip(factors).map(|(&i, p)| p.dir_count(i)).collect();
                    let dirs = Odometer::new(radices)
                        .map(|ds| {
                            let parts: Vec<&str> = ds
                                .iter()
                                .zip(t.iter().zip(factors))
                                .map(|(&d, (&i, p))| p.dirs(i).get(d))
                                .collect();
                            label::tuple(&parts)
                        })
                        .collect();
                    Position {
                        label: label::tuple(&labels),
                        dirs: FinSet::from_distinct(dirs),
                    }
                })
                .collect(),
        ),
    }
}

/// Direction counts of the factors at a tensor position, the radices of its
/// direction tuples.
pub fn tensor_dir_radices(factors: &[&FinPoly], tuple: &[usize]) -> Vec<usize> {
    tuple
        .iter()
        .zip(factors)
        .map(|(&i, p)| p.dir_count(i))
        .collect()
}

/// Index bookkeeping for `p ∘ q`.
///
/// Positions are pairs `(i, φ)` with `φ: p_i -> q(1)`, listed by `i` and then
/// by `φ` as a value table (first direction most significant). Directions at
/// `(i, φ)` are pairs `(d, e)` with `e ∈ q_{φ(d)}`, listed by `d` then `e`.
#[derive(Debug, Clone)]
pub struct ComposeLayout {
    inner_positions: usize,
    offsets: Vec<usize>,
    total: usize,
}

impl ComposeLayout {
    pub fn new(p: &FinPoly, q: &FinPoly) -> Result<Self> {
        let qn = q.num_positions();
        let mut offsets = Vec::with_capacity(p.num_positions());
        let mut total: usize = 0;
        for i in 0..p.num_positions() {
            offsets.push(total);
            let block = odometer::checked_pow(qn, p.dir_count(i))
                .ok_or_else(|| too_large("composite", p, q))?;
            total = total
                .checked_add(block)
                .ok_or_else(|| too_large("composite", p, q))?;
        }
        Ok(ComposeLayout {
            inner_positions: qn,
            offsets,
            total,
        })
    }

    pub fn num_positions(&self) -> usize {
        self.total
    }

    pub fn position(&self, i: usize, phi: &[usize]) -> usize {
        self.offsets[i] + odometer::rank_uniform(phi, self.inner_positions)
    }

    pub fn decode(&self, p: &FinPoly, index: usize) -> (usize, Vec<usize>) {
        let i = match self.offsets.binary_search(&index) {
            Ok(mut k) => {
                // skip empty blocks sharing the same offset
                while k + 1 < self.offsets.len() && self.offsets[k + 1] == index {
                    k += 1;
                }
                k
            }
            Err(k) => k - 1,
        };
        let phi = odometer::unrank_uniform(index - self.offsets[i], self.inner_positions, p.dir_count(i));
        (i, phi)
    }

    /// Index of direction `(d, e)` at `(i, φ)`.
    pub fn direction(q: &FinPoly, phi: &[usize], d: usize, e: usize) -> usize {
        phi[..d].iter().map(|&j| q.dir_count(j)).sum::<usize>() + e
    }

    /// Inverse of [`ComposeLayout::direction`].
    pub fn decode_direction(q: &FinPoly, phi: &[usize], mut index: usize) -> (usize, usize) {
        for (d, &j) in phi.iter().enumerate() {
            let n = q.dir_count(j);
            if index < n {
                return (d, index);
            }
            index -= n;
        }
        panic!("direction index out of range");
    }
}

fn too_large(what: &str, p: &FinPoly, q: &FinPoly) -> PolyError {
    PolyError::TooLarge {
        what: format!("{what} of {} and {}", p.algebraic(), q.algebraic()),
        size: "more than usize::MAX".into(),
        cap: usize::MAX,
    }
}

/// Number of positions of `p ∘ q`, or `None` if it overflows.
pub fn compose_position_count(p: &FinPoly, q: &FinPoly) -> Option<usize> {
    ComposeLayout::new(p, q).ok().map(|l| l.num_positions())
}

/// Composition product `p ∘ q`; see [`ComposeLayout`] for the layout.
///
/// Panics if the result has more than `usize::MAX` positions; use
/// [`try_compose`] to bound the size.
pub fn compose(p: &FinPoly, q: &FinPoly) -> FinPoly {
    try_compose(p, q, usize::MAX).expect("composite too large")
}

/// [`compose`] refusing results whose total number of directions (counting
/// each position once more) exceeds `cap`.
pub fn try_compose(p: &FinPoly, q: &FinPoly, cap: usize) -> Result<FinPoly> {
    let layout = ComposeLayout::new(p, q)?;
    if layout.num_positions() > cap {
        return Err(PolyError::TooLarge {
            what: format!("{} ∘ {}", p.algebraic(), q.algebraic()),
            size: layout.num_positions().to_string(),
            cap,
        });
    }
    let mut positions = Vec::with_capacity(layout.num_positions());
    let mut budget = layout.num_positions();
    for (i, pos) in p.positions().iter().enumerate() {
        for phi in Odometer::functions(pos.dirs.len(), q.num_positions()) {
            let values: Vec<&str> = phi.iter().map(|&j| q.position_label(j)).collect();
            let mut dirs = Vec::new();
            for (d, &j) in phi.iter().enumerate() {
                for e in q.dirs(j).elements() {
                    dirs.push(label::pair(pos.dirs.get(d), e));
                }
            }
            budget = budget.saturating_add(dirs.len());
            if budget > cap {
                return Err(PolyError::TooLarge {
                    what: format!("{} ∘ {}", p.algebraic(), q.algebraic()),
                    size: format!("more than {cap}"),
                    cap,
                });
            }
            positions.push(Position {
                label: label::pair(&pos.label, &label::function(pos.dirs.elements(), &values)),
                dirs: FinSet::from_distinct(dirs),
            });
        }
        debug_assert_eq!(positions.len(), layout.offsets.get(i + 1).copied().unwrap_or(layout.total));
    }
    Ok(FinPoly::from_distinct(positions))
}

/// `p^{∘n}`: `y` for `n = 0`, `p` for `n = 1`, and `p ∘ p^{∘(n-1)}` after.
pub fn compose_power(p: &FinPoly, n: usize, cap: usize) -> Result<FinPoly> {
    match n {
        0 => Ok(FinPoly::y()),
        1 => Ok(p.clone()),
        _ => {
            let rest = compose_power(p, n - 1, cap)?;
            try_compose(p, &rest, cap)
        }
    }
}

// ---------------------------------------------------------------------------
// Functorial actions on lenses
// ---------------------------------------------------------------------------

/// `Σ f_k : Σ p_k -> Σ q_k`.
pub fn sum_lens_all(lenses: &[&Lens]) -> Lens {
    let doms: Vec<&FinPoly> = lenses.iter().map(|f| f.dom()).collect();
    let cods: Vec<&FinPoly> = lenses.iter().map(|f| f.cod()).collect();
    let dom = Arc::new(sum_all(&doms));
    let cod = Arc::new(sum_all(&cods));
    let mut cod_offset = 0;
    let mut on_pos = Vec::new();
    let mut on_dir = Vec::new();
    for f in lenses {
        on_pos.extend(f.on_pos_table().iter().map(|&j| j + cod_offset));
        on_dir.extend(f.on_dir_table().iter().cloned());
        cod_offset += f.cod().num_positions();
    }
    Lens::new_unchecked(dom, cod, on_pos, on_dir)
}

pub fn sum_lens(f: &Lens, g: &Lens) -> Lens {
    sum_lens_all(&[f, g])
}

/// The coproduct injection of factor `k` into `Σ factors`.
pub fn sum_injection(factors: &[&FinPoly], k: usize) -> Lens {
    let total = Arc::new(sum_all(factors));
    let offset: usize = factors[..k].iter().map(|p| p.num_positions()).sum();
    let p = factors[k];
    Lens::new_unchecked(
        Arc::new(p.clone()),
        total,
        (0..p.num_positions()).map(|i| i + offset).collect(),
        (0..p.num_positions())
            .map(|i| (0..p.dir_count(i)).collect())
            .collect(),
    )
}

/// `[f_k] : Σ p_k -> q` for lenses sharing a codomain.
pub fn copairing(lenses: &[&Lens]) -> Result<Lens> {
    let cod = shared(lenses.iter().map(|f| f.cod_arc()), "copairing codomains")?;
    let doms: Vec<&FinPoly> = lenses.iter().map(|f| f.dom()).collect();
    let dom = Arc::new(sum_all(&doms));
    let mut on_pos = Vec::new();
    let mut on_dir = Vec::new();
    for f in lenses {
        let f = f.aligned_cod(&cod);
        on_pos.extend_from_slice(f.on_pos_table());
        on_dir.extend(f.on_dir_table().iter().cloned());
    }
    Ok(Lens::new_unchecked(dom, cod, on_pos, on_dir))
}

/// `Π f_k : Π p_k -> Π q_k`.
pub fn product_lens_all(lenses: &[&Lens]) -> Lens {
    let doms: Vec<&FinPoly> = lenses.iter().map(|f| f.dom()).collect();
    let cods: Vec<&FinPoly> = lenses.iter().map(|f| f.cod()).collect();
    let dom = Arc::new(product_all(&doms));
    let cod = Arc::new(product_all(&cods));
    let cod_layout = TupleLayout::new(&cods);
    let mut on_pos = Vec::with_capacity(dom.num_positions());
    let mut on_dir = Vec::with_capacity(dom.num_positions());
    for t in TupleLayout::new(&doms).tuples() {
        let image: Vec<usize> = t.iter().zip(lenses).map(|(&i, f)| f.on_pos(i)).collect();
        on_pos.push(cod_layout.position(&image));
        let mut back = Vec::new();
        for (k, f) in lenses.iter().enumerate() {
            let offset = product_dir_offset(&doms, &t, k);
            back.extend(f.on_dir_table()[t[k]].iter().map(|&d| d + offset));
        }
        on_dir.push(back);
    }
    Lens::new_unchecked(dom, cod, on_pos, on_dir)
}

pub fn product_lens(f: &Lens, g: &Lens) -> Lens {
    product_lens_all(&[f, g])
}

/// The projection `Π factors -> factors[k]`.
pub fn product_projection(factors: &[&FinPoly], k: usize) -> Lens {
    let total = Arc::new(product_all(factors));
    let layout = TupleLayout::new(factors);
    let mut on_pos = Vec::with_capacity(total.num_positions());
    let mut on_dir = Vec::with_capacity(total.num_positions());
    for t in layout.tuples() {
        on_pos.push(t[k]);
        let offset = product_dir_offset(factors, &t, k);
        on_dir.push((0..factors[k].dir_count(t[k])).map(|d| d + offset).collect());
    }
    Lens::new_unchecked(total, Arc::new(factors[k].clone()), on_pos, on_dir)
}

/// `⟨f_k⟩ : p -> Π q_k` for lenses sharing a domain.
pub fn pairing(lenses: &[&Lens]) -> Result<Lens> {
    let dom = shared(lenses.iter().map(|f| f.dom_arc()), "pairing domains")?;
    let aligned: Vec<_> = lenses.iter().map(|f| f.aligned_to(&dom)).collect();
    let cods: Vec<&FinPoly> = lenses.iter().map(|f| f.cod()).collect();
    let cod = Arc::new(product_all(&cods));
    let layout = TupleLayout::new(&cods);
    let mut on_pos = Vec::with_capacity(dom.num_positions());
    let mut on_dir = Vec::with_capacity(dom.num_positions());
    for i in 0..dom.num_positions() {
        let image: Vec<usize> = aligned.iter().map(|f| f.on_pos(i)).collect();
        on_pos.push(layout.position(&image));
        let mut back = Vec::new();
        for f in &aligned {
            back.extend_from_slice(&f.on_dir_table()[i]);
        }
        on_dir.push(back);
    }
    Ok(Lens::new_unchecked(dom, cod, on_pos, on_dir))
}

/// `⊗ f_k : ⊗ p_k -> ⊗ q_k`.
pub fn tensor_lens_all(lenses: &[&Lens]) -> Lens {
    let doms: Vec<&FinPoly> = lenses.iter().map(|f| f.dom()).collect();
    let cods: Vec<&FinPoly> = lenses.iter().map(|f| f.cod()).collect();
    let dom = Arc::new(tensor_all(&doms));
    let cod = Arc::new(tensor_all(&cods));
    let cod_layout = TupleLayout::new(&cods);
    let mut on_pos = Vec::with_capacity(dom.num_positions());
    let mut on_dir = Vec::with_capacity(dom.num_positions());
    for t in TupleLayout::new(&doms).tuples() {
        let image: Vec<usize> = t.iter().zip(lenses).map(|(&i, f)| f.on_pos(i)).collect();
        on_pos.push(cod_layout.position(&image));
        let dom_radices = tensor_dir_radices(&doms, &t);
        let cod_radices = tensor_dir_radices(&cods, &image);
        let back = Odometer::new(cod_radices)
            .map(|es| {
                let ds: Vec<usize> = es
                    .iter()
                    .zip(lenses.iter().zip(&t))
                    .map(|(&e, (f, &i))| f.on_dir(i, e))
                    .collect();
                odometer::rank_mixed(&ds, &dom_radices)
            })
            .collect();
        on_dir.push(back);
    }
    Lens::new_unchecked(dom, cod, on_pos, on_dir)
}

pub fn tensor_lens(f: &Lens, g: &Lens) -> Lens {
    tensor_lens_all(&[f, g])
}

/// Horizontal composite `f ∘ g : p ∘ q -> p' ∘ q'` of `f: p -> p'` and
/// `g: q -> q'`.
pub fn compose_lens(f: &Lens, g: &Lens) -> Lens {
    let (p, q) = (f.dom(), g.dom());
    let (p2, q2) = (f.cod(), g.cod());
    let dom = Arc::new(compose(p, q));
    let cod = Arc::new(compose(p2, q2));
    let dom_layout = ComposeLayout::new(p, q).expect("domain was built");
    let cod_layout = ComposeLayout::new(p2, q2).expect("codomain was built");
    let mut on_pos = Vec::with_capacity(dom.num_positions());
    let mut on_dir = Vec::with_capacity(dom.num_positions());
    for idx in 0..dom.num_positions() {
        let (i, phi) = dom_layout.decode(p, idx);
        let i2 = f.on_pos(i);
        let phi2: Vec<usize> = (0..p2.dir_count(i2))
            .map(|d2| g.on_pos(phi[f.on_dir(i, d2)]))
            .collect();
        on_pos.push(cod_layout.position(i2, &phi2));
        let mut back = Vec::with_capacity(cod.dir_count(on_pos[idx]));
        for (d2, &j2) in phi2.iter().enumerate() {
            let d = f.on_dir(i, d2);
            let j = phi[d];
            for e2 in 0..q2.dir_count(j2) {
                let e = g.on_dir(j, e2);
                back.push(ComposeLayout::direction(q, &phi, d, e));
            }
        }
        on_dir.push(back);
    }
    Lens::new_unchecked(dom, cod, on_pos, on_dir)
}

fn shared<'a>(
    mut arcs: impl Iterator<Item = &'a Arc<FinPoly>>,
    what: &str,
) -> Result<Arc<FinPoly>> {
    let first = arcs
        .next()
        .ok_or_else(|| PolyError::ShapeMismatch(format!("{what}: no lenses given")))?
        .clone();
    for other in arcs {
        if **other != *first {
            return Err(PolyError::InterfaceMismatch(format!("{what} differ")));
        }
    }
    Ok(first)
}

impl Lens {
    /// Re-expresses the lens over a codomain strictly equal to its own.
    pub(crate) fn aligned_cod(&self, cod: &Arc<FinPoly>) -> Lens {
        if Arc::ptr_eq(self.cod_arc(), cod) || self.cod().same_layout(cod) {
            return Lens::new_unchecked(
                self.dom_arc().clone(),
                cod.clone(),
                self.on_pos_table().to_vec(),
                self.on_dir_table().to_vec(),
            );
        }
        let mut on_pos = Vec::with_capacity(self.on_pos_table().len());
        let mut on_dir = Vec::with_capacity(self.on_pos_table().len());
        for (i, &j) in self.on_pos_table().iter().enumerate() {
            let j2 = cod
                .position_index(self.cod().position_label(j))
                .expect("strictly equal codomain");
            on_pos.push(j2);
            on_dir.push(
                cod.dirs(j2)
                    .elements()
                    .iter()
                    .map(|e| {
                        let mine = self.cod().dirs(j).index_of(e).expect("strictly equal");
                        self.on_dir(i, mine)
                    })
                    .collect(),
            );
        }
        Lens::new_unchecked(self.dom_arc().clone(), cod.clone(), on_pos, on_dir)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lens::lens_id;

    fn ex(e: &[usize]) -> FinPoly {
        FinPoly::from_exponents(e)
    }

    #[test]
    fn worked_identities() {
        // (y+1)(y+2) = y^2 + 3y + 2
        let quad = ex(&[2, 1, 1, 1, 0, 0]);
        assert_eq!(
            product(&ex(&[1, 0]), &ex(&[1, 0, 0])).canonical_form(),
            quad.canonical_form()
        );
        // (y^2+1) + (3y+1)
        assert_eq!(
            sum(&ex(&[2, 0]), &ex(&[1, 1, 1, 0])).canonical_form(),
            quad.canonical_form()
        );
        // (y^3 + y) ⊗ (y^2 + 1) = y^6 + y^2 + 2
        assert_eq!(
            tensor(&ex(&[3, 1]), &ex(&[2, 0])).canonical_form(),
            ex(&[6, 2, 0, 0]).canonical_form()
        );
        // (y^2 + y) ∘ (y^3 + 1) = y^6 + 3y^3 + 2
        assert_eq!(
            compose(&ex(&[2, 1]), &ex(&[3, 0])).canonical_form(),
            ex(&[6, 3, 3, 3, 0, 0]).canonical_form()
        );
    }

    #[test]
    fn units() {
        let p = ex(&[2, 0, 1]);
        assert!(product(&p, &FinPoly::one()).is_iso(&p));
        assert!(sum(&p, &FinPoly::zero()).is_iso(&p));
        assert!(tensor(&p, &FinPoly::y()).is_iso(&p));
        assert!(compose(&p, &FinPoly::y()).is_iso(&p));
        assert!(compose(&FinPoly::y(), &p).is_iso(&p));
    }

    #[test]
    fn compose_layout_roundtrip() {
        let p = ex(&[2, 0, 1]);
        let q = ex(&[1, 3, 0]);
        let pq = compose(&p, &q);
        let layout = ComposeLayout::new(&p, &q).unwrap();
        assert_eq!(layout.num_positions(), pq.num_positions());
        for idx in 0..pq.num_positions() {
            let (i, phi) = layout.decode(&p, idx);
            assert_eq!(layout.position(i, &phi), idx);
            let n = pq.dir_count(idx);
            for k in 0..n {
                let (d, e) = ComposeLayout::decode_direction(&q, &phi, k);
                assert_eq!(ComposeLayout::direction(&q, &phi, d, e), k);
            }
        }
    }

    #[test]
    fn compose_with_empty_blocks_decodes() {
        // q has no positions, so positions of p with directions vanish
        let p = ex(&[1, 0, 2, 0]);
        let q = FinPoly::zero();
        let pq = compose(&p, &q);
        assert_eq!(pq.num_positions(), 2);
        let layout = ComposeLayout::new(&p, &q).unwrap();
        assert_eq!(layout.decode(&p, 0).0, 1);
        assert_eq!(layout.decode(&p, 1).0, 3);
    }

    #[test]
    fn compose_labels_are_dependent_pairs() {
        let p = crate::poly::make_poly(vec![("a", vec!["d"])]).unwrap();
        let q = crate::poly::make_poly(vec![("u", vec!["e"]), ("v", vec![])]).unwrap();
        let pq = compose(&p, &q);
        assert_eq!(pq.position_label(0), "(a,{d:u})");
        assert_eq!(pq.dirs(0).elements(), &["(d,e)".to_string()]);
        assert_eq!(pq.position_label(1), "(a,{d:v})");
        assert!(pq.dirs(1).is_empty());
    }

    #[test]
    fn projections_recover_pairing() {
        let p = ex(&[2, 1]);
        let q = ex(&[1, 0]);
        let r = ex(&[2]);
        let f = Lens::new(p.clone(), q.clone(), vec![0, 1], vec![vec![1], vec![]]).unwrap();
        let g = Lens::new(p.clone(), r.clone(), vec![0, 0], vec![vec![0, 1], vec![0, 0]]).unwrap();
        let fg = pairing(&[&f, &g]).unwrap();
        assert_eq!(fg.then(&product_projection(&[&q, &r], 0)).unwrap(), f);
        assert_eq!(fg.then(&product_projection(&[&q, &r], 1)).unwrap(), g);
    }

    #[test]
    fn functorial_actions_preserve_identities() {
        let p = ex(&[2, 0]);
        let q = ex(&[1, 1]);
        let (ip, iq) = (lens_id(&p), lens_id(&q));
        assert_eq!(sum_lens(&ip, &iq), lens_id(&sum(&p, &q)));
        assert_eq!(product_lens(&ip, &iq), lens_id(&product(&p, &q)));
        assert_eq!(tensor_lens(&ip, &iq), lens_id(&tensor(&p, &q)));
        assert_eq!(compose_lens(&ip, &iq), lens_id(&compose(&p, &q)));
    }

    #[test]
    fn copairing_of_injections_is_identity() {
        let p = ex(&[2, 0]);
        let q = ex(&[1]);
        let i0 = sum_injection(&[&p, &q], 0);
        let i1 = sum_injection(&[&p, &q], 1);
        assert_eq!(copairing(&[&i0, &i1]).unwrap(), lens_id(&sum(&p, &q)));
    }
}
