//! Explicit structure isomorphisms: associators, unitors, symmetries, the
//! duoidal interchange, and the distributivity witnesses.
//!
//! Most associators and unitors are the identity on indices, because the
//! enumeration conventions of the products already agree; only the labels
//! differ. They are still built as genuine lenses between the two objects so
//! that coherence diagrams can be compared with exact lens equality.

use std::sync::Arc;

use crate::error::Result;
use crate::lens::Lens;
use crate::odometer::{self, Odometer};
use crate::poly::FinPoly;

use super::monoidal::{
    compose, product, product_all, sum, sum_all, tensor, ComposeLayout, TupleLayout,
};

/// The four monoidal structures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monoidal {
    Sum,
    Product,
    Tensor,
    Compose,
}

impl Monoidal {
    pub const ALL: [Monoidal; 4] = [
        Monoidal::Sum,
        Monoidal::Product,
        Monoidal::Tensor,
        Monoidal::Compose,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Monoidal::Sum => "sum",
            Monoidal::Product => "product",
            Monoidal::Tensor => "tensor",
            Monoidal::Compose => "compose",
        }
    }

    pub fn unit(self) -> FinPoly {
        match self {
            Monoidal::Sum => FinPoly::zero(),
            Monoidal::Product => FinPoly::one(),
            Monoidal::Tensor | Monoidal::Compose => FinPoly::y(),
        }
    }

    pub fn apply(self, p: &FinPoly, q: &FinPoly) -> FinPoly {
        match self {
            Monoidal::Sum => sum(p, q),
            Monoidal::Product => product(p, q),
            Monoidal::Tensor => tensor(p, q),
            Monoidal::Compose => compose(p, q),
        }
    }

    pub fn is_symmetric(self) -> bool {
        self != Monoidal::Compose
    }

    /// `(p · q) · r -> p · (q · r)`.
    pub fn associator(self, p: &FinPoly, q: &FinPoly, r: &FinPoly) -> Lens {
        let dom = self.apply(&self.apply(p, q), r);
        let cod = self.apply(p, &self.apply(q, r));
        match self {
            Monoidal::Compose => compose_associator(p, q, r, dom, cod),
            _ => index_identity(dom, cod),
        }
    }

    /// `I · p -> p`.
    pub fn left_unitor(self, p: &FinPoly) -> Lens {
        index_identity(self.apply(&self.unit(), p), p.clone())
    }

    /// `p · I -> p`.
    pub fn right_unitor(self, p: &FinPoly) -> Lens {
        index_identity(self.apply(p, &self.unit()), p.clone())
    }

    /// `p · q -> q · p`; `None` for `∘`.
    pub fn symmetry(self, p: &FinPoly, q: &FinPoly) -> Option<Lens> {
        match self {
            Monoidal::Sum => Some(sum_symmetry(p, q)),
            Monoidal::Product => Some(product_symmetry(p, q)),
            Monoidal::Tensor => Some(tensor_symmetry(p, q)),
            Monoidal::Compose => None,
        }
    }
}

/// A lens between two objects with identical index layouts.
fn index_identity(dom: FinPoly, cod: FinPoly) -> Lens {
    let on_pos = (0..dom.num_positions()).collect();
    let on_dir = (0..dom.num_positions())
        .map(|i| (0..dom.dir_count(i)).collect())
        .collect();
    Lens::new(dom, cod, on_pos, on_dir).expect("layouts agree")
}

fn sum_symmetry(p: &FinPoly, q: &FinPoly) -> Lens {
    let (np, nq) = (p.num_positions(), q.num_positions());
    let dom = sum(p, q);
    let cod = sum(q, p);
    let on_pos = (0..np + nq)
        .map(|i| if i < np { nq + i } else { i - np })
        .collect();
    let on_dir = (0..dom.num_positions())
        .map(|i| (0..dom.dir_count(i)).collect())
        .collect();
    Lens::new(dom, cod, on_pos, on_dir).expect("well-typed")
}

fn product_symmetry(p: &FinPoly, q: &FinPoly) -> Lens {
    let (np, nq) = (p.num_positions(), q.num_positions());
    let dom = product(p, q);
    let cod = product(q, p);
    let mut on_pos = Vec::with_capacity(np * nq);
    let mut on_dir = Vec::with_capacity(np * nq);
    for a in 0..np {
        for b in 0..nq {
            on_pos.push(b * np + a);
            let (pa, qb) = (p.dir_count(a), q.dir_count(b));
            on_dir.push((0..qb).map(|e| pa + e).chain(0..pa).collect());
        }
    }
    Lens::new(dom, cod, on_pos, on_dir).expect("well-typed")
}

fn tensor_symmetry(p: &FinPoly, q: &FinPoly) -> Lens {
    let (np, nq) = (p.num_positions(), q.num_positions());
    let dom = tensor(p, q);
    let cod = tensor(q, p);
    let mut on_pos = Vec::with_capacity(np * nq);
    let mut on_dir = Vec::with_capacity(np * nq);
    for a in 0..np {
        for b in 0..nq {
            on_pos.push(b * np + a);
            let (pa, qb) = (p.dir_count(a), q.dir_count(b));
            let mut back = Vec::with_capacity(pa * qb);
            for e in 0..qb {
                for d in 0..pa {
                    back.push(d * qb + e);
                }
            }
            on_dir.push(back);
        }
    }
    Lens::new(dom, cod, on_pos, on_dir).expect("well-typed")
}

fn compose_associator(p: &FinPoly, q: &FinPoly, r: &FinPoly, dom: FinPoly, cod: FinPoly) -> Lens {
    let pq = compose(p, q);
    let qr = compose(q, r);
    let outer_dom = ComposeLayout::new(&pq, r).expect("built");
    let inner_pq = ComposeLayout::new(p, q).expect("built");
    let inner_qr = ComposeLayout::new(q, r).expect("built");
    let outer_cod = ComposeLayout::new(p, &qr).expect("built");
    let mut on_pos = Vec::with_capacity(dom.num_positions());
    for idx in 0..dom.num_positions() {
        let (m, psi) = outer_dom.decode(&pq, idx);
        let (i, phi) = inner_pq.decode(p, m);
        let mut chi = Vec::with_capacity(phi.len());
        let mut offset = 0;
        for &j in &phi {
            let n = q.dir_count(j);
            chi.push(inner_qr.position(j, &psi[offset..offset + n]));
            offset += n;
        }
        on_pos.push(outer_cod.position(i, &chi));
    }
    // ((d, e), f) and (d, (e, f)) are enumerated in the same order
    let on_dir = (0..dom.num_positions())
        .map(|i| (0..dom.dir_count(i)).collect())
        .collect();
    Lens::new(dom, cod, on_pos, on_dir).expect("well-typed")
}

/// The interchange `(p1 ∘ p2) ⊗ (q1 ∘ q2) -> (p1 ⊗ q1) ∘ (p2 ⊗ q2)`.
///
/// On positions it pairs the two strategies, `((i, φ), (k, χ)) ↦ ((i, k),
/// (d, e) ↦ (φ d, χ e))`; on directions it unpairs, `((d, e), (f, g)) ↦ ((d,
/// f), (e, g))`.
pub fn duoidal(p1: &FinPoly, p2: &FinPoly, q1: &FinPoly, q2: &FinPoly) -> Lens {
    let left = compose(p1, p2);
    let right = compose(q1, q2);
    let dom = tensor(&left, &right);
    let top = tensor(p1, q1);
    let bottom = tensor(p2, q2);
    let cod = compose(&top, &bottom);
    let l_layout = ComposeLayout::new(p1, p2).expect("built");
    let r_layout = ComposeLayout::new(q1, q2).expect("built");
    let c_layout = ComposeLayout::new(&top, &bottom).expect("built");
    let n2 = q2.num_positions();
    let mut on_pos = Vec::with_capacity(dom.num_positions());
    let mut on_dir = Vec::with_capacity(dom.num_positions());
    for a in 0..left.num_positions() {
        let (i, phi) = l_layout.decode(p1, a);
        for b in 0..right.num_positions() {
            let (k, chi) = r_layout.decode(q1, b);
            let psi: Vec<usize> = phi
                .iter()
                .flat_map(|&x| chi.iter().map(move |&z| x * n2 + z))
                .collect();
            on_pos.push(c_layout.position(i * q1.num_positions() + k, &psi));
            let right_dirs = right.dir_count(b);
            let mut back = Vec::new();
            for (d, &x) in phi.iter().enumerate() {
                for (e, &z) in chi.iter().enumerate() {
                    for f in 0..p2.dir_count(x) {
                        for g in 0..q2.dir_count(z) {
                            let df = ComposeLayout::direction(p2, &phi, d, f);
                            let eg = ComposeLayout::direction(q2, &chi, e, g);
                            back.push(df * right_dirs + eg);
                        }
                    }
                }
            }
            on_dir.push(back);
        }
    }
    Lens::new(dom, cod, on_pos, on_dir).expect("well-typed")
}

/// Mutually inverse witnesses for `(pq + r) ∘ s ≅ (p ∘ s)(q ∘ s) + (r ∘ s)`.
pub fn distribute_left(p: &FinPoly, q: &FinPoly, r: &FinPoly, s: &FinPoly) -> (Lens, Lens) {
    let pq = product(p, q);
    let base = sum(&pq, r);
    let dom = compose(&base, s);
    let ps = compose(p, s);
    let qs = compose(q, s);
    let rs = compose(r, s);
    let cod = sum(&product(&ps, &qs), &rs);
    let dom_layout = ComposeLayout::new(&base, s).expect("built");
    let ps_layout = ComposeLayout::new(p, s).expect("built");
    let qs_layout = ComposeLayout::new(q, s).expect("built");
    let rs_layout = ComposeLayout::new(r, s).expect("built");
    let nq = q.num_positions();
    let n_pq = pq.num_positions();
    let n_prod = ps.num_positions() * qs.num_positions();
    let on_pos = (0..dom.num_positions())
        .map(|idx| {
            let (m, phi) = dom_layout.decode(&base, idx);
            if m < n_pq {
                let (a, b) = (m / nq, m % nq);
                let split = p.dir_count(a);
                ps_layout.position(a, &phi[..split]) * qs.num_positions()
                    + qs_layout.position(b, &phi[split..])
            } else {
                n_prod + rs_layout.position(m - n_pq, &phi)
            }
        })
        .collect();
    // directions are listed p-block, q-block on both sides
    let on_dir = (0..dom.num_positions())
        .map(|i| (0..dom.dir_count(i)).collect())
        .collect();
    let forward = Lens::new(dom, cod, on_pos, on_dir).expect("well-typed");
    let backward = forward.inverse().expect("distributor is invertible");
    (forward, backward)
}

/// Mutually inverse witnesses for `Π_a Σ_{i ∈ I(a)} p_{a,i} ≅
/// Σ_{σ ∈ Π_a I(a)} Π_a p_{a,σ(a)}`.
///
/// `families[a]` lists the polynomials `p_{a,i}` for `i ∈ I(a)`.
pub fn complete_distributivity(families: &[Vec<FinPoly>]) -> Result<(Lens, Lens)> {
    let sums: Vec<FinPoly> = families
        .iter()
        .map(|fam| sum_all(&fam.iter().collect::<Vec<_>>()))
        .collect();
    let sum_refs: Vec<&FinPoly> = sums.iter().collect();
    let dom = product_all(&sum_refs);
    let choice_radices: Vec<usize> = families.iter().map(Vec::len).collect();
    let terms: Vec<FinPoly> = Odometer::new(choice_radices.clone())
        .map(|sigma| {
            let picked: Vec<&FinPoly> = sigma
                .iter()
                .enumerate()
                .map(|(a, &i)| &families[a][i])
                .collect();
            product_all(&picked)
        })
        .collect();
    let cod = sum_all(&terms.iter().collect::<Vec<_>>());
    let mut term_offsets = Vec::with_capacity(terms.len());
    let mut acc = 0;
    for t in &terms {
        term_offsets.push(acc);
        acc += t.num_positions();
    }
    let dom_layout = TupleLayout::new(&sum_refs);
    let mut on_pos = Vec::with_capacity(dom.num_positions());
    for idx in 0..dom.num_positions() {
        let t = dom_layout.components(idx);
        let mut sigma = Vec::with_capacity(t.len());
        let mut inner = Vec::with_capacity(t.len());
        let mut radices = Vec::with_capacity(t.len());
        for (a, &m) in t.iter().enumerate() {
            let (i, x) = locate(&families[a], m);
            sigma.push(i);
            inner.push(x);
            radices.push(families[a][i].num_positions());
        }
        let term = odometer::rank_mixed(&sigma, &choice_radices);
        on_pos.push(term_offsets[term] + odometer::rank_mixed(&inner, &radices));
    }
    // both sides concatenate the chosen summands' directions in order of a
    let on_dir = (0..dom.num_positions())
        .map(|i| (0..dom.dir_count(i)).collect())
        .collect();
    let forward = Lens::new(dom, cod, on_pos, on_dir)?;
    let backward = forward.inverse()?;
    Ok((forward, backward))
}

/// Summand and local index of position `m` of `Σ_i family[i]`.
fn locate(family: &[FinPoly], mut m: usize) -> (usize, usize) {
    for (i, p) in family.iter().enumerate() {
        if m < p.num_positions() {
            return (i, m);
        }
        m -= p.num_positions();
    }
    panic!("position outside the sum");
}

/// `Arc`-free identity on `p`, for coherence checks.
pub fn identity(p: &FinPoly) -> Lens {
    Lens::identity(Arc::new(p.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monoidal::{compose_lens, product_lens, sum_lens, tensor_lens};

    fn ex(e: &[usize]) -> FinPoly {
        FinPoly::from_exponents(e)
    }

    fn whisker(m: Monoidal, f: &Lens, g: &Lens) -> Lens {
        match m {
            Monoidal::Sum => sum_lens(f, g),
            Monoidal::Product => product_lens(f, g),
            Monoidal::Tensor => tensor_lens(f, g),
            Monoidal::Compose => compose_lens(f, g),
        }
    }

    #[test]
    fn structure_maps_are_invertible() {
        let samples = [ex(&[]), ex(&[0]), ex(&[1, 0]), ex(&[2, 1]), ex(&[0, 2])];
        for m in Monoidal::ALL {
            for p in &samples {
                assert!(m.left_unitor(p).is_invertible());
                assert!(m.right_unitor(p).is_invertible());
                for q in &samples {
                    if let Some(s) = m.symmetry(p, q) {
                        let back = m.symmetry(q, p).unwrap();
                        assert_eq!(s.then(&back).unwrap(), identity(&m.apply(p, q)));
                    }
                    for r in &samples {
                        assert!(m.associator(p, q, r).is_invertible(), "{m:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn pentagon_and_triangle() {
        let samples = [ex(&[0]), ex(&[1, 0]), ex(&[2]), ex(&[1, 1])];
        for m in Monoidal::ALL {
            for p in &samples {
                for q in &samples {
                    let i = m.unit();
                    // triangle: (p·I)·q -> p·(I·q) -> p·q equals ρ·id
                    let lhs = m
                        .associator(p, &i, q)
                        .then(&whisker(m, &identity(p), &m.left_unitor(q)))
                        .unwrap();
                    let rhs = whisker(m, &m.right_unitor(p), &identity(q));
                    assert_eq!(lhs, rhs, "{m:?} triangle");
                    for r in &samples[..2] {
                        for s in &samples[..2] {
                            let pq = m.apply(p, q);
                            let qr = m.apply(q, r);
                            let rs = m.apply(r, s);
                            let top = m
                                .associator(&pq, r, s)
                                .then(&m.associator(p, q, &rs))
                                .unwrap();
                            let bottom = whisker(m, &m.associator(p, q, r), &identity(s))
                                .then(&m.associator(p, &qr, s))
                                .unwrap()
                                .then(&whisker(m, &identity(p), &m.associator(q, r, s)))
                                .unwrap();
                            assert_eq!(top, bottom, "{m:?} pentagon");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn duoidal_unit_case_is_identity() {
        let p1 = ex(&[2, 0]);
        let q1 = ex(&[1, 1]);
        let y = FinPoly::y();
        let d = duoidal(&p1, &y, &q1, &y);
        // (p1∘y)⊗(q1∘y) and (p1⊗q1)∘(y⊗y) share the index layout of p1⊗q1
        assert!(d.is_invertible());
        assert_eq!(d.on_pos_table(), identity(&tensor(&p1, &q1)).on_pos_table());
        assert_eq!(d.on_dir_table(), identity(&tensor(&p1, &q1)).on_dir_table());
    }

    #[test]
    fn distributivity_instances() {
        let y = FinPoly::y();
        let (f, g) = distribute_left(&y, &y, &FinPoly::one(), &ex(&[1, 0]));
        assert_eq!(f.then(&g).unwrap(), identity(f.dom()));
        assert!(f.dom().is_iso(f.cod()));
        let (f, g) = complete_distributivity(&[
            vec![FinPoly::one(), FinPoly::one()],
            vec![FinPoly::one(), FinPoly::one()],
        ])
        .unwrap();
        assert_eq!(f.dom().num_positions(), 4);
        assert_eq!(g.then(&f).unwrap(), identity(f.cod()));
        let (f, _) = complete_distributivity(&[]).unwrap();
        assert!(f.dom().is_iso(&FinPoly::one()) && f.cod().is_iso(&FinPoly::one()));
    }
}
