mod common;

use common::natpoly::NatPoly;
use num_bigint::BigUint;
use polydyn::algebra::{
    cartesian_closure, compose, dirichlet_closure, hom_count, hom_count_factors, hom_enumerate, product, sum,
    tensor, Monoidal, DEFAULT_CAP,
};
use polydyn::{FinPoly, FinSet};
use proptest::prelude::*;

fn poly(exps: &[usize]) -> FinPoly {
    FinPoly::from_exponents(exps)
}

fn nat(p: &FinPoly) -> NatPoly {
    NatPoly::from_exponents(&p.exponents())
}

/// The canonical form predicted by the oracle: exponents listed in
/// descending order, one position per unit of coefficient.
fn canonical_of(n: &NatPoly) -> FinPoly {
    let mut exps = Vec::new();
    for (k, c) in n.0.iter().enumerate().rev() {
        let c: usize = c.try_into().expect("small coefficient");
        exps.extend(std::iter::repeat_n(k, c));
    }
    FinPoly::from_exponents(&exps)
}

#[test]
fn product_tensor_compose_examples() {
    let y = NatPoly::y();
    let c = NatPoly::constant;
    // (y+1)(y+2) = y^2 + 3y + 2
    let lhs = product(&poly(&[1, 0]), &poly(&[1, 0, 0]));
    let expected = y.mul(&y).add(&c(3).mul(&y)).add(&c(2));
    assert_eq!(nat(&lhs), expected);
    assert_eq!(lhs.canonical_form(), canonical_of(&expected));
    assert_eq!(lhs.canonical_form(), poly(&[2, 1, 1, 1, 0, 0]).canonical_form());

    // (y^3 + y) ⊗ (y^2 + 1) = y^6 + y^2 + 2
    let lhs = tensor(&poly(&[3, 1]), &poly(&[2, 0]));
    assert_eq!(nat(&lhs), NatPoly::new(&[2, 0, 1, 0, 0, 0, 1]));
    assert_eq!(nat(&lhs), nat(&poly(&[3, 1])).tensor(&nat(&poly(&[2, 0]))));
    assert_eq!(lhs.canonical_form(), poly(&[6, 2, 0, 0]));

    // (y^2 + y) ∘ (y^3 + 1) = y^6 + 3y^3 + 2
    let lhs = compose(&poly(&[2, 1]), &poly(&[3, 0]));
    assert_eq!(nat(&lhs), NatPoly::new(&[2, 0, 0, 3, 0, 0, 1]));
    assert_eq!(nat(&lhs), nat(&poly(&[2, 1])).compose(&nat(&poly(&[3, 0]))));
    assert_eq!(lhs.canonical_form(), poly(&[6, 3, 3, 3, 0, 0]));
}

#[test]
fn closures_match_displayed_products() {
    let q = poly(&[2, 1, 1, 1, 0, 0]);
    let p = poly(&[5, 4]);
    let qn = nat(&q);
    // ((5+y)^2 + 3(5+y) + 2) · ((4+y)^2 + 3(4+y) + 2)
    let shift = |k: u64| qn.compose(&NatPoly::new(&[k, 1]));
    let expected = shift(5).mul(&shift(4));
    let closure = cartesian_closure(&q, &p);
    assert_eq!(nat(&closure), expected);
    assert_eq!(expected, NatPoly::new(&[1260, 852, 215, 24, 1]));
    assert_eq!(closure.canonical_form(), canonical_of(&expected));

    // ((5y)^2 + 3(5y) + 2) · ((4y)^2 + 3(4y) + 2)
    let scale = |k: u64| qn.compose(&NatPoly::new(&[0, k]));
    let expected = scale(5).mul(&scale(4));
    let bracket = dirichlet_closure(&p, &q);
    assert_eq!(nat(&bracket), expected);
    assert_eq!(expected, NatPoly::new(&[4, 54, 262, 540, 400]));
    assert_eq!(bracket.canonical_form(), canonical_of(&expected));
}

#[test]
fn closure_expansions_factor() {
    let q = NatPoly::new(&[1260, 852, 215, 24, 1]);
    assert_eq!(q, NatPoly::new(&[42, 13, 1]).mul(&NatPoly::new(&[30, 11, 1])));
    let d = NatPoly::new(&[4, 54, 262, 540, 400]);
    assert_eq!(d, NatPoly::new(&[2, 15, 25]).mul(&NatPoly::new(&[2, 12, 16])));
}

#[test]
fn sum_and_yoneda() {
    let s = sum(&poly(&[2, 0]), &poly(&[1, 1, 1, 0]));
    assert_eq!(s.canonical_form(), poly(&[2, 1, 1, 1, 0, 0]));
    for a in 0..=3usize {
        for b in 0..=3usize {
            let count = hom_count(&poly(&[a]), &poly(&[b]));
            assert_eq!(count, BigUint::from(a.pow(b as u32)));
        }
    }
    assert_eq!(hom_count(&poly(&[2, 1, 0]), &FinPoly::one()), BigUint::from(1u32));
}

#[test]
fn evaluation_examples() {
    assert_eq!(poly(&[3]).eval(&FinSet::ordinal(2)).len(), 8);
    let p = poly(&[2, 1, 1, 1, 0, 0]);
    assert_eq!(p.eval(&FinSet::point()).len(), 6);
    assert_eq!(p.eval_empty().len(), 2);
    assert_eq!(BigUint::from(p.eval(&FinSet::ordinal(3)).len()), nat(&p).eval(3));
}

#[test]
fn hom_count_example() {
    let p = poly(&[2, 1, 1, 1, 0, 0]);
    let q = poly(&[5, 0]);
    assert_eq!(hom_count(&p, &q), BigUint::from(264u32));
    // (2^5+1)(1^5+1)^3(0^5+1)^2
    let factors: Vec<u32> = hom_count_factors(&p, &q).iter().map(|f| f.try_into().unwrap()).collect();
    assert_eq!(factors, [33, 2, 2, 2, 1, 1]);
    assert_eq!(hom_enumerate(&p, &q, DEFAULT_CAP).unwrap().len(), 264);
}

/// All polynomials with at most `max_pos` positions and at most `max_dir`
/// directions per position, up to reordering.
fn small_polys(max_pos: usize, max_dir: usize) -> Vec<FinPoly> {
    fn go(len: usize, min: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == len {
            return;
        }
        for e in min..=max {
            cur.push(e);
            go(len, e, max, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(max_pos, 0, max_dir, &mut Vec::new(), &mut out);
    out.iter().map(|e| poly(e)).collect()
}

#[test]
fn hom_count_matches_enumeration_exhaustively() {
    let polys = small_polys(3, 2);
    assert_eq!(polys.len(), 20);
    for p in &polys {
        for q in &polys {
            let n = hom_enumerate(p, q, DEFAULT_CAP).unwrap().len();
            assert_eq!(hom_count(p, q), BigUint::from(n), "{} -> {}", p.algebraic(), q.algebraic());
        }
    }
}

#[test]
fn composition_is_functor_composition() {
    let polys = small_polys(2, 2);
    for p in &polys {
        for q in &polys {
            let pq = compose(p, q);
            for n in 0..=2 {
                let x = FinSet::ordinal(n);
                assert_eq!(pq.eval(&x).len(), p.eval(&q.eval(&x)).len());
            }
        }
    }
}

#[test]
fn product_and_tensor_directions() {
    let polys = small_polys(2, 3);
    for p in &polys {
        for q in &polys {
            let (prod, tens) = (product(p, q), tensor(p, q));
            assert_eq!(prod.num_positions(), tens.num_positions());
            for i in 0..p.num_positions() {
                for j in 0..q.num_positions() {
                    let k = i * q.num_positions() + j;
                    assert_eq!(prod.dir_count(k), p.dir_count(i) + q.dir_count(j));
                    assert_eq!(tens.dir_count(k), p.dir_count(i) * q.dir_count(j));
                }
            }
        }
    }
}

fn arb_poly() -> impl Strategy<Value = FinPoly> {
    prop::collection::vec(0usize..=3, 0..=3).prop_map(|e| poly(&e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monoidal_laws_up_to_iso(p in arb_poly(), q in arb_poly(), r in arb_poly()) {
        for m in Monoidal::ALL {
            let unit = m.unit();
            prop_assert_eq!(m.apply(&unit, &p).canonical_form(), p.canonical_form());
            prop_assert_eq!(m.apply(&p, &unit).canonical_form(), p.canonical_form());
            if m == Monoidal::Compose && [&p, &q, &r].iter().any(|x| x.total_dirs() > 4) {
                continue;
            }
            let left = m.apply(&m.apply(&p, &q), &r);
            let right = m.apply(&p, &m.apply(&q, &r));
            prop_assert_eq!(left.canonical_form(), right.canonical_form());
            let a = m.associator(&p, &q, &r);
            prop_assert!(a.is_invertible());
            if m.is_symmetric() {
                prop_assert_eq!(m.apply(&p, &q).canonical_form(), m.apply(&q, &p).canonical_form());
                let s = m.symmetry(&p, &q).unwrap();
                prop_assert_eq!(s.then(&m.symmetry(&q, &p).unwrap()).unwrap(), polydyn::Lens::identity(m.apply(&p, &q)));
            }
        }
        // oracle agreement for the four products
        prop_assert_eq!(nat(&sum(&p, &q)), nat(&p).add(&nat(&q)));
        prop_assert_eq!(nat(&product(&p, &q)), nat(&p).mul(&nat(&q)));
        prop_assert_eq!(nat(&tensor(&p, &q)), nat(&p).tensor(&nat(&q)));
        prop_assert_eq!(nat(&compose(&p, &q)), nat(&p).compose(&nat(&q)));
    }
}
