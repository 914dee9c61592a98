use std::sync::Arc;

use polydyn::algebra::hom_iter;
use polydyn::category::{
    category_to_comonoid, check_cofunctor, comonoid_to_category, is_comonoid_morphism, small_catalog, Cofunctor,
    Comonoid, FinCat,
};

const CAP: usize = 1 << 16;

fn slice(max_morphisms: usize) -> Vec<(Arc<FinCat>, Comonoid)> {
    small_catalog()
        .into_iter()
        .filter(|k| k.num_morphisms() <= max_morphisms)
        .map(|k| {
            let c = category_to_comonoid(&k).unwrap();
            (Arc::new(k), c)
        })
        .collect()
}

#[test]
fn small_catalog_round_trips_through_comonoids() {
    let cats = small_catalog();
    assert_eq!(cats.len(), 55);
    for k in &cats {
        let c = category_to_comonoid(k).unwrap();
        assert!(c.check_laws().is_ok());
        let back = comonoid_to_category(&c).unwrap();
        assert_eq!(back.num_objects(), k.num_objects());
        assert_eq!(back.num_morphisms(), k.num_morphisms());
        assert!(polydyn::category::find_isomorphism(k, &back).is_some());
    }
}

#[test]
fn comonoid_morphisms_are_exactly_cofunctors() {
    let cats = slice(usize::MAX);
    let mut seen = 0usize;
    let mut accepted = 0usize;
    for (a, ca) in &cats {
        for (b, cb) in &cats {
            for f in hom_iter(ca.carrier(), cb.carrier()) {
                let cof = Cofunctor::from_lens(a.clone(), b.clone(), &f).unwrap();
                let by_laws = check_cofunctor(&cof).is_ok();
                let by_lens = is_comonoid_morphism(&f, ca, cb, CAP).unwrap();
                assert_eq!(by_laws, by_lens, "{} -> {}", ca.carrier().algebraic(), cb.carrier().algebraic());
                seen += 1;
                accepted += by_laws as usize;
            }
        }
    }
    assert!(accepted > 0 && accepted < seen);
}

/// Re-pointing one pulled-back morphism usually breaks a law. When it does
/// not, the mutant must itself be a genuine comonoid morphism.
#[test]
fn single_entry_mutations() {
    let cats = slice(usize::MAX);
    let (mut killed, mut survived) = (0usize, 0usize);
    for (a, ca) in &cats {
        for (b, cb) in &cats {
            for f in hom_iter(ca.carrier(), cb.carrier()) {
                let cof = Cofunctor::from_lens(a.clone(), b.clone(), &f).unwrap();
                if !check_cofunctor(&cof).is_ok() {
                    continue;
                }
                for c in 0..a.num_objects() {
                    for k in 0..cof.pull[c].len() {
                        for &alt in a.out_of(c) {
                            if alt == cof.pull[c][k] {
                                continue;
                            }
                            let mut m = cof.clone();
                            m.pull[c][k] = alt;
                            if check_cofunctor(&m).is_ok() {
                                let lens = m.to_lens().unwrap();
                                assert!(is_comonoid_morphism(&lens, ca, cb, CAP).unwrap());
                                survived += 1;
                            } else {
                                killed += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    assert!(killed > 0);
    assert!(killed > survived);
}
