//! The adjunctions between Poly and Set (constant, linear and representable
//! polynomials), checked as explicit bijections of hom-sets.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::Result;
use crate::label;
use crate::lens::Lens;
use crate::odometer::Odometer;
use crate::poly::FinPoly;
use crate::report::Report;
use crate::set::FinSet;

use super::closure::{cartesian_closure, curry_cartesian, uncurry_cartesian};
use super::hom::{hom_count, hom_enumerate, DEFAULT_CAP};
use super::monoidal::product;

/// `Γp = Π_i p_i`, one element per global section `p -> y`, labeled by the
/// chosen direction at every position.
pub fn global_sections(p: &FinPoly) -> FinSet {
    let keys: Vec<&str> = (0..p.num_positions()).map(|i| p.position_label(i)).collect();
    let elements = Odometer::new(p.exponents())
        .map(|choice| {
            let vals: Vec<&str> = choice.iter().enumerate().map(|(i, &d)| p.dirs(i).get(d)).collect();
            label::function(&keys, &vals)
        })
        .collect();
    FinSet::from_distinct(elements)
}

/// `p(0)` as the set of positions with no directions.
pub fn positions_without_directions(p: &FinPoly) -> Vec<usize> {
    (0..p.num_positions()).filter(|&i| p.dir_count(i) == 0).collect()
}

/// All functions `a -> b`, as index tables.
fn functions(a: usize, b: usize) -> Odometer {
    Odometer::functions(a, b)
}

fn lens_key(f: &Lens) -> (Vec<usize>, Vec<Vec<usize>>) {
    (f.on_pos_table().to_vec(), f.on_dir_table().to_vec())
}

/// Checks that `forward` is a bijection from `homs` onto `targets` (given
/// by their count) with `backward` as two-sided inverse.
fn check_bijection<T: Clone + Eq + std::hash::Hash + std::fmt::Debug>(
    r: &mut Report,
    what: &str,
    homs: &[Lens],
    targets: &[T],
    forward: impl Fn(&Lens) -> Result<T>,
    backward: impl Fn(&T) -> Result<Lens>,
) -> Result<()> {
    r.check(homs.len() == targets.len(), || {
        format!("{what}: {} lenses but {} functions", homs.len(), targets.len())
    });
    let mut images = HashSet::new();
    for f in homs {
        let t = forward(f)?;
        r.check(backward(&t)? == *f, || format!("{what}: round trip from the lens side fails"));
        images.insert(t);
    }
    r.check(images.len() == homs.len(), || format!("{what}: forward map is not injective"));
    let lens_keys: HashSet<_> = homs.iter().map(lens_key).collect();
    for t in targets {
        let f = backward(t)?;
        r.check(lens_keys.contains(&lens_key(&f)), || format!("{what}: {t:?} maps outside the hom-set"));
        r.check(forward(&f)? == *t, || format!("{what}: round trip from the set side fails at {t:?}"));
    }
    Ok(())
}

/// Verifies `Ay ⊣ p(1) ⊣ A ⊣ p(0)`, `Γ ⊣ y^(-)`, and the two-variable
/// bijections `Poly(p·A, q) ≅ Poly(p, q^A) ≅ Set(A, Poly(p, q))`.
pub fn adjunction_suite(a: &FinSet, p: &FinPoly, q: &FinPoly) -> Result<Report> {
    let mut r = Report::new("adjunctions");
    let na = a.len();
    let p_arc = Arc::new(p.clone());

    // Ay ⊣ p(1): Poly(Ay, p) ≅ Set(A, p(1))
    let ay = Arc::new(FinPoly::linear(a));
    let homs = hom_enumerate(&ay, p, DEFAULT_CAP)?;
    let targets: Vec<Vec<usize>> = functions(na, p.num_positions()).collect();
    check_bijection(
        &mut r,
        "Ay ⊣ p(1)",
        &homs,
        &targets,
        |f| Ok(f.on_pos_table().to_vec()),
        |g| {
            let on_dir = g.iter().map(|&j| vec![0; p.dir_count(j)]).collect();
            Lens::new(ay.clone(), p_arc.clone(), g.clone(), on_dir)
        },
    )?;

    // p(1) ⊣ A: Poly(p, A) ≅ Set(p(1), A)
    let ca = Arc::new(FinPoly::constant(a));
    let homs = hom_enumerate(p, &ca, DEFAULT_CAP)?;
    let targets: Vec<Vec<usize>> = functions(p.num_positions(), na).collect();
    check_bijection(
        &mut r,
        "p(1) ⊣ A",
        &homs,
        &targets,
        |f| Ok(f.on_pos_table().to_vec()),
        |g| Lens::new(p_arc.clone(), ca.clone(), g.clone(), vec![Vec::new(); g.len()]),
    )?;

    // A ⊣ p(0): Poly(A, p) ≅ Set(A, p(0))
    let zeros = positions_without_directions(p);
    let homs = hom_enumerate(&ca, p, DEFAULT_CAP)?;
    let targets: Vec<Vec<usize>> = functions(na, zeros.len()).collect();
    check_bijection(
        &mut r,
        "A ⊣ p(0)",
        &homs,
        &targets,
        |f| {
            Ok(f.on_pos_table()
                .iter()
                .map(|j| zeros.iter().position(|z| z == j).expect("lands in p(0)"))
                .collect())
        },
        |g| {
            let on_pos = g.iter().map(|&k| zeros[k]).collect();
            Lens::new(ca.clone(), p_arc.clone(), on_pos, vec![Vec::new(); g.len()])
        },
    )?;

    // Γ ⊣ y^(-): Poly(p, y^A) ≅ Set(A, Γp)
    let gamma = global_sections(p);
    let ya = Arc::new(FinPoly::representable(a));
    let homs = hom_enumerate(p, &ya, DEFAULT_CAP)?;
    let targets: Vec<Vec<usize>> = functions(na, gamma.len()).collect();
    let exps = p.exponents();
    let rank = |choice: &[usize]| crate::odometer::rank_mixed(choice, &exps);
    let unrank = |k: usize| crate::odometer::unrank_mixed(k, &exps);
    check_bijection(
        &mut r,
        "Γ ⊣ y^(-)",
        &homs,
        &targets,
        |f| {
            Ok((0..na)
                .map(|x| {
                    let choice: Vec<usize> = (0..p.num_positions()).map(|i| f.on_dir(i, x)).collect();
                    rank(&choice)
                })
                .collect())
        },
        |g| {
            let sections: Vec<Vec<usize>> = g.iter().map(|&k| unrank(k)).collect();
            let on_dir = (0..p.num_positions())
                .map(|i| sections.iter().map(|s| s[i]).collect())
                .collect();
            Lens::new(p_arc.clone(), ya.clone(), vec![0; p.num_positions()], on_dir)
        },
    )?;
    r.check(
        hom_count(p, &FinPoly::y()) == num_bigint::BigUint::from(gamma.len()),
        || "Γp does not count Poly(p, y)".into(),
    );

    // Poly(p·A, q) ≅ Poly(p, q^A) ≅ Set(A, Poly(p, q))
    let pa = Arc::new(product(p, &ca));
    let qa = cartesian_closure(q, &ca);
    let left = hom_enumerate(&pa, q, DEFAULT_CAP)?;
    let middle = hom_enumerate(p, &qa, DEFAULT_CAP)?;
    r.check(left.len() == middle.len(), || {
        format!("|Poly(pA, q)| = {} but |Poly(p, q^A)| = {}", left.len(), middle.len())
    });
    check_bijection(
        &mut r,
        "Poly(pA, q) ≅ Poly(p, q^A)",
        &left,
        &middle.iter().map(lens_key).collect::<Vec<_>>(),
        |f| Ok(lens_key(&curry_cartesian(f, p, &ca)?)),
        |(on_pos, on_dir)| {
            let g = Lens::new(p_arc.clone(), Arc::new(qa.clone()), on_pos.clone(), on_dir.clone())?;
            uncurry_cartesian(&g, &ca, q)
        },
    )?;
    let pq = hom_enumerate(p, q, DEFAULT_CAP)?;
    let families: Vec<Vec<usize>> = functions(na, pq.len()).collect();
    let index_of: std::collections::HashMap<_, _> =
        pq.iter().enumerate().map(|(k, f)| (lens_key(f), k)).collect();
    // the inclusion of p as the a-th copy inside p × A
    let inclusion = |x: usize| {
        Lens::new(
            p_arc.clone(),
            pa.clone(),
            (0..p.num_positions()).map(|i| i * na + x).collect(),
            (0..p.num_positions()).map(|i| (0..p.dir_count(i)).collect()).collect(),
        )
    };
    check_bijection(
        &mut r,
        "Poly(pA, q) ≅ Set(A, Poly(p, q))",
        &left,
        &families,
        |f| {
            (0..na)
                .map(|x| Ok(index_of[&lens_key(&inclusion(x)?.then(f)?)]))
                .collect()
        },
        |family| {
            let mut on_pos = vec![0; pa.num_positions()];
            let mut on_dir = vec![Vec::new(); pa.num_positions()];
            for i in 0..p.num_positions() {
                for (x, &k) in family.iter().enumerate() {
                    on_pos[i * na + x] = pq[k].on_pos(i);
                    on_dir[i * na + x] = pq[k].on_dir_table()[i].clone();
                }
            }
            Lens::new(pa.clone(), Arc::new(q.clone()), on_pos, on_dir)
        },
    )?;
    Ok(r)
}
