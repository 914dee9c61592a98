//! The two orthogonal factorization systems on lenses.

use std::sync::Arc;

use crate::lens::Lens;
use crate::poly::{FinPoly, Position};
use crate::set::{quotient_by, FinSet, UnionFind};

/// `f = vertical ; cartesian`.
///
/// The middle object keeps the positions of `dom(f)` and takes its
/// directions from `cod(f)`: at `i` they are `cod(f)_{f(i)}`.
pub fn factor_vert_cart(f: &Lens) -> (Lens, Lens) {
    let (p, q) = (f.dom(), f.cod());
    let middle = Arc::new(FinPoly::from_distinct(
        (0..p.num_positions())
            .map(|i| Position {
                label: p.position_label(i).to_string(),
                dirs: q.dirs(f.on_pos(i)).clone(),
            })
            .collect(),
    ));
    let vertical = Lens::new_unchecked(
        f.dom_arc().clone(),
        middle.clone(),
        (0..p.num_positions()).collect(),
        f.on_dir_table().to_vec(),
    );
    let cartesian = Lens::new_unchecked(
        middle,
        f.cod_arc().clone(),
        f.on_pos_table().to_vec(),
        (0..p.num_positions())
            .map(|i| (0..q.dir_count(f.on_pos(i))).collect())
            .collect(),
    );
    (vertical, cartesian)
}

/// `f = epi ; mono`.
///
/// The middle object has the image positions of `f`; its directions at `j`
/// are those of `cod(f)_j` modulo the joint kernel of the on-directions maps
/// over the fiber `f⁻¹(j)`, each class named by its earliest member. The
/// first factor is epi (surjective on positions, jointly injective over
/// fibers); the second is injective on positions and surjective on
/// directions, hence mono.
pub fn factor_epi_mono(f: &Lens) -> (Lens, Lens) {
    let (p, q) = (f.dom(), f.cod());
    let mut fibers: Vec<Vec<usize>> = vec![Vec::new(); q.num_positions()];
    for i in 0..p.num_positions() {
        fibers[f.on_pos(i)].push(i);
    }
    let image: Vec<usize> = (0..q.num_positions())
        .filter(|&j| !fibers[j].is_empty())
        .collect();
    let mut image_index = vec![usize::MAX; q.num_positions()];
    let mut positions = Vec::with_capacity(image.len());
    // class[j][e] = index of e's class among the classes at j
    let mut class_of: Vec<Vec<usize>> = vec![Vec::new(); q.num_positions()];
    let mut reps: Vec<Vec<usize>> = Vec::with_capacity(image.len());
    for (k, &j) in image.iter().enumerate() {
        image_index[j] = k;
        let n = q.dir_count(j);
        let mut uf = UnionFind::new(n);
        for e1 in 0..n {
            for e2 in e1 + 1..n {
                if fibers[j].iter().all(|&i| f.on_dir(i, e1) == f.on_dir(i, e2)) {
                    uf.union(e1, e2);
                }
            }
        }
        let (labels, classes) = quotient_by(q.dirs(j), &mut uf);
        let mut rep = vec![usize::MAX; labels.len()];
        for (e, &c) in classes.iter().enumerate() {
            if rep[c] == usize::MAX {
                rep[c] = e;
            }
        }
        class_of[j] = classes;
        reps.push(rep);
        positions.push(Position {
            label: q.position_label(j).to_string(),
            dirs: FinSet::from_distinct(labels),
        });
    }
    let middle = Arc::new(FinPoly::from_distinct(positions));
    let epi = Lens::new_unchecked(
        f.dom_arc().clone(),
        middle.clone(),
        (0..p.num_positions())
            .map(|i| image_index[f.on_pos(i)])
            .collect(),
        (0..p.num_positions())
            .map(|i| {
                let j = f.on_pos(i);
                reps[image_index[j]].iter().map(|&e| f.on_dir(i, e)).collect()
            })
            .collect(),
    );
    let mono = Lens::new_unchecked(
        middle,
        f.cod_arc().clone(),
        image.clone(),
        image.iter().map(|&j| class_of[j].clone()).collect(),
    );
    (epi, mono)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hom::{hom_iter, is_mono_by_cancellation, mono_test_objects};
    use crate::lens::lens_id;

    #[test]
    fn identity_factors_trivially() {
        let p = FinPoly::from_exponents(&[2, 0, 1]);
        let id = lens_id(&p);
        let (v, c) = factor_vert_cart(&id);
        assert_eq!(v, id);
        assert_eq!(c, id);
        let (e, m) = factor_epi_mono(&id);
        assert_eq!(e, id);
        assert_eq!(m, id);
    }

    #[test]
    fn square_to_y() {
        let y2 = FinPoly::from_exponents(&[2]);
        let f = Lens::new(y2, FinPoly::y(), vec![0], vec![vec![0]]).unwrap();
        let (v, c) = factor_vert_cart(&f);
        assert_eq!(v.cod().exponents(), vec![1]);
        assert!(v.is_vertical() && c.is_cartesian());
        assert_eq!(v.then(&c).unwrap(), f);
    }

    #[test]
    fn factors_satisfy_predicates() {
        let objs = [
            FinPoly::from_exponents(&[]),
            FinPoly::from_exponents(&[0]),
            FinPoly::from_exponents(&[2]),
            FinPoly::from_exponents(&[1, 0]),
            FinPoly::from_exponents(&[2, 1]),
        ];
        let tests = mono_test_objects();
        for p in &objs {
            for q in &objs {
                for f in hom_iter(p, q) {
                    let (v, c) = factor_vert_cart(&f);
                    assert!(v.is_vertical() && c.is_cartesian());
                    assert_eq!(v.then(&c).unwrap(), f);
                    let (e, m) = factor_epi_mono(&f);
                    assert!(e.is_epi());
                    assert!(is_mono_by_cancellation(&m, &tests).unwrap());
                    assert_eq!(e.then(&m).unwrap(), f);
                }
            }
        }
    }
}
