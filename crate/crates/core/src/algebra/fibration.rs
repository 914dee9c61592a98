//! Base change along functions of position sets, and its two adjoints.
//!
//! Over a fixed position set `B`, vertical lenses `p -> q` are families of
//! functions `q_b -> p_b`. Pulling back along `f: A -> B` reindexes those
//! families; its left adjoint takes fiberwise products of direction sets and
//! its right adjoint fiberwise sums.

use std::sync::Arc;

use crate::error::{PolyError, Result};
use crate::label;
use crate::lens::Lens;
use crate::odometer::{self, Odometer};
use crate::poly::{FinPoly, Position};
use crate::set::{FinSet, SetFn};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pushforward {
    /// `f_!`: directions `Π_{a ∈ f⁻¹(b)} p_a`.
    Left,
    /// `f_*`: directions `Σ_{a ∈ f⁻¹(b)} p_a`.
    Right,
}

/// Index of each element of `set` among the positions of `p`, requiring the
/// two to agree as sets.
fn match_positions(set: &FinSet, p: &FinPoly, what: &str) -> Result<Vec<usize>> {
    if set.len() != p.num_positions() {
        return Err(PolyError::ShapeMismatch(format!(
            "{what}: position set has {} elements, expected {}",
            p.num_positions(),
            set.len()
        )));
    }
    set.elements()
        .iter()
        .map(|x| p.require_position(x))
        .collect()
}

/// `f^* q`: positions `A`, directions `q_{f(a)}`.
pub fn base_change(f: &SetFn, q: &FinPoly) -> Result<FinPoly> {
    let idx = match_positions(f.cod(), q, "base_change")?;
    Ok(FinPoly::from_distinct(
        (0..f.dom().len())
            .map(|a| Position {
                label: f.dom().get(a).to_string(),
                dirs: q.dirs(idx[f.apply_index(a)]).clone(),
            })
            .collect(),
    ))
}

fn fibers(f: &SetFn) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); f.cod().len()];
    for a in 0..f.dom().len() {
        out[f.apply_index(a)].push(a);
    }
    out
}

/// `f_! p` or `f_* p`, with positions `B`.
pub fn base_pushforward(f: &SetFn, p: &FinPoly, kind: Pushforward) -> Result<FinPoly> {
    let idx = match_positions(f.dom(), p, "base_pushforward")?;
    let positions = fibers(f)
        .into_iter()
        .enumerate()
        .map(|(b, fiber)| {
            let dirs = match kind {
                Pushforward::Left => {
                    let keys: Vec<&str> = fiber.iter().map(|&a| f.dom().get(a)).collect();
                    let radices: Vec<usize> =
                        fiber.iter().map(|&a| p.dir_count(idx[a])).collect();
                    Odometer::new(radices)
                        .map(|choice| {
                            let vals: Vec<&str> = choice
                                .iter()
                                .zip(&fiber)
                                .map(|(&d, &a)| p.dirs(idx[a]).get(d))
                                .collect();
                            label::function(&keys, &vals)
                        })
                        .collect()
                }
                Pushforward::Right => fiber
                    .iter()
                    .flat_map(|&a| {
                        let key = f.dom().get(a);
                        p.dirs(idx[a])
                            .elements()
                            .iter()
                            .map(move |d| label::pair(key, d))
                    })
                    .collect(),
            };
            Position {
                label: f.cod().get(b).to_string(),
                dirs: FinSet::from_distinct(dirs),
            }
        })
        .collect();
    Ok(FinPoly::from_distinct(positions))
}

/// Position of each label of `src` in `dst`.
fn align(src: &FinPoly, dst: &FinPoly) -> Result<Vec<usize>> {
    (0..src.num_positions())
        .map(|i| dst.require_position(src.position_label(i)))
        .collect()
}

/// Transpose of a vertical lens `f_! p -> q` to `p -> f^* q`.
pub fn transpose_left(f: &SetFn, p: &FinPoly, g: &Lens) -> Result<Lens> {
    let pushed = base_pushforward(f, p, Pushforward::Left)?;
    let q = g.cod();
    let pulled = base_change(f, q)?;
    let g_at = align(&pushed, g.dom())?;
    let p_idx = match_positions(f.dom(), p, "transpose_left")?;
    let fib = fibers(f);
    let mut on_pos = Vec::with_capacity(p.num_positions());
    let mut on_dir = vec![Vec::new(); p.num_positions()];
    let pulled_idx = align(p, &pulled)?;
    for i in 0..p.num_positions() {
        on_pos.push(pulled_idx[i]);
    }
    for (b, fiber) in fib.iter().enumerate() {
        let gb = g_at[b];
        let radices: Vec<usize> = fiber.iter().map(|&a| p.dir_count(p_idx[a])).collect();
        for (slot, &a) in fiber.iter().enumerate() {
            let i = p_idx[a];
            on_dir[i] = (0..g.cod().dir_count(g.on_pos(gb)))
                .map(|e| odometer::unrank_mixed(g.on_dir(gb, e), &radices)[slot])
                .collect();
        }
    }
    Lens::new(Arc::new(p.clone()), Arc::new(pulled), on_pos, on_dir)
}

/// Inverse of [`transpose_left`].
pub fn untranspose_left(f: &SetFn, h: &Lens, q: &FinPoly) -> Result<Lens> {
    let p = h.dom();
    let pushed = base_pushforward(f, p, Pushforward::Left)?;
    let p_idx = match_positions(f.dom(), p, "untranspose_left")?;
    let q_idx = match_positions(f.cod(), q, "untranspose_left")?;
    let fib = fibers(f);
    let mut on_pos = Vec::with_capacity(pushed.num_positions());
    let mut on_dir = Vec::with_capacity(pushed.num_positions());
    for (b, fiber) in fib.iter().enumerate() {
        on_pos.push(q_idx[b]);
        let radices: Vec<usize> = fiber.iter().map(|&a| p.dir_count(p_idx[a])).collect();
        on_dir.push(
            (0..q.dir_count(q_idx[b]))
                .map(|e| {
                    let digits: Vec<usize> =
                        fiber.iter().map(|&a| h.on_dir(p_idx[a], e)).collect();
                    odometer::rank_mixed(&digits, &radices)
                })
                .collect(),
        );
    }
    Lens::new(Arc::new(pushed), Arc::new(q.clone()), on_pos, on_dir)
}

/// Transpose of a vertical lens `f^* q -> p` to `q -> f_* p`.
pub fn transpose_right(f: &SetFn, g: &Lens, q: &FinPoly) -> Result<Lens> {
    let p = g.cod();
    let pushed = base_pushforward(f, p, Pushforward::Right)?;
    let pulled = base_change(f, q)?;
    let g_at = align(&pulled, g.dom())?;
    let p_idx = match_positions(f.dom(), p, "transpose_right")?;
    let q_idx = match_positions(f.cod(), q, "transpose_right")?;
    let fib = fibers(f);
    let mut on_pos = vec![0; q.num_positions()];
    let mut on_dir = vec![Vec::new(); q.num_positions()];
    for (b, fiber) in fib.iter().enumerate() {
        let j = q_idx[b];
        on_pos[j] = b;
        let mut back = Vec::new();
        for &a in fiber {
            let ga = g_at[a];
            debug_assert_eq!(g.on_pos(ga), p_idx[a]);
            back.extend_from_slice(&g.on_dir_table()[ga]);
        }
        on_dir[j] = back;
    }
    Lens::new(Arc::new(q.clone()), Arc::new(pushed), on_pos, on_dir)
}

/// Inverse of [`transpose_right`].
pub fn untranspose_right(f: &SetFn, h: &Lens, p: &FinPoly) -> Result<Lens> {
    let q = h.dom();
    let pulled = base_change(f, q)?;
    let p_idx = match_positions(f.dom(), p, "untranspose_right")?;
    let q_idx = match_positions(f.cod(), q, "untranspose_right")?;
    let fib = fibers(f);
    let mut on_pos = vec![0; pulled.num_positions()];
    let mut on_dir = vec![Vec::new(); pulled.num_positions()];
    for (b, fiber) in fib.iter().enumerate() {
        let row = &h.on_dir_table()[q_idx[b]];
        let mut offset = 0;
        for &a in fiber {
            let n = p.dir_count(p_idx[a]);
            on_pos[a] = p_idx[a];
            on_dir[a] = row[offset..offset + n].to_vec();
            offset += n;
        }
    }
    Lens::new(Arc::new(pulled), Arc::new(p.clone()), on_pos, on_dir)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hom::{vertical_hom_count, vertical_homs};

    fn over(labels: &[&str], exps: &[usize]) -> FinPoly {
        FinPoly::new(
            labels
                .iter()
                .zip(exps)
                .map(|(l, &n)| (l.to_string(), FinSet::ordinal(n)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_base_change() {
        let a = FinSet::of(&["x", "y"]);
        let id = SetFn::identity(&a);
        let p = over(&["x", "y"], &[2, 0]);
        assert!(base_change(&id, &p).unwrap().is_iso(&p));
        for kind in [Pushforward::Left, Pushforward::Right] {
            assert!(base_pushforward(&id, &p, kind).unwrap().is_iso(&p));
        }
    }

    #[test]
    fn left_pushforward_multiplies_fibers() {
        let f = SetFn::new(FinSet::of(&["1", "2"]), FinSet::of(&["*"]), vec![0, 0]).unwrap();
        let p = over(&["1", "2"], &[2, 3]);
        let pushed = base_pushforward(&f, &p, Pushforward::Left).unwrap();
        assert_eq!(pushed.exponents(), vec![6]);
        let pushed = base_pushforward(&f, &p, Pushforward::Right).unwrap();
        assert_eq!(pushed.exponents(), vec![5]);
    }

    #[test]
    fn adjunction_bijections_exhaustive() {
        let a = FinSet::of(&["a0", "a1", "a2"]);
        let b = FinSet::of(&["b0", "b1"]);
        let maps = [vec![0, 0, 1], vec![1, 1, 1], vec![0, 1, 0]];
        for table in maps {
            let f = SetFn::new(a.clone(), b.clone(), table).unwrap();
            for pe in Odometer::new(vec![3, 3, 3]) {
                let p = over(&["a0", "a1", "a2"], &pe);
                for qe in Odometer::new(vec![3, 3]) {
                    let q = over(&["b0", "b1"], &qe);
                    let shriek = base_pushforward(&f, &p, Pushforward::Left).unwrap();
                    let star = base_pushforward(&f, &p, Pushforward::Right).unwrap();
                    let pulled = base_change(&f, &q).unwrap();
                    assert_eq!(
                        vertical_hom_count(&shriek, &q).unwrap(),
                        vertical_hom_count(&p, &pulled).unwrap()
                    );
                    assert_eq!(
                        vertical_hom_count(&pulled, &p).unwrap(),
                        vertical_hom_count(&q, &star).unwrap()
                    );
                    for g in vertical_homs(&shriek, &q).unwrap() {
                        let h = transpose_left(&f, &p, &g).unwrap();
                        assert!(h.is_vertical());
                        assert_eq!(untranspose_left(&f, &h, &q).unwrap(), g);
                    }
                    for g in vertical_homs(&pulled, &p).unwrap() {
                        let h = transpose_right(&f, &g, &q).unwrap();
                        assert!(h.is_vertical());
                        assert_eq!(untranspose_right(&f, &h, &p).unwrap(), g);
                    }
                }
            }
        }
    }
}
