//! Hom-sets: closed-form counts, deterministic enumeration, and the
//! cancellation oracles built on enumeration.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{PolyError, Result};
use crate::lens::Lens;
use crate::odometer::Odometer;
use crate::poly::FinPoly;

/// `|hom(p, q)| = Π_i Σ_j |p_i|^{|q_j|}`.
pub fn hom_count(p: &FinPoly, q: &FinPoly) -> BigUint {
    let mut total = BigUint::one();
    for i in 0..p.num_positions() {
        let base = BigUint::from(p.dir_count(i));
        let mut sum = BigUint::zero();
        for j in 0..q.num_positions() {
            sum += num_traits::pow(base.clone(), q.dir_count(j));
        }
        total *= sum;
        if total.is_zero() {
            break;
        }
    }
    total
}

/// The per-position factors `Σ_j |p_i|^{|q_j|}` of [`hom_count`].
pub fn hom_count_factors(p: &FinPoly, q: &FinPoly) -> Vec<BigUint> {
    (0..p.num_positions())
        .map(|i| {
            let base = BigUint::from(p.dir_count(i));
            (0..q.num_positions())
                .map(|j| num_traits::pow(base.clone(), q.dir_count(j)))
                .sum()
        })
        .collect()
}

/// One choice at a domain position: a codomain position and an
/// on-directions table.
type Choice = (usize, Vec<usize>);

/// Iterator over `hom(p, q)`.
///
/// Lenses are listed lexicographically with the first domain position most
/// significant. At each position the choices run through codomain positions
/// `j` in order and, for each `j`, through the tables `q_j -> p_i` with the
/// first codomain direction most significant.
pub struct HomIter {
    dom: Arc<FinPoly>,
    cod: Arc<FinPoly>,
    choices: Vec<Vec<Choice>>,
    odometer: Odometer,
}

impl HomIter {
    pub fn new(p: &FinPoly, q: &FinPoly) -> Self {
        Self::from_arcs(Arc::new(p.clone()), Arc::new(q.clone()))
    }

    pub fn from_arcs(dom: Arc<FinPoly>, cod: Arc<FinPoly>) -> Self {
        let choices: Vec<Vec<Choice>> = (0..dom.num_positions())
            .map(|i| {
                (0..cod.num_positions())
                    .flat_map(|j| {
                        Odometer::functions(cod.dir_count(j), dom.dir_count(i))
                            .map(move |table| (j, table))
                    })
                    .collect()
            })
            .collect();
        let odometer = Odometer::new(choices.iter().map(Vec::len).collect());
        HomIter {
            dom,
            cod,
            choices,
            odometer,
        }
    }
}

impl Iterator for HomIter {
    type Item = Lens;

    fn next(&mut self) -> Option<Lens> {
        let pick = self.odometer.next()?;
        let mut on_pos = Vec::with_capacity(pick.len());
        let mut on_dir = Vec::with_capacity(pick.len());
        for (i, &c) in pick.iter().enumerate() {
            let (j, table) = &self.choices[i][c];
            on_pos.push(*j);
            on_dir.push(table.clone());
        }
        Some(Lens::new_unchecked(
            self.dom.clone(),
            self.cod.clone(),
            on_pos,
            on_dir,
        ))
    }
}

pub fn hom_iter(p: &FinPoly, q: &FinPoly) -> HomIter {
    HomIter::new(p, q)
}

/// Every lens `p -> q`, refusing hom-sets larger than `cap`.
pub fn hom_enumerate(p: &FinPoly, q: &FinPoly, cap: usize) -> Result<Vec<Lens>> {
    let count = hom_count(p, q);
    match count.to_usize() {
        Some(n) if n <= cap => Ok(hom_iter(p, q).collect()),
        _ => Err(PolyError::TooLarge {
            what: format!("hom({}, {})", p.algebraic(), q.algebraic()),
            size: count.to_string(),
            cap,
        }),
    }
}

/// Default bound for enumerations inside oracles.
pub const DEFAULT_CAP: usize = 1 << 20;

/// Lenses `p -> q` whose on-positions map is the identity on labels. Both
/// polynomials must have the same position labels.
pub fn vertical_homs(p: &FinPoly, q: &FinPoly) -> Result<Vec<Lens>> {
    let mut pos = Vec::with_capacity(p.num_positions());
    for i in 0..p.num_positions() {
        pos.push(q.require_position(p.position_label(i))?);
    }
    if p.num_positions() != q.num_positions() {
        return Err(PolyError::ShapeMismatch(
            "vertical lenses need equal position sets".into(),
        ));
    }
    let dom = Arc::new(p.clone());
    let cod = Arc::new(q.clone());
    let tables: Vec<Vec<Vec<usize>>> = (0..p.num_positions())
        .map(|i| Odometer::functions(q.dir_count(pos[i]), p.dir_count(i)).collect())
        .collect();
    Ok(Odometer::new(tables.iter().map(Vec::len).collect())
        .map(|pick| {
            Lens::new_unchecked(
                dom.clone(),
                cod.clone(),
                pos.clone(),
                pick.iter()
                    .enumerate()
                    .map(|(i, &c)| tables[i][c].clone())
                    .collect(),
            )
        })
        .collect())
}

pub fn vertical_hom_count(p: &FinPoly, q: &FinPoly) -> Result<BigUint> {
    let mut total = BigUint::one();
    for i in 0..p.num_positions() {
        let j = q.require_position(p.position_label(i))?;
        total *= num_traits::pow(BigUint::from(p.dir_count(i)), q.dir_count(j));
    }
    Ok(total)
}

fn key(f: &Lens) -> (Vec<usize>, Vec<Vec<usize>>) {
    (f.on_pos_table().to_vec(), f.on_dir_table().to_vec())
}

/// Test objects for the right-cancellation oracle: `y`, `y + 1`, `2y`, `y + 2`.
pub fn epi_test_objects() -> Vec<FinPoly> {
    vec![
        FinPoly::from_exponents(&[1]),
        FinPoly::from_exponents(&[1, 0]),
        FinPoly::from_exponents(&[1, 1]),
        FinPoly::from_exponents(&[1, 0, 0]),
    ]
}

/// Test objects for the left-cancellation oracle: `1`, `y`, `y^2`, `y + 1`, `2y`.
pub fn mono_test_objects() -> Vec<FinPoly> {
    vec![
        FinPoly::from_exponents(&[0]),
        FinPoly::from_exponents(&[1]),
        FinPoly::from_exponents(&[2]),
        FinPoly::from_exponents(&[1, 0]),
        FinPoly::from_exponents(&[1, 1]),
    ]
}

/// `f` is right-cancellable against every lens out of `cod(f)` into the test
/// objects: `f;g = f;h` implies `g = h`.
pub fn is_epi_by_cancellation(f: &Lens, tests: &[FinPoly]) -> Result<bool> {
    for t in tests {
        let mut seen = HashSet::new();
        for g in hom_enumerate(f.cod(), t, DEFAULT_CAP)? {
            if !seen.insert(key(&f.then(&g)?)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `f` is left-cancellable against every lens from the test objects into
/// `dom(f)`: `g;f = h;f` implies `g = h`.
pub fn is_mono_by_cancellation(f: &Lens, tests: &[FinPoly]) -> Result<bool> {
    for t in tests {
        let mut seen = HashSet::new();
        for g in hom_enumerate(t, f.dom(), DEFAULT_CAP)? {
            if !seen.insert(key(&g.then(f)?)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The unique lens `p -> 1`.
pub fn terminal_lens(p: &FinPoly) -> Lens {
    Lens::new_unchecked(
        Arc::new(p.clone()),
        Arc::new(FinPoly::one()),
        vec![0; p.num_positions()],
        vec![Vec::new(); p.num_positions()],
    )
}

/// The unique lens `0 -> p`.
pub fn initial_lens(p: &FinPoly) -> Lens {
    Lens::new_unchecked(
        Arc::new(FinPoly::zero()),
        Arc::new(p.clone()),
        Vec::new(),
        Vec::new(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_hom_count() {
        let p = FinPoly::from_exponents(&[2, 1, 1, 1, 0, 0]);
        let q = FinPoly::from_exponents(&[5, 0]);
        let factors: Vec<u32> = hom_count_factors(&p, &q)
            .iter()
            .map(|f| f.to_u32().unwrap())
            .collect();
        assert_eq!(factors, vec![33, 2, 2, 2, 1, 1]);
        assert_eq!(hom_count(&p, &q), BigUint::from(264u32));
        assert_eq!(hom_iter(&p, &q).count(), 264);
    }

    #[test]
    fn yoneda_and_terminal() {
        for a in 0..4 {
            for b in 0..4 {
                let n = hom_count(&FinPoly::from_exponents(&[a]), &FinPoly::from_exponents(&[b]));
                assert_eq!(n, BigUint::from(a).pow(b as u32));
            }
        }
        let p = FinPoly::from_exponents(&[3, 0, 1]);
        assert_eq!(hom_count(&p, &FinPoly::one()), BigUint::one());
    }

    #[test]
    fn enumeration_order_is_position_major() {
        let p = FinPoly::from_exponents(&[1, 1]);
        let q = FinPoly::from_exponents(&[0, 1]);
        let tables: Vec<Vec<usize>> = hom_iter(&p, &q).map(|f| f.on_pos_table().to_vec()).collect();
        assert_eq!(tables, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn enumeration_respects_cap() {
        let p = FinPoly::from_exponents(&[3, 3]);
        let q = FinPoly::from_exponents(&[3]);
        assert!(hom_enumerate(&p, &q, 10).is_err());
        assert_eq!(hom_enumerate(&p, &q, 1000).unwrap().len(), 729);
    }

    #[test]
    fn initial_lens_is_epi_only_onto_zero() {
        let tests = epi_test_objects();
        for p in [FinPoly::zero(), FinPoly::one(), FinPoly::y(), FinPoly::from_exponents(&[0, 2])] {
            let f = initial_lens(&p);
            assert_eq!(is_epi_by_cancellation(&f, &tests).unwrap(), p.num_positions() == 0);
            assert_eq!(f.is_epi(), p.num_positions() == 0);
        }
    }
}
