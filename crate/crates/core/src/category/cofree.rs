//! Finite stages of the cofree comonoid and depth-`n` behaviors.

use std::sync::Arc;

use crate::algebra::{compose_lens, compose_power, product, product_lens, terminal_lens, try_compose, ComposeLayout};
use crate::error::{PolyError, Result};
use crate::lens::Lens;
use crate::poly::FinPoly;
use crate::set::SetFn;

use super::comonoid::Comonoid;

/// The chain `c_0 = 1 <- c_1 <- … <- c_n` with `c_{k+1} = y · p(c_k)`.
/// `projections[k]` is the lens `c_{k+1} -> c_k`.
#[derive(Debug, Clone)]
pub struct CofreeTruncation {
    pub stages: Vec<FinPoly>,
    pub projections: Vec<Lens>,
}

impl CofreeTruncation {
    pub fn position_counts(&self) -> Vec<usize> {
        self.stages.iter().map(FinPoly::num_positions).collect()
    }
}

/// Builds the stages up to depth `n`, refusing any stage whose position
/// count would exceed `cap`.
pub fn cofree_truncation(p: &FinPoly, n: usize, cap: usize) -> Result<CofreeTruncation> {
    let y = Arc::new(FinPoly::y());
    let id_y = Lens::identity(y.clone());
    let id_p = Lens::identity(p.clone());
    let mut stages = vec![FinPoly::one()];
    let mut projections: Vec<Lens> = Vec::with_capacity(n);
    for k in 0..n {
        let next = product(&y, &try_compose(p, &stages[k], cap)?);
        let proj = if k == 0 {
            terminal_lens(&next)
        } else {
            product_lens(&id_y, &compose_lens(&id_p, &projections[k - 1]))
        };
        debug_assert_eq!(*proj.dom(), next);
        stages.push(next);
        projections.push(proj);
    }
    Ok(CofreeTruncation { stages, projections })
}

/// The on-positions part of `C -> C^{∘n} -> p^{∘n}`: the depth-`n`
/// behavior of each state, as a position of `compose_power(p, n)`.
pub fn nstep_behavior(c: &Comonoid, f: &Lens, n: usize, cap: usize) -> Result<SetFn> {
    if *f.dom() != *c.carrier() {
        return Err(PolyError::ShapeMismatch("dynamics must start at the comonoid carrier".into()));
    }
    let p = f.cod();
    let states = c.carrier().num_positions();
    let mut powers = vec![FinPoly::y(), p.clone()];
    let mut behavior: Vec<usize> = vec![0; states];
    if n >= 1 {
        behavior = f.on_pos_table().to_vec();
    }
    for k in 2..=n {
        let next_power = try_compose(p, &powers[k - 1], cap)?;
        let layout = ComposeLayout::new(p, &powers[k - 1])?;
        behavior = (0..states)
            .map(|s| {
                let i = f.on_pos(s);
                let phi: Vec<usize> = (0..p.dir_count(i))
                    .map(|d| behavior[c.target(s, f.on_dir(s, d))])
                    .collect();
                layout.position(i, &phi)
            })
            .collect();
        powers.push(next_power);
    }
    let target = if n < powers.len() {
        powers.swap_remove(n)
    } else {
        compose_power(p, n, cap)?
    };
    SetFn::new(c.carrier().position_set(), target.position_set(), behavior)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stage_counts() {
        let two_y = FinPoly::from_exponents(&[1, 1]);
        let t = cofree_truncation(&two_y, 4, 1 << 20).unwrap();
        assert_eq!(t.position_counts(), vec![1, 2, 4, 8, 16]);
        let y_plus_1 = FinPoly::from_exponents(&[1, 0]);
        let t = cofree_truncation(&y_plus_1, 4, 1 << 20).unwrap();
        assert_eq!(t.position_counts(), vec![1, 2, 3, 4, 5]);
        let y2 = FinPoly::from_exponents(&[2]);
        let t = cofree_truncation(&y2, 4, 1 << 20).unwrap();
        assert_eq!(t.position_counts(), vec![1; 5]);
    }

    #[test]
    fn projections_chain() {
        let p = FinPoly::from_exponents(&[2, 0]);
        let t = cofree_truncation(&p, 3, 1 << 20).unwrap();
        for (k, proj) in t.projections.iter().enumerate() {
            assert_eq!(*proj.dom(), t.stages[k + 1]);
            assert_eq!(*proj.cod(), t.stages[k]);
            assert!(proj.on_pos_fn().is_surjective());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let p = FinPoly::from_exponents(&[2, 2]);
        assert!(matches!(
            cofree_truncation(&p, 6, 1000),
            Err(PolyError::TooLarge { .. })
        ));
    }
}
