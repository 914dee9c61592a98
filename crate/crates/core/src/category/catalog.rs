//! Mechanical enumeration of small categories up to isomorphism.
//!
//! For each number of objects and each distribution of non-identity
//! morphisms over hom-sets (taken up to permutation of objects), every
//! composition table is generated by backtracking with associativity
//! pruning. A table is kept only if it is the least among its relabelings,
//! which leaves one representative per isomorphism class.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::odometer::Odometer;
use crate::set::FinSet;

use super::fincat::{FinCat, Morphism};

/// All categories with at most `max_objects` objects and at most
/// `max_morphisms` morphisms in total (identities included), one per
/// isomorphism class.
pub fn catalog(max_objects: usize, max_morphisms: usize) -> Vec<FinCat> {
    let mut shapes = Vec::new();
    for n in 0..=max_objects.min(max_morphisms) {
        for counts in distributions(n, max_morphisms - n) {
            shapes.push((n, counts));
        }
    }
    shapes
        .par_iter()
        .map(|(n, counts)| Generator::new(*n, counts).run())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

/// Categories with at most 3 objects and at most 2 non-identity morphisms.
pub fn small_catalog() -> Vec<FinCat> {
    let mut out = Vec::new();
    for n in 0..=3 {
        for counts in distributions(n, 2) {
            out.extend(Generator::new(n, &counts).run());
        }
    }
    out
}

/// Hom-set size matrices (non-identity morphisms) with total at most
/// `budget`, canonical under simultaneous permutation of rows and columns.
fn distributions(n: usize, budget: usize) -> Vec<Vec<Vec<usize>>> {
    let cells = n * n;
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for flat in Odometer::new(vec![budget + 1; cells]) {
        if flat.iter().sum::<usize>() > budget {
            continue;
        }
        let m: Vec<Vec<usize>> = (0..n).map(|x| flat[x * n..(x + 1) * n].to_vec()).collect();
        let canon = permutations(n)
            .into_iter()
            .map(|p| permute_matrix(&m, &p))
            .min()
            .unwrap_or_default();
        if seen.insert(canon.clone()) {
            out.push(canon);
        }
    }
    out
}

fn permute_matrix(m: &[Vec<usize>], p: &[usize]) -> Vec<Vec<usize>> {
    let n = m.len();
    let mut out = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            out[p[x]][p[y]] = m[x][y];
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out.sort();
    out
}

const UNSET: usize = usize::MAX;

struct Generator {
    n: usize,
    /// morphism endpoints; identities are `0..n`
    ends: Vec<(usize, usize)>,
    /// composable pairs of non-identity morphisms `(g, f)`, in table order
    pairs: Vec<(usize, usize)>,
    /// admissible values for each pair
    choices: Vec<Vec<usize>>,
    /// morphism relabelings preserving the shape
    relabelings: Vec<Vec<usize>>,
}

impl Generator {
    fn new(n: usize, counts: &[Vec<usize>]) -> Self {
        let mut ends: Vec<(usize, usize)> = (0..n).map(|o| (o, o)).collect();
        for x in 0..n {
            for y in 0..n {
                for _ in 0..counts[x][y] {
                    ends.push((x, y));
                }
            }
        }
        let m = ends.len();
        let mut pairs = Vec::new();
        let mut choices = Vec::new();
        for g in n..m {
            for f in n..m {
                if ends[f].1 == ends[g].0 {
                    pairs.push((g, f));
                    let (d, c) = (ends[f].0, ends[g].1);
                    choices.push((0..m).filter(|&h| ends[h] == (d, c)).collect());
                }
            }
        }
        let relabelings = relabelings(n, counts, &ends);
        Generator {
            n,
            ends,
            pairs,
            choices,
            relabelings,
        }
    }

    fn run(&self) -> Vec<FinCat> {
        if self.choices.iter().any(Vec::is_empty) {
            return Vec::new();
        }
        let m = self.ends.len();
        let mut table = vec![vec![UNSET; m]; m];
        for h in 0..m {
            let (d, c) = self.ends[h];
            table[c][h] = h;
            table[h][d] = h;
        }
        // fan the first few choices out over threads
        let mut prefixes = vec![table];
        let mut depth = 0;
        while depth < self.pairs.len() && prefixes.len() < 64 {
            let (g, f) = self.pairs[depth];
            prefixes = prefixes
                .into_iter()
                .flat_map(|t| {
                    self.choices[depth].iter().filter_map(move |&h| {
                        let mut t = t.clone();
                        t[g][f] = h;
                        self.associative_at(&t, g, f).then_some(t)
                    })
                })
                .collect();
            depth += 1;
        }
        prefixes
            .into_par_iter()
            .map(|mut t| {
                let mut out = Vec::new();
                self.extend(depth, &mut t, &mut out);
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }

    fn extend(&self, k: usize, table: &mut Vec<Vec<usize>>, out: &mut Vec<FinCat>) {
        if k == self.pairs.len() {
            if self.is_least(table) {
                out.push(self.build(table));
            }
            return;
        }
        let (g, f) = self.pairs[k];
        for &h in &self.choices[k] {
            table[g][f] = h;
            if self.associative_at(table, g, f) && self.could_be_least(table) {
                self.extend(k + 1, table, out);
            }
        }
        table[g][f] = UNSET;
    }

    /// `(a ∘ b) ∘ c = a ∘ (b ∘ c)` whenever every entry involved is known.
    fn triple_ok(&self, t: &[Vec<usize>], a: usize, b: usize, c: usize) -> bool {
        let (bc, ab) = (t[b][c], t[a][b]);
        if bc == UNSET || ab == UNSET {
            return true;
        }
        let (l, r) = (t[a][bc], t[ab][c]);
        l == UNSET || r == UNSET || l == r
    }

    /// Checks the triples whose evaluation reads the entry `(g, f)`.
    fn associative_at(&self, t: &[Vec<usize>], g: usize, f: usize) -> bool {
        let m = self.ends.len();
        let composable = |x: usize, y: usize| self.ends[y].1 == self.ends[x].0;
        for x in self.n..m {
            // (x, g, f) and (g, f, x)
            if composable(x, g) && !self.triple_ok(t, x, g, f) {
                return false;
            }
            if composable(f, x) && !self.triple_ok(t, g, f, x) {
                return false;
            }
        }
        // triples (g, b, c) with b∘c = f, and (a, b, f) with a∘b = g
        for b in self.n..m {
            for c in self.n..m {
                if composable(b, c) && t[b][c] == f && composable(g, b) && !self.triple_ok(t, g, b, c) {
                    return false;
                }
                if composable(b, c) && t[b][c] == g && composable(c, f) && !self.triple_ok(t, b, c, f) {
                    return false;
                }
            }
        }
        true
    }

    /// False if some relabeling is already known to be smaller, comparing
    /// in pair order up to the first entry that is not yet determined.
    fn could_be_least(&self, t: &[Vec<usize>]) -> bool {
        let mut inverse = vec![0; self.ends.len()];
        self.relabelings.iter().all(|sigma| {
            for (a, &b) in sigma.iter().enumerate() {
                inverse[b] = a;
            }
            for &(g, f) in &self.pairs {
                let src = t[inverse[g]][inverse[f]];
                let mine = t[g][f];
                if src == UNSET || mine == UNSET {
                    return true;
                }
                let relabeled = sigma[src];
                if relabeled != mine {
                    return relabeled > mine;
                }
            }
            true
        })
    }

    fn is_least(&self, t: &[Vec<usize>]) -> bool {
        let mut inverse = vec![0; self.ends.len()];
        self.relabelings.iter().all(|sigma| {
            for (a, &b) in sigma.iter().enumerate() {
                inverse[b] = a;
            }
            // compare the relabeled table with t, entry by entry in pair order
            for &(g, f) in &self.pairs {
                let relabeled = sigma[t[inverse[g]][inverse[f]]];
                let mine = t[g][f];
                if relabeled != mine {
                    return relabeled > mine;
                }
            }
            true
        })
    }

    fn build(&self, t: &[Vec<usize>]) -> FinCat {
        let objects = FinSet::ordinal(self.n);
        let morphisms = self
            .ends
            .iter()
            .enumerate()
            .map(|(k, &(d, c))| Morphism {
                label: if k < self.n {
                    format!("id{k}")
                } else {
                    format!("m{}", k - self.n)
                },
                dom: d,
                cod: c,
            })
            .collect();
        let m = self.ends.len();
        let mut comp = Vec::new();
        for g in 0..m {
            for f in 0..m {
                if t[g][f] != UNSET {
                    comp.push((g, f, t[g][f]));
                }
            }
        }
        FinCat::new(objects, morphisms, (0..self.n).collect(), &comp).expect("well-formed")
    }
}

/// Relabelings of morphisms induced by object permutations fixing the shape
/// together with permutations inside each hom-set.
fn relabelings(n: usize, counts: &[Vec<usize>], ends: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for p in permutations(n) {
        if permute_matrix(counts, &p) != counts {
            continue;
        }
        // blocks[x][y] = indices of non-identity morphisms x -> y
        let block = |x: usize, y: usize| -> Vec<usize> {
            (n..ends.len()).filter(|&k| ends[k] == (x, y)).collect()
        };
        let cells: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
        let block_perms: Vec<Vec<Vec<usize>>> = cells
            .iter()
            .map(|&(x, y)| permutations(block(x, y).len()))
            .collect();
        for pick in Odometer::new(block_perms.iter().map(Vec::len).collect()) {
            let mut sigma = vec![0; ends.len()];
            sigma[..n].copy_from_slice(&p[..n]);
            for (c, &(x, y)) in cells.iter().enumerate() {
                let src = block(x, y);
                let dst = block(p[x], p[y]);
                let perm = &block_perms[c][pick[c]];
                for (k, &s) in src.iter().enumerate() {
                    sigma[s] = dst[perm[k]];
                }
            }
            out.push(sigma);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::fincat::{check_category, find_isomorphism};

    #[test]
    fn monoid_counts_match_known_values() {
        // monoids of order 1..4 up to isomorphism: 1, 2, 7, 35
        let cats = catalog(1, 4);
        let mut by_size = [0usize; 5];
        for k in &cats {
            if k.num_objects() == 1 {
                by_size[k.num_morphisms()] += 1;
            }
        }
        assert_eq!(&by_size[1..], &[1, 2, 7, 35]);
    }

    #[test]
    fn catalog_members_are_valid_and_pairwise_distinct() {
        let cats = catalog(2, 4);
        for k in &cats {
            assert!(check_category(k).is_ok());
        }
        for (i, a) in cats.iter().enumerate() {
            for b in &cats[i + 1..] {
                assert!(find_isomorphism(a, b).is_none());
            }
        }
    }

    #[test]
    fn small_catalog_is_nonempty() {
        let cats = small_catalog();
        assert!(cats.len() > 10);
        assert!(cats.iter().all(|k| k.num_morphisms() <= k.num_objects() + 2));
    }
}
