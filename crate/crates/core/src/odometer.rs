//! Mixed-radix counting, the enumeration order used throughout the crate.

/// Iterates over all tuples `t` with `t[k] < radices[k]`, in lexicographic
/// order (the first coordinate is the most significant).
///
/// A radix of zero yields no tuples; an empty radix list yields exactly one
/// (empty) tuple.
#[derive(Debug, Clone)]
pub struct Odometer {
    radices: Vec<usize>,
    current: Vec<usize>,
    done: bool,
}

impl Odometer {
    pub fn new(radices: Vec<usize>) -> Self {
        let done = radices.contains(&0);
        let current = vec![0; radices.len()];
        Odometer {
            radices,
            current,
            done,
        }
    }

    /// All functions from an `n`-element set to an `m`-element set, as
    /// value tables.
    pub fn functions(n: usize, m: usize) -> Self {
        Odometer::new(vec![m; n])
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.current.clone();
        let mut k = self.radices.len();
        loop {
            if k == 0 {
                self.done = true;
                break;
            }
            k -= 1;
            self.current[k] += 1;
            if self.current[k] < self.radices[k] {
                break;
            }
            self.current[k] = 0;
        }
        Some(out)
    }
}

/// Rank of `digits` in the order produced by [`Odometer`] with uniform radix.
pub fn rank_uniform(digits: &[usize], radix: usize) -> usize {
    digits.iter().fold(0, |acc, &d| acc * radix + d)
}

/// Inverse of [`rank_uniform`] for tuples of length `len`.
pub fn unrank_uniform(mut rank: usize, radix: usize, len: usize) -> Vec<usize> {
    let mut out = vec![0; len];
    for k in (0..len).rev() {
        out[k] = rank % radix;
        rank /= radix;
    }
    out
}

/// Rank of `digits` in the order produced by [`Odometer`] with `radices`.
pub fn rank_mixed(digits: &[usize], radices: &[usize]) -> usize {
    digits
        .iter()
        .zip(radices)
        .fold(0, |acc, (&d, &r)| acc * r + d)
}

pub fn unrank_mixed(mut rank: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for k in (0..radices.len()).rev() {
        out[k] = rank % radices[k];
        rank /= radices[k];
    }
    out
}

/// `base^exp`, or `None` on overflow.
pub fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}
