//! Seeded train/validation/test partitioning.
//!
//! The shuffle is a Fisher–Yates pass driven by ChaCha8 seeded through
//! `SeedableRng::seed_from_u64`: for `i` from `n - 1` down to `1`, draw
//! `r = next_u64()` and swap positions `i` and `r % (i + 1)`. Any
//! implementation reproducing this stream reproduces the splits.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const RATIO_TOLERANCE: f64 = 1e-9;

/// Deterministic permutation of `0..n` for `seed`.
pub fn shuffled_indices(n: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }
    order
}

/// Checks the ratio list: two or three entries in `(0, 1]` summing to 1.
pub fn validate_ratios(ratios: &[f64]) -> Result<()> {
    if !(2..=3).contains(&ratios.len()) {
        return Err(Error::Config(format!(
            "expected 2 or 3 split ratios, got {}",
            ratios.len()
        )));
    }
    if let Some(r) = ratios.iter().find(|r| !(**r > 0.0 && **r <= 1.0)) {
        return Err(Error::Config(format!("split ratio {r} outside (0, 1]")));
    }
    let sum: f64 = ratios.iter().sum();
    if (sum - 1.0).abs() > RATIO_TOLERANCE {
        return Err(Error::Config(format!(
            "split ratios sum to {sum}, expected 1"
        )));
    }
    Ok(())
}

/// Split sizes by largest remainder: floors first, leftover documents go to
/// the largest fractional parts, earlier splits winning ties.
pub fn split_sizes(n: usize, ratios: &[f64]) -> Vec<usize> {
    let exact: Vec<f64> = ratios.iter().map(|r| r * n as f64).collect();
    // absorb representation error such as 0.7 * 10 = 6.999999999999999
    let mut sizes: Vec<usize> = exact.iter().map(|x| (x + 1e-9).floor() as usize).collect();
    let assigned: usize = sizes.iter().sum();
    let mut order: Vec<usize> = (0..ratios.len()).collect();
    order.sort_by(|&a, &b| {
        let fa = exact[a] - sizes[a] as f64;
        let fb = exact[b] - sizes[b] as f64;
        fb.total_cmp(&fa).then(a.cmp(&b))
    });
    for &i in order.iter().take(n.saturating_sub(assigned)) {
        sizes[i] += 1;
    }
    sizes
}

/// Assigns each input position to a split: returns, per split, the input
/// indices in shuffled order.
pub fn assign_splits(n: usize, ratios: &[f64], seed: u64) -> Result<Vec<Vec<usize>>> {
    validate_ratios(ratios)?;
    if n < ratios.len() {
        return Err(Error::Config(format!(
            "cannot split {n} documents into {} parts",
            ratios.len()
        )));
    }
    let order = shuffled_indices(n, seed);
    let mut parts = Vec::with_capacity(ratios.len());
    let mut offset = 0;
    for size in split_sizes(n, ratios) {
        parts.push(order[offset..offset + size].to_vec());
        offset += size;
    }
    Ok(parts)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSplit<T> {
    pub train: Vec<T>,
    pub validation: Vec<T>,
    pub test: Option<Vec<T>>,
    pub seed: u64,
    pub ratios: Vec<f64>,
}

impl<T> CorpusSplit<T> {
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![self.train.len(), self.validation.len()];
        if let Some(test) = &self.test {
            sizes.push(test.len());
        }
        sizes
    }
}

/// Shuffles `docs` with `seed` and cuts the result by `ratios`.
pub fn split_corpus<T: Clone>(docs: &[T], ratios: &[f64], seed: u64) -> Result<CorpusSplit<T>> {
    let parts = assign_splits(docs.len(), ratios, seed)?;
    let mut parts = parts
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| docs[i].clone()).collect::<Vec<_>>());
    let train = parts.next().unwrap_or_default();
    let validation = parts.next().unwrap_or_default();
    let test = parts.next();
    Ok(CorpusSplit {
        train,
        validation,
        test,
        seed,
        ratios: ratios.to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ninety_ten() {
        let docs: Vec<u32> = (0..10).collect();
        let s = split_corpus(&docs, &[0.9, 0.1], 42).unwrap();
        assert_eq!(s.sizes(), [9, 1]);
        assert!(s.test.is_none());
    }

    #[test]
    fn eighty_ten_ten() {
        let docs: Vec<u32> = (0..10).collect();
        let s = split_corpus(&docs, &[0.8, 0.1, 0.1], 7).unwrap();
        assert_eq!(s.sizes(), [8, 1, 1]);
    }

    #[test]
    fn deterministic() {
        let docs: Vec<u32> = (0..100).collect();
        let a = split_corpus(&docs, &[0.8, 0.1, 0.1], 7).unwrap();
        let b = split_corpus(&docs, &[0.8, 0.1, 0.1], 7).unwrap();
        assert_eq!(a, b);
        let c = split_corpus(&docs, &[0.8, 0.1, 0.1], 8).unwrap();
        assert_ne!(a.train, c.train);
    }

    #[test]
    fn bad_ratios() {
        let docs: Vec<u32> = (0..10).collect();
        assert!(matches!(
            split_corpus(&docs, &[0.5, 0.4], 1),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            split_corpus(&docs, &[1.0], 1),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            split_corpus(&docs, &[1.2, -0.2], 1),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            split_corpus(&docs[..2], &[0.8, 0.1, 0.1], 1),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn largest_remainder() {
        assert_eq!(split_sizes(7, &[0.5, 0.5]), [4, 3]);
        assert_eq!(split_sizes(10, &[0.7, 0.2, 0.1]), [7, 2, 1]);
        assert_eq!(split_sizes(3, &[0.98, 0.01, 0.01]), [3, 0, 0]);
    }
}
