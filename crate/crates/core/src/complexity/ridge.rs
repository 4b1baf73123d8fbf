use nalgebra::{DMatrix, DVector, SymmetricEigen};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest eigenvalue ratio of the regularized Gram matrix that still
/// counts as solvable.
const SINGULAR_RATIO: f64 = 1e-12;

/// Ridge regression on z-scored features with an unregularized intercept.
///
/// Features are standardized with the training mean and population standard
/// deviation. A feature that is constant over the training set gets std 1,
/// weight 0 and is listed in `dropped`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RidgeFit {
    pub lambda: f64,
    pub intercept: f64,
    /// One weight per feature, in standardized units.
    pub weights: Vec<f64>,
    pub means: Vec<f64>,
    pub stds: Vec<f64>,
    pub dropped: Vec<bool>,
}

impl RidgeFit {
    /// Solves `(ZᵀZ + λI) w = Zᵀ(y - ȳ)` over the kept features `Z`.
    pub fn fit(rows: &[Vec<f64>], targets: &[f64], lambda: f64) -> Result<Self> {
        if rows.len() != targets.len() {
            return Err(Error::Fit(format!(
                "{} feature rows but {} targets",
                rows.len(),
                targets.len()
            )));
        }
        if rows.len() < 2 {
            return Err(Error::Fit("need at least 2 training samples".into()));
        }
        if !(lambda >= 0.0 && lambda.is_finite()) {
            return Err(Error::Fit(format!(
                "lambda must be finite and >= 0, got {lambda}"
            )));
        }
        let dim = rows[0].len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(Error::Fit("feature rows differ in length".into()));
        }
        if rows.iter().flatten().chain(targets).any(|v| !v.is_finite()) {
            return Err(Error::Fit("non-finite feature or target value".into()));
        }

        let n = rows.len() as f64;
        let mut means = vec![0.0; dim];
        let mut stds = vec![1.0; dim];
        let mut dropped = vec![false; dim];
        for j in 0..dim {
            let mean = rows.iter().map(|r| r[j]).sum::<f64>() / n;
            let var = rows.iter().map(|r| (r[j] - mean).powi(2)).sum::<f64>() / n;
            means[j] = mean;
            if var.sqrt() > 1e-12 * mean.abs().max(1.0) {
                stds[j] = var.sqrt();
            } else {
                dropped[j] = true;
            }
        }
        let intercept = targets.iter().sum::<f64>() / n;
        let kept: Vec<usize> = (0..dim).filter(|&j| !dropped[j]).collect();
        let mut weights = vec![0.0; dim];

        if !kept.is_empty() {
            let z = DMatrix::from_fn(rows.len(), kept.len(), |i, k| {
                let j = kept[k];
                (rows[i][j] - means[j]) / stds[j]
            });
            let yc = DVector::from_iterator(targets.len(), targets.iter().map(|t| t - intercept));
            let gram = z.transpose() * &z + DMatrix::identity(kept.len(), kept.len()) * lambda;
            let rhs = z.transpose() * yc;

            let eig = SymmetricEigen::new(gram.clone()).eigenvalues;
            let max = eig.max();
            let min = eig.min();
            if max <= 0.0 || min / max < SINGULAR_RATIO {
                return Err(Error::Fit(
                    "system is singular (collinear or constant features); use lambda > 0".into(),
                ));
            }
            let solution = gram
                .cholesky()
                .ok_or_else(|| Error::Fit("system is not positive definite".into()))?
                .solve(&rhs);
            for (k, &j) in kept.iter().enumerate() {
                weights[j] = solution[k];
            }
        }

        Ok(Self {
            lambda,
            intercept,
            weights,
            means,
            stds,
            dropped,
        })
    }

    pub fn standardize(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .zip(self.means.iter().zip(&self.stds))
            .zip(&self.dropped)
            .map(|((x, (m, s)), &d)| if d { 0.0 } else { (x - m) / s })
            .collect()
    }

    pub fn predict(&self, row: &[f64]) -> f64 {
        self.intercept
            + self
                .standardize(row)
                .iter()
                .zip(&self.weights)
                .map(|(z, w)| z * w)
                .sum::<f64>()
    }

    /// Intercept and per-feature coefficients in raw feature units.
    pub fn raw_coefficients(&self) -> (f64, Vec<f64>) {
        let coefs: Vec<f64> = self
            .weights
            .iter()
            .zip(&self.stds)
            .map(|(w, s)| w / s)
            .collect();
        let intercept = self.intercept
            - coefs
                .iter()
                .zip(&self.means)
                .map(|(c, m)| c * m)
                .sum::<f64>();
        (intercept, coefs)
    }
}
