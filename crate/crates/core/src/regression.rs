//! Ordinary least squares for the single- and multiple-variable linear
//! predictors. Coefficients are fitted in raw physical units.

use serde::{Deserialize, Serialize};

use crate::conditioning::FeatureTable;
use crate::error::RegressionError;
use crate::linalg::{dot, lstsq_qr, LstsqError, Matrix};

/// Relative threshold on R's diagonal below which a fit is rejected.
pub const RANK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    pub intercept: f64,
    pub slopes: Vec<f64>,
    pub feature_names: Vec<String>,
}

impl LinearModel {
    pub fn new(intercept: f64, slopes: Vec<f64>, feature_names: Vec<String>) -> Result<Self, RegressionError> {
        if slopes.is_empty() {
            return Err(RegressionError::NoFeatures);
        }
        if slopes.len() != feature_names.len() {
            return Err(RegressionError::ShapeMismatch {
                expected: feature_names.len(),
                found: slopes.len(),
            });
        }
        Ok(LinearModel {
            intercept,
            slopes,
            feature_names,
        })
    }

    pub fn predict_row(&self, row: &[f64]) -> Result<f64, RegressionError> {
        if row.len() != self.slopes.len() {
            return Err(RegressionError::ShapeMismatch {
                expected: self.slopes.len(),
                found: row.len(),
            });
        }
        Ok(self.intercept + dot(&self.slopes, row))
    }
}

/// Least-squares fit with an intercept column, solved by Householder QR.
pub fn fit_ols(table: &FeatureTable) -> Result<LinearModel, RegressionError> {
    let p = table.x.cols();
    if p == 0 {
        return Err(RegressionError::NoFeatures);
    }
    let n = table.len();
    if n < p + 1 {
        return Err(RegressionError::InsufficientRows {
            rows: n,
            cols: p + 1,
            needed: p + 1,
        });
    }
    let mut design = Matrix::zeros(n, p + 1);
    for (i, row) in table.x.iter_rows().enumerate() {
        let out = design.row_mut(i);
        out[0] = 1.0;
        out[1..].copy_from_slice(row);
    }
    let beta = lstsq_qr(&design, &table.y, RANK_TOL).map_err(|e| match e {
        LstsqError::RankDeficient => RegressionError::RankDeficient,
        LstsqError::Underdetermined => RegressionError::InsufficientRows {
            rows: n,
            cols: p + 1,
            needed: p + 1,
        },
    })?;
    LinearModel::new(beta[0], beta[1..].to_vec(), table.feature_names.clone())
}

pub fn predict_linear(model: &LinearModel, x: &Matrix) -> Result<Vec<f64>, RegressionError> {
    x.iter_rows().map(|row| model.predict_row(row)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn table(x: Vec<Vec<f64>>, y: Vec<f64>) -> FeatureTable {
        let n = y.len();
        let names = (0..x[0].len()).map(|j| format!("x{j}")).collect();
        FeatureTable::new("T", (0..n).map(|i| i as f64).collect(), names, Matrix::from_rows(&x), y).unwrap()
    }

    #[test]
    fn exact_line() {
        let xs: Vec<Vec<f64>> = (0..5).map(|i| vec![i as f64]).collect();
        let y = xs.iter().map(|r| 2.0 + 3.0 * r[0]).collect();
        let m = fit_ols(&table(xs, y)).unwrap();
        assert!((m.intercept - 2.0).abs() <= 1e-9);
        assert!((m.slopes[0] - 3.0).abs() <= 1e-9);
    }

    #[test]
    fn constant_target() {
        let xs: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64, (i * i) as f64]).collect();
        let m = fit_ols(&table(xs, vec![4.5; 6])).unwrap();
        assert!((m.intercept - 4.5).abs() <= 1e-12);
        assert!(m.slopes.iter().all(|s| s.abs() <= 1e-12));
    }

    #[test]
    fn recovers_two_feature_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let xs: Vec<Vec<f64>> = (0..20)
            .map(|_| vec![rng.random_range(-5.0..5.0), rng.random_range(0.0..10.0)])
            .collect();
        let y = xs.iter().map(|r| 1.0 + 2.0 * r[0] - 0.5 * r[1]).collect();
        let m = fit_ols(&table(xs, y)).unwrap();
        for (got, want) in [m.intercept, m.slopes[0], m.slopes[1]].iter().zip([1.0, 2.0, -0.5]) {
            assert!((got - want).abs() <= 1e-8);
        }
    }

    #[test]
    fn rejects_collinear_and_short_tables() {
        let xs: Vec<Vec<f64>> = (0..6).map(|i| vec![i as f64, 2.0 * i as f64]).collect();
        assert_eq!(fit_ols(&table(xs, vec![1.0; 6])), Err(RegressionError::RankDeficient));
        let xs = vec![vec![1.0, 2.0], vec![3.0, 1.0]];
        assert!(matches!(
            fit_ols(&table(xs, vec![1.0, 2.0])),
            Err(RegressionError::InsufficientRows { rows: 2, .. })
        ));
    }

    #[test]
    fn prediction_examples() {
        let m = LinearModel::new(1.0, vec![2.0, 3.0], vec!["a".into(), "b".into()]).unwrap();
        assert_eq!(predict_linear(&m, &Matrix::from_rows(&[[1.0, 1.0]])).unwrap(), vec![6.0]);
        let flat = LinearModel::new(0.4, vec![0.0], vec!["a".into()]).unwrap();
        assert_eq!(
            predict_linear(&flat, &Matrix::from_rows(&[[1.0], [7.0]])).unwrap(),
            vec![0.4, 0.4]
        );
        let ident = LinearModel::new(0.0, vec![1.0], vec!["a".into()]).unwrap();
        assert_eq!(
            predict_linear(&ident, &Matrix::from_rows(&[[-2.5], [3.0]])).unwrap(),
            vec![-2.5, 3.0]
        );
        assert!(matches!(
            predict_linear(&m, &Matrix::from_rows(&[[1.0]])),
            Err(RegressionError::ShapeMismatch { expected: 2, found: 1 })
        ));
        assert_eq!(LinearModel::new(0.0, vec![], vec![]), Err(RegressionError::NoFeatures));
    }

    #[test]
    fn residuals_orthogonal_on_badly_scaled_columns() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let xs: Vec<Vec<f64>> = (0..200)
            .map(|i| {
                vec![
                    2000.0 + i as f64 * 0.5,
                    rng.random_range(0.0..0.4),
                    rng.random_range(2.0..2.7),
                    rng.random_range(20.0..150.0),
                ]
            })
            .collect();
        let y: Vec<f64> = xs
            .iter()
            .map(|r| 0.3 + 1e-4 * r[0] - 2.0 * r[1] + 0.4 * r[2] - 0.001 * r[3] + rng.random_range(-0.05..0.05))
            .collect();
        let t = table(xs, y.clone());
        let m = fit_ols(&t).unwrap();
        let yhat = predict_linear(&m, &t.x).unwrap();
        let resid: Vec<f64> = y.iter().zip(&yhat).map(|(a, b)| a - b).collect();
        let ynorm = dot(&y, &y).sqrt();
        assert!(resid.iter().sum::<f64>().abs() <= 1e-6 * ynorm);
        for j in 0..4 {
            let col = t.x.column(j);
            assert!(dot(&col, &resid).abs() <= 1e-6 * ynorm, "column {j}");
        }
    }
}
