//! Least-squares polynomial fits in the three shapes used for the θ_max and
//! p_r-versus-p_s curves.

use std::fmt;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FitModel {
    /// a + b x
    Linear,
    /// a + c x²
    QuadraticNoLinearTerm,
    /// a + b x + c x²
    FullQuadratic,
}

impl FitModel {
    pub fn powers(self) -> &'static [i32] {
        match self {
            FitModel::Linear => &[0, 1],
            FitModel::QuadraticNoLinearTerm => &[0, 2],
            FitModel::FullQuadratic => &[0, 1, 2],
        }
    }

    pub fn n_coefficients(self) -> usize {
        self.powers().len()
    }
}

impl fmt::Display for FitModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FitModel::Linear => "a + b x",
            FitModel::QuadraticNoLinearTerm => "a + c x^2",
            FitModel::FullQuadratic => "a + b x + c x^2",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolyFit {
    pub model: FitModel,
    /// One coefficient per entry of `model.powers()`, constant term first.
    pub coefficients: Vec<f64>,
    /// Sum of squared residuals divided by the number of points.
    pub mean_square_error: f64,
    /// Sum of squared residuals divided by (points − coefficients); NaN when
    /// the fit has no residual degrees of freedom.
    pub residual_variance: f64,
    pub residuals: Vec<f64>,
}

impl PolyFit {
    pub fn eval(&self, x: f64) -> f64 {
        self.model.powers().iter().zip(&self.coefficients).map(|(&p, &c)| c * x.powi(p)).sum()
    }
}

/// Solve the normal equations XᵀX β = Xᵀy for the chosen model.
pub fn poly_fit(xs: &[f64], ys: &[f64], model: FitModel) -> Result<PolyFit> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    let k = model.n_coefficients();
    if xs.len() < k {
        return Err(Error::TooFewPoints { needed: k, got: xs.len() });
    }
    let powers = model.powers();
    let design: Vec<Vec<f64>> = xs.iter().map(|&x| powers.iter().map(|&p| x.powi(p)).collect()).collect();

    let mut normal = vec![vec![0.0; k + 1]; k];
    for (row, &y) in design.iter().zip(ys) {
        for i in 0..k {
            for j in 0..k {
                normal[i][j] += row[i] * row[j];
            }
            normal[i][k] += row[i] * y;
        }
    }
    let coefficients = solve_augmented(normal)?;

    let residuals: Vec<f64> = design
        .iter()
        .zip(ys)
        .map(|(row, &y)| y - row.iter().zip(&coefficients).map(|(a, b)| a * b).sum::<f64>())
        .collect();
    let sse: f64 = residuals.iter().map(|r| r * r).sum();
    let n = xs.len();
    Ok(PolyFit {
        model,
        coefficients,
        mean_square_error: sse / n as f64,
        residual_variance: if n > k { sse / (n - k) as f64 } else { f64::NAN },
        residuals,
    })
}

/// Gaussian elimination with partial pivoting on a k × (k+1) system.
fn solve_augmented(mut a: Vec<Vec<f64>>) -> Result<Vec<f64>> {
    let k = a.len();
    let scale = (0..k).map(|i| a[i][i].abs()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Err(Error::SingularFit);
    }
    for col in 0..k {
        let pivot = (col..k).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[pivot][col].abs() <= 1e-12 * scale {
            return Err(Error::SingularFit);
        }
        a.swap(col, pivot);
        for r in col + 1..k {
            let f = a[r][col] / a[col][col];
            for c in col..=k {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    let mut x = vec![0.0; k];
    for r in (0..k).rev() {
        let s: f64 = (r + 1..k).map(|c| a[r][c] * x[c]).sum();
        x[r] = (a[r][k] - s) / a[r][r];
    }
    Ok(x)
}
