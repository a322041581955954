use crate::numerics::{poly_fit, FitModel, PolyFit};
use crate::Result;

use super::SizeReport;

/// θ_max ≈ a + b N reference coefficients, constant first.
pub const THETA_LINEAR_REFERENCE: [f64; 2] = [0.747664, -0.0185155];
/// θ_max ≈ a + c N² reference coefficients, constant first.
pub const THETA_QUADRATIC_REFERENCE: [f64; 2] = [0.671077, -0.0010471];
/// p_r ≈ a + b p_s + c p_s² reference coefficients, constant first.
pub const PR_VS_PS_REFERENCE: [f64; 3] = [0.67, 0.241, -0.858];

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceComparison {
    pub reference: Vec<f64>,
    pub fitted: Vec<f64>,
    /// |fitted − reference| / |reference| per coefficient.
    pub relative_deviation: Vec<f64>,
}

impl ReferenceComparison {
    pub fn new(reference: &[f64], fit: &PolyFit) -> Self {
        let relative_deviation = reference.iter().zip(&fit.coefficients).map(|(r, f)| ((f - r) / r).abs()).collect();
        ReferenceComparison { reference: reference.to_vec(), fitted: fit.coefficients.clone(), relative_deviation }
    }

    pub fn max_relative_deviation(&self) -> f64 {
        self.relative_deviation.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigureFits {
    /// θ_max against N, a + bN.
    pub theta_linear: PolyFit,
    /// θ_max against N, a + cN².
    pub theta_quadratic: PolyFit,
    /// p_r against p_s, full quadratic.
    pub pr_vs_ps: PolyFit,
    pub theta_linear_vs_reference: ReferenceComparison,
    pub theta_quadratic_vs_reference: ReferenceComparison,
    pub pr_vs_ps_vs_reference: ReferenceComparison,
}

/// Fits over the successful rows; `None` when fewer than three sizes have a
/// θ_max.
pub fn fit_figures(rows: &[SizeReport]) -> Result<Option<FigureFits>> {
    let usable: Vec<&SizeReport> = rows.iter().filter(|r| r.theta_max().is_some()).collect();
    if usable.len() < 3 {
        return Ok(None);
    }
    let ns: Vec<f64> = usable.iter().map(|r| r.n as f64).collect();
    let thetas: Vec<f64> = usable.iter().map(|r| r.theta_max().unwrap_or(f64::NAN)).collect();
    let p_step: Vec<f64> = usable.iter().map(|r| r.p_step()).collect();
    let p_rail: Vec<f64> = usable.iter().map(|r| r.p_rail()).collect();

    let theta_linear = poly_fit(&ns, &thetas, FitModel::Linear)?;
    let theta_quadratic = poly_fit(&ns, &thetas, FitModel::QuadraticNoLinearTerm)?;
    let pr_vs_ps = poly_fit(&p_step, &p_rail, FitModel::FullQuadratic)?;
    Ok(Some(FigureFits {
        theta_linear_vs_reference: ReferenceComparison::new(&THETA_LINEAR_REFERENCE, &theta_linear),
        theta_quadratic_vs_reference: ReferenceComparison::new(&THETA_QUADRATIC_REFERENCE, &theta_quadratic),
        pr_vs_ps_vs_reference: ReferenceComparison::new(&PR_VS_PS_REFERENCE, &pr_vs_ps),
        theta_linear,
        theta_quadratic,
        pr_vs_ps,
    }))
}
