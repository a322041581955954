use num_complex::Complex64;

use crate::numerics::{hermitian_eigen, singular_values, CMatrix, ZERO};
use crate::reduced::DensityMatrix;
use crate::{Error, Result};

/// Density-matrix eigenvalues below this are treated as zero when forming √ρ.
const SPECTRUM_FLOOR: f64 = 1e-14;

/// Tangle of the Werner state ρ(p): [max(0, (3p − 1)/2)]².
pub fn tangle(p: f64) -> Result<f64> {
    if !(-1.0 / 3.0 - 1e-12..=1.0 + 1e-12).contains(&p) {
        return Err(Error::WernerOutOfRange(p));
    }
    let c = ((3.0 * p - 1.0) / 2.0).max(0.0);
    Ok(c * c)
}

/// Squared Wootters concurrence, C = max(0, λ₁ − λ₂ − λ₃ − λ₄) with λᵢ the
/// square roots of the eigenvalues of ρ ρ̃, ρ̃ = (σ_y⊗σ_y) ρ* (σ_y⊗σ_y).
///
/// The λᵢ are obtained as the singular values of √ρ Y √ρ*, Y = σ_y⊗σ_y,
/// which avoids square roots of nearly-zero eigenvalues of ρ ρ̃.
pub fn tangle_from_density_matrix(rho: &DensityMatrix) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::NotTwoQubit(rho.dim()));
    }
    let herr = rho.matrix.hermiticity_error()?;
    if herr > 1e-10 {
        return Err(Error::NotHermitian(herr));
    }
    let tr = rho.matrix.trace();
    if (tr.re - 1.0).abs() > 1e-10 || tr.im.abs() > 1e-10 {
        return Err(Error::BadTrace(tr.re));
    }
    let sqrt_rho = hermitian_eigen(&rho.matrix)?.apply_fn(|x| if x > SPECTRUM_FLOOR { x.sqrt() } else { 0.0 });
    let product = sqrt_rho.matmul(&sigma_y_sigma_y()).matmul(&sqrt_rho.conj());
    let lambda = singular_values(&product);
    let c = (lambda[0] - lambda[1] - lambda[2] - lambda[3]).max(0.0);
    Ok(c * c)
}

/// σ_y ⊗ σ_y; symmetric under exchange of the two qubits.
fn sigma_y_sigma_y() -> CMatrix {
    let one = Complex64::new(1.0, 0.0);
    let mut y = CMatrix::zeros(4, 4);
    y[(0, 3)] = -one;
    y[(3, 0)] = -one;
    y[(1, 2)] = one;
    y[(2, 1)] = one;
    debug_assert!(y[(0, 0)] == ZERO);
    y
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonogamyRecord {
    pub p_rail: f64,
    pub p_step: f64,
    pub tangle_rail: f64,
    pub tangle_step: f64,
    /// (3p_r − 1)²/2 + (3p_s − 1)²/4, unclamped.
    pub lhs: f64,
    /// 2τ(p_r) + τ(p_s) with clamped tangles.
    pub clamped_lhs: f64,
    pub satisfied: bool,
}

/// Two rail bonds and one step bond share a site whose tangle with the rest
/// of a pure singlet state is 1.
pub fn monogamy_check(p_rail: f64, p_step: f64) -> Result<MonogamyRecord> {
    let tangle_rail = tangle(p_rail)?;
    let tangle_step = tangle(p_step)?;
    let lhs = (3.0 * p_rail - 1.0).powi(2) / 2.0 + (3.0 * p_step - 1.0).powi(2) / 4.0;
    let clamped_lhs = 2.0 * tangle_rail + tangle_step;
    Ok(MonogamyRecord {
        p_rail,
        p_step,
        tangle_rail,
        tangle_step,
        lhs,
        clamped_lhs,
        satisfied: clamped_lhs <= 1.0 + 1e-12,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub p_rail: f64,
    pub p_step: f64,
    /// lhs − 1; negative inside the allowed region.
    pub value: f64,
}

/// Samples of the monogamy surface on a `resolution`² grid over [−1/3, 1]²,
/// p_r outer, p_s inner.
pub fn monogamy_surface_sample(resolution: usize) -> Result<Vec<SurfacePoint>> {
    if resolution < 2 {
        return Err(Error::Config(format!("surface resolution must be at least 2, got {resolution}")));
    }
    let lo = -1.0 / 3.0;
    let step = (1.0 - lo) / (resolution - 1) as f64;
    let mut out = Vec::with_capacity(resolution * resolution);
    for i in 0..resolution {
        let p_rail = if i == resolution - 1 { 1.0 } else { lo + step * i as f64 };
        for j in 0..resolution {
            let p_step = if j == resolution - 1 { 1.0 } else { lo + step * j as f64 };
            let value = (3.0 * p_rail - 1.0).powi(2) / 2.0 + (3.0 * p_step - 1.0).powi(2) / 4.0 - 1.0;
            out.push(SurfacePoint { p_rail, p_step, value });
        }
    }
    Ok(out)
}
