//! Reduced density matrices, Werner-parameter extraction, regional
//! entanglement, and teleportation fidelities.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::lattice::{Edge, EdgeKind, LadderLattice};
use crate::numerics::{hermitian_eigenvalues, CMatrix, ZERO};
use crate::state::{check_sites, StateVector};
use crate::{Error, Result, SiteId};

/// Largest subsystem [`partial_trace`] will build.
pub const MAX_KEPT_SITES: usize = 12;

/// A two-site marginal is accepted as Werner when every entry is within this
/// distance of the Werner matrix with the same singlet fraction.
pub const WERNER_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    /// Site of each qubit: bit t of a row index is the spin of `sites[t]`.
    pub sites: Vec<SiteId>,
    pub matrix: CMatrix,
}

impl DensityMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Hermitian and unit trace within 1e-12, eigenvalues ≥ −1e-10.
    pub fn validate(&self) -> Result<()> {
        let herr = self.matrix.hermiticity_error()?;
        if herr > 1e-12 {
            return Err(Error::NotHermitian(herr));
        }
        let tr = self.matrix.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::BadTrace(tr.re));
        }
        let lowest = hermitian_eigenvalues(&self.matrix)?.last().copied().unwrap_or(0.0);
        if lowest < -1e-10 {
            return Err(Error::NotPositive(lowest));
        }
        Ok(())
    }

    /// Trace out everything except `keep` (a subset of `self.sites`).
    pub fn reduce_to(&self, keep: &[SiteId]) -> Result<DensityMatrix> {
        let positions: Vec<usize> = keep
            .iter()
            .map(|s| self.sites.iter().position(|t| t == s).ok_or(Error::SiteOutOfRange { site: *s, n: self.sites.len() }))
            .collect::<Result<_>>()?;
        check_sites(&positions, self.sites.len())?;
        let rest: Vec<usize> = (0..self.sites.len()).filter(|p| !positions.contains(p)).collect();
        let dk = 1 << positions.len();
        let mut out = CMatrix::zeros(dk, dk);
        for env in 0..1usize << rest.len() {
            let spread = |k: usize| -> usize {
                let mut x = 0;
                for (t, &p) in positions.iter().enumerate() {
                    x |= (k >> t & 1) << p;
                }
                for (t, &p) in rest.iter().enumerate() {
                    x |= (env >> t & 1) << p;
                }
                x
            };
            for i in 0..dk {
                for j in 0..dk {
                    out[(i, j)] += self.matrix[(spread(i), spread(j))];
                }
            }
        }
        Ok(DensityMatrix { sites: keep.to_vec(), matrix: out })
    }
}

/// Tr over the complement of `keep` of |ψ⟩⟨ψ|.
pub fn partial_trace(state: &StateVector, keep: &[SiteId]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::Invariant("partial trace must keep at least one site".into()));
    }
    if keep.len() > MAX_KEPT_SITES {
        return Err(Error::TooManySites { n: keep.len(), limit: MAX_KEPT_SITES });
    }
    let psi = state.bipartition_matrix(keep)?;
    Ok(DensityMatrix { sites: keep.to_vec(), matrix: psi.gram_rows() })
}

/// Directed singlet on (first, second) qubits of a two-qubit register, with
/// index = bit(first) + 2·bit(second).
pub fn singlet_vector() -> [Complex64; 4] {
    let h = FRAC_1_SQRT_2;
    [ZERO, Complex64::new(-h, 0.0), Complex64::new(h, 0.0), ZERO]
}

/// p |s⟩⟨s| + (1 − p)/4 · I on a two-qubit register.
pub fn werner_matrix(p: f64) -> CMatrix {
    CMatrix::outer(&singlet_vector())
        .scale(Complex64::new(p, 0.0))
        .add(&CMatrix::identity(4).scale(Complex64::new((1.0 - p) / 4.0, 0.0)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerFit {
    pub p: f64,
    /// Largest entry of |ρ − ρ_Werner(p)|.
    pub residual: f64,
    pub kind: Option<EdgeKind>,
}

impl WernerFit {
    pub fn is_werner(&self) -> bool {
        self.residual <= WERNER_TOLERANCE
    }
}

/// Singlet fraction F = ⟨(a,b)|ρ|(a,b)⟩ and p = (4F − 1)/3, using the
/// directed singlet with `a_site` first.
pub fn werner_parameter(rho: &DensityMatrix, a_site: SiteId, b_site: SiteId) -> Result<WernerFit> {
    if rho.dim() != 4 {
        return Err(Error::NotTwoQubit(rho.dim()));
    }
    let matrix = if rho.sites == [a_site, b_site] {
        rho.matrix.clone()
    } else if rho.sites == [b_site, a_site] {
        swap_qubits(&rho.matrix)
    } else {
        return Err(Error::Invariant(format!("density matrix is on sites {:?}, not ({a_site}, {b_site})", rho.sites)));
    };
    let s = singlet_vector();
    let rs = matrix.mul_vec(&s);
    let fraction: f64 = s.iter().zip(&rs).map(|(a, b)| (a.conj() * b).re).sum();
    let p = (4.0 * fraction - 1.0) / 3.0;
    let residual = matrix.max_abs_diff(&werner_matrix(p));
    Ok(WernerFit { p, residual, kind: None })
}

fn swap_qubits(m: &CMatrix) -> CMatrix {
    let sw = |i: usize| (i & 1) << 1 | (i >> 1 & 1);
    CMatrix::from_fn(4, 4, |i, j| m[(sw(i), sw(j))])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spread {
    pub min: f64,
    pub max: f64,
}

/// Werner fits for every lattice edge plus rail/step aggregates.
#[derive(Debug, Clone)]
pub struct EdgeWernerTable {
    pub fits: Vec<(Edge, WernerFit)>,
    /// Mean over rail edges that carry dimers, excluding the seam of an
    /// odd-m periodic ladder.
    pub p_rail: f64,
    /// Mean over step edges.
    pub p_step: f64,
    pub rail_spread: Spread,
    pub step_spread: Spread,
    pub max_residual: f64,
    /// Seam rails were left out of `p_rail`.
    pub frustrated_seam: bool,
}

impl EdgeWernerTable {
    pub fn fit_for(&self, a: SiteId, b: SiteId) -> Option<&WernerFit> {
        self.fits.iter().find(|(e, _)| (e.a == a && e.b == b) || (e.a == b && e.b == a)).map(|(_, f)| f)
    }

    /// Rail edges entering the p_r mean.
    pub fn rail_fits(&self) -> impl Iterator<Item = &(Edge, WernerFit)> {
        self.fits.iter().filter(|(e, _)| rail_counts(e, self.frustrated_seam))
    }

    pub fn step_fits(&self) -> impl Iterator<Item = &(Edge, WernerFit)> {
        self.fits.iter().filter(|(e, _)| e.kind == EdgeKind::Step)
    }
}

fn rail_counts(e: &Edge, frustrated_seam: bool) -> bool {
    e.kind == EdgeKind::Rail && e.dimer_allowed && !(frustrated_seam && e.wraps)
}

pub fn edge_werner_parameters(lattice: &LadderLattice, state: &StateVector) -> Result<EdgeWernerTable> {
    let mut fits = Vec::with_capacity(lattice.edges().len());
    for e in lattice.edges() {
        let rho = partial_trace(state, &[e.a, e.b])?;
        let mut fit = werner_parameter(&rho, e.a, e.b)?;
        fit.kind = Some(e.kind);
        fits.push((*e, fit));
    }
    let frustrated_seam = lattice.has_frustrated_seam();
    let rails: Vec<f64> = fits.iter().filter(|(e, _)| rail_counts(e, frustrated_seam)).map(|(_, f)| f.p).collect();
    let steps: Vec<f64> = fits.iter().filter(|(e, _)| e.kind == EdgeKind::Step).map(|(_, f)| f.p).collect();
    let max_residual = fits.iter().map(|(_, f)| f.residual).fold(0.0, f64::max);
    Ok(EdgeWernerTable {
        p_rail: mean(&rails),
        p_step: mean(&steps),
        rail_spread: spread(&rails),
        step_spread: spread(&steps),
        max_residual,
        frustrated_seam,
        fits,
    })
}

fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        f64::NAN
    } else {
        xs.iter().sum::<f64>() / xs.len() as f64
    }
}

fn spread(xs: &[f64]) -> Spread {
    Spread {
        min: xs.iter().copied().fold(f64::INFINITY, f64::min),
        max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

/// Mean Werner parameter over the three edges incident to `site`.
pub fn regional_entanglement(lattice: &LadderLattice, table: &EdgeWernerTable, site: SiteId) -> Result<f64> {
    if site >= lattice.n_sites() {
        return Err(Error::SiteOutOfRange { site, n: lattice.n_sites() });
    }
    let incident: Vec<&Edge> = lattice.incident_edges(site).map(|(_, e)| e).collect();
    if incident.len() != 3 {
        return Err(Error::NotDegreeThree { site, degree: incident.len() });
    }
    let mut total = 0.0;
    for e in incident {
        total += table.fit_for(e.a, e.b).ok_or(Error::MissingEdgeFit { a: e.a, b: e.b })?.p;
    }
    Ok(total / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fidelities {
    pub rail: f64,
    pub step: f64,
    pub average: f64,
}

/// F = (p + 1)/2 per edge type, averaged with two rails per step.
pub fn teleportation_fidelities(p_rail: f64, p_step: f64) -> Fidelities {
    let rail = (p_rail + 1.0) / 2.0;
    let step = (p_step + 1.0) / 2.0;
    Fidelities { rail, step, average: (2.0 * rail + step) / 3.0 }
}
