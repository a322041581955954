//! Size sweeps: run the full pipeline for each ladder length, fit the
//! θ_max and p_r(p_s) curves, and write the per-figure CSV files.

mod fits;
mod output;

use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::lattice::{enumerate_coverings, Boundary, LadderLattice, WrapConvention};
use crate::measures::{cloning_theta_sets, ggm, monogamy_check, steps_on_side_a, CloningBoundRecord, GgmRecord, MonogamyRecord, ThetaGrid};
use crate::numerics::CMatrix;
use crate::reduced::{edge_werner_parameters, partial_trace, regional_entanglement, teleportation_fidelities, EdgeWernerTable, Fidelities, WERNER_TOLERANCE};
use crate::state::{superpose, total_spin_squared, StateVector};
use crate::{Error, Result};

pub use fits::{fit_figures, FigureFits, ReferenceComparison, PR_VS_PS_REFERENCE, THETA_LINEAR_REFERENCE, THETA_QUADRATIC_REFERENCE};
pub use output::{emit_csv, format_g, CSV_FILES};

/// Largest ladder length accepted by a sweep.
pub const MAX_SWEEP_M: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Ladder lengths m; each run has N = 2m sites.
    pub sizes: Vec<usize>,
    pub boundary: Boundary,
    pub wrap: WrapConvention,
    pub output_dir: Option<PathBuf>,
    pub theta_tolerance: f64,
    pub theta_grid_points: usize,
    pub emit_state_dumps: bool,
    pub surface_resolution: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            sizes: vec![3, 4, 5, 6],
            boundary: Boundary::Periodic,
            wrap: WrapConvention::default(),
            output_dir: None,
            theta_tolerance: 1e-9,
            theta_grid_points: ThetaGrid::default().points,
            emit_state_dumps: false,
            surface_resolution: 100,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sizes.is_empty() {
            return Err(Error::Config("no ladder sizes given".into()));
        }
        if let Some(&m) = self.sizes.iter().find(|&&m| !(2..=MAX_SWEEP_M).contains(&m)) {
            return Err(Error::Config(format!("ladder length {m} outside 2..={MAX_SWEEP_M}")));
        }
        if self.theta_tolerance.is_nan() || self.theta_tolerance <= 0.0 {
            return Err(Error::Config(format!("theta tolerance must be positive, got {}", self.theta_tolerance)));
        }
        if self.theta_grid_points < 2 {
            return Err(Error::Config(format!("theta grid needs at least 2 points, got {}", self.theta_grid_points)));
        }
        if self.surface_resolution < 2 {
            return Err(Error::Config(format!("surface resolution must be at least 2, got {}", self.surface_resolution)));
        }
        Ok(())
    }

    fn theta_grid(&self) -> ThetaGrid {
        ThetaGrid { points: self.theta_grid_points, tolerance: self.theta_tolerance }
    }
}

/// Everything measured for one ladder length.
#[derive(Debug, Clone)]
pub struct SizeReport {
    pub m: usize,
    pub n: usize,
    pub lattice: LadderLattice,
    pub coverings: usize,
    pub spin_squared: f64,
    pub werner: EdgeWernerTable,
    pub p_avg: f64,
    /// Mean over sites of the per-site average of the three incident bonds;
    /// `None` when some site has fewer than three bonds.
    pub regional_mean: Option<f64>,
    pub fidelities: Fidelities,
    pub monogamy: MonogamyRecord,
    pub cloning: CloningBoundRecord,
    pub ggm: GgmRecord,
    /// Maximizing split reported in tables: the first tie that cuts no step,
    /// else the lexicographically smallest maximizer.
    pub reported_split: u64,
    pub steps_on_a_side: usize,
    pub state: StateVector,
}

impl SizeReport {
    pub fn p_rail(&self) -> f64 {
        self.werner.p_rail
    }

    pub fn p_step(&self) -> f64 {
        self.werner.p_step
    }

    pub fn theta_max(&self) -> Option<f64> {
        self.cloning.theta_max
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SizeFailure {
    pub m: usize,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct EntanglementReport {
    pub config: RunConfig,
    /// Successful sizes in configured order.
    pub rows: Vec<SizeReport>,
    pub failures: Vec<SizeFailure>,
    pub fits: Option<FigureFits>,
}

impl EntanglementReport {
    pub fn all_succeeded(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn row(&self, n: usize) -> Option<&SizeReport> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// Run every configured size, fit the figure curves when at least three sizes
/// succeeded, and write the CSV files if an output directory is set.
///
/// A size that fails is recorded in `failures` and the others continue.
pub fn run_sweep(config: &RunConfig) -> Result<EntanglementReport> {
    config.validate()?;
    let outcomes: Vec<(usize, Result<SizeReport>)> = config.sizes.par_iter().map(|&m| (m, run_size(m, config))).collect();
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for (m, outcome) in outcomes {
        match outcome {
            Ok(row) => rows.push(row),
            Err(e) => failures.push(SizeFailure { m, reason: e.to_string() }),
        }
    }
    let fits = fit_figures(&rows)?;
    let report = EntanglementReport { config: config.clone(), rows, failures, fits };
    if let Some(dir) = &config.output_dir {
        emit_csv(&report, dir)?;
    }
    Ok(report)
}

/// The full pipeline for one ladder length, with every invariant checked.
pub fn run_size(m: usize, config: &RunConfig) -> Result<SizeReport> {
    let lattice = LadderLattice::new(m, config.boundary, config.wrap)?;
    let n = lattice.n_sites();
    let coverings = enumerate_coverings(&lattice);
    if coverings.is_empty() {
        return Err(Error::NoCoverings);
    }
    let state = superpose(&coverings, n)?;

    let spin_squared = total_spin_squared(&state);
    if spin_squared.abs() >= 1e-10 {
        return Err(Error::Invariant(format!("total spin squared {spin_squared:e} for N = {n}")));
    }

    let half = CMatrix::identity(2).scale(0.5.into());
    for site in lattice.sites() {
        let dev = partial_trace(&state, &[site])?.matrix.max_abs_diff(&half);
        if dev > 1e-10 {
            return Err(Error::Invariant(format!("site {site} marginal differs from I/2 by {dev:e}")));
        }
    }

    let werner = edge_werner_parameters(&lattice, &state)?;
    if werner.max_residual >= WERNER_TOLERANCE {
        return Err(Error::Invariant(format!("two-site marginal off Werner form by {:e}", werner.max_residual)));
    }
    let (p_rail, p_step) = (werner.p_rail, werner.p_step);
    let p_avg = (2.0 * p_rail + p_step) / 3.0;
    let fidelities = teleportation_fidelities(p_rail, p_step);
    if (fidelities.average - (p_avg + 1.0) / 2.0).abs() > 1e-12 {
        return Err(Error::Invariant("average fidelity disagrees with p_avg".into()));
    }
    let regional_mean = lattice
        .sites()
        .map(|s| regional_entanglement(&lattice, &werner, s))
        .collect::<Result<Vec<f64>>>()
        .ok()
        .map(|v| v.iter().sum::<f64>() / v.len() as f64);

    let monogamy = monogamy_check(p_rail, p_step)?;
    if !monogamy.satisfied {
        return Err(Error::Invariant(format!("monogamy violated: 2τ_r + τ_s = {}", monogamy.clamped_lhs)));
    }

    let cloning = cloning_theta_sets(p_rail, p_step, config.theta_grid())?;
    if let Some(t) = cloning.theta_max {
        if !(0.0..=FRAC_PI_2).contains(&t) {
            return Err(Error::Invariant(format!("theta_max {t} outside [0, π/2]")));
        }
    }

    let ggm = ggm(&state)?;
    if !(0.0..1.0).contains(&ggm.value) {
        return Err(Error::Invariant(format!("GGM {} outside [0, 1)", ggm.value)));
    }
    let reported_split = ggm.column_aligned_maximizer(&lattice).unwrap_or(ggm.maximizing_bipartition);
    let steps_on_a_side = steps_on_side_a(&lattice, reported_split);

    Ok(SizeReport {
        m,
        n,
        coverings: coverings.len(),
        spin_squared,
        werner,
        p_avg,
        regional_mean,
        fidelities,
        monogamy,
        cloning,
        ggm,
        reported_split,
        steps_on_a_side,
        state,
        lattice,
    })
}
