use std::cmp::Ordering;

use rayon::prelude::*;

use crate::lattice::{EdgeKind, LadderLattice, SiteId};
use crate::numerics::{dominant_singular_value, singular_values};
use crate::state::StateVector;
use crate::{Error, Result};

/// Beyond this the bipartition count (2^(n−1) − 1) and the reshaped matrix
/// sizes make the exhaustive scan impractical.
pub const MAX_GGM_SITES: usize = 14;

/// Splits whose largest Schmidt weight is this close to the best are ties.
const TIE_TOLERANCE: f64 = 1e-10;
const SPECTRUM_TOLERANCE: f64 = 1e-10;
const CROSS_CHECK_TOLERANCE: f64 = 1e-9;

/// Generalized geometric measure of a pure state. Bipartitions are bitmasks
/// with bit k set when site k is on side A; site 0 is always on side A.
#[derive(Debug, Clone, PartialEq)]
pub struct GgmRecord {
    pub value: f64,
    pub max_schmidt_sq: f64,
    /// Lexicographically smallest side A (as a sorted site list) among the
    /// maximizing splits.
    pub maximizing_bipartition: u64,
    /// Every split within the tie tolerance of the maximum, in lexicographic
    /// order of side A.
    pub tied_maximizers: Vec<u64>,
    pub bipartitions_scanned: usize,
    /// Largest Schmidt weight of the maximizing split from power iteration.
    pub cross_check_sq: f64,
}

impl GgmRecord {
    pub fn side_a(&self) -> Vec<SiteId> {
        mask_sites(self.maximizing_bipartition)
    }

    /// First tied maximizer that cuts no step, if any.
    pub fn column_aligned_maximizer(&self, lattice: &LadderLattice) -> Option<u64> {
        self.tied_maximizers.iter().copied().find(|&mask| steps_intact(lattice, mask))
    }
}

pub fn mask_sites(mask: u64) -> Vec<SiteId> {
    (0..64).filter(|k| mask >> k & 1 == 1).collect()
}

fn lex_cmp(a: u64, b: u64) -> Ordering {
    mask_sites(a).cmp(&mask_sites(b))
}

/// True when no step edge has its ends on opposite sides of the split.
pub fn steps_intact(lattice: &LadderLattice, mask: u64) -> bool {
    lattice.edges().iter().filter(|e| e.kind == EdgeKind::Step).all(|e| (mask >> e.a & 1) == (mask >> e.b & 1))
}

/// Number of step edges with both ends on side A.
pub fn steps_on_side_a(lattice: &LadderLattice, mask: u64) -> usize {
    lattice
        .edges()
        .iter()
        .filter(|e| e.kind == EdgeKind::Step && mask >> e.a & 1 == 1 && mask >> e.b & 1 == 1)
        .count()
}

pub fn ggm(state: &StateVector) -> Result<GgmRecord> {
    let n = state.n_sites();
    if n > MAX_GGM_SITES {
        return Err(Error::TooManySites { n, limit: MAX_GGM_SITES });
    }
    if n < 2 {
        return Err(Error::Config(format!("a bipartition needs at least 2 sites, got {n}")));
    }
    state.check_normalized(1e-10)?;

    let full = (1u64 << n) - 1;
    let masks: Vec<u64> = (1..full).step_by(2).collect();
    let weights = masks
        .par_iter()
        .map(|&mask| {
            let sv = singular_values(&state.bipartition_matrix(&mask_sites(mask))?);
            let total: f64 = sv.iter().map(|s| s * s).sum();
            if (total - 1.0).abs() > SPECTRUM_TOLERANCE {
                return Err(Error::Invariant(format!("Schmidt weights of split {mask:#x} sum to {total}")));
            }
            Ok(sv[0] * sv[0])
        })
        .collect::<Result<Vec<f64>>>()?;

    let max_schmidt_sq = weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut tied_maximizers: Vec<u64> = masks
        .iter()
        .zip(&weights)
        .filter(|(_, &w)| max_schmidt_sq - w <= TIE_TOLERANCE)
        .map(|(&m, _)| m)
        .collect();
    tied_maximizers.sort_by(|&a, &b| lex_cmp(a, b));
    let maximizing_bipartition = tied_maximizers[0];

    let sigma = dominant_singular_value(&state.bipartition_matrix(&mask_sites(maximizing_bipartition))?);
    let cross_check_sq = sigma * sigma;
    if (cross_check_sq - max_schmidt_sq).abs() > CROSS_CHECK_TOLERANCE {
        return Err(Error::Invariant(format!(
            "power iteration gives {cross_check_sq} against {max_schmidt_sq} on split {maximizing_bipartition:#x}"
        )));
    }

    Ok(GgmRecord {
        value: 1.0 - max_schmidt_sq,
        max_schmidt_sq,
        maximizing_bipartition,
        tied_maximizers,
        bipartitions_scanned: masks.len(),
        cross_check_sq,
    })
}
