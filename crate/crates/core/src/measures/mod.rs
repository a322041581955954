//! Entanglement measures and bounds on the Werner parameters.

mod cloning;
mod ggm;
mod tangle;

pub use cloning::{
    cloning_theta_sets, rail_bound, step_bound, step_theta_limit, CloningBoundRecord, IntervalSet, ThetaGrid, THETA_DOMAIN,
};
pub use ggm::{ggm, mask_sites, steps_intact, steps_on_side_a, GgmRecord, MAX_GGM_SITES};
pub use tangle::{monogamy_check, monogamy_surface_sample, tangle, tangle_from_density_matrix, MonogamyRecord, SurfacePoint};
