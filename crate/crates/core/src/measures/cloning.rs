//! Admissible cloner angles for given rail and step Werner parameters.
//!
//! A site shared by two rail bonds and one step bond behaves like an
//! asymmetric 1→3 cloner with angle θ ∈ [0, π/2]. The rail parameter must lie
//! below `rail_bound(θ)` and the step parameter below `step_bound(θ)`.

use std::f64::consts::{FRAC_PI_2, SQRT_2};

use crate::numerics::bisect_boundary;
use crate::{Error, Result};

pub const THETA_DOMAIN: (f64, f64) = (0.0, FRAC_PI_2);

/// (sin²θ + √2 sin 2θ)/3
pub fn rail_bound(theta: f64) -> f64 {
    (theta.sin().powi(2) + SQRT_2 * (2.0 * theta).sin()) / 3.0
}

/// 1 − (4/3) sin²θ
pub fn step_bound(theta: f64) -> f64 {
    1.0 - 4.0 / 3.0 * theta.sin().powi(2)
}

/// Largest θ with `p_step ≤ step_bound(θ)`, or `None` if no angle qualifies.
pub fn step_theta_limit(p_step: f64) -> Option<f64> {
    if p_step > 1.0 {
        return None;
    }
    let s2 = 0.75 * (1.0 - p_step);
    if s2 >= 1.0 {
        return Some(FRAC_PI_2);
    }
    Some(s2.sqrt().asin())
}

/// Union of disjoint closed intervals in increasing order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct IntervalSet {
    pub intervals: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| a <= x && x <= b)
    }

    pub fn max(&self) -> Option<f64> {
        self.intervals.last().map(|&(_, b)| b)
    }

    /// Pairwise overlap. Intervals separated by at most `slack` are treated
    /// as meeting at the midpoint of the gap.
    pub fn intersect(&self, other: &IntervalSet, slack: f64) -> IntervalSet {
        let mut intervals = Vec::new();
        for &(a0, a1) in &self.intervals {
            for &(b0, b1) in &other.intervals {
                let lo = a0.max(b0);
                let hi = a1.min(b1);
                if lo <= hi {
                    intervals.push((lo, hi));
                } else if lo - hi <= slack {
                    let mid = 0.5 * (lo + hi);
                    intervals.push((mid, mid));
                }
            }
        }
        intervals.sort_by(|x, y| x.0.total_cmp(&y.0));
        IntervalSet { intervals }
    }
}

/// Uniform scan grid over the θ domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaGrid {
    pub points: usize,
    pub tolerance: f64,
}

impl Default for ThetaGrid {
    fn default() -> Self {
        ThetaGrid { points: 2001, tolerance: 1e-10 }
    }
}

impl ThetaGrid {
    fn theta(&self, k: usize) -> f64 {
        if k + 1 == self.points {
            THETA_DOMAIN.1
        } else {
            THETA_DOMAIN.0 + (THETA_DOMAIN.1 - THETA_DOMAIN.0) * k as f64 / (self.points - 1) as f64
        }
    }

    /// Intervals where `inside` holds. Membership is sampled on the grid and
    /// every change between neighbouring samples is refined by bisection.
    pub fn scan(&self, inside: impl Fn(f64) -> bool) -> Result<IntervalSet> {
        if self.points < 2 {
            return Err(Error::Config(format!("theta grid needs at least 2 points, got {}", self.points)));
        }
        if self.tolerance.is_nan() || self.tolerance <= 0.0 {
            return Err(Error::Config(format!("theta tolerance must be positive, got {}", self.tolerance)));
        }
        let mut intervals = Vec::new();
        let mut start = inside(self.theta(0)).then_some(self.theta(0));
        let mut prev = self.theta(0);
        let mut prev_in = start.is_some();
        for k in 1..self.points {
            let t = self.theta(k);
            let now_in = inside(t);
            if now_in != prev_in {
                let edge = bisect_boundary(&inside, prev, t, self.tolerance)?;
                if now_in {
                    start = Some(edge);
                } else if let Some(s) = start.take() {
                    intervals.push((s, edge));
                }
            }
            prev = t;
            prev_in = now_in;
        }
        if let Some(s) = start {
            intervals.push((s, THETA_DOMAIN.1));
        }
        Ok(IntervalSet { intervals })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CloningBoundRecord {
    pub p_rail: f64,
    pub p_step: f64,
    pub grid: ThetaGrid,
    /// Angles with `p_rail ≤ rail_bound(θ)`.
    pub rail_set: IntervalSet,
    /// Angles with `p_step ≤ step_bound(θ)`.
    pub step_set: IntervalSet,
    pub allowed: IntervalSet,
    pub theta_max: Option<f64>,
}

pub fn cloning_theta_sets(p_rail: f64, p_step: f64, grid: ThetaGrid) -> Result<CloningBoundRecord> {
    if !p_rail.is_finite() || !p_step.is_finite() {
        return Err(Error::Config(format!("non-finite Werner parameters ({p_rail}, {p_step})")));
    }
    let rail_set = grid.scan(|t| p_rail <= rail_bound(t))?;
    let step_set = grid.scan(|t| p_step <= step_bound(t))?;
    // Endpoints are only known to the bisection tolerance, so windows that
    // touch at a single angle must not be split apart by rounding.
    let allowed = rail_set.intersect(&step_set, grid.tolerance);
    let theta_max = allowed.max();
    Ok(CloningBoundRecord { p_rail, p_step, grid, rail_set, step_set, allowed, theta_max })
}
