//! Pure states of spin-1/2 sites and the RVB superposition of singlet
//! coverings.
//!
//! Basis convention: bit k of a basis index is the spin of site k, with 0 for
//! |↑⟩ and 1 for |↓⟩.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::lattice::{enumerate_coverings, DimerCovering, LadderLattice};
use crate::numerics::{CMatrix, ZERO};
use crate::{Error, Result, SiteId};

/// Largest site count a dense state is allowed to hold.
pub const MAX_SITES: usize = 24;

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    pub fn new(n: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if n > MAX_SITES {
            return Err(Error::TooManySites { n, limit: MAX_SITES });
        }
        if amplitudes.len() != 1 << n {
            return Err(Error::StateLength { len: amplitudes.len(), n });
        }
        Ok(Self { n, amplitudes })
    }

    pub fn from_real(n: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::new(n, amplitudes.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zero(n: usize) -> Self {
        assert!(n <= MAX_SITES);
        Self { n, amplitudes: vec![ZERO; 1 << n] }
    }

    pub fn basis(n: usize, index: usize) -> Self {
        let mut s = Self::zero(n);
        s.amplitudes[index] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn n_sites(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Complex64 {
        self.amplitudes[index]
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::VanishingState);
        }
        Ok(Self { n: self.n, amplitudes: self.amplitudes.iter().map(|z| z / norm).collect() })
    }

    /// Fails unless |‖ψ‖ − 1| ≤ `tol`.
    pub fn check_normalized(&self, tol: f64) -> Result<()> {
        let norm = self.norm();
        if (norm - 1.0).abs() > tol {
            return Err(Error::NotNormalized(norm));
        }
        Ok(())
    }

    /// ⟨self|other⟩
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.n, other.n, "states live on different site counts");
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.n, other.n);
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += b;
        }
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.amplitudes.iter().all(|z| z.im.abs() <= tol)
    }

    /// Relabel sites: site k of `self` becomes site `perm[k]` of the result.
    pub fn permute_sites(&self, perm: &[SiteId]) -> Result<Self> {
        check_sites(perm, self.n)?;
        if perm.len() != self.n {
            return Err(Error::Invariant(format!("permutation has {} entries for {} sites", perm.len(), self.n)));
        }
        let mut out = Self::zero(self.n);
        for (x, &amp) in self.amplitudes.iter().enumerate() {
            let y = (0..self.n).filter(|&k| x >> k & 1 == 1).fold(0usize, |acc, k| acc | 1 << perm[k]);
            out.amplitudes[y] = amp;
        }
        Ok(out)
    }

    /// Flip every spin (↑ ↔ ↓).
    pub fn spin_flipped(&self) -> Self {
        let mask = self.dim() - 1;
        let amplitudes = (0..self.dim()).map(|x| self.amplitudes[x ^ mask]).collect();
        Self { n: self.n, amplitudes }
    }

    /// Reshape into a 2^|rows| × 2^(n−|rows|) matrix. Row index bit t is the
    /// spin of `rows[t]`; column index bits run over the remaining sites in
    /// increasing site order.
    pub fn bipartition_matrix(&self, rows: &[SiteId]) -> Result<CMatrix> {
        check_sites(rows, self.n)?;
        let rest: Vec<SiteId> = (0..self.n).filter(|s| !rows.contains(s)).collect();
        let mut m = CMatrix::zeros(1 << rows.len(), 1 << rest.len());
        for (x, &amp) in self.amplitudes.iter().enumerate() {
            if amp == ZERO {
                continue;
            }
            let r = gather_bits(x, rows);
            let c = gather_bits(x, &rest);
            m[(r, c)] = amp;
        }
        Ok(m)
    }

    /// Text dump: header line, then one real amplitude per line in index order.
    pub fn dump_text(&self, header: &str) -> String {
        let mut out = String::with_capacity(self.dim() * 24);
        out.push_str(header);
        out.push('\n');
        for z in &self.amplitudes {
            let _ = writeln!(out, "{:.17e}", z.re);
        }
        out
    }
}

pub(crate) fn gather_bits(x: usize, sites: &[SiteId]) -> usize {
    sites.iter().enumerate().fold(0, |acc, (t, &s)| acc | ((x >> s) & 1) << t)
}

pub(crate) fn check_sites(sites: &[SiteId], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    for &s in sites {
        if s >= n {
            return Err(Error::SiteOutOfRange { site: s, n });
        }
        if std::mem::replace(&mut seen[s], true) {
            return Err(Error::DuplicateSite(s));
        }
    }
    Ok(())
}

/// Directed singlet (|↑_i↓_j⟩ − |↓_i↑_j⟩)/√2 on sites i, j with every other
/// site of the n-site register up. For n = 2 this is the singlet itself.
pub fn singlet_pair(i: SiteId, j: SiteId, n: usize) -> Result<StateVector> {
    if i == j {
        return Err(Error::SameSite(i));
    }
    check_sites(&[i, j], n)?;
    let mut s = StateVector::zero(n);
    s.amplitudes[1 << j] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    s.amplitudes[1 << i] = Complex64::new(-FRAC_1_SQRT_2, 0.0);
    Ok(s)
}

/// Tensor product of the covering's directed singlets.
pub fn covering_state(covering: &DimerCovering, n: usize) -> Result<StateVector> {
    let mut covered = vec![false; n];
    for d in covering.dimers() {
        if d.tail == d.head {
            return Err(Error::SameSite(d.tail));
        }
        for s in [d.tail, d.head] {
            if s >= n {
                return Err(Error::SiteOutOfRange { site: s, n });
            }
            if std::mem::replace(&mut covered[s], true) {
                return Err(Error::InvalidCovering { n, reason: format!("site {s} covered twice") });
            }
        }
    }
    if let Some(s) = covered.iter().position(|&c| !c) {
        return Err(Error::InvalidCovering { n, reason: format!("site {s} uncovered") });
    }

    let dimers = covering.dimers();
    let mut state = StateVector::zero(n);
    let magnitude = FRAC_1_SQRT_2.powi(dimers.len() as i32);
    // Choice bit k set: dimer k is |↓_tail ↑_head⟩ (sign −); clear: |↑_tail ↓_head⟩.
    for choice in 0usize..1 << dimers.len() {
        let mut index = 0usize;
        let mut sign = 1.0;
        for (k, d) in dimers.iter().enumerate() {
            if choice >> k & 1 == 1 {
                index |= 1 << d.tail;
                sign = -sign;
            } else {
                index |= 1 << d.head;
            }
        }
        state.amplitudes[index] = Complex64::new(sign * magnitude, 0.0);
    }
    Ok(state)
}

/// Normalized equal-weight superposition of every covering state.
pub fn rvb_state(lattice: &LadderLattice) -> Result<StateVector> {
    let coverings = enumerate_coverings(lattice);
    superpose(&coverings, lattice.n_sites())
}

pub fn superpose(coverings: &[DimerCovering], n: usize) -> Result<StateVector> {
    if coverings.is_empty() {
        return Err(Error::NoCoverings);
    }
    let mut sum = StateVector::zero(n);
    for c in coverings {
        sum.add_assign(&covering_state(c, n)?);
    }
    sum.normalized()
}

/// ⟨ψ|S²_tot|ψ⟩ with S_tot the sum of the site spin-1/2 operators.
///
/// S² = 3n/4 + 2 Σ_{i<j} S_i·S_j, and S_i·S_j acts on a basis state as
/// +1/4 when the spins agree, and as −1/4 plus 1/2 × (swap) when they differ.
pub fn total_spin_squared(state: &StateVector) -> f64 {
    let n = state.n_sites();
    let amps = state.amplitudes();
    let mut pair_sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let mut acc = 0.0;
            for (x, a) in amps.iter().enumerate() {
                if *a == ZERO {
                    continue;
                }
                let bi = x >> i & 1;
                let bj = x >> j & 1;
                if bi == bj {
                    acc += 0.25 * a.norm_sqr();
                } else {
                    let swapped = x ^ (1 << i) ^ (1 << j);
                    acc += -0.25 * a.norm_sqr() + 0.5 * (a.conj() * amps[swapped]).re;
                }
            }
            pair_sum += acc;
        }
    }
    0.75 * n as f64 * state.norm().powi(2) + 2.0 * pair_sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_ladder, Boundary, Dimer, WrapConvention};
    use approx::assert_abs_diff_eq;

    const H: f64 = FRAC_1_SQRT_2;

    #[test]
    fn singlet_amplitudes() {
        let s = singlet_pair(0, 1, 2).unwrap();
        let want = [0.0, -H, H, 0.0];
        for (z, w) in s.amplitudes().iter().zip(want) {
            assert_abs_diff_eq!(z.re, w, epsilon = 1e-15);
            assert_eq!(z.im, 0.0);
        }
        let swapped = singlet_pair(1, 0, 2).unwrap();
        for (a, b) in s.amplitudes().iter().zip(swapped.amplitudes()) {
            assert_abs_diff_eq!(a.re, -b.re, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(s.inner(&s).re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn singlet_rejects_bad_sites() {
        assert!(matches!(singlet_pair(1, 1, 2), Err(Error::SameSite(1))));
        assert!(matches!(singlet_pair(0, 3, 2), Err(Error::SiteOutOfRange { site: 3, n: 2 })));
    }

    #[test]
    fn single_dimer_covering_is_the_singlet() {
        let c = DimerCovering::from_dimers(vec![Dimer { tail: 0, head: 1 }]);
        assert_eq!(covering_state(&c, 2).unwrap(), singlet_pair(0, 1, 2).unwrap());
    }

    #[test]
    fn product_of_two_singlets() {
        let c = DimerCovering::from_dimers(vec![Dimer { tail: 0, head: 1 }, Dimer { tail: 2, head: 3 }]);
        let s = covering_state(&c, 4).unwrap();
        let nonzero: Vec<_> = s.amplitudes().iter().filter(|z| z.norm() > 0.0).collect();
        assert_eq!(nonzero.len(), 4);
        assert!(nonzero.iter().all(|z| (z.norm() - 0.5).abs() < 1e-15));
        assert_abs_diff_eq!(s.norm(), 1.0, epsilon = 1e-15);

        let reordered = DimerCovering::from_dimers(vec![Dimer { tail: 2, head: 3 }, Dimer { tail: 0, head: 1 }]);
        assert_eq!(covering_state(&reordered, 4).unwrap(), s);
    }

    #[test]
    fn covering_state_rejects_partial_cover() {
        let c = DimerCovering::from_dimers(vec![Dimer { tail: 0, head: 1 }]);
        assert!(matches!(covering_state(&c, 4), Err(Error::InvalidCovering { .. })));
        let twice = DimerCovering::from_dimers(vec![Dimer { tail: 0, head: 1 }, Dimer { tail: 1, head: 2 }]);
        assert!(covering_state(&twice, 4).is_err());
    }

    #[test]
    fn square_plaquette_by_hand() {
        // m = 2 open: sites 0,1 top row, 2,3 bottom. Rail coverings (0→1)(3→2),
        // step coverings (0→2)(3→1). Overlap of the two singlet products is 1/2,
        // so the norm² of their sum is 2 + 2·(1/2) = 3.
        let l = build_ladder(2, Boundary::Open).unwrap();
        let rails = DimerCovering::from_dimers(vec![Dimer { tail: 0, head: 1 }, Dimer { tail: 3, head: 2 }]);
        let steps = DimerCovering::from_dimers(vec![Dimer { tail: 0, head: 2 }, Dimer { tail: 3, head: 1 }]);
        let r = covering_state(&rails, 4).unwrap();
        let s = covering_state(&steps, 4).unwrap();
        assert_abs_diff_eq!(r.inner(&s).re, 0.5, epsilon = 1e-15);
        let psi = rvb_state(&l).unwrap();
        for x in 0..16 {
            let want = (r.amplitude(x) + s.amplitude(x)) / 3f64.sqrt();
            assert_abs_diff_eq!(psi.amplitude(x).re, want.re, epsilon = 1e-14);
        }
    }

    #[test]
    fn forbidden_odd_periodic_equals_open() {
        let p = LadderLattice::new(3, Boundary::Periodic, WrapConvention::Forbidden).unwrap();
        let o = build_ladder(3, Boundary::Open).unwrap();
        let a = rvb_state(&p).unwrap();
        let b = rvb_state(&o).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn rvb_states_are_real_singlets() {
        for m in 2..=6 {
            for b in [Boundary::Open, Boundary::Periodic] {
                let l = build_ladder(m, b).unwrap();
                let psi = rvb_state(&l).unwrap();
                assert_abs_diff_eq!(psi.norm(), 1.0, epsilon = 1e-12);
                assert!(psi.is_real(0.0));
                assert!(total_spin_squared(&psi).abs() < 1e-10, "m={m} {b}");
            }
        }
    }

    #[test]
    fn global_flip_sign() {
        for m in 2..=6 {
            let psi = rvb_state(&build_ladder(m, Boundary::Periodic).unwrap()).unwrap();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let flipped = psi.spin_flipped();
            for (a, b) in flipped.amplitudes().iter().zip(psi.amplitudes()) {
                assert!((a - b * sign).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn spin_squared_of_simple_states() {
        assert_abs_diff_eq!(total_spin_squared(&singlet_pair(0, 1, 2).unwrap()), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(total_spin_squared(&StateVector::basis(2, 0)), 2.0, epsilon = 1e-15);
        // Fully polarized n spins: S = n/2.
        assert_abs_diff_eq!(total_spin_squared(&StateVector::basis(5, 0)), 2.5 * 3.5, epsilon = 1e-12);
    }

    #[test]
    fn bipartition_matrix_layout() {
        let s = singlet_pair(0, 1, 2).unwrap();
        let m = s.bipartition_matrix(&[1]).unwrap();
        // Row bit = site 1, column bit = site 0.
        assert_abs_diff_eq!(m[(1, 0)].re, H, epsilon = 1e-15);
        assert_abs_diff_eq!(m[(0, 1)].re, -H, epsilon = 1e-15);
        assert!(matches!(s.bipartition_matrix(&[0, 0]), Err(Error::DuplicateSite(0))));
    }

    #[test]
    fn permutation_moves_bits() {
        let s = StateVector::basis(3, 0b001);
        let p = s.permute_sites(&[2, 0, 1]).unwrap();
        assert_eq!(p.amplitude(0b100).re, 1.0);
    }

    #[test]
    fn dump_has_header_and_one_line_per_amplitude() {
        let s = singlet_pair(0, 1, 2).unwrap();
        let text = s.dump_text("rvb n=2 boundary=open m=1");
        assert_eq!(text.lines().count(), 5);
        assert!(text.starts_with("rvb n=2"));
    }
}
