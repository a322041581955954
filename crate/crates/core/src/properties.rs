//! Cross-module property tests over random ladder shapes.

use num_complex::Complex64;
use proptest::prelude::*;
use crate::lattice::{count_coverings, enumerate_coverings};
use crate::measures::{cloning_theta_sets, step_theta_limit, ThetaGrid};
use crate::reduced::{edge_werner_parameters, partial_trace, teleportation_fidelities};
use crate::state::{rvb_state, total_spin_squared};
use crate::{Boundary, LadderLattice, WrapConvention};

fn ladder() -> impl Strategy<Value = LadderLattice> {
    (2usize..=6, prop_oneof![Just(Boundary::Open), Just(Boundary::Periodic)], prop_oneof![Just(WrapConvention::Twisted), Just(WrapConvention::Forbidden)])
        .prop_map(|(m, b, w)| LadderLattice::new(m, b, w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn coverings_are_perfect_matchings(lattice in ladder()) {
        let coverings = enumerate_coverings(&lattice);
        prop_assert_eq!(coverings.len() as u64, count_coverings(&lattice));
        for c in &coverings {
            let mut hits = vec![0; lattice.n_sites()];
            for d in c.dimers() {
                hits[d.tail] += 1;
                hits[d.head] += 1;
            }
            prop_assert!(hits.iter().all(|&h| h == 1));
        }
    }

    #[test]
    fn rvb_state_is_real_singlet(lattice in ladder()) {
        let psi = rvb_state(&lattice).unwrap();
        prop_assert!(psi.is_real(1e-14));
        prop_assert!(total_spin_squared(&psi).abs() < 1e-10);
        let sign = if (lattice.n_sites() / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let flipped = psi.spin_flipped();
        let dev = flipped.amplitudes().iter().zip(psi.amplitudes()).map(|(a, b)| (a - b * sign).norm()).fold(0.0, f64::max);
        prop_assert!(dev < 1e-12);
    }

    #[test]
    fn every_bond_marginal_is_werner(lattice in ladder()) {
        let psi = rvb_state(&lattice).unwrap();
        let table = edge_werner_parameters(&lattice, &psi).unwrap();
        prop_assert!(table.max_residual < 1e-8);
        let f = teleportation_fidelities(table.p_rail, table.p_step);
        let p_avg = (2.0 * table.p_rail + table.p_step) / 3.0;
        prop_assert!((f.average - (p_avg + 1.0) / 2.0).abs() < 1e-12);
    }

    #[test]
    fn nested_partial_traces_agree(lattice in ladder(), pick in any::<prop::sample::Index>()) {
        let psi = rvb_state(&lattice).unwrap();
        let e = lattice.edges()[pick.index(lattice.edges().len())];
        let pair = partial_trace(&psi, &[e.a, e.b]).unwrap();
        let nested = pair.reduce_to(&[e.b]).unwrap();
        let direct = partial_trace(&psi, &[e.b]).unwrap();
        prop_assert!(nested.matrix.max_abs_diff(&direct.matrix) < 1e-12);
        let half = crate::numerics::CMatrix::identity(2).scale(Complex64::new(0.5, 0.0));
        prop_assert!(direct.matrix.max_abs_diff(&half) < 1e-10);
    }

    #[test]
    fn step_window_matches_closed_form(p_rail in -1.0f64 / 3.0..0.6, p_step in -1.0f64 / 3.0..1.0) {
        let rec = cloning_theta_sets(p_rail, p_step, ThetaGrid { points: 1001, tolerance: 1e-10 }).unwrap();
        let limit = step_theta_limit(p_step).unwrap();
        prop_assert!((rec.step_set.max().unwrap() - limit).abs() <= 1e-9);
    }
}
