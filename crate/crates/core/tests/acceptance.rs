//! Acceptance criteria for the periodic N = 6, 8, 10, 12 sweep and the
//! small-ladder oracle comparison. Each test writes one PASS/FAIL line to
//! stderr (unbuffered, so it shows even when output capture is on).

use std::io::Write;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rvb_ladder::lattice::{count_coverings, enumerate_coverings};
use rvb_ladder::measures::{ggm, rail_bound, step_bound, steps_intact};
use rvb_ladder::numerics::{poly_fit, FitModel};
use rvb_ladder::reduced::edge_werner_parameters;
use rvb_ladder::state::{rvb_state, total_spin_squared};
use rvb_ladder::sweep::{run_sweep, EntanglementReport, RunConfig, THETA_LINEAR_REFERENCE, THETA_QUADRATIC_REFERENCE};
use rvb_ladder::{Boundary, LadderLattice, WrapConvention};

const SIZES: [usize; 4] = [6, 8, 10, 12];
const TREND_MARGIN: f64 = 1e-6;

fn report_line(id: &str, passed: bool, detail: &str) {
    let verdict = if passed { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stderr(), "[{verdict}] {id}: {detail}");
}

fn check(id: &str, passed: bool, detail: String) {
    report_line(id, passed, &detail);
    assert!(passed, "{id}: {detail}");
}

struct Sweep {
    report: EntanglementReport,
    elapsed: Duration,
}

fn sweep() -> &'static Sweep {
    static SWEEP: OnceLock<Sweep> = OnceLock::new();
    SWEEP.get_or_init(|| {
        let start = Instant::now();
        let report = run_sweep(&RunConfig::default()).expect("default sweep runs");
        Sweep { report, elapsed: start.elapsed() }
    })
}

fn column(f: impl Fn(&rvb_ladder::sweep::SizeReport) -> f64) -> Vec<f64> {
    let report = &sweep().report;
    SIZES.iter().map(|&n| report.row(n).map_or(f64::NAN, &f)).collect()
}

fn strictly(values: &[f64], decreasing: bool) -> bool {
    values.windows(2).all(|w| if decreasing { w[0] - w[1] > TREND_MARGIN } else { w[1] - w[0] > TREND_MARGIN })
}

fn fmt(values: &[f64]) -> String {
    values.iter().map(|v| format!("{v:.6}")).collect::<Vec<_>>().join(", ")
}

#[test]
fn c0_all_sizes_succeed() {
    let s = sweep();
    let failures: Vec<String> = s.report.failures.iter().map(|f| format!("m={}: {}", f.m, f.reason)).collect();
    check("sweep", failures.is_empty(), format!("N = 6, 8, 10, 12 ran; failures {failures:?}"));
}

#[test]
fn c1_runtime_under_thirty_seconds() {
    let s = sweep();
    check("C1 runtime", s.elapsed < Duration::from_secs(30), format!("default sweep took {:.2?}", s.elapsed));
}

#[test]
fn c1_rail_parameter_decreasing() {
    let v = column(|r| r.p_rail());
    check("C1 p_r strictly decreasing", strictly(&v, true), fmt(&v));
}

#[test]
fn c1_step_parameter_increasing() {
    let v = column(|r| r.p_step());
    check("C1 p_s strictly increasing", strictly(&v, false), fmt(&v));
}

#[test]
fn c1_average_parameter_decreasing() {
    let v = column(|r| r.p_avg);
    check("C1 p_avg strictly decreasing", strictly(&v, true), fmt(&v));
}

#[test]
fn c1_ggm_decreasing() {
    let v = column(|r| r.ggm.value);
    check("C1 GGM strictly decreasing", strictly(&v, true), fmt(&v));
}

#[test]
fn c2_marginals_have_werner_form() {
    let report = &sweep().report;
    let mut worst_pair: f64 = 0.0;
    let mut worst_site: f64 = 0.0;
    for &n in &SIZES {
        let row = report.row(n).expect("size present");
        worst_pair = worst_pair.max(row.werner.max_residual);
        for site in 0..n {
            worst_site = worst_site.max(one_site_deviation(row.state.amplitudes(), site));
        }
    }
    check(
        "C2 Werner form",
        worst_pair < 1e-8 && worst_site <= 1e-10,
        format!("max two-site residual {worst_pair:.2e}, max one-site deviation from I/2 {worst_site:.2e}"),
    );
}

/// max |ρ_site − I/2| computed straight from the amplitudes.
fn one_site_deviation(psi: &[Complex64], site: usize) -> f64 {
    let bit = 1 << site;
    let (mut up, mut down, mut coherence) = (0.0, 0.0, Complex64::new(0.0, 0.0));
    for (x, a) in psi.iter().enumerate() {
        if x & bit == 0 {
            up += a.norm_sqr();
            coherence += a * psi[x | bit].conj();
        } else {
            down += a.norm_sqr();
        }
    }
    (up - 0.5f64).abs().max((down - 0.5f64).abs()).max(coherence.norm())
}

#[test]
fn c3_total_singlet() {
    let report = &sweep().report;
    let mut worst: f64 = 0.0;
    for &n in &SIZES {
        let row = report.row(n).expect("size present");
        worst = worst.max(row.spin_squared.abs()).max(spin_squared_by_swaps(row.state.amplitudes(), n).abs());
    }
    check("C3 total spin zero", worst < 1e-10, format!("max |<S^2>| {worst:.2e}"));
}

/// ⟨S²⟩ = 3n/4 + Σ_{i≠j} (⟨P_ij⟩/2 − 1/4), P_ij the swap of sites i and j.
fn spin_squared_by_swaps(psi: &[Complex64], n: usize) -> f64 {
    let mut total = 0.75 * n as f64;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let swap: Complex64 = psi
                .iter()
                .enumerate()
                .map(|(x, a)| {
                    let y = if (x >> i & 1) != (x >> j & 1) { x ^ (1 << i) ^ (1 << j) } else { x };
                    a.conj() * psi[y]
                })
                .sum();
            total += swap.re / 2.0 - 0.25;
        }
    }
    total
}

#[test]
fn c4_monogamy_containment() {
    let report = &sweep().report;
    let mut ok = true;
    let mut parts = Vec::new();
    for &n in &SIZES {
        let row = report.row(n).expect("size present");
        let m = &row.monogamy;
        ok &= m.satisfied && m.lhs <= 1.0 + 1e-9 && row.p_rail() <= 0.8;
        parts.push(format!("N={n} lhs {:.4} clamped {:.4} p_r {:.4}", m.lhs, m.clamped_lhs, row.p_rail()));
    }
    check("C4 monogamy", ok, parts.join("; "));
}

#[test]
fn c5_cloning_containment() {
    let report = &sweep().report;
    let mut ok = true;
    let mut parts = Vec::new();
    for &n in &SIZES {
        let row = report.row(n).expect("size present");
        let (pr, ps) = (row.p_rail(), row.p_step());
        let witness = row.theta_max();
        // The witness angle must satisfy both bounds up to the θ tolerance.
        let tol = 1e-8;
        let holds = witness.is_some_and(|t| (0.0..=std::f64::consts::FRAC_PI_2).contains(&t) && pr <= rail_bound(t) + tol && ps <= step_bound(t) + tol);
        ok &= holds;
        parts.push(format!("N={n} theta {}", witness.map_or("none".into(), |t| format!("{t:.6}"))));
    }
    check("C5 cloning containment", ok, parts.join("; "));
}

#[test]
fn c6_theta_max_decreasing() {
    let v = column(|r| r.theta_max().unwrap_or(f64::NAN));
    check("C6 theta_max strictly decreasing", strictly(&v, true), fmt(&v));
}

#[test]
fn c6_theta_max_negative_slope() {
    let fits = sweep().report.fits.as_ref().expect("fits present");
    let slope = fits.theta_linear.coefficients[1];
    check("C6 linear slope negative", slope < 0.0, format!("theta_max ≈ {:.6} + {slope:.6} N", fits.theta_linear.coefficients[0]));
}

#[test]
fn c6_round_trip_recovers_reference_models() {
    let ns = SIZES.map(|n| n as f64);
    let mut ok = true;
    let mut parts = Vec::new();
    for (model, reference, power) in [(FitModel::Linear, THETA_LINEAR_REFERENCE, 1), (FitModel::QuadraticNoLinearTerm, THETA_QUADRATIC_REFERENCE, 2)] {
        let ys: Vec<f64> = ns.iter().map(|&n| reference[0] + reference[1] * n.powi(power)).collect();
        let fit = poly_fit(&ns, &ys, model).unwrap();
        let rel = fit.coefficients.iter().zip(reference).map(|(c, r)| ((c - r) / r).abs()).fold(0.0, f64::max);
        ok &= fit.mean_square_error < 1e-12 && rel < 1e-9;
        parts.push(format!("{model}: {:?} mse {:.1e}", fit.coefficients, fit.mean_square_error));
    }
    check("C6 round trip", ok, parts.join("; "));
}

#[test]
fn c6_coefficients_loosely_agree() {
    let fits = sweep().report.fits.as_ref().expect("fits present");
    let lin = fits.theta_linear_vs_reference.max_relative_deviation();
    let quad = fits.theta_quadratic_vs_reference.max_relative_deviation();
    check(
        "C6 coefficients within 25%",
        lin <= 0.25 && quad <= 0.25,
        format!(
            "linear {:?} (max rel dev {lin:.3}), quadratic {:?} (max rel dev {quad:.3})",
            fits.theta_linear.coefficients, fits.theta_quadratic.coefficients
        ),
    );
}

#[test]
fn pr_vs_ps_fit_is_reported() {
    let fits = sweep().report.fits.as_ref().expect("fits present");
    let cmp = &fits.pr_vs_ps_vs_reference;
    let _ = writeln!(
        std::io::stderr(),
        "[INFO] p_r vs p_s quadratic {:?} against reference {:?}, max relative deviation {:.2}",
        cmp.fitted,
        cmp.reference,
        cmp.max_relative_deviation()
    );
    assert_eq!(cmp.fitted.len(), 3);
}

#[test]
fn c8_maximizing_split_keeps_steps_whole() {
    let report = &sweep().report;
    let mut ok = true;
    let mut parts = Vec::new();
    for &n in &SIZES {
        let row = report.row(n).expect("size present");
        let whole = steps_intact(&row.lattice, row.reported_split);
        ok &= whole;
        parts.push(format!(
            "N={n} split {:#x} ({} ties, lexicographic first {:#x})",
            row.reported_split,
            row.ggm.tied_maximizers.len(),
            row.ggm.maximizing_bipartition
        ));
    }
    check("C8 column-aligned GGM split", ok, parts.join("; "));
}

// Brute-force oracle for open 2×m ladders, written without the library's
// lattice, state, or linear-algebra code.

struct Oracle {
    n: usize,
    coverings: usize,
    psi: Vec<f64>,
    /// (a, b, p) for every nearest-neighbour pair.
    edges: Vec<(usize, usize, f64)>,
    ggm: f64,
}

fn oracle(m: usize) -> Oracle {
    let n = 2 * m;
    let site = |r: usize, c: usize| r * m + c;
    let mut edges = Vec::new();
    for r in 0..2 {
        for c in 0..m - 1 {
            edges.push((site(r, c), site(r, c + 1)));
        }
    }
    for c in 0..m {
        edges.push((site(0, c), site(1, c)));
    }
    // Orient every bond from its even-parity end.
    let oriented: Vec<(usize, usize)> = edges
        .iter()
        .map(|&(u, v)| if (u / m + u % m) % 2 == 0 { (u, v) } else { (v, u) })
        .collect();

    let mut psi = vec![0.0; 1 << n];
    let mut coverings = 0;
    for subset in 0u32..1 << edges.len() {
        if subset.count_ones() as usize != n / 2 {
            continue;
        }
        let chosen: Vec<(usize, usize)> = (0..edges.len()).filter(|k| subset >> k & 1 == 1).map(|k| oriented[k]).collect();
        let mut seen = 0usize;
        let mut disjoint = true;
        for &(t, h) in &chosen {
            disjoint &= seen & (1 << t | 1 << h) == 0;
            seen |= 1 << t | 1 << h;
        }
        if !disjoint || seen != (1 << n) - 1 {
            continue;
        }
        coverings += 1;
        for (x, amp) in psi.iter_mut().enumerate() {
            let mut term = 1.0;
            for &(t, h) in &chosen {
                term *= match (x >> t & 1, x >> h & 1) {
                    (0, 1) => std::f64::consts::FRAC_1_SQRT_2,
                    (1, 0) => -std::f64::consts::FRAC_1_SQRT_2,
                    _ => 0.0,
                };
            }
            *amp += term;
        }
    }
    let norm = psi.iter().map(|a| a * a).sum::<f64>().sqrt();
    psi.iter_mut().for_each(|a| *a /= norm);

    let edges = edges
        .iter()
        .map(|&(a, b)| {
            // Singlet fraction summed over environment configurations.
            let mut fraction = 0.0;
            for x in 0..1usize << n {
                if x >> a & 1 == 0 && x >> b & 1 == 1 {
                    let flipped = x ^ (1 << a) ^ (1 << b);
                    let overlap = (psi[x] - psi[flipped]) * std::f64::consts::FRAC_1_SQRT_2;
                    fraction += overlap * overlap;
                }
            }
            (a, b, (4.0 * fraction - 1.0) / 3.0)
        })
        .collect();

    let mut best: f64 = 0.0;
    for mask in (1usize..(1 << n) - 1).filter(|m| m & 1 == 1) {
        let side_a: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 1).collect();
        let side_b: Vec<usize> = (0..n).filter(|k| mask >> k & 1 == 0).collect();
        let gather = |x: usize, sites: &[usize]| sites.iter().enumerate().fold(0, |acc, (t, &s)| acc | (x >> s & 1) << t);
        let mut mat = DMatrix::<Complex64>::zeros(1 << side_a.len(), 1 << side_b.len());
        for (x, &a) in psi.iter().enumerate() {
            mat[(gather(x, &side_a), gather(x, &side_b))] = Complex64::new(a, 0.0);
        }
        let sigma = mat.singular_values().max();
        best = best.max(sigma * sigma);
    }
    Oracle { n, coverings, psi, edges, ggm: 1.0 - best }
}

#[test]
fn c7_pipeline_matches_brute_force_oracle() {
    let mut worst: f64 = 0.0;
    let mut ok = true;
    let mut parts = Vec::new();
    for m in [2, 3] {
        let o = oracle(m);
        let lattice = LadderLattice::new(m, Boundary::Open, WrapConvention::default()).unwrap();
        let count_ok = enumerate_coverings(&lattice).len() == o.coverings && count_coverings(&lattice) as usize == o.coverings;

        let state = rvb_state(&lattice).unwrap();
        let amp_dev = state.amplitudes().iter().zip(&o.psi).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);

        let table = edge_werner_parameters(&lattice, &state).unwrap();
        let mut p_dev: f64 = 0.0;
        for &(a, b, p) in &o.edges {
            match table.fit_for(a, b) {
                Some(fit) => p_dev = p_dev.max((fit.p - p).abs()),
                None => p_dev = f64::INFINITY,
            }
        }
        let edges_ok = table.fits.len() == o.edges.len();

        let ggm_dev = (ggm(&state).unwrap().value - o.ggm).abs();
        let spin = total_spin_squared(&state).abs();

        worst = worst.max(amp_dev).max(p_dev).max(ggm_dev);
        ok &= count_ok && edges_ok && amp_dev <= 1e-10 && p_dev <= 1e-10 && ggm_dev <= 1e-10 && spin < 1e-10;
        parts.push(format!(
            "N={} coverings {} (match {count_ok}), amplitude dev {amp_dev:.1e}, p dev {p_dev:.1e}, GGM dev {ggm_dev:.1e}",
            o.n, o.coverings
        ));
    }
    check("C7 oracle equivalence", ok && worst <= 1e-10, parts.join("; "));
}
