//! Singular values of small dense complex matrices.
//!
//! Householder bidiagonalization reduces the matrix to a real upper
//! bidiagonal form; the singular values are then the non-negative
//! eigenvalues of the associated zero-diagonal (Golub–Kahan) tridiagonal
//! matrix, found by implicit QL iteration.

use num_complex::Complex64;

use super::{CMatrix, ONE, ZERO};

/// Singular values in descending order (length `min(rows, cols)`).
pub fn singular_values(matrix: &CMatrix) -> Vec<f64> {
    let k = matrix.rows().min(matrix.cols());
    if k == 0 {
        return Vec::new();
    }
    let (d, e) = if matrix.rows() >= matrix.cols() {
        bidiagonalize(matrix.clone())
    } else {
        bidiagonalize(matrix.adjoint())
    };

    // Off-diagonal of the 2k × 2k Golub–Kahan matrix: d0, e0, d1, e1, …, d_{k-1}.
    let mut off = Vec::with_capacity(2 * k);
    for i in 0..k {
        off.push(d[i]);
        if i + 1 < k {
            off.push(e[i]);
        }
    }
    off.push(0.0);
    let mut diag = vec![0.0; 2 * k];
    tridiagonal_ql(&mut diag, &mut off);
    diag.sort_by(|a, b| b.total_cmp(a));
    diag.truncate(k);
    for s in &mut diag {
        *s = s.max(0.0);
    }
    diag
}

/// Largest singular value by power iteration on A†A, started from a fixed
/// vector. Independent of [`singular_values`]; used as a cross-check.
pub fn dominant_singular_value(matrix: &CMatrix) -> f64 {
    let cols = matrix.cols();
    if cols == 0 || matrix.rows() == 0 {
        return 0.0;
    }
    let adj = matrix.adjoint();
    // Deterministic but irregular start: structured starts such as ramps can
    // be exactly orthogonal to the dominant vector of a symmetric state.
    let mut x: Vec<Complex64> = (0..cols).map(|i| Complex64::new(scramble(2 * i), scramble(2 * i + 1))).collect();
    normalize(&mut x);
    let mut estimate = 0.0;
    for _ in 0..20_000 {
        let y = adj.mul_vec(&matrix.mul_vec(&x));
        // Rayleigh quotient of the Hermitian A†A.
        let rq: f64 = x.iter().zip(&y).map(|(a, b)| (a.conj() * b).re).sum();
        let norm = y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        x = y.into_iter().map(|z| z / norm).collect();
        if (rq - estimate).abs() <= 1e-15 * rq.abs().max(1e-300) {
            estimate = rq;
            break;
        }
        estimate = rq;
    }
    estimate.max(0.0).sqrt()
}

/// Value in [−0.5, 0.5) from a 64-bit integer mix of `i`.
fn scramble(i: usize) -> f64 {
    let mut z = (i as u64).wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    (z >> 11) as f64 / (1u64 << 53) as f64 - 0.5
}

fn normalize(x: &mut [Complex64]) {
    let n = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in x {
        *z /= n;
    }
}

/// Reflector H = I − τ v v† with v[0] = 1 such that H† x = β e₁, β real.
/// Returns (τ, β) and overwrites `x[1..]` with `v[1..]`.
fn householder(x: &mut [Complex64]) -> (Complex64, f64) {
    let alpha = x[0];
    let tail: f64 = x[1..].iter().map(|z| z.norm_sqr()).sum();
    if tail == 0.0 && alpha.im == 0.0 {
        return (ZERO, alpha.re);
    }
    let norm = (alpha.norm_sqr() + tail).sqrt();
    let beta = if alpha.re >= 0.0 { -norm } else { norm };
    let tau = (Complex64::new(beta, 0.0) - alpha) / beta;
    let scale = ONE / (alpha - beta);
    for z in &mut x[1..] {
        *z *= scale;
    }
    (tau, beta)
}

/// Reduce a tall (rows ≥ cols) matrix to real bidiagonal (diag, superdiag).
fn bidiagonalize(mut a: CMatrix) -> (Vec<f64>, Vec<f64>) {
    let (m, n) = (a.rows(), a.cols());
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n.saturating_sub(1)];
    let mut v = vec![ZERO; m.max(n)];

    for k in 0..n {
        // Left reflector on column k, rows k..m.
        let len = m - k;
        for i in 0..len {
            v[i] = a[(k + i, k)];
        }
        let (tau, beta) = householder(&mut v[..len]);
        v[0] = ONE;
        d[k] = beta;
        if tau != ZERO {
            // A ← H† A on the trailing block: A -= conj(τ) v (v† A).
            let ct = tau.conj();
            for j in k + 1..n {
                let mut w = ZERO;
                for i in 0..len {
                    w += v[i].conj() * a[(k + i, j)];
                }
                let w = ct * w;
                for i in 0..len {
                    a[(k + i, j)] -= v[i] * w;
                }
            }
        }

        if k + 1 < n {
            // Right reflector on row k, cols k+1..n, built from the conjugated row.
            let len = n - k - 1;
            for j in 0..len {
                v[j] = a[(k, k + 1 + j)].conj();
            }
            let (tau, beta) = householder(&mut v[..len]);
            v[0] = ONE;
            e[k] = beta;
            if tau != ZERO {
                // A ← A H on rows k+1..m: A -= (A v) τ v†.
                for i in k + 1..m {
                    let mut w = ZERO;
                    for j in 0..len {
                        w += a[(i, k + 1 + j)] * v[j];
                    }
                    let w = w * tau;
                    for j in 0..len {
                        a[(i, k + 1 + j)] -= w * v[j].conj();
                    }
                }
            }
        }
    }
    (d, e)
}

/// Eigenvalues of a real symmetric tridiagonal matrix by implicit QL with
/// Wilkinson shifts. `off[i]` couples rows i and i+1; `off` must have the
/// same length as `diag` (last entry unused). Eigenvalues land in `diag`.
fn tridiagonal_ql(diag: &mut [f64], off: &mut [f64]) {
    let n = diag.len();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = diag[m].abs() + diag[m + 1].abs();
                if off[m].abs() <= f64::EPSILON * dd || off[m] == 0.0 {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 200 {
                break;
            }
            let mut g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
            let mut r = g.hypot(1.0);
            g = diag[m] - diag[l] + off[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * off[i];
                let b = c * off[i];
                r = f.hypot(g);
                off[i + 1] = r;
                if r == 0.0 {
                    diag[i + 1] -= p;
                    off[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = diag[i + 1] - p;
                r = (diag[i] - g) * s + 2.0 * c * b;
                p = s * r;
                diag[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            diag[l] -= p;
            off[l] = g;
            off[m] = 0.0;
        }
    }
}
