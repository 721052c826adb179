//! Dense complex linear algebra: matrix exponential via scaling-and-squaring
//! with Pade(13) approximation (Higham 2005), Hermitian eigenvalues via cyclic
//! Jacobi rotations, and small norm helpers.

use ndarray::{s, Array2};
use num_complex::Complex64;

/// Helper: create Complex64 from f64.
#[inline]
pub fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// Compute the matrix exponential exp(A) using scaling-and-squaring
/// with Pade(13) approximation.
///
/// # Panics
/// Panics if `a` is not square.
pub fn matrix_exp(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix_exp requires a square matrix");

    if n == 0 {
        return Array2::zeros((0, 0));
    }
    if n == 1 {
        let mut result = Array2::zeros((1, 1));
        result[[0, 0]] = a[[0, 0]].exp();
        return result;
    }

    // Choose scaling parameter s such that ||A/2^s|| < theta_13
    // theta_13 = 5.37 (Higham Table 10.2)
    let norm = matrix_1_norm(a);
    let theta_13: f64 = 5.37;
    let s = if norm > theta_13 {
        (norm / theta_13).log2().ceil() as u32
    } else {
        0
    };

    // Scale: A_s = A / 2^s
    let scale = Complex64::new(1.0 / (1u64 << s) as f64, 0.0);
    let a_scaled = a * scale;

    let result = pade13(&a_scaled);

    // Square s times: exp(A) = (exp(A/2^s))^(2^s)
    square_repeatedly(result, s)
}

/// Pade(13,13) approximation coefficients (Higham 2005, eq. 10.33).
const PADE_COEFFS: [f64; 14] = [
    1.0,
    0.5,
    0.12,
    1.833_333_333_333_333_4e-2,
    1.992_753_623_188_405_8e-3,
    1.630_434_782_608_696e-4,
    1.035_196_687_401_6e-5,
    5.175_983_437_008_01e-7,
    2.043_151_356_652_5e-8,
    6.306_022_705_717_593e-10,
    1.483_770_048_404_14e-11,
    2.529_153_491_597_966e-13,
    2.810_170_546_219_962_4e-15,
    1.544_049_750_670_309e-17,
];

/// Compute Pade(13,13) approximation of exp(A).
fn pade13(a: &Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    let eye = Array2::from_diag_elem(n, Complex64::new(1.0, 0.0));

    let a2 = a.dot(a);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);

    // U = A * ((b13*A6 + b11*A4 + b9*A2)*A6 + b7*A6 + b5*A4 + b3*A2 + b1*I)
    let w1 = &a6 * c(PADE_COEFFS[13]) + &a4 * c(PADE_COEFFS[11]) + &a2 * c(PADE_COEFFS[9]);
    let w2 = w1.dot(&a6)
        + &a6 * c(PADE_COEFFS[7])
        + &a4 * c(PADE_COEFFS[5])
        + &a2 * c(PADE_COEFFS[3])
        + &eye * c(PADE_COEFFS[1]);
    let u = a.dot(&w2);

    // V = (b12*A6 + b10*A4 + b8*A2)*A6 + b6*A6 + b4*A4 + b2*A2 + b0*I
    let v1 = &a6 * c(PADE_COEFFS[12]) + &a4 * c(PADE_COEFFS[10]) + &a2 * c(PADE_COEFFS[8]);
    let v = v1.dot(&a6)
        + &a6 * c(PADE_COEFFS[6])
        + &a4 * c(PADE_COEFFS[4])
        + &a2 * c(PADE_COEFFS[2])
        + &eye * c(PADE_COEFFS[0]);

    // exp(A) ~ (V - U)^{-1} * (V + U)
    let numerator = &v + &u;
    let denominator = &v - &u;
    solve_linear(denominator, numerator)
}

/// Solve A * X = B for X using Gaussian elimination with partial pivoting.
pub fn solve_linear(a: Array2<Complex64>, b: Array2<Complex64>) -> Array2<Complex64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    assert_eq!(n, b.nrows());
    let m = b.ncols();

    // Augmented matrix [A | B]
    let mut aug = Array2::zeros((n, n + m));
    aug.slice_mut(s![.., ..n]).assign(&a);
    aug.slice_mut(s![.., n..]).assign(&b);

    // Forward elimination with partial pivoting
    for col in 0..n {
        let mut max_val = 0.0;
        let mut max_row = col;
        for row in col..n {
            let val = aug[[row, col]].norm();
            if val > max_val {
                max_val = val;
                max_row = row;
            }
        }

        if max_row != col {
            for j in 0..(n + m) {
                let tmp = aug[[col, j]];
                aug[[col, j]] = aug[[max_row, j]];
                aug[[max_row, j]] = tmp;
            }
        }

        let pivot = aug[[col, col]];
        if pivot.norm() < 1e-15 {
            // Near-singular: return identity as fallback
            return Array2::from_diag_elem(n, Complex64::new(1.0, 0.0));
        }

        for row in (col + 1)..n {
            let factor = aug[[row, col]] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for j in col..(n + m) {
                let val = aug[[col, j]];
                aug[[row, j]] -= factor * val;
            }
        }
    }

    // Back substitution
    let mut x = Array2::<Complex64>::zeros((n, m));
    for col in (0..n).rev() {
        let pivot = aug[[col, col]];
        for j in 0..m {
            let mut sum = aug[[col, n + j]];
            for k in (col + 1)..n {
                sum -= aug[[col, k]] * x[[k, j]];
            }
            x[[col, j]] = sum / pivot;
        }
    }
    x
}

/// Square a matrix s times: M^(2^s)
fn square_repeatedly(mut m: Array2<Complex64>, s: u32) -> Array2<Complex64> {
    for _ in 0..s {
        let m2 = m.dot(&m);
        m = m2;
    }
    m
}

/// 1-norm of a complex matrix: max column sum of absolute values.
pub fn matrix_1_norm(a: &Array2<Complex64>) -> f64 {
    let n = a.ncols();
    let mut max_sum = 0.0f64;
    for j in 0..n {
        let mut col_sum = 0.0;
        for i in 0..a.nrows() {
            col_sum += a[[i, j]].norm();
        }
        max_sum = max_sum.max(col_sum);
    }
    max_sum
}

/// Max-norm: largest absolute entry.
pub fn max_abs(a: &Array2<Complex64>) -> f64 {
    a.iter().fold(0.0f64, |m, x| m.max(x.norm()))
}

/// Conjugate transpose.
pub fn dagger(a: &Array2<Complex64>) -> Array2<Complex64> {
    a.t().mapv(|x| x.conj())
}

/// Max-norm of (U^dagger U - I); ~1e-14 for unitary U.
pub fn unitarity_defect(u: &Array2<Complex64>) -> f64 {
    let n = u.nrows();
    let mut p = dagger(u).dot(u);
    for i in 0..n {
        p[[i, i]] -= c(1.0);
    }
    max_abs(&p)
}

/// Max-norm of (A - A^dagger); 0 for Hermitian A.
pub fn hermiticity_defect(a: &Array2<Complex64>) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[[i, j]] - a[[j, i]].conj()).norm());
        }
    }
    worst
}

/// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, ascending.
///
/// Each sweep eliminates every off-diagonal pair (p, q) with a unitary
/// 2x2 rotation; convergence is quadratic once the off-diagonal mass is
/// small. Only eigenvalues are accumulated (no eigenvectors).
///
/// # Panics
/// Panics if `a` is not square. The input is assumed Hermitian; only the
/// upper triangle and the real diagonal are trusted.
pub fn hermitian_eigenvalues(a: &Array2<Complex64>) -> Vec<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "hermitian_eigenvalues requires a square matrix");
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![a[[0, 0]].re];
    }

    let mut m = a.clone();
    // Symmetrize defensively so tiny Hermiticity violations cannot bias sweeps.
    for i in 0..n {
        m[[i, i]] = c(m[[i, i]].re);
        for j in (i + 1)..n {
            let avg = (m[[i, j]] + m[[j, i]].conj()) * c(0.5);
            m[[i, j]] = avg;
            m[[j, i]] = avg.conj();
        }
    }

    let scale = max_abs(&m).max(1e-300);
    let tol = 1e-15 * scale;

    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m[[p, q]].norm());
            }
        }
        if off <= tol {
            break;
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let beta = m[[p, q]];
                let b = beta.norm();
                if b <= tol * 1e-2 {
                    continue;
                }
                // Factor out the phase so the 2x2 block is real symmetric:
                // M = D [[alpha, b], [b, gamma]] D^dagger with D = diag(1, u*).
                let u = beta / c(b);
                let alpha = m[[p, p]].re;
                let gamma = m[[q, q]].re;
                let tau = (gamma - alpha) / (2.0 * b);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let cth = 1.0 / (1.0 + t * t).sqrt();
                let sth = t * cth;

                // Columns of the rotation G (identity elsewhere):
                //   G[p,p] = c, G[p,q] = s, G[q,p] = -u* s, G[q,q] = u* c
                let gpp = c(cth);
                let gpq = c(sth);
                let gqp = -u.conj() * c(sth);
                let gqq = u.conj() * c(cth);

                // M <- G^dagger M G, exploiting Hermiticity.
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let mip = m[[i, p]];
                    let miq = m[[i, q]];
                    let new_ip = mip * gpp + miq * gqp;
                    let new_iq = mip * gpq + miq * gqq;
                    m[[i, p]] = new_ip;
                    m[[p, i]] = new_ip.conj();
                    m[[i, q]] = new_iq;
                    m[[q, i]] = new_iq.conj();
                }
                let new_pp = alpha - t * b;
                let new_qq = gamma + t * b;
                m[[p, p]] = c(new_pp);
                m[[q, q]] = c(new_qq);
                m[[p, q]] = c(0.0);
                m[[q, p]] = c(0.0);
            }
        }
    }

    let mut evals: Vec<f64> = (0..n).map(|i| m[[i, i]].re).collect();
    evals.sort_by(|x, y| x.partial_cmp(y).unwrap());
    evals
}
