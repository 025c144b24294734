//! Dense Hermitian linear algebra on `nalgebra` matrices.
//!
//! Eigenvalues come from a cyclic complex Jacobi iteration, which is robust
//! for the block sizes used here (a few hundred at most).

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

const JACOBI_OFF_TOL: f64 = 1e-12;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Eigen-decomposition of a Hermitian matrix, eigenvalues in ascending order.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: CMatrix,
}

impl HermitianEigen {
    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    /// Rebuilds `V diag(f(λ)) V*`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let n = self.values.len();
        let mut out = CMatrix::zeros(n, n);
        for (k, &lam) in self.values.iter().enumerate() {
            let w = f(lam);
            if w == 0.0 {
                continue;
            }
            let v = self.vectors.column(k);
            for r in 0..n {
                let vr = v[r] * w;
                for c in 0..n {
                    out[(r, c)] += vr * v[c].conj();
                }
            }
        }
        out
    }
}

pub fn frobenius(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Largest entrywise deviation `|a_ij - conj(a_ji)|`.
pub fn max_asymmetry(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for r in 0..n {
        for c in r..n {
            worst = worst.max((a[(r, c)] - a[(c, r)].conj()).norm());
        }
    }
    worst
}

/// `(A + A*) / 2`.
pub fn hermitian_part(a: &CMatrix) -> CMatrix {
    (a + a.adjoint()).scale(0.5)
}

/// Cyclic Jacobi eigen-decomposition. The input is symmetrized first, so
/// tiny asymmetries from accumulated rounding are harmless.
pub fn hermitian_eigen(input: &CMatrix) -> HermitianEigen {
    assert!(input.is_square(), "eigen-decomposition needs a square matrix");
    let n = input.nrows();
    let mut a = hermitian_part(input);
    let mut v = CMatrix::identity(n, n);
    let scale = frobenius(&a).max(f64::MIN_POSITIVE);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|r| (0..n).filter(move |&c| c != r).map(move |c| (r, c)))
            .map(|(r, c)| a[(r, c)].norm_sqr())
            .sum::<f64>()
            .sqrt();
        if off <= JACOBI_OFF_TOL * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= f64::MIN_POSITIVE {
                    continue;
                }
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = 0.5 * (2.0 * mag).atan2(aqq - app);
                let (s, c) = theta.sin_cos();
                let phase = apq / mag;
                // J = diag(1, conj(phase)) * [[c, s], [-s, c]]
                let j_pp = Complex64::new(c, 0.0);
                let j_pq = Complex64::new(s, 0.0);
                let j_qp = -phase.conj() * s;
                let j_qq = phase.conj() * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * j_pp + akq * j_qp;
                    a[(k, q)] = akp * j_pq + akq * j_qq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = j_pp.conj() * apk + j_qp.conj() * aqk;
                    a[(q, k)] = j_pq.conj() * apk + j_qq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * j_pp + vkq * j_qp;
                    v[(k, q)] = vkp * j_pq + vkq * j_qq;
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&x, &y| a[(x, x)].re.total_cmp(&a[(y, y)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &v.column(src));
    }
    HermitianEigen { values, vectors }
}

/// Nearest positive-semidefinite matrix in Frobenius norm.
pub fn project_psd(a: &CMatrix) -> (CMatrix, HermitianEigen) {
    let eig = hermitian_eigen(a);
    (eig.reconstruct_with(|l| l.max(0.0)), eig)
}

/// PSD verdict with the crate-wide relative threshold convention.
pub fn psd_verdict(a: &CMatrix, tol: f64) -> (bool, f64, f64) {
    let threshold = tol * frobenius(a).max(1.0);
    let min = hermitian_eigen(a).min();
    (min >= -threshold, min, threshold)
}

pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
