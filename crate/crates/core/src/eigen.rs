//! Deterministic Hermitian eigensolver and the matrix functions built on it.
//!
//! The solver is a cyclic Jacobi iteration for complex Hermitian matrices:
//! fixed row-major sweep order, unitary 2x2 rotations, convergence when the
//! off-diagonal Frobenius mass drops below `tol * ||H||_F`. No pivot search,
//! no randomness, so identical input bits give identical output bits.

use num_complex::Complex64;

use crate::error::LinalgError;
use crate::matrix::ComplexMatrix;

/// Default relative convergence tolerance for the Jacobi sweep.
pub const EIG_TOL: f64 = 1e-12;

/// Inputs are accepted as Hermitian when `||H - H*||_max <= HERMITICITY_RELTOL * (1 + ||H||_max)`.
pub const HERMITICITY_RELTOL: f64 = 1e-10;

/// Eigenvalues of a nominally PSD matrix in `[-PSD_CLAMP_RELTOL * (1 + ||M||_max), 0)`
/// are treated as round-off and clamped to zero.
pub const PSD_CLAMP_RELTOL: f64 = 1e-10;

/// Hard cap on Jacobi sweeps; exceeding it is reported, never silent.
pub const MAX_SWEEPS: usize = 100;

/// Eigendecomposition H = V diag(values) V* with `values` ascending and V unitary.
#[derive(Debug, Clone)]
pub struct EigenSystem {
    values: Vec<f64>,
    vectors: ComplexMatrix,
}

impl EigenSystem {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Unitary matrix whose k-th column is the eigenvector of `values[k]`.
    pub fn vectors(&self) -> &ComplexMatrix {
        &self.vectors
    }
}

/// All eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix, tol: f64) -> Result<Vec<f64>, LinalgError> {
    let (values, _) = jacobi_diagonalize(h, tol, false)?;
    Ok(values)
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// The value list is identical to `hermitian_eigenvalues` on the same input:
/// both paths run the same rotation sequence.
pub fn hermitian_eigensystem(h: &ComplexMatrix, tol: f64) -> Result<EigenSystem, LinalgError> {
    let (values, vectors) = jacobi_diagonalize(h, tol, true)?;
    Ok(EigenSystem {
        values,
        vectors: vectors.expect("vectors were accumulated"),
    })
}

/// Principal square root of a Hermitian PSD matrix, via eigendecomposition.
///
/// Eigenvalues slightly negative from round-off are clamped to zero; anything
/// below the clamp window is an error.
pub fn psd_sqrt(m: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let sys = hermitian_eigensystem(m, EIG_TOL)?;
    let clamp = PSD_CLAMP_RELTOL * (1.0 + m.max_norm());
    let mut quartic_roots = Vec::with_capacity(sys.values.len());
    for &v in &sys.values {
        if v < -clamp {
            return Err(LinalgError::NotPositiveSemidefinite {
                min_eigenvalue: v,
                clamp,
            });
        }
        quartic_roots.push(v.max(0.0).powf(0.25));
    }
    // S = W W* with W = V diag(lambda^(1/4)), so S = V diag(sqrt(lambda)) V*
    // and the product form keeps S exactly Hermitian.
    let n = sys.values.len();
    let mut w = sys.vectors.clone();
    for j in 0..n {
        for i in 0..n {
            w[(i, j)] *= quartic_roots[j];
        }
    }
    Ok(&w * &w.adjoint())
}

/// Singular values of an arbitrary rectangular matrix, descending.
///
/// Their squares are the eigenvalues of A A* (ascending list reversed).
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    let gram = &(a * &a.adjoint());
    let mut vals = hermitian_eigenvalues(gram, EIG_TOL)?;
    vals.reverse();
    Ok(vals.into_iter().map(|v| v.max(0.0).sqrt()).collect())
}

/// Nuclear norm Tr((A A*)^(1/2)), the sum of singular values.
pub fn nuclear_norm(a: &ComplexMatrix) -> Result<f64, LinalgError> {
    Ok(singular_values(a)?.iter().sum())
}

/// Largest singular value; the spectral norm.
pub fn spectral_norm(a: &ComplexMatrix) -> Result<f64, LinalgError> {
    Ok(singular_values(a)?.first().copied().unwrap_or(0.0))
}

fn jacobi_diagonalize(
    input: &ComplexMatrix,
    tol: f64,
    accumulate: bool,
) -> Result<(Vec<f64>, Option<ComplexMatrix>), LinalgError> {
    if !input.is_square() {
        return Err(LinalgError::NonSquare {
            rows: input.rows(),
            cols: input.cols(),
        });
    }
    for i in 0..input.rows() {
        for j in 0..input.cols() {
            let z = input[(i, j)];
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(LinalgError::NonFiniteEntry { row: i, col: j });
            }
        }
    }
    let herm_tol = HERMITICITY_RELTOL * (1.0 + input.max_norm());
    let deviation = input.hermitian_deviation();
    if deviation > herm_tol {
        return Err(LinalgError::NotHermitian {
            deviation,
            tolerance: herm_tol,
        });
    }

    let n = input.rows();
    let mut h = input.hermitian_part();
    let mut v = accumulate.then(|| ComplexMatrix::identity(n));

    let threshold = tol.max(4.0 * f64::EPSILON) * h.frobenius_norm();
    let mut off = off_diagonal_mass(&h);
    let mut sweeps = 0;
    while off > threshold {
        if sweeps == MAX_SWEEPS {
            return Err(LinalgError::NoConvergence {
                sweeps,
                off_diagonal: off,
            });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate_pair(&mut h, v.as_mut(), p, q);
            }
        }
        sweeps += 1;
        off = off_diagonal_mass(&h);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        h[(i, i)]
            .re
            .partial_cmp(&h[(j, j)].re)
            .expect("diagonal entries are finite")
    });
    let values: Vec<f64> = order.iter().map(|&i| h[(i, i)].re).collect();
    let vectors = v.map(|v| {
        let mut sorted = ComplexMatrix::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            for i in 0..n {
                sorted[(i, dst)] = v[(i, src)];
            }
        }
        sorted
    });
    Ok((values, vectors))
}

fn off_diagonal_mass(h: &ComplexMatrix) -> f64 {
    let n = h.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += h[(i, j)].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// One complex Jacobi rotation zeroing h[p][q] (and h[q][p]).
///
/// The rotation is U = diag(1, e^{-i arg h_pq}) . G(c, s) restricted to the
/// (p, q) plane; the update is H <- U* H U, V <- V U.
fn rotate_pair(h: &mut ComplexMatrix, v: Option<&mut ComplexMatrix>, p: usize, q: usize) {
    let beta = h[(p, q)];
    let absb = beta.norm();
    if absb == 0.0 {
        return;
    }
    let phase = beta / absb;
    let tau = (h[(q, q)].re - h[(p, p)].re) / (2.0 * absb);
    // smaller root of t^2 + 2 tau t - 1 = 0; tau = +-inf degrades to t = 0
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    let n = h.rows();

    // columns p, q: H <- H U
    let phase_conj = phase.conj();
    for i in 0..n {
        let hp = h[(i, p)];
        let hq = h[(i, q)];
        h[(i, p)] = hp * c - hq * (phase_conj * s);
        h[(i, q)] = hp * s + hq * (phase_conj * c);
    }
    // rows p, q: H <- U* H
    for j in 0..n {
        let hp = h[(p, j)];
        let hq = h[(q, j)];
        h[(p, j)] = hp * c - hq * (phase * s);
        h[(q, j)] = hp * s + hq * (phase * c);
    }
    // the rotation zeroes this pair analytically; pin it against round-off
    h[(p, q)] = Complex64::new(0.0, 0.0);
    h[(q, p)] = Complex64::new(0.0, 0.0);
    h[(p, p)] = Complex64::new(h[(p, p)].re, 0.0);
    h[(q, q)] = Complex64::new(h[(q, q)].re, 0.0);

    if let Some(v) = v {
        for i in 0..n {
            let vp = v[(i, p)];
            let vq = v[(i, q)];
            v[(i, p)] = vp * c - vq * (phase_conj * s);
            v[(i, q)] = vp * s + vq * (phase_conj * c);
        }
    }
}
