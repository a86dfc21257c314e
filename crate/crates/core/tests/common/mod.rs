//! Shared test helpers: seeded generators and independent oracles.
//!
//! The oracles here deliberately avoid the library's eigensolver path so
//! they can stand as independent cross-checks.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use jacobi_bands::ComplexMatrix;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex(rng: &mut ChaCha8Rng, scale: f64) -> Complex64 {
    Complex64::new(
        scale * (2.0 * rng.gen::<f64>() - 1.0),
        scale * (2.0 * rng.gen::<f64>() - 1.0),
    )
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = random_complex(rng, scale);
        }
    }
    m
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexMatrix {
    random_matrix(rng, n, scale).hermitian_part()
}

/// Random PSD matrix G G*.
pub fn random_psd(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> ComplexMatrix {
    let g = random_matrix(rng, n, scale);
    &g * &g.adjoint()
}

fn det3(h: &ComplexMatrix) -> Complex64 {
    h[(0, 0)] * (h[(1, 1)] * h[(2, 2)] - h[(1, 2)] * h[(2, 1)])
        - h[(0, 1)] * (h[(1, 0)] * h[(2, 2)] - h[(1, 2)] * h[(2, 0)])
        + h[(0, 2)] * (h[(1, 0)] * h[(2, 1)] - h[(1, 1)] * h[(2, 0)])
}

/// Eigenvalues of a 3x3 Hermitian matrix by solving the characteristic cubic
/// in closed form (trigonometric method), ascending.
///
/// Independent of the Jacobi sweep: only the coefficients trace, second
/// elementary symmetric function, and determinant enter.
pub fn cubic_eigen_oracle(h: &ComplexMatrix) -> [f64; 3] {
    assert_eq!((h.rows(), h.cols()), (3, 3));
    let c2 = h.trace().re;
    let mut c1 = 0.0;
    for i in 0..3 {
        for j in (i + 1)..3 {
            c1 += h[(i, i)].re * h[(j, j)].re - h[(i, j)].norm_sqr();
        }
    }
    let det = det3(h);
    assert!(det.im.abs() < 1e-9 * (1.0 + det.norm()), "determinant should be real");
    let c0 = det.re;

    // depressed cubic t^3 + p t + q = 0 with lambda = t + c2/3
    let shift = c2 / 3.0;
    let p = c1 - c2 * c2 / 3.0;
    let q = -2.0 * c2.powi(3) / 27.0 + c1 * c2 / 3.0 - c0;
    let mut roots = if p >= -1e-300 {
        // p = -(sum of squared eigenvalue gaps)/3: vanishing p means a triple root
        [shift; 3]
    } else {
        let r = 2.0 * (-p / 3.0).sqrt();
        let arg = (3.0 * q / (p * r)).clamp(-1.0, 1.0);
        let phi = arg.acos();
        let mut out = [0.0; 3];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = r * ((phi - 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos() + shift;
        }
        out
    };
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}
