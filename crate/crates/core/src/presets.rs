//! Canonical operator families: the sharpness example, the discrete
//! Schrodinger chain, and a seeded random generator for property sweeps.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::matrix::ComplexMatrix;
use crate::operator::PeriodicJacobiOperator;

/// Sharpness family: a_n = I_m, b_n = diag(4, 8, ..., 4m).
///
/// Diagonal blocks decouple it into m shifted scalar Schrodinger chains, so
/// the spectrum is exactly [2, 2 + 4m] and its measure 4m attains the bound.
pub fn make_sharpness_example(m: usize, p: usize) -> PeriodicJacobiOperator {
    assert!(m >= 1 && p >= 1, "block size and period must be positive");
    let mut onsite = ComplexMatrix::zeros(m, m);
    for k in 0..m {
        onsite[(k, k)] = Complex64::new(4.0 * (k + 1) as f64, 0.0);
    }
    PeriodicJacobiOperator::new(
        p,
        m,
        vec![ComplexMatrix::identity(m); p],
        vec![onsite; p],
    )
}

/// Discrete Schrodinger chain: m = 1, a_n = 1, b_n = 0; spectrum [-2, 2].
pub fn make_discrete_schrodinger(p: usize) -> PeriodicJacobiOperator {
    assert!(p >= 1, "period must be positive");
    PeriodicJacobiOperator::new(
        p,
        1,
        vec![ComplexMatrix::scalar(Complex64::new(1.0, 0.0)); p],
        vec![ComplexMatrix::scalar(Complex64::new(0.0, 0.0)); p],
    )
}

/// Seeded random operator: coupling entries uniform in the complex disk of
/// radius `scale`, on-site blocks the Hermitian part of such a draw.
/// Identical seeds give identical operators.
pub fn random_operator(seed: u64, p: usize, m: usize, scale: f64) -> PeriodicJacobiOperator {
    assert!(p >= 1 && m >= 1, "block size and period must be positive");
    assert!(scale > 0.0, "scale must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let disk_entry = |rng: &mut ChaCha8Rng| {
        let r = scale * rng.gen::<f64>().sqrt();
        let phi = std::f64::consts::TAU * rng.gen::<f64>();
        Complex64::from_polar(r, phi)
    };
    let random_matrix = |rng: &mut ChaCha8Rng| {
        let mut blk = ComplexMatrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                blk[(i, j)] = disk_entry(rng);
            }
        }
        blk
    };
    let a: Vec<ComplexMatrix> = (0..p).map(|_| random_matrix(&mut rng)).collect();
    let b: Vec<ComplexMatrix> = (0..p)
        .map(|_| random_matrix(&mut rng).hermitian_part())
        .collect();
    PeriodicJacobiOperator::new(p, m, a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sharpness_minimal_case() {
        let op = make_sharpness_example(1, 1);
        assert!(op.validate().is_valid());
        assert_eq!(op.couplings()[0][(0, 0)].re, 1.0);
        assert_eq!(op.onsites()[0][(0, 0)].re, 4.0);
    }

    #[test]
    fn sharpness_block_diagonal() {
        let op = make_sharpness_example(3, 2);
        assert!(op.validate().is_valid());
        assert_eq!(op.period(), 2);
        assert_eq!(op.block_size(), 3);
        let b = &op.onsites()[1];
        assert_eq!(b[(0, 0)].re, 4.0);
        assert_eq!(b[(1, 1)].re, 8.0);
        assert_eq!(b[(2, 2)].re, 12.0);
    }

    #[test]
    fn schrodinger_shape() {
        let op = make_discrete_schrodinger(5);
        assert!(op.validate().is_valid());
        assert_eq!(op.period(), 5);
        assert_eq!(op.block_size(), 1);
    }

    #[test]
    fn random_operator_deterministic_and_valid() {
        let a = random_operator(42, 4, 2, 2.0);
        let b = random_operator(42, 4, 2, 2.0);
        assert_eq!(a, b);
        for seed in 0..100 {
            let op = random_operator(seed, 1 + (seed as usize % 5), 1 + (seed as usize % 3), 2.0);
            assert!(op.validate().is_valid(), "seed {seed}");
        }
    }

    #[test]
    fn random_operator_respects_scale() {
        let op = random_operator(7, 3, 3, 0.5);
        for blk in op.couplings() {
            assert!(blk.max_norm() <= 0.5 + 1e-12);
        }
    }
}
