//! Periodic block Jacobi operators and their Floquet fibers.
//!
//! An operator acts on square-summable block sequences as
//! `(J y)_n = a_n y_{n+1} + b_n y_n + a_{n-1}* y_{n-1}` with p-periodic m x m
//! coefficient blocks. Its spectrum is the union over x in [0, 2pi] of the
//! spectra of the pm x pm Hermitian fiber K(x), block tridiagonal with
//! phase-twisted corner blocks.

use std::fmt;

use num_complex::Complex64;

use crate::eigen::{nuclear_norm, psd_sqrt, HERMITICITY_RELTOL};
use crate::error::SpectrumError;
use crate::matrix::ComplexMatrix;

/// p-periodic block Jacobi operator: couplings `a[0..p]`, on-site blocks `b[0..p]`.
///
/// Storage is 0-based: `a[n]` couples lattice site n to n+1, and `a[p-1]` is
/// the block that wraps around the fiber (the corner of K(x)).
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodicJacobiOperator {
    p: usize,
    m: usize,
    a: Vec<ComplexMatrix>,
    b: Vec<ComplexMatrix>,
}

/// A single invariant violation found by [`PeriodicJacobiOperator::validate`].
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    ZeroPeriod,
    ZeroBlockSize,
    CouplingCount { found: usize, expected: usize },
    OnsiteCount { found: usize, expected: usize },
    CouplingDimension { index: usize, rows: usize, cols: usize, expected: usize },
    OnsiteDimension { index: usize, rows: usize, cols: usize, expected: usize },
    OnsiteNotHermitian { index: usize, deviation: f64, tolerance: f64 },
    NonFiniteCoupling { index: usize },
    NonFiniteOnsite { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroPeriod => write!(f, "period p must be positive"),
            Violation::ZeroBlockSize => write!(f, "block size m must be positive"),
            Violation::CouplingCount { found, expected } => {
                write!(f, "coupling list has {found} blocks, expected {expected}")
            }
            Violation::OnsiteCount { found, expected } => {
                write!(f, "on-site list has {found} blocks, expected {expected}")
            }
            Violation::CouplingDimension { index, rows, cols, expected } => {
                write!(f, "a[{index}] is {rows}x{cols}, expected {expected}x{expected}")
            }
            Violation::OnsiteDimension { index, rows, cols, expected } => {
                write!(f, "b[{index}] is {rows}x{cols}, expected {expected}x{expected}")
            }
            Violation::OnsiteNotHermitian { index, deviation, tolerance } => {
                write!(
                    f,
                    "b[{index}] is not Hermitian: deviation {deviation:.3e} exceeds {tolerance:.3e}"
                )
            }
            Violation::NonFiniteCoupling { index } => {
                write!(f, "a[{index}] contains a non-finite entry")
            }
            Violation::NonFiniteOnsite { index } => {
                write!(f, "b[{index}] contains a non-finite entry")
            }
        }
    }
}

/// Report-style validation outcome; empty iff the operator is well formed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "  - {v}")?;
        }
        Ok(())
    }
}

impl PeriodicJacobiOperator {
    /// Assemble an operator without checking invariants; see [`Self::validate`].
    pub fn new(p: usize, m: usize, a: Vec<ComplexMatrix>, b: Vec<ComplexMatrix>) -> Self {
        Self { p, m, a, b }
    }

    pub fn period(&self) -> usize {
        self.p
    }

    pub fn block_size(&self) -> usize {
        self.m
    }

    /// Fiber dimension p*m.
    pub fn fiber_dim(&self) -> usize {
        self.p * self.m
    }

    pub fn couplings(&self) -> &[ComplexMatrix] {
        &self.a
    }

    pub fn onsites(&self) -> &[ComplexMatrix] {
        &self.b
    }

    /// The block that wraps around the fiber, `a[p-1]`.
    pub fn corner(&self) -> &ComplexMatrix {
        &self.a[self.p - 1]
    }

    /// Check every structural invariant and report all violations found.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        if self.p == 0 {
            violations.push(Violation::ZeroPeriod);
        }
        if self.m == 0 {
            violations.push(Violation::ZeroBlockSize);
        }
        if self.a.len() != self.p {
            violations.push(Violation::CouplingCount {
                found: self.a.len(),
                expected: self.p,
            });
        }
        if self.b.len() != self.p {
            violations.push(Violation::OnsiteCount {
                found: self.b.len(),
                expected: self.p,
            });
        }
        for (index, blk) in self.a.iter().enumerate() {
            if blk.rows() != self.m || blk.cols() != self.m {
                violations.push(Violation::CouplingDimension {
                    index,
                    rows: blk.rows(),
                    cols: blk.cols(),
                    expected: self.m,
                });
            }
            if !blk.all_finite() {
                violations.push(Violation::NonFiniteCoupling { index });
            }
        }
        for (index, blk) in self.b.iter().enumerate() {
            if blk.rows() != self.m || blk.cols() != self.m {
                violations.push(Violation::OnsiteDimension {
                    index,
                    rows: blk.rows(),
                    cols: blk.cols(),
                    expected: self.m,
                });
                continue;
            }
            if !blk.all_finite() {
                violations.push(Violation::NonFiniteOnsite { index });
                continue;
            }
            let tolerance = HERMITICITY_RELTOL * (1.0 + blk.max_norm());
            let deviation = blk.hermitian_deviation();
            if deviation > tolerance {
                violations.push(Violation::OnsiteNotHermitian {
                    index,
                    deviation,
                    tolerance,
                });
            }
        }
        ValidationReport { violations }
    }

    fn require_valid(&self) -> Result<(), SpectrumError> {
        let report = self.validate();
        if report.is_valid() {
            Ok(())
        } else {
            Err(SpectrumError::InvalidOperator(report))
        }
    }
}

/// Index of the coupling block with the smallest nuclear norm (smallest index
/// wins ties, by exact comparison).
pub fn minimal_corner_index(op: &PeriodicJacobiOperator) -> Result<usize, SpectrumError> {
    op.require_valid()?;
    let mut best = 0usize;
    let mut best_norm = f64::INFINITY;
    for (i, blk) in op.couplings().iter().enumerate() {
        let norm = nuclear_norm(blk)?;
        if norm < best_norm {
            best = i;
            best_norm = norm;
        }
    }
    Ok(best)
}

/// Cyclically relabel lattice sites so the minimal-nuclear-norm coupling
/// becomes the corner block `a[p-1]`.
///
/// The result is a shift of the same lattice operator, hence unitarily
/// equivalent: every spectral quantity is unchanged.
pub fn rotate_to_minimal_corner(
    op: &PeriodicJacobiOperator,
) -> Result<PeriodicJacobiOperator, SpectrumError> {
    let j = minimal_corner_index(op)?;
    let p = op.period();
    let shift = (j + 1) % p;
    if shift == 0 {
        return Ok(op.clone());
    }
    let a = (0..p).map(|k| op.couplings()[(k + shift) % p].clone()).collect();
    let b = (0..p).map(|k| op.onsites()[(k + shift) % p].clone()).collect();
    Ok(PeriodicJacobiOperator::new(p, op.block_size(), a, b))
}

/// Repeat the coefficient lists `k` times: the same lattice operator viewed
/// with period k*p, so its spectrum is unchanged.
pub fn unroll(op: &PeriodicJacobiOperator, k: usize) -> Result<PeriodicJacobiOperator, SpectrumError> {
    op.require_valid()?;
    assert!(k > 0, "unroll factor must be positive");
    if k == 1 {
        return Ok(op.clone());
    }
    let p = op.period();
    let mut a = Vec::with_capacity(k * p);
    let mut b = Vec::with_capacity(k * p);
    for _ in 0..k {
        a.extend(op.couplings().iter().cloned());
        b.extend(op.onsites().iter().cloned());
    }
    Ok(PeriodicJacobiOperator::new(k * p, op.block_size(), a, b))
}

/// Unroll just enough to reach period >= 3, the shape the fiber matrix needs
/// to keep corner and off-diagonal blocks in distinct positions.
pub fn unroll_to_min_period(
    op: &PeriodicJacobiOperator,
) -> Result<PeriodicJacobiOperator, SpectrumError> {
    op.require_valid()?;
    let k = usize::div_ceil(3, op.period());
    unroll(op, k)
}

/// The Floquet fiber K(x): block tridiagonal with diagonal `b`, off-diagonal
/// `a`, and corner blocks `e^{-ix} a_corner*` (top right), `e^{ix} a_corner`
/// (bottom left). Hermitian by construction.
pub fn floquet_symbol(
    op: &PeriodicJacobiOperator,
    x: f64,
) -> Result<ComplexMatrix, SpectrumError> {
    op.require_valid()?;
    let p = op.period();
    if p < 3 {
        return Err(SpectrumError::PeriodTooShort { p });
    }
    let mut k = ComplexMatrix::zeros(op.fiber_dim(), op.fiber_dim());
    for i in 0..p {
        k.set_block(i, i, &op.onsites()[i]);
    }
    for i in 0..p - 1 {
        k.set_block(i, i + 1, &op.couplings()[i]);
        k.set_block(i + 1, i, &op.couplings()[i].adjoint());
    }
    let phase = Complex64::from_polar(1.0, x);
    k.set_block(0, p - 1, &op.corner().adjoint().scale(phase.conj()));
    k.set_block(p - 1, 0, &op.corner().scale(phase));
    Ok(k)
}

/// The x-independent split of the fiber: K(x) = K0 + K1(x) with |K1| closed form.
#[derive(Debug, Clone)]
pub struct SymbolSplit {
    k0: ComplexMatrix,
    abs_k1: ComplexMatrix,
    corner_index: usize,
}

impl SymbolSplit {
    /// The fiber with its corner blocks zeroed; independent of x.
    pub fn k0(&self) -> &ComplexMatrix {
        &self.k0
    }

    /// |K1| = (K1 K1*)^(1/2): zero outside the first and last diagonal
    /// blocks, which hold (a* a)^(1/2) and (a a*)^(1/2) for the corner block a.
    pub fn abs_k1(&self) -> &ComplexMatrix {
        &self.abs_k1
    }

    /// Index (0-based) of the coupling block occupying the corner slot of the
    /// operator this split was built from; always `p - 1` under the wrap
    /// storage convention. After [`rotate_to_minimal_corner`] this is the
    /// minimal-nuclear-norm block.
    pub fn corner_index(&self) -> usize {
        self.corner_index
    }
}

/// Split the fiber into its x-independent part and the closed-form |K1|.
pub fn split_symbol(op: &PeriodicJacobiOperator) -> Result<SymbolSplit, SpectrumError> {
    op.require_valid()?;
    let p = op.period();
    if p < 3 {
        return Err(SpectrumError::PeriodTooShort { p });
    }
    let n = op.fiber_dim();
    let mut k0 = ComplexMatrix::zeros(n, n);
    for i in 0..p {
        k0.set_block(i, i, &op.onsites()[i]);
    }
    for i in 0..p - 1 {
        k0.set_block(i, i + 1, &op.couplings()[i]);
        k0.set_block(i + 1, i, &op.couplings()[i].adjoint());
    }
    let corner = op.corner();
    let mut abs_k1 = ComplexMatrix::zeros(n, n);
    abs_k1.set_block(0, 0, &psd_sqrt(&(&corner.adjoint() * corner))?);
    abs_k1.set_block(p - 1, p - 1, &psd_sqrt(&(corner * &corner.adjoint()))?);
    Ok(SymbolSplit {
        k0,
        abs_k1,
        corner_index: p - 1,
    })
}

/// Finite Dirichlet section of the operator over `periods * p` sites:
/// couplings across the cut are dropped. Serves as an independent
/// approximation oracle for the spectrum.
pub fn truncated_matrix(op: &PeriodicJacobiOperator, periods: usize) -> ComplexMatrix {
    assert!(periods > 0, "need at least one period");
    let p = op.period();
    let sites = periods * p;
    let mut h = ComplexMatrix::zeros(sites * op.block_size(), sites * op.block_size());
    for n in 0..sites {
        h.set_block(n, n, &op.onsites()[n % p]);
    }
    for n in 0..sites - 1 {
        h.set_block(n, n + 1, &op.couplings()[n % p]);
        h.set_block(n + 1, n, &op.couplings()[n % p].adjoint());
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::EIG_TOL;

    fn scalar_op(a: &[f64], b: &[f64]) -> PeriodicJacobiOperator {
        PeriodicJacobiOperator::new(
            a.len(),
            1,
            a.iter().map(|&x| ComplexMatrix::from_real_rows(&[vec![x]])).collect(),
            b.iter().map(|&x| ComplexMatrix::from_real_rows(&[vec![x]])).collect(),
        )
    }

    #[test]
    fn valid_schrodinger_reports_clean() {
        let op = scalar_op(&[1.0], &[0.0]);
        assert!(op.validate().is_valid());
    }

    #[test]
    fn non_hermitian_onsite_is_named() {
        let op = PeriodicJacobiOperator::new(
            1,
            2,
            vec![ComplexMatrix::identity(2)],
            vec![ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]])],
        );
        let report = op.validate();
        assert!(!report.is_valid());
        assert!(matches!(
            report.violations()[0],
            Violation::OnsiteNotHermitian { index: 0, .. }
        ));
    }

    #[test]
    fn wrong_dimension_is_named() {
        let op = PeriodicJacobiOperator::new(
            2,
            2,
            vec![ComplexMatrix::identity(2), ComplexMatrix::zeros(2, 3)],
            vec![ComplexMatrix::zeros(2, 2), ComplexMatrix::zeros(2, 2)],
        );
        let report = op.validate();
        assert!(report.violations().iter().any(|v| matches!(
            v,
            Violation::CouplingDimension { index: 1, rows: 2, cols: 3, .. }
        )));
    }

    #[test]
    fn rotation_single_period_unchanged() {
        let op = scalar_op(&[2.0], &[1.0]);
        assert_eq!(rotate_to_minimal_corner(&op).unwrap(), op);
    }

    #[test]
    fn rotation_places_minimum_at_corner() {
        let op = scalar_op(&[3.0, 1.0, 2.0], &[0.1, 0.2, 0.3]);
        let rotated = rotate_to_minimal_corner(&op).unwrap();
        assert_eq!(minimal_corner_index(&rotated).unwrap(), 2);
        assert_eq!(rotated.corner()[(0, 0)].re, 1.0);
        // on-site blocks travel with their sites
        let bs: Vec<f64> = rotated.onsites().iter().map(|b| b[(0, 0)].re).collect();
        assert_eq!(bs, vec![0.3, 0.1, 0.2]);
    }

    #[test]
    fn rotation_fixed_point() {
        let op = scalar_op(&[3.0, 2.0, 1.0], &[0.0, 0.0, 0.0]);
        assert_eq!(rotate_to_minimal_corner(&op).unwrap(), op);
    }

    #[test]
    fn unroll_repeats_coefficients() {
        let op = scalar_op(&[1.0], &[0.0]);
        let u = unroll(&op, 3).unwrap();
        assert_eq!(u.period(), 3);
        assert_eq!(u.couplings().len(), 3);
        assert!(u.couplings().iter().all(|a| a[(0, 0)].re == 1.0));
        assert_eq!(unroll(&op, 1).unwrap(), op);
    }

    #[test]
    fn unroll_to_min_period_thresholds() {
        assert_eq!(unroll_to_min_period(&scalar_op(&[1.0], &[0.0])).unwrap().period(), 3);
        assert_eq!(unroll_to_min_period(&scalar_op(&[1.0, 2.0], &[0.0, 0.0])).unwrap().period(), 4);
        let p3 = scalar_op(&[1.0, 2.0, 3.0], &[0.0, 0.0, 0.0]);
        assert_eq!(unroll_to_min_period(&p3).unwrap(), p3);
    }

    #[test]
    fn symbol_matches_hand_built_p3() {
        let op = scalar_op(&[1.0, 1.0, 1.0], &[0.0, 0.0, 0.0]);
        let k = floquet_symbol(&op, 0.0).unwrap();
        let expected = ComplexMatrix::from_real_rows(&[
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ]);
        assert!((&k - &expected).max_norm() < 1e-15);
    }

    #[test]
    fn symbol_at_pi_flips_corner_sign() {
        let op = scalar_op(&[1.0, 1.0, 1.0], &[0.0, 0.0, 0.0]);
        let k = floquet_symbol(&op, std::f64::consts::PI).unwrap();
        assert!((k[(0, 2)].re + 1.0).abs() < 1e-15);
        assert!(k[(0, 2)].im.abs() < 1e-15);
        assert!(k.hermitian_deviation() < 1e-15);
    }

    #[test]
    fn symbol_hermitian_by_construction() {
        let op = scalar_op(&[1.0, -2.5, 0.5, 3.0], &[0.4, -1.0, 0.0, 2.0]);
        for &x in &[0.0, 0.37, 1.9, 5.5] {
            assert_eq!(floquet_symbol(&op, x).unwrap().hermitian_deviation(), 0.0);
        }
    }

    #[test]
    fn symbol_rejects_short_period() {
        let op = scalar_op(&[1.0], &[0.0]);
        assert!(matches!(
            floquet_symbol(&op, 0.0),
            Err(SpectrumError::PeriodTooShort { p: 1 })
        ));
    }

    #[test]
    fn split_zero_corner_gives_zero_abs_k1() {
        let op = scalar_op(&[1.0, 1.0, 0.0], &[0.0, 0.0, 0.0]);
        let split = split_symbol(&op).unwrap();
        assert_eq!(split.abs_k1().max_norm(), 0.0);
    }

    #[test]
    fn split_scalar_corner_structure() {
        let op = scalar_op(&[1.0, 1.0, 2.0], &[0.0, 0.0, 0.0]);
        let split = split_symbol(&op).unwrap();
        let abs_k1 = split.abs_k1();
        assert!((abs_k1[(0, 0)].re - 2.0).abs() < 1e-12);
        assert!((abs_k1[(2, 2)].re - 2.0).abs() < 1e-12);
        let mut off_mass = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                if i != j || i == 1 {
                    off_mass += abs_k1[(i, j)].norm();
                }
            }
        }
        assert_eq!(off_mass, 0.0);
        assert_eq!(split.corner_index(), 2);
    }

    #[test]
    fn split_k0_is_symbol_with_corners_zeroed() {
        let op = scalar_op(&[1.0, -0.5, 2.0, 0.3], &[1.0, 2.0, 3.0, 4.0]);
        let split = split_symbol(&op).unwrap();
        let mut k = floquet_symbol(&op, 1.234).unwrap();
        let m = op.block_size();
        let p = op.period();
        k.set_block(0, p - 1, &ComplexMatrix::zeros(m, m));
        k.set_block(p - 1, 0, &ComplexMatrix::zeros(m, m));
        assert_eq!((&k - split.k0()).max_norm(), 0.0);
    }

    #[test]
    fn truncation_two_site_chain() {
        let op = scalar_op(&[1.0], &[0.0]);
        let h = truncated_matrix(&op, 2);
        let expected = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!((&h - &expected).max_norm() == 0.0);
    }

    #[test]
    fn truncation_decouples_when_couplings_vanish() {
        let op = PeriodicJacobiOperator::new(
            2,
            2,
            vec![ComplexMatrix::zeros(2, 2), ComplexMatrix::zeros(2, 2)],
            vec![
                ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]]),
                ComplexMatrix::from_real_rows(&[vec![3.0, 0.0], vec![0.0, 4.0]]),
            ],
        );
        let h = truncated_matrix(&op, 2);
        let vals = crate::eigen::hermitian_eigenvalues(&h, EIG_TOL).unwrap();
        assert_eq!(vals, vec![1.0, 1.0, 2.0, 2.0, 3.0, 3.0, 4.0, 4.0]);
    }
}
