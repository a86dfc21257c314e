//! Certified spectral bands and sharp measure bounds for periodic
//! matrix-valued Jacobi operators.
//!
//! A p-periodic block Jacobi operator with m x m coefficient blocks is
//! unitarily equivalent to a family of pm x pm Hermitian fibers K(x),
//! x in [0, 2pi]; its spectrum is the union of the fiber spectra. This crate
//! samples the band functions on a uniform grid, widens each band by an
//! explicit Lipschitz bound so the reported intervals are rigorous
//! enclosures, and evaluates the sharp bound
//! `measure(spectrum) <= 4 min_n Tr((a_n a_n*)^(1/2))`
//! together with the enclosure eigenvalues of K0 -+ |K1| and the trace
//! identity their widths satisfy.
//!
//! Modules:
//! - [`matrix`], [`eigen`]: dense complex kernel with a deterministic
//!   Jacobi eigensolver, PSD square root, singular values, nuclear norm.
//! - [`operator`]: the operator data model, coefficient rotation, period
//!   unrolling, fiber assembly, Dirichlet truncation oracle.
//! - [`spectrum`]: band sampling, certified intervals, interval unions.
//! - [`bounds`]: enclosure eigenvalues, theorem and scalar bounds, the
//!   verification pipeline.
//! - [`presets`]: named example operators and the seeded random generator.

pub mod bounds;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod operator;
pub mod presets;
pub mod spectrum;

pub use bounds::{
    enclosure_bounds, enclosure_width_sum, scalar_geometric_bound, theorem_bound, verify_operator,
    BoundsReport, EnclosureBounds, VerifyConfig,
};
pub use eigen::{
    hermitian_eigensystem, hermitian_eigenvalues, nuclear_norm, psd_sqrt, singular_values,
    spectral_norm, EigenSystem, EIG_TOL,
};
pub use error::{LinalgError, SpectrumError};
pub use matrix::ComplexMatrix;
pub use operator::{
    floquet_symbol, minimal_corner_index, rotate_to_minimal_corner, split_symbol,
    truncated_matrix, unroll, unroll_to_min_period, PeriodicJacobiOperator, SymbolSplit,
    ValidationReport, Violation,
};
pub use presets::{make_discrete_schrodinger, make_sharpness_example, random_operator};
pub use spectrum::{
    band_intervals, interval_union_measure, sample_bands, BandSamples, IntervalUnion,
    SpectralBand, DEFAULT_NUM_SAMPLES, MIN_SAMPLES,
};
