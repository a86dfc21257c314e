//! Band sampling over the fiber parameter and certified interval unions.
//!
//! Eigenvalues of neighboring fibers obey the Weyl bound
//! |lambda_n(x) - lambda_n(y)| <= sigma_max(a_corner) * |e^{ix} - e^{iy}|,
//! so sampling on a uniform grid and padding each band by the worst midpoint
//! drift yields intervals that provably contain the continuous band.

use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::eigen::{hermitian_eigenvalues, spectral_norm, EIG_TOL};
use crate::error::SpectrumError;
use crate::operator::{floquet_symbol, unroll_to_min_period, PeriodicJacobiOperator};

/// Minimum admissible number of grid samples.
pub const MIN_SAMPLES: usize = 8;

/// Default grid resolution on [0, 2pi).
pub const DEFAULT_NUM_SAMPLES: usize = 1024;

/// Sampled band functions: `curves[n][j]` = n-th eigenvalue of K(x_j),
/// ascending in n for every j.
#[derive(Debug, Clone)]
pub struct BandSamples {
    grid: Vec<f64>,
    curves: Vec<Vec<f64>>,
    lipschitz: f64,
}

impl BandSamples {
    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn num_bands(&self) -> usize {
        self.curves.len()
    }

    pub fn band(&self, n: usize) -> &[f64] {
        &self.curves[n]
    }

    pub fn curves(&self) -> &[Vec<f64>] {
        &self.curves
    }

    /// Largest singular value of the corner block: bounds eigenvalue movement
    /// per unit change of e^{ix}.
    pub fn lipschitz(&self) -> f64 {
        self.lipschitz
    }

    /// Grid spacing 2pi / num_samples.
    pub fn grid_spacing(&self) -> f64 {
        TAU / self.grid.len() as f64
    }

    /// Certification padding: worst-case drift of an eigenvalue between a
    /// sample and the midpoint of the adjacent grid arc,
    /// `lipschitz * |e^{i h/2} - 1|`.
    pub fn certification_pad(&self) -> f64 {
        self.lipschitz * 2.0 * (self.grid_spacing() / 4.0).sin()
    }
}

/// One sampled band with its certified outer enclosure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralBand {
    pub index: usize,
    pub lo: f64,
    pub hi: f64,
    pub certified_lo: f64,
    pub certified_hi: f64,
}

/// Disjoint sorted intervals with their total length.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalUnion {
    intervals: Vec<(f64, f64)>,
    measure: f64,
}

impl IntervalUnion {
    /// Merge raw intervals: any pair that overlaps or leaves a gap of at most
    /// `gap_tol` becomes one interval.
    pub fn merge(mut raw: Vec<(f64, f64)>, gap_tol: f64) -> Self {
        assert!(gap_tol >= 0.0, "gap tolerance must be non-negative");
        raw.sort_by(|a, b| a.partial_cmp(b).expect("finite interval endpoints"));
        let mut intervals: Vec<(f64, f64)> = Vec::new();
        for (lo, hi) in raw {
            match intervals.last_mut() {
                Some(last) if lo <= last.1 + gap_tol => last.1 = last.1.max(hi),
                _ => intervals.push((lo, hi)),
            }
        }
        let measure = intervals.iter().map(|(lo, hi)| hi - lo).sum();
        Self { intervals, measure }
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn measure(&self) -> f64 {
        self.measure
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Smallest and largest point of the union.
    pub fn span(&self) -> Option<(f64, f64)> {
        match (self.intervals.first(), self.intervals.last()) {
            (Some(&(lo, _)), Some(&(_, hi))) => Some((lo, hi)),
            _ => None,
        }
    }

    /// Distance from a point to the union (zero if inside).
    pub fn distance_to(&self, x: f64) -> f64 {
        self.intervals
            .iter()
            .map(|&(lo, hi)| {
                if x < lo {
                    lo - x
                } else if x > hi {
                    x - hi
                } else {
                    0.0
                }
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, x: f64) -> bool {
        self.intervals.iter().any(|&(lo, hi)| lo <= x && x <= hi)
    }

    /// Hausdorff distance between two unions.
    ///
    /// The directed distance sup_{a in A} d(a, B) is attained either at an
    /// endpoint of A or at the midpoint of a gap of B lying inside A, so
    /// checking those candidates is exact.
    pub fn hausdorff_distance(&self, other: &IntervalUnion) -> f64 {
        fn directed(a: &IntervalUnion, b: &IntervalUnion) -> f64 {
            let mut worst = 0.0f64;
            for &(lo, hi) in &a.intervals {
                worst = worst.max(b.distance_to(lo)).max(b.distance_to(hi));
            }
            for w in b.intervals.windows(2) {
                let mid = 0.5 * (w[0].1 + w[1].0);
                if a.contains(mid) {
                    worst = worst.max(b.distance_to(mid));
                }
            }
            // points of A below B's first interval or above its last
            if let (Some(&(a_lo, _)), Some(&(b_lo, _))) = (a.intervals.first(), b.intervals.first())
            {
                if a_lo < b_lo {
                    worst = worst.max(b_lo - a_lo);
                }
            }
            if let (Some(&(_, a_hi)), Some(&(_, b_hi))) = (a.intervals.last(), b.intervals.last()) {
                if a_hi > b_hi {
                    worst = worst.max(a_hi - b_hi);
                }
            }
            worst
        }
        if self.is_empty() && other.is_empty() {
            return 0.0;
        }
        if self.is_empty() || other.is_empty() {
            return f64::INFINITY;
        }
        directed(self, other).max(directed(other, self))
    }
}

/// Diagonalize the fiber on the uniform grid x_j = 2pi j / num_samples.
///
/// The operator is unrolled to period >= 3 internally; fibers are solved in
/// parallel and assembled in grid order, so the output is deterministic.
pub fn sample_bands(
    op: &PeriodicJacobiOperator,
    num_samples: usize,
) -> Result<BandSamples, SpectrumError> {
    if num_samples < MIN_SAMPLES {
        return Err(SpectrumError::TooFewSamples {
            got: num_samples,
            min: MIN_SAMPLES,
        });
    }
    let op = unroll_to_min_period(op)?;
    let lipschitz = spectral_norm(op.corner())?;
    let grid: Vec<f64> = (0..num_samples).map(|j| TAU * j as f64 / num_samples as f64).collect();

    let columns: Vec<Result<Vec<f64>, SpectrumError>> = grid
        .par_iter()
        .map(|&x| {
            let k = floquet_symbol(&op, x)?;
            hermitian_eigenvalues(&k, EIG_TOL).map_err(SpectrumError::Linalg)
        })
        .collect();
    let mut resolved = Vec::with_capacity(num_samples);
    for (j, col) in columns.into_iter().enumerate() {
        match col {
            Ok(col) => resolved.push(col),
            Err(SpectrumError::Linalg(source)) => {
                return Err(SpectrumError::Fiber { index: j, source })
            }
            Err(other) => return Err(other),
        }
    }

    let n_bands = op.fiber_dim();
    let mut curves = vec![vec![0.0; num_samples]; n_bands];
    for (j, col) in resolved.iter().enumerate() {
        for (n, &value) in col.iter().enumerate() {
            curves[n][j] = value;
        }
    }
    Ok(BandSamples {
        grid,
        curves,
        lipschitz,
    })
}

/// Interval hull of each sampled band plus the certification padding,
/// reported ascending by lower endpoint.
pub fn band_intervals(samples: &BandSamples) -> Vec<SpectralBand> {
    let pad = samples.certification_pad();
    let mut bands: Vec<SpectralBand> = samples
        .curves()
        .iter()
        .enumerate()
        .map(|(index, curve)| {
            let lo = curve.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = curve.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            SpectralBand {
                index,
                lo,
                hi,
                certified_lo: lo - pad,
                certified_hi: hi + pad,
            }
        })
        .collect();
    bands.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("finite band endpoints"));
    bands
}

/// Merge band intervals into a disjoint union and its Lebesgue measure.
pub fn interval_union_measure(
    bands: &[SpectralBand],
    gap_tol: f64,
    use_certified: bool,
) -> IntervalUnion {
    let raw = bands
        .iter()
        .map(|b| {
            if use_certified {
                (b.certified_lo, b.certified_hi)
            } else {
                (b.lo, b.hi)
            }
        })
        .collect();
    IntervalUnion::merge(raw, gap_tol)
}
