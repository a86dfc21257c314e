//! Enclosure eigenvalues, the spectral measure bound, and the pipeline
//! report that ties sampling and enclosures together.
//!
//! The operator inequality K0 - |K1| <= K(x) <= K0 + |K1| pins every band
//! function between the eigenvalues of the two x-independent extremes, and
//! summing those widths gives exactly twice the trace of |K1|.

use crate::eigen::{hermitian_eigenvalues, nuclear_norm, EIG_TOL};
use crate::error::SpectrumError;
use crate::operator::{
    rotate_to_minimal_corner, split_symbol, unroll_to_min_period, PeriodicJacobiOperator,
};
use crate::spectrum::{
    band_intervals, interval_union_measure, sample_bands, BandSamples, IntervalUnion,
    SpectralBand, DEFAULT_NUM_SAMPLES,
};

/// Eigenvalues of K0 -+ |K1|: every band function lives in
/// [minus[n], plus[n]].
#[derive(Debug, Clone)]
pub struct EnclosureBounds {
    minus: Vec<f64>,
    plus: Vec<f64>,
}

impl EnclosureBounds {
    /// Eigenvalues of K0 - |K1|, ascending.
    pub fn minus(&self) -> &[f64] {
        &self.minus
    }

    /// Eigenvalues of K0 + |K1|, ascending.
    pub fn plus(&self) -> &[f64] {
        &self.plus
    }

    pub fn len(&self) -> usize {
        self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.minus.is_empty()
    }

    /// Union of the per-band windows [minus[n], plus[n]].
    pub fn window_union(&self, gap_tol: f64) -> IntervalUnion {
        let raw = self
            .minus
            .iter()
            .zip(&self.plus)
            .map(|(&lo, &hi)| (lo, hi))
            .collect();
        IntervalUnion::merge(raw, gap_tol)
    }
}

/// Eigenvalues of K0 -+ |K1| for the operator (unrolled to period >= 3).
pub fn enclosure_bounds(op: &PeriodicJacobiOperator) -> Result<EnclosureBounds, SpectrumError> {
    let op = unroll_to_min_period(op)?;
    let split = split_symbol(&op)?;
    let minus = hermitian_eigenvalues(&(split.k0() - split.abs_k1()), EIG_TOL)?;
    let plus = hermitian_eigenvalues(&(split.k0() + split.abs_k1()), EIG_TOL)?;
    Ok(EnclosureBounds { minus, plus })
}

/// The measure bound: 4 min_n Tr((a_n a_n*)^(1/2)), minimized over the
/// operator's own coefficient list (unrolling repeats blocks and cannot
/// change the minimum).
pub fn theorem_bound(op: &PeriodicJacobiOperator) -> Result<f64, SpectrumError> {
    let mut best = f64::INFINITY;
    for blk in op.couplings() {
        best = best.min(nuclear_norm(blk)?);
    }
    Ok(4.0 * best)
}

/// Scalar-only geometric-mean bound 4 |a_1 ... a_p|^(1/p); `None` unless m = 1.
pub fn scalar_geometric_bound(op: &PeriodicJacobiOperator) -> Option<f64> {
    if op.block_size() != 1 {
        return None;
    }
    let product: f64 = op.couplings().iter().map(|a| a[(0, 0)].norm()).product();
    Some(4.0 * product.powf(1.0 / op.period() as f64))
}

/// Sum of enclosure widths and the trace identity it must equal:
/// sum_n (plus[n] - minus[n]) = 2 Tr|K1| = 4 Tr((a a*)^(1/2)) for the corner
/// block a.
pub fn enclosure_width_sum(op: &PeriodicJacobiOperator) -> Result<(f64, f64), SpectrumError> {
    let enclosure = enclosure_bounds(op)?;
    let sum = enclosure
        .plus()
        .iter()
        .zip(enclosure.minus())
        .map(|(p, m)| p - m)
        .sum();
    let identity_value = 4.0 * nuclear_norm(op.corner())?;
    Ok((sum, identity_value))
}

/// Settings for [`verify_operator`].
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Grid resolution on [0, 2pi).
    pub num_samples: usize,
    /// Gap-merge tolerance; `None` selects 2x the certification padding.
    pub gap_tol: Option<f64>,
    /// Measure the certified (outer) intervals rather than the sampled hulls.
    pub use_certified: bool,
    /// Slack allowed in the `measure <= bound` check; `None` selects
    /// `1e-9 + 2 * pad * num_bands`, the exact allowance the outer
    /// certification can add on top of the continuous-x measure.
    pub bound_slack: Option<f64>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            num_samples: DEFAULT_NUM_SAMPLES,
            gap_tol: None,
            use_certified: true,
            bound_slack: None,
        }
    }
}

impl VerifyConfig {
    pub fn with_samples(num_samples: usize) -> Self {
        Self {
            num_samples,
            ..Self::default()
        }
    }

    pub fn effective_gap_tol(&self, pad: f64) -> f64 {
        self.gap_tol.unwrap_or(2.0 * pad)
    }

    pub fn effective_bound_slack(&self, pad: f64, num_bands: usize) -> f64 {
        self.bound_slack
            .unwrap_or(1e-9 + 2.0 * pad * num_bands as f64)
    }
}

/// Everything the pipeline produces for one operator.
#[derive(Debug, Clone)]
pub struct BoundsReport {
    pub theorem_bound: f64,
    pub scalar_bound: Option<f64>,
    pub enclosure_width_sum: f64,
    pub trace_identity_value: f64,
    pub measured_spectrum: IntervalUnion,
    pub per_band_containment: bool,
    pub bound_satisfied: bool,
    /// Human-readable descriptions of every failed check; empty on success.
    pub failures: Vec<String>,
    pub bands: Vec<SpectralBand>,
    pub enclosure: EnclosureBounds,
    pub samples: BandSamples,
    pub pad: f64,
    pub gap_tol: f64,
    pub bound_slack: f64,
    /// Period of the normalized (rotated + unrolled) operator actually sampled.
    pub normalized_period: usize,
}

/// Run the full pipeline: rotate to the minimal corner, unroll, sample the
/// bands, merge intervals, compute enclosures, and evaluate every bound.
///
/// For a valid operator both `per_band_containment` and `bound_satisfied`
/// must come back true; `failures` names any check that did not.
pub fn verify_operator(
    op: &PeriodicJacobiOperator,
    cfg: &VerifyConfig,
) -> Result<BoundsReport, SpectrumError> {
    let bound = theorem_bound(op)?;
    let scalar_bound = scalar_geometric_bound(op);

    let rotated = rotate_to_minimal_corner(op)?;
    let normalized = unroll_to_min_period(&rotated)?;
    let samples = sample_bands(&normalized, cfg.num_samples)?;
    let pad = samples.certification_pad();
    let gap_tol = cfg.effective_gap_tol(pad);
    let bands = band_intervals(&samples);
    let measured = interval_union_measure(&bands, gap_tol, cfg.use_certified);

    let enclosure = enclosure_bounds(&normalized)?;
    let (width_sum, identity_value) = enclosure_width_sum(&normalized)?;

    let mut failures = Vec::new();

    let mut containment = true;
    'containment: for (n, curve) in samples.curves().iter().enumerate() {
        let (lo, hi) = (enclosure.minus()[n] - 1e-9, enclosure.plus()[n] + 1e-9);
        for (j, &value) in curve.iter().enumerate() {
            if value < lo || value > hi {
                containment = false;
                failures.push(format!(
                    "containment: band {n} at grid point {j} ({value:.12}) escapes [{lo:.12}, {hi:.12}]"
                ));
                break 'containment;
            }
        }
    }

    let identity_err = (width_sum - identity_value).abs();
    if identity_err > 1e-9 * (1.0 + identity_value) {
        failures.push(format!(
            "trace identity: |{width_sum:.12} - {identity_value:.12}| = {identity_err:.3e}"
        ));
    }

    let slack = cfg.effective_bound_slack(pad, bands.len());
    let bound_satisfied = measured.measure() <= bound + slack;
    if !bound_satisfied {
        failures.push(format!(
            "measure bound: {:.12} > {:.12} + {:.3e}",
            measured.measure(),
            bound,
            slack
        ));
    }

    if let Some(scalar) = scalar_bound {
        if bound > scalar + 1e-12 {
            failures.push(format!(
                "scalar dominance: theorem bound {bound:.12} exceeds geometric bound {scalar:.12}"
            ));
        }
    }

    Ok(BoundsReport {
        theorem_bound: bound,
        scalar_bound,
        enclosure_width_sum: width_sum,
        trace_identity_value: identity_value,
        measured_spectrum: measured,
        per_band_containment: containment,
        bound_satisfied,
        failures,
        bands,
        enclosure,
        samples,
        pad,
        gap_tol,
        bound_slack: slack,
        normalized_period: normalized.period(),
    })
}
