//! Desk-scale numerical experiments on cubic Gauss sums and the cubic large sieve.

mod comb;
mod kummer;
mod large_sieve;
mod patterson;
mod type1;

use std::time::Instant;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

pub use comb::{comb_identity_check, CombReport};
pub use kummer::{kummer_histogram, kummer_histogram_from_sweep, KummerHistogram, KummerInterval};
pub use large_sieve::{
    corrected_sieve_sum, gram_matrix, heath_brown_shape, large_sieve_form, large_sieve_form_gram,
    operator_norm, operator_norm_of, sequence_diagnostic, sharpness_probe, squarefree_dyadic,
    CorrectedSieve, NormEstimate, SharpnessPoint, SharpnessReport, SieveSequence, DIMENSION_BUDGET,
};
pub use patterson::{
    decade_checkpoints, patterson_sum, patterson_sum_from_sweep, power_sum_k, power_sum_k_from_sweep,
    PattersonWindow,
};
pub use type1::type1_sum;

/// Observed and predicted values of one experiment at a list of checkpoints.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub command: String,
    pub params: serde_json::Value,
    pub checkpoints: Vec<f64>,
    pub observed: Vec<Complex64>,
    pub predicted: Vec<f64>,
    /// `observed.re / predicted`, absent when the prediction vanishes.
    pub ratio: Vec<Option<f64>>,
    pub err_bounds: Vec<f64>,
    /// Formula behind each predicted column.
    pub provenance: Vec<String>,
    pub runtime_secs: f64,
}

impl ExperimentReport {
    fn new(command: &str, params: serde_json::Value, provenance: Vec<String>) -> Self {
        ExperimentReport {
            command: command.into(),
            params,
            checkpoints: Vec::new(),
            observed: Vec::new(),
            predicted: Vec::new(),
            ratio: Vec::new(),
            err_bounds: Vec::new(),
            provenance,
            runtime_secs: 0.0,
        }
    }

    fn push(&mut self, x: f64, observed: Complex64, predicted: f64, err: f64) {
        self.checkpoints.push(x);
        self.observed.push(observed);
        self.predicted.push(predicted);
        self.ratio.push((predicted != 0.0).then(|| observed.re / predicted));
        self.err_bounds.push(err);
    }

    fn finish(mut self, start: Instant) -> Self {
        self.runtime_secs = start.elapsed().as_secs_f64();
        self
    }

    /// The report with timing removed, for byte-stable comparisons.
    pub fn without_timing(mut self) -> Self {
        self.runtime_secs = 0.0;
        self
    }
}

/// `x^(5/6) / log x`
pub(crate) fn patterson_scale(x: f64) -> f64 {
    x.powf(5.0 / 6.0) / x.ln()
}
