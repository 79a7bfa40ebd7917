//! Flat limit: shrinking a curved configuration and magnifying the chart
//! recovers the Euclidean Apollonius circle.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::euclid::{euclid_apollonius, EuclidLocus};
use crate::apollonius::{apollonius_curve, canonical_foci, sample_curve, ApolloniusSpec};
use crate::error::{Error, Result};
use crate::geometry::CurvatureSign;

pub const DEFAULT_SCALES: [f64; 7] = [1.0, 0.3, 0.1, 0.03, 0.01, 0.003, 0.001];

/// Samples per scale.
const LIMIT_SAMPLES: usize = 256;

/// One row of a scale sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub epsilon: i32,
    pub d: f64,
    pub k: f64,
    pub lambda: f64,
    pub deviation: f64,
}

/// For each `λ`, the largest distance between the magnified chart samples
/// of the `(λd, k)` curve and the Euclidean Apollonius circle of the
/// magnified foci.
pub fn small_scale_limit(d: f64, k: f64, sign: CurvatureSign, scales: &[f64]) -> Result<Vec<f64>> {
    if k == 1.0 {
        return Err(Error::OutOfRange {
            what: "k",
            value: k,
            expected: "k != 1",
        });
    }
    scales
        .iter()
        .map(|&lambda| {
            if !(lambda > 0.0) {
                return Err(Error::OutOfRange {
                    what: "scale",
                    value: lambda,
                    expected: "scale > 0",
                });
            }
            let spec = ApolloniusSpec::new(lambda * d, k, sign)?;
            let foci = canonical_foci(&spec);
            let locus = euclid_apollonius([foci.a / lambda, 0.0], [foci.b / lambda, 0.0], k)?;
            let EuclidLocus::Circle(circle) = locus else {
                return Err(Error::EmptyCurve);
            };
            let samples = sample_curve(&apollonius_curve(&spec)?, LIMIT_SAMPLES)?;
            if samples.is_empty() {
                return Err(Error::EmptyCurve);
            }
            Ok(samples
                .into_iter()
                .map(|[x, y]| circle.deviation([x / lambda, y / lambda]))
                .fold(0.0, f64::max))
        })
        .collect()
}

/// [`small_scale_limit`] packaged as sweep rows.
pub fn small_scale_rows(
    d: f64,
    k: f64,
    sign: CurvatureSign,
    scales: &[f64],
) -> Result<Vec<SweepRow>> {
    let deviations = small_scale_limit(d, k, sign, scales)?;
    Ok(scales
        .iter()
        .zip(deviations)
        .map(|(&lambda, deviation)| SweepRow {
            epsilon: sign.epsilon_int(),
            d,
            k,
            lambda,
            deviation,
        })
        .collect())
}

/// Writes rows as CSV with a single header line.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], out: W) -> std::io::Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    if rows.is_empty() {
        writer.write_record(["epsilon", "d", "k", "lambda", "deviation"])?;
    }
    for row in rows {
        writer.serialize(row)?;
    }
    writer.flush()
}
