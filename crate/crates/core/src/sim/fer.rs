//! Frame error rate estimation on the BSC.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::patterns::{BscPatterns, PatternSource};
use super::SimError;
use crate::decoder::{DecodeError, DecoderConfig, GallagerA};
use crate::exec::Execution;
use crate::graph::TannerGraph;

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

const BLOCK: u64 = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FerPoint {
    pub alpha: f64,
    pub trials: u64,
    pub failures: u64,
    pub fer: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl FerPoint {
    pub fn new(alpha: f64, trials: u64, failures: u64) -> Self {
        let fer = if trials == 0 {
            0.0
        } else {
            failures as f64 / trials as f64
        };
        let (ci_low, ci_high) = wilson_interval(failures, trials);
        FerPoint {
            alpha,
            trials,
            failures,
            fer,
            ci_low,
            ci_high,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StopRule {
    pub min_failures: u64,
    pub max_trials: u64,
}

impl StopRule {
    fn validate(&self) -> Result<(), SimError> {
        if self.min_failures == 0 || self.max_trials == 0 {
            return Err(SimError::InvalidStopRule);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FerOptions {
    pub seed: u64,
    /// Coupling rate for the flip draws; `None` means `alpha` itself. Runs
    /// sharing a seed and a ceiling see nested flip sets trial by trial.
    pub ceiling: Option<f64>,
    pub exec: Execution,
}

/// Wilson score interval at 95% for `failures` out of `trials`, clamped
/// so that it always contains the point estimate.
pub fn wilson_interval(failures: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let low = (centre - half).clamp(0.0, p);
    let high = (centre + half).clamp(p, 1.0);
    (low, high)
}

/// Indices in `range` whose pattern does not decode to the zero word,
/// ascending. Work is split into fixed blocks, so the answer does not
/// depend on the execution mode.
pub(crate) fn failing_indices<S: PatternSource>(
    g: &TannerGraph,
    source: &S,
    range: Range<u64>,
    cfg: &DecoderConfig,
    exec: Execution,
) -> Result<Vec<u64>, DecodeError> {
    GallagerA::new(g, *cfg)?;
    let start = range.start;
    let blocks = range.end.saturating_sub(start).div_ceil(BLOCK) as usize;
    let per_block = exec.map_range_with(
        0..blocks,
        || (GallagerA::new(g, *cfg).expect("validated"), Vec::new()),
        |(dec, buf), b| -> Result<Vec<u64>, DecodeError> {
            let lo = start + b as u64 * BLOCK;
            let hi = (lo + BLOCK).min(range.end);
            let mut fails = Vec::new();
            for i in lo..hi {
                source.pattern(i, buf);
                if buf.is_empty() {
                    continue;
                }
                if dec.run(buf)?.is_frame_error() {
                    fails.push(i);
                }
            }
            Ok(fails)
        },
    );
    let mut out = Vec::new();
    for block in per_block {
        out.extend(block?);
    }
    Ok(out)
}

/// Runs the patterns of `source` in index order until `stop.min_failures`
/// failures or `stop.max_trials` trials (or the source runs out). The
/// stopping trial is exact, so the point does not depend on how the work
/// was batched.
pub fn estimate_from_source<S: PatternSource>(
    g: &TannerGraph,
    source: &S,
    alpha: f64,
    stop: StopRule,
    cfg: &DecoderConfig,
    exec: Execution,
) -> Result<FerPoint, SimError> {
    stop.validate()?;
    let limit = stop.max_trials.min(source.len());
    let batch = BLOCK * 4 * crate::exec::current_threads().max(1) as u64;
    let mut done = 0u64;
    let mut failures = 0u64;
    while done < limit {
        let end = (done + batch).min(limit);
        let fails = failing_indices(g, source, done..end, cfg, exec)?;
        let need = (stop.min_failures - failures) as usize;
        if fails.len() >= need {
            let last = fails[need - 1];
            return Ok(FerPoint::new(alpha, last + 1, stop.min_failures));
        }
        failures += fails.len() as u64;
        done = end;
    }
    Ok(FerPoint::new(alpha, done, failures))
}

/// Monte Carlo FER at crossover `alpha` under the all-zero codeword: a
/// trial fails when the decoder output is anything but the zero word.
pub fn fer_estimate(
    g: &TannerGraph,
    alpha: f64,
    stop: StopRule,
    cfg: &DecoderConfig,
    opts: &FerOptions,
) -> Result<FerPoint, SimError> {
    let ceiling = opts.ceiling.unwrap_or(alpha);
    let source = BscPatterns::new(g.n(), alpha, ceiling, opts.seed, u64::MAX)?;
    estimate_from_source(g, &source, alpha, stop, cfg, opts.exec)
}
