//! Small-`alpha` behaviour of the FER curve: the dominant term
//! `c_i alpha^i (1 - alpha)^(n - i)` and a log-log least-squares fit.

use serde::{Deserialize, Serialize};

use super::fer::FerPoint;
use super::SimError;

/// Points with fewer failures than this are left out of a fit.
pub const DEFAULT_FAILURE_FLOOR: u64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlopeFit {
    pub slope: f64,
    /// Natural log of the fitted coefficient.
    pub intercept: f64,
    pub points_used: usize,
    /// Root-mean-square residual of `ln fer`.
    pub residual: f64,
}

/// `c_i alpha^i (1 - alpha)^(n - i)` when `n` is given, else `c_i alpha^i`.
pub fn dominant_term_model(c_i: f64, i: u32, alpha: f64, n: Option<usize>) -> f64 {
    let lead = c_i * alpha.powi(i as i32);
    match n {
        Some(n) => lead * (1.0 - alpha).powf(n as f64 - i as f64),
        None => lead,
    }
}

/// Least-squares line through `(ln alpha, ln fer)` over the points with at
/// least `floor` failures. Needs three such points spanning a factor of
/// four in `alpha`.
pub fn slope_fit(points: &[FerPoint], floor: u64) -> Result<SlopeFit, SimError> {
    let used: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.failures >= floor.max(1) && p.fer > 0.0 && p.alpha > 0.0)
        .map(|p| (p.alpha.ln(), p.fer.ln()))
        .collect();
    if used.len() < 3 {
        return Err(SimError::InsufficientPoints {
            needed: "at least 3 points above the failure floor",
            detail: format!("{} usable of {}", used.len(), points.len()),
        });
    }
    let lo = used.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = used.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    if hi - lo < 4f64.ln() - 1e-12 {
        return Err(SimError::InsufficientPoints {
            needed: "alpha spanning a factor of 4",
            detail: format!("span factor {:.3}", (hi - lo).exp()),
        });
    }
    let k = used.len() as f64;
    let mx = used.iter().map(|p| p.0).sum::<f64>() / k;
    let my = used.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = used.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = used.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = used
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    Ok(SlopeFit {
        slope,
        intercept,
        points_used: used.len(),
        residual: (sse / k).sqrt(),
    })
}
