//! Exhaustive decoding of every error pattern up to a given weight.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use super::fer::failing_indices;
use super::patterns::{binomial, ColexPatterns, PatternSource};
use super::SimError;
use crate::decoder::DecoderConfig;
use crate::exec::Execution;
use crate::graph::{ErrorPattern, TannerGraph};

pub const DEFAULT_PATTERN_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Refuse sweeps with more patterns than this.
    pub budget: u64,
    pub exec: Execution,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            budget: DEFAULT_PATTERN_BUDGET,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub t: usize,
    pub n: usize,
    pub patterns_checked: u64,
    /// Entry `k - 1` is the count for weight `k`.
    pub failures_by_weight: Vec<u64>,
    /// Failing patterns by weight, then in colexicographic order.
    pub failures: Vec<ErrorPattern>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Decodes every pattern of weight `1..=t`. A pattern fails when the
/// decoder output is not the zero word.
pub fn exhaustive_verify(
    g: &TannerGraph,
    t: usize,
    cfg: &DecoderConfig,
    opts: &VerifyOptions,
) -> Result<VerifyReport, SimError> {
    let started = Instant::now();
    let n = g.n();
    let t_eff = t.min(n);
    let required =
        (1..=t_eff as u64).fold(0u64, |acc, k| acc.saturating_add(binomial(n as u64, k)));
    if required > opts.budget {
        return Err(SimError::BudgetExceeded {
            required,
            budget: opts.budget,
        });
    }
    let mut failures = Vec::new();
    let mut failures_by_weight = vec![0u64; t];
    let mut buf = Vec::new();
    for k in 1..=t_eff {
        let src = ColexPatterns::new(n, k);
        let fails = failing_indices(g, &src, 0..src.len(), cfg, opts.exec)?;
        failures_by_weight[k - 1] = fails.len() as u64;
        for i in fails {
            src.pattern(i, &mut buf);
            failures.push(ErrorPattern::from(buf.clone()));
        }
    }
    Ok(VerifyReport {
        t,
        n,
        patterns_checked: required,
        failures_by_weight,
        failures,
        wall_time: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::gallager_a_decode;
    use crate::gadgets;
    use crate::trapping::next_combination;

    fn oracle_failures(g: &TannerGraph, t: usize) -> Vec<ErrorPattern> {
        let cfg = DecoderConfig::default();
        let mut out = Vec::new();
        for k in 1..=t.min(g.n()) {
            let mut idx: Vec<usize> = (0..k).collect();
            let mut at_k = Vec::new();
            loop {
                let p = ErrorPattern::from(idx.clone());
                let o = gallager_a_decode(g, &p.to_word(g.n()), &cfg).unwrap();
                if !o.is_success() {
                    at_k.push(p);
                }
                if !next_combination(&mut idx, g.n()) {
                    break;
                }
            }
            at_k.sort_by(|a, b| a.support().iter().rev().cmp(b.support().iter().rev()));
            out.extend(at_k);
        }
        out
    }

    #[test]
    fn zero_weight_is_vacuous() {
        let g = gadgets::eight_zero();
        let r =
            exhaustive_verify(&g, 0, &DecoderConfig::default(), &VerifyOptions::default()).unwrap();
        assert_eq!(r.patterns_checked, 0);
        assert!(r.passed());
    }

    #[test]
    fn six_cycle_fails_at_weight_three() {
        let g = gadgets::isolated_six_cycle();
        let r =
            exhaustive_verify(&g, 3, &DecoderConfig::default(), &VerifyOptions::default()).unwrap();
        assert_eq!(r.patterns_checked, 7);
        assert_eq!(r.failures_by_weight[2], 1);
        assert_eq!(r.failures.last().unwrap().support(), &[0, 1, 2]);
    }

    #[test]
    fn budget_is_enforced() {
        let g = gadgets::random_column_weight_three(100, 50, 0);
        let opts = VerifyOptions {
            budget: 1000,
            ..Default::default()
        };
        let r = exhaustive_verify(&g, 2, &DecoderConfig::default(), &opts);
        assert_eq!(
            r,
            Err(SimError::BudgetExceeded {
                required: 5050,
                budget: 1000
            })
        );
    }

    #[test]
    fn matches_oracle_and_is_partition_independent() {
        for seed in 0..4 {
            let g = gadgets::random_column_weight_three(24, 12, seed);
            let cfg = DecoderConfig::default();
            let seq = VerifyOptions {
                exec: Execution::Sequential,
                ..Default::default()
            };
            let a = exhaustive_verify(&g, 3, &cfg, &seq).unwrap();
            assert_eq!(a.failures, oracle_failures(&g, 3), "seed {seed}");
            let par = VerifyOptions {
                exec: Execution::Parallel,
                ..Default::default()
            };
            let b = crate::exec::with_threads(4, || exhaustive_verify(&g, 3, &cfg, &par).unwrap());
            assert_eq!(a.failures, b.failures);
            assert_eq!(a.failures_by_weight, b.failures_by_weight);
            assert_eq!(a.patterns_checked, 24 + 276 + 2024);
        }
    }
}
