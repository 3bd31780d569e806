//! Indexed streams of error patterns. Exhaustive sweeps and Monte Carlo
//! runs both read patterns by index, so either can be split across workers
//! without changing which pattern a given index denotes.

use super::rng::{for_each_hit, trial_stream};
use super::SimError;

pub trait PatternSource: Sync {
    /// Code length.
    fn n(&self) -> usize;
    /// Number of patterns in the stream.
    fn len(&self) -> u64;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    /// Writes the ascending support of pattern `index` into `out`.
    fn pattern(&self, index: u64, out: &mut Vec<usize>);
}

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// All weight-`k` supports of length `n` in colexicographic order: rank
/// `r` is the unique `c_1 < .. < c_k` with `r = sum C(c_j, j)`.
#[derive(Debug, Clone)]
pub struct ColexPatterns {
    n: usize,
    k: usize,
    len: u64,
    /// `table[j][c] = C(c, j)` for `j <= k`, `c < n`.
    table: Vec<Vec<u64>>,
}

impl ColexPatterns {
    pub fn new(n: usize, k: usize) -> Self {
        let table = (0..=k)
            .map(|j| (0..n).map(|c| binomial(c as u64, j as u64)).collect())
            .collect();
        ColexPatterns {
            n,
            k,
            len: binomial(n as u64, k as u64),
            table,
        }
    }

    pub fn weight(&self) -> usize {
        self.k
    }
}

impl PatternSource for ColexPatterns {
    fn n(&self) -> usize {
        self.n
    }

    fn len(&self) -> u64 {
        self.len
    }

    fn pattern(&self, index: u64, out: &mut Vec<usize>) {
        debug_assert!(index < self.len);
        out.clear();
        out.resize(self.k, 0);
        let mut r = index;
        let mut hi = self.n;
        for j in (1..=self.k).rev() {
            let row = &self.table[j];
            // largest c < hi with C(c, j) <= r
            let c = row[..hi].partition_point(|&b| b <= r) - 1;
            out[j - 1] = c;
            r -= row[c];
            hi = c;
        }
    }
}

/// BSC(`alpha`) error patterns: pattern `t` is drawn from
/// [`trial_stream`]`(seed, t)` with a shared coupling `ceiling`, so runs at
/// different `alpha` under one ceiling see nested flip sets trial by trial.
#[derive(Debug, Clone)]
pub struct BscPatterns {
    n: usize,
    alpha: f64,
    ceiling: f64,
    seed: u64,
    trials: u64,
}

impl BscPatterns {
    pub fn new(
        n: usize,
        alpha: f64,
        ceiling: f64,
        seed: u64,
        trials: u64,
    ) -> Result<Self, SimError> {
        if !(0.0..=0.5).contains(&alpha) {
            return Err(SimError::AlphaOutOfRange(alpha));
        }
        if !(ceiling >= alpha && ceiling <= 1.0) {
            return Err(SimError::CeilingBelowAlpha { alpha, ceiling });
        }
        Ok(BscPatterns {
            n,
            alpha,
            ceiling,
            seed,
            trials,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

impl PatternSource for BscPatterns {
    fn n(&self) -> usize {
        self.n
    }

    fn len(&self) -> u64 {
        self.trials
    }

    fn pattern(&self, index: u64, out: &mut Vec<usize>) {
        out.clear();
        let alpha = self.alpha;
        let mut rng = trial_stream(self.seed, index);
        for_each_hit(self.n, self.ceiling, &mut rng, |i, u| {
            if u < alpha {
                out.push(i);
            }
        });
    }
}
