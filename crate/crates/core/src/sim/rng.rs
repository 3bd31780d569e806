//! Counter-based random streams and the BSC.
//!
//! Trial `t` of a run seeded with `s` always reads ChaCha8 stream `t` under
//! key `s`, so a trial's randomness does not depend on which worker runs it
//! or in what order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::SimError;

pub fn trial_stream(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Calls `hit(i, u_i)` for every position `i < n` whose uniform `u_i`
/// falls below `ceiling`, in ascending `i`. Positions are reached by
/// geometric skips, so the cost is proportional to the number of hits
/// rather than to `n`.
///
/// Every `u_i` is uniform on `[0, 1)`; keeping only hits with `u_i < alpha`
/// yields an exact BSC(`alpha`) flip set for any `alpha <= ceiling`, and the
/// flip sets of one draw are nested in `alpha`.
pub fn for_each_hit<R: Rng>(n: usize, ceiling: f64, rng: &mut R, mut hit: impl FnMut(usize, f64)) {
    if ceiling <= 0.0 || n == 0 {
        return;
    }
    if ceiling >= 1.0 {
        for i in 0..n {
            hit(i, rng.random::<f64>());
        }
        return;
    }
    let log_keep = (-ceiling).ln_1p();
    let mut pos = 0usize;
    while pos < n {
        let u: f64 = rng.random();
        let skip = ((1.0 - u).ln() / log_keep).floor();
        if skip >= (n - pos) as f64 {
            break;
        }
        pos += skip as usize;
        hit(pos, rng.random::<f64>() * ceiling);
        pos += 1;
    }
}

/// Collects the hits of [`for_each_hit`] into `out`.
pub fn draw_flips<R: Rng>(n: usize, ceiling: f64, rng: &mut R, out: &mut Vec<(usize, f64)>) {
    out.clear();
    for_each_hit(n, ceiling, rng, |i, u| out.push((i, u)));
}

/// Flips each bit of `word` independently with probability `alpha`.
pub fn bsc_transmit<R: Rng>(word: &[u8], alpha: f64, rng: &mut R) -> Result<Vec<u8>, SimError> {
    if !(0.0..=0.5).contains(&alpha) {
        return Err(SimError::AlphaOutOfRange(alpha));
    }
    let mut out = word.to_vec();
    for_each_hit(word.len(), alpha, rng, |i, _| out[i] ^= 1);
    Ok(out)
}
