//! Execution strategy: a data-parallel core with a sequential fallback.
//!
//! Every bulk computation in this crate funnels through the helpers here, so
//! a single switch selects between rayon worker pools and a plain loop. Both
//! paths produce *identical* results: parallel folds collect per-chunk
//! results in chunk order before combining, and randomized trials derive an
//! independent, index-keyed generator per trial instead of sharing one
//! stream. When the `parallel` cargo feature is disabled, `Parallel`
//! silently degrades to `Sequential`.

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExecMode {
    Sequential,
    Parallel,
}

impl ExecMode {
    /// The mode that will actually run: `Parallel` degrades to `Sequential`
    /// when the `parallel` feature is compiled out.
    pub fn effective(self) -> ExecMode {
        #[cfg(feature = "parallel")]
        {
            self
        }
        #[cfg(not(feature = "parallel"))]
        {
            ExecMode::Sequential
        }
    }
}

impl std::fmt::Display for ExecMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExecMode::Sequential => write!(f, "sequential"),
            ExecMode::Parallel => write!(f, "parallel"),
        }
    }
}

/// A generator for trial number `stream` of a run seeded with `seed`.
///
/// The two words are mixed through splitmix64 so that nearby (seed, stream)
/// pairs land far apart in state space; every trial is reproducible in
/// isolation, independent of thread scheduling.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut z = seed ^ stream.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^= z >> 31;
    let mut rng = ChaCha12Rng::seed_from_u64(z);
    rng.set_stream(stream);
    rng
}

/// Maps `f` over `0..n`, in parallel when requested; the result vector is in
/// index order either way.
pub fn map_indexed<T, Op>(mode: ExecMode, n: usize, f: Op) -> Vec<T>
where
    T: Send,
    Op: Fn(usize) -> T + Sync + Send,
{
    match mode.effective() {
        ExecMode::Sequential => (0..n).map(f).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                (0..n).into_par_iter().map(f).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                unreachable!("effective() removes Parallel without the feature")
            }
        }
    }
}

/// Splits `[start, end)` into chunks of at most `chunk` items, maps each
/// chunk to a partial result, and combines the partials **in chunk order** —
/// so any associative `combine` yields the same answer in both modes.
pub fn fold_chunks<T, Map, Combine>(
    mode: ExecMode,
    start: u64,
    end: u64,
    chunk: u64,
    map: Map,
    combine: Combine,
) -> Option<T>
where
    T: Send,
    Map: Fn(u64, u64) -> T + Sync + Send,
    Combine: Fn(T, T) -> T,
{
    assert!(chunk > 0);
    let bounds: Vec<(u64, u64)> = {
        let mut v = Vec::new();
        let mut lo = start;
        while lo < end {
            let hi = (lo + chunk).min(end);
            v.push((lo, hi));
            lo = hi;
        }
        v
    };
    let partials: Vec<T> = match mode.effective() {
        ExecMode::Sequential => bounds.iter().map(|&(lo, hi)| map(lo, hi)).collect(),
        ExecMode::Parallel => {
            #[cfg(feature = "parallel")]
            {
                bounds.par_iter().map(|&(lo, hi)| map(lo, hi)).collect()
            }
            #[cfg(not(feature = "parallel"))]
            {
                unreachable!("effective() removes Parallel without the feature")
            }
        }
    };
    partials.into_iter().reduce(combine)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::RngCore;

    #[test]
    fn trial_rngs_are_reproducible_and_distinct() {
        let a1: Vec<u64> = (0..4).map(|_| trial_rng(7, 3).next_u64()).collect();
        let a2 = trial_rng(7, 3).next_u64();
        assert!(a1.iter().all(|&x| x == a2));
        assert_ne!(trial_rng(7, 3).next_u64(), trial_rng(7, 4).next_u64());
        assert_ne!(trial_rng(7, 3).next_u64(), trial_rng(8, 3).next_u64());
    }

    #[test]
    fn fold_chunks_matches_direct_sum() {
        let direct: u64 = (0u64..1000).map(|i| i * i).sum();
        for mode in [ExecMode::Sequential, ExecMode::Parallel] {
            let got = fold_chunks(
                mode,
                0,
                1000,
                37,
                |lo, hi| (lo..hi).map(|i| i * i).sum::<u64>(),
                |a, b| a + b,
            )
            .unwrap();
            assert_eq!(got, direct);
        }
    }

    #[test]
    fn map_indexed_preserves_order() {
        for mode in [ExecMode::Sequential, ExecMode::Parallel] {
            let v = map_indexed(mode, 100, |i| i * 3);
            assert_eq!(v, (0..100).map(|i| i * 3).collect::<Vec<_>>());
        }
    }

    #[test]
    fn empty_fold_is_none() {
        let r = fold_chunks(ExecMode::Sequential, 5, 5, 10, |_, _| 1u32, |a, b| a + b);
        assert_eq!(r, None);
    }
}
