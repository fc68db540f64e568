//! Seed-indexed batch evaluation. With the `parallel` feature (on by
//! default) seeds are mapped on the rayon pool; otherwise, and always through
//! [`map_seeds_sequential`], they run in order on the calling thread. Results
//! come back in seed order either way.

use std::ops::Range;

/// Maps `f` over `seeds`, in parallel when the `parallel` feature is enabled.
pub fn map_seeds<T, F>(seeds: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        seeds.into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_seeds_sequential(seeds, f)
    }
}

pub fn map_seeds_sequential<T, F>(seeds: Range<u64>, f: F) -> Vec<T>
where
    F: Fn(u64) -> T,
{
    seeds.map(f).collect()
}

/// Count of seeds for which `pred` is false, with the first few offenders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tally {
    pub trials: usize,
    pub failures: usize,
    pub first_failures: Vec<u64>,
}

impl Tally {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn tally<F>(seeds: Range<u64>, pred: F) -> Tally
where
    F: Fn(u64) -> bool + Sync + Send,
{
    let start = seeds.start;
    let outcomes = map_seeds(seeds, pred);
    let failed: Vec<u64> = outcomes
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| start + i as u64)
        .collect();
    Tally {
        trials: outcomes.len(),
        failures: failed.len(),
        first_failures: failed.into_iter().take(8).collect(),
    }
}
