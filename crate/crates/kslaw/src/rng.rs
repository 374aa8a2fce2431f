//! Reproducible random-number streams for the Monte Carlo experiments.
//!
//! Every experiment takes one master seed. Independent tasks (one (model, i,
//! n) cell of a rate sweep, one chunk of a large replicate batch) derive
//! their own ChaCha stream from that seed by stream index, so results are
//! byte-identical across runs *and* across thread counts: parallelism only
//! changes which core evaluates a chunk, never which random numbers the
//! chunk consumes.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

/// Replicates per independently-seeded chunk in [`parallel_replicates`].
pub const CHUNK_SIZE: usize = 4096;

/// A deterministic generator for stream `stream` under `master_seed`.
pub fn stream_rng(master_seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

/// Run `n` independent replicates of `sim`, in parallel, with output
/// identical to a sequential run: replicate indices are split into
/// fixed-size chunks, chunk `c` draws from `stream_rng(master_seed, c)`,
/// and results are returned in replicate order.
pub fn parallel_replicates<T, F>(master_seed: u64, n: usize, sim: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha12Rng) -> T + Sync,
{
    parallel_replicates_from(master_seed, 0, n, sim)
}

/// [`parallel_replicates`] with the chunk streams offset by `base_stream`.
/// Callers running several replicate batches under one master seed give
/// each batch its own 2³²-wide stream block (`base_stream = batch << 32`)
/// so batches never share a stream no matter how many chunks they use.
pub fn parallel_replicates_from<T, F>(master_seed: u64, base_stream: u64, n: usize, sim: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha12Rng) -> T + Sync,
{
    let chunks = n.div_ceil(CHUNK_SIZE);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK_SIZE;
            let hi = ((c + 1) * CHUNK_SIZE).min(n);
            let mut rng = stream_rng(master_seed, base_stream + c as u64);
            (lo..hi).map(|_| sim(&mut rng)).collect::<Vec<T>>()
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a: Vec<u64> = {
            let mut r = stream_rng(7, 0);
            (0..8).map(|_| r.random()).collect()
        };
        let b: Vec<u64> = {
            let mut r = stream_rng(7, 0);
            (0..8).map(|_| r.random()).collect()
        };
        let c: Vec<u64> = {
            let mut r = stream_rng(7, 1);
            (0..8).map(|_| r.random()).collect()
        };
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn parallel_matches_sequential_chunking() {
        let n = 3 * CHUNK_SIZE + 17;
        let par = parallel_replicates(42, n, |r| r.random::<f64>());
        let mut seq = Vec::with_capacity(n);
        let chunks = n.div_ceil(CHUNK_SIZE);
        for c in 0..chunks {
            let lo = c * CHUNK_SIZE;
            let hi = ((c + 1) * CHUNK_SIZE).min(n);
            let mut rng = stream_rng(42, c as u64);
            for _ in lo..hi {
                seq.push(rng.random::<f64>());
            }
        }
        assert_eq!(par, seq);
    }

    #[test]
    fn small_and_empty_batches() {
        assert_eq!(parallel_replicates(1, 0, |r| r.random::<u32>()).len(), 0);
        assert_eq!(parallel_replicates(1, 5, |r| r.random::<u32>()).len(), 5);
    }
}
