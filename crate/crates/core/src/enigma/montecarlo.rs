//! Deterministic chunked Monte Carlo engine for the cipher link.
//!
//! # Seed-splitting contract
//!
//! Every simulation here is a pure function of `(CipherConfig, trials)`:
//!
//! - Trials are partitioned into fixed logical chunks of
//!   [`CHUNK_TRIALS`] symbols; chunk `c` covers symbols
//!   `[c*CHUNK_TRIALS, (c+1)*CHUNK_TRIALS)`.
//! - Each operation derives a base seed `mix64(rng_seed XOR TAG)` from a
//!   per-operation tag, and chunk `c` runs its own ChaCha8 noise stream
//!   seeded with `base XOR c`.
//! - Chunks report plain integer counts, reduced by addition in chunk
//!   order.
//!
//! The chunk layout never depends on how many threads execute it, and
//! integer sums are exact, so results are bitwise identical across worker
//! counts and across the parallel/sequential paths.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::constellation::Constellation;
use super::keystream::Keystream;
use super::{CipherConfig, Detector};

/// Symbols per logical chunk of the seed-splitting contract.
pub const CHUNK_TRIALS: u64 = 16_384;

/// Per-operation seed tags (high bits only, so they never collide with
/// chunk indices under XOR).
const TAG_BOB: u64 = 0x424F_4200 << 32;
const TAG_EVE: u64 = 0x4556_4500 << 32;
const TAG_PIPELINE: u64 = 0x5049_5045 << 32;

/// How to execute the chunk loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    /// Rayon when the `parallel` feature is enabled, sequential otherwise.
    #[default]
    Auto,
    /// Single-threaded reference path; bit-identical to `Auto`.
    Sequential,
}

/// Integer outcome of one chunk; merging is exact.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub(super) struct Counts {
    pub trials: u64,
    pub errors: u64,
    pub bits_out: u64,
}

impl Counts {
    fn merge(self, other: Counts) -> Counts {
        Counts {
            trials: self.trials + other.trials,
            errors: self.errors + other.errors,
            bits_out: self.bits_out + other.bits_out,
        }
    }
}

/// SplitMix64 finalizer, reused here for seed derivation.
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn chunk_layout(total_trials: u64) -> Vec<(u64, u64, u64)> {
    let mut chunks = Vec::with_capacity(total_trials.div_ceil(CHUNK_TRIALS) as usize);
    let mut start = 0u64;
    let mut index = 0u64;
    while start < total_trials {
        let len = CHUNK_TRIALS.min(total_trials - start);
        chunks.push((index, start, len));
        start += len;
        index += 1;
    }
    chunks
}

fn run_chunked<K>(total_trials: u64, execution: Execution, kernel: K) -> Counts
where
    K: Fn(u64, u64, u64) -> Counts + Sync,
{
    let chunks = chunk_layout(total_trials);
    let outcomes: Vec<Counts> = match execution {
        #[cfg(feature = "parallel")]
        Execution::Auto => chunks
            .into_par_iter()
            .map(|(index, start, len)| kernel(index, start, len))
            .collect(),
        #[cfg(not(feature = "parallel"))]
        Execution::Auto => chunks
            .into_iter()
            .map(|(index, start, len)| kernel(index, start, len))
            .collect(),
        Execution::Sequential => chunks
            .into_iter()
            .map(|(index, start, len)| kernel(index, start, len))
            .collect(),
    };
    outcomes.into_iter().fold(Counts::default(), Counts::merge)
}

fn chunk_rng(base_seed: u64, chunk_index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(base_seed ^ chunk_index)
}

/// Keyed homodyne/heterodyne receiver: antipodal decision along the
/// known basis axis. Returns error counts.
pub(super) fn run_bob_trials(
    cfg: &CipherConfig,
    keystream: &Keystream,
    trials: u64,
    execution: Execution,
) -> Counts {
    let constellation = Constellation::new(cfg.num_bases).expect("validated config");
    let mu = (cfg.bob_transmissivity * cfg.mean_photon_number).sqrt();
    let sigma = cfg.detector.quadrature_std();
    let base_seed = mix64(cfg.rng_seed ^ TAG_BOB);

    run_chunked(trials, execution, |chunk, start, len| {
        let mut rng = chunk_rng(base_seed, chunk);
        let mut errors = 0u64;
        for i in 0..len {
            let symbol = start + i;
            let basis = keystream.basis(symbol);
            let data_bit: bool = rng.gen();
            let sent = constellation.encode(basis, data_bit);
            // Along the basis axis the pair collapses to +/- mu.
            let polarity = sent >= cfg.num_bases;
            let noise: f64 = rng.sample(StandardNormal);
            let outcome = if polarity { -mu } else { mu } + sigma * noise;
            let decoded_polarity = outcome < 0.0;
            let decoded_bit = decoded_polarity ^ (basis & 1 == 1);
            errors += u64::from(decoded_bit != data_bit);
        }
        Counts {
            trials: len,
            errors,
            bits_out: len,
        }
    })
}

/// Keyless heterodyne interceptor: measures both quadratures behind a tap
/// of transmissivity `eve_transmissivity`, snaps to the nearest of the 2M
/// points, and reads that point's data-bit label. If the point estimate is
/// exactly right the bit is always right; the penalty comes entirely from
/// neighboring points carrying opposite bits.
pub(super) fn run_eve_trials(
    cfg: &CipherConfig,
    keystream: &Keystream,
    trials: u64,
    execution: Execution,
) -> Counts {
    let constellation = Constellation::new(cfg.num_bases).expect("validated config");
    let amplitude = (cfg.eve_transmissivity * cfg.mean_photon_number).sqrt();
    let sigma = Detector::Heterodyne.quadrature_std();
    let base_seed = mix64(cfg.rng_seed ^ TAG_EVE);

    run_chunked(trials, execution, |chunk, start, len| {
        let mut rng = chunk_rng(base_seed, chunk);
        let mut errors = 0u64;
        for i in 0..len {
            let symbol = start + i;
            let basis = keystream.basis(symbol);
            let data_bit: bool = rng.gen();
            let sent = constellation.encode(basis, data_bit);
            let phase = constellation.phase_of(sent);
            let nx: f64 = rng.sample(StandardNormal);
            let ny: f64 = rng.sample(StandardNormal);
            let x = amplitude * phase.cos() + sigma * nx;
            let y = amplitude * phase.sin() + sigma * ny;
            let guess = constellation.nearest_index(x, y);
            let decoded_bit = constellation.data_bit_of(guess);
            errors += u64::from(decoded_bit != data_bit);
        }
        Counts {
            trials: len,
            errors,
            bits_out: 0,
        }
    })
}

/// Full encrypt/modulate/demodulate/decrypt pipeline between a transmitter
/// and a receiver holding independently constructed keystreams from the
/// same key. Emits exactly one data bit per symbol; counts decode errors.
pub(super) fn run_pipeline(
    cfg: &CipherConfig,
    tx_keystream: &Keystream,
    rx_keystream: &Keystream,
    symbols: u64,
    execution: Execution,
) -> Counts {
    let constellation = Constellation::new(cfg.num_bases).expect("validated config");
    let mu = (cfg.bob_transmissivity * cfg.mean_photon_number).sqrt();
    let sigma = cfg.detector.quadrature_std();
    let base_seed = mix64(cfg.rng_seed ^ TAG_PIPELINE);

    run_chunked(symbols, execution, |chunk, start, len| {
        let mut rng = chunk_rng(base_seed, chunk);
        let mut errors = 0u64;
        let mut bits_out = 0u64;
        for i in 0..len {
            let symbol = start + i;
            let data_bit: bool = rng.gen();

            // Transmitter: keystream basis + polarity-alternated encoding.
            let tx_basis = tx_keystream.basis(symbol);
            let sent = constellation.encode(tx_basis, data_bit);
            let polarity = sent >= cfg.num_bases;

            // Receiver: own keystream instance, measurement along its
            // basis axis, then the inverse bit mapping.
            let rx_basis = rx_keystream.basis(symbol);
            let noise: f64 = rng.sample(StandardNormal);
            let outcome = if polarity { -mu } else { mu } + sigma * noise;
            let decoded_polarity = outcome < 0.0;
            let decoded_bit = decoded_polarity ^ (rx_basis & 1 == 1);

            bits_out += 1;
            errors += u64::from(decoded_bit != data_bit);
        }
        Counts {
            trials: len,
            errors,
            bits_out,
        }
    })
}
