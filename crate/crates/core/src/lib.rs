//! Performance models for quantum-secured optical links.
//!
//! Four building blocks, each usable on its own:
//!
//! - [`channel`] — lossy-fiber arrival models for single-photon, coherent,
//!   and pulse-position-modulated carriers;
//! - [`qkd`] — the per-pulse secret-key-rate bound `log2(1/(1-kappa))` and
//!   the throughput it leaves after pulse loss;
//! - [`scenarios`] — cryptosystem-level arithmetic: AES rekey intervals and
//!   ciphertext exposure, one-time-pad key buffering, stream-cipher rate
//!   preservation, and compliance against the 1-100 Gbit/s /
//!   1000-10000 km envelope;
//! - [`enigma`] — a deterministic Monte Carlo of a quantum-noise stream
//!   cipher: keystream-selected phase keying where the keyed receiver is
//!   error-free for practical purposes while a keyless interceptor's
//!   decisions are randomized by measurement noise.
//!
//! Monte Carlo results are pure functions of their configuration
//! (including the seed) and are bitwise independent of thread count; see
//! [`enigma::montecarlo`] for the contract. The `parallel` feature
//! (default) runs trial chunks on rayon; disabling it falls back to the
//! identical sequential path.

pub mod channel;
pub mod enigma;
pub mod error;
pub mod qkd;
pub mod scenarios;

pub use error::Error;

pub type Result<T> = std::result::Result<T, Error>;
