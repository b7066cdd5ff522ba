//! Seed-key expansion into the per-symbol basis sequence.
//!
//! The cipher's mathematical box stretches a short shared key into one
//! basis index per symbol. The generator is deliberately small, fully
//! specified, and bit-for-bit reproducible in any language. It is **not**
//! cryptographic strength; this crate is a simulator.
//!
//! Construction (all arithmetic on `u64`, wrapping):
//!
//! 1. **Key packing.** Key bit `i` is bit `i % 8` (LSB first) of byte
//!    `i / 8`. Bytes beyond the key length are zero.
//! 2. **Absorb.** `state = 0x243F6A8885A308D3`; for each 8-byte block of
//!    the packed key, read as a little-endian `u64` (zero-padded):
//!    `state = mix64(state ^ block)`.
//! 3. **Stream.** Word `w(i) = mix64(state + (i+1) * 0x9E3779B97F4A7C15)`,
//!    the SplitMix64 sequence seeded with the absorbed state. The stream
//!    is a pure function of `i`, so any offset can be read in O(1).
//! 4. **Bits.** Keystream bit `t` is bit `t % 64` (LSB first) of word
//!    `t / 64`. Symbol `s` consumes bits `[s*b, (s+1)*b)` with
//!    `b = ceil(log2(M))`, assembled LSB first; its basis index is that
//!    value reduced mod `M`. For power-of-two `M` this is exactly
//!    `log2(M)` bits per symbol and the reduction is a no-op.
//!
//! `mix64` is the SplitMix64 finalizer:
//! `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27;
//!  z *= 0x94D049BB133111EB; z ^= z >> 31`.

use crate::{Error, Result};

/// Absorb initializer (first 64 fractional bits of pi).
const ABSORB_INIT: u64 = 0x243F_6A88_85A3_08D3;
/// SplitMix64 increment (the 64-bit golden ratio).
const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// Shortest key the expander accepts, bits.
pub const MIN_SEED_KEY_BITS: u32 = 16;

/// SplitMix64 finalizer.
#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Word `i` of the SplitMix64 stream seeded with `state`.
#[inline]
fn stream_word(state: u64, index: u64) -> u64 {
    mix64(state.wrapping_add(GAMMA.wrapping_mul(index.wrapping_add(1))))
}

/// A shared secret key of explicit bit length.
///
/// Bits are packed LSB first into bytes; unused high bits of the final
/// byte are forced to zero so equal keys compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedKey {
    bytes: Vec<u8>,
    bit_len: u32,
}

impl SeedKey {
    /// Wrap raw key material. `bit_len` must be positive and fit in
    /// `bytes`.
    pub fn from_bytes(bytes: Vec<u8>, bit_len: u32) -> Result<Self> {
        if bit_len == 0 {
            return Err(Error::config("seed key must have at least 1 bit"));
        }
        if (bit_len as usize).div_ceil(8) > bytes.len() {
            return Err(Error::config(format!(
                "seed key of {bit_len} bits needs {} bytes, got {}",
                (bit_len as usize).div_ceil(8),
                bytes.len()
            )));
        }
        let mut bytes = bytes;
        bytes.truncate((bit_len as usize).div_ceil(8));
        // Zero the tail bits of a partial final byte.
        let tail = bit_len % 8;
        if tail != 0 {
            if let Some(last) = bytes.last_mut() {
                *last &= (1u8 << tail) - 1;
            }
        }
        Ok(SeedKey { bytes, bit_len })
    }

    /// Deterministically expand a 64-bit seed into `bit_len` key bits,
    /// using the same SplitMix64 stream as the expander (words of
    /// `stream_word(seed, i)` serialized little-endian).
    pub fn derive(seed: u64, bit_len: u32) -> Result<Self> {
        if bit_len == 0 {
            return Err(Error::config("seed key must have at least 1 bit"));
        }
        let n_bytes = (bit_len as usize).div_ceil(8);
        let mut bytes = Vec::with_capacity(n_bytes);
        let mut word_index = 0u64;
        while bytes.len() < n_bytes {
            bytes.extend_from_slice(&stream_word(seed, word_index).to_le_bytes());
            word_index += 1;
        }
        Self::from_bytes(bytes, bit_len)
    }

    pub fn bit_len(&self) -> u32 {
        self.bit_len
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes
    }

    /// Key bit `i`, LSB-first packing.
    pub fn bit(&self, i: u32) -> bool {
        debug_assert!(i < self.bit_len);
        (self.bytes[(i / 8) as usize] >> (i % 8)) & 1 == 1
    }

    /// Absorbed generator state for this key.
    fn absorb(&self) -> u64 {
        let mut state = ABSORB_INIT;
        for block in self.bytes.chunks(8) {
            let mut buf = [0u8; 8];
            buf[..block.len()].copy_from_slice(block);
            state = mix64(state ^ u64::from_le_bytes(buf));
        }
        state
    }
}

/// The per-symbol basis sequence for a key and constellation size.
///
/// Random access (`basis`) and iteration read the same stream; both are
/// pure functions of the key, so transmitter and receiver instances built
/// from equal keys always agree.
#[derive(Debug, Clone)]
pub struct Keystream {
    state: u64,
    num_bases: u32,
    bits_per_symbol: u32,
    next_symbol: u64,
}

impl Keystream {
    pub fn new(key: &SeedKey, num_bases: u32) -> Result<Self> {
        if key.bit_len() < MIN_SEED_KEY_BITS {
            return Err(Error::config(format!(
                "seed key too short: {} bits, need at least {MIN_SEED_KEY_BITS}",
                key.bit_len()
            )));
        }
        if num_bases < 2 {
            return Err(Error::config(format!(
                "need at least 2 bases, got {num_bases}"
            )));
        }
        Ok(Keystream {
            state: key.absorb(),
            num_bases,
            bits_per_symbol: bits_for(num_bases),
            next_symbol: 0,
        })
    }

    pub fn num_bases(&self) -> u32 {
        self.num_bases
    }

    /// Keystream bits consumed per symbol: `ceil(log2(M))`.
    pub fn bits_per_symbol(&self) -> u32 {
        self.bits_per_symbol
    }

    /// Basis index of symbol `s`, in `[0, M)`. O(1) for any `s`.
    pub fn basis(&self, symbol: u64) -> u32 {
        let b = u64::from(self.bits_per_symbol);
        let bit_offset = symbol * b;
        let word_index = bit_offset / 64;
        let shift = bit_offset % 64;
        let mask = (1u64 << b) - 1;
        let mut chunk = stream_word(self.state, word_index) >> shift;
        let available = 64 - shift;
        if available < b {
            chunk |= stream_word(self.state, word_index + 1) << available;
        }
        ((chunk & mask) % u64::from(self.num_bases)) as u32
    }
}

impl Iterator for Keystream {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        let basis = self.basis(self.next_symbol);
        self.next_symbol += 1;
        Some(basis)
    }
}

/// Bits needed to index `m` values: `ceil(log2(m))` for `m >= 2`.
fn bits_for(m: u32) -> u32 {
    32 - (m - 1).leading_zeros()
}

/// Expand a seed key into `num_symbols` basis indices in `[0, num_bases)`.
///
/// Deterministic given the key; identical keys on transmitter and
/// receiver yield identical sequences. The key must carry at least
/// [`MIN_SEED_KEY_BITS`] bits.
pub fn expand_keystream(
    key: &SeedKey,
    num_bases: u32,
    num_symbols: usize,
) -> Result<Vec<u32>> {
    if num_symbols == 0 {
        return Err(Error::usage("keystream expansion needs at least 1 symbol"));
    }
    let stream = Keystream::new(key, num_bases)?;
    Ok(stream.take(num_symbols).collect())
}
