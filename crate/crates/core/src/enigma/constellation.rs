//! Phase constellation of the cipher: 2M coherent states on a circle.
//!
//! Point `k` sits at phase `pi*k/M`. Basis `j` (selected per symbol by the
//! keystream) owns the antipodal pair `{j, j+M}`; the data bit picks the
//! member. The bit-to-point mapping alternates polarity with the basis
//! index — `point = j + M*(bit XOR (j mod 2))` — so *neighboring* points
//! on the circle carry opposite data bits. A receiver that cannot resolve
//! neighboring points (spacing `pi/M` below its phase noise) therefore
//! learns nothing about the bit, while the keyed receiver faces a plain
//! antipodal decision at full signal separation.
//!
//! For even M the alternation has exactly two seam adjacencies
//! (`M-1 -> M` and `2M-1 -> 0`) where the label repeats: a proper
//! 2-coloring of an even cycle assigns antipodal points the same color,
//! so some defect is unavoidable. Its weight on interceptor statistics is
//! O(1/M).

use crate::{Error, Result};
use std::f64::consts::PI;

/// One signal point as seen by a receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstellationPoint {
    /// Point index in `[0, 2M)`.
    pub index: u32,
    /// Carrier phase `pi*index/M`, in `[0, 2*pi)`.
    pub phase: f64,
    /// Field amplitude at the receiver, `sqrt(kappa*|alpha|^2)`.
    pub amplitude: f64,
}

/// The 2M-point phase constellation for `M` bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constellation {
    num_bases: u32,
}

impl Constellation {
    pub fn new(num_bases: u32) -> Result<Self> {
        if num_bases < 2 {
            return Err(Error::config(format!(
                "need at least 2 bases, got {num_bases}"
            )));
        }
        Ok(Constellation { num_bases })
    }

    pub fn num_bases(&self) -> u32 {
        self.num_bases
    }

    pub fn num_points(&self) -> u32 {
        2 * self.num_bases
    }

    /// Angular distance between neighboring points, `pi/M` rad.
    pub fn spacing_rad(&self) -> f64 {
        PI / f64::from(self.num_bases)
    }

    /// Phase of point `index`.
    pub fn phase_of(&self, index: u32) -> f64 {
        debug_assert!(index < self.num_points());
        PI * f64::from(index) / f64::from(self.num_bases)
    }

    /// Point transmitted for `(basis, data_bit)`:
    /// `basis + M*(bit XOR parity(basis))`.
    pub fn encode(&self, basis: u32, data_bit: bool) -> u32 {
        debug_assert!(basis < self.num_bases);
        let polarity = basis & 1 == 1;
        basis + self.num_bases * u32::from(data_bit ^ polarity)
    }

    /// Basis that owns point `index`.
    pub fn basis_of(&self, index: u32) -> u32 {
        index % self.num_bases
    }

    /// Data bit carried by point `index` — the exact inverse of
    /// [`encode`](Self::encode): `(index div M) XOR parity(index mod M)`.
    pub fn data_bit_of(&self, index: u32) -> bool {
        let basis = index % self.num_bases;
        let half = index / self.num_bases;
        (half == 1) ^ (basis & 1 == 1)
    }

    /// Index of the point nearest in angle to the measured quadrature
    /// pair `(x, y)`. Exact angular ties go to the lower index.
    pub fn nearest_index(&self, x: f64, y: f64) -> u32 {
        let mut angle = y.atan2(x);
        if angle < 0.0 {
            angle += 2.0 * PI;
        }
        self.index_from_angle(angle)
    }

    /// Nearest point to a phase angle (radians, any finite value).
    fn index_from_angle(&self, angle_rad: f64) -> u32 {
        let cells = angle_rad / self.spacing_rad() + 0.5;
        let mut k = cells.floor() as i64;
        if cells == k as f64 {
            // Exactly on a cell boundary: lower index wins.
            k -= 1;
        }
        (k.rem_euclid(i64::from(self.num_points()))) as u32
    }

    /// Point `index` as seen behind a tap of transmissivity `kappa` with
    /// transmitted mean photon number `|alpha|^2`.
    pub fn received_point(&self, index: u32, kappa: f64, mean_photon_number: f64) -> ConstellationPoint {
        ConstellationPoint {
            index,
            phase: self.phase_of(index),
            amplitude: (kappa * mean_photon_number).sqrt(),
        }
    }
}
