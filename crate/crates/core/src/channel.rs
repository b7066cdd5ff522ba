//! Lossy optical channel models for three signal carriers.
//!
//! A fiber of length `L` km at `a` dB/km transmits the fraction
//! `kappa = 10^(-a*L/10)` of the injected energy. What survives depends on
//! the carrier:
//!
//! - **single photon** — the pulse arrives intact with probability `kappa`
//!   and is otherwise gone;
//! - **coherent state** of mean photon number `|alpha|^2` — the pulse is
//!   detectable unless it collapses to vacuum, i.e. with probability
//!   `1 - exp(-kappa*|alpha|^2)`;
//! - **pulse position modulation (PPM)** — one coherent pulse in one of `N`
//!   slots; same survival formula per symbol, `log2(N)` bits per symbol,
//!   `|alpha|^2 / N` photons per pulse, and an `N`-fold bandwidth cost.
//!
//! All functions are pure; call them from any number of threads.

use crate::{Error, Result};

/// Default fiber attenuation at 1.55 um, dB/km.
pub const DEFAULT_LOSS_DB_PER_KM: f64 = 0.2;

/// Switch from direct binomial-coefficient evaluation to log-space
/// (via `lgamma`) above this photon number, so `C(n, k)` cannot overflow.
const BINOMIAL_LOG_SPACE_THRESHOLD: u32 = 30;

/// The physical link: fiber length and loss coefficient.
///
/// Transmissivity is always derived from these two inputs, never stored,
/// so the struct cannot go out of sync with itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    length_km: f64,
    loss_db_per_km: f64,
}

impl ChannelParams {
    /// Build a link from length (km) and loss coefficient (dB/km).
    /// Both must be finite and non-negative.
    pub fn new(length_km: f64, loss_db_per_km: f64) -> Result<Self> {
        if !length_km.is_finite() || length_km < 0.0 {
            return Err(Error::domain(format!(
                "fiber length must be finite and >= 0 km, got {length_km}"
            )));
        }
        if !loss_db_per_km.is_finite() || loss_db_per_km < 0.0 {
            return Err(Error::domain(format!(
                "loss coefficient must be finite and >= 0 dB/km, got {loss_db_per_km}"
            )));
        }
        Ok(ChannelParams {
            length_km,
            loss_db_per_km,
        })
    }

    /// Link with the default 0.2 dB/km loss.
    pub fn with_default_loss(length_km: f64) -> Result<Self> {
        Self::new(length_km, DEFAULT_LOSS_DB_PER_KM)
    }

    pub fn length_km(&self) -> f64 {
        self.length_km
    }

    pub fn loss_db_per_km(&self) -> f64 {
        self.loss_db_per_km
    }

    /// Fraction of optical energy surviving the link: `10^(-loss*L/10)`.
    ///
    /// Zero length (or zero loss) gives exactly 1.
    pub fn transmissivity(&self) -> f64 {
        transmissivity_unchecked(self.length_km, self.loss_db_per_km)
    }
}

/// The carrier placed on the link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SignalScheme {
    /// One photon per pulse.
    SinglePhoton,
    /// Coherent state with per-pulse mean photon number `|alpha|^2`.
    Coherent { mean_photon_number: f64 },
    /// Coherent pulse in one of `slots` positions; `mean_photon_number`
    /// is the total symbol energy `|alpha|^2`.
    Ppm { mean_photon_number: f64, slots: u32 },
}

impl SignalScheme {
    pub fn coherent(mean_photon_number: f64) -> Result<Self> {
        let scheme = SignalScheme::Coherent { mean_photon_number };
        scheme.validate()?;
        Ok(scheme)
    }

    pub fn ppm(mean_photon_number: f64, slots: u32) -> Result<Self> {
        let scheme = SignalScheme::Ppm {
            mean_photon_number,
            slots,
        };
        scheme.validate()?;
        Ok(scheme)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SignalScheme::SinglePhoton => Ok(()),
            SignalScheme::Coherent { mean_photon_number } => {
                if !mean_photon_number.is_finite() || mean_photon_number <= 0.0 {
                    return Err(Error::domain(format!(
                        "mean photon number must be finite and > 0, got {mean_photon_number}"
                    )));
                }
                Ok(())
            }
            SignalScheme::Ppm {
                mean_photon_number,
                slots,
            } => {
                if !mean_photon_number.is_finite() || mean_photon_number <= 0.0 {
                    return Err(Error::domain(format!(
                        "mean photon number must be finite and > 0, got {mean_photon_number}"
                    )));
                }
                if slots < 2 {
                    return Err(Error::domain(format!(
                        "PPM needs at least 2 slots, got {slots}"
                    )));
                }
                Ok(())
            }
        }
    }
}

/// What a receiver sees at the far end of the channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrivalReport {
    /// Probability that the pulse/symbol arrives at all.
    pub arrival_probability: f64,
    /// Data bits carried by one symbol (exact `log2(N)` for PPM).
    pub bits_per_symbol: f64,
    /// Photons per transmitted pulse (`|alpha|^2 / N` for PPM).
    pub energy_per_pulse: f64,
    /// Bandwidth relative to on-off keying at the same symbol rate:
    /// `N` for PPM, 1 otherwise.
    pub bandwidth_expansion: f64,
}

/// Fraction of optical energy surviving `length_km` of fiber at
/// `loss_db_per_km`: `10^(-loss*L/10)`, in `(0, 1]`.
pub fn transmissivity(length_km: f64, loss_db_per_km: f64) -> Result<f64> {
    let channel = ChannelParams::new(length_km, loss_db_per_km)?;
    Ok(channel.transmissivity())
}

fn transmissivity_unchecked(length_km: f64, loss_db_per_km: f64) -> f64 {
    10f64.powf(-loss_db_per_km * length_km / 10.0)
}

/// Distribution of the output photon number when `n` photons enter a
/// channel of transmissivity `kappa`.
///
/// Returns `(k, P(k out | n in))` for `k = 0..=n`, where
/// `P(k|n) = C(n,k) * kappa^k * (1-kappa)^(n-k)`. Probabilities sum to 1
/// within 1e-12. Large `n` is evaluated in log space.
pub fn photon_loss_pmf(n: u32, kappa: f64) -> Result<Vec<(u32, f64)>> {
    if !kappa.is_finite() || !(0.0..=1.0).contains(&kappa) {
        return Err(Error::domain(format!(
            "transmissivity must lie in [0, 1], got {kappa}"
        )));
    }
    // Degenerate endpoints: all mass at k = 0 or k = n, and 0^0 never arises.
    if n == 0 || kappa == 0.0 || kappa == 1.0 {
        let k_all = if kappa == 1.0 { n } else { 0 };
        return Ok((0..=n)
            .map(|k| (k, if k == k_all { 1.0 } else { 0.0 }))
            .collect());
    }
    let pmf = if n <= BINOMIAL_LOG_SPACE_THRESHOLD {
        photon_loss_pmf_direct(n, kappa)
    } else {
        photon_loss_pmf_log_space(n, kappa)
    };
    Ok(pmf)
}

fn photon_loss_pmf_direct(n: u32, kappa: f64) -> Vec<(u32, f64)> {
    let mut coeff = 1.0f64;
    (0..=n)
        .map(|k| {
            if k > 0 {
                coeff *= f64::from(n - k + 1) / f64::from(k);
            }
            let p = coeff
                * kappa.powi(k as i32)
                * (1.0 - kappa).powi((n - k) as i32);
            (k, p)
        })
        .collect()
}

fn photon_loss_pmf_log_space(n: u32, kappa: f64) -> Vec<(u32, f64)> {
    let ln_kappa = kappa.ln();
    let ln_loss = (1.0 - kappa).ln();
    let lgamma_n1 = libm::lgamma(f64::from(n) + 1.0);
    (0..=n)
        .map(|k| {
            let kf = f64::from(k);
            let ln_coeff = lgamma_n1
                - libm::lgamma(kf + 1.0)
                - libm::lgamma(f64::from(n - k) + 1.0);
            let ln_p = ln_coeff + kf * ln_kappa + f64::from(n - k) * ln_loss;
            (k, ln_p.exp())
        })
        .collect()
}

/// Arrival statistics for a carrier on a link.
pub fn arrival(scheme: SignalScheme, channel: ChannelParams) -> Result<ArrivalReport> {
    scheme.validate()?;
    let kappa = channel.transmissivity();
    let report = match scheme {
        SignalScheme::SinglePhoton => ArrivalReport {
            arrival_probability: kappa,
            bits_per_symbol: 1.0,
            energy_per_pulse: 1.0,
            bandwidth_expansion: 1.0,
        },
        SignalScheme::Coherent { mean_photon_number } => ArrivalReport {
            arrival_probability: coherent_survival(kappa, mean_photon_number),
            bits_per_symbol: 1.0,
            energy_per_pulse: mean_photon_number,
            bandwidth_expansion: 1.0,
        },
        SignalScheme::Ppm {
            mean_photon_number,
            slots,
        } => ArrivalReport {
            arrival_probability: coherent_survival(kappa, mean_photon_number),
            bits_per_symbol: f64::from(slots).log2(),
            energy_per_pulse: mean_photon_number / f64::from(slots),
            bandwidth_expansion: f64::from(slots),
        },
    };
    Ok(report)
}

/// `1 - exp(-kappa*|alpha|^2)`: probability that an attenuated coherent
/// pulse is not vacuum. Shared by the coherent and PPM carriers.
fn coherent_survival(kappa: f64, mean_photon_number: f64) -> f64 {
    -(-kappa * mean_photon_number).exp_m1()
}
