//! Secret-key-rate bound and effective throughput versus distance.
//!
//! The per-pulse key rate of a lossy link with transmissivity `kappa` is
//! bounded by `R = log2(1/(1-kappa))` bit/pulse, which behaves as
//! `kappa/ln 2 ~ 1.44*kappa` for small `kappa`. The log base here is 2:
//! the bound is quoted together with its `1.44*kappa` asymptote, and
//! `1/ln 2 = 1.4427` forces base 2.
//!
//! Because a single-photon pulse only arrives with probability
//! `R_S = kappa` in the first place, the throughput-relevant efficiency is
//! `R_E = R_S * R ~ 1.44*kappa^2` bit per injected pulse. Both `R` and
//! `R_E` are exposed so either convention can be inspected.

use crate::channel::ChannelParams;
use crate::{Error, Result};

/// Key-rate figures for one link configuration, per pulse and per second.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateReport {
    /// Channel transmissivity.
    pub kappa: f64,
    /// Key-rate bound `R = log2(1/(1-kappa))`, bit/pulse.
    pub rate_per_pulse: f64,
    /// Pulse survival fraction `R_S = kappa`.
    pub arrival_rate: f64,
    /// Effective rate `R_E = R_S * R`, bit per injected pulse.
    pub effective_rate_per_pulse: f64,
    /// Source pulse rate, treated as 1 bit/pulse at the input.
    pub input_rate_bps: f64,
    /// `R_E * input_rate_bps`, bit/s.
    pub output_rate_bps: f64,
}

/// One row of a distance sweep. `report` is `Err` where the length falls
/// outside the rate bound's domain (lossless rows have `kappa = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct RateTableRow {
    pub length_km: f64,
    pub report: Result<RateReport>,
}

/// Key-rate bound `log2(1/(1-kappa))` bit/pulse, for `0 < kappa < 1`.
///
/// `kappa = 1` would be an infinite rate and is rejected along with
/// everything outside the open interval.
pub fn qkd_rate_bound(kappa: f64) -> Result<f64> {
    if !kappa.is_finite() || kappa <= 0.0 || kappa >= 1.0 {
        return Err(Error::domain(format!(
            "rate bound needs transmissivity strictly inside (0, 1), got {kappa}"
        )));
    }
    // -ln(1-kappa) via ln_1p keeps full precision for small kappa.
    Ok(-(-kappa).ln_1p() / std::f64::consts::LN_2)
}

/// Full rate report for a link at a given source pulse rate.
pub fn qkd_effective_rate(channel: ChannelParams, input_rate_bps: f64) -> Result<RateReport> {
    if !input_rate_bps.is_finite() || input_rate_bps <= 0.0 {
        return Err(Error::domain(format!(
            "input rate must be finite and > 0 bit/s, got {input_rate_bps}"
        )));
    }
    let kappa = channel.transmissivity();
    let rate_per_pulse = qkd_rate_bound(kappa)?;
    let arrival_rate = kappa;
    let effective_rate_per_pulse = arrival_rate * rate_per_pulse;
    Ok(RateReport {
        kappa,
        rate_per_pulse,
        arrival_rate,
        effective_rate_per_pulse,
        input_rate_bps,
        output_rate_bps: effective_rate_per_pulse * input_rate_bps,
    })
}

/// Sweep driver: one report per length, in the given order.
///
/// Lengths must be non-empty and strictly increasing. Rows whose
/// transmissivity leaves the bound's domain are flagged via an `Err`
/// report rather than failing the whole sweep.
pub fn qkd_rate_table(
    lengths_km: &[f64],
    loss_db_per_km: f64,
    input_rate_bps: f64,
) -> Result<Vec<RateTableRow>> {
    if lengths_km.is_empty() {
        return Err(Error::usage("length grid must not be empty"));
    }
    if lengths_km.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::usage("length grid must be strictly increasing"));
    }
    lengths_km
        .iter()
        .map(|&length_km| {
            let channel = ChannelParams::new(length_km, loss_db_per_km)?;
            Ok(RateTableRow {
                length_km,
                report: qkd_effective_rate(channel, input_rate_bps),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// log2(1/(1-kappa)) recomputed from the Mercator series
    /// ln(1/(1-x)) = sum_{n>=1} x^n / n, truncated at 50 terms.
    fn mercator_log2_bound(kappa: f64) -> f64 {
        let mut sum = 0.0;
        let mut power = 1.0;
        for n in 1..=50u32 {
            power *= kappa;
            sum += power / f64::from(n);
        }
        sum / std::f64::consts::LN_2
    }

    #[test]
    fn bound_examples() {
        let r = qkd_rate_bound(0.01).unwrap();
        assert!((r - 0.014500).abs() < 5e-7, "R(0.01) = {r}");
        assert_eq!(qkd_rate_bound(0.5).unwrap(), 1.0);
        let r = qkd_rate_bound(1e-4).unwrap();
        assert!((r - 1.4427e-4).abs() < 1e-8, "R(1e-4) = {r}");
    }

    #[test]
    fn bound_matches_mercator_series() {
        for kappa in [0.1, 0.01, 0.001] {
            let direct = qkd_rate_bound(kappa).unwrap();
            let series = mercator_log2_bound(kappa);
            assert!(
                (direct - series).abs() <= 1e-12,
                "kappa={kappa}: direct={direct}, series={series}"
            );
        }
    }

    #[test]
    fn bound_small_kappa_asymptote() {
        // Relative error of the kappa/ln2 approximation is first order.
        for kappa in [1e-2, 1e-3, 1e-4, 1e-6] {
            let exact = qkd_rate_bound(kappa).unwrap();
            let approx = kappa / std::f64::consts::LN_2;
            let rel = (exact - approx).abs() / approx;
            assert!(rel <= kappa, "kappa={kappa}: rel={rel}");
        }
    }

    #[test]
    fn bound_rejects_domain_edges() {
        assert!(qkd_rate_bound(0.0).is_err());
        assert!(qkd_rate_bound(1.0).is_err());
        assert!(qkd_rate_bound(-0.1).is_err());
        assert!(qkd_rate_bound(1.5).is_err());
        assert!(qkd_rate_bound(f64::NAN).is_err());
        // Just inside the boundary is finite and accepted.
        let near_one = 1.0 - 2f64.powi(-52);
        assert!(qkd_rate_bound(near_one).unwrap().is_finite());
    }

    #[test]
    fn effective_rate_100km_checkpoint() {
        let channel = ChannelParams::with_default_loss(100.0).unwrap();
        let report = qkd_effective_rate(channel, 1e9).unwrap();
        let closed_form = 1e9 * 0.01 * (0.99f64.recip()).log2();
        let rel = (report.output_rate_bps - closed_form).abs() / closed_form;
        assert!(rel <= 1e-12, "100 km output = {}", report.output_rate_bps);
        // Order-of-magnitude agreement with the quoted 100 Kbit/s.
        let factor = report.output_rate_bps / 1e5;
        assert!((1.0 / 1.5..=1.5).contains(&factor), "factor = {factor}");
    }

    #[test]
    fn effective_rate_200km_checkpoint() {
        let channel = ChannelParams::with_default_loss(200.0).unwrap();
        let report = qkd_effective_rate(channel, 1e9).unwrap();
        assert!(
            (report.output_rate_bps - 14.43).abs() < 0.01,
            "200 km output = {}",
            report.output_rate_bps
        );
        let factor = report.output_rate_bps / 10.0;
        assert!((1.0 / 1.5..=1.5).contains(&factor), "factor = {factor}");
    }

    #[test]
    fn effective_rate_identities() {
        let channel = ChannelParams::with_default_loss(123.0).unwrap();
        let report = qkd_effective_rate(channel, 2.5e9).unwrap();
        assert_eq!(
            report.effective_rate_per_pulse,
            report.arrival_rate * report.rate_per_pulse
        );
        assert_eq!(
            report.output_rate_bps,
            report.effective_rate_per_pulse * report.input_rate_bps
        );
        assert!(report.effective_rate_per_pulse <= report.rate_per_pulse);
        assert!(report.effective_rate_per_pulse <= report.arrival_rate);
    }

    #[test]
    fn effective_rate_small_kappa_is_quadratic() {
        // R_E ~ 1.44*kappa^2 within 2% relative for kappa <= 0.01.
        for length_km in [100.0, 150.0, 200.0] {
            let channel = ChannelParams::with_default_loss(length_km).unwrap();
            let report = qkd_effective_rate(channel, 1.0).unwrap();
            let kappa = report.kappa;
            assert!(kappa <= 0.01);
            let approx = 1.44 * kappa * kappa;
            let rel = (report.effective_rate_per_pulse - approx).abs()
                / report.effective_rate_per_pulse;
            assert!(rel <= 0.02, "L={length_km}: rel={rel}");
        }
    }

    #[test]
    fn effective_rate_rejects_lossless_link() {
        let channel = ChannelParams::new(0.0, 0.2).unwrap();
        assert!(qkd_effective_rate(channel, 1e9).is_err());
        assert!(qkd_effective_rate(
            ChannelParams::with_default_loss(100.0).unwrap(),
            0.0
        )
        .is_err());
    }

    #[test]
    fn rate_table_matches_pointwise_reports() {
        let rows = qkd_rate_table(&[100.0, 200.0], 0.2, 1e9).unwrap();
        assert_eq!(rows.len(), 2);
        let first = rows[0].report.as_ref().unwrap();
        assert!((first.output_rate_bps - 1.44996e5).abs() < 1e1);
        let second = rows[1].report.as_ref().unwrap();
        assert!((second.output_rate_bps - 14.43).abs() < 0.01);
    }

    #[test]
    fn rate_table_flags_out_of_domain_rows() {
        let rows = qkd_rate_table(&[50.0], 0.0, 1e9).unwrap();
        assert_eq!(rows.len(), 1);
        assert!(rows[0].report.is_err(), "lossless row must be flagged");
    }

    #[test]
    fn rate_table_monotone_decreasing_output() {
        let lengths: Vec<f64> = (1..=500).map(f64::from).collect();
        let rows = qkd_rate_table(&lengths, 0.2, 1e9).unwrap();
        assert_eq!(rows.len(), 500);
        let outputs: Vec<f64> = rows
            .iter()
            .map(|r| r.report.as_ref().unwrap().output_rate_bps)
            .collect();
        assert!(
            outputs.windows(2).all(|w| w[0] > w[1]),
            "output rate must strictly decrease with length"
        );
    }

    #[test]
    fn rate_table_usage_errors() {
        assert!(qkd_rate_table(&[], 0.2, 1e9).is_err());
        assert!(qkd_rate_table(&[100.0, 100.0], 0.2, 1e9).is_err());
        assert!(qkd_rate_table(&[200.0, 100.0], 0.2, 1e9).is_err());
    }
}
