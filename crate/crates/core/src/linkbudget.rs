//! Flat channel loss, NRZ slicer SNR and bit-error rate.
//!
//! The channel is a flat attenuation: a transmitted differential swing
//! arrives scaled by 10^(-L/20). The slicer decides NRZ bits against
//! Gaussian noise, so the error probability is the normal tail Q(r) of
//! the amplitude ratio r = (half eye amplitude) / (rms noise). All
//! swings are differential peak-to-peak; the eye half-amplitude is half
//! the swing at the decision point.

use statrs::function::erf::{erfc, erfc_inv};

use crate::error::{Error, Result};

/// A flat-loss channel driven with a fixed transmit swing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelSpec {
    /// Flat channel loss [dB], non-negative.
    pub loss_db: f64,
    /// Transmitted differential peak-to-peak swing [V].
    pub tx_swing: f64,
}

impl ChannelSpec {
    pub fn new(loss_db: f64, tx_swing: f64) -> Result<Self> {
        if loss_db < 0.0 || !loss_db.is_finite() {
            return Err(Error::Validation(format!(
                "loss_db must be finite and non-negative, got {loss_db}"
            )));
        }
        if tx_swing <= 0.0 || tx_swing.is_nan() {
            return Err(Error::Validation(format!(
                "tx_swing must be strictly positive, got {tx_swing}"
            )));
        }
        Ok(ChannelSpec { loss_db, tx_swing })
    }

    /// Rail-to-rail transmit swing of 1 V at the given loss.
    pub fn with_unit_swing(loss_db: f64) -> Result<Self> {
        Self::new(loss_db, 1.0)
    }
}

/// Named BER targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BerLabel {
    /// Wireline-style 1e-12.
    Wireline,
    /// Wireless-style 1e-3.
    Wireless,
    Custom,
}

/// A target bit-error rate in (0, 0.5).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BerTarget {
    pub ber: f64,
    pub label: BerLabel,
}

impl BerTarget {
    pub fn new(ber: f64) -> Result<Self> {
        if !(ber > 0.0 && ber < 0.5) {
            return Err(Error::Validation(format!(
                "ber must lie in (0, 0.5), got {ber}"
            )));
        }
        let label = if ber == 1e-12 {
            BerLabel::Wireline
        } else if ber == 1e-3 {
            BerLabel::Wireless
        } else {
            BerLabel::Custom
        };
        Ok(BerTarget { ber, label })
    }

    pub fn wireline() -> Self {
        BerTarget {
            ber: 1e-12,
            label: BerLabel::Wireline,
        }
    }

    pub fn wireless() -> Self {
        BerTarget {
            ber: 1e-3,
            label: BerLabel::Wireless,
        }
    }
}

/// Received differential swing [V]: tx_swing * 10^(-loss/20).
pub fn rx_swing(ch: &ChannelSpec) -> f64 {
    ch.tx_swing * 10f64.powf(-ch.loss_db / 20.0)
}

/// NRZ bit-error rate for an amplitude SNR (half eye over rms noise):
/// the standard normal tail Q(r) = erfc(r/sqrt(2))/2. Strictly
/// decreasing; Q(0) = 1/2.
pub fn ber_from_snr(snr_amplitude_ratio: f64) -> Result<f64> {
    if snr_amplitude_ratio < 0.0 || !snr_amplitude_ratio.is_finite() {
        return Err(Error::Domain(format!(
            "amplitude ratio must be finite and non-negative, got {snr_amplitude_ratio}"
        )));
    }
    Ok(0.5 * erfc(snr_amplitude_ratio / std::f64::consts::SQRT_2))
}

/// Inverse of [`ber_from_snr`]: the amplitude ratio that hits a BER.
///
/// Closed form sqrt(2)*erfc_inv(2p), polished with two Newton steps on
/// Q(r) - p using the normal density so the tails compose cleanly.
pub fn snr_for_ber(ber: f64) -> Result<f64> {
    if !(ber > 0.0 && ber < 0.5) {
        return Err(Error::Domain(format!("ber must lie in (0, 0.5), got {ber}")));
    }
    let mut r = std::f64::consts::SQRT_2 * erfc_inv(2.0 * ber);
    for _ in 0..2 {
        let q = 0.5 * erfc(r / std::f64::consts::SQRT_2);
        let pdf = (-0.5 * r * r).exp() / (2.0 * std::f64::consts::PI).sqrt();
        if pdf > 0.0 {
            r += (q - ber) / pdf;
        }
    }
    Ok(r)
}

/// Largest flat loss [dB] at which a receiver with the given
/// input-referred noise still meets the BER target.
///
/// Solves Q((rx_swing/2)/noise) = target in closed form through the
/// Q-inverse: L = 20*log10(tx / (2*noise*Q^-1(ber))).
pub fn max_loss_for_ber(
    noise_rms_at_input: f64,
    tx_swing: f64,
    target: &BerTarget,
) -> Result<f64> {
    if noise_rms_at_input <= 0.0 || tx_swing <= 0.0 || noise_rms_at_input.is_nan() || tx_swing.is_nan() {
        return Err(Error::Domain(
            "noise and tx swing must be strictly positive".into(),
        ));
    }
    let ratio = snr_for_ber(target.ber)?;
    let required_rx = 2.0 * noise_rms_at_input * ratio;
    let loss = 20.0 * (tx_swing / required_rx).log10();
    if loss < 0.0 {
        return Err(Error::Capacity {
            message: format!(
                "noise {noise_rms_at_input:.3e} V misses BER {:.1e} even at zero loss",
                target.ber
            ),
            achievable: loss,
        });
    }
    Ok(loss)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rx_swing_follows_the_decibel_definition() {
        assert_eq!(rx_swing(&ChannelSpec::with_unit_swing(0.0).unwrap()), 1.0);
        let v20 = rx_swing(&ChannelSpec::with_unit_swing(20.0).unwrap());
        assert!((v20 - 0.1).abs() < 1e-15);
        let v60 = rx_swing(&ChannelSpec::with_unit_swing(60.0).unwrap());
        assert!((v60 - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn rx_swing_round_trips_back_to_the_loss() {
        for loss in [0.1, 3.0, 17.5, 48.0, 90.0] {
            let ch = ChannelSpec::with_unit_swing(loss).unwrap();
            let back = 20.0 * (ch.tx_swing / rx_swing(&ch)).log10();
            assert!((back - loss).abs() < 1e-9);
        }
    }

    #[test]
    fn zero_snr_is_a_coin_flip() {
        assert_eq!(ber_from_snr(0.0).unwrap(), 0.5);
    }

    #[test]
    fn characteristic_snr_points_match_the_normal_tail() {
        let r12 = snr_for_ber(1e-12).unwrap();
        assert!((r12 - 7.03).abs() / 7.03 < 0.05, "got {r12}");
        let r3 = snr_for_ber(1e-3).unwrap();
        assert!((r3 - 3.09).abs() / 3.09 < 0.05, "got {r3}");
    }

    #[test]
    fn ber_is_strictly_decreasing_and_inverts_cleanly() {
        let mut prev = 0.6;
        for k in 0..=80 {
            let r = 0.1 + 7.9 * k as f64 / 80.0;
            let ber = ber_from_snr(r).unwrap();
            assert!(ber < prev);
            prev = ber;
            let back = snr_for_ber(ber).unwrap();
            assert!((back - r).abs() / r < 1e-6, "r = {r}, back = {back}");
        }
    }

    #[test]
    fn halving_noise_buys_six_decibels() {
        let t = BerTarget::wireline();
        let a = max_loss_for_ber(200e-6, 1.0, &t).unwrap();
        let b = max_loss_for_ber(100e-6, 1.0, &t).unwrap();
        assert!((b - a - 20.0 * 2f64.log10()).abs() < 1e-9);
    }

    #[test]
    fn looser_targets_tolerate_more_loss() {
        for noise in [50e-6, 300e-6, 2e-3] {
            let tight = max_loss_for_ber(noise, 1.0, &BerTarget::wireline()).unwrap();
            let loose = max_loss_for_ber(noise, 1.0, &BerTarget::wireless()).unwrap();
            assert!(loose > tight);
        }
    }

    #[test]
    fn hopeless_noise_is_a_capacity_error() {
        let r = max_loss_for_ber(0.5, 1.0, &BerTarget::wireline());
        assert!(matches!(r, Err(Error::Capacity { .. })));
    }

    #[test]
    fn target_validation_and_labels() {
        assert!(BerTarget::new(0.0).is_err());
        assert!(BerTarget::new(0.5).is_err());
        assert_eq!(BerTarget::new(1e-12).unwrap().label, BerLabel::Wireline);
        assert_eq!(BerTarget::new(1e-3).unwrap().label, BerLabel::Wireless);
        assert_eq!(BerTarget::new(1e-6).unwrap().label, BerLabel::Custom);
    }
}
