//! Broadband self-biased inverter LNA.
//!
//! Both devices carry the same bias current, so the mid-band gain is
//! the summed transconductance against the parallel combination of the
//! two drain resistances and the bias resistor. The single dominant
//! pole at the output sets the bandwidth, which makes the minimum bias
//! current for a target bandwidth a monotone root-finding problem.

use crate::error::{Error, Result};
use crate::techmodel::{device_point, TechnologyParams};

/// Geometry and loading of the inverter LNA.
#[derive(Debug, Clone, PartialEq)]
pub struct LnaConfig {
    /// NMOS width [um].
    pub width_n: f64,
    /// PMOS width [um].
    pub width_p: f64,
    /// Bias resistor closing the self-bias loop [ohm].
    pub r_bias: f64,
    /// Total load capacitance: external load plus self-loading [F].
    pub c_load: f64,
    pub tech: TechnologyParams,
}

/// Small-signal summary of the LNA at one bias current.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LnaOperatingPoint {
    /// Bias current [A].
    pub bias_current: f64,
    /// Summed transconductance of both devices [S].
    pub gm_total: f64,
    /// Output resistance r_o_n || r_o_p || R_bias [ohm].
    pub r_out: f64,
    /// Mid-band voltage gain [dimensionless].
    pub gain: f64,
    /// -3 dB bandwidth of the single output pole [Hz].
    pub bandwidth: f64,
    /// Static power draw [W].
    pub power: f64,
}

impl LnaConfig {
    pub fn new(
        width_n: f64,
        width_p: f64,
        r_bias: f64,
        c_load: f64,
        tech: TechnologyParams,
    ) -> Result<Self> {
        for (name, v) in [
            ("width_n", width_n),
            ("width_p", width_p),
            ("r_bias", r_bias),
            ("c_load", c_load),
        ] {
            if v <= 0.0 || v.is_nan() {
                return Err(Error::Validation(format!(
                    "{name} must be strictly positive, got {v}"
                )));
            }
        }
        tech.validate()?;
        Ok(LnaConfig {
            width_n,
            width_p,
            r_bias,
            c_load,
            tech,
        })
    }

    /// Evaluates gain, bandwidth and power at the given bias current.
    pub fn operating_point(&self, bias_current: f64) -> Result<LnaOperatingPoint> {
        if bias_current <= 0.0 || bias_current.is_nan() {
            return Err(Error::Domain(format!(
                "bias current must be strictly positive, got {bias_current}"
            )));
        }
        let n = device_point(&self.tech, self.width_n, bias_current)?;
        let p = device_point(&self.tech, self.width_p, bias_current)?;
        let gm_total = n.gm + p.gm;
        // r_o_n || r_o_p || R_bias; each device contributes 2/(lambda*I).
        let g_out = 1.0 / n.r_out + 1.0 / p.r_out + 1.0 / self.r_bias;
        let r_out = 1.0 / g_out;
        let gain = gm_total * r_out;
        let bandwidth = 1.0 / (2.0 * std::f64::consts::PI * r_out * self.c_load);
        Ok(LnaOperatingPoint {
            bias_current,
            gm_total,
            r_out,
            gain,
            bandwidth,
            power: bias_current * self.tech.supply_voltage,
        })
    }

    /// Smallest bias current whose bandwidth reaches `target_bw`, found
    /// by bisection on the monotone bandwidth(I) map to 0.1% relative.
    ///
    /// Fails with a capacity error (reporting the best achievable
    /// bandwidth) if the target is out of reach below `i_ceiling`.
    pub fn min_bias_for_bandwidth(&self, target_bw: f64, i_ceiling: f64) -> Result<f64> {
        if target_bw <= 0.0 || target_bw.is_nan() {
            return Err(Error::Domain(format!(
                "target bandwidth must be strictly positive, got {target_bw}"
            )));
        }
        if i_ceiling <= 0.0 || i_ceiling.is_nan() {
            return Err(Error::Domain("current ceiling must be positive".into()));
        }
        let at_ceiling = self.operating_point(i_ceiling)?.bandwidth;
        if at_ceiling < target_bw {
            return Err(Error::Capacity {
                message: format!(
                    "bandwidth {target_bw:.3e} Hz unreachable below {i_ceiling:.3e} A"
                ),
                achievable: at_ceiling,
            });
        }
        let mut lo = i_ceiling * 1e-12;
        if self.operating_point(lo)?.bandwidth >= target_bw {
            // The bias resistor alone already provides the pole.
            return Ok(lo);
        }
        let mut hi = i_ceiling;
        while hi - lo > 5e-4 * hi {
            let mid = 0.5 * (lo + hi);
            if self.operating_point(mid)?.bandwidth >= target_bw {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        Ok(hi)
    }
}

impl LnaOperatingPoint {
    /// Input-referred rms noise over `bandwidth` [V]:
    /// sqrt(4*k*T*gamma * B / gm_total).
    pub fn input_noise(&self, bandwidth: f64, tech: &TechnologyParams) -> Result<f64> {
        if bandwidth <= 0.0 || bandwidth.is_nan() {
            return Err(Error::Domain(format!(
                "bandwidth must be strictly positive, got {bandwidth}"
            )));
        }
        Ok((4.0 * tech.boltzmann_kt * tech.gamma * bandwidth / self.gm_total).sqrt())
    }
}
