//! Device small-signal parameters as a function of bias and geometry.
//!
//! A [`TechnologyParams`] record captures the handful of process-level
//! constants the block models need: a square-law transconductance
//! density for strong inversion, a subthreshold slope for weak
//! inversion, channel-length modulation for output resistance, the
//! thermal-noise factor and the supply/temperature pair. The effective
//! transconductance is the smaller of the two regime laws, which is
//! continuous and monotone in bias current and crosses over smoothly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Boltzmann constant [J/K].
pub const BOLTZMANN: f64 = 1.380_649e-23;
/// Elementary charge [C].
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Process-level constants for small-signal evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct TechnologyParams {
    /// Supply voltage [V].
    pub supply_voltage: f64,
    /// Operating temperature [K].
    pub temperature: f64,
    /// Thermal-noise excess factor gamma [dimensionless].
    pub gamma: f64,
    /// Channel-length modulation parameter [1/V].
    pub lambda: f64,
    /// Transconductance parameter density [A/V^2 per um of width].
    pub beta_per_width: f64,
    /// NMOS threshold voltage [V].
    pub vth_n: f64,
    /// PMOS threshold voltage magnitude [V].
    pub vth_p: f64,
    /// Subthreshold slope factor n [dimensionless].
    pub subthreshold_slope_factor: f64,
    /// k_B * temperature [J]; derived, kept in sync with `temperature`.
    pub boltzmann_kt: f64,
}

/// Operating region reported by [`device_point`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    StrongInversion,
    WeakInversion,
    /// Device off (zero bias); gm = 0 and r_out is the +infinity sentinel.
    Depletion,
}

/// Small-signal operating point of a single device.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DevicePoint {
    /// Device width [um].
    pub width: f64,
    /// Drain bias current [A].
    pub bias_current: f64,
    /// Transconductance [S].
    pub gm: f64,
    /// Output resistance [ohm]; `f64::INFINITY` at zero bias.
    pub r_out: f64,
    /// Effective overdrive 2*I/gm [V]; 0 at zero bias.
    pub overdrive: f64,
    pub region: Region,
}

impl TechnologyParams {
    /// Validates all invariants, returning the offending field by name.
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("supply_voltage", self.supply_voltage),
            ("temperature", self.temperature),
            ("gamma", self.gamma),
            ("lambda", self.lambda),
            ("beta_per_width", self.beta_per_width),
            ("vth_n", self.vth_n),
            ("vth_p", self.vth_p),
            ("subthreshold_slope_factor", self.subthreshold_slope_factor),
        ];
        for (name, value) in positive {
            if value <= 0.0 || !value.is_finite() {
                return Err(Error::Validation(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        let kt = BOLTZMANN * self.temperature;
        if self.boltzmann_kt != kt {
            return Err(Error::Validation(format!(
                "boltzmann_kt must equal k_B * temperature = {kt:e}, got {:e}",
                self.boltzmann_kt
            )));
        }
        Ok(())
    }

    /// Thermal voltage kT/q [V].
    pub fn thermal_voltage(&self) -> f64 {
        self.boltzmann_kt / ELEMENTARY_CHARGE
    }

    /// Bias current at which the strong- and weak-inversion gm laws meet
    /// for a device of the given width [A].
    pub fn crossover_current(&self, width_um: f64) -> f64 {
        let beta = self.beta_per_width * width_um;
        let n_vt = self.subthreshold_slope_factor * self.thermal_voltage();
        2.0 * beta * n_vt * n_vt
    }
}

/// Evaluates the small-signal point of a device of `width_um` at
/// `bias_current`.
///
/// gm follows the smaller of the strong-inversion square law
/// sqrt(2*beta*I) and the weak-inversion law I/(n*kT/q); the minimum of
/// the two is continuous across the crossover and picks the physical
/// regime on each side. r_out = 2/(lambda*I).
pub fn device_point(
    tech: &TechnologyParams,
    width_um: f64,
    bias_current: f64,
) -> Result<DevicePoint> {
    if width_um <= 0.0 || width_um.is_nan() {
        return Err(Error::Domain(format!(
            "device width must be positive, got {width_um}"
        )));
    }
    if bias_current < 0.0 || !bias_current.is_finite() {
        return Err(Error::Domain(format!(
            "bias current must be finite and non-negative, got {bias_current}"
        )));
    }
    if bias_current == 0.0 {
        return Ok(DevicePoint {
            width: width_um,
            bias_current,
            gm: 0.0,
            r_out: f64::INFINITY,
            overdrive: 0.0,
            region: Region::Depletion,
        });
    }

    let beta = tech.beta_per_width * width_um;
    let gm_strong = (2.0 * beta * bias_current).sqrt();
    let gm_weak = bias_current / (tech.subthreshold_slope_factor * tech.thermal_voltage());
    let (gm, region) = if gm_weak < gm_strong {
        (gm_weak, Region::WeakInversion)
    } else {
        (gm_strong, Region::StrongInversion)
    };

    Ok(DevicePoint {
        width: width_um,
        bias_current,
        gm,
        r_out: 2.0 / (tech.lambda * bias_current),
        overdrive: 2.0 * bias_current / gm,
        region,
    })
}

/// On-disk schema for a technology parameter file.
///
/// `boltzmann_kt` is derived from `temperature` and therefore not part
/// of the file; unknown keys are rejected.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TechnologyFile {
    schema_version: u32,
    supply_voltage: f64,
    temperature: f64,
    gamma: f64,
    lambda: f64,
    beta_per_width: f64,
    vth_n: f64,
    vth_p: f64,
    subthreshold_slope_factor: f64,
}

/// Current technology file schema version.
pub const TECHNOLOGY_SCHEMA_VERSION: u32 = 1;

/// Parses a technology parameter document (TOML key-value text).
pub fn parse_technology(text: &str) -> Result<TechnologyParams> {
    let file: TechnologyFile =
        toml::from_str(text).map_err(|e| Error::Parse(format!("technology file: {e}")))?;
    if file.schema_version != TECHNOLOGY_SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "schema_version: expected {TECHNOLOGY_SCHEMA_VERSION}, got {}",
            file.schema_version
        )));
    }
    let params = TechnologyParams {
        supply_voltage: file.supply_voltage,
        temperature: file.temperature,
        gamma: file.gamma,
        lambda: file.lambda,
        beta_per_width: file.beta_per_width,
        vth_n: file.vth_n,
        vth_p: file.vth_p,
        subthreshold_slope_factor: file.subthreshold_slope_factor,
        boltzmann_kt: BOLTZMANN * file.temperature,
    };
    params.validate()?;
    Ok(params)
}

/// Loads and validates a technology parameter file.
pub fn load_technology(path: &std::path::Path) -> Result<TechnologyParams> {
    let text = std::fs::read_to_string(path)?;
    parse_technology(&text)
}

/// Serializes parameters back into the file schema.
pub fn serialize_technology(tech: &TechnologyParams) -> String {
    let file = TechnologyFile {
        schema_version: TECHNOLOGY_SCHEMA_VERSION,
        supply_voltage: tech.supply_voltage,
        temperature: tech.temperature,
        gamma: tech.gamma,
        lambda: tech.lambda,
        beta_per_width: tech.beta_per_width,
        vth_n: tech.vth_n,
        vth_p: tech.vth_p,
        subthreshold_slope_factor: tech.subthreshold_slope_factor,
    };
    toml::to_string(&file).expect("technology schema serializes")
}
