//! The shipped "ref65" reference calibration.
//!
//! A single coherent parameter set for a 65 nm, 1 V design that the
//! whole model chain is calibrated against. The calibration procedure
//! is documented in the book's technology chapter; in short, the
//! device-law constants in `assets/ref65.toml` and the block constants
//! below were fitted once so that:
//!
//! * the sampler runs at about 0.8 GHz for nV-level inputs and about
//!   3.3 GHz at 100 mV;
//! * a sampler-only receiver supports about 48 dB of flat loss at a
//!   1e-12 BER (55 dB at 1e-3);
//! * adding the LNA buys about 10 dB of loss budget; the
//!   integrator-based front end supports about 53 dB at 1e-12;
//! * per-block energy lands at 0.022 / 0.060 / 0.020 pJ/bit for
//!   sampler, LNA and integrator.
//!
//! The fitted values are behavioral, not physical: in particular the
//! subthreshold slope and lambda absorb short-channel effects the
//! two-regime gm law does not model.

use crate::error::Result;
use crate::explorer::{Architecture, EnergyModel, FrontEndChain, IntegratorSizing};
use crate::integrator::{max_bias_current, IntegratorConfig, LoadKind};
use crate::latch::LatchConfig;
use crate::lna::LnaConfig;
use crate::techmodel::{parse_technology, TechnologyParams};

/// The technology file shipped with the crate.
pub const TECHNOLOGY_TOML: &str = include_str!("../assets/ref65.toml");

/// Sampler internal node capacitance [F].
pub const LATCH_C_PQ: f64 = 26e-15;
/// Sampler output node capacitance [F].
pub const LATCH_C_XY: f64 = 30e-15;
/// Sampler tail current [A].
pub const LATCH_TAIL_CURRENT: f64 = 1.05e-3;
/// Sampler input-pair overdrive [V].
pub const LATCH_VOV_INPUT: f64 = 0.2;
/// Sampler regeneration transconductance [S].
pub const LATCH_GM_LATCH: f64 = 3.5e-3;
/// Input-pair transconductance density [A/V^2 per um].
pub const LATCH_BETA_PER_UM: f64 = 2.625e-3;
/// Input-pair width of the reference sampler [um].
pub const LATCH_REF_WIDTH_UM: f64 = 20.0;

/// LNA device widths [um].
pub const LNA_WIDTH_N_UM: f64 = 24.0;
pub const LNA_WIDTH_P_UM: f64 = 48.0;
/// LNA bias resistor [ohm].
pub const LNA_R_BIAS: f64 = 1e8;
/// LNA external load capacitance [F].
pub const LNA_C_EXT: f64 = 2.0e-15;
/// LNA self-loading capacitance density [F per um of device width].
pub const LNA_SELF_CAP_PER_UM: f64 = 7.5e-18;
/// Default LNA bias-current ceiling [A].
pub const LNA_BIAS_CEILING: f64 = 10e-3;

/// Integrator input-pair width [um].
pub const INTEGRATOR_WIDTH_UM: f64 = 3.75;
/// Integrator load capacitance per output node [F].
pub const INTEGRATOR_C_LOAD: f64 = 34e-15;

/// Per-block energy per bit [J/bit]; block power scales with the clock,
/// so these are rate-independent.
pub const ENERGY_LATCH_J_PER_BIT: f64 = 0.022e-12;
pub const ENERGY_LNA_J_PER_BIT: f64 = 0.060e-12;
pub const ENERGY_INTEGRATOR_J_PER_BIT: f64 = 0.020e-12;

/// The reference technology parameters.
pub fn technology() -> TechnologyParams {
    parse_technology(TECHNOLOGY_TOML).expect("embedded ref65 technology file is valid")
}

/// The reference sampler.
pub fn latch_config() -> LatchConfig {
    latch_config_with_input_width(LATCH_REF_WIDTH_UM)
        .expect("reference sampler configuration is valid")
}

/// The reference sampler with a re-sized input pair.
///
/// The tail current, capacitances and thresholds stay fixed; the input
/// transconductance follows the square law of the scaled beta and the
/// overdrive re-adjusts to keep the tail-current identity exact.
pub fn latch_config_with_input_width(width_um: f64) -> Result<LatchConfig> {
    let beta = LATCH_BETA_PER_UM * width_um;
    let gm = (2.0 * beta * LATCH_TAIL_CURRENT).sqrt();
    let vov = 2.0 * LATCH_TAIL_CURRENT / gm;
    LatchConfig::from_input_pair(
        LATCH_C_PQ,
        LATCH_C_XY,
        gm,
        vov,
        LATCH_GM_LATCH,
        beta,
        0.4,
        0.4,
        technology().supply_voltage,
    )
}

/// The reference LNA (total load = external load + self-loading).
pub fn lna_config() -> LnaConfig {
    let c_load = LNA_C_EXT + LNA_SELF_CAP_PER_UM * (LNA_WIDTH_N_UM + LNA_WIDTH_P_UM);
    LnaConfig::new(
        LNA_WIDTH_N_UM,
        LNA_WIDTH_P_UM,
        LNA_R_BIAS,
        c_load,
        technology(),
    )
    .expect("reference LNA configuration is valid")
}

/// The reference integrator, ceiling-biased for the given data rate
/// (integration window = half the bit period, pre-charge load).
pub fn integrator_config(data_rate: f64) -> Result<IntegratorConfig> {
    let tech = technology();
    let t_int = 0.5 / data_rate;
    let i_b = max_bias_current(INTEGRATOR_C_LOAD, t_int, tech.supply_voltage)?;
    IntegratorConfig::from_device(
        &tech,
        INTEGRATOR_WIDTH_UM,
        i_b,
        INTEGRATOR_C_LOAD,
        LoadKind::Precharge,
    )
}

/// The reference integrator sizing used inside front-end chains.
pub fn integrator_sizing() -> IntegratorSizing {
    IntegratorSizing {
        width_um: INTEGRATOR_WIDTH_UM,
        c_load: INTEGRATOR_C_LOAD,
    }
}

/// The reference per-block energy model.
pub fn energy_model() -> EnergyModel {
    EnergyModel {
        latch_j_per_bit: ENERGY_LATCH_J_PER_BIT,
        lna_j_per_bit: ENERGY_LNA_J_PER_BIT,
        integrator_j_per_bit: ENERGY_INTEGRATOR_J_PER_BIT,
    }
}

/// A complete reference front-end chain for the given architecture.
pub fn chain(architecture: Architecture) -> FrontEndChain {
    let needs_lna = matches!(
        architecture,
        Architecture::LnaSampler | Architecture::LnaCascadeSampler { .. }
    );
    let needs_integrator = matches!(
        architecture,
        Architecture::IntegratorSampler | Architecture::LnaCascadeSampler { .. }
    );
    FrontEndChain::new(
        architecture,
        latch_config(),
        needs_lna.then(lna_config),
        needs_integrator.then(integrator_sizing),
        energy_model(),
        technology(),
        LNA_BIAS_CEILING,
    )
    .expect("reference chain configuration is valid")
}
