//! Current-integrating amplifier and multi-integrator cascades.
//!
//! During the integration window (half the clock period at full rate)
//! the stage integrates its input-proportional drain current onto the
//! load capacitor. With infinite output resistance the gain is
//! gm*T_int/C_L; with the real drain resistance the output saturates
//! toward the intrinsic gain, giving gm*R*(1 - e^(-T_int/(R*C_L))).
//! For N identical stages clocked together the ideal gain is
//! (K_i*T_int)^N / N! and the finite-R form generalizes to
//! (gm*R)^N times the tail of the exponential series in x = T_int/(R*C_L),
//! which is validated against a chained-ODE transient oracle.

use crate::error::{Error, Result};
use crate::techmodel::{device_point, TechnologyParams};

/// Load style of the integrating stage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LoadKind {
    /// PMOS switches pre-charge the outputs to the supply each cycle;
    /// output resistance 2/(lambda*I_B), drooping common mode.
    Precharge,
    /// Current-source loads with common-mode feedback; output
    /// resistance halves and the loads add noise.
    CurrentSource {
        /// Transconductance of the current-source loads [S].
        gm_load: f64,
    },
}

/// One integrating stage.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegratorConfig {
    /// Input-pair transconductance [S].
    pub gm: f64,
    /// Load capacitance per output node [F].
    pub c_load: f64,
    /// Bias current [A].
    pub bias_current: f64,
    pub load_kind: LoadKind,
    pub tech: TechnologyParams,
}

/// N identical stages clocked together.
#[derive(Debug, Clone, PartialEq)]
pub struct CascadeConfig {
    pub stage: IntegratorConfig,
    /// Number of stages, at least 1.
    pub depth: usize,
}

impl IntegratorConfig {
    pub fn new(
        gm: f64,
        c_load: f64,
        bias_current: f64,
        load_kind: LoadKind,
        tech: TechnologyParams,
    ) -> Result<Self> {
        for (name, v) in [
            ("gm", gm),
            ("c_load", c_load),
            ("bias_current", bias_current),
        ] {
            if v <= 0.0 || v.is_nan() {
                return Err(Error::Validation(format!(
                    "{name} must be strictly positive, got {v}"
                )));
            }
        }
        if let LoadKind::CurrentSource { gm_load } = load_kind {
            if gm_load < 0.0 || !gm_load.is_finite() {
                return Err(Error::Validation(format!(
                    "gm_load must be finite and non-negative, got {gm_load}"
                )));
            }
        }
        tech.validate()?;
        Ok(IntegratorConfig {
            gm,
            c_load,
            bias_current,
            load_kind,
            tech,
        })
    }

    /// Builds a stage with gm taken from the device model at the given
    /// width and bias.
    pub fn from_device(
        tech: &TechnologyParams,
        width_um: f64,
        bias_current: f64,
        c_load: f64,
        load_kind: LoadKind,
    ) -> Result<Self> {
        let dev = device_point(tech, width_um, bias_current)?;
        Self::new(dev.gm, c_load, bias_current, load_kind, tech.clone())
    }

    /// Output resistance seen by the load [ohm]: 2/(lambda*I_B) with
    /// pre-charging loads, half that with current-source loads.
    pub fn r_out(&self) -> f64 {
        match self.load_kind {
            LoadKind::Precharge => 2.0 / (self.tech.lambda * self.bias_current),
            LoadKind::CurrentSource { .. } => 1.0 / (self.tech.lambda * self.bias_current),
        }
    }

    /// Ideal (infinite-R) gain gm*T_int/C_L.
    pub fn ideal_gain(&self, t_int: f64) -> Result<f64> {
        if t_int <= 0.0 || t_int.is_nan() {
            return Err(Error::Domain(format!(
                "integration window must be positive, got {t_int}"
            )));
        }
        Ok(self.gm * t_int / self.c_load)
    }

    /// Finite-R gain gm*R*(1 - e^(-T_int/(R*C_L))).
    pub fn exact_gain(&self, t_int: f64) -> Result<f64> {
        if t_int <= 0.0 || t_int.is_nan() {
            return Err(Error::Domain(format!(
                "integration window must be positive, got {t_int}"
            )));
        }
        let r = self.r_out();
        let x = t_int / (r * self.c_load);
        Ok(self.gm * r * exp_series_tail(1, x))
    }

    /// Gain at the pre-charge bias ceiling:
    /// gm*R*(1 - e^(-0.4*lambda*V_DD/volt)).
    ///
    /// Substituting the ceiling current into the finite-R gain makes
    /// the exponent bias-independent; the supply factor is kept
    /// explicit so non-unit supplies stay dimensionally sound.
    pub fn max_gain_precharge(&self) -> Result<f64> {
        if !matches!(self.load_kind, LoadKind::Precharge) {
            return Err(Error::Domain(
                "bias-ceiling gain applies to the pre-charge load only".into(),
            ));
        }
        let x = 0.4 * self.tech.lambda * self.tech.supply_voltage;
        Ok(self.gm * self.r_out() * exp_series_tail(1, x))
    }

    /// Input-referred rms noise over the window [V].
    ///
    /// Pre-charge: sqrt(4*k*T*gamma/(gm*T_int)). Current-source loads
    /// contribute on top: multiply by sqrt(1 + gm_load/gm).
    pub fn input_noise(&self, t_int: f64, tech: &TechnologyParams) -> Result<f64> {
        if t_int <= 0.0 || t_int.is_nan() {
            return Err(Error::Domain(format!(
                "integration window must be positive, got {t_int}"
            )));
        }
        let base = 4.0 * tech.boltzmann_kt * tech.gamma / (self.gm * t_int);
        let factor = match self.load_kind {
            LoadKind::Precharge => 1.0,
            LoadKind::CurrentSource { gm_load } => 1.0 + gm_load / self.gm,
        };
        Ok((base * factor).sqrt())
    }
}

/// Bias ceiling keeping the pre-charged common mode above 0.6*V_DD:
/// I_B,max = (0.4*V_DD)*(2*C_L)/T_int.
pub fn max_bias_current(c_load: f64, t_int: f64, vdd: f64) -> Result<f64> {
    if c_load <= 0.0 || t_int <= 0.0 || c_load.is_nan() || t_int.is_nan() {
        return Err(Error::Domain(
            "c_load and t_int must be strictly positive".into(),
        ));
    }
    if vdd < 0.0 {
        return Err(Error::Domain(format!("supply must be non-negative, got {vdd}")));
    }
    Ok(0.4 * vdd * 2.0 * c_load / t_int)
}

/// Ideal N-stage cascade gain (K_i*T_int)^N / N!.
pub fn cascade_gain_ideal(k_i: f64, t_int: f64, depth: usize) -> Result<f64> {
    if depth == 0 {
        return Err(Error::Domain("cascade depth must be at least 1".into()));
    }
    if k_i <= 0.0 || t_int <= 0.0 || k_i.is_nan() || t_int.is_nan() {
        return Err(Error::Domain(
            "k_i and t_int must be strictly positive".into(),
        ));
    }
    let a = k_i * t_int;
    let mut gain = 1.0;
    for n in 1..=depth {
        gain *= a / n as f64;
    }
    Ok(gain)
}

/// Finite-R N-stage cascade gain
/// (gm*R)^N * e^(-x) * sum_{k>=N} x^k/k! with x = T_int/(R*C_L).
///
/// The series tail form avoids the cancellation of 1 - e^(-x)*partial
/// sums at small x. Validated against the chained-ODE oracle.
pub fn cascade_gain_exact(cascade: &CascadeConfig, t_int: f64) -> Result<f64> {
    if cascade.depth == 0 {
        return Err(Error::Domain("cascade depth must be at least 1".into()));
    }
    if t_int <= 0.0 || t_int.is_nan() {
        return Err(Error::Domain(format!(
            "integration window must be positive, got {t_int}"
        )));
    }
    let stage = &cascade.stage;
    let r = stage.r_out();
    let x = t_int / (r * stage.c_load);
    Ok((stage.gm * r).powi(cascade.depth as i32) * exp_series_tail(cascade.depth, x))
}

/// Depth that maximizes the ideal cascade gain for a given single-stage
/// gain: floor(A), at least 1. At integer A the maximum is tied with
/// A - 1 stages.
pub fn optimal_cascade_depth(single_stage_gain: f64) -> Result<usize> {
    if single_stage_gain <= 0.0 || single_stage_gain.is_nan() {
        return Err(Error::Domain(format!(
            "single-stage gain must be strictly positive, got {single_stage_gain}"
        )));
    }
    Ok((single_stage_gain.floor() as usize).max(1))
}

/// e^(-x) * sum_{k>=n} x^k/k!, the tail of the exponential series.
///
/// Equals 1 - e^(-x)*sum_{k<n} x^k/k! but stays accurate for x << 1.
fn exp_series_tail(n: usize, x: f64) -> f64 {
    debug_assert!(n >= 1);
    if x <= 0.0 {
        return 0.0;
    }
    if x > 30.0 {
        // Complementary form: the head is short and the subtraction no
        // longer cancels once the tail carries most of the mass.
        let mut term = 1.0f64;
        let mut head = 1.0f64;
        for k in 1..n {
            term *= x / k as f64;
            head += term;
        }
        return (1.0 - head * (-x).exp()).clamp(0.0, 1.0);
    }
    // First term x^n/n!, then the usual ratio recurrence.
    let mut term = 1.0f64;
    for k in 1..=n {
        term *= x / k as f64;
    }
    let mut sum = term;
    let mut k = n + 1;
    loop {
        term *= x / k as f64;
        sum += term;
        if term < sum * 1e-17 {
            break;
        }
        k += 1;
    }
    (sum * (-x).exp()).min(1.0)
}
