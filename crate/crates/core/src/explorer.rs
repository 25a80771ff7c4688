//! Architecture composition and design-space exploration.
//!
//! A front-end chain is an ordered list of blocks ending in the
//! sampler: nothing (I), an LNA (II), an integrator (III), or an LNA
//! followed by a cascade of N integrators (IV). For a candidate data
//! rate the chain has a gain A_FE(f) (LNA sized for bandwidth = rate,
//! integrators ceiling-biased for the half-bit window) and an
//! input-referred noise built stage by stage, each stage's noise
//! divided by the gain ahead of it.
//!
//! The maximum data rate at a channel loss L is the self-consistency
//! fixed point: the sampler, fed the swing A_FE(f)*v_rx(L), must run at
//! least as fast as f. The map f -> g(A_FE(f)*v_rx) - f is not
//! monotone (integrator gain grows as f falls), so the solver scans a
//! logarithmic grid for sign changes and refines the largest crossing
//! by bisection.

use std::fmt;

use crate::error::{Error, Result};
use crate::integrator::{
    cascade_gain_exact, max_bias_current, CascadeConfig, IntegratorConfig, LoadKind,
};
use crate::latch::LatchConfig;
use crate::linkbudget::{ber_from_snr, rx_swing, BerTarget, ChannelSpec};
use crate::lna::LnaConfig;
use crate::techmodel::TechnologyParams;

/// Receiver front-end topologies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Architecture {
    /// I: the sampler alone.
    SamplerOnly,
    /// II: LNA + sampler.
    LnaSampler,
    /// III: integrator + sampler.
    IntegratorSampler,
    /// IV: LNA + N-integrator cascade + sampler.
    LnaCascadeSampler { depth: usize },
}

impl fmt::Display for Architecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Architecture::SamplerOnly => write!(f, "I"),
            Architecture::LnaSampler => write!(f, "II"),
            Architecture::IntegratorSampler => write!(f, "III"),
            Architecture::LnaCascadeSampler { depth } => write!(f, "IV({depth})"),
        }
    }
}

/// Geometry of the integrator stages used inside a chain; the bias is
/// re-derived from the ceiling at every data rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorSizing {
    pub width_um: f64,
    pub c_load: f64,
}

/// Per-block energy per bit [J/bit]. Block power is proportional to
/// the clock, so energy per bit is rate-independent.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyModel {
    pub latch_j_per_bit: f64,
    pub lna_j_per_bit: f64,
    pub integrator_j_per_bit: f64,
}

/// An architecture with all of its block configurations.
#[derive(Debug, Clone, PartialEq)]
pub struct FrontEndChain {
    pub architecture: Architecture,
    pub latch: LatchConfig,
    pub lna: Option<LnaConfig>,
    pub integrator: Option<IntegratorSizing>,
    pub energy: EnergyModel,
    pub tech: TechnologyParams,
    /// Bias ceiling for LNA sizing [A].
    pub lna_bias_ceiling: f64,
}

/// Feasibility of an operating point, with the reason when not.
#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible,
    Infeasible { reason: String },
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible)
    }
}

/// Self-consistent operating point of a chain at one channel loss.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatingSolution {
    /// Maximum data rate at this loss [bit/s]; 0 when infeasible.
    pub data_rate: f64,
    pub channel_loss_db: f64,
    /// Front-end gain at the solved rate.
    pub fe_gain: f64,
    /// Differential swing delivered to the sampler [V].
    pub sampler_input_swing: f64,
    /// Total input-referred noise of the chain [V rms].
    pub rx_input_noise_rms: f64,
    /// BER at the solved operating point.
    pub ber: f64,
    /// Energy per bit of the chain [J/bit].
    pub energy_per_bit: f64,
    pub feasible: Feasibility,
}

/// One sweep row: the operating point plus per-target BER verdicts.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub solution: OperatingSolution,
    /// Whether the operating point meets each requested target.
    pub meets_target: Vec<bool>,
    /// Marker for the loose-BER region (BER above 1e-3 or infeasible).
    pub ber_exceeds_1e3: bool,
}

/// Result of a loss sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub targets: Vec<BerTarget>,
    pub rows: Vec<SweepRow>,
}

/// Gain and input-referred noise of a chain at one data rate.
#[derive(Debug, Clone, Copy)]
struct ChainEval {
    fe_gain: f64,
    noise_rms: f64,
}

/// Rate floor below which a link is declared infeasible [bit/s].
pub const RATE_FLOOR_HZ: f64 = 1e3;
/// Upper end of the solver's rate grid [Hz].
pub const RATE_CEILING_HZ: f64 = 1e10;
/// Log-grid density for the fixed-point scan (points per decade).
pub const GRID_PER_DECADE: usize = 60;

impl FrontEndChain {
    pub fn new(
        architecture: Architecture,
        latch: LatchConfig,
        lna: Option<LnaConfig>,
        integrator: Option<IntegratorSizing>,
        energy: EnergyModel,
        tech: TechnologyParams,
        lna_bias_ceiling: f64,
    ) -> Result<Self> {
        latch.validate()?;
        tech.validate()?;
        let needs_lna = matches!(
            architecture,
            Architecture::LnaSampler | Architecture::LnaCascadeSampler { .. }
        );
        let needs_integrator = matches!(
            architecture,
            Architecture::IntegratorSampler | Architecture::LnaCascadeSampler { .. }
        );
        if needs_lna && lna.is_none() {
            return Err(Error::Validation(format!(
                "architecture {architecture} requires an LNA configuration"
            )));
        }
        if needs_integrator && integrator.is_none() {
            return Err(Error::Validation(format!(
                "architecture {architecture} requires an integrator sizing"
            )));
        }
        if let Architecture::LnaCascadeSampler { depth } = architecture {
            if depth == 0 {
                return Err(Error::Validation("cascade depth must be at least 1".into()));
            }
        }
        if let Some(s) = &integrator {
            if s.width_um <= 0.0 || s.c_load <= 0.0 || s.width_um.is_nan() || s.c_load.is_nan() {
                return Err(Error::Validation(
                    "integrator width and load must be strictly positive".into(),
                ));
            }
        }
        if lna_bias_ceiling <= 0.0 || lna_bias_ceiling.is_nan() {
            return Err(Error::Validation(
                "lna_bias_ceiling must be strictly positive".into(),
            ));
        }
        Ok(FrontEndChain {
            architecture,
            latch,
            lna,
            integrator,
            energy,
            tech,
            lna_bias_ceiling,
        })
    }

    /// The ceiling-biased integrator stage for a data rate.
    fn integrator_stage(&self, data_rate: f64) -> Result<IntegratorConfig> {
        let sizing = self
            .integrator
            .as_ref()
            .expect("integrator presence checked at construction");
        let t_int = 0.5 / data_rate;
        let i_b = max_bias_current(sizing.c_load, t_int, self.tech.supply_voltage)?;
        IntegratorConfig::from_device(
            &self.tech,
            sizing.width_um,
            i_b,
            sizing.c_load,
            LoadKind::Precharge,
        )
    }

    /// Front-end gain and chain noise at one data rate.
    fn evaluate(&self, data_rate: f64) -> Result<ChainEval> {
        if data_rate <= 0.0 || data_rate.is_nan() {
            return Err(Error::Domain(format!(
                "data rate must be strictly positive, got {data_rate}"
            )));
        }
        let latch_noise = self.latch.input_referred_noise(&self.tech);

        // Per-stage (gain, input-referred noise) ahead of the sampler.
        let mut stages: Vec<(f64, f64)> = Vec::new();
        let mut fe_gain = 1.0;

        match self.architecture {
            Architecture::SamplerOnly => {}
            Architecture::LnaSampler | Architecture::LnaCascadeSampler { .. } => {
                let lna = self.lna.as_ref().expect("checked at construction");
                let i_min = lna.min_bias_for_bandwidth(data_rate, self.lna_bias_ceiling)?;
                let op = lna.operating_point(i_min)?;
                let v = op.input_noise(data_rate, &self.tech)?;
                stages.push((op.gain, v));
                fe_gain *= op.gain;
            }
            Architecture::IntegratorSampler => {}
        }

        match self.architecture {
            Architecture::IntegratorSampler => {
                let stage = self.integrator_stage(data_rate)?;
                let t_int = 0.5 / data_rate;
                let gain = stage.exact_gain(t_int)?;
                let v = stage.input_noise(t_int, &self.tech)?;
                stages.push((gain, v));
                fe_gain *= gain;
            }
            Architecture::LnaCascadeSampler { depth } => {
                let stage = self.integrator_stage(data_rate)?;
                let t_int = 0.5 / data_rate;
                let single = stage.exact_gain(t_int)?;
                let v = stage.input_noise(t_int, &self.tech)?;
                for _ in 0..depth {
                    stages.push((single, v));
                }
                // The signal path uses the coupled-cascade gain, which is
                // below the product of isolated single-stage gains.
                let cascade = CascadeConfig {
                    stage,
                    depth,
                };
                fe_gain *= cascade_gain_exact(&cascade, t_int)?;
            }
            _ => {}
        }

        // Friis-style combination in voltage form, sampler last.
        let mut noise_sq = 0.0;
        let mut upstream = 1.0;
        for (gain, v) in &stages {
            noise_sq += (v / upstream).powi(2);
            upstream *= gain;
        }
        noise_sq += (latch_noise / upstream).powi(2);

        Ok(ChainEval {
            fe_gain,
            noise_rms: noise_sq.sqrt(),
        })
    }

    /// Front-end gain A_FE at one data rate.
    pub fn front_end_gain(&self, data_rate: f64) -> Result<f64> {
        Ok(self.evaluate(data_rate)?.fe_gain)
    }

    /// Total input-referred noise of the chain at one data rate [V rms].
    pub fn front_end_noise(&self, data_rate: f64) -> Result<f64> {
        Ok(self.evaluate(data_rate)?.noise_rms)
    }

    /// Energy per bit of the chain [J/bit]; rate-independent, the rate
    /// argument only guards the domain.
    pub fn energy_per_bit(&self, data_rate: f64) -> Result<f64> {
        if data_rate <= 0.0 || data_rate.is_nan() {
            return Err(Error::Domain(format!(
                "data rate must be strictly positive, got {data_rate}"
            )));
        }
        let e = &self.energy;
        Ok(match self.architecture {
            Architecture::SamplerOnly => e.latch_j_per_bit,
            Architecture::LnaSampler => e.latch_j_per_bit + e.lna_j_per_bit,
            Architecture::IntegratorSampler => e.latch_j_per_bit + e.integrator_j_per_bit,
            Architecture::LnaCascadeSampler { depth } => {
                e.latch_j_per_bit + e.lna_j_per_bit + depth as f64 * e.integrator_j_per_bit
            }
        })
    }

    /// Whether the sampler keeps up with `data_rate` at this loss:
    /// g(A_FE(f) * v_rx) >= f. Capacity limits read as "not achievable".
    fn rate_achievable(&self, data_rate: f64, v_rx: f64) -> Result<bool> {
        match self.evaluate(data_rate) {
            Ok(eval) => {
                let swing = eval.fe_gain * v_rx;
                if swing <= 0.0 {
                    // Underflowed swing: nothing reaches the sampler.
                    return Ok(false);
                }
                Ok(self.latch.max_clock_frequency(swing)? >= data_rate)
            }
            Err(Error::Capacity { .. }) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Maximum data rate at a channel loss: the largest f on
    /// [1 kbit/s, 10 Gbit/s] with g(A_FE(f)*v_rx(L)) >= f.
    pub fn max_data_rate(&self, loss_db: f64) -> Result<f64> {
        let ch = ChannelSpec::with_unit_swing(loss_db)?;
        let v_rx = rx_swing(&ch);

        let decades = (RATE_CEILING_HZ / RATE_FLOOR_HZ).log10();
        let points = (decades * GRID_PER_DECADE as f64).round() as usize;
        let grid_f = |i: usize| RATE_FLOOR_HZ * 10f64.powf(i as f64 / GRID_PER_DECADE as f64);

        // Largest feasible grid point.
        let mut last_ok: Option<usize> = None;
        for i in 0..=points {
            if self.rate_achievable(grid_f(i), v_rx)? {
                last_ok = Some(i);
            }
        }
        let Some(i) = last_ok else {
            return Err(Error::Infeasible(format!(
                "no rate above {RATE_FLOOR_HZ:.0} bit/s sustains itself at {loss_db} dB"
            )));
        };

        let mut lo = grid_f(i);
        if i == points {
            return Ok(lo);
        }
        let mut hi = grid_f(i + 1);
        while hi - lo > 2e-4 * lo {
            let mid = 0.5 * (lo + hi);
            if self.rate_achievable(mid, v_rx)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    /// BER of the chain running at `data_rate` through loss `loss_db`.
    pub fn ber_at(&self, data_rate: f64, loss_db: f64) -> Result<f64> {
        let ch = ChannelSpec::with_unit_swing(loss_db)?;
        let noise = self.front_end_noise(data_rate)?;
        ber_from_snr(rx_swing(&ch) / 2.0 / noise)
    }

    /// The full operating point at one loss; infeasibility is recorded
    /// in the row rather than returned as an error.
    pub fn operating_point(&self, loss_db: f64) -> Result<OperatingSolution> {
        let ch = ChannelSpec::with_unit_swing(loss_db)?;
        let v_rx = rx_swing(&ch);
        match self.max_data_rate(loss_db) {
            Ok(rate) => {
                let eval = self.evaluate(rate)?;
                Ok(OperatingSolution {
                    data_rate: rate,
                    channel_loss_db: loss_db,
                    fe_gain: eval.fe_gain,
                    sampler_input_swing: eval.fe_gain * v_rx,
                    rx_input_noise_rms: eval.noise_rms,
                    ber: ber_from_snr(v_rx / 2.0 / eval.noise_rms)?,
                    energy_per_bit: self.energy_per_bit(rate)?,
                    feasible: Feasibility::Feasible,
                })
            }
            Err(Error::Infeasible(reason)) => Ok(OperatingSolution {
                data_rate: 0.0,
                channel_loss_db: loss_db,
                fe_gain: 0.0,
                sampler_input_swing: 0.0,
                rx_input_noise_rms: 0.0,
                ber: 0.5,
                energy_per_bit: 0.0,
                feasible: Feasibility::Infeasible { reason },
            }),
            Err(e) => Err(e),
        }
    }

    /// Largest achievable data rate whose BER also meets `target` at
    /// this loss; `None` when no rate on the grid qualifies.
    pub fn ber_constrained_max_rate(
        &self,
        loss_db: f64,
        target: &BerTarget,
    ) -> Result<Option<f64>> {
        let f_max = match self.max_data_rate(loss_db) {
            Ok(f) => f,
            Err(Error::Infeasible(_)) => return Ok(None),
            Err(e) => return Err(e),
        };
        let meets = |f: f64| -> Result<bool> {
            match self.ber_at(f, loss_db) {
                Ok(ber) => Ok(ber <= target.ber),
                Err(Error::Capacity { .. }) => Ok(false),
                Err(e) => Err(e),
            }
        };
        if meets(f_max)? {
            return Ok(Some(f_max));
        }
        // Walk the grid downward to the first rate that meets the
        // target, then refine the boundary against the rate above it.
        let mut fail = f_max;
        let mut idx = ((f_max / RATE_FLOOR_HZ).log10() * GRID_PER_DECADE as f64).floor() as isize;
        while idx >= 0 {
            let f = RATE_FLOOR_HZ * 10f64.powf(idx as f64 / GRID_PER_DECADE as f64);
            if meets(f)? {
                let mut lo = f;
                let mut hi = fail;
                while hi - lo > 1e-3 * lo {
                    let mid = 0.5 * (lo + hi);
                    if meets(mid)? {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                return Ok(Some(lo));
            }
            fail = f;
            idx -= 1;
        }
        Ok(None)
    }

    /// Largest channel loss at which the chain can meet the BER target
    /// at any achievable rate.
    pub fn l_max(&self, target: &BerTarget) -> Result<f64> {
        const L_HI: f64 = 140.0;
        let feasible = |loss: f64| -> Result<bool> {
            Ok(self.ber_constrained_max_rate(loss, target)?.is_some())
        };
        if !feasible(0.0)? {
            return Err(Error::Infeasible(format!(
                "BER {:.1e} unreachable even at zero loss",
                target.ber
            )));
        }
        if feasible(L_HI)? {
            return Ok(L_HI);
        }
        let mut lo = 0.0;
        let mut hi = L_HI;
        while hi - lo > 5e-3 {
            let mid = 0.5 * (lo + hi);
            if feasible(mid)? {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    /// Sweeps the loss grid; per-point infeasibility lands in the row.
    pub fn sweep(&self, loss_grid_db: &[f64], targets: &[BerTarget]) -> Result<SweepResult> {
        if loss_grid_db.is_empty() {
            return Err(Error::Validation("loss grid must be nonempty".into()));
        }
        if targets.is_empty() {
            return Err(Error::Validation("target list must be nonempty".into()));
        }
        let mut rows = Vec::with_capacity(loss_grid_db.len());
        for &loss in loss_grid_db {
            let solution = self.operating_point(loss)?;
            let ok = solution.feasible.is_feasible();
            let meets_target = targets
                .iter()
                .map(|t| ok && solution.ber <= t.ber)
                .collect();
            let ber_exceeds_1e3 = !ok || solution.ber > 1e-3;
            rows.push(SweepRow {
                solution,
                meets_target,
                ber_exceeds_1e3,
            });
        }
        Ok(SweepResult {
            targets: targets.to_vec(),
            rows,
        })
    }
}
