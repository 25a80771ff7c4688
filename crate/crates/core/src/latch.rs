//! StrongARM sampler timing and input-referred noise.
//!
//! The sampler's sensing operation splits into an amplification window
//! (input pair integrating onto the internal nodes), a discharge window
//! at the output nodes, and a regenerative latching window whose length
//! grows logarithmically as the input swing shrinks. The minimum clock
//! period is conservatively six times the sum of the three, which makes
//! the maximum clock frequency a function of the input swing.
//!
//! Noise is dominated by the input pair during the amplification
//! window. Integrating white channel-noise current onto the internal
//! capacitance and dividing by the window gain gives an input-referred
//! rms of sqrt(4*k*T*gamma / (gm * t_a)); eliminating t_a and the tail
//! current via their defining identities turns this into a kT/C form
//! with a multiplier M = gamma * V_ov / V_TH.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::adaptive_quadrature;
use crate::techmodel::TechnologyParams;

/// Geometry, capacitance and bias of a strongARM sampler.
///
/// The tail current, input transconductance and input overdrive are
/// linked by `tail_current_io = gm_input * vov_input / 2`; construction
/// enforces the link to 1e-6 relative.
#[derive(Debug, Clone, PartialEq)]
pub struct LatchConfig {
    /// Parasitic capacitance at the internal (drain) nodes [F].
    pub c_pq: f64,
    /// Capacitance at the output nodes [F].
    pub c_xy: f64,
    /// Quiescent tail current once the clock rises [A].
    pub tail_current_io: f64,
    /// Input-pair transconductance [S].
    pub gm_input: f64,
    /// Combined transconductance of the cross-coupled pair during
    /// regeneration [S].
    pub gm_latch: f64,
    /// Transconductance parameter of the input pair [A/V^2].
    pub beta_input: f64,
    /// Threshold voltage of the discharge NMOS pair [V].
    pub vth_34: f64,
    /// Threshold voltage magnitude of the regeneration PMOS pair [V].
    pub vth_56: f64,
    /// Input-pair overdrive voltage [V].
    pub vov_input: f64,
    /// Regeneration target swing [V]; full supply by default.
    pub delta_v_latch: f64,
}

impl LatchConfig {
    /// Validates positivity and the tail-current consistency link.
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("c_pq", self.c_pq),
            ("c_xy", self.c_xy),
            ("tail_current_io", self.tail_current_io),
            ("gm_input", self.gm_input),
            ("gm_latch", self.gm_latch),
            ("beta_input", self.beta_input),
            ("vth_34", self.vth_34),
            ("vth_56", self.vth_56),
            ("vov_input", self.vov_input),
            ("delta_v_latch", self.delta_v_latch),
        ];
        for (name, value) in fields {
            if value <= 0.0 || !value.is_finite() {
                return Err(Error::Validation(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        let implied = self.gm_input * self.vov_input / 2.0;
        if (self.tail_current_io - implied).abs() > 1e-6 * implied {
            return Err(Error::Validation(format!(
                "tail_current_io inconsistent: got {:e}, gm_input*vov_input/2 = {implied:e}",
                self.tail_current_io
            )));
        }
        Ok(())
    }

    /// Builds a config with the tail current derived from
    /// `gm_input * vov_input / 2`, so the consistency link holds exactly.
    #[allow(clippy::too_many_arguments)]
    pub fn from_input_pair(
        c_pq: f64,
        c_xy: f64,
        gm_input: f64,
        vov_input: f64,
        gm_latch: f64,
        beta_input: f64,
        vth_34: f64,
        vth_56: f64,
        delta_v_latch: f64,
    ) -> Result<Self> {
        let cfg = LatchConfig {
            c_pq,
            c_xy,
            tail_current_io: gm_input * vov_input / 2.0,
            gm_input,
            gm_latch,
            beta_input,
            vth_34,
            vth_56,
            vov_input,
            delta_v_latch,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Durations of the amplification and output-discharge windows
    /// `(t_a, t_o)` [s].
    ///
    /// t_a = 2*C_pq*V_th34/I_o and t_o = 2*C_xy*V_th56/I_o: each node
    /// pair discharges by one threshold at half the tail current.
    pub fn phase_durations(&self) -> (f64, f64) {
        let t_a = 2.0 * self.c_pq * self.vth_34 / self.tail_current_io;
        let t_o = 2.0 * self.c_xy * self.vth_56 / self.tail_current_io;
        (t_a, t_o)
    }

    /// Regeneration time for a differential input swing [s].
    ///
    /// (C_xy/gm_latch) * ln((1/V_th56) * sqrt(I_o/(2*beta)) *
    /// dV_latch/dV_in), clamped at zero once the swing is large enough
    /// that no regeneration is needed.
    pub fn latch_time(&self, delta_v_in: f64) -> Result<f64> {
        if delta_v_in <= 0.0 || !delta_v_in.is_finite() {
            return Err(Error::Domain(format!(
                "input swing must be strictly positive, got {delta_v_in}"
            )));
        }
        let arg = (1.0 / self.vth_56)
            * (self.tail_current_io / (2.0 * self.beta_input)).sqrt()
            * self.delta_v_latch
            / delta_v_in;
        Ok((self.c_xy / self.gm_latch) * arg.ln().max(0.0))
    }

    /// Maximum clock frequency for a differential input swing [Hz].
    ///
    /// 1 / (6 * (t_a + t_o + t_latch)); increases with the swing and is
    /// capped at 1 / (6 * (t_a + t_o)) once the latch time clamps to 0.
    pub fn max_clock_frequency(&self, delta_v_in: f64) -> Result<f64> {
        let (t_a, t_o) = self.phase_durations();
        let t_latch = self.latch_time(delta_v_in)?;
        Ok(1.0 / (6.0 * (t_a + t_o + t_latch)))
    }

    /// Input-referred rms noise [V]: sqrt(4*k*T*gamma/(gm_input * t_a)).
    pub fn input_referred_noise(&self, tech: &TechnologyParams) -> f64 {
        let (t_a, _) = self.phase_durations();
        (4.0 * tech.boltzmann_kt * tech.gamma / (self.gm_input * t_a)).sqrt()
    }

    /// kT/C multiplier M = gamma * V_ov / V_th34.
    ///
    /// Substituting t_a = 2*C_pq*V_th34/I_o and I_o = gm*V_ov/2 into the
    /// window-noise expression leaves M * kT / C_pq with this M.
    pub fn ktc_noise_factor(&self, tech: &TechnologyParams) -> f64 {
        tech.gamma * self.vov_input / self.vth_34
    }

    /// Input-referred rms noise in kT/C form [V]:
    /// sqrt(M * k * T / c_pq). Identical to
    /// [`input_referred_noise`](Self::input_referred_noise) whenever the
    /// tail-current consistency link holds.
    pub fn input_referred_noise_ktc(&self, tech: &TechnologyParams) -> f64 {
        (self.ktc_noise_factor(tech) * tech.boltzmann_kt / self.c_pq).sqrt()
    }
}

/// Envelope of the amplification-window transfer function, in seconds.
///
/// A sinusoidal current of frequency `f` integrated over the window
/// contributes at most |sin(pi*f*t_a)|/(pi*f) regardless of its initial
/// phase; the f -> 0 limit is t_a.
pub fn tf_envelope(f: f64, t_a: f64) -> f64 {
    debug_assert!(f >= 0.0 && t_a > 0.0);
    let u = std::f64::consts::PI * f;
    if u * t_a < 1e-8 {
        // sin(x)/x -> 1 - x^2/6; below 1e-8 the correction is < 1e-17.
        t_a
    } else {
        (u * t_a).sin().abs() / u
    }
}

/// Integral of the squared envelope over all frequencies [s].
///
/// Evaluates sum of per-lobe adaptive quadratures on
/// [k/t_a, (k+1)/t_a] for 1e4 lobes, then adds the analytic tail
/// estimate t_a/(2*pi^2*K) (the remainder is bounded by twice that).
/// The result converges to t_a / 2.
pub fn envelope_noise_integral(t_a: f64) -> Result<f64> {
    if t_a <= 0.0 || !t_a.is_finite() {
        return Err(Error::Domain(format!(
            "t_a must be strictly positive, got {t_a}"
        )));
    }
    const LOBES: usize = 10_000;
    let f2 = |f: f64| {
        let tfe = tf_envelope(f, t_a);
        tfe * tfe
    };
    let mut total = 0.0;
    for k in 0..LOBES {
        let a = k as f64 / t_a;
        let b = (k + 1) as f64 / t_a;
        total += adaptive_quadrature(f2, a, b, 1e-8)?.value;
    }
    // Tail: between 0 and t_a/(pi^2 * K); the average of sin^2 puts it
    // at half the bound.
    total += t_a / (2.0 * std::f64::consts::PI.powi(2) * LOBES as f64);
    Ok(total)
}

/// On-disk schema for a sampler configuration file (same key-value
/// family as the technology schema).
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatchFile {
    schema_version: u32,
    c_pq: f64,
    c_xy: f64,
    tail_current_io: f64,
    gm_input: f64,
    gm_latch: f64,
    beta_input: f64,
    vth_34: f64,
    vth_56: f64,
    vov_input: f64,
    delta_v_latch: f64,
}

/// Current latch file schema version.
pub const LATCH_SCHEMA_VERSION: u32 = 1;

/// Parses a sampler configuration document.
pub fn parse_latch_config(text: &str) -> Result<LatchConfig> {
    let file: LatchFile =
        toml::from_str(text).map_err(|e| Error::Parse(format!("latch file: {e}")))?;
    if file.schema_version != LATCH_SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "schema_version: expected {LATCH_SCHEMA_VERSION}, got {}",
            file.schema_version
        )));
    }
    let cfg = LatchConfig {
        c_pq: file.c_pq,
        c_xy: file.c_xy,
        tail_current_io: file.tail_current_io,
        gm_input: file.gm_input,
        gm_latch: file.gm_latch,
        beta_input: file.beta_input,
        vth_34: file.vth_34,
        vth_56: file.vth_56,
        vov_input: file.vov_input,
        delta_v_latch: file.delta_v_latch,
    };
    cfg.validate()?;
    Ok(cfg)
}

/// Loads a sampler configuration file.
pub fn load_latch_config(path: &std::path::Path) -> Result<LatchConfig> {
    parse_latch_config(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tech() -> TechnologyParams {
        crate::ref65::technology()
    }

    /// 100 uA tail, 10/20 fF caps: the hand-checked timing case.
    fn small_latch() -> LatchConfig {
        // I_O = 100 uA with vov = 0.2 -> gm = 1 mS.
        LatchConfig::from_input_pair(10e-15, 20e-15, 1e-3, 0.2, 1e-3, 5e-3, 0.4, 0.4, 1.0).unwrap()
    }

    #[test]
    fn phase_durations_match_hand_arithmetic() {
        let (t_a, t_o) = small_latch().phase_durations();
        assert!((t_a - 80e-12).abs() / 80e-12 < 1e-12);
        assert!((t_o - 160e-12).abs() / 160e-12 < 1e-12);
    }

    #[test]
    fn doubling_tail_current_halves_t_a() {
        let base = small_latch();
        // Doubling I_O at fixed vov doubles gm as well.
        let fast =
            LatchConfig::from_input_pair(10e-15, 20e-15, 2e-3, 0.2, 1e-3, 5e-3, 0.4, 0.4, 1.0)
                .unwrap();
        let (t_a0, _) = base.phase_durations();
        let (t_a1, _) = fast.phase_durations();
        assert!((t_a0 / t_a1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn latch_time_is_zero_at_unit_log_argument() {
        let cfg = small_latch();
        let dv = (1.0 / cfg.vth_56)
            * (cfg.tail_current_io / (2.0 * cfg.beta_input)).sqrt()
            * cfg.delta_v_latch;
        assert_eq!(cfg.latch_time(dv).unwrap(), 0.0);
        // Larger swings stay clamped at zero.
        assert_eq!(cfg.latch_time(2.0 * dv).unwrap(), 0.0);
    }

    #[test]
    fn dividing_swing_by_e_adds_one_time_constant() {
        let cfg = small_latch();
        let t1 = cfg.latch_time(1e-3).unwrap();
        let t2 = cfg.latch_time(1e-3 / std::f64::consts::E).unwrap();
        let tau = cfg.c_xy / cfg.gm_latch;
        assert!((t2 - t1 - tau).abs() / tau < 1e-9);
    }

    #[test]
    fn swing_span_sets_the_frequency_span() {
        let cfg = crate::ref65::latch_config();
        let d = cfg.latch_time(1e-9).unwrap() - cfg.latch_time(0.1).unwrap();
        let expect = cfg.c_xy / cfg.gm_latch * (1e8f64).ln();
        assert!((d - expect).abs() / expect < 1e-12);
    }

    #[test]
    fn clock_frequency_increases_with_swing_and_is_capped() {
        let cfg = small_latch();
        let f1 = cfg.max_clock_frequency(1e-3).unwrap();
        let f10 = cfg.max_clock_frequency(10e-3).unwrap();
        assert!(f10 > f1);
        let (t_a, t_o) = cfg.phase_durations();
        let cap = 1.0 / (6.0 * (t_a + t_o));
        for dv in [1e-9, 1e-6, 1e-3, 1.0, 10.0] {
            assert!(cfg.max_clock_frequency(dv).unwrap() <= cap);
        }
    }

    #[test]
    fn non_positive_swing_is_a_domain_error() {
        let cfg = small_latch();
        assert!(matches!(cfg.latch_time(0.0), Err(Error::Domain(_))));
        assert!(matches!(cfg.latch_time(-1e-3), Err(Error::Domain(_))));
    }

    #[test]
    fn envelope_limit_and_zeros() {
        let t_a = 80e-12;
        assert_eq!(tf_envelope(0.0, t_a), t_a);
        for k in 1..=5 {
            let f = k as f64 / t_a;
            assert!(tf_envelope(f, t_a) < 1e-18);
        }
    }

    #[test]
    fn envelope_matches_brute_force_phase_maximum() {
        // Oracle: max over phi of |cos(phi) - cos(2 pi f t_a + phi)| / (2 pi f),
        // scanned on a 1e4-point phase grid.
        let brute = |f: f64, t_a: f64| {
            let theta = 2.0 * std::f64::consts::PI * f * t_a;
            let mut best = 0.0f64;
            for i in 0..10_000 {
                let phi = 2.0 * std::f64::consts::PI * i as f64 / 1e4;
                let v = (phi.cos() - (theta + phi).cos()).abs();
                best = best.max(v);
            }
            best / (2.0 * std::f64::consts::PI * f)
        };
        let mut rng = ChaCha8Rng::seed_from_u64(crate::numerics::DEFAULT_SEED);
        let mut checked = 0;
        while checked < 100 {
            let t_a = 10f64.powf(rng.random_range(-12.0..-8.0));
            let u = rng.random_range(0.05..20.0);
            if (std::f64::consts::PI * u).sin().abs() < 1e-3 {
                continue; // avoid relative comparison at envelope zeros
            }
            let f = u / t_a;
            let closed = tf_envelope(f, t_a);
            let oracle = brute(f, t_a);
            assert!(
                (closed - oracle).abs() / closed < 1e-4,
                "u = {u}: closed {closed:e}, oracle {oracle:e}"
            );
            checked += 1;
        }
    }

    #[test]
    fn envelope_integral_is_half_the_window() {
        let v = envelope_noise_integral(80e-12).unwrap();
        assert!((v - 40e-12).abs() / 40e-12 < 1e-3);
    }

    #[test]
    fn envelope_integral_scales_linearly() {
        let a = envelope_noise_integral(1e-9).unwrap();
        let b = envelope_noise_integral(2e-9).unwrap();
        assert!((b / a - 2.0).abs() < 1e-3);
    }

    #[test]
    fn envelope_integral_reduces_to_the_tabulated_integral() {
        // Substituting u = pi f t_a turns the integral into
        // (t_a/pi) * integral of sin^2 u / u^2 = (t_a/pi) * (pi/2).
        let t_a = 1e-9;
        let v = envelope_noise_integral(t_a).unwrap();
        let expect = t_a / std::f64::consts::PI * std::f64::consts::FRAC_PI_2;
        assert!((v - expect).abs() / expect < 1e-3);
    }

    #[test]
    fn noise_matches_hand_arithmetic() {
        // gm = 1 mS, t_a = 80 ps, gamma = 1, 300 K -> 455 uV.
        let cfg = small_latch();
        let v = cfg.input_referred_noise(&tech());
        assert!((v - 455e-6).abs() / 455e-6 < 1e-2);
    }

    #[test]
    fn noise_scales_as_inverse_sqrt_of_gm_times_window() {
        let t = tech();
        let base = small_latch();
        // Quadruple gm at fixed vov: I_O quadruples, t_a shrinks 4x.
        let big =
            LatchConfig::from_input_pair(10e-15, 20e-15, 4e-3, 0.2, 1e-3, 5e-3, 0.4, 0.4, 1.0)
                .unwrap();
        let (ta0, _) = base.phase_durations();
        let (ta1, _) = big.phase_durations();
        let expect = ((base.gm_input * ta0) / (big.gm_input * ta1)).sqrt();
        let ratio = big.input_referred_noise(&t) / base.input_referred_noise(&t);
        assert!((ratio - expect).abs() < 1e-12);
    }

    #[test]
    fn both_noise_forms_agree_for_consistent_configs() {
        let t = tech();
        let mut rng = ChaCha8Rng::seed_from_u64(crate::numerics::DEFAULT_SEED);
        for _ in 0..1000 {
            let gm = 10f64.powf(rng.random_range(-4.0..-1.5));
            let vov = rng.random_range(0.05..0.4);
            let cfg = LatchConfig::from_input_pair(
                10f64.powf(rng.random_range(-15.0..-13.0)),
                10f64.powf(rng.random_range(-15.0..-13.0)),
                gm,
                vov,
                gm * rng.random_range(0.1..1.0),
                rng.random_range(1e-3..1e-1),
                rng.random_range(0.2..0.5),
                rng.random_range(0.2..0.5),
                1.0,
            )
            .unwrap();
            let a = cfg.input_referred_noise(&t);
            let b = cfg.input_referred_noise_ktc(&t);
            assert!((a - b).abs() / a < 1e-9, "a = {a:e}, b = {b:e}");
        }
    }

    #[test]
    fn inconsistent_tail_current_is_rejected() {
        let mut cfg = small_latch();
        cfg.tail_current_io *= 1.01;
        assert!(matches!(cfg.validate(), Err(Error::Validation(_))));
    }

    #[test]
    fn latch_file_round_trips() {
        let cfg = crate::ref65::latch_config();
        let text = format!(
            "schema_version = 1\nc_pq = {:e}\nc_xy = {:e}\ntail_current_io = {:e}\n\
             gm_input = {:e}\ngm_latch = {:e}\nbeta_input = {:e}\nvth_34 = {}\n\
             vth_56 = {}\nvov_input = {}\ndelta_v_latch = {}\n",
            cfg.c_pq,
            cfg.c_xy,
            cfg.tail_current_io,
            cfg.gm_input,
            cfg.gm_latch,
            cfg.beta_input,
            cfg.vth_34,
            cfg.vth_56,
            cfg.vov_input,
            cfg.delta_v_latch
        );
        let parsed = parse_latch_config(&text).unwrap();
        assert_eq!(parsed, cfg);
    }
}
