//! Independent numeric oracles used to validate every closed form.
//!
//! Three tools live here: adaptive quadrature (for the sampler noise
//! envelope integral), a fixed-step fourth-order transient solver for
//! chains of gm / R / C integrator stages, and a seeded Monte Carlo
//! integrator of white channel noise onto a capacitor. The oracles are
//! the trust root of the test suite: when a closed form and its oracle
//! disagree beyond tolerance, the oracle is presumed correct.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::latch::LatchConfig;
use crate::techmodel::TechnologyParams;

/// Default PRNG seed used by tests and the CLI (ChaCha8 keystream).
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

/// Quadrature estimate together with the tolerance actually reached.
#[derive(Debug, Clone, Copy)]
pub struct QuadratureResult {
    pub value: f64,
    /// Accumulated relative error bound of the accepted panels.
    pub achieved_rel_tol: f64,
}

/// Adaptive Simpson quadrature of `f` on the finite interval `[a, b]`.
///
/// Splits panels until the Richardson estimate of the local error is
/// below the panel's share of `rel_tol`. Deterministic: the panel order
/// is a fixed depth-first traversal. Improper upper limits are handled
/// by callers through analytic tail bounds.
pub fn adaptive_quadrature<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64,
{
    const MAX_PANELS: usize = 200_000;

    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Domain(
            "adaptive_quadrature requires finite limits; supply a tail bound instead".into(),
        ));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            achieved_rel_tol: 0.0,
        });
    }

    let simpson = |x0: f64, x2: f64, f0: f64, f1: f64, f2: f64| (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2);

    // Depth-first stack of (x0, x2, f0, f1, f2, whole, abs_tol).
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    let scale = whole.abs().max(f64::MIN_POSITIVE);
    let mut stack = Vec::with_capacity(64);
    stack.push((a, b, fa, fm, fb, whole, rel_tol * scale));

    let mut total = 0.0;
    let mut panels = 0usize;
    let mut error_sum = 0.0f64;

    while let Some((x0, x2, f0, f1, f2, whole, tol)) = stack.pop() {
        panels += 1;
        let xm0 = 0.5 * (x0 + 0.5 * (x0 + x2));
        let xm2 = 0.5 * (0.5 * (x0 + x2) + x2);
        let x1 = 0.5 * (x0 + x2);
        let (g0, g2) = (f(xm0), f(xm2));
        let left = simpson(x0, x1, f0, g0, f1);
        let right = simpson(x1, x2, f1, g2, f2);
        let err = (left + right - whole) / 15.0;

        if err.abs() <= tol || (x2 - x0).abs() < f64::EPSILON * (x0.abs() + x2.abs()) {
            // Accept with Richardson extrapolation; err itself bounds
            // what remains after the correction.
            total += left + right + err;
            error_sum += err.abs();
        } else if panels >= MAX_PANELS {
            // Budget exhausted: flush what is left at its current
            // estimate. Pending panels carry no error bound, so count
            // their full magnitude as unresolved.
            let mut best = total + left + right + err;
            let mut unresolved = error_sum + err.abs();
            while let Some((.., w, _)) = stack.pop() {
                best += w;
                unresolved += w.abs();
            }
            return Err(Error::Numeric {
                message: format!("quadrature did not converge within {MAX_PANELS} panels"),
                best_estimate: best,
                achieved_tol: unresolved / scale.max(best.abs()),
            });
        } else {
            stack.push((x1, x2, f1, g2, f2, right, 0.5 * tol));
            stack.push((x0, x1, f0, g0, f1, left, 0.5 * tol));
        }
    }

    Ok(QuadratureResult {
        value: total,
        achieved_rel_tol: error_sum / scale,
    })
}

/// Transient solution of an N-stage gm / R / C chain.
#[derive(Debug, Clone)]
pub struct TransientResult {
    /// Strictly increasing sample instants [s], starting at 0.
    pub time_grid: Vec<f64>,
    /// `node_voltages[stage][sample]` [V]; all stages start at 0 V.
    pub node_voltages: Vec<Vec<f64>>,
    /// Voltage of each stage at the final instant [V].
    pub final_outputs: Vec<f64>,
}

/// One integrator stage of the transient chain.
#[derive(Debug, Clone, Copy)]
pub struct ChainStage {
    /// Transconductance driving this stage's load [S].
    pub gm: f64,
    /// Output resistance [ohm]; `f64::INFINITY` models an ideal integrator.
    pub r: f64,
    /// Load capacitance [F].
    pub c: f64,
}

/// Integrates `dv_k/dt = (gm_k * v_{k-1} - v_k / R_k) / C_k` with
/// `v_0 = v_in` (a step applied at t = 0) using classic fixed-step RK4.
///
/// `dt` must resolve the window: at most `t_end / 1000`. The step is
/// snapped so an integer number of steps lands exactly on `t_end`.
pub fn rc_chain_transient(
    stages: &[ChainStage],
    v_in: f64,
    t_end: f64,
    dt: f64,
) -> Result<TransientResult> {
    if stages.is_empty() {
        return Err(Error::Domain("transient chain needs at least one stage".into()));
    }
    for (k, s) in stages.iter().enumerate() {
        if s.gm <= 0.0 || s.c <= 0.0 || s.r <= 0.0 || s.gm.is_nan() || s.c.is_nan() || s.r.is_nan() {
            return Err(Error::Domain(format!(
                "stage {k}: gm, r and c must be positive"
            )));
        }
    }
    if t_end <= 0.0 || t_end.is_nan() {
        return Err(Error::Domain("t_end must be positive".into()));
    }
    if dt > t_end / 1000.0 {
        return Err(Error::Domain(format!(
            "dt = {dt:e} too coarse; need dt <= t_end/1000 = {:e}",
            t_end / 1000.0
        )));
    }

    let steps = (t_end / dt).round().max(1000.0) as usize;
    let h = t_end / steps as f64;
    let n = stages.len();

    // dv/dt for the whole chain; v0 is the driving step.
    let deriv = |v: &[f64], out: &mut [f64]| {
        for k in 0..n {
            let upstream = if k == 0 { v_in } else { v[k - 1] };
            let leak = if stages[k].r.is_finite() {
                v[k] / stages[k].r
            } else {
                0.0
            };
            out[k] = (stages[k].gm * upstream - leak) / stages[k].c;
        }
    };

    let mut v = vec![0.0f64; n];
    let mut k1 = vec![0.0; n];
    let mut k2 = vec![0.0; n];
    let mut k3 = vec![0.0; n];
    let mut k4 = vec![0.0; n];
    let mut tmp = vec![0.0; n];

    let mut time_grid = Vec::with_capacity(steps + 1);
    let mut node_voltages = vec![Vec::with_capacity(steps + 1); n];
    time_grid.push(0.0);
    for traj in node_voltages.iter_mut() {
        traj.push(0.0);
    }

    for step in 0..steps {
        deriv(&v, &mut k1);
        for i in 0..n {
            tmp[i] = v[i] + 0.5 * h * k1[i];
        }
        deriv(&tmp, &mut k2);
        for i in 0..n {
            tmp[i] = v[i] + 0.5 * h * k2[i];
        }
        deriv(&tmp, &mut k3);
        for i in 0..n {
            tmp[i] = v[i] + h * k3[i];
        }
        deriv(&tmp, &mut k4);
        for i in 0..n {
            v[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        time_grid.push((step + 1) as f64 * h);
        for (i, traj) in node_voltages.iter_mut().enumerate() {
            traj.push(v[i]);
        }
    }

    Ok(TransientResult {
        time_grid,
        final_outputs: v.clone(),
        node_voltages,
    })
}

/// Result of the Monte Carlo sampler-noise experiment.
#[derive(Debug, Clone, Copy)]
pub struct NoiseMcResult {
    pub trials: usize,
    /// Sample standard deviation of the input-referred noise [V rms].
    pub sample_std: f64,
    /// Standard error of `sample_std` (chi-distribution approximation).
    pub standard_error: f64,
    pub seed: u64,
}

/// Monte Carlo estimate of the sampler's input-referred noise.
///
/// Per trial, white differential channel-noise current with one-sided
/// PSD `8*k*T*gamma*gm_input` is synthesized at `dt = t_a/1000`
/// (per-sample variance PSD/(2*dt)), integrated onto `c_pq` over the
/// amplification window, and referred to the input by the window gain
/// `gm_input * t_a / c_pq`. Deterministic for a fixed seed (ChaCha8).
pub fn mc_latch_noise(
    cfg: &LatchConfig,
    tech: &TechnologyParams,
    trials: usize,
    seed: u64,
) -> Result<NoiseMcResult> {
    if trials < 1000 {
        return Err(Error::Domain(format!(
            "need at least 1000 trials for a stable std estimate, got {trials}"
        )));
    }

    let (t_a, _) = cfg.phase_durations();
    let steps = 1000usize;
    let dt = t_a / steps as f64;
    let psd = 8.0 * tech.boltzmann_kt * tech.gamma * cfg.gm_input;
    let sigma_i = (psd / (2.0 * dt)).sqrt();
    let gain = cfg.gm_input * t_a / cfg.c_pq;
    // Input-referred contribution of one current sample.
    let scale = sigma_i * dt / cfg.c_pq / gain;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for _ in 0..trials {
        let mut acc = 0.0f64;
        for _ in 0..steps {
            let n: f64 = rng.sample(StandardNormal);
            acc += n;
        }
        let v_in = acc * scale;
        sum += v_in;
        sum_sq += v_in * v_in;
    }

    let mean = sum / trials as f64;
    let var = (sum_sq - trials as f64 * mean * mean) / (trials as f64 - 1.0);
    let sample_std = var.max(0.0).sqrt();
    let standard_error = sample_std / (2.0 * (trials as f64 - 1.0)).sqrt();

    Ok(NoiseMcResult {
        trials,
        sample_std,
        standard_error,
        seed,
    })
}
