//! End-to-end acceptance suite.
//!
//! One test per criterion; each prints a PASS line with its headline
//! numbers (visible with `cargo test --test acceptance -- --nocapture`).
//! The numeric oracles in `rxlink::numerics` are the trust root: where
//! a closed form and its oracle disagree beyond tolerance, the test
//! fails on the closed form.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rxlink::explorer::Architecture;
use rxlink::integrator::{
    cascade_gain_exact, cascade_gain_ideal, optimal_cascade_depth, CascadeConfig,
    IntegratorConfig, LoadKind,
};
use rxlink::latch::{envelope_noise_integral, LatchConfig};
use rxlink::linkbudget::{rx_swing, BerTarget, ChannelSpec};
use rxlink::numerics::{mc_latch_noise, rc_chain_transient, ChainStage, DEFAULT_SEED};
use rxlink::ref65;

fn assert_within(value: f64, target: f64, rel: f64, what: &str) {
    let dev = (value - target).abs() / target.abs();
    assert!(
        dev <= rel,
        "{what}: {value:.6e} deviates from {target:.6e} by {dev:.3e} (allowed {rel:.1e})"
    );
}

/// Criterion 1: the squared-envelope integral equals half the window.
#[test]
fn criterion_1_envelope_noise_integral_identity() {
    let start = Instant::now();
    for t_a in [1e-12, 80e-12, 1e-9, 1e-6] {
        let integral = envelope_noise_integral(t_a).unwrap();
        assert_within(integral / t_a, 0.5, 1e-3, "envelope integral ratio");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}, limit 5 s");
    println!(
        "criterion 1 (envelope noise integral = t_a/2 within 0.1%, {:.2?}): PASS",
        elapsed
    );
}

/// Criterion 2: the two noise forms coincide and the Monte Carlo oracle
/// confirms the window-noise expression.
#[test]
fn criterion_2_latch_noise_dual_form_and_monte_carlo() {
    let start = Instant::now();
    let tech = ref65::technology();

    // Dual form on 1000 random internally-consistent configurations.
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
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
        let direct = cfg.input_referred_noise(&tech);
        let ktc = cfg.input_referred_noise_ktc(&tech);
        assert!(
            (direct - ktc).abs() / direct < 1e-9,
            "forms disagree: {direct:e} vs {ktc:e}"
        );
    }

    // Monte Carlo at 1e5 trials against the closed form, twice for
    // seed determinism.
    let cfg = ref65::latch_config();
    let analytic = cfg.input_referred_noise(&tech);
    let mc = mc_latch_noise(&cfg, &tech, 100_000, DEFAULT_SEED).unwrap();
    let repeat = mc_latch_noise(&cfg, &tech, 100_000, DEFAULT_SEED).unwrap();
    assert_eq!(mc.sample_std.to_bits(), repeat.sample_std.to_bits());
    let dev = (mc.sample_std - analytic).abs();
    assert!(
        dev <= 3.0 * mc.standard_error,
        "MC {:.6e} vs analytic {analytic:.6e}: off by {:.2} standard errors",
        mc.sample_std,
        dev / mc.standard_error
    );

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}, limit 60 s");
    println!(
        "criterion 2 (noise dual form 1e-9; MC within {:.2} SE; {:.2?}): PASS",
        dev / mc.standard_error,
        elapsed
    );
}

/// Criterion 3: closed-form integrator gains against the transient oracle.
#[test]
fn criterion_3_integrator_gain_vs_transient_oracle() {
    let start = Instant::now();
    let tech = ref65::technology();

    // Single stage over a 5x5 grid of (gm*R, x).
    for i in 0..5 {
        for j in 0..5 {
            let gmr = 2.0 * (50.0f64 / 2.0).powf(i as f64 / 4.0);
            let x = 0.01 * (10.0f64 / 0.01).powf(j as f64 / 4.0);
            let r = 1e3;
            let c = 1e-9;
            let gm = gmr / r;
            let i_b = 2.0 / (tech.lambda * r); // pre-charge rule backed out
            let cfg = IntegratorConfig::new(gm, c, i_b, LoadKind::Precharge, tech.clone()).unwrap();
            let t_int = x * r * c;
            let closed = cfg.exact_gain(t_int).unwrap();
            let ode = rc_chain_transient(&[ChainStage { gm, r, c }], 1e-3, t_int, t_int / 1e4)
                .unwrap()
                .final_outputs[0]
                / 1e-3;
            assert_within(closed, ode, 1e-3, &format!("exact gain (gmR={gmr:.1}, x={x:.3})"));
        }
    }

    // Cascades of 2..=5 stages against the chained oracle.
    for depth in 2..=5usize {
        for x in [0.1, 1.0, 3.0] {
            let r = 1e3;
            let c = 1e-9;
            let gm = 8.0 / r;
            let i_b = 2.0 / (tech.lambda * r);
            let stage =
                IntegratorConfig::new(gm, c, i_b, LoadKind::Precharge, tech.clone()).unwrap();
            let t_int = x * r * c;
            let closed = cascade_gain_exact(
                &CascadeConfig {
                    stage,
                    depth,
                },
                t_int,
            )
            .unwrap();
            let chain = vec![ChainStage { gm, r, c }; depth];
            let ode = rc_chain_transient(&chain, 1e-3, t_int, t_int / 2e4)
                .unwrap()
                .final_outputs[depth - 1]
                / 1e-3;
            assert_within(closed, ode, 2e-3, &format!("cascade gain (N={depth}, x={x})"));
        }
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}, limit 30 s");
    println!(
        "criterion 3 (integrator closed forms vs ODE oracle, {:.2?}): PASS",
        elapsed
    );
}

/// Criterion 4: the floor rule is the exhaustive cascade-depth argmax.
#[test]
fn criterion_4_cascade_depth_optimality() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    for _ in 0..100 {
        let a: f64 = rng.random_range(0.0f64..10.0).max(1e-6);
        let best = (1..=20)
            .max_by(|&m, &n| {
                cascade_gain_ideal(a, 1.0, m)
                    .unwrap()
                    .partial_cmp(&cascade_gain_ideal(a, 1.0, n).unwrap())
                    .unwrap()
            })
            .unwrap();
        let rule = optimal_cascade_depth(a).unwrap();
        assert_eq!(best, rule, "argmax mismatch at A = {a}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, limit 1 s");
    println!("criterion 4 (cascade depth = floor(A) vs exhaustive argmax): PASS");
}

/// Criterion 5: the shipped ref65 calibration reproduces the anchor
/// operating points. These validate internal consistency of the model
/// chain against its documented calibration targets.
#[test]
fn criterion_5_ref65_calibration_anchors() {
    let latch = ref65::latch_config();
    let f_lo = latch.max_clock_frequency(1e-9).unwrap();
    let f_hi = latch.max_clock_frequency(0.1).unwrap();
    assert_within(f_lo, 0.8e9, 0.10, "sampler speed at 1 nV");
    assert_within(f_hi, 3.3e9, 0.10, "sampler speed at 100 mV");

    let wireline = BerTarget::wireline();
    let wireless = BerTarget::wireless();
    let l_i_12 = ref65::chain(Architecture::SamplerOnly)
        .l_max(&wireline)
        .unwrap();
    let l_i_3 = ref65::chain(Architecture::SamplerOnly)
        .l_max(&wireless)
        .unwrap();
    let l_ii_12 = ref65::chain(Architecture::LnaSampler)
        .l_max(&wireline)
        .unwrap();
    let l_iii_12 = ref65::chain(Architecture::IntegratorSampler)
        .l_max(&wireline)
        .unwrap();
    assert!((l_i_12 - 48.0).abs() <= 1.5, "L_max(I, 1e-12) = {l_i_12}");
    assert!((l_i_3 - 55.0).abs() <= 1.5, "L_max(I, 1e-3) = {l_i_3}");
    assert!(
        (l_ii_12 - l_i_12 - 10.0).abs() <= 1.5,
        "LNA improvement = {}",
        l_ii_12 - l_i_12
    );
    assert!(
        (l_iii_12 - 53.0).abs() <= 1.5,
        "L_max(III, 1e-12) = {l_iii_12}"
    );

    // Energy per bit: exact to three significant figures, and the
    // per-block additivity identity reconstructs the chains.
    let e = |arch| {
        ref65::chain(arch).energy_per_bit(1e9).unwrap() * 1e12 // pJ/bit
    };
    let e_i = e(Architecture::SamplerOnly);
    let e_ii = e(Architecture::LnaSampler);
    let e_iii = e(Architecture::IntegratorSampler);
    let e_iv1 = e(Architecture::LnaCascadeSampler { depth: 1 });
    let e_iv2 = e(Architecture::LnaCascadeSampler { depth: 2 });
    assert_eq!(format!("{e_i:.3}"), "0.022");
    assert_eq!(format!("{e_ii:.3}"), "0.082");
    assert_eq!(format!("{e_iii:.3}"), "0.042");
    assert_eq!(format!("{e_iv1:.3}"), "0.102");
    assert_eq!(format!("{e_iv2:.3}"), "0.122");
    assert_within(e_i + (e_ii - e_i) + (e_iii - e_i), e_iv1, 1e-12, "additivity N=1");
    assert_within(
        e_i + (e_ii - e_i) + 2.0 * (e_iii - e_i),
        e_iv2,
        1e-12,
        "additivity N=2",
    );

    println!(
        "criterion 5 (ref65 anchors: f = {:.3}/{:.3} GHz; L_max = {:.2}/{:.2}/{:.2} dB, LNA +{:.2} dB; energy {:.3}/{:.3}/{:.3}/{:.3}/{:.3} pJ/bit): PASS",
        f_lo / 1e9,
        f_hi / 1e9,
        l_i_12,
        l_i_3,
        l_iii_12,
        l_ii_12 - l_i_12,
        e_i,
        e_ii,
        e_iii,
        e_iv1,
        e_iv2
    );
}

/// Criterion 6: fixed-point quality and cross-architecture ordering
/// over the full sweep grid.
#[test]
fn criterion_6_sweep_fixed_point_and_ordering() {
    let start = Instant::now();
    let losses: Vec<f64> = (0..50).map(|i| 20.0 + 50.0 * i as f64 / 49.0).collect();
    let targets = [BerTarget::wireline(), BerTarget::wireless()];

    let chains = [
        ref65::chain(Architecture::SamplerOnly),
        ref65::chain(Architecture::LnaSampler),
        ref65::chain(Architecture::IntegratorSampler),
        ref65::chain(Architecture::LnaCascadeSampler { depth: 1 }),
        ref65::chain(Architecture::LnaCascadeSampler { depth: 2 }),
    ];
    let mut rates: Vec<Vec<f64>> = Vec::new();
    for chain in &chains {
        let sweep = chain.sweep(&losses, &targets).unwrap();
        let mut per_chain = Vec::new();
        let mut prev = f64::INFINITY;
        for row in &sweep.rows {
            let s = &row.solution;
            assert!(
                s.feasible.is_feasible(),
                "{}: infeasible at {} dB",
                chain.architecture,
                s.channel_loss_db
            );
            // Fixed-point residual at the reported rate.
            let v_rx = rx_swing(&ChannelSpec::with_unit_swing(s.channel_loss_db).unwrap());
            let g = chain
                .latch
                .max_clock_frequency(s.fe_gain * v_rx)
                .unwrap();
            assert!(
                (g - s.data_rate).abs() / s.data_rate <= 1e-3,
                "{}: residual {:.2e} at {} dB",
                chain.architecture,
                (g - s.data_rate).abs() / s.data_rate,
                s.channel_loss_db
            );
            // Nonincreasing in loss.
            assert!(
                s.data_rate <= prev,
                "{}: rate rose at {} dB",
                chain.architecture,
                s.channel_loss_db
            );
            prev = s.data_rate;
            per_chain.push(s.data_rate);
        }
        rates.push(per_chain);
    }

    // Dominance ordering per loss point: IV(2) >= IV(1) >= II, III >= I.
    for (k, loss) in losses.iter().enumerate() {
        assert!(rates[4][k] >= rates[3][k], "IV(2) < IV(1) at {loss} dB");
        assert!(rates[3][k] >= rates[1][k], "IV(1) < II at {loss} dB");
        assert!(rates[2][k] >= rates[0][k], "III < I at {loss} dB");
    }

    // Looser BER target always tolerates more loss.
    for chain in &chains {
        let l12 = chain.l_max(&targets[0]).unwrap();
        let l3 = chain.l_max(&targets[1]).unwrap();
        assert!(
            l3 > l12,
            "{}: L_max(1e-3) = {l3} not above L_max(1e-12) = {l12}",
            chain.architecture
        );
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}, limit 10 s");
    println!(
        "criterion 6 (residuals <= 0.1%, monotone rates, dominance ordering, {:.2?}): PASS",
        elapsed
    );
}

/// Criterion 7: the integrator front end at 60 dB and a 1e-3 target
/// lands in the tens of Mbit/s.
#[test]
fn criterion_7_integrator_chain_rate_at_60_db() {
    let chain = ref65::chain(Architecture::IntegratorSampler);
    let rate = chain
        .ber_constrained_max_rate(60.0, &BerTarget::wireless())
        .unwrap()
        .expect("60 dB should be feasible at a reduced rate");
    assert!(
        (15e6..=60e6).contains(&rate),
        "constrained rate {rate:.3e} outside [15, 60] Mbit/s"
    );
    println!(
        "criterion 7 (III at 60 dB, BER 1e-3: {:.1} Mbit/s in [15, 60]): PASS",
        rate / 1e6
    );
}
