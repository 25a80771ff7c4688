//! Command-line front door for the receiver front-end models.
//!
//! Each subcommand characterizes one block or architecture over a
//! typed sweep range and writes a single self-describing table (CSV or
//! JSON). Identical invocations produce byte-identical outputs; the
//! PRNG seed for Monte Carlo columns comes from `RXLINK_SEED` when set.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use sha2::{Digest, Sha256};

use rxlink::explorer::{Architecture, FrontEndChain};
use rxlink::integrator::{
    cascade_gain_exact, cascade_gain_ideal, max_bias_current, optimal_cascade_depth,
    CascadeConfig, IntegratorConfig, LoadKind,
};
use rxlink::linkbudget::BerTarget;
use rxlink::lna::LnaConfig;
use rxlink::numerics::{mc_latch_noise, DEFAULT_SEED};
use rxlink::ref65;
use rxlink::techmodel::{load_technology, TechnologyParams};
use rxlink::Error as ModelError;

mod table;
use table::{Cell, Table};

/// A sweep range `start:stop:points`.
#[derive(Debug, Clone, Copy)]
struct RangeSpec {
    start: f64,
    stop: f64,
    points: usize,
}

impl FromStr for RangeSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:points, got `{s}`"));
        }
        let start: f64 = parts[0]
            .parse()
            .map_err(|_| format!("bad range start `{}`", parts[0]))?;
        let stop: f64 = parts[1]
            .parse()
            .map_err(|_| format!("bad range stop `{}`", parts[1]))?;
        let points: usize = parts[2]
            .parse()
            .map_err(|_| format!("bad range point count `{}`", parts[2]))?;
        if !start.is_finite() || !stop.is_finite() {
            return Err(format!("range endpoints must be finite in `{s}`"));
        }
        if points == 0 {
            return Err(format!("range `{s}` has zero points"));
        }
        if points > 1 && start >= stop {
            return Err(format!("range `{s}` needs start < stop"));
        }
        Ok(RangeSpec {
            start,
            stop,
            points,
        })
    }
}

impl RangeSpec {
    fn linspace(&self) -> Vec<f64> {
        if self.points == 1 {
            return vec![self.start];
        }
        (0..self.points)
            .map(|i| {
                self.start + (self.stop - self.start) * i as f64 / (self.points - 1) as f64
            })
            .collect()
    }

    fn logspace(&self) -> Result<Vec<f64>, String> {
        if self.start <= 0.0 {
            return Err("log-spaced range needs a positive start".into());
        }
        if self.points == 1 {
            return Ok(vec![self.start]);
        }
        let ratio = self.stop / self.start;
        Ok((0..self.points)
            .map(|i| self.start * ratio.powf(i as f64 / (self.points - 1) as f64))
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ArchArg {
    #[value(name = "I", alias = "i")]
    I,
    #[value(name = "II", alias = "ii")]
    Ii,
    #[value(name = "III", alias = "iii")]
    Iii,
    #[value(name = "IV", alias = "iv")]
    Iv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CompareCurve {
    /// Maximum data rate vs channel loss for every architecture.
    Rate,
    /// Maximum supported loss per architecture and BER target.
    Lmax,
    /// Energy per bit per architecture.
    Energy,
}

#[derive(Parser)]
#[command(
    name = "rxlink",
    version,
    about = "Receiver front-end characterization and loss sweeps",
    after_help = "Ranges are start:stop:points; rates and input swings are log-spaced, \
                  losses and widths linear. RXLINK_SEED overrides the Monte Carlo seed."
)]
struct Cli {
    /// Technology parameter file (built-in ref65 calibration when omitted).
    #[arg(long, global = true)]
    tech: Option<PathBuf>,
    /// Output path (stdout when omitted).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sampler curves: speed vs input swing, or noise vs input width.
    Latch {
        /// Input swing sweep [V], log-spaced.
        #[arg(long, value_name = "a:b:n")]
        vin_v: Option<RangeSpec>,
        /// Input-pair width sweep [um] for the noise curve, linear.
        #[arg(long, value_name = "a:b:n")]
        width_um: Option<RangeSpec>,
        /// Append Monte Carlo noise columns with this many trials.
        #[arg(long)]
        mc_trials: Option<usize>,
    },
    /// LNA sizing: minimum bias, gain and noise vs target bandwidth.
    Lna {
        /// Data-rate (= bandwidth) sweep [Hz], log-spaced.
        #[arg(long, value_name = "a:b:n")]
        rate_hz: RangeSpec,
    },
    /// Integrator characterization vs clock frequency.
    Integrator {
        /// Clock-frequency sweep [Hz], log-spaced.
        #[arg(long, value_name = "a:b:n")]
        rate_hz: RangeSpec,
    },
    /// Multi-integrator cascade gain vs clock frequency.
    Cascade {
        /// Clock-frequency sweep [Hz], log-spaced.
        #[arg(long, value_name = "a:b:n")]
        rate_hz: RangeSpec,
        /// Number of cascaded stages.
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// One architecture over a channel-loss sweep.
    Arch {
        #[arg(long, value_enum)]
        arch: ArchArg,
        /// Cascade depth (architecture IV only).
        #[arg(long, default_value_t = 1)]
        depth: usize,
        /// Channel-loss sweep [dB], linear.
        #[arg(long, value_name = "a:b:n")]
        loss_db: RangeSpec,
        /// BER targets, comma-separated.
        #[arg(long, value_delimiter = ',', default_values_t = [1e-12, 1e-3])]
        ber: Vec<f64>,
    },
    /// All architectures side by side.
    Compare {
        /// Channel-loss sweep [dB], linear.
        #[arg(long, value_name = "a:b:n")]
        loss_db: RangeSpec,
        /// BER targets, comma-separated (used by the lmax curve).
        #[arg(long, value_delimiter = ',', default_values_t = [1e-12, 1e-3])]
        ber: Vec<f64>,
        #[arg(long, value_enum, default_value_t = CompareCurve::Rate)]
        curve: CompareCurve,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let (kind, code) = match &e {
                RunError::Usage(_) => ("usage", 2),
                RunError::Model(ModelError::Domain(_))
                | RunError::Model(ModelError::Validation(_))
                | RunError::Model(ModelError::Parse(_)) => ("usage", 2),
                RunError::Model(ModelError::Numeric { .. }) => ("numeric", 3),
                _ => ("runtime", 3),
            };
            let record = serde_json::json!({
                "error": { "kind": kind, "message": e.to_string() }
            });
            eprintln!("{record}");
            ExitCode::from(code)
        }
    }
}

#[derive(Debug)]
enum RunError {
    Usage(String),
    Model(ModelError),
    Io(std::io::Error),
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Usage(m) => write!(f, "{m}"),
            RunError::Model(e) => write!(f, "{e}"),
            RunError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<ModelError> for RunError {
    fn from(e: ModelError) -> Self {
        RunError::Model(e)
    }
}

impl From<std::io::Error> for RunError {
    fn from(e: std::io::Error) -> Self {
        RunError::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> RunError {
    RunError::Usage(msg.into())
}

/// Technology source: built-in calibration or a user file.
struct TechSource {
    tech: TechnologyParams,
    label: String,
    sha256: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn load_tech(path: &Option<PathBuf>) -> Result<TechSource, RunError> {
    match path {
        None => Ok(TechSource {
            tech: ref65::technology(),
            label: "ref65 (built-in)".to_string(),
            sha256: sha256_hex(ref65::TECHNOLOGY_TOML.as_bytes()),
        }),
        Some(p) => {
            let bytes = std::fs::read(p)?;
            let tech = load_technology(p)?;
            Ok(TechSource {
                tech,
                label: p.display().to_string(),
                sha256: sha256_hex(&bytes),
            })
        }
    }
}

fn seed_from_env() -> Result<u64, RunError> {
    match std::env::var("RXLINK_SEED") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map_err(|_| usage(format!("RXLINK_SEED must be an unsigned integer, got `{v}`"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Front-end chain with ref65 block constants on a possibly custom
/// technology.
fn build_chain(arch: Architecture, tech: &TechnologyParams) -> Result<FrontEndChain, RunError> {
    let needs_lna = matches!(
        arch,
        Architecture::LnaSampler | Architecture::LnaCascadeSampler { .. }
    );
    let needs_integrator = matches!(
        arch,
        Architecture::IntegratorSampler | Architecture::LnaCascadeSampler { .. }
    );
    let lna = if needs_lna {
        let c_load = ref65::LNA_C_EXT
            + ref65::LNA_SELF_CAP_PER_UM * (ref65::LNA_WIDTH_N_UM + ref65::LNA_WIDTH_P_UM);
        Some(LnaConfig::new(
            ref65::LNA_WIDTH_N_UM,
            ref65::LNA_WIDTH_P_UM,
            ref65::LNA_R_BIAS,
            c_load,
            tech.clone(),
        )?)
    } else {
        None
    };
    Ok(FrontEndChain::new(
        arch,
        ref65::latch_config(),
        lna,
        needs_integrator.then(ref65::integrator_sizing),
        ref65::energy_model(),
        tech.clone(),
        ref65::LNA_BIAS_CEILING,
    )?)
}

fn arch_of(arg: ArchArg, depth: usize) -> Result<Architecture, RunError> {
    Ok(match arg {
        ArchArg::I => Architecture::SamplerOnly,
        ArchArg::Ii => Architecture::LnaSampler,
        ArchArg::Iii => Architecture::IntegratorSampler,
        ArchArg::Iv => {
            if depth == 0 {
                return Err(usage("--depth must be at least 1"));
            }
            Architecture::LnaCascadeSampler { depth }
        }
    })
}

fn parse_targets(ber: &[f64]) -> Result<Vec<BerTarget>, RunError> {
    if ber.is_empty() {
        return Err(usage("at least one --ber target is required"));
    }
    ber.iter()
        .map(|&b| BerTarget::new(b).map_err(RunError::from))
        .collect()
}

fn run(cli: Cli) -> Result<(), RunError> {
    let source = load_tech(&cli.tech)?;
    let seed = seed_from_env()?;

    let mut table = Table::default();
    table.meta("tool", format!("rxlink {}", env!("CARGO_PKG_VERSION")));
    table.meta(
        "command",
        std::env::args().skip(1).collect::<Vec<_>>().join(" "),
    );
    table.meta("tech", &source.label);
    table.meta("tech_sha256", &source.sha256);
    table.meta("seed", seed.to_string());
    table.meta("units", "SI base units (Hz, V, A, S, ohm, F, s, J/bit, dB)");

    match &cli.command {
        Command::Latch {
            vin_v,
            width_um,
            mc_trials,
        } => cmd_latch(&mut table, &source.tech, *vin_v, *width_um, *mc_trials, seed)?,
        Command::Lna { rate_hz } => cmd_lna(&mut table, &source.tech, *rate_hz)?,
        Command::Integrator { rate_hz } => cmd_integrator(&mut table, &source.tech, *rate_hz)?,
        Command::Cascade { rate_hz, depth } => {
            cmd_cascade(&mut table, &source.tech, *rate_hz, *depth)?
        }
        Command::Arch {
            arch,
            depth,
            loss_db,
            ber,
        } => cmd_arch(&mut table, &source.tech, *arch, *depth, *loss_db, ber)?,
        Command::Compare {
            loss_db,
            ber,
            curve,
        } => cmd_compare(&mut table, &source.tech, *loss_db, ber, *curve)?,
    }

    // Tables are fully built before anything is written, so failed runs
    // leave no files behind.
    match &cli.out {
        None => {
            let stdout = std::io::stdout();
            let mut w = stdout.lock();
            write_table(&table, cli.format, &mut w)?;
        }
        Some(path) => {
            let mut file = std::fs::File::create(path)?;
            write_table(&table, cli.format, &mut file)?;
            file.flush()?;
        }
    }
    Ok(())
}

fn write_table(table: &Table, format: Format, w: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Csv => table.write_csv(w),
        Format::Json => table.write_json(w),
    }
}

fn cmd_latch(
    table: &mut Table,
    tech: &TechnologyParams,
    vin_v: Option<RangeSpec>,
    width_um: Option<RangeSpec>,
    mc_trials: Option<usize>,
    seed: u64,
) -> Result<(), RunError> {
    if vin_v.is_some() && width_um.is_some() {
        return Err(usage("--vin-v and --width-um are mutually exclusive"));
    }
    if let Some(widths) = width_um {
        // Noise vs input-pair width.
        let grid = widths.linspace();
        let mut w_col = Vec::new();
        let mut gm_col = Vec::new();
        let mut noise_col = Vec::new();
        let mut mc_col = Vec::new();
        let mut mc_err_col = Vec::new();
        for &w in &grid {
            let cfg = ref65::latch_config_with_input_width(w)?;
            w_col.push(Cell::Float(w));
            gm_col.push(Cell::Float(cfg.gm_input));
            noise_col.push(Cell::Float(cfg.input_referred_noise(tech)));
            if let Some(trials) = mc_trials {
                let mc = mc_latch_noise(&cfg, tech, trials, seed)?;
                mc_col.push(Cell::Float(mc.sample_std));
                mc_err_col.push(Cell::Float(mc.standard_error));
            }
        }
        table.column("width_um", w_col);
        table.column("gm_input_s", gm_col);
        table.column("noise_vrms", noise_col);
        if mc_trials.is_some() {
            table.column("mc_noise_vrms", mc_col);
            table.column("mc_standard_error_vrms", mc_err_col);
        }
    } else {
        // Max clock frequency vs input swing.
        let range = vin_v.unwrap_or(RangeSpec {
            start: 1e-9,
            stop: 0.25,
            points: 60,
        });
        let grid = range.logspace().map_err(usage)?;
        let cfg = ref65::latch_config();
        let mut vin_col = Vec::new();
        let mut t_latch_col = Vec::new();
        let mut f_col = Vec::new();
        for &v in &grid {
            vin_col.push(Cell::Float(v));
            t_latch_col.push(Cell::Float(cfg.latch_time(v)?));
            f_col.push(Cell::Float(cfg.max_clock_frequency(v)?));
        }
        table.column("vin_v", vin_col);
        table.column("t_latch_s", t_latch_col);
        table.column("f_max_hz", f_col);
    }
    Ok(())
}

fn cmd_lna(table: &mut Table, tech: &TechnologyParams, rate: RangeSpec) -> Result<(), RunError> {
    let grid = rate.logspace().map_err(usage)?;
    let c_load =
        ref65::LNA_C_EXT + ref65::LNA_SELF_CAP_PER_UM * (ref65::LNA_WIDTH_N_UM + ref65::LNA_WIDTH_P_UM);
    let cfg = LnaConfig::new(
        ref65::LNA_WIDTH_N_UM,
        ref65::LNA_WIDTH_P_UM,
        ref65::LNA_R_BIAS,
        c_load,
        tech.clone(),
    )?;
    let mut cols: [Vec<Cell>; 7] = Default::default();
    for &f in &grid {
        cols[0].push(Cell::Float(f));
        match cfg.min_bias_for_bandwidth(f, ref65::LNA_BIAS_CEILING) {
            Ok(i_min) => {
                let op = cfg.operating_point(i_min)?;
                cols[1].push(Cell::Bool(true));
                cols[2].push(Cell::Float(i_min));
                cols[3].push(Cell::Float(op.gain));
                cols[4].push(Cell::Float(op.bandwidth));
                cols[5].push(Cell::Float(op.input_noise(f, tech)?));
                cols[6].push(Cell::Float(op.power));
            }
            Err(ModelError::Capacity { .. }) => {
                cols[1].push(Cell::Bool(false));
                for c in &mut cols[2..] {
                    c.push(Cell::Float(0.0));
                }
            }
            Err(e) => return Err(e.into()),
        }
    }
    let names = [
        "rate_hz",
        "feasible",
        "min_bias_a",
        "gain",
        "bandwidth_hz",
        "noise_vrms",
        "power_w",
    ];
    for (name, col) in names.into_iter().zip(cols) {
        table.column(name, col);
    }
    Ok(())
}

fn cmd_integrator(
    table: &mut Table,
    tech: &TechnologyParams,
    rate: RangeSpec,
) -> Result<(), RunError> {
    let grid = rate.logspace().map_err(usage)?;
    let c_load = ref65::INTEGRATOR_C_LOAD;
    let mut cols: [Vec<Cell>; 10] = Default::default();
    for &f in &grid {
        let t_int = 0.5 / f;
        let i_max = max_bias_current(c_load, t_int, tech.supply_voltage)?;
        let pre = IntegratorConfig::from_device(
            tech,
            ref65::INTEGRATOR_WIDTH_UM,
            i_max,
            c_load,
            LoadKind::Precharge,
        )?;
        // Current-source loads sized like the input pair carry the
        // same gm at the same bias.
        let cs = IntegratorConfig::from_device(
            tech,
            ref65::INTEGRATOR_WIDTH_UM,
            i_max,
            c_load,
            LoadKind::CurrentSource { gm_load: pre.gm },
        )?;
        cols[0].push(Cell::Float(f));
        cols[1].push(Cell::Float(t_int));
        cols[2].push(Cell::Float(i_max));
        cols[3].push(Cell::Float(pre.gm));
        cols[4].push(Cell::Float(pre.ideal_gain(t_int)?));
        cols[5].push(Cell::Float(pre.exact_gain(t_int)?));
        cols[6].push(Cell::Float(pre.max_gain_precharge()?));
        cols[7].push(Cell::Float(cs.exact_gain(t_int)?));
        cols[8].push(Cell::Float(pre.input_noise(t_int, tech)?));
        cols[9].push(Cell::Float(cs.input_noise(t_int, tech)?));
    }
    let names = [
        "f_clk_hz",
        "t_int_s",
        "ib_max_a",
        "gm_s",
        "gain_ideal",
        "gain_exact_precharge",
        "gain_max_precharge",
        "gain_exact_current_source",
        "noise_precharge_vrms",
        "noise_current_source_vrms",
    ];
    for (name, col) in names.into_iter().zip(cols) {
        table.column(name, col);
    }
    Ok(())
}

fn cmd_cascade(
    table: &mut Table,
    tech: &TechnologyParams,
    rate: RangeSpec,
    depth: usize,
) -> Result<(), RunError> {
    if depth == 0 {
        return Err(usage("--depth must be at least 1"));
    }
    let grid = rate.logspace().map_err(usage)?;
    let c_load = ref65::INTEGRATOR_C_LOAD;
    let mut cols: [Vec<Cell>; 6] = Default::default();
    for &f in &grid {
        let t_int = 0.5 / f;
        let i_max = max_bias_current(c_load, t_int, tech.supply_voltage)?;
        let stage = IntegratorConfig::from_device(
            tech,
            ref65::INTEGRATOR_WIDTH_UM,
            i_max,
            c_load,
            LoadKind::Precharge,
        )?;
        let single = stage.exact_gain(t_int)?;
        let k_i = stage.gm / stage.c_load;
        let cascade = CascadeConfig {
            stage,
            depth,
        };
        cols[0].push(Cell::Float(f));
        cols[1].push(Cell::Int(depth as i64));
        cols[2].push(Cell::Float(single));
        cols[3].push(Cell::Float(cascade_gain_exact(&cascade, t_int)?));
        cols[4].push(Cell::Float(cascade_gain_ideal(k_i, t_int, depth)?));
        cols[5].push(Cell::Int(optimal_cascade_depth(
            cascade.stage.ideal_gain(t_int)?,
        )? as i64));
    }
    let names = [
        "f_clk_hz",
        "depth",
        "gain_single_exact",
        "gain_cascade_exact",
        "gain_cascade_ideal",
        "optimal_depth",
    ];
    for (name, col) in names.into_iter().zip(cols) {
        table.column(name, col);
    }
    Ok(())
}

fn cmd_arch(
    table: &mut Table,
    tech: &TechnologyParams,
    arch: ArchArg,
    depth: usize,
    loss_db: RangeSpec,
    ber: &[f64],
) -> Result<(), RunError> {
    let targets = parse_targets(ber)?;
    let chain = build_chain(arch_of(arch, depth)?, tech)?;
    let losses = loss_db.linspace();
    let sweep = chain.sweep(&losses, &targets)?;

    let n = sweep.rows.len();
    let mut loss_col = Vec::with_capacity(n);
    let mut feasible_col = Vec::with_capacity(n);
    let mut rate_col = Vec::with_capacity(n);
    let mut gain_col = Vec::with_capacity(n);
    let mut swing_col = Vec::with_capacity(n);
    let mut noise_col = Vec::with_capacity(n);
    let mut ber_col = Vec::with_capacity(n);
    let mut energy_col = Vec::with_capacity(n);
    let mut dotted_col = Vec::with_capacity(n);
    let mut meets: Vec<Vec<Cell>> = vec![Vec::with_capacity(n); targets.len()];
    let mut constrained: Vec<Vec<Cell>> = vec![Vec::with_capacity(n); targets.len()];

    for row in &sweep.rows {
        let s = &row.solution;
        loss_col.push(Cell::Float(s.channel_loss_db));
        feasible_col.push(Cell::Bool(s.feasible.is_feasible()));
        rate_col.push(Cell::Float(s.data_rate));
        gain_col.push(Cell::Float(s.fe_gain));
        swing_col.push(Cell::Float(s.sampler_input_swing));
        noise_col.push(Cell::Float(s.rx_input_noise_rms));
        ber_col.push(Cell::Float(s.ber));
        energy_col.push(Cell::Float(s.energy_per_bit));
        dotted_col.push(Cell::Bool(row.ber_exceeds_1e3));
        for (k, target) in targets.iter().enumerate() {
            meets[k].push(Cell::Bool(row.meets_target[k]));
            let r = chain.ber_constrained_max_rate(s.channel_loss_db, target)?;
            constrained[k].push(Cell::Float(r.unwrap_or(0.0)));
        }
    }

    table.meta("architecture", chain.architecture.to_string());
    table.column("loss_db", loss_col);
    table.column("feasible", feasible_col);
    table.column("f_max_hz", rate_col);
    table.column("fe_gain", gain_col);
    table.column("sampler_swing_v", swing_col);
    table.column("noise_vrms", noise_col);
    table.column("ber", ber_col);
    table.column("energy_j_per_bit", energy_col);
    table.column("ber_exceeds_1e3", dotted_col);
    for (k, target) in targets.iter().enumerate() {
        table.column(&format!("meets_ber_{:e}", target.ber), meets[k].clone());
        table.column(
            &format!("rate_at_ber_{:e}_hz", target.ber),
            constrained[k].clone(),
        );
    }
    Ok(())
}

const COMPARE_ARCHS: [Architecture; 5] = [
    Architecture::SamplerOnly,
    Architecture::LnaSampler,
    Architecture::IntegratorSampler,
    Architecture::LnaCascadeSampler { depth: 1 },
    Architecture::LnaCascadeSampler { depth: 2 },
];

fn arch_tag(arch: Architecture) -> &'static str {
    match arch {
        Architecture::SamplerOnly => "I",
        Architecture::LnaSampler => "II",
        Architecture::IntegratorSampler => "III",
        Architecture::LnaCascadeSampler { depth: 1 } => "IV1",
        Architecture::LnaCascadeSampler { .. } => "IV2",
    }
}

fn cmd_compare(
    table: &mut Table,
    tech: &TechnologyParams,
    loss_db: RangeSpec,
    ber: &[f64],
    curve: CompareCurve,
) -> Result<(), RunError> {
    let targets = parse_targets(ber)?;
    let losses = loss_db.linspace();

    match curve {
        CompareCurve::Rate => {
            table.column(
                "loss_db",
                losses.iter().map(|&l| Cell::Float(l)).collect(),
            );
            for arch in COMPARE_ARCHS {
                let chain = build_chain(arch, tech)?;
                let sweep = chain.sweep(&losses, &targets)?;
                let tag = arch_tag(arch);
                table.column(
                    &format!("f_max_{tag}_hz"),
                    sweep
                        .rows
                        .iter()
                        .map(|r| Cell::Float(r.solution.data_rate))
                        .collect(),
                );
                table.column(
                    &format!("ber_le_1e3_{tag}"),
                    sweep
                        .rows
                        .iter()
                        .map(|r| Cell::Bool(!r.ber_exceeds_1e3))
                        .collect(),
                );
            }
        }
        CompareCurve::Lmax => {
            let mut arch_col = Vec::new();
            let mut ber_col = Vec::new();
            let mut lmax_col = Vec::new();
            for arch in COMPARE_ARCHS {
                let chain = build_chain(arch, tech)?;
                for target in &targets {
                    arch_col.push(Cell::Text(arch_tag(arch).to_string()));
                    ber_col.push(Cell::Float(target.ber));
                    lmax_col.push(Cell::Float(chain.l_max(target)?));
                }
            }
            table.column("architecture", arch_col);
            table.column("ber_target", ber_col);
            table.column("l_max_db", lmax_col);
        }
        CompareCurve::Energy => {
            let mut arch_col = Vec::new();
            let mut energy_col = Vec::new();
            for arch in COMPARE_ARCHS {
                let chain = build_chain(arch, tech)?;
                arch_col.push(Cell::Text(arch_tag(arch).to_string()));
                energy_col.push(Cell::Float(chain.energy_per_bit(1e9)?));
            }
            table.column("architecture", arch_col);
            table.column("energy_j_per_bit", energy_col);
        }
    }
    Ok(())
}
