//! `qlink` — link-performance calculator and cipher simulator for
//! quantum-secured optical links.
//!
//! Three subcommands: `rate` (carrier arrival and key/data rates versus
//! distance), `scenario` (cryptosystem timing/exposure arithmetic plus
//! requirement compliance), and `enigma` (deterministic Monte Carlo of the
//! quantum-noise stream cipher). Results go to stdout, diagnostics to
//! stderr; exit status is 0 on success, 1 on domain errors, 2 on usage or
//! configuration errors.

mod output;
mod preset;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{Format, OutputRecord, Value};
use preset::Preset;
use qlink_core::channel::{self, ChannelParams, SignalScheme};
use qlink_core::enigma::{self, CipherConfig, Detector};
use qlink_core::qkd;
use qlink_core::scenarios::{self, AesQkdScenario, OtpScenario};
use qlink_core::Error;
use std::path::PathBuf;
use std::process::ExitCode;

/// Environment variable consulted when `--seed` is absent.
const SEED_ENV_VAR: &str = "QLINK_SEED";
const DEFAULT_SEED: u64 = 42;
const DEFAULT_TRIALS: f64 = 1e5;

#[derive(Parser)]
#[command(
    name = "qlink",
    version,
    about = "Performance calculator and cipher simulator for quantum-secured optical links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Preset file of `name = value` defaults; explicit flags win
    #[arg(long, global = true)]
    preset: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Arrival probability and key/data rates for a carrier on a lossy fiber
    Rate(RateArgs),
    /// Cryptosystem timing, ciphertext exposure, and requirement compliance
    Scenario(ScenarioArgs),
    /// Monte Carlo of the quantum-noise stream cipher link
    Enigma(EnigmaArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    /// Key-rate bound and effective key throughput
    Qkd,
    /// One photon per pulse
    SinglePhoton,
    /// Coherent pulses of mean photon number --alpha2
    Coherent,
    /// Pulse position modulation over --slots positions
    Ppm,
}

#[derive(Args)]
struct RateArgs {
    /// Carrier or model to evaluate
    #[arg(long, value_enum)]
    scheme: SchemeArg,

    /// Fiber length, km
    #[arg(long)]
    distance_km: Option<f64>,

    /// Fiber loss coefficient, dB/km [default: 0.2]
    #[arg(long)]
    loss_db_per_km: Option<f64>,

    /// Source rate, bit/s (1 bit per pulse at the source); required for qkd
    #[arg(long)]
    input_rate_bps: Option<f64>,

    /// Mean photon number |alpha|^2 per symbol (coherent and ppm)
    #[arg(long)]
    alpha2: Option<f64>,

    /// PPM slot count N (ppm only)
    #[arg(long)]
    slots: Option<u32>,

    /// Sweep distances `start:stop:step` km instead of --distance-km
    #[arg(long)]
    sweep: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScenarioTypeArg {
    /// AES rekeyed from a key-delivery link
    AesQkd,
    /// One-time pad fed from a key-delivery link
    Otp,
    /// Quantum-noise stream cipher on a bright carrier
    Qec,
}

#[derive(Args)]
struct ScenarioArgs {
    /// Cryptosystem to evaluate
    #[arg(long = "type", value_enum)]
    scenario_type: ScenarioTypeArg,

    /// Cipher key size, bits (aes-qkd) [default: 256]
    #[arg(long)]
    key_bits: Option<u32>,

    /// Key-delivery rate, bit/s (aes-qkd, otp)
    #[arg(long)]
    key_rate_bps: Option<f64>,

    /// Payload rate, bit/s (aes-qkd)
    #[arg(long)]
    data_rate_bps: Option<f64>,

    /// Payload volume to encrypt, bits (otp)
    #[arg(long)]
    data_bits: Option<f64>,

    /// Transmission-link rate, bit/s (otp)
    #[arg(long)]
    link_rate_bps: Option<f64>,

    /// Link distance, km (qec; optional context for the requirement check
    /// elsewhere)
    #[arg(long)]
    distance_km: Option<f64>,

    /// Fiber loss coefficient, dB/km (qec) [default: 0.2]
    #[arg(long)]
    loss_db_per_km: Option<f64>,

    /// Source rate, bit/s (qec)
    #[arg(long)]
    input_rate_bps: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DetectorArg {
    Homodyne,
    Heterodyne,
}

#[derive(Args)]
struct EnigmaArgs {
    /// Number of bases M; the constellation has 2M points [default: 2048]
    #[arg(long)]
    m: Option<u32>,

    /// Transmitted mean photon number |alpha|^2 [default: 1e4]
    #[arg(long)]
    alpha2: Option<f64>,

    /// Tap transmissivity towards the keyed receiver, (0,1] [default: 1]
    #[arg(long)]
    bob_tap: Option<f64>,

    /// Tap transmissivity towards the interceptor, (0,1] [default: 1]
    #[arg(long)]
    eve_tap: Option<f64>,

    /// Monte Carlo trials, scientific notation accepted [default: 1e5]
    #[arg(long)]
    trials: Option<f64>,

    /// RNG seed; falls back to QLINK_SEED, then 42
    #[arg(long)]
    seed: Option<u64>,

    /// Shared seed-key length, bits [default: 256]
    #[arg(long)]
    seed_key_bits: Option<u32>,

    /// Keyed receiver's measurement [default: homodyne]
    #[arg(long, value_enum)]
    detector: Option<DetectorArg>,

    /// Worker threads for the Monte Carlo; never changes results
    #[arg(long)]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let preset = match &cli.preset {
        Some(path) => match Preset::load(path) {
            Ok(preset) => preset,
            Err(e) => return fail(&e),
        },
        None => Preset::default(),
    };
    let record = match &cli.command {
        Command::Rate(args) => run_rate(args, &preset),
        Command::Scenario(args) => run_scenario(args, &preset),
        Command::Enigma(args) => run_enigma(args, &preset),
    };
    match record {
        Ok(record) => {
            print!("{}", record.render(cli.format));
            ExitCode::SUCCESS
        }
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Domain(_) => ExitCode::from(1),
        Error::Usage(_) | Error::Config(_) => ExitCode::from(2),
    }
}

// ---------------------------------------------------------------------------
// rate
// ---------------------------------------------------------------------------

fn run_rate(args: &RateArgs, preset: &Preset) -> Result<OutputRecord, Error> {
    let distance_km: Option<f64> = preset.resolve(args.distance_km, "distance-km")?;
    let loss_db_per_km = preset
        .resolve(args.loss_db_per_km, "loss-db-per-km")?
        .unwrap_or(channel::DEFAULT_LOSS_DB_PER_KM);
    let input_rate_bps: Option<f64> = preset.resolve(args.input_rate_bps, "input-rate-bps")?;
    let alpha2: Option<f64> = preset.resolve(args.alpha2, "alpha2")?;
    let slots: Option<u32> = preset.resolve(args.slots, "slots")?;
    let sweep: Option<String> = preset.resolve(args.sweep.clone(), "sweep")?;

    let distances = match (&sweep, distance_km) {
        (Some(spec), None) => parse_sweep(spec)?,
        (None, Some(d)) => vec![d],
        (Some(_), Some(_)) => {
            return Err(Error::usage("pass either --distance-km or --sweep, not both"))
        }
        (None, None) => return Err(Error::usage("pass --distance-km or --sweep")),
    };

    match args.scheme {
        SchemeArg::Qkd => {
            if alpha2.is_some() || slots.is_some() {
                return Err(Error::usage(
                    "--alpha2/--slots do not apply to --scheme qkd",
                ));
            }
            if input_rate_bps.is_none() {
                return Err(Error::usage("--scheme qkd requires --input-rate-bps"));
            }
        }
        SchemeArg::SinglePhoton => {
            if alpha2.is_some() || slots.is_some() {
                return Err(Error::usage(
                    "--alpha2/--slots do not apply to --scheme single-photon",
                ));
            }
        }
        SchemeArg::Coherent => {
            if slots.is_some() {
                return Err(Error::usage("--slots only applies to --scheme ppm"));
            }
            if alpha2.is_none() {
                return Err(Error::usage("--scheme coherent requires --alpha2"));
            }
        }
        SchemeArg::Ppm => {
            if alpha2.is_none() || slots.is_none() {
                return Err(Error::usage("--scheme ppm requires --alpha2 and --slots"));
            }
        }
    }

    let mut record = OutputRecord::new("rate");
    let scheme_name = match args.scheme {
        SchemeArg::Qkd => "qkd",
        SchemeArg::SinglePhoton => "single-photon",
        SchemeArg::Coherent => "coherent",
        SchemeArg::Ppm => "ppm",
    };
    record.param("scheme", Value::Text(scheme_name.to_string()));
    if let Some(spec) = &sweep {
        record.param("sweep", Value::Text(spec.clone()));
    } else {
        record.param("distance_km", Value::Num(distances[0]));
    }
    record.param("loss_db_per_km", Value::Num(loss_db_per_km));
    if let Some(rate) = input_rate_bps {
        record.param("input_rate_bps", Value::Num(rate));
    }
    if let Some(a2) = alpha2 {
        record.param("alpha2", Value::Num(a2));
    }
    if let Some(n) = slots {
        record.param("slots", Value::Int(u64::from(n)));
    }
    for (key, unit) in [
        ("distance_km", "km"),
        ("loss_db_per_km", "dB/km"),
        ("input_rate_bps", "bit/s"),
        ("alpha2", "photons"),
        ("slots", "slots"),
        ("kappa", "dimensionless"),
        ("arrival_probability", "probability"),
        ("bits_per_symbol", "bit/symbol"),
        ("energy_per_pulse_photons", "photons"),
        ("bandwidth_expansion", "dimensionless"),
        ("rate_per_pulse", "bit/pulse"),
        ("arrival_rate", "dimensionless"),
        ("effective_rate_per_pulse", "bit/pulse"),
        ("output_rate_bps", "bit/s"),
    ] {
        record.unit(key, unit);
    }

    let single = distances.len() == 1 && sweep.is_none();
    for &distance in &distances {
        let channel_params = ChannelParams::new(distance, loss_db_per_km)?;
        let mut row: Vec<(String, Value)> = Vec::new();
        if !single {
            row.push(("distance_km".to_string(), Value::Num(distance)));
        }
        match args.scheme {
            SchemeArg::Qkd => {
                let rate = input_rate_bps.expect("checked above");
                match qkd::qkd_effective_rate(channel_params, rate) {
                    Ok(report) => {
                        row.push(("kappa".to_string(), Value::Num(report.kappa)));
                        row.push(("rate_per_pulse".to_string(), Value::Num(report.rate_per_pulse)));
                        row.push(("arrival_rate".to_string(), Value::Num(report.arrival_rate)));
                        row.push((
                            "effective_rate_per_pulse".to_string(),
                            Value::Num(report.effective_rate_per_pulse),
                        ));
                        row.push((
                            "output_rate_bps".to_string(),
                            Value::Num(report.output_rate_bps),
                        ));
                    }
                    Err(e) if single => return Err(e),
                    Err(e) => {
                        row.push(("error".to_string(), Value::Text(format!("out of domain: {e}"))));
                    }
                }
            }
            _ => {
                let scheme = build_scheme(args.scheme, alpha2, slots)?;
                let report = channel::arrival(scheme, channel_params)?;
                row.push(("kappa".to_string(), Value::Num(channel_params.transmissivity())));
                row.push((
                    "arrival_probability".to_string(),
                    Value::Num(report.arrival_probability),
                ));
                row.push(("bits_per_symbol".to_string(), Value::Num(report.bits_per_symbol)));
                row.push((
                    "energy_per_pulse_photons".to_string(),
                    Value::Num(report.energy_per_pulse),
                ));
                row.push((
                    "bandwidth_expansion".to_string(),
                    Value::Num(report.bandwidth_expansion),
                ));
                if let Some(rate) = input_rate_bps {
                    // Source symbols/s times survival times bits per symbol.
                    row.push((
                        "output_rate_bps".to_string(),
                        Value::Num(rate * report.arrival_probability * report.bits_per_symbol),
                    ));
                }
            }
        }
        record.results.push(row);
    }
    Ok(record)
}

fn build_scheme(
    scheme: SchemeArg,
    alpha2: Option<f64>,
    slots: Option<u32>,
) -> Result<SignalScheme, Error> {
    match scheme {
        SchemeArg::SinglePhoton => Ok(SignalScheme::SinglePhoton),
        SchemeArg::Coherent => SignalScheme::coherent(alpha2.expect("checked above")),
        SchemeArg::Ppm => {
            SignalScheme::ppm(alpha2.expect("checked above"), slots.expect("checked above"))
        }
        SchemeArg::Qkd => unreachable!("qkd handled separately"),
    }
}

/// `start:stop:step`, endpoints inclusive within half a step.
fn parse_sweep(spec: &str) -> Result<Vec<f64>, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    let usage = || Error::usage(format!("--sweep expects start:stop:step, got `{spec}`"));
    if parts.len() != 3 {
        return Err(usage());
    }
    let nums: Vec<f64> = parts
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| usage()))
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = (nums[0], nums[1], nums[2]);
    if !start.is_finite() || !stop.is_finite() || !step.is_finite() || step <= 0.0 || stop < start
    {
        return Err(Error::usage(format!(
            "--sweep needs finite start <= stop and step > 0, got `{spec}`"
        )));
    }
    let count = ((stop - start) / step + 0.5).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Error::usage(format!("sweep of {count} points is too large")));
    }
    Ok((0..count).map(|k| start + step * k as f64).collect())
}

// ---------------------------------------------------------------------------
// scenario
// ---------------------------------------------------------------------------

fn run_scenario(args: &ScenarioArgs, preset: &Preset) -> Result<OutputRecord, Error> {
    let key_bits = preset.resolve(args.key_bits, "key-bits")?;
    let key_rate_bps: Option<f64> = preset.resolve(args.key_rate_bps, "key-rate-bps")?;
    let data_rate_bps: Option<f64> = preset.resolve(args.data_rate_bps, "data-rate-bps")?;
    let data_bits: Option<f64> = preset.resolve(args.data_bits, "data-bits")?;
    let link_rate_bps: Option<f64> = preset.resolve(args.link_rate_bps, "link-rate-bps")?;
    let distance_km: Option<f64> = preset.resolve(args.distance_km, "distance-km")?;
    let loss_db_per_km = preset
        .resolve(args.loss_db_per_km, "loss-db-per-km")?
        .unwrap_or(channel::DEFAULT_LOSS_DB_PER_KM);
    let input_rate_bps: Option<f64> = preset.resolve(args.input_rate_bps, "input-rate-bps")?;

    let mut record = OutputRecord::new("scenario");
    for (key, unit) in [
        ("key_bits", "bit"),
        ("key_rate_bps", "bit/s"),
        ("data_rate_bps", "bit/s"),
        ("data_bits", "bit"),
        ("link_rate_bps", "bit/s"),
        ("distance_km", "km"),
        ("loss_db_per_km", "dB/km"),
        ("input_rate_bps", "bit/s"),
        ("rekey_interval_s", "s"),
        ("key_accumulation_s", "s"),
        ("transmit_time_s", "s"),
        ("exposed_ciphertext_bits", "bit"),
        ("duty_cycle", "dimensionless"),
        ("output_rate_bps", "bit/s"),
    ] {
        record.unit(key, unit);
    }

    let require = |value: Option<f64>, flag: &str| {
        value.ok_or_else(|| Error::usage(format!("--type {} requires --{flag}", type_name(args))))
    };

    let (report, check_rate) = match args.scenario_type {
        ScenarioTypeArg::AesQkd => {
            reject_flags(
                args,
                &[
                    (data_bits.is_some(), "data-bits"),
                    (link_rate_bps.is_some(), "link-rate-bps"),
                    (input_rate_bps.is_some(), "input-rate-bps"),
                ],
            )?;
            let scenario = AesQkdScenario {
                key_bits: key_bits.unwrap_or(256),
                key_rate_bps: require(key_rate_bps, "key-rate-bps")?,
                data_rate_bps: require(data_rate_bps, "data-rate-bps")?,
            };
            record.param("type", Value::Text("aes-qkd".to_string()));
            record.param("key_bits", Value::Int(u64::from(scenario.key_bits)));
            record.param("key_rate_bps", Value::Num(scenario.key_rate_bps));
            record.param("data_rate_bps", Value::Num(scenario.data_rate_bps));
            let report = scenarios::aes_qkd_report(&scenario)?;
            let rate = scenario.data_rate_bps;
            (report, rate)
        }
        ScenarioTypeArg::Otp => {
            reject_flags(
                args,
                &[
                    (key_bits.is_some(), "key-bits"),
                    (data_rate_bps.is_some(), "data-rate-bps"),
                    (input_rate_bps.is_some(), "input-rate-bps"),
                ],
            )?;
            let scenario = OtpScenario {
                data_volume_bits: require(data_bits, "data-bits")?,
                key_rate_bps: require(key_rate_bps, "key-rate-bps")?,
                link_rate_bps: require(link_rate_bps, "link-rate-bps")?,
            };
            record.param("type", Value::Text("otp".to_string()));
            record.param("data_bits", Value::Num(scenario.data_volume_bits));
            record.param("key_rate_bps", Value::Num(scenario.key_rate_bps));
            record.param("link_rate_bps", Value::Num(scenario.link_rate_bps));
            let report = scenarios::otp_report(&scenario)?;
            let rate = report.output_rate_bps;
            (report, rate)
        }
        ScenarioTypeArg::Qec => {
            reject_flags(
                args,
                &[
                    (key_bits.is_some(), "key-bits"),
                    (key_rate_bps.is_some(), "key-rate-bps"),
                    (data_rate_bps.is_some(), "data-rate-bps"),
                    (data_bits.is_some(), "data-bits"),
                    (link_rate_bps.is_some(), "link-rate-bps"),
                ],
            )?;
            let distance = require(distance_km, "distance-km")?;
            let input_rate = require(input_rate_bps, "input-rate-bps")?;
            let channel_params = ChannelParams::new(distance, loss_db_per_km)?;
            record.param("type", Value::Text("qec".to_string()));
            record.param("distance_km", Value::Num(distance));
            record.param("loss_db_per_km", Value::Num(loss_db_per_km));
            record.param("input_rate_bps", Value::Num(input_rate));
            let report = scenarios::qec_report(channel_params, input_rate)?;
            (report, input_rate)
        }
    };

    if args.scenario_type != ScenarioTypeArg::Qec {
        if let Some(distance) = distance_km {
            record.param("distance_km", Value::Num(distance));
        }
    }

    let check_distance = distance_km.unwrap_or(0.0);
    let check = scenarios::check_requirements(check_rate, check_distance, report.kind.name());

    let wait_key = match args.scenario_type {
        ScenarioTypeArg::AesQkd | ScenarioTypeArg::Qec => "rekey_interval_s",
        ScenarioTypeArg::Otp => "key_accumulation_s",
    };
    let mut row: Vec<(String, Value)> = vec![
        (wait_key.to_string(), Value::Num(report.wait_time_s)),
        (
            "exposed_ciphertext_bits".to_string(),
            Value::Num(report.exposed_ciphertext_bits),
        ),
        ("duty_cycle".to_string(), Value::Num(report.duty_cycle)),
        ("output_rate_bps".to_string(), Value::Num(report.output_rate_bps)),
        ("req_data_speed_ok".to_string(), Value::Bool(check.data_speed_ok)),
        ("req_distance_ok".to_string(), Value::Bool(check.distance_ok)),
        (
            "req_symmetric_key_ok".to_string(),
            Value::Bool(check.symmetric_key_ok),
        ),
        (
            "brute_force_note".to_string(),
            Value::Text(check.brute_force_note.clone()),
        ),
    ];
    if args.scenario_type == ScenarioTypeArg::Otp {
        // Transmit window alongside the accumulation time.
        let transmit = report.wait_time_s * report.duty_cycle / (1.0 - report.duty_cycle);
        row.insert(1, ("transmit_time_s".to_string(), Value::Num(transmit)));
    }
    record.results.push(row);
    record.note(report.notes.clone());
    if distance_km.is_none() && args.scenario_type != ScenarioTypeArg::Qec {
        record.note("distance requirement marked failed: no --distance-km given");
    }
    Ok(record)
}

fn type_name(args: &ScenarioArgs) -> &'static str {
    match args.scenario_type {
        ScenarioTypeArg::AesQkd => "aes-qkd",
        ScenarioTypeArg::Otp => "otp",
        ScenarioTypeArg::Qec => "qec",
    }
}

fn reject_flags(args: &ScenarioArgs, given: &[(bool, &str)]) -> Result<(), Error> {
    for (present, flag) in given {
        if *present {
            return Err(Error::usage(format!(
                "--{flag} does not apply to --type {}",
                type_name(args)
            )));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// enigma
// ---------------------------------------------------------------------------

fn run_enigma(args: &EnigmaArgs, preset: &Preset) -> Result<OutputRecord, Error> {
    let num_bases = preset.resolve(args.m, "m")?.unwrap_or(2048);
    let alpha2 = preset.resolve(args.alpha2, "alpha2")?.unwrap_or(1e4);
    let bob_tap = preset.resolve(args.bob_tap, "bob-tap")?.unwrap_or(1.0);
    let eve_tap = preset.resolve(args.eve_tap, "eve-tap")?.unwrap_or(1.0);
    let trials_raw = preset
        .resolve(args.trials, "trials")?
        .unwrap_or(DEFAULT_TRIALS);
    let seed = match preset.resolve(args.seed, "seed")? {
        Some(seed) => seed,
        None => seed_from_env()?,
    };
    let seed_key_bits = preset
        .resolve(args.seed_key_bits, "seed-key-bits")?
        .unwrap_or(256);
    let detector = match preset
        .resolve(
            args.detector.map(|d| format!("{d:?}").to_lowercase()),
            "detector",
        )?
        .as_deref()
    {
        None | Some("homodyne") => Detector::Homodyne,
        Some("heterodyne") => Detector::Heterodyne,
        Some(other) => {
            return Err(Error::usage(format!(
                "detector must be homodyne or heterodyne, got `{other}`"
            )))
        }
    };
    let threads: Option<usize> = preset.resolve(args.threads, "threads")?;

    let trials = parse_count(trials_raw, "--trials")?;
    let cfg = CipherConfig {
        num_bases,
        seed_key_bits,
        mean_photon_number: alpha2,
        bob_transmissivity: bob_tap,
        eve_transmissivity: eve_tap,
        detector,
        rng_seed: seed,
    };

    let (separation, masking) = match threads {
        None => (
            enigma::error_separation(&cfg, trials)?,
            enigma::masking_report(&cfg)?,
        ),
        Some(0) => return Err(Error::usage("--threads must be at least 1")),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::usage(format!("cannot build a {n}-thread pool: {e}")))?;
            pool.install(|| {
                Ok::<_, Error>((
                    enigma::error_separation(&cfg, trials)?,
                    enigma::masking_report(&cfg)?,
                ))
            })?
        }
    };

    let mut record = OutputRecord::new("enigma");
    record
        .param("m", Value::Int(u64::from(num_bases)))
        .param("alpha2", Value::Num(alpha2))
        .param("bob_tap", Value::Num(bob_tap))
        .param("eve_tap", Value::Num(eve_tap))
        .param("trials", Value::Int(trials))
        .param("seed", Value::Int(seed))
        .param("seed_key_bits", Value::Int(u64::from(seed_key_bits)))
        .param("detector", Value::Text(detector.name().to_string()));
    for (key, unit) in [
        ("alpha2", "photons"),
        ("bob_tap", "dimensionless"),
        ("eve_tap", "dimensionless"),
        ("seed_key_bits", "bit"),
        ("bob_p_error", "probability"),
        ("bob_ci_halfwidth_95", "probability"),
        ("bob_analytic_p", "probability"),
        ("eve_p_error", "probability"),
        ("eve_ci_halfwidth_95", "probability"),
        ("separation_ratio", "dimensionless"),
        ("neighbor_spacing_rad", "rad"),
        ("phase_noise_std_rad", "rad"),
        ("masking_number", "states"),
    ] {
        record.unit(key, unit);
    }

    let bob = &separation.bob;
    let eve = &separation.eve;
    let mut row: Vec<(String, Value)> = vec![
        ("bob_p_error".to_string(), Value::Num(bob.p_error)),
        (
            "bob_ci_halfwidth_95".to_string(),
            Value::Num(bob.ci_halfwidth_95),
        ),
        (
            "bob_analytic_p".to_string(),
            Value::Num(bob.analytic_p.expect("keyed receiver has a closed form")),
        ),
        ("bob_trials".to_string(), Value::Int(bob.trials)),
        (
            "bob_below_resolution".to_string(),
            Value::Bool(bob.below_resolution),
        ),
        ("eve_p_error".to_string(), Value::Num(eve.p_error)),
        (
            "eve_ci_halfwidth_95".to_string(),
            Value::Num(eve.ci_halfwidth_95),
        ),
        ("eve_trials".to_string(), Value::Int(eve.trials)),
        (
            "eve_below_resolution".to_string(),
            Value::Bool(eve.below_resolution),
        ),
        (
            "separation_ratio".to_string(),
            Value::Num(separation.separation_ratio),
        ),
        (
            "neighbor_spacing_rad".to_string(),
            Value::Num(masking.neighbor_spacing_rad),
        ),
        (
            "phase_noise_std_rad".to_string(),
            Value::Num(masking.phase_noise_std_rad),
        ),
        ("masking_number".to_string(), Value::Num(masking.masking_number)),
    ];
    row.shrink_to_fit();
    record.results.push(row);

    if masking.masking_number < 1.0 {
        record.note(format!(
            "unmasked: constellation spacing exceeds the interceptor's phase noise \
             (masking_number = {:.3}); the separation ratio is not meaningful here",
            masking.masking_number
        ));
    }
    if bob.below_resolution {
        record.note(
            "keyed receiver saw fewer errors than the Monte Carlo can resolve; \
             read bob_analytic_p (bob_p_error is an upper bound)",
        );
    }
    if eve.below_resolution {
        record.note("interceptor errors below Monte Carlo resolution");
    }
    Ok(record)
}

fn seed_from_env() -> Result<u64, Error> {
    match std::env::var(SEED_ENV_VAR) {
        Ok(raw) => raw.trim().parse::<u64>().map_err(|_| {
            Error::usage(format!(
                "{SEED_ENV_VAR} must be a 64-bit unsigned integer, got `{raw}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Positive integer given possibly in scientific notation ("1e5").
fn parse_count(raw: f64, flag: &str) -> Result<u64, Error> {
    if !raw.is_finite() || raw < 1.0 || raw.fract() != 0.0 || raw > 1e18 {
        return Err(Error::usage(format!(
            "{flag} must be a positive integer (scientific notation accepted), got {raw}"
        )));
    }
    Ok(raw as u64)
}
