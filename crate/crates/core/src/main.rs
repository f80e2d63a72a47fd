//! Command-line front end: classification, pinching reports, data-grid
//! sweeps, and cross-module verification suites.
//!
//! Exit codes: 0 success, 2 usage or parameter error, 3 verification failure.

use clap::{Args, Parser, Subcommand, ValueEnum};
use hopfcurv::curvature::MetricParams;
use hopfcurv::optimizer::{
    certify_positive, extremize, reduction_check, second_slot_check, OptimizerConfig, Sense,
    SearchSpace,
};
use hopfcurv::oracle::{Oracle, OracleMetric};
use hopfcurv::pinching;
use hopfcurv::positivity::{
    self, classify, invariants, quad_roots, separating_curve_residual, slice_curve, surface_gap,
    surface_t3, zero_planes, SurfaceKind, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "hopfcurv", version, about = "Curvature of homogeneous metrics on spheres")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[command(flatten)]
    global: Global,
}

#[derive(Args)]
struct Global {
    /// Output format (default: human-readable text; sweeps default to csv)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for all randomized computations
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker thread count (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Config file with key=value defaults (tolerances, restarts, parallelism)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a three-parameter metric by the positivity criterion
    Classify { t1: f64, t2: f64, t3: f64 },
    /// Pinching report for the one-parameter family
    Pinch {
        t: f64,
        /// Hopf fiber dimension
        #[arg(long, default_value_t = 3)]
        fiber: u8,
        /// Cross-check the closed form against the optimizer
        #[arg(long)]
        verify: bool,
    },
    /// Emit data grids for plotting
    Sweep {
        #[command(subcommand)]
        which: SweepCmd,
    },
    /// Run a verification suite
    Verify {
        suite: Suite,
        /// Perturb the oracle output to prove the checks can fail
        #[arg(long, hide = true)]
        tamper: bool,
    },
}

#[derive(Subcommand)]
enum SweepCmd {
    /// Pinching constant and natural-plane comparison over (0, 4/3)
    Pinching {
        #[arg(long, default_value_t = 500)]
        points: usize,
    },
    /// Membership grid on the cross-section t1+t2+t3 = 1
    CrossSection {
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Gap between the vertical-zero surface and the positivity boundary
    SurfaceGap {
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Boundary curve of the t1 = t2 slice
    Slice {
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Components,
    Oracle,
    Reduction,
    /// Positivity range of the one-parameter family
    Range,
    /// The three-parameter positivity classifier
    Classifier,
}

/// Tunables settable from the config file; flags override.
struct Settings {
    restarts: usize,
    max_iters: usize,
    ftol: f64,
    samples: usize,
    seed: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { restarts: 16, max_iters: 4000, ftol: 1e-13, samples: 100_000, seed: 0 }
    }
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Verification(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn parse_config(path: &PathBuf, s: &mut Settings, jobs: &mut Option<usize>) -> Result<(), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key=value", lineno + 1)))?;
        let (key, value) = (key.trim(), value.trim());
        let bad = |e: &dyn std::fmt::Display| {
            CliError::Usage(format!("config line {}: bad value for {key}: {e}", lineno + 1))
        };
        match key {
            "restarts" => s.restarts = value.parse().map_err(|e| bad(&e))?,
            "max_iters" => s.max_iters = value.parse().map_err(|e| bad(&e))?,
            "ftol" => s.ftol = value.parse().map_err(|e| bad(&e))?,
            "samples" => s.samples = value.parse().map_err(|e| bad(&e))?,
            "seed" => s.seed = value.parse().map_err(|e| bad(&e))?,
            "jobs" => {
                if jobs.is_none() {
                    *jobs = Some(value.parse().map_err(|e| bad(&e))?);
                }
            }
            _ => return Err(CliError::Usage(format!("config line {}: unknown key {key}", lineno + 1))),
        }
    }
    Ok(())
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match out {
        Some(path) => Box::new(std::io::BufWriter::new(fs::File::create(path)?)),
        None => Box::new(std::io::BufWriter::new(std::io::stdout())),
    })
}

/// 17 significant digits, enough to round-trip an f64.
fn f17(v: f64) -> String {
    format!("{v:.16e}")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut settings = Settings::default();
    let mut jobs = cli.global.jobs;
    if let Some(path) = &cli.global.config {
        if let Err(e) = parse_config(path, &mut settings, &mut jobs) {
            return fail(e);
        }
    }
    if let Some(seed) = cli.global.seed {
        settings.seed = seed;
    }
    if let Some(n) = jobs {
        // ignore the error if a pool already exists (e.g. repeated in-process use)
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli, &settings) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => fail(e),
    }
}

fn fail(e: CliError) -> ExitCode {
    match e {
        CliError::Usage(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        CliError::Verification(msg) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(3)
        }
        CliError::Io(e) => {
            eprintln!("io error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, settings: &Settings) -> Result<(), CliError> {
    let fmt = cli.global.format;
    let mut w = sink(&cli.global.out)?;
    match &cli.cmd {
        Cmd::Classify { t1, t2, t3 } => cmd_classify(&mut w, fmt, *t1, *t2, *t3),
        Cmd::Pinch { t, fiber, verify } => {
            cmd_pinch(&mut w, fmt, *t, *fiber, *verify, settings)
        }
        Cmd::Sweep { which } => cmd_sweep(&mut w, fmt, which),
        Cmd::Verify { suite, tamper } => cmd_verify(&mut w, *suite, *tamper, settings),
    }
}

fn verdict_name(v: &Verdict) -> &'static str {
    match v {
        Verdict::PositiveCurvature => "PositiveCurvature",
        Verdict::Boundary { .. } => "Boundary",
        Verdict::MixedCurvature { .. } => "MixedCurvature",
        Verdict::OutsideCone { .. } => "OutsideCone",
    }
}

fn cmd_classify(
    w: &mut dyn Write,
    fmt: Option<Format>,
    t1: f64,
    t2: f64,
    t3: f64,
) -> Result<(), CliError> {
    let params = MetricParams::new(t1, t2, t3)
        .map_err(|_| CliError::Usage("metric parameters must be positive".into()))?;
    let verdict = classify(&params)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let inv = invariants(&params);
    match fmt.unwrap_or(Format::Text) {
        Format::Json => {
            let doc = json!({
                "t": [t1, t2, t3],
                "verdict": verdict,
                "invariants": inv,
            });
            writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => {
            writeln!(w, "t1,t2,t3,verdict,V1,V2,V3,H1,H2,H3,L1,L2,L3,E1,E2,E3")?;
            let mut row = vec![f17(t1), f17(t2), f17(t3), verdict_name(&verdict).to_string()];
            for get in [&inv.v_vals, &inv.h_vals, &inv.l_vals, &inv.e_vals] {
                row.extend(get.iter().map(|v| f17(*v)));
            }
            writeln!(w, "{}", row.join(","))?;
        }
        Format::Text => {
            writeln!(w, "metric (t1, t2, t3) = ({t1}, {t2}, {t3})")?;
            writeln!(w, "  i        V_i            H_i            L_i            E_i")?;
            for i in 1..=3 {
                writeln!(
                    w,
                    "  {i}  {:>13.10}  {:>13.10}  {:>13.10}  {:>13.10}",
                    inv.v(i),
                    inv.h(i),
                    inv.l(i),
                    inv.e(i)
                )?;
            }
            match verdict {
                Verdict::PositiveCurvature => writeln!(w, "verdict: PositiveCurvature")?,
                Verdict::Boundary { binding_index, z } => {
                    writeln!(w, "verdict: Boundary (binding index {binding_index}, Z = {z})")?
                }
                Verdict::MixedCurvature { binding_index } => {
                    writeln!(w, "verdict: MixedCurvature (binding index {binding_index})")?
                }
                Verdict::OutsideCone { index, failing } => {
                    writeln!(w, "verdict: OutsideCone (index {index}, {failing:?} <= 0)")?
                }
            }
        }
    }
    Ok(())
}

fn cmd_pinch(
    w: &mut dyn Write,
    fmt: Option<Format>,
    t: f64,
    fiber: u8,
    verify: bool,
    settings: &Settings,
) -> Result<(), CliError> {
    if fiber != 3 && fiber != 7 {
        return Err(CliError::Usage("fiber dimension must be 3 or 7".into()));
    }
    let report = pinching::report(t).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut verify_diff = None;
    if verify {
        let (metric, space) = if fiber == 3 {
            (OracleMetric::Sp { n: 2, t: [t; 3] }, SearchSpace::ReducedBerger3)
        } else {
            (OracleMetric::Spin { t }, SearchSpace::ReducedBerger7)
        };
        let cfg = OptimizerConfig {
            restarts: settings.restarts,
            seed: settings.seed,
            max_iters: settings.max_iters,
            ftol: settings.ftol,
        };
        let err = |e: hopfcurv::optimizer::OptimizerError| CliError::Usage(e.to_string());
        let min = extremize(&metric, space, Sense::Min, &cfg).map_err(err)?;
        let max = extremize(&metric, space, Sense::Max, &cfg).map_err(err)?;
        let delta_opt = min.value / max.value;
        verify_diff = Some((delta_opt - report.delta).abs());
    }
    match fmt.unwrap_or(Format::Text) {
        Format::Json => {
            let mut doc = serde_json::to_value(report)?;
            doc["fiber_dim"] = json!(fiber);
            if let Some(d) = verify_diff {
                doc["optimizer_delta_diff"] = json!(d);
            }
            writeln!(w, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        Format::Csv => {
            writeln!(w, "t,fiber_dim,min_sec,max_sec,min_plane,max_plane,delta,natural_delta")?;
            writeln!(
                w,
                "{},{},{},{},{},{},{},{}",
                f17(t),
                fiber,
                f17(report.min),
                f17(report.max),
                report.min_class.label(),
                report.max_class.label(),
                f17(report.delta),
                f17(report.natural_delta)
            )?;
        }
        Format::Text => {
            writeln!(w, "t = {t} (fiber dimension {fiber})")?;
            writeln!(w, "  min sec = {:.12}  ({})", report.min, report.min_class.label())?;
            writeln!(w, "  max sec = {:.12}  ({})", report.max, report.max_class.label())?;
            writeln!(w, "  delta = {:.12}", report.delta)?;
            writeln!(w, "  natural-plane delta = {:.12}", report.natural_delta)?;
            if let Some(d) = verify_diff {
                writeln!(w, "  optimizer cross-check: |delta difference| = {d:.3e}")?;
            }
        }
    }
    if let Some(d) = verify_diff {
        if d >= 1e-4 {
            return Err(CliError::Verification(format!(
                "optimizer delta deviates from closed form by {d:.3e}"
            )));
        }
    }
    Ok(())
}

/// A generic numeric table: header plus rows, emitted as CSV or JSON.
struct Table {
    header: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn write(&self, w: &mut dyn Write, fmt: Option<Format>) -> Result<(), CliError> {
        match fmt.unwrap_or(Format::Csv) {
            Format::Json => {
                let rows: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let map: serde_json::Map<String, serde_json::Value> = self
                            .header
                            .iter()
                            .zip(r)
                            .map(|(k, v)| {
                                let val = v
                                    .parse::<f64>()
                                    .map(|x| json!(x))
                                    .unwrap_or_else(|_| json!(v));
                                (k.to_string(), val)
                            })
                            .collect();
                        serde_json::Value::Object(map)
                    })
                    .collect();
                writeln!(w, "{}", serde_json::to_string_pretty(&rows)?)?;
            }
            _ => {
                writeln!(w, "{}", self.header.join(","))?;
                for r in &self.rows {
                    writeln!(w, "{}", r.join(","))?;
                }
            }
        }
        Ok(())
    }
}

fn cmd_sweep(w: &mut dyn Write, fmt: Option<Format>, which: &SweepCmd) -> Result<(), CliError> {
    match which {
        SweepCmd::Pinching { points } => {
            if *points < 2 {
                return Err(CliError::Usage("need at least 2 points".into()));
            }
            let n = *points;
            let rows: Vec<Vec<String>> = (0..n)
                .into_par_iter()
                .map(|k| {
                    let t = (4.0 / 3.0) * (k + 1) as f64 / (n + 1) as f64;
                    let d = pinching::pinching_delta(t).expect("interior point");
                    let nd = pinching::natural_delta(t).expect("interior point");
                    vec![f17(t), f17(d), f17(nd), f17(nd - d)]
                })
                .collect();
            let max_diff = rows
                .iter()
                .map(|r| r[3].parse::<f64>().unwrap())
                .fold(f64::NEG_INFINITY, f64::max);
            Table { header: vec!["t", "delta", "natural_delta", "difference"], rows }
                .write(w, fmt)?;
            if max_diff >= 0.008 {
                return Err(CliError::Verification(format!(
                    "natural-plane difference {max_diff} exceeds 0.008"
                )));
            }
            Ok(())
        }
        SweepCmd::CrossSection { grid } => {
            if *grid < 3 {
                return Err(CliError::Usage("grid must be at least 3".into()));
            }
            let n = *grid;
            let cells: Vec<(usize, usize)> = (1..n)
                .flat_map(|i| (1..n - i).map(move |j| (i, j)))
                .collect();
            let rows: Vec<Vec<String>> = cells
                .into_par_iter()
                .map(|(i, j)| {
                    let t1 = i as f64 / n as f64;
                    let t2 = j as f64 / n as f64;
                    let t3 = 1.0 - t1 - t2;
                    let p = MetricParams { t1, t2, t3 };
                    let v = classify(&p).expect("positive parameters");
                    let margin = (1..=3)
                        .map(|i| positivity::margin(&p, i))
                        .fold(f64::INFINITY, f64::min);
                    vec![
                        f17(t1),
                        f17(t2),
                        f17(t3),
                        verdict_name(&v).to_string(),
                        f17(margin),
                    ]
                })
                .collect();
            Table { header: vec!["t1", "t2", "t3", "verdict", "min_margin"], rows }.write(w, fmt)
        }
        SweepCmd::SurfaceGap { grid } => {
            if *grid < 3 {
                return Err(CliError::Usage("grid must be at least 3".into()));
            }
            let n = *grid;
            let rows: Vec<Vec<String>> = (1..=n)
                .into_par_iter()
                .flat_map_iter(|i| {
                    (1..=n).map(move |j| {
                        let t1 = (4.0 / 3.0) * i as f64 / n as f64;
                        let t2 = (4.0 / 3.0) * j as f64 / n as f64;
                        let v = surface_t3(t1, t2, SurfaceKind::VZero).expect("t positive");
                        let g = surface_gap(t1, t2).expect("t positive");
                        vec![f17(t1), f17(t2), f17(v), f17(g)]
                    })
                })
                .collect();
            let max_gap = rows
                .iter()
                .map(|r| r[3].parse::<f64>().unwrap())
                .fold(f64::NEG_INFINITY, f64::max);
            Table { header: vec!["t1", "t2", "vertical_zero_t3", "gap"], rows }.write(w, fmt)?;
            if n >= 150 && !(0.007 < max_gap && max_gap < 0.009) {
                return Err(CliError::Verification(format!(
                    "surface gap maximum {max_gap} outside (0.007, 0.009)"
                )));
            }
            Ok(())
        }
        SweepCmd::Slice { points } => {
            if *points < 2 {
                return Err(CliError::Usage("need at least 2 points".into()));
            }
            let n = *points;
            let rows: Vec<Vec<String>> = (0..n)
                .into_par_iter()
                .map(|k| {
                    let t1 = 0.5 * (k + 1) as f64 / (n + 1) as f64;
                    let t3 = slice_curve(t1).expect("interior point");
                    vec![f17(t1), f17(t3), f17(4.0 / 3.0 * t1)]
                })
                .collect();
            let ok = rows.iter().all(|r| {
                r[1].parse::<f64>().unwrap() < r[2].parse::<f64>().unwrap()
            });
            Table { header: vec!["t1", "boundary_t3", "vertical_zero_t3"], rows }.write(w, fmt)?;
            if !ok {
                return Err(CliError::Verification(
                    "slice boundary curve crossed the vertical-zero line".into(),
                ));
            }
            Ok(())
        }
    }
}

/// Coordinates of a component-table basis label in the oracle frame.
fn label_coords(o: &Oracle, t: &[f64; 3], v: hopfcurv::curvature::BasisVector) -> Vec<f64> {
    let mut c = vec![0.0; o.dim()];
    match v {
        hopfcurv::curvature::BasisVector::X(i) => c[i - 1] = t[i - 1].sqrt(),
        hopfcurv::curvature::BasisVector::U { r, s } => c[3 + (s - 1) * 4 + (r - 1)] = 1.0,
    }
    c
}

struct Checker<'a> {
    w: &'a mut dyn Write,
    ok: bool,
}

impl Checker<'_> {
    fn check(&mut self, name: &str, pass: bool, detail: String) {
        let tag = if pass { "pass" } else { "FAIL" };
        writeln!(self.w, "[{tag}] {name}: {detail}").expect("write check line");
        self.ok &= pass;
    }
}

fn cmd_verify(
    w: &mut dyn Write,
    suite: Suite,
    tamper: bool,
    settings: &Settings,
) -> Result<(), CliError> {
    let mut c = Checker { w, ok: true };
    let cfg = OptimizerConfig {
        restarts: settings.restarts,
        seed: settings.seed,
        max_iters: settings.max_iters,
        ftol: settings.ftol,
    };
    // test fixture: shifts every oracle curvature value to prove the
    // comparisons can fail
    let fudge = if tamper { 1e-3 } else { 0.0 };
    match suite {
        Suite::Components => {
            let mut rng = ChaCha8Rng::seed_from_u64(settings.seed.wrapping_add(11));
            let mut worst = 0.0f64;
            for _ in 0..20 {
                let t = [
                    rng.gen_range(0.1..1.3),
                    rng.gen_range(0.1..1.3),
                    rng.gen_range(0.1..1.3),
                ];
                let params = MetricParams::new(t[0], t[1], t[2]).unwrap();
                let o = Oracle::new(OracleMetric::Sp { n: 3, t })
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                for entry in hopfcurv::curvature::component_table(&params, 3) {
                    let [a, b, z, d] = entry.vectors;
                    let got = o.r4_coords(
                        &label_coords(&o, &t, a),
                        &label_coords(&o, &t, b),
                        &label_coords(&o, &t, z),
                        &label_coords(&o, &t, d),
                    ) + fudge;
                    worst = worst.max((got - entry.value).abs());
                }
            }
            c.check(
                "component table vs oracle",
                worst <= 1e-9,
                format!("20 random triples, worst error {worst:.3e}"),
            );
        }
        Suite::Oracle => {
            for (name, metric) in [
                ("sp n=2 round", OracleMetric::Sp { n: 2, t: [1.0; 3] }),
                ("spin(9) round", OracleMetric::Spin { t: 1.0 }),
            ] {
                let o = Oracle::new(metric).map_err(|e| CliError::Usage(e.to_string()))?;
                let mut rng = ChaCha8Rng::seed_from_u64(settings.seed.wrapping_add(13));
                let mut worst = 0.0f64;
                for _ in 0..200 {
                    let x: Vec<f64> = (0..o.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    let y: Vec<f64> = (0..o.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect();
                    if let Some(s) = o.sectional_coords(&x, &y) {
                        worst = worst.max((s + fudge - 1.0).abs());
                    }
                }
                c.check(
                    &format!("round constancy ({name})"),
                    worst <= 1e-9,
                    format!("200 planes, worst |sec - 1| = {worst:.3e}"),
                );
            }
            let o = Oracle::new(OracleMetric::Sp { n: 2, t: [0.7, 1.1, 0.4] })
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let mut rng = ChaCha8Rng::seed_from_u64(settings.seed.wrapping_add(17));
            let mut worst = 0.0f64;
            for _ in 0..50 {
                let v: Vec<Vec<f64>> = (0..4)
                    .map(|_| (0..o.dim()).map(|_| rng.gen_range(-1.0..1.0)).collect())
                    .collect();
                let r1 = o.r4_coords(&v[0], &v[1], &v[2], &v[3]);
                worst = worst.max((r1 - o.r4_coords(&v[2], &v[3], &v[0], &v[1])).abs());
                worst = worst.max((r1 + o.r4_coords(&v[1], &v[0], &v[2], &v[3])).abs());
                let bianchi = r1
                    + o.r4_coords(&v[0], &v[2], &v[3], &v[1])
                    + o.r4_coords(&v[0], &v[3], &v[1], &v[2]);
                worst = worst.max(bianchi.abs());
            }
            c.check(
                "curvature tensor symmetries",
                worst <= 1e-9,
                format!("pair symmetry, antisymmetry, first Bianchi; worst {worst:.3e}"),
            );
        }
        Suite::Reduction => {
            let mut rng = ChaCha8Rng::seed_from_u64(settings.seed.wrapping_add(19));
            for _ in 0..2 {
                let t = [
                    rng.gen_range(0.5..1.2),
                    rng.gen_range(0.5..1.2),
                    rng.gen_range(0.5..1.2),
                ];
                let metric = OracleMetric::Sp { n: 2, t };
                let rep = reduction_check(&metric, &cfg)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                c.check(
                    "full vs reduced minimum (sp n=2)",
                    rep.diff <= 1e-5,
                    format!(
                        "t = ({:.4}, {:.4}, {:.4}), diff {:.3e}",
                        t[0], t[1], t[2], rep.diff
                    ),
                );
            }
            let rep = reduction_check(&OracleMetric::Spin { t: 0.8 }, &cfg)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            c.check(
                "full vs reduced minimum (spin(9))",
                rep.diff <= 1e-5,
                format!("t = 0.8, diff {:.3e}", rep.diff),
            );
            for _ in 0..2 {
                let params = MetricParams::new(
                    rng.gen_range(0.5..1.2),
                    rng.gen_range(0.5..1.2),
                    rng.gen_range(0.5..1.2),
                )
                .unwrap();
                let rep = second_slot_check(&params, &cfg)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                c.check(
                    "second-slot minimum agreement",
                    rep.diff <= 1e-6,
                    format!("diff {:.3e}", rep.diff),
                );
            }
        }
        Suite::Range => {
            for fiber in [3u8, 7] {
                let mut all_ok = true;
                let mut detail = String::new();
                for k in 1..=28 {
                    let t = 0.05 * k as f64;
                    let (metric, space) = if fiber == 3 {
                        (OracleMetric::Sp { n: 2, t: [t; 3] }, SearchSpace::ReducedBerger3)
                    } else {
                        (OracleMetric::Spin { t }, SearchSpace::ReducedBerger7)
                    };
                    let min = extremize(&metric, space, Sense::Min, &cfg)
                        .map_err(|e| CliError::Usage(e.to_string()))?
                        .value
                        + fudge;
                    let want_positive = t < 4.0 / 3.0;
                    if (min > 0.0) != want_positive {
                        all_ok = false;
                        detail = format!("t = {t}: min sec = {min:.3e}");
                        break;
                    }
                }
                c.check(
                    &format!("positivity range (fiber {fiber})"),
                    all_ok,
                    if all_ok {
                        "min sec > 0 iff t < 4/3 on t = 0.05..1.40".to_string()
                    } else {
                        detail
                    },
                );
            }
        }
        Suite::Classifier => {
            // diagonal consistency with the one-parameter classification
            let mut ok = true;
            for k in 1..=139 {
                let t = 0.01 * k as f64;
                let p = MetricParams::new(t, t, t).unwrap();
                let positive = matches!(classify(&p).unwrap(), Verdict::PositiveCurvature);
                if positive != (t < 4.0 / 3.0 - 1e-12) {
                    ok = false;
                }
            }
            c.check("diagonal family range", ok, "positive iff 0 < t < 4/3".to_string());
            // cyclic invariance
            let mut rng = ChaCha8Rng::seed_from_u64(settings.seed.wrapping_add(23));
            let mut ok = true;
            for _ in 0..50 {
                let p = MetricParams::new(
                    rng.gen_range(0.05..1.35),
                    rng.gen_range(0.05..1.35),
                    rng.gen_range(0.05..1.35),
                )
                .unwrap();
                let d0 = std::mem::discriminant(&classify(&p).unwrap());
                for s in 1..3 {
                    if std::mem::discriminant(&classify(&p.cycled(s)).unwrap()) != d0 {
                        ok = false;
                    }
                }
            }
            c.check("cyclic invariance", ok, "50 random triples".to_string());
            // boundary point: exact arithmetic, quadratic double root, zero planes
            let p = MetricParams::new(0.25, 0.25, 0.325).unwrap();
            let inv = invariants(&p);
            let lhs = inv.l(3).abs();
            let rhs = 2.0 * (0.25 * 0.25 + (inv.h(3) * inv.v(3)).sqrt());
            c.check(
                "boundary identity",
                (lhs - 0.675).abs() < 1e-13 && (rhs - 0.675).abs() < 1e-13,
                format!("|L_3| = {lhs}, bound = {rhs}"),
            );
            let roots = quad_roots(&p, 3).map_err(|e| CliError::Usage(e.to_string()))?;
            c.check(
                "double root Z = 16/11",
                roots.len() == 2 && (roots[0] - 16.0 / 11.0).abs() < 1e-6,
                format!("roots {roots:?}"),
            );
            let mut worst = 0.0f64;
            for fam in zero_planes(&p).map_err(|e| CliError::Usage(e.to_string()))? {
                for k in 0..32 {
                    let theta = k as f64 * std::f64::consts::TAU / 32.0;
                    let pl = fam.plane(theta);
                    let sec = hopfcurv::curvature::sectional_reduced(&p, &pl)
                        .map_err(|e| CliError::Usage(e.to_string()))?
                        + fudge;
                    worst = worst.max(sec.abs());
                }
            }
            c.check(
                "zero-curvature planes",
                worst <= 1e-8,
                format!("64 planes, worst |sec| = {worst:.3e}"),
            );
            // slice curve stays on the boundary
            let mut ok = true;
            for k in 1..=20 {
                let t1 = 0.48 * k as f64 / 21.0 + 0.01;
                let t3 = slice_curve(t1).map_err(|e| CliError::Usage(e.to_string()))?;
                let v = classify(&MetricParams::new(t1, t1, t3).unwrap()).unwrap();
                if !matches!(v, Verdict::Boundary { .. }) {
                    ok = false;
                }
            }
            c.check("slice curve on boundary", ok, "20 sampled points".to_string());
            // separating curve: gap vanishes along 4 t1 t2 = 4 t1 + 4 t2 - 3
            let mut worst = 0.0f64;
            for k in 0..10 {
                let t1 = 0.1 + 0.06 * k as f64;
                let t2 = (3.0 - 4.0 * t1) / (4.0 - 4.0 * t1);
                debug_assert!(separating_curve_residual(t1, t2).abs() < 1e-12);
                worst = worst
                    .max(surface_gap(t1, t2).map_err(|e| CliError::Usage(e.to_string()))?);
            }
            c.check(
                "separating curve",
                worst < 1e-3,
                format!("10 points, worst gap {worst:.3e}"),
            );
            // a mixed-curvature metric yields an explicit negative plane
            let bad = MetricParams::new(0.25, 0.25, 0.33).unwrap();
            let cert = certify_positive(&bad, settings.samples.min(20_000), settings.seed);
            c.check(
                "mixed metric counterexample",
                !cert.positive && cert.min_found < 0.0,
                format!("min sec found {:.6}", cert.min_found),
            );
        }
    }
    if c.ok {
        Ok(())
    } else {
        Err(CliError::Verification("one or more checks failed".into()))
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}
