//! Subcommand drivers: resolve flags + config file into concrete grids, run
//! the computation, emit one table.
//!
//! Exit status: 0 when every row succeeded, 2 when some rows carry failure
//! markers (`nan` fields), 1 for configuration errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::cli::configfile::parse_config_file;
use crate::cli::grid::{parse_float_list, parse_int_list, GridSpec};
use crate::cli::output::{Cell, OutputFormat, Table};
use crate::cli::presets::{optimize_preset, qfi_preset, Figure};
use crate::error::{Error, Result};
use crate::estimation::crb_experiment;
use crate::optimize::{maximize_qfi, ProbeConfig};
use crate::qfi::{qfi_numeric_probe, qfi_single};
use crate::quadrature::{gamma_numeric, QuadConfig};
use crate::spectral::{gamma_of_t, SpectralParams};
use crate::states::{BellLabel, ProbePreparation, Scenario, Sign};

#[derive(Debug, Parser)]
#[command(
    name = "ohmic-probe",
    about = "Dephasing qubit probes of Ohmic environments: decoherence factors, quantum Fisher information, optimal interrogation times, Cramér-Rao Monte Carlo",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decoherence factor: closed form against the quadrature oracle
    Gamma(GammaArgs),
    /// Quantum Fisher information: closed forms against the eigendecomposition oracle
    Qfi(SweepArgs),
    /// Time-optimized QFI with the cutoff-free coefficients g and r
    Optimize(SweepArgs),
    /// Seeded Monte Carlo check of the Cramér-Rao bound
    Crb(CrbArgs),
}

#[derive(Debug, Args, Default)]
pub struct SweepArgs {
    /// Ohmicity values, comma-separated
    #[arg(long)]
    pub s: Option<String>,
    /// Cutoff frequency values, comma-separated
    #[arg(long = "omega-c")]
    pub omega_c: Option<String>,
    /// Time values, comma-separated
    #[arg(long)]
    pub t: Option<String>,
    /// Werner mixing parameters, comma-separated
    #[arg(long)]
    pub p: Option<String>,
    /// GHZ probe sizes, comma-separated
    #[arg(long)]
    pub n: Option<String>,
    /// Probe configurations, comma-separated labels (single,
    /// product-independent, bell-independent, product-common, bell-common,
    /// werner-independent, werner-common, ghz-independent, ghz-common)
    #[arg(long)]
    pub probe: Option<String>,
    /// Sweep-axis grid start:stop:count[:log] (t axis for gamma/qfi, s axis
    /// for optimize)
    #[arg(long)]
    pub grid: Option<String>,
    /// Key-value config file mirroring these flags (flags win)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output format: csv or json
    #[arg(long)]
    pub format: Option<String>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// RNG seed (accepted everywhere for config-file uniformity)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Figure preset: fig1..fig5
    #[arg(long)]
    pub figure: Option<String>,
}

#[derive(Debug, Args, Default)]
pub struct GammaArgs {
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// Relative tolerance override for the quadrature column
    #[arg(long = "rel-tol")]
    pub rel_tol: Option<f64>,
    /// Absolute tolerance override for the quadrature column
    #[arg(long = "abs-tol")]
    pub abs_tol: Option<f64>,
}

#[derive(Debug, Args, Default)]
pub struct CrbArgs {
    /// Ohmicity values, comma-separated
    #[arg(long)]
    pub s: Option<String>,
    /// Cutoff frequency values, comma-separated
    #[arg(long = "omega-c")]
    pub omega_c: Option<String>,
    /// Interrogation times, comma-separated
    #[arg(long)]
    pub t: Option<String>,
    /// Measurements per trial
    #[arg(long = "m-total")]
    pub m_total: Option<u64>,
    /// Monte Carlo trials
    #[arg(long = "n-trials")]
    pub n_trials: Option<usize>,
    /// RNG seed
    #[arg(long)]
    pub seed: Option<u64>,
    /// Interrogate at the optimal time of each (s, ω_c) instead of --t
    #[arg(long = "at-optimum")]
    pub at_optimum: bool,
    /// Sweep-axis grid start:stop:count[:log] for the t axis
    #[arg(long)]
    pub grid: Option<String>,
    /// Key-value config file mirroring these flags (flags win)
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output format: csv or json
    #[arg(long)]
    pub format: Option<String>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Process exit code carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExitStatus(pub i32);

pub fn run(cli: Cli) -> ExitStatus {
    let outcome = match cli.command {
        Command::Gamma(args) => cmd_gamma(args),
        Command::Qfi(args) => cmd_qfi(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::Crb(args) => cmd_crb(args),
    };
    match outcome {
        Ok(status) => status,
        Err(e) => {
            eprintln!("error: {e}");
            ExitStatus(1)
        }
    }
}

/// Flag values merged with config-file entries (explicit flags win).
struct Merged {
    values: Vec<(String, String)>,
}

impl Merged {
    fn new(config: Option<&PathBuf>) -> Result<Self> {
        let values = match config {
            Some(path) => parse_config_file(path)?,
            None => Vec::new(),
        };
        Ok(Merged { values })
    }

    fn get(&self, key: &str) -> Option<&str> {
        // Last occurrence wins within the file.
        self.values
            .iter()
            .rev()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    fn floats(&self, flag: Option<&String>, key: &str, default: &[f64]) -> Result<Vec<f64>> {
        match flag.map(String::as_str).or_else(|| self.get(key)) {
            Some(text) => parse_float_list(text),
            None => Ok(default.to_vec()),
        }
    }

    fn ints(&self, flag: Option<&String>, key: &str, default: &[u32]) -> Result<Vec<u32>> {
        match flag.map(String::as_str).or_else(|| self.get(key)) {
            Some(text) => parse_int_list(text),
            None => Ok(default.to_vec()),
        }
    }

    fn grid(&self, flag: Option<&String>) -> Result<Option<GridSpec>> {
        match flag.map(String::as_str).or_else(|| self.get("grid")) {
            Some(text) => Ok(Some(GridSpec::parse(text)?)),
            None => Ok(None),
        }
    }

    fn format(&self, flag: Option<&String>) -> Result<OutputFormat> {
        match flag.map(String::as_str).or_else(|| self.get("format")) {
            Some(text) => OutputFormat::parse(text)
                .ok_or_else(|| Error::Config(format!("format must be csv or json, got '{text}'"))),
            None => Ok(OutputFormat::Csv),
        }
    }

    fn out(&self, flag: Option<&PathBuf>) -> Option<PathBuf> {
        flag.cloned().or_else(|| self.get("out").map(PathBuf::from))
    }

    fn figure(&self, flag: Option<&String>) -> Result<Option<Figure>> {
        match flag.map(String::as_str).or_else(|| self.get("figure")) {
            Some(text) => Ok(Some(Figure::parse(text)?)),
            None => Ok(None),
        }
    }

    fn u64_value(&self, flag: Option<u64>, key: &str, default: u64) -> Result<u64> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.get(key) {
            Some(text) => text
                .parse()
                .map_err(|_| Error::Config(format!("bad integer for '{key}': '{text}'"))),
            None => Ok(default),
        }
    }

    fn f64_value(&self, flag: Option<f64>, key: &str) -> Result<Option<f64>> {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.get(key) {
            Some(text) => text
                .parse()
                .map(Some)
                .map_err(|_| Error::Config(format!("bad number for '{key}': '{text}'"))),
            None => Ok(None),
        }
    }

    fn probes(&self, flag: Option<&String>, default: &[&str]) -> Result<Vec<String>> {
        let text = flag.map(String::as_str).or_else(|| self.get("probe"));
        let labels: Vec<String> = match text {
            Some(t) => t.split(',').map(|s| s.trim().to_string()).collect(),
            None => default.iter().map(|s| s.to_string()).collect(),
        };
        if labels.iter().any(String::is_empty) {
            return Err(Error::Config("empty probe label".into()));
        }
        Ok(labels)
    }
}

fn validate_positive(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Config(format!("{name} grid is empty")));
    }
    if values.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::Config(format!("{name} values must be positive and finite")));
    }
    Ok(())
}

fn validate_nonnegative(name: &str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::Config(format!("{name} grid is empty")));
    }
    if values.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::Config(format!("{name} values must be nonnegative and finite")));
    }
    Ok(())
}

/// Expands probe labels into concrete configurations, using the p and n
/// lists for the Werner and GHZ families.
fn expand_probes(labels: &[String], p: &[f64], n: &[u32]) -> Result<Vec<ProbeConfig>> {
    let mut out = Vec::new();
    for label in labels {
        match label.as_str() {
            "single" => out.push(ProbeConfig::Single),
            "product-independent" | "prod-ind" => out.push(ProbeConfig::ProductIndependent),
            "bell-independent" | "bell-ind" => out.push(ProbeConfig::BellIndependent),
            "product-common" | "prod-com" => out.push(ProbeConfig::ProductCommon),
            "bell-common" | "bell-com" => out.push(ProbeConfig::BellCommon),
            "werner-independent" | "werner-ind" | "werner-common" | "werner-com" => {
                let scenario = if label.starts_with("werner-i") {
                    Scenario::Independent
                } else {
                    Scenario::Common
                };
                if p.is_empty() {
                    return Err(Error::Config(format!("probe '{label}' needs --p values")));
                }
                for &pv in p {
                    if !(0.0..=1.0).contains(&pv) {
                        return Err(Error::Config(format!("Werner p out of [0,1]: {pv}")));
                    }
                    out.push(ProbeConfig::Werner { p: pv, scenario });
                }
            }
            "ghz-independent" | "ghz-ind" | "ghz-common" | "ghz-com" => {
                let scenario = if label.starts_with("ghz-i") {
                    Scenario::Independent
                } else {
                    Scenario::Common
                };
                if n.is_empty() {
                    return Err(Error::Config(format!("probe '{label}' needs --n values")));
                }
                for &nv in n {
                    if nv < 1 {
                        return Err(Error::Config("GHZ size must be at least 1".into()));
                    }
                    out.push(ProbeConfig::Ghz { n: nv, scenario });
                }
            }
            other => {
                return Err(Error::Config(format!("unknown probe label '{other}'")));
            }
        }
    }
    Ok(out)
}

/// Preparation/scenario pair behind a configuration, for the numeric oracle.
fn probe_parts(config: &ProbeConfig) -> (ProbePreparation, Scenario) {
    match *config {
        ProbeConfig::Single => (
            ProbePreparation::SingleQubit {
                theta: std::f64::consts::FRAC_PI_2,
            },
            Scenario::Independent,
        ),
        ProbeConfig::ProductIndependent => (
            ProbePreparation::TwoQubitProduct {
                signs: (Sign::Plus, Sign::Plus),
            },
            Scenario::Independent,
        ),
        ProbeConfig::BellIndependent => (
            ProbePreparation::TwoQubitBell {
                which: BellLabel::PhiPlus,
            },
            Scenario::Independent,
        ),
        ProbeConfig::ProductCommon => (
            ProbePreparation::TwoQubitProduct {
                signs: (Sign::Plus, Sign::Plus),
            },
            Scenario::Common,
        ),
        // The φ pair is the parameter-sensitive one in the common bath; the
        // ψ coherences sit in the decoherence-free block.
        ProbeConfig::BellCommon => (
            ProbePreparation::TwoQubitBell {
                which: BellLabel::PhiPlus,
            },
            Scenario::Common,
        ),
        ProbeConfig::Werner { p, scenario } => (
            ProbePreparation::Werner {
                p,
                which: BellLabel::PhiPlus,
            },
            scenario,
        ),
        ProbeConfig::Ghz { n, scenario } => (ProbePreparation::Ghz { n }, scenario),
    }
}

fn emit(table: &Table, format: OutputFormat, out: Option<&PathBuf>) -> Result<()> {
    let write_to = |w: &mut dyn Write| {
        table
            .write(format, w)
            .map_err(|e| Error::Config(format!("write failed: {e}")))
    };
    match out {
        Some(path) => {
            let mut file = std::fs::File::create(path)
                .map_err(|e| Error::Config(format!("cannot create {}: {e}", path.display())))?;
            write_to(&mut file)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_to(&mut lock)
        }
    }
}

fn status_for(failures: usize) -> ExitStatus {
    if failures == 0 {
        ExitStatus(0)
    } else {
        ExitStatus(2)
    }
}

fn cmd_gamma(args: GammaArgs) -> Result<ExitStatus> {
    let GammaArgs {
        sweep: args,
        rel_tol,
        abs_tol,
    } = args;
    let merged = Merged::new(args.config.as_ref())?;
    if merged.figure(args.figure.as_ref())?.is_some() {
        return Err(Error::Config("gamma has no figure presets".into()));
    }
    let s = merged.floats(args.s.as_ref(), "s", &[0.5, 1.0, 3.0])?;
    let omega_c = merged.floats(args.omega_c.as_ref(), "omega-c", &[1.0])?;
    let t = match merged.grid(args.grid.as_ref())? {
        Some(g) => g.values(),
        None => merged.floats(args.t.as_ref(), "t", &[0.0, 0.5, 1.0, 2.0, 5.0])?,
    };
    validate_positive("s", &s)?;
    validate_positive("omega-c", &omega_c)?;
    validate_nonnegative("t", &t)?;
    let mut quad_cfg = QuadConfig::default();
    if let Some(v) = merged.f64_value(rel_tol, "rel-tol")? {
        quad_cfg.rel_tol = v;
    }
    if let Some(v) = merged.f64_value(abs_tol, "abs-tol")? {
        quad_cfg.abs_tol = v;
    }
    if !(quad_cfg.rel_tol > 0.0 && quad_cfg.abs_tol > 0.0) {
        return Err(Error::Config("tolerances must be positive".into()));
    }
    let format = merged.format(args.format.as_ref())?;
    let out = merged.out(args.out.as_ref());

    let mut tasks: Vec<(f64, f64, f64)> = Vec::new();
    for &sv in &s {
        for &wv in &omega_c {
            for &tv in &t {
                tasks.push((sv, wv, tv));
            }
        }
    }
    let rows: Vec<(Vec<Cell>, bool)> = tasks
        .par_iter()
        .map(|&(sv, wv, tv)| {
            let params = SpectralParams::new(sv, wv).expect("validated");
            let closed = gamma_of_t(tv, &params);
            let (numeric, failed) = match gamma_numeric(tv, &params, &quad_cfg) {
                Ok(v) => (v, false),
                Err(_) => (f64::NAN, true),
            };
            let row = vec![
                Cell::Num(sv),
                Cell::Num(wv),
                Cell::Num(tv),
                Cell::Num(closed),
                Cell::Num(numeric),
                Cell::Num((closed - numeric).abs()),
            ];
            (row, failed)
        })
        .collect();

    let mut table = Table::new(vec![
        "s",
        "omega_c",
        "t",
        "gamma_closed",
        "gamma_quadrature",
        "abs_diff",
    ]);
    let failures = rows.iter().filter(|(_, failed)| *failed).count();
    for (row, _) in rows {
        table.push(row);
    }
    emit(&table, format, out.as_ref())?;
    Ok(status_for(failures))
}

fn cmd_qfi(args: SweepArgs) -> Result<ExitStatus> {
    let merged = Merged::new(args.config.as_ref())?;
    let figure = merged.figure(args.figure.as_ref())?;

    let preset = figure.map(qfi_preset).transpose()?;
    let (labels, s, omega_c, t, p, n);
    if let Some(preset) = preset {
        labels = preset.probes.iter().map(|s| s.to_string()).collect();
        s = preset.s;
        omega_c = preset.omega_c;
        t = preset.t.expect("qfi presets carry a t grid");
        p = preset.p;
        n = preset.n;
    } else {
        labels = merged.probes(
            args.probe.as_ref(),
            &[
                "single",
                "product-independent",
                "bell-independent",
                "product-common",
                "bell-common",
            ],
        )?;
        s = merged.floats(args.s.as_ref(), "s", &[0.5, 1.0, 2.0, 3.0])?;
        omega_c = merged.floats(args.omega_c.as_ref(), "omega-c", &[1.0])?;
        t = match merged.grid(args.grid.as_ref())? {
            Some(g) => g.values(),
            None => merged.floats(args.t.as_ref(), "t", &[0.3, 1.0, 3.0])?,
        };
        p = merged.floats(args.p.as_ref(), "p", &[0.5])?;
        n = merged.ints(args.n.as_ref(), "n", &[2])?;
    }
    validate_positive("s", &s)?;
    validate_positive("omega-c", &omega_c)?;
    validate_nonnegative("t", &t)?;
    let configs = expand_probes(&labels, &p, &n)?;
    let format = merged.format(args.format.as_ref())?;
    let out = merged.out(args.out.as_ref());

    let mut tasks: Vec<(ProbeConfig, f64, f64, f64)> = Vec::new();
    for &c in &configs {
        for &sv in &s {
            for &wv in &omega_c {
                for &tv in &t {
                    tasks.push((c, sv, wv, tv));
                }
            }
        }
    }
    let rows: Vec<(Vec<Cell>, bool)> = tasks
        .par_iter()
        .map(|&(config, sv, wv, tv)| {
            let params = SpectralParams::new(sv, wv).expect("validated");
            let closed = config.qfi(tv, &params).unwrap_or(f64::NAN);
            let (prep, scenario) = probe_parts(&config);
            let (numeric, failed) = match qfi_numeric_probe(prep, scenario, tv, &params) {
                Ok(est) => (est.h, false),
                Err(_) => (f64::NAN, true),
            };
            let row = vec![
                Cell::Str(config.label()),
                Cell::Num(sv),
                Cell::Num(wv),
                Cell::Num(tv),
                Cell::Num(closed),
                Cell::Num(numeric),
                Cell::Num((closed - numeric).abs()),
            ];
            (row, failed || !closed.is_finite())
        })
        .collect();

    let mut table = Table::new(vec![
        "config", "s", "omega_c", "t", "h_closed", "h_numeric", "diff",
    ]);
    let failures = rows.iter().filter(|(_, failed)| *failed).count();
    for (row, _) in rows {
        table.push(row);
    }
    emit(&table, format, out.as_ref())?;
    Ok(status_for(failures))
}

fn cmd_optimize(args: SweepArgs) -> Result<ExitStatus> {
    let merged = Merged::new(args.config.as_ref())?;
    let figure = merged.figure(args.figure.as_ref())?;

    let (labels, s, omega_c, p, n);
    if let Some(figure) = figure {
        let preset = optimize_preset(figure);
        labels = preset.probes.iter().map(|s| s.to_string()).collect();
        s = preset.s;
        omega_c = preset.omega_c;
        p = preset.p;
        n = preset.n;
    } else {
        labels = merged.probes(
            args.probe.as_ref(),
            &[
                "single",
                "product-independent",
                "bell-independent",
                "product-common",
                "bell-common",
            ],
        )?;
        s = match merged.grid(args.grid.as_ref())? {
            Some(g) => g.values(),
            None => merged.floats(args.s.as_ref(), "s", &[0.5, 1.0, 2.0, 3.0])?,
        };
        omega_c = merged.floats(args.omega_c.as_ref(), "omega-c", &[1.0])?;
        p = merged.floats(args.p.as_ref(), "p", &[0.5])?;
        n = merged.ints(args.n.as_ref(), "n", &[2])?;
    }
    validate_positive("s", &s)?;
    validate_positive("omega-c", &omega_c)?;
    let configs = expand_probes(&labels, &p, &n)?;
    let format = merged.format(args.format.as_ref())?;
    let out = merged.out(args.out.as_ref());

    let mut tasks: Vec<(ProbeConfig, f64, f64)> = Vec::new();
    for &c in &configs {
        for &sv in &s {
            for &wv in &omega_c {
                tasks.push((c, sv, wv));
            }
        }
    }
    let rows: Vec<(Vec<Cell>, bool)> = tasks
        .par_iter()
        .map(|&(config, sv, wv)| {
            let result = SpectralParams::new(sv, wv).and_then(|prm| maximize_qfi(&config, &prm));
            let (t_opt, h_max, g, r, failed) = match result {
                Ok(opt) => (opt.t_opt, opt.h_max, opt.g, opt.r, false),
                Err(_) => (f64::NAN, f64::NAN, f64::NAN, f64::NAN, true),
            };
            let row = vec![
                Cell::Str(config.label()),
                Cell::Num(sv),
                Cell::Num(wv),
                Cell::Num(t_opt),
                Cell::Num(h_max),
                Cell::Num(g),
                Cell::Num(r),
            ];
            (row, failed)
        })
        .collect();

    let mut table = Table::new(vec![
        "config", "s", "omega_c", "t_opt", "h_max", "g", "r",
    ]);
    let failures = rows.iter().filter(|(_, failed)| *failed).count();
    for (row, _) in rows {
        table.push(row);
    }
    emit(&table, format, out.as_ref())?;
    Ok(status_for(failures))
}

fn cmd_crb(args: CrbArgs) -> Result<ExitStatus> {
    let merged = Merged::new(args.config.as_ref())?;
    let s = merged.floats(args.s.as_ref(), "s", &[1.0])?;
    let omega_c = merged.floats(args.omega_c.as_ref(), "omega-c", &[1.0])?;
    let at_optimum = args.at_optimum || merged.get("at-optimum") == Some("true");
    let t = if at_optimum {
        Vec::new()
    } else {
        match merged.grid(args.grid.as_ref())? {
            Some(g) => g.values(),
            None => merged.floats(args.t.as_ref(), "t", &[1.0])?,
        }
    };
    validate_positive("s", &s)?;
    validate_positive("omega-c", &omega_c)?;
    if !at_optimum {
        validate_positive("t", &t)?;
    }
    let m_total = merged.u64_value(args.m_total, "m-total", 10_000)?;
    let n_trials = merged.u64_value(args.n_trials.map(|v| v as u64), "n-trials", 1000)? as usize;
    let seed = merged.u64_value(args.seed, "seed", 0)?;
    let format = merged.format(args.format.as_ref())?;
    let out = merged.out(args.out.as_ref());

    let mut tasks: Vec<(f64, f64, f64)> = Vec::new();
    for &sv in &s {
        for &wv in &omega_c {
            if at_optimum {
                let params = SpectralParams::new(sv, wv)?;
                let opt = maximize_qfi(&ProbeConfig::Single, &params)?;
                tasks.push((sv, wv, opt.t_opt));
            } else {
                for &tv in &t {
                    tasks.push((sv, wv, tv));
                }
            }
        }
    }

    let mut table = Table::new(vec![
        "s",
        "omega_c",
        "t",
        "m_total",
        "n_trials",
        "n_valid",
        "degenerate_fraction",
        "mean_estimate",
        "variance",
        "crb_bound",
        "ratio",
    ]);
    let mut failures = 0usize;
    for (sv, wv, tv) in tasks {
        let params = SpectralParams::new(sv, wv)?;
        match crb_experiment(&params, tv, m_total, n_trials, seed) {
            Ok(summary) => {
                table.push(vec![
                    Cell::Num(sv),
                    Cell::Num(wv),
                    Cell::Num(tv),
                    Cell::Int(m_total),
                    Cell::Int(summary.n_trials as u64),
                    Cell::Int(summary.n_valid as u64),
                    Cell::Num(summary.degenerate_fraction),
                    Cell::Num(summary.mean_estimate),
                    Cell::Num(summary.variance),
                    Cell::Num(summary.bound),
                    Cell::Num(summary.ratio),
                ]);
            }
            Err(e) => {
                eprintln!("crb row (s={sv}, omega_c={wv}, t={tv}) failed: {e}");
                failures += 1;
                let h = qfi_single(tv, &params, std::f64::consts::FRAC_PI_2);
                table.push(vec![
                    Cell::Num(sv),
                    Cell::Num(wv),
                    Cell::Num(tv),
                    Cell::Int(m_total),
                    Cell::Int(n_trials as u64),
                    Cell::Int(0),
                    Cell::Num(f64::NAN),
                    Cell::Num(f64::NAN),
                    Cell::Num(f64::NAN),
                    Cell::Num(1.0 / (m_total as f64 * h)),
                    Cell::Num(f64::NAN),
                ]);
            }
        }
    }
    emit(&table, format, out.as_ref())?;
    Ok(status_for(failures))
}
