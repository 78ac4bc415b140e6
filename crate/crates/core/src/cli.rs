//! Library side of the `pt-solvable` command-line tool.
//!
//! Every subcommand produces a [`CsvTable`]; `main` only parses arguments,
//! writes the table and maps the outcome to an exit code
//! (0 pass, 1 verification failure, 2 invalid input).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;

use crate::contour::{
    liouville_potential, AnyContour, ArchContour, ArchMap, Contour, IdentityMap, LiouvilleMap, RealLine, ShiftedLine,
};
use crate::error::Error;
use crate::numeric::{verify_family, FamilyParams, Grid, TargetedOptions, VerifyConfig};
use crate::par::Execution;
use crate::potentials::{eval_hulthen, EckartParams, HulthenParams, PoschlTellerParams, Potential};
use crate::spectra::{Family, JacobiConvention, LevelAux, Parity, QuantumNumbers, Spectrum};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("invalid parameter: {0}")]
    Library(#[from] Error),
    #[error("output: {0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        EXIT_INVALID
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

// ---------------------------------------------------------------------------
// Tables
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new<S: AsRef<str>>(header: &[S]) -> Self {
        CsvTable {
            header: header.iter().map(|s| s.as_ref().to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j].as_str()).collect())
    }

    pub fn write_to<W: Write>(&self, out: W) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| CliError::Io(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_to(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is utf-8")
    }
}

/// Twelve significant digits, scientific notation, no negative zero.
pub fn fmt_num(x: f64) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.11e}")
}

// ---------------------------------------------------------------------------
// Argument parsing
// ---------------------------------------------------------------------------

/// Parse a real number, also accepting multiples and fractions of π such as
/// `pi/6`, `-2pi/3` or `0.5*pi`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let t: String = s
        .trim()
        .to_ascii_lowercase()
        .chars()
        .filter(|c| !c.is_whitespace())
        .collect();
    if t.is_empty() {
        return Err("empty number".into());
    }
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a, Some(b)),
        None => (t.as_str(), None),
    };
    let term = |u: &str| -> Result<f64, String> {
        if let Some(coef) = u.strip_suffix("pi").or_else(|| u.strip_suffix('π')) {
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let k = match coef {
                "" | "+" => 1.0,
                "-" => -1.0,
                c => c
                    .parse::<f64>()
                    .map_err(|_| format!("cannot parse '{s}' as a number"))?,
            };
            Ok(k * std::f64::consts::PI)
        } else {
            u.parse::<f64>().map_err(|_| format!("cannot parse '{s}' as a number"))
        }
    };
    let value = match den {
        Some(d) => term(num)? / term(d)?,
        None => term(num)?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("'{s}' is not finite"))
    }
}

fn parse_family(s: &str) -> Result<Family, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "eckart" => Ok(Family::Eckart),
        "rpt" | "pt" | "poschl-teller" | "poeschl-teller" => Ok(Family::PoschlTeller),
        "hulthen" => Ok(Family::Hulthen),
        other => Err(invalid(format!(
            "unknown family '{other}' (expected eckart, rpt or hulthen)"
        ))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ContourKind {
    Real,
    Line,
    Arch,
}

fn parse_contour(s: &str) -> Result<ContourKind, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "real" => Ok(ContourKind::Real),
        "line" | "shifted" => Ok(ContourKind::Line),
        "arch" => Ok(ContourKind::Arch),
        other => Err(invalid(format!(
            "unknown contour '{other}' (expected real, line or arch)"
        ))),
    }
}

/// A level selector: `N` for Eckart, `σ,τ,N` for Pöschl-Teller and `σ,n`
/// for Hulthén, with signs written `+`, `-`, `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelSpec {
    pub sigma: Option<Parity>,
    pub tau: Option<Parity>,
    pub n: usize,
}

fn parse_sign(s: &str) -> Result<Parity, CliError> {
    match s.trim() {
        "+" | "+1" | "1" => Ok(Parity::Plus),
        "-" | "-1" => Ok(Parity::Minus),
        other => Err(invalid(format!("invalid level: bad sign '{other}'"))),
    }
}

fn parse_index(s: &str) -> Result<usize, CliError> {
    s.trim()
        .parse()
        .map_err(|_| invalid(format!("invalid level: bad quantum number '{}'", s.trim())))
}

fn parse_level(family: Family, s: &str) -> Result<LevelSpec, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    match (family, parts.as_slice()) {
        (Family::Eckart, [n]) => Ok(LevelSpec {
            sigma: None,
            tau: None,
            n: parse_index(n)?,
        }),
        (Family::PoschlTeller, [sg, tu, n]) => Ok(LevelSpec {
            sigma: Some(parse_sign(sg)?),
            tau: Some(parse_sign(tu)?),
            n: parse_index(n)?,
        }),
        (Family::Hulthen, [sg, n]) => Ok(LevelSpec {
            sigma: Some(parse_sign(sg)?),
            tau: None,
            n: parse_index(n)?,
        }),
        _ => Err(invalid(format!(
            "invalid level '{s}' for {} (expected {})",
            family.name(),
            match family {
                Family::Eckart => "N",
                Family::PoschlTeller => "sigma,tau,N",
                Family::Hulthen => "sigma,n",
            }
        ))),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "pt-solvable",
    version,
    about = "Closed-form spectra of PT-symmetric Eckart, Pöschl-Teller and Hulthén potentials, with finite-difference verification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandArgs,
}

#[derive(Debug, Subcommand)]
pub enum CommandArgs {
    /// Tabulate the analytic bound-state spectrum.
    Spectrum(CommonArgs),
    /// Check every analytic level against the finite-difference eigensolver.
    Verify(CommonArgs),
    /// Sample the contour, the potential and selected eigenfunctions.
    Sample(CommonArgs),
    /// Compare the Liouville-transformed Pöschl-Teller potential with the
    /// closed Hulthén form along the arch.
    Transform(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// eckart, rpt or hulthen.
    #[arg(long, default_value = "eckart")]
    pub family: String,
    /// Eckart coupling A [default: 3].
    #[arg(long = "A", value_parser = parse_real, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// β [default: 1 for eckart, 1.5 for rpt].
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    /// α [default: 3.5 for rpt, 2 for hulthen].
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Hulthén coupling C = A + B [default: 2].
    #[arg(long = "C", value_parser = parse_real, allow_hyphen_values = true)]
    pub c: Option<f64>,
    /// Contour shift ε in radians, e.g. 0.5 or pi/6 [default: 0.5, 0.3, pi/6].
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub epsilon: Option<f64>,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub xmin: Option<f64>,
    #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
    pub xmax: Option<f64>,
    /// Number of grid points including both ends.
    #[arg(long)]
    pub n: Option<usize>,
    /// Largest accepted |λ - E| [default: 1e-5 eckart, 1e-6 otherwise].
    #[arg(long, value_parser = parse_real)]
    pub tol_energy: Option<f64>,
    /// Inverse-iteration residual target [default: 1e-10].
    #[arg(long, value_parser = parse_real)]
    pub tol_residual: Option<f64>,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Level selector, repeatable: N (eckart), sigma,tau,N (rpt), sigma,n (hulthen).
    #[arg(long, allow_hyphen_values = true)]
    pub level: Vec<String>,
    /// real, line or arch [default: line, or arch for hulthen].
    #[arg(long)]
    pub contour: Option<String>,
    /// transform: use the identity map with the Pöschl-Teller potential on
    /// both sides (self-test).
    #[arg(long)]
    pub identity_map: bool,
    /// Disable the data-parallel code paths.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Verify,
    Sample,
    Transform,
}

/// Validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: FamilyParams,
    pub epsilon: f64,
    pub contour: AnyContour,
    pub grid: Grid,
    pub tol_energy: f64,
    pub tol_residual: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub levels: Vec<LevelSpec>,
    pub identity_map: bool,
    pub exec: Execution,
}

impl RunConfig {
    pub fn family(&self) -> Family {
        self.params.family()
    }

    pub fn from_args(command: Command, a: &CommonArgs) -> Result<RunConfig, CliError> {
        let family = parse_family(&a.family)?;
        let epsilon = a.epsilon.unwrap_or(match family {
            Family::Eckart => 0.5,
            Family::PoschlTeller => 0.3,
            Family::Hulthen => std::f64::consts::PI / 6.0,
        });
        let params = match family {
            Family::Eckart => {
                FamilyParams::Eckart(EckartParams::new(a.a.unwrap_or(3.0), a.beta.unwrap_or(1.0), epsilon)?)
            }
            Family::PoschlTeller => FamilyParams::PoschlTeller(PoschlTellerParams::new(
                a.alpha.unwrap_or(3.5),
                a.beta.unwrap_or(1.5),
                epsilon,
            )?),
            Family::Hulthen => FamilyParams::Hulthen(HulthenParams::new(a.alpha.unwrap_or(2.0), a.c.unwrap_or(2.0))?),
        };

        let kind = match &a.contour {
            Some(s) => parse_contour(s)?,
            None if family == Family::Hulthen && command != Command::Transform => ContourKind::Arch,
            None => ContourKind::Line,
        };
        let contour = match kind {
            ContourKind::Real => AnyContour::Real(RealLine),
            ContourKind::Line if family == Family::Eckart => AnyContour::Line(ShiftedLine::wide(epsilon)?),
            ContourKind::Line => AnyContour::Line(ShiftedLine::new(epsilon)?),
            ContourKind::Arch => AnyContour::Arch(ArchContour::new(epsilon)?),
        };

        let (xmin, xmax, n) = match (command, family) {
            (Command::Sample, _) => (-5.0, 5.0, 101),
            (Command::Transform, _) => (-3.0, 3.0, 101),
            (_, Family::Eckart) => (-18.0, 18.0, 4001),
            (_, Family::PoschlTeller) => (-12.0, 12.0, 3001),
            (_, Family::Hulthen) => (-12.0, 12.0, 12001),
        };
        let grid = Grid::new(a.xmin.unwrap_or(xmin), a.xmax.unwrap_or(xmax), a.n.unwrap_or(n))?;

        let tol_energy = a
            .tol_energy
            .unwrap_or(if family == Family::Eckart { 1e-5 } else { 1e-6 });
        let tol_residual = a.tol_residual.unwrap_or(1e-10);
        for (name, t) in [("tol-energy", tol_energy), ("tol-residual", tol_residual)] {
            if t.is_nan() || t <= 0.0 {
                return Err(invalid(format!("--{name} must be positive, got {t}")));
            }
        }
        let levels = a
            .level
            .iter()
            .map(|s| parse_level(family, s))
            .collect::<Result<Vec<_>, _>>()?;
        if command == Command::Transform {
            if family != Family::Hulthen {
                return Err(invalid("transform needs --family hulthen"));
            }
            if levels.len() != 1 {
                return Err(invalid("transform needs exactly one --level sigma,n"));
            }
        }

        Ok(RunConfig {
            command,
            params,
            epsilon,
            contour,
            grid,
            tol_energy,
            tol_residual,
            seed: a.seed,
            out: a.out.clone(),
            levels,
            identity_map: a.identity_map,
            exec: if a.sequential {
                Execution::Sequential
            } else {
                Execution::default()
            },
        })
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub table: CsvTable,
    pub exit_code: i32,
    /// One-line summary for stderr.
    pub summary: Option<String>,
}

fn sign_cell(family: Family, p: Parity) -> String {
    match family {
        Family::Eckart => "0".into(),
        _ => format!("{}", p.sign() as i32),
    }
}

pub fn cmd_spectrum(cfg: &RunConfig) -> Result<CsvTable, CliError> {
    let family = cfg.family();
    let spectrum: Spectrum = cfg.params.spectrum()?;
    let aux_cols: &[&str] = match family {
        Family::Eckart => &["u_re", "u_im", "v_re", "v_im"],
        Family::PoschlTeller => &["two_mu", "two_nu"],
        Family::Hulthen => &["s", "tau_beta"],
    };
    let mut header = vec!["family", "sigma", "tau", "N", "E", "kappa"];
    header.extend_from_slice(aux_cols);
    let mut table = CsvTable::new(&header);
    for level in &spectrum.levels {
        let mut row = vec![
            family.name().to_string(),
            sign_cell(family, level.qn.sigma),
            sign_cell(family, level.qn.tau),
            level.qn.n.to_string(),
            fmt_num(level.energy),
            fmt_num(level.kappa()),
        ];
        match level.aux {
            LevelAux::Eckart { u, v } => row.extend([u.re, u.im, v.re, v.im].map(fmt_num)),
            LevelAux::PoschlTeller { two_mu, two_nu, .. } => row.extend([two_mu, two_nu].map(fmt_num)),
            LevelAux::Hulthen { s, tau_beta, .. } => row.extend([s, tau_beta].map(fmt_num)),
        }
        table.push(row);
    }
    Ok(table)
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let vcfg = VerifyConfig {
        tol_energy: cfg.tol_energy,
        solver: TargetedOptions {
            tol: cfg.tol_residual,
            seed: cfg.seed,
            exec: cfg.exec,
            ..Default::default()
        },
        ..Default::default()
    };
    let report = verify_family(&cfg.params, &cfg.contour, &cfg.grid, &vcfg);
    let family = cfg.family();
    let mut table = CsvTable::new(&[
        "N",
        "sigma",
        "tau",
        "E_analytic",
        "lambda_re",
        "lambda_im",
        "abs_err",
        "residual",
        "converged",
    ]);
    for l in &report.levels {
        let (re, im) = l.lambda.map_or((f64::NAN, f64::NAN), |z| (z.re, z.im));
        table.push(vec![
            l.qn.n.to_string(),
            sign_cell(family, l.qn.sigma),
            sign_cell(family, l.qn.tau),
            fmt_num(l.energy),
            fmt_num(re),
            fmt_num(im),
            fmt_num(l.abs_err),
            fmt_num(l.residual_coarse.unwrap_or(f64::NAN)),
            l.converged.to_string(),
        ]);
    }
    let mut notes: Vec<String> = report.errors.clone();
    for l in report.levels.iter().filter(|l| !l.pass) {
        let why = if l.errors.is_empty() {
            format!(
                "|dE| = {:.3e}, |Im| = {:.3e}, order = {}, localized = {}",
                l.abs_err,
                l.imag(),
                l.order.map_or("n/a".into(), |o| format!("{o:.3}")),
                l.localized
            )
        } else {
            l.errors.join("; ")
        };
        notes.push(format!("{}: {why}", l.qn));
    }
    let summary = if report.pass {
        format!(
            "verify {}: PASS ({} levels, max |dE| = {:.3e})",
            family.name(),
            report.levels.len(),
            report.max_abs_err()
        )
    } else {
        format!("verify {}: FAIL {}", family.name(), notes.join(" | "))
    };
    Ok(CommandOutput {
        table,
        exit_code: if report.pass { EXIT_PASS } else { EXIT_FAIL },
        summary: Some(summary),
    })
}

fn select_level(cfg: &RunConfig, spectrum: &Spectrum, spec: &LevelSpec) -> Result<QuantumNumbers, CliError> {
    let found = spectrum.levels.iter().find(|l| {
        l.qn.n == spec.n && spec.sigma.is_none_or(|s| s == l.qn.sigma) && spec.tau.is_none_or(|t| t == l.qn.tau)
    });
    found.map(|l| l.qn).ok_or_else(|| {
        invalid(format!(
            "invalid level {:?}: not in the {} bound-state spectrum",
            spec,
            cfg.family().name()
        ))
    })
}

pub fn cmd_sample(cfg: &RunConfig) -> Result<CsvTable, CliError> {
    let xs = cfg.grid.xs();
    let potential = cfg.params.potential();
    let spectrum = cfg.params.spectrum()?;
    let mut header: Vec<String> = ["x", "xi_re", "xi_im", "V_re", "V_im"].map(String::from).to_vec();
    let mut columns = Vec::new();
    for spec in &cfg.levels {
        let qn = select_level(cfg, &spectrum, spec)?;
        let level = spectrum.find(qn).expect("selected from spectrum");
        let label = match cfg.family() {
            Family::Eckart => format!("{}", qn.n),
            Family::PoschlTeller => format!("{}{}{}", qn.sigma.symbol(), qn.tau.symbol(), qn.n),
            Family::Hulthen => format!("{}{}", qn.sigma.symbol(), qn.n),
        };
        header.push(format!("psi_re[{label}]"));
        header.push(format!("psi_im[{label}]"));
        columns.push(
            cfg.params
                .wavefunction(level, &cfg.contour, &xs, JacobiConvention::Doubled)?,
        );
    }
    let mut table = CsvTable::new(&header);
    for (i, &x) in xs.iter().enumerate() {
        let xi = cfg.contour.map_point(x);
        let v = potential.eval(xi)?;
        let mut row = vec![fmt_num(x), fmt_num(xi.re), fmt_num(xi.im), fmt_num(v.re), fmt_num(v.im)];
        for col in &columns {
            row.push(fmt_num(col[i].re));
            row.push(fmt_num(col[i].im));
        }
        table.push(row);
    }
    Ok(table)
}

pub fn cmd_transform(cfg: &RunConfig) -> Result<CsvTable, CliError> {
    let FamilyParams::Hulthen(p) = cfg.params else {
        return Err(invalid("transform needs --family hulthen"));
    };
    let spec = cfg
        .levels
        .first()
        .ok_or_else(|| invalid("transform needs --level sigma,n"))?;
    let sigma = spec.sigma.unwrap_or(Parity::Minus);
    let s = sigma.sign() * p.alpha() + 2.0 * spec.n as f64 + 1.0;
    if s.abs() <= crate::spectra::BOUNDARY_TOL {
        return Err(invalid(format!(
            "invalid level: {}",
            Error::DegenerateS {
                sigma: sigma.sign() as i8,
                n: spec.n
            }
        )));
    }
    let tau_beta = (p.c() - s * s) / (2.0 * s);
    let kappa = -(s * s + p.c()) / (2.0 * s);
    if kappa.is_nan() || kappa <= 0.0 {
        return Err(invalid(format!("invalid level: kappa = {kappa} is not positive")));
    }
    if tau_beta == 0.0 {
        return Err(invalid("invalid level: tau*beta vanishes"));
    }
    let parent = PoschlTellerParams::new(p.alpha(), tau_beta.abs(), cfg.epsilon)?;

    let header = [
        "x",
        "xi_re",
        "xi_im",
        "V_liouville_re",
        "V_liouville_im",
        "V_closed_re",
        "V_closed_im",
        "abs_diff",
    ];
    let mut table = CsvTable::new(&header);
    let mut push = |x: f64, xi: Complex64, lhs: Complex64, closed: Complex64| {
        table.push(vec![
            fmt_num(x),
            fmt_num(xi.re),
            fmt_num(xi.im),
            fmt_num(lhs.re),
            fmt_num(lhs.im),
            fmt_num(closed.re),
            fmt_num(closed.im),
            fmt_num((lhs - closed).norm()),
        ]);
    };
    if cfg.identity_map {
        // ξ = r along the shifted line, E = -κ²: both sides are the parent potential
        let line = ShiftedLine::new(parent.epsilon())?;
        let map = LiouvilleMap::new(IdentityMap, kappa);
        for x in cfg.grid.xs() {
            let xi = line.map_point(x);
            let lhs = liouville_potential(&parent, &map, xi)? - kappa * kappa;
            push(x, xi, lhs, parent.eval(xi)?);
        }
    } else {
        let arch = ArchContour::new(cfg.epsilon)?;
        let map = LiouvilleMap::new(ArchMap, kappa);
        for x in cfg.grid.xs() {
            let xi = arch.map_point(x);
            let lhs = liouville_potential(&parent, &map, xi)? + kappa * kappa;
            push(x, xi, lhs, eval_hulthen(&p, xi)?);
        }
    }
    Ok(table)
}

/// Run a validated configuration.
pub fn run(cfg: &RunConfig) -> Result<CommandOutput, CliError> {
    let plain = |table| CommandOutput {
        table,
        exit_code: EXIT_PASS,
        summary: None,
    };
    match cfg.command {
        Command::Spectrum => cmd_spectrum(cfg).map(plain),
        Command::Verify => cmd_verify(cfg),
        Command::Sample => cmd_sample(cfg).map(plain),
        Command::Transform => cmd_transform(cfg).map(plain),
    }
}

/// Parse arguments into a configuration. `Ok(Err(code))` means clap already
/// handled the request (help or version) or rejected it.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, (i32, String)>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| {
        let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_PASS };
        (code, e.to_string())
    })?;
    let (command, common) = match &cli.command {
        CommandArgs::Spectrum(a) => (Command::Spectrum, a),
        CommandArgs::Verify(a) => (Command::Verify, a),
        CommandArgs::Sample(a) => (Command::Sample, a),
        CommandArgs::Transform(a) => (Command::Transform, a),
    };
    RunConfig::from_args(command, common).map_err(|e| (e.exit_code(), format!("error: {e}")))
}

/// Entry point shared by the binary: parse, run, write, report.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match parse_args(args) {
        Ok(cfg) => cfg,
        Err((code, msg)) => {
            if code == EXIT_PASS {
                print!("{msg}");
            } else {
                // one line is enough for scripts
                eprintln!("{}", msg.lines().next().unwrap_or("error: invalid arguments"));
            }
            return code;
        }
    };
    let output = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let written = match &cfg.out {
        Some(path) => std::fs::File::create(path)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
            .and_then(|f| output.table.write_to(std::io::BufWriter::new(f))),
        None => output.table.write_to(std::io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_INVALID;
    }
    if let Some(s) = &output.summary {
        eprintln!("{s}");
    }
    output.exit_code
}
