//! Run configuration: command-line flags, an optional `key = value` file, and
//! validation into a [`SweepConfig`].
//!
//! Every flag has a file key of the same name without the leading dashes
//! (`--kg-a` becomes `kg-a`). Flags override file values.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use relthermo::partition::DEFAULT_TAIL_TOL;
use relthermo::{EngineSpec, FormulaVariant, ShiftPolicy, SpectrumModel};
use thiserror::Error;

/// Upper limit on grid points per coupling.
pub const MAX_GRID_POINTS: usize = 1_000_000;
pub const DEFAULT_PRECISION: usize = 12;
/// Default inverse couplings `a = 1/A` for Dirac sweeps.
pub const DEFAULT_COUPLINGS: [f64; 3] = [1.0, 0.5, 0.1];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelName {
    KgLinear,
    DiracExact,
    DiracStrong,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineName {
    Direct,
    Em,
    Mellin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VariantName {
    Published,
    Rederived,
}

impl From<VariantName> for FormulaVariant {
    fn from(v: VariantName) -> Self {
        match v {
            VariantName::Published => FormulaVariant::Published,
            VariantName::Rederived => FormulaVariant::Rederived,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShiftName {
    Ground,
    Absolute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    #[value(name = "lnZ")]
    LnZ,
    #[value(name = "F")]
    F,
    #[value(name = "U")]
    U,
    #[value(name = "S")]
    S,
    #[value(name = "C")]
    C,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Plotdat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `count` points from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MubarGrid {
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl MubarGrid {
    pub fn points(&self) -> Vec<f64> {
        if self.count == 1 {
            return vec![self.start];
        }
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    return self.stop;
                }
                let f = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + f * (self.stop - self.start),
                    Spacing::Log => self.start * (self.stop / self.start).powf(f),
                }
            })
            .collect()
    }

    fn validate(&self) -> Result<(), String> {
        if !(self.start.is_finite() && self.start > 0.0) {
            return Err(format!("start must be positive, got {}", self.start));
        }
        if !self.stop.is_finite() {
            return Err(format!("stop must be finite, got {}", self.stop));
        }
        if self.count == 1 {
            return if self.start == self.stop {
                Ok(())
            } else {
                Err("a grid with different ends needs at least 2 points".into())
            };
        }
        if self.count < 2 {
            return Err("count must be at least 2".into());
        }
        if self.count > MAX_GRID_POINTS {
            return Err(format!("count must not exceed {MAX_GRID_POINTS}"));
        }
        if self.stop <= self.start {
            return Err(format!(
                "stop ({}) must exceed start ({})",
                self.stop, self.start
            ));
        }
        let pts = self.points();
        if pts.windows(2).any(|w| w[1] <= w[0]) {
            return Err("grid points are not distinct at double precision".into());
        }
        Ok(())
    }
}

fn parse_positive_f64(s: &str, what: &str) -> Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("{what} `{}` is not a number", s.trim()))?;
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(format!("{what} must be positive and finite, got {v}"))
    }
}

/// Parses `START:STOP:COUNT` (linear spacing) or a single value `X`.
pub fn parse_grid(s: &str) -> Result<MubarGrid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let grid = match parts.as_slice() {
        [x] => {
            let x = parse_positive_f64(x, "mubar")?;
            MubarGrid {
                start: x,
                stop: x,
                count: 1,
                spacing: Spacing::Linear,
            }
        }
        [start, stop, count] => MubarGrid {
            start: parse_positive_f64(start, "start")?,
            stop: stop
                .trim()
                .parse()
                .map_err(|_| format!("stop `{}` is not a number", stop.trim()))?,
            count: count
                .trim()
                .parse()
                .map_err(|_| format!("count `{}` is not a non-negative integer", count.trim()))?,
            spacing: Spacing::Linear,
        },
        _ => return Err(format!("expected START:STOP:COUNT, got `{s}`")),
    };
    grid.validate()?;
    Ok(grid)
}

/// Parses a comma-separated list of positive couplings.
pub fn parse_couplings(s: &str) -> Result<Vec<f64>, String> {
    let values = s
        .split(',')
        .map(|p| parse_positive_f64(p, "coupling"))
        .collect::<Result<Vec<_>, _>>()?;
    let mut seen = BTreeSet::new();
    for v in &values {
        if !seen.insert(v.to_bits()) {
            return Err(format!("coupling {v} listed twice"));
        }
    }
    Ok(values)
}

/// Parsed `--a` value.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingList(pub Vec<f64>);

fn parse_coupling_list(s: &str) -> Result<CouplingList, String> {
    parse_couplings(s).map(CouplingList)
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s.trim() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        other => Err(format!("expected true or false, got `{other}`")),
    }
}

#[derive(Debug, Parser, Default)]
#[command(
    name = "thermo",
    version,
    about = "Partition functions and thermal functions of relativistic spectra"
)]
pub struct Cli {
    /// Read defaults from a `key = value` file; flags take precedence.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub model: Option<ModelName>,
    /// Dirac inverse couplings a = 1/A, comma separated.
    #[arg(long = "a", value_name = "LIST", value_parser = parse_coupling_list)]
    pub couplings: Option<CouplingList>,
    /// Klein-Gordon vector/scalar coupling ratio.
    #[arg(long = "kg-a", value_name = "RATIO", allow_hyphen_values = true)]
    pub kg_a: Option<f64>,
    /// Klein-Gordon frequency ratio ħω/(mc²).
    #[arg(long, value_name = "RATIO")]
    pub r: Option<f64>,
    /// Reduced temperature grid START:STOP:COUNT, or one value.
    #[arg(long, value_name = "START:STOP:COUNT", value_parser = parse_grid)]
    pub mubar: Option<MubarGrid>,
    /// Logarithmic grid spacing.
    #[arg(long)]
    pub log: bool,
    #[arg(long, value_enum)]
    pub engine: Option<EngineName>,
    #[arg(long, value_enum)]
    pub variant: Option<VariantName>,
    #[arg(long, value_enum)]
    pub shift: Option<ShiftName>,
    /// Column written by the plotdat format.
    #[arg(long, value_enum, ignore_case = true)]
    pub quantity: Option<Quantity>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
    /// Output file; standard output when absent.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Print the published-vs-rederived discrepancy report.
    #[arg(long)]
    pub report: bool,
    /// Significant digits of emitted numbers.
    #[arg(long)]
    pub precision: Option<usize>,
    /// Worker threads for the sweep (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Relative tail tolerance of the direct-sum engine.
    #[arg(long = "tail-tol")]
    pub tail_tol: Option<f64>,
    /// Euler-MacLaurin correction order.
    #[arg(long)]
    pub order: Option<usize>,
    /// Include the Gamma poles t = -1..-4 in the Mellin engine.
    #[arg(long = "extended-poles")]
    pub extended_poles: bool,
}

/// Configuration values before validation; `None` means "not given".
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    pub model: Option<ModelName>,
    pub couplings: Option<Vec<f64>>,
    pub kg_a: Option<f64>,
    pub r: Option<f64>,
    pub mubar: Option<MubarGrid>,
    pub log: Option<bool>,
    pub engine: Option<EngineName>,
    pub variant: Option<VariantName>,
    pub shift: Option<ShiftName>,
    pub quantity: Option<Quantity>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub report: Option<bool>,
    pub precision: Option<usize>,
    pub threads: Option<usize>,
    pub tail_tol: Option<f64>,
    pub order: Option<usize>,
    pub extended_poles: Option<bool>,
}

impl RawConfig {
    /// Fields set in `self` win over `fallback`.
    pub fn or(self, fallback: RawConfig) -> RawConfig {
        RawConfig {
            model: self.model.or(fallback.model),
            couplings: self.couplings.or(fallback.couplings),
            kg_a: self.kg_a.or(fallback.kg_a),
            r: self.r.or(fallback.r),
            mubar: self.mubar.or(fallback.mubar),
            log: self.log.or(fallback.log),
            engine: self.engine.or(fallback.engine),
            variant: self.variant.or(fallback.variant),
            shift: self.shift.or(fallback.shift),
            quantity: self.quantity.or(fallback.quantity),
            format: self.format.or(fallback.format),
            out: self.out.or(fallback.out),
            report: self.report.or(fallback.report),
            precision: self.precision.or(fallback.precision),
            threads: self.threads.or(fallback.threads),
            tail_tol: self.tail_tol.or(fallback.tail_tol),
            order: self.order.or(fallback.order),
            extended_poles: self.extended_poles.or(fallback.extended_poles),
        }
    }
}

impl From<Cli> for RawConfig {
    fn from(c: Cli) -> Self {
        let flag = |b: bool| b.then_some(true);
        RawConfig {
            model: c.model,
            couplings: c.couplings.map(|l| l.0),
            kg_a: c.kg_a,
            r: c.r,
            mubar: c.mubar,
            log: flag(c.log),
            engine: c.engine,
            variant: c.variant,
            shift: c.shift,
            quantity: c.quantity,
            format: c.format,
            out: c.out,
            report: flag(c.report),
            precision: c.precision,
            threads: c.threads,
            tail_tol: c.tail_tol,
            order: c.order,
            extended_poles: flag(c.extended_poles),
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    /// Flag syntax error, or `--help`/`--version`.
    #[error(transparent)]
    Cli(#[from] clap::Error),
    #[error("invalid value for `{key}`: {message}")]
    Invalid { key: String, message: String },
    #[error("config file line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("cannot read config file {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl ConfigError {
    fn invalid(key: &str, message: impl Into<String>) -> Self {
        ConfigError::Invalid {
            key: key.to_string(),
            message: message.into(),
        }
    }

    /// Process exit code: 2 for usage errors, 3 for I/O errors, and clap's
    /// own code (0) for help and version output.
    pub fn exit_code(&self) -> i32 {
        match self {
            ConfigError::Cli(e) => e.exit_code(),
            ConfigError::Io { .. } => crate::exit::IO,
            _ => crate::exit::USAGE,
        }
    }

    /// Config key the error is about, when there is one.
    pub fn key(&self) -> Option<&str> {
        match self {
            ConfigError::Invalid { key, .. } => Some(key),
            _ => None,
        }
    }
}

fn enum_value<T: ValueEnum>(key: &str, v: &str) -> Result<T, ConfigError> {
    T::from_str(v, true).map_err(|_| {
        let allowed: Vec<String> = T::value_variants()
            .iter()
            .filter_map(|x| x.to_possible_value().map(|p| p.get_name().to_string()))
            .collect();
        ConfigError::invalid(key, format!("`{v}` is not one of {}", allowed.join(", ")))
    })
}

fn number<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse()
        .map_err(|_| ConfigError::invalid(key, format!("`{v}` is not a valid number")))
}

/// Parses `key = value` lines. `#` starts a comment; blank lines are skipped.
/// Unknown and repeated keys are errors.
pub fn parse_config_file(text: &str) -> Result<RawConfig, ConfigError> {
    let mut raw = RawConfig::default();
    let mut seen = BTreeSet::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| ConfigError::Syntax {
            line: line_no,
            message: format!("expected `key = value`, got `{content}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        if !seen.insert(key.to_string()) {
            return Err(ConfigError::Syntax {
                line: line_no,
                message: format!("key `{key}` given twice"),
            });
        }
        let bad = |m: String| ConfigError::invalid(key, m);
        match key {
            "model" => raw.model = Some(enum_value(key, value)?),
            "a" => raw.couplings = Some(parse_couplings(value).map_err(bad)?),
            "kg-a" => raw.kg_a = Some(number(key, value)?),
            "r" => raw.r = Some(number(key, value)?),
            "mubar" => raw.mubar = Some(parse_grid(value).map_err(bad)?),
            "log" => raw.log = Some(parse_bool(value).map_err(bad)?),
            "engine" => raw.engine = Some(enum_value(key, value)?),
            "variant" => raw.variant = Some(enum_value(key, value)?),
            "shift" => raw.shift = Some(enum_value(key, value)?),
            "quantity" => raw.quantity = Some(enum_value(key, value)?),
            "format" => raw.format = Some(enum_value(key, value)?),
            "out" => {
                if value.is_empty() {
                    return Err(bad("path is empty".into()));
                }
                raw.out = Some(PathBuf::from(value))
            }
            "report" => raw.report = Some(parse_bool(value).map_err(bad)?),
            "precision" => raw.precision = Some(number(key, value)?),
            "threads" => raw.threads = Some(number(key, value)?),
            "tail-tol" => raw.tail_tol = Some(number(key, value)?),
            "order" => raw.order = Some(number(key, value)?),
            "extended-poles" => raw.extended_poles = Some(parse_bool(value).map_err(bad)?),
            _ => {
                return Err(ConfigError::Syntax {
                    line: line_no,
                    message: format!("unknown key `{key}`"),
                })
            }
        }
    }
    Ok(raw)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelFamily {
    /// Klein-Gordon with fixed `(a, r)`.
    KgLinear {
        a: f64,
        r: f64,
    },
    DiracExact,
    DiracStrong,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: OutputFormat,
    pub quantity: Quantity,
}

/// A validated sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub family: ModelFamily,
    /// Dirac: inverse couplings `a = 1/A`. Klein-Gordon: the single ratio `a`.
    pub couplings: Vec<f64>,
    pub engine: EngineSpec,
    pub shift: ShiftPolicy,
    /// Absent only for report-only runs.
    pub grid: Option<MubarGrid>,
    pub output: OutputSpec,
    pub precision: usize,
    pub report: bool,
    pub threads: Option<usize>,
}

impl SweepConfig {
    /// `(coupling, model)` pairs in output order.
    pub fn models(&self) -> Vec<(f64, SpectrumModel)> {
        self.couplings
            .iter()
            .map(|&c| {
                let model = match self.family {
                    ModelFamily::KgLinear { a, r } => SpectrumModel::KgLinear { a, r },
                    ModelFamily::DiracExact => {
                        SpectrumModel::DiracInverseLinear { coupling: 1.0 / c }
                    }
                    ModelFamily::DiracStrong => {
                        SpectrumModel::DiracStrongField { coupling: 1.0 / c }
                    }
                };
                (c, model)
            })
            .collect()
    }
}

/// Validates merged raw values into a [`SweepConfig`].
pub fn resolve(raw: RawConfig) -> Result<SweepConfig, ConfigError> {
    let report = raw.report.unwrap_or(false);
    let model = match raw.model {
        Some(m) => m,
        // a bare report probes both spectra with its own defaults
        None if report && raw.mubar.is_none() => ModelName::DiracStrong,
        None => return Err(ConfigError::invalid("model", "is required")),
    };

    let (family, couplings) = match model {
        ModelName::KgLinear => {
            if raw.couplings.is_some() {
                return Err(ConfigError::invalid(
                    "a",
                    "applies to Dirac models; use --kg-a for kg-linear",
                ));
            }
            let a = raw.kg_a.unwrap_or(0.0);
            let r = raw.r.unwrap_or(1.0);
            let report = SpectrumModel::KgLinear { a, r }.validate();
            if !report.is_valid() {
                let key = if report
                    .violations
                    .contains(&relthermo::Violation::NonPositiveFrequency)
                {
                    "r"
                } else {
                    "kg-a"
                };
                return Err(ConfigError::invalid(key, report.to_string()));
            }
            (ModelFamily::KgLinear { a, r }, vec![a])
        }
        ModelName::DiracExact | ModelName::DiracStrong => {
            if raw.kg_a.is_some() {
                return Err(ConfigError::invalid("kg-a", "applies to kg-linear only"));
            }
            if raw.r.is_some() {
                return Err(ConfigError::invalid("r", "applies to kg-linear only"));
            }
            let family = if model == ModelName::DiracExact {
                ModelFamily::DiracExact
            } else {
                ModelFamily::DiracStrong
            };
            (
                family,
                raw.couplings.unwrap_or_else(|| DEFAULT_COUPLINGS.to_vec()),
            )
        }
    };

    let variant: FormulaVariant = raw.variant.unwrap_or(VariantName::Rederived).into();
    let engine_name = raw.engine.unwrap_or(match model {
        ModelName::KgLinear => EngineName::Em,
        _ => EngineName::Mellin,
    });
    let engine = match engine_name {
        EngineName::Direct => {
            let tail_tol = raw.tail_tol.unwrap_or(DEFAULT_TAIL_TOL);
            if !(tail_tol > 0.0 && tail_tol < 1.0) {
                return Err(ConfigError::invalid("tail-tol", "must lie in (0, 1)"));
            }
            EngineSpec::DirectSum { tail_tol }
        }
        EngineName::Em => {
            if model != ModelName::KgLinear {
                return Err(ConfigError::invalid(
                    "engine",
                    "the em engine applies to kg-linear only",
                ));
            }
            let order = raw.order.unwrap_or(2);
            if !(1..=20).contains(&order) {
                return Err(ConfigError::invalid("order", "must lie in 1..=20"));
            }
            EngineSpec::EulerMaclaurin { order, variant }
        }
        EngineName::Mellin => {
            if model != ModelName::DiracStrong {
                return Err(ConfigError::invalid(
                    "engine",
                    "the mellin engine applies to dirac-strong only",
                ));
            }
            EngineSpec::MellinResidue {
                variant,
                extended_poles: raw.extended_poles.unwrap_or(false),
            }
        }
    };
    if raw.tail_tol.is_some() && engine_name != EngineName::Direct {
        return Err(ConfigError::invalid(
            "tail-tol",
            "applies to the direct engine only",
        ));
    }

    let shift = match raw.shift {
        Some(ShiftName::Ground) => ShiftPolicy::GroundShifted,
        Some(ShiftName::Absolute) => ShiftPolicy::Absolute,
        None => match model {
            ModelName::KgLinear => ShiftPolicy::GroundShifted,
            _ => ShiftPolicy::Absolute,
        },
    };

    let grid = match raw.mubar {
        Some(mut g) => {
            if raw.log.unwrap_or(false) {
                g.spacing = Spacing::Log;
            }
            g.validate().map_err(|m| ConfigError::invalid("mubar", m))?;
            Some(g)
        }
        None if report => None,
        None => return Err(ConfigError::invalid("mubar", "is required")),
    };

    let precision = raw.precision.unwrap_or(DEFAULT_PRECISION);
    if !(1..=17).contains(&precision) {
        return Err(ConfigError::invalid("precision", "must lie in 1..=17"));
    }
    if raw.threads == Some(0) {
        return Err(ConfigError::invalid("threads", "must be at least 1"));
    }

    Ok(SweepConfig {
        family,
        couplings,
        engine,
        shift,
        grid,
        output: OutputSpec {
            path: raw.out,
            format: raw.format.unwrap_or(OutputFormat::Csv),
            quantity: raw.quantity.unwrap_or(Quantity::U),
        },
        precision,
        report,
        threads: raw.threads,
    })
}

/// Parses command-line tokens (program name first), merges the `--config`
/// file if one is named, and validates the result.
pub fn parse_config<I, T>(args: I) -> Result<SweepConfig, ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    let file = match &cli.config {
        Some(path) => read_config_file(path)?,
        None => RawConfig::default(),
    };
    resolve(RawConfig::from(cli).or(file))
}

fn read_config_file(path: &Path) -> Result<RawConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_file(&text)
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Quantity::LnZ => "lnZ",
            Quantity::F => "F",
            Quantity::U => "U",
            Quantity::S => "S",
            Quantity::C => "C",
        })
    }
}
