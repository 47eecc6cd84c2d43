//! Command-line front end. [`run`] renders a [`RunConfig`] to a string;
//! [`execute`] writes it to the configured destination.

use std::fmt::Write as _;
use std::path::PathBuf;

use serde::Serialize;

use crate::invariants::{enumerate_integer_invariants, SearchConfig};
use crate::liealg::Alcove;
use crate::modular::{ModularDatum, RELATION_TOLERANCE};
use crate::schellekens::{
    build_algebra, modular_residuals, reducibility_verdict_with, torus_partition_function,
    ReducibilityReport,
};
use crate::simple_currents::{effective_center, order, SimpleCurrent};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    ModularData,
    EffectiveCenter,
    Schellekens,
    Invariants,
    Reducibility,
    Grid,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub rank: usize,
    pub level: u32,
    pub support: Option<u32>,
    pub max_entry: u32,
    /// `None` means the default, possibly overridden by `MTC_BUDGET`.
    pub budget: Option<usize>,
    pub output: Option<PathBuf>,
    pub format: Format,
    /// Modular datum JSON for `invariants`.
    pub input: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command, rank: usize, level: u32) -> Self {
        RunConfig {
            command,
            rank,
            level,
            support: None,
            max_entry: SearchConfig::default().max_entry,
            budget: None,
            output: None,
            format: Format::Json,
            input: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.rank < 2 {
            return Err(Error::InvalidArgument(format!(
                "--N must be >= 2, got {}",
                self.rank
            )));
        }
        if self.support.is_some()
            && !matches!(self.command, Command::Schellekens | Command::Reducibility)
        {
            return Err(Error::InvalidArgument(
                "--support only applies to schellekens and reducibility".into(),
            ));
        }
        if self.input.is_some() && self.command != Command::Invariants {
            return Err(Error::InvalidArgument(
                "--input only applies to invariants".into(),
            ));
        }
        if matches!(self.command, Command::Reducibility | Command::Grid) && self.level < 1 {
            return Err(Error::InvalidArgument(
                "--k must be >= 1 for this command".into(),
            ));
        }
        Ok(())
    }
}

/// Process exit status for an error: 1 for bad input, 2 for search limits,
/// 3 for failed internal consistency checks.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } | Error::GuardExceeded { .. } => 2,
        Error::RelationResidual { .. }
        | Error::NoZetaBranch { .. }
        | Error::EffectiveCenterMismatch { .. }
        | Error::NonIntegralEigenvalue { .. }
        | Error::NonSymmetric { .. } => 3,
        _ => 1,
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn csv_rows(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn run(config: &RunConfig) -> Result<String> {
    config.validate()?;
    match config.command {
        Command::ModularData => modular_data(config),
        Command::EffectiveCenter => effective_center_cmd(config),
        Command::Schellekens => schellekens_cmd(config),
        Command::Invariants => invariants_cmd(config),
        Command::Reducibility => reducibility_cmd(config),
        Command::Grid => grid_cmd(config),
    }
}

/// Run and write the result to `config.output`, or stdout.
pub fn execute(config: &RunConfig) -> Result<()> {
    let text = run(config)?;
    match &config.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn modular_data(config: &RunConfig) -> Result<String> {
    let datum = ModularDatum::new(config.rank, config.level)?;
    let report = datum.verify_relations();
    report.ensure(RELATION_TOLERANCE)?;
    match config.format {
        Format::Json => Ok(datum.to_json()? + "\n"),
        Format::Csv => csv_rows(
            &[
                "index",
                "weight",
                "conformal_weight",
                "theta",
                "qdim",
                "conjugate",
            ],
            (0..datum.len()).map(|i| {
                vec![
                    i.to_string(),
                    datum.alcove.weight(i).to_string(),
                    datum.conformal_weights[i].to_string(),
                    datum.theta[i].to_string(),
                    format!("{:.12}", datum.qdim[i]),
                    datum.conjugation[i].to_string(),
                ]
            }),
        ),
        Format::Text => {
            let mut out = String::new();
            writeln!(
                out,
                "su({}) level {}: {} simple objects",
                datum.rank,
                datum.level,
                datum.len()
            )
            .unwrap();
            writeln!(out, "zeta = {:.12} {:+.12}i", datum.zeta.re, datum.zeta.im).unwrap();
            for i in 0..datum.len() {
                writeln!(
                    out,
                    "{:>4} {:<16} Delta = {:<10} theta = {:<10} qdim = {:.9}",
                    i,
                    datum.alcove.weight(i).to_string(),
                    datum.conformal_weights[i].to_string(),
                    datum.theta[i].to_string(),
                    datum.qdim[i]
                )
                .unwrap();
            }
            writeln!(out, "relations ({:?}):", report.method).unwrap();
            writeln!(
                out,
                "  S^4 - 1        {:.3e}",
                report.s_fourth_minus_identity
            )
            .unwrap();
            writeln!(
                out,
                "  (ST)^3 - S^2   {:.3e}",
                report.st_cubed_minus_s_squared
            )
            .unwrap();
            writeln!(out, "  S^2 - C        {:.3e}", report.s_squared_minus_c).unwrap();
            writeln!(out, "  S S^dagger - 1 {:.3e}", report.unitarity_defect).unwrap();
            writeln!(out, "  S - S^T        {:.3e}", report.symmetry_defect).unwrap();
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct CurrentRow {
    power: u32,
    weight: crate::Weight,
    conformal_weight: String,
    order: u32,
    effective: bool,
}

#[derive(Serialize)]
struct CenterOutput {
    rank: usize,
    level: u32,
    exponents: Vec<u32>,
    generator: Option<u32>,
    currents: Vec<CurrentRow>,
}

fn effective_center_cmd(config: &RunConfig) -> Result<String> {
    let (rank, level) = (config.rank, config.level);
    let center = effective_center(rank, level)?;
    let currents: Vec<CurrentRow> = (0..rank as u32)
        .map(|p| {
            let j = SimpleCurrent::new(rank, level, p);
            CurrentRow {
                power: p,
                conformal_weight: j.conformal_weight(rank, level).to_string(),
                weight: j.weight,
                order: order(rank, p),
                effective: center.contains(p),
            }
        })
        .collect();
    match config.format {
        Format::Json => json(&CenterOutput {
            rank,
            level,
            exponents: center.exponents.clone(),
            generator: center.generator,
            currents,
        }),
        Format::Csv => csv_rows(
            &["power", "weight", "conformal_weight", "order", "effective"],
            currents.iter().map(|c| {
                vec![
                    c.power.to_string(),
                    c.weight.to_string(),
                    c.conformal_weight.clone(),
                    c.order.to_string(),
                    c.effective.to_string(),
                ]
            }),
        ),
        Format::Text => {
            let mut out = format!(
                "su({rank}) level {level}: effective center {{{}}} of order {}\n",
                center
                    .exponents
                    .iter()
                    .map(|p| format!("J^{p}"))
                    .collect::<Vec<_>>()
                    .join(", "),
                center.size()
            );
            for c in &currents {
                writeln!(
                    out,
                    "J^{} = {}  Delta = {}  order {}  {}",
                    c.power,
                    c.weight,
                    c.conformal_weight,
                    c.order,
                    if c.effective {
                        "effective"
                    } else {
                        "not effective"
                    }
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct SchellekensOutput {
    algebra: crate::SchellekensAlgebra,
    z: crate::IntMatrix,
    trivial: bool,
    residual_s: f64,
    residual_t: f64,
}

fn schellekens_cmd(config: &RunConfig) -> Result<String> {
    let (rank, level) = (config.rank, config.level);
    let p = match config.support {
        Some(p) => p,
        None => effective_center(rank, level)?.generator.unwrap_or(0),
    };
    let algebra = build_algebra(rank, level, p)?;
    let tpf = torus_partition_function(&algebra);
    let alcove = Alcove::new(rank, level);
    match config.format {
        Format::Csv => tpf.z.to_csv_string(&alcove),
        Format::Json | Format::Text => {
            let datum = ModularDatum::new(rank, level)?;
            let (residual_s, residual_t) = modular_residuals(&tpf.z, &datum);
            if config.format == Format::Json {
                return json(&SchellekensOutput {
                    trivial: tpf.is_trivial(),
                    algebra,
                    z: tpf.z,
                    residual_s,
                    residual_t,
                });
            }
            Ok(format!(
                "su({rank}) level {level}, support <J^{}> of order {}, Xi(J,J) = {}\n{}trivial: {}\n|ZS - SZ| = {residual_s:.3e}, |ZT - TZ| = {residual_t:.3e}\n",
                algebra.support_generator,
                algebra.order_h,
                algebra.xi_base,
                tpf.z,
                tpf.is_trivial()
            ))
        }
    }
}

fn invariants_cmd(config: &RunConfig) -> Result<String> {
    let datum = match &config.input {
        Some(path) => ModularDatum::from_json(&std::fs::read_to_string(path)?)?,
        None => ModularDatum::new(config.rank, config.level)?,
    };
    let mut search = SearchConfig {
        max_entry: config.max_entry,
        ..SearchConfig::default()
    }
    .with_env_override()?;
    if let Some(b) = config.budget {
        search.budget = b;
    }
    let report = enumerate_integer_invariants(&datum, &search)?;
    match config.format {
        Format::Json => json(&report),
        Format::Csv => {
            let blocks: Result<Vec<String>> = report
                .invariants
                .iter()
                .map(|m| m.z.to_csv_string(&datum.alcove))
                .collect();
            Ok(blocks?.join("\n"))
        }
        Format::Text => {
            let mut out = format!(
                "su({}) level {}: {} invariants ({} masked entries, {} free parameters)\n",
                report.rank,
                report.level,
                report.invariants.len(),
                report.masked_entries,
                report.free_parameters
            );
            for (idx, m) in report.invariants.iter().enumerate() {
                writeln!(out, "\n#{idx} trivial: {}", m.trivial).unwrap();
                write!(out, "{}", m.z).unwrap();
                if let Some(e) = &m.eigen_decomposition {
                    let parts: Vec<String> =
                        e.iter().map(|(v, k)| format!("{v:.6} x{k}")).collect();
                    writeln!(out, "eigenvalues: {}", parts.join(", ")).unwrap();
                }
            }
            Ok(out)
        }
    }
}

fn reducibility_cmd(config: &RunConfig) -> Result<String> {
    let report = reducibility_verdict_with(config.rank, config.level, config.support)?;
    match config.format {
        Format::Json => json(&report),
        Format::Csv => report
            .z
            .to_csv_string(&Alcove::new(config.rank, config.level)),
        Format::Text => Ok(format!("{}\n{}", report.verdict_line(), report.z)),
    }
}

#[derive(Serialize)]
struct GridRow {
    rank: usize,
    level: u32,
    effective_center_order: usize,
    support: u32,
    support_order: u32,
    trivial: bool,
    witness: Option<String>,
    case: String,
    verdict: String,
}

impl GridRow {
    fn from_report(r: &ReducibilityReport) -> Self {
        GridRow {
            rank: r.rank,
            level: r.level,
            effective_center_order: r.effective_center.len(),
            support: r.support,
            support_order: r.support_order,
            trivial: r.trivial,
            witness: r.witness.as_ref().map(|w| w.to_string()),
            case: r.case.to_string(),
            verdict: r.verdict.to_string(),
        }
    }
}

/// One row per `(N, k)` with `2 ≤ N ≤ rank`, `1 ≤ k ≤ level`.
pub fn grid_rows(rank: usize, level: u32) -> Result<Vec<ReducibilityReport>> {
    let mut rows = Vec::new();
    for n in 2..=rank {
        for k in 1..=level {
            rows.push(reducibility_verdict_with(n, k, None)?);
        }
    }
    Ok(rows)
}

fn grid_cmd(config: &RunConfig) -> Result<String> {
    let rows: Vec<GridRow> = grid_rows(config.rank, config.level)?
        .iter()
        .map(GridRow::from_report)
        .collect();
    match config.format {
        Format::Json => json(&rows),
        Format::Csv => csv_rows(
            &[
                "N",
                "k",
                "effective_center_order",
                "support",
                "support_order",
                "trivial",
                "witness",
                "case",
                "verdict",
            ],
            rows.iter().map(|r| {
                vec![
                    r.rank.to_string(),
                    r.level.to_string(),
                    r.effective_center_order.to_string(),
                    r.support.to_string(),
                    r.support_order.to_string(),
                    r.trivial.to_string(),
                    r.witness.clone().unwrap_or_default(),
                    r.case.clone(),
                    r.verdict.clone(),
                ]
            }),
        ),
        Format::Text => {
            let mut out = format!(
                "{:>2} {:>3} {:>4} {:>8} {:>7}  {:<40} {:<22} {}\n",
                "N", "k", "|Z°|", "support", "trivial", "witness", "case", "verdict"
            );
            for r in &rows {
                writeln!(
                    out,
                    "{:>2} {:>3} {:>4} {:>8} {:>7}  {:<40} {:<22} {}",
                    r.rank,
                    r.level,
                    r.effective_center_order,
                    format!("J^{}", r.support),
                    r.trivial,
                    r.witness.clone().unwrap_or_else(|| "-".into()),
                    r.case,
                    r.verdict
                )
                .unwrap();
            }
            Ok(out)
        }
    }
}
