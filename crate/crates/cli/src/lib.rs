//! The `fusionkit` command line: decompositions, tadpoles, tables and
//! verification sweeps.
//!
//! Exit codes: 0 ok, 2 parse error, 3 domain error, 4 verification mismatch,
//! 5 no closed form. `--json` switches any command to line-delimited records.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use fusionkit::adjoint_rules::{fuse, fuse_tensor};
use fusionkit::tables;
use fusionkit::tadpole::{tadpole, TadpoleMethod};
use fusionkit::verify::{self, Bounds, Suite, SuiteReport};
use fusionkit::weights::affinize;
use fusionkit::{AlgebraId, Engine, Error, FusionDecomposition, RootSystem, Weight};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;
pub const EXIT_NO_CLOSED_FORM: i32 = 5;

pub const THREADS_ENV: &str = "FUSIONKIT_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "fusionkit",
    version,
    about = "Adjoint affine fusion and fusion tadpoles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decompose the product of the adjoint with L(mu)
    Fuse(FuseArgs),
    /// Adjoint (or zero) fusion tadpole
    Tadpole(TadpoleArgs),
    /// Regenerate a reference table, optionally checking it
    Table(TableArgs),
    /// Run the cross-method verification suites
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Fusion,
    Tensor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Rule,
    Oracle,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Rule => Engine::Rule,
            EngineArg::Oracle => Engine::Oracle,
        }
    }
}

#[derive(Debug, Args)]
pub struct FuseArgs {
    /// Algebra, e.g. A2, B4, G2
    pub algebra: String,
    /// Level k (ignored in tensor mode)
    pub level: u64,
    /// Finite Dynkin labels of mu, comma separated
    #[arg(allow_hyphen_values = true)]
    pub labels: String,
    #[arg(long, value_enum, default_value = "fusion")]
    pub mode: Mode,
    #[arg(long, value_enum, default_value = "rule")]
    pub engine: EngineArg,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Enum,
    Formula,
    Oracle,
    All,
}

#[derive(Debug, Args)]
pub struct TadpoleArgs {
    pub algebra: String,
    pub level: u64,
    #[arg(long, value_enum, default_value = "enum")]
    pub method: MethodArg,
    /// Zero tadpole |P_+^k| instead of the adjoint tadpole
    #[arg(long)]
    pub zero: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableName {
    BTadpoles,
    G2Offdiag,
    Nontrivial,
    F4Strings,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(value_enum)]
    pub name: TableName,
    /// Restrict the nontrivial table to one algebra
    #[arg(long)]
    pub algebra: Option<String>,
    /// Highest level scanned for g2-offdiag
    #[arg(long, default_value_t = 8)]
    pub max_level: u64,
    /// Compare against the embedded golden copy
    #[arg(long)]
    pub check: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 4)]
    pub max_rank: usize,
    #[arg(long, default_value_t = 6)]
    pub max_level: u64,
    /// Suites to run (repeatable); all by default
    #[arg(long, value_parser = parse_suite)]
    pub suite: Vec<Suite>,
    /// Test fixture: perturb the odd-level B_r closed form
    #[arg(long, hide = true)]
    pub inject_fault: bool,
    #[arg(long)]
    pub json: bool,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

/// One line of `--json` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: String,
    pub algebra: Option<String>,
    pub level: Option<u64>,
    pub methods: Vec<String>,
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Entry {
        labels: Vec<i64>,
        /// Affine labels `(nu_0, nu_1, ...)`; absent for tensor products.
        affine: Option<Vec<i64>>,
        multiplicity: u64,
    },
    Tadpole {
        quantity: String,
        method: String,
        value: u64,
    },
    BTadpole {
        rank: usize,
        level: u64,
        formula: u64,
        enumeration: u64,
        golden: Option<u64>,
    },
    G2Row {
        root: Vec<i64>,
        thresholds: Vec<i64>,
        starred: bool,
        nu_shift: Vec<i64>,
    },
    /// `index` is 1-based.
    Nontrivial {
        root: Vec<i64>,
        index: usize,
        threshold_plus: u32,
        threshold_minus: u32,
    },
    /// `index` is 1-based.
    F4String {
        root: Vec<i64>,
        index: usize,
        below: Vec<i64>,
        above: Vec<i64>,
    },
    Check {
        table: String,
        matching: usize,
        cells: usize,
        mismatches: Vec<String>,
    },
    Suite {
        suite: String,
        checks: u64,
        passed: bool,
        mismatch: Option<String>,
    },
}

/// Rebuilds a decomposition from the entry records of one `fuse --json` run.
pub fn decomposition_from_records(records: &[OutputRecord]) -> Result<FusionDecomposition, String> {
    let first = records.first().ok_or("no records")?;
    let algebra: AlgebraId = first
        .algebra
        .as_deref()
        .ok_or("record without algebra")?
        .parse()
        .map_err(|e: Error| e.to_string())?;
    let level = match &first.payload {
        Payload::Entry {
            affine: Some(_), ..
        } => first.level,
        _ => None,
    };
    let mut out = FusionDecomposition::new(algebra, level);
    for r in records {
        match &r.payload {
            Payload::Entry {
                labels,
                multiplicity,
                ..
            } => out.add(Weight::new(labels.clone()), *multiplicity),
            other => return Err(format!("not a decomposition entry: {other:?}")),
        }
    }
    Ok(out)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownAlgebra(_) | Error::WeightParse(_) | Error::InvalidRank { .. } => EXIT_PARSE,
        Error::NoClosedForm(_) => EXIT_NO_CLOSED_FORM,
        _ => EXIT_DOMAIN,
    }
}

/// Caps the global rayon pool at `FUSIONKIT_THREADS` when set.
pub fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {value:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

type Outcome = Result<i32, Error>;

/// Parses `args` (including the program name) and runs the command.
pub fn run_from_args<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli, out, err),
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{rendered}")
            } else {
                write!(err, "{rendered}")
            };
            if code == 0 {
                EXIT_OK
            } else {
                EXIT_PARSE
            }
        }
    }
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let mut io = Io { out, err };
    let result = match &cli.command {
        Command::Fuse(a) => cmd_fuse(a, &mut io),
        Command::Tadpole(a) => cmd_tadpole(a, &mut io),
        Command::Table(a) => cmd_table(a, &mut io),
        Command::Verify(a) => cmd_verify(a, &mut io),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(io: &mut Io, record: &OutputRecord) {
    let line = serde_json::to_string(record).expect("records serialize");
    let _ = writeln!(io.out, "{line}");
}

fn to_u64(v: u128) -> Result<u64, Error> {
    u64::try_from(v).map_err(|_| Error::Overflow("output value"))
}

/// Left-aligned columns padded to the widest cell.
fn print_aligned(io: &mut Io, rows: &[Vec<String>]) {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(String::len)
                .max()
                .unwrap_or(0)
        })
        .collect();
    for r in rows {
        let line: Vec<String> = r
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        let _ = writeln!(io.out, "{}", line.join("  ").trim_end());
    }
}

fn cmd_fuse(a: &FuseArgs, io: &mut Io) -> Outcome {
    let algebra: AlgebraId = a.algebra.parse()?;
    let mu: Weight = a.labels.parse()?;
    let rs = RootSystem::shared(algebra)?;
    let engine = Engine::from(a.engine);
    let (decomposition, header, level) = match a.mode {
        Mode::Fusion => {
            let mu_hat = affinize(&rs, &mu, a.level)?;
            let d = fuse(&rs, &mu_hat, engine)?;
            (
                d,
                format!(
                    "# {algebra} k={} mu={mu_hat} fusion {}",
                    a.level,
                    engine.name()
                ),
                Some(a.level),
            )
        }
        Mode::Tensor => {
            let d = fuse_tensor(&rs, &mu, engine)?;
            (
                d,
                format!("# {algebra} mu=({mu}) tensor {}", engine.name()),
                None,
            )
        }
    };
    let mode = match a.mode {
        Mode::Fusion => "fusion",
        Mode::Tensor => "tensor",
    };
    if a.json {
        let command = format!(
            "fuse {algebra} {} {mu} --mode {mode} --engine {}",
            a.level,
            engine.name()
        );
        for (nu, m) in decomposition.iter() {
            let affine = level.map(|k| {
                let mut labels = vec![k as i64 - rs.theta_pairing(nu)];
                labels.extend_from_slice(nu.labels());
                labels
            });
            emit(
                io,
                &OutputRecord {
                    command: command.clone(),
                    algebra: Some(algebra.to_string()),
                    level,
                    methods: vec![engine.name().to_string()],
                    payload: Payload::Entry {
                        labels: nu.labels().to_vec(),
                        affine,
                        multiplicity: m,
                    },
                },
            );
        }
    } else {
        let _ = writeln!(io.out, "{header}");
        let labels: Vec<String> = decomposition
            .iter()
            .map(|(nu, _)| format!("{nu}:"))
            .collect();
        let width = labels.iter().map(String::len).max().unwrap_or(0);
        for (label, (_, m)) in labels.iter().zip(decomposition.iter()) {
            let _ = writeln!(io.out, "{label:<width$} {m}");
        }
    }
    Ok(EXIT_OK)
}

fn cmd_tadpole(a: &TadpoleArgs, io: &mut Io) -> Outcome {
    let algebra: AlgebraId = a.algebra.parse()?;
    let quantity = if a.zero { "T_0" } else { "T_theta" };
    let methods: Vec<TadpoleMethod> = match a.method {
        MethodArg::Enum => vec![TadpoleMethod::Enumeration],
        MethodArg::Formula => vec![TadpoleMethod::Formula],
        MethodArg::Oracle => vec![TadpoleMethod::Oracle],
        MethodArg::All if a.zero => vec![TadpoleMethod::Formula, TadpoleMethod::Enumeration],
        MethodArg::All => vec![
            TadpoleMethod::Formula,
            TadpoleMethod::Enumeration,
            TadpoleMethod::Oracle,
        ],
    };
    let mut values = Vec::new();
    for method in methods {
        match tadpole(algebra, a.level, method, a.zero) {
            Ok(report) => values.push((method, report.value)),
            // With --method all, a missing closed form is skipped.
            Err(Error::NoClosedForm(_)) if a.method == MethodArg::All => {}
            Err(e) => return Err(e),
        }
    }
    let command = format!(
        "tadpole {algebra} {} --method {}{}",
        a.level,
        a.method.to_possible_value().expect("value").get_name(),
        if a.zero { " --zero" } else { "" }
    );
    if a.json {
        for (method, value) in &values {
            emit(
                io,
                &OutputRecord {
                    command: command.clone(),
                    algebra: Some(algebra.to_string()),
                    level: Some(a.level),
                    methods: vec![method.name().to_string()],
                    payload: Payload::Tadpole {
                        quantity: quantity.to_string(),
                        method: method.name().to_string(),
                        value: to_u64(*value)?,
                    },
                },
            );
        }
    } else {
        let _ = writeln!(io.out, "# {algebra} k={} {quantity}", a.level);
        let rows: Vec<Vec<String>> = values
            .iter()
            .map(|(m, v)| vec![m.name().to_string(), v.to_string()])
            .collect();
        print_aligned(io, &rows);
    }
    if values.windows(2).any(|w| w[0].1 != w[1].1) {
        let shown: Vec<String> = values.iter().map(|(m, v)| format!("{m} {v}")).collect();
        let _ = writeln!(
            io.err,
            "mismatch: {algebra} k={} {quantity}: {}",
            a.level,
            shown.join(", ")
        );
        return Ok(EXIT_MISMATCH);
    }
    Ok(EXIT_OK)
}

fn one_based(index: usize) -> usize {
    index + 1
}

fn report_check(io: &mut Io, json: bool, table: &str, check: &tables::TableCheck) -> i32 {
    if json {
        emit(
            io,
            &OutputRecord {
                command: format!("table {table} --check"),
                algebra: None,
                level: None,
                methods: vec![],
                payload: Payload::Check {
                    table: table.to_string(),
                    matching: check.matching,
                    cells: check.cells,
                    mismatches: check.mismatches.clone(),
                },
            },
        );
    } else {
        let _ = writeln!(io.out, "{check}");
    }
    for m in &check.mismatches {
        let _ = writeln!(io.err, "mismatch: {m}");
    }
    if check.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    }
}

fn table_record(
    name: &str,
    algebra: Option<String>,
    level: Option<u64>,
    payload: Payload,
) -> OutputRecord {
    OutputRecord {
        command: format!("table {name}"),
        algebra,
        level,
        methods: vec![],
        payload,
    }
}

fn cmd_table(a: &TableArgs, io: &mut Io) -> Outcome {
    let name = a
        .name
        .to_possible_value()
        .expect("value")
        .get_name()
        .to_string();
    match a.name {
        TableName::BTadpoles => {
            let cells = tables::b_tadpole_table()?;
            if a.json {
                for c in &cells {
                    let payload = Payload::BTadpole {
                        rank: c.rank,
                        level: c.level,
                        formula: to_u64(c.formula)?,
                        enumeration: to_u64(c.enumeration)?,
                        golden: tables::b_tadpole_golden(c.rank, c.level)
                            .map(to_u64)
                            .transpose()?,
                    };
                    emit(
                        io,
                        &table_record(&name, Some(format!("B{}", c.rank)), Some(c.level), payload),
                    );
                }
            } else {
                let mut rows = vec![std::iter::once("k\\r".to_string())
                    .chain(tables::B_TADPOLE_RANKS.iter().map(|r| r.to_string()))
                    .collect::<Vec<_>>()];
                for level in tables::B_TADPOLE_LEVELS {
                    let mut row = vec![level.to_string()];
                    row.extend(cells.iter().filter(|c| c.level == level).map(|c| {
                        if c.formula == c.enumeration {
                            c.formula.to_string()
                        } else {
                            format!("{}|{}", c.formula, c.enumeration)
                        }
                    }));
                    rows.push(row);
                }
                print_aligned(io, &rows);
            }
            if a.check {
                return Ok(report_check(
                    io,
                    a.json,
                    &name,
                    &tables::check_b_tadpoles(&cells),
                ));
            }
        }
        TableName::G2Offdiag => {
            let rows = tables::g2_offdiag_table(a.max_level, Engine::Rule)?;
            if a.json {
                for r in &rows {
                    let payload = Payload::G2Row {
                        root: r.root.to_vec(),
                        thresholds: r.thresholds.to_vec(),
                        starred: r.starred,
                        nu_shift: r.nu_shift.to_vec(),
                    };
                    emit(io, &table_record(&name, Some("G2".into()), None, payload));
                }
            } else {
                let mut grid = vec![[
                    "root", "mu0>=", "mu1>=", "mu2>=", "nu0-mu0", "nu1-mu1", "nu2-mu2", "",
                ]
                .map(String::from)
                .to_vec()];
                for r in &rows {
                    let mut line = vec![tables::root_name(&r.root)];
                    line.extend(r.thresholds.iter().map(|t| t.to_string()));
                    line.extend(r.nu_shift.iter().map(|t| format!("{t:+}")));
                    line.push(if r.starred { "*".into() } else { String::new() });
                    grid.push(line);
                }
                print_aligned(io, &grid);
            }
            if a.check {
                if !a.json {
                    let starred = rows.iter().filter(|r| r.starred).count();
                    let _ = writeln!(io.out, "{} rows, {starred} starred", rows.len());
                }
                return Ok(report_check(
                    io,
                    a.json,
                    &name,
                    &tables::check_g2_offdiag(&rows),
                ));
            }
        }
        TableName::Nontrivial => {
            let algebras = match &a.algebra {
                Some(s) => vec![s.parse::<AlgebraId>()?],
                None => AlgebraId::all_up_to(8),
            };
            let mut total = tables::TableCheck::default();
            let mut grid = vec![["algebra", "beta", "nu-mu=beta", "nu-mu=-beta"]
                .map(String::from)
                .to_vec()];
            for &id in &algebras {
                let rs = RootSystem::shared(id)?;
                let rows = tables::nontrivial_table(&rs);
                for r in &rows {
                    let i = one_based(r.index);
                    if a.json {
                        let payload = Payload::Nontrivial {
                            root: r.root.clone(),
                            index: i,
                            threshold_plus: r.threshold_plus,
                            threshold_minus: r.threshold_minus,
                        };
                        emit(
                            io,
                            &table_record(&name, Some(id.to_string()), None, payload),
                        );
                    } else {
                        grid.push(vec![
                            id.to_string(),
                            tables::root_name(&r.root),
                            format!("mu_{i}>={}", r.threshold_plus),
                            format!("mu_{i}>={}", r.threshold_minus),
                        ]);
                    }
                }
                if !a.json && rows.is_empty() && a.algebra.is_some() {
                    grid.push(vec![id.to_string(), "-".into(), "-".into(), "-".into()]);
                }
                let check = tables::check_nontrivial(id, &rows);
                total.cells += check.cells;
                total.matching += check.matching;
                total
                    .mismatches
                    .extend(check.mismatches.into_iter().map(|m| format!("{id} {m}")));
            }
            if !a.json {
                print_aligned(io, &grid);
            }
            if a.check {
                return Ok(report_check(io, a.json, &name, &total));
            }
        }
        TableName::F4Strings => {
            let rows = tables::f4_strings_table()?;
            if a.json {
                for r in &rows {
                    let payload = Payload::F4String {
                        root: r.root.to_vec(),
                        index: one_based(r.index),
                        below: r.below.to_vec(),
                        above: r.above.to_vec(),
                    };
                    emit(io, &table_record(&name, Some("F4".into()), None, payload));
                }
            } else {
                let mut grid = vec![["beta-a_i", "beta", "beta+a_i", "condition"]
                    .map(String::from)
                    .to_vec()];
                for r in &rows {
                    grid.push(vec![
                        format!("({})", tables::labels_string(&r.below)),
                        tables::root_name(&r.root),
                        format!("({})", tables::labels_string(&r.above)),
                        format!("mu_{}>=1", one_based(r.index)),
                    ]);
                }
                print_aligned(io, &grid);
            }
            if a.check {
                return Ok(report_check(
                    io,
                    a.json,
                    &name,
                    &tables::check_f4_strings(&rows),
                ));
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, io: &mut Io) -> Outcome {
    let bounds = Bounds {
        max_rank: a.max_rank,
        max_level: a.max_level,
    };
    if bounds.max_rank == 0 || bounds.max_level == 0 {
        let _ = writeln!(
            io.err,
            "error: --max-rank and --max-level must be at least 1"
        );
        return Ok(EXIT_PARSE);
    }
    let suites: Vec<Suite> = if a.suite.is_empty() {
        Suite::ALL.to_vec()
    } else {
        a.suite.clone()
    };
    let algebras = AlgebraId::all_up_to(bounds.max_rank);
    let mut reports: Vec<SuiteReport> = Vec::new();
    for suite in suites {
        let report = match suite {
            Suite::Tadpole if a.inject_fault => verify::tadpole_suite_with(
                &verify::closed_form_algebras(bounds.max_rank),
                bounds.max_level,
                &verify::faulty_b_odd_formula,
            )?,
            Suite::Tadpole => verify::tadpole_suite(
                &verify::closed_form_algebras(bounds.max_rank),
                bounds.max_level,
            )?,
            Suite::Rules => verify::rules_suite(&algebras, 2..=bounds.max_level)?,
            Suite::Tables => verify::tables_suite(&algebras)?,
            Suite::Structure => verify::structure_suite(&algebras)?,
        };
        if a.json {
            emit(
                io,
                &OutputRecord {
                    command: format!(
                        "verify --max-rank {} --max-level {}",
                        bounds.max_rank, bounds.max_level
                    ),
                    algebra: report.mismatch.as_ref().map(|m| m.algebra.to_string()),
                    level: report.mismatch.as_ref().and_then(|m| m.level),
                    methods: vec![],
                    payload: Payload::Suite {
                        suite: report.suite.name().to_string(),
                        checks: report.checks,
                        passed: report.passed(),
                        mismatch: report.mismatch.as_ref().map(ToString::to_string),
                    },
                },
            );
        } else {
            let _ = writeln!(io.out, "{report}");
        }
        reports.push(report);
    }
    if let Some(failed) = reports.iter().find(|r| !r.passed()) {
        let _ = writeln!(
            io.err,
            "first counterexample ({}): {}",
            failed.suite,
            failed.mismatch.as_ref().expect("failed")
        );
        return Ok(EXIT_MISMATCH);
    }
    if !a.json {
        let _ = writeln!(io.out, "all suites pass");
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run_from_args(
            std::iter::once("fusionkit").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn exit_codes_by_error() {
        assert_eq!(exit_code(&Error::WeightParse("x".into())), EXIT_PARSE);
        assert_eq!(
            exit_code(&Error::NoClosedForm("G2".parse().unwrap())),
            EXIT_NO_CLOSED_FORM
        );
        assert_eq!(exit_code(&Error::NotDominant("x".into())), EXIT_DOMAIN);
    }

    #[test]
    fn aligned_output() {
        let (code, out, _) = run_str(&["fuse", "A2", "3", "1,1"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().skip(1).collect();
        let colons: Vec<usize> = lines.iter().map(|l| l.find(':').unwrap()).collect();
        let values: Vec<usize> = lines.iter().map(|l| l.rfind(' ').unwrap()).collect();
        assert!(values.windows(2).all(|w| w[0] == w[1]), "{out}");
        assert!(colons.iter().all(|&c| c <= values[0]));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("tadpole"));
    }

    #[test]
    fn bad_suite_is_a_parse_error() {
        let (code, _, err) = run_str(&["verify", "--suite", "bogus"]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("unknown suite"));
    }
}
