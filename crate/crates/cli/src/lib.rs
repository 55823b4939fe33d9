//! The `curvebound` command line.

pub mod args;
pub mod config;
pub mod emit;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use curvebound_core::classify::{
    classify_genus_one, evaluate_range, fibonacci, fibonacci_triple, parse_filters, pell_degrees,
    SearchConfig,
};
use curvebound_core::floer::{check_dinvariant_bounds, Side};
use curvebound_core::obstruct::{
    full_report, spectrum_torus, ss_counts, CurveHypothesis, Exact, ReportOptions, Singularity,
    SpectrumMode, Verdict,
};
use curvebound_core::semigroup::NumericalSemigroup;
use serde::Serialize;

use args::{Cli, Command, Format, OutputArgs, SingularityArgs, SpectrumModeArg};
use emit::SurvivorRecord;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_OBSTRUCTED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const THREADS_ENV: &str = "CURVEBOUND_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] curvebound_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

/// Bytes to emit and the exit code that goes with them.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome {
            text,
            code: EXIT_PASS,
        }
    }
}

/// Parses `argv` (program name first), runs the command and writes its
/// output. Returns the process exit code.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let threads_env = std::env::var(THREADS_ENV).ok();
    run_with_env(argv, threads_env.as_deref(), stdout, stderr)
}

/// As [`run`], with the value of `CURVEBOUND_THREADS` passed in.
pub fn run_with_env<I, T>(
    argv: I,
    threads_env: Option<&str>,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let argv = match config::load_and_merge(argv) {
        Ok(a) => a,
        Err(e) => return usage_error(stderr, &e),
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    EXIT_PASS
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    EXIT_USAGE
                }
            };
        }
    };
    let output = output_args(&cli.command).and_then(|o| o.output.clone());
    let result = threads_cap(threads_env).and_then(|cap| dispatch(cli.command, cap));
    match result {
        Ok(outcome) => {
            let written = match output {
                Some(path) => std::fs::write(&path, outcome.text.as_bytes()),
                None => stdout.write_all(outcome.text.as_bytes()),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => usage_error(stderr, &CliError::Io(e)),
            }
        }
        Err(e) => usage_error(stderr, &e),
    }
}

fn usage_error(stderr: &mut dyn Write, e: &CliError) -> i32 {
    let _ = writeln!(stderr, "error: {e}");
    EXIT_USAGE
}

fn output_args(c: &Command) -> Option<&OutputArgs> {
    match c {
        Command::Check(a) => Some(&a.output),
        Command::Search(a) => Some(&a.output),
        Command::Classify(a) => Some(&a.output),
        Command::Semigroup(a) => Some(&a.output),
        Command::Spectrum(a) => Some(&a.output),
        Command::Dinv(a) => Some(&a.output),
        Command::Fib(_) => None,
    }
}

/// Parses the value of `CURVEBOUND_THREADS`.
pub fn threads_cap(value: Option<&str>) -> Result<Option<usize>, CliError> {
    match value {
        None => Ok(None),
        Some(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn effective_threads(flag: Option<usize>, cap: Option<usize>) -> Result<Option<usize>, CliError> {
    if flag == Some(0) {
        return Err(CliError::Usage("--threads must be positive".into()));
    }
    Ok(match (flag, cap) {
        (Some(f), Some(c)) => Some(f.min(c)),
        (f, c) => f.or(c),
    })
}

fn singularities(s: &SingularityArgs) -> Result<Vec<Singularity>, CliError> {
    let mut out = Vec::new();
    for &(p, q) in &s.pairs {
        out.push(Singularity::pair(p, q)?);
    }
    for g in &s.generators {
        out.push(Singularity::from_generators(&g.generators, g.mbar)?);
    }
    if out.is_empty() {
        return Err(CliError::Usage(
            "give at least one --pair or --generators".into(),
        ));
    }
    Ok(out)
}

fn dispatch(command: Command, cap: Option<usize>) -> Result<Outcome, CliError> {
    match command {
        Command::Check(a) => {
            let h = CurveHypothesis::new(a.degree, a.genus, singularities(&a.sings)?)?;
            let opts = ReportOptions {
                dinvariant: a.dinv,
                early_exit: a.early_exit,
                spectrum_mode: match a.spectrum_mode {
                    SpectrumModeArg::Ssl => SpectrumMode::Ssl,
                    SpectrumModeArg::Full => SpectrumMode::Full,
                },
            };
            let report = full_report(&h, opts);
            let text = match a.output.format.unwrap_or(Format::Table) {
                Format::Json => emit::report_json(&report)?,
                Format::Csv => emit::report_csv(&report)?,
                Format::Table => emit::report_table(&report),
            };
            let code = match report.verdict {
                Verdict::Pass => EXIT_PASS,
                Verdict::Fail => EXIT_OBSTRUCTED,
            };
            Ok(Outcome { text, code })
        }
        Command::Search(a) => {
            let cfg = SearchConfig {
                d_min: a.degree.0,
                d_max: a.degree.1,
                g: a.genus,
                filters: parse_filters(&a.filters)?,
                threads: effective_threads(a.threads, cap)?,
            };
            let rows: Vec<SurvivorRecord> = evaluate_range(&cfg)?
                .iter()
                .filter(|r| a.all || r.survives())
                .map(SurvivorRecord::from)
                .collect();
            Ok(Outcome::ok(match a.output.format.unwrap_or(Format::Csv) {
                Format::Json => emit::to_json(&rows)?,
                Format::Csv => emit::survivors_csv(&rows)?,
                Format::Table => emit::survivors_table(&rows),
            }))
        }
        Command::Classify(a) => {
            let c = classify_genus_one(a.max_degree, effective_threads(a.threads, cap)?)?;
            let record = emit::ClassificationRecord::from(&c);
            Ok(Outcome::ok(
                match a.output.format.unwrap_or(Format::Table) {
                    Format::Json => emit::to_json(&record)?,
                    Format::Csv => emit::classification_csv(&record)?,
                    Format::Table => emit::classification_table(&record),
                },
            ))
        }
        Command::Semigroup(a) => {
            let sings = singularities(&a.sings)?;
            let infos: Vec<SemigroupInfo> = sings
                .iter()
                .map(|s| SemigroupInfo::new(&s.semigroup()))
                .collect();
            Ok(Outcome::ok(
                match a.output.format.unwrap_or(Format::Table) {
                    Format::Json => emit::to_json(&infos)?,
                    Format::Csv => semigroup_csv(&infos)?,
                    Format::Table => infos.iter().map(SemigroupInfo::table).collect(),
                },
            ))
        }
        Command::Spectrum(a) => {
            let mut infos = Vec::new();
            for &(p, q) in &a.pairs {
                Singularity::pair(p, q)?;
                infos.push(SpectrumInfo::new(p, q));
            }
            let comparison = match a.degree {
                Some(d) => {
                    let sings = a
                        .pairs
                        .iter()
                        .map(|&(p, q)| Singularity::pair(p, q))
                        .collect::<Result<Vec<_>, _>>()?;
                    let h = CurveHypothesis::new(d, 0, sings)?;
                    Some(
                        ss_counts(&h)
                            .expect("pair singularities have spectra")
                            .into_iter()
                            .map(|(l, lhs, rhs)| SsRow { l, lhs, rhs })
                            .collect(),
                    )
                }
                None => None,
            };
            let report = SpectrumReport {
                spectra: infos,
                ss: comparison,
            };
            Ok(Outcome::ok(
                match a.output.format.unwrap_or(Format::Table) {
                    Format::Json => emit::to_json(&report)?,
                    Format::Csv => spectrum_csv(&report)?,
                    Format::Table => report.table(),
                },
            ))
        }
        Command::Dinv(a) => {
            let sings = singularities(&a.sings)?;
            let sgs: Vec<NumericalSemigroup> = sings.iter().map(Singularity::semigroup).collect();
            let verdict = check_dinvariant_bounds(a.degree, a.genus, &sgs)?;
            let report = DinvReport {
                d: a.degree,
                g: a.genus,
                evaluations: verdict
                    .evaluations
                    .iter()
                    .map(|e| DinvRow {
                        k: e.k.into(),
                        m: e.m,
                        d_bottom: e.d_bottom.into(),
                        d_top: e.d_top.into(),
                    })
                    .collect(),
                failures: verdict
                    .failures
                    .iter()
                    .map(|f| DinvFailureRow {
                        k: f.k.into(),
                        side: match f.side {
                            Side::Bottom => "bottom",
                            Side::Top => "top",
                        },
                        value: f.value.into(),
                        bound: f.bound,
                    })
                    .collect(),
                verdict: if verdict.passed() {
                    Verdict::Pass
                } else {
                    Verdict::Fail
                },
            };
            let text = match a.output.format.unwrap_or(Format::Table) {
                Format::Json => emit::to_json(&report)?,
                Format::Csv => dinv_csv(&report)?,
                Format::Table => report.table(),
            };
            let code = if verdict.passed() {
                EXIT_PASS
            } else {
                EXIT_OBSTRUCTED
            };
            Ok(Outcome { text, code })
        }
        Command::Fib(a) => {
            let text = if let Some(n) = a.n {
                format!("{}\n", fibonacci(n))
            } else if let Some(j) = a.triple {
                format!("{}\n", fibonacci_triple(j)?)
            } else if let Some(n) = a.pell {
                if n == 0 {
                    return Err(CliError::Usage("--pell needs N >= 1".into()));
                }
                let ds: Vec<String> = pell_degrees(n).iter().map(u64::to_string).collect();
                format!("{}\n", ds.join(","))
            } else {
                unreachable!("clap requires one of --n, --triple, --pell")
            };
            Ok(Outcome::ok(text))
        }
    }
}

#[derive(Serialize)]
struct SemigroupInfo {
    generators: Vec<u64>,
    conductor: u64,
    delta: u64,
    symmetric: bool,
    gaps: Vec<u64>,
    alexander: Vec<i64>,
}

impl SemigroupInfo {
    fn new(s: &NumericalSemigroup) -> Self {
        SemigroupInfo {
            generators: s.generators().to_vec(),
            conductor: s.conductor(),
            delta: s.delta(),
            symmetric: s.is_symmetric(),
            gaps: s.gaps().to_vec(),
            alexander: s.alexander_polynomial(),
        }
    }

    fn table(&self) -> String {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        let alexander: Vec<String> = self.alexander.iter().map(i64::to_string).collect();
        format!(
            "generators  {}\nconductor   {}\ndelta       {}\nsymmetric   {}\ngaps        {}\nalexander   {}\n",
            join(&self.generators),
            self.conductor,
            self.delta,
            self.symmetric,
            join(&self.gaps),
            alexander.join(",")
        )
    }
}

fn semigroup_csv(infos: &[SemigroupInfo]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["generators", "conductor", "delta", "symmetric", "gaps"])?;
    for i in infos {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(";");
        w.write_record([
            join(&i.generators),
            i.conductor.to_string(),
            i.delta.to_string(),
            i.symmetric.to_string(),
            join(&i.gaps),
        ])?;
    }
    String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.into_error()))?)
        .map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Serialize)]
struct SpectrumValue {
    value: Exact,
    multiplicity: u64,
}

#[derive(Serialize)]
struct SpectrumInfo {
    p: u64,
    q: u64,
    values: Vec<SpectrumValue>,
}

impl SpectrumInfo {
    fn new(p: u64, q: u64) -> Self {
        SpectrumInfo {
            p,
            q,
            values: spectrum_torus(p, q)
                .values()
                .map(|(v, multiplicity)| SpectrumValue {
                    value: v.into(),
                    multiplicity,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct SsRow {
    l: u64,
    lhs: u64,
    rhs: u64,
}

#[derive(Serialize)]
struct SpectrumReport {
    spectra: Vec<SpectrumInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ss: Option<Vec<SsRow>>,
}

impl SpectrumReport {
    fn table(&self) -> String {
        let mut out = String::new();
        for s in &self.spectra {
            out.push_str(&format!("spectrum of ({},{})\n", s.p, s.q));
            for v in &s.values {
                out.push_str(&format!(
                    "  {:<10} x{}\n",
                    v.value.to_string(),
                    v.multiplicity
                ));
            }
        }
        if let Some(ss) = &self.ss {
            out.push_str("l  count  bound\n");
            for r in ss {
                let mark = if r.lhs > r.rhs { "  violated" } else { "" };
                out.push_str(&format!("{:<2} {:<6} {}{mark}\n", r.l, r.lhs, r.rhs));
            }
        }
        out
    }
}

fn spectrum_csv(r: &SpectrumReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["p", "q", "value", "multiplicity"])?;
    for s in &r.spectra {
        for v in &s.values {
            w.write_record([
                s.p.to_string(),
                s.q.to_string(),
                v.value.to_string(),
                v.multiplicity.to_string(),
            ])?;
        }
    }
    String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.into_error()))?)
        .map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Serialize)]
struct DinvRow {
    k: Exact,
    m: i64,
    d_bottom: Exact,
    d_top: Exact,
}

#[derive(Serialize)]
struct DinvFailureRow {
    k: Exact,
    side: &'static str,
    value: Exact,
    bound: i64,
}

#[derive(Serialize)]
struct DinvReport {
    d: u64,
    g: u64,
    evaluations: Vec<DinvRow>,
    failures: Vec<DinvFailureRow>,
    verdict: Verdict,
}

impl DinvReport {
    fn table(&self) -> String {
        let mut out = format!(
            "degree {}  genus {}\n{:<8} {:<6} {:<12} d_top\n",
            self.d, self.g, "k", "m", "d_bottom"
        );
        for e in &self.evaluations {
            out.push_str(&format!(
                "{:<8} {:<6} {:<12} {}\n",
                e.k.to_string(),
                e.m,
                e.d_bottom.to_string(),
                e.d_top
            ));
        }
        for f in &self.failures {
            let rel = if f.side == "bottom" { "≥" } else { "≤" };
            out.push_str(&format!(
                "k={}: d_{} = {} {rel} {} violated\n",
                f.k, f.side, f.value, f.bound
            ));
        }
        out.push_str(match self.verdict {
            Verdict::Pass => "verdict pass\n",
            Verdict::Fail => "verdict fail\n",
        });
        out
    }
}

fn dinv_csv(r: &DinvReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["k", "m", "d_bottom", "d_top"])?;
    for e in &r.evaluations {
        w.write_record([
            e.k.to_string(),
            e.m.to_string(),
            e.d_bottom.to_string(),
            e.d_top.to_string(),
        ])?;
    }
    String::from_utf8(w.into_inner().map_err(|e| CliError::Io(e.into_error()))?)
        .map_err(|e| CliError::Usage(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thread_settings() {
        assert_eq!(threads_cap(None).unwrap(), None);
        assert_eq!(threads_cap(Some("4")).unwrap(), Some(4));
        assert!(threads_cap(Some("0")).is_err());
        assert!(threads_cap(Some("x")).is_err());
        assert_eq!(effective_threads(Some(8), Some(2)).unwrap(), Some(2));
        assert_eq!(effective_threads(Some(3), None).unwrap(), Some(3));
        assert_eq!(effective_threads(None, Some(5)).unwrap(), Some(5));
        assert!(effective_threads(Some(0), None).is_err());
    }
}
