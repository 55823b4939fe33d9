//! Serialization of reports and survivor tables.
//!
//! Every number is written as an integer or a reduced `num/den` string.

use std::fmt::Write as _;

use curvebound_core::classify::{Classification, SearchRow};
use curvebound_core::obstruct::{
    theorem_main_argument, CheckName, CheckRecord, Exact, ObstructionReport, Status, Verdict,
    Witness,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn report_json(report: &ObstructionReport) -> Result<String, CliError> {
    to_json(report)
}

pub fn parse_report_json(text: &str) -> Result<ObstructionReport, CliError> {
    Ok(serde_json::from_str(text)?)
}

fn indices(w: &Witness) -> String {
    let parts: Vec<String> = w.indices.iter().map(Exact::to_string).collect();
    parts.join(";")
}

fn opt(e: Option<Exact>) -> String {
    e.map(|e| e.to_string()).unwrap_or_default()
}

/// One row per witness, or one row with empty witness columns for a check without witnesses.
pub fn report_csv(report: &ObstructionReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["check", "status", "indices", "lhs", "bound_lo", "bound_hi"])?;
    for c in &report.checks {
        if c.witnesses.is_empty() {
            w.write_record([c.name.as_str(), c.status.as_str(), "", "", "", ""])?;
        }
        for wit in &c.witnesses {
            w.write_record([
                c.name.as_str().to_string(),
                c.status.as_str().to_string(),
                indices(wit),
                wit.lhs.to_string(),
                opt(wit.bound_lo),
                opt(wit.bound_hi),
            ])?;
        }
    }
    finish_csv(w)
}

fn finish_csv(w: csv::Writer<Vec<u8>>) -> Result<String, CliError> {
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

fn describe_witness(report: &ObstructionReport, check: &CheckRecord, w: &Witness) -> String {
    let lhs = match (check.name, w.indices.as_slice()) {
        (CheckName::TheoremMain, [Exact::Int(j), Exact::Int(b)]) => {
            let u = theorem_main_argument(report.hypothesis.d, *j as u64, *b as u64);
            format!("R({u})={}", w.lhs)
        }
        _ => w.lhs.to_string(),
    };
    let label = match check.name {
        CheckName::TheoremMain => "(j,b)",
        CheckName::Dinvariant => "k",
        CheckName::Multiplicity => "m",
        CheckName::Spectrum if matches!(w.indices.first(), Some(Exact::Ratio(..))) => "x",
        CheckName::Spectrum => "l",
        _ => "",
    };
    let idx: Vec<String> = w.indices.iter().map(Exact::to_string).collect();
    let head = match idx.len() {
        0 => String::new(),
        1 => format!("{label}={}: ", idx[0]),
        _ => format!("{label}=({}): ", idx.join(",")),
    };
    let lo = w.bound_lo.map(|b| format!("{b} ≤ ")).unwrap_or_default();
    let hi = w.bound_hi.map(|b| format!(" ≤ {b}")).unwrap_or_default();
    format!("{head}{lo}{lhs}{hi} violated")
}

pub fn report_table(report: &ObstructionReport) -> String {
    let h = &report.hypothesis;
    let sings: Vec<String> = h
        .singularities
        .iter()
        .map(|s| match (&s.p, &s.q, &s.generators) {
            (Some(p), Some(q), _) => format!("({p},{q})"),
            (_, _, Some(g)) => {
                let g: Vec<String> = g.iter().map(u64::to_string).collect();
                format!("<{}>", g.join(","))
            }
            _ => "?".into(),
        })
        .collect();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "degree {}  genus {}  singular points {}",
        h.d,
        h.g,
        sings.join(" ")
    );
    for c in &report.checks {
        let _ = writeln!(out, "{:<14} {}", c.name.as_str(), c.status);
        for w in &c.witnesses {
            let _ = writeln!(out, "    {}", describe_witness(report, c, w));
        }
    }
    let verdict = match report.verdict {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
    };
    let _ = writeln!(out, "verdict        {verdict}");
    out
}

/// One CSV row of a search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurvivorRecord {
    pub d: u64,
    pub p: u64,
    pub q: u64,
    pub genus: u64,
    pub theorem_main: Status,
    pub bmy: Status,
    pub multiplicity: Status,
    pub spectrum: Status,
    pub verdict: Verdict,
}

impl From<&SearchRow> for SurvivorRecord {
    fn from(row: &SearchRow) -> Self {
        let t = row.triple;
        SurvivorRecord {
            d: t.d,
            p: t.p,
            q: t.q,
            genus: t.g,
            theorem_main: row.status(CheckName::TheoremMain),
            bmy: row.status(CheckName::Bmy),
            multiplicity: row.status(CheckName::Multiplicity),
            spectrum: row.status(CheckName::Spectrum),
            verdict: if row.survives() {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        }
    }
}

pub fn survivors_csv(rows: &[SurvivorRecord]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    w.write_record([
        "d",
        "p",
        "q",
        "genus",
        "theorem_main",
        "bmy",
        "multiplicity",
        "spectrum",
        "verdict",
    ])?;
    for r in rows {
        w.serialize(r)?;
    }
    finish_csv(w)
}

pub fn parse_survivors_csv(text: &str) -> Result<Vec<SurvivorRecord>, CliError> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let headers = r.headers()?.clone();
    let expected = [
        "d",
        "p",
        "q",
        "genus",
        "theorem_main",
        "bmy",
        "multiplicity",
        "spectrum",
        "verdict",
    ];
    if headers.iter().ne(expected) {
        return Err(CliError::Usage(format!(
            "unexpected CSV header {headers:?}"
        )));
    }
    r.deserialize()
        .map(|row| row.map_err(CliError::from))
        .collect()
}

pub fn survivors_table(rows: &[SurvivorRecord]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>5} {:>6} {:>8} {:>5}  {:<14} {:<14} {:<14} {:<14} verdict",
        "d", "p", "q", "genus", "theorem_main", "bmy", "multiplicity", "spectrum"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>5} {:>6} {:>8} {:>5}  {:<14} {:<14} {:<14} {:<14} {}",
            r.d,
            r.p,
            r.q,
            r.genus,
            r.theorem_main.as_str(),
            r.bmy.as_str(),
            r.multiplicity.as_str(),
            r.spectrum.as_str(),
            match r.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
            }
        );
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedRecord {
    pub family: String,
    pub label: String,
    pub p: u64,
    pub q: u64,
    pub d: u64,
    pub realization_known: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedRecord {
    pub p: u64,
    pub q: u64,
    pub d: u64,
    pub failed: Vec<CheckName>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub d_max: u64,
    pub survivors: Vec<ClassifiedRecord>,
    pub rejected: Vec<RejectedRecord>,
}

impl From<&Classification> for ClassificationRecord {
    fn from(c: &Classification) -> Self {
        let mut survivors: Vec<ClassifiedRecord> = Vec::new();
        for (family, list) in [("fibonacci", &c.fibonacci), ("exceptional", &c.exceptional)] {
            survivors.extend(list.iter().map(|ct| ClassifiedRecord {
                family: family.into(),
                label: ct.label.clone(),
                p: ct.triple.p,
                q: ct.triple.q,
                d: ct.triple.d,
                realization_known: ct.realization_known,
            }));
        }
        survivors.extend(c.unexplained.iter().map(|t| ClassifiedRecord {
            family: "unexplained".into(),
            label: String::new(),
            p: t.p,
            q: t.q,
            d: t.d,
            realization_known: false,
        }));
        survivors.sort_by_key(|r| (r.d, r.p));
        ClassificationRecord {
            d_max: c.d_max,
            survivors,
            rejected: c
                .rejected
                .iter()
                .map(|r| RejectedRecord {
                    p: r.triple.p,
                    q: r.triple.q,
                    d: r.triple.d,
                    failed: r.failed.clone(),
                })
                .collect(),
        }
    }
}

pub fn classification_csv(c: &ClassificationRecord) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &c.survivors {
        w.serialize(r)?;
    }
    finish_csv(w)
}

pub fn classification_table(c: &ClassificationRecord) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "genus one, one Puiseux pair, degree 4 to {}", c.d_max);
    for r in &c.survivors {
        let _ = writeln!(
            out,
            "{:<12} {:<5} ({},{};{}){}",
            r.family,
            r.label,
            r.p,
            r.q,
            r.d,
            if r.realization_known {
                "  realized"
            } else {
                ""
            }
        );
    }
    let unexplained = c
        .survivors
        .iter()
        .filter(|r| r.family == "unexplained")
        .count();
    let _ = writeln!(out, "unexplained survivors: {unexplained}");
    let _ = writeln!(out, "rejected candidates: {}", c.rejected.len());
    out
}
