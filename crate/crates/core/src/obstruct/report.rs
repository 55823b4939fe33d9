//! Report records shared by the checks, the search driver and the CLI.

use std::fmt;
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Rational};

/// An exact number in a report: an integer, or a reduced fraction written `num/den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Exact {
    Int(i64),
    Ratio(i64, i64),
}

impl Exact {
    pub fn to_rational(self) -> Rational {
        match self {
            Exact::Int(n) => Rational::from_integer(n),
            Exact::Ratio(n, d) => Rational::new(n, d),
        }
    }
}

impl From<i64> for Exact {
    fn from(n: i64) -> Self {
        Exact::Int(n)
    }
}

impl From<u64> for Exact {
    fn from(n: u64) -> Self {
        Exact::Int(i64::try_from(n).expect("report value fits in i64"))
    }
}

impl From<Rational> for Exact {
    fn from(r: Rational) -> Self {
        if *r.denom() == 1 {
            Exact::Int(*r.numer())
        } else {
            Exact::Ratio(*r.numer(), *r.denom())
        }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Int(n) => write!(f, "{n}"),
            Exact::Ratio(n, d) => write!(f, "{n}/{d}"),
        }
    }
}

impl FromStr for Exact {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("not an exact number: {s:?}");
        match s.split_once('/') {
            None => s.parse().map(Exact::Int).map_err(|_| bad()),
            Some((n, d)) => {
                let n: i64 = n.parse().map_err(|_| bad())?;
                let d: i64 = d.parse().map_err(|_| bad())?;
                if d == 0 {
                    return Err(bad());
                }
                Ok(Exact::from(Rational::new(n, d)))
            }
        }
    }
}

impl Serialize for Exact {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Exact::Int(n) => serializer.serialize_i64(*n),
            Exact::Ratio(..) => serializer.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Exact {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExactVisitor;

        impl Visitor<'_> for ExactVisitor {
            type Value = Exact;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a \"num/den\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Exact, E> {
                Ok(Exact::Int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Exact, E> {
                i64::try_from(v).map(Exact::Int).map_err(E::custom)
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Exact, E> {
                v.parse().map_err(E::custom)
            }
        }

        deserializer.deserialize_any(ExactVisitor)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckName {
    GenusFormula,
    TheoremMain,
    Bmy,
    Multiplicity,
    Spectrum,
    Dinvariant,
}

impl CheckName {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckName::GenusFormula => "genus_formula",
            CheckName::TheoremMain => "theorem_main",
            CheckName::Bmy => "bmy",
            CheckName::Multiplicity => "multiplicity",
            CheckName::Spectrum => "spectrum",
            CheckName::Dinvariant => "dinvariant",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Ok(match s {
            "genus_formula" => CheckName::GenusFormula,
            "theorem_main" => CheckName::TheoremMain,
            "bmy" => CheckName::Bmy,
            "multiplicity" => CheckName::Multiplicity,
            "spectrum" => CheckName::Spectrum,
            "dinvariant" => CheckName::Dinvariant,
            other => return Err(Error::UnknownFilter(other.to_string())),
        })
    }
}

/// Outcome of one check.
///
/// `Skipped` means the hypotheses of the underlying theorem do not hold for
/// this curve; `NotApplicable` means the check was not run at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "pass")]
    Pass,
    #[serde(rename = "fail")]
    Fail,
    #[serde(rename = "skipped")]
    Skipped,
    #[serde(rename = "not-applicable")]
    NotApplicable,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
            Status::NotApplicable => "not-applicable",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "pass" => Status::Pass,
            "fail" => Status::Fail,
            "skipped" => Status::Skipped,
            "not-applicable" => Status::NotApplicable,
            other => return Err(format!("unknown status {other:?}")),
        })
    }
}

/// A violated inequality `bound_lo ≤ lhs ≤ bound_hi` (either bound may be absent).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub indices: Vec<Exact>,
    pub lhs: Exact,
    pub bound_lo: Option<Exact>,
    pub bound_hi: Option<Exact>,
}

impl Witness {
    /// Whether `lhs` actually lies outside the stated bounds.
    pub fn is_violation(&self) -> bool {
        let lhs = self.lhs.to_rational();
        self.bound_lo.is_some_and(|lo| lhs < lo.to_rational())
            || self.bound_hi.is_some_and(|hi| lhs > hi.to_rational())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: CheckName,
    pub status: Status,
    pub witnesses: Vec<Witness>,
}

impl CheckRecord {
    pub fn new(name: CheckName, status: Status) -> Self {
        CheckRecord {
            name,
            status,
            witnesses: Vec::new(),
        }
    }

    pub(crate) fn from_witnesses(name: CheckName, witnesses: Vec<Witness>) -> Self {
        let status = if witnesses.is_empty() {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckRecord {
            name,
            status,
            witnesses,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityEcho {
    #[serde(rename = "type")]
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<u64>>,
    pub delta: u64,
    pub mbar: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HypothesisEcho {
    pub d: u64,
    pub g: u64,
    pub singularities: Vec<SingularityEcho>,
}

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub schema_version: String,
    pub hypothesis: HypothesisEcho,
    pub checks: Vec<CheckRecord>,
    pub verdict: Verdict,
}

impl ObstructionReport {
    pub fn new(hypothesis: HypothesisEcho, checks: Vec<CheckRecord>) -> Self {
        let verdict = if checks.iter().any(|c| c.status == Status::Fail) {
            Verdict::Fail
        } else {
            Verdict::Pass
        };
        ObstructionReport {
            schema_version: SCHEMA_VERSION.to_string(),
            hypothesis,
            checks,
            verdict,
        }
    }

    pub fn check(&self, name: CheckName) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }
}
