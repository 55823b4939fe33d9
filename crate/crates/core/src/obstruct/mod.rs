//! Obstruction checks for a hypothetical cuspidal curve and the report they assemble.

mod report;
mod spectrum;

pub use report::{
    CheckName, CheckRecord, Exact, HypothesisEcho, ObstructionReport, SingularityEcho, Status,
    Verdict, Witness, SCHEMA_VERSION,
};
pub use spectrum::{spectrum_torus, ss_bound, SpectrumMultiset};

use crate::floer::{self, genus_from_degree, Side};
use crate::gapfn::MultiCounting;
use crate::semigroup::{NumericalSemigroup, SimplePairSingularity};
use crate::{Error, Rational, Result};

/// One singular point of the curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Singularity {
    /// One Puiseux pair; link is a torus knot.
    Pair(SimplePairSingularity),
    /// Explicit semigroup generators, with an optional user-supplied `M̄`.
    Semigroup {
        semigroup: NumericalSemigroup,
        mbar: Option<u64>,
    },
}

impl Singularity {
    pub fn pair(p: u64, q: u64) -> Result<Self> {
        SimplePairSingularity::new(p, q).map(Singularity::Pair)
    }

    /// Semigroup of a singular point given by generators. The semigroup must
    /// be symmetric, as every plane curve singularity semigroup is.
    pub fn from_generators(gens: &[u64], mbar: Option<u64>) -> Result<Self> {
        let semigroup = NumericalSemigroup::from_generators(gens)?;
        if !semigroup.is_symmetric() {
            return Err(Error::NotSymmetric(semigroup.generators().to_vec()));
        }
        Ok(Singularity::Semigroup { semigroup, mbar })
    }

    pub fn semigroup(&self) -> NumericalSemigroup {
        match self {
            Singularity::Pair(s) => s.semigroup(),
            Singularity::Semigroup { semigroup, .. } => semigroup.clone(),
        }
    }

    pub fn delta(&self) -> u64 {
        match self {
            Singularity::Pair(s) => s.delta(),
            Singularity::Semigroup { semigroup, .. } => semigroup.delta(),
        }
    }

    pub fn mbar(&self) -> Option<u64> {
        match self {
            Singularity::Pair(s) => Some(s.orevkov_mbar()),
            Singularity::Semigroup { mbar, .. } => *mbar,
        }
    }

    /// Smallest positive element of the semigroup.
    pub fn multiplicity(&self) -> u64 {
        match self {
            Singularity::Pair(s) => s.multiplicity(),
            Singularity::Semigroup { semigroup, .. } => semigroup.generators()[0],
        }
    }

    fn echo(&self) -> SingularityEcho {
        match self {
            Singularity::Pair(s) => SingularityEcho {
                kind: "pair".into(),
                p: Some(s.p()),
                q: Some(s.q()),
                generators: None,
                delta: s.delta(),
                mbar: Some(s.orevkov_mbar()),
            },
            Singularity::Semigroup { semigroup, mbar } => SingularityEcho {
                kind: "generators".into(),
                p: None,
                q: None,
                generators: Some(semigroup.generators().to_vec()),
                delta: semigroup.delta(),
                mbar: *mbar,
            },
        }
    }
}

/// Degree, genus and singular points of a hypothetical cuspidal curve.
///
/// Construction validates the shape of the data only; the genus formula is
/// a check ([`check_genus_formula`]), not a constructor invariant.
#[derive(Debug, Clone)]
pub struct CurveHypothesis {
    d: u64,
    g: u64,
    sings: Vec<Singularity>,
    semigroups: Vec<NumericalSemigroup>,
}

impl CurveHypothesis {
    pub fn new(d: u64, g: u64, sings: Vec<Singularity>) -> Result<Self> {
        if d < 3 {
            return Err(Error::DegreeTooSmall(d));
        }
        if sings.is_empty() {
            return Err(Error::NoSingularities);
        }
        let semigroups = sings.iter().map(Singularity::semigroup).collect();
        Ok(CurveHypothesis {
            d,
            g,
            sings,
            semigroups,
        })
    }

    /// Shorthand for a curve of simple type `(p, q)`.
    pub fn simple(d: u64, g: u64, p: u64, q: u64) -> Result<Self> {
        CurveHypothesis::new(d, g, vec![Singularity::pair(p, q)?])
    }

    pub fn degree(&self) -> u64 {
        self.d
    }

    pub fn genus(&self) -> u64 {
        self.g
    }

    pub fn singularities(&self) -> &[Singularity] {
        &self.sings
    }

    pub fn semigroups(&self) -> &[NumericalSemigroup] {
        &self.semigroups
    }

    pub fn total_delta(&self) -> u64 {
        self.sings.iter().map(Singularity::delta).sum()
    }

    /// `(d−1)(d−2)/2 − Σδ_i`.
    pub fn expected_genus(&self) -> i64 {
        genus_from_degree(self.d, self.total_delta())
    }

    pub fn satisfies_genus_formula(&self) -> bool {
        self.expected_genus() == self.g as i64
    }

    pub fn echo(&self) -> HypothesisEcho {
        HypothesisEcho {
            d: self.d,
            g: self.g,
            singularities: self.sings.iter().map(Singularity::echo).collect(),
        }
    }
}

pub fn check_genus_formula(h: &CurveHypothesis) -> CheckRecord {
    let mut witnesses = Vec::new();
    if !h.satisfies_genus_formula() {
        let expected = Exact::Int(h.expected_genus());
        witnesses.push(Witness {
            indices: Vec::new(),
            lhs: h.g.into(),
            bound_lo: Some(expected),
            bound_hi: Some(expected),
        });
    }
    CheckRecord::from_witnesses(CheckName::GenusFormula, witnesses)
}

/// Lower bound `(j+1)(j+2)/2 − b` of the counting inequality.
pub fn theorem_main_lower(j: u64, b: u64) -> i64 {
    ((j + 1) * (j + 2) / 2) as i64 - b as i64
}

/// Argument `jd − 2b + 1` at which `R` is evaluated. May be negative for
/// large genus, where `R` vanishes.
pub fn theorem_main_argument(d: u64, j: u64, b: u64) -> i64 {
    (j * d) as i64 - 2 * b as i64 + 1
}

/// `0 ≤ R(jd − 2b + 1) − (j+1)(j+2)/2 + b ≤ g` for `j = 1..d−2`, `b = 0..g`.
///
/// Witness indices are `[j, b]`, `lhs` is the value of `R`.
pub fn check_theorem_main(h: &CurveHypothesis) -> CheckRecord {
    if !h.satisfies_genus_formula() {
        return CheckRecord::new(CheckName::TheoremMain, Status::NotApplicable);
    }
    let counting = MultiCounting::new(&h.semigroups).expect("hypotheses have singular points");
    let (d, g) = (h.d, h.g);
    let mut witnesses = Vec::new();
    for j in 1..=d - 2 {
        for b in 0..=g {
            let u = theorem_main_argument(d, j, b);
            let r = if u <= 0 {
                0
            } else {
                counting.eval(u as u64) as i64
            };
            let lo = theorem_main_lower(j, b);
            let hi = lo + g as i64;
            if r < lo || r > hi {
                witnesses.push(Witness {
                    indices: vec![Exact::Int(j as i64), Exact::Int(b as i64)],
                    lhs: Exact::Int(r),
                    bound_lo: Some(Exact::Int(lo)),
                    bound_hi: Some(Exact::Int(hi)),
                });
            }
        }
    }
    CheckRecord::from_witnesses(CheckName::TheoremMain, witnesses)
}

/// `Σ M̄_i ≤ 3d + 4g − 5`; needs `g > 0` and a known `M̄` for every point.
pub fn check_bmy(h: &CurveHypothesis) -> CheckRecord {
    let mbars: Option<Vec<u64>> = h.sings.iter().map(Singularity::mbar).collect();
    let Some(mbars) = mbars.filter(|_| h.g > 0) else {
        return CheckRecord::new(CheckName::Bmy, Status::Skipped);
    };
    let total: u64 = mbars.iter().sum();
    let bound = 3 * h.d as i64 + 4 * h.g as i64 - 5;
    let mut witnesses = Vec::new();
    if total as i64 > bound {
        witnesses.push(Witness {
            indices: Vec::new(),
            lhs: total.into(),
            bound_lo: None,
            bound_hi: Some(Exact::Int(bound)),
        });
    }
    CheckRecord::from_witnesses(CheckName::Bmy, witnesses)
}

/// `d² − 3(1+m)d + m² − m`, nonpositive for a genus-one curve with one
/// singular point of multiplicity `m`.
pub fn multiplicity_quadratic(d: u64, m: u64) -> i64 {
    let (d, m) = (d as i64, m as i64);
    d * d - 3 * (1 + m) * d + m * m - m
}

/// Multiplicity bound for genus one and a single singular point.
pub fn check_multiplicity_bound(h: &CurveHypothesis) -> CheckRecord {
    let [sing] = h.sings.as_slice() else {
        return CheckRecord::new(CheckName::Multiplicity, Status::Skipped);
    };
    if h.g != 1 {
        return CheckRecord::new(CheckName::Multiplicity, Status::Skipped);
    }
    let m = sing.multiplicity();
    let value = multiplicity_quadratic(h.d, m);
    let mut witnesses = Vec::new();
    if value > 0 {
        witnesses.push(Witness {
            indices: vec![m.into()],
            lhs: Exact::Int(value),
            bound_lo: None,
            bound_hi: Some(Exact::Int(0)),
        });
    }
    CheckRecord::from_witnesses(CheckName::Multiplicity, witnesses)
}

/// How much of the semicontinuity property to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SpectrumMode {
    /// `x = −1 + l/d` for `l = 1..d`.
    #[default]
    Ssl,
    /// Every `x` at which one of the interval counts can change, plus one
    /// point in each interval between them.
    Full,
}

fn pair_spectra(h: &CurveHypothesis) -> Option<Vec<SpectrumMultiset>> {
    h.sings
        .iter()
        .map(|s| match s {
            Singularity::Pair(pq) => Some(spectrum_torus(pq.p(), pq.q())),
            Singularity::Semigroup { .. } => None,
        })
        .collect()
}

/// `(l, Σ_j #(Σ_j ∩ (0, l/d)), (l−1)(l−2)/2)` for `l = 1..d`, or `None` when
/// some singular point is not of simple type.
pub fn ss_counts(h: &CurveHypothesis) -> Option<Vec<(u64, u64, u64)>> {
    let spectra = pair_spectra(h)?;
    let zero = Rational::from_integer(0);
    Some(
        (1..=h.d)
            .map(|l| {
                let x = Rational::new(l as i64, h.d as i64);
                let lhs = spectra.iter().map(|s| s.count_open(zero, x)).sum();
                (l, lhs, ss_bound(l))
            })
            .collect(),
    )
}

/// Semicontinuity `#(Σ_{d,d} ∩ (x, x+1)) ≥ Σ_j #(Σ_j ∩ (x, x+1))`.
///
/// Only simple-type singular points have a known spectrum; otherwise the
/// check is skipped. `SS_l` witnesses carry index `[l]`, full-mode witnesses
/// carry `[x]`.
pub fn check_spectrum_semicontinuity(h: &CurveHypothesis, mode: SpectrumMode) -> CheckRecord {
    let Some(spectra) = pair_spectra(h) else {
        return CheckRecord::new(CheckName::Spectrum, Status::Skipped);
    };
    let mut witnesses = Vec::new();
    match mode {
        SpectrumMode::Ssl => {
            for (l, lhs, rhs) in ss_counts(h).expect("all points are simple") {
                if lhs > rhs {
                    witnesses.push(Witness {
                        indices: vec![l.into()],
                        lhs: lhs.into(),
                        bound_lo: None,
                        bound_hi: Some(rhs.into()),
                    });
                }
            }
        }
        SpectrumMode::Full => {
            let reference = spectrum_torus(h.d, h.d);
            let one = Rational::from_integer(1);
            let points = spectrum::critical_points(spectra.iter().chain([&reference]));
            for x in points {
                let lhs: u64 = spectra.iter().map(|s| s.count_open(x, x + one)).sum();
                let rhs = reference.count_open(x, x + one);
                if lhs > rhs {
                    witnesses.push(Witness {
                        indices: vec![x.into()],
                        lhs: lhs.into(),
                        bound_lo: None,
                        bound_hi: Some(rhs.into()),
                    });
                }
            }
        }
    }
    CheckRecord::from_witnesses(CheckName::Spectrum, witnesses)
}

/// Bottom/top correction-term bounds as a report record. Witness indices are
/// `[k]`; a bottom failure carries `bound_lo = −g`, a top failure `bound_hi = g`.
pub fn check_dinvariant(h: &CurveHypothesis) -> CheckRecord {
    let verdict = match floer::check_dinvariant_bounds(h.d, h.g, &h.semigroups) {
        Ok(v) => v,
        Err(_) => return CheckRecord::new(CheckName::Dinvariant, Status::NotApplicable),
    };
    let witnesses = verdict
        .failures
        .iter()
        .map(|f| Witness {
            indices: vec![f.k.into()],
            lhs: f.value.into(),
            bound_lo: (f.side == Side::Bottom).then_some(Exact::Int(f.bound)),
            bound_hi: (f.side == Side::Top).then_some(Exact::Int(f.bound)),
        })
        .collect();
    CheckRecord::from_witnesses(CheckName::Dinvariant, witnesses)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ReportOptions {
    /// Also run the correction-term form of the main inequality.
    pub dinvariant: bool,
    /// Stop at the first failing check; later checks are reported as not applicable.
    pub early_exit: bool,
    pub spectrum_mode: SpectrumMode,
}

/// Runs every check, cheapest first: genus formula, BMY, multiplicity,
/// the counting inequality, spectrum, and optionally the correction terms.
pub fn full_report(h: &CurveHypothesis, opts: ReportOptions) -> ObstructionReport {
    type Runner<'a> = Box<dyn Fn(&CurveHypothesis) -> CheckRecord + 'a>;
    let order: Vec<(CheckName, Option<Runner>)> = vec![
        (CheckName::GenusFormula, Some(Box::new(check_genus_formula))),
        (CheckName::Bmy, Some(Box::new(check_bmy))),
        (
            CheckName::Multiplicity,
            Some(Box::new(check_multiplicity_bound)),
        ),
        (CheckName::TheoremMain, Some(Box::new(check_theorem_main))),
        (
            CheckName::Spectrum,
            Some(Box::new(move |h| {
                check_spectrum_semicontinuity(h, opts.spectrum_mode)
            })),
        ),
        (
            CheckName::Dinvariant,
            opts.dinvariant
                .then(|| Box::new(check_dinvariant) as Runner),
        ),
    ];

    let mut checks = Vec::with_capacity(order.len());
    let mut stop = false;
    for (name, runner) in order {
        let record = match runner {
            Some(run) if !stop => run(h),
            _ => CheckRecord::new(name, Status::NotApplicable),
        };
        if record.status == Status::Fail
            && (opts.early_exit || record.name == CheckName::GenusFormula)
        {
            stop = true;
        }
        checks.push(record);
    }
    ObstructionReport::new(h.echo(), checks)
}
