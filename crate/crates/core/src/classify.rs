//! Candidate enumeration, obstruction searches, Fibonacci/Pell utilities and
//! the genus-one classification of curves with one Puiseux pair.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::obstruct::{
    check_bmy, check_multiplicity_bound, check_spectrum_semicontinuity, check_theorem_main,
    CheckName, CurveHypothesis, SpectrumMode, Status,
};
use crate::{Error, Result};

/// A curve of degree `d`, genus `g` and simple type `(p, q)` allowed by the
/// genus formula: `(p−1)(q−1) = (d−1)(d−2) − 2g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CandidateTriple {
    pub p: u64,
    pub q: u64,
    pub d: u64,
    pub g: u64,
}

impl CandidateTriple {
    pub fn hypothesis(&self) -> CurveHypothesis {
        CurveHypothesis::simple(self.d, self.g, self.p, self.q)
            .expect("candidate triples are valid hypotheses")
    }
}

impl fmt::Display for CandidateTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{})", self.p, self.q, self.d)
    }
}

/// All coprime `2 ≤ p < q` with `(p−1)(q−1) = (d−1)(d−2) − 2g`, ascending in `p`.
pub fn candidates_for(d: u64, g: u64) -> Vec<CandidateTriple> {
    if d < 3 {
        return Vec::new();
    }
    let Some(target) = ((d - 1) * (d - 2)).checked_sub(2 * g) else {
        return Vec::new();
    };
    if target == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut a = 1u64;
    while a * a < target {
        if target % a == 0 {
            let (p, q) = (a + 1, target / a + 1);
            if p.gcd(&q) == 1 {
                out.push(CandidateTriple { p, q, d, g });
            }
        }
        a += 1;
    }
    out
}

/// Checks a search can filter on, in report column order.
pub const SEARCH_FILTERS: [CheckName; 4] = [
    CheckName::TheoremMain,
    CheckName::Bmy,
    CheckName::Multiplicity,
    CheckName::Spectrum,
];

/// Parses a comma-separated filter list such as `theorem_main,bmy`.
pub fn parse_filters(spec: &str) -> Result<BTreeSet<CheckName>> {
    let mut set = BTreeSet::new();
    for name in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let check: CheckName = name.parse()?;
        if !SEARCH_FILTERS.contains(&check) {
            return Err(Error::UnknownFilter(name.to_string()));
        }
        set.insert(check);
    }
    if set.is_empty() {
        return Err(Error::NoFilters);
    }
    Ok(set)
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub d_min: u64,
    pub d_max: u64,
    pub g: u64,
    pub filters: BTreeSet<CheckName>,
    /// Worker threads; `None` lets the pool decide.
    pub threads: Option<usize>,
}

/// One evaluated candidate. Statuses follow [`SEARCH_FILTERS`]; filters not
/// selected are `NotApplicable`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRow {
    pub triple: CandidateTriple,
    pub statuses: [Status; 4],
}

impl SearchRow {
    pub fn status(&self, name: CheckName) -> Status {
        SEARCH_FILTERS
            .iter()
            .position(|&n| n == name)
            .map(|i| self.statuses[i])
            .unwrap_or(Status::NotApplicable)
    }

    pub fn survives(&self) -> bool {
        !self.statuses.contains(&Status::Fail)
    }

    pub fn failed_checks(&self) -> Vec<CheckName> {
        SEARCH_FILTERS
            .iter()
            .zip(self.statuses)
            .filter(|(_, s)| *s == Status::Fail)
            .map(|(&n, _)| n)
            .collect()
    }
}

fn evaluate(triple: CandidateTriple, filters: &BTreeSet<CheckName>) -> SearchRow {
    let h = triple.hypothesis();
    let statuses = SEARCH_FILTERS.map(|name| {
        if !filters.contains(&name) {
            return Status::NotApplicable;
        }
        match name {
            CheckName::TheoremMain => check_theorem_main(&h),
            CheckName::Bmy => check_bmy(&h),
            CheckName::Multiplicity => check_multiplicity_bound(&h),
            CheckName::Spectrum => check_spectrum_semicontinuity(&h, SpectrumMode::Ssl),
            _ => unreachable!("not a search filter"),
        }
        .status
    });
    SearchRow { triple, statuses }
}

/// Evaluates every candidate triple for `d ∈ [d_min, d_max]`, ordered by `(d, p)`.
///
/// Degrees are spread over a worker pool; the result order does not depend
/// on the schedule.
pub fn evaluate_range(cfg: &SearchConfig) -> Result<Vec<SearchRow>> {
    if cfg.d_min < 3 || cfg.d_min > cfg.d_max {
        return Err(Error::DegreeRange(cfg.d_min, cfg.d_max));
    }
    if cfg.filters.is_empty() {
        return Err(Error::NoFilters);
    }
    if let Some(bad) = cfg.filters.iter().find(|f| !SEARCH_FILTERS.contains(f)) {
        return Err(Error::UnknownFilter(bad.to_string()));
    }
    let run = || -> Vec<SearchRow> {
        (cfg.d_min..=cfg.d_max)
            .into_par_iter()
            .flat_map_iter(|d| {
                candidates_for(d, cfg.g)
                    .into_iter()
                    .map(|t| evaluate(t, &cfg.filters))
            })
            .collect()
    };
    match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Internal(e.to_string()))
            .map(|pool| pool.install(run)),
        None => Ok(run()),
    }
}

/// Candidates that pass every selected filter.
pub fn search(cfg: &SearchConfig) -> Result<Vec<SearchRow>> {
    Ok(evaluate_range(cfg)?
        .into_iter()
        .filter(SearchRow::survives)
        .collect())
}

/// `φ_n` with `φ_0 = 0`, `φ_1 = 1`, by fast doubling.
pub fn fibonacci(n: u64) -> BigUint {
    fn pair(n: u64) -> (BigUint, BigUint) {
        if n == 0 {
            return (BigUint::zero(), BigUint::one());
        }
        let (a, b) = pair(n / 2);
        // φ_{2k} = φ_k (2φ_{k+1} − φ_k), φ_{2k+1} = φ_k² + φ_{k+1}²
        let c = &a * (&b * 2u32 - &a);
        let d = &a * &a + &b * &b;
        if n.is_multiple_of(2) {
            (c, d)
        } else {
            let e = &c + &d;
            (d, e)
        }
    }
    pair(n).0
}

/// `(φ_{4j−2}, φ_{4j+2}; φ_{4j})` in unbounded integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FibonacciTriple {
    pub j: u64,
    pub p: BigUint,
    pub q: BigUint,
    pub d: BigUint,
}

impl FibonacciTriple {
    /// The triple as a machine-word genus-one candidate, if it fits.
    pub fn to_candidate(&self) -> Option<CandidateTriple> {
        Some(CandidateTriple {
            p: self.p.to_u64()?,
            q: self.q.to_u64()?,
            d: self.d.to_u64()?,
            g: 1,
        })
    }
}

impl fmt::Display for FibonacciTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{})", self.p, self.q, self.d)
    }
}

/// Whether `(φ_{4j−2} − 1)(φ_{4j+2} − 1) = φ_{4j}(φ_{4j} − 3)`, for `j ≥ 1`.
pub fn fibonacci_identity(j: u64) -> bool {
    assert!(j >= 1, "identity is stated for j >= 1");
    let (p, q, d) = (fibonacci(4 * j - 2), fibonacci(4 * j + 2), fibonacci(4 * j));
    (p - 1u32) * (q - 1u32) == &d * (&d - 3u32)
}

/// The `j`-th member of the Fibonacci family of genus-one curves. `j = 1`
/// gives `p = φ_2 = 1`, a smooth point, and is rejected.
pub fn fibonacci_triple(j: u64) -> Result<FibonacciTriple> {
    if j < 2 {
        return Err(Error::DegenerateTriple(j));
    }
    if !fibonacci_identity(j) {
        return Err(Error::Internal(format!(
            "Fibonacci identity fails at j = {j}"
        )));
    }
    Ok(FibonacciTriple {
        j,
        p: fibonacci(4 * j - 2),
        q: fibonacci(4 * j + 2),
        d: fibonacci(4 * j),
    })
}

/// All `d ≤ n` for which `5d² + 4` is a perfect square.
pub fn pell_degrees(n: u64) -> Vec<u64> {
    (1..=n)
        .filter(|&d| {
            let v = 5 * (d as u128) * (d as u128) + 4;
            let r = v.sqrt();
            r * r == v
        })
        .collect()
}

/// Labelled exceptional triples `(p, q; d)` of the genus-one classification.
pub fn exceptional_list() -> Vec<(String, CandidateTriple)> {
    let t = |p, q, d| CandidateTriple { p, q, d, g: 1 };
    let mut out = vec![
        ("a".to_string(), t(2, 5, 4)),
        ("b".to_string(), t(2, 11, 5)),
        ("c".to_string(), t(3, 10, 6)),
        ("d".to_string(), t(6, 37, 15)),
        ("e".to_string(), t(9, 64, 24)),
        ("f".to_string(), t(10, 73, 27)),
        ("g".to_string(), t(12, 91, 33)),
    ];
    out.extend((2..=10).map(|p| (format!("h{p}"), t(p, 9 * p + 1, 3 * p))));
    out
}

/// Whether a curve realizing the triple is known to exist.
pub fn realization_known(triple: &CandidateTriple, fibonacci_member: bool) -> bool {
    fibonacci_member
        || matches!(
            (triple.p, triple.q, triple.d),
            (2, 5, 4) | (2, 11, 5) | (3, 10, 6) | (2, 19, 6)
        )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedTriple {
    pub triple: CandidateTriple,
    /// `fib<j>` for the Fibonacci family, otherwise the exceptional label.
    pub label: String,
    pub realization_known: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rejection {
    pub triple: CandidateTriple,
    pub failed: Vec<CheckName>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub d_max: u64,
    pub fibonacci: Vec<ClassifiedTriple>,
    pub exceptional: Vec<ClassifiedTriple>,
    /// Survivors that are in neither family. Empty when the search reproduces
    /// the classification.
    pub unexplained: Vec<CandidateTriple>,
    pub rejected: Vec<Rejection>,
}

impl Classification {
    pub fn survivors(&self) -> BTreeSet<CandidateTriple> {
        self.fibonacci
            .iter()
            .chain(&self.exceptional)
            .map(|c| c.triple)
            .chain(self.unexplained.iter().copied())
            .collect()
    }
}

/// Runs the counting inequality and the BMY bound over every genus-one
/// candidate of degree `4..=d_max` and sorts the survivors into the
/// Fibonacci family, the exceptional list and anything else.
pub fn classify_genus_one(d_max: u64, threads: Option<usize>) -> Result<Classification> {
    if d_max < 4 {
        return Err(Error::DegreeRange(4, d_max));
    }
    let rows = evaluate_range(&SearchConfig {
        d_min: 4,
        d_max,
        g: 1,
        filters: [CheckName::TheoremMain, CheckName::Bmy].into(),
        threads,
    })?;

    let mut fib_members = Vec::new();
    for j in 2.. {
        let t = fibonacci_triple(j)?;
        match t.to_candidate() {
            Some(c) if c.d <= d_max => fib_members.push((j, c)),
            _ => break,
        }
    }
    let exceptional = exceptional_list();

    let mut out = Classification {
        d_max,
        fibonacci: Vec::new(),
        exceptional: Vec::new(),
        unexplained: Vec::new(),
        rejected: Vec::new(),
    };
    for row in rows {
        let triple = row.triple;
        if !row.survives() {
            out.rejected.push(Rejection {
                triple,
                failed: row.failed_checks(),
            });
        } else if let Some((j, _)) = fib_members.iter().find(|(_, c)| *c == triple) {
            out.fibonacci.push(ClassifiedTriple {
                triple,
                label: format!("fib{j}"),
                realization_known: realization_known(&triple, true),
            });
        } else if let Some((label, _)) = exceptional.iter().find(|(_, c)| *c == triple) {
            out.exceptional.push(ClassifiedTriple {
                triple,
                label: label.clone(),
                realization_known: realization_known(&triple, false),
            });
        } else {
            out.unexplained.push(triple);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_candidates(d: u64, g: u64) -> Vec<(u64, u64)> {
        let target = ((d - 1) * (d - 2)) as i64 - 2 * g as i64;
        let mut out = Vec::new();
        for p in 2..=d * d {
            for q in p + 1..=d * d + 1 {
                if ((p - 1) * (q - 1)) as i64 == target && p.gcd(&q) == 1 {
                    out.push((p, q));
                }
            }
        }
        out
    }

    #[test]
    fn degree_21_candidates() {
        let pairs: Vec<(u64, u64)> = candidates_for(21, 1).iter().map(|c| (c.p, c.q)).collect();
        assert_eq!(
            pairs,
            vec![
                (2, 379),
                (3, 190),
                (4, 127),
                (7, 64),
                (8, 55),
                (10, 43),
                (15, 28),
                (19, 22)
            ]
        );
    }

    #[test]
    fn small_candidates() {
        let pairs: Vec<(u64, u64)> = candidates_for(4, 0).iter().map(|c| (c.p, c.q)).collect();
        assert_eq!(pairs, vec![(2, 7), (3, 4)]);
        assert!(candidates_for(3, 1).is_empty());
        assert!(candidates_for(3, 5).is_empty());
    }

    #[test]
    fn candidates_match_brute_force() {
        for d in 3..=25u64 {
            for g in 0..=3 {
                let got: Vec<(u64, u64)> =
                    candidates_for(d, g).iter().map(|c| (c.p, c.q)).collect();
                assert_eq!(got, brute_candidates(d, g), "d = {d}, g = {g}");
            }
        }
    }

    #[test]
    fn fibonacci_values() {
        assert_eq!(fibonacci(0), BigUint::zero());
        assert_eq!(fibonacci(1), BigUint::one());
        assert_eq!(fibonacci(10), BigUint::from(55u32));
        assert_eq!(fibonacci(6), BigUint::from(8u32));
        assert_eq!(fibonacci(8), BigUint::from(21u32));
        let mut a = BigUint::zero();
        let mut b = BigUint::one();
        for n in 0..300 {
            assert_eq!(fibonacci(n), a);
            let next = &a + &b;
            a = std::mem::replace(&mut b, next);
        }
    }

    #[test]
    fn cassini() {
        for n in 1..=200u64 {
            let lhs = fibonacci(n - 1) * fibonacci(n + 1);
            let sq = fibonacci(n) * fibonacci(n);
            // φ_{n−1}φ_{n+1} − φ_n² = (−1)^n
            if n % 2 == 0 {
                assert_eq!(lhs, sq + 1u32);
            } else {
                assert_eq!(lhs + 1u32, sq);
            }
        }
    }

    #[test]
    fn triples() {
        assert_eq!(fibonacci_triple(2).unwrap().to_string(), "(8,55;21)");
        assert_eq!(fibonacci_triple(1), Err(Error::DegenerateTriple(1)));
        assert_eq!(fibonacci_triple(0), Err(Error::DegenerateTriple(0)));
        let t3 = fibonacci_triple(3).unwrap().to_candidate().unwrap();
        assert_eq!((t3.p, t3.q, t3.d), (55, 377, 144));
        for j in 1..=40 {
            assert!(fibonacci_identity(j), "j = {j}");
        }
    }

    #[test]
    fn pell() {
        assert_eq!(pell_degrees(60), vec![1, 3, 8, 21, 55]);
        assert_eq!(pell_degrees(1), vec![1]);
    }

    #[test]
    fn filters() {
        let f = parse_filters("theorem_main, bmy").unwrap();
        assert_eq!(f, [CheckName::TheoremMain, CheckName::Bmy].into());
        assert!(matches!(
            parse_filters("bogus"),
            Err(Error::UnknownFilter(_))
        ));
        assert!(matches!(
            parse_filters("genus_formula"),
            Err(Error::UnknownFilter(_))
        ));
        assert_eq!(parse_filters(""), Err(Error::NoFilters));
    }

    #[test]
    fn search_range_errors() {
        let cfg = SearchConfig {
            d_min: 10,
            d_max: 5,
            g: 1,
            filters: [CheckName::TheoremMain].into(),
            threads: Some(1),
        };
        assert_eq!(search(&cfg), Err(Error::DegreeRange(10, 5)));
        let cfg = SearchConfig {
            d_min: 4,
            d_max: 5,
            filters: BTreeSet::new(),
            ..cfg
        };
        assert_eq!(search(&cfg), Err(Error::NoFilters));
    }

    #[test]
    fn classify_small() {
        assert!(matches!(
            classify_genus_one(3, None),
            Err(Error::DegreeRange(4, 3))
        ));
        let c = classify_genus_one(21, Some(2)).unwrap();
        let survivors = c.survivors();
        for (p, q, d) in [(2, 5, 4), (2, 11, 5), (3, 10, 6), (8, 55, 21)] {
            assert!(survivors.contains(&CandidateTriple { p, q, d, g: 1 }));
        }
        assert!(c.unexplained.is_empty(), "{:?}", c.unexplained);
    }
}
