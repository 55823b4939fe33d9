//! Staircases, the function `γ_m`, Spin^c index sets and the bottom/top
//! correction terms of large surgeries.
//!
//! Two routes to `γ_m` live here. The staircase route works directly with the
//! bifiltration levels of grading-zero generators; the gap-function route
//! evaluates `I(m + h)`. The production checker uses the second one, the
//! first exists so the two can be compared.

use num_integer::Integer;

use crate::gapfn::{GapFunction, MultiCounting};
use crate::semigroup::NumericalSemigroup;
use crate::{Error, Rational, Result};

/// A finite antichain of integer bifiltration levels `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Staircase {
    // sorted by i ascending, hence j strictly descending
    vertices: Vec<(i64, i64)>,
}

impl Staircase {
    /// Keeps the minimal elements of `points` under the componentwise order.
    pub fn from_points<I: IntoIterator<Item = (i64, i64)>>(points: I) -> Result<Self> {
        let mut pts: Vec<(i64, i64)> = points.into_iter().collect();
        if pts.is_empty() {
            return Err(Error::EmptyStaircase);
        }
        pts.sort_unstable();
        pts.dedup();
        let mut vertices: Vec<(i64, i64)> = Vec::new();
        for (i, j) in pts {
            // everything kept so far has i' <= i; keep (i, j) only if no kept j' <= j
            if vertices.last().is_none_or(|&(_, lj)| j < lj) {
                vertices.push((i, j));
            }
        }
        Ok(Staircase { vertices })
    }

    pub fn vertices(&self) -> &[(i64, i64)] {
        &self.vertices
    }

    /// `γ_m = min_{(i,j)} max(i, j − m)`.
    pub fn gamma(&self, m: i64) -> i64 {
        self.vertices
            .iter()
            .map(|&(i, j)| i.max(j - m))
            .min()
            .expect("staircases are nonempty")
    }

    /// Largest first coordinate, the Seifert genus of the knot the staircase
    /// belongs to.
    pub fn genus(&self) -> i64 {
        self.vertices.last().map(|v| v.0).unwrap_or(0)
    }
}

/// The staircase of the L-space knot whose semigroup is `s`: the minimal
/// elements of `{(I(m+h), I(m+h)+m) : m ∈ [−h, h]}`.
pub fn staircase_from_semigroup(s: &NumericalSemigroup) -> Staircase {
    let gap = GapFunction::from_semigroup(s);
    let h = gap.h();
    Staircase::from_points((-h..=h).map(|m| {
        let i = gap.eval(m + h);
        (i, i + m)
    }))
    .expect("range [-h, h] is nonempty")
}

/// Minimal elements of the Minkowski sum; models connected sum of L-space knots.
pub fn staircase_sum(a: &Staircase, b: &Staircase) -> Staircase {
    Staircase::from_points(
        a.vertices
            .iter()
            .flat_map(|&(i1, j1)| b.vertices.iter().map(move |&(i2, j2)| (i1 + i2, j1 + j2))),
    )
    .expect("sum of nonempty staircases is nonempty")
}

/// A total function `m ↦ γ_m` together with the genus of the knot it comes from.
pub trait GammaProfile {
    fn gamma(&self, m: i64) -> i64;
    fn knot_genus(&self) -> u64;
}

impl GammaProfile for Staircase {
    fn gamma(&self, m: i64) -> i64 {
        Staircase::gamma(self, m)
    }

    fn knot_genus(&self) -> u64 {
        self.genus().max(0) as u64
    }
}

/// `γ_m = I(m + h)` for a (possibly convolved) gap function.
#[derive(Debug, Clone)]
pub struct GapProfile {
    gap: GapFunction,
}

impl GapProfile {
    pub fn new(gap: GapFunction) -> Self {
        GapProfile { gap }
    }

    pub fn from_semigroups(sings: &[NumericalSemigroup]) -> Result<Self> {
        Ok(GapProfile {
            gap: MultiCounting::new(sings)?.gap_function().clone(),
        })
    }
}

impl GammaProfile for GapProfile {
    fn gamma(&self, m: i64) -> i64 {
        self.gap.eval(m + self.gap.h())
    }

    fn knot_genus(&self) -> u64 {
        self.gap.h() as u64
    }
}

/// Grading shift `s = ((2m − n)² − n) / 4n` of `n`-surgery in Spin^c structure `m`.
pub fn grading_shift(n: u64, m: i64) -> Rational {
    let n = n as i64;
    let t = 2 * m - n;
    Rational::new(t * t - n, 4 * n)
}

fn check_large_surgery(n: u64, g: u64, profile: &impl GammaProfile) -> Result<()> {
    let knot_genus = profile.knot_genus();
    if (n as i128) < 2 * knot_genus as i128 + 2 * g as i128 - 1 {
        return Err(Error::SmallSurgery { n, knot_genus, g });
    }
    Ok(())
}

fn shifted_gammas(m: i64, g: u64, profile: &impl GammaProfile) -> impl Iterator<Item = i64> + '_ {
    let g = g as i64;
    (0..=g).map(move |a| {
        let b = g - a;
        profile.gamma(m - b + a) + a
    })
}

/// Bottom correction term `−2 max_{a+b=g} (γ_{m−b+a} + a) + g + s` of
/// `n`-surgery on `B # K` in `#^{2g} S¹×S²`.
pub fn d_bottom(n: u64, m: i64, g: u64, profile: &impl GammaProfile) -> Result<Rational> {
    check_large_surgery(n, g, profile)?;
    let worst = shifted_gammas(m, g, profile).max().expect("g + 1 terms");
    Ok(Rational::from_integer(-2 * worst + g as i64) + grading_shift(n, m))
}

/// Top correction term; as [`d_bottom`] with the maximum replaced by a minimum.
pub fn d_top(n: u64, m: i64, g: u64, profile: &impl GammaProfile) -> Result<Rational> {
    check_large_surgery(n, g, profile)?;
    let best = shifted_gammas(m, g, profile).min().expect("g + 1 terms");
    Ok(Rational::from_integer(-2 * best + g as i64) + grading_shift(n, m))
}

/// The `q` values `−(q−1)/2, …, (q−1)/2`, stored as numerators over 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpincIndexRange {
    q: u64,
    doubled: Vec<i64>,
}

impl SpincIndexRange {
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Numerators over the common denominator 2.
    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    pub fn elements(&self) -> Vec<Rational> {
        self.doubled
            .iter()
            .map(|&k2| Rational::new(k2, 2))
            .collect()
    }
}

pub fn spinc_range(q: u64) -> SpincIndexRange {
    let q_i = q as i64;
    SpincIndexRange {
        q,
        doubled: (0..q_i).map(|t| 2 * t - (q_i - 1)).collect(),
    }
}

/// Which of the two bounds a correction term violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `d_b ≥ −g` failed.
    Bottom,
    /// `d_t ≤ g` failed.
    Top,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DinvEvaluation {
    pub k: Rational,
    pub m: i64,
    pub d_bottom: Rational,
    pub d_top: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DinvFailure {
    pub k: Rational,
    pub side: Side,
    pub value: Rational,
    pub bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DinvVerdict {
    pub evaluations: Vec<DinvEvaluation>,
    pub failures: Vec<DinvFailure>,
}

impl DinvVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Genus `(d−1)(d−2)/2 − Σδ` forced on a degree `d` curve with these singular points.
pub(crate) fn genus_from_degree(d: u64, total_delta: u64) -> i64 {
    ((d - 1) * (d - 2) / 2) as i64 - total_delta as i64
}

/// Evaluates `d_b(Y, 𝔰_{kd}) ≥ −g` and `d_t(Y, 𝔰_{kd}) ≤ g` for every
/// `k ∈ 𝒮_d`, with `Y` the boundary of a neighbourhood of the curve
/// (`d²`-surgery on `B # K_1 # … # K_n`).
pub fn check_dinvariant_bounds(
    d: u64,
    g: u64,
    sings: &[NumericalSemigroup],
) -> Result<DinvVerdict> {
    if d < 3 {
        return Err(Error::DegreeTooSmall(d));
    }
    if sings.is_empty() {
        return Err(Error::NoSingularities);
    }
    let total_delta: u64 = sings.iter().map(NumericalSemigroup::delta).sum();
    let expected = genus_from_degree(d, total_delta);
    if expected != g as i64 {
        return Err(Error::GenusFormula { expected, g });
    }
    let profile = GapProfile::from_semigroups(sings)?;
    let n = d * d;
    let g_i = g as i64;
    let mut evaluations = Vec::with_capacity(d as usize);
    let mut failures = Vec::new();
    for &k2 in spinc_range(d).doubled() {
        let (m, rem) = (k2 * d as i64).div_rem(&2);
        debug_assert_eq!(rem, 0, "kd is integral for k in S_d");
        let k = Rational::new(k2, 2);
        let bottom = d_bottom(n, m, g, &profile)?;
        let top = d_top(n, m, g, &profile)?;
        if bottom < Rational::from_integer(-g_i) {
            failures.push(DinvFailure {
                k,
                side: Side::Bottom,
                value: bottom,
                bound: -g_i,
            });
        }
        if top > Rational::from_integer(g_i) {
            failures.push(DinvFailure {
                k,
                side: Side::Top,
                value: top,
                bound: g_i,
            });
        }
        evaluations.push(DinvEvaluation {
            k,
            m,
            d_bottom: bottom,
            d_top: top,
        });
    }
    Ok(DinvVerdict {
        evaluations,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    struct Constant(i64);
    impl GammaProfile for Constant {
        fn gamma(&self, _m: i64) -> i64 {
            self.0
        }
        fn knot_genus(&self) -> u64 {
            0
        }
    }

    #[test]
    fn gamma_examples() {
        let negative_trefoil = Staircase::from_points([(1, 1)]).unwrap();
        assert_eq!(negative_trefoil.gamma(0), 1);
        let positive_trefoil = Staircase::from_points([(1, 0), (0, 1)]).unwrap();
        assert_eq!(positive_trefoil.gamma(1), 0);
        let st = staircase_from_semigroup(&sg(&[4, 7]));
        let max_j = st.vertices().iter().map(|v| v.1).max().unwrap();
        let min_i = st.vertices().iter().map(|v| v.0).min().unwrap();
        for m in max_j..max_j + 5 {
            assert_eq!(st.gamma(m), min_i);
        }
    }

    #[test]
    fn empty_staircase_rejected() {
        assert_eq!(Staircase::from_points([]), Err(Error::EmptyStaircase));
    }

    #[test]
    fn antichain_reduction() {
        let st = Staircase::from_points([(0, 3), (1, 1), (2, 0), (1, 2), (3, 3), (2, 1)]).unwrap();
        assert_eq!(st.vertices(), &[(0, 3), (1, 1), (2, 0)]);
    }

    #[test]
    fn staircases_of_small_semigroups() {
        assert_eq!(
            staircase_from_semigroup(&sg(&[2, 3])).vertices(),
            &[(0, 1), (1, 0)]
        );
        assert_eq!(staircase_from_semigroup(&sg(&[1])).vertices(), &[(0, 0)]);
        let s = sg(&[4, 7]);
        let st = staircase_from_semigroup(&s);
        let gap = GapFunction::from_semigroup(&s);
        for m in -11..=11 {
            assert_eq!(st.gamma(m), gap.eval(m + 9), "m = {m}");
        }
        assert_eq!(st.genus(), 9);
    }

    #[test]
    fn sum_with_unknot_is_identity() {
        let unknot = Staircase::from_points([(0, 0)]).unwrap();
        let st = staircase_from_semigroup(&sg(&[3, 5]));
        assert_eq!(staircase_sum(&st, &unknot), st);
    }

    #[test]
    fn trefoil_sum_gamma0() {
        use crate::gapfn::diamond;
        let t = staircase_from_semigroup(&sg(&[2, 3]));
        let gap = GapFunction::from_semigroup(&sg(&[2, 3]));
        let brute = t
            .vertices()
            .iter()
            .flat_map(|a| t.vertices().iter().map(move |b| (a.0 + b.0, a.1 + b.1)))
            .map(|(i, j)| i.max(j))
            .min()
            .unwrap();
        assert_eq!(brute, 1);
        assert_eq!(staircase_sum(&t, &t).gamma(0), 1);
        assert_eq!(diamond(&gap, &gap).eval(2), 1);

        let negative = Staircase::from_points([(1, 1)]).unwrap();
        assert_eq!(staircase_sum(&negative, &negative).gamma(0), 2);
    }

    #[test]
    fn spinc_examples() {
        assert_eq!(
            spinc_range(5).elements(),
            [-2, -1, 0, 1, 2].map(Rational::from_integer).to_vec()
        );
        assert_eq!(
            spinc_range(6).elements(),
            [-5, -3, -1, 1, 3, 5].map(|x| Rational::new(x, 2)).to_vec()
        );
        assert_eq!(spinc_range(1).elements(), vec![Rational::from_integer(0)]);
    }

    #[test]
    fn genus_zero_reduces_to_single_gamma() {
        let p = GapProfile::new(GapFunction::from_semigroup(&sg(&[3, 4])));
        for m in -20..=20 {
            let expected = Rational::from_integer(-2 * p.gamma(m)) + grading_shift(49, m);
            assert_eq!(d_bottom(49, m, 0, &p).unwrap(), expected);
            assert_eq!(d_top(49, m, 0, &p).unwrap(), expected);
        }
    }

    #[test]
    fn unknot_surgery_one() {
        let unknot = GapProfile::new(GapFunction::from_semigroup(&sg(&[1])));
        assert_eq!(
            d_bottom(1, 0, 0, &unknot).unwrap(),
            Rational::from_integer(0)
        );
    }

    #[test]
    fn genus_one_trefoil_spot_value() {
        // enumerate (a, b) in {(0,1), (1,0)} by hand with γ from the staircase
        let t = staircase_from_semigroup(&sg(&[2, 3]));
        let (n, m) = (25u64, 0i64);
        let terms = [t.gamma(m - 1), t.gamma(m + 1) + 1];
        let s = grading_shift(n, m);
        let lo = Rational::from_integer(-2 * terms.iter().max().unwrap() + 1) + s;
        let hi = Rational::from_integer(-2 * terms.iter().min().unwrap() + 1) + s;
        assert_eq!(d_bottom(n, m, 1, &t).unwrap(), lo);
        assert_eq!(d_top(n, m, 1, &t).unwrap(), hi);
        assert!(hi >= lo);
    }

    #[test]
    fn small_surgery_rejected() {
        let p = GapProfile::new(GapFunction::from_semigroup(&sg(&[4, 7])));
        assert!(matches!(
            d_bottom(10, 0, 1, &p),
            Err(Error::SmallSurgery {
                n: 10,
                knot_genus: 9,
                g: 1
            })
        ));
        assert!(d_top(19, 0, 1, &p).is_ok());
        assert!(d_bottom(1, 0, 0, &Constant(0)).is_ok());
    }

    #[test]
    fn dinvariant_examples() {
        assert!(!check_dinvariant_bounds(6, 1, &[sg(&[4, 7])])
            .unwrap()
            .passed());
        assert!(check_dinvariant_bounds(21, 1, &[sg(&[8, 55])])
            .unwrap()
            .passed());
        assert_eq!(
            check_dinvariant_bounds(3, 1, &[]),
            Err(Error::NoSingularities)
        );
        assert!(matches!(
            check_dinvariant_bounds(6, 2, &[sg(&[4, 7])]),
            Err(Error::GenusFormula { expected: 1, g: 2 })
        ));
    }

    #[test]
    fn dinvariant_denominators() {
        for (d, g, gens) in [
            (6u64, 1u64, [4u64, 7]),
            (21, 1, [8, 55]),
            (7, 3, [4, 9]),
            (9, 8, [5, 11]),
        ] {
            let v = check_dinvariant_bounds(d, g, &[sg(&gens)]).unwrap();
            let four_n = 4 * (d * d) as i64;
            for e in &v.evaluations {
                assert_eq!(four_n % e.d_bottom.denom(), 0);
                assert_eq!(four_n % e.d_top.denom(), 0);
                assert!(e.d_top >= e.d_bottom);
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn staircase_is_antichain(pts in prop::collection::vec((-20i64..20, -20i64..20), 1..30)) {
                let st = Staircase::from_points(pts.clone()).unwrap();
                let v = st.vertices();
                for a in v {
                    for b in v {
                        if a != b {
                            prop_assert!(!(a.0 <= b.0 && a.1 <= b.1));
                        }
                    }
                }
                // γ only depends on the minimal elements
                for m in -40..40 {
                    let brute = pts.iter().map(|&(i, j)| i.max(j - m)).min().unwrap();
                    prop_assert_eq!(st.gamma(m), brute);
                }
            }
        }
    }
}
