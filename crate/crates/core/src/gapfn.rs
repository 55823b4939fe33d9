//! Gap functions, their min-plus convolution and the multi-point counting function.

use crate::semigroup::NumericalSemigroup;
use crate::{Error, Result};

/// `I(s) = #{k ∈ G ∪ Z_{<0} : k ≥ s}` as a finite table with linear tails.
///
/// The table covers `s ∈ [0, top]`. Below zero `I(s) = h − s`; above `top`
/// the function vanishes. The same representation holds for min-plus
/// convolutions of gap functions, which is why `top` is stored separately
/// from any semigroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapFunction {
    h: i64,
    values: Vec<i64>,
}

impl GapFunction {
    pub fn from_semigroup(s: &NumericalSemigroup) -> Self {
        let gaps = s.gaps();
        let top = s.conductor() as usize;
        let mut values = Vec::with_capacity(top + 1);
        let mut idx = 0;
        for k in 0..=top as u64 {
            while idx < gaps.len() && gaps[idx] < k {
                idx += 1;
            }
            values.push((gaps.len() - idx) as i64);
        }
        GapFunction {
            h: gaps.len() as i64,
            values,
        }
    }

    /// Number of gaps, `I(0)`.
    pub fn h(&self) -> i64 {
        self.h
    }

    /// Last point of the stored table; `I(s) = 0` for `s ≥ top`.
    pub fn top(&self) -> i64 {
        self.values.len() as i64 - 1
    }

    pub fn eval(&self, s: i64) -> i64 {
        if s < 0 {
            self.h - s
        } else if s > self.top() {
            0
        } else {
            self.values[s as usize]
        }
    }

    /// Checks the structural invariants: `I(0) = h`, steps in `{0, 1}`,
    /// and `I(top) = 0`.
    pub fn is_well_formed(&self) -> bool {
        self.values.first() == Some(&self.h)
            && self.values.last() == Some(&0)
            && self.values.windows(2).all(|w| matches!(w[0] - w[1], 0 | 1))
    }
}

/// `(I ◊ I')(s) = min_m { I(m) + I'(s − m) }`.
///
/// Only splits with `m ∈ [max(0, s − top'), min(s, top)]` are evaluated.
/// Outside that window one of the two summands is on a linear tail of slope
/// −1 (or flat at zero) while the other has slope in `{0, −1}`, so stepping
/// back toward the window never increases the sum.
pub fn diamond(a: &GapFunction, b: &GapFunction) -> GapFunction {
    let (ta, tb) = (a.top(), b.top());
    let top = ta + tb;
    let values = (0..=top)
        .map(|s| {
            let lo = (s - tb).max(0);
            let hi = s.min(ta);
            (lo..=hi)
                .map(|m| a.values[m as usize] + b.values[(s - m) as usize])
                .min()
                .expect("window is nonempty")
        })
        .collect();
    GapFunction {
        h: a.h + b.h,
        values,
    }
}

/// The counting function of several singular points,
/// `R(u) = min_{k_1+…+k_n=u} Σ #(S_i ∩ [0, k_i))`, evaluated through
/// `R(u) = u − Σh_i + (I_1 ◊ … ◊ I_n)(u)`.
#[derive(Debug, Clone)]
pub struct MultiCounting {
    combined: GapFunction,
}

impl MultiCounting {
    pub fn new<'a, I>(sings: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a NumericalSemigroup>,
    {
        let combined = sings
            .into_iter()
            .map(GapFunction::from_semigroup)
            .reduce(|acc, next| diamond(&acc, &next))
            .ok_or(Error::NoSingularities)?;
        Ok(MultiCounting { combined })
    }

    pub fn gap_function(&self) -> &GapFunction {
        &self.combined
    }

    /// Total number of gaps `h = Σ δ_i`.
    pub fn h(&self) -> i64 {
        self.combined.h
    }

    pub fn eval(&self, u: u64) -> u64 {
        let u = u as i64;
        (u - self.combined.h + self.combined.eval(u)) as u64
    }
}

/// One-shot evaluation of the multi-point counting function.
pub fn multi_r(sings: &[NumericalSemigroup], u: u64) -> Result<u64> {
    Ok(MultiCounting::new(sings)?.eval(u))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sg(g: &[u64]) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(g).unwrap()
    }

    fn brute_diamond(a: &GapFunction, b: &GapFunction, s: i64, slack: i64) -> i64 {
        let span = a.top() + b.top() + slack;
        (-span..=span)
            .map(|m| a.eval(m) + b.eval(s - m))
            .min()
            .unwrap()
    }

    fn brute_partition_r(sings: &[NumericalSemigroup], u: u64) -> u64 {
        match sings {
            [] => unreachable!(),
            [only] => only.count_below(u),
            [first, rest @ ..] => (0..=u)
                .map(|k| first.count_below(k) + brute_partition_r(rest, u - k))
                .min()
                .unwrap(),
        }
    }

    #[test]
    fn t47_values() {
        let i = GapFunction::from_semigroup(&sg(&[4, 7]));
        assert_eq!(i.eval(1), 9);
        assert_eq!(i.eval(4), 6);
        assert_eq!(i.eval(11), 2);
        assert_eq!(i.eval(18), 0);
        assert_eq!(i.eval(0), 9);
        assert_eq!(i.eval(-3), 12);
        assert!(i.is_well_formed());
    }

    #[test]
    fn trefoil_values() {
        let i = GapFunction::from_semigroup(&sg(&[2, 3]));
        assert_eq!(i.eval(1), 1);
        assert_eq!(i.eval(2), 0);
        assert_eq!(i.eval(-1), 2);
    }

    #[test]
    fn k_j_is_gap_function_shifted() {
        let s = sg(&[4, 7]);
        let i = GapFunction::from_semigroup(&s);
        for (j, k) in s.alexander_second_expansion().iter().enumerate() {
            assert_eq!(i.eval(j as i64 + 1), *k as i64);
        }
    }

    #[test]
    fn unit_for_diamond() {
        let unit = GapFunction::from_semigroup(&sg(&[1]));
        for gens in [&[2u64, 3][..], &[4, 7], &[3, 5, 7], &[6, 9, 19]] {
            let i = GapFunction::from_semigroup(&sg(gens));
            let mu = i.top();
            for s in -mu - 2..=mu + 2 {
                assert_eq!(brute_diamond(&i, &unit, s, 4), i.eval(s));
            }
            assert_eq!(diamond(&i, &unit), i);
            assert_eq!(diamond(&unit, &i), i);
        }
    }

    #[test]
    fn trefoil_squared() {
        let t = GapFunction::from_semigroup(&sg(&[2, 3]));
        assert_eq!(brute_diamond(&t, &t, 2, 4), 1);
        assert_eq!(diamond(&t, &t).eval(2), 1);
    }

    #[test]
    fn two_trefoils_r4() {
        let s = sg(&[2, 3]);
        let pair = [s.clone(), s.clone()];
        assert_eq!(brute_partition_r(&pair, 4), 2);
        assert_eq!(multi_r(&pair, 4).unwrap(), 2);
    }

    #[test]
    fn empty_list_rejected() {
        assert_eq!(multi_r(&[], 3), Err(Error::NoSingularities));
    }

    #[test]
    fn zero_block_contributes_nothing() {
        let s = sg(&[5, 11]);
        assert_eq!(s.count_below(0), 0);
        let pair = [s.clone(), sg(&[2, 3])];
        // u = 0 forces every k_i = 0
        assert_eq!(multi_r(&pair, 0).unwrap(), 0);
    }

    #[test]
    fn single_point_is_count_below() {
        for gens in [&[2u64, 3][..], &[4, 7], &[5, 11], &[3, 7, 11]] {
            let s = sg(gens);
            let mc = MultiCounting::new([&s]).unwrap();
            for u in 0..=2 * s.conductor() + 3 {
                assert_eq!(mc.eval(u), s.count_below(u));
            }
        }
    }

    #[test]
    fn r_relation() {
        for gens in [&[2u64, 3][..], &[4, 7], &[5, 11], &[3, 7, 11], &[1]] {
            let s = sg(gens);
            let i = GapFunction::from_semigroup(&s);
            for m in 0..=s.milnor() as i64 + 10 {
                assert_eq!(s.count_below(m as u64) as i64, m - i.h() + i.eval(m));
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn semigroup(max_gen: u64) -> impl Strategy<Value = NumericalSemigroup> {
            prop::collection::vec(1u64..max_gen, 1..4)
                .prop_filter_map("gcd 1", |g| NumericalSemigroup::from_generators(&g).ok())
        }

        fn small_semigroup() -> impl Strategy<Value = NumericalSemigroup> {
            semigroup(16).prop_filter("conductor <= 40", |s| s.conductor() <= 40)
        }

        proptest! {
            #[test]
            fn diamond_matches_brute_force(a in semigroup(14), b in semigroup(14)) {
                let (ia, ib) = (GapFunction::from_semigroup(&a), GapFunction::from_semigroup(&b));
                let d = diamond(&ia, &ib);
                prop_assert!(d.is_well_formed());
                prop_assert_eq!(d.h(), ia.h() + ib.h());
                for s in -10..=d.top() + 10 {
                    prop_assert_eq!(d.eval(s), brute_diamond(&ia, &ib, s, 6));
                }
            }

            #[test]
            fn diamond_commutes(a in semigroup(20), b in semigroup(20)) {
                let (ia, ib) = (GapFunction::from_semigroup(&a), GapFunction::from_semigroup(&b));
                prop_assert_eq!(diamond(&ia, &ib), diamond(&ib, &ia));
            }

            #[test]
            fn diamond_associates(a in semigroup(12), b in semigroup(12), c in semigroup(12)) {
                prop_assume!(a.milnor() + b.milnor() + c.milnor() <= 60);
                let (ia, ib, ic) = (
                    GapFunction::from_semigroup(&a),
                    GapFunction::from_semigroup(&b),
                    GapFunction::from_semigroup(&c),
                );
                let left = diamond(&diamond(&ia, &ib), &ic);
                let right = diamond(&ia, &diamond(&ib, &ic));
                for s in -10..=left.top() + 10 {
                    prop_assert_eq!(left.eval(s), right.eval(s));
                }
            }

            #[test]
            fn multi_r_matches_partitions(
                sings in prop::collection::vec(small_semigroup(), 1..=3),
                u in 0u64..=200,
            ) {
                prop_assert_eq!(multi_r(&sings, u).unwrap(), brute_partition_r(&sings, u));
            }
        }
    }
}
