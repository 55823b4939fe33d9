//! Spectra of `x^p − y^q` and semicontinuity.

use crate::Rational;

/// A multiset of rationals in `(0, 2)` over a common denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumMultiset {
    denom: u64,
    // (numerator, multiplicity), numerators strictly increasing
    entries: Vec<(u64, u64)>,
}

impl SpectrumMultiset {
    pub fn denom(&self) -> u64 {
        self.denom
    }

    pub fn entries(&self) -> &[(u64, u64)] {
        &self.entries
    }

    /// Distinct values with their multiplicities, ascending.
    pub fn values(&self) -> impl Iterator<Item = (Rational, u64)> + '_ {
        self.entries
            .iter()
            .map(move |&(n, mult)| (Rational::new(n as i64, self.denom as i64), mult))
    }

    /// Total count with multiplicity.
    pub fn len(&self) -> u64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, x: Rational) -> u64 {
        match self.position_above(x, true) {
            i if i > 0 && self.value_is(i - 1, x) => self.entries[i - 1].1,
            _ => 0,
        }
    }

    fn value_is(&self, i: usize, x: Rational) -> bool {
        self.entries[i].0 as i128 * *x.denom() as i128 == *x.numer() as i128 * self.denom as i128
    }

    // First index whose value is > x (or >= x when `inclusive` is false).
    fn position_above(&self, x: Rational, inclusive: bool) -> usize {
        let (xn, xd) = (*x.numer() as i128, *x.denom() as i128);
        let den = self.denom as i128;
        self.entries.partition_point(|&(n, _)| {
            let lhs = n as i128 * xd;
            let rhs = xn * den;
            if inclusive {
                lhs <= rhs
            } else {
                lhs < rhs
            }
        })
    }

    /// `#(Σ ∩ (lo, hi))` with multiplicity; open at both ends.
    pub fn count_open(&self, lo: Rational, hi: Rational) -> u64 {
        let start = self.position_above(lo, true);
        let end = self.position_above(hi, false);
        if end <= start {
            return 0;
        }
        self.entries[start..end].iter().map(|e| e.1).sum()
    }
}

/// `Σ_{p,q} = { i/p + j/q : 1 ≤ i < p, 1 ≤ j < q }` with multiplicities.
///
/// With `p = q = d` this is `Σ_{d,d}`, the spectrum of `d` lines through a point.
pub fn spectrum_torus(p: u64, q: u64) -> SpectrumMultiset {
    let denom = p * q;
    let mut counts = vec![0u64; 2 * denom as usize];
    for i in 1..p {
        for j in 1..q {
            counts[(i * q + j * p) as usize] += 1;
        }
    }
    let entries = counts
        .into_iter()
        .enumerate()
        .filter(|e| e.1 > 0)
        .map(|(n, mult)| (n as u64, mult))
        .collect();
    SpectrumMultiset { denom, entries }
}

/// Right-hand side of `(SS_l)`: `#(Σ_{d,d} ∩ (0, l/d)) = (l−1)(l−2)/2`.
pub fn ss_bound(l: u64) -> u64 {
    if l < 2 {
        0
    } else {
        (l - 1) * (l - 2) / 2
    }
}

/// All points where some `#(Σ ∩ (x, x+1))` can change, plus one point strictly
/// inside every gap between consecutive critical points.
pub(crate) fn critical_points<'a, I>(spectra: I) -> Vec<Rational>
where
    I: IntoIterator<Item = &'a SpectrumMultiset>,
{
    let one = Rational::from_integer(1);
    let mut pts: Vec<Rational> = spectra
        .into_iter()
        .flat_map(|s| s.values().flat_map(move |(v, _)| [v, v - one]))
        .collect();
    pts.sort_unstable();
    pts.dedup();
    let mids: Vec<Rational> = pts
        .windows(2)
        .map(|w| (w[0] + w[1]) / Rational::from_integer(2))
        .collect();
    pts.extend(mids);
    pts.sort_unstable();
    pts
}
