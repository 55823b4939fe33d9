//! Numerical semigroups of unibranched singular points.

use num_integer::Integer;

use crate::{Error, Result};

/// A numerical semigroup `S ⊆ Z_{≥0}` given by generators with gcd one.
///
/// Membership is tabulated on `[0, conductor)`; everything at or above the
/// conductor belongs to `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    conductor: u64,
    membership: Vec<bool>,
    gaps: Vec<u64>,
    // prefix[m] = #(S ∩ [0, m)) for m in 0..=conductor
    prefix: Vec<u64>,
}

impl NumericalSemigroup {
    /// Builds the semigroup generated by `gens`.
    ///
    /// The membership table is filled by an additive sieve which stops as soon
    /// as `min(gens)` consecutive members have been found; from there on every
    /// integer is reachable.
    pub fn from_generators(gens: &[u64]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if gens.contains(&0) {
            return Err(Error::ZeroGenerator);
        }
        let mut generators = gens.to_vec();
        generators.sort_unstable();
        generators.dedup();
        let g = generators.iter().fold(0u64, |acc, &x| acc.gcd(&x));
        if g != 1 {
            return Err(Error::NotNumericalSemigroup(generators, g));
        }

        let smallest = generators[0];
        let mut table: Vec<bool> = Vec::new();
        let mut run = 0u64;
        let mut n = 0u64;
        let conductor = loop {
            let member = n == 0
                || generators
                    .iter()
                    .take_while(|&&a| a <= n)
                    .any(|&a| table[(n - a) as usize]);
            table.push(member);
            if member {
                run += 1;
                if run == smallest {
                    break n + 1 - smallest;
                }
            } else {
                run = 0;
            }
            n += 1;
        };
        table.truncate(conductor as usize);

        let gaps: Vec<u64> = (0..conductor).filter(|&k| !table[k as usize]).collect();
        let mut prefix = Vec::with_capacity(conductor as usize + 1);
        let mut count = 0u64;
        prefix.push(0);
        for &member in &table {
            if member {
                count += 1;
            }
            prefix.push(count);
        }

        Ok(NumericalSemigroup {
            generators,
            conductor,
            membership: table,
            gaps,
            prefix,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Smallest `c` with `[c, ∞) ⊆ S`.
    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// The gap sequence `G = Z_{≥0} \ S`, ascending.
    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    /// Number of gaps; the genus of the link.
    pub fn delta(&self) -> u64 {
        self.gaps.len() as u64
    }

    /// Milnor number `2δ` of a singularity with this semigroup.
    pub fn milnor(&self) -> u64 {
        2 * self.delta()
    }

    pub fn contains(&self, n: u64) -> bool {
        n >= self.conductor || self.membership[n as usize]
    }

    /// Whether `n ∈ S ⇔ c − 1 − n ∉ S` on `[0, c)`. Semigroups of plane
    /// curve singularities always have this property.
    pub fn is_symmetric(&self) -> bool {
        self.conductor == 2 * self.delta()
    }

    /// `R(m) = #(S ∩ [0, m))`.
    pub fn count_below(&self, m: u64) -> u64 {
        if m > self.conductor {
            m - self.delta()
        } else {
            self.prefix[m as usize]
        }
    }

    /// Coefficients of `Δ(t) = 1 + (t − 1) Σ_{g ∈ G} t^g`, lowest degree first.
    pub fn alexander_polynomial(&self) -> Vec<i64> {
        let mut coeffs = vec![0i64; self.conductor as usize + 1];
        coeffs[0] = 1;
        for &g in &self.gaps {
            coeffs[g as usize + 1] += 1;
            coeffs[g as usize] -= 1;
        }
        coeffs
    }

    /// The coefficients `k_0, …, k_{c−2}` in
    /// `Δ(t) = 1 + (t − 1)δ + (t − 1)² Σ k_j t^j`, where `k_j` counts gaps
    /// strictly greater than `j`. Empty when `δ = 0`.
    pub fn alexander_second_expansion(&self) -> Vec<u64> {
        if self.gaps.is_empty() {
            return Vec::new();
        }
        let last = self.conductor - 2;
        let mut remaining = self.delta();
        let mut gaps = self.gaps.iter().peekable();
        (0..=last)
            .map(|j| {
                while let Some(&&g) = gaps.peek() {
                    if g <= j {
                        remaining -= 1;
                        gaps.next();
                    } else {
                        break;
                    }
                }
                remaining
            })
            .collect()
    }
}

/// A singular point with one Puiseux pair `(p, q)`; its link is the
/// `(p, q)` torus knot and its multiplicity is `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplePairSingularity {
    p: u64,
    q: u64,
}

impl SimplePairSingularity {
    pub fn new(p: u64, q: u64) -> Result<Self> {
        let invalid = |reason| Err(Error::InvalidPair { p, q, reason });
        if p < 2 {
            return invalid("p must be at least 2 (p = 1 is a smooth point)");
        }
        if p >= q {
            return invalid("p must be smaller than q");
        }
        if p.gcd(&q) != 1 {
            return invalid("p and q must be coprime");
        }
        Ok(SimplePairSingularity { p, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn multiplicity(&self) -> u64 {
        self.p
    }

    /// `δ = (p − 1)(q − 1)/2`.
    pub fn delta(&self) -> u64 {
        (self.p - 1) * (self.q - 1) / 2
    }

    pub fn semigroup(&self) -> NumericalSemigroup {
        NumericalSemigroup::from_generators(&[self.p, self.q])
            .expect("coprime pair generates a numerical semigroup")
    }

    /// Orevkov's `M̄ = p + q − ⌊q/p⌋ − 3`.
    pub fn orevkov_mbar(&self) -> u64 {
        self.p + self.q - self.q / self.p - 3
    }
}
