use curvebound_core::floer::{staircase_from_semigroup, staircase_sum};
use curvebound_core::gapfn::{diamond, GapFunction, MultiCounting};
use curvebound_core::semigroup::NumericalSemigroup;
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn members_up_to(gens: &[u64], n: usize) -> Vec<bool> {
    let mut m = vec![false; n + 1];
    m[0] = true;
    for k in 1..=n {
        m[k] = gens.iter().any(|&a| k >= a as usize && m[k - a as usize]);
    }
    m
}

/// `I(s)` straight from the definition: elements of `G ∪ Z_{<0}` that are `≥ s`.
struct BruteGap {
    gaps: Vec<i64>,
}

impl BruteGap {
    fn new(gens: &[u64], limit: usize) -> Self {
        let m = members_up_to(gens, limit);
        BruteGap {
            gaps: (0..=limit).filter(|&k| !m[k]).map(|k| k as i64).collect(),
        }
    }

    fn h(&self) -> i64 {
        self.gaps.len() as i64
    }

    fn eval(&self, s: i64) -> i64 {
        let negatives = if s < 0 { -s } else { 0 };
        negatives + self.gaps.iter().filter(|&&g| g >= s).count() as i64
    }
}

fn brute_min_conv(parts: &[&BruteGap], s: i64, lo: i64, hi: i64) -> i64 {
    match parts {
        [only] => only.eval(s),
        [first, rest @ ..] => (lo..=hi)
            .map(|a| first.eval(a) + brute_min_conv(rest, s - a, lo, hi))
            .min()
            .unwrap(),
        [] => unreachable!(),
    }
}

fn symmetric_semigroups(max_conductor: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for p in 2..=max_conductor {
        for q in p + 1..=max_conductor + 1 {
            if (p - 1) * (q - 1) > max_conductor {
                break;
            }
            if p.gcd(&q) == 1 {
                out.push(vec![p, q]);
            }
        }
    }
    // iterated torus knot semigroups ⟨2a, 2b, c⟩
    for (a, b, c) in [
        (2, 3, 13),
        (2, 3, 15),
        (2, 5, 21),
        (3, 4, 25),
        (2, 7, 29),
        (3, 5, 31),
    ] {
        out.push(vec![2 * a, 2 * b, c]);
    }
    out
}

#[test]
fn staircase_gamma_matches_gap_function() {
    let sgs = symmetric_semigroups(400);
    assert!(sgs.len() > 300);
    let mut mismatches = 0;
    for gens in &sgs {
        let s = NumericalSemigroup::from_generators(gens).unwrap();
        assert!(s.conductor() <= 400 || gens.len() == 3);
        let brute = BruteGap::new(gens, 2 * s.conductor() as usize + 2);
        let h = brute.h();
        assert_eq!(h as u64, s.delta());
        let st = staircase_from_semigroup(&s);
        for m in -h - 2..=h + 2 {
            if st.gamma(m) != brute.eval(m + h) {
                mismatches += 1;
            }
        }
    }
    assert_eq!(mismatches, 0);
}

fn small_pool() -> Vec<Vec<u64>> {
    let mut pool = symmetric_semigroups(40);
    pool.retain(|g| g.len() == 2);
    pool
}

#[test]
fn staircase_sum_matches_diamond() {
    let pool = small_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..50 {
        let a = pool.choose(&mut rng).unwrap();
        let b = pool.choose(&mut rng).unwrap();
        let (sa, sb) = (
            NumericalSemigroup::from_generators(a).unwrap(),
            NumericalSemigroup::from_generators(b).unwrap(),
        );
        let sum = staircase_sum(
            &staircase_from_semigroup(&sa),
            &staircase_from_semigroup(&sb),
        );
        let conv = diamond(
            &GapFunction::from_semigroup(&sa),
            &GapFunction::from_semigroup(&sb),
        );
        let (ba, bb) = (BruteGap::new(a, 100), BruteGap::new(b, 100));
        let h = ba.h() + bb.h();
        assert_eq!(conv.h(), h);
        for m in -h - 2..=h + 2 {
            let brute = brute_min_conv(&[&ba, &bb], m + h, -h - 4, h + 90);
            assert_eq!(sum.gamma(m), conv.eval(m + h), "{a:?} # {b:?}, m = {m}");
            assert_eq!(conv.eval(m + h), brute, "{a:?} # {b:?}, m = {m}");
        }
    }
}

fn brute_partition_r(members: &[Vec<bool>], u: usize) -> i64 {
    let counts: Vec<Vec<i64>> = members
        .iter()
        .map(|m| {
            let mut c = vec![0i64; u + 1];
            for k in 1..=u {
                c[k] = c[k - 1] + m[k - 1] as i64;
            }
            c
        })
        .collect();
    let mut best = i64::MAX;
    for a in 0..=u {
        for b in 0..=u - a {
            best = best.min(counts[0][a] + counts[1][b] + counts[2][u - a - b]);
        }
    }
    best
}

#[test]
fn triple_diamond_matches_partitions() {
    let triples: [[&[u64]; 3]; 6] = [
        [&[2, 3], &[2, 3], &[2, 3]],
        [&[2, 5], &[3, 4], &[2, 3]],
        [&[3, 5], &[2, 7], &[4, 5]],
        [&[4, 7], &[2, 3], &[3, 7]],
        [&[4, 6, 13], &[2, 5], &[3, 4]],
        [&[5, 6], &[3, 8], &[2, 9]],
    ];
    for triple in triples {
        let sgs: Vec<NumericalSemigroup> = triple
            .iter()
            .map(|g| NumericalSemigroup::from_generators(g).unwrap())
            .collect();
        let counting = MultiCounting::new(&sgs).unwrap();
        let members: Vec<Vec<bool>> = triple.iter().map(|g| members_up_to(g, 200)).collect();
        for u in 0..=200usize {
            assert_eq!(
                counting.eval(u as u64) as i64,
                brute_partition_r(&members, u),
                "{triple:?}, u = {u}"
            );
        }
    }
}
