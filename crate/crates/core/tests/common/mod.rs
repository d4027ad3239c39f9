//! Oracles shared by the integration suites. Nothing here goes through the
//! crate's samplers: random structures are drawn pair by pair with a plain
//! seeded generator, and probabilities come from direct enumeration.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use statrs::distribution::{ChiSquared, ContinuousCDF};
use stratlab::interpretation::ArithSegment;
use stratlab::{DoubleDigraph, Node};

/// Per-pair Bernoulli double digraph on `1..=n`.
pub fn bernoulli_digraph(n: usize, p1: f64, p2: f64, seed: u64) -> DoubleDigraph {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut r1 = Vec::new();
    let mut r2 = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            if a == b {
                continue;
            }
            if rng.random_bool(p1) {
                r1.push((a, b));
            }
            if rng.random_bool(p2) {
                r2.push((a, b));
            }
        }
    }
    DoubleDigraph::from_pairs(n, r1, r2).unwrap()
}

/// All ordered pairs `(a, b)`, `a != b`, in lexicographic order.
pub fn ordered_pairs(n: usize) -> Vec<(Node, Node)> {
    (1..=n)
        .flat_map(|a| (1..=n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect()
}

/// Every double digraph on `1..=n` with its probability under independent
/// memberships at `(p1, p2)`. `2^(2 n (n-1))` structures.
pub fn enumerate_double_digraphs(n: usize, p1: f64, p2: f64) -> Vec<(DoubleDigraph, f64)> {
    let pairs = ordered_pairs(n);
    let m = pairs.len();
    assert!(2 * m <= 20, "enumeration too large");
    (0u32..1 << (2 * m))
        .map(|mask| {
            let mut weight = 1.0;
            let mut r1 = Vec::new();
            let mut r2 = Vec::new();
            for (i, &pair) in pairs.iter().enumerate() {
                let in1 = mask >> i & 1 == 1;
                let in2 = mask >> (m + i) & 1 == 1;
                weight *= if in1 { p1 } else { 1.0 - p1 };
                weight *= if in2 { p2 } else { 1.0 - p2 };
                if in1 {
                    r1.push(pair);
                }
                if in2 {
                    r2.push(pair);
                }
            }
            (DoubleDigraph::from_pairs(n, r1, r2).unwrap(), weight)
        })
        .collect()
}

/// Upper tail `P(X >= stat)` for `X ~ chi^2(df)`.
pub fn chi_square_p_value(observed: &[u64], expected_prob: &[f64]) -> f64 {
    let total: u64 = observed.iter().sum();
    let stat: f64 = observed
        .iter()
        .zip(expected_prob)
        .map(|(&o, &p)| {
            let e = p * total as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    let df = (observed.len() - 1) as f64;
    1.0 - ChiSquared::new(df).unwrap().cdf(stat)
}

/// Mean, variance, and the standard errors of both.
pub fn moments(xs: &[f64]) -> (f64, f64, f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let m4 = xs.iter().map(|x| (x - mean).powi(4)).sum::<f64>() / n;
    let se_mean = (var / n).sqrt();
    let se_var = ((m4 - var * var) / n).max(0.0).sqrt();
    (mean, var, se_mean, se_var)
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let cov: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let vx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let vy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    cov / (vx * vy).sqrt()
}

/// Compares an interpreted segment with integer arithmetic on `0..=m`,
/// tuple by tuple.
pub fn arithmetic_matches_integers(a: &ArithSegment) -> Result<(), String> {
    let m = a.bound();
    for i in 0..=m {
        for j in 0..=m {
            if a.leq(i, j) != (i <= j) {
                return Err(format!("leq({i}, {j}) wrong at bound {m}"));
            }
            if a.succ(i, j) != (i + 1 == j) {
                return Err(format!("succ({i}, {j}) wrong at bound {m}"));
            }
            for k in 0..=m {
                if a.add(i, j, k) != (i + j == k) {
                    return Err(format!("add({i}, {j}, {k}) wrong at bound {m}"));
                }
                if a.mul(i, j, k) != (i * j == k) {
                    return Err(format!("mul({i}, {j}, {k}) wrong at bound {m}"));
                }
            }
        }
    }
    let in_range = |t: &(usize, usize, usize)| t.0 <= m && t.1 <= m && t.2 <= m;
    if !a.add_tuples().iter().all(in_range) || !a.mul_tuples().iter().all(in_range) {
        return Err(format!("tuple outside 0..={m}"));
    }
    Ok(())
}

/// A structure whose stratification from node 1 is an `R1` chain of the
/// given height.
pub fn chain(height: usize) -> DoubleDigraph {
    DoubleDigraph::from_pairs(height + 1, (1..=height).map(|a| (a, a + 1)), []).unwrap()
}

pub fn g_a() -> DoubleDigraph {
    DoubleDigraph::from_pairs(4, [(1, 2)], [(1, 3), (2, 4)]).unwrap()
}

pub fn g_b() -> DoubleDigraph {
    DoubleDigraph::from_pairs(3, [(1, 2), (2, 3)], []).unwrap()
}
