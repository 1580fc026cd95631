//! Test-only oracles and generators. Nothing here calls the solver.
#![allow(dead_code)]

use ghseg_core::metric::FiniteMetricSpace;
use ghseg_core::rational::{int, Rational};
use ghseg_core::relation::{enumerate_correspondences, Correspondence};
use num::Signed;
use rand::seq::SliceRandom;
use rand::Rng;

/// Quadruple loop straight from the definition.
pub fn brute_distortion(x: &FiniteMetricSpace, y: &FiniteMetricSpace, pairs: &[(usize, usize)]) -> Rational {
    let mut worst = int(0);
    for &(a, b) in pairs {
        for &(c, d) in pairs {
            let v = (x.dist(a, c) - y.dist(b, d)).abs();
            if v > worst {
                worst = v;
            }
        }
    }
    worst
}

/// Half the minimum distortion over every correspondence.
pub fn brute_gh(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Rational {
    enumerate_correspondences(x.len(), y.len(), 20)
        .expect("oracle only runs on small products")
        .map(|r| brute_distortion(x, y, &r.iter().collect::<Vec<_>>()))
        .min()
        .unwrap()
        / int(2)
}

/// Nested-loop Hausdorff distance between index sets.
pub fn brute_hausdorff(x: &FiniteMetricSpace, a: &[usize], b: &[usize]) -> Rational {
    let one_sided = |from: &[usize], to: &[usize]| {
        let mut worst = int(0);
        for &p in from {
            let mut nearest: Option<Rational> = None;
            for &q in to {
                let d = x.dist(p, q).clone();
                if nearest.as_ref().is_none_or(|n| d < *n) {
                    nearest = Some(d);
                }
            }
            let nearest = nearest.unwrap();
            if nearest > worst {
                worst = nearest;
            }
        }
        worst
    };
    one_sided(a, b).max(one_sided(b, a))
}

/// Random correspondence: each row takes a random non-empty set of columns,
/// then uncovered columns are attached to random rows.
pub fn random_correspondence<R: Rng>(nx: usize, ny: usize, rng: &mut R) -> Correspondence {
    let mut pairs = Vec::new();
    let mut covered = vec![false; ny];
    for x in 0..nx {
        let mut cols: Vec<usize> = (0..ny).collect();
        cols.shuffle(rng);
        let take = rng.gen_range(1..=ny.min(2));
        for &y in &cols[..take] {
            pairs.push((x, y));
            covered[y] = true;
        }
    }
    for (y, c) in covered.iter().enumerate() {
        if !c {
            pairs.push((rng.gen_range(0..nx), y));
        }
    }
    Correspondence::from_pairs(pairs, nx, ny).unwrap()
}

pub fn non_empty_subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..1 << n).map(|m| (0..n).filter(|i| m & (1 << i) != 0).collect()).collect()
}
