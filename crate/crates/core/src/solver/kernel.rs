//! Integer form of a pair of spaces.
//!
//! Both distance matrices are multiplied by the least common multiple of all
//! denominators, so distortion comparisons become `i64` arithmetic. A value
//! `v` in these units is the rational `v / scale`.

use num::bigint::BigInt;
use num::{Integer, One, ToPrimitive};

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::rational::Rational;

/// Entries stay below this so differences and maxima never overflow.
const MAX_SCALED: i64 = 1 << 60;

#[derive(Debug, Clone)]
pub(crate) struct Kernel {
    pub na: usize,
    pub nb: usize,
    da: Vec<i64>,
    db: Vec<i64>,
    scale: BigInt,
}

impl Kernel {
    pub fn new(a: &FiniteMetricSpace, b: &FiniteMetricSpace) -> Result<Self> {
        let scale = a
            .matrix()
            .iter()
            .chain(b.matrix().iter())
            .flatten()
            .fold(BigInt::one(), |acc, d| acc.lcm(d.denom()));
        let convert = |space: &FiniteMetricSpace| -> Option<Vec<i64>> {
            let n = space.len();
            (0..n * n)
                .map(|k| {
                    let d = space.dist(k / n, k % n);
                    let v = (d.numer() * (&scale / d.denom())).to_i64()?;
                    (v < MAX_SCALED).then_some(v)
                })
                .collect()
        };
        match (convert(a), convert(b)) {
            (Some(da), Some(db)) => Ok(Kernel { na: a.len(), nb: b.len(), da, db, scale }),
            _ => Err(Error::Resource {
                reason: "distances do not fit the 64-bit search kernel after scaling".into(),
                lower: super::gh_lower_bound(a, b),
                upper: super::full_product_bound(a, b),
                nodes: 0,
            }),
        }
    }

    pub fn transposed(&self) -> Kernel {
        Kernel { na: self.nb, nb: self.na, da: self.db.clone(), db: self.da.clone(), scale: self.scale.clone() }
    }

    #[inline]
    pub fn da(&self, i: usize, j: usize) -> i64 {
        self.da[i * self.na + j]
    }

    #[inline]
    pub fn db(&self, i: usize, j: usize) -> i64 {
        self.db[i * self.nb + j]
    }

    /// `| |a1 a2| - |b1 b2| |` for the related pairs `(a1, b1)` and `(a2, b2)`.
    #[inline]
    pub fn cost(&self, a1: usize, b1: usize, a2: usize, b2: usize) -> i64 {
        (self.da(a1, a2) - self.db(b1, b2)).abs()
    }

    pub fn ecc_a(&self) -> Vec<i64> {
        (0..self.na).map(|i| (0..self.na).map(|j| self.da(i, j)).max().unwrap_or(0)).collect()
    }

    pub fn ecc_b(&self) -> Vec<i64> {
        (0..self.nb).map(|i| (0..self.nb).map(|j| self.db(i, j)).max().unwrap_or(0)).collect()
    }

    /// Lower bound on the distortion of any correspondence: paired points
    /// have eccentricities within the distortion of each other.
    pub fn eccentricity_bound(&self) -> i64 {
        let (ea, eb) = (self.ecc_a(), self.ecc_b());
        let one_sided = |from: &[i64], to: &[i64]| {
            from.iter().map(|&e| to.iter().map(|&f| (e - f).abs()).min().unwrap_or(0)).max().unwrap_or(0)
        };
        one_sided(&ea, &eb).max(one_sided(&eb, &ea))
    }

    pub fn full_product_distortion(&self) -> i64 {
        let mut worst = 0;
        for a1 in 0..self.na {
            for a2 in 0..self.na {
                for b1 in 0..self.nb {
                    for b2 in 0..self.nb {
                        worst = worst.max(self.cost(a1, b1, a2, b2));
                    }
                }
            }
        }
        worst
    }

    pub fn to_rational(&self, scaled: i64) -> Rational {
        Rational::new(BigInt::from(scaled), self.scale.clone())
    }
}
