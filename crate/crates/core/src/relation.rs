//! Relations and correspondences between two finite spaces, and their distortion.

use std::collections::BTreeSet;

use num::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::rational::{abs_diff, Rational};

/// Default bound on `nx * ny` for brute-force enumeration.
pub const DEFAULT_ENUMERATION_CAP: usize = 20;

/// A non-empty set of index pairs `(x, y)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Relation {
    pairs: BTreeSet<(usize, usize)>,
}

impl Relation {
    pub fn new(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let pairs: BTreeSet<_> = pairs.into_iter().collect();
        if pairs.is_empty() {
            return Err(Error::Domain("a relation must contain at least one pair".into()));
        }
        Ok(Relation { pairs })
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.pairs.contains(&(x, y))
    }

    pub fn transpose(&self) -> Relation {
        Relation { pairs: self.pairs.iter().map(|&(x, y)| (y, x)).collect() }
    }

    fn check_range(&self, nx: usize, ny: usize) -> Result<()> {
        match self.pairs.iter().find(|&&(x, y)| x >= nx || y >= ny) {
            Some(&(x, y)) => Err(Error::Domain(format!("pair ({x},{y}) out of range for sizes {nx}x{ny}"))),
            None => Ok(()),
        }
    }
}

/// True iff both projections of `sigma` onto `0..nx` and `0..ny` are onto.
pub fn is_correspondence(sigma: &Relation, nx: usize, ny: usize) -> Result<bool> {
    sigma.check_range(nx, ny)?;
    let mut seen_x = vec![false; nx];
    let mut seen_y = vec![false; ny];
    for (x, y) in sigma.iter() {
        seen_x[x] = true;
        seen_y[y] = true;
    }
    Ok(seen_x.into_iter().all(|s| s) && seen_y.into_iter().all(|s| s))
}

/// A relation whose projections onto both factors are surjective.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Correspondence {
    nx: usize,
    ny: usize,
    pairs: Relation,
}

impl Correspondence {
    pub fn new(relation: Relation, nx: usize, ny: usize) -> Result<Self> {
        if !is_correspondence(&relation, nx, ny)? {
            return Err(Error::Domain(format!("relation is not a correspondence between sizes {nx} and {ny}")));
        }
        Ok(Correspondence { nx, ny, pairs: relation })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>, nx: usize, ny: usize) -> Result<Self> {
        Self::new(Relation::new(pairs)?, nx, ny)
    }

    /// `X x Y`.
    pub fn full(nx: usize, ny: usize) -> Result<Self> {
        Self::from_pairs((0..nx).flat_map(|x| (0..ny).map(move |y| (x, y))), nx, ny)
    }

    /// Identity correspondence on an `n`-point space.
    pub fn identity(n: usize) -> Result<Self> {
        Self::from_pairs((0..n).map(|i| (i, i)), n, n)
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn relation(&self) -> &Relation {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn transpose(&self) -> Correspondence {
        Correspondence { nx: self.ny, ny: self.nx, pairs: self.pairs.transpose() }
    }

    /// `R^{-1}(y)`: every `x` related to `y`.
    pub fn preimage(&self, y: usize) -> Result<BTreeSet<usize>> {
        if y >= self.ny {
            return Err(Error::Domain(format!("point index {y} out of range for a {}-point space", self.ny)));
        }
        Ok(self.iter().filter(|&(_, b)| b == y).map(|(a, _)| a).collect())
    }
}

/// `dis sigma = max | |xx'| - |yy'| |` over all pairs of related pairs.
pub fn distortion(x: &FiniteMetricSpace, y: &FiniteMetricSpace, sigma: &Relation) -> Result<Rational> {
    sigma.check_range(x.len(), y.len())?;
    let pairs: Vec<_> = sigma.iter().collect();
    Ok(cross_distortion(x, y, &pairs, &pairs))
}

/// Largest `| |xx'| - |yy'| |` with `(x, y)` from `a` and `(x', y')` from `b`.
///
/// Zero when either side is empty. Indices must be in range.
pub fn cross_distortion(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    a: &[(usize, usize)],
    b: &[(usize, usize)],
) -> Rational {
    let mut worst = Rational::zero();
    for &(x1, y1) in a {
        for &(x2, y2) in b {
            let d = abs_diff(x.dist(x1, x2), y.dist(y1, y2));
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Every correspondence between an `nx`- and an `ny`-point space, each once.
///
/// Refuses when `nx * ny` exceeds `cap`; the search space is `2^(nx*ny)`.
pub fn enumerate_correspondences(nx: usize, ny: usize, cap: usize) -> Result<impl Iterator<Item = Correspondence>> {
    let cells = nx * ny;
    if nx == 0 || ny == 0 {
        return Err(Error::Domain("spaces must be non-empty".into()));
    }
    if cells > cap || cells >= 64 {
        return Err(Error::Domain(format!(
            "{nx}x{ny} product has {cells} cells, over the enumeration cap of {cap}; use branch-and-bound"
        )));
    }
    let row_mask = (1u64 << ny) - 1;
    let col_mask: u64 = (0..nx).fold(0, |m, x| m | (1 << (x * ny)));
    Ok((1u64..1 << cells).filter_map(move |set| {
        let rows_ok = (0..nx).all(|x| (set >> (x * ny)) & row_mask != 0);
        let cols_ok = (0..ny).all(|y| set & (col_mask << y) != 0);
        if !(rows_ok && cols_ok) {
            return None;
        }
        let pairs = (0..cells).filter(|c| set & (1 << c) != 0).map(|c| (c / ny, c % ny));
        Some(Correspondence { nx, ny, pairs: Relation { pairs: pairs.collect() } })
    }))
}
