//! Hausdorff distance between subsets of one finite metric space.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, PointSubset};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HausdorffResult {
    #[serde(with = "crate::rational::as_string")]
    pub value: Rational,
    /// Point of `A` farthest from `B`.
    pub witness_a: usize,
    /// Point of `B` farthest from `A`.
    pub witness_b: usize,
}

/// `|xA|`, the distance from `x` to its nearest point of `A`.
pub fn point_set_distance(space: &FiniteMetricSpace, x: usize, subset: &PointSubset<'_>) -> Result<Rational> {
    space.check_index(x)?;
    ensure_same_space(space, subset)?;
    Ok(nearest(space, x, subset))
}

fn nearest(space: &FiniteMetricSpace, x: usize, subset: &PointSubset<'_>) -> Rational {
    subset.iter().map(|a| space.dist(x, a)).min().cloned().expect("point subsets are non-empty")
}

fn ensure_same_space(space: &FiniteMetricSpace, subset: &PointSubset<'_>) -> Result<()> {
    if std::ptr::eq(space, subset.space()) {
        Ok(())
    } else {
        Err(Error::Domain("subset belongs to a different metric space".into()))
    }
}

/// Farthest point of `from` from the set `to`; lowest index on ties.
fn directed(space: &FiniteMetricSpace, from: &PointSubset<'_>, to: &PointSubset<'_>) -> (Rational, usize) {
    let mut best: Option<(Rational, usize)> = None;
    for a in from.iter() {
        let d = nearest(space, a, to);
        if best.as_ref().is_none_or(|(b, _)| d > *b) {
            best = Some((d, a));
        }
    }
    best.expect("point subsets are non-empty")
}

/// `max{ sup_a |aB|, sup_b |Ab| }`.
pub fn hausdorff_distance(a: &PointSubset<'_>, b: &PointSubset<'_>) -> Result<HausdorffResult> {
    let space = a.space();
    ensure_same_space(space, b)?;
    let (da, witness_a) = directed(space, a, b);
    let (db, witness_b) = directed(space, b, a);
    Ok(HausdorffResult { value: da.max(db), witness_a, witness_b })
}
