//! Exact covering numbers by open balls centred at points of the space.

use num::Signed;

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::rational::{format_rational, Rational};

/// Largest space `covering_number` accepts; balls are stored as `u128` masks.
pub const MAX_COVER_POINTS: usize = 128;

/// Minimum number of open balls `{y : |xy| < eps}`, centres in the space,
/// needed to cover it.
pub fn covering_number(space: &FiniteMetricSpace, eps: &Rational) -> Result<usize> {
    if !eps.is_positive() {
        return Err(Error::Domain(format!("covering radius must be positive, got {}", format_rational(eps))));
    }
    let n = space.len();
    if n > MAX_COVER_POINTS {
        return Err(Error::Domain(format!("covering number supports at most {MAX_COVER_POINTS} points, got {n}")));
    }
    let balls: Vec<u128> = (0..n)
        .map(|c| (0..n).filter(|&y| space.dist(c, y) < eps).fold(0u128, |m, y| m | (1 << y)))
        .collect();
    // balls_through[p]: centres whose ball contains p, largest balls first.
    let balls_through: Vec<Vec<u128>> = (0..n)
        .map(|p| {
            let mut bs: Vec<u128> = balls.iter().copied().filter(|b| b & (1 << p) != 0).collect();
            bs.sort_by_key(|b| std::cmp::Reverse(b.count_ones()));
            bs.dedup();
            bs
        })
        .collect();
    let full: u128 = if n == 128 { u128::MAX } else { (1u128 << n) - 1 };
    (1..=n)
        .find(|&k| covers_within(&balls_through, full, 0, k))
        .ok_or_else(|| Error::Internal("singleton balls always cover a finite space".into()))
}

fn covers_within(balls_through: &[Vec<u128>], full: u128, covered: u128, budget: usize) -> bool {
    if covered == full {
        return true;
    }
    if budget == 0 {
        return false;
    }
    let first_uncovered = (!covered & full).trailing_zeros() as usize;
    balls_through[first_uncovered]
        .iter()
        .any(|&b| covers_within(balls_through, full, covered | b, budget - 1))
}
