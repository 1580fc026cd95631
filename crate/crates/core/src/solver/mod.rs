//! Exact Gromov-Hausdorff distance between finite metric spaces.
//!
//! `d_GH(X, Y)` is half the smallest distortion over all correspondences.
//! Two independent searches compute it: [`Method::Exhaustive`] walks every
//! subset of `X x Y`, and [`Method::BranchAndBound`] prunes a row-by-row
//! construction. Both report the same optimal correspondence, the
//! lexicographically smallest pair set among the optima.

mod bnb;
mod canonical;
mod exhaustive;
mod kernel;

use num::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{diameter, FiniteMetricSpace};
use crate::rational::{int, Rational};
use crate::relation::{Correspondence, DEFAULT_ENUMERATION_CAP};

use kernel::Kernel;

/// Hard ceiling on the column count of the branch-and-bound kernel.
const MAX_BNB_COLUMNS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    BranchAndBound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Largest `nx * ny` the exhaustive method accepts.
    pub enumeration_cap: usize,
    /// Largest `max(nx, ny)` branch-and-bound accepts.
    pub max_points: usize,
    /// Node budget per branch-and-bound search phase; `None` for unlimited.
    /// The exhaustive method is bounded by `enumeration_cap` instead.
    pub node_budget: Option<u64>,
    /// Explore first-level subtrees on the rayon pool. The distance and the
    /// returned correspondence do not depend on this; node counts may.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            max_points: 10,
            node_budget: Some(50_000_000),
            parallel: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GhResult {
    #[serde(with = "crate::rational::as_string")]
    pub distance: Rational,
    pub optimal: Correspondence,
    /// Best lower bound known before the search; never above `distance`.
    #[serde(with = "crate::rational::as_string")]
    pub lower_bound: Rational,
    pub nodes_explored: u64,
    pub method: Method,
}

/// Exact `d_GH` with the default configuration and branch-and-bound.
pub fn gh_exact(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<GhResult> {
    gh_with(x, y, Method::BranchAndBound, &SolverConfig::default())
}

pub fn gh_with(x: &FiniteMetricSpace, y: &FiniteMetricSpace, method: Method, config: &SolverConfig) -> Result<GhResult> {
    match method {
        Method::Exhaustive => gh_exhaustive(x, y, config),
        Method::BranchAndBound => gh_branch_and_bound(x, y, config),
    }
}

/// Lower bound on `d_GH`: half the larger of the diameter gap and the
/// eccentricity gap. Related points have eccentricities within the
/// distortion of each other, and the diameters are the largest of these.
pub fn gh_lower_bound(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Rational {
    let ex: Vec<Rational> = (0..x.len()).map(|i| x.eccentricity(i)).collect();
    let ey: Vec<Rational> = (0..y.len()).map(|j| y.eccentricity(j)).collect();
    let one_sided = |from: &[Rational], to: &[Rational]| {
        from.iter()
            .map(|e| to.iter().map(|f| (e - f).abs()).min().expect("spaces are non-empty"))
            .max()
            .expect("spaces are non-empty")
    };
    let diameter_gap = (diameter(x) - diameter(y)).abs();
    let ecc_gap = one_sided(&ex, &ey).max(one_sided(&ey, &ex));
    diameter_gap.max(ecc_gap) / int(2)
}

/// Half the distortion of the full product, an upper bound on `d_GH`.
pub fn full_product_bound(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Rational {
    let full = Correspondence::full(x.len(), y.len()).expect("spaces are non-empty");
    crate::relation::distortion(x, y, full.relation()).expect("indices in range") / int(2)
}

fn resource(reason: String, x: &FiniteMetricSpace, y: &FiniteMetricSpace, upper: Option<Rational>, nodes: u64) -> Error {
    Error::Resource {
        reason,
        lower: gh_lower_bound(x, y),
        upper: upper.unwrap_or_else(|| full_product_bound(x, y)),
        nodes,
    }
}

fn from_cells(k: &Kernel, cells: &[usize]) -> Result<Correspondence> {
    Correspondence::from_pairs(cells.iter().map(|&c| (c / k.nb, c % k.nb)), k.na, k.nb)
}

fn gh_exhaustive(x: &FiniteMetricSpace, y: &FiniteMetricSpace, config: &SolverConfig) -> Result<GhResult> {
    let cells = x.len() * y.len();
    if cells > config.enumeration_cap || cells >= 64 {
        return Err(resource(
            format!(
                "{}x{} product exceeds the enumeration cap of {} cells; use branch-and-bound",
                x.len(),
                y.len(),
                config.enumeration_cap
            ),
            x,
            y,
            None,
            0,
        ));
    }
    let k = Kernel::new(x, y)?;
    let out = exhaustive::solve(&k);
    Ok(GhResult {
        distance: k.to_rational(out.distortion) / int(2),
        optimal: from_cells(&k, &out.cells)?,
        lower_bound: gh_lower_bound(x, y),
        nodes_explored: out.nodes,
        method: Method::Exhaustive,
    })
}

fn gh_branch_and_bound(x: &FiniteMetricSpace, y: &FiniteMetricSpace, config: &SolverConfig) -> Result<GhResult> {
    let largest = x.len().max(y.len());
    if largest > config.max_points || x.len().min(y.len()) > MAX_BNB_COLUMNS {
        return Err(resource(
            format!("{}x{} exceeds the branch-and-bound size limit of {} points", x.len(), y.len(), config.max_points),
            x,
            y,
            None,
            0,
        ));
    }
    let k = Kernel::new(x, y)?;
    // Rows pick subsets of columns, so the smaller space goes on the columns.
    let search_kernel = if k.na >= k.nb { k.clone() } else { k.transposed() };
    let upper = k.full_product_distortion();
    let floor = k.eccentricity_bound();
    let found = bnb::solve(&search_kernel, upper, floor, config.node_budget, config.parallel);
    if !found.complete {
        return Err(resource(
            "branch-and-bound exhausted its node budget".into(),
            x,
            y,
            Some(k.to_rational(found.distortion) / int(2)),
            found.nodes,
        ));
    }
    let canon = canonical::lex_smallest(&k, found.distortion, config.node_budget);
    let nodes = found.nodes + canon.nodes;
    let cells = match canon.cells {
        Some(cells) => cells,
        None if canon.aborted => {
            let d = k.to_rational(found.distortion) / int(2);
            return Err(Error::Resource {
                reason: "selecting the canonical optimal correspondence exhausted the node budget".into(),
                lower: d.clone(),
                upper: d,
                nodes,
            });
        }
        None => return Err(Error::Internal("no correspondence attains the optimal distortion".into())),
    };
    let optimal = from_cells(&k, &cells)?;
    Ok(GhResult {
        distance: k.to_rational(found.distortion) / int(2),
        optimal,
        lower_bound: gh_lower_bound(x, y),
        nodes_explored: nodes,
        method: Method::BranchAndBound,
    })
}
