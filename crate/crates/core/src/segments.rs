//! Metric segments in the Gromov-Hausdorff distance and two constructions
//! that produce new members of a segment from an old one.
//!
//! A space `Z` lies in `[X, Y]` when `d(X, Z) + d(Z, Y) = d(X, Y)`. Given an
//! interior member `Z`:
//!
//! * [`star_extension`] adds a point `z*` next to a chosen `z0`: at distance
//!   `delta` from every point of the closed ball `B_delta(z0)` and at
//!   `|z0 z|` from everything else. [`lift_star`] extends a correspondence
//!   `R` to the new space by relating `z*` to `R^{-1}(z0)`.
//! * [`simplex_graft`] replaces a point `z*` by `m` points pairwise at
//!   distance `mu`, each inheriting the distances of `z*`. [`lift_graft`]
//!   relates every simplex point to `R^{-1}(z*)`.
//!
//! For admissible parameters neither lift increases distortion, so both new
//! spaces are no farther from `X` and `Y` than `Z` was, and the triangle
//! inequality pins them into the segment. Everything here is exact, so
//! membership is a rational identity with no tolerance.

use std::ops::Range;

use num::{Signed, Zero};
use serde::Serialize;

use crate::cover::covering_number;
use crate::error::{Error, Result};
use crate::metric::{isolation_radius, FiniteMetricSpace};
use crate::rational::{format_rational, int, Rational};
use crate::relation::{cross_distortion, Correspondence};
use crate::solver::{gh_with, GhResult, Method, SolverConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentCertificate {
    #[serde(with = "crate::rational::as_string")]
    pub d_xz: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub d_zy: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub d_xy: Rational,
    /// `d_xz + d_zy - d_xy`; never negative, zero exactly for members.
    #[serde(with = "crate::rational::as_string")]
    pub gap: Rational,
    pub member: bool,
    pub optimal_xz: Correspondence,
    pub optimal_zy: Correspondence,
    pub optimal_xy: Correspondence,
    pub nodes_explored: u64,
}

impl SegmentCertificate {
    /// Member with both distances to the ends positive.
    pub fn is_interior(&self) -> bool {
        self.member && self.d_xz.is_positive() && self.d_zy.is_positive()
    }
}

/// Certifies whether `z` lies in the segment `[x, y]`.
pub fn segment_membership(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    z: &FiniteMetricSpace,
    config: &SolverConfig,
) -> Result<SegmentCertificate> {
    let solve = |a, b| gh_with(a, b, Method::BranchAndBound, config);
    let xz: GhResult = solve(x, z)?;
    let zy: GhResult = solve(z, y)?;
    let xy: GhResult = solve(x, y)?;
    let gap = &xz.distance + &zy.distance - &xy.distance;
    if gap.is_negative() {
        return Err(Error::Internal(format!(
            "triangle inequality failed for d_GH: gap {}",
            format_rational(&gap)
        )));
    }
    Ok(SegmentCertificate {
        member: gap.is_zero(),
        gap,
        d_xz: xz.distance,
        d_zy: zy.distance,
        d_xy: xy.distance,
        nodes_explored: xz.nodes_explored + zy.nodes_explored + xy.nodes_explored,
        optimal_xz: xz.optimal,
        optimal_zy: zy.optimal,
        optimal_xy: xy.optimal,
    })
}

/// An interval `(0, upper)` or `(0, upper]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Interval {
    #[serde(with = "crate::rational::as_string")]
    pub upper: Rational,
    pub upper_closed: bool,
}

impl Interval {
    pub fn contains(&self, v: &Rational) -> bool {
        v.is_positive() && (v < &self.upper || (self.upper_closed && v == &self.upper))
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(0, {}{}", format_rational(&self.upper), if self.upper_closed { "]" } else { ")" })
    }
}

fn require_positive(name: &str, v: &Rational) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!("{name} must be positive, got {}", format_rational(v))))
    }
}

/// Admissible star radii: `(0, min{2 d_xz, 2 d_zy}]`.
pub fn admissible_delta(d_xz: &Rational, d_zy: &Rational) -> Result<Interval> {
    require_positive("d_GH(X, Z)", d_xz)?;
    require_positive("d_GH(Z, Y)", d_zy)?;
    Ok(Interval { upper: d_xz.min(d_zy).clone() * int(2), upper_closed: true })
}

/// Admissible simplex edges: `(0, 2 min{d_xz, d_zy, s})`, `s` the isolation
/// radius of the replaced point.
pub fn admissible_mu(d_xz: &Rational, d_zy: &Rational, s: &Rational) -> Result<Interval> {
    require_positive("d_GH(X, Z)", d_xz)?;
    require_positive("d_GH(Z, Y)", d_zy)?;
    require_positive("isolation radius", s)?;
    Ok(Interval { upper: d_xz.min(d_zy).min(s).clone() * int(2), upper_closed: false })
}

/// Default star radius: the closed upper end of the admissible interval.
pub fn default_delta(d_xz: &Rational, d_zy: &Rational) -> Result<Rational> {
    Ok(admissible_delta(d_xz, d_zy)?.upper)
}

/// Default simplex edge: half the open upper end, `min{d_xz, d_zy, s}`.
pub fn default_mu(d_xz: &Rational, d_zy: &Rational, s: &Rational) -> Result<Rational> {
    Ok(admissible_mu(d_xz, d_zy, s)?.upper / int(2))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarParams {
    pub z0: usize,
    #[serde(with = "crate::rational::as_string")]
    pub delta: Rational,
}

/// `Z* = Z ∪ {z*}`; the new point is the last index.
pub fn star_extension(z: &FiniteMetricSpace, params: &StarParams) -> Result<FiniteMetricSpace> {
    z.check_index(params.z0)?;
    if !params.delta.is_positive() {
        return Err(Error::Domain(format!("delta must be positive, got {}", format_rational(&params.delta))));
    }
    let n = z.len();
    let to_star: Vec<Rational> = (0..n)
        .map(|w| {
            let d = z.dist(params.z0, w);
            if d <= &params.delta {
                params.delta.clone()
            } else {
                d.clone()
            }
        })
        .collect();
    let mut matrix = z.matrix();
    for (row, d) in matrix.iter_mut().zip(&to_star) {
        row.push(d.clone());
    }
    let mut last = to_star;
    last.push(Rational::zero());
    matrix.push(last);

    let mut labels = z.labels().to_vec();
    labels.push(z.fresh_label(&format!("{}*", z.label(params.z0))));
    FiniteMetricSpace::new(labels, matrix).map_err(|e| match e {
        Error::Validation(report) => Error::Internal(format!("star extension is not a metric: {report}")),
        other => other,
    })
}

/// `R* = R ∪ (R^{-1}(z0) × {z*})`, a correspondence from `X` to `Z*`.
pub fn lift_star(r: &Correspondence, z0: usize) -> Result<Correspondence> {
    let pre = r.preimage(z0)?;
    if pre.is_empty() {
        return Err(Error::Domain(format!("no point is related to z0 = {z0}")));
    }
    let apex = r.ny();
    Correspondence::from_pairs(r.iter().chain(pre.into_iter().map(|x| (x, apex))), r.nx(), apex + 1)
}

/// The distortion of a lifted star correspondence, split by where the two
/// related pairs land in `Z*`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StarDistortion {
    /// Both pairs in `Z`; equals the distortion of the original `R`.
    #[serde(with = "crate::rational::as_string")]
    pub inherited: Rational,
    /// One pair at `z*`, the other at `z` outside the closed ball `B_delta(z0)`.
    #[serde(with = "crate::rational::as_string")]
    pub far: Rational,
    /// One pair at `z*`, the other inside the closed ball.
    #[serde(with = "crate::rational::as_string")]
    pub near: Rational,
    /// Both pairs at `z*`; these repeat terms already counted for `z0`.
    #[serde(with = "crate::rational::as_string")]
    pub apex: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub total: Rational,
}

pub fn star_distortion_parts(
    x: &FiniteMetricSpace,
    star: &FiniteMetricSpace,
    lifted: &Correspondence,
    params: &StarParams,
) -> Result<StarDistortion> {
    let apex_index = star.len() - 1;
    if lifted.nx() != x.len() || lifted.ny() != star.len() {
        return Err(Error::Domain("correspondence sizes do not match the spaces".into()));
    }
    let (at_apex, in_z): (Vec<_>, Vec<_>) = lifted.iter().partition(|&(_, z)| z == apex_index);
    let (near_pairs, far_pairs): (Vec<_>, Vec<_>) =
        in_z.iter().partition(|&&(_, z)| star.dist(z, params.z0) <= &params.delta);
    let inherited = cross_distortion(x, star, &in_z, &in_z);
    let far = cross_distortion(x, star, &far_pairs, &at_apex);
    let near = cross_distortion(x, star, &near_pairs, &at_apex);
    let apex = cross_distortion(x, star, &at_apex, &at_apex);
    let total = inherited.clone().max(far.clone()).max(near.clone()).max(apex.clone());
    Ok(StarDistortion { inherited, far, near, apex, total })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraftParams {
    pub z_star: usize,
    #[serde(with = "crate::rational::as_string")]
    pub mu: Rational,
    pub m: usize,
}

/// Index layout of `W = (Z \ {z*}) ∪ mu·Delta_m`: the kept points of `Z` in
/// their original order, then the `m` simplex points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraftLayout {
    pub nz: usize,
    pub z_star: usize,
    pub m: usize,
}

impl GraftLayout {
    pub fn len(&self) -> usize {
        self.nz - 1 + self.m
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index in `W` of a point of `Z` other than `z*`.
    pub fn kept(&self, z: usize) -> Option<usize> {
        match z.cmp(&self.z_star) {
            std::cmp::Ordering::Less => Some(z),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(z - 1),
        }
    }

    /// Point of `Z` that a point of `W` came from; `z*` for simplex points.
    pub fn origin(&self, w: usize) -> usize {
        if w >= self.nz - 1 {
            self.z_star
        } else if w >= self.z_star {
            w + 1
        } else {
            w
        }
    }

    pub fn simplex_points(&self) -> Range<usize> {
        self.nz - 1..self.len()
    }
}

/// `W(mu, m)`: `z*` replaced by `m` points pairwise `mu` apart.
///
/// With `strict` set, `mu >= 2 S(z*)` is refused up front; otherwise such a
/// `mu` fails metric validation once `m >= 2`.
pub fn simplex_graft(z: &FiniteMetricSpace, params: &GraftParams, strict: bool) -> Result<FiniteMetricSpace> {
    z.check_index(params.z_star)?;
    if !params.mu.is_positive() {
        return Err(Error::Domain(format!("mu must be positive, got {}", format_rational(&params.mu))));
    }
    if params.m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    if strict && z.len() > 1 {
        let s = isolation_radius(z, params.z_star)?;
        if params.mu >= s.clone() * int(2) {
            return Err(Error::Domain(format!(
                "mu = {} is not below twice the isolation radius {}",
                format_rational(&params.mu),
                format_rational(&s)
            )));
        }
    }
    let layout = GraftLayout { nz: z.len(), z_star: params.z_star, m: params.m };
    let simplex = layout.simplex_points();
    let matrix = (0..layout.len())
        .map(|a| {
            (0..layout.len())
                .map(|b| {
                    if a == b {
                        Rational::zero()
                    } else if simplex.contains(&a) && simplex.contains(&b) {
                        params.mu.clone()
                    } else {
                        z.dist(layout.origin(a), layout.origin(b)).clone()
                    }
                })
                .collect()
        })
        .collect();

    let base = z.label(params.z_star);
    let mut labels: Vec<String> = (0..z.len()).filter(|&i| i != params.z_star).map(|i| z.label(i).to_string()).collect();
    for k in 1..=params.m {
        let mut label = format!("{base}#{k}");
        while labels.contains(&label) || z.index_of(&label).is_some() {
            label.push('\'');
        }
        labels.push(label);
    }
    FiniteMetricSpace::new(labels, matrix)
}

/// `V`: pairs over `Z \ {z*}` kept from `R`, and every `x` related to `z*`
/// related to all `m` simplex points.
pub fn lift_graft(r: &Correspondence, z_star: usize, m: usize) -> Result<Correspondence> {
    if m == 0 {
        return Err(Error::Domain("m must be at least 1".into()));
    }
    let pre = r.preimage(z_star)?;
    if pre.is_empty() {
        return Err(Error::Domain(format!("no point is related to z* = {z_star}")));
    }
    let layout = GraftLayout { nz: r.ny(), z_star, m };
    let pairs = r.iter().flat_map(|(x, z)| match layout.kept(z) {
        Some(w) => vec![(x, w)],
        None => layout.simplex_points().map(|w| (x, w)).collect(),
    });
    Correspondence::from_pairs(pairs, r.nx(), layout.len())
}

/// The distortion of a lifted graft correspondence, split by whether the
/// related pairs land on the simplex.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraftDistortion {
    /// At least one pair over `Z \ {z*}`; bounded by the distortion of `R`.
    #[serde(with = "crate::rational::as_string")]
    pub inherited: Rational,
    /// Both pairs on the simplex: `| |xx'| - mu |` or `|xx'|`.
    #[serde(with = "crate::rational::as_string")]
    pub simplex: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub total: Rational,
}

pub fn graft_distortion_parts(
    x: &FiniteMetricSpace,
    w: &FiniteMetricSpace,
    lifted: &Correspondence,
    layout: &GraftLayout,
) -> Result<GraftDistortion> {
    if lifted.nx() != x.len() || lifted.ny() != w.len() || w.len() != layout.len() {
        return Err(Error::Domain("correspondence sizes do not match the spaces".into()));
    }
    let simplex = layout.simplex_points();
    let (on_simplex, kept): (Vec<_>, Vec<_>) = lifted.iter().partition(|(_, p)| simplex.contains(p));
    let all: Vec<_> = lifted.iter().collect();
    let inherited = cross_distortion(x, w, &kept, &all);
    let simplex = cross_distortion(x, w, &on_simplex, &on_simplex);
    let total = inherited.clone().max(simplex.clone());
    Ok(GraftDistortion { inherited, simplex, total })
}

/// Parameters for growing a family of grafts out of an interior member.
#[derive(Debug, Clone, Default)]
pub struct FamilyOptions {
    /// Point to replace; defaults to the point with the largest isolation radius.
    pub z_star: Option<usize>,
    /// Simplex edge; defaults to [`default_mu`].
    pub mu: Option<Rational>,
    pub config: SolverConfig,
}

/// A certified interior member and the graft parameters chosen for it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraftPlan {
    pub base: SegmentCertificate,
    pub z_star: usize,
    /// `None` for a one-point `Z`, where the isolation radius is unbounded.
    #[serde(with = "crate::rational::option_as_string")]
    pub isolation_radius: Option<Rational>,
    pub admissible_mu: Interval,
    #[serde(with = "crate::rational::as_string")]
    pub mu: Rational,
}

pub fn plan_graft(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    z: &FiniteMetricSpace,
    options: &FamilyOptions,
) -> Result<GraftPlan> {
    let base = segment_membership(x, y, z, &options.config)?;
    if !base.member {
        return Err(Error::Hypothesis(format!(
            "Z is not in [X, Y]: d(X,Z) + d(Z,Y) exceeds d(X,Y) by {}",
            format_rational(&base.gap)
        )));
    }
    if !base.is_interior() {
        return Err(Error::Hypothesis("Z must be at positive distance from both X and Y".into()));
    }
    let radius = |i: usize| isolation_radius(z, i).ok();
    let z_star = match options.z_star {
        Some(i) => {
            z.check_index(i)?;
            i
        }
        None => (0..z.len()).rev().max_by_key(|&i| radius(i)).expect("spaces are non-empty"),
    };
    let s = radius(z_star);
    let interval = match &s {
        Some(s) => admissible_mu(&base.d_xz, &base.d_zy, s)?,
        None => admissible_mu(&base.d_xz, &base.d_zy, &base.d_xz.clone().max(base.d_zy.clone()))?,
    };
    let mu = match &options.mu {
        Some(mu) if interval.contains(mu) => mu.clone(),
        Some(mu) => {
            return Err(Error::Hypothesis(format!("mu = {} is outside {interval}", format_rational(mu))));
        }
        None => interval.upper.clone() / int(2),
    };
    Ok(GraftPlan { base, z_star, isolation_radius: s, admissible_mu: interval, mu })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FamilyMember {
    pub m: usize,
    #[serde(skip)]
    pub space: FiniteMetricSpace,
    pub certificate: SegmentCertificate,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SegmentFamily {
    pub plan: GraftPlan,
    pub members: Vec<FamilyMember>,
}

/// Grafts `mu·Delta_m` into `Z` for each `m` and certifies each result.
pub fn build_segment_family(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    z: &FiniteMetricSpace,
    ms: &[usize],
    options: &FamilyOptions,
) -> Result<SegmentFamily> {
    let plan = plan_graft(x, y, z, options)?;
    let members = ms
        .iter()
        .map(|&m| {
            let params = GraftParams { z_star: plan.z_star, mu: plan.mu.clone(), m };
            let space = simplex_graft(z, &params, true)?;
            let certificate = segment_membership(x, y, &space, &options.config)?;
            Ok(FamilyMember { m, space, certificate })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SegmentFamily { plan, members })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverRow {
    pub m: usize,
    pub points: usize,
    pub covering_number: usize,
}

/// Covering numbers of the graft family at a fixed scale.
///
/// At `eps = mu/4` each open ball holds at most one simplex point, so
/// `cov(W(m), eps) >= m`. A family whose covering numbers at a fixed scale
/// grow without bound is not precompact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NoncompactnessReport {
    pub plan: GraftPlan,
    #[serde(with = "crate::rational::as_string")]
    pub eps: Rational,
    pub rows: Vec<CoverRow>,
    /// `cov(W(m), eps) >= m` on every row.
    pub lower_bound_holds: bool,
}

pub fn noncompactness_report(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    z: &FiniteMetricSpace,
    m_max: usize,
    options: &FamilyOptions,
) -> Result<NoncompactnessReport> {
    if m_max == 0 {
        return Err(Error::Domain("m_max must be at least 1".into()));
    }
    let plan = plan_graft(x, y, z, options)?;
    let eps = plan.mu.clone() / int(4);
    let rows = (1..=m_max)
        .map(|m| {
            let params = GraftParams { z_star: plan.z_star, mu: plan.mu.clone(), m };
            let w = simplex_graft(z, &params, true)?;
            Ok(CoverRow { m, points: w.len(), covering_number: covering_number(&w, &eps)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let lower_bound_holds = rows.iter().all(|r| r.covering_number >= r.m);
    Ok(NoncompactnessReport { plan, eps, rows, lower_bound_holds })
}
