//! Interpolated metrics on relations and geodesics between finite spaces.
//!
//! For `0 < t < 1` a relation `sigma` between `X` and `Y` carries the metric
//! `(1 - t)|xx'| + t|yy'|`. At the endpoints that formula is only a
//! pseudometric, so pairs at distance zero are merged; for a correspondence
//! this gives back `X` at `t = 0` and `Y` at `t = 1`. Along an optimal
//! correspondence the spaces `R_t` form a shortest path between `X` and `Y`.

use num::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::rational::{format_rational, ratio, Rational};
use crate::relation::{is_correspondence, Correspondence, Relation};
use crate::solver::{gh_with, Method, SolverConfig};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterpolatedSpace {
    pub base: Relation,
    #[serde(with = "crate::rational::as_string")]
    pub t: Rational,
    #[serde(skip)]
    pub realized: FiniteMetricSpace,
    /// Pairs of `base` merged into each point of `realized`, in point order.
    pub classes: Vec<Vec<(usize, usize)>>,
}

/// `{0, 1/4, 1/2, 3/4, 1}`.
pub fn default_sample_grid() -> Vec<Rational> {
    (0..=4).map(|k| ratio(k, 4)).collect()
}

/// `(1 - t)|xx'| + t|yy'|` between the pairs `p = (x, y)` and `q = (x', y')`.
pub fn interpolated_distance(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    p: (usize, usize),
    q: (usize, usize),
    t: &Rational,
) -> Rational {
    (Rational::one() - t) * x.dist(p.0, q.0) + t * y.dist(p.1, q.1)
}

fn check_t(t: &Rational) -> Result<()> {
    if t.is_negative() || *t > Rational::one() {
        return Err(Error::Domain(format!("interpolation parameter must lie in [0,1], got {}", format_rational(t))));
    }
    Ok(())
}

/// The space `sigma_t`.
pub fn interpolate(x: &FiniteMetricSpace, y: &FiniteMetricSpace, sigma: &Relation, t: &Rational) -> Result<InterpolatedSpace> {
    check_t(t)?;
    let endpoint = t.is_zero() || t.is_one();
    let surjective = is_correspondence(sigma, x.len(), y.len())?;
    if endpoint && !surjective {
        return Err(Error::Domain("interpolation at t = 0 or t = 1 needs a correspondence".into()));
    }

    let pairs: Vec<(usize, usize)> = sigma.iter().collect();
    let mut classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for &p in &pairs {
        match classes.iter_mut().find(|c| interpolated_distance(x, y, c[0], p, t).is_zero()) {
            Some(class) => class.push(p),
            None => classes.push(vec![p]),
        }
    }

    let labels = classes
        .iter()
        .map(|c| {
            let (a, b) = c[0];
            if t.is_zero() {
                x.label(a).to_string()
            } else if t.is_one() {
                y.label(b).to_string()
            } else {
                format!("{}|{}", x.label(a), y.label(b))
            }
        })
        .collect();
    let matrix = classes
        .iter()
        .map(|c| classes.iter().map(|d| interpolated_distance(x, y, c[0], d[0], t)).collect())
        .collect();
    let realized = FiniteMetricSpace::new(labels, matrix).map_err(|e| match e {
        Error::Validation(report) => Error::Internal(format!("interpolated space is not a metric: {report}")),
        other => other,
    })?;
    Ok(InterpolatedSpace { base: sigma.clone(), t: t.clone(), realized, classes })
}

fn check_sizes(x: &FiniteMetricSpace, y: &FiniteMetricSpace, r: &Correspondence) -> Result<()> {
    if r.nx() != x.len() || r.ny() != y.len() {
        return Err(Error::Domain(format!(
            "correspondence is between sizes {}x{}, spaces have {}x{}",
            r.nx(),
            r.ny(),
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

/// The spaces `R_t` for each `t` in `ts`.
///
/// `r` is trusted to be optimal; see [`audit_optimal`].
pub fn geodesic_samples(
    x: &FiniteMetricSpace,
    y: &FiniteMetricSpace,
    r: &Correspondence,
    ts: &[Rational],
) -> Result<Vec<InterpolatedSpace>> {
    check_sizes(x, y, r)?;
    ts.iter().map(|t| interpolate(x, y, r.relation(), t)).collect()
}

/// Fails with a hypothesis error unless `dis r / 2` equals `d_GH(x, y)`.
pub fn audit_optimal(x: &FiniteMetricSpace, y: &FiniteMetricSpace, r: &Correspondence, config: &SolverConfig) -> Result<()> {
    check_sizes(x, y, r)?;
    let half = crate::relation::distortion(x, y, r.relation())? / crate::rational::int(2);
    let exact = gh_with(x, y, Method::BranchAndBound, config)?.distance;
    if half != exact {
        return Err(Error::Hypothesis(format!(
            "correspondence has half-distortion {} but d_GH = {}",
            format_rational(&half),
            format_rational(&exact)
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metric::{random_metric_space, simplex, validate_metric};
    use crate::rational::int;
    use crate::solver::gh_exact;

    #[test]
    fn midpoint_formula() {
        let x = random_metric_space(3, 1).unwrap();
        let y = random_metric_space(3, 2).unwrap();
        let sigma = Relation::new([(0, 1), (2, 0)]).unwrap();
        let half = interpolate(&x, &y, &sigma, &ratio(1, 2)).unwrap();
        let expected = (x.dist(0, 2) + y.dist(1, 0)) / int(2);
        assert_eq!(half.realized.dist(0, 1), &expected);
        assert_eq!(half.realized.label(0), "p0|p1");
    }

    #[test]
    fn endpoints_recover_the_spaces() {
        let x = random_metric_space(3, 5).unwrap();
        let y = random_metric_space(4, 6).unwrap();
        let r = Correspondence::from_pairs([(0, 0), (0, 1), (1, 2), (2, 3), (2, 0)], 3, 4).unwrap();
        let ends = geodesic_samples(&x, &y, &r, &[int(0), int(1)]).unwrap();
        assert_eq!(ends[0].realized, x);
        assert_eq!(ends[1].realized, y);
        assert_eq!(ends[0].classes[0], vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn identity_relation_is_constant() {
        let x = random_metric_space(4, 8).unwrap();
        let id = Correspondence::identity(4).unwrap();
        for t in default_sample_grid() {
            let s = interpolate(&x, &x, id.relation(), &t).unwrap();
            assert_eq!(s.realized.matrix(), x.matrix());
        }
    }

    #[test]
    fn domain_errors() {
        let x = random_metric_space(2, 1).unwrap();
        let sigma = Relation::new([(0, 0)]).unwrap();
        assert!(matches!(interpolate(&x, &x, &sigma, &int(2)), Err(Error::Domain(_))));
        assert!(matches!(interpolate(&x, &x, &sigma, &int(0)), Err(Error::Domain(_))));
        assert!(interpolate(&x, &x, &sigma, &ratio(1, 3)).is_ok());
        let r = Correspondence::identity(3).unwrap();
        assert!(matches!(geodesic_samples(&x, &x, &r, &[int(0)]), Err(Error::Domain(_))));
    }

    #[test]
    fn point_to_pair_midpoint() {
        let p = simplex(1, &int(1)).unwrap();
        let d2 = simplex(2, &int(1)).unwrap();
        let r = Correspondence::full(1, 2).unwrap();
        let mid = &geodesic_samples(&p, &d2, &r, &[ratio(1, 2)]).unwrap()[0];
        assert_eq!(mid.realized.len(), 2);
        assert_eq!(mid.realized.dist(0, 1), &ratio(1, 2));
        assert_eq!(gh_exact(&p, &mid.realized).unwrap().distance, ratio(1, 4));
    }

    #[test]
    fn interior_spaces_are_metric() {
        for seed in 0..20 {
            let x = random_metric_space(3, seed).unwrap();
            let y = random_metric_space(3, seed + 40).unwrap();
            let sigma = Relation::new([(0, 0), (0, 1), (1, 1), (2, 2), (1, 0)]).unwrap();
            for t in [ratio(1, 5), ratio(1, 2), ratio(7, 8)] {
                let s = interpolate(&x, &y, &sigma, &t).unwrap();
                assert_eq!(s.realized.len(), 5);
                assert!(validate_metric(&s.realized.matrix()).unwrap().ok);
            }
        }
    }

    #[test]
    fn audit_detects_non_optimal() {
        let x = random_metric_space(3, 3).unwrap();
        let y = random_metric_space(3, 4).unwrap();
        let cfg = SolverConfig::default();
        let best = gh_exact(&x, &y).unwrap();
        audit_optimal(&x, &y, &best.optimal, &cfg).unwrap();
        let full = Correspondence::full(3, 3).unwrap();
        if crate::relation::distortion(&x, &y, full.relation()).unwrap() > best.distance.clone() * int(2) {
            assert!(matches!(audit_optimal(&x, &y, &full, &cfg), Err(Error::Hypothesis(_))));
        }
    }
}
