//! Finite metric spaces with exact rational distances.
//!
//! A [`FiniteMetricSpace`] can only be built from a matrix that passes
//! [`validate_metric`]; every other operation in the crate relies on that.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{format_rational, ratio, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    ZeroDiagonal,
    Symmetry,
    Positivity,
    Triangle,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::ZeroDiagonal => "zero-diagonal",
            Axiom::Symmetry => "symmetry",
            Axiom::Positivity => "positivity",
            Axiom::Triangle => "triangle",
        })
    }
}

/// One failed axiom instance.
///
/// The witness indexes the matrix: `(i)` for the diagonal, `(i, j)` for
/// symmetry and positivity, and `(i, j, k)` for the triangle inequality
/// `d[i][k] <= d[i][j] + d[j][k]`. `lhs` and `rhs` are the two sides of the
/// failed relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    #[serde(with = "crate::rational::as_string")]
    pub lhs: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        ValidationReport { ok: violations.is_empty(), violations }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        if let Some(v) = self.violations.first() {
            let witness: Vec<String> = v.witness.iter().map(|i| i.to_string()).collect();
            let relation = match v.axiom {
                Axiom::ZeroDiagonal | Axiom::Symmetry => "!=",
                Axiom::Positivity => "<=",
                Axiom::Triangle => ">",
            };
            write!(
                f,
                "; first: {} at ({}): {} {} {}",
                v.axiom,
                witness.join(","),
                format_rational(&v.lhs),
                relation,
                format_rational(&v.rhs)
            )?;
        }
        Ok(())
    }
}

/// Checks the metric axioms on a square matrix and reports every violation.
///
/// Non-square or negative input is a malformed-input error rather than a
/// failed report.
#[allow(clippy::needless_range_loop)]
pub fn validate_metric(matrix: &[Vec<Rational>]) -> Result<ValidationReport> {
    let n = matrix.len();
    if n == 0 {
        return Err(Error::Malformed("distance matrix is empty".into()));
    }
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Malformed(format!(
                "distance matrix is not square: row {i} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(j) = row.iter().position(|d| d.is_negative()) {
            return Err(Error::Malformed(format!("negative distance at ({i},{j})")));
        }
    }

    let zero = Rational::zero();
    let mut violations = Vec::new();
    for i in 0..n {
        if !matrix[i][i].is_zero() {
            violations.push(Violation {
                axiom: Axiom::ZeroDiagonal,
                witness: vec![i],
                lhs: matrix[i][i].clone(),
                rhs: zero.clone(),
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if matrix[i][j] != matrix[j][i] {
                violations.push(Violation {
                    axiom: Axiom::Symmetry,
                    witness: vec![i, j],
                    lhs: matrix[i][j].clone(),
                    rhs: matrix[j][i].clone(),
                });
            }
            if matrix[i][j].is_zero() || matrix[j][i].is_zero() {
                violations.push(Violation {
                    axiom: Axiom::Positivity,
                    witness: vec![i, j],
                    lhs: matrix[i][j].clone().min(matrix[j][i].clone()),
                    rhs: zero.clone(),
                });
            }
        }
    }
    for i in 0..n {
        for k in i + 1..n {
            for j in 0..n {
                if j == i || j == k {
                    continue;
                }
                let via = &matrix[i][j] + &matrix[j][k];
                if matrix[i][k] > via {
                    violations.push(Violation {
                        axiom: Axiom::Triangle,
                        witness: vec![i, j, k],
                        lhs: matrix[i][k].clone(),
                        rhs: via,
                    });
                }
            }
        }
    }
    Ok(ValidationReport::from_violations(violations))
}

/// A finite metric space: labelled points and an exact distance matrix.
///
/// Immutable after construction. Construction validates the metric axioms,
/// so holding a value is proof that the matrix is a genuine metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Rational>,
}

impl FiniteMetricSpace {
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        if labels.len() != matrix.len() {
            return Err(Error::Malformed(format!(
                "{} labels for a {}-row distance matrix",
                labels.len(),
                matrix.len()
            )));
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::Malformed(format!("duplicate label `{label}`")));
            }
        }
        let report = validate_metric(&matrix)?;
        if !report.ok {
            return Err(Error::Validation(report));
        }
        Ok(FiniteMetricSpace { labels, dist: matrix.into_iter().flatten().collect() })
    }

    /// Builds a space with labels `p0, p1, ...`.
    pub fn from_matrix(matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let labels = (0..matrix.len()).map(|i| format!("p{i}")).collect();
        Self::new(labels, matrix)
    }

    /// Points on the real line at the given coordinates.
    pub fn on_line(coords: &[Rational]) -> Result<Self> {
        let matrix = coords
            .iter()
            .map(|a| coords.iter().map(|b| (a - b).abs()).collect())
            .collect();
        Self::from_matrix(matrix)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.dist[i * self.len() + j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        let n = self.len();
        &self.dist[i * n..(i + 1) * n]
    }

    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        (0..self.len()).map(|i| self.row(i).to_vec()).collect()
    }

    /// Largest distance from `i` to any point of the space.
    pub fn eccentricity(&self, i: usize) -> Rational {
        crate::rational::max_or_zero(self.row(i))
    }

    pub fn check_index(&self, i: usize) -> Result<()> {
        if i < self.len() {
            Ok(())
        } else {
            Err(Error::Domain(format!("point index {i} out of range for a {}-point space", self.len())))
        }
    }

    /// A label not yet used in this space, derived from `base`.
    pub(crate) fn fresh_label(&self, base: &str) -> String {
        let mut candidate = base.to_string();
        while self.index_of(&candidate).is_some() {
            candidate.push('\'');
        }
        candidate
    }
}

/// A non-empty set of points of one space.
#[derive(Debug, Clone)]
pub struct PointSubset<'a> {
    space: &'a FiniteMetricSpace,
    indices: BTreeSet<usize>,
}

impl<'a> PointSubset<'a> {
    pub fn new(space: &'a FiniteMetricSpace, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let indices: BTreeSet<usize> = indices.into_iter().collect();
        if indices.is_empty() {
            return Err(Error::Domain("point subset must be non-empty".into()));
        }
        for &i in &indices {
            space.check_index(i)?;
        }
        Ok(PointSubset { space, indices })
    }

    pub fn from_labels<S: AsRef<str>>(space: &'a FiniteMetricSpace, labels: &[S]) -> Result<Self> {
        let indices = labels
            .iter()
            .map(|l| {
                space
                    .index_of(l.as_ref())
                    .ok_or_else(|| Error::Domain(format!("unknown label `{}`", l.as_ref())))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, indices)
    }

    pub fn all(space: &'a FiniteMetricSpace) -> Self {
        PointSubset { space, indices: (0..space.len()).collect() }
    }

    pub fn space(&self) -> &'a FiniteMetricSpace {
        self.space
    }

    pub fn indices(&self) -> &BTreeSet<usize> {
        &self.indices
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.indices.iter().copied()
    }
}

pub fn diameter(space: &FiniteMetricSpace) -> Rational {
    crate::rational::max_or_zero(space.dist.iter())
}

/// Closed ball `{x : |x center| <= r}`.
pub fn closed_ball<'a>(space: &'a FiniteMetricSpace, center: usize, r: &Rational) -> Result<PointSubset<'a>> {
    space.check_index(center)?;
    if r.is_negative() {
        return Err(Error::Domain(format!("ball radius must be non-negative, got {}", format_rational(r))));
    }
    let members = (0..space.len()).filter(|&x| space.dist(center, x) <= r);
    PointSubset::new(space, members)
}

/// The simplex `lambda * Delta_n`: `n` points, all pairwise distances `lambda`.
pub fn simplex(n: usize, lambda: &Rational) -> Result<FiniteMetricSpace> {
    if n == 0 {
        return Err(Error::Domain("a simplex needs at least one vertex".into()));
    }
    if !lambda.is_positive() {
        return Err(Error::Domain(format!("simplex edge must be positive, got {}", format_rational(lambda))));
    }
    let matrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::zero() } else { lambda.clone() }).collect())
        .collect();
    let labels = (0..n).map(|i| format!("v{i}")).collect();
    FiniteMetricSpace::new(labels, matrix)
}

/// Distance from `z` to the nearest other point.
pub fn isolation_radius(space: &FiniteMetricSpace, z: usize) -> Result<Rational> {
    space.check_index(z)?;
    (0..space.len())
        .filter(|&w| w != z)
        .map(|w| space.dist(z, w))
        .min()
        .cloned()
        .ok_or_else(|| Error::Domain("isolation radius is undefined on a one-point space".into()))
}

/// A deterministic pseudo-random metric space on `n` points.
///
/// Draws a symmetric matrix with entries `k/2`, `k` in `1..=8`, and takes its
/// shortest-path closure. Entries stay positive, so the closure is a metric.
#[allow(clippy::needless_range_loop)]
pub fn random_metric_space(n: usize, seed: u64) -> Result<FiniteMetricSpace> {
    if n == 0 {
        return Err(Error::Domain("a metric space needs at least one point".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let d = ratio(rng.gen_range(1..=8), 2);
            m[i][j] = d.clone();
            m[j][i] = d;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = &m[i][k] + &m[k][j];
                if via < m[i][j] {
                    m[i][j] = via;
                }
            }
        }
    }
    FiniteMetricSpace::from_matrix(m)
}
