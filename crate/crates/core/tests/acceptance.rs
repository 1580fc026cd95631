//! Acceptance suite. Runs without the test harness so each criterion's
//! PASS/FAIL line is always printed; exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use ghseg_core::geodesic::geodesic_samples;
use ghseg_core::hausdorff::hausdorff_distance;
use ghseg_core::metric::{diameter, random_metric_space, simplex, validate_metric, PointSubset};
use ghseg_core::rational::{format_rational, int, ratio, Rational};
use ghseg_core::relation::distortion;
use ghseg_core::segments::*;
use ghseg_core::solver::{gh_with, Method, SolverConfig};
use ghseg_core::{FiniteMetricSpace, Result as CoreResult};
use num::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn gh(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Rational {
    gh_with(x, y, Method::BranchAndBound, &SolverConfig::default()).unwrap().distance
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Criterion 1: Branch-and-bound equals exhaustive enumeration on >= 200 pairs with
/// `nx * ny <= 16`, in under a minute.
fn solver_oracle_equivalence() -> Outcome {
    let cfg = SolverConfig::default();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let pairs = 240;
    for i in 0..pairs {
        let nx = rng.gen_range(1..=8);
        let ny = rng.gen_range(1..=(16 / nx).min(8));
        let x = random_metric_space(nx, rng.gen()).unwrap();
        let y = random_metric_space(ny, rng.gen()).unwrap();
        let bnb = gh_with(&x, &y, Method::BranchAndBound, &cfg).map_err(|e| e.to_string())?;
        let ex = gh_with(&x, &y, Method::Exhaustive, &cfg).map_err(|e| e.to_string())?;
        ensure(bnb.distance == ex.distance, || {
            format!(
                "pair {i} ({nx}x{ny}): bnb {} vs exhaustive {}",
                format_rational(&bnb.distance),
                format_rational(&ex.distance)
            )
        })?;
        ensure(bnb.optimal == ex.optimal, || format!("pair {i}: optimal correspondences differ"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{pairs} pairs agree exactly in {elapsed:.2?}"))
}

/// Criterion 2: Symmetry and triangle inequality on >= 100 random triples, size <= 4.
fn gh_metric_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let triples = 120;
    for i in 0..triples {
        let spaces: Vec<FiniteMetricSpace> =
            (0..3).map(|_| random_metric_space(rng.gen_range(1..=4), rng.gen()).unwrap()).collect();
        let mut d = vec![vec![int(0); 3]; 3];
        for a in 0..3 {
            for b in 0..3 {
                d[a][b] = gh(&spaces[a], &spaces[b]);
            }
        }
        for a in 0..3 {
            ensure(d[a][a] == int(0), || format!("triple {i}: d(X,X) != 0"))?;
            for b in 0..3 {
                ensure(d[a][b] == d[b][a], || format!("triple {i}: asymmetric ({a},{b})"))?;
                for c in 0..3 {
                    ensure(d[a][c] <= &d[a][b] + &d[b][c], || format!("triple {i}: triangle fails at ({a},{b},{c})"))?;
                }
            }
        }
    }
    Ok(format!("{triples} triples: symmetric, triangle inequality exact"))
}

/// Criterion 3: Along an optimal correspondence, `R_t` splits `d(X, Y)` exactly and
/// `d(R_s, R_t) = |s - t| d(X, Y)`.
fn geodesic_segment_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let grid = [int(0), ratio(1, 4), ratio(1, 2), ratio(3, 4), int(1)];
    let pairs = 60;
    let mut distances = 0;
    for i in 0..pairs {
        let x = random_metric_space(rng.gen_range(1..=4), rng.gen()).unwrap();
        let y = random_metric_space(rng.gen_range(1..=4), rng.gen()).unwrap();
        let best = gh_with(&x, &y, Method::BranchAndBound, &SolverConfig::default()).unwrap();
        let d_xy = best.distance.clone();
        let samples = geodesic_samples(&x, &y, &best.optimal, &grid).map_err(|e| e.to_string())?;
        for (t, s) in grid.iter().zip(&samples).take(4).skip(1) {
            let left = gh(&x, &s.realized);
            let right = gh(&s.realized, &y);
            distances += 2;
            ensure(&left + &right == d_xy, || {
                format!("pair {i}, t = {}: {} + {} != {}", format_rational(t), format_rational(&left), format_rational(&right), format_rational(&d_xy))
            })?;
            ensure(left == t * &d_xy, || format!("pair {i}: d(X, R_t) is not t d(X,Y)"))?;
        }
        for a in 0..grid.len() {
            for b in a + 1..grid.len() {
                let d = gh(&samples[a].realized, &samples[b].realized);
                distances += 1;
                let expected = (&grid[b] - &grid[a]).abs() * &d_xy;
                ensure(d == expected, || {
                    format!(
                        "pair {i}: d(R_{}, R_{}) = {} != {}",
                        format_rational(&grid[a]),
                        format_rational(&grid[b]),
                        format_rational(&d),
                        format_rational(&expected)
                    )
                })?;
            }
        }
    }
    Ok(format!("{pairs} pairs, {distances} exact distances along geodesics"))
}

/// Criterion 4: Star extension: lifted distortion never grows, `d(X, Z*) <= d(X, Z)`,
/// and `Z*` is a metric, on >= 100 instances with admissible `delta`.
fn star_inequalities() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut instances = 0;
    while instances < 120 {
        let x = random_metric_space(rng.gen_range(1..=4), rng.gen()).unwrap();
        let z = random_metric_space(rng.gen_range(1..=4), rng.gen()).unwrap();
        let d_xz = gh(&x, &z);
        if !d_xz.is_positive() {
            continue;
        }
        instances += 1;
        let r = random_correspondence(x.len(), z.len(), &mut rng);
        let z0 = rng.gen_range(0..z.len());
        let upper = admissible_delta(&d_xz, &d_xz).map_err(|e| e.to_string())?.upper;
        let delta = upper * ratio(rng.gen_range(1..=4), 4);
        let params = StarParams { z0, delta };
        let star = star_extension(&z, &params).map_err(|e| e.to_string())?;
        ensure(validate_metric(&star.matrix()).unwrap().ok, || format!("instance {instances}: Z* not a metric"))?;
        let before = distortion(&x, &z, r.relation()).unwrap();
        let after = distortion(&x, &star, lift_star(&r, z0).unwrap().relation()).unwrap();
        ensure(after <= before, || format!("instance {instances}: dis R* > dis R"))?;
        ensure(gh(&x, &star) <= d_xz, || format!("instance {instances}: d(X, Z*) > d(X, Z)"))?;
    }
    Ok(format!("{instances} instances: dis R* <= dis R, d(X,Z*) <= d(X,Z), Z* metric"))
}

struct GraftFixture {
    x: FiniteMetricSpace,
    y: FiniteMetricSpace,
    z: FiniteMetricSpace,
}

/// X, Y with at most 4 points and a geodesic midpoint Z of at most 4 points.
fn graft_fixture() -> GraftFixture {
    for seed in 0.. {
        let x = random_metric_space(3, seed).unwrap();
        let y = random_metric_space(3, seed + 10_000).unwrap();
        let best = gh_with(&x, &y, Method::BranchAndBound, &SolverConfig::default()).unwrap();
        if !best.distance.is_positive() || best.optimal.len() > 4 {
            continue;
        }
        let z = geodesic_samples(&x, &y, &best.optimal, &[ratio(1, 2)]).unwrap().remove(0).realized;
        return GraftFixture { x, y, z };
    }
    unreachable!()
}

/// Criterion 5: Simplex graft: `W(mu, m)` in `[X, Y]` for m in 2..=5, the graft points
/// are an isometric `mu Delta_m`, and lifted distortion never grows.
fn graft_end_to_end(f: &GraftFixture) -> Outcome {
    let opts = FamilyOptions::default();
    let ms = [2, 3, 4, 5];
    let family = build_segment_family(&f.x, &f.y, &f.z, &ms, &opts).map_err(|e| e.to_string())?;
    let plan = &family.plan;
    for member in &family.members {
        let c = &member.certificate;
        ensure(c.member && c.gap == int(0), || format!("m = {}: gap {}", member.m, format_rational(&c.gap)))?;
        let layout = GraftLayout { nz: f.z.len(), z_star: plan.z_star, m: member.m };
        for a in layout.simplex_points() {
            for b in layout.simplex_points() {
                let expected = if a == b { int(0) } else { plan.mu.clone() };
                ensure(member.space.dist(a, b) == &expected, || format!("m = {}: simplex edge ({a},{b}) is not mu", member.m))?;
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let trials = 100;
    for i in 0..trials {
        let m = ms[i % ms.len()];
        let w = &family.members[i % ms.len()].space;
        for (end, name) in [(&f.x, "X"), (&f.y, "Y")] {
            let r = random_correspondence(end.len(), f.z.len(), &mut rng);
            let v = lift_graft(&r, plan.z_star, m).unwrap();
            let before = distortion(end, &f.z, r.relation()).unwrap();
            let after = distortion(end, w, v.relation()).unwrap();
            ensure(after <= before, || format!("trial {i} ({name} side, m = {m}): dis V > dis R"))?;
        }
    }
    Ok(format!(
        "|Z| = {}, mu = {}, m in {ms:?} all certified; {} random lifts bounded",
        f.z.len(),
        format_rational(&plan.mu),
        2 * trials
    ))
}

fn brute_cover(space: &FiniteMetricSpace, eps: &Rational) -> usize {
    let n = space.len();
    (1u32..1 << n)
        .filter(|c| (0..n).all(|y| (0..n).any(|x| c & (1 << x) != 0 && space.dist(x, y) < eps)))
        .map(|c| c.count_ones() as usize)
        .min()
        .unwrap()
}

/// Criterion 6: `cov(W(mu, m), mu/4) >= m` on the criterion-5 family.
fn covering_blow_up(f: &GraftFixture) -> Outcome {
    let report = noncompactness_report(&f.x, &f.y, &f.z, 5, &FamilyOptions::default()).map_err(|e| e.to_string())?;
    ensure(report.eps == report.plan.mu.clone() / int(4), || "eps is not mu/4".into())?;
    for row in &report.rows {
        let w = simplex_graft(&f.z, &GraftParams { z_star: report.plan.z_star, mu: report.plan.mu.clone(), m: row.m }, true).unwrap();
        let oracle = brute_cover(&w, &report.eps);
        ensure(row.covering_number == oracle, || format!("m = {}: cov {} vs set-cover oracle {oracle}", row.m, row.covering_number))?;
        ensure(row.covering_number >= row.m, || format!("m = {}: cov {} < m", row.m, row.covering_number))?;
    }
    ensure(report.lower_bound_holds, || "report flag disagrees".into())?;
    let table: Vec<String> = report.rows.iter().map(|r| format!("{}:{}", r.m, r.covering_number)).collect();
    Ok(format!("eps = {}, (m:cov) = {}", format_rational(&report.eps), table.join(" ")))
}

/// Criterion 7: Closed forms, each confirmed by the exhaustive oracle first.
fn closed_forms() -> Outcome {
    let cfg = SolverConfig::default();
    #[allow(clippy::result_large_err)]
    let exhaustive = |a: &FiniteMetricSpace, b: &FiniteMetricSpace| -> CoreResult<Rational> {
        Ok(gh_with(a, b, Method::Exhaustive, &cfg)?.distance)
    };
    let point = simplex(1, &int(1)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..50 {
        let x = random_metric_space(rng.gen_range(1..=8), rng.gen()).unwrap();
        let expected = diameter(&x) / int(2);
        if x.len() <= 5 {
            ensure(brute_gh(&point, &x) == expected, || format!("space {i}: brute force disagrees with diam/2"))?;
        }
        ensure(exhaustive(&point, &x).unwrap() == expected, || format!("space {i}: exhaustive disagrees with diam/2"))?;
        ensure(gh(&point, &x) == expected, || format!("space {i}: d(Delta_1, X) != diam X / 2"))?;
    }

    let (d2, d3) = (simplex(2, &int(1)).unwrap(), simplex(3, &int(1)).unwrap());
    ensure(brute_gh(&d2, &d3) == ratio(1, 2), || "oracle: d(Delta_2, Delta_3) != 1/2".into())?;
    ensure(gh(&d2, &d3) == ratio(1, 2), || "d(Delta_2, Delta_3) != 1/2".into())?;

    let edges = [(int(1), int(2)), (ratio(1, 2), int(3)), (ratio(5, 2), ratio(2, 3)), (int(4), int(4))];
    for n in 1..=4 {
        for (l, k) in &edges {
            let a = simplex(n, l).unwrap();
            let b = simplex(n, k).unwrap();
            // A one-vertex simplex is a point whatever its edge length.
            let expected = if n == 1 { int(0) } else { (l - k).abs() / int(2) };
            if n <= 3 {
                ensure(brute_gh(&a, &b) == expected, || format!("oracle: n = {n} simplices"))?;
            }
            ensure(exhaustive(&a, &b).unwrap() == expected, || format!("exhaustive: n = {n} simplices"))?;
            ensure(gh(&a, &b) == expected, || {
                format!("d({} Delta_{n}, {} Delta_{n}) != |l - k|/2", format_rational(l), format_rational(k))
            })?;
        }
    }
    Ok("d(Delta_1, X) = diam/2 on 50 spaces; d(Delta_2, Delta_3) = 1/2; simplex pairs 2 <= n <= 4 (n = 1 gives 0)".into())
}

/// Criterion 8: Hausdorff distance is a metric on the non-empty subsets of random
/// 5-point spaces.
fn hausdorff_suites() -> Outcome {
    let subsets = non_empty_subsets(5);
    let k = subsets.len();
    let spaces = 4;
    for seed in 0..spaces {
        let x = random_metric_space(5, 800 + seed).unwrap();
        let views: Vec<PointSubset<'_>> = subsets.iter().map(|s| PointSubset::new(&x, s.clone()).unwrap()).collect();
        let mut d = vec![vec![int(0); k]; k];
        for a in 0..k {
            for b in 0..k {
                d[a][b] = hausdorff_distance(&views[a], &views[b]).unwrap().value;
                ensure(d[a][b] == brute_hausdorff(&x, &subsets[a], &subsets[b]), || format!("space {seed}: oracle mismatch"))?;
            }
        }
        for a in 0..k {
            for b in 0..k {
                ensure(d[a][b] == d[b][a], || format!("space {seed}: asymmetric"))?;
                ensure((d[a][b] == int(0)) == (a == b), || format!("space {seed}: indiscernibles fail at {a},{b}"))?;
                for c in 0..k {
                    ensure(d[a][c] <= &d[a][b] + &d[b][c], || format!("space {seed}: triangle fails"))?;
                }
            }
        }
    }
    Ok(format!("{spaces} spaces x {k} subsets: symmetric, triangle, identity of indiscernibles"))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() -> ExitCode {
    let fixture = graft_fixture();
    let criteria: Vec<Criterion<'_>> = vec![
        ("1 exact-solver oracle equivalence", Box::new(solver_oracle_equivalence)),
        ("2 GH metric axioms", Box::new(gh_metric_axioms)),
        ("3 geodesic segment identity", Box::new(geodesic_segment_identity)),
        ("4 star extension inequalities", Box::new(star_inequalities)),
        ("5 simplex graft end-to-end", Box::new(|| graft_end_to_end(&fixture))),
        ("6 covering-number blow-up", Box::new(|| covering_blow_up(&fixture))),
        ("7 known closed forms", Box::new(closed_forms)),
        ("8 Hausdorff metric suites", Box::new(hausdorff_suites)),
    ];
    let mut failed = Vec::new();
    for (name, run) in &criteria {
        match run() {
            Ok(detail) => println!("[PASS] {name}: {detail}"),
            Err(detail) => {
                println!("[FAIL] {name}: {detail}");
                failed.push(*name);
            }
        }
    }
    println!("acceptance: {} passed; {} failed", criteria.len() - failed.len(), failed.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
