//! The `ghseg` command-line front end.
//!
//! Every command produces one JSON report on stdout (or `--out`). Rationals
//! are `"p/q"` strings and correspondences are lists of label pairs. Reports
//! carry no timestamps unless `--timing` is given, so identical inputs give
//! byte-identical output.

// Errors carry exact bounds and full validation reports.
#![allow(clippy::result_large_err)]

pub mod config;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use ghseg_core::cover::covering_number;
use ghseg_core::format::{correspondence_to_json, parse_correspondence, parse_space, to_json, to_json_value, MatrixFormat};
use ghseg_core::geodesic::{audit_optimal, geodesic_samples};
use ghseg_core::metric::{diameter, random_metric_space};
use ghseg_core::rational::{format_rational, int, parse_rational, Rational};
use ghseg_core::relation::distortion;
use ghseg_core::segments::{
    admissible_delta, build_segment_family, default_delta, graft_distortion_parts, lift_graft, lift_star,
    noncompactness_report, plan_graft, segment_membership, simplex_graft, star_distortion_parts, star_extension,
    FamilyOptions, GraftLayout, GraftParams, GraftPlan, SegmentCertificate, StarParams,
};
use ghseg_core::{gh_with, Correspondence, Error, FiniteMetricSpace, Method};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "ghseg", version, about = "Exact Gromov-Hausdorff distances, geodesics and segment families")]
pub struct Cli {
    /// TOML run configuration.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Node budget per search phase.
    #[arg(long, global = true, value_name = "N")]
    pub limit_nodes: Option<u64>,
    /// Seed for commands that sample.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Search first-level subtrees in parallel.
    #[arg(long, global = true)]
    pub parallel: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Add wall-clock time to the report. Makes output non-deterministic.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MethodArg {
    Exhaustive,
    Bnb,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Exhaustive => Method::Exhaustive,
            MethodArg::Bnb => Method::BranchAndBound,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the metric axioms.
    Validate { file: PathBuf },
    /// Exact d_GH with an optimal correspondence.
    Gh {
        x: PathBuf,
        y: PathBuf,
        #[arg(long, value_enum, default_value = "bnb")]
        method: MethodArg,
        #[arg(long, value_name = "PATH")]
        emit_correspondence: Option<PathBuf>,
    },
    /// Sample the straight-line geodesic through an optimal correspondence.
    Geodesic {
        x: PathBuf,
        y: PathBuf,
        /// Comma-separated parameters in [0,1].
        #[arg(long, value_delimiter = ',')]
        ts: Option<Vec<String>>,
        #[arg(long, value_name = "DIR")]
        out_dir: PathBuf,
        /// Use this correspondence instead of solving; it must be optimal.
        #[arg(long, value_name = "PATH")]
        correspondence: Option<PathBuf>,
        /// Skip the per-sample distance certificates.
        #[arg(long)]
        skip_certify: bool,
    },
    /// Certify whether Z lies in the segment [X, Y].
    SegmentCheck { x: PathBuf, y: PathBuf, z: PathBuf },
    /// Attach a new point at distance delta to the ball around z0.
    Star {
        z: PathBuf,
        #[arg(long, value_name = "LABEL")]
        z0: String,
        #[arg(long, value_name = "P/Q")]
        delta: Option<String>,
        /// Endpoints to certify the extension against.
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        between: Option<Vec<PathBuf>>,
        #[arg(long, value_name = "PATH")]
        emit_space: Option<PathBuf>,
    },
    /// Replace a point with an m-point simplex of edge mu.
    Graft {
        z: PathBuf,
        #[arg(long, value_name = "LABEL")]
        zstar: Option<String>,
        #[arg(long, value_name = "P/Q")]
        mu: Option<String>,
        #[arg(long)]
        m: usize,
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        between: Option<Vec<PathBuf>>,
        /// Allow mu at or above twice the isolation radius.
        #[arg(long)]
        no_strict: bool,
        #[arg(long, value_name = "PATH")]
        emit_space: Option<PathBuf>,
    },
    /// Build and certify grafts of Z for several simplex sizes.
    Family {
        x: PathBuf,
        y: PathBuf,
        z: PathBuf,
        #[arg(long, value_delimiter = ',')]
        ms: Option<Vec<usize>>,
        #[arg(long, value_name = "LABEL")]
        zstar: Option<String>,
        #[arg(long, value_name = "P/Q")]
        mu: Option<String>,
        /// Alias for the global --out.
        #[arg(long, value_name = "PATH")]
        report: Option<PathBuf>,
    },
    /// Covering numbers of the graft family for m = 1..=m_max.
    Report {
        x: PathBuf,
        y: PathBuf,
        z: PathBuf,
        #[arg(long)]
        m_max: usize,
        #[arg(long, value_name = "LABEL")]
        zstar: Option<String>,
        #[arg(long, value_name = "P/Q")]
        mu: Option<String>,
        /// CSV with columns m,cov.
        #[arg(long, value_name = "PATH")]
        plot_data: Option<PathBuf>,
    },
    /// A seeded random metric space with half-integer distances.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, value_name = "PATH")]
        emit_space: Option<PathBuf>,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", .path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Config(_) => 3,
            CliError::Core(e) => match e {
                Error::Malformed(_) => 3,
                Error::Validation(_) => 4,
                Error::Domain(_) => 5,
                Error::Resource { .. } => 6,
                Error::Hypothesis(_) => 7,
                Error::Internal(_) => 1,
            },
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Config(_) => "config",
            CliError::Core(e) => match e {
                Error::Malformed(_) => "malformed",
                Error::Validation(_) => "validation",
                Error::Domain(_) => "domain",
                Error::Resource { .. } => "resource",
                Error::Hypothesis(_) => "hypothesis",
                Error::Internal(_) => "internal",
            },
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({ "kind": self.kind(), "message": self.to_string(), "exit_code": self.exit_code() });
        match self {
            CliError::Core(Error::Validation(report)) => v["violations"] = json!(report.violations),
            CliError::Core(Error::Resource { lower, upper, nodes, .. }) => {
                v["lower_bound"] = json!(format_rational(lower));
                v["upper_bound"] = json!(format_rational(upper));
                v["nodes_explored"] = json!(nodes);
            }
            _ => {}
        }
        json!({ "error": v })
    }
}

/// A finished command: the report and the exit status it carries.
pub struct Outcome {
    pub report: Value,
    pub exit_code: u8,
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.to_path_buf(), source }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(io_err(path))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Reads a matrix file. Returns the raw text and its SHA-256.
pub fn read_input(path: &Path) -> Result<(String, String), CliError> {
    let bytes = std::fs::read(path).map_err(io_err(path))?;
    let digest = sha256_hex(&bytes);
    let text = String::from_utf8(bytes).map_err(|_| Error::Malformed(format!("{} is not UTF-8", path.display())))?;
    Ok((text, digest))
}

/// Reads and validates a metric space; the format follows the file extension.
pub fn ingest(path: &Path) -> Result<FiniteMetricSpace, CliError> {
    let (text, _) = read_input(path)?;
    Ok(parse_space(&text, MatrixFormat::from_path(path))?)
}

fn rat(r: &Rational) -> Value {
    Value::String(format_rational(r))
}

fn parse_arg(text: &str) -> Result<Rational, CliError> {
    parse_rational(text).map_err(|e| CliError::Config(e.to_string()))
}

fn lookup(space: &FiniteMetricSpace, label: &str) -> Result<usize, CliError> {
    space.index_of(label).ok_or_else(|| Error::Domain(format!("no point labelled `{label}`")).into())
}

fn labelled(r: &Correspondence, a: &FiniteMetricSpace, b: &FiniteMetricSpace) -> Value {
    correspondence_to_json(r, a, b)
}

fn certificate_json(c: &SegmentCertificate, x: &FiniteMetricSpace, y: &FiniteMetricSpace, z: &FiniteMetricSpace) -> Value {
    json!({
        "member": c.member,
        "interior": c.is_interior(),
        "gap": rat(&c.gap),
        "d_xz": { "distance": rat(&c.d_xz), "correspondence": labelled(&c.optimal_xz, x, z) },
        "d_zy": { "distance": rat(&c.d_zy), "correspondence": labelled(&c.optimal_zy, z, y) },
        "d_xy": { "distance": rat(&c.d_xy), "correspondence": labelled(&c.optimal_xy, x, y) },
        "nodes_explored": c.nodes_explored,
    })
}

fn plan_json(p: &GraftPlan, x: &FiniteMetricSpace, y: &FiniteMetricSpace, z: &FiniteMetricSpace) -> Value {
    json!({
        "base": certificate_json(&p.base, x, y, z),
        "z_star": z.label(p.z_star),
        "isolation_radius": p.isolation_radius.as_ref().map(rat),
        "admissible_mu": p.admissible_mu.to_string(),
        "mu": rat(&p.mu),
    })
}

struct Ctx {
    config: RunConfig,
    inputs: Vec<Value>,
    nodes: u64,
}

impl Ctx {
    fn load(&mut self, path: &Path) -> Result<FiniteMetricSpace, CliError> {
        let (text, digest) = read_input(path)?;
        let format = MatrixFormat::from_path(path);
        let mut record = json!({
            "path": path.display().to_string(),
            "sha256": digest,
            "format": if format == MatrixFormat::Csv { "csv" } else { "json" },
        });
        let parsed = parse_space(&text, format);
        if let Ok(space) = &parsed {
            record["points"] = json!(space.len());
        }
        self.inputs.push(record);
        Ok(parsed?)
    }

    fn certify(
        &mut self,
        x: &FiniteMetricSpace,
        y: &FiniteMetricSpace,
        z: &FiniteMetricSpace,
    ) -> Result<SegmentCertificate, CliError> {
        let c = segment_membership(x, y, z, &self.config.solver)?;
        self.nodes += c.nodes_explored;
        Ok(c)
    }

    fn options(&self, z: &FiniteMetricSpace, zstar: &Option<String>, mu: &Option<String>) -> Result<FamilyOptions, CliError> {
        let z_star = zstar.as_deref().map(|l| lookup(z, l)).transpose()?;
        let mu = mu.as_ref().or(self.config.mu.as_ref()).map(|s| parse_arg(s)).transpose()?;
        Ok(FamilyOptions { z_star, mu, config: self.config.solver.clone() })
    }

    fn plan_nodes(&mut self, p: &GraftPlan) {
        self.nodes += p.base.nodes_explored;
    }
}

/// Loads the configuration, applies command-line overrides and runs the
/// command. `echo` is recorded verbatim in the report.
pub fn run(cli: &Cli, echo: &[String]) -> Result<Outcome, CliError> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(n) = cli.limit_nodes {
        config.solver.node_budget = Some(n);
    }
    if cli.parallel {
        config.solver.parallel = true;
    }
    if let Some(out) = &cli.out {
        config.out = Some(out.clone());
    }
    if let Command::Family { report: Some(out), .. } = &cli.command {
        config.out = Some(out.clone());
    }
    config.validate()?;

    let start = Instant::now();
    let mut ctx = Ctx { config, inputs: Vec::new(), nodes: 0 };
    let mut exit_code = 0;
    let result = match &cli.command {
        Command::Validate { file } => match ctx.load(file) {
            Ok(space) => json!({
                "ok": true,
                "violations": [],
                "points": space.len(),
                "labels": space.labels(),
                "diameter": rat(&diameter(&space)),
            }),
            Err(CliError::Core(Error::Validation(report))) => {
                exit_code = 4;
                json!(report)
            }
            Err(e) => return Err(e),
        },
        Command::Gh { x, y, method, emit_correspondence } => {
            let (x, y) = (ctx.load(x)?, ctx.load(y)?);
            let r = gh_with(&x, &y, (*method).into(), &ctx.config.solver)?;
            ctx.nodes += r.nodes_explored;
            let pairs = labelled(&r.optimal, &x, &y);
            if let Some(path) = emit_correspondence {
                write_file(path, &format!("{}\n", pairs))?;
            }
            json!({
                "distance": rat(&r.distance),
                "distortion": rat(&distortion(&x, &y, r.optimal.relation())?),
                "lower_bound": rat(&r.lower_bound),
                "method": r.method,
                "correspondence": pairs,
            })
        }
        Command::Geodesic { x, y, ts, out_dir, correspondence, skip_certify } => {
            geodesic(&mut ctx, x, y, ts, out_dir, correspondence.as_deref(), *skip_certify)?
        }
        Command::SegmentCheck { x, y, z } => {
            let (x, y, z) = (ctx.load(x)?, ctx.load(y)?, ctx.load(z)?);
            let c = ctx.certify(&x, &y, &z)?;
            certificate_json(&c, &x, &y, &z)
        }
        Command::Star { z, z0, delta, between, emit_space } => {
            star(&mut ctx, z, z0, delta.as_deref(), between.as_deref(), emit_space.as_deref())?
        }
        Command::Graft { z, zstar, mu, m, between, no_strict, emit_space } => {
            let strict = ctx.config.strict && !no_strict;
            graft(&mut ctx, z, zstar, mu, *m, between.as_deref(), strict, emit_space.as_deref())?
        }
        Command::Family { x, y, z, ms, zstar, mu, .. } => {
            let (x, y, z) = (ctx.load(x)?, ctx.load(y)?, ctx.load(z)?);
            let ms = ms.clone().or_else(|| ctx.config.ms.clone()).unwrap_or_else(|| vec![2, 3, 4]);
            if ms.contains(&0) {
                return Err(Error::Domain("simplex sizes must be positive".into()).into());
            }
            let opts = ctx.options(&z, zstar, mu)?;
            let family = build_segment_family(&x, &y, &z, &ms, &opts)?;
            ctx.plan_nodes(&family.plan);
            let eps = family.plan.mu.clone() / int(4);
            let mut members = Vec::new();
            let mut covering = Vec::new();
            for member in &family.members {
                ctx.nodes += member.certificate.nodes_explored;
                members.push(json!({
                    "m": member.m,
                    "points": member.space.len(),
                    "certificate": certificate_json(&member.certificate, &x, &y, &member.space),
                }));
                covering.push(json!({ "m": member.m, "cov": covering_number(&member.space, &eps)? }));
            }
            json!({
                "plan": plan_json(&family.plan, &x, &y, &z),
                "members": members,
                "all_members_certified": family.members.iter().all(|m| m.certificate.member),
                "eps": rat(&eps),
                "covering": covering,
            })
        }
        Command::Report { x, y, z, m_max, zstar, mu, plot_data } => {
            let (x, y, z) = (ctx.load(x)?, ctx.load(y)?, ctx.load(z)?);
            let opts = ctx.options(&z, zstar, mu)?;
            let rep = noncompactness_report(&x, &y, &z, *m_max, &opts)?;
            ctx.plan_nodes(&rep.plan);
            if let Some(path) = plot_data {
                let mut csv = String::from("m,cov\n");
                for row in &rep.rows {
                    csv.push_str(&format!("{},{}\n", row.m, row.covering_number));
                }
                write_file(path, &csv)?;
            }
            json!({
                "plan": plan_json(&rep.plan, &x, &y, &z),
                "eps": rat(&rep.eps),
                "rows": rep.rows,
                "lower_bound_holds": rep.lower_bound_holds,
            })
        }
        Command::Random { n, emit_space } => {
            let space = random_metric_space(*n, cli.seed)?;
            if let Some(path) = emit_space {
                write_file(path, &to_json(&space))?;
            }
            json!({ "seed": cli.seed, "space": to_json_value(&space) })
        }
    };

    let mut report = json!({
        "command": echo,
        "inputs": ctx.inputs,
        "solver": ctx.config.solver,
        "result": result,
        "nodes_explored": ctx.nodes,
    });
    if cli.timing {
        report["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    if let Some(path) = &ctx.config.out {
        write_file(path, &render(&report))?;
    }
    Ok(Outcome { report, exit_code })
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn geodesic(
    ctx: &mut Ctx,
    x: &Path,
    y: &Path,
    ts: &Option<Vec<String>>,
    out_dir: &Path,
    supplied: Option<&Path>,
    skip_certify: bool,
) -> Result<Value, CliError> {
    let (x, y) = (ctx.load(x)?, ctx.load(y)?);
    let grid = match ts {
        Some(items) => config::parse_grid(items)?,
        None => ctx.config.grid()?,
    };
    let solved = gh_with(&x, &y, Method::BranchAndBound, &ctx.config.solver)?;
    ctx.nodes += solved.nodes_explored;
    let r = match supplied {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(io_err(path))?;
            let r = parse_correspondence(&text, &x, &y)?;
            audit_optimal(&x, &y, &r, &ctx.config.solver)?;
            r
        }
        None => solved.optimal.clone(),
    };
    std::fs::create_dir_all(out_dir).map_err(io_err(out_dir))?;

    let mut samples = Vec::new();
    for (k, s) in geodesic_samples(&x, &y, &r, &grid)?.iter().enumerate() {
        let file = format!("sample_{k}.json");
        write_file(&out_dir.join(&file), &to_json(&s.realized))?;
        let mut entry = json!({ "t": rat(&s.t), "file": file, "points": s.realized.len() });
        if !skip_certify {
            let c = ctx.certify(&x, &y, &s.realized)?;
            let expected_xz = &s.t * &solved.distance;
            let expected_zy = (int(1) - &s.t) * &solved.distance;
            entry["certificate"] = certificate_json(&c, &x, &y, &s.realized);
            entry["on_geodesic"] = json!(c.d_xz == expected_xz && c.d_zy == expected_zy);
        }
        samples.push(entry);
    }
    let manifest = json!({
        "distance": rat(&solved.distance),
        "correspondence": labelled(&r, &x, &y),
        "samples": samples,
    });
    write_file(&out_dir.join("manifest.json"), &render(&manifest))?;
    Ok(manifest)
}

fn endpoints(ctx: &mut Ctx, between: Option<&[PathBuf]>) -> Result<Option<(FiniteMetricSpace, FiniteMetricSpace)>, CliError> {
    match between {
        Some([x, y]) => Ok(Some((ctx.load(x)?, ctx.load(y)?))),
        Some(_) => Err(CliError::Config("--between takes exactly two files".into())),
        None => Ok(None),
    }
}

fn star(
    ctx: &mut Ctx,
    z: &Path,
    z0: &str,
    delta: Option<&str>,
    between: Option<&[PathBuf]>,
    emit: Option<&Path>,
) -> Result<Value, CliError> {
    let z = ctx.load(z)?;
    let ends = endpoints(ctx, between)?;
    let z0 = lookup(&z, z0)?;
    let delta = delta.or(ctx.config.delta.as_deref()).map(parse_arg).transpose()?;

    let mut result = json!({ "z0": z.label(z0) });
    let base = match &ends {
        Some((x, y)) => {
            let c = ctx.certify(x, y, &z)?;
            if !c.is_interior() {
                return Err(Error::Hypothesis("Z must be an interior member of [X, Y]".into()).into());
            }
            let interval = admissible_delta(&c.d_xz, &c.d_zy)?;
            result["admissible_delta"] = json!(interval.to_string());
            result["base"] = certificate_json(&c, x, y, &z);
            if let Some(d) = &delta {
                if !interval.contains(d) {
                    return Err(Error::Hypothesis(format!("delta = {} is outside {interval}", format_rational(d))).into());
                }
            }
            Some(c)
        }
        None => None,
    };
    let delta = match (delta, &base) {
        (Some(d), _) => d,
        (None, Some(c)) => default_delta(&c.d_xz, &c.d_zy)?,
        (None, None) => return Err(CliError::Config("--delta is required without --between".into())),
    };
    let params = StarParams { z0, delta: delta.clone() };
    let extended = star_extension(&z, &params)?;
    if let Some(path) = emit {
        write_file(path, &to_json(&extended))?;
    }
    result["delta"] = rat(&delta);
    result["space"] = to_json_value(&extended);

    if let (Some((x, y)), Some(c)) = (&ends, &base) {
        let from_x = lift_star(&c.optimal_xz, z0)?;
        let from_y = lift_star(&c.optimal_zy.transpose(), z0)?;
        result["distortion_x"] = json!(star_distortion_parts(x, &extended, &from_x, &params)?);
        result["distortion_y"] = json!(star_distortion_parts(y, &extended, &from_y, &params)?);
        let cert = ctx.certify(x, y, &extended)?;
        result["certificate"] = certificate_json(&cert, x, y, &extended);
    }
    Ok(result)
}

#[allow(clippy::too_many_arguments)]
fn graft(
    ctx: &mut Ctx,
    z: &Path,
    zstar: &Option<String>,
    mu: &Option<String>,
    m: usize,
    between: Option<&[PathBuf]>,
    strict: bool,
    emit: Option<&Path>,
) -> Result<Value, CliError> {
    let z = ctx.load(z)?;
    let ends = endpoints(ctx, between)?;
    let opts = ctx.options(&z, zstar, mu)?;
    let mut result = json!({});

    let plan = match &ends {
        Some((x, y)) => {
            let plan = plan_graft(x, y, &z, &opts)?;
            ctx.plan_nodes(&plan);
            result["plan"] = plan_json(&plan, x, y, &z);
            Some(plan)
        }
        None => None,
    };
    let params = match &plan {
        Some(p) => GraftParams { z_star: p.z_star, mu: p.mu.clone(), m },
        None => GraftParams {
            z_star: opts.z_star.ok_or_else(|| CliError::Config("--zstar is required without --between".into()))?,
            mu: opts.mu.ok_or_else(|| CliError::Config("--mu is required without --between".into()))?,
            m,
        },
    };
    let w = simplex_graft(&z, &params, strict)?;
    if let Some(path) = emit {
        write_file(path, &to_json(&w))?;
    }
    result["z_star"] = json!(z.label(params.z_star));
    result["mu"] = rat(&params.mu);
    result["m"] = json!(m);
    result["space"] = to_json_value(&w);

    if let (Some((x, y)), Some(p)) = (&ends, &plan) {
        let layout = GraftLayout { nz: z.len(), z_star: p.z_star, m };
        let from_x = lift_graft(&p.base.optimal_xz, p.z_star, m)?;
        let from_y = lift_graft(&p.base.optimal_zy.transpose(), p.z_star, m)?;
        result["distortion_x"] = json!(graft_distortion_parts(x, &w, &from_x, &layout)?);
        result["distortion_y"] = json!(graft_distortion_parts(y, &w, &from_y, &layout)?);
        let cert = ctx.certify(x, y, &w)?;
        result["certificate"] = certificate_json(&cert, x, y, &w);
    }
    Ok(result)
}

/// Runs the parsed command line, writes the report or error, and returns the
/// process exit code.
pub fn execute(cli: &Cli, echo: &[String]) -> u8 {
    match run(cli, echo) {
        Ok(outcome) => {
            if cli.out.is_none() && !matches!(&cli.command, Command::Family { report: Some(_), .. }) {
                print!("{}", render(&outcome.report));
            }
            outcome.exit_code
        }
        Err(e) => {
            eprint!("{}", render(&e.to_json()));
            e.exit_code()
        }
    }
}
