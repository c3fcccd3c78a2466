use std::time::Instant;

use cms_core::bipart::{extremal_pair, pi_inverse, pi_map, sigma_map, Bipartition};
use cms_core::diagram::{eq_class, verify_class, Picture};
use cms_core::rootsys::{singular_minus, Weight};
use cms_core::spectral::{
    eigenfunction, gen_eigenspace_with, image_algebra, sampled_dimension, spectral_split, Limits,
};
use cms_core::{Error, Matrix, Partition};
use num_rational::BigRational;
use serde_json::{json, Value};
use thiserror::Error as ThisError;

use crate::report::Report;
use crate::suites::{bernoulli_suite, bijection_suite, commute_suite, spectral_suite, Interrupted};

/// Command failures, each with its own exit code.
#[derive(Debug, ThisError)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Domain(String),
    #[error("{0}")]
    Violation(String),
    #[error("{message}")]
    Resource {
        message: String,
        partial: Option<Box<Report>>,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Violation(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Resource { .. } => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => CliError::Usage(e.to_string()),
            Error::Resource(_) => CliError::Resource {
                message: e.to_string(),
                partial: None,
            },
            Error::Violation(_) => CliError::Violation(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

/// Shared options.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub timing: bool,
    pub k_sample: Option<BigRational>,
    pub limits: Limits,
}

/// Reads `CMS_MAX_CELLS`; a malformed value is a usage error.
pub fn limits_from_env() -> Result<Limits, CliError> {
    match std::env::var("CMS_MAX_CELLS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(|max_support| Limits { max_support })
            .map_err(|_| {
                CliError::Usage(format!(
                    "CMS_MAX_CELLS must be a positive integer, got {v:?}"
                ))
            }),
        Err(_) => Ok(Limits::default()),
    }
}

pub fn parse_weight(s: &str, n: usize, m: usize) -> Result<Weight, CliError> {
    let w: Weight = s
        .parse()
        .map_err(|e: Error| CliError::Usage(format!("bad weight {s:?}: {e}")))?;
    if w.dims() != (n, m) {
        return Err(CliError::Usage(format!(
            "weight {s:?} has block sizes {:?}, expected ({n}, {m})",
            w.dims()
        )));
    }
    Ok(w)
}

pub fn parse_partition(s: &str) -> Result<Partition, CliError> {
    s.parse()
        .map_err(|e: Error| CliError::Usage(format!("bad partition {s:?}: {e}")))
}

pub fn parse_rational(s: &str) -> Result<BigRational, CliError> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad rational {s:?}")))
}

fn strings<T: ToString>(items: &[T]) -> Value {
    Value::Array(items.iter().map(|x| Value::String(x.to_string())).collect())
}

fn block_vector(v: &[i64], n: usize) -> String {
    let show = |s: &[i64]| {
        s.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(",")
    };
    format!("({}|{})", show(&v[..n]), show(&v[n..]))
}

fn matrix_json(a: &Matrix) -> Value {
    Value::Array((0..a.rows()).map(|i| strings(a.row(i))).collect())
}

fn timed(report: &mut Report, opts: &Options, start: Instant) {
    if opts.timing {
        report.timing_ms = Some(start.elapsed().as_millis());
    }
}

fn bipartition_text(bp: &Bipartition) -> String {
    let show = |p: &Partition| {
        if p.is_empty() {
            "∅".to_string()
        } else {
            p.to_string()
        }
    };
    format!("({}, {})", show(&bp.lambda), show(&bp.mu))
}

pub fn cmd_eqclass(n: usize, m: usize, weight: &str, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let chi = parse_weight(weight, n, m)?;
    let c = eq_class(&chi)?;
    let mut report = Report::new(
        format!("eqclass --n {n} --m {m} --weight \"{weight}\""),
        n,
        m,
    );
    report.input("weight", chi.to_string());
    report
        .output("class", strings(&c.class))
        .output("r", c.r)
        .output("chi_min", c.chi_min.to_string())
        .output(
            "betas",
            Value::Array(
                c.gaps
                    .iter()
                    .map(|g| Value::String(block_vector(&g.beta, n)))
                    .collect(),
            ),
        )
        .output(
            "components",
            Value::Array(
                c.components
                    .iter()
                    .map(|(p, q)| json!([[p.0, p.1], [q.0, q.1]]))
                    .collect(),
            ),
        );
    for (name, ok) in verify_class(&c)? {
        report.verdict(&name, ok);
    }
    report.diagram = Some(Picture(&c).to_string());
    timed(&mut report, opts, start);
    Ok(report)
}

pub fn cmd_to_weight(
    n: usize,
    m: usize,
    lambda: &str,
    mu: &str,
    opts: &Options,
) -> Result<Report, CliError> {
    let start = Instant::now();
    let bp = Bipartition::new(parse_partition(lambda)?, parse_partition(mu)?);
    let mut report = Report::new(
        format!("bipartition to-weight --n {n} --m {m} --lambda \"{lambda}\" --mu \"{mu}\""),
        n,
        m,
    );
    report.input("bipartition", bipartition_text(&bp));
    let (p, s) = extremal_pair(&bp, n, m)?;
    let w = pi_map(&bp, n, m)?;
    let sigma = sigma_map(&bp, n, m)?;
    report
        .output("weight", w.to_string())
        .output("extremal_pair", json!([p, s]))
        .output("sigma", sigma.to_string());
    report.verdict("sigma_check", sigma == w);
    report.verdict("roundtrip", pi_inverse(&w)? == bp);
    timed(&mut report, opts, start);
    Ok(report)
}

pub fn cmd_from_weight(
    n: usize,
    m: usize,
    weight: &str,
    opts: &Options,
) -> Result<Report, CliError> {
    let start = Instant::now();
    let chi = parse_weight(weight, n, m)?;
    let bp = pi_inverse(&chi)?;
    let mut report = Report::new(
        format!("bipartition from-weight --n {n} --m {m} --weight \"{weight}\""),
        n,
        m,
    );
    report.input("weight", chi.to_string());
    report
        .output("bipartition", bipartition_text(&bp))
        .output("lambda", bp.lambda.to_string())
        .output("mu", bp.mu.to_string());
    report.verdict("roundtrip", pi_map(&bp, n, m)? == chi);
    report.verdict("sigma_check", sigma_map(&bp, n, m)? == chi);
    timed(&mut report, opts, start);
    Ok(report)
}

pub fn cmd_spectral(n: usize, m: usize, weight: &str, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let chi = parse_weight(weight, n, m)?;
    if !chi.is_dominant() {
        return Err(CliError::Domain(format!("{chi} is not dominant")));
    }
    let e = gen_eigenspace_with(&chi, &opts.limits)?;
    let r = singular_minus(&chi).len();
    let mut report = Report::new(
        format!("spectral --n {n} --m {m} --weight \"{weight}\""),
        n,
        m,
    );
    report.input("weight", chi.to_string());
    report
        .output("class", strings(&e.class))
        .output("r", r)
        .output("support_size", e.space.support().len())
        .output("space_dimension", e.space.dim())
        .output("dimension", e.dim())
        .output("theta", strings(&e.theta));
    report.verdict("dimension 2^r", e.dim() == 1 << r);
    report.verdict("stable under two more integrals", e.stable);
    report.verdict("integrals commute", e.matrices_commute());
    let (parts, total) = spectral_split(&e.space)?;
    report.verdict(
        "direct sum of eigenspaces",
        parts.iter().map(|p| p.1).sum::<usize>() == total,
    );
    let alg = image_algebra(&e)?;
    report.output(
        "algebra",
        json!({
            "dimension": alg.dimension,
            "nilpotency_index": alg.nilpotency_index,
            "cotangent_dim": alg.cotangent_dim,
            "square_zero_generators": alg.square_zero_generators.iter().map(matrix_json).collect::<Vec<_>>(),
            "cyclic_vector": strings(&alg.cyclic_vector),
            "isomorphism_witness": alg.structure_table.iter().map(|&(s, t, u)| json!([s, t, u])).collect::<Vec<_>>(),
        }),
    );
    report.verdict("algebra of dual numbers", alg.matches_dual_numbers());
    report.verdict("cyclic vector", alg.regular);
    let j = eigenfunction(&e)?;
    let eigen_ok = e.theta.iter().take(4).enumerate().all(|(s, t)| {
        cms_core::quasi::integral_apply(s + 1, &j)
            .map(|g| g == j.scale(t))
            .unwrap_or(false)
    });
    report.output("eigenfunction", j.to_string());
    report.verdict("joint eigenfunction", eigen_ok);
    if let Some(k0) = &opts.k_sample {
        let d = sampled_dimension(&chi, k0)?;
        report
            .output("sampled_dimension", d)
            .input("k_sample", k0.to_string());
        report.verdict("sampled dimension agrees", d == e.dim());
    }
    timed(&mut report, opts, start);
    Ok(report)
}

/// Suites driven by `verify`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Commute,
    Bernoulli,
    Bijection,
    Spectral,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Commute => "commute",
            Suite::Bernoulli => "bernoulli",
            Suite::Bijection => "bijection",
            Suite::Spectral => "spectral",
        }
    }
}

/// Sweep parameters; `bound` is the weight or exponent box.
#[derive(Clone, Copy, Debug)]
pub struct SweepParams {
    pub n: usize,
    pub m: usize,
    pub bound: i64,
    pub rmax: usize,
}

pub const MAX_SUPPORT_MONOMIALS: usize = 60;

pub fn cmd_verify(suite: Suite, p: SweepParams, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let SweepParams { n, m, bound, rmax } = p;
    let mut report = Report::new(
        format!(
            "verify {} --n {n} --m {m} --box {bound} --rmax {rmax}",
            suite.name()
        ),
        n,
        m,
    );
    report.input("box", bound).input("rmax", rmax);
    let result = match suite {
        Suite::Commute => commute_suite(n, m, bound, rmax, MAX_SUPPORT_MONOMIALS, &opts.limits),
        Suite::Bernoulli => bernoulli_suite(n, m, bound, rmax),
        // bipartitions with parts of total size up to twice the box
        Suite::Bijection => bijection_suite(n, m, 2 * bound, bound),
        Suite::Spectral => spectral_suite(n, m, bound, &opts.limits, opts.k_sample.as_ref()),
    };
    match result {
        Ok(v) => report.verdicts = v,
        Err(Interrupted { verdicts, error }) => {
            report.verdicts = verdicts;
            report.error = Some(error.to_string());
            timed(&mut report, opts, start);
            return Err(match CliError::from(error) {
                CliError::Resource { message, .. } => CliError::Resource {
                    message,
                    partial: Some(Box::new(report)),
                },
                other => other,
            });
        }
    }
    timed(&mut report, opts, start);
    Ok(report)
}
