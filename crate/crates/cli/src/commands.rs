use std::f64::consts::E;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, ValueEnum};
use serde::Serialize;
use tauber_core::arith::{divisors, group_invariants, is_prime, CyclotomicField};
use tauber_core::constants::{c4_constants, leading_residue, nonvanishing_check};
use tauber_core::fields::count_fields;
use tauber_core::lfunctions::EvalOptions;
use tauber_core::moments::{holder_budget, twisted_moment, DedekindEvaluator, MAX_HEIGHT};
use tauber_core::series::{
    coefficient_sieve, zeta_factorization_check, LocalFactorSystem, WildSource, WildTable,
};
use tauber_core::tauberian::{bound_check, BoundMode, PolarTerm, TauberParams};

use crate::config::{load_params, load_wild, pick, require, FileConfig};
use crate::output::render;
use crate::{Coded, Context};

#[derive(Args, Debug)]
pub struct CountArgs {
    /// Degree of the cyclic fields.
    #[arg(long)]
    pub n: Option<u64>,
    /// Discriminant bound.
    #[arg(long)]
    pub x: Option<u64>,
}

pub fn count(a: &CountArgs, cfg: &FileConfig, ctx: &Context) -> Result<String> {
    let n = require(a.n, cfg.n, "n")?;
    let x = require(a.x, cfg.x, "x")?;
    let rows: Vec<_> = count_fields(n, x)?.iter().map(|o| o.row()).collect();
    render(&rows, &["n", "disc", "conductor", "orbit_size"], ctx.format)
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(long)]
    pub n: Option<u64>,
    /// Coefficients are listed up to this bound.
    #[arg(long)]
    pub x: Option<u64>,
    /// Table of Euler factors at primes dividing n, one "n p c0 c1 ..." per line.
    #[arg(long)]
    pub wild: Option<PathBuf>,
}

#[derive(Serialize)]
struct SeriesRow {
    m: u64,
    coefficient: i64,
    summatory: i64,
}

fn wild_source(path: Option<&PathBuf>) -> Result<WildSource> {
    Ok(match path {
        Some(p) => WildSource::Table {
            table: load_wild(p)?,
            fallback: false,
        },
        None => WildSource::Derived,
    })
}

pub fn series(a: &SeriesArgs, cfg: &FileConfig, ctx: &Context) -> Result<String> {
    let n = require(a.n, cfg.n, "n")?;
    let x = require(a.x, cfg.x, "x")?;
    let source = wild_source(a.wild.as_ref().or(cfg.wild.as_ref()))?;
    let sys = LocalFactorSystem::new(n, &source)?;
    let c = coefficient_sieve(&sys, x)?;
    let mut total = 0i64;
    let rows: Vec<SeriesRow> = c
        .nonzero()
        .map(|(m, v)| {
            total += v;
            SeriesRow {
                m,
                coefficient: v,
                summatory: total,
            }
        })
        .collect();
    render(&rows, &["m", "coefficient", "summatory"], ctx.format)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// c2, c3 and the residue at 1/2 for C4.
    All,
    C2,
    C3,
    Residue,
    /// Coefficient of the leading term for --n.
    Leading,
    /// Nonvanishing criterion for every divisor term of --n.
    Nonvanishing,
}

#[derive(Args, Debug)]
pub struct ConstantsArgs {
    #[arg(long, value_enum, default_value = "all")]
    pub which: Which,
    #[arg(long)]
    pub n: Option<u64>,
    /// Use the published dyadic factor of the C4 series.
    #[arg(long, conflicts_with = "wild")]
    pub published: bool,
    #[arg(long)]
    pub wild: Option<PathBuf>,
}

pub fn constants(a: &ConstantsArgs, cfg: &FileConfig, ctx: &Context) -> Result<String> {
    let source = if a.published {
        WildSource::Table {
            table: WildTable::published_c4(),
            fallback: true,
        }
    } else {
        wild_source(a.wild.as_ref().or(cfg.wild.as_ref()))?
    };
    let columns = ["name", "value", "error_bound", "factors"];
    match a.which {
        Which::Leading => {
            let n = require(a.n, cfg.n, "n")?;
            render(&[leading_residue(n, &source)?], &columns, ctx.format)
        }
        Which::Nonvanishing => {
            let n = require(a.n, cfg.n, "n")?;
            let rows = divisors(n)
                .into_iter()
                .filter(|&d| d > 1)
                .map(|d| nonvanishing_check(n, d))
                .collect::<tauber_core::Result<Vec<_>>>()?;
            render(
                &rows,
                &[
                    "n",
                    "d",
                    "factors",
                    "product",
                    "error_bound",
                    "nonvanishing",
                ],
                ctx.format,
            )
        }
        w => {
            let c = c4_constants(&source)?;
            let rows = match w {
                Which::C2 => vec![c.c2],
                Which::C3 => vec![c.c3],
                Which::Residue => vec![c.residue_half],
                _ => vec![c.c2, c.c3, c.residue_half],
            };
            render(&rows, &columns, ctx.format)
        }
    }
}

#[derive(Args, Debug)]
pub struct MomentsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    /// Smallest T; samples double from here up to --t-max.
    #[arg(long)]
    pub t_min: Option<f64>,
    #[arg(long)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub z: Option<f64>,
    /// Conductor d of the field Q(zeta_d); 1 gives the Riemann zeta function.
    #[arg(long)]
    pub d: Option<u64>,
}

pub fn moments(a: &MomentsArgs, cfg: &FileConfig, ctx: &Context) -> Result<String> {
    let sigma = require(a.sigma, cfg.sigma, "sigma")?;
    let t_min = require(a.t_min, cfg.t_min, "t-min")?;
    let t_max = pick(a.t_max, cfg.t_max, t_min);
    let z = pick(a.z, cfg.z, E);
    let d = pick(a.d, cfg.d, 1);
    let ordered = t_min >= E && t_max >= t_min && t_max <= MAX_HEIGHT;
    if !ordered {
        return Err(
            Coded::new("usage", format!("need e <= t-min <= t-max <= {MAX_HEIGHT}")).into(),
        );
    }
    let l = DedekindEvaluator::new(CyclotomicField::full(d), EvalOptions::default())?;
    let mut rows = Vec::new();
    let mut t = t_min;
    while t <= t_max {
        rows.push(twisted_moment(&l, sigma, t, z)?);
        t *= 2.0;
    }
    render(&rows, &["sigma", "T", "Z", "re", "im", "abs"], ctx.format)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Optimized,
    Unoptimized,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub x_min: Option<u64>,
    #[arg(long)]
    pub x_max: Option<u64>,
    /// Flat TOML block of Tauberian parameters.
    #[arg(long)]
    pub params: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "optimized")]
    pub mode: Mode,
    #[arg(long)]
    pub wild: Option<PathBuf>,
}

fn default_params(n: u64) -> Result<TauberParams> {
    let a = group_invariants(n)?.a as f64;
    let beta = match n {
        2 => 1.0,
        _ => {
            holder_budget(n)
                .map_err(|_| {
                    Coded::new(
                        "usage",
                        format!("no default parameters for n = {n}; pass --params"),
                    )
                })?
                .beta as f64
        }
    };
    Ok(TauberParams {
        sigma_a: 1.0 / a,
        delta: 0.5 / a,
        t0: E,
        eta: 1.0,
        eta_tilde: 1.0,
        beta,
        q: 1.0,
        b: 1,
        sup_gamma: 0.0,
    })
}

pub fn check(a: &CheckArgs, cfg: &FileConfig, ctx: &Context) -> Result<String> {
    let n = require(a.n, cfg.n, "n")?;
    let x_min = require(a.x_min, cfg.x_min, "x-min")?;
    let x_max = require(a.x_max, cfg.x_max, "x-max")?;
    if x_min < 3 || x_max < x_min {
        return Err(Coded::new("usage", "need 3 <= x-min <= x-max".to_string()).into());
    }
    let params = match (&a.params, &cfg.params) {
        (Some(p), _) => load_params(p)?,
        (None, Some(p)) => *p,
        (None, None) => default_params(n)?,
    };
    let source = wild_source(a.wild.as_ref().or(cfg.wild.as_ref()))?;
    let terms = if n == 4 {
        let c = c4_constants(&source)?;
        vec![
            PolarTerm::real(0.5, &[c.residue_half.value]),
            PolarTerm::real(1.0 / 3.0, &[c.c3.value]),
        ]
    } else if is_prime(n) {
        let a = group_invariants(n)?.a as f64;
        vec![PolarTerm::real(
            1.0 / a,
            &[leading_residue(n, &source)?.value],
        )]
    } else {
        return Err(tauber_core::Error::UnsupportedGroup {
            n,
            reason: "polar terms are available for n = 4 and prime n".into(),
        }
        .into());
    };
    let sums = coefficient_sieve(&LocalFactorSystem::new(n, &source)?, x_max)?.prefix_sums()?;
    let mut xs = Vec::new();
    let mut x = x_min;
    while x < x_max {
        xs.push(x);
        x = x.saturating_mul(10);
    }
    xs.push(x_max);
    let samples: Vec<(f64, f64)> = xs
        .iter()
        .map(|&x| (x as f64, sums[x as usize] as f64))
        .collect();
    let mode = match a.mode {
        Mode::Optimized => BoundMode::Optimized,
        Mode::Unoptimized => BoundMode::Unoptimized,
    };
    let report = bound_check(&samples, &terms, &params, mode, None)?;
    render(&[report], &["C", "slope", "worst_X"], ctx.format)
}

#[derive(Args, Debug)]
pub struct FactorizeArgs {
    #[arg(long)]
    pub n: Option<u64>,
    /// Highest power of u kept in the local series.
    #[arg(long)]
    pub trunc: Option<usize>,
}

#[derive(Serialize)]
struct FactorizeRow {
    n: u64,
    modulus: u64,
    residue: u64,
    local_factor: String,
    residual: String,
    passed: bool,
}

pub fn factorize(
    a: &FactorizeArgs,
    cfg: &FileConfig,
    ctx: &Context,
) -> Result<(String, Option<anyhow::Error>)> {
    let n = require(a.n, cfg.n, "n")?;
    let two_a = 2 * group_invariants(n)?.a as usize;
    let trunc = pick(a.trunc, cfg.trunc, two_a + 4);
    let report = zeta_factorization_check(n, trunc)?;
    let rows: Vec<FactorizeRow> = report
        .classes
        .iter()
        .map(|c| FactorizeRow {
            n,
            modulus: c.modulus,
            residue: c.residue,
            local_factor: c.local_factor.clone(),
            residual: c.residual.clone(),
            passed: c.failures.is_empty(),
        })
        .collect();
    let text = render(
        &rows,
        &[
            "n",
            "modulus",
            "residue",
            "local_factor",
            "residual",
            "passed",
        ],
        ctx.format,
    )?;
    Ok((text, report.into_result().err().map(Into::into)))
}
