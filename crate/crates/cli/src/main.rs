//! `qtspecials`: tables of qt-special numbers, identity verification,
//! densities and sampling from the command line.

mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{Format, Table};
use qtspecials::binomial::qt_binomial;
use qtspecials::distributions::{exp_big_e, exp_small_e, sample, Caps, Density, DensityFamily, DensitySpec};
use qtspecials::specials::{self as sp, alpha_limit, StirlingKind};
use qtspecials::suite::{run_suite, Groups, SuiteConfig};
use qtspecials::{Context, Error, Partition, QtPoint, RatFuncQ, Rational, Result, Scalar};
use serde_json::{json, Value};
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "qtspecials", version, about = "Exact multiple qt-binomial coefficients and qt-special numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// One qt-binomial coefficient (λ over μ).
    Binom(BinomArgs),
    /// Table of qt-Stirling numbers s(ν, μ) for μ ⊆ ν ⊆ bound.
    Stirling(StirlingArgs),
    /// qt-Bernoulli numbers β_λ for λ ⊆ bound.
    Bernoulli(TableArgs),
    /// qt-Bell numbers B_λ for λ ⊆ bound.
    Bell(TableArgs),
    /// qt-Catalan numbers C_λ for λ ⊆ bound (skipping degenerate λ).
    Catalan(TableArgs),
    /// qt-Fibonacci numbers F_{λ^1} for λ ⊆ bound.
    Fibonacci(TableArgs),
    /// Run the identity suite at seeded random points.
    Verify(VerifyArgs),
    /// Exact masses of a density on its support.
    Density(DensityArgs),
    /// Seeded inverse-CDF draws from a density.
    Sample(SampleArgs),
    /// Truncated qt-exponentials E_q(z) and e_q(z).
    Exp(ExpArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Number of parts; must agree with any partition given.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<Rational>,
    #[arg(long)]
    t: Option<Rational>,
    /// Compute the q → 1 limit with t = q^alpha instead of a point value.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    alpha: Option<u32>,
    #[arg(long, env = "QTSPECIALS_SEED", default_value_t = 0)]
    seed: u64,
    /// Write to this path instead of standard output.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct BinomArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    lambda: Partition,
    #[arg(long)]
    mu: Partition,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    common: Common,
    /// Table range: every partition contained in this one.
    #[arg(long, conflicts_with = "lambda")]
    bound: Option<Partition>,
    /// A single entry instead of a table.
    #[arg(long)]
    lambda: Option<Partition>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    #[value(name = "1")]
    First,
    #[value(name = "2")]
    Second,
}

#[derive(Args, Debug)]
struct StirlingArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Kind::Second)]
    kind: Kind,
    #[arg(long)]
    bound: Partition,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    bound: Partition,
    /// Number of random QtPoints.
    #[arg(long, default_value_t = 5)]
    points: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    G,
    F,
    Poisson,
}

#[derive(Args, Debug)]
struct DensityArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = Family::G)]
    family: Family,
    /// Upper partition of the binomial densities.
    #[arg(long)]
    lambda: Option<Partition>,
    #[arg(long)]
    z: Rational,
    /// Largest part enumerated for the Poisson density.
    #[arg(long, default_value_t = 20)]
    part_cap: u32,
    /// Factors kept in each infinite product.
    #[arg(long, default_value_t = 40)]
    trunc: u32,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[command(flatten)]
    density: DensityArgs,
    #[arg(long, default_value_t = 1000)]
    count: usize,
}

#[derive(Args, Debug)]
struct ExpArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    z: Rational,
    #[arg(long, default_value_t = 20)]
    part_cap: u32,
    #[arg(long, default_value_t = 40)]
    trunc: u32,
}

/// Output of a command plus whether it counts as success.
struct Run {
    body: Table,
    ok: bool,
}

impl Common {
    fn n_for(&self, p: Option<&Partition>) -> Result<usize> {
        match (self.n, p) {
            (Some(n), Some(p)) if n != p.len() => Err(Error::LengthMismatch(n, p.len())),
            (_, Some(p)) => Ok(p.len()),
            (Some(n), None) => Ok(n),
            (None, None) => Err(Error::Parse("--n is required".into())),
        }
    }

    fn point(&self, n: usize, pmax: u32) -> Result<QtPoint> {
        match (&self.q, &self.t) {
            (Some(q), Some(t)) => QtPoint::new(q.clone(), t.clone(), n, pmax),
            _ => Err(Error::Parse("--q and --t are required unless --alpha is given".into())),
        }
    }

    fn meta(&self, command: &str, n: usize) -> Value {
        json!({
            "command": command,
            "n": n,
            "q": self.q.as_ref().map(|v| v.to_string()),
            "t": self.t.as_ref().map(|v| v.to_string()),
            "alpha": self.alpha,
            "seed": self.seed,
        })
    }
}

/// Evaluates at the given point, or as the α-limit when --alpha is set.
fn evaluate(
    common: &Common,
    n: usize,
    pmax: u32,
    f: impl Fn(&Context<Rational>) -> Result<Rational>,
    g: impl Fn(&Context<RatFuncQ>) -> Result<RatFuncQ>,
) -> Result<Rational> {
    match common.alpha {
        Some(a) => alpha_limit(a, g),
        None => f(&Context::at_point(&common.point(n, pmax)?)),
    }
}

fn binom(a: &BinomArgs) -> Result<Run> {
    let c = &a.common;
    let n = c.n_for(Some(&a.lambda))?;
    if a.mu.len() != n {
        return Err(Error::LengthMismatch(n, a.mu.len()));
    }
    let v = evaluate(
        c,
        n,
        a.lambda.max_part(),
        |x| qt_binomial(x, &a.lambda, &a.mu),
        |x| qt_binomial(x, &a.lambda, &a.mu),
    )?;
    let mut t = Table::new(c.meta("binom", n), &["lambda", "mu", "value"]);
    t.row(vec![a.lambda.to_string(), a.mu.to_string(), v.to_string()]);
    Ok(Run { body: t, ok: true })
}

#[derive(Clone, Copy)]
enum Special {
    Bernoulli,
    Bell,
    Catalan,
    Fibonacci,
}

fn special_at<S: Scalar>(ctx: &Context<S>, which: Special, lam: &Partition) -> Result<S> {
    match which {
        Special::Bernoulli => sp::bernoulli(ctx, lam),
        Special::Bell => sp::bell(ctx, lam),
        Special::Catalan => sp::catalan(ctx, lam),
        Special::Fibonacci => sp::fibonacci(ctx, lam),
    }
}

fn special_table(a: &TableArgs, which: Special, name: &str) -> Result<Run> {
    let c = &a.common;
    let (lams, top) = match (&a.bound, &a.lambda) {
        (Some(b), _) => (b.sub(None), b.clone()),
        (None, Some(l)) => (vec![l.clone()], l.clone()),
        (None, None) => return Err(Error::Parse("--bound or --lambda is required".into())),
    };
    let n = c.n_for(Some(&top))?;
    // Catalan and Bernoulli reach 2λ and λ + e_1.
    let pmax = 2 * top.max_part() + 1;
    let ctx_point = match c.alpha {
        Some(_) => None,
        None => Some(Context::at_point(&c.point(n, pmax)?)),
    };
    let ctx_alpha = match c.alpha {
        Some(al) => Some(Context::alpha(al)?),
        None => None,
    };
    let mut t = Table::new(c.meta(name, n), &["lambda", "value"]);
    for lam in &lams {
        let v = match (&ctx_point, &ctx_alpha) {
            (Some(x), _) => special_at(x, which, lam),
            (_, Some(x)) => special_at(x, which, lam).and_then(|f| f.limit_at_one()),
            _ => unreachable!(),
        };
        match v {
            Ok(v) => t.row(vec![lam.to_string(), v.to_string()]),
            // A table keeps going past entries with no value (e.g. the
            // Catalan bracket vanishing when λ_n = 0); a single entry fails.
            Err(e @ (Error::DegenerateParameters(_) | Error::PoleAtOne)) if a.bound.is_some() => t.skip(lam.to_string(), &e),
            Err(e) => return Err(e),
        }
    }
    Ok(Run { body: t, ok: true })
}

fn stirling(a: &StirlingArgs) -> Result<Run> {
    let c = &a.common;
    let n = c.n_for(Some(&a.bound))?;
    let kind = match a.kind {
        Kind::First => StirlingKind::First,
        Kind::Second => StirlingKind::Second,
    };
    let mut t = Table::new(c.meta("stirling", n), &["nu", "mu", "value"]);
    t.meta["kind"] = json!(if matches!(a.kind, Kind::First) { 1 } else { 2 });
    let pmax = a.bound.max_part() + 1;
    let point_ctx = match c.alpha {
        None => Some(Context::at_point(&c.point(n, pmax)?)),
        Some(_) => None,
    };
    let alpha_ctx = match c.alpha {
        Some(al) => Some(Context::alpha(al)?),
        None => None,
    };
    for nu in a.bound.sub(None) {
        for mu in nu.sub(None) {
            let v = match (&point_ctx, &alpha_ctx) {
                (Some(x), _) => sp::stirling(x, kind, &nu, &mu)?,
                (_, Some(x)) => match sp::stirling(x, kind, &nu, &mu)?.limit_at_one() {
                    Ok(v) => v,
                    // With several parts some entries genuinely blow up as q → 1.
                    Err(e @ Error::PoleAtOne) => {
                        t.skip(format!("{nu}|{mu}"), &e);
                        continue;
                    }
                    Err(e) => return Err(e),
                },
                _ => unreachable!(),
            };
            t.row(vec![nu.to_string(), mu.to_string(), v.to_string()]);
        }
    }
    Ok(Run { body: t, ok: true })
}

fn verify(a: &VerifyArgs) -> Result<Run> {
    let c = &a.common;
    let n = c.n_for(Some(&a.bound))?;
    let rep = run_suite(&SuiteConfig { bound: a.bound.clone(), points: a.points, seed: c.seed, groups: Groups::ALL })?;
    let mut meta = c.meta("verify", n);
    meta["bound"] = json!(a.bound.to_string());
    meta["points"] = json!(a.points);
    meta["all_passed"] = json!(rep.all_passed());
    let mut t = Table::new(meta, &["name", "params", "residual", "tolerance", "pass"]);
    for r in &rep.records {
        let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        t.row(vec![
            r.name.clone(),
            params.join(";"),
            r.residual.to_string(),
            r.tolerance.as_ref().map(|x| x.to_string()).unwrap_or_default(),
            r.passed.to_string(),
        ]);
    }
    t.json_override = Some(rep.to_json());
    t.json_override.as_mut().unwrap()["meta"] = t.meta.clone();
    Ok(Run { body: t, ok: rep.all_passed() })
}

fn density_spec(a: &DensityArgs) -> Result<DensitySpec> {
    let c = &a.common;
    let caps = Caps { part_cap: a.part_cap, trunc: a.trunc };
    match a.family {
        Family::Poisson => {
            let n = c.n_for(None)?;
            Ok(DensitySpec::poisson(n, a.z.clone(), c.point(n, a.part_cap)?, caps))
        }
        fam => {
            let lam = a.lambda.clone().ok_or_else(|| Error::Parse("--lambda is required".into()))?;
            let n = c.n_for(Some(&lam))?;
            let point = c.point(n, lam.max_part())?;
            let family = if matches!(fam, Family::G) { DensityFamily::BinomialG } else { DensityFamily::BinomialF };
            Ok(DensitySpec::binomial(family, lam, a.z.clone(), point))
        }
    }
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::G => "g",
        Family::F => "f",
        Family::Poisson => "poisson",
    }
}

fn density_meta(a: &DensityArgs, spec: &DensitySpec, command: &str) -> Value {
    let mut meta = a.common.meta(command, spec.n);
    meta["family"] = json!(family_name(a.family));
    meta["z"] = json!(a.z.to_string());
    if let Some(l) = &a.lambda {
        meta["lambda"] = json!(l.to_string());
    }
    if spec.is_approximate() {
        meta["caps"] = json!({ "part_cap": a.part_cap, "trunc": a.trunc });
    }
    meta
}

fn density(a: &DensityArgs) -> Result<Run> {
    let spec = density_spec(a)?;
    let d = Density::new(spec.clone())?;
    let mut meta = density_meta(a, &spec, "density");
    let masses = d.masses()?;
    let total = masses.iter().fold(Rational::zero(), |acc, (_, m)| acc + m);
    meta["total"] = json!(total.to_string());
    meta["approximate"] = json!(spec.is_approximate());
    if let Some(tail) = d.poisson_tail_estimate()? {
        meta["tail_estimate"] = json!(tail.to_string());
    }
    let mut t = Table::new(meta, &["mu", "mass"]);
    for (mu, m) in masses {
        t.row(vec![mu.to_string(), m.to_string()]);
    }
    Ok(Run { body: t, ok: true })
}

fn sample_cmd(a: &SampleArgs) -> Result<Run> {
    let spec = density_spec(&a.density)?;
    let s = sample(&spec, a.count, a.density.common.seed)?;
    let masses = Density::new(spec.clone())?.masses()?;
    let mut meta = density_meta(&a.density, &spec, "sample");
    meta["count"] = json!(a.count);
    let summary: Vec<Value> = masses
        .iter()
        .map(|(mu, m)| {
            let emp = s.empirical_mass.get(mu).cloned().unwrap_or_else(Rational::zero);
            json!({ "mu": mu.to_string(), "exact": m.to_string(), "empirical": emp.to_string() })
        })
        .collect();
    meta["summary"] = Value::Array(summary);
    let mut t = Table::new(meta, &["draw"]);
    for d in &s.draws {
        t.row(vec![d.to_string()]);
    }
    t.json_lines = true;
    Ok(Run { body: t, ok: true })
}

fn exp(a: &ExpArgs) -> Result<Run> {
    let c = &a.common;
    let n = c.n_for(None)?;
    let ctx = Context::at_point(&c.point(n, a.part_cap)?);
    let caps = Caps { part_cap: a.part_cap, trunc: a.trunc };
    let mut meta = c.meta("exp", n);
    meta["z"] = json!(a.z.to_string());
    meta["caps"] = json!({ "part_cap": a.part_cap, "trunc": a.trunc });
    let mut t = Table::new(meta, &["function", "product", "series", "difference"]);
    let big = exp_big_e(&ctx, &a.z, n, caps)?;
    t.row(vec!["E".into(), big.product.to_string(), big.series.to_string(), big.difference.to_string()]);
    let small = exp_small_e(&ctx, &a.z, n, caps)?;
    t.row(vec!["e".into(), small.product.to_string(), small.series.to_string(), small.difference.to_string()]);
    Ok(Run { body: t, ok: true })
}

fn run(cli: &Cli) -> Result<(Run, Common)> {
    let common = |c: &Common| c.clone();
    Ok(match &cli.command {
        Command::Binom(a) => (binom(a)?, common(&a.common)),
        Command::Stirling(a) => (stirling(a)?, common(&a.common)),
        Command::Bernoulli(a) => (special_table(a, Special::Bernoulli, "bernoulli")?, common(&a.common)),
        Command::Bell(a) => (special_table(a, Special::Bell, "bell")?, common(&a.common)),
        Command::Catalan(a) => (special_table(a, Special::Catalan, "catalan")?, common(&a.common)),
        Command::Fibonacci(a) => (special_table(a, Special::Fibonacci, "fibonacci")?, common(&a.common)),
        Command::Verify(a) => (verify(a)?, common(&a.common)),
        Command::Density(a) => (density(a)?, common(&a.common)),
        Command::Sample(a) => (sample_cmd(a)?, common(&a.density.common)),
        Command::Exp(a) => (exp(a)?, common(&a.common)),
    })
}

fn fail(kind: &str, message: &str) -> ExitCode {
    println!("{}", json!({ "error": { "kind": kind, "message": message } }));
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            if matches!(e.kind(), DisplayHelp | DisplayVersion | DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            return fail("ParseError", e.to_string().lines().next().unwrap_or("invalid arguments"));
        }
    };
    match run(&cli) {
        Ok((r, common)) => {
            let text = r.body.render(common.format);
            if let Some(path) = &common.out {
                if let Err(e) = std::fs::write(path, text) {
                    return fail("IoError", &e.to_string());
                }
            } else {
                print!("{text}");
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => fail(e.kind(), &e.to_string()),
    }
}
