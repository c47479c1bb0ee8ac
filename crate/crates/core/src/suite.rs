//! Seeded verification runs over a partition range, collected into a
//! [`VerificationReport`].

use crate::distributions::RationalStream;
use crate::error::{Error, Result};
use crate::exactscalar::Rational;
use crate::identities::{self as id, DensityKind, IdentityCheck};
use crate::partitions::Partition;
use crate::specials as sp;
use crate::wcore::{Context, QtPoint, WKind};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::fmt::Write as _;

const MAX_ATTEMPTS: usize = 100;
const RANGE: u64 = 1_000_000;

/// Which families of checks a run includes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Groups {
    pub identities: bool,
    pub closed_forms: bool,
    pub specials: bool,
    pub analytic: bool,
}

impl Groups {
    pub const ALL: Groups = Groups { identities: true, closed_forms: true, specials: true, analytic: true };
    pub const NONE: Groups = Groups { identities: false, closed_forms: false, specials: false, analytic: false };
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Every partition contained in `bound` is exercised.
    pub bound: Partition,
    pub points: usize,
    pub seed: u64,
    pub groups: Groups,
}

/// One evaluated identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckRecord {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub residual: Rational,
    /// `Some` for truncated checks.
    pub tolerance: Option<Rational>,
    pub passed: bool,
}

impl From<IdentityCheck<Rational>> for CheckRecord {
    fn from(c: IdentityCheck<Rational>) -> Self {
        CheckRecord { name: c.name, params: c.params, residual: c.residual, tolerance: c.tolerance, passed: c.passed }
    }
}

impl CheckRecord {
    pub fn is_exact(&self) -> bool {
        self.tolerance.is_none()
    }
}

/// Records sorted by name; within a name, in generation order.
#[derive(Clone, Debug, Default)]
pub struct VerificationReport {
    pub seed: u64,
    pub bound: Option<Partition>,
    pub records: Vec<CheckRecord>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    /// (name, number of records, number passed), by name.
    pub fn summary(&self) -> Vec<(String, usize, usize)> {
        let mut out: Vec<(String, usize, usize)> = Vec::new();
        for r in &self.records {
            match out.last_mut() {
                Some(last) if last.0 == r.name => {
                    last.1 += 1;
                    last.2 += r.passed as usize;
                }
                _ => out.push((r.name.clone(), 1, r.passed as usize)),
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let records: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                let params: serde_json::Map<String, Value> =
                    r.params.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
                let mut rec = json!({
                    "name": r.name,
                    "params": params,
                    "residual": r.residual.to_string(),
                    "pass": r.passed,
                });
                if let Some(tol) = &r.tolerance {
                    rec["tolerance"] = Value::String(tol.to_string());
                }
                rec
            })
            .collect();
        json!({
            "seed": self.seed,
            "bound": self.bound.as_ref().map(|b| b.to_string()),
            "all_passed": self.all_passed(),
            "records": records,
        })
    }

    /// Header `name,params,residual,tolerance,pass`; params are `k=v`
    /// pairs joined by `;`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("name,params,residual,tolerance,pass\n");
        for r in &self.records {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let tol = r.tolerance.as_ref().map(|t| t.to_string()).unwrap_or_default();
            let _ = writeln!(s, "{},{},{},{},{}", r.name, csv_cell(&params.join(";")), r.residual, tol, r.passed);
        }
        s
    }

    fn push(&mut self, c: IdentityCheck<Rational>) {
        self.records.push(c.into());
    }

    fn extend(&mut self, cs: Vec<IdentityCheck<Rational>>) {
        self.records.extend(cs.into_iter().map(CheckRecord::from));
    }

    fn finish(mut self) -> Self {
        // sort_by is stable, so generation order survives within a name.
        self.records.sort_by(|a, b| a.name.cmp(&b.name));
        self
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// Random rationals a/b with a, b uniform in [1, 10^6].
pub struct ScalarSource {
    stream: RationalStream,
}

impl ScalarSource {
    pub fn new(seed: u64) -> Self {
        ScalarSource { stream: RationalStream::new(seed) }
    }

    fn int(&mut self) -> BigInt {
        BigInt::from(self.stream.next_numerator() % RANGE + 1)
    }

    pub fn draw(&mut self) -> Rational {
        let (a, b) = (self.int(), self.int());
        Rational::from_big(a, b).expect("positive denominator")
    }

    /// A QtPoint valid for `n` parts of size ≤ `pmax`, resampling on
    /// degeneracy.
    pub fn qt_point(&mut self, n: usize, pmax: u32) -> Result<QtPoint> {
        for _ in 0..MAX_ATTEMPTS {
            let (q, t) = (self.draw(), self.draw());
            if let Ok(p) = QtPoint::new(q, t, n, pmax) {
                return Ok(p);
            }
        }
        Err(Error::DegenerateParameters(format!("no valid QtPoint in {MAX_ATTEMPTS} attempts")))
    }

    /// Evaluates `f` on fresh auxiliary scalars until it avoids a
    /// degenerate denominator.
    pub fn with_scalars<T>(&mut self, k: usize, mut f: impl FnMut(&[Rational]) -> Result<T>) -> Result<T> {
        let mut last = None;
        for _ in 0..MAX_ATTEMPTS {
            let xs: Vec<Rational> = (0..k).map(|_| self.draw()).collect();
            match f(&xs) {
                Err(e @ Error::DegenerateParameters(_)) | Err(e @ Error::DivisionByZero) => last = Some(e),
                r => return r,
            }
        }
        Err(last.unwrap_or_else(|| Error::DegenerateParameters("auxiliary scalars".into())))
    }
}

fn point_params(i: usize, p: &QtPoint) -> Vec<(String, String)> {
    vec![("point".into(), i.to_string()), ("q".into(), p.q().to_string()), ("t".into(), p.t().to_string())]
}

fn tag(mut c: IdentityCheck<Rational>, extra: &[(String, String)]) -> IdentityCheck<Rational> {
    let mut params = extra.to_vec();
    params.append(&mut c.params);
    c.params = params;
    c
}

fn tag_all(cs: Vec<IdentityCheck<Rational>>, extra: &[(String, String)]) -> Vec<IdentityCheck<Rational>> {
    cs.into_iter().map(|c| tag(c, extra)).collect()
}

/// Runs the selected checks at `points` random QtPoints over every
/// partition contained in the bound.
pub fn run_suite(cfg: &SuiteConfig) -> Result<VerificationReport> {
    let n = cfg.bound.len();
    let pmax = cfg.bound.max_part() + 1;
    let mut src = ScalarSource::new(cfg.seed);
    let mut report = VerificationReport { seed: cfg.seed, bound: Some(cfg.bound.clone()), records: Vec::new() };
    for i in 0..cfg.points {
        let point = src.qt_point(n, pmax)?;
        let ctx = Context::at_point(&point);
        let pp = point_params(i, &point);
        if cfg.groups.identities {
            run_identities(&ctx, &cfg.bound, &mut src, &pp, &mut report)?;
        }
        if cfg.groups.closed_forms {
            run_closed_forms(&ctx, &cfg.bound, &mut src, &pp, &mut report)?;
        }
        if cfg.groups.specials {
            run_specials(&ctx, &cfg.bound, &mut src, &pp, &mut report)?;
        }
    }
    if cfg.groups.analytic {
        report.extend(analytic_checks()?);
    }
    Ok(report.finish())
}

fn run_identities(
    ctx: &Context<Rational>,
    bound: &Partition,
    src: &mut ScalarSource,
    pp: &[(String, String)],
    report: &mut VerificationReport,
) -> Result<()> {
    let n = bound.len();
    for lam in bound.sub(None) {
        report.push(tag(src.with_scalars(1, |x| id::check_binomial_theorem(ctx, &lam, &x[0]))?, pp));
        report.push(tag(src.with_scalars(2, |v| id::check_2phi1(ctx, &lam, &v[0], &v[1]))?, pp));
        for i in (0..n).filter(|&i| lam.bump(i).is_ok()) {
            for k in 0..=lam.weight() + 1 {
                report.push(tag(id::check_pascal(ctx, &lam, i, k)?, pp));
            }
        }
        for k in 0..=lam.weight() {
            report.push(tag(id::check_symmetry(ctx, &lam, k)?, pp));
        }
        for mu in lam.sub(None) {
            report.push(tag(src.with_scalars(2, |v| id::check_weak_cocycle(ctx, &lam, &mu, &v[0], &v[1]))?, pp));
            report.push(tag(id::check_double_binomial(ctx, &lam, &mu)?, pp));
        }
        for which in [DensityKind::G, DensityKind::F] {
            report.push(tag(src.with_scalars(1, |z| id::check_density_normalization(ctx, &lam, &z[0], which))?, pp));
        }
    }
    Ok(())
}

fn run_closed_forms(
    ctx: &Context<Rational>,
    bound: &Partition,
    src: &mut ScalarSource,
    pp: &[(String, String)],
    report: &mut VerificationReport,
) -> Result<()> {
    let n = bound.len();
    let kmax = bound.max_part();
    for lam in bound.sub(None) {
        for k in 0..=kmax {
            report.push(tag(id::check_rect_lower(ctx, &lam, k)?, pp));
            report.push(tag(id::check_rect_upper(ctx, k, &lam)?, pp));
            report.extend(tag_all(src.with_scalars(1, |s| id::check_weyl(ctx, &lam, k, &s[0]))?, pp));
        }
        report.push(tag(id::check_e1(ctx, &lam)?, pp));
        report.push(tag(id::check_double_binomial_e1(ctx, &lam)?, pp));
        report.extend(tag_all(id::check_self_evaluations(ctx, &lam)?, pp));
    }
    for k in 0..=kmax {
        for kind in 0..3 {
            let rec = src.with_scalars(n + 1, |v| {
                let w = match kind {
                    0 => WKind::Ab(v[n].clone()),
                    1 => WKind::SUp,
                    _ => WKind::SDown,
                };
                id::check_w_rectangular(ctx, &w, k, &v[..n])
            })?;
            report.push(tag(rec, pp));
        }
        report.push(tag(src.with_scalars(1, |v| id::check_bracket_rect(ctx, &v[0], k, n))?, pp));
    }
    Ok(())
}

fn run_specials(
    ctx: &Context<Rational>,
    bound: &Partition,
    src: &mut ScalarSource,
    pp: &[(String, String)],
    report: &mut VerificationReport,
) -> Result<()> {
    let n = bound.len();
    for nu in bound.sub(None) {
        report.extend(tag_all(sp::check_uv_diagonal(ctx, &nu)?, pp));
        report.extend(tag_all(sp::check_stirling_diagonal(ctx, &nu)?, pp));
        report.push(tag(src.with_scalars(1, |x| sp::check_change_of_basis_1(ctx, &nu, &x[0]))?, pp));
        report.push(tag(src.with_scalars(1, |x| sp::check_change_of_basis_2(ctx, &nu, &x[0]))?, pp));
        for mu in nu.sub(None) {
            report.push(tag(sp::check_uv_inversion(ctx, &nu, &mu)?, pp));
            report.extend(tag_all(sp::check_stirling_inversion(ctx, &nu, &mu)?, pp));
        }
        report.push(tag(src.with_scalars(1, |v| sp::check_stirling_expansion(ctx, &nu, &v[0], true))?, pp));
        if n == 1 {
            // The unweighted display only holds for a single part.
            report.push(tag(src.with_scalars(1, |v| sp::check_stirling_expansion(ctx, &nu, &v[0], false))?, pp));
        }
        if nu.weight() >= 1 {
            report.push(tag(sp::check_bernoulli_recurrence(ctx, &nu)?, pp));
        }
    }
    for k in 1..=bound.max_part().max(1) {
        report.extend(tag_all(sp::check_catalan_closed_forms(ctx, k, n)?, pp));
    }
    Ok(())
}

/// The truncated identity at its fixed one-dimensional point:
/// q = 1/2, μ = (1), z = 1/10, part cap 25, 40 factors, tolerance 1e-8.
pub fn analytic_checks() -> Result<Vec<IdentityCheck<Rational>>> {
    let point = QtPoint::new(Rational::new(1, 2)?, Rational::new(1, 3)?, 1, 25)?;
    let ctx = Context::at_point(&point);
    let mu = Partition::new(vec![1])?;
    Ok(vec![id::check_geometric(&ctx, &mu, &Rational::new(1, 10)?, 25, 40, &Rational::ten_pow_neg(8))?])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn scalar_source_is_deterministic_and_in_range() {
        let mut a = ScalarSource::new(3);
        let mut b = ScalarSource::new(3);
        for _ in 0..20 {
            let x = a.draw();
            assert_eq!(x, b.draw());
            assert!(x.is_positive());
            assert!(x <= Rational::from(RANGE as i64) && x >= Rational::new(1, RANGE as i64).unwrap());
        }
    }

    #[test]
    fn small_suite_passes_and_is_sorted() {
        let cfg = SuiteConfig { bound: p("2,1"), points: 1, seed: 11, groups: Groups::ALL };
        let rep = run_suite(&cfg).unwrap();
        let bad: Vec<_> = rep.failures().collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(rep.records.windows(2).all(|w| w[0].name <= w[1].name));
        let summary = rep.summary();
        let names: Vec<&str> = summary.iter().map(|s| s.0.as_str()).collect();
        assert!(names.contains(&"weak_cocycle") && names.contains(&"geometric"));
        let again = run_suite(&cfg).unwrap();
        assert_eq!(rep.to_json(), again.to_json());
        assert!(rep.to_csv().starts_with("name,params,residual,tolerance,pass\n"));
    }
}
