//! Executable identities.  Each check evaluates both sides exactly and
//! records the residual; where an independent route exists the two sides
//! avoid sharing the binomial implementation.

use crate::binomial::{
    binom_e1, binom_norm, binom_rect_lower, binom_rect_upper, qt_binomial, qt_bracket_rect, qt_bracket_shifted,
};
use crate::distributions::{density_f_term, density_g_term};
use crate::error::{Error, Result};
use crate::exactscalar::{Rational, Scalar};
use crate::partitions::{between, contains, Partition};
use crate::wcore::{
    degen, w_multi, w_principal, w_rectangular, wab_weyl, weyl_point, wsdown_self, wsup_self, wsup_weyl, Context,
    WKind,
};

/// Outcome of one identity evaluation.
#[derive(Clone, Debug)]
pub struct IdentityCheck<S> {
    pub name: String,
    pub lhs: S,
    pub rhs: S,
    pub residual: S,
    pub params: Vec<(String, String)>,
    /// `Some(tol)` for truncated checks, which pass when |residual| < tol.
    pub tolerance: Option<Rational>,
    pub passed: bool,
}

impl<S: Scalar> IdentityCheck<S> {
    pub fn exact(name: &str, params: Vec<(String, String)>, lhs: S, rhs: S) -> Self {
        let residual = lhs.clone() - &rhs;
        let passed = residual.is_zero();
        IdentityCheck { name: name.into(), lhs, rhs, residual, params, tolerance: None, passed }
    }
}

impl IdentityCheck<Rational> {
    pub fn approximate(name: &str, params: Vec<(String, String)>, lhs: Rational, rhs: Rational, tol: Rational) -> Self {
        let residual = lhs.clone() - &rhs;
        let passed = residual.abs() < tol;
        IdentityCheck { name: name.into(), lhs, rhs, residual, params, tolerance: Some(tol), passed }
    }
}

pub(crate) fn param(k: &str, v: impl ToString) -> (String, String) {
    (k.to_string(), v.to_string())
}

pub(crate) fn sign<S: Scalar>(e: i64) -> S {
    if e.rem_euclid(2) == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// q^{n(μ')} t^{-n(μ)}, the weight in the binomial theorem.
pub(crate) fn bt_weight<S: Scalar>(ctx: &Context<S>, mu: &Partition) -> Result<S> {
    ctx.mono(mu.n_lambda_prime(), -mu.n_lambda())
}

/// (x)_λ = Σ_{μ⊆λ} (-1)^{|μ|} q^{n(μ')} t^{-n(μ)} (λ over μ) x^{|μ|}.
pub fn check_binomial_theorem<S: Scalar>(ctx: &Context<S>, lambda: &Partition, x: &S) -> Result<IdentityCheck<S>> {
    let lhs = ctx.poch_partition(x, lambda)?;
    let mut rhs = S::zero();
    for mu in lambda.sub(None) {
        let w = mu.weight();
        rhs = rhs + &(sign::<S>(w) * &bt_weight(ctx, &mu)? * &qt_binomial(ctx, lambda, &mu)? * &x.powi(w)?);
    }
    Ok(IdentityCheck::exact(
        "binomial_theorem",
        vec![param("lambda", lambda), param("x", x.key())],
        lhs,
        rhs,
    ))
}

/// (s/x)_λ / (s)_λ = Σ_μ q^{|μ|} t^{2n(μ)} (1/x)_μ FQ(μ) / (q t^{n-1})_μ · W^ab_μ(q^λ t^δ; s^{-1} t^{n-1}).
pub fn check_2phi1<S: Scalar>(ctx: &Context<S>, lambda: &Partition, s: &S, x: &S) -> Result<IdentityCheck<S>> {
    let n = lambda.len() as i64;
    let xinv = degen(x.inv(), "2phi1 argument")?;
    let lhs = degen(
        ctx.poch_partition(&(s.clone() * &xinv), lambda)?.div(&ctx.poch_partition(s, lambda)?),
        "2phi1",
    )?;
    let big_s = degen(s.inv(), "2phi1 argument")? * &ctx.mono(0, n - 1)?;
    let kind = WKind::Ab(big_s);
    let mut rhs = S::zero();
    for mu in lambda.sub(None) {
        let den = ctx.poch_partition(&ctx.mono(1, n - 1)?, &mu)?;
        let c = ctx.mono(mu.weight(), 2 * mu.n_lambda())? * &ctx.poch_partition(&xinv, &mu)? * &ctx.fq(&mu)?;
        let w = w_principal(ctx, &kind, &mu, lambda)?;
        rhs = rhs + &(degen(c.div(&den), "2phi1")? * &w);
    }
    Ok(IdentityCheck::exact(
        "2phi1",
        vec![param("lambda", lambda), param("s", s.key()), param("x", x.key())],
        lhs,
        rhs,
    ))
}

/// Σ_{μ ⊢ k, μ ⊆ λ} q^{n(μ')} t^{-n(μ)} (λ over μ).
fn weighted_level_sum<S: Scalar>(ctx: &Context<S>, lambda: &Partition, k: i64) -> Result<S> {
    let mut r = S::zero();
    if k < 0 {
        return Ok(r);
    }
    for mu in lambda.sub(Some(k)) {
        r = r + &(bt_weight(ctx, &mu)? * &qt_binomial(ctx, lambda, &mu)?);
    }
    Ok(r)
}

/// Pascal-type recurrence, `i` 0-indexed:
/// Σ_{μ⊢k} w(μ)(λ^i over μ) = Σ_{τ⊢k} w(τ)(λ over τ) + q^{λ_i} t^{-i} Σ_{ν⊢k-1} w(ν)(λ over ν).
pub fn check_pascal<S: Scalar>(ctx: &Context<S>, lambda: &Partition, i: usize, k: i64) -> Result<IdentityCheck<S>> {
    let bumped = lambda.bump(i)?;
    let lhs = weighted_level_sum(ctx, &bumped, k)?;
    let rhs = weighted_level_sum(ctx, lambda, k)?
        + &(ctx.mono(lambda.part(i), -(i as i64))? * &weighted_level_sum(ctx, lambda, k - 1)?);
    Ok(IdentityCheck::exact(
        "pascal",
        vec![param("lambda", lambda), param("i", i + 1), param("k", k)],
        lhs,
        rhs,
    ))
}

/// Σ_{μ⊢k} (λ over μ) = Σ_{τ⊢|λ|-k} (λ over τ).
pub fn check_symmetry<S: Scalar>(ctx: &Context<S>, lambda: &Partition, k: i64) -> Result<IdentityCheck<S>> {
    let level = |w: i64| -> Result<S> {
        let mut r = S::zero();
        for mu in lambda.sub(Some(w)) {
            r = r + &qt_binomial(ctx, lambda, &mu)?;
        }
        Ok(r)
    };
    let lhs = level(k)?;
    let rhs = level(lambda.weight() - k)?;
    Ok(IdentityCheck::exact("symmetry", vec![param("lambda", lambda), param("k", k)], lhs, rhs))
}

fn wab_at<S: Scalar>(ctx: &Context<S>, mu: &Partition, lambda: &Partition, s: &S) -> Result<S> {
    let n = lambda.len() as i64;
    let big_s = degen(s.inv(), "W^ab parameter")? * &ctx.mono(0, n - 1)?;
    w_principal(ctx, &WKind::Ab(big_s), mu, lambda)
}

/// (sr)_ν W^ab_μ(q^ν t^δ; (sr)^{-1} t^{n-1}) =
/// Σ_{μ⊆λ⊆ν} q^{|λ|} t^{2n(λ)} FQ(λ) (s)_ν / (q t^{n-1})_λ · W^ab_λ(q^ν t^δ; s^{-1} t^{n-1})
///           · (r)_λ W^ab_μ(q^λ t^δ; r^{-1} t^{n-1}).
pub fn check_weak_cocycle<S: Scalar>(
    ctx: &Context<S>,
    nu: &Partition,
    mu: &Partition,
    s: &S,
    r: &S,
) -> Result<IdentityCheck<S>> {
    let n = nu.len() as i64;
    let sr = s.clone() * r;
    let sr_nu = ctx.poch_partition(&sr, nu)?;
    let w = wab_at(ctx, mu, nu, &sr)?;
    let lhs = sr_nu * &w;
    let s_nu = ctx.poch_partition(s, nu)?;
    let mut rhs = S::zero();
    if contains(nu, mu)? {
        for lam in between(mu, nu) {
            let r_lam = ctx.poch_partition(r, &lam)?;
            if s_nu.is_zero() {
                break;
            }
            if r_lam.is_zero() {
                // 0 · W is only dropped when W is finite; 0 · pole is rejected.
                wab_at(ctx, mu, &lam, r)?;
                continue;
            }
            let den = ctx.poch_partition(&ctx.mono(1, n - 1)?, &lam)?;
            let c = ctx.mono(lam.weight(), 2 * lam.n_lambda())? * &ctx.fq(&lam)? * &s_nu;
            let term = degen(c.div(&den), "weak cocycle")?
                * &wab_at(ctx, &lam, nu, s)?
                * &r_lam
                * &wab_at(ctx, mu, &lam, r)?;
            rhs = rhs + &term;
        }
    }
    Ok(IdentityCheck::exact(
        "weak_cocycle",
        vec![param("nu", nu), param("mu", mu), param("s", s.key()), param("r", r.key())],
        lhs,
        rhs,
    ))
}

/// t^{-n(μ)} q^{n(μ')} (-1)_ν/(-1)_μ (ν over μ) = Σ_{μ⊆λ⊆ν} t^{-n(λ)} q^{n(λ')} (ν over λ)(λ over μ).
pub fn check_double_binomial<S: Scalar>(ctx: &Context<S>, nu: &Partition, mu: &Partition) -> Result<IdentityCheck<S>> {
    double_binomial(ctx, nu, mu, "double_binomial", |lam| qt_binomial(ctx, lam, mu), qt_binomial(ctx, nu, mu)?)
}

/// The μ = e_1 case of the double-binomial identity with every
/// (· over e_1) taken from its closed form.
pub fn check_double_binomial_e1<S: Scalar>(ctx: &Context<S>, nu: &Partition) -> Result<IdentityCheck<S>> {
    let e1 = Partition::e1(nu.len());
    double_binomial(ctx, nu, &e1, "double_binomial_e1", |lam| binom_e1(ctx, lam), binom_e1(ctx, nu)?)
}

fn double_binomial<S: Scalar>(
    ctx: &Context<S>,
    nu: &Partition,
    mu: &Partition,
    name: &str,
    lower: impl Fn(&Partition) -> Result<S>,
    top: S,
) -> Result<IdentityCheck<S>> {
    let minus_one = -S::one();
    let ratio = if contains(nu, mu)? { ctx.poch_ratio(&minus_one, nu, mu)? } else { S::zero() };
    let lhs = bt_weight(ctx, mu)? * &ratio * &top;
    let mut rhs = S::zero();
    if contains(nu, mu)? {
        for lam in between(mu, nu) {
            rhs = rhs + &(bt_weight(ctx, &lam)? * &qt_binomial(ctx, nu, &lam)? * &lower(&lam)?);
        }
    }
    Ok(IdentityCheck::exact(name, vec![param("nu", nu), param("mu", mu)], lhs, rhs))
}

/// Which binomial density.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityKind {
    G,
    F,
}

/// Σ_{μ⊆λ} g(μ; λ, z) = 1, or the same for f.
pub fn check_density_normalization<S: Scalar>(
    ctx: &Context<S>,
    lambda: &Partition,
    z: &S,
    which: DensityKind,
) -> Result<IdentityCheck<S>> {
    let mut total = S::zero();
    for mu in lambda.sub(None) {
        let term = match which {
            DensityKind::G => density_g_term(ctx, lambda, &mu, z)?,
            DensityKind::F => density_f_term(ctx, lambda, &mu, z)?,
        };
        total = total + &term;
    }
    let name = match which {
        DensityKind::G => "density_normalization_g",
        DensityKind::F => "density_normalization_f",
    };
    Ok(IdentityCheck::exact(name, vec![param("lambda", lambda), param("z", z.key())], total, S::one()))
}

/// Π_i (a t^{-i}; q)_N, the truncated (a)_{∞^n}.
pub fn poch_infinite_truncated<S: Scalar>(ctx: &Context<S>, a: &S, n: usize, trunc: u32) -> Result<S> {
    let mut r = S::one();
    for i in 0..n {
        r = r * &ctx.poch(&(a.clone() * &ctx.mono(0, -(i as i64))?), trunc as i64)?;
    }
    Ok(r)
}

/// Rejects z unless max_i |c z t^{2i-n-1}| < 1.
pub fn convergence_condition(ctx: &Context<Rational>, c: &Rational, z: &Rational, n: usize) -> Result<()> {
    let n = n as i64;
    for i in 1..=n {
        let v = (c.clone() * z * &ctx.mono(0, 2 * i - n - 1)?).abs();
        if v >= Rational::one() {
            return Err(Error::ConvergenceViolated(format!("|{c}·z·t^{}| = {v} ≥ 1", 2 * i - n - 1)));
        }
    }
    Ok(())
}

/// Geometric-series analogue, truncated:
/// z^{|μ|} FT(μ) / (qz)_{∞^n} = (1/N(μ)) Σ_{λ⊇μ} z^{|λ|} FT(λ) N(λ) (λ over μ),
/// with N the binomial normalisation q^{|λ|} t^{2n(λ)+(1-n)|λ|} FQ(λ)/(q t^{n-1})_λ.
pub fn check_geometric(
    ctx: &Context<Rational>,
    mu: &Partition,
    z: &Rational,
    part_cap: u32,
    trunc: u32,
    tol: &Rational,
) -> Result<IdentityCheck<Rational>> {
    let n = mu.len();
    convergence_condition(ctx, ctx.q(), z, n)?;
    if mu.max_part() > part_cap {
        return Err(Error::UnsupportedRegime(format!("part cap {part_cap} below μ = {mu:?}")));
    }
    let qz = ctx.q().clone() * z;
    let lhs = degen(
        (z.powi(mu.weight())? * &ctx.ft(mu)?).div(&poch_infinite_truncated(ctx, &qz, n, trunc)?),
        "geometric lhs",
    )?;
    let mut sum = Rational::zero();
    for lam in between(mu, &Partition::rectangle(part_cap, n)) {
        sum = sum + &(z.powi(lam.weight())? * &ctx.ft(&lam)? * &binom_norm(ctx, &lam)? * &qt_binomial(ctx, &lam, mu)?);
    }
    let rhs = degen(sum.div(&binom_norm(ctx, mu)?), "geometric rhs")?;
    Ok(IdentityCheck::approximate(
        "geometric",
        vec![
            param("mu", mu),
            param("z", z),
            param("part_cap", part_cap),
            param("trunc", trunc),
        ],
        lhs,
        rhs,
        tol.clone(),
    ))
}

/// (λ over k^n) via the closed product versus the definition.
pub fn check_rect_lower<S: Scalar>(ctx: &Context<S>, lambda: &Partition, k: u32) -> Result<IdentityCheck<S>> {
    let rect = Partition::rectangle(k, lambda.len());
    Ok(IdentityCheck::exact(
        "closed_form_rect_lower",
        vec![param("lambda", lambda), param("k", k)],
        binom_rect_lower(ctx, lambda, k)?,
        qt_binomial(ctx, lambda, &rect)?,
    ))
}

/// (k^n over μ) via the closed product versus the definition.
pub fn check_rect_upper<S: Scalar>(ctx: &Context<S>, k: u32, mu: &Partition) -> Result<IdentityCheck<S>> {
    let rect = Partition::rectangle(k, mu.len());
    Ok(IdentityCheck::exact(
        "closed_form_rect_upper",
        vec![param("k", k), param("mu", mu)],
        binom_rect_upper(ctx, k, mu)?,
        qt_binomial(ctx, &rect, mu)?,
    ))
}

/// (λ over e_1) via the bracket sum versus the definition.
pub fn check_e1<S: Scalar>(ctx: &Context<S>, lambda: &Partition) -> Result<IdentityCheck<S>> {
    Ok(IdentityCheck::exact(
        "closed_form_e1",
        vec![param("lambda", lambda)],
        binom_e1(ctx, lambda)?,
        qt_binomial(ctx, lambda, &Partition::e1(lambda.len()))?,
    ))
}

fn kind_name<S: Scalar>(kind: &WKind<S>) -> String {
    match kind {
        WKind::Ab(s) => format!("ab(s={})", s.key()),
        WKind::SUp => "s_up".into(),
        WKind::SDown => "s_down".into(),
    }
}

/// W_{k^n}(z) via the product versus the recurrence.
pub fn check_w_rectangular<S: Scalar>(ctx: &Context<S>, kind: &WKind<S>, k: u32, z: &[S]) -> Result<IdentityCheck<S>> {
    let n = z.len();
    let zs: Vec<String> = z.iter().map(|v| v.key()).collect();
    Ok(IdentityCheck::exact(
        "closed_form_w_rectangular",
        vec![param("kind", kind_name(kind)), param("k", k), param("z", zs.join(";"))],
        w_rectangular(ctx, kind, k, z)?,
        w_multi(ctx, kind, &Partition::rectangle(k, n), &Partition::zero(n), z)?,
    ))
}

/// W^s↑_λ(q^λ t^δ) and W^s↓_λ(q^λ t^δ): closed forms versus the recurrence.
pub fn check_self_evaluations<S: Scalar>(ctx: &Context<S>, lambda: &Partition) -> Result<Vec<IdentityCheck<S>>> {
    Ok(vec![
        IdentityCheck::exact(
            "closed_form_wsup_self",
            vec![param("lambda", lambda)],
            wsup_self(ctx, lambda)?,
            w_principal(ctx, &WKind::SUp, lambda, lambda)?,
        ),
        IdentityCheck::exact(
            "closed_form_wsdown_self",
            vec![param("lambda", lambda)],
            wsdown_self(ctx, lambda)?,
            w_principal(ctx, &WKind::SDown, lambda, lambda)?,
        ),
    ])
}

/// Weyl specialisations at x = q^k: closed forms versus the recurrence.
pub fn check_weyl<S: Scalar>(ctx: &Context<S>, mu: &Partition, k: u32, s: &S) -> Result<Vec<IdentityCheck<S>>> {
    let n = mu.len();
    let x = ctx.mono(k as i64, 0)?;
    let z = weyl_point(ctx, &x, n)?;
    let zero = Partition::zero(n);
    let params = vec![param("mu", mu), param("k", k), param("s", s.key())];
    Ok(vec![
        IdentityCheck::exact(
            "closed_form_weyl_ab",
            params.clone(),
            wab_weyl(ctx, mu, &x, s)?,
            w_multi(ctx, &WKind::Ab(s.clone()), mu, &zero, &z)?,
        ),
        IdentityCheck::exact(
            "closed_form_weyl_sup",
            params,
            wsup_weyl(ctx, mu, &x)?,
            w_multi(ctx, &WKind::SUp, mu, &zero, &z)?,
        ),
    ])
}

/// [x; k^n] from the product form versus the shifted-bracket definition.
pub fn check_bracket_rect<S: Scalar>(ctx: &Context<S>, big_q: &S, k: u32, n: usize) -> Result<IdentityCheck<S>> {
    Ok(IdentityCheck::exact(
        "closed_form_bracket_rect",
        vec![param("Q", big_q.key()), param("k", k), param("n", n)],
        qt_bracket_rect(ctx, big_q, k, n)?,
        qt_bracket_shifted(ctx, big_q, &Partition::rectangle(k, n))?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::all_partitions;
    use crate::wcore::QtPoint;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ctx() -> Context<Rational> {
        Context::at_point(&QtPoint::new(r("1/2"), r("1/3"), 3, 4).unwrap())
    }

    #[test]
    fn spec_examples() {
        let c = ctx();
        let bt = check_binomial_theorem(&c, &p("2,1"), &r("3/7")).unwrap();
        assert!(bt.passed);
        let x0 = check_binomial_theorem(&c, &p("2,1"), &Rational::zero()).unwrap();
        assert_eq!(x0.lhs, Rational::one());
        assert!(x0.passed);
        let phi = check_2phi1(&c, &p("2,1"), &r("5/11"), &Rational::one()).unwrap();
        assert_eq!(phi.lhs, Rational::one());
        assert!(phi.passed);
        assert!(check_pascal(&c, &p("2,1"), 1, 2).unwrap().passed);
        let k0 = check_pascal(&c, &p("2,1"), 0, 0).unwrap();
        assert_eq!(k0.lhs, Rational::one());
        assert!(check_symmetry(&c, &p("2,1"), 1).unwrap().passed);
        assert!(check_weak_cocycle(&c, &p("2,1"), &p("1,0"), &r("2/5"), &r("3/7")).unwrap().passed);
        assert!(check_weak_cocycle(&c, &p("2,1"), &p("0,0"), &r("2/5"), &Rational::one()).unwrap().passed);
        // μ ≠ 0: each (1)_λ = 0 meets a pole of W^ab.
        assert!(matches!(
            check_weak_cocycle(&c, &p("2,1"), &p("1,0"), &r("2/5"), &Rational::one()),
            Err(Error::DegenerateParameters(_))
        ));
        assert!(check_double_binomial(&c, &p("2,1"), &p("1,0")).unwrap().passed);
        assert!(check_double_binomial_e1(&c, &p("2,1")).unwrap().passed);
        for w in [DensityKind::G, DensityKind::F] {
            assert!(check_density_normalization(&c, &p("2,1"), &r("1/5"), w).unwrap().passed);
        }
    }

    #[test]
    fn closed_forms_small_range() {
        let c = ctx();
        for n in 1..=3 {
            for lam in all_partitions(n, 2) {
                for k in 0..=2 {
                    assert!(check_rect_lower(&c, &lam, k).unwrap().passed);
                    assert!(check_rect_upper(&c, k, &lam).unwrap().passed);
                    assert!(check_weyl(&c, &lam, k, &r("3/5")).unwrap().iter().all(|x| x.passed));
                }
                assert!(check_e1(&c, &lam).unwrap().passed);
                assert!(check_self_evaluations(&c, &lam).unwrap().iter().all(|x| x.passed));
            }
        }
    }

    #[test]
    fn geometric_one_dimensional() {
        let c = Context::at_point(&QtPoint::new(r("1/2"), r("1/3"), 1, 25).unwrap());
        let chk = check_geometric(&c, &p("1"), &r("1/10"), 25, 40, &Rational::ten_pow_neg(8)).unwrap();
        assert!(chk.passed, "{:?}", chk.residual);
        let bad = check_geometric(&c, &p("1"), &r("3"), 25, 40, &Rational::ten_pow_neg(8));
        assert!(matches!(bad, Err(Error::ConvergenceViolated(_))));
    }
}
