//! qt-Stirling numbers of both kinds, qt-Bernoulli, qt-Bell, qt-Catalan,
//! qt-Fibonacci, and the classical limits t = q^α, q → 1.

use crate::binomial::{binom_norm, one_minus_qt_power, poch_inverse_base, qt_binomial, qt_bracket, qt_bracket_shifted};
use crate::error::{Error, Result};
use crate::exactscalar::{RatFunc, RatFuncQ, Rational, Scalar};
use crate::identities::{bt_weight, param, sign, IdentityCheck};
use crate::partitions::{between, contains, Partition};
use crate::wcore::{degen, w_principal, Context, WKind};
use std::collections::BTreeMap;

/// u(λ, μ) = q^{|μ|} t^{2n(μ)} FQ(μ)/(q t^{n-1})_μ · W^s↓_μ(q^λ t^δ).
pub fn u_coeff<S: Scalar>(ctx: &Context<S>, lambda: &Partition, mu: &Partition) -> Result<S> {
    if !contains(lambda, mu)? {
        return Ok(S::zero());
    }
    let n = mu.len() as i64;
    // binom_norm carries q^{|μ|} t^{2n(μ)+(1-n)|μ|}; restore t^{(n-1)|μ|}.
    let pre = binom_norm(ctx, mu)? * &ctx.mono(0, (n - 1) * mu.weight())?;
    Ok(pre * &w_principal(ctx, &WKind::SDown, mu, lambda)?)
}

/// v(λ, μ) = (-1)^{|μ|} q^{|μ|+n(μ')} t^{n(μ)+(1-n)|μ|} FQ(μ)/(q t^{n-1})_μ · W^s↑_μ(q^λ t^δ).
pub fn v_coeff<S: Scalar>(ctx: &Context<S>, lambda: &Partition, mu: &Partition) -> Result<S> {
    if !contains(lambda, mu)? {
        return Ok(S::zero());
    }
    let pre = sign::<S>(mu.weight()) * &binom_norm(ctx, mu)? * &ctx.mono(mu.n_lambda_prime(), -mu.n_lambda())?;
    Ok(pre * &w_principal(ctx, &WKind::SUp, mu, lambda)?)
}

/// A context over rational functions of a fresh variable p, with q = 1/p
/// and t replaced by 1/t.
fn inverted_context<S: Scalar>(ctx: &Context<S>) -> Result<Context<RatFunc<S>>> {
    let p_inv = RatFunc::<S>::var().inv()?;
    let t_inv = degen(ctx.t().inv(), "t")?;
    Ok(Context::new(p_inv, RatFunc::constant(t_inv)))
}

/// lim_{p→1} u(λ, μ; 1/p, 1/t).
pub fn u_limit<S: Scalar>(ctx: &Context<S>, lambda: &Partition, mu: &Partition) -> Result<S> {
    ctx.memo(format!("ulim|{lambda}|{mu}"), || {
        let inner = inverted_context(ctx)?;
        u_coeff(&inner, lambda, mu)?.limit_at_one().map(|v| v.simplify())
    })
}

/// lim_{p→1} v(λ, μ; 1/p, 1/t).
pub fn v_limit<S: Scalar>(ctx: &Context<S>, lambda: &Partition, mu: &Partition) -> Result<S> {
    ctx.memo(format!("vlim|{lambda}|{mu}"), || {
        let inner = inverted_context(ctx)?;
        v_coeff(&inner, lambda, mu)?.limit_at_one().map(|v| v.simplify())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum StirlingKind {
    First,
    Second,
}

/// s_1(ν, μ) or s_2(ν, μ); zero unless μ ⊆ ν.
pub fn stirling<S: Scalar>(ctx: &Context<S>, kind: StirlingKind, nu: &Partition, mu: &Partition) -> Result<S> {
    if !contains(nu, mu)? {
        return Ok(S::zero());
    }
    let tag = match kind {
        StirlingKind::First => "s1",
        StirlingKind::Second => "s2",
    };
    ctx.memo(format!("{tag}|{nu}|{mu}"), || {
        let n = nu.len() as i64;
        let diff: Vec<i64> = (0..nu.len()).map(|i| nu.part(i) - mu.part(i)).collect();
        let d = one_minus_qt_power(ctx, &diff)?;
        let mut sum = S::zero();
        let pre = match kind {
            StirlingKind::First => {
                for lam in between(mu, nu) {
                    let term = u_coeff(ctx, nu, &lam)? * &ctx.mono(0, (1 - n) * lam.weight())? * &v_limit(ctx, &lam, mu)?;
                    sum = sum + &term;
                }
                ctx.mono(nu.n_lambda_prime(), -2 * mu.n_lambda() + (n - 1) * mu.weight())?
            }
            StirlingKind::Second => {
                for lam in between(mu, nu) {
                    let term = u_limit(ctx, nu, &lam)? * &ctx.mono(0, (n - 1) * lam.weight())? * &v_coeff(ctx, &lam, mu)?;
                    sum = sum + &term;
                }
                ctx.mono(-mu.n_lambda_prime(), 2 * nu.n_lambda() + (1 - n) * nu.weight())?
            }
        };
        Ok(degen((pre * &sum).div(&d), "Stirling denominator")?.simplify())
    })
}

/// All Stirling numbers of one kind on the interval below `bound`.
#[derive(Clone, Debug)]
pub struct StirlingTable<S> {
    pub kind: StirlingKind,
    pub entries: BTreeMap<(Partition, Partition), S>,
}

pub fn stirling_table<S: Scalar>(ctx: &Context<S>, kind: StirlingKind, bound: &Partition) -> Result<StirlingTable<S>> {
    let mut entries = BTreeMap::new();
    for lam in bound.sub(None) {
        for mu in lam.sub(None) {
            let v = stirling(ctx, kind, &lam, &mu)?;
            entries.insert((lam.clone(), mu), v);
        }
    }
    Ok(StirlingTable { kind, entries })
}

/// β_λ from β_{0^n} = 1 and, for |λ| ≥ 1,
/// Σ_{μ⊆λ} t^{-n(μ)} q^{n(μ')} (λ^1 over μ) β_μ = 0.
pub fn bernoulli<S: Scalar>(ctx: &Context<S>, lambda: &Partition) -> Result<S> {
    if lambda.weight() == 0 {
        return Ok(S::one());
    }
    ctx.memo(format!("bern|{lambda}"), || {
        let top = lambda.bump(0)?;
        let mut sum = S::zero();
        for mu in lambda.sub(None) {
            if &mu == lambda {
                continue;
            }
            sum = sum + &(bt_weight(ctx, &mu)? * &qt_binomial(ctx, &top, &mu)? * &bernoulli(ctx, &mu)?);
        }
        let lead = bt_weight(ctx, lambda)? * &qt_binomial(ctx, &top, lambda)?;
        if lead.is_zero() {
            return Err(Error::DegenerateParameters(format!("(λ^1 over λ) vanishes at λ = {lambda:?}")));
        }
        Ok((-sum).div(&lead)?.simplify())
    })
}

/// Residual of the Bernoulli recurrence at λ (|λ| ≥ 1).
pub fn check_bernoulli_recurrence<S: Scalar>(ctx: &Context<S>, lambda: &Partition) -> Result<IdentityCheck<S>> {
    let top = lambda.bump(0)?;
    let mut sum = S::zero();
    for mu in lambda.sub(None) {
        sum = sum + &(bt_weight(ctx, &mu)? * &qt_binomial(ctx, &top, &mu)? * &bernoulli(ctx, &mu)?);
    }
    Ok(IdentityCheck::exact("bernoulli_recurrence", vec![param("lambda", lambda)], sum, S::zero()))
}

/// B_λ = Σ_{μ⊆λ} t^{-n(μ)} q^{n(μ')} s_2(λ, μ).
pub fn bell<S: Scalar>(ctx: &Context<S>, lambda: &Partition) -> Result<S> {
    let mut r = S::zero();
    for mu in lambda.sub(None) {
        r = r + &(bt_weight(ctx, &mu)? * &stirling(ctx, StirlingKind::Second, lambda, &mu)?);
    }
    Ok(r.simplify())
}

/// C_λ = (2λ over λ) / [λ^1]_{qt}.
pub fn catalan<S: Scalar>(ctx: &Context<S>, lambda: &Partition) -> Result<S> {
    let bracket = qt_bracket(ctx, &lambda.bump(0)?)?;
    if bracket.is_zero() {
        return Err(Error::DegenerateParameters(format!("[λ^1]_qt vanishes at λ = {lambda:?}")));
    }
    Ok(qt_binomial(ctx, &lambda.scaled(2), lambda)?.div(&bracket)?.simplify())
}

/// Product form of C_{k^n}, k ≥ 1.
pub fn catalan_rect<S: Scalar>(ctx: &Context<S>, k: u32, n: usize) -> Result<S> {
    let (k, nn) = (k as i64, n as i64);
    let mut r = degen(
        (S::one() - ctx.mono(1, nn - 1)?).div(&(S::one() - ctx.mono(k + 1, nn - 1)?)),
        "Catalan rectangle",
    )?;
    for i in 1..nn {
        let e = nn - 1 - i;
        r = r * &degen((S::one() - ctx.mono(1, e)?).div(&(S::one() - ctx.mono(k, e)?)), "Catalan rectangle")?;
    }
    for i in 0..nn {
        let e = nn - 1 - i;
        let num = ctx.poch(&ctx.mono(1 + k, e)?, k)?;
        r = r * &degen(num.div(&ctx.poch(&ctx.mono(1, e)?, k)?), "Catalan rectangle")?;
    }
    Ok(r)
}

/// Product form of C_{1^n}.
pub fn catalan_ones<S: Scalar>(ctx: &Context<S>, n: usize) -> Result<S> {
    let nn = n as i64;
    let mut r = S::one();
    for i in 1..nn {
        let e = nn - 1 - i;
        r = r * &degen((S::one() - ctx.mono(2, e)?).div(&(S::one() - ctx.mono(1, e)?)), "Catalan 1^n")?;
    }
    Ok(r)
}

/// F_{λ^1} = Σ_{ν+μ=λ} q^{2n(μ')} t^{2(n-1)|μ|-2n(μ)} (ν over μ).
pub fn fibonacci<S: Scalar>(ctx: &Context<S>, lambda: &Partition) -> Result<S> {
    let n = lambda.len() as i64;
    let mut r = S::zero();
    for (nu, mu) in lambda.sum_decompositions() {
        let w = ctx.mono(2 * mu.n_lambda_prime(), 2 * (n - 1) * mu.weight() - 2 * mu.n_lambda())?;
        r = r + &(w * &qt_binomial(ctx, &nu, &mu)?);
    }
    Ok(r.simplify())
}

/// lim_{q→1} of a quantity computed with t = q^α.
pub fn alpha_limit(alpha: u32, quantity: impl FnOnce(&Context<RatFuncQ>) -> Result<RatFuncQ>) -> Result<Rational> {
    let ctx = Context::alpha(alpha)?;
    quantity(&ctx)?.limit_at_one()
}

/// lim_{q→1} of a quantity computed with t fixed to `t0`.
pub fn formal_limit(t0: &Rational, quantity: impl FnOnce(&Context<RatFuncQ>) -> Result<RatFuncQ>) -> Result<Rational> {
    let ctx = Context::formal_q(t0)?;
    quantity(&ctx)?.limit_at_one()
}

/// (x; 1/q, 1/t)_λ = Σ_μ u(λ, μ) x^{|μ|}.
pub fn check_change_of_basis_1<S: Scalar>(ctx: &Context<S>, lambda: &Partition, x: &S) -> Result<IdentityCheck<S>> {
    let lhs = poch_inverse_base(ctx, x, lambda)?;
    let mut rhs = S::zero();
    for mu in lambda.sub(None) {
        rhs = rhs + &(u_coeff(ctx, lambda, &mu)? * &x.powi(mu.weight())?);
    }
    Ok(IdentityCheck::exact("change_of_basis_1", vec![param("lambda", lambda), param("x", x.key())], lhs, rhs))
}

/// x^{|λ|} = Σ_μ v(λ, μ) (x; 1/q, 1/t)_μ.
pub fn check_change_of_basis_2<S: Scalar>(ctx: &Context<S>, lambda: &Partition, x: &S) -> Result<IdentityCheck<S>> {
    let lhs = x.powi(lambda.weight())?;
    let mut rhs = S::zero();
    for mu in lambda.sub(None) {
        rhs = rhs + &(v_coeff(ctx, lambda, &mu)? * &poch_inverse_base(ctx, x, &mu)?);
    }
    Ok(IdentityCheck::exact("change_of_basis_2", vec![param("lambda", lambda), param("x", x.key())], lhs, rhs))
}

/// Σ_{μ⊆λ⊆ν} u(ν, λ) v(λ, μ) = δ_{νμ}.
pub fn check_uv_inversion<S: Scalar>(ctx: &Context<S>, nu: &Partition, mu: &Partition) -> Result<IdentityCheck<S>> {
    let mut lhs = S::zero();
    if contains(nu, mu)? {
        for lam in between(mu, nu) {
            lhs = lhs + &(u_coeff(ctx, nu, &lam)? * &v_coeff(ctx, &lam, mu)?);
        }
    }
    let rhs = if nu == mu { S::one() } else { S::zero() };
    Ok(IdentityCheck::exact("uv_inversion", vec![param("nu", nu), param("mu", mu)], lhs, rhs))
}

/// u(λ, λ) and v(λ, λ) against their closed forms.
pub fn check_uv_diagonal<S: Scalar>(ctx: &Context<S>, lambda: &Partition) -> Result<Vec<IdentityCheck<S>>> {
    let sg = sign::<S>(lambda.weight());
    let u_closed = sg.clone() * &ctx.mono(-lambda.n_lambda_prime(), lambda.n_lambda())?;
    let v_closed = sg * &ctx.mono(lambda.n_lambda_prime(), -lambda.n_lambda())?;
    Ok(vec![
        IdentityCheck::exact("u_diagonal", vec![param("lambda", lambda)], u_coeff(ctx, lambda, lambda)?, u_closed),
        IdentityCheck::exact("v_diagonal", vec![param("lambda", lambda)], v_coeff(ctx, lambda, lambda)?, v_closed),
    ])
}

/// s_1(λ, λ) = s_2(λ, λ) = 1.
pub fn check_stirling_diagonal<S: Scalar>(ctx: &Context<S>, lambda: &Partition) -> Result<Vec<IdentityCheck<S>>> {
    Ok(vec![
        IdentityCheck::exact(
            "stirling1_diagonal",
            vec![param("lambda", lambda)],
            stirling(ctx, StirlingKind::First, lambda, lambda)?,
            S::one(),
        ),
        IdentityCheck::exact(
            "stirling2_diagonal",
            vec![param("lambda", lambda)],
            stirling(ctx, StirlingKind::Second, lambda, lambda)?,
            S::one(),
        ),
    ])
}

/// Σ_λ s_a(ν, λ) s_b(λ, μ) = δ_{νμ} for (a, b) = (1, 2) and (2, 1).
pub fn check_stirling_inversion<S: Scalar>(ctx: &Context<S>, nu: &Partition, mu: &Partition) -> Result<Vec<IdentityCheck<S>>> {
    let delta = if nu == mu { S::one() } else { S::zero() };
    let mut out = Vec::new();
    for (name, a, b) in [
        ("stirling_inversion_12", StirlingKind::First, StirlingKind::Second),
        ("stirling_inversion_21", StirlingKind::Second, StirlingKind::First),
    ] {
        let mut lhs = S::zero();
        if contains(nu, mu)? {
            for lam in between(mu, nu) {
                lhs = lhs + &(stirling(ctx, a, nu, &lam)? * &stirling(ctx, b, &lam, mu)?);
            }
        }
        out.push(IdentityCheck::exact(name, vec![param("nu", nu), param("mu", mu)], lhs, delta.clone()));
    }
    Ok(out)
}

/// Defining expansion [x; ν]_{qt} = Σ_μ s_1(ν, μ) c(μ) Π_i [x t^{n-i}]^{μ_i}, with
/// [x t^{n-i}] = (1 - Q t^{n-i})/(1 - q t^{n-i}).  `weighted` selects
/// c(μ) = t^{2n(μ)+(1-n)|μ|}; otherwise c(μ) = 1 as literally displayed.
pub fn check_stirling_expansion<S: Scalar>(
    ctx: &Context<S>,
    nu: &Partition,
    big_q: &S,
    weighted: bool,
) -> Result<IdentityCheck<S>> {
    let n = nu.len() as i64;
    let lhs = qt_bracket_shifted(ctx, big_q, nu)?;
    let y: Vec<S> = (0..nu.len())
        .map(|i| {
            let e = n - 1 - i as i64;
            degen(
                (S::one() - big_q.clone() * &ctx.mono(0, e)?).div(&(S::one() - ctx.mono(1, e)?)),
                "bracket",
            )
        })
        .collect::<Result<_>>()?;
    let mut rhs = S::zero();
    for mu in nu.sub(None) {
        let mut term = stirling(ctx, StirlingKind::First, nu, &mu)?;
        if weighted {
            term = term * &ctx.mono(0, 2 * mu.n_lambda() + (1 - n) * mu.weight())?;
        }
        for (i, yi) in y.iter().enumerate() {
            term = term * &yi.powi(mu.part(i))?;
        }
        rhs = rhs + &term;
    }
    let name = if weighted { "stirling_expansion_weighted" } else { "stirling_expansion_literal" };
    Ok(IdentityCheck::exact(name, vec![param("nu", nu), param("Q", big_q.key())], lhs, rhs))
}

/// C_{k^n} and C_{1^n} against their product forms.
pub fn check_catalan_closed_forms<S: Scalar>(ctx: &Context<S>, k: u32, n: usize) -> Result<Vec<IdentityCheck<S>>> {
    Ok(vec![
        IdentityCheck::exact(
            "catalan_rectangle",
            vec![param("k", k), param("n", n)],
            catalan(ctx, &Partition::rectangle(k, n))?,
            catalan_rect(ctx, k, n)?,
        ),
        IdentityCheck::exact(
            "catalan_ones",
            vec![param("n", n)],
            catalan(ctx, &Partition::rectangle(1, n))?,
            catalan_ones(ctx, n)?,
        ),
    ])
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
    fn uv_structure() {
        let c = ctx();
        for nu in all_partitions(2, 2) {
            assert!(check_uv_diagonal(&c, &nu).unwrap().iter().all(|x| x.passed));
            assert!(check_change_of_basis_1(&c, &nu, &r("3/7")).unwrap().passed);
            assert!(check_change_of_basis_2(&c, &nu, &r("3/7")).unwrap().passed);
            for mu in nu.sub(None) {
                assert!(check_uv_inversion(&c, &nu, &mu).unwrap().passed);
            }
        }
    }

    #[test]
    fn stirling_small() {
        let c = ctx();
        for nu in all_partitions(2, 2) {
            assert!(check_stirling_diagonal(&c, &nu).unwrap().iter().all(|x| x.passed));
            for mu in nu.sub(None) {
                assert!(check_stirling_inversion(&c, &nu, &mu).unwrap().iter().all(|x| x.passed));
            }
            assert!(check_stirling_expansion(&c, &nu, &r("2/5"), true).unwrap().passed);
        }
        // The unweighted expansion holds in one variable.
        assert!(check_stirling_expansion(&c, &p("3"), &r("2/5"), false).unwrap().passed);
    }

    #[test]
    fn bernoulli_first_step() {
        let c = ctx();
        assert_eq!(bernoulli(&c, &p("0")).unwrap(), Rational::one());
        // β_(1) = -1/(1+q)
        assert_eq!(bernoulli(&c, &p("1")).unwrap(), r("-2/3"));
        for lam in all_partitions(2, 2) {
            if lam.weight() > 0 {
                assert!(check_bernoulli_recurrence(&c, &lam).unwrap().passed);
            }
        }
    }

    #[test]
    fn catalan_and_fibonacci() {
        let c = ctx();
        assert_eq!(catalan(&c, &p("1")).unwrap(), Rational::one());
        assert!(matches!(catalan(&c, &p("1,0")), Err(Error::DegenerateParameters(_))));
        for n in 1..=3 {
            for k in 1..=2 {
                assert!(check_catalan_closed_forms(&c, k, n).unwrap().iter().all(|x| x.passed));
            }
        }
        assert_eq!(fibonacci(&c, &p("0,0")).unwrap(), Rational::one());
    }

    #[test]
    fn classical_limits_one_dimension() {
        let bern: Vec<Rational> =
            (1..=4).map(|m| alpha_limit(1, |c| bernoulli(c, &Partition::new(vec![m]).unwrap())).unwrap()).collect();
        assert_eq!(bern, vec![r("-1/2"), r("1/6"), r("0"), r("-1/30")]);
        let cat: Vec<Rational> =
            (0..=5).map(|m| alpha_limit(1, |c| catalan(c, &Partition::new(vec![m]).unwrap())).unwrap()).collect();
        assert_eq!(cat, [1, 1, 2, 5, 14, 42].map(Rational::from).to_vec());
        let fib: Vec<Rational> =
            (0..10).map(|m| alpha_limit(1, |c| fibonacci(c, &Partition::new(vec![m]).unwrap())).unwrap()).collect();
        assert_eq!(fib, [1, 1, 2, 3, 5, 8, 13, 21, 34, 55].map(Rational::from).to_vec());
        let bell_v: Vec<Rational> =
            (0..=5).map(|m| alpha_limit(1, |c| bell(c, &Partition::new(vec![m]).unwrap())).unwrap()).collect();
        assert_eq!(bell_v, [1, 1, 2, 5, 15, 52].map(Rational::from).to_vec());
    }
}
