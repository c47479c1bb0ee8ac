//! qt-binomial coefficients, qt-brackets, and their product evaluations.

use crate::error::{Error, Result};
use crate::exactscalar::Scalar;
use crate::partitions::{contains, GeneralizedPartition, Partition};
use crate::wcore::{degen, w_principal, Context, WKind};

/// q^{|μ|} t^{2n(μ)+(1-n)|μ|} FQ(μ) / (q t^{n-1})_μ, the normalisation in
/// front of W^s↑_μ(q^λ t^δ) in the definition of the coefficient.
pub fn binom_norm<S: Scalar>(ctx: &Context<S>, mu: &Partition) -> Result<S> {
    let n = mu.len() as i64;
    let w = mu.weight();
    let den = ctx.poch_partition(&ctx.mono(1, n - 1)?, mu)?;
    let pre = ctx.mono(w, 2 * mu.n_lambda() + (1 - n) * w)? * &ctx.fq(mu)?;
    degen(pre.div(&den), "binomial normalisation")
}

/// The qt-binomial coefficient (λ over μ); zero unless μ ⊆ λ.
pub fn qt_binomial<S: Scalar>(ctx: &Context<S>, lambda: &Partition, mu: &Partition) -> Result<S> {
    if !contains(lambda, mu)? {
        return Ok(S::zero());
    }
    ctx.memo(format!("binom|{lambda}|{mu}"), || {
        Ok(binom_norm(ctx, mu)? * &w_principal(ctx, &WKind::SUp, mu, lambda)?)
    })
}

/// As [`qt_binomial`], with μ allowed negative parts (then the value is 0).
pub fn qt_binomial_generalized<S: Scalar>(
    ctx: &Context<S>,
    lambda: &Partition,
    mu: &GeneralizedPartition,
) -> Result<S> {
    if lambda.len() != mu.parts().len() {
        return Err(Error::LengthMismatch(lambda.len(), mu.parts().len()));
    }
    match mu.to_partition() {
        Some(m) => qt_binomial(ctx, lambda, &m),
        None => Ok(S::zero()),
    }
}

/// (λ over k^n) = Π_i (q^{1-k+λ_i} t^{n-i})_k / (q t^{n-i})_k.
pub fn binom_rect_lower<S: Scalar>(ctx: &Context<S>, lambda: &Partition, k: u32) -> Result<S> {
    let n = lambda.len() as i64;
    let k = k as i64;
    let mut r = S::one();
    for i in 0..lambda.len() {
        let e = n - 1 - i as i64;
        let num = ctx.poch(&ctx.mono(1 - k + lambda.part(i), e)?, k)?;
        let den = ctx.poch(&ctx.mono(1, e)?, k)?;
        r = r * &degen(num.div(&den), "rectangular binomial")?;
    }
    Ok(r)
}

/// (k^n over μ) = t^{2n(μ)+(1-n)|μ|} FQ(μ) FT(μ) Π_i (q^{1+k-μ_i} t^{i-1})_{μ_i} / (q t^{n-i})_{μ_i}.
pub fn binom_rect_upper<S: Scalar>(ctx: &Context<S>, k: u32, mu: &Partition) -> Result<S> {
    if !contains(&Partition::rectangle(k, mu.len()), mu)? {
        return Ok(S::zero());
    }
    let n = mu.len() as i64;
    let k = k as i64;
    let mut r = ctx.mono(0, 2 * mu.n_lambda() + (1 - n) * mu.weight())? * &ctx.fq(mu)? * &ctx.ft(mu)?;
    for i in 0..mu.len() {
        let m = mu.part(i);
        let num = ctx.poch(&ctx.mono(1 + k - m, i as i64)?, m)?;
        let den = ctx.poch(&ctx.mono(1, n - 1 - i as i64)?, m)?;
        r = r * &degen(num.div(&den), "rectangular binomial")?;
    }
    Ok(r)
}

/// [m]_q = (1 - q^m)/(1 - q).
pub fn q_number<S: Scalar>(ctx: &Context<S>, m: i64) -> Result<S> {
    let num = S::one() - ctx.mono(m, 0)?;
    degen(num.div(&(S::one() - ctx.q().clone())), "q-number")
}

/// (λ over e_1) = Σ_i [λ_i]_q t^{1-i}.
pub fn binom_e1<S: Scalar>(ctx: &Context<S>, lambda: &Partition) -> Result<S> {
    if lambda.max_part() == 0 {
        return Ok(S::zero());
    }
    let mut r = S::zero();
    for i in 0..lambda.len() {
        r = r + &(q_number(ctx, lambda.part(i))? * &ctx.mono(0, -(i as i64))?);
    }
    Ok(r)
}

/// [z]_{qt} = Π_i (1 - q^{z_i} t^{n-i}) / (1 - q t^{n-i}).
pub fn qt_bracket<S: Scalar>(ctx: &Context<S>, z: &Partition) -> Result<S> {
    let n = z.len() as i64;
    let mut r = S::one();
    for i in 0..z.len() {
        let e = n - 1 - i as i64;
        let num = S::one() - ctx.mono(z.part(i), e)?;
        let den = S::one() - ctx.mono(1, e)?;
        r = r * &degen(num.div(&den), "qt-bracket")?;
    }
    Ok(r)
}

/// (Q; 1/q, 1/t)_μ = Π_i Π_{k<μ_i} (1 - Q t^{i-1} q^{-k}).
pub fn poch_inverse_base<S: Scalar>(ctx: &Context<S>, big_q: &S, mu: &Partition) -> Result<S> {
    let mut r = S::one();
    for i in 0..mu.len() {
        for k in 0..mu.part(i) {
            r = r * &(S::one() - big_q.clone() * &ctx.mono(-k, i as i64)?);
        }
    }
    Ok(r)
}

/// Π_i (1 - q t^{n-i})^{e_i}.
pub(crate) fn one_minus_qt_power<S: Scalar>(ctx: &Context<S>, e: &[i64]) -> Result<S> {
    let n = e.len() as i64;
    let mut r = S::one();
    for (i, &ei) in e.iter().enumerate() {
        let f = S::one() - ctx.mono(1, n - 1 - i as i64)?;
        r = r * &degen(f.powi(ei), "(1 - q t^(n-i)) power")?;
    }
    Ok(r)
}

/// The μ-shifted bracket [x; μ]_{qt} = q^{n(μ')} (Q; 1/q, 1/t)_μ / Π_i (1 - q t^{n-i})^{μ_i},
/// with `big_q` standing for q^x.
pub fn qt_bracket_shifted<S: Scalar>(ctx: &Context<S>, big_q: &S, mu: &Partition) -> Result<S> {
    let den = one_minus_qt_power(ctx, &mu.parts().iter().map(|&p| p as i64).collect::<Vec<_>>())?;
    let num = ctx.mono(mu.n_lambda_prime(), 0)? * &poch_inverse_base(ctx, big_q, mu)?;
    degen(num.div(&den), "shifted bracket")
}

/// [x; k^n]_{qt} = q^{n C(k,2)} Π_i (q^{1-k} Q t^{n-i})_k / (1 - q t^{n-i})^k.
pub fn qt_bracket_rect<S: Scalar>(ctx: &Context<S>, big_q: &S, k: u32, n: usize) -> Result<S> {
    let k = k as i64;
    let mut r = ctx.mono(n as i64 * k * (k - 1) / 2, 0)?;
    for i in 0..n {
        let e = (n - 1 - i) as i64;
        let num = ctx.poch(&(big_q.clone() * &ctx.mono(1 - k, e)?), k)?;
        let den = (S::one() - ctx.mono(1, e)?).powi(k);
        r = r * &degen(den.and_then(|d| num.div(&d)), "rectangular bracket")?;
    }
    Ok(r)
}
