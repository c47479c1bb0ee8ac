//! Densities on partition posets, qt-exponentials, the qt-Poisson density,
//! and an exact inverse-CDF sampler.

use crate::binomial::qt_binomial;
use crate::error::{Error, Result};
use crate::exactscalar::{Rational, Scalar};
use crate::identities::{convergence_condition, poch_infinite_truncated};
use crate::partitions::{all_partitions, contains, Partition};
use crate::wcore::{degen, Context, QtPoint};
use num_bigint::BigInt;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// g(μ; λ, z) = (λ over μ) z^{|λ|-|μ|} (z)_μ.
pub fn density_g_term<S: Scalar>(ctx: &Context<S>, lambda: &Partition, mu: &Partition, z: &S) -> Result<S> {
    Ok(qt_binomial(ctx, lambda, mu)? * &z.powi(lambda.weight() - mu.weight())? * &ctx.poch_partition(z, mu)?)
}

/// f(μ; λ, z) = t^{-2n(μ)} q^{2n(μ')} (λ over μ) (z)_λ/(z)_μ z^{|μ|}.
pub fn density_f_term<S: Scalar>(ctx: &Context<S>, lambda: &Partition, mu: &Partition, z: &S) -> Result<S> {
    let b = qt_binomial(ctx, lambda, mu)?;
    if b.is_zero() {
        return Ok(b);
    }
    Ok(ctx.mono(2 * mu.n_lambda_prime(), -2 * mu.n_lambda())?
        * &b
        * &ctx.poch_ratio(z, lambda, mu)?
        * &z.powi(mu.weight())?)
}

/// F(λ; ν, z) = Σ_{μ⊆λ} g(μ; ν, z), the distribution function of g.
pub fn distribution_f(ctx: &Context<Rational>, nu: &Partition, lambda: &Partition, z: &Rational) -> Result<Rational> {
    if !contains(nu, lambda)? {
        return Err(Error::UnsupportedRegime(format!("{lambda:?} is not contained in {nu:?}")));
    }
    let mut total = Rational::zero();
    for mu in lambda.sub(None) {
        total = total + &density_g_term(ctx, nu, &mu, z)?;
    }
    Ok(total)
}

/// FQ(μ) FT(μ) / (q t^{n-1})_μ, common to the exponential series.
fn exp_coefficient(ctx: &Context<Rational>, mu: &Partition) -> Result<Rational> {
    let n = mu.len() as i64;
    let den = ctx.poch_partition(&ctx.mono(1, n - 1)?, mu)?;
    degen((ctx.fq(mu)? * &ctx.ft(mu)?).div(&den), "exponential coefficient")
}

/// Truncation caps: partitions with parts ≤ `part_cap`, `trunc` factors
/// per infinite product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub part_cap: u32,
    pub trunc: u32,
}

/// Product and series forms of a truncated exponential.
#[derive(Clone, Debug)]
pub struct ExpValue {
    pub product: Rational,
    pub series: Rational,
    pub difference: Rational,
}

/// E_q(z) = (-z)_{∞^n} = Σ_μ z^{|μ|} q^{n(μ')} t^{n(μ)+(1-n)|μ|} FQ FT / (q t^{n-1})_μ.
pub fn exp_big_e(ctx: &Context<Rational>, z: &Rational, n: usize, caps: Caps) -> Result<ExpValue> {
    let product = poch_infinite_truncated(ctx, &-z.clone(), n, caps.trunc)?;
    let mut series = Rational::zero();
    for mu in all_partitions(n, caps.part_cap) {
        let w = mu.weight();
        let m = ctx.mono(mu.n_lambda_prime(), mu.n_lambda() + (1 - n as i64) * w)?;
        series = series + &(z.powi(w)? * &m * &exp_coefficient(ctx, &mu)?);
    }
    let difference = product.clone() - &series;
    Ok(ExpValue { product, series, difference })
}

/// e_q(z) = 1/(z)_{∞^n} = Σ_μ z^{|μ|} t^{2n(μ)+(1-n)|μ|} FQ FT / (q t^{n-1})_μ.
pub fn exp_small_e(ctx: &Context<Rational>, z: &Rational, n: usize, caps: Caps) -> Result<ExpValue> {
    convergence_condition(ctx, &Rational::one(), z, n)?;
    let product = degen(poch_infinite_truncated(ctx, z, n, caps.trunc)?.inv(), "e_q product")?;
    let mut series = Rational::zero();
    for mu in all_partitions(n, caps.part_cap) {
        let w = mu.weight();
        let m = ctx.mono(0, 2 * mu.n_lambda() + (1 - n as i64) * w)?;
        series = series + &(z.powi(w)? * &m * &exp_coefficient(ctx, &mu)?);
    }
    let difference = product.clone() - &series;
    Ok(ExpValue { product, series, difference })
}

/// Poisson mass without the E_q(-z) prefactor:
/// z^{|μ|} q^{2n(μ')} t^{(1-n)|μ|} FQ FT / ((z)_μ (q t^{n-1})_μ).
fn poisson_kernel(ctx: &Context<Rational>, mu: &Partition, z: &Rational) -> Result<Rational> {
    let n = mu.len() as i64;
    let w = mu.weight();
    let num = z.powi(w)? * &ctx.mono(2 * mu.n_lambda_prime(), (1 - n) * w)? * &exp_coefficient(ctx, mu)?;
    degen(num.div(&ctx.poch_partition(z, mu)?), "Poisson mass")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityFamily {
    BinomialG,
    BinomialF,
    Poisson,
}

/// A density on partitions at an exact parameter point.
#[derive(Clone, Debug)]
pub struct DensitySpec {
    pub family: DensityFamily,
    /// Required for the binomial families.
    pub lambda: Option<Partition>,
    /// Number of parts (taken from λ for the binomial families).
    pub n: usize,
    pub z: Rational,
    pub point: QtPoint,
    pub caps: Caps,
}

impl DensitySpec {
    pub fn binomial(family: DensityFamily, lambda: Partition, z: Rational, point: QtPoint) -> Self {
        let n = lambda.len();
        DensitySpec { family, lambda: Some(lambda), n, z, point, caps: Caps { part_cap: 0, trunc: 0 } }
    }

    pub fn poisson(n: usize, z: Rational, point: QtPoint, caps: Caps) -> Self {
        DensitySpec { family: DensityFamily::Poisson, lambda: None, n, z, point, caps }
    }

    /// Poisson masses use a truncated prefactor and are approximate.
    pub fn is_approximate(&self) -> bool {
        self.family == DensityFamily::Poisson
    }

    fn lambda(&self) -> Result<&Partition> {
        self.lambda
            .as_ref()
            .ok_or_else(|| Error::UnsupportedRegime("binomial densities need λ".into()))
    }

    /// Support in reverse-lex order.
    pub fn support(&self) -> Result<Vec<Partition>> {
        match self.family {
            DensityFamily::Poisson => Ok(all_partitions(self.n, self.caps.part_cap)),
            _ => Ok(self.lambda()?.sub(None)),
        }
    }

    /// 0 < q, t, z < 1 and z < t^{n-1}: every mass is then nonnegative.
    pub fn check_positivity(&self) -> Result<()> {
        let one = Rational::one();
        let (q, t, z) = (self.point.q(), self.point.t(), &self.z);
        let in_unit = |v: &Rational| v.is_positive() && v < &one;
        let tn = t.powi(self.n as i64 - 1)?;
        if !(in_unit(q) && in_unit(t) && in_unit(z)) || z >= &tn {
            return Err(Error::UnsupportedRegime(format!(
                "need 0 < q, t, z < 1 and z < t^(n-1); got q = {q}, t = {t}, z = {z}"
            )));
        }
        Ok(())
    }
}

/// A density together with its exact masses on the support.
pub struct Density {
    spec: DensitySpec,
    ctx: Context<Rational>,
    prefactor: Rational,
}

impl Density {
    pub fn new(spec: DensitySpec) -> Result<Self> {
        let ctx = Context::at_point(&spec.point);
        let prefactor = match spec.family {
            DensityFamily::Poisson => {
                convergence_condition(&ctx, &Rational::one(), &spec.z, spec.n)?;
                poch_infinite_truncated(&ctx, &spec.z, spec.n, spec.caps.trunc)?
            }
            _ => Rational::one(),
        };
        Ok(Density { spec, ctx, prefactor })
    }

    pub fn spec(&self) -> &DensitySpec {
        &self.spec
    }

    /// Exact mass at μ (the Poisson prefactor E_q(-z) is truncated).
    pub fn mass(&self, mu: &Partition) -> Result<Rational> {
        if mu.len() != self.spec.n {
            return Err(Error::LengthMismatch(self.spec.n, mu.len()));
        }
        let z = &self.spec.z;
        match self.spec.family {
            DensityFamily::BinomialG | DensityFamily::BinomialF => {
                let lambda = self.spec.lambda()?;
                if !contains(lambda, mu)? {
                    return Err(Error::UnsupportedRegime(format!("{mu:?} outside the support ⊆ {lambda:?}")));
                }
                if self.spec.family == DensityFamily::BinomialG {
                    density_g_term(&self.ctx, lambda, mu, z)
                } else {
                    density_f_term(&self.ctx, lambda, mu, z)
                }
            }
            DensityFamily::Poisson => {
                if mu.max_part() > self.spec.caps.part_cap {
                    return Err(Error::UnsupportedRegime(format!("{mu:?} exceeds the part cap")));
                }
                Ok(self.prefactor.clone() * &poisson_kernel(&self.ctx, mu, z)?)
            }
        }
    }

    pub fn masses(&self) -> Result<Vec<(Partition, Rational)>> {
        self.spec.support()?.into_iter().map(|mu| Ok((mu.clone(), self.mass(&mu)?))).collect()
    }

    /// Estimated Poisson mass beyond the part cap: with ρ the ratio of the
    /// single-part terms at `cap` and `cap - 1`, n · m_cap · ρ/(1 - ρ).
    pub fn poisson_tail_estimate(&self) -> Result<Option<Rational>> {
        if self.spec.family != DensityFamily::Poisson || self.spec.caps.part_cap == 0 {
            return Ok(None);
        }
        let cap = self.spec.caps.part_cap;
        let single = |k: u32| {
            let mut parts = vec![0; self.spec.n];
            parts[0] = k;
            Partition::new(parts)
        };
        let top = self.mass(&single(cap)?)?.abs();
        let prev = self.mass(&single(cap - 1)?)?.abs();
        let rho = top.checked_div(&prev)?;
        if rho >= Rational::one() {
            return Ok(None);
        }
        Ok(Some(Rational::from(self.spec.n as i64) * &top * &rho.checked_div(&(Rational::one() - rho.clone()))?))
    }
}

/// Seeded draws with their empirical frequencies.
#[derive(Clone, Debug)]
pub struct PartitionSample {
    pub draws: Vec<Partition>,
    pub seed: u64,
    pub empirical_mass: BTreeMap<Partition, Rational>,
}

/// Uniform rationals k / 2^64 from ChaCha8 (rand_chacha) seeded with
/// `seed_from_u64(seed)`.
pub struct RationalStream {
    rng: ChaCha8Rng,
}

impl RationalStream {
    pub fn new(seed: u64) -> Self {
        RationalStream { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Numerator k of the next draw k / 2^64.
    pub fn next_numerator(&mut self) -> u64 {
        self.rng.next_u64()
    }

    pub fn next_rational(&mut self) -> Rational {
        let k = self.next_numerator();
        Rational::from_big(BigInt::from(k), BigInt::from(1u8) << 64).expect("nonzero denominator")
    }
}

/// Inverse-CDF sampling over the enumerated support with exact cumulative
/// masses (normalised by their total, which is 1 for the binomial families).
pub fn sample(spec: &DensitySpec, count: usize, seed: u64) -> Result<PartitionSample> {
    spec.check_positivity()?;
    let density = Density::new(spec.clone())?;
    let masses = density.masses()?;
    if let Some((mu, m)) = masses.iter().find(|(_, m)| m.is_negative()) {
        return Err(Error::UnsupportedRegime(format!("negative mass {m} at {mu:?}")));
    }
    let mut cum = Vec::with_capacity(masses.len());
    let mut acc = Rational::zero();
    for (_, m) in &masses {
        acc = acc + m;
        cum.push(acc.clone());
    }
    let total = acc;
    if !total.is_positive() {
        return Err(Error::UnsupportedRegime("total mass is zero".into()));
    }
    let mut stream = RationalStream::new(seed);
    let mut draws = Vec::with_capacity(count);
    for _ in 0..count {
        let u = stream.next_rational() * &total;
        let idx = cum.partition_point(|c| c <= &u).min(masses.len() - 1);
        draws.push(masses[idx].0.clone());
    }
    let mut counts: BTreeMap<Partition, i64> = BTreeMap::new();
    for d in &draws {
        *counts.entry(d.clone()).or_default() += 1;
    }
    let empirical_mass = counts
        .into_iter()
        .map(|(p, c)| (p, Rational::new(c, count as i64).expect("count > 0")))
        .collect();
    Ok(PartitionSample { draws, seed, empirical_mass })
}
