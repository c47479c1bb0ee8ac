//! Pochhammer symbols and the W^ab / W^s↑ / W^s↓ families.
//!
//! Everything here is generic over [`Scalar`], so one implementation serves
//! exact rational points and the formal-q limit modes.

use crate::error::{Error, Result};
use crate::exactscalar::{RatFuncQ, Rational, Scalar};
use crate::partitions::{is_horizontal_strip, Partition};
use std::collections::HashMap;
use std::sync::Mutex;

/// A validated pair of rational parameters (q, t).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QtPoint {
    q: Rational,
    t: Rational,
}

impl QtPoint {
    /// Validates against the working range: `n` parts, parts at most `pmax`.
    /// Rejects q ∈ {0, 1}, t = 0, and any q^a t^b = 1 with
    /// |a| ≤ 2·pmax + 2, |b| ≤ 2n, (a, b) ≠ (0, 0).
    pub fn new(q: Rational, t: Rational, n: usize, pmax: u32) -> Result<Self> {
        if q.is_zero() || q.is_one() {
            return Err(Error::DegenerateParameters(format!("q = {q}")));
        }
        if t.is_zero() {
            return Err(Error::DegenerateParameters("t = 0".into()));
        }
        let amax = 2 * pmax as i64 + 2;
        let bmax = 2 * n as i64;
        let qp: Vec<Rational> = (-amax..=amax).map(|a| q.powi(a).expect("q nonzero")).collect();
        for b in -bmax..=bmax {
            let tb = t.powi(b).expect("t nonzero");
            for (ai, qa) in qp.iter().enumerate() {
                let a = ai as i64 - amax;
                if (a, b) != (0, 0) && (qa.clone() * &tb).is_one() {
                    return Err(Error::DegenerateParameters(format!(
                        "q^{a} t^{b} = 1 at q = {q}, t = {t}"
                    )));
                }
            }
        }
        Ok(QtPoint { q, t })
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }
}

/// How scalars are represented.  `FormalQ` and `Alpha` compute rational
/// functions of a formal q, with t fixed to `t0` or to `q^α` respectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarMode {
    AtPoint(QtPoint),
    FormalQ(Rational),
    Alpha(u32),
}

/// The three limiting W families.
#[derive(Clone, Debug)]
pub enum WKind<S> {
    Ab(S),
    SUp,
    SDown,
}

impl<S: Scalar> WKind<S> {
    fn tag(&self) -> String {
        match self {
            WKind::Ab(s) => format!("ab[{}]", s.key()),
            WKind::SUp => "up".into(),
            WKind::SDown => "down".into(),
        }
    }
}

/// Parameters (q, t) in scalar type `S`, plus memo tables.
///
/// The memo tables sit behind mutexes, so a context can be shared across
/// threads; concurrent calls return identical values.
pub struct Context<S> {
    q: S,
    t: S,
    monomials: Mutex<HashMap<(i64, i64), S>>,
    memo: Mutex<HashMap<String, S>>,
}

impl<S: Scalar> Context<S> {
    pub fn new(q: S, t: S) -> Self {
        Context { q, t, monomials: Mutex::new(HashMap::new()), memo: Mutex::new(HashMap::new()) }
    }

    pub fn q(&self) -> &S {
        &self.q
    }

    pub fn t(&self) -> &S {
        &self.t
    }

    /// q^a t^b.
    pub fn mono(&self, a: i64, b: i64) -> Result<S> {
        if let Some(v) = self.monomials.lock().unwrap().get(&(a, b)) {
            return Ok(v.clone());
        }
        let v = self.q.powi(a)? * &self.t.powi(b)?;
        self.monomials.lock().unwrap().insert((a, b), v.clone());
        Ok(v)
    }

    /// Looks `key` up in the memo table, computing and storing on a miss.
    /// The lock is not held while `f` runs, so `f` may recurse.
    pub fn memo(&self, key: String, f: impl FnOnce() -> Result<S>) -> Result<S> {
        if let Some(v) = self.memo.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        let v = f()?;
        self.memo.lock().unwrap().insert(key, v.clone());
        Ok(v)
    }

    /// (a; q)_m for integer m; negative m by (a; q)_{-k} = 1/(a q^{-k}; q)_k.
    pub fn poch(&self, a: &S, m: i64) -> Result<S> {
        let mut r = S::one();
        if m >= 0 {
            for k in 0..m {
                r = r * &(S::one() - a.clone() * &self.mono(k, 0)?);
            }
            Ok(r)
        } else {
            for k in 1..=-m {
                r = r * &(S::one() - a.clone() * &self.mono(-k, 0)?);
            }
            r.inv()
        }
    }

    /// (a; q, t)_λ = Π_i (a t^{1-i}; q)_{λ_i}.
    pub fn poch_partition(&self, a: &S, lambda: &Partition) -> Result<S> {
        let mut r = S::one();
        for i in 0..lambda.len() {
            r = r * &self.poch(&(a.clone() * &self.mono(0, -(i as i64))?), lambda.part(i))?;
        }
        Ok(r)
    }

    /// (a)_λ / (a)_μ computed factor by factor, which stays finite at
    /// principal points where both symbols vanish.
    pub fn poch_ratio(&self, a: &S, lambda: &Partition, mu: &Partition) -> Result<S> {
        let mut r = S::one();
        for i in 0..lambda.len() {
            let ai = a.clone() * &self.mono(mu.part(i), -(i as i64))?;
            r = r * &self.poch(&ai, lambda.part(i) - mu.part(i))?;
        }
        Ok(r)
    }

    /// The staircase point (q^{λ_1} t^{n-1}, …, q^{λ_n}).
    pub fn principal(&self, lambda: &Partition) -> Result<Vec<S>> {
        let n = lambda.len() as i64;
        (0..lambda.len()).map(|i| self.mono(lambda.part(i), n - 1 - i as i64)).collect()
    }

    /// Π_{i<j} (q t^{j-i})_{μi-μj} / (q t^{j-i-1})_{μi-μj}
    pub fn fq(&self, mu: &Partition) -> Result<S> {
        self.pair_product(mu, |d| Ok((self.mono(1, d)?, self.mono(1, d - 1)?)))
    }

    /// Π_{i<j} (t^{j-i+1})_{μi-μj} / (t^{j-i})_{μi-μj}
    pub fn ft(&self, mu: &Partition) -> Result<S> {
        self.pair_product(mu, |d| Ok((self.mono(0, d + 1)?, self.mono(0, d)?)))
    }

    fn pair_product(&self, mu: &Partition, args: impl Fn(i64) -> Result<(S, S)>) -> Result<S> {
        let mut r = S::one();
        for i in 0..mu.len() {
            for j in i + 1..mu.len() {
                let (a, b) = args((j - i) as i64)?;
                let m = mu.part(i) - mu.part(j);
                r = r * &degen(self.poch(&a, m)?.div(&self.poch(&b, m)?), "pair product")?;
            }
        }
        Ok(r)
    }
}

impl Context<Rational> {
    pub fn at_point(p: &QtPoint) -> Self {
        Context::new(p.q.clone(), p.t.clone())
    }
}

impl Context<RatFuncQ> {
    /// Formal q with t fixed to `t0`; t0 ∉ {0, 1, -1} so that no factor
    /// (1 - t0^b) with b ≠ 0 vanishes at q = 1.
    pub fn formal_q(t0: &Rational) -> Result<Self> {
        if t0.is_zero() || t0.is_one() || (-t0.clone()).is_one() {
            return Err(Error::DegenerateParameters(format!("t0 = {t0}")));
        }
        Ok(Context::new(RatFuncQ::var(), RatFuncQ::constant(t0.clone())))
    }

    /// Formal q with t = q^α.
    pub fn alpha(alpha: u32) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::DegenerateParameters("alpha must be a positive integer".into()));
        }
        Ok(Context::new(RatFuncQ::var(), RatFuncQ::var_pow(alpha as i64)))
    }
}

pub(crate) fn degen<T>(r: Result<T>, what: &str) -> Result<T> {
    r.map_err(|e| match e {
        Error::DivisionByZero => Error::DegenerateParameters(format!("vanishing denominator in {what}")),
        e => e,
    })
}

/// H_{λ/μ}(q, t), the b → 0 limit of the elliptic H factor.
pub fn h_factor<S: Scalar>(ctx: &Context<S>, lambda: &Partition, mu: &Partition) -> Result<S> {
    if !is_horizontal_strip(lambda, mu)? {
        return Err(Error::NotAStrip(format!("{lambda:?}/{mu:?}")));
    }
    let mut r = S::one();
    let n = lambda.len();
    for i in 0..n {
        for j in i + 1..n {
            let m_prev = mu.part(j - 1);
            let d = m_prev - lambda.part(j);
            if d == 0 {
                continue;
            }
            let ji = (j - i) as i64;
            let a1 = ctx.mono(mu.part(i) - m_prev, ji)?;
            let b1 = ctx.mono(mu.part(i) - m_prev + 1, ji - 1)?;
            let a2 = ctx.mono(lambda.part(i) - m_prev + 1, ji - 1)?;
            let b2 = ctx.mono(lambda.part(i) - m_prev, ji)?;
            let num = ctx.poch(&a1, d)? * &ctx.poch(&a2, d)?;
            let den = ctx.poch(&b1, d)? * &ctx.poch(&b2, d)?;
            r = r * &degen(num.div(&den), "H factor")?;
        }
    }
    Ok(r)
}

/// Single-variable skew W_{λ/μ}(x); zero unless λ/μ is a horizontal strip.
pub fn w_skew<S: Scalar>(
    ctx: &Context<S>,
    kind: &WKind<S>,
    lambda: &Partition,
    mu: &Partition,
    x: &S,
) -> Result<S> {
    if !is_horizontal_strip(lambda, mu)? {
        return Ok(S::zero());
    }
    let xinv = degen(x.inv(), "W argument")?;
    let core = h_factor(ctx, lambda, mu)? * &ctx.poch_ratio(&xinv, lambda, mu)?;
    if core.is_zero() {
        return Ok(core);
    }
    let tpow = -lambda.n_lambda() + mu.weight() + mu.n_lambda();
    match kind {
        WKind::Ab(s) => {
            let qs_x = ctx.q().clone() * s * &xinv;
            let num = ctx.poch_partition(&(qs_x.clone() * &ctx.t().inv()?), mu)?;
            let den = ctx.poch_partition(&qs_x, lambda)?;
            Ok(core * &ctx.mono(0, tpow)? * &degen(num.div(&den), "W^ab")?)
        }
        WKind::SUp => {
            let base = -(ctx.q().clone() * &xinv);
            let e = -lambda.weight() + mu.weight();
            Ok(core * &base.powi(e)? * &ctx.mono(-lambda.n_lambda_prime() + mu.n_lambda_prime(), 0)?)
        }
        WKind::SDown => Ok(core * &ctx.mono(0, tpow)?),
    }
}

/// Multivariable skew W_{λ/μ}(z_1, …, z_ℓ) by peeling off z_1:
/// W_{λ/μ}(z) = Σ_{μ ⊆ ν ≺ λ} W_{λ/ν}(z_1 t^{1-ℓ}) · W_{ν/μ}(z_2, …, z_ℓ)
/// with s → s t^{1-ℓ} for W^ab and an extra t^{(ℓ-1)(|λ|-|ν|)} for W^s↑.
pub fn w_multi<S: Scalar>(
    ctx: &Context<S>,
    kind: &WKind<S>,
    lambda: &Partition,
    mu: &Partition,
    z: &[S],
) -> Result<S> {
    if z.is_empty() {
        return Err(Error::DegenerateParameters("w_multi needs at least one variable".into()));
    }
    if lambda.len() != mu.len() {
        return Err(Error::LengthMismatch(lambda.len(), mu.len()));
    }
    let mut memo = HashMap::new();
    w_multi_rec(ctx, kind, lambda, mu, z, &mut memo)
}

fn w_multi_rec<S: Scalar>(
    ctx: &Context<S>,
    kind: &WKind<S>,
    lambda: &Partition,
    mu: &Partition,
    z: &[S],
    memo: &mut HashMap<(Partition, usize), S>,
) -> Result<S> {
    if z.len() == 1 {
        return w_skew(ctx, kind, lambda, mu, &z[0]);
    }
    if let Some(v) = memo.get(&(lambda.clone(), z.len())) {
        return Ok(v.clone());
    }
    let l = (z.len() - 1) as i64;
    let shift = ctx.mono(0, -l)?;
    let x = z[0].clone() * &shift;
    let peeled = match kind {
        WKind::Ab(s) => WKind::Ab(s.clone() * &shift),
        k => k.clone(),
    };
    let mut total = S::zero();
    for nu in lambda.strips() {
        if !crate::partitions::contains(&nu, mu)? {
            continue;
        }
        let rest = w_multi_rec(ctx, kind, &nu, mu, &z[1..], memo)?;
        if rest.is_zero() {
            continue;
        }
        let mut head = w_skew(ctx, &peeled, lambda, &nu, &x)?;
        if let WKind::SUp = kind {
            head = head * &ctx.mono(0, l * (lambda.weight() - nu.weight()))?;
        }
        total = total + &(head * &rest);
    }
    memo.insert((lambda.clone(), z.len()), total.clone());
    Ok(total)
}

/// W_μ(q^λ t^δ): all-variable W at the principal point of λ, memoised in
/// the context.
pub fn w_principal<S: Scalar>(ctx: &Context<S>, kind: &WKind<S>, mu: &Partition, lambda: &Partition) -> Result<S> {
    if lambda.len() != mu.len() {
        return Err(Error::LengthMismatch(lambda.len(), mu.len()));
    }
    let key = format!("w|{}|{mu}|{lambda}", kind.tag());
    ctx.memo(key, || {
        let z = ctx.principal(lambda)?;
        w_multi(ctx, kind, mu, &Partition::zero(mu.len()), &z)
    })
}

/// Closed form of W_{k^n}(z) for each family.
pub fn w_rectangular<S: Scalar>(ctx: &Context<S>, kind: &WKind<S>, k: u32, z: &[S]) -> Result<S> {
    let k = k as i64;
    let mut r = S::one();
    for zi in z {
        let zinv = degen(zi.inv(), "W argument")?;
        let f = match kind {
            WKind::SUp => ctx.poch(&(ctx.mono(1 - k, 0)? * zi), k)?,
            WKind::SDown => ctx.poch(&zinv, k)?,
            WKind::Ab(s) => {
                let den = ctx.poch(&(ctx.q().clone() * s * &zinv), k)?;
                degen(ctx.poch(&zinv, k)?.div(&den), "W^ab rectangle")?
            }
        };
        r = r * &f;
    }
    if let WKind::SUp = kind {
        r = r * &ctx.mono(-(z.len() as i64) * k, 0)?;
    }
    Ok(r)
}

/// Π_{i<j} (q t^{j-i-1})_{λi-λj} / (q t^{j-i})_{λi-λj}, the inverse of `fq`.
fn fq_inv<S: Scalar>(ctx: &Context<S>, lambda: &Partition) -> Result<S> {
    degen(ctx.fq(lambda)?.inv(), "normalisation")
}

/// Closed form of W^s↑_λ(q^λ t^δ).
pub fn wsup_self<S: Scalar>(ctx: &Context<S>, lambda: &Partition) -> Result<S> {
    let n = lambda.len() as i64;
    let a = ctx.mono(1, n - 1)?;
    Ok(ctx.poch_partition(&a, lambda)?
        * &ctx.mono(-lambda.weight(), (n - 1) * lambda.weight() - 2 * lambda.n_lambda())?
        * &fq_inv(ctx, lambda)?)
}

/// Closed form of W^s↓_λ(q^λ t^δ).
pub fn wsdown_self<S: Scalar>(ctx: &Context<S>, lambda: &Partition) -> Result<S> {
    let n = lambda.len() as i64;
    let a = ctx.mono(1, n - 1)?;
    let sign = if lambda.weight() % 2 == 0 { S::one() } else { -S::one() };
    Ok(sign
        * &ctx.poch_partition(&a, lambda)?
        * &ctx.mono(-lambda.weight() - lambda.n_lambda_prime(), -lambda.n_lambda())?
        * &fq_inv(ctx, lambda)?)
}

/// W^ab_μ(x t^δ; q, t, s) in closed form (Weyl specialisation).
pub fn wab_weyl<S: Scalar>(ctx: &Context<S>, mu: &Partition, x: &S, s: &S) -> Result<S> {
    let xinv = degen(x.inv(), "W argument")?;
    let num = ctx.poch_partition(&xinv, mu)?;
    let den = ctx.poch_partition(&(ctx.q().clone() * s * &xinv), mu)?;
    Ok(degen(num.div(&den), "W^ab Weyl")? * &ctx.ft(mu)?)
}

/// W^s↑_μ(x t^δ; q, t) in closed form (Weyl specialisation).
pub fn wsup_weyl<S: Scalar>(ctx: &Context<S>, mu: &Partition, x: &S) -> Result<S> {
    let xinv = degen(x.inv(), "W argument")?;
    let w = mu.weight();
    let sign = if w % 2 == 0 { S::one() } else { -S::one() };
    Ok(sign
        * &x.powi(w)?
        * &ctx.mono(-w - mu.n_lambda_prime(), mu.n_lambda())?
        * &ctx.poch_partition(&xinv, mu)?
        * &ctx.ft(mu)?)
}

/// The staircase point x t^δ = (x t^{n-1}, …, x).
pub fn weyl_point<S: Scalar>(ctx: &Context<S>, x: &S, n: usize) -> Result<Vec<S>> {
    (0..n).map(|i| Ok(x.clone() * &ctx.mono(0, (n - 1 - i) as i64)?)).collect()
}
