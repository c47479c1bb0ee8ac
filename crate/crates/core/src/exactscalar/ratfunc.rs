use super::{Rational, Scalar, UniPoly};
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Quotient of two polynomials in a formal variable q with coefficients in
/// `K`.  Not kept in lowest terms: only the common power of q is removed and
/// the denominator made monic after each operation.  `limit_at_one` cancels
/// the factors of (q - 1) it needs, and [`RatFunc::reduce`] applies a full
/// GCD on request.
#[derive(Clone)]
pub struct RatFunc<K> {
    num: UniPoly<K>,
    den: UniPoly<K>,
}

impl<K: Scalar> RatFunc<K> {
    pub fn new(num: UniPoly<K>, den: UniPoly<K>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::tidy(num, den))
    }

    /// The formal variable q.
    pub fn var() -> Self {
        Self::from_poly(UniPoly::monomial(K::one(), 1))
    }

    pub fn from_poly(p: UniPoly<K>) -> Self {
        RatFunc { num: p, den: UniPoly::constant(K::one()) }
    }

    pub fn constant(c: K) -> Self {
        Self::from_poly(UniPoly::constant(c))
    }

    pub fn num(&self) -> &UniPoly<K> {
        &self.num
    }

    pub fn den(&self) -> &UniPoly<K> {
        &self.den
    }

    fn tidy(num: UniPoly<K>, den: UniPoly<K>) -> Self {
        if num.is_zero() {
            return RatFunc { num, den: UniPoly::constant(K::one()) };
        }
        let v = num.valuation().min(den.valuation());
        let (num, den) = if v > 0 { (num.shift_down(v), den.shift_down(v)) } else { (num, den) };
        match den.leading().and_then(|l| l.inv().ok()) {
            Some(li) if !li.is_one() => RatFunc { num: num.scale(&li), den: den.scale(&li) },
            _ => RatFunc { num, den },
        }
    }

    /// Value at `x`; `DivisionByZero` if the stored denominator vanishes there.
    pub fn eval(&self, x: &K) -> Result<K> {
        self.num.eval(x).div(&self.den.eval(x))
    }

    /// lim_{q -> 1}, by dividing numerator and denominator by (q - 1) while
    /// both vanish at 1.
    pub fn limit_at_one(&self) -> Result<K> {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        loop {
            if num.is_zero() {
                return Ok(K::zero());
            }
            let d1 = den.eval_one();
            if !d1.is_zero() {
                return num.eval_one().div(&d1);
            }
            let (nq, nr) = num.div_q_minus_one();
            if !nr.is_zero() {
                return Err(Error::PoleAtOne);
            }
            let (dq, _) = den.div_q_minus_one();
            num = nq;
            den = dq;
        }
    }

    /// Divides out the full polynomial GCD of numerator and denominator.
    pub fn reduce(&self) -> Result<Self> {
        let g = self.num.gcd(&self.den)?;
        if g.degree().unwrap_or(0) == 0 {
            return Ok(self.clone());
        }
        let (n, _) = self.num.div_rem(&g)?;
        let (d, _) = self.den.div_rem(&g)?;
        Self::new(n, d)
    }

    /// Degree of the denominator (a rough size measure).
    pub fn size(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }
}

impl RatFunc<Rational> {
    /// The formal variable raised to an integer power.
    pub fn var_pow(k: i64) -> Self {
        let m = UniPoly::monomial(Rational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            RatFunc { num: UniPoly::constant(Rational::one()), den: m }
        }
    }
}

impl<K: Scalar> PartialEq for RatFunc<K> {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl<K: Scalar> fmt::Debug for RatFunc<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] / [{:?}]", self.num, self.den)
    }
}

impl<K: Scalar> Add<&RatFunc<K>> for RatFunc<K> {
    type Output = Self;
    fn add(self, o: &Self) -> Self {
        if self.num.is_zero() {
            return o.clone();
        }
        if o.num.is_zero() {
            return self;
        }
        if self.den == o.den {
            return RatFunc::tidy(&self.num + &o.num, self.den);
        }
        let num = &(&self.num * &o.den) + &(&o.num * &self.den);
        RatFunc::tidy(num, &self.den * &o.den)
    }
}

impl<K: Scalar> Add for RatFunc<K> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self + &o
    }
}

impl<K: Scalar> Neg for RatFunc<K> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc { num: -self.num, den: self.den }
    }
}

impl<K: Scalar> Sub<&RatFunc<K>> for RatFunc<K> {
    type Output = Self;
    fn sub(self, o: &Self) -> Self {
        self + &(-o.clone())
    }
}

impl<K: Scalar> Sub for RatFunc<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + &(-o)
    }
}

impl<K: Scalar> Mul<&RatFunc<K>> for RatFunc<K> {
    type Output = Self;
    fn mul(self, o: &Self) -> Self {
        if self.num.is_zero() || o.num.is_zero() {
            return Self::zero();
        }
        RatFunc::tidy(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<K: Scalar> Mul for RatFunc<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self * &o
    }
}

impl<K: Scalar> Scalar for RatFunc<K> {
    fn zero() -> Self {
        Self::from_poly(UniPoly::zero())
    }
    fn one() -> Self {
        Self::constant(K::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(K::from_rational(r))
    }
    fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::tidy(self.den.clone(), self.num.clone()))
    }
    fn key(&self) -> String {
        format!("{self:?}")
    }
    fn simplify(&self) -> Self {
        self.reduce().unwrap_or_else(|_| self.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactscalar::RatFuncQ;

    fn r(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn one_minus_qk(k: i64) -> RatFuncQ {
        RatFuncQ::one() - RatFuncQ::var_pow(k)
    }

    #[test]
    fn cancellation_and_identity() {
        let f = one_minus_qk(1) * one_minus_qk(1).inv().unwrap();
        assert_eq!(f, RatFuncQ::one());
        let g = RatFuncQ::var() + RatFuncQ::zero();
        assert_eq!(g, RatFuncQ::var());
    }

    #[test]
    fn evaluation_example() {
        let f = one_minus_qk(2).div(&one_minus_qk(1)).unwrap();
        assert_eq!(f.eval(&r("3")).unwrap(), r("4"));
    }

    #[test]
    fn limits() {
        let f = one_minus_qk(2).div(&one_minus_qk(1)).unwrap();
        assert_eq!(f.limit_at_one().unwrap(), r("2"));
        let g = (one_minus_qk(3) * one_minus_qk(1)).div(&(one_minus_qk(1) * one_minus_qk(2))).unwrap();
        assert_eq!(g.limit_at_one().unwrap(), r("3/2"));
        for a in 1..=50 {
            let h = one_minus_qk(a).div(&one_minus_qk(1)).unwrap();
            assert_eq!(h.limit_at_one().unwrap(), Rational::from(a));
        }
    }

    #[test]
    fn pole_at_one() {
        let f = RatFuncQ::one().div(&one_minus_qk(1)).unwrap();
        assert_eq!(f.limit_at_one(), Err(Error::PoleAtOne));
    }

    #[test]
    fn negative_powers_and_reduce() {
        let f = RatFuncQ::var_pow(-2) * RatFuncQ::var_pow(3);
        assert_eq!(f, RatFuncQ::var());
        let g = (one_minus_qk(2) * one_minus_qk(3)).div(&(one_minus_qk(1) * one_minus_qk(2))).unwrap();
        let red = g.reduce().unwrap();
        assert_eq!(red.den().degree(), Some(0));
        assert_eq!(red, g);
    }
}
