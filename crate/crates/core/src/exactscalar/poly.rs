use super::Scalar;
use crate::error::{Error, Result};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate polynomial; `coeffs[k]` multiplies `q^k`.  Trailing
/// zero coefficients are always trimmed, so the zero polynomial is empty.
#[derive(Clone, PartialEq)]
pub struct UniPoly<K> {
    coeffs: Vec<K>,
}

impl<K: Scalar> UniPoly<K> {
    pub fn new(mut coeffs: Vec<K>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: K) -> Self {
        Self::new(vec![c])
    }

    /// `c * q^k`.
    pub fn monomial(c: K, k: usize) -> Self {
        let mut coeffs = vec![K::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[K] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&K> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &K) -> K {
        let mut acc = K::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sum of coefficients, i.e. the value at 1.
    pub fn eval_one(&self) -> K {
        self.coeffs.iter().fold(K::zero(), |acc, c| acc + c)
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    /// Number of leading zero coefficients (the power of q dividing self).
    pub fn valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec())
    }

    /// Synthetic division by `(q - 1)`: returns `(quotient, remainder)` with
    /// `self = (q - 1) * quotient + remainder`.
    pub fn div_q_minus_one(&self) -> (Self, K) {
        if self.coeffs.is_empty() {
            return (Self::zero(), K::zero());
        }
        let d = self.coeffs.len() - 1;
        let mut quot = vec![K::zero(); d];
        let mut carry = K::zero();
        for k in (0..=d).rev() {
            let v = carry + &self.coeffs[k];
            if k == 0 {
                return (Self::new(quot), v);
            }
            quot[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Euclidean division; `DivisionByZero` when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![K::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = rem[k].clone() * &lead_inv;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = rem[idx].clone() - c.clone() * dc;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn monic(&self) -> Result<Self> {
        match self.leading() {
            None => Ok(Self::zero()),
            Some(l) => Ok(self.scale(&l.inv()?)),
        }
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic()?;
        }
        a.monic()
    }
}

impl<K: Scalar> Add for UniPoly<K> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        &self + &o
    }
}

impl<K: Scalar> Add for &UniPoly<K> {
    type Output = UniPoly<K>;
    fn add(self, o: Self) -> UniPoly<K> {
        let (long, short) = if self.coeffs.len() >= o.coeffs.len() { (self, o) } else { (o, self) };
        let mut c = long.coeffs.clone();
        for (i, v) in short.coeffs.iter().enumerate() {
            c[i] = c[i].clone() + v;
        }
        UniPoly::new(c)
    }
}

impl<K: Scalar> Sub for &UniPoly<K> {
    type Output = UniPoly<K>;
    fn sub(self, o: Self) -> UniPoly<K> {
        self + &(-o.clone())
    }
}

impl<K: Scalar> Sub for UniPoly<K> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        &self - &o
    }
}

impl<K: Scalar> Neg for UniPoly<K> {
    type Output = Self;
    fn neg(self) -> Self {
        UniPoly { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl<K: Scalar> Mul for &UniPoly<K> {
    type Output = UniPoly<K>;
    fn mul(self, o: Self) -> UniPoly<K> {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut c = vec![K::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                c[i + j] = c[i + j].clone() + a.clone() * b;
            }
        }
        UniPoly::new(c)
    }
}

impl<K: Scalar> Mul for UniPoly<K> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        &self * &o
    }
}

impl<K: Scalar> fmt::Debug for UniPoly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| format!("({c:?})q^{k}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactscalar::Rational;

    fn p(v: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(v.iter().map(|&x| Rational::from(x)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[]).degree(), None);
    }

    #[test]
    fn synthetic_division_by_q_minus_one() {
        // 1 - q^3 = (q - 1)(-1 - q - q^2)
        let (quot, rem) = p(&[1, 0, 0, -1]).div_q_minus_one();
        assert_eq!(quot, p(&[-1, -1, -1]));
        assert!(rem.is_zero());
        let (_, rem) = p(&[2, 1]).div_q_minus_one();
        assert_eq!(rem, Rational::from(3));
    }

    #[test]
    fn div_rem_and_gcd() {
        let a = &p(&[-1, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 1]) * &p(&[5, 0, 1]);
        let g = a.gcd(&b).unwrap();
        assert_eq!(g, p(&[-1, 1]));
        let (qq, r) = b.div_rem(&g).unwrap();
        assert!(r.is_zero());
        assert_eq!(qq, p(&[5, 0, 1]));
        assert!(a.div_rem(&UniPoly::zero()).is_err());
    }
}
