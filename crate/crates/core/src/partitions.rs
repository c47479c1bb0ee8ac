//! Fixed-length partitions, their statistics, and the poset enumerators.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// A weakly decreasing vector of `n` nonnegative parts (zeros allowed).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

/// A weakly decreasing integer vector that may have negative parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralizedPartition {
    parts: Vec<i64>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(format!("{parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn zero(n: usize) -> Self {
        Partition { parts: vec![0; n] }
    }

    /// The rectangle `k^n`.
    pub fn rectangle(k: u32, n: usize) -> Self {
        Partition { parts: vec![k; n] }
    }

    /// `e_1 = (1, 0, ..., 0)`.
    pub fn e1(n: usize) -> Self {
        let mut parts = vec![0; n];
        if n > 0 {
            parts[0] = 1;
        }
        Partition { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part(&self, i: usize) -> i64 {
        self.parts[i] as i64
    }

    pub fn max_part(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// |λ|
    pub fn weight(&self) -> i64 {
        self.parts.iter().map(|&p| p as i64).sum()
    }

    /// n(λ) = Σ (i-1) λ_i
    pub fn n_lambda(&self) -> i64 {
        self.parts.iter().enumerate().map(|(i, &p)| i as i64 * p as i64).sum()
    }

    /// n(λ') = Σ C(λ_i, 2)
    pub fn n_lambda_prime(&self) -> i64 {
        self.parts.iter().map(|&p| p as i64 * (p as i64 - 1) / 2).sum()
    }

    pub fn stats(&self) -> (i64, i64, i64) {
        (self.weight(), self.n_lambda(), self.n_lambda_prime())
    }

    /// λ + e_i (0-indexed `i`).
    pub fn bump(&self, i: usize) -> Result<Self> {
        if i >= self.parts.len() {
            return Err(Error::NotAPartition(format!("bump index {i} out of range for {self}")));
        }
        let mut parts = self.parts.clone();
        parts[i] += 1;
        Partition::new(parts)
    }

    /// Coordinatewise scaling, e.g. `2λ`.
    pub fn scaled(&self, k: u32) -> Self {
        Partition { parts: self.parts.iter().map(|&p| p * k).collect() }
    }

    /// All μ ⊆ self, optionally with |μ| = `weight`, in reverse-lex order.
    pub fn sub(&self, weight: Option<i64>) -> Vec<Partition> {
        let mut out = Vec::new();
        interval(&Partition::zero(self.len()), self, &mut |p| {
            if weight.is_none_or(|w| p.weight() == w) {
                out.push(p);
            }
        });
        out
    }

    /// All ν with self/ν a horizontal strip, in reverse-lex order.
    pub fn strips(&self) -> Vec<Partition> {
        let n = self.len();
        let lower = Partition {
            parts: (0..n).map(|i| if i + 1 < n { self.parts[i + 1] } else { 0 }).collect(),
        };
        let mut out = Vec::new();
        interval(&lower, self, &mut |p| out.push(p));
        out
    }

    /// All (ν, μ) of partitions with ν + μ = self, ordered by μ.
    pub fn sum_decompositions(&self) -> Vec<(Partition, Partition)> {
        self.sub(None)
            .into_iter()
            .filter_map(|mu| {
                let nu: Vec<u32> = self.parts.iter().zip(&mu.parts).map(|(a, b)| a - b).collect();
                Partition::new(nu).ok().map(|nu| (nu, mu))
            })
            .collect()
    }

    fn check_len(&self, other: &Partition) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(())
    }
}

/// μ ⊆ λ.
pub fn contains(lambda: &Partition, mu: &Partition) -> Result<bool> {
    lambda.check_len(mu)?;
    Ok(mu.parts.iter().zip(&lambda.parts).all(|(m, l)| m <= l))
}

/// λ_1 ≥ μ_1 ≥ λ_2 ≥ μ_2 ≥ … ≥ λ_n ≥ μ_n.
pub fn is_horizontal_strip(lambda: &Partition, mu: &Partition) -> Result<bool> {
    lambda.check_len(mu)?;
    let l = &lambda.parts;
    let m = &mu.parts;
    Ok((0..l.len()).all(|i| l[i] >= m[i] && (i + 1 == l.len() || m[i] >= l[i + 1])))
}

/// All partitions ν with `lo` ⊆ ν ⊆ `hi` (coordinatewise), in reverse-lex order.
pub fn between(lo: &Partition, hi: &Partition) -> Vec<Partition> {
    let mut out = Vec::new();
    interval(lo, hi, &mut |p| out.push(p));
    out
}

fn colex(a: &Partition, b: &Partition) -> std::cmp::Ordering {
    a.parts.iter().rev().cmp(b.parts.iter().rev())
}

/// Visits every ν with lo ⊆ ν ⊆ hi, in reverse-lexicographic order
/// (lexicographic on the reversed part sequence, ascending).
fn interval(lo: &Partition, hi: &Partition, f: &mut impl FnMut(Partition)) {
    let mut all = Vec::new();
    interval_raw(lo, hi, &mut |p| all.push(p));
    all.sort_by(colex);
    all.into_iter().for_each(f);
}

fn interval_raw(lo: &Partition, hi: &Partition, f: &mut impl FnMut(Partition)) {
    fn rec(i: usize, lo: &[u32], hi: &[u32], cur: &mut Vec<u32>, f: &mut impl FnMut(Partition)) {
        if i == hi.len() {
            f(Partition { parts: cur.clone() });
            return;
        }
        let cap = if i == 0 { hi[0] } else { hi[i].min(cur[i - 1]) };
        if cap < lo[i] {
            return;
        }
        for v in (lo[i]..=cap).rev() {
            cur.push(v);
            rec(i + 1, lo, hi, cur, f);
            cur.pop();
        }
    }
    rec(0, &lo.parts, &hi.parts, &mut Vec::with_capacity(hi.len()), f)
}

/// Every partition with `n` parts and first part at most `max_part`.
pub fn all_partitions(n: usize, max_part: u32) -> Vec<Partition> {
    Partition::rectangle(max_part, n).sub(None)
}

impl GeneralizedPartition {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::NotAPartition(format!("{parts:?}")));
        }
        Ok(GeneralizedPartition { parts })
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }

    /// The ordinary partition, or `None` if some part is negative.
    pub fn to_partition(&self) -> Option<Partition> {
        if self.parts.iter().any(|&p| p < 0) {
            return None;
        }
        Some(Partition { parts: self.parts.iter().map(|&p| p as u32).collect() })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-separated parts, e.g. `"3,2,0"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = parse_list::<u32>(s)?;
        Partition::new(parts)
    }
}

impl FromStr for GeneralizedPartition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GeneralizedPartition::new(parse_list::<i64>(s)?)
    }
}

fn parse_list<T: FromStr>(s: &str) -> Result<Vec<T>> {
    if s.trim().is_empty() {
        return Err(Error::Parse("empty partition literal".into()));
    }
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| Error::Parse(format!("invalid partition literal {s:?}"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn stats_examples() {
        assert_eq!(p("0,0").stats(), (0, 0, 0));
        assert_eq!(p("2,1").stats(), (3, 1, 1));
        assert_eq!(p("3,3,1").stats(), (7, 5, 6));
    }

    #[test]
    fn containment_and_strips() {
        assert!(contains(&p("3,1"), &p("2,1")).unwrap());
        assert!("1,2".parse::<Partition>().is_err());
        assert!(!contains(&p("2,2"), &p("3,0")).unwrap());
        assert!(is_horizontal_strip(&p("3,1"), &p("2,1")).unwrap());
        assert!(!is_horizontal_strip(&p("3,3"), &p("2,1")).unwrap());
        assert!(is_horizontal_strip(&p("2,1"), &p("2,1")).unwrap());
        assert_eq!(contains(&p("1"), &p("1,0")), Err(Error::LengthMismatch(1, 2)));
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(p("1,1").sub(None), vec![p("0,0"), p("1,0"), p("1,1")]);
        assert_eq!(p("2,1").sub(Some(2)), vec![p("2,0"), p("1,1")]);
        assert_eq!(p("0,0").sub(None), vec![p("0,0")]);
        assert_eq!(p("1,0").strips(), vec![p("0,0"), p("1,0")]);
        assert_eq!(p("2,2").strips(), vec![p("2,0"), p("2,1"), p("2,2")]);
        assert_eq!(p("0,0,0").strips(), vec![p("0,0,0")]);
    }

    #[test]
    fn decompositions() {
        assert_eq!(p("1,0").sum_decompositions(), vec![(p("1,0"), p("0,0")), (p("0,0"), p("1,0"))]);
        assert_eq!(p("0,0").sum_decompositions(), vec![(p("0,0"), p("0,0"))]);
        let d = p("2,1").sum_decompositions();
        assert_eq!(d.len(), 4); // (0,1) + (2,0) is excluded
        assert!(d.iter().all(|(a, b)| a.parts().iter().zip(b.parts()).map(|(x, y)| x + y).eq([2, 1])));
    }

    #[test]
    fn bumps() {
        assert_eq!(p("2,1").bump(0).unwrap(), p("3,1"));
        assert_eq!(p("2,1").bump(1).unwrap(), p("2,2"));
        assert!(matches!(p("2,2").bump(1), Err(Error::NotAPartition(_))));
    }

    #[test]
    fn generalized() {
        let g: GeneralizedPartition = "2,0,-1".parse().unwrap();
        assert!(g.to_partition().is_none());
        assert!("0,1".parse::<GeneralizedPartition>().is_err());
    }
}
