use qtspecials::distributions::{exp_big_e, exp_small_e, sample, Caps, Density, DensityFamily, DensitySpec};
use qtspecials::partitions::all_partitions;
use qtspecials::{Context, Error, QtPoint, Rational, Scalar};

fn r(s: &str) -> Rational {
    s.parse().unwrap()
}

fn point(n: usize) -> QtPoint {
    QtPoint::new(r("1/2"), r("1/3"), n, 20).unwrap()
}

#[test]
fn exponentials_truncate_consistently() {
    let caps = Caps { part_cap: 20, trunc: 40 };
    let ctx = Context::at_point(&point(2));
    let z = r("1/10");
    let e = exp_small_e(&ctx, &z, 2, caps).unwrap();
    let big = exp_big_e(&ctx, &-z.clone(), 2, caps).unwrap();
    let tol = Rational::ten_pow_neg(6);
    assert!((e.series.clone() * &big.series - Rational::one()).abs() < tol);
    assert!(e.difference.abs() < tol && big.difference.abs() < tol);
}

#[test]
fn poisson_sums_to_one() {
    let caps = Caps { part_cap: 20, trunc: 40 };
    let d = Density::new(DensitySpec::poisson(2, r("1/20"), point(2), caps)).unwrap();
    let total = d.masses().unwrap().into_iter().fold(Rational::zero(), |a, (_, m)| a + &m);
    assert!((total - Rational::one()).abs() < Rational::ten_pow_neg(6));
    assert!(d.poisson_tail_estimate().unwrap().is_some());
}

#[test]
fn exact_normalisation_and_nonnegativity() {
    let qs = [("1/2", "1/3", "1/5"), ("2/3", "3/4", "1/7"), ("1/5", "9/10", "1/3")];
    for n in 1..=3 {
        let cap = if n == 3 { 3 } else { 4 };
        for (q, t, z) in qs {
            let pt = QtPoint::new(r(q), r(t), n, cap).unwrap();
            let z = r(z);
            if z >= r(t).powi(n as i64 - 1).unwrap() {
                continue;
            }
            for lam in all_partitions(n, cap) {
                for fam in [DensityFamily::BinomialG, DensityFamily::BinomialF] {
                    let d = Density::new(DensitySpec::binomial(fam, lam.clone(), z.clone(), pt.clone())).unwrap();
                    let masses = d.masses().unwrap();
                    assert!(masses.iter().all(|(_, m)| !m.is_negative()), "{fam:?} {lam:?}");
                    let total = masses.into_iter().fold(Rational::zero(), |a, (_, m)| a + &m);
                    assert!(total.is_one(), "{fam:?} {lam:?}");
                }
            }
        }
    }
}

#[test]
fn sampler_within_five_sigma() {
    let spec = DensitySpec::binomial(DensityFamily::BinomialG, "2,1".parse().unwrap(), r("1/5"), point(2));
    let n = 10_000i64;
    let s = sample(&spec, n as usize, 42).unwrap();
    assert_eq!(s.draws, sample(&spec, n as usize, 42).unwrap().draws);
    for (mu, m) in Density::new(spec).unwrap().masses().unwrap() {
        let count = s.draws.iter().filter(|d| **d == mu).count() as i64;
        let dev = Rational::from(count) - Rational::from(n) * &m;
        let var = Rational::from(n) * &m * &(Rational::one() - m.clone());
        assert!(dev.clone() * &dev <= Rational::from(25) * &var, "{mu:?}");
    }
}

#[test]
fn sampler_rejects_outside_positivity() {
    let pt = QtPoint::new(r("3/2"), r("1/3"), 2, 4).unwrap();
    let spec = DensitySpec::binomial(DensityFamily::BinomialG, "2,1".parse().unwrap(), r("1/5"), pt);
    assert!(matches!(sample(&spec, 10, 1), Err(Error::UnsupportedRegime(_))));
    let empty = sample(
        &DensitySpec::binomial(DensityFamily::BinomialG, "1,0".parse().unwrap(), r("1/5"), point(2)),
        0,
        1,
    )
    .unwrap();
    assert!(empty.draws.is_empty());
}
