use qtspecials::binomial::qt_binomial;
use qtspecials::identities::{check_geometric, DensityKind};
use qtspecials::suite::{run_suite, Groups, SuiteConfig};
use qtspecials::{Context, Error, Partition, QtPoint, RatFuncQ, Rational, Scalar};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn assert_suite(bound: &str, points: usize, seed: u64, groups: Groups) {
    let rep = run_suite(&SuiteConfig { bound: p(bound), points, seed, groups }).unwrap();
    assert!(!rep.records.is_empty());
    let bad: Vec<_> = rep.failures().collect();
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn exact_identities_one_and_two_parts() {
    let g = Groups { identities: true, ..Groups::NONE };
    assert_suite("4", 5, 1, g);
    assert_suite("3,3", 2, 2, g);
}

#[test]
fn exact_identities_three_parts() {
    assert_suite("2,2,1", 1, 3, Groups { identities: true, ..Groups::NONE });
}

#[test]
fn closed_forms_agree_with_recurrences() {
    let g = Groups { closed_forms: true, ..Groups::NONE };
    assert_suite("4,4", 2, 4, g);
    assert_suite("3,3,3", 1, 5, g);
}

#[test]
fn gaussian_reduction_is_t_independent() {
    let a = Context::formal_q(&"1/3".parse().unwrap()).unwrap();
    let b = Context::formal_q(&"9/4".parse().unwrap()).unwrap();
    for m in 0..=8u32 {
        let mut row = Vec::new();
        for k in 0..=m {
            let (lm, lk) = (Partition::new(vec![m]).unwrap(), Partition::new(vec![k]).unwrap());
            let x: RatFuncQ = qt_binomial(&a, &lm, &lk).unwrap();
            assert_eq!(x, qt_binomial(&b, &lm, &lk).unwrap());
            row.push(x.limit_at_one().unwrap());
        }
        // q → 1 recovers Pascal's triangle.
        let expect: Vec<Rational> = (0..=m as i64)
            .scan(Rational::one(), |c, k| {
                let v = c.clone();
                *c = c.clone() * &Rational::new(m as i64 - k, k + 1).unwrap();
                Some(v)
            })
            .collect();
        assert_eq!(row, expect);
    }
}

#[test]
fn geometric_identity_and_convergence() {
    let ctx = Context::at_point(&QtPoint::new("1/2".parse().unwrap(), "1/3".parse().unwrap(), 1, 25).unwrap());
    let tol = Rational::ten_pow_neg(8);
    let c = check_geometric(&ctx, &p("1"), &"1/10".parse().unwrap(), 25, 40, &tol).unwrap();
    assert!(c.passed, "{:?}", c.residual);
    // Residual shrinks as the cap grows.
    let r10 = check_geometric(&ctx, &p("1"), &"1/10".parse().unwrap(), 10, 40, &tol).unwrap().residual.abs();
    assert!(c.residual.abs() < r10);
    let err = check_geometric(&ctx, &p("1"), &"3".parse().unwrap(), 25, 40, &tol).unwrap_err();
    assert!(matches!(err, Error::ConvergenceViolated(_)));
}

#[test]
fn density_kind_names() {
    let ctx = Context::at_point(&QtPoint::new("1/2".parse().unwrap(), "1/3".parse().unwrap(), 2, 4).unwrap());
    let z: Rational = "1/5".parse().unwrap();
    for (k, name) in [(DensityKind::G, "density_normalization_g"), (DensityKind::F, "density_normalization_f")] {
        let c = qtspecials::identities::check_density_normalization(&ctx, &p("2,1"), &z, k).unwrap();
        assert_eq!(c.name, name);
        assert_eq!(c.lhs, Rational::one());
    }
}
