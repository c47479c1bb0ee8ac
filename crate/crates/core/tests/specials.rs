use qtspecials::partitions::all_partitions;
use qtspecials::specials::{self as sp, alpha_limit, bell, bernoulli, catalan, fibonacci, StirlingKind};
use qtspecials::suite::ScalarSource;
use qtspecials::{Context, Partition, Rational, Scalar};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

#[test]
fn stirling_structure_below_321() {
    let mut src = ScalarSource::new(99);
    let ctx = Context::at_point(&src.qt_point(3, 4).unwrap());
    let bound = p("3,2,1");
    for nu in bound.sub(None) {
        assert!(sp::check_stirling_diagonal(&ctx, &nu).unwrap().iter().all(|c| c.passed));
        for mu in nu.sub(None) {
            assert!(sp::check_stirling_inversion(&ctx, &nu, &mu).unwrap().iter().all(|c| c.passed));
        }
        let x = src.draw();
        assert!(sp::check_change_of_basis_1(&ctx, &nu, &x).unwrap().passed);
        assert!(sp::check_change_of_basis_2(&ctx, &nu, &x).unwrap().passed);
        assert!(sp::check_stirling_expansion(&ctx, &nu, &src.draw(), true).unwrap().passed);
    }
}

#[test]
fn displayed_expansion_holds_in_one_variable() {
    let mut src = ScalarSource::new(5);
    let ctx = Context::at_point(&src.qt_point(1, 6).unwrap());
    for m in 0..=5 {
        let nu = Partition::new(vec![m]).unwrap();
        assert!(sp::check_stirling_expansion(&ctx, &nu, &src.draw(), false).unwrap().passed);
    }
}

#[test]
fn stirling_table_is_lower_unitriangular() {
    let mut src = ScalarSource::new(8);
    let ctx = Context::at_point(&src.qt_point(2, 3).unwrap());
    let table = sp::stirling_table(&ctx, StirlingKind::Second, &p("2,1")).unwrap();
    for ((lam, mu), v) in &table.entries {
        if lam == mu {
            assert!(v.is_one());
        }
    }
    assert_eq!(table.entries.len(), p("2,1").sub(None).iter().map(|l| l.sub(None).len()).sum::<usize>());
}

#[test]
fn classical_limits() {
    let one = |m: u32| Partition::new(vec![m]).unwrap();
    let b: Vec<_> = (1..=4).map(|m| alpha_limit(1, |c| bernoulli(c, &one(m))).unwrap()).collect();
    assert_eq!(b, vec!["-1/2".parse().unwrap(), "1/6".parse().unwrap(), Rational::zero(), "-1/30".parse().unwrap()]);
    let c: Vec<_> = (0..=5).map(|m| alpha_limit(1, |x| catalan(x, &one(m))).unwrap()).collect();
    assert_eq!(c, ints(&[1, 1, 2, 5, 14, 42]));
    let f: Vec<_> = (0..10).map(|m| alpha_limit(1, |x| fibonacci(x, &one(m))).unwrap()).collect();
    assert_eq!(f, ints(&[1, 1, 2, 3, 5, 8, 13, 21, 34, 55]));
    let be: Vec<_> = (0..=5).map(|m| alpha_limit(1, |x| bell(x, &one(m))).unwrap()).collect();
    assert_eq!(be, ints(&[1, 1, 2, 5, 15, 52]));
}

#[test]
fn bernoulli_recurrence_up_to_weight_five() {
    let mut src = ScalarSource::new(6);
    for _ in 0..3 {
        let ctx = Context::at_point(&src.qt_point(2, 6).unwrap());
        for n in 1..=2 {
            for lam in all_partitions(n, 5).into_iter().filter(|l| (1..=5).contains(&l.weight())) {
                assert!(sp::check_bernoulli_recurrence(&ctx, &lam).unwrap().passed, "{lam:?}");
            }
        }
    }
}

#[test]
fn catalan_closed_forms_in_formal_mode() {
    let ctx = Context::formal_q(&"2/7".parse().unwrap()).unwrap();
    for n in 1..=3 {
        for k in 1..=2 {
            assert!(sp::check_catalan_closed_forms(&ctx, k, n).unwrap().iter().all(|c| c.passed));
        }
    }
}
