use proptest::prelude::*;
use qtspecials::partitions::{all_partitions, contains, is_horizontal_strip};
use qtspecials::{Partition, RatFuncQ, Rational, UniPoly};

fn partition(n: usize, cap: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(0..=cap, n).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn poly() -> impl Strategy<Value = UniPoly<Rational>> {
    prop::collection::vec(-20i64..=20, 0..5).prop_map(|c| UniPoly::new(c.into_iter().map(Rational::from).collect()))
}

fn ratfunc() -> impl Strategy<Value = RatFuncQ> {
    (poly(), poly()).prop_filter_map("zero denominator", |(a, b)| RatFuncQ::new(a, b).ok())
}

proptest! {
    #[test]
    fn evaluation_is_a_ring_homomorphism(f in ratfunc(), g in ratfunc(), a in 1i64..50, b in 1i64..50) {
        let x = Rational::new(a, b).unwrap();
        if let (Ok(fx), Ok(gx)) = (f.eval(&x), g.eval(&x)) {
            prop_assert_eq!((f.clone() + &g).eval(&x).unwrap(), fx.clone() + &gx);
            prop_assert_eq!((f.clone() - &g).eval(&x).unwrap(), fx.clone() - &gx);
            prop_assert_eq!((f.clone() * &g).eval(&x).unwrap(), fx * &gx);
        }
    }

    #[test]
    fn reduce_preserves_value(f in ratfunc()) {
        prop_assert_eq!(f.reduce().unwrap(), f);
    }

    #[test]
    fn sub_counts_match_filtering(lam in partition(3, 4)) {
        let subs = lam.sub(None);
        let brute = all_partitions(3, 4).into_iter().filter(|m| contains(&lam, m).unwrap()).count();
        prop_assert_eq!(subs.len(), brute);
        let by_weight: usize = (0..=lam.weight()).map(|k| lam.sub(Some(k)).len()).sum();
        prop_assert_eq!(by_weight, brute);
    }

    #[test]
    fn strips_are_contained(lam in partition(3, 5)) {
        for nu in lam.strips() {
            prop_assert!(is_horizontal_strip(&lam, &nu).unwrap());
            prop_assert!(contains(&lam, &nu).unwrap());
        }
    }

    #[test]
    fn decompositions_sum_back(lam in partition(3, 4)) {
        for (nu, mu) in lam.sum_decompositions() {
            let s: Vec<u32> = nu.parts().iter().zip(mu.parts()).map(|(a, b)| a + b).collect();
            prop_assert_eq!(s.as_slice(), lam.parts());
        }
    }

    #[test]
    fn literal_round_trip(lam in partition(4, 9)) {
        let back: Partition = lam.to_string().parse().unwrap();
        prop_assert_eq!(back, lam);
    }
}
