use koszul_forests::algebra::{evaluate_term, AlgebraElement};
use koszul_forests::flavor::Flavor;
use koszul_forests::forest::{enumerate_forests, Decoration, Forest};
use koszul_forests::linalg::{LinComb, Rational};
use koszul_forests::operad::free_terms;
use proptest::prelude::*;

fn catalog() -> Vec<Forest> {
    let d = Decoration::numbered(2);
    (1..=3).flat_map(|w| enumerate_forests(w, &d)).collect()
}

fn element() -> impl Strategy<Value = AlgebraElement> {
    let n = catalog().len();
    prop::collection::vec((0..n, -3i64..=3), 1..4).prop_map(|terms| {
        let cat = catalog();
        LinComb::from_terms(terms.into_iter().map(|(i, c)| (cat[i].clone(), Rational::from(c))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_is_multilinear(
        t in 0usize..40,
        slot in 0usize..4,
        args in prop::collection::vec(element(), 4),
        extra in element(),
        c in -4i64..=4,
        searrow in any::<bool>(),
    ) {
        let flavor = if searrow { Flavor::Searrow } else { Flavor::Nearrow };
        let term = &free_terms(4)[t];
        let c = Rational::from(c);
        let mut mixed = args.clone();
        mixed[slot] = args[slot].scale(&c).add(&extra);
        let mut only_extra = args.clone();
        only_extra[slot] = extra.clone();
        let lhs = evaluate_term(term, &mixed, flavor).unwrap();
        let rhs = evaluate_term(term, &args, flavor)
            .unwrap()
            .scale(&c)
            .add(&evaluate_term(term, &only_extra, flavor).unwrap());
        prop_assert_eq!(lhs, rhs);
    }
}
