//! Randomized ring and substitution laws for truncated series.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use plethysm::series::TruncatedSeries;
use plethysm::univariate;
use plethysm::verify::random_series;

const W: u64 = 4;

fn arb_series(constant_free: bool) -> impl Strategy<Value = TruncatedSeries> {
    any::<u64>().prop_map(move |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_series(&mut rng, W, constant_free)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_laws(
        a in arb_series(false),
        b in arb_series(false),
        c in arb_series(false),
    ) {
        let one = TruncatedSeries::one(W);
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(
            a.add(&b).unwrap().add(&c).unwrap(),
            a.add(&b.add(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
        prop_assert_eq!(
            a.multiply(&b).unwrap().multiply(&c).unwrap(),
            a.multiply(&b.multiply(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.multiply(&b.add(&c).unwrap()).unwrap(),
            a.multiply(&b).unwrap().add(&a.multiply(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.multiply(&one).unwrap(), a.clone());
        prop_assert_eq!(a.sub(&a).unwrap(), TruncatedSeries::zero(W));
    }

    #[test]
    fn substitution_fixes_the_first_variable(f in arb_series(true)) {
        let x1 = TruncatedSeries::variable(1, W);
        prop_assert_eq!(TruncatedSeries::plethysm(&x1, &f).unwrap(), f.clone());
        prop_assert_eq!(TruncatedSeries::plethysm(&f, &x1).unwrap(), f);
    }

    #[test]
    fn substitution_is_a_ring_map_in_the_outer_series(
        g1 in arb_series(false),
        g2 in arb_series(false),
        f in arb_series(true),
    ) {
        let sum = TruncatedSeries::plethysm(&g1.add(&g2).unwrap(), &f).unwrap();
        prop_assert_eq!(
            sum,
            TruncatedSeries::plethysm(&g1, &f).unwrap()
                .add(&TruncatedSeries::plethysm(&g2, &f).unwrap())
                .unwrap()
        );
        let product = TruncatedSeries::plethysm(&g1.multiply(&g2).unwrap(), &f).unwrap();
        prop_assert_eq!(
            product,
            TruncatedSeries::plethysm(&g1, &f).unwrap()
                .multiply(&TruncatedSeries::plethysm(&g2, &f).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn dilation_substitution_composes(f in arb_series(true), k in 1u64..=3, m in 1u64..=3) {
        prop_assert_eq!(
            f.verschiebung_substitute(k).verschiebung_substitute(m),
            f.verschiebung_substitute(k * m)
        );
    }

    #[test]
    fn restriction_intertwines_composition(g in arb_series(false), f in arb_series(true)) {
        let substituted = TruncatedSeries::plethysm(&g, &f).unwrap();
        let composed =
            univariate::compose_exponential(&g.restrict_univariate(), &f.restrict_univariate());
        prop_assert_eq!(substituted.restrict_univariate(), composed);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn substitution_associates(
        g in arb_series(false),
        f in arb_series(true),
        e in arb_series(true),
    ) {
        let nested = TruncatedSeries::plethysm(&TruncatedSeries::plethysm(&g, &f).unwrap(), &e)
            .unwrap();
        let flat = TruncatedSeries::plethysm(&g, &TruncatedSeries::plethysm(&f, &e).unwrap())
            .unwrap();
        prop_assert_eq!(nested, flat);
    }
}
