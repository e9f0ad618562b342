//! Property tests over arithmetic, verification and censuses.

mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use skewcyc::arith::{self, gcd, inverse_mod, mult_order, pow_mod, Residue};
use skewcyc::census::{Census, CensusRecord};
use skewcyc::product::SkewProduct;
use skewcyc::product::SkewProductElement;
use skewcyc::quotient::check_quotient_laws_with;
use skewcyc::skew::{format_images, parse_images, SkewMorphism};
use skewcyc::store::Store;

const CENSUS_MAX: usize = 60;

fn censuses() -> &'static Vec<CensusRecord> {
    static CELL: OnceLock<Vec<CensusRecord>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut census = Census::new();
        (1..=CENSUS_MAX).map(|n| census.get(n).unwrap().as_ref().clone()).collect()
    })
}

fn member(n: usize, pick: usize) -> &'static SkewMorphism {
    let record = &censuses()[n - 1];
    &record.entries()[pick % record.entries().len()].phi
}

fn permutation_fixing_zero(max_n: usize) -> impl Strategy<Value = Vec<usize>> {
    (2..=max_n).prop_flat_map(|n| {
        Just((1..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|rest| {
            let mut v = vec![0];
            v.extend(rest);
            v
        })
    })
}

proptest! {
    #[test]
    fn gcd_divides_and_lcm_multiplies(a in 1u64..10_000, b in 1u64..10_000) {
        let g = gcd(a, b);
        prop_assert_eq!(a % g, 0);
        prop_assert_eq!(b % g, 0);
        prop_assert_eq!(arith::lcm(a, b) * g, a * b);
    }

    #[test]
    fn inverses_and_orders(m in 2u64..500, a in 1u64..500) {
        let a = a % m;
        match inverse_mod(a, m) {
            Ok(inv) => {
                prop_assert_eq!((a * inv) % m, 1);
                let t = mult_order(a, m).unwrap();
                prop_assert_eq!(arith::euler_phi(m).unwrap() % t, 0);
                prop_assert_eq!(pow_mod(a, t, m), 1);
            }
            Err(_) => prop_assert!(gcd(a, m) > 1),
        }
    }

    #[test]
    fn factorization_reconstructs(n in 1u64..100_000) {
        let product: u64 = arith::factorize(n).iter().map(|&(p, e)| p.pow(e)).product();
        prop_assert_eq!(product, n);
        prop_assert!(arith::factorize(n).iter().all(|&(p, _)| arith::is_prime(p)));
    }

    #[test]
    fn residue_ring_laws(m in 1u64..1000, a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
        let (a, b, c) = (Residue::new(a, m).unwrap(), Residue::new(b, m).unwrap(), Residue::new(c, m).unwrap());
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!((a + -a).value(), 0);
    }

    #[test]
    fn verify_agrees_with_naive_oracle(images in permutation_fixing_zero(8)) {
        let naive = common::naive_power_function(&images);
        match SkewMorphism::verify(images.len(), images.clone()) {
            Ok(phi) => prop_assert_eq!(Ok(phi.pi().to_vec()), naive),
            Err(_) => prop_assert!(naive.is_err()),
        }
    }

    #[test]
    fn text_form_round_trips(n in 1usize..=CENSUS_MAX, pick in any::<usize>()) {
        let phi = member(n, pick);
        prop_assert_eq!(parse_images(&format_images(phi.images())).unwrap(), phi.images().to_vec());
    }

    #[test]
    fn conjugates_stay_in_the_census(n in 2usize..=CENSUS_MAX, pick in any::<usize>(), t in 1usize..1000) {
        let phi = member(n, pick);
        let units = arith::units(n as u64);
        let t = units[t % units.len()] as usize;
        let psi = phi.conjugate(t).unwrap();
        let record = &censuses()[n - 1];
        prop_assert!(record.contains(psi.images()));
        prop_assert_eq!(psi.order(), phi.order());
        prop_assert_eq!(psi.kernel_order(), phi.kernel_order());
        prop_assert_eq!(psi.is_coset_preserving(), phi.is_coset_preserving());
        let class = |x: &SkewMorphism| record.entries().iter().find(|e| e.phi == *x).unwrap().class_id;
        prop_assert_eq!(class(&psi), class(phi));
    }

    #[test]
    fn quotient_laws_for_any_generator(n in 2usize..=CENSUS_MAX, pick in any::<usize>(), g in 1usize..1000) {
        let phi = member(n, pick);
        let units = arith::units(n as u64);
        let g = units[g % units.len()] as usize;
        let report = check_quotient_laws_with(phi, g);
        prop_assert!(report.passed(), "{:?}", report.violations);
    }

    #[test]
    fn skew_product_is_associative(n in 2usize..=CENSUS_MAX, pick in any::<usize>(), xs in prop::array::uniform6(any::<usize>())) {
        let phi = member(n, pick);
        let g = SkewProduct::new(phi);
        let el = |a: usize, j: usize| SkewProductElement::new(a % g.n(), j % g.m());
        let (x, y, z) = (el(xs[0], xs[1]), el(xs[2], xs[3]), el(xs[4], xs[5]));
        prop_assert_eq!(g.multiply(g.multiply(x, y), z), g.multiply(x, g.multiply(y, z)));
        prop_assert_eq!(g.multiply(x, g.inverse(x)), g.identity());
        // the action on B is by the same multiplication
        let w = xs[0] % g.n();
        prop_assert_eq!(g.act(g.multiply(x, y), w), g.act(x, g.act(y, w)));
    }

    #[test]
    fn powers_at_the_periodicity_are_coset_preserving(n in 2usize..=CENSUS_MAX, pick in any::<usize>()) {
        let phi = member(n, pick);
        let psi = SkewMorphism::verify(n, phi.power(phi.periodicity() as u64)).unwrap();
        prop_assert!(psi.is_coset_preserving());
        prop_assert!(phi.periodicity() < phi.order() || phi.order() == 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn store_round_trip(n in 1usize..=40) {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::open(dir.path()).unwrap();
        let record = &censuses()[n - 1];
        store.save(record).unwrap();
        let first = std::fs::read(store.path(n)).unwrap();
        let loaded = store.load(n).unwrap();
        prop_assert_eq!(&loaded, record);
        store.save(&loaded).unwrap();
        prop_assert_eq!(std::fs::read(store.path(n)).unwrap(), first);
    }
}
