//! Worked examples, each cross-checked against a naive oracle that does not
//! use the library's verification.

mod common;

use skewcyc::census::Census;
use skewcyc::enumerate::{enumerate_coset_preserving, lift};
use skewcyc::families::{make_x, make_y, make_z};
use skewcyc::product::{check_group, core_of_base, induce_from_pair, SkewProduct, SkewProductElement};
use skewcyc::quotient::{barpi_index, check_quotient_laws, quotient_of};
use skewcyc::skew::{SkewError, SkewMorphism};

use common::{naive_all_skew, naive_canonical, naive_order, naive_power_function};

const PHI6: [usize; 6] = [0, 3, 2, 5, 4, 1];

#[test]
fn proper_map_of_z6_matches_naive_identity_check() {
    let phi = SkewMorphism::verify(6, PHI6.to_vec()).unwrap();
    assert_eq!(naive_power_function(&PHI6), Ok(vec![1, 2, 1, 2, 1, 2]));
    assert_eq!(phi.pi(), &[1, 2, 1, 2, 1, 2]);
    assert_eq!(phi.order(), naive_order(&PHI6));
    assert_eq!(phi.kernel(), (3, vec![0, 2, 4]));
    assert_eq!(phi.periodicity(), 1);
}

#[test]
fn non_skew_witness_matches_naive_search() {
    let images = [0, 2, 1, 3, 5, 4];
    let naive = naive_power_function(&images).unwrap_err();
    assert_eq!(SkewMorphism::verify(6, images.to_vec()), Err(SkewError::NoPowerExponent(naive)));
}

#[test]
fn induced_and_restricted_maps() {
    let phi = SkewMorphism::verify(6, PHI6.to_vec()).unwrap();
    assert_eq!(phi.induced_on_quotient(3).unwrap().images(), &[0, 1]);
    assert_eq!(phi.induced_on_quotient(1).unwrap(), phi);
    assert_eq!(phi.restrict_to_kernel().unwrap().images(), &[0, 1, 2]);
    assert_eq!(phi.power(3), vec![0, 1, 2, 3, 4, 5]);
}

#[test]
fn conjugating_by_five_gives_the_other_proper_map() {
    let phi = SkewMorphism::verify(6, PHI6.to_vec()).unwrap();
    let other = phi.conjugate(5).unwrap();
    assert_eq!(other.images(), &[0, 5, 2, 1, 4, 3]);
    let naive: Vec<usize> = (0..6).map(|a| (5 * PHI6[(5 * a) % 6]) % 6).collect();
    assert_eq!(other.images(), naive.as_slice());
}

#[test]
fn quotient_partial_sums_by_hand() {
    let phi = SkewMorphism::verify(6, PHI6.to_vec()).unwrap();
    // pi along the orbit 1 -> 3 -> 5 is 2, 2, 2, so partial sums are 0, 2, 4
    let sums: Vec<usize> = [0, 2, 4].iter().map(|s| s % 3).collect();
    let q = quotient_of(&phi, 1).unwrap();
    assert_eq!(q.images_bar(), sums.as_slice());
    assert_eq!(q.ord_bar(), 6 / phi.kernel_order());
    assert_eq!(barpi_index(&phi, 1, 1).unwrap(), 3 % 2);
    assert!(check_quotient_laws(&phi).passed());
}

#[test]
fn skew_product_of_z6_example() {
    let phi = SkewMorphism::verify(6, PHI6.to_vec()).unwrap();
    let g = SkewProduct::new(&phi);
    // c * b = phi(1) c^pi(1)
    let c_b = g.multiply(SkewProductElement::new(0, 1), SkewProductElement::new(1, 0));
    assert_eq!(c_b, SkewProductElement::new(PHI6[1], naive_power_function(&PHI6).unwrap()[1]));
    let report = check_group(&phi);
    assert!(report.passed() && report.associativity_exhaustive && report.order == 18);
    assert_eq!(core_of_base(&phi), 3);
}

#[test]
fn pair_round_trip_on_all_of_z6() {
    for images in naive_all_skew(6) {
        let phi = SkewMorphism::verify(6, images.clone()).unwrap();
        assert_eq!(induce_from_pair(6, &phi).unwrap().images(), images.as_slice());
    }
}

#[test]
fn coset_preserving_search_on_z6() {
    let expected: Vec<Vec<usize>> = naive_all_skew(6)
        .into_iter()
        .filter(|images| {
            let pi = naive_power_function(images).unwrap();
            (0..6).all(|a| pi[images[a]] == pi[a])
        })
        .collect();
    let found: Vec<Vec<usize>> = enumerate_coset_preserving(6).into_iter().map(|p| p.into_images()).collect();
    assert_eq!(found, expected);
    assert_eq!(found.len(), 4);
}

#[test]
fn no_lift_of_the_z6_map_to_z12() {
    let rho = SkewMorphism::verify(6, PHI6.to_vec()).unwrap();
    assert!(lift(&rho, 12, &enumerate_coset_preserving(12)).is_empty());
}

#[test]
fn z32_has_76_skew_morphisms() {
    let record = Census::new().get(32).unwrap();
    assert_eq!(record.counts().total(), 76);
    assert_eq!(record.counts().proper, 60);
}

#[test]
fn family_members_satisfy_the_identity_directly() {
    let x = make_x(3, 2).unwrap();
    let expected: Vec<usize> = (0..12).map(|a| if a % 2 == 1 { (a + 2) % 12 } else { a }).collect();
    assert_eq!(x.images(), expected.as_slice());
    assert!(naive_power_function(x.images()).is_ok());
    for phi in [make_x(5, 2).unwrap(), make_y(3, 4).unwrap(), make_y(5, 4).unwrap(), make_z(5, 2, 4).unwrap()] {
        let pi = naive_power_function(phi.images()).unwrap();
        let kernel = pi.iter().filter(|&&v| v == 1).count();
        assert_eq!(kernel, phi.kernel_order());
        assert_eq!(naive_order(phi.images()), phi.order());
    }
    assert_eq!(make_z(5, 2, 4).unwrap().order(), 5);
}

#[test]
fn class_representatives_match_naive_canonical_forms() {
    let mut census = Census::new();
    for n in [6, 12, 18, 24] {
        let record = census.get(n).unwrap();
        let mut reps: Vec<Vec<usize>> = record.proper().map(|phi| naive_canonical(phi.images())).collect();
        reps.sort();
        reps.dedup();
        assert_eq!(reps.len(), record.counts().classes, "n = {n}");
        for e in record.entries().iter().filter(|e| e.phi.is_proper()) {
            let rep = naive_canonical(e.phi.images());
            assert_eq!(reps.iter().position(|r| *r == rep), e.class_id, "n = {n}");
        }
    }
}
