//! The Wu-formula action on `H^*(BSO(3))` and `H^*(BSU(3))` and their
//! truncated quotients.

use proptest::prelude::*;
use steen_core::catalogue::get_module;
use steen_core::milnor::SubalgebraSpec;
use steen_core::module::{compare_range, find_isomorphism};
use steen_core::unstable::{bso3, bsu3, truncate_quotient, Poly, PolyModule};

fn poly(p: &PolyModule, terms: &[&str]) -> Poly {
    let mut out = Poly::zero();
    for t in terms {
        out.add_monomial(p.parse_monomial(t).unwrap());
    }
    out
}

fn sq(p: &PolyModule, r: u32, m: &str) -> Poly {
    p.wu_action(r, &p.parse_monomial(m).unwrap()).unwrap()
}

#[test]
fn wu_formula_in_bso3() {
    let p = bso3();
    assert_eq!(sq(&p, 1, "w2"), poly(&p, &["w3"]));
    assert_eq!(sq(&p, 2, "w2"), poly(&p, &["w2^2"]));
    assert_eq!(sq(&p, 1, "w3"), Poly::zero());
    // Expanding the Wu formula with w1 = w4 = w5 = 0 leaves w2 w3. The claim
    // that this square vanishes is a misprint: the Joker inside needs the
    // Sq^2 edge from w3 to w2 w3.
    assert_eq!(sq(&p, 2, "w3"), poly(&p, &["w2w3"]));
    assert_eq!(sq(&p, 3, "w3"), poly(&p, &["w3^2"]));
    assert_eq!(sq(&p, 2, "w2^2"), poly(&p, &["w3^2"]));
    assert_eq!(sq(&p, 1, "w2w3"), poly(&p, &["w3^2"]));
    assert!(p.wu_action(1, &p.parse_monomial("w3^3").unwrap()).is_err());
}

#[test]
fn wu_formula_in_bsu3() {
    let p = bsu3();
    assert_eq!(sq(&p, 2, "c2"), poly(&p, &["c3"]));
    assert_eq!(sq(&p, 4, "c2"), poly(&p, &["c2^2"]));
    assert_eq!(sq(&p, 1, "c2"), Poly::zero());
    assert_eq!(sq(&p, 3, "c3"), Poly::zero());
    assert_eq!(sq(&p, 4, "c3"), poly(&p, &["c2c3"]));
}

#[test]
fn truncated_bso3() {
    let p = bso3();
    let m = truncate_quotient(&p, SubalgebraSpec::An(1), 6).unwrap();
    let ids: Vec<(&str, i32)> = m.basis().iter().map(|b| (b.id.as_str(), b.degree)).collect();
    assert_eq!(ids, [("w2", 2), ("w3", 3), ("w2^2", 4), ("w2w3", 5), ("w3^2", 6)]);
    // the Joker pattern, bottom w2 and top w3^2
    let edges = [
        (1, "w2", "w3"),
        (2, "w2", "w2^2"),
        (2, "w3", "w2w3"),
        (2, "w2^2", "w3^2"),
        (1, "w2w3", "w3^2"),
    ];
    for (k, s, t) in edges {
        assert_eq!(m.format_vector(&m.sq_image(k, m.class_index(s).unwrap())), t, "Sq^{k} {s}");
    }
    assert!(m.sq_image(1, m.class_index("w2^2").unwrap()).is_zero());

    let single = truncate_quotient(&p, SubalgebraSpec::An(1), 2).unwrap();
    assert_eq!(single.dim(), 1);
    assert_eq!(single.basis()[0].id, "w2");

    let joker0 = get_module("joker0").unwrap().shift(2);
    assert!(compare_range(&m, &joker0, 2, 6).unwrap().is_isomorphic());
    // over A itself: Sq^4 w2 = 0 but chi(Sq^4) w2 = w3^2, as on Joker_0
    let full = truncate_quotient(&p, SubalgebraSpec::full(), 6).unwrap();
    assert!(compare_range(&full, &joker0, 2, 6).unwrap().is_isomorphic());
    let joker1 = get_module("joker1").unwrap().shift(2);
    assert!(!compare_range(&full, &joker1, 2, 6).unwrap().is_isomorphic());
}

#[test]
fn truncated_bsu3() {
    let p = bsu3();
    let m = truncate_quotient(&p, SubalgebraSpec::An(2), 12).unwrap();
    assert_eq!(m.graded_dimensions(), vec![(4, 1), (6, 1), (8, 1), (10, 1), (12, 1)]);
    let target = get_module("joker(2)0").unwrap().shift(4);
    assert!(compare_range(&m, &target, 4, 12).unwrap().is_isomorphic());
    let full = truncate_quotient(&p, SubalgebraSpec::full(), 12).unwrap();
    assert!(compare_range(&full, &target, 4, 12).unwrap().is_isomorphic());
    assert!(!compare_range(&full, &get_module("joker(2)1").unwrap().shift(4), 4, 12)
        .unwrap()
        .is_isomorphic());
}

/// The complex rule against the doubling functor applied to the real case.
#[test]
fn complex_classes_are_doubled_real_classes() {
    let real = truncate_quotient(&bso3(), SubalgebraSpec::An(1), 6).unwrap();
    let complex = truncate_quotient(&bsu3(), SubalgebraSpec::An(2), 12).unwrap();
    assert!(find_isomorphism(&real.double(1).unwrap(), &complex).unwrap().is_some());
}

#[test]
fn range_comparison_with_itself() {
    let m = get_module("jokerP1").unwrap();
    assert!(compare_range(&m, &m, -10, 10).unwrap().is_isomorphic());
}

#[test]
fn relations_must_be_closed_within_the_cap() {
    // Sq^1 w2^3 = w2^2 w3 sits in degree 7
    assert!(truncate_quotient(&bso3(), SubalgebraSpec::An(1), 7).is_err());
}

fn monomials(p: &PolyModule) -> Vec<Vec<u32>> {
    p.quotient_basis(p.degree_cap())
        .into_iter()
        .chain(std::iter::once(vec![0; p.generators().len()]))
        .collect()
}

proptest! {
    /// Cartan formula on products of two monomials.
    #[test]
    fn cartan(which in 0usize..2, a in 0usize..64, b in 0usize..64, k in 0u32..14) {
        let p = if which == 0 { bso3().with_cap(20) } else { bsu3().with_cap(40) };
        let ms = monomials(&p);
        let (x, y) = (&ms[a % ms.len()], &ms[b % ms.len()]);
        let xy: Vec<u32> = x.iter().zip(y).map(|(s, t)| s + t).collect();
        prop_assume!(p.degree(&xy) <= p.degree_cap());
        let mut sum = Poly::zero();
        for i in 0..=k {
            sum.add_assign(&p.wu_action(i, x).unwrap().mul(&p.wu_action(k - i, y).unwrap()));
        }
        prop_assert_eq!(p.wu_action(k, &xy).unwrap(), sum);
    }

    /// `Sq^k m = 0` above the degree and `Sq^{deg m} m = m^2`.
    #[test]
    fn instability(which in 0usize..2, a in 0usize..64, extra in 1u32..6) {
        let p = if which == 0 { bso3().with_cap(20) } else { bsu3().with_cap(40) };
        let ms = monomials(&p);
        let m = &ms[a % ms.len()];
        let d = p.degree(m);
        prop_assert!(p.wu_action(d + extra, m).unwrap().is_zero());
        let square: Vec<u32> = m.iter().map(|e| 2 * e).collect();
        prop_assert_eq!(p.wu_action(d, m).unwrap(), Poly::monomial(square));
    }
}

/// The truncated quotients are genuine modules: the Adem relations hold.
#[test]
fn truncated_quotients_validate() {
    for (p, spec, cap) in [
        (bso3(), SubalgebraSpec::An(1), 6),
        (bso3(), SubalgebraSpec::full(), 6),
        (bsu3(), SubalgebraSpec::An(2), 12),
        (bsu3(), SubalgebraSpec::full(), 12),
    ] {
        let m = truncate_quotient(&p, spec, cap).unwrap();
        assert!(m.validate().valid, "{}", m.name());
    }
    // without the relation, F2[w2, w3] up to degree 12 is still a module
    let free = PolyModule::new("F2[w2,w3]", bso3().generators().to_vec(), 12).unwrap();
    let m = truncate_quotient(&free, SubalgebraSpec::full(), 12).unwrap();
    assert!(m.validate().valid);
}
