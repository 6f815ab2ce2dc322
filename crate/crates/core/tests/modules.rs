//! Module constructions, extensions, coactions and the operations on them.

use proptest::prelude::*;
use steen_core::catalogue::{double_whisker_cells, get_module, whisker_cells};
use steen_core::milnor::{
    enumerate_basis, milnor_product, sq_word, AlgebraElement, DualBasis, DualPoly, MilnorMonomial, SubalgebraSpec,
};
use steen_core::module::{
    coaction, coaction_by_class, cyclic_quotient, extension_enumerate, find_isomorphism, trivial_module,
    FiniteModule, DEFAULT_FREE_SLOT_LIMIT,
};

fn m(e: &[u32]) -> AlgebraElement {
    MilnorMonomial::new(e.to_vec()).into()
}

fn full() -> SubalgebraSpec {
    SubalgebraSpec::full()
}

#[test]
fn joker_actions() {
    let j = get_module("joker").unwrap();
    let x0 = j.class("x0").unwrap();
    assert_eq!(j.act(&m(&[1, 1]), &x0).unwrap(), j.class("x4").unwrap());
    assert!(j.act(&AlgebraElement::sq(3), &x0).unwrap().is_zero());
    // Sq(1,1) = Sq^3 Sq^1
    let composed = j.act(&AlgebraElement::sq(3), &j.act(&AlgebraElement::sq(1), &x0).unwrap()).unwrap();
    assert_eq!(composed, j.class("x4").unwrap());
}

#[test]
fn double_joker_presentations() {
    let doubled = get_module("joker").unwrap().double(1).unwrap();
    for rels in [
        vec![m(&[1]), m(&[0, 1]), AlgebraElement::sq(6)],
        vec![m(&[1]), m(&[0, 1]), AlgebraElement::sq(6), m(&[0, 0, 1])],
    ] {
        let c = cyclic_quotient("joker(2)", SubalgebraSpec::An(2), &rels).unwrap();
        assert_eq!(c.graded_dimensions(), vec![(0, 1), (2, 1), (4, 1), (6, 1), (8, 1)]);
        assert!(find_isomorphism(&doubled, &c).unwrap().is_some());
    }
    let tripled = get_module("joker").unwrap().double(2).unwrap();
    let c = cyclic_quotient(
        "joker(3)",
        SubalgebraSpec::An(3),
        &[m(&[1]), m(&[2]), m(&[0, 2]), AlgebraElement::sq(12)],
    )
    .unwrap();
    assert!(find_isomorphism(&tripled, &c).unwrap().is_some());
}

#[test]
fn doubled_action_goes_through_verschiebung() {
    let j = get_module("joker").unwrap();
    let d = get_module("joker(3)").unwrap();
    for deg in 1..=16u32 {
        for theta in enumerate_basis(&SubalgebraSpec::An(3), deg).unwrap().iter() {
            let direct = d.monomial_matrix(theta).unwrap();
            let expected = match steen_core::milnor::verschiebung_monomial(2, theta) {
                Some(v) => j.monomial_matrix(&v).unwrap(),
                None => continue,
            };
            assert_eq!(direct.rows(), expected.rows(), "{theta}");
        }
    }
}

#[test]
fn wall_relation_kills_double_joker() {
    let rel = &sq_word(&[4, 4]) + &sq_word(&[2, 4, 2]);
    let j2 = get_module("joker(2)").unwrap();
    assert!(j2.annihilates(&rel).unwrap());
}

#[test]
fn extension_counts() {
    let joker = get_module("joker").unwrap();
    assert_eq!(extension_enumerate(&joker, full(), DEFAULT_FREE_SLOT_LIMIT).unwrap().len(), 2);
    let a1 = get_module("a1").unwrap();
    assert_eq!(extension_enumerate(&a1, full(), DEFAULT_FREE_SLOT_LIMIT).unwrap().len(), 4);
    let point = trivial_module(SubalgebraSpec::An(1), 0);
    assert_eq!(extension_enumerate(&point, full(), DEFAULT_FREE_SLOT_LIMIT).unwrap().len(), 1);
    assert!(extension_enumerate(&a1, full(), 2).is_err());
}

#[test]
fn whiskered_tensor_products() {
    let (x, y) = whisker_cells().unwrap();
    let t = x.tensor(&y).unwrap();
    // Sq^4(x3 y1) = x6 y2
    assert_eq!(
        t.format_vector(&t.sq_image(4, t.class_index("x3.y1").unwrap())),
        "x6.y2"
    );
    let target = get_module("jokerP1").unwrap().shift(4);
    assert!(find_isomorphism(&t, &target).unwrap().is_some());

    let (x, y) = double_whisker_cells().unwrap();
    let t = x.tensor(&y).unwrap();
    let target = get_module("joker2P1").unwrap().shift(8);
    assert!(find_isomorphism(&t, &target).unwrap().is_some());
}

#[test]
fn tensor_with_unit() {
    let j = get_module("joker0").unwrap();
    let unit = trivial_module(full(), 0);
    assert!(find_isomorphism(&j.tensor(&unit).unwrap(), &j).unwrap().is_some());
}

#[test]
fn doubling_is_monoidal() {
    let a = get_module("w1").unwrap();
    let b = get_module("w4").unwrap();
    let lhs = a.tensor(&b).unwrap().double(1).unwrap();
    let rhs = a.double(1).unwrap().tensor(&b.double(1).unwrap()).unwrap();
    assert!(find_isomorphism(&lhs, &rhs).unwrap().is_some());
}

#[test]
fn shifts_compose() {
    let j = get_module("joker(2)1").unwrap();
    let back = j.shift(3).shift(-3);
    assert!(find_isomorphism(&back, &j).unwrap().is_some());
    assert_eq!(j.shift(0).basis(), j.basis());
    let j3 = get_module("joker(3)0").unwrap();
    let d = j3.dualize().unwrap().shift(16);
    assert!(find_isomorphism(&d, &get_module("joker(3)1").unwrap()).unwrap().is_some());
}

#[test]
fn restriction_to_own_algebra_is_identity() {
    let j = get_module("jokerP").unwrap();
    let r = j.restrict(j.algebra()).unwrap();
    assert!(find_isomorphism(&r, &j).unwrap().is_some());
    let j21 = get_module("joker(2)1").unwrap().restrict(SubalgebraSpec::An(2)).unwrap();
    let j20 = get_module("joker(2)0").unwrap().restrict(SubalgebraSpec::An(2)).unwrap();
    assert!(find_isomorphism(&j21, &j20).unwrap().is_some());
    assert!(get_module("joker").unwrap().restrict(SubalgebraSpec::An(2)).is_err());
}

fn poly(terms: &[&[u32]]) -> DualPoly {
    DualPoly::from_xi_terms(terms.iter().map(|t| t.to_vec()))
}

/// The top-class coactions as usually displayed, with `zeta_i = chi(xi_i)`.
#[test]
fn top_class_coactions() {
    let z = DualPoly::zeta;
    let x = DualPoly::xi;
    let expect0 = vec![
        ("x4", DualPoly::one()),
        ("x3", z(1)),
        ("x2", z(1).pow(2)),
        ("x1", z(2)),
        ("x0", z(1).mul(&x(2))),
    ];
    let j0 = get_module("joker0").unwrap();
    let got0 = coaction_by_class(&j0, &j0.class("x4").unwrap()).unwrap();
    assert_eq!(got0, expect0.iter().map(|(c, p)| (c.to_string(), p.clone())).collect::<Vec<_>>());

    // With x0 the Sq^4 term zeta_1^4 appears. The x1 coefficient is zeta_2 as
    // for Joker_0: nothing in degree 3 changes between the two extensions.
    let j1 = get_module("joker1").unwrap();
    let got1 = coaction_by_class(&j1, &j1.class("x4").unwrap()).unwrap();
    let mut expect1 = expect0.clone();
    expect1[4].1 = z(1).mul(&z(2));
    assert_eq!(got1, expect1.iter().map(|(c, p)| (c.to_string(), p.clone())).collect::<Vec<_>>());

    // the difference is exactly zeta_1^4 (x) x0
    let mut diff = got1[4].1.clone();
    diff.add_assign(&got0[4].1);
    assert_eq!(diff, z(1).pow(4));
    assert_eq!(diff.render(DualBasis::Zeta), "ζ1^4");
    for i in 0..4 {
        assert_eq!(got0[i], got1[i]);
    }
    // zeta_1 xi_2 = xi_1 xi_2 and zeta_1 zeta_2 = xi_1 xi_2 + xi_1^4
    assert_eq!(got0[4].1, poly(&[&[1, 1]]));
    assert_eq!(got1[4].1, poly(&[&[1, 1], &[4]]));
}

#[test]
fn bottom_class_coaction_is_counit() {
    let j0 = get_module("joker0").unwrap();
    let terms = coaction(&j0, &j0.class("x0").unwrap()).unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0].class, "x0");
    assert_eq!(terms[0].monomial.degree(), 0);
}

/// `<Sq(R), psi x>`: the classes `y` paired with `xi^R` are exactly those
/// with `x` in `Sq(R) y`.
#[test]
fn coaction_pairs_with_action() {
    for name in ["joker0", "joker1", "jokerP1", "a1", "joker(2)1"] {
        let mm = get_module(name).unwrap();
        for x in 0..mm.dim() {
            let unit = steen_core::gf2::F2Vector::unit(mm.dim(), x);
            let psi = coaction(&mm, &unit).unwrap();
            for y in 0..mm.dim() {
                let gap = mm.degree_of(x) - mm.degree_of(y);
                if gap < 0 {
                    continue;
                }
                for r in enumerate_basis(&mm.algebra(), gap as u32).unwrap().iter() {
                    let acts = mm.act(&r.clone().into(), &steen_core::gf2::F2Vector::unit(mm.dim(), y)).unwrap().get(x);
                    let listed = psi
                        .iter()
                        .any(|t| t.class == mm.basis()[y].id && t.monomial.exponents() == r.exponents());
                    assert_eq!(acts, listed, "{name}: {r} on {}", mm.basis()[y].id);
                }
            }
        }
    }
}

fn catalogue_samples() -> Vec<FiniteModule> {
    ["joker", "joker0", "joker1", "jokerP", "jokerP1", "jokerPP1", "a1", "w1", "w4", "joker(2)", "joker(2)1"]
        .iter()
        .map(|n| get_module(n).unwrap())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// act(a b, x) = act(a, act(b, x)) on random words.
    #[test]
    fn actions_are_multiplicative(
        which in 0usize..11,
        a in prop::collection::vec(1u32..5, 0..3),
        b in prop::collection::vec(1u32..5, 0..3),
        x in 0usize..16,
    ) {
        let mm = &catalogue_samples()[which];
        let (a, b) = (sq_word(&a), sq_word(&b));
        prop_assume!(mm.algebra().contains_element(&a) && mm.algebra().contains_element(&b));
        let x = steen_core::gf2::F2Vector::unit(mm.dim(), x % mm.dim());
        let lhs = mm.act(&milnor_product(&a, &b), &x).unwrap();
        let rhs = mm.act(&a, &mm.act(&b, &x).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    /// The action is linear in the algebra element.
    #[test]
    fn actions_are_linear(
        which in 0usize..11,
        a in prop::collection::vec(1u32..5, 0..3),
        b in prop::collection::vec(1u32..5, 0..3),
        x in 0usize..16,
    ) {
        let mm = &catalogue_samples()[which];
        let (a, b) = (sq_word(&a), sq_word(&b));
        prop_assume!(mm.algebra().contains_element(&a) && mm.algebra().contains_element(&b));
        prop_assume!(a.degree() == b.degree() || a.is_zero() || b.is_zero());
        let x = steen_core::gf2::F2Vector::unit(mm.dim(), x % mm.dim());
        let mut sum = mm.act(&a, &x).unwrap();
        sum.add_assign(&mm.act(&b, &x).unwrap());
        prop_assert_eq!(mm.act(&(&a + &b), &x).unwrap(), sum);
    }
}
