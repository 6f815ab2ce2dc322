//! The verification suite: every headline fact about the algebra, the Joker
//! family and its relatives, checked exactly and reported one line per item.

use std::fmt;

use rayon::prelude::*;

use crate::catalogue::{double_whisker_cells, get_module, joker_presentations, names, whisker_cells};
use crate::gf2::F2Vector;
use crate::milnor::{
    antipode, antipode_sq, enumerate_basis, milnor_product, sq_word, to_admissible, AlgebraElement, DualPoly,
    MilnorMonomial, SubalgebraSpec,
};
use crate::module::{coaction_by_class, compare_range, cyclic_quotient, extension_enumerate, find_isomorphism,
    trivial_module, DEFAULT_FREE_SLOT_LIMIT};
use crate::obstruction::{obstruction_report, Conclusion, ObstructionError};
use crate::resolution::{ext_chart, minimal_resolution, Resolution};
use crate::unstable::{bso3, bsu3, truncate_quotient, Poly};

/// Outcome of one criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    pub passed: bool,
    /// What was checked, or the first failure.
    pub detail: String,
}

impl Criterion {
    /// Stable identifier, `C01` .. `C13`.
    pub fn key(&self) -> String {
        format!("C{:02}", self.id)
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {}",
            self.key(),
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail
        )
    }
}

type Outcome = Result<String, String>;

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

pub const TITLES: [&str; 13] = [
    "antipode and product identities",
    "Joker duality",
    "doubling against cyclic presentations",
    "minimal presentations",
    "sphere Ext chart",
    "detection classes of the whiskered duals",
    "wall relation on Joker(2)",
    "extension counts",
    "unstable BSO(3) and BSU(3) quotients",
    "whiskered tensor products",
    "top-class coactions",
    "non-realizability for n >= 4",
    "property suites",
];

/// Runs one criterion (1-based).
pub fn run_criterion(id: u32) -> Option<Criterion> {
    let outcome = match id {
        1 => antipode_identities(),
        2 => joker_duality(),
        3 => doubling_presentations(),
        4 => minimal_presentations(),
        5 => sphere_chart(),
        6 => detection_classes(),
        7 => wall_relation(),
        8 => extension_counts(),
        9 => unstable_quotients(),
        10 => whiskered_tensors(),
        11 => coactions(),
        12 => non_realizability(),
        13 => property_suites(),
        _ => return None,
    };
    let (passed, detail) = match outcome {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Some(Criterion {
        id,
        title: TITLES[id as usize - 1],
        passed,
        detail,
    })
}

/// Every criterion, in order.
pub fn run_suite() -> Vec<Criterion> {
    (1..=13).filter_map(run_criterion).collect()
}

fn sq(k: u32) -> AlgebraElement {
    AlgebraElement::sq(k)
}

fn antipode_identities() -> Outcome {
    ensure(antipode_sq(1).map_err(err)? == sq(1), "chi Sq^1 != Sq^1")?;
    ensure(antipode_sq(2).map_err(err)? == sq(2), "chi Sq^2 != Sq^2")?;
    ensure(
        antipode_sq(4).map_err(err)? == &sq(4) + &sq_word(&[2, 2]),
        "chi Sq^4 != Sq^4 + Sq^2 Sq^2",
    )?;
    ensure(sq_word(&[1, 2]) == sq(3), "Sq^1 Sq^2 != Sq^3")?;
    ensure(sq_word(&[2, 2]) == sq_word(&[1, 2, 1]), "Sq^2 Sq^2 != Sq^1 Sq^2 Sq^1")?;
    Ok("chi Sq^1, chi Sq^2, chi Sq^4, Sq^1Sq^2 = Sq^3, Sq^2Sq^2 = Sq^1Sq^2Sq^1".into())
}

fn joker_duality() -> Outcome {
    for n in 1..=3u32 {
        let zero = get_module(&format!("joker({n})0")).map_err(err)?;
        let one = get_module(&format!("joker({n})1")).map_err(err)?;
        let dual = zero.dualize().map_err(err)?.shift(1 << (n + 1));
        ensure(
            find_isomorphism(&dual, &one).map_err(err)?.is_some(),
            format!("D(Joker({n})_0)[{}] is not Joker({n})_1", 1 << (n + 1)),
        )?;
        ensure(
            find_isomorphism(&zero, &one).map_err(err)?.is_none(),
            format!("Joker({n})_0 and Joker({n})_1 are isomorphic"),
        )?;
    }
    Ok("D(Joker(n)_0)[2^(n+1)] = Joker(n)_1 for n = 1, 2, 3; Joker_0 != Joker_1".into())
}

fn doubling_presentations() -> Outcome {
    let joker = get_module("joker").map_err(err)?;
    let mut count = 0;
    for n in 2..=3u32 {
        let doubled = joker.double(n - 1).map_err(err)?;
        for rels in joker_presentations(n) {
            let c = cyclic_quotient("presented", SubalgebraSpec::An(n), &rels).map_err(err)?;
            ensure(
                find_isomorphism(&doubled, &c).map_err(err)?.is_some(),
                format!("double of Joker is not A({n})/({})", list(&rels)),
            )?;
            count += 1;
        }
    }
    Ok(format!("{count} presentations, including the redundant P^0_3 for n = 2"))
}

fn list(rels: &[AlgebraElement]) -> String {
    rels.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn minimal_presentations() -> Outcome {
    let mut out = Vec::new();
    for (n, t_max, expect) in [(1, 10, vec![3]), (2, 12, vec![1, 3, 6]), (3, 16, vec![1, 2, 6, 12])] {
        let m = get_module(&format!("joker({n})")).map_err(err)?;
        let r = minimal_resolution(SubalgebraSpec::An(n), &m, 1, t_max).map_err(err)?;
        let got = r.generator_degrees(1);
        ensure(
            got == expect && r.generator_degrees(0) == vec![0],
            format!("Joker({n}): stage 1 in degrees {got:?}, expected {expect:?}"),
        )?;
        out.push(format!("Joker({n}) {got:?}"));
    }
    Ok(out.join(", "))
}

fn sphere_resolution() -> Result<Resolution, String> {
    let f2 = trivial_module(SubalgebraSpec::full(), 0);
    minimal_resolution(SubalgebraSpec::full(), &f2, 12, 32).map_err(err)
}

fn sphere_chart() -> Outcome {
    let r = sphere_resolution()?;
    let c = ext_chart(&r);
    for (s, stem) in [(1, 1), (1, 3), (1, 7), (1, 15), (2, 14), (5, 9), (5, 11)] {
        let rank = c.rank_at_stem(s, stem);
        ensure(rank == 1, format!("rank {rank} at (s, stem) = ({s}, {stem})"))?;
    }
    for s in 0..=12 {
        ensure(c.rank_at_stem(s, 0) >= 1, format!("no h0 tower dot at s = {s}"))?;
    }
    for stem in [2, 4, 5, 6] {
        let rank = c.rank_at_stem(1, stem);
        ensure(rank == 0, format!("rank {rank} at (1, {stem})"))?;
    }
    Ok("t-s <= 20, s <= 12: 7 single dots, h0 tower, 4 empty bidegrees".into())
}

fn detection_classes() -> Outcome {
    let mut out = Vec::new();
    for (name, n, degrees) in [("jokerPP1", 1, [0, 1]), ("joker2PP1", 2, [0, 2])] {
        let m = get_module(name).map_err(err)?;
        let r = minimal_resolution(SubalgebraSpec::An(n), &m, 0, m.max_degree().unwrap_or(0)).map_err(err)?;
        for t in degrees {
            let rank = r.rank(0, t);
            ensure(rank == 1, format!("{name}: dim Ext^(0,{t}) = {rank}"))?;
        }
        out.push(format!("{name} over A({n}): Ext^0 in t = {degrees:?}"));
    }
    Ok(out.join("; "))
}

fn wall_relation() -> Outcome {
    let rel = &sq_word(&[4, 4]) + &sq_word(&[2, 4, 2]);
    let m = get_module("joker(2)").map_err(err)?;
    ensure(m.annihilates(&rel).map_err(err)?, "Sq^4Sq^4 + Sq^2Sq^4Sq^2 acts nontrivially")?;
    Ok(format!("{rel} kills all {} classes", m.dim()))
}

fn extension_counts() -> Outcome {
    let mut got = Vec::new();
    for (name, expect) in [("joker", 2), ("a1", 4)] {
        let m = get_module(name).map_err(err)?;
        let n = extension_enumerate(&m, SubalgebraSpec::full(), DEFAULT_FREE_SLOT_LIMIT)
            .map_err(err)?
            .len();
        ensure(n == expect, format!("{name}: {n} A-structures, expected {expect}"))?;
        got.push(format!("{name}: {n}"));
    }
    Ok(got.join(", "))
}

fn unstable_quotients() -> Outcome {
    let p = bso3();
    let w2 = p.parse_monomial("w2").map_err(err)?;
    let w3 = p.parse_monomial("w3").map_err(err)?;
    ensure(p.wu_action(1, &w2).map_err(err)? == Poly::monomial(w3), "Sq^1 w2 != w3")?;
    let m = truncate_quotient(&p, SubalgebraSpec::An(1), 6).map_err(err)?;
    let dims = m.graded_dimensions();
    ensure(
        dims == (2..=6).map(|d| (d, 1)).collect::<Vec<_>>(),
        format!("BSO(3) quotient dimensions {dims:?}"),
    )?;
    let joker0 = get_module("joker0").map_err(err)?.shift(2);
    ensure(
        compare_range(&m, &joker0, 2, 6).map_err(err)?.is_isomorphic(),
        "BSO(3) quotient is not Joker_0[2] over A(1)",
    )?;
    let c = truncate_quotient(&bsu3(), SubalgebraSpec::An(2), 12).map_err(err)?;
    let target = get_module("joker(2)0").map_err(err)?.shift(4);
    ensure(
        compare_range(&c, &target, 4, 12).map_err(err)?.is_isomorphic(),
        "BSU(3) quotient is not Joker(2)_0[4] over A(2)",
    )?;
    Ok("Sq^1 w2 = w3; F2[w2,w3]/(w2^3) = Joker_0[2] on 2..6; F2[c2,c3]/(c2^3) = Joker(2)_0[4] on 4..12".into())
}

fn whiskered_tensors() -> Outcome {
    let (x, y) = whisker_cells().map_err(err)?;
    let t = x.tensor(&y).map_err(err)?;
    let i = t.class_index("x3.y1").map_err(err)?;
    let image = t.format_vector(&t.sq_image(4, i));
    ensure(image == "x6.y2", format!("Sq^4(x3 y1) = {image}"))?;
    let target = get_module("jokerP1").map_err(err)?.shift(4);
    ensure(find_isomorphism(&t, &target).map_err(err)?.is_some(), "X (x) M is not Joker'_1[4]")?;
    let (x, y) = double_whisker_cells().map_err(err)?;
    let t = x.tensor(&y).map_err(err)?;
    let target = get_module("joker2P1").map_err(err)?.shift(8);
    ensure(find_isomorphism(&t, &target).map_err(err)?.is_some(), "Y (x) C is not Joker(2)'_1[8]")?;
    Ok("Sq^4(x3 y1) = x6 y2; X(x)M = Joker'_1[4]; Y(x)C = Joker(2)'_1[8]".into())
}

fn coactions() -> Outcome {
    let z = DualPoly::zeta;
    let expect0 = [
        ("x4", DualPoly::one()),
        ("x3", z(1)),
        ("x2", z(1).pow(2)),
        ("x1", z(2)),
        ("x0", z(1).mul(&DualPoly::xi(2))),
    ];
    let mut expect1 = expect0.clone();
    expect1[4].1 = z(1).mul(&z(2));
    let mut got = Vec::new();
    for (name, expect) in [("joker0", &expect0), ("joker1", &expect1)] {
        let m = get_module(name).map_err(err)?;
        let top = m.class("x4").map_err(err)?;
        let psi = coaction_by_class(&m, &top).map_err(err)?;
        let want: Vec<(String, DualPoly)> = expect.iter().map(|(c, p)| (c.to_string(), p.clone())).collect();
        ensure(psi == want, format!("{name}: coaction of x4 is {psi:?}"))?;
        got.push(psi);
    }
    let mut diff = got[0][4].1.clone();
    diff.add_assign(&got[1][4].1);
    ensure(diff == z(1).pow(4), format!("difference is {diff}, not zeta1^4 x0"))?;
    ensure((0..4).all(|i| got[0][i] == got[1][i]), "coactions differ away from x0")?;
    Ok("both top-class coactions match; difference = zeta1^4 (x) x0".into())
}

fn non_realizability() -> Outcome {
    for n in 4..=8 {
        let r = obstruction_report(n).map_err(err)?;
        ensure(r.soundness_gate_passes(), format!("n = {n}: profile-stability gate failed"))?;
        ensure(r.conclusion == Conclusion::NonRealizable, format!("n = {n}: {}", r.conclusion))?;
    }
    ensure(
        obstruction_report(3) == Err(ObstructionError::TooSmall(3)),
        "n = 3 is not rejected on k >= 3",
    )?;
    Ok("NonRealizable for n = 4..8; n = 3 rejected".into())
}

fn basis_upto(spec: &SubalgebraSpec, top: u32) -> Result<Vec<MilnorMonomial>, String> {
    let mut out = Vec::new();
    for d in 0..=top {
        out.extend(enumerate_basis(spec, d).map_err(err)?.iter().cloned());
    }
    Ok(out)
}

fn property_suites() -> Outcome {
    let full = SubalgebraSpec::full();
    let basis = basis_upto(&full, 24)?;
    let el = |m: &MilnorMonomial| -> AlgebraElement { m.clone().into() };

    // (ab)c = a(bc), total degree <= 24
    let pairs: Vec<(&MilnorMonomial, &MilnorMonomial)> = basis
        .iter()
        .flat_map(|a| basis.iter().map(move |b| (a, b)))
        .filter(|(a, b)| a.degree() + b.degree() <= 24)
        .collect();
    let triples = pairs
        .par_iter()
        .map(|(a, b)| -> Result<usize, String> {
            let ab = milnor_product(&el(a), &el(b));
            let mut n = 0;
            for c in basis.iter().filter(|c| a.degree() + b.degree() + c.degree() <= 24) {
                let bc = milnor_product(&el(b), &el(c));
                ensure(
                    milnor_product(&ab, &el(c)) == milnor_product(&el(a), &bc),
                    format!("({a} {b}) {c} != {a} ({b} {c})"),
                )?;
                n += 1;
            }
            Ok(n)
        })
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .sum::<usize>();

    // chi chi = 1 through 24, chi(ab) = chi(b) chi(a) through 16
    basis.par_iter().try_for_each(|m| {
        let a = el(m);
        ensure(antipode(&antipode(&a).map_err(err)?).map_err(err)? == a, format!("chi chi {m} != {m}"))
    })?;
    basis
        .par_iter()
        .filter(|a| a.degree() <= 16)
        .try_for_each(|a| -> Result<(), String> {
            for b in basis.iter().filter(|b| a.degree() + b.degree() <= 16) {
                let lhs = antipode(&milnor_product(&el(a), &el(b))).map_err(err)?;
                let rhs = milnor_product(&antipode(&el(b)).map_err(err)?, &antipode(&el(a)).map_err(err)?);
                ensure(lhs == rhs, format!("chi({a} {b}) != chi({b}) chi({a})"))?;
            }
            Ok(())
        })?;

    // Milnor -> admissible -> Milnor
    basis.par_iter().try_for_each(|m| {
        let mut back = AlgebraElement::zero();
        for w in to_admissible(&el(m)).map_err(err)? {
            back.add_assign(&w.evaluate());
        }
        ensure(back == el(m), format!("admissible round trip fails on {m}"))
    })?;

    // resolutions: d d = 0 and minimality
    let mut resolutions = vec![sphere_resolution()?];
    for (name, spec, s_max, t_max) in [
        ("joker", SubalgebraSpec::An(1), 6, 16),
        ("joker(2)", SubalgebraSpec::An(2), 4, 16),
        ("joker(3)", SubalgebraSpec::An(3), 2, 16),
        ("joker0", SubalgebraSpec::full(), 4, 16),
        ("jokerPP1", SubalgebraSpec::An(1), 4, 12),
        ("joker2PP1", SubalgebraSpec::An(2), 3, 16),
    ] {
        let m = get_module(name).map_err(err)?;
        resolutions.push(minimal_resolution(spec, &m, s_max, t_max).map_err(err)?);
    }
    for r in &resolutions {
        ensure(
            r.d_squared_vanishes().map_err(err)?,
            format!("d d != 0 resolving {}", r.module().name()),
        )?;
        ensure(r.is_minimal(), format!("resolution of {} is not minimal", r.module().name()))?;
    }

    // every catalogue entry is a module
    let entries = names();
    for name in &entries {
        let m = get_module(name).map_err(err)?;
        let report = m.validate();
        ensure(report.valid, format!("{name}: {report}"))?;
    }
    // a spot check that actions are multiplicative on a generic word
    let j = get_module("joker(2)1").map_err(err)?;
    let x = F2Vector::unit(j.dim(), 0);
    let (a, b) = (sq_word(&[2, 4]), sq_word(&[2]));
    ensure(
        j.act(&milnor_product(&a, &b), &x).map_err(err)? == j.act(&a, &j.act(&b, &x).map_err(err)?).map_err(err)?,
        "action is not multiplicative on joker(2)1",
    )?;

    Ok(format!(
        "{triples} associativity triples, {} antipode and admissible checks, {} resolutions, {} catalogue entries",
        basis.len(),
        resolutions.len(),
        entries.len()
    ))
}
