use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use super::{AlgebraElement, AlgebraError, MilnorMonomial, SubalgebraSpec};

static BASES: LazyLock<RwLock<HashMap<(SubalgebraSpec, u32), Arc<Vec<MilnorMonomial>>>>> =
    LazyLock::new(Default::default);

/// Upper bound (inclusive) on the exponent in 1-based `slot` allowed by `spec`.
fn slot_bound(spec: &SubalgebraSpec, slot: usize) -> u32 {
    match *spec {
        SubalgebraSpec::FullA { .. } => u32::MAX,
        SubalgebraSpec::An(n) => {
            let n = n as usize;
            if slot > n + 1 {
                0
            } else {
                ((1u64 << (n + 2 - slot)) - 1) as u32
            }
        }
    }
}

/// Calls `f` on every Milnor basis element of degree `d` allowed by `spec`,
/// without materializing the list.
pub fn for_each_basis(
    spec: &SubalgebraSpec,
    d: u32,
    mut f: impl FnMut(&[u32]),
) -> Result<(), AlgebraError> {
    spec.check_degree(d)?;
    let mut slots = 0usize;
    while (1u64 << (slots + 1)) - 1 <= u64::from(d) {
        slots += 1;
    }
    let mut exps = vec![0u32; slots];
    fill(spec, d, slots, &mut exps, &mut f);
    Ok(())
}

fn fill(spec: &SubalgebraSpec, left: u32, slot: usize, exps: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if slot == 0 {
        if left == 0 {
            let mut len = exps.len();
            while len > 0 && exps[len - 1] == 0 {
                len -= 1;
            }
            f(&exps[..len]);
        }
        return;
    }
    let weight = (1u32 << slot) - 1;
    if slot == 1 {
        if left <= slot_bound(spec, 1) {
            exps[0] = left;
            fill(spec, 0, 0, exps, f);
            exps[0] = 0;
        }
        return;
    }
    let max = (left / weight).min(slot_bound(spec, slot));
    for r in 0..=max {
        exps[slot - 1] = r;
        fill(spec, left - r * weight, slot - 1, exps, f);
    }
    exps[slot - 1] = 0;
}

/// All Milnor basis elements of degree `d` in `spec`, sorted lexicographically
/// on exponent sequences. Cached.
pub fn enumerate_basis(spec: &SubalgebraSpec, d: u32) -> Result<Arc<Vec<MilnorMonomial>>, AlgebraError> {
    spec.check_degree(d)?;
    if let Some(hit) = BASES.read().expect("basis cache poisoned").get(&(*spec, d)) {
        return Ok(Arc::clone(hit));
    }
    let mut out = Vec::new();
    for_each_basis(spec, d, |e| out.push(MilnorMonomial::new(e.to_vec())))?;
    out.sort();
    let out = Arc::new(out);
    BASES
        .write()
        .expect("basis cache poisoned")
        .entry((*spec, d))
        .or_insert_with(|| Arc::clone(&out));
    Ok(out)
}

pub fn basis_count(spec: &SubalgebraSpec, d: u32) -> Result<u64, AlgebraError> {
    let mut count = 0u64;
    for_each_basis(spec, d, |_| count += 1)?;
    Ok(count)
}

/// `P^s_t`: the monomial with `2^s` in slot `t` (1-based) and zeros elsewhere.
pub fn milnor_primitive(s: u32, t: u32) -> MilnorMonomial {
    assert!(t >= 1, "Milnor primitives are indexed from t = 1");
    let mut exps = vec![0u32; t as usize];
    exps[t as usize - 1] = 1 << s;
    MilnorMonomial::new(exps)
}

/// Divides every exponent by `2^k`, killing monomials with an indivisible entry.
pub fn verschiebung(k: u32, a: &AlgebraElement) -> AlgebraElement {
    AlgebraElement::from_terms(a.terms().filter_map(|m| verschiebung_monomial(k, m)))
}

pub fn verschiebung_monomial(k: u32, m: &MilnorMonomial) -> Option<MilnorMonomial> {
    let mask = (1u32 << k) - 1;
    m.exponents()
        .iter()
        .all(|&r| r & mask == 0)
        .then(|| MilnorMonomial::new(m.exponents().iter().map(|&r| r >> k).collect::<Vec<_>>()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full() -> SubalgebraSpec {
        SubalgebraSpec::FullA { degree_cap: 64 }
    }

    /// Brute force: every sequence with entries bounded by the degree.
    fn brute(d: u32, spec: &SubalgebraSpec) -> Vec<MilnorMonomial> {
        let mut slots = 0;
        while (1u32 << (slots + 1)) - 1 <= d.max(1) {
            slots += 1;
        }
        let mut out = Vec::new();
        let total = (d as usize + 1).pow(slots as u32);
        for code in 0..total {
            let mut c = code;
            let exps: Vec<u32> = (0..slots)
                .map(|_| {
                    let e = (c % (d as usize + 1)) as u32;
                    c /= d as usize + 1;
                    e
                })
                .collect();
            let m = MilnorMonomial::new(exps);
            if m.degree() == d && spec.contains(&m) && !out.contains(&m) {
                out.push(m);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn degree_four() {
        let b = enumerate_basis(&full(), 4).unwrap();
        assert_eq!(*b, vec![MilnorMonomial::new(vec![1, 1]), MilnorMonomial::sq(4)]);
        let b = enumerate_basis(&SubalgebraSpec::An(1), 3).unwrap();
        assert_eq!(*b, vec![MilnorMonomial::new(vec![0, 1]), MilnorMonomial::sq(3)]);
        assert_eq!(*enumerate_basis(&SubalgebraSpec::An(3), 0).unwrap(), vec![MilnorMonomial::unit()]);
    }

    #[test]
    fn matches_brute_force() {
        for d in 0..=12 {
            for spec in [full(), SubalgebraSpec::An(0), SubalgebraSpec::An(1), SubalgebraSpec::An(2)] {
                assert_eq!(*enumerate_basis(&spec, d).unwrap(), brute(d, &spec), "degree {d} in {spec}");
            }
        }
    }

    #[test]
    fn subalgebra_dimensions() {
        for n in 0..=3 {
            let spec = SubalgebraSpec::An(n);
            let top = spec.top_degree().unwrap();
            let total: u64 = (0..=top).map(|d| basis_count(&spec, d).unwrap()).sum();
            assert_eq!(u128::from(total), spec.dimension().unwrap());
            assert_eq!(basis_count(&spec, top).unwrap(), 1);
            assert_eq!(basis_count(&spec, top + 1).unwrap(), 0);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let spec = SubalgebraSpec::FullA { degree_cap: 10 };
        assert!(matches!(enumerate_basis(&spec, 11), Err(AlgebraError::DegreeCap { .. })));
    }

    #[test]
    fn primitives() {
        assert_eq!(milnor_primitive(0, 1), MilnorMonomial::sq(1));
        let p = milnor_primitive(1, 2);
        assert_eq!(p, MilnorMonomial::new(vec![0, 2]));
        assert_eq!(p.degree(), 6);
        assert_eq!(milnor_primitive(0, 2).degree(), 3);
    }

    #[test]
    fn verschiebung_rule() {
        let a = AlgebraElement::from(MilnorMonomial::new(vec![2, 2]));
        assert_eq!(verschiebung(1, &a), MilnorMonomial::new(vec![1, 1]).into());
        assert!(verschiebung(1, &AlgebraElement::sq(1)).is_zero());
        assert_eq!(verschiebung(2, &AlgebraElement::sq(4)), AlgebraElement::sq(1));
        for s in 0..4 {
            for t in 1..4 {
                let v = verschiebung(2, &milnor_primitive(s, t).into());
                if s >= 2 {
                    assert_eq!(v, milnor_primitive(s - 2, t).into());
                } else {
                    assert!(v.is_zero());
                }
            }
        }
    }
}
