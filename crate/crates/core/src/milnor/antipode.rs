use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use super::admissible::to_admissible;
use super::product::milnor_product;
use super::{degree_cap, AlgebraElement, AlgebraError, MilnorMonomial};

static CHI_SQ: LazyLock<RwLock<HashMap<u32, AlgebraElement>>> = LazyLock::new(Default::default);
static CHI_MONOMIAL: LazyLock<RwLock<HashMap<MilnorMonomial, AlgebraElement>>> =
    LazyLock::new(Default::default);

/// `chi Sq^n = sum_{i>=1} Sq^i chi Sq^{n-i}`.
pub fn antipode_sq(n: u32) -> Result<AlgebraElement, AlgebraError> {
    let cap = degree_cap();
    if n > cap {
        return Err(AlgebraError::DegreeCap { degree: n, cap });
    }
    if n == 0 {
        return Ok(AlgebraElement::one());
    }
    if let Some(hit) = CHI_SQ.read().expect("antipode cache poisoned").get(&n) {
        return Ok(hit.clone());
    }
    let mut out = AlgebraElement::zero();
    for i in 1..=n {
        out.add_assign(&milnor_product(&AlgebraElement::sq(i), &antipode_sq(n - i)?));
    }
    CHI_SQ
        .write()
        .expect("antipode cache poisoned")
        .insert(n, out.clone());
    Ok(out)
}

fn antipode_monomial(m: &MilnorMonomial) -> Result<AlgebraElement, AlgebraError> {
    if m.is_unit() {
        return Ok(AlgebraElement::one());
    }
    if let Some(hit) = CHI_MONOMIAL.read().expect("antipode cache poisoned").get(m) {
        return Ok(hit.clone());
    }
    let mut out = AlgebraElement::zero();
    for word in to_admissible(&m.clone().into())? {
        // chi(Sq^a Sq^b ...) = ... chi Sq^b chi Sq^a
        let mut term = AlgebraElement::one();
        for &k in &word.0 {
            term = milnor_product(&antipode_sq(k)?, &term);
        }
        out.add_assign(&term);
    }
    CHI_MONOMIAL
        .write()
        .expect("antipode cache poisoned")
        .insert(m.clone(), out.clone());
    Ok(out)
}

/// The conjugation `chi`, extended linearly.
pub fn antipode(a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    let mut out = AlgebraElement::zero();
    for m in a.terms() {
        out.add_assign(&antipode_monomial(m)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_degrees() {
        assert_eq!(antipode(&AlgebraElement::sq(1)).unwrap(), AlgebraElement::sq(1));
        assert_eq!(antipode(&AlgebraElement::one()).unwrap(), AlgebraElement::one());
        let chi4 = &AlgebraElement::sq(4) + &MilnorMonomial::new(vec![1, 1]).into();
        assert_eq!(antipode(&AlgebraElement::sq(4)).unwrap(), chi4);
        // chi Sq^2 = Sq^2, chi Sq^3 = Sq^2 Sq^1
        assert_eq!(antipode_sq(2).unwrap(), AlgebraElement::sq(2));
        assert_eq!(antipode_sq(3).unwrap(), crate::milnor::sq_word(&[2, 1]));
    }

    #[test]
    fn defining_relation() {
        for n in 1..=20 {
            let mut sum = AlgebraElement::zero();
            for i in 0..=n {
                sum.add_assign(&milnor_product(&AlgebraElement::sq(i), &antipode_sq(n - i).unwrap()));
            }
            assert!(sum.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn cap_applies() {
        let cap = degree_cap();
        assert!(antipode_sq(cap + 1).is_err());
    }
}
