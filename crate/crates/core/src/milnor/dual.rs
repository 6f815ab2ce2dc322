//! The dual Steenrod algebra `A_* = F_2[xi_1, xi_2, ...]`.
//!
//! `xi_i` has degree `2^i - 1` and the monomial `xi^R` is dual to the Milnor
//! basis element `Sq(R)`. The conjugates `zeta_i = chi(xi_i)` satisfy
//! `zeta_n = sum_{i<n} xi_{n-i}^{2^i} zeta_i`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{LazyLock, RwLock};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DualBasis {
    Xi,
    Zeta,
}

/// `xi^E` or `zeta^E`, depending on `basis`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualMonomial {
    exponents: Vec<u32>,
    pub basis: DualBasis,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn degree_of(e: &[u32]) -> u32 {
    e.iter().enumerate().map(|(i, &r)| r * ((1u32 << (i + 1)) - 1)).sum()
}

impl DualMonomial {
    pub fn new(exponents: impl Into<Vec<u32>>, basis: DualBasis) -> Self {
        DualMonomial {
            exponents: trim(exponents.into()),
            basis,
        }
    }

    pub fn xi(exponents: impl Into<Vec<u32>>) -> Self {
        DualMonomial::new(exponents, DualBasis::Xi)
    }

    pub fn zeta(exponents: impl Into<Vec<u32>>) -> Self {
        DualMonomial::new(exponents, DualBasis::Zeta)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degree(&self) -> u32 {
        degree_of(&self.exponents)
    }

    /// The same element written in the `xi` basis.
    pub fn to_xi(&self) -> DualPoly {
        match self.basis {
            DualBasis::Xi => DualPoly::from_xi_terms([self.exponents.clone()]),
            DualBasis::Zeta => {
                let mut out = DualPoly::one();
                for (i, &e) in self.exponents.iter().enumerate() {
                    out = out.mul(&DualPoly::zeta(i as u32 + 1).pow(e));
                }
                out
            }
        }
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, letter: &str, e: &[u32]) -> fmt::Result {
    if e.iter().all(|&r| r == 0) {
        return write!(f, "1");
    }
    for (i, &r) in e.iter().enumerate() {
        match r {
            0 => {}
            1 => write!(f, "{letter}{}", i + 1)?,
            _ => write!(f, "{letter}{}^{r}", i + 1)?,
        }
    }
    Ok(())
}

impl fmt::Display for DualMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.basis {
            DualBasis::Xi => "ξ",
            DualBasis::Zeta => "ζ",
        };
        write_monomial(f, letter, &self.exponents)
    }
}

impl fmt::Debug for DualMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A GF(2) polynomial in the `xi_i`, stored as a set of exponent vectors.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DualPoly {
    terms: BTreeSet<Vec<u32>>,
}

static ZETAS: LazyLock<RwLock<HashMap<u32, DualPoly>>> = LazyLock::new(Default::default);

impl DualPoly {
    pub fn zero() -> Self {
        DualPoly::default()
    }

    pub fn one() -> Self {
        DualPoly::from_xi_terms([Vec::new()])
    }

    pub fn from_xi_terms(terms: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let mut p = DualPoly::zero();
        for t in terms {
            p.toggle(trim(t));
        }
        p
    }

    /// `xi_i` for `i >= 1`.
    pub fn xi(i: u32) -> Self {
        assert!(i >= 1);
        let mut e = vec![0; i as usize];
        e[i as usize - 1] = 1;
        DualPoly::from_xi_terms([e])
    }

    /// `zeta_i = chi(xi_i)` in the `xi` basis; `zeta_0 = 1`.
    pub fn zeta(n: u32) -> Self {
        if n == 0 {
            return DualPoly::one();
        }
        if let Some(hit) = ZETAS.read().expect("zeta cache poisoned").get(&n) {
            return hit.clone();
        }
        let mut out = DualPoly::zero();
        for i in 0..n {
            let mut e = vec![0; (n - i) as usize];
            e[(n - i) as usize - 1] = 1 << i;
            out.add_assign(&DualPoly::from_xi_terms([e]).mul(&DualPoly::zeta(i)));
        }
        ZETAS.write().expect("zeta cache poisoned").insert(n, out.clone());
        out
    }

    fn toggle(&mut self, t: Vec<u32>) {
        if !self.terms.remove(&t) {
            self.terms.insert(t);
        }
    }

    pub fn add_assign(&mut self, other: &DualPoly) {
        for t in &other.terms {
            self.toggle(t.clone());
        }
    }

    pub fn mul(&self, other: &DualPoly) -> DualPoly {
        let mut out = DualPoly::zero();
        for a in &self.terms {
            for b in &other.terms {
                let len = a.len().max(b.len());
                let e = (0..len)
                    .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
                    .collect();
                out.toggle(e);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> DualPoly {
        let mut base = self.clone();
        let mut out = DualPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exponent vectors of the `xi` monomials present.
    pub fn xi_terms(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.terms.iter()
    }

    pub fn contains_xi(&self, e: &[u32]) -> bool {
        self.terms.contains(&trim(e.to_vec()))
    }

    /// The same element as a sum of `zeta` monomials.
    pub fn zeta_terms(&self) -> Vec<Vec<u32>> {
        // p = sum c_E zeta^E  iff  chi(p) = sum c_E xi^E
        let mut chi = DualPoly::zero();
        for t in &self.terms {
            chi.add_assign(&DualMonomial::zeta(t.clone()).to_xi());
        }
        chi.terms.into_iter().collect()
    }

    /// Renders the polynomial in the chosen basis.
    pub fn render(&self, basis: DualBasis) -> String {
        let terms: Vec<Vec<u32>> = match basis {
            DualBasis::Xi => self.terms.iter().cloned().collect(),
            DualBasis::Zeta => self.zeta_terms(),
        };
        if terms.is_empty() {
            return "0".to_string();
        }
        terms
            .into_iter()
            .map(|e| DualMonomial::new(e, basis).to_string())
            .collect::<Vec<_>>()
            .join(" + ")
    }

    pub fn degree(&self) -> Option<u32> {
        let mut ds = self.terms.iter().map(|t| degree_of(t));
        let first = ds.next()?;
        ds.all(|d| d == first).then_some(first)
    }
}

impl fmt::Display for DualPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(DualBasis::Xi))
    }
}

impl fmt::Debug for DualPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Conjugation on the dual: exchanges `xi_r` and `zeta_r`. The result is in the
/// `xi` basis.
pub fn dual_antipode(d: &DualMonomial) -> DualPoly {
    let swapped = match d.basis {
        DualBasis::Xi => DualBasis::Zeta,
        DualBasis::Zeta => DualBasis::Xi,
    };
    DualMonomial::new(d.exponents.clone(), swapped).to_xi()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn low_zetas() {
        assert_eq!(DualPoly::zeta(1), DualPoly::xi(1));
        let z2 = DualPoly::from_xi_terms([vec![0, 1], vec![3]]);
        assert_eq!(DualPoly::zeta(2), z2);
        assert_eq!(dual_antipode(&DualMonomial::xi(vec![0, 1])), z2);
        assert_eq!(dual_antipode(&DualMonomial::xi(vec![2])), DualPoly::from_xi_terms([vec![2]]));
        assert_eq!(DualPoly::zeta(3).degree(), Some(7));
    }

    #[test]
    fn antipode_is_involution() {
        for e in [vec![0, 1], vec![1, 1], vec![0, 0, 1], vec![3, 0, 1], vec![2, 2]] {
            let once = dual_antipode(&DualMonomial::xi(e.clone()));
            let mut twice = DualPoly::zero();
            for t in once.xi_terms() {
                twice.add_assign(&dual_antipode(&DualMonomial::xi(t.clone())));
            }
            assert_eq!(twice, DualPoly::from_xi_terms([e]));
        }
    }

    #[test]
    fn zeta_rendering() {
        let p = DualPoly::zeta(2).mul(&DualPoly::xi(1));
        assert_eq!(p.render(DualBasis::Zeta), "ζ1ζ2");
        assert_eq!(DualPoly::xi(2).render(DualBasis::Zeta), "ζ2 + ζ1^3");
        assert_eq!(DualPoly::zero().to_string(), "0");
        assert_eq!(DualPoly::one().to_string(), "1");
    }
}
